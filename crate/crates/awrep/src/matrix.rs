//! Dense complex matrix helpers: builders, norms, nullspaces and the
//! stacked-Sylvester solves used for commutants and intertwiners.
//!
//! Matrices here are small (dimension <= a few dozen), so SVD-based rank
//! decisions with a relative singular-value threshold are cheap and robust.

use nalgebra::{DMatrix, DVector};

use crate::qkernel::Scalar;

pub type CMat = DMatrix<Scalar>;
pub type CVec = DVector<Scalar>;

/// Identity times a scalar.
pub fn scalar_identity(n: usize, s: Scalar) -> CMat {
    CMat::from_diagonal_element(n, n, s)
}

/// Build a matrix from its action on basis vectors:
/// `M e_j = up(j) e_{j-1} + di(j) e_j + dn(j) e_{j+1}`,
/// i.e. column `j` holds `up(j)` on the superdiagonal row `j-1` and `dn(j)`
/// on the subdiagonal row `j+1`.
pub fn from_tridiagonal_action(
    n: usize,
    up: impl Fn(usize) -> Scalar,
    di: impl Fn(usize) -> Scalar,
    dn: impl Fn(usize) -> Scalar,
) -> CMat {
    let mut m = CMat::zeros(n, n);
    for j in 0..n {
        if j > 0 {
            m[(j - 1, j)] = up(j);
        }
        m[(j, j)] = di(j);
        if j + 1 < n {
            m[(j + 1, j)] = dn(j);
        }
    }
    m
}

pub fn diagonal(n: usize, f: impl Fn(usize) -> Scalar) -> CMat {
    CMat::from_diagonal(&CVec::from_fn(n, |j, _| f(j)))
}

/// Max absolute entry.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_vec(v: &CVec) -> f64 {
    v.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Is the matrix diagonal up to `tol` relative to its largest entry?
pub fn is_diagonal(m: &CMat, tol: f64) -> bool {
    let scale = 1.0 + max_abs(m);
    m.row_iter().enumerate().all(|(i, row)| {
        row.iter()
            .enumerate()
            .all(|(j, z)| i == j || z.norm() <= tol * scale)
    })
}

/// Singular values, descending.
pub fn singular_values(m: &CMat) -> Vec<f64> {
    m.clone().svd(false, false).singular_values.iter().cloned().collect()
}

/// Orthonormal basis of the (numerical) nullspace: right singular vectors
/// whose singular values fall below `tol * sigma_max`.
pub fn nullspace(m: &CMat, tol: f64) -> Vec<CVec> {
    let svd = m.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let sv = &svd.singular_values;
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let thresh = tol * (1.0 + smax);
    let mut out = Vec::new();
    // singular values cover min(nrows, ncols); every remaining row of V^T
    // (columns of V beyond the rank) spans exact nullspace directions
    for i in 0..vt.nrows() {
        if i >= sv.len() || sv[i] <= thresh {
            out.push(vt.row(i).transpose().map(|z| z.conj()));
        }
    }
    out
}

/// vec() of a matrix in column-major order.
pub fn vectorize(m: &CMat) -> CVec {
    CVec::from_iterator(m.nrows() * m.ncols(), m.iter().cloned())
}

pub fn unvectorize(v: &CVec, n: usize) -> CMat {
    CMat::from_iterator(n, n, v.iter().cloned())
}

/// The operator `X -> A X - X B` as an n^2 x n^2 matrix acting on vec(X)
/// (column-major): `Id (x) A - B^T (x) Id`.
pub fn sylvester_operator(a: &CMat, b: &CMat) -> CMat {
    let n = a.nrows();
    let mut op = CMat::zeros(n * n, n * n);
    // vec(A X) = (Id (x) A) vec(X); vec(X B) = (B^T (x) Id) vec(X)
    for col in 0..n {
        for row in 0..n {
            // block (row, col) of the Kronecker structure
            for i in 0..n {
                for k in 0..n {
                    // Id (x) A: block diag with copies of A
                    if row == col {
                        op[(row * n + i, col * n + k)] += a[(i, k)];
                    }
                }
            }
            // -(B^T (x) Id): entry multiplies identity block by B^T[row, col] = B[col, row]
            let bt = b[(col, row)];
            for i in 0..n {
                op[(row * n + i, col * n + i)] -= bt;
            }
        }
    }
    op
}

/// Stack `X -> M_k X - X N_k` maps vertically.
pub fn stacked_sylvester(pairs: &[(&CMat, &CMat)]) -> CMat {
    let n = pairs[0].0.nrows();
    let mut out = CMat::zeros(pairs.len() * n * n, n * n);
    for (idx, (m, nn)) in pairs.iter().enumerate() {
        let block = sylvester_operator(m, nn);
        out.view_mut((idx * n * n, 0), (n * n, n * n)).copy_from(&block);
    }
    out
}

/// Smallest/largest singular value ratio-based numerical rank.
pub fn numerical_rank(m: &CMat, tol: f64) -> usize {
    let sv = singular_values(m);
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > tol * (1.0 + smax)).count()
}

/// Determinant via LU.
pub fn determinant(m: &CMat) -> Scalar {
    m.clone().lu().determinant()
}

/// Condition-style invertibility test: sigma_min > tol * sigma_max.
pub fn is_invertible(m: &CMat, tol: f64) -> bool {
    let sv = singular_values(m);
    let smax = sv.iter().cloned().fold(0.0, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    smin > tol * (1.0 + smax)
}
