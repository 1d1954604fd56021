//! Numeric verification and classification of built representations:
//! relation residuals, Casimir scalarity, shift-operator action,
//! irreducibility via the commutant, equivalence via intertwiners, and
//! matrix-level isomorphisms.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{
    self, is_diagonal, max_abs, max_abs_vec, nullspace, scalar_identity, stacked_sylvester,
    unvectorize, CMat, CVec,
};
use crate::qkernel::{qnum, FieldCfg, Scalar, I, ONE};
use crate::repbuild::{
    ctilde, shift_matrix, shift_ops, AlgebraParams, BasisLabel, Rep, RepMeta,
};

/// Verification summary for one representation; serialized with fixed key
/// order for CLI output.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    /// Max-abs-entry defect of each defining relation.
    pub residuals: [f64; 3],
    /// Mean diagonal value of the evaluated Casimir matrix, as `[re, im]`.
    pub casimir_value: [f64; 2],
    /// Max deviation of the Casimir matrix from `casimir_value * Id`.
    pub casimir_deviation: f64,
    /// `[mu - N/2]` recovered from the trace of I3, as `[re, im]`.
    pub trace_class: [f64; 2],
    pub commutant_dim: usize,
    pub irreducible: bool,
    pub spectrum_distinct: bool,
    pub trace_matches: bool,
    /// Scale `1 + max |entry|` used by the relative residual comparisons.
    pub scale: f64,
}

impl VerifyReport {
    pub fn residuals_pass(&self, tol: f64) -> bool {
        self.residuals.iter().all(|r| *r < tol * self.scale)
    }
}

/// Max-abs-entry norms of the three relation defects
/// `q^{1/2} I_a I_b - q^{-1/2} I_b I_a - I_c - A_c Id`, together with the
/// scale `1 + max |entry|` over every matrix entering the expressions.
pub fn relation_residual(rep: &Rep, ap: &AlgebraParams, cfg: &FieldCfg) -> Result<([f64; 3], f64)> {
    let (i1, i2, i3) = (&rep.i1, &rep.i2, &rep.i3);
    let n = i1.nrows();
    if i2.nrows() != n || i3.nrows() != n {
        return Err(Error::DimensionMismatch(n, i2.nrows().max(i3.nrows())));
    }
    let v = cfg.q12();
    let vi = v.inv();
    let defect = |a: &CMat, b: &CMat, c: &CMat, acst: Scalar| -> (f64, f64) {
        let prod1 = a * b;
        let prod2 = b * a;
        let d = &prod1 * v - &prod2 * vi - c - scalar_identity(n, acst);
        let scale = max_abs(&prod1).max(max_abs(&prod2)).max(max_abs(c));
        (max_abs(&d), scale)
    };
    let (r1, s1) = defect(i1, i2, i3, ap.a3);
    let (r2, s2) = defect(i2, i3, i1, ap.a1);
    let (r3, s3) = defect(i3, i1, i2, ap.a2);
    Ok(([r1, r2, r3], 1.0 + s1.max(s2).max(s3)))
}

/// Evaluate the Casimir element on the matrices (the printed ordering
/// `I1 I2 I3` for the cubic term) and return
/// `(mean diagonal value, max deviation from scalar * Id)`.
pub fn casimir_eval(rep: &Rep, cfg: &FieldCfg) -> (Scalar, f64) {
    let ap = &rep.meta.params;
    let q = cfg.q();
    let n = rep.dim();
    let (i1, i2, i3) = (&rep.i1, &rep.i2, &rep.i3);
    let c = i1 * i1 * q * q
        + i2 * i2
        + i3 * i3 * q * q
        - i1 * i2 * i3 * (cfg.qh(5) - cfg.qh(1))
        + i1 * (q * (q + ONE) * ap.a1)
        + i2 * ((q + ONE) * ap.a2)
        + i3 * (q * (q + ONE) * ap.a3);
    let mean = (0..n).map(|k| c[(k, k)]).sum::<Scalar>() / Scalar::new(n as f64, 0.0);
    let dev = max_abs(&(&c - scalar_identity(n, mean)));
    (mean, dev)
}

/// Residuals of the four shift-identities at eigen-index `j`:
///
/// ```text
/// I3 (O_l x) = -i [l+1] O_l x,      I3 (R_l x) = -i [l-1] R_l x,
/// O_{l-1} R_l x = (Ct_{l-1} - C) x, R_{l+1} O_l x = (Ct_l - C) x,
/// ```
///
/// where `-i [l]` is the j-th claimed eigenvalue (`q^l = q^{mu-j}`), `x` the
/// corresponding unit eigenvector, and `C` the representation's Casimir
/// scalar. Each residual is normalized by `1 + norm` of its right-hand side.
pub fn shift_action_check(rep: &Rep, ap: &AlgebraParams, j: usize, cfg: &FieldCfg) -> Result<[f64; 4]> {
    let n = rep.dim();
    if j >= n {
        return Err(Error::InvalidScalar("eigen-index out of range"));
    }
    let qlam = rep.meta.qmu * cfg.qn(-(j as i32));
    let x = eigenvector(rep, j, cfg)?;

    let (o_l, r_l) = shift_ops(qlam, ap, cfg)?;
    let o_mat = shift_matrix(&o_l, rep);
    let r_mat = shift_matrix(&r_l, rep);

    let lam_p = qnum(qlam * cfg.q(), cfg)?;
    let lam_m = qnum(qlam / cfg.q(), cfg)?;

    let ox = &o_mat * &x;
    let rx = &r_mat * &x;
    let res1 = rel_vec_residual(&(&rep.i3 * &ox + &ox * (I * lam_p)), &ox);
    let res2 = rel_vec_residual(&(&rep.i3 * &rx + &rx * (I * lam_m)), &rx);

    let c_scalar = rep.meta.casimir;
    // O_{l-1} R_l x = (Ct_{l-1} - C) x
    let (o_lm1, _) = shift_ops(qlam / cfg.q(), ap, cfg)?;
    let o_lm1_mat = shift_matrix(&o_lm1, rep);
    let ct_lm1 = ctilde(qlam / cfg.q(), ap, cfg)?;
    let rhs3 = &x * (ct_lm1 - c_scalar);
    let res3 = rel_vec_residual(&(&o_lm1_mat * &rx - &rhs3), &rhs3);
    // R_{l+1} O_l x = (Ct_l - C) x
    let (_, r_lp1) = shift_ops(qlam * cfg.q(), ap, cfg)?;
    let r_lp1_mat = shift_matrix(&r_lp1, rep);
    let ct_l = ctilde(qlam, ap, cfg)?;
    let rhs4 = &x * (ct_l - c_scalar);
    let res4 = rel_vec_residual(&(&r_lp1_mat * &ox - &rhs4), &rhs4);

    Ok([res1, res2, res3, res4])
}

fn rel_vec_residual(defect: &CVec, scale_of: &CVec) -> f64 {
    max_abs_vec(defect) / (1.0 + max_abs_vec(scale_of))
}

/// Norm of `O_mu v_0` (for `j = 0`) or `R_{mu-N} v_N` (for `j = N`) relative
/// to the eigenvector norm; both must vanish on accepted builds.
pub fn shift_edge_norms(rep: &Rep, ap: &AlgebraParams, cfg: &FieldCfg) -> Result<(f64, f64)> {
    let n = rep.n;
    let x0 = eigenvector(rep, 0, cfg)?;
    let xn = eigenvector(rep, n, cfg)?;
    let (o_mu, _) = shift_ops(rep.meta.qmu, ap, cfg)?;
    let (_, r_mu_n) = shift_ops(rep.meta.qmu * cfg.qn(-(n as i32)), ap, cfg)?;
    let o0 = &shift_matrix(&o_mu, rep) * &x0;
    let rn = &shift_matrix(&r_mu_n, rep) * &xn;
    Ok((
        max_abs_vec(&o0) / max_abs_vec(&x0),
        max_abs_vec(&rn) / max_abs_vec(&xn),
    ))
}

/// Unit eigenvector of I3 for the j-th claimed eigenvalue. For the built
/// bases I3 is diagonal and this is the basis vector `e_j`; otherwise the
/// nullspace of `I3 - eig_j Id` is solved.
fn eigenvector(rep: &Rep, j: usize, cfg: &FieldCfg) -> Result<CVec> {
    let n = rep.dim();
    let eig = rep.meta.spectrum[j];
    if is_diagonal(&rep.i3, cfg.tol()) {
        let mut e = CVec::zeros(n);
        e[j] = ONE;
        return Ok(e);
    }
    let shifted = &rep.i3 - scalar_identity(n, eig);
    let ns = nullspace(&shifted, cfg.tol());
    ns.into_iter()
        .next()
        .ok_or_else(|| Error::InvariantViolation(format!("no eigenvector at index {j}")))
}

/// Dimension of the commutant `{X : X I_k = I_k X, k = 1..3}` via the
/// nullspace rank of the stacked commutator operator. Irreducible iff 1.
pub fn commutant_dim(rep: &Rep, cfg: &FieldCfg) -> usize {
    let op = stacked_sylvester(&[
        (&rep.i1, &rep.i1),
        (&rep.i2, &rep.i2),
        (&rep.i3, &rep.i3),
    ]);
    let n2 = rep.dim() * rep.dim();
    n2 - matrix::numerical_rank(&op, cfg.tol())
}

/// A nonzero `T` with `T I_k^{(1)} = I_k^{(2)} T` for all `k`, or `None`.
/// For irreducible inputs `T` (when present) is invertible and unique up to
/// scale; it is returned normalized so its largest entry is 1, then rescaled
/// so `T[0][0] = 1` when that entry is nonzero.
pub fn intertwiner(rep1: &Rep, rep2: &Rep, cfg: &FieldCfg) -> Option<CMat> {
    if rep1.dim() != rep2.dim() {
        return None;
    }
    let n = rep1.dim();
    // T I^{(1)} = I^{(2)} T  <=>  I^{(2)} T - T I^{(1)} = 0
    let op = stacked_sylvester(&[
        (&rep2.i1, &rep1.i1),
        (&rep2.i2, &rep1.i2),
        (&rep2.i3, &rep1.i3),
    ]);
    let ns = nullspace(&op, cfg.tol());
    let v = ns.first()?;
    let mut t = unvectorize(v, n);
    let scale = max_abs(&t);
    if scale == 0.0 {
        return None;
    }
    t /= Scalar::new(scale, 0.0);
    if t[(0, 0)].norm() > cfg.tol() {
        let pivot = t[(0, 0)];
        t /= pivot;
    }
    Some(t)
}

/// `[mu - N/2]` recovered from the trace of I3 by inverting
/// `Tr I3 = -i (q^{(N+1)/2} - q^{-(N+1)/2}) / (q^{1/2} - q^{-1/2}) [mu-N/2]`.
pub fn trace_class(rep: &Rep, cfg: &FieldCfg) -> Result<Scalar> {
    let pref = cfg.qh(rep.n as i32 + 1) - cfg.qh(-(rep.n as i32) - 1);
    if pref.norm() <= cfg.tol() {
        return Err(Error::DegeneratePrefactor);
    }
    let tr: Scalar = (0..rep.dim()).map(|k| rep.i3[(k, k)]).sum();
    Ok(I * tr * cfg.vdiff() / pref)
}

/// Matrix-level isomorphism application. Given a representation of
/// `AW_q(A1,A2,A3)`, returns a representation of the permuted-parameter
/// algebra:
///
/// * `rho`: `(J1,J2,J3) = (I3,I1,I2)`, parameters `(A3,A1,A2)`,
/// * `sigma`: `(J1,J2,J3) = (I2,I1, I3 + (I2 I1 - I1 I2)(q^{1/2}+q^{-1/2}))`,
///   parameters `(A2,A1,A3)`,
/// * `tau(e,e')`: `(J1,J2,J3) = (e I1, e' I2, e e' I3)`, parameters scaled
///   the same way.
pub fn apply_iso_matrix(rep: &Rep, iso: crate::awsym::Iso, cfg: &FieldCfg) -> Result<Rep> {
    use crate::awsym::Iso;
    let ap = rep.meta.params;
    let (j1, j2, j3, new_ap) = match iso {
        Iso::Rho => (
            rep.i3.clone(),
            rep.i1.clone(),
            rep.i2.clone(),
            AlgebraParams::new(ap.a3, ap.a1, ap.a2),
        ),
        Iso::Sigma => {
            let vsum = cfg.vsum();
            let j3 = &rep.i3 + (&rep.i2 * &rep.i1 - &rep.i1 * &rep.i2) * vsum;
            (
                rep.i2.clone(),
                rep.i1.clone(),
                j3,
                AlgebraParams::new(ap.a2, ap.a1, ap.a3),
            )
        }
        Iso::Tau(e, ep) => {
            if (e != 1 && e != -1) || (ep != 1 && ep != -1) {
                return Err(Error::InvalidScalar("tau signs must be +-1"));
            }
            let se = Scalar::new(e as f64, 0.0);
            let sp = Scalar::new(ep as f64, 0.0);
            (
                &rep.i1 * se,
                &rep.i2 * sp,
                &rep.i3 * (se * sp),
                AlgebraParams::new(se * ap.a1, sp * ap.a2, se * sp * ap.a3),
            )
        }
    };
    let n = rep.n;
    let spectrum: Vec<Scalar> = (0..=n).map(|k| j3[(k, k)]).collect();
    Ok(Rep {
        n,
        basis: rep.basis,
        i1: j1,
        i2: j2,
        i3: j3,
        meta: RepMeta {
            qmu: rep.meta.qmu,
            params: new_ap,
            casimir: rep.meta.casimir,
            spectrum,
        },
    })
}

/// Are the claimed I3 eigenvalues pairwise distinct (relative to `tol`)?
pub fn spectrum_distinct(rep: &Rep, cfg: &FieldCfg) -> bool {
    let s = &rep.meta.spectrum;
    for a in 0..s.len() {
        for b in (a + 1)..s.len() {
            if cfg.close(s[a], s[b]) {
                return false;
            }
        }
    }
    true
}

/// Dimension of every eigenspace of I3 at the claimed eigenvalues.
pub fn eigenspace_dims(rep: &Rep, cfg: &FieldCfg) -> Vec<usize> {
    let n = rep.dim();
    rep.meta
        .spectrum
        .iter()
        .map(|&eig| nullspace(&(&rep.i3 - scalar_identity(n, eig)), cfg.tol()).len())
        .collect()
}

/// Full verification bundle for a built representation.
pub fn verify(rep: &Rep, cfg: &FieldCfg) -> Result<VerifyReport> {
    let ap = rep.meta.params;
    let (residuals, scale) = relation_residual(rep, &ap, cfg)?;
    let (cas, cas_dev) = casimir_eval(rep, cfg);
    let tc = trace_class(rep, cfg)?;
    let cd = commutant_dim(rep, cfg);
    let sd = spectrum_distinct(rep, cfg);
    let expected_tc = qnum(rep.meta.qmu * cfg.qh(-(rep.n as i32)), cfg)?;
    Ok(VerifyReport {
        residuals,
        casimir_value: [cas.re, cas.im],
        casimir_deviation: cas_dev,
        trace_class: [tc.re, tc.im],
        commutant_dim: cd,
        irreducible: cd == 1,
        spectrum_distinct: sd,
        trace_matches: cfg.close(tc, expected_tc),
        scale,
    })
}

/// Direct sum of two representations (block diagonal); used by reducibility
/// tests and kept out of the construction API.
pub fn direct_sum(a: &Rep, b: &Rep) -> Rep {
    let (na, nb) = (a.dim(), b.dim());
    let n = na + nb;
    let block = |m1: &CMat, m2: &CMat| {
        let mut m = CMat::zeros(n, n);
        m.view_mut((0, 0), (na, na)).copy_from(m1);
        m.view_mut((na, na), (nb, nb)).copy_from(m2);
        m
    };
    let mut spectrum = a.meta.spectrum.clone();
    spectrum.extend_from_slice(&b.meta.spectrum);
    Rep {
        n: n - 1,
        basis: BasisLabel::V,
        i1: block(&a.i1, &b.i1),
        i2: block(&a.i2, &b.i2),
        i3: block(&a.i3, &b.i3),
        meta: RepMeta {
            qmu: a.meta.qmu,
            params: a.meta.params,
            casimir: a.meta.casimir,
            spectrum,
        },
    }
}
