//! Dual representation, Leonard pair and the q-Racah correspondence.
//!
//! The dual of a classical representation swaps the roles of `I1` and `I3`
//! (diagonal vs irreducible tridiagonal). With `nu = -mu-1+(j1+j2+j3)/2`
//! the pair
//!
//! ```text
//! A = i q^{-nu} (q - q^{-1}) I1,   B = i q^{-mu} (q - q^{-1}) I3
//! ```
//!
//! is a Leonard pair, and the transition matrix between the two eigenbases
//! carries the q-Racah polynomials
//! `R_n(mu(x)) = 4phi3(q^{-n}, ab q^{n+1}, q^{-x}, cd q^{x+1}; aq, bd q, cq | q; q)`
//! with parameters obtained from the representation data.

use crate::error::{Error, Result};
use crate::matrix::{is_invertible, max_abs, CMat};
use crate::qkernel::{phi43, qnum, FieldCfg, Scalar, I, ONE};
use crate::repbuild::{
    aj_coeff, build_classical_x, cj_coeff, i2_from_relation, lambda_g, lambda_root,
    params_from_roots, AlgebraParams, BasisLabel, BorderL, Branch, Rep, RepMeta, RepParams,
};
use crate::repverify::intertwiner;

/// q-Racah parameters `(alpha, beta, gamma, delta)` plus the degree bound N.
#[derive(Clone, Copy, Debug)]
pub struct RacahParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    pub delta: Scalar,
    pub n: usize,
}

impl RacahParams {
    /// Which of `alpha q = q^{-N}`, `beta delta q = q^{-N}`, `gamma q = q^{-N}`
    /// hold (the truncation conditions); exactly one is expected.
    pub fn finiteness(&self, cfg: &FieldCfg) -> [bool; 3] {
        let target = cfg.qn(-(self.n as i32) - 1);
        [
            cfg.close(self.alpha, target),
            cfg.close(self.beta * self.delta, target),
            cfg.close(self.gamma, target),
        ]
    }

    /// `mu(x) = q^{-x} + gamma delta q^{x+1}`.
    pub fn mu_x(&self, x: i64, cfg: &FieldCfg) -> Scalar {
        cfg.qn(-(x as i32)) + self.gamma * self.delta * cfg.qn(x as i32 + 1)
    }
}

/// The q-Racah correspondence for a representation parametrization:
/// `alpha = q^{-j1}`, `beta = -q^{-2mu-1+j1}`, `gamma = q^{-j3}`,
/// `delta = -q^{2mu+1-j1-j2}`.
pub fn racah_params(params: &RepParams, cfg: &FieldCfg) -> RacahParams {
    let [h1, h2, h3] = params.jh;
    let q2mu1 = params.qmu * params.qmu * cfg.q(); // q^{2mu+1}
    RacahParams {
        alpha: (h1 * h1).inv(),
        beta: -(h1 * h1) / q2mu1,
        gamma: (h3 * h3).inv(),
        delta: -q2mu1 / ((h1 * h1) * (h2 * h2)),
        n: params.n,
    }
}

/// `R_n(mu(x))` via the terminating 4phi3 series.
pub fn racah_poly(n: i64, x: i64, rp: &RacahParams, cfg: &FieldCfg) -> Result<Scalar> {
    let ab = rp.alpha * rp.beta;
    let cd = rp.gamma * rp.delta;
    let num = [
        cfg.qn(-(n as i32)),
        ab * cfg.qn(n as i32 + 1),
        cfg.qn(-(x as i32)),
        cd * cfg.qn(x as i32 + 1),
    ];
    let den = [rp.alpha * cfg.q(), rp.beta * rp.delta * cfg.q(), rp.gamma * cfg.q()];
    let nterms = n.min(x).max(0) as usize;
    phi43(num, den, cfg.q(), nterms, cfg)
}

/// Table of `R_n(mu(x))` for `0 <= n <= nmax`, `0 <= x <= xmax`.
pub fn racah_table(rp: &RacahParams, nmax: i64, xmax: i64, cfg: &FieldCfg) -> Result<Vec<Vec<Scalar>>> {
    (0..=nmax)
        .map(|n| (0..=xmax).map(|x| racah_poly(n, x, rp, cfg)).collect())
        .collect()
}

/// Recurrence coefficient `A_n` in the `(alpha, beta, gamma, delta)` form.
pub fn racah_an(n: i64, rp: &RacahParams, cfg: &FieldCfg) -> Scalar {
    let n = n as i32;
    let ab = rp.alpha * rp.beta;
    (ONE - rp.alpha * cfg.qn(n + 1))
        * (ONE - ab * cfg.qn(n + 1))
        * (ONE - rp.beta * rp.delta * cfg.qn(n + 1))
        * (ONE - rp.gamma * cfg.qn(n + 1))
        / ((ONE - ab * cfg.qn(2 * n + 1)) * (ONE - ab * cfg.qn(2 * n + 2)))
}

/// Difference coefficient `B_n` in the `(alpha, beta, gamma, delta)` form.
pub fn racah_bn(n: i64, rp: &RacahParams, cfg: &FieldCfg) -> Scalar {
    let n = n as i32;
    let cd = rp.gamma * rp.delta;
    (ONE - rp.alpha * cfg.qn(n + 1))
        * (ONE - rp.beta * rp.delta * cfg.qn(n + 1))
        * (ONE - rp.gamma * cfg.qn(n + 1))
        * (ONE - cd * cfg.qn(n + 1))
        / ((ONE - cd * cfg.qn(2 * n + 1)) * (ONE - cd * cfg.qn(2 * n + 2)))
}

/// Recurrence coefficient `C_n`.
pub fn racah_cn(n: i64, rp: &RacahParams, cfg: &FieldCfg) -> Scalar {
    let n = n as i32;
    let ab = rp.alpha * rp.beta;
    cfg.q()
        * (ONE - cfg.qn(n))
        * (ONE - rp.beta * cfg.qn(n))
        * (rp.gamma - ab * cfg.qn(n))
        * (rp.delta - rp.alpha * cfg.qn(n))
        / ((ONE - ab * cfg.qn(2 * n)) * (ONE - ab * cfg.qn(2 * n + 1)))
}

/// Difference coefficient `D_n` (the `(1-q^n)` factor makes `D_0 = 0`).
pub fn racah_dn(n: i64, rp: &RacahParams, cfg: &FieldCfg) -> Scalar {
    let n = n as i32;
    let cd = rp.gamma * rp.delta;
    cfg.q()
        * (ONE - cfg.qn(n))
        * (ONE - rp.delta * cfg.qn(n))
        * (rp.beta - rp.gamma * cfg.qn(n))
        * (rp.alpha - cd * cfg.qn(n))
        / ((ONE - cd * cfg.qn(2 * n)) * (ONE - cd * cfg.qn(2 * n + 1)))
}

/// Both sides of Lemma-dual's hypotheses: the classical conditions for `mu`
/// and for `nu`, plus the verbatim requirement that one of `q^{j_i}` equals
/// `q^{N+1}`.
pub fn check_dual_hypotheses(params: &RepParams, cfg: &FieldCfg) -> Result<()> {
    let target = cfg.qn(params.n as i32 + 1);
    if !(0..3).any(|i| {
        let qji = params.jh[i] * params.jh[i];
        (qji - target).norm() <= cfg.tol() * (1.0 + target.norm())
    }) {
        return Err(Error::InvariantViolation(
            "no q^{j_i} equals q^{N+1} (dual hypothesis)".into(),
        ));
    }
    crate::repbuild::check_classical(params.qmu, params.jh, params.n, cfg)
        .map_err(|e| Error::InvariantViolation(format!("mu side: {e}")))?;
    let nu_side = params.dual(cfg);
    crate::repbuild::check_classical(nu_side.qmu, nu_side.jh, nu_side.n, cfg)
        .map_err(|e| Error::InvariantViolation(format!("nu side: {e}")))?;
    Ok(())
}

/// Y-basis (dual) representation: `I1` diagonal `-i[nu-j]`, `I3` irreducible
/// tridiagonal. Built as the X-basis representation of the `mu <-> nu`
/// swapped parametrization (a representation of `AW_q(A3, A2, A1)`) pushed
/// through the isomorphism exchanging `I1` and `I3`:
///
/// ```text
/// I1 -> I3,  I2 -> I2 + (I1 I3 - I3 I1)(q^{1/2} + q^{-1/2}),  I3 -> I1.
/// ```
pub fn build_dual(params: &RepParams, branch: Branch, cfg: &FieldCfg) -> Result<Rep> {
    if matches!(branch, Branch::Swapped | Branch::NegSwapped) {
        return Err(Error::InvariantViolation(
            "dual builds support the Main/NegMain branches; use the swapped parametrization instead"
                .into(),
        ));
    }
    check_dual_hypotheses(params, cfg)?;
    let swapped = params.dual(cfg);
    let prim = build_classical_x(&swapped, Branch::Main, cfg)?;
    let vsum = cfg.vsum();
    let j1 = prim.i3.clone();
    let j3 = prim.i1.clone();
    let j2 = &prim.i2 + (&prim.i1 * &prim.i3 - &prim.i3 * &prim.i1) * vsum;
    let (j1, j2, j3) = match branch {
        Branch::NegMain => (-j1, -j2, j3),
        _ => (j1, j2, j3),
    };
    let ap = branch.apply(params_from_roots(params, cfg));
    let casimir = crate::repbuild::ctilde(params.qmu, &ap, cfg)?;
    let n = params.n;
    // claimed I3 spectrum: same as the original, -i[mu - j]
    let spectrum = (0..=n as i64)
        .map(|j| Ok(-I * qnum(params.qmu * cfg.qn(-(j as i32)), cfg)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Rep {
        n,
        basis: BasisLabel::Y,
        i1: j1,
        i2: j2,
        i3: j3,
        meta: RepMeta { qmu: params.qmu, params: ap, casimir, spectrum },
    })
}

/// The intertwiner witnessing `rep_x ~ rep_y`, normalized to `T[0][0] = 1`;
/// `T I_k^{(Y)} = I_k^{(X)} T`.
pub fn dual_equivalence(rep_x: &Rep, rep_y: &Rep, cfg: &FieldCfg) -> Result<CMat> {
    let t = intertwiner(rep_y, rep_x, cfg).ok_or(Error::NotEquivalent)?;
    if !is_invertible(&t, cfg.tol()) {
        return Err(Error::NotEquivalent);
    }
    Ok(t)
}

/// The Leonard pair extracted from a representation and its dual, realized
/// in both eigenbases, plus the q-Racah transition data.
#[derive(Clone, Debug)]
pub struct LeonardPairData {
    pub a_x: CMat,
    pub b_x: CMat,
    pub a_y: CMat,
    pub b_y: CMat,
    /// Transition matrix `P_{jk} = r_j R_j(mu(k))` from the Y basis to the
    /// X basis.
    pub p: CMat,
    pub rp: RacahParams,
    pub qnu: Scalar,
}

/// Build the Leonard pair `A = i q^{-nu}(q-q^{-1}) I1`,
/// `B = i q^{-mu}(q-q^{-1}) I3` in the X and Y bases.
pub fn leonard_pair(params: &RepParams, branch: Branch, cfg: &FieldCfg) -> Result<LeonardPairData> {
    let rep_x = build_classical_x(params, branch, cfg)?;
    let rep_y = build_dual(params, branch, cfg)?;
    let qnu = params.qnu(cfg);
    let sa = I * qnu.inv() * cfg.qdiff();
    let sb = I * params.qmu.inv() * cfg.qdiff();
    let rp = racah_params(params, cfg);
    let p = transition_matrix(params, branch, cfg)?;
    Ok(LeonardPairData {
        a_x: &rep_x.i1 * sa,
        b_x: &rep_x.i3 * sb,
        a_y: &rep_y.i1 * sa,
        b_y: &rep_y.i3 * sb,
        p,
        rp,
        qnu,
    })
}

/// `P_{jk} = r_j R_j(mu(k))` with `r_0 = 1`, `r_j = prod_{k=1}^{j} A_{k-1}/C_k`
/// (the paper's product starts at an undefined `A_{-1}/C_0`; this convention
/// is validated against the solved intertwiner).
pub fn transition_matrix(params: &RepParams, _branch: Branch, cfg: &FieldCfg) -> Result<CMat> {
    let n = params.n;
    let rp = racah_params(params, cfg);
    let mut r = Vec::with_capacity(n + 1);
    r.push(ONE);
    for j in 1..=n as i64 {
        let c = cj_coeff(j, params, cfg);
        if c.norm() <= cfg.tol() {
            return Err(Error::ZeroDenominator { k: j as usize });
        }
        let prev = *r.last().unwrap();
        r.push(prev * aj_coeff(j - 1, params, cfg) / c);
    }
    let mut p = CMat::zeros(n + 1, n + 1);
    for j in 0..=n {
        for k in 0..=n {
            p[(j, k)] = r[j] * racah_poly(j as i64, k as i64, &rp, cfg)?;
        }
    }
    Ok(p)
}

/// Max residuals of the three-term recurrence (in the degree `n`) and the
/// difference equation (in the grid variable `x`) over all admissible
/// indices:
///
/// ```text
/// A_j R_{j+1} - (A_j + C_j - 1 - cd q) R_j + C_j R_{j-1} = mu(k) R_j,
/// (q^{-j} + ab q^{j+1}) R_j(mu(k)) =
///   D_k R_j(mu(k-1)) - (B_k + D_k - 1 - ab q) R_j(mu(k)) + B_k R_j(mu(k+1)).
/// ```
pub fn recurrence_difference_check(rp: &RacahParams, cfg: &FieldCfg) -> Result<(f64, f64)> {
    let n = rp.n as i64;
    let table = racah_table(rp, n, n, cfg)?;
    let ab = rp.alpha * rp.beta;
    let cd = rp.gamma * rp.delta;
    let an: Vec<Scalar> = (0..=n).map(|j| racah_an(j, rp, cfg)).collect();
    let bn: Vec<Scalar> = (0..=n).map(|j| racah_bn(j, rp, cfg)).collect();
    let cn: Vec<Scalar> = (0..=n).map(|j| racah_cn(j, rp, cfg)).collect();
    let dn: Vec<Scalar> = (0..=n).map(|j| racah_dn(j, rp, cfg)).collect();
    // truncation: A_N and B_N vanish under the finiteness condition, so the
    // out-of-range R_{N+1} / R(mu(N+1)) terms carry zero weight
    if an[n as usize].norm() > cfg.tol() {
        return Err(Error::InvariantViolation(format!(
            "A_N = {} does not vanish; finiteness condition violated",
            an[n as usize]
        )));
    }
    if bn[n as usize].norm() > cfg.tol() {
        return Err(Error::InvariantViolation(format!(
            "B_N = {} does not vanish; finiteness condition violated",
            bn[n as usize]
        )));
    }
    let mut res1 = 0.0f64;
    let mut res2 = 0.0f64;
    for j in 0..=n as usize {
        for k in 0..=n as usize {
            let r_j = table[j][k];
            let up = if j < n as usize { an[j] * table[j + 1][k] } else { Scalar::new(0.0, 0.0) };
            let down = if j > 0 { cn[j] * table[j - 1][k] } else { Scalar::new(0.0, 0.0) };
            let lhs = up - (an[j] + cn[j] - ONE - cd * cfg.q()) * r_j + down;
            let rhs = rp.mu_x(k as i64, cfg) * r_j;
            res1 = res1.max((lhs - rhs).norm());

            let left = if k > 0 { dn[k] * table[j][k - 1] } else { Scalar::new(0.0, 0.0) };
            let right = if k < n as usize { bn[k] * table[j][k + 1] } else { Scalar::new(0.0, 0.0) };
            let lhs2 = left - (bn[k] + dn[k] - ONE - ab * cfg.q()) * r_j + right;
            let rhs2 = (cfg.qn(-(j as i32)) + ab * cfg.qn(j as i32 + 1)) * r_j;
            res2 = res2.max((lhs2 - rhs2).norm());
        }
    }
    Ok((res1, res2))
}

/// Report of every finiteness / irreducibility / classicality condition on
/// a q-Racah parameter set, with witnessing indices for failures.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ConditionReport {
    /// Which truncation conditions hold: `alpha q`, `beta delta q`,
    /// `gamma q` equal to `q^{-N}`.
    pub finiteness: [bool; 3],
    /// Violated irreducibility inequalities, as (condition, witnessing k).
    pub irpol_failures: Vec<(String, i64)>,
    /// Violated classicality inequalities with `l in {1, ..., 2N-1}`.
    pub classpol_failures: Vec<(String, i64)>,
    /// Removable-singularity hits: `ab q = q^{-l}` or `cd q = q^{-l}` for
    /// `l in {-1, 0, 2N, 2N+1}` (flagged, not failed).
    pub removable: Vec<(String, i64)>,
}

impl ConditionReport {
    pub fn pass(&self) -> bool {
        self.finiteness.iter().any(|b| *b)
            && self.irpol_failures.is_empty()
            && self.classpol_failures.is_empty()
    }
}

/// Evaluate the finiteness, irreducibility and classicality conditions.
pub fn validate_conditions(rp: &RacahParams, cfg: &FieldCfg) -> ConditionReport {
    let n = rp.n as i64;
    let mut irpol = Vec::new();
    let close = |a: Scalar, b: Scalar| (a - b).norm() <= cfg.tol() * (1.0 + b.norm());
    for k in 1..=n {
        let qk = cfg.qn(-(k as i32));
        let checks: [(&str, Scalar, Scalar); 9] = [
            ("alpha = q^-k", rp.alpha, qk),
            ("beta delta = q^-k", rp.beta * rp.delta, qk),
            ("gamma = q^-k", rp.gamma, qk),
            ("beta = q^-k", rp.beta, qk),
            ("alpha = delta q^-k", rp.alpha, rp.delta * qk),
            ("alpha beta = gamma q^-k", rp.alpha * rp.beta, rp.gamma * qk),
            ("gamma delta = alpha q^-k", rp.gamma * rp.delta, rp.alpha * qk),
            ("gamma = beta q^-k", rp.gamma, rp.beta * qk),
            ("delta = q^-k", rp.delta, qk),
        ];
        for (name, lhs, rhs) in checks {
            if close(lhs, rhs) {
                irpol.push((name.to_string(), k));
            }
        }
    }
    let mut classpol = Vec::new();
    let mut removable = Vec::new();
    let abq = rp.alpha * rp.beta * cfg.q();
    let cdq = rp.gamma * rp.delta * cfg.q();
    for l in -1..=(2 * n + 1) {
        let ql = cfg.qn(-(l as i32));
        let interior = (1..=(2 * n - 1)).contains(&l);
        for (name, val) in [("alpha beta q = q^-l", abq), ("gamma delta q = q^-l", cdq)] {
            if close(val, ql) {
                if interior {
                    classpol.push((name.to_string(), l));
                } else {
                    removable.push((name.to_string(), l));
                }
            }
        }
    }
    ConditionReport {
        finiteness: rp.finiteness(cfg),
        irpol_failures: irpol,
        classpol_failures: classpol,
        removable,
    }
}

/// q-Racah parameters for a border parametrization, with the border
/// constraint `q^{2mu} = -q^l` and `gamma = q^{-N-1}` substituted exactly.
pub fn border_racah_params(params: &RepParams, l: BorderL, cfg: &FieldCfg) -> Result<RacahParams> {
    let n = params.n;
    let lexp = l.exponent(n);
    let target = cfg.qn(n as i32 + 1);
    let idx = (0..3)
        .find(|&i| {
            let qji = params.jh[i] * params.jh[i];
            (qji - target).norm() <= cfg.tol() * (1.0 + target.norm())
        })
        .ok_or_else(|| {
            Error::InvariantViolation("no q^{j_i} equals q^{N+1} for the border".into())
        })?;
    let mut jh = params.jh;
    jh.swap(idx, 2);
    let [h1, h2, _] = jh;
    Ok(RacahParams {
        alpha: (h1 * h1).inv(),
        beta: (h1 * h1) * cfg.qn(-1 - lexp),
        gamma: cfg.qn(-(n as i32) - 1),
        delta: cfg.qn(lexp + 1) / ((h1 * h1) * (h2 * h2)),
        n,
    })
}

/// Residual of the modified three-term recurrence at row N under the border
/// boundary identification, max over the grid variable.
pub fn border_recurrence_check(params: &RepParams, l: BorderL, cfg: &FieldCfg) -> Result<f64> {
    let n = params.n as i64;
    let rp = border_racah_params(params, l, cfg)?;
    let cd = rp.gamma * rp.delta;
    let an = border_an(n, &rp, l, cfg);
    let cn = border_cn(n, &rp, l, cfg);
    let table = racah_table(&rp, n, n, cfg)?;
    let mut res = 0.0f64;
    for k in 0..=n as usize {
        let r_n = table[n as usize][k];
        let r_nm1 = if n > 0 { table[n as usize - 1][k] } else { Scalar::new(0.0, 0.0) };
        let mu_k = rp.mu_x(k as i64, cfg);
        let lhs = match l {
            // x_{N+1} = x_N: the A_N weight moves onto R_N
            BorderL::TwoNPlusOne => {
                an * r_n - (an + cn - ONE - cd * cfg.q()) * r_n + cn * r_nm1
            }
            // x_{N+1} = x_{N-1}: the A_N weight moves onto R_{N-1}
            BorderL::TwoN => {
                an * r_nm1 - (an + cn - ONE - cd * cfg.q()) * r_n + cn * r_nm1
            }
        };
        res = res.max((lhs - mu_k * r_n).norm());
    }
    Ok(res)
}

/// Pointwise gap of the boundary identity: `R_N = R_{N+1}` for `l = 2N+1`,
/// `R_{N+1} = R_{N-1}` for `l = 2N`, max over the grid variable.
pub fn border_boundary_identity(params: &RepParams, l: BorderL, cfg: &FieldCfg) -> Result<f64> {
    let n = params.n as i64;
    let rp = border_racah_params(params, l, cfg)?;
    let mut gap = 0.0f64;
    for x in 0..=n {
        let r_np1 = racah_poly(n + 1, x, &rp, cfg)?;
        let other = match l {
            BorderL::TwoNPlusOne => racah_poly(n, x, &rp, cfg)?,
            BorderL::TwoN => {
                if n > 0 {
                    racah_poly(n - 1, x, &rp, cfg)?
                } else {
                    ONE
                }
            }
        };
        gap = gap.max((r_np1 - other).norm());
    }
    Ok(gap)
}

/// Border `A_N` / `C_N` through the cancelled forms (the generic racah
/// coefficient forms are 0/0 there).
fn border_an(n_idx: i64, rp: &RacahParams, l: BorderL, cfg: &FieldCfg) -> Scalar {
    let k = n_idx as i32;
    let n = rp.n as i32;
    let ab = rp.alpha * rp.beta;
    let bd = rp.beta * rp.delta;
    let num = (ONE - rp.alpha * cfg.qn(k + 1))
        * (ONE - ab * cfg.qn(k + 1))
        * (ONE - bd * cfg.qn(k + 1));
    let half = ONE + cfg.qn(k - n);
    match l {
        BorderL::TwoNPlusOne => num / ((ONE - ab * cfg.qn(2 * k + 1)) * half),
        BorderL::TwoN => num / (half * (ONE - ab * cfg.qn(2 * k + 2))),
    }
}

fn border_cn(n_idx: i64, rp: &RacahParams, l: BorderL, cfg: &FieldCfg) -> Scalar {
    let k = n_idx as i32;
    let n = rp.n as i32;
    let ab = rp.alpha * rp.beta;
    let common = cfg.q() * (ONE - cfg.qn(k)) * (ONE - rp.beta * cfg.qn(k));
    match l {
        BorderL::TwoNPlusOne => {
            common * (rp.gamma - ab * cfg.qn(k)) * (rp.delta - rp.alpha * cfg.qn(k))
                / ((ONE - ab * cfg.qn(2 * k)) * (ONE - ab * cfg.qn(2 * k + 1)))
        }
        BorderL::TwoN => {
            let half = ONE + cfg.qn(k - n);
            common * rp.gamma * (rp.delta - rp.alpha * cfg.qn(k))
                / ((ONE - ab * cfg.qn(2 * k)) * half)
        }
    }
}

/// Closed form for `det(I3 + i[mu])` on the Y-basis matrices:
///
/// ```text
/// (-i q^mu / (q - q^{-1}))^{N+1}
///   * prod_{k=1}^{3} prod_{m=1}^{N+1} (q^{m - j_k} - 1)
///   / prod_{m=N+1}^{2N+1} (1 + q^{-2nu + m})
/// ```
pub fn dual_det_closed_form(params: &RepParams, cfg: &FieldCfg) -> Scalar {
    let n = params.n as i32;
    let qnu = params.qnu(cfg);
    let pref = (-I * params.qmu / cfg.qdiff()).powi(n + 1);
    let mut num = ONE;
    for h in params.jh {
        for m in 1..=(n + 1) {
            num *= cfg.qn(m) / (h * h) - ONE;
        }
    }
    let mut den = ONE;
    let qnu2inv = (qnu * qnu).inv();
    for m in (n + 1)..=(2 * n + 1) {
        den *= ONE + qnu2inv * cfg.qn(m);
    }
    pref * num / den
}

/// `I2` of a Y-basis rep from its diagonal `I1` and tridiagonal `I3` via
/// relation AW3, for cross-checks.
pub fn dual_i2_from_relation(rep_y: &Rep, cfg: &FieldCfg) -> CMat {
    i2_from_relation(&rep_y.i3, &rep_y.i1, rep_y.meta.params.a2, cfg)
}

/// The four Lambda roots (Lambda_0 and the three root Lambdas) for tests.
pub fn lambda_roots(params: &RepParams, cfg: &FieldCfg) -> [Scalar; 4] {
    let (l0, _) = lambda_g(0, params, cfg);
    [
        l0,
        lambda_root(0, params, cfg),
        lambda_root(1, params, cfg),
        lambda_root(2, params, cfg),
    ]
}

/// Algebra parameters of the swapped (`mu <-> nu`) parametrization; the
/// duality argument requires these to be `(A3, A2, A1)`.
pub fn dual_side_params(params: &RepParams, cfg: &FieldCfg) -> AlgebraParams {
    params_from_roots(&params.dual(cfg), cfg)
}
