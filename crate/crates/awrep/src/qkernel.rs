//! Scalar context, q-number arithmetic, q-Pochhammer symbols and the
//! terminating basic hypergeometric series 4phi3.
//!
//! The q-number of a complex exponent `alpha` is
//! `[alpha]_q = (q^alpha - q^{-alpha}) / (q - q^{-1})`. All functions here
//! take the *power* `q^alpha` rather than the exponent, so no branch cut
//! is ever chosen internally.

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Scalar = Complex64;

pub const ONE: Scalar = Scalar::new(1.0, 0.0);
pub const I: Scalar = Scalar::new(0.0, 1.0);

/// Default residual / comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Scalar context: the value `q^{1/2}`, the tolerance policy, and the
/// root-of-unity guard order.
///
/// Construction fails hard if `q = q12^2` is within `tol` of a k-th root of
/// unity for any `1 <= k <= guard_order`; every theorem implemented by this
/// crate assumes q is not a root of unity.
#[derive(Clone, Debug)]
pub struct FieldCfg {
    q12: Scalar,
    tol: f64,
    guard_order: u32,
}

impl FieldCfg {
    pub fn new(q12: Scalar, tol: f64, guard_order: u32) -> Result<Self> {
        if !q12.re.is_finite() || !q12.im.is_finite() || q12.norm() == 0.0 {
            return Err(Error::InvalidScalar("q12 must be finite and nonzero"));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidScalar("tol must be positive"));
        }
        let q = q12 * q12;
        let mut qk = ONE;
        for k in 1..=guard_order {
            qk *= q;
            if (qk - ONE).norm() <= tol {
                return Err(Error::RootOfUnity { k });
            }
        }
        Ok(FieldCfg { q12, tol, guard_order })
    }

    /// Context for work with an (N+1)-dimensional representation:
    /// guard order `2N + 4`, default tolerance.
    pub fn for_dimension(q12: Scalar, n: usize) -> Result<Self> {
        Self::new(q12, DEFAULT_TOL, 2 * n as u32 + 4)
    }

    /// Default guard order 64 when no dimension is in play.
    pub fn standalone(q12: Scalar) -> Result<Self> {
        Self::new(q12, DEFAULT_TOL, 64)
    }

    pub fn q12(&self) -> Scalar {
        self.q12
    }

    pub fn q(&self) -> Scalar {
        self.q12 * self.q12
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    pub fn guard_order(&self) -> u32 {
        self.guard_order
    }

    /// `q^k` for integer k.
    pub fn qn(&self, k: i32) -> Scalar {
        self.q().powi(k)
    }

    /// `q^{k/2}` for integer k.
    pub fn qh(&self, k: i32) -> Scalar {
        self.q12.powi(k)
    }

    /// `q - q^{-1}`.
    pub fn qdiff(&self) -> Scalar {
        self.q() - self.q().inv()
    }

    /// `q^{1/2} - q^{-1/2}`.
    pub fn vdiff(&self) -> Scalar {
        self.q12 - self.q12.inv()
    }

    /// `q^{1/2} + q^{-1/2}`.
    pub fn vsum(&self) -> Scalar {
        self.q12 + self.q12.inv()
    }

    /// Approximate equality under this context's tolerance, relative to the
    /// larger magnitude.
    pub fn close(&self, a: Scalar, b: Scalar) -> bool {
        (a - b).norm() <= self.tol * (1.0 + a.norm().max(b.norm()))
    }
}

/// `[alpha]_q` from the power `qalpha = q^alpha`.
pub fn qnum(qalpha: Scalar, cfg: &FieldCfg) -> Result<Scalar> {
    if qalpha.norm() == 0.0 {
        return Err(Error::InvalidScalar("q^alpha must be nonzero"));
    }
    let d = cfg.qdiff();
    if d.norm() <= cfg.tol() {
        return Err(Error::DegenerateBase);
    }
    Ok((qalpha - qalpha.inv()) / d)
}

/// Principal-branch power `q^x = exp(x log q)`.
///
/// Exists only at the input boundary: every formula downstream depends on
/// the returned half-power values only, so callers may bypass this and
/// supply powers directly.
pub fn qpow(exponent: Scalar, cfg: &FieldCfg) -> Scalar {
    cfg.q().powc(exponent)
}

/// Principal-branch half power `q^{x/2} = exp(x log(q^{1/2}))`, evaluated on
/// the stored `q^{1/2}` so that `qpow_half(1) == cfg.q12()` exactly.
pub fn qpow_half(exponent: Scalar, cfg: &FieldCfg) -> Scalar {
    cfg.q12().powc(exponent)
}

/// q-Pochhammer symbol `(a; q)_k = prod_{i=0}^{k-1} (1 - a q^i)`.
pub fn qpoch(a: Scalar, k: usize, cfg: &FieldCfg) -> Scalar {
    let q = cfg.q();
    let mut acc = ONE;
    let mut aqi = a;
    for _ in 0..k {
        acc *= ONE - aqi;
        aqi *= q;
    }
    acc
}

/// Coefficients `c_k` of the series
/// `4phi3(num; den | q; z) = sum_k c_k z^k` truncated at `nterms`,
/// with `c_k = prod (num_j; q)_k / (prod (den_j; q)_k (q; q)_k) q^{...}`
/// folded into the usual `z = q` call sites by the caller.
///
/// A numerator factor within tolerance of zero terminates the series
/// exactly: every later coefficient is exactly 0 and no later denominator
/// factor is inspected. A denominator factor vanishing *before* termination
/// is an error.
pub fn phi43_coeffs(
    num: [Scalar; 4],
    den: [Scalar; 3],
    nterms: usize,
    cfg: &FieldCfg,
) -> Result<Vec<Scalar>> {
    let q = cfg.q();
    let mut coeffs = Vec::with_capacity(nterms + 1);
    coeffs.push(ONE);
    let mut term = ONE;
    let mut qk = ONE; // q^k
    for k in 0..nterms {
        let mut fac = ONE;
        let mut terminated = false;
        for a in num {
            let f = ONE - a * qk;
            if f.norm() <= cfg.tol() * (1.0 + (a * qk).norm()) {
                terminated = true;
                break;
            }
            fac *= f;
        }
        if terminated {
            // all remaining coefficients are exactly zero
            coeffs.resize(nterms + 1, Scalar::new(0.0, 0.0));
            return Ok(coeffs);
        }
        for b in den {
            let f = ONE - b * qk;
            if f.norm() <= cfg.tol() * (1.0 + (b * qk).norm()) {
                return Err(Error::DenominatorPole { k: k + 1 });
            }
            fac /= f;
        }
        let qq = ONE - qk * q; // (q;q) factor 1 - q^{k+1}
        if qq.norm() <= cfg.tol() * (1.0 + (qk * q).norm()) {
            return Err(Error::DenominatorPole { k: k + 1 });
        }
        fac /= qq;
        term *= fac;
        coeffs.push(term);
        qk *= q;
    }
    Ok(coeffs)
}

/// Terminating (or truncated) basic hypergeometric series
/// `4phi3(num1..num4; den1..den3 | q; z)` summed through `z^nterms`.
pub fn phi43(
    num: [Scalar; 4],
    den: [Scalar; 3],
    z: Scalar,
    nterms: usize,
    cfg: &FieldCfg,
) -> Result<Scalar> {
    let coeffs = phi43_coeffs(num, den, nterms, cfg)?;
    let mut sum = Scalar::new(0.0, 0.0);
    let mut zk = ONE;
    for c in coeffs {
        sum += c * zk;
        zk *= z;
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg_real(q: f64) -> FieldCfg {
        FieldCfg::standalone(Scalar::new(q.sqrt(), 0.0)).unwrap()
    }

    fn close(a: Scalar, b: Scalar, tol: f64) {
        assert_abs_diff_eq!(a.re, b.re, epsilon = tol);
        assert_abs_diff_eq!(a.im, b.im, epsilon = tol);
    }

    #[test]
    fn guard_rejects_roots_of_unity() {
        // q = 1
        assert!(matches!(
            FieldCfg::standalone(Scalar::new(1.0, 0.0)),
            Err(Error::RootOfUnity { k: 1 })
        ));
        // q = -1 (q12 = i)
        assert!(matches!(
            FieldCfg::standalone(Scalar::new(0.0, 1.0)),
            Err(Error::RootOfUnity { k: 2 })
        ));
        // q = exp(2 pi i / 5)
        let th = 2.0 * std::f64::consts::PI / 5.0;
        let q12 = Scalar::new((th / 2.0).cos(), (th / 2.0).sin());
        assert!(matches!(
            FieldCfg::standalone(q12),
            Err(Error::RootOfUnity { k: 5 })
        ));
        // generic point on the unit circle passes
        assert!(FieldCfg::standalone(Scalar::new(0.43f64.cos(), 0.43f64.sin())).is_ok());
        assert!(matches!(
            FieldCfg::standalone(Scalar::new(0.0, 0.0)),
            Err(Error::InvalidScalar(_))
        ));
    }

    #[test]
    fn qnum_basics() {
        let cfg = cfg_real(2.25);
        // alpha = 0
        close(qnum(ONE, &cfg).unwrap(), Scalar::new(0.0, 0.0), 1e-15);
        // alpha = 1
        close(qnum(cfg.q(), &cfg).unwrap(), ONE, 1e-15);
        // alpha = 1/2: 1 / (q^{1/2} + q^{-1/2})
        close(qnum(cfg.q12(), &cfg).unwrap(), cfg.vsum().inv(), 1e-15);
    }

    #[test]
    fn qnum_antisymmetry() {
        let cfg = FieldCfg::standalone(Scalar::new(1.17, 0.21)).unwrap();
        for &(re, im) in &[(1.3, 0.4), (0.2, -2.0), (-0.7, 0.9), (3.1, 0.0)] {
            let p = Scalar::new(re, im);
            let a = qnum(p, &cfg).unwrap();
            let b = qnum(p.inv(), &cfg).unwrap();
            close(a, -b, 1e-12);
        }
    }

    #[test]
    fn qnum_collision_law() {
        // [alpha - j] = [alpha - k] for j != k iff q^{2 alpha} = -q^{j+k}
        let cfg = cfg_real(1.7);
        let q = cfg.q();
        for (j, k) in [(0i32, 3i32), (1, 2), (-1, 4), (2, 5)] {
            // construct q^alpha with q^{2 alpha} = -q^{j+k}:
            // q^alpha = i q^{(j+k)/2}
            let qa = I * cfg.qh(j + k);
            let l = qnum(qa * q.powi(-j), &cfg).unwrap();
            let r = qnum(qa * q.powi(-k), &cfg).unwrap();
            close(l, r, 1e-10);
            // and the converse: a generic q^alpha must separate them
            let qa = Scalar::new(1.9, 0.3);
            let l = qnum(qa * q.powi(-j), &cfg).unwrap();
            let r = qnum(qa * q.powi(-k), &cfg).unwrap();
            assert!((l - r).norm() > 1e-3);
            // ... and if they collide the power is forced: scan a grid
        }
        // forward direction on sampled alpha: whenever the values collide,
        // q^{2 alpha} + q^{j+k} must vanish.
        for n in 0..200 {
            let t = 0.05 + 0.031 * n as f64;
            let qa = Scalar::new(t.cos() * 1.4, t.sin() * 1.4);
            for (j, k) in [(0i32, 1i32), (0, 2), (1, 3)] {
                let l = qnum(qa * q.powi(-j), &cfg).unwrap();
                let r = qnum(qa * q.powi(-k), &cfg).unwrap();
                if (l - r).norm() <= 1e-12 {
                    assert!((qa * qa + q.powi(j + k)).norm() <= 1e-9);
                }
            }
        }
    }

    #[test]
    fn qpow_principal_branch() {
        let cfg = cfg_real(2.25);
        close(qpow(Scalar::new(0.0, 0.0), &cfg), ONE, 1e-15);
        close(qpow(Scalar::new(2.0, 0.0), &cfg), cfg.q() * cfg.q(), 1e-12);
        close(qpow(Scalar::new(0.5, 0.0), &cfg), Scalar::new(1.5, 0.0), 1e-12);
    }

    #[test]
    fn qpoch_values() {
        let cfg = cfg_real(1.5);
        close(qpoch(Scalar::new(0.37, 1.2), 0, &cfg), ONE, 0.0);
        // first factor vanishes
        close(qpoch(ONE, 3, &cfg), Scalar::new(0.0, 0.0), 0.0);
        // (q^{-1}; q)_2 = (1 - 1/q)(1 - 1) = 0
        let a = cfg.q().inv();
        close(qpoch(a, 2, &cfg), Scalar::new(0.0, 0.0), 1e-15);
        // recursion (a;q)_{k+1} = (a;q)_k (1 - a q^k)
        let a = Scalar::new(0.4, -0.8);
        for k in 0..6usize {
            let lhs = qpoch(a, k + 1, &cfg);
            let rhs = qpoch(a, k, &cfg) * (ONE - a * cfg.q().powi(k as i32));
            close(lhs, rhs, 1e-12);
        }
    }

    #[test]
    fn phi43_trivial_cases() {
        let cfg = cfg_real(1.5);
        let gen = |x: f64, y: f64| Scalar::new(x, y);
        // numerator containing q^0 = 1 kills every k >= 1 term
        let v = phi43(
            [ONE, gen(0.3, 0.1), gen(-0.4, 0.0), gen(0.9, -0.2)],
            [gen(0.5, 0.0), gen(0.7, 0.1), gen(-0.3, 0.2)],
            gen(2.0, 1.0),
            8,
            &cfg,
        )
        .unwrap();
        close(v, ONE, 1e-14);
        // z = 0
        let v = phi43(
            [gen(0.2, 0.0), gen(0.3, 0.1), gen(-0.4, 0.0), gen(0.9, -0.2)],
            [gen(0.5, 0.0), gen(0.7, 0.1), gen(-0.3, 0.2)],
            Scalar::new(0.0, 0.0),
            8,
            &cfg,
        )
        .unwrap();
        close(v, ONE, 1e-14);
    }

    #[test]
    fn phi43_two_term_sum() {
        // num = (q^{-1}, a2, a3, a4), z = q: written-out two-term sum
        let cfg = cfg_real(1.5);
        let q = cfg.q();
        let a = [q.inv(), Scalar::new(0.3, 0.2), Scalar::new(-0.6, 0.0), Scalar::new(0.8, -0.4)];
        let b = [Scalar::new(0.5, 0.1), Scalar::new(-0.2, 0.3), Scalar::new(0.4, 0.0)];
        let got = phi43(a, b, q, 6, &cfg).unwrap();
        let expected = ONE
            + (ONE - a[0]) * (ONE - a[1]) * (ONE - a[2]) * (ONE - a[3]) * q
                / ((ONE - b[0]) * (ONE - b[1]) * (ONE - b[2]) * (ONE - q));
        close(got, expected, 1e-13);
    }

    #[test]
    fn phi43_terminating_is_polynomial() {
        // numerator parameter q^{-n}: coefficients of z^k vanish exactly for k > n
        let cfg = cfg_real(1.7);
        let q = cfg.q();
        for n in 0..5i32 {
            let coeffs = phi43_coeffs(
                [q.powi(-n), Scalar::new(0.23, 0.5), Scalar::new(1.4, -0.2), Scalar::new(-0.7, 0.1)],
                [Scalar::new(0.61, 0.0), Scalar::new(-0.35, 0.2), Scalar::new(0.8, 0.9)],
                9,
                &cfg,
            )
            .unwrap();
            assert_eq!(coeffs.len(), 10);
            for (k, c) in coeffs.iter().enumerate() {
                if k > n as usize {
                    assert_eq!(c.norm(), 0.0, "coefficient {k} must vanish exactly");
                } else {
                    assert!(c.norm() > 0.0);
                }
            }
        }
    }

    #[test]
    fn phi43_denominator_pole() {
        let cfg = cfg_real(1.5);
        let q = cfg.q();
        // denominator contains q^{-2}: pole at k = 3 <= termination index 4
        let r = phi43(
            [q.powi(-4), Scalar::new(0.3, 0.0), Scalar::new(0.5, 0.1), Scalar::new(-0.2, 0.0)],
            [q.powi(-2), Scalar::new(0.7, 0.0), Scalar::new(0.4, 0.0)],
            q,
            8,
            &cfg,
        );
        assert!(matches!(r, Err(Error::DenominatorPole { k: 3 })));
        // same pole but the series terminates first: fine
        let r = phi43(
            [q.powi(-1), Scalar::new(0.3, 0.0), Scalar::new(0.5, 0.1), Scalar::new(-0.2, 0.0)],
            [q.powi(-2), Scalar::new(0.7, 0.0), Scalar::new(0.4, 0.0)],
            q,
            8,
            &cfg,
        );
        assert!(r.is_ok());
    }
}
