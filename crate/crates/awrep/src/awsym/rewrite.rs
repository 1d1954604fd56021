//! Normal-ordering rewrite system for the monomial order `I1 <= I2 <= I3`
//! and the exact checks built on it: confluence of the single overlap
//! ambiguity `I3 I2 I1` and centrality of the Casimir element.
//!
//! The rules come from rewriting the defining relations:
//!
//! ```text
//! I2 I1 -> q I1 I2 - q^{1/2} (I3 + A3)
//! I3 I2 -> q I2 I3 - q^{1/2} (I1 + A1)
//! I3 I1 -> q^{-1} I1 I3 + q^{-1/2} (I2 + A2)
//! ```
//!
//! Each step keeps the total degree and strictly lowers the inversion count
//! at that degree, or drops the degree by one, so rewriting terminates; a
//! step bound polynomial in the input degree guards against rule-set bugs.

use super::coeff::Coeff;
use super::poly::{NcPoly, Word};
use crate::error::{Error, Result};

/// Replacement polynomials for the three descents `(2,1)`, `(3,2)`, `(3,1)`.
#[derive(Clone)]
pub struct RewriteSystem {
    rep21: NcPoly,
    rep32: NcPoly,
    rep31: NcPoly,
}

impl RewriteSystem {
    /// The Askey-Wilson rules with symbolic parameters A1, A2, A3.
    pub fn askey_wilson() -> Self {
        let rep21 = NcPoly::normal_monomial(1, 1, 0)
            .scale(&Coeff::v_pow(1, 2))
            .add(&NcPoly::gen(3).scale(&Coeff::v_pow(-1, 1)))
            .add(&NcPoly::constant(&Coeff::v_pow(-1, 1) * &Coeff::a_sym(3)));
        let rep32 = NcPoly::normal_monomial(0, 1, 1)
            .scale(&Coeff::v_pow(1, 2))
            .add(&NcPoly::gen(1).scale(&Coeff::v_pow(-1, 1)))
            .add(&NcPoly::constant(&Coeff::v_pow(-1, 1) * &Coeff::a_sym(1)));
        let rep31 = NcPoly::normal_monomial(1, 0, 1)
            .scale(&Coeff::v_pow(1, -2))
            .add(&NcPoly::gen(2).scale(&Coeff::v_pow(1, -1)))
            .add(&NcPoly::constant(&Coeff::v_pow(1, -1) * &Coeff::a_sym(2)));
        RewriteSystem { rep21, rep32, rep31 }
    }

    /// The rules with `A1 = A2 = A3 = 0` (the `U'_q(so3)` specialization).
    pub fn with_zero_params() -> Self {
        let aw = Self::askey_wilson();
        RewriteSystem {
            rep21: zero_params(&aw.rep21),
            rep32: zero_params(&aw.rep32),
            rep31: zero_params(&aw.rep31),
        }
    }

    /// Arbitrary replacement rules; used by tests to perturb the system.
    pub fn custom(rep21: NcPoly, rep32: NcPoly, rep31: NcPoly) -> Self {
        RewriteSystem { rep21, rep32, rep31 }
    }

    fn replacement(&self, hi: u8, lo: u8) -> &NcPoly {
        match (hi, lo) {
            (2, 1) => &self.rep21,
            (3, 2) => &self.rep32,
            (3, 1) => &self.rep31,
            _ => unreachable!("no rule for ({hi},{lo})"),
        }
    }

    /// Unique normal form with all monomials ordered `I1^k I2^m I3^n`.
    /// Idempotent. Errors with [`Error::NonTermination`] only if the rule
    /// set fails to terminate within the step bound (an implementation bug).
    pub fn reduce(&self, p: &NcPoly) -> Result<NcPoly> {
        let deg = p.total_degree() as u64;
        // generous polynomial bound: distinct words regroup in the work map,
        // so actual step counts stay far below this
        let bound = 50_000 + 200 * (p.num_terms() as u64) * (deg + 1).pow(8);
        let mut steps: u64 = 0;

        let mut normal = NcPoly::zero();
        let mut work = NcPoly::zero();
        for (w, c) in p.terms() {
            if is_sorted(w) {
                normal.insert(w.clone(), c.clone());
            } else {
                work.insert(w.clone(), c.clone());
            }
        }
        while !work.is_zero() {
            let mut next = NcPoly::zero();
            for (w, c) in work.terms() {
                match first_descent(w) {
                    None => normal.insert(w.clone(), c.clone()),
                    Some(i) => {
                        steps += 1;
                        if steps > bound {
                            return Err(Error::NonTermination);
                        }
                        let rep = self.replacement(w[i], w[i + 1]);
                        for (rw, rc) in rep.terms() {
                            let mut nw: Word =
                                Vec::with_capacity(w.len() - 2 + rw.len());
                            nw.extend_from_slice(&w[..i]);
                            nw.extend_from_slice(rw);
                            nw.extend_from_slice(&w[i + 2..]);
                            let nc = c * rc;
                            if is_sorted(&nw) {
                                normal.insert(nw, nc);
                            } else {
                                next.insert(nw, nc);
                            }
                        }
                    }
                }
            }
            work = next;
        }
        Ok(normal)
    }

    /// Resolve the single overlap ambiguity `I3 I2 I1` both ways and compare
    /// the fully reduced results with exact arithmetic.
    pub fn diamond_check(&self) -> Result<bool> {
        // path 1: rewrite the prefix I3 I2 first
        let path1 = self.rep32.mul(&NcPoly::gen(1));
        // path 2: rewrite the suffix I2 I1 first
        let path2 = NcPoly::gen(3).mul(&self.rep21);
        let r1 = self.reduce(&path1)?;
        let r2 = self.reduce(&path2)?;
        Ok(r1.sub(&r2).is_zero())
    }
}

fn zero_params(p: &NcPoly) -> NcPoly {
    let mut out = NcPoly::zero();
    for (w, c) in p.terms() {
        out.insert(w.clone(), c.without_params());
    }
    out
}

fn is_sorted(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] <= p[1])
}

fn first_descent(w: &[u8]) -> Option<usize> {
    (0..w.len().saturating_sub(1)).find(|&i| w[i] > w[i + 1])
}

/// The three defining relations as elements that must reduce to zero:
/// `q^{1/2} I_a I_b - q^{-1/2} I_b I_a - I_c - A_c`.
pub fn defining_relations() -> [NcPoly; 3] {
    let rel = |a: u8, b: u8, c: u8| {
        NcPoly::gen(a)
            .mul(&NcPoly::gen(b))
            .scale(&Coeff::v_pow(1, 1))
            .add(&NcPoly::gen(b).mul(&NcPoly::gen(a)).scale(&Coeff::v_pow(-1, -1)))
            .add(&NcPoly::gen(c).neg())
            .add(&NcPoly::constant(-&Coeff::a_sym(c)))
    };
    [rel(1, 2, 3), rel(2, 3, 1), rel(3, 1, 2)]
}

/// The Casimir element in normal form:
/// `q^2 I1^2 + I2^2 + q^2 I3^2 - (q^{5/2} - q^{1/2}) I1 I2 I3
///  + q(q+1) A1 I1 + (q+1) A2 I2 + q(q+1) A3 I3`.
pub fn casimir() -> NcPoly {
    let q2 = Coeff::v_pow(1, 4);
    let mid = &Coeff::v_pow(1, 5) - &Coeff::v_pow(1, 1); // q^{5/2} - q^{1/2}
    let qq1 = &Coeff::v_pow(1, 4) + &Coeff::v_pow(1, 2); // q(q+1)
    let q1 = &Coeff::v_pow(1, 2) + &Coeff::int(1); // q+1
    let mut c = NcPoly::normal_monomial(2, 0, 0).scale(&q2);
    c = c.add(&NcPoly::normal_monomial(0, 2, 0));
    c = c.add(&NcPoly::normal_monomial(0, 0, 2).scale(&q2));
    c = c.add(&NcPoly::normal_monomial(1, 1, 1).scale(&(-&mid)));
    c = c.add(&NcPoly::gen(1).scale(&(&qq1 * &Coeff::a_sym(1))));
    c = c.add(&NcPoly::gen(2).scale(&(&q1 * &Coeff::a_sym(2))));
    c = c.add(&NcPoly::gen(3).scale(&(&qq1 * &Coeff::a_sym(3))));
    c
}

/// For each generator `g`, whether `reduce(C g - g C)` is exactly zero.
pub fn centrality_check(sys: &RewriteSystem) -> Result<[bool; 3]> {
    centrality_check_of(sys, &casimir())
}

/// Centrality of an arbitrary element (used to exercise corruptions).
pub fn centrality_check_of(sys: &RewriteSystem, c: &NcPoly) -> Result<[bool; 3]> {
    let mut out = [false; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        let g = NcPoly::gen(i as u8 + 1);
        let comm = c.mul(&g).sub(&g.mul(c));
        *slot = sys.reduce(&comm)?.is_zero();
    }
    Ok(out)
}
