//! Exact coefficient ring for the normal-ordering engine: finite sums of
//! `c * v^e * A1^a A2^b A3^g` with rational `c`, integer `e` (v stands for
//! `q^{1/2}`) and nonnegative `a`, `b`, `g`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `(e, a, b, g)`: exponent of v and degrees in A1, A2, A3.
pub type CoeffKey = (i64, u32, u32, u32);

#[derive(Clone, PartialEq, Eq, Default)]
pub struct Coeff {
    terms: BTreeMap<CoeffKey, BigRational>,
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Coeff::term(1, (0, 0, 0, 0))
    }

    pub fn term(c: i64, key: CoeffKey) -> Self {
        Self::term_rat(BigRational::from(BigInt::from(c)), key)
    }

    pub fn term_rat(c: BigRational, key: CoeffKey) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(key, c);
        }
        Coeff { terms }
    }

    /// `c * v^e`.
    pub fn v_pow(c: i64, e: i64) -> Self {
        Self::term(c, (e, 0, 0, 0))
    }

    /// The symbol A1, A2 or A3 (index 1-based).
    pub fn a_sym(i: u8) -> Self {
        match i {
            1 => Self::term(1, (0, 1, 0, 0)),
            2 => Self::term(1, (0, 0, 1, 0)),
            3 => Self::term(1, (0, 0, 0, 1)),
            _ => panic!("A-symbol index must be 1, 2 or 3"),
        }
    }

    pub fn int(c: i64) -> Self {
        Self::term(c, (0, 0, 0, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn insert(&mut self, key: CoeffKey, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Specialize `A1 = A2 = A3 = 0` (drops every term with positive A-degree).
    pub fn without_params(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|((_, a, b, g), _)| *a == 0 && *b == 0 && *g == 0)
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        Coeff { terms }
    }

    /// Apply a permutation to the A-symbols: `A_i -> A_{perm[i-1]}`.
    pub fn permute_params(&self, perm: [u8; 3]) -> Self {
        let mut out = Coeff::zero();
        for (&(e, a, b, g), c) in &self.terms {
            let mut degs = [0u32; 3];
            for (deg, &target) in [a, b, g].iter().zip(perm.iter()) {
                degs[(target - 1) as usize] += *deg;
            }
            out.insert((e, degs[0], degs[1], degs[2]), c.clone());
        }
        out
    }

    /// Substitute `A1 -> s1 A1, A2 -> s2 A2, A3 -> s3 A3` with signs `+-1`.
    pub fn scale_params(&self, signs: [i64; 3]) -> Self {
        let mut out = Coeff::zero();
        for (&(e, a, b, g), c) in &self.terms {
            let mut s = BigInt::one();
            for (deg, sign) in [a, b, g].into_iter().zip(signs) {
                if sign < 0 && deg % 2 == 1 {
                    s = -s;
                }
            }
            out.insert((e, a, b, g), c * BigRational::from(s));
        }
        out
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, c.clone());
        }
        out
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        for (k, c) in &rhs.terms {
            self.insert(*k, c.clone());
        }
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(*k, -c.clone());
        }
        out
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        let terms = self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect();
        Coeff { terms }
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        let mut out = Coeff::zero();
        for (&(e1, a1, b1, g1), c1) in &self.terms {
            for (&(e2, a2, b2, g2), c2) in &rhs.terms {
                out.insert((e1 + e2, a1 + a2, b1 + b2, g1 + g2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(e, a, b, g), c) in &self.terms {
            let mut parts: Vec<String> = Vec::new();
            if e != 0 {
                parts.push(if e == 1 { "v".into() } else { format!("v^{e}") });
            }
            for (deg, name) in [(a, "A1"), (b, "A2"), (g, "A3")] {
                if deg == 1 {
                    parts.push(name.into());
                } else if deg > 1 {
                    parts.push(format!("{name}^{deg}"));
                }
            }
            let mono = parts.join("*");
            let (sign, mag) = if c < &BigRational::zero() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
