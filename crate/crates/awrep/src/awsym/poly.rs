//! Noncommutative polynomials in the generators I1, I2, I3 with [`Coeff`]
//! coefficients.
//!
//! Words are stored over the alphabet {1, 2, 3}. A polynomial is *normal*
//! when every word is nondecreasing, i.e. of the form `I1^k I2^m I3^n`;
//! [`super::rewrite::RewriteSystem::reduce`] brings any polynomial to that
//! form.

use std::collections::BTreeMap;
use std::fmt;

use super::coeff::Coeff;

/// Generator indices 1, 2, 3.
pub type Word = Vec<u8>;

#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Coeff>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::from_word(Vec::new(), Coeff::one())
    }

    /// A single generator `I_i` (i in 1..=3).
    pub fn gen(i: u8) -> Self {
        assert!((1..=3).contains(&i), "generator index must be 1, 2 or 3");
        NcPoly::from_word(vec![i], Coeff::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Coeff) -> Self {
        NcPoly::from_word(Vec::new(), c)
    }

    /// The normal monomial `I1^k I2^m I3^n`.
    pub fn normal_monomial(k: usize, m: usize, n: usize) -> Self {
        let mut w = Vec::with_capacity(k + m + n);
        w.extend(std::iter::repeat(1).take(k));
        w.extend(std::iter::repeat(2).take(m));
        w.extend(std::iter::repeat(3).take(n));
        NcPoly::from_word(w, Coeff::one())
    }

    pub fn from_word(w: Word, c: Coeff) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NcPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// All words sorted nondecreasing?
    pub fn is_normal(&self) -> bool {
        self.terms.keys().all(|w| w.windows(2).all(|p| p[0] <= p[1]))
    }

    /// Coefficient of the normal monomial `I1^k I2^m I3^n` (zero if absent).
    pub fn coeff_of(&self, k: usize, m: usize, n: usize) -> Coeff {
        let mut w = Vec::with_capacity(k + m + n);
        w.extend(std::iter::repeat(1).take(k));
        w.extend(std::iter::repeat(2).take(m));
        w.extend(std::iter::repeat(3).take(n));
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    pub fn insert(&mut self, w: Word, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Coeff)> {
        self.terms.iter()
    }

    pub fn add(&self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.insert(w.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> NcPoly {
        let terms = self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect();
        NcPoly { terms }
    }

    pub fn scale(&self, c: &Coeff) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, x) in &self.terms {
            out.insert(w.clone(), x * c);
        }
        out
    }

    /// Bilinear concatenation product in the free algebra; the result is
    /// generally not normal.
    pub fn mul(&self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = Vec::with_capacity(w1.len() + w2.len());
                w.extend_from_slice(w1);
                w.extend_from_slice(w2);
                out.insert(w, c1 * c2);
            }
        }
        out
    }

    /// Map each A-symbol through `coeff_map` and each generator through
    /// `images` (index 0 holds the image of I1). Used by the isomorphisms.
    pub fn substitute(&self, images: &[NcPoly; 3], coeff_map: impl Fn(&Coeff) -> Coeff) -> NcPoly {
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut prod = NcPoly::constant(coeff_map(c));
            for &g in w {
                prod = prod.mul(&images[(g - 1) as usize]);
            }
            out = out.add(&prod);
        }
        out
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, "  +  ")?;
            }
            first = false;
            let word = render_word(w);
            if word.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c}) {word}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parse a normal monomial written like `I1^2I2I3^4`, `I2^2` or `1` (the
/// empty monomial) into exponents `(k, m, n)` of `I1^k I2^m I3^n`.
pub fn parse_normal_monomial(input: &str) -> crate::error::Result<(usize, usize, usize)> {
    use crate::error::Error;
    let s = input.trim();
    if s == "1" {
        return Ok((0, 0, 0));
    }
    let bytes = s.as_bytes();
    let mut exps = [0usize; 3];
    let mut pos = 0;
    let mut last_gen = 0u8;
    while pos < bytes.len() {
        if bytes[pos] != b'I' || pos + 1 >= bytes.len() {
            return Err(Error::Parse(format!("expected generator at byte {pos} of {s:?}")));
        }
        let g = bytes[pos + 1];
        if !(b'1'..=b'3').contains(&g) {
            return Err(Error::Parse(format!("bad generator index {:?}", g as char)));
        }
        let idx = g - b'0';
        if idx <= last_gen {
            return Err(Error::Parse(format!("monomial {s:?} is not normal-ordered")));
        }
        last_gen = idx;
        pos += 2;
        let mut exp = 1usize;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            exp = s[start..pos]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?;
            if exp == 0 || exp > 64 {
                return Err(Error::Parse("exponent out of range".into()));
            }
        }
        exps[(idx - 1) as usize] = exp;
    }
    Ok((exps[0], exps[1], exps[2]))
}

fn render_word(w: &[u8]) -> String {
    let mut out = String::new();
    let mut i = 0;
    while i < w.len() {
        let g = w[i];
        let mut j = i;
        while j < w.len() && w[j] == g {
            j += 1;
        }
        let count = j - i;
        if count == 1 {
            out.push_str(&format!("I{g}"));
        } else {
            out.push_str(&format!("I{g}^{count}"));
        }
        i = j;
    }
    out
}
