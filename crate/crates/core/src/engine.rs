//! Formal integer combinations over a canonical basis.
//!
//! This is the model of the Grothendieck groups R(GL), R(G) and their tensor
//! products. Basis elements are kept in a `BTreeMap`, so iteration order and
//! every fold over terms are deterministic.

use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormalSum<B: Ord> {
    terms: BTreeMap<B, BigInt>,
}

impl<B: Ord> Default for FormalSum<B> {
    fn default() -> Self {
        FormalSum { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> FormalSum<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        let mut s = Self::zero();
        s.add_term(b, BigInt::one());
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (B, BigInt)>>(it: I) -> Self {
        let mut s = Self::zero();
        for (b, c) in it {
            s.add_term(b, c);
        }
        s
    }

    pub fn add_term(&mut self, b: B, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_one(&mut self, b: B) {
        self.add_term(b, BigInt::one());
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for (b, c) in &other.terms {
            self.add_term(b.clone(), c * k);
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_assign(other);
        s
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut s = self.clone();
        s.add_scaled(other, &-BigInt::one());
        s
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        FormalSum { terms: self.terms.iter().map(|(b, c)| (b.clone(), c * k)).collect() }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigInt::one())
    }

    pub fn coeff(&self, b: &B) -> BigInt {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &BigInt)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<B, BigInt> {
        self.terms
    }

    /// Sum of all coefficients.
    pub fn total(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_positive())
    }

    pub fn all_negative(&self) -> bool {
        self.terms.values().all(|c| c.is_negative())
    }

    /// Linear extension of a basis map.
    pub fn map_basis<C: Ord + Clone>(&self, mut f: impl FnMut(&B) -> C) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Linear extension of a map from the basis to sums.
    pub fn flat_map<C: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&B) -> Result<FormalSum<C>, E>,
    ) -> Result<FormalSum<C>, E> {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b)?, c);
        }
        Ok(out)
    }

    pub fn filter(&self, mut keep: impl FnMut(&B) -> bool) -> Self {
        FormalSum {
            terms: self.terms.iter().filter(|(b, _)| keep(b)).map(|(b, c)| (b.clone(), c.clone())).collect(),
        }
    }

    /// Bilinear extension of a basis product.
    pub fn product<A: Ord + Clone, C: Ord + Clone>(
        &self,
        other: &FormalSum<A>,
        mut f: impl FnMut(&B, &A) -> C,
    ) -> FormalSum<C> {
        let mut out = FormalSum::zero();
        for (b, c) in &self.terms {
            for (a, d) in &other.terms {
                out.add_term(f(b, a), c * d);
            }
        }
        out
    }
}

impl<B: Ord + Clone> FromIterator<B> for FormalSum<B> {
    fn from_iter<I: IntoIterator<Item = B>>(it: I) -> Self {
        let mut s = Self::zero();
        for b in it {
            s.add_one(b);
        }
        s
    }
}

impl<B: Ord + fmt::Display> fmt::Display for FormalSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, c.is_negative()) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                _ => write!(f, " {sign} ")?,
            }
            if mag.is_one() {
                write!(f, "{b}")?;
            } else {
                write!(f, "{mag}*({b})")?;
            }
        }
        Ok(())
    }
}

impl<B: Ord + fmt::Display> fmt::Debug for FormalSum<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[(&'static str, i64)]) -> FormalSum<&'static str> {
        FormalSum::from_terms(v.iter().map(|(b, c)| (*b, BigInt::from(*c))))
    }

    #[test]
    fn zero_terms_are_dropped() {
        let x = s(&[("a", 1), ("b", 2)]).plus(&s(&[("a", -1)]));
        assert_eq!(x, s(&[("b", 2)]));
        assert_eq!(x.len(), 1);
        assert!(s(&[("a", 0)]).is_zero());
    }

    #[test]
    fn scaling() {
        let rho = s(&[("rho", 1)]);
        assert_eq!(rho.plus(&rho).scale(&BigInt::from(2)), s(&[("rho", 4)]));
        assert!(rho.scale(&BigInt::zero()).is_zero());
    }

    #[test]
    fn bilinear_product() {
        let x = s(&[("a", 1), ("b", 2)]);
        let y = s(&[("c", 3)]);
        let p = x.product(&y, |l, r| format!("{l}{r}"));
        assert_eq!(p.coeff(&"ac".to_string()), BigInt::from(3));
        assert_eq!(p.coeff(&"bc".to_string()), BigInt::from(6));
    }

    #[test]
    fn display() {
        assert_eq!(s(&[("a", 1), ("b", -2)]).to_string(), "a - 2*(b)");
        assert_eq!(FormalSum::<&str>::zero().to_string(), "0");
    }
}
