//! Canonical basis words of R(GL) and R(G).

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::engine::FormalSum;
use crate::error::{Error, Result};
use crate::symbols::{Ambient, CuspidalG, CuspidalGL, Exp, HalfInt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Delta,
    Zeta,
}

/// `δ([ν^lo ρ, ν^hi ρ])` or `ζ([ν^lo ρ, ν^hi ρ])`.
///
/// A single cuspidal (`lo == hi`) is always stored with kind `Delta`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SegmentRep {
    kind: Kind,
    rho: CuspidalGL,
    lo: HalfInt,
    hi: HalfInt,
}

impl SegmentRep {
    /// `Ok(None)` for an empty segment (`lo > hi`), which stands for the
    /// identity of R(GL).
    pub fn new(kind: Kind, rho: &CuspidalGL, lo: HalfInt, hi: HalfInt) -> Result<Option<Self>> {
        if !lo.congruent(hi) {
            return Err(Error::Invariant(format!(
                "segment [{lo},{hi}] of {rho}: endpoints differ by a non-integer"
            )));
        }
        if lo > hi {
            return Ok(None);
        }
        let kind = if lo == hi { Kind::Delta } else { kind };
        Ok(Some(SegmentRep { kind, rho: rho.clone(), lo, hi }))
    }

    /// Non-empty segment, erroring otherwise.
    pub fn checked(kind: Kind, rho: &CuspidalGL, lo: HalfInt, hi: HalfInt) -> Result<Self> {
        Self::new(kind, rho, lo, hi)?.ok_or_else(|| {
            Error::Invariant(format!("segment [{lo},{hi}] of {rho} has hi < lo"))
        })
    }

    pub fn delta(rho: &CuspidalGL, lo: HalfInt, hi: HalfInt) -> Result<Self> {
        Self::checked(Kind::Delta, rho, lo, hi)
    }

    pub fn zeta(rho: &CuspidalGL, lo: HalfInt, hi: HalfInt) -> Result<Self> {
        Self::checked(Kind::Zeta, rho, lo, hi)
    }

    pub fn cusp(rho: &CuspidalGL, e: HalfInt) -> Self {
        SegmentRep { kind: Kind::Delta, rho: rho.clone(), lo: e, hi: e }
    }

    /// Construction for callers that have already checked the lattice
    /// condition; empty segments give `None`.
    pub(crate) fn raw(kind: Kind, rho: &CuspidalGL, lo: HalfInt, hi: HalfInt) -> Option<Self> {
        debug_assert!(lo.congruent(hi));
        (lo <= hi).then(|| SegmentRep {
            kind: if lo == hi { Kind::Delta } else { kind },
            rho: rho.clone(),
            lo,
            hi,
        })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }
    pub fn rho(&self) -> &CuspidalGL {
        &self.rho
    }
    pub fn lo(&self) -> HalfInt {
        self.lo
    }
    pub fn hi(&self) -> HalfInt {
        self.hi
    }

    /// Number of cuspidals in the segment.
    pub fn len(&self) -> i64 {
        self.hi.int_diff(self.lo).unwrap() + 1
    }

    pub fn is_cuspidal(&self) -> bool {
        self.lo == self.hi
    }

    /// GL rank: segment length times the degree of ρ.
    pub fn rank(&self) -> u64 {
        self.len() as u64 * self.rho.degree as u64
    }

    pub fn cuspidals(&self) -> impl Iterator<Item = Exp> + '_ {
        HalfInt::range(self.lo, self.hi).map(move |e| Exp::new(&self.rho, e))
    }

    /// Exponents in the order of the embedding into a cuspidal product:
    /// descending for δ, ascending for ζ.
    pub fn flag(&self) -> Vec<Exp> {
        let mut v: Vec<Exp> = self.cuspidals().collect();
        if self.kind == Kind::Delta {
            v.reverse();
        }
        v
    }

    pub fn with_kind(&self, kind: Kind) -> Self {
        SegmentRep::raw(kind, &self.rho, self.lo, self.hi).unwrap()
    }

    /// Contragredient: `[lo,hi]` of ρ goes to `[-hi,-lo]` of the dual symbol.
    pub fn dual(&self, amb: &Ambient) -> Result<Self> {
        let rho = amb.dual_symbol(&self.rho)?;
        Ok(SegmentRep::raw(self.kind, &rho, -self.hi, -self.lo).unwrap())
    }

    /// Midpoint exponent `e(δ) = (lo + hi) / 2`.
    pub fn e(&self) -> HalfInt {
        self.lo.midpoint(self.hi).expect("segment endpoints are lattice-congruent")
    }
}

impl fmt::Display for SegmentRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_cuspidal() {
            return write!(f, "nu^{} {}", self.lo, self.rho);
        }
        let k = match self.kind {
            Kind::Delta => "d",
            Kind::Zeta => "z",
        };
        write!(f, "{k}([{},{};{}])", self.lo, self.hi, self.rho)
    }
}

impl fmt::Debug for SegmentRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A basis word of R(GL): a sorted multiset of segment representations.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GLWord(Vec<SegmentRep>);

impl GLWord {
    pub fn one() -> Self {
        GLWord(Vec::new())
    }

    pub fn from_factors<I: IntoIterator<Item = SegmentRep>>(it: I) -> Self {
        let mut v: Vec<SegmentRep> = it.into_iter().collect();
        v.sort();
        GLWord(v)
    }

    pub fn single(s: SegmentRep) -> Self {
        GLWord(vec![s])
    }

    pub fn of_opt(s: Option<SegmentRep>) -> Self {
        GLWord(s.into_iter().collect())
    }

    pub fn factors(&self) -> &[SegmentRep] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn rank(&self) -> u64 {
        self.0.iter().map(SegmentRep::rank).sum()
    }

    /// Number of cuspidals in the support.
    pub fn cuspidal_count(&self) -> i64 {
        self.0.iter().map(SegmentRep::len).sum()
    }

    pub fn times(&self, other: &GLWord) -> GLWord {
        if other.0.is_empty() {
            return self.clone();
        }
        if self.0.is_empty() {
            return other.clone();
        }
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            if self.0[i] <= other.0[j] {
                v.push(self.0[i].clone());
                i += 1;
            } else {
                v.push(other.0[j].clone());
                j += 1;
            }
        }
        v.extend_from_slice(&self.0[i..]);
        v.extend_from_slice(&other.0[j..]);
        GLWord(v)
    }

    pub fn with(&self, s: SegmentRep) -> GLWord {
        self.times(&GLWord::single(s))
    }

    pub fn without_index(&self, i: usize) -> GLWord {
        let mut v = self.0.clone();
        v.remove(i);
        GLWord(v)
    }

    pub fn cuspidals(&self) -> impl Iterator<Item = Exp> + '_ {
        self.0.iter().flat_map(|s| s.cuspidals())
    }

    pub fn dual(&self, amb: &Ambient) -> Result<GLWord> {
        Ok(GLWord::from_factors(self.0.iter().map(|s| s.dual(amb)).collect::<Result<Vec<_>>>()?))
    }

    pub fn is_cuspidal_word(&self) -> bool {
        self.0.iter().all(SegmentRep::is_cuspidal)
    }
}

impl fmt::Display for GLWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GLWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An opaque tempered representation, identified by its full description.
///
/// `support` lists its GL cuspidal support (above `base`). When `embeds`
/// holds, the listed factors, in order and induced to `base`, contain the
/// atom as a subrepresentation, so their flags give a Jacquet-module term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemperedAtom {
    pub name: String,
    pub origin: String,
    pub params: Vec<(String, String)>,
    pub base: Arc<CuspidalG>,
    pub support: Vec<SegmentRep>,
    pub embeds: bool,
    pub condition: Option<String>,
}

impl TemperedAtom {
    /// Cuspidal flag from the defining embedding, if one is registered.
    pub fn flag(&self) -> Option<Vec<Exp>> {
        self.embeds.then(|| self.support.iter().flat_map(SegmentRep::flag).collect())
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GAtom {
    Cuspidal(Arc<CuspidalG>),
    Tempered(Arc<TemperedAtom>),
}

impl GAtom {
    pub fn cuspidal(s: &Arc<CuspidalG>) -> Self {
        GAtom::Cuspidal(s.clone())
    }

    pub fn name(&self) -> String {
        match self {
            GAtom::Cuspidal(s) => s.label.to_string(),
            GAtom::Tempered(t) => t.name.clone(),
        }
    }

    /// The cuspidal representation of the group at the bottom of the support.
    pub fn base(&self) -> &Arc<CuspidalG> {
        match self {
            GAtom::Cuspidal(s) => s,
            GAtom::Tempered(t) => &t.base,
        }
    }

    /// GL cuspidals in the support of the atom.
    pub fn gl_support(&self) -> Vec<Exp> {
        match self {
            GAtom::Cuspidal(_) => Vec::new(),
            GAtom::Tempered(t) => t.support.iter().flat_map(|s| s.cuspidals()).collect(),
        }
    }

    pub fn flag(&self) -> Option<Vec<Exp>> {
        match self {
            GAtom::Cuspidal(_) => Some(Vec::new()),
            GAtom::Tempered(t) => t.flag(),
        }
    }
}

impl fmt::Display for GAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Debug for GAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A basis word of R(G): `gl ⋊ atom`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GWord {
    pub gl: GLWord,
    pub atom: GAtom,
}

impl GWord {
    pub fn new(gl: GLWord, atom: GAtom) -> Self {
        GWord { gl, atom }
    }

    pub fn atom(atom: GAtom) -> Self {
        GWord { gl: GLWord::one(), atom }
    }

    /// `π ⋊ (gl ⋊ atom) = (π × gl) ⋊ atom`.
    pub fn induce(&self, pi: &GLWord) -> GWord {
        GWord { gl: pi.times(&self.gl), atom: self.atom.clone() }
    }

    /// Canonical representative of the class in R(G): in R(G),
    /// `π ⋊ σ = π̃ ⋊ σ`, so each factor is replaced by whichever of itself and
    /// its contragredient has the larger exponent (ties broken by order).
    pub fn rg_class(&self, amb: &Ambient) -> Result<GWord> {
        let mut v = Vec::with_capacity(self.gl.0.len());
        for s in &self.gl.0 {
            let d = s.dual(amb)?;
            let keep = match s.e().cmp(&d.e()) {
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Equal => *s <= d,
            };
            v.push(if keep { s.clone() } else { d });
        }
        Ok(GWord { gl: GLWord::from_factors(v), atom: self.atom.clone() })
    }
}

impl fmt::Display for GWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gl.is_one() {
            write!(f, "{}", self.atom)
        } else {
            write!(f, "{} |x| {}", self.gl, self.atom)
        }
    }
}

impl fmt::Debug for GWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `A ⊗ B` as a basis element.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor<A, B>(pub A, pub B);

impl<A: fmt::Display, B: fmt::Display> fmt::Display for Tensor<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (x) {}", self.0, self.1)
    }
}

impl<A: fmt::Display, B: fmt::Display> fmt::Debug for Tensor<A, B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An ordered sequence of GL cuspidals: a term of a minimal Jacquet module.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Flag(pub Vec<Exp>);

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " (x) ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub type GLSum = FormalSum<GLWord>;
pub type GSum = FormalSum<GWord>;
pub type GLTensorSum = FormalSum<Tensor<GLWord, GLWord>>;
pub type MuSum = FormalSum<Tensor<GLWord, GWord>>;
pub type JacquetSum = FormalSum<Tensor<Flag, GAtom>>;

/// `ν^a ρ × ν^{a+1} ρ = δ([a,a+1]) + ζ([a,a+1])`, read in either direction.
///
/// Given a length-two segment (of either kind), returns the sum
/// `δ + ζ` on that segment, which equals the cuspidal product.
pub fn expand_cuspidal_product(s: &SegmentRep) -> Result<GLSum> {
    if s.len() != 2 {
        return Err(Error::Unsupported(format!(
            "cuspidal-product expansion needs a segment of length two, got {s}"
        )));
    }
    let mut out = GLSum::zero();
    out.add_one(GLWord::single(s.with_kind(Kind::Delta)));
    out.add_one(GLWord::single(s.with_kind(Kind::Zeta)));
    Ok(out)
}

/// The cuspidal product `ν^lo ρ × ν^hi ρ` for the same length-two segment.
pub fn cuspidal_product_of(s: &SegmentRep) -> GLWord {
    GLWord::from_factors(s.cuspidals().map(|c| SegmentRep::cusp(&c.rho, c.e)))
}

/// A segment in the basis of products of δ's. For ζ on `n` cuspidals this is
/// the alternating sum over compositions of the segment into consecutive
/// blocks, `Σ (-1)^{n-k} δ(B₁) × ⋯ × δ(B_k)`.
pub fn segment_in_delta_basis(s: &SegmentRep) -> GLSum {
    if s.kind() == Kind::Delta || s.is_cuspidal() {
        return GLSum::basis(GLWord::single(s.clone()));
    }
    let n = s.len();
    let mut out = GLSum::zero();
    for cuts in 0u64..(1 << (n - 1)) {
        let mut blocks = Vec::new();
        let mut start = s.lo();
        for i in 0..n - 1 {
            if cuts >> i & 1 == 1 {
                let end = s.lo() + i;
                blocks.extend(SegmentRep::raw(Kind::Delta, s.rho(), start, end));
                start = end + 1;
            }
        }
        blocks.extend(SegmentRep::raw(Kind::Delta, s.rho(), start, s.hi()));
        let sign = if (n - blocks.len() as i64) % 2 == 0 { 1 } else { -1 };
        out.add_term(GLWord::from_factors(blocks), BigInt::from(sign));
    }
    out
}

/// A word rewritten with δ factors only.
pub fn word_in_delta_basis(w: &GLWord) -> GLSum {
    let mut acc = GLSum::basis(GLWord::one());
    for s in w.factors() {
        acc = gl_product(&acc, &segment_in_delta_basis(s));
    }
    acc
}

/// Product of two GL sums.
pub fn gl_product(x: &GLSum, y: &GLSum) -> GLSum {
    x.product(y, |a, b| a.times(b))
}

/// Componentwise product of two tensor sums.
pub fn tensor_product(x: &GLTensorSum, y: &GLTensorSum) -> GLTensorSum {
    x.product(y, |a, b| Tensor(a.0.times(&b.0), a.1.times(&b.1)))
}

/// `(a ⊗ b) ⋊ (c ⊗ d) = (a × c) ⊗ (b ⋊ d)`.
pub fn rtimes_tensor(x: &GLTensorSum, y: &MuSum) -> MuSum {
    x.product(y, |a, b| Tensor(a.0.times(&b.0), b.1.induce(&a.1)))
}

pub fn one_coeff() -> BigInt {
    BigInt::from(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::Duality;

    fn h(t: i64) -> HalfInt {
        HalfInt::int(t)
    }

    fn rho() -> CuspidalGL {
        CuspidalGL::new("rho", Duality::SelfDual)
    }

    #[test]
    fn cuspidal_has_single_form() {
        let a = SegmentRep::checked(Kind::Zeta, &rho(), h(1), h(1)).unwrap();
        assert_eq!(a, SegmentRep::cusp(&rho(), h(1)));
        assert_eq!(a.to_string(), "nu^1 rho");
    }

    #[test]
    fn reversed_segment_is_empty_and_checked_rejects_it() {
        assert!(SegmentRep::new(Kind::Delta, &rho(), h(2), h(1)).unwrap().is_none());
        assert!(SegmentRep::delta(&rho(), h(2), h(1)).is_err());
        assert!(SegmentRep::new(Kind::Delta, &rho(), HalfInt::HALF, h(1)).is_err());
    }

    #[test]
    fn gl_product_is_multiset_union() {
        let a = GLWord::single(SegmentRep::cusp(&rho(), h(1)));
        let b = GLWord::single(SegmentRep::cusp(&rho(), h(2)));
        assert_eq!(a.times(&b), b.times(&a));
        assert_eq!(a.times(&GLWord::one()), a);
        assert_eq!(a.times(&b).to_string(), "nu^1 rho x nu^2 rho");
    }

    #[test]
    fn expansion_identity() {
        let s = SegmentRep::delta(&rho(), h(0), h(1)).unwrap();
        let e = expand_cuspidal_product(&s).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(&GLWord::single(s.clone())), BigInt::from(1));
        assert_eq!(e.coeff(&GLWord::single(s.with_kind(Kind::Zeta))), BigInt::from(1));
        let half = SegmentRep::delta(&rho(), -HalfInt::HALF, HalfInt::HALF).unwrap();
        assert_eq!(expand_cuspidal_product(&half).unwrap().len(), 2);
        assert!(expand_cuspidal_product(&SegmentRep::cusp(&rho(), h(0))).is_err());
    }

    #[test]
    fn segment_exponent() {
        let s = SegmentRep::delta(&rho(), h(-2), h(-1)).unwrap();
        assert_eq!(s.e(), HalfInt::from_twice(-3));
        assert_eq!(SegmentRep::delta(&rho(), h(-1), h(1)).unwrap().e(), HalfInt::ZERO);
    }

    #[test]
    fn zeta_through_deltas() {
        let z = SegmentRep::zeta(&rho(), h(1), h(3)).unwrap();
        let got = segment_in_delta_basis(&z);
        let c = |e| SegmentRep::cusp(&rho(), h(e));
        let d = |a, b| SegmentRep::delta(&rho(), h(a), h(b)).unwrap();
        let want = GLSum::from_terms([
            (GLWord::from_factors([c(1), c(2), c(3)]), BigInt::from(1)),
            (GLWord::from_factors([c(1), d(2, 3)]), BigInt::from(-1)),
            (GLWord::from_factors([d(1, 2), c(3)]), BigInt::from(-1)),
            (GLWord::single(d(1, 3)), BigInt::from(1)),
        ]);
        assert_eq!(got, want);
        // Length two agrees with the cuspidal-product identity.
        let z2 = SegmentRep::zeta(&rho(), h(0), h(1)).unwrap();
        let lhs = segment_in_delta_basis(&z2).plus(&GLSum::basis(GLWord::single(z2.with_kind(Kind::Delta))));
        assert_eq!(lhs, GLSum::basis(cuspidal_product_of(&z2)));
    }
}