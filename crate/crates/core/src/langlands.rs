//! Langlands data `L(δ₁, …, δ_k; τ)` and the strongly positive and
//! ζ-type builders that feed the classifier.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::symbols::{CuspidalG, CuspidalGL, Exp, HalfInt};
use crate::word::{Flag, GAtom, GLWord, GWord, Kind, SegmentRep, Tensor};

/// `e(δ([ν^lo ρ, ν^hi ρ])) = (lo + hi) / 2`.
pub fn e_of_delta(s: &SegmentRep) -> Result<HalfInt> {
    if s.kind() != Kind::Delta {
        return Err(Error::Invariant(format!("e(·) is defined on delta segments, got {s}")));
    }
    Ok(s.e())
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LanglandsData {
    pub deltas: Vec<SegmentRep>,
    pub tempered: GAtom,
}

impl LanglandsData {
    pub fn new(deltas: Vec<SegmentRep>, tempered: GAtom) -> Self {
        LanglandsData { deltas, tempered }
    }
}

/// Sorts the deltas by `e` (ties by the canonical order) after checking
/// that every one is a δ with negative exponent.
pub fn normalize_langlands(d: &LanglandsData) -> Result<LanglandsData> {
    let mut v = Vec::with_capacity(d.deltas.len());
    for s in &d.deltas {
        let e = e_of_delta(s)?;
        if e >= 0 {
            return Err(Error::Invariant(format!("Langlands delta {s} has e = {e} >= 0")));
        }
        v.push((e, s.clone()));
    }
    v.sort();
    Ok(LanglandsData { deltas: v.into_iter().map(|(_, s)| s).collect(), tempered: d.tempered.clone() })
}

/// Standard module `δ₁ × ⋯ × δ_k ⋊ τ` as a basis word.
pub fn standard_word_of(d: &LanglandsData) -> GWord {
    GWord::new(GLWord::from_factors(d.deltas.iter().cloned()), d.tempered.clone())
}

/// The flag `δ₁ ⊗ ⋯ ⊗ δ_k ⊗ τ` refined to cuspidals: the Langlands quotient
/// embeds in the standard module with the deltas in increasing `e`, each δ
/// embeds in its cuspidals taken downwards, and the tempered atom
/// contributes the flag of its registered embedding.
pub fn leading_jacquet_term(d: &LanglandsData) -> Result<Tensor<Flag, GAtom>> {
    let n = normalize_langlands(d)?;
    let mut flag: Vec<Exp> = n.deltas.iter().flat_map(SegmentRep::flag).collect();
    let tail = n.tempered.flag().ok_or_else(|| {
        Error::Unsupported(format!("`{}` has no registered embedding", n.tempered))
    })?;
    flag.extend(tail);
    let base = GAtom::Cuspidal(n.tempered.base().clone());
    Ok(Tensor(Flag(flag), base))
}

/// All cuspidals of the standard word, group-side atom support included.
pub fn support_of(d: &LanglandsData) -> Vec<Exp> {
    let mut v: Vec<Exp> = d.deltas.iter().flat_map(|s| s.cuspidals().collect::<Vec<_>>()).collect();
    v.extend(d.tempered.gl_support());
    v
}

impl fmt::Display for LanglandsData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L(")?;
        for (i, s) in self.deltas.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "; {})", self.tempered)
    }
}

impl fmt::Debug for LanglandsData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The two families of representations attached to `ρ`, `x` and `σ`.
#[derive(Clone, Debug)]
pub enum SPBuilder {
    /// `ζ(ρ,x;σ)`, the subrepresentation of `ν^{-x}ρ × ⋯ × ν^{-α}ρ ⋊ σ`.
    Zeta { rho: CuspidalGL, x: HalfInt, alpha: HalfInt, sigma: Arc<CuspidalG> },
    /// `δ(ρ,x;σ)`, the strongly positive subrepresentation of
    /// `ν^{x}ρ × ⋯ × ν^{α}ρ ⋊ σ`.
    Delta { rho: CuspidalGL, x: HalfInt, alpha: HalfInt, sigma: Arc<CuspidalG> },
}

impl SPBuilder {
    pub fn exponents(&self) -> Result<Vec<HalfInt>> {
        let (x, alpha, neg) = match self {
            SPBuilder::Zeta { x, alpha, .. } => (*x, *alpha, true),
            SPBuilder::Delta { x, alpha, .. } => (*x, *alpha, false),
        };
        if x < alpha || !x.congruent(alpha) {
            return Err(Error::Params(format!("need x >= alpha with x - alpha integral (x={x}, alpha={alpha})")));
        }
        Ok(HalfInt::range(alpha, x).map(|t| if neg { -t } else { t }).collect())
    }

    pub fn standard_word(&self) -> Result<GWord> {
        let (rho, sigma) = match self {
            SPBuilder::Zeta { rho, sigma, .. } | SPBuilder::Delta { rho, sigma, .. } => (rho, sigma),
        };
        let gl = GLWord::from_factors(self.exponents()?.into_iter().map(|e| SegmentRep::cusp(rho, e)));
        Ok(GWord::new(gl, GAtom::Cuspidal(sigma.clone())))
    }
}
