//! The Aubert involution on standard words.
//!
//! `aubert_standard` dualizes factor by factor, which is what the involution
//! does to a standard module induced from a product of segments. The
//! brute-force evaluator computes the defining alternating sum over
//! standard Levi subgroups and is only used on cuspidal words, as an oracle.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::engine::FormalSum;
use crate::error::{Error, Result};
use crate::hopf::zelevinsky_dual_segment;
use crate::mu::mu_star_word;
use crate::symbols::Ambient;
use crate::word::{word_in_delta_basis, GAtom, GLWord, GSum, GWord};

pub const DEFAULT_BRUTEFORCE_BOUND: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signed<T> {
    pub sign: i8,
    pub value: T,
}

/// Semisimple rank of the Levi subgroup carrying the cuspidal support.
fn cuspidal_levi_rank(w: &GWord) -> u64 {
    let gl: u64 = w.gl.cuspidals().map(|c| c.rho.degree as u64 - 1).sum();
    gl + w.atom.base().rank as u64
}

/// Full rank of the group the word lives on.
fn group_rank(w: &GWord) -> u64 {
    w.gl.rank() + w.atom.base().rank as u64
}

fn require_cuspidal_atom(w: &GWord) -> Result<()> {
    match &w.atom {
        GAtom::Cuspidal(_) => Ok(()),
        GAtom::Tempered(t) => Err(Error::OpaqueAtom(t.name.clone())),
    }
}

/// Factorwise dual: each segment goes to the contragredient of its
/// Zelevinsky dual, the atom is kept. The sign is `(-1)` to the semisimple
/// rank of the cuspidal-support Levi.
pub fn aubert_standard(w: &GWord, amb: &Ambient) -> Result<Signed<GWord>> {
    require_cuspidal_atom(w)?;
    let mut factors = Vec::with_capacity(w.gl.factors().len());
    for s in w.gl.factors() {
        factors.push(zelevinsky_dual_segment(s).dual(amb)?);
    }
    let sign = if cuspidal_levi_rank(w) % 2 == 0 { 1 } else { -1 };
    Ok(Signed { sign, value: GWord::new(GLWord::from_factors(factors), w.atom.clone()) })
}

/// The factorwise dual as a signed sum of class representatives.
pub fn aubert_factorwise_sum(w: &GWord, amb: &Ambient) -> Result<GSum> {
    let d = aubert_standard(w, amb)?;
    let mut out = GSum::zero();
    out.add_term(d.value.rg_class(amb)?, BigInt::from(d.sign));
    Ok(out)
}

/// `D = Σ_θ (-1)^{|θ|} i_θ ∘ r_θ`, with the standard Levis indexed by
/// compositions of the GL part. Results are class representatives in R(G).
pub fn aubert_bruteforce(w: &GWord, amb: &Ambient) -> Result<GSum> {
    aubert_bruteforce_bounded(w, amb, DEFAULT_BRUTEFORCE_BOUND)
}

pub fn aubert_bruteforce_bounded(w: &GWord, amb: &Ambient, bound: usize) -> Result<GSum> {
    require_cuspidal_atom(w)?;
    if !w.gl.is_cuspidal_word() {
        return Err(Error::Unsupported(format!(
            "brute-force Aubert dual needs a cuspidal word, got {w}"
        )));
    }
    if w.gl.factors().len() > bound {
        return Err(Error::Unsupported(format!(
            "brute-force Aubert dual is capped at {bound} factors"
        )));
    }
    alternating_signed(w, amb)
}

/// The same alternating sum on a word of arbitrary segments. Restriction is
/// taken through the graded pieces of μ*, which are exact on standard
/// words, so the sum is still `D` of the word. `bound` caps the number of
/// cuspidals in the support.
pub fn aubert_bruteforce_segments(w: &GWord, amb: &Ambient, bound: usize) -> Result<GSum> {
    require_cuspidal_atom(w)?;
    if w.gl.cuspidal_count() as usize > bound {
        return Err(Error::Unsupported(format!(
            "brute-force Aubert dual is capped at {bound} cuspidals in the support"
        )));
    }
    alternating_signed(w, amb)
}

fn alternating_signed(w: &GWord, amb: &Ambient) -> Result<GSum> {
    let mut memo = HashMap::new();
    let s = alternating(w, amb, &mut memo)?;
    Ok(if group_rank(w) % 2 == 0 { s } else { s.neg() })
}

/// Brute-force dual of a signed sum.
pub fn aubert_bruteforce_sum(x: &GSum, amb: &Ambient) -> Result<GSum> {
    x.flat_map(|w| aubert_bruteforce(w, amb))
}

// S(w) = Σ_{k≥0} (-1)^k Σ_{c₁..c_k ≥ 1} i ∘ r_{(c₁..c_k)}(w); the first
// block peels off a slice of μ* of positive GL degree.
fn alternating(w: &GWord, amb: &Ambient, memo: &mut HashMap<GWord, GSum>) -> Result<GSum> {
    if let Some(v) = memo.get(w) {
        return Ok(v.clone());
    }
    let mut out = GSum::basis(w.rg_class(amb)?);
    for (t, c) in mu_star_word(w, amb)?.iter() {
        if t.0.is_one() {
            continue;
        }
        let inner = alternating(&t.1, amb, memo)?;
        for (u, d) in inner.iter() {
            out.add_term(u.induce(&t.0).rg_class(amb)?, -(c * d));
        }
    }
    memo.insert(w.clone(), out.clone());
    Ok(out)
}

/// A sum of group words with every ζ factor rewritten through δ's, as class
/// representatives. Sums in this form can be compared term by term.
pub fn delta_class(s: &GSum, amb: &Ambient) -> Result<GSum> {
    let mut out = GSum::zero();
    for (w, c) in s.iter() {
        for (gl, d) in word_in_delta_basis(&w.gl).iter() {
            out.add_term(GWord::new(gl.clone(), w.atom.clone()).rg_class(amb)?, c * d);
        }
    }
    Ok(out)
}

/// Brute-force dual of a segment word set against the factorwise dual.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualCheck {
    /// The alternating sum, with ζ factors rewritten through δ's.
    pub signed: GSum,
    /// The factorwise dual with its sign dropped.
    pub hat: GWord,
    /// `signed = sign · hat` when the two agree.
    pub sign: Option<i8>,
}

pub fn bruteforce_against_factorwise(w: &GWord, amb: &Ambient, bound: usize) -> Result<DualCheck> {
    let signed = delta_class(&aubert_bruteforce_segments(w, amb, bound)?, amb)?;
    let hat = aubert_standard(w, amb)?.value.rg_class(amb)?;
    let hat_sum = delta_class(&GSum::basis(hat.clone()), amb)?;
    let sign = if signed == hat_sum {
        Some(1)
    } else if signed == hat_sum.neg() {
        Some(-1)
    } else {
        None
    };
    Ok(DualCheck { signed, hat, sign })
}

/// Picks the sign making the sum positive.
pub fn hat_normalize(s: &GSum) -> Result<GSum> {
    if s.all_positive() {
        Ok(s.clone())
    } else if s.all_negative() {
        Ok(s.neg())
    } else {
        Err(Error::Invariant(format!("mixed-sign sum cannot be hat-normalized: {s}")))
    }
}

/// Hat-normalized class representatives, for comparisons in R(G).
pub fn hat_class(s: &GSum, amb: &Ambient) -> Result<GSum> {
    let classes: Result<Vec<_>> = s.iter().map(|(w, c)| Ok((w.rg_class(amb)?, c.clone()))).collect();
    hat_normalize(&FormalSum::from_terms(classes?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{CuspidalG, CuspidalGL, Duality, GroupFamily, HalfInt};
    use crate::word::SegmentRep;
    use std::sync::Arc;

    fn setup(rank: u32) -> (CuspidalGL, GAtom, Ambient) {
        let rho = CuspidalGL::new("rho", Duality::SelfDual);
        let mut s = CuspidalG::new("sigma", GroupFamily::SpEven);
        s.rank = rank;
        (rho, GAtom::Cuspidal(Arc::new(s)), Ambient::classical(GroupFamily::SpEven))
    }

    #[test]
    fn cuspidal_alone_gets_rank_sign() {
        for rank in 0..3 {
            let (_, s, amb) = setup(rank);
            let d = aubert_bruteforce(&GWord::atom(s.clone()), &amb).unwrap();
            let sign = if rank % 2 == 0 { 1 } else { -1 };
            assert_eq!(d, FormalSum::from_terms([(GWord::atom(s), BigInt::from(sign))]));
        }
    }

    // Two-subset alternating sum: w - (ν^a ⊗ σ induced twice) = -w.
    #[test]
    fn one_cuspidal_factor() {
        let (rho, s, amb) = setup(1);
        let w = GWord::new(GLWord::single(SegmentRep::cusp(&rho, HalfInt::int(2))), s);
        let d = aubert_bruteforce(&w, &amb).unwrap();
        assert_eq!(d, aubert_factorwise_sum(&w, &amb).unwrap());
        assert_eq!(hat_normalize(&d).unwrap(), GSum::basis(w.rg_class(&amb).unwrap()));
    }

    #[test]
    fn standard_dual_of_zeta() {
        let (rho, s, amb) = setup(0);
        let z = SegmentRep::zeta(&rho, HalfInt::int(-2), HalfInt::int(-1)).unwrap();
        let d = aubert_standard(&GWord::new(GLWord::single(z), s.clone()), &amb).unwrap();
        let want = SegmentRep::delta(&rho, HalfInt::int(1), HalfInt::int(2)).unwrap();
        assert_eq!(d.value, GWord::new(GLWord::single(want), s));
        let back = aubert_standard(&d.value, &amb).unwrap();
        assert_eq!(back.value.gl.factors()[0].kind(), crate::word::Kind::Zeta);
    }

    #[test]
    fn hat_rules() {
        let (rho, s, _) = setup(0);
        let w1 = GWord::atom(s.clone());
        let w2 = GWord::new(GLWord::single(SegmentRep::cusp(&rho, HalfInt::ONE)), s);
        let neg = GSum::basis(w1.clone()).neg();
        assert_eq!(hat_normalize(&neg).unwrap(), GSum::basis(w1.clone()));
        let both = GSum::basis(w1.clone()).plus(&GSum::basis(w2.clone()));
        assert_eq!(hat_normalize(&both).unwrap(), both);
        let mixed = GSum::basis(w1).minus(&GSum::basis(w2));
        assert!(matches!(hat_normalize(&mixed), Err(Error::Invariant(_))));
    }
}

