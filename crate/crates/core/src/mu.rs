//! μ* on the group side: the closed form for `δ ⋊ (…)`, the generic fold
//! through m*, and minimal Jacquet modules.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::engine::FormalSum;
use crate::error::{Error, Result};
use crate::hopf::{delta_multiplicity, gl_jacquet_minimal, gl_peel, m_star_segment};
use crate::symbols::{Ambient, Exp, HalfInt};
use crate::word::{
    rtimes_tensor, Flag, GAtom, GLTensorSum, GLWord, GWord, JacquetSum, Kind, MuSum, SegmentRep,
    Tensor,
};

/// μ* of an atom. Only cuspidal atoms have a known expansion, `1 ⊗ σ`.
pub fn mu_star_atom(a: &GAtom) -> Result<MuSum> {
    match a {
        GAtom::Cuspidal(_) => Ok(MuSum::basis(Tensor(GLWord::one(), GWord::atom(a.clone())))),
        GAtom::Tempered(t) => Err(Error::OpaqueAtom(t.name.clone())),
    }
}

/// `M*(s) = Σ ỹ × x₁ ⊗ x₂` over `m*(s) = Σ x ⊗ y` and `m*(x) = Σ x₁ ⊗ x₂`.
pub fn big_m_star_segment(s: &SegmentRep, amb: &Ambient) -> Result<GLTensorSum> {
    let mut out = GLTensorSum::zero();
    for (xy, c) in m_star_segment(s).iter() {
        let ydual = xy.1.dual(amb)?;
        for (x12, d) in crate::hopf::m_star_word(&xy.0).iter() {
            out.add_term(Tensor(ydual.times(&x12.0), x12.1.clone()), c * d);
        }
    }
    Ok(out)
}

pub fn big_m_star_word(w: &GLWord, amb: &Ambient) -> Result<GLTensorSum> {
    let mut acc = GLTensorSum::basis(Tensor(GLWord::one(), GLWord::one()));
    for s in w.factors() {
        acc = crate::word::tensor_product(&acc, &big_m_star_segment(s, amb)?);
    }
    Ok(acc)
}

/// μ* of a basis word by the generic fold `μ*(π ⋊ rest) = M*(π) ⋊ μ*(rest)`.
pub fn mu_star_word(w: &GWord, amb: &Ambient) -> Result<MuSum> {
    let base = mu_star_atom(&w.atom)?;
    Ok(rtimes_tensor(&big_m_star_word(&w.gl, amb)?, &base))
}

pub fn mu_star_sum(x: &FormalSum<GWord>, amb: &Ambient) -> Result<MuSum> {
    x.flat_map(|w| mu_star_word(w, amb))
}

/// Closed form for `μ*(δ([ν^{-k}ρ, ν^l ρ]) ⋊ π)` given `target = μ*(π)`:
///
/// `Σ_{i=-k-1}^{l} Σ_{j=i}^{l} δ([-i,k]; ρ̃) × δ([j+1,l]; ρ) × τ ⊗ δ([i+1,j]; ρ) ⋊ π'`
/// over the terms `τ ⊗ π'` of the target, with ρ̃ twisted by ω in GSpin.
pub fn mu_star_delta_rtimes(s: &SegmentRep, target: &MuSum, amb: &Ambient) -> Result<MuSum> {
    if s.kind() != Kind::Delta {
        return Err(Error::Invariant(format!("closed form needs a delta segment, got {s}")));
    }
    let (k, l) = (-s.lo(), s.hi());
    let rho = s.rho();
    let rho_d = amb.dual_symbol(rho)?;
    let mut left = GLTensorSum::zero();
    for i in HalfInt::range(-k - 1, l) {
        for j in HalfInt::range(i, l) {
            let a = GLWord::of_opt(SegmentRep::raw(Kind::Delta, &rho_d, -i, k));
            let b = GLWord::of_opt(SegmentRep::raw(Kind::Delta, rho, j + 1, l));
            let c = GLWord::of_opt(SegmentRep::raw(Kind::Delta, rho, i + 1, j));
            left.add_one(Tensor(a.times(&b), c));
        }
    }
    Ok(rtimes_tensor(&left, target))
}

/// Degree-one pieces of `M*(s)`: the first cuspidal taken from the top of
/// the factor, or the dual of the one taken from the bottom.
pub fn r1_segment(s: &SegmentRep, amb: &Ambient) -> Result<Vec<(Exp, Option<SegmentRep>)>> {
    let mut v = vec![gl_peel(s)];
    let rho_d = amb.dual_symbol(s.rho())?;
    let (e, rest) = match s.kind() {
        Kind::Delta => (s.lo(), SegmentRep::raw(Kind::Delta, s.rho(), s.lo() + 1, s.hi())),
        Kind::Zeta => (s.hi(), SegmentRep::raw(Kind::Zeta, s.rho(), s.lo(), s.hi() - 1)),
    };
    v.push((Exp::new(&rho_d, -e), rest));
    Ok(v)
}

/// `r_(1)(w)` as a list of `(cuspidal, remaining word, multiplicity)`.
pub fn r1_word(w: &GWord, amb: &Ambient) -> Result<Vec<(Exp, GWord, u64)>> {
    if let GAtom::Tempered(t) = &w.atom {
        return Err(Error::OpaqueAtom(t.name.clone()));
    }
    let fs = w.gl.factors();
    let mut out = Vec::new();
    for (i, s) in fs.iter().enumerate() {
        if i > 0 && fs[i - 1] == *s {
            continue;
        }
        let mult = fs.iter().filter(|t| *t == s).count() as u64;
        let stripped = w.gl.without_index(i);
        for (c, rest) in r1_segment(s, amb)? {
            let gl = match rest {
                Some(r) => stripped.with(r),
                None => stripped.clone(),
            };
            out.push((c, GWord::new(gl, w.atom.clone()), mult));
        }
    }
    Ok(out)
}

/// Minimal Jacquet module by iterated one-step restriction.
pub fn jacquet_minimal(w: &GWord, amb: &Ambient) -> Result<JacquetSum> {
    let mut memo = HashMap::new();
    jm_rec(w, amb, &mut memo)
}

fn jm_rec(w: &GWord, amb: &Ambient, memo: &mut HashMap<GWord, JacquetSum>) -> Result<JacquetSum> {
    if let Some(r) = memo.get(w) {
        return Ok(r.clone());
    }
    let out = if w.gl.is_one() {
        if let GAtom::Tempered(t) = &w.atom {
            return Err(Error::OpaqueAtom(t.name.clone()));
        }
        JacquetSum::basis(Tensor(Flag::default(), w.atom.clone()))
    } else {
        let mut acc = JacquetSum::zero();
        for (c, rest, mult) in r1_word(w, amb)? {
            let sub = jm_rec(&rest, amb, memo)?;
            let m = BigInt::from(mult);
            for (t, k) in sub.iter() {
                let mut f = Vec::with_capacity(t.0 .0.len() + 1);
                f.push(c.clone());
                f.extend_from_slice(&t.0 .0);
                acc.add_term(Tensor(Flag(f), t.1.clone()), k * &m);
            }
        }
        acc
    };
    memo.insert(w.clone(), out.clone());
    Ok(out)
}

/// Minimal Jacquet module through the full-degree slice of μ* followed by
/// the GL minimal Jacquet module. Agrees with [`jacquet_minimal`].
pub fn jacquet_minimal_via_mu(w: &GWord, amb: &Ambient) -> Result<JacquetSum> {
    let mu = mu_star_word(w, amb)?;
    let mut out = JacquetSum::zero();
    for (t, c) in mu.iter() {
        if !t.1.gl.is_one() {
            continue;
        }
        for (f, d) in gl_jacquet_minimal(&t.0).iter() {
            out.add_term(Tensor(f.clone(), t.1.atom.clone()), c * d);
        }
    }
    Ok(out)
}

/// Coefficient of a single flag `⊗ atom` in the minimal Jacquet module,
/// without expanding the whole module.
pub fn flag_multiplicity(w: &GWord, flag: &[Exp], atom: &GAtom, amb: &Ambient) -> Result<BigInt> {
    let mut memo = HashMap::new();
    flag_rec(w, flag, atom, amb, &mut memo)
}

fn flag_rec(
    w: &GWord,
    flag: &[Exp],
    atom: &GAtom,
    amb: &Ambient,
    memo: &mut HashMap<(usize, GWord), BigInt>,
) -> Result<BigInt> {
    if flag.is_empty() {
        return Ok(BigInt::from((w.gl.is_one() && w.atom == *atom) as u8));
    }
    if w.gl.cuspidal_count() != flag.len() as i64 {
        return Ok(BigInt::zero());
    }
    let key = (flag.len(), w.clone());
    if let Some(v) = memo.get(&key) {
        return Ok(v.clone());
    }
    let mut total = BigInt::zero();
    for (c, rest, mult) in r1_word(w, amb)? {
        if c == flag[0] {
            total += BigInt::from(mult) * flag_rec(&rest, &flag[1..], atom, amb, memo)?;
        }
    }
    memo.insert(key, total.clone());
    Ok(total)
}

/// What to count inside μ* (or the minimal Jacquet module) of a word.
#[derive(Clone, Debug)]
pub enum Pattern {
    /// A basis term `π ⊗ w'` of μ*, matched literally.
    Basis(Tensor<GLWord, GWord>),
    /// A full flag `⊗ atom` of the minimal Jacquet module.
    Flag(Tensor<Flag, GAtom>),
    /// The irreducible `δ(seg)` on the GL side over a basis word on the
    /// group side; GL basis words are decomposed through their flags.
    DeltaOver(SegmentRep, GWord),
    /// All terms whose GL part is the single cuspidal given, summed over
    /// the group side.
    Leading(Exp),
    /// All terms whose GL part is the given basis word, summed over the
    /// group side.
    GlPart(GLWord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Count {
    pub value: BigInt,
    /// Set when the pattern cannot occur for grading reasons.
    pub degree_mismatch: bool,
}

pub fn mult_of_constituent(w: &GWord, pattern: &Pattern, amb: &Ambient) -> Result<Count> {
    let n = w.gl.cuspidal_count();
    let mismatch = || Count { value: BigInt::zero(), degree_mismatch: true };
    match pattern {
        Pattern::Basis(t) => {
            if t.0.cuspidal_count() + t.1.gl.cuspidal_count() != n {
                return Ok(mismatch());
            }
            let mu = mu_star_word(w, amb)?;
            Ok(Count { value: mu.coeff(t), degree_mismatch: false })
        }
        Pattern::Flag(t) => {
            if t.0 .0.len() as i64 != n {
                return Ok(mismatch());
            }
            Ok(Count { value: flag_multiplicity(w, &t.0 .0, &t.1, amb)?, degree_mismatch: false })
        }
        Pattern::DeltaOver(seg, g) => {
            if seg.len() + g.gl.cuspidal_count() != n {
                return Ok(mismatch());
            }
            let mu = mu_star_word(w, amb)?;
            let target = g.rg_class(amb)?;
            let mut total = BigInt::zero();
            for (t, c) in mu.iter() {
                if t.1.rg_class(amb)? == target {
                    total += c * delta_multiplicity(&t.0, seg);
                }
            }
            Ok(Count { value: total, degree_mismatch: false })
        }
        Pattern::Leading(e) => {
            if n < 1 {
                return Ok(mismatch());
            }
            let single = GLWord::single(SegmentRep::cusp(&e.rho, e.e));
            mult_of_constituent(w, &Pattern::GlPart(single), amb)
        }
        Pattern::GlPart(pi) => {
            if pi.cuspidal_count() > n {
                return Ok(mismatch());
            }
            let mu = mu_star_word(w, amb)?;
            let total = mu.iter().filter(|(t, _)| t.0 == *pi).map(|(_, c)| c.clone()).sum();
            Ok(Count { value: total, degree_mismatch: false })
        }
    }
}

/// Group-side words appearing after a leading cuspidal, with multiplicity.
pub fn after_leading(w: &GWord, e: &Exp, amb: &Ambient) -> Result<FormalSum<GWord>> {
    let single = GLWord::single(SegmentRep::cusp(&e.rho, e.e));
    let mu = mu_star_word(w, amb)?;
    let mut out = FormalSum::zero();
    for (t, c) in mu.iter() {
        if t.0 == single {
            out.add_term(t.1.clone(), c.clone());
        }
    }
    Ok(out)
}
