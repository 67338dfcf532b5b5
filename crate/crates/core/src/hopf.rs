//! The comultiplication m* on R(GL) and the two dualities of segments.

use num_bigint::BigInt;

use crate::error::Result;
use crate::symbols::{Ambient, Exp, HalfInt};
use crate::word::{
    tensor_product, Flag, GLSum, GLTensorSum, GLWord, Kind, SegmentRep, Tensor,
};

/// m* of one segment.
///
/// δ splits with the upper part on the left, ζ with the lower part on the
/// left; empty pieces are the identity.
pub fn m_star_segment(s: &SegmentRep) -> GLTensorSum {
    let mut out = GLTensorSum::zero();
    let (lo, hi, rho) = (s.lo(), s.hi(), s.rho());
    for i in HalfInt::range(lo - 1, hi) {
        let upper = GLWord::of_opt(SegmentRep::raw(s.kind(), rho, i + 1, hi));
        let lower = GLWord::of_opt(SegmentRep::raw(s.kind(), rho, lo, i));
        match s.kind() {
            Kind::Delta => out.add_one(Tensor(upper, lower)),
            Kind::Zeta => out.add_one(Tensor(lower, upper)),
        }
    }
    out
}

/// m* extended multiplicatively to words.
pub fn m_star_word(w: &GLWord) -> GLTensorSum {
    let mut acc = GLTensorSum::basis(Tensor(GLWord::one(), GLWord::one()));
    for s in w.factors() {
        acc = tensor_product(&acc, &m_star_segment(s));
    }
    acc
}

pub fn m_star_sum(x: &GLSum) -> GLTensorSum {
    x.flat_map::<_, ()>(|w| Ok(m_star_word(w))).unwrap()
}

/// Contragredient of a word (twisted by ω in GSpin).
pub fn gl_dual_word(w: &GLWord, amb: &Ambient) -> Result<GLWord> {
    w.dual(amb)
}

/// δ ↔ ζ on the same segment; cuspidals are fixed.
pub fn zelevinsky_dual_segment(s: &SegmentRep) -> SegmentRep {
    match s.kind() {
        Kind::Delta => s.with_kind(Kind::Zeta),
        Kind::Zeta => s.with_kind(Kind::Delta),
    }
}

/// Degree-one left pieces of m*(s): `(c, rest)` with `m*(s) ∋ c ⊗ rest`.
pub(crate) fn gl_peel(s: &SegmentRep) -> (Exp, Option<SegmentRep>) {
    match s.kind() {
        Kind::Delta => (
            Exp::new(s.rho(), s.hi()),
            SegmentRep::raw(Kind::Delta, s.rho(), s.lo(), s.hi() - 1),
        ),
        Kind::Zeta => (
            Exp::new(s.rho(), s.lo()),
            SegmentRep::raw(Kind::Zeta, s.rho(), s.lo() + 1, s.hi()),
        ),
    }
}

/// Minimal Jacquet module of a GL word, as cuspidal flags.
pub fn gl_jacquet_minimal(w: &GLWord) -> crate::engine::FormalSum<Flag> {
    let mut out = crate::engine::FormalSum::zero();
    let mut prefix = Vec::new();
    gl_flags_rec(w, &mut prefix, &BigInt::from(1), &mut out);
    out
}

fn gl_flags_rec(
    w: &GLWord,
    prefix: &mut Vec<Exp>,
    coeff: &BigInt,
    out: &mut crate::engine::FormalSum<Flag>,
) {
    if w.is_one() {
        out.add_term(Flag(prefix.clone()), coeff.clone());
        return;
    }
    let fs = w.factors();
    for (i, s) in fs.iter().enumerate() {
        // equal neighbouring factors give the same term; count them once
        if i > 0 && fs[i - 1] == *s {
            continue;
        }
        let mult = fs.iter().filter(|t| *t == s).count();
        let (c, rest) = gl_peel(s);
        let mut next = w.without_index(i);
        if let Some(r) = rest {
            next = next.with(r);
        }
        prefix.push(c);
        gl_flags_rec(&next, prefix, &(coeff * BigInt::from(mult)), out);
        prefix.pop();
    }
}

/// Multiplicity of the irreducible `δ(seg)` in the GL basis word `w`.
///
/// The support of a segment is multiplicity free, and over such a support
/// every flag of the full cuspidal product lies in exactly one irreducible
/// subquotient. The descending flag lies in `δ(seg)`, so the count is the
/// coefficient of that flag in the minimal Jacquet module of `w`.
pub fn delta_multiplicity(w: &GLWord, seg: &SegmentRep) -> BigInt {
    let mut sup_w: Vec<Exp> = w.cuspidals().collect();
    let mut sup_s: Vec<Exp> = seg.cuspidals().collect();
    sup_w.sort();
    sup_s.sort();
    if sup_w != sup_s {
        return BigInt::from(0);
    }
    let target = Flag(seg.with_kind(Kind::Delta).flag());
    gl_flag_count(w, &target.0)
}

/// Coefficient of one flag in the minimal Jacquet module of `w`.
pub fn gl_flag_count(w: &GLWord, flag: &[Exp]) -> BigInt {
    if flag.is_empty() {
        return BigInt::from(w.is_one() as u8);
    }
    let fs = w.factors();
    let mut total = BigInt::from(0);
    for (i, s) in fs.iter().enumerate() {
        if i > 0 && fs[i - 1] == *s {
            continue;
        }
        let (c, rest) = gl_peel(s);
        if c != flag[0] {
            continue;
        }
        let mult = fs.iter().filter(|t| *t == s).count();
        let mut next = w.without_index(i);
        if let Some(r) = rest {
            next = next.with(r);
        }
        total += BigInt::from(mult) * gl_flag_count(&next, &flag[1..]);
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::{CuspidalGL, Duality, GroupFamily};

    fn h(t: i64) -> HalfInt {
        HalfInt::int(t)
    }
    fn rho() -> CuspidalGL {
        CuspidalGL::new("rho", Duality::SelfDual)
    }
    fn w(v: Vec<SegmentRep>) -> GLWord {
        GLWord::from_factors(v)
    }
    fn t(a: GLWord, b: GLWord) -> Tensor<GLWord, GLWord> {
        Tensor(a, b)
    }

    #[test]
    fn cuspidal_coproduct() {
        let a = SegmentRep::cusp(&rho(), h(3));
        let m = m_star_segment(&a);
        let mut want = GLTensorSum::zero();
        want.add_one(t(GLWord::one(), GLWord::single(a.clone())));
        want.add_one(t(GLWord::single(a.clone()), GLWord::one()));
        assert_eq!(m, want);
    }

    // Hand enumeration of the three splits of [0,1].
    #[test]
    fn delta_and_zeta_splits() {
        let d = SegmentRep::delta(&rho(), h(0), h(1)).unwrap();
        let z = SegmentRep::zeta(&rho(), h(0), h(1)).unwrap();
        let n0 = SegmentRep::cusp(&rho(), h(0));
        let n1 = SegmentRep::cusp(&rho(), h(1));
        let mut want = GLTensorSum::zero();
        want.add_one(t(GLWord::one(), GLWord::single(d.clone())));
        want.add_one(t(GLWord::single(n1.clone()), GLWord::single(n0.clone())));
        want.add_one(t(GLWord::single(d.clone()), GLWord::one()));
        assert_eq!(m_star_segment(&d), want);

        let mut want = GLTensorSum::zero();
        want.add_one(t(GLWord::one(), GLWord::single(z.clone())));
        want.add_one(t(GLWord::single(n0), GLWord::single(n1)));
        want.add_one(t(GLWord::single(z.clone()), GLWord::one()));
        assert_eq!(m_star_segment(&z), want);
    }

    #[test]
    fn word_coproduct_of_two_cuspidals() {
        let a = SegmentRep::cusp(&rho(), h(1));
        let b = SegmentRep::cusp(&rho(), h(2));
        let ab = w(vec![a.clone(), b.clone()]);
        let m = m_star_word(&ab);
        assert_eq!(m.len(), 4);
        assert_eq!(m.coeff(&t(GLWord::one(), ab.clone())), BigInt::from(1));
        assert_eq!(m.coeff(&t(GLWord::single(a.clone()), GLWord::single(b.clone()))), BigInt::from(1));
        assert_eq!(m.coeff(&t(GLWord::single(b), GLWord::single(a))), BigInt::from(1));
        assert_eq!(m.coeff(&t(ab, GLWord::one())), BigInt::from(1));
        assert_eq!(m_star_word(&GLWord::one()), GLTensorSum::basis(t(GLWord::one(), GLWord::one())));
    }

    #[test]
    fn duals() {
        let amb = Ambient::classical(GroupFamily::SpEven);
        let d = SegmentRep::delta(&rho(), h(1), h(2)).unwrap();
        let dd = gl_dual_word(&GLWord::single(d.clone()), &amb).unwrap();
        assert_eq!(dd, GLWord::single(SegmentRep::delta(&rho(), h(-2), h(-1)).unwrap()));
        let z = zelevinsky_dual_segment(&d);
        assert_eq!(z.kind(), Kind::Zeta);
        assert_eq!(zelevinsky_dual_segment(&z), d);
        let c = SegmentRep::cusp(&rho(), h(4));
        assert_eq!(zelevinsky_dual_segment(&c), c);

        let esd = CuspidalGL::new("rho", Duality::EssentiallySelfDual);
        let g = Ambient::gspin("w", false);
        let a = SegmentRep::cusp(&esd, h(2));
        assert_eq!(a.dual(&g).unwrap(), SegmentRep::cusp(&esd, h(-2)));
    }

    #[test]
    fn gl_flags_of_delta_and_product() {
        let d = SegmentRep::delta(&rho(), h(0), h(2)).unwrap();
        let j = gl_jacquet_minimal(&GLWord::single(d.clone()));
        assert_eq!(j.len(), 1);
        assert_eq!(j.iter().next().unwrap().0 .0, d.flag());

        let p = w(vec![SegmentRep::cusp(&rho(), h(0)), SegmentRep::cusp(&rho(), h(1))]);
        assert_eq!(gl_jacquet_minimal(&p).len(), 2);

        let twice = w(vec![SegmentRep::cusp(&rho(), h(0)), SegmentRep::cusp(&rho(), h(0))]);
        assert_eq!(gl_jacquet_minimal(&twice).total(), BigInt::from(2));
    }

    #[test]
    fn delta_counts() {
        let d01 = SegmentRep::delta(&rho(), h(0), h(1)).unwrap();
        let p = w(vec![SegmentRep::cusp(&rho(), h(0)), SegmentRep::cusp(&rho(), h(1))]);
        assert_eq!(delta_multiplicity(&p, &d01), BigInt::from(1));
        assert_eq!(delta_multiplicity(&GLWord::single(d01.clone()), &d01), BigInt::from(1));
        let z = GLWord::single(d01.with_kind(Kind::Zeta));
        assert_eq!(delta_multiplicity(&z, &d01), BigInt::from(0));
        let linked = w(vec![
            SegmentRep::delta(&rho(), h(-1), h(1)).unwrap(),
            SegmentRep::delta(&rho(), h(2), h(3)).unwrap(),
        ]);
        let whole = SegmentRep::delta(&rho(), h(-1), h(3)).unwrap();
        assert_eq!(delta_multiplicity(&linked, &whole), BigInt::from(1));
    }
}
