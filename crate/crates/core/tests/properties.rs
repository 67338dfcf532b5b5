use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::Ratio;
use proptest::prelude::*;

use jacquet_core::aubert::{aubert_standard, bruteforce_against_factorwise};
use jacquet_core::engine::FormalSum;
use jacquet_core::expr::{parse_syntax, Expr, Sym};
use jacquet_core::hopf::{gl_dual_word, m_star_word, zelevinsky_dual_segment};
use jacquet_core::mu::{jacquet_minimal, jacquet_minimal_via_mu, mu_star_word};
use jacquet_core::word::{gl_product, tensor_product, GAtom, GLSum, GLWord, GWord, Kind, SegmentRep};
use jacquet_core::{Ambient, CuspidalG, CuspidalGL, Duality, GroupFamily, HalfInt};

fn rat(h: HalfInt) -> Ratio<i64> {
    Ratio::new(h.twice(), 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn half_integers_agree_with_rationals(p in -200i64..=200, q in -200i64..=200) {
        let (x, y) = (HalfInt::from_twice(p), HalfInt::from_twice(q));
        prop_assert_eq!(rat(x + y), rat(x) + rat(y));
        prop_assert_eq!(rat(x - y), rat(x) - rat(y));
        prop_assert_eq!(rat(-x), -rat(x));
        prop_assert_eq!(x.cmp(&y), rat(x).cmp(&rat(y)));
        prop_assert_eq!(x.is_integer(), rat(x).is_integer());
        prop_assert_eq!(rat(x.ceil()), rat(x).ceil());
        prop_assert_eq!(rat(x.floor()), rat(x).floor());
        prop_assert_eq!(x.congruent(y), (rat(x) - rat(y)).is_integer());
        prop_assert_eq!(x.to_string().parse::<HalfInt>().unwrap(), x);
    }
}

struct Cast {
    amb: Ambient,
    syms: Vec<CuspidalGL>,
    sigma: GAtom,
}

fn cast(family: GroupFamily) -> Cast {
    let (amb, fixed) = match family {
        GroupFamily::GSpinOdd => (Ambient::gspin("w", false), Duality::EssentiallySelfDual),
        f => (Ambient::classical(f), Duality::SelfDual),
    };
    let mut s = CuspidalG::new("sigma", family);
    s.omega = amb.omega.clone();
    let mut syms = vec![CuspidalGL::new("rho", fixed), CuspidalGL::new("eta", Duality::Generic)];
    if family.is_gspin() {
        // Self-dual but moved by the twist.
        syms.push(CuspidalGL::new("chi", Duality::SelfDual));
    }
    Cast { amb, syms, sigma: GAtom::Cuspidal(Arc::new(s)) }
}

fn families() -> impl Strategy<Value = GroupFamily> {
    prop_oneof![Just(GroupFamily::SpEven), Just(GroupFamily::SoOdd), Just(GroupFamily::GSpinOdd)]
}

/// (kind, symbol index, lo doubled, length)
type SegSpec = (bool, usize, i64, i64);

fn seg_spec(max_len: i64) -> impl Strategy<Value = SegSpec> {
    (any::<bool>(), 0usize..3, -5i64..=5, 0..=max_len)
}

fn build(c: &Cast, specs: &[SegSpec]) -> GLWord {
    GLWord::from_factors(specs.iter().map(|&(z, i, lo, len)| {
        let kind = if z { Kind::Zeta } else { Kind::Delta };
        let lo = HalfInt::from_twice(lo);
        SegmentRep::checked(kind, &c.syms[i % c.syms.len()], lo, lo + len).unwrap()
    }))
}

fn sum_of(w: &GLWord) -> GLSum {
    GLSum::basis(w.clone())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn canonicalization_is_idempotent(terms in prop::collection::vec((seg_spec(2), -3i64..=3), 0..8)) {
        let c = cast(GroupFamily::SoOdd);
        let s = FormalSum::from_terms(terms.iter().map(|(sp, k)| (build(&c, &[*sp]), BigInt::from(*k))));
        let again = FormalSum::from_terms(s.clone().into_terms());
        prop_assert_eq!(&again, &s);
        prop_assert!(s.iter().all(|(_, k)| *k != BigInt::from(0)));
        prop_assert!(s.minus(&s).is_zero());
    }

    #[test]
    fn gl_product_is_associative_and_commutative(
        f in families(),
        a in prop::collection::vec(seg_spec(2), 0..3),
        b in prop::collection::vec(seg_spec(2), 0..3),
        d in prop::collection::vec(seg_spec(2), 0..3),
    ) {
        let c = cast(f);
        let (a, b, d) = (sum_of(&build(&c, &a)), sum_of(&build(&c, &b)), sum_of(&build(&c, &d)));
        prop_assert_eq!(gl_product(&a, &b), gl_product(&b, &a));
        prop_assert_eq!(gl_product(&gl_product(&a, &b), &d), gl_product(&a, &gl_product(&b, &d)));
    }

    #[test]
    fn m_star_is_multiplicative(
        a in prop::collection::vec(seg_spec(3), 0..3),
        b in prop::collection::vec(seg_spec(3), 0..3),
    ) {
        let c = cast(GroupFamily::SpEven);
        let (x, y) = (build(&c, &a), build(&c, &b));
        prop_assert_eq!(m_star_word(&x.times(&y)), tensor_product(&m_star_word(&x), &m_star_word(&y)));
    }

    #[test]
    fn dualities_are_involutions(f in families(), specs in prop::collection::vec(seg_spec(3), 0..4)) {
        let c = cast(f);
        let w = build(&c, &specs);
        prop_assert_eq!(gl_dual_word(&gl_dual_word(&w, &c.amb).unwrap(), &c.amb).unwrap(), w.clone());
        for s in w.factors() {
            prop_assert_eq!(&zelevinsky_dual_segment(&zelevinsky_dual_segment(s)), s);
        }
        let g = GWord::new(w, c.sigma.clone());
        let once = aubert_standard(&g, &c.amb).unwrap();
        let twice = aubert_standard(&once.value, &c.amb).unwrap();
        prop_assert_eq!(twice.value, g);
        prop_assert_eq!(once.sign, twice.sign);
    }

    #[test]
    fn bruteforce_on_segment_words_matches_factorwise(f in families(), specs in prop::collection::vec(seg_spec(2), 0..3)) {
        let c = cast(f);
        let g = GWord::new(build(&c, &specs), c.sigma.clone());
        prop_assume!(g.gl.cuspidal_count() <= 5);
        let d = bruteforce_against_factorwise(&g, &c.amb, 5).unwrap();
        prop_assert!(d.sign.is_some(), "{} vs {}", d.signed, d.hat);
    }

    #[test]
    fn minimal_jacquet_two_ways(f in families(), specs in prop::collection::vec(seg_spec(2), 0..3)) {
        let c = cast(f);
        let g = GWord::new(build(&c, &specs), c.sigma.clone());
        prop_assert_eq!(jacquet_minimal(&g, &c.amb).unwrap(), jacquet_minimal_via_mu(&g, &c.amb).unwrap());
    }

    #[test]
    fn gspin_with_trivial_character_is_classical(specs in prop::collection::vec(seg_spec(2), 0..3)) {
        let classical = cast(GroupFamily::SoOdd);
        let mut s = CuspidalG::new("sigma", GroupFamily::GSpinOdd);
        let amb = Ambient::gspin("w", true);
        s.omega = amb.omega.clone();
        let specs: Vec<SegSpec> = specs.into_iter().map(|(z, i, lo, len)| (z, i % 2, lo, len)).collect();
        let w = build(&classical, &specs);
        let g_classical = GWord::new(w.clone(), classical.sigma.clone());
        let g_spin = GWord::new(w, GAtom::Cuspidal(Arc::new(s)));
        prop_assert_eq!(
            mu_star_word(&g_classical, &classical.amb).unwrap(),
            mu_star_word(&g_spin, &amb).unwrap()
        );
    }
}

fn half() -> impl Strategy<Value = HalfInt> {
    (-9i64..=9).prop_map(HalfInt::from_twice)
}

fn gl_sym() -> impl Strategy<Value = Sym> {
    (prop::sample::select(vec!["rho", "rho0", "eta", "pi_1", "rho'"]), any::<bool>())
        .prop_map(|(n, conj)| Sym { name: n.to_string(), conj })
}

fn gl_leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        1 => Just(Expr::One),
        3 => (half(), gl_sym()).prop_map(|(e, sym)| Expr::Cusp { e, sym }),
        3 => (any::<bool>(), half(), 0i64..4, gl_sym()).prop_map(|(z, lo, len, sym)| Expr::Seg {
            kind: if z { Kind::Zeta } else { Kind::Delta },
            lo,
            hi: lo + len,
            sym,
        }),
    ]
}

/// GL terms as the parser builds them: products are flat, nesting only
/// through explicit groups.
fn gl_term() -> impl Strategy<Value = Expr> {
    gl_leaf().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            inner.clone().prop_map(|e| Expr::Group(Box::new(e))),
            prop::collection::vec(inner, 2..4).prop_map(|xs| {
                Expr::Prod(
                    xs.into_iter()
                        .map(|x| if matches!(x, Expr::Prod(_)) { Expr::Group(Box::new(x)) } else { x })
                        .collect(),
                )
            }),
        ]
    })
}

fn g_expr() -> impl Strategy<Value = Expr> {
    let gsym = prop::sample::select(vec!["sigma", "tau", "s2"]).prop_map(|n| Expr::GSym(n.to_string()));
    let rhs = gsym.clone().prop_recursive(3, 8, 1, |inner| {
        (gl_term(), inner).prop_map(|(l, r)| Expr::Rtimes(Box::new(l), Box::new(r)))
    });
    prop_oneof![gsym, gl_term(), rhs]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn render_then_parse_round_trips(e in g_expr()) {
        let text = e.to_string();
        let back = parse_syntax(&text).map_err(|err| TestCaseError::fail(format!("{text}: {err}")))?;
        prop_assert_eq!(back, e);
    }
}
