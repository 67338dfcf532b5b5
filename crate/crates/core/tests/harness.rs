use jacquet_core::classify::{classify, DPSParams, CASES};
use jacquet_core::harness::{
    check_verdict, drop_one_exponent, registry, sweep, sweep_with, verify_claims, Grid, Payload, Status,
};
use jacquet_core::mu::{mult_of_constituent, Pattern};
use jacquet_core::word::{GAtom, GLWord, GWord, SegmentRep};
use jacquet_core::{Error, Exp, GroupFamily, HalfInt};

fn h(t: i64) -> HalfInt {
    HalfInt::int(t)
}

// A cuspidal ν^e ρ can lead a degree-one term of μ*(δ₁ × ⋯ × δ_k ⋊ σ)
// only by peeling the top of some δ_i or, after the contragredient, its
// bottom. With self-dual ρ the count is therefore a count of endpoints.
fn endpoint_oracle(gl: &GLWord, e: HalfInt) -> i64 {
    gl.factors()
        .iter()
        .map(|s| (s.hi() == e) as i64 + (-s.lo() == e) as i64)
        .sum()
}

#[test]
fn degree_one_counts_match_endpoint_oracle() {
    let mut checked = 0;
    for family in [GroupFamily::SpEven, GroupFamily::SoOdd, GroupFamily::GSpinOdd] {
        for alpha in 1..=3 {
            for x in alpha..=alpha + 2 {
                for a in -x - 1..=x + 1 {
                    let p = DPSParams::standard(family, true, h(alpha), h(alpha), h(0), h(0), h(x));
                    let mut gl = GLWord::single(SegmentRep::delta(&p.rho, h(a), h(x + 1)).unwrap());
                    for t in alpha..=x {
                        gl = gl.with(SegmentRep::cusp(&p.rho, h(t)));
                    }
                    let w = GWord::new(gl.clone(), GAtom::Cuspidal(p.sigma.clone()));
                    for e in -x - 2..=x + 2 {
                        let got = mult_of_constituent(&w, &Pattern::Leading(Exp::new(&p.rho, h(e))), &p.amb)
                            .unwrap()
                            .value;
                        assert_eq!(got, endpoint_oracle(&gl, h(e)).into(), "{w} at nu^{e}");
                        checked += 1;
                    }
                }
            }
        }
    }
    assert!(checked > 500);
}

#[test]
fn top_cuspidal_is_unique_above_strongly_positive_part() {
    for c in registry().iter().filter(|c| c.id.contains("top-unique")) {
        let Payload::Count { word, .. } = &c.payload else { panic!("{}", c.id) };
        let top = word.gl.factors().iter().map(|s| s.hi()).max().unwrap();
        assert_eq!(endpoint_oracle(&word.gl, top), 1, "{}", c.id);
    }
}

#[test]
fn dropping_an_exponent_breaks_support_balance() {
    let p = DPSParams::standard(GroupFamily::SoOdd, true, h(2), h(2), h(1), h(2), h(4));
    let v = classify(&p).unwrap();
    assert!(check_verdict(&v).unwrap().ok());
    let broken = drop_one_exponent(&v).expect("a Langlands factor with a cuspidal delta");
    let r = check_verdict(&broken).unwrap();
    assert!(!r.ok());
    assert!(r.factors.iter().any(|f| !f.balanced));
}

#[test]
fn mutation_control_fires_on_every_reducible_small_tuple() {
    let mut tried = 0;
    for p in Grid::small().params() {
        let Ok(v) = classify(&p) else { continue };
        if let Some(b) = drop_one_exponent(&v) {
            assert!(!check_verdict(&b).unwrap().ok(), "{p}");
            tried += 1;
        }
    }
    assert!(tried > 100, "{tried}");
}

#[test]
fn registry_shape() {
    let reg = registry();
    assert!(reg.len() >= 20);
    assert!(reg.iter().filter(|c| c.family == GroupFamily::GSpinOdd).count() >= 3);
    let mut ids: Vec<_> = reg.iter().map(|c| c.id).collect();
    ids.sort();
    ids.dedup();
    assert_eq!(ids.len(), reg.len());
}

#[test]
fn registry_has_no_failures_and_imports_are_assumed() {
    let rs = verify_claims(None).unwrap();
    for r in &rs {
        assert!(!matches!(r.status, Status::Fail { .. }), "{}: {:?}", r.id, r.status);
        if r.id.starts_with("imported.") {
            assert!(matches!(r.status, Status::Assumed { .. }), "{}", r.id);
        }
    }
    let passed = rs.iter().filter(|r| r.status == Status::Pass).count();
    assert!(passed >= 20, "{passed}");
}

#[test]
fn delta_block_over_sigma_is_simple_for_positive_a() {
    let rs = verify_claims(Some(&["beta0.block-once.1-2".to_string()])).unwrap();
    assert_eq!(rs[0].status, Status::Pass);
    let Payload::Count { word, pattern, params, .. } =
        &registry().into_iter().find(|c| c.id == "beta0.block-once.1-2").unwrap().payload
    else {
        unreachable!()
    };
    assert_eq!(mult_of_constituent(word, pattern, &params.amb).unwrap().value, 1.into());
}

#[test]
fn unknown_claim_id() {
    let e = verify_claims(Some(&["no.such.claim".to_string()])).unwrap_err();
    assert!(matches!(e, Error::Params(_)));
}

#[test]
fn grid_specs() {
    assert_eq!("default".parse::<Grid>().unwrap(), Grid::default_grid());
    let g: Grid = "family=gspin,alpha=1..3/2,a=-1..1,b_max=2,x_span=1".parse().unwrap();
    assert_eq!(g.families, vec![GroupFamily::GSpinOdd]);
    assert_eq!(g.alphas, vec![h(1), HalfInt::from_twice(3)]);
    assert!("alpha=2..1".parse::<Grid>().is_err());
    assert!("colour=red".parse::<Grid>().is_err());
    let r = sweep(&g);
    assert!(r.ok() && r.tuples > 0);
}

// The α ≤ 5/2 grid cannot reach rows that need -a < α - 2 with a ≤ 0.
#[test]
fn default_and_wide_alpha_grids_cover_every_row() {
    let wide: Grid = "alpha=3..4,a=-1..0,b_max=5,x_span=3".parse().unwrap();
    let mut hit = std::collections::BTreeSet::new();
    for g in [Grid::default_grid(), wide] {
        let r = sweep(&g);
        assert!(r.ok(), "{:?} {:?}", r.failures.first(), r.errors.first());
        hit.extend(r.cases.into_keys());
    }
    let missing: Vec<&str> = CASES.iter().map(|c| c.id).filter(|id| !hit.contains(id)).collect();
    assert!(missing.is_empty(), "{missing:?}");
}

#[test]
fn mutated_sweep_fails() {
    let r = sweep_with(&Grid::small(), true);
    assert!(!r.ok());
    assert!(r.failures.len() > 1000, "{}", r.failures.len());
}
