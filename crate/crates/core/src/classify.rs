//! Reducibility and composition factors of the degenerate principal series
//! `ζ([ν^{-b}ρ₀, ν^{-a}ρ₀]) ⋊ ζ(ρ, x; σ)`.
//!
//! The classifier is a decision table. Each row has a guard over the
//! normalized parameters and a builder for its factor list; guards are
//! mutually exclusive and [`classify`] insists that exactly one fires.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::langlands::{normalize_langlands, support_of, LanglandsData};
use crate::symbols::{Ambient, CuspidalG, CuspidalGL, Duality, Exp, GroupFamily, HalfInt};
use crate::word::{GAtom, GLWord, GWord, SegmentRep, TemperedAtom};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DPSParams {
    pub amb: Ambient,
    pub rho: CuspidalGL,
    pub rho0: CuspidalGL,
    pub sigma: Arc<CuspidalG>,
    /// `ρ₀ ≅ ρ`.
    pub same: bool,
    pub alpha: HalfInt,
    pub beta: HalfInt,
    pub a: HalfInt,
    pub b: HalfInt,
    pub x: HalfInt,
}

impl DPSParams {
    /// The usual cast: `ρ`, `ρ₀` (self-dual, or essentially self-dual in
    /// GSpin) and a cuspidal `σ`. In GSpin the central character is
    /// nontrivial. With `same`, `ρ₀` is `ρ` and `β` is `α`.
    #[allow(clippy::too_many_arguments)]
    pub fn standard(
        family: GroupFamily,
        same: bool,
        alpha: HalfInt,
        beta: HalfInt,
        a: HalfInt,
        b: HalfInt,
        x: HalfInt,
    ) -> Self {
        let amb = if family.is_gspin() { Ambient::gspin("omega", false) } else { Ambient::classical(family) };
        let duality = if family.is_gspin() { Duality::EssentiallySelfDual } else { Duality::SelfDual };
        let rho = CuspidalGL::new("rho", duality);
        let rho0 = if same { rho.clone() } else { CuspidalGL::new("rho0", duality) };
        let beta = if same { alpha } else { beta };
        let mut sigma = CuspidalG::new("sigma", family);
        sigma.omega = amb.omega.clone();
        sigma.reducibility.insert(rho.label.clone(), alpha);
        sigma.reducibility.insert(rho0.label.clone(), beta);
        DPSParams { amb, rho, rho0, sigma: Arc::new(sigma), same, alpha, beta, a, b, x }
    }

    pub fn validate(&self) -> Result<()> {
        self.amb.validate()?;
        let p = |m: String| Err(Error::Params(m));
        if self.alpha <= 0 {
            return p(format!("alpha must be positive, got {}", self.alpha));
        }
        if self.beta < 0 {
            return p(format!("beta must be non-negative, got {}", self.beta));
        }
        if self.x < self.alpha || !self.x.congruent(self.alpha) {
            return p(format!("need x >= alpha and x - alpha integral (x={}, alpha={})", self.x, self.alpha));
        }
        if self.b < self.a || !self.b.congruent(self.a) {
            return p(format!("need b >= a and b - a integral (a={}, b={})", self.a, self.b));
        }
        if self.same != (self.rho0 == self.rho) {
            return p("`same` must agree with the symbols given for rho and rho0".into());
        }
        if self.same && self.beta != self.alpha {
            return p("with rho0 = rho the reducibility exponents must agree".into());
        }
        if !self.amb.is_fixed(&self.rho) {
            return p(format!("`{}` must be fixed by the ambient duality", self.rho));
        }
        Ok(())
    }

    /// `ζ([ν^{-b}ρ₀, ν^{-a}ρ₀]) × ν^{-x}ρ × ⋯ × ν^{-α}ρ ⋊ σ`.
    pub fn dps_word(&self) -> Result<GWord> {
        let z = SegmentRep::zeta(&self.rho0, -self.b, -self.a)?;
        let gl = GLWord::from_factors(
            std::iter::once(z).chain(HalfInt::range(self.alpha, self.x).map(|t| SegmentRep::cusp(&self.rho, -t))),
        );
        Ok(GWord::new(gl, GAtom::Cuspidal(self.sigma.clone())))
    }

    fn describe(&self) -> String {
        format!(
            "{} {} alpha={} beta={} a={} b={} x={}",
            self.amb.family.name(),
            if self.same { "rho0=rho" } else { "rho0!=rho" },
            self.alpha,
            self.beta,
            self.a,
            self.b,
            self.x
        )
    }
}

impl fmt::Display for DPSParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.describe())
    }
}

/// `δ([ν^a ρ̃₀, ν^b ρ̃₀]) × ν^{x}ρ × ⋯ × ν^{α}ρ ⋊ σ`, with ρ̃₀ twisted by ω
/// in GSpin.
pub fn dual_side(p: &DPSParams) -> Result<GWord> {
    let r0 = p.amb.dual_symbol(&p.rho0)?;
    let d = SegmentRep::delta(&r0, p.a, p.b)?;
    let r = p.amb.dual_symbol(&p.rho)?;
    let gl = GLWord::from_factors(std::iter::once(d).chain(HalfInt::range(p.alpha, p.x).map(|t| SegmentRep::cusp(&r, t))));
    Ok(GWord::new(gl, GAtom::Cuspidal(p.sigma.clone())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Early {
    Rho0NotSelfDual,
    OffLattice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub params: DPSParams,
    pub swapped: bool,
    pub early: Option<Early>,
}

/// Moves to `-a <= b` via `ζ([ν^{-b}ρ₀,ν^{-a}ρ₀]) ⋊ τ = ζ([ν^{a}ρ̃₀,ν^{b}ρ̃₀]) ⋊ τ`
/// and flags the parameter regions where the representation is
/// irreducible for general reasons.
pub fn normalize_params(p: &DPSParams) -> Result<Normalized> {
    p.validate()?;
    let mut q = p.clone();
    let swapped = -p.a > p.b;
    if swapped {
        q.a = -p.b;
        q.b = -p.a;
        q.rho0 = p.amb.dual_symbol(&p.rho0)?;
    }
    let early = if !q.amb.is_fixed(&q.rho0) {
        Some(Early::Rho0NotSelfDual)
    } else if !q.a.congruent(q.beta) {
        Some(Early::OffLattice)
    } else {
        None
    };
    Ok(Normalized { params: q, swapped, early })
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    Langlands(LanglandsData),
    Tempered(GAtom),
}

impl Factor {
    pub fn support(&self) -> Vec<Exp> {
        match self {
            Factor::Langlands(l) => support_of(l),
            Factor::Tempered(t) => t.gl_support(),
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Factor::Langlands(l) => write!(f, "{l}"),
            Factor::Tempered(t) => write!(f, "{t}"),
        }
    }
}

impl fmt::Debug for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Irreducible,
    Factors(Vec<Factor>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// Parameters after normalization.
    pub params: DPSParams,
    pub case: &'static str,
    pub rule: &'static str,
    pub outcome: Outcome,
}

impl Verdict {
    pub fn is_irreducible(&self) -> bool {
        self.outcome == Outcome::Irreducible
    }

    pub fn factor_count(&self) -> usize {
        match &self.outcome {
            Outcome::Irreducible => 1,
            Outcome::Factors(v) => v.len(),
        }
    }

    pub fn factors(&self) -> &[Factor] {
        match &self.outcome {
            Outcome::Irreducible => &[],
            Outcome::Factors(v) => v,
        }
    }
}

/// Normalized parameters plus the derived quantities the factor lists use.
pub struct Ctx {
    pub p: DPSParams,
    /// `-a`.
    pub c: HalfInt,
    /// `⌈α⌉ - α - 1`.
    pub top: HalfInt,
    /// `⌈β⌉ - β - 1`.
    pub top_b: HalfInt,
}

impl Ctx {
    fn new(p: DPSParams) -> Self {
        let c = -p.a;
        let top = p.alpha.ceil() - p.alpha - 1;
        let top_b = p.beta.ceil() - p.beta - 1;
        Ctx { p, c, top, top_b }
    }

    fn l(&self) -> Lb<'_> {
        Lb { cx: self, deltas: Vec::new() }
    }

    fn sigma(&self) -> GAtom {
        GAtom::Cuspidal(self.p.sigma.clone())
    }

    fn tempered(&self, name: &str, origin: &str, params: Vec<(&str, HalfInt)>, support: Vec<SegmentRep>, embeds: bool, condition: Option<&str>) -> GAtom {
        GAtom::Tempered(Arc::new(TemperedAtom {
            name: name.to_string(),
            origin: origin.to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v.to_string())).collect(),
            base: self.p.sigma.clone(),
            support,
            embeds,
            condition: condition.map(str::to_string),
        }))
    }

    fn cusps(&self, r: &CuspidalGL, from: HalfInt, to: HalfInt, descending: bool) -> Vec<SegmentRep> {
        let mut v: Vec<SegmentRep> = HalfInt::range(from, to).map(|t| SegmentRep::cusp(r, t)).collect();
        if descending {
            v.reverse();
        }
        v
    }

    /// The two summands of `ρ₀ ⋊ σ` when `β = 0`, labeled by `±1`.
    fn tau_pm(&self, sign: i64) -> GAtom {
        let name = if sign > 0 { "tau1" } else { "tau-1" };
        self.tempered(
            name,
            "summand of rho0 |x| sigma (beta = 0)",
            vec![],
            vec![SegmentRep::cusp(&self.p.rho0, HalfInt::ZERO)],
            true,
            Some("the two summands are told apart only by Jacquet-module conditions; the labeling is fixed but arbitrary"),
        )
    }

    /// `ρ₀ ⋊ σ` for integral `a`, `σ` otherwise.
    fn tau1(&self) -> GAtom {
        if self.p.a.is_integer() {
            self.tempered(
                "tau(1)",
                "rho0 |x| sigma, irreducible tempered (beta > 0, a integral)",
                vec![],
                vec![SegmentRep::cusp(&self.p.rho0, HalfInt::ZERO)],
                true,
                None,
            )
        } else {
            self.sigma()
        }
    }

    fn tau2(&self) -> GAtom {
        let (r0, beta) = (&self.p.rho0, self.p.beta);
        if self.p.a.is_integer() {
            self.tempered(
                "tau(2)",
                "tempered subrepresentation of rho0 |x| tau', tau' strongly positive in nu^1 rho0 x ... x nu^beta rho0 |x| sigma",
                vec![("beta", beta)],
                self.cusps(r0, HalfInt::ZERO, beta, false),
                false,
                Some("the unique such subrepresentation with no Jacquet term nu^1 rho0 (x) *"),
            )
        } else {
            self.tempered(
                "tau(2)",
                "strongly positive subrepresentation of nu^1/2 rho0 x ... x nu^beta rho0 |x| sigma",
                vec![("beta", beta)],
                self.cusps(r0, HalfInt::HALF, beta, false),
                true,
                None,
            )
        }
    }

    /// `τ(ρ,σ)`: tempered, inside `δ([ν^{-1/2}ρ, ν^{1/2}ρ]) ⋊ σ`, for α = 1/2.
    fn tau_rho_sigma(&self) -> GAtom {
        let d = SegmentRep::delta(&self.p.rho, -HalfInt::HALF, HalfInt::HALF).unwrap();
        self.tempered(
            "tau(rho,sigma)",
            "tempered subrepresentation of d([-1/2,1/2;rho]) |x| sigma",
            vec![],
            vec![d],
            true,
            Some("not a subrepresentation of nu^1/2 rho x nu^1/2 rho |x| sigma"),
        )
    }

    /// Strongly positive subrepresentation of `ν^a r × ⋯ × ν^top r ⋊ σ`.
    fn sigma_sp(&self, r: &CuspidalGL, top: HalfInt) -> GAtom {
        self.tempered(
            "sigma_sp",
            "strongly positive subrepresentation of nu^a x ... x nu^top |x| sigma",
            vec![("a", self.p.a), ("top", top)],
            self.cusps(r, self.p.a, top, false),
            true,
            None,
        )
    }

    /// `δ(ρ, x; σ)` as an atom, embedded in `ν^x ρ × ⋯ × ν^α ρ ⋊ σ`.
    fn delta_sp(&self, x: HalfInt) -> GAtom {
        self.tempered(
            &format!("delta(rho,{x};sigma)"),
            "strongly positive subrepresentation of nu^x rho x ... x nu^alpha rho |x| sigma",
            vec![("x", x)],
            self.cusps(&self.p.rho, self.p.alpha, x, true),
            true,
            None,
        )
    }
}

/// Collects the deltas of one Langlands datum.
struct Lb<'c> {
    cx: &'c Ctx,
    deltas: Vec<SegmentRep>,
}

impl Lb<'_> {
    fn rep(mut self, r: &CuspidalGL, from: HalfInt, to: HalfInt, n: usize) -> Self {
        for t in HalfInt::range(from, to) {
            for _ in 0..n {
                self.deltas.push(SegmentRep::cusp(r, t));
            }
        }
        self
    }
    /// `ν^t` for `t = from, …, to`.
    fn singles(self, r: &CuspidalGL, from: HalfInt, to: HalfInt) -> Self {
        self.rep(r, from, to, 1)
    }
    fn pairs(self, r: &CuspidalGL, from: HalfInt, to: HalfInt) -> Self {
        self.rep(r, from, to, 2)
    }
    fn triples(self, r: &CuspidalGL, from: HalfInt, to: HalfInt) -> Self {
        self.rep(r, from, to, 3)
    }
    fn single(self, r: &CuspidalGL, t: HalfInt) -> Self {
        self.rep(r, t, t, 1)
    }
    fn seg(mut self, r: &CuspidalGL, lo: HalfInt, hi: HalfInt) -> Self {
        self.deltas.push(SegmentRep::delta(r, lo, hi).expect("factor-list segment"));
        self
    }
    /// `δ([t, t+len-1])` for `t = from, …, to`.
    fn segs(mut self, r: &CuspidalGL, from: HalfInt, to: HalfInt, len: i64) -> Self {
        for t in HalfInt::range(from, to) {
            self = self.seg(r, t, t + (len - 1));
        }
        self
    }
    fn dpairs(self, r: &CuspidalGL, from: HalfInt, to: HalfInt) -> Self {
        self.segs(r, from, to, 2)
    }
    fn dtriples(self, r: &CuspidalGL, from: HalfInt, to: HalfInt) -> Self {
        self.segs(r, from, to, 3)
    }
    /// `δ([t-1,t]), ν^t` for `t = from, …, to`.
    fn blocks_dn(mut self, r: &CuspidalGL, from: HalfInt, to: HalfInt) -> Self {
        for t in HalfInt::range(from, to) {
            self = self.seg(r, t - 1, t).single(r, t);
        }
        self
    }
    /// `ν^{t-1}, δ([t-1,t])` for `t = from, …, to`.
    fn blocks_nd(mut self, r: &CuspidalGL, from: HalfInt, to: HalfInt) -> Self {
        for t in HalfInt::range(from, to) {
            self = self.single(r, t - 1).seg(r, t - 1, t);
        }
        self
    }
    /// `ν^{-x}ρ, …, ν^{-α}ρ`, the ζ(ρ,x;σ) part when ρ₀ ≇ ρ.
    fn zeta_rho(self) -> Self {
        let (r, x, alpha) = (self.cx.p.rho.clone(), self.cx.p.x, self.cx.p.alpha);
        self.singles(&r, -x, -alpha)
    }
    fn on(self, atom: GAtom) -> Factor {
        Factor::Langlands(LanglandsData::new(self.deltas, atom))
    }
}

fn hi(t: i64) -> HalfInt {
    HalfInt::int(t)
}

/// One row of the decision table.
pub struct Case {
    pub id: &'static str,
    pub rule: &'static str,
    pub guard: fn(&Ctx) -> bool,
    pub build: fn(&Ctx) -> Outcome,
}

fn irreducible(_: &Ctx) -> Outcome {
    Outcome::Irreducible
}

fn factors(v: Vec<Factor>) -> Outcome {
    Outcome::Factors(v)
}

// Section predicates.
fn beta0(cx: &Ctx) -> bool {
    cx.p.beta == 0
}
fn pos(cx: &Ctx) -> bool {
    cx.p.beta > 0 && cx.p.a >= 1
}
fn nonpos(cx: &Ctx) -> bool {
    cx.p.beta > 0 && cx.p.a <= 0
}
fn half(cx: &Ctx) -> bool {
    cx.p.beta > 0 && cx.p.a == HalfInt::HALF
}

// The α-dependent tails shared by several lists with ρ₀ ≅ ρ and a ≤ 0.

/// `δ([a-1,a]), ν^a, …` up to the α-dependent end, then the atom.
fn tail_dn(cx: &Ctx, l: Lb<'_>) -> Factor {
    let (r, alpha, a) = (&cx.p.rho, cx.p.alpha, cx.p.a);
    if alpha == HalfInt::HALF {
        l.blocks_dn(r, a, HalfInt::from_twice(-3)).seg(r, HalfInt::from_twice(-3), -HalfInt::HALF).on(cx.tau_rho_sigma())
    } else if alpha == 1 {
        l.blocks_dn(r, a, hi(-1)).seg(r, hi(-1), hi(0)).on(cx.sigma())
    } else {
        l.blocks_dn(r, a, -alpha + 1).pairs(r, -alpha + 2, cx.top).on(cx.tau1())
    }
}

/// `ν^{a-1}, δ([a-1,a]), …` up to the α-dependent end, then the atom.
fn tail_nd(cx: &Ctx, l: Lb<'_>) -> Factor {
    let (r, alpha, a) = (&cx.p.rho, cx.p.alpha, cx.p.a);
    if alpha == HalfInt::HALF {
        l.blocks_nd(r, a, -HalfInt::HALF).on(cx.tau_rho_sigma())
    } else if alpha == 1 {
        l.blocks_nd(r, a, hi(0)).on(cx.sigma())
    } else {
        l.blocks_nd(r, a, -alpha + 1).single(r, -alpha + 1).pairs(r, -alpha + 2, cx.top).on(cx.tau1())
    }
}

pub static CASES: &[Case] = &[
    // β = 0: ρ₀ ⋊ σ splits as τ₁ + τ₋₁.
    Case {
        id: "beta0/a>=1",
        rule: "beta = 0: irreducible exactly when a >= 1",
        guard: |cx| beta0(cx) && cx.p.a >= 1,
        build: irreducible,
    },
    Case {
        id: "beta0/a<=0/-a<b",
        rule: "beta = 0, a <= 0, -a < b: three factors",
        guard: |cx| beta0(cx) && cx.p.a <= 0 && cx.c < cx.p.b,
        build: |cx| {
            let (r0, a, b) = (&cx.p.rho0, cx.p.a, cx.p.b);
            let base = || cx.l().zeta_rho().singles(r0, -b, a - 1).pairs(r0, a, hi(-1));
            factors(vec![
                base().on(cx.tau_pm(1)),
                base().on(cx.tau_pm(-1)),
                cx.l().zeta_rho().singles(r0, -b, a - 2).dpairs(r0, a - 1, hi(-1)).on(cx.sigma()),
            ])
        },
    },
    Case {
        id: "beta0/a<=0/-a=b",
        rule: "beta = 0, a <= 0, -a = b: two factors",
        guard: |cx| beta0(cx) && cx.p.a <= 0 && cx.c == cx.p.b,
        build: |cx| {
            let (r0, a) = (&cx.p.rho0, cx.p.a);
            let base = || cx.l().zeta_rho().pairs(r0, a, hi(-1));
            factors(vec![base().on(cx.tau_pm(1)), base().on(cx.tau_pm(-1))])
        },
    },
    // β > 0, a >= 1, ρ₀ ≅ ρ.
    Case {
        id: "same/a>=1/irreducible",
        rule: "rho0 = rho, a >= 1: reducible exactly when a <= alpha-1 <= b < x or (a <= x+1 and x < b)",
        guard: |cx| {
            let p = &cx.p;
            pos(cx) && p.same && !((p.a <= p.alpha - 1 && p.alpha - 1 <= p.b && p.b < p.x) || (p.a <= p.x + 1 && p.x < p.b))
        },
        build: irreducible,
    },
    Case {
        id: "same/a>=1/a<=alpha-1<=b<x",
        rule: "rho0 = rho, a <= alpha-1 <= b < x: two factors",
        guard: |cx| {
            let p = &cx.p;
            pos(cx) && p.same && p.a <= p.alpha - 1 && p.alpha - 1 <= p.b && p.b < p.x
        },
        build: |cx| {
            let (r, alpha, a, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b, cx.p.x);
            factors(vec![
                cx.l().singles(r, -x, -b - 1).pairs(r, -b, -alpha).singles(r, -alpha + 1, -a).on(cx.sigma()),
                cx.l().singles(r, -x, -b - 2).dpairs(r, -b - 1, -alpha).singles(r, -alpha + 2, -a).on(cx.sigma()),
            ])
        },
    },
    Case {
        id: "same/a>=1/x<b/a>alpha",
        rule: "rho0 = rho, a <= x+1, x < b, a > alpha: two factors",
        guard: |cx| {
            let p = &cx.p;
            pos(cx) && p.same && p.a <= p.x + 1 && p.x < p.b && p.a > p.alpha
        },
        build: |cx| {
            let (r, alpha, a, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b, cx.p.x);
            factors(vec![
                cx.l().singles(r, -b, -x - 1).pairs(r, -x, -a).singles(r, -a + 1, -alpha).on(cx.sigma()),
                cx.l().singles(r, -b, -x - 2).dpairs(r, -x - 1, -a).singles(r, -a + 2, -alpha).on(cx.sigma()),
            ])
        },
    },
    Case {
        id: "same/a>=1/x<b/a<=alpha",
        rule: "rho0 = rho, a <= x+1, x < b, a <= alpha: two factors, one over sigma_sp",
        guard: |cx| {
            let p = &cx.p;
            pos(cx) && p.same && p.a <= p.x + 1 && p.x < p.b && p.a <= p.alpha
        },
        build: |cx| {
            let (r, alpha, a, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b, cx.p.x);
            factors(vec![
                cx.l().singles(r, -b, -x - 1).pairs(r, -x, -alpha).singles(r, -alpha + 1, -a).on(cx.sigma()),
                cx.l().singles(r, -b, -x - 2).dpairs(r, -x - 1, -alpha - 1).on(cx.sigma_sp(r, alpha)),
            ])
        },
    },
    // β > 0, a >= 1, ρ₀ ≇ ρ.
    Case {
        id: "distinct/a>=1/irreducible",
        rule: "rho0 != rho, a >= 1: irreducible exactly when a > beta or b < beta",
        guard: |cx| pos(cx) && !cx.p.same && (cx.p.a > cx.p.beta || cx.p.b < cx.p.beta),
        build: irreducible,
    },
    Case {
        id: "distinct/a>=1/a<=beta<=b",
        rule: "rho0 != rho, a <= beta <= b: two factors, one over sigma_sp",
        guard: |cx| pos(cx) && !cx.p.same && cx.p.a <= cx.p.beta && cx.p.beta <= cx.p.b,
        build: |cx| {
            let (r0, beta, a, b) = (&cx.p.rho0, cx.p.beta, cx.p.a, cx.p.b);
            factors(vec![
                cx.l().singles(r0, -b, -a).zeta_rho().on(cx.sigma()),
                cx.l().singles(r0, -b, -beta - 1).zeta_rho().on(cx.sigma_sp(r0, beta)),
            ])
        },
    },
    // β > 0, a <= 0, ρ₀ ≅ ρ, -a = b.
    Case {
        id: "same/a<=0/-a=b/irreducible",
        rule: "rho0 = rho, -a = b: irreducible exactly when -a <= alpha-2 or -a = x",
        guard: |cx| nonpos(cx) && cx.p.same && cx.c == cx.p.b && (cx.c <= cx.p.alpha - 2 || cx.c == cx.p.x),
        build: irreducible,
    },
    Case {
        id: "same/a<=0/-a=b/alpha-2<-a<x",
        rule: "rho0 = rho, -a = b, alpha-2 < -a < x: two factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.c == cx.p.b && cx.p.alpha - 2 < cx.c && cx.c < cx.p.x,
        build: |cx| {
            let (r, alpha, a, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.x);
            factors(vec![
                cx.l().singles(r, -x, a - 1).triples(r, a, -alpha).pairs(r, -alpha + 1, cx.top).on(cx.tau1()),
                tail_dn(cx, cx.l().singles(r, -x, a - 2)),
            ])
        },
    },
    Case {
        id: "same/a<=0/-a=b/-a>x",
        rule: "rho0 = rho, -a = b, -a > x: two factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.c == cx.p.b && cx.c > cx.p.x,
        build: |cx| {
            let (r, alpha, a, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.x);
            factors(vec![
                cx.l().pairs(r, a, -x - 1).triples(r, -x, -alpha).pairs(r, -alpha + 1, cx.top).on(cx.tau1()),
                cx.l().pairs(r, a, -x - 2).blocks_nd(r, -x, -alpha).singles(r, -alpha, cx.top).on(cx.tau2()),
            ])
        },
    },
    // β > 0, a <= 0, ρ₀ ≅ ρ, -a < b.
    Case {
        id: "same/a<=0/-a<b/irreducible",
        rule: "rho0 = rho, -a < b: irreducible exactly when b < alpha-1 or (-a < alpha-1 and b = x)",
        guard: |cx| {
            let p = &cx.p;
            nonpos(cx) && p.same && cx.c < p.b && (p.b < p.alpha - 1 || (cx.c < p.alpha - 1 && p.b == p.x))
        },
        build: irreducible,
    },
    Case {
        id: "same/a<=0/-a<b/-a>x",
        rule: "rho0 = rho, x < -a < b: three factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.c < cx.p.b && cx.c > cx.p.x,
        build: |cx| {
            let (r, alpha, a, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b, cx.p.x);
            factors(vec![
                cx.l()
                    .singles(r, -b, a - 1)
                    .pairs(r, a, -x - 1)
                    .triples(r, -x, -alpha)
                    .pairs(r, -alpha + 1, cx.top)
                    .on(cx.tau1()),
                cx.l()
                    .singles(r, -b, a - 1)
                    .pairs(r, a, -x - 2)
                    .blocks_nd(r, -x, -alpha)
                    .singles(r, -alpha, cx.top)
                    .on(cx.tau2()),
                cx.l()
                    .singles(r, -b, a - 2)
                    .dpairs(r, a - 1, -x - 2)
                    .blocks_dn(r, -x, -alpha)
                    .singles(r, -alpha + 1, cx.top)
                    .on(cx.tau2()),
            ])
        },
    },
    Case {
        id: "same/a<=0/alpha-1<=-a<b<x",
        rule: "rho0 = rho, alpha-1 <= -a < b < x: three factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.p.alpha - 1 <= cx.c && cx.c < cx.p.b && cx.p.b < cx.p.x,
        build: |cx| {
            let (r, alpha, a, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b, cx.p.x);
            factors(vec![
                cx.l()
                    .singles(r, -x, -b - 1)
                    .pairs(r, -b, a - 1)
                    .triples(r, a, -alpha)
                    .pairs(r, -alpha + 1, cx.top)
                    .on(cx.tau1()),
                tail_dn(cx, cx.l().singles(r, -x, -b - 2).dpairs(r, -b - 1, a - 2)),
                tail_nd(cx, cx.l().singles(r, -x, -b - 1).pairs(r, -b, a - 2)),
            ])
        },
    },
    Case {
        id: "same/a<=0/alpha-1<=-a<x<b",
        rule: "rho0 = rho, alpha-1 <= -a < x < b: four factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.p.alpha - 1 <= cx.c && cx.c < cx.p.x && cx.p.x < cx.p.b,
        build: |cx| {
            let (r, alpha, a, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b, cx.p.x);
            let last = {
                let l = cx.l().singles(r, -b, -x - 2).dpairs(r, -x - 1, a - 3);
                if alpha == HalfInt::HALF {
                    l.dtriples(r, a - 2, HalfInt::from_twice(-3)).on(cx.sigma())
                } else if alpha == 1 {
                    l.dtriples(r, a - 2, hi(-2)).on(cx.delta_sp(hi(1)))
                } else {
                    l.dtriples(r, a - 2, -alpha - 1).singles(r, -alpha + 2, cx.top).on(cx.tau2())
                }
            };
            factors(vec![
                cx.l()
                    .singles(r, -b, -x - 1)
                    .pairs(r, -x, a - 1)
                    .triples(r, a, -alpha)
                    .pairs(r, -alpha + 1, cx.top)
                    .on(cx.tau1()),
                cx.l()
                    .singles(r, -b, -x - 2)
                    .dpairs(r, -x - 1, a - 2)
                    .blocks_dn(r, a, -alpha)
                    .singles(r, -alpha + 1, cx.top)
                    .on(cx.tau2()),
                tail_nd(cx, cx.l().singles(r, -b, -x - 1).pairs(r, -x, a - 2)),
                last,
            ])
        },
    },
    Case {
        id: "same/a<=0/alpha-1<=-a<x=b",
        rule: "rho0 = rho, alpha-1 <= -a < x = b: two factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.p.alpha - 1 <= cx.c && cx.c < cx.p.x && cx.p.b == cx.p.x,
        build: |cx| {
            let (r, alpha, a, b) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b);
            factors(vec![
                cx.l().pairs(r, -b, a - 1).triples(r, a, -alpha).pairs(r, -alpha + 1, cx.top).on(cx.tau1()),
                tail_nd(cx, cx.l().pairs(r, -b, a - 2)),
            ])
        },
    },
    Case {
        id: "same/a<=0/-a<alpha-2/alpha-1<=b<x",
        rule: "rho0 = rho, -a < alpha-2, alpha-1 <= b < x: two factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.c < cx.p.alpha - 2 && cx.p.alpha - 1 <= cx.p.b && cx.p.b < cx.p.x,
        build: |cx| {
            let (r, alpha, a, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b, cx.p.x);
            factors(vec![
                cx.l()
                    .singles(r, -x, -b - 1)
                    .pairs(r, -b, -alpha)
                    .singles(r, -alpha + 1, a - 1)
                    .pairs(r, a, cx.top)
                    .on(cx.tau1()),
                cx.l()
                    .singles(r, -x, -b - 2)
                    .dpairs(r, -b - 1, -alpha)
                    .singles(r, -alpha + 2, a - 1)
                    .pairs(r, a, cx.top)
                    .on(cx.tau1()),
            ])
        },
    },
    Case {
        id: "same/a<=0/-a=alpha-2/alpha-1<=b<x",
        rule: "rho0 = rho, -a = alpha-2, alpha-1 <= b < x: two factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.c == cx.p.alpha - 2 && cx.p.alpha - 1 <= cx.p.b && cx.p.b < cx.p.x,
        build: |cx| {
            let (r, alpha, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.b, cx.p.x);
            factors(vec![
                cx.l()
                    .singles(r, -x, -b - 1)
                    .pairs(r, -b, -alpha)
                    .single(r, -alpha + 1)
                    .pairs(r, -alpha + 2, cx.top)
                    .on(cx.tau1()),
                cx.l().singles(r, -x, -b - 2).dpairs(r, -b - 1, -alpha).pairs(r, -alpha + 2, cx.top).on(cx.tau1()),
            ])
        },
    },
    Case {
        id: "same/a<=0/-a<alpha-1/x<b",
        rule: "rho0 = rho, -a < alpha-1, x < b: two factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.c < cx.p.alpha - 1 && cx.p.x < cx.p.b,
        build: |cx| {
            let (r, alpha, a, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b, cx.p.x);
            factors(vec![
                cx.l().singles(r, -b, -x - 2).dpairs(r, -x - 1, -alpha - 1).singles(r, a, cx.top).on(cx.tau2()),
                cx.l()
                    .singles(r, -b, -x - 1)
                    .pairs(r, -x, -alpha)
                    .singles(r, -alpha + 1, a - 1)
                    .pairs(r, a, cx.top)
                    .on(cx.tau1()),
            ])
        },
    },
    Case {
        id: "same/a<=0/-a=x<b",
        rule: "rho0 = rho, -a = x < b: two factors",
        guard: |cx| nonpos(cx) && cx.p.same && cx.c == cx.p.x && cx.p.x < cx.p.b,
        build: |cx| {
            let (r, alpha, a, b) = (&cx.p.rho, cx.p.alpha, cx.p.a, cx.p.b);
            factors(vec![
                cx.l().singles(r, -b, a - 2).blocks_dn(r, a, -alpha).singles(r, -alpha + 1, cx.top).on(cx.tau2()),
                cx.l().singles(r, -b, a - 1).triples(r, a, -alpha).pairs(r, -alpha + 1, cx.top).on(cx.tau1()),
            ])
        },
    },
    // β > 0, a <= 0, ρ₀ ≇ ρ.
    Case {
        id: "distinct/a<=0/irreducible",
        rule: "rho0 != rho, a <= 0: irreducible exactly when b < beta",
        guard: |cx| nonpos(cx) && !cx.p.same && cx.p.b < cx.p.beta,
        build: irreducible,
    },
    Case {
        id: "distinct/a<=0/-a=b>=beta",
        rule: "rho0 != rho, beta <= -a = b: two factors",
        guard: |cx| nonpos(cx) && !cx.p.same && cx.c == cx.p.b && cx.p.b >= cx.p.beta,
        build: |cx| {
            let (r0, beta, b) = (&cx.p.rho0, cx.p.beta, cx.p.b);
            factors(vec![
                cx.l().zeta_rho().pairs(r0, -b, cx.top_b).on(cx.tau1()),
                cx.l().zeta_rho().pairs(r0, -b, -beta - 1).singles(r0, -beta, cx.top_b).on(cx.tau2()),
            ])
        },
    },
    Case {
        id: "distinct/a<=0/beta<=-a<b",
        rule: "rho0 != rho, beta <= -a < b: three factors",
        guard: |cx| nonpos(cx) && !cx.p.same && cx.p.beta <= cx.c && cx.c < cx.p.b,
        build: |cx| {
            let (r0, beta, a, b) = (&cx.p.rho0, cx.p.beta, cx.p.a, cx.p.b);
            factors(vec![
                cx.l().zeta_rho().singles(r0, -b, a - 1).pairs(r0, a, cx.top_b).on(cx.tau1()),
                cx.l()
                    .zeta_rho()
                    .singles(r0, -b, a - 1)
                    .pairs(r0, a, -beta - 1)
                    .singles(r0, -beta, cx.top_b)
                    .on(cx.tau2()),
                cx.l()
                    .zeta_rho()
                    .singles(r0, -b, a - 2)
                    .dpairs(r0, a - 1, -beta - 1)
                    .singles(r0, -beta + 1, cx.top_b)
                    .on(cx.tau2()),
            ])
        },
    },
    Case {
        id: "distinct/a<=0/-a<beta=b",
        rule: "rho0 != rho, -a < beta = b: two factors",
        guard: |cx| nonpos(cx) && !cx.p.same && cx.c < cx.p.beta && cx.p.b == cx.p.beta,
        build: |cx| {
            let (r0, a, b) = (&cx.p.rho0, cx.p.a, cx.p.b);
            factors(vec![
                cx.l().zeta_rho().singles(r0, -b, a - 1).pairs(r0, a, cx.top_b).on(cx.tau1()),
                cx.l().zeta_rho().singles(r0, a, cx.top_b).on(cx.tau2()),
            ])
        },
    },
    Case {
        id: "distinct/a<=0/-a<beta<b",
        rule: "rho0 != rho, -a < beta < b: two factors",
        guard: |cx| nonpos(cx) && !cx.p.same && cx.c < cx.p.beta && cx.p.beta < cx.p.b,
        build: |cx| {
            let (r0, beta, a, b) = (&cx.p.rho0, cx.p.beta, cx.p.a, cx.p.b);
            factors(vec![
                cx.l().zeta_rho().singles(r0, -b, a - 1).pairs(r0, a, cx.top_b).on(cx.tau1()),
                cx.l().zeta_rho().singles(r0, -b, -beta - 1).singles(r0, a, cx.top_b).on(cx.tau2()),
            ])
        },
    },
    // β > 0, a = 1/2, ρ₀ ≅ ρ.
    Case {
        id: "same/a=1/2/irreducible",
        rule: "rho0 = rho, a = 1/2: irreducible exactly when (alpha > 1/2 and b = x) or b < alpha-1",
        guard: |cx| {
            let p = &cx.p;
            half(cx) && p.same && ((p.alpha > HalfInt::HALF && p.b == p.x) || p.b < p.alpha - 1)
        },
        build: irreducible,
    },
    Case {
        id: "same/a=1/2/alpha>1/2/x<b",
        rule: "rho0 = rho, a = 1/2, alpha > 1/2, x < b: two factors",
        guard: |cx| half(cx) && cx.p.same && cx.p.alpha > HalfInt::HALF && cx.p.x < cx.p.b,
        build: |cx| {
            let (r, alpha, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.b, cx.p.x);
            factors(vec![
                cx.l().singles(r, -b, -x - 2).dpairs(r, -x - 1, -alpha - 1).on(cx.tau2()),
                cx.l().singles(r, -b, -x - 1).pairs(r, -x, -alpha).singles(r, -alpha + 1, -HalfInt::HALF).on(cx.sigma()),
            ])
        },
    },
    Case {
        id: "same/a=1/2/alpha>1/2/alpha-1<=b<x",
        rule: "rho0 = rho, a = 1/2, alpha > 1/2, alpha-1 <= b < x: two factors",
        guard: |cx| half(cx) && cx.p.same && cx.p.alpha > HalfInt::HALF && cx.p.alpha - 1 <= cx.p.b && cx.p.b < cx.p.x,
        build: |cx| {
            let (r, alpha, b, x) = (&cx.p.rho, cx.p.alpha, cx.p.b, cx.p.x);
            factors(vec![
                cx.l().singles(r, -x, -b - 1).pairs(r, -b, -alpha).singles(r, -alpha + 1, -HalfInt::HALF).on(cx.sigma()),
                cx.l().singles(r, -x, -b - 2).dpairs(r, -b - 1, -alpha).singles(r, -alpha + 2, -HalfInt::HALF).on(cx.sigma()),
            ])
        },
    },
    Case {
        id: "same/a=1/2/alpha=1/2/x<b",
        rule: "rho0 = rho, a = alpha = 1/2, x < b: four factors",
        guard: |cx| half(cx) && cx.p.same && cx.p.alpha == HalfInt::HALF && cx.p.x < cx.p.b,
        build: |cx| {
            let (r, b, x) = (&cx.p.rho, cx.p.b, cx.p.x);
            let m = |t: i64| HalfInt::from_twice(t);
            factors(vec![
                cx.l().singles(r, -b, -x - 1).pairs(r, -x, m(-1)).on(cx.sigma()),
                cx.l().singles(r, -b, -x - 2).dpairs(r, -x - 1, m(-5)).seg(r, m(-3), m(1)).on(cx.sigma()),
                cx.l().singles(r, -b, -x - 2).dpairs(r, -x - 1, m(-3)).on(cx.delta_sp(HalfInt::HALF)),
                cx.l().singles(r, -b, -x - 1).pairs(r, -x, m(-3)).on(cx.tau_rho_sigma()),
            ])
        },
    },
    Case {
        id: "same/a=1/2/alpha=1/2/b<=x",
        rule: "rho0 = rho, a = alpha = 1/2, b <= x: two factors",
        guard: |cx| half(cx) && cx.p.same && cx.p.alpha == HalfInt::HALF && cx.p.b <= cx.p.x,
        build: |cx| {
            let (r, b, x) = (&cx.p.rho, cx.p.b, cx.p.x);
            let m = |t: i64| HalfInt::from_twice(t);
            factors(vec![
                cx.l().singles(r, -x, -b - 1).pairs(r, -b, m(-3)).on(cx.tau_rho_sigma()),
                cx.l().singles(r, -x, -b - 1).pairs(r, -b, m(-1)).on(cx.sigma()),
            ])
        },
    },
    // β > 0, a = 1/2, ρ₀ ≇ ρ.
    Case {
        id: "distinct/a=1/2/irreducible",
        rule: "rho0 != rho, a = 1/2: irreducible exactly when b < beta",
        guard: |cx| half(cx) && !cx.p.same && cx.p.b < cx.p.beta,
        build: irreducible,
    },
    Case {
        id: "distinct/a=1/2/b>=beta",
        rule: "rho0 != rho, a = 1/2, b >= beta: two factors",
        guard: |cx| half(cx) && !cx.p.same && cx.p.b >= cx.p.beta,
        build: |cx| {
            let (r0, beta, b) = (&cx.p.rho0, cx.p.beta, cx.p.b);
            factors(vec![
                cx.l().zeta_rho().singles(r0, -b, -HalfInt::HALF).on(cx.sigma()),
                cx.l().zeta_rho().singles(r0, -b, -beta - 1).on(cx.tau2()),
            ])
        },
    },
];

/// Ids of every table row whose guard holds; used by the totality sweep.
pub fn matching_cases(p: &DPSParams) -> Result<Vec<&'static str>> {
    let n = normalize_params(p)?;
    if n.early.is_some() {
        return Ok(vec![early_id(n.early.unwrap())]);
    }
    let cx = Ctx::new(n.params);
    Ok(CASES.iter().filter(|c| (c.guard)(&cx)).map(|c| c.id).collect())
}

fn early_id(e: Early) -> &'static str {
    match e {
        Early::Rho0NotSelfDual => "early/rho0-not-self-dual",
        Early::OffLattice => "early/a-beta-not-integral",
    }
}

pub fn classify(p: &DPSParams) -> Result<Verdict> {
    let n = normalize_params(p)?;
    if let Some(e) = n.early {
        let rule = match e {
            Early::Rho0NotSelfDual => "irreducible unless rho0 is fixed by the ambient duality",
            Early::OffLattice => "irreducible when a - beta is not an integer",
        };
        return Ok(Verdict { params: n.params, case: early_id(e), rule, outcome: Outcome::Irreducible });
    }
    let cx = Ctx::new(n.params);
    let hits: Vec<&Case> = CASES.iter().filter(|c| (c.guard)(&cx)).collect();
    let case = match hits.as_slice() {
        [one] => *one,
        [] => return Err(Error::Coverage(cx.p.describe())),
        many => {
            let ids: Vec<&str> = many.iter().map(|c| c.id).collect();
            return Err(Error::Coverage(format!("{} (overlapping rows {:?})", cx.p.describe(), ids)));
        }
    };
    let mut outcome = (case.build)(&cx);
    if let Outcome::Factors(v) = &mut outcome {
        for f in v.iter_mut() {
            if let Factor::Langlands(l) = f {
                *l = normalize_langlands(l)?;
            }
        }
    }
    Ok(Verdict { params: cx.p, case: case.id, rule: case.rule, outcome })
}

/// A cuspidal `ν^e ρ` folded with its contragredient `ν^{-e} ρ̃`.
pub fn fold_exp(e: &Exp, amb: &Ambient) -> Result<Exp> {
    let d = Exp { rho: amb.dual_symbol(&e.rho)?, e: -e.e };
    Ok(if e.e > d.e || (e.e == d.e && *e <= d) { e.clone() } else { d })
}

pub fn folded_support(v: &[Exp], amb: &Ambient) -> Result<Vec<Exp>> {
    let mut out = v.iter().map(|e| fold_exp(e, amb)).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// Folded cuspidal support of the DPS word, GL side only.
pub fn dps_support(p: &DPSParams) -> Result<Vec<Exp>> {
    let w = p.dps_word()?;
    folded_support(&w.gl.cuspidals().collect::<Vec<_>>(), &p.amb)
}

/// Whether a factor has the same folded cuspidal support as the DPS word.
pub fn support_balanced(f: &Factor, p: &DPSParams) -> Result<bool> {
    Ok(folded_support(&f.support(), &p.amb)? == dps_support(p)?)
}
