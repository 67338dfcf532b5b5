//! Exact half-integer exponents and the cuspidal symbols everything else is
//! built from.
//!
//! Cuspidal representations are opaque labels. All the engine ever needs
//! from them is a duality type, a degree, and (on the group side) the
//! reducibility exponents against GL symbols.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::Error;

/// A number in `(1/2)Z`, stored as its double.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };

    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    pub const fn int(n: i64) -> Self {
        HalfInt { twice: 2 * n }
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Smallest integer not below `self`.
    pub fn ceil(self) -> HalfInt {
        HalfInt::int(self.twice.div_euclid(2) + self.twice.rem_euclid(2))
    }

    pub fn floor(self) -> HalfInt {
        HalfInt::int(self.twice.div_euclid(2))
    }

    pub fn abs(self) -> HalfInt {
        HalfInt { twice: self.twice.abs() }
    }

    /// True when `self - other` is an integer.
    pub fn congruent(self, other: HalfInt) -> bool {
        (self.twice - other.twice) % 2 == 0
    }

    /// `self - other` as an integer, if it is one.
    pub fn int_diff(self, other: HalfInt) -> Option<i64> {
        let d = self.twice - other.twice;
        (d % 2 == 0).then_some(d / 2)
    }

    /// Midpoint of two lattice-congruent values. Used for the exponent of a
    /// segment, which always lands back in `(1/2)Z`.
    pub fn midpoint(self, other: HalfInt) -> Option<HalfInt> {
        let s = self.twice + other.twice;
        (s % 2 == 0).then_some(HalfInt { twice: s / 2 })
    }

    /// Values `from, from+1, ..., to`; empty when `from > to`.
    pub fn range(from: HalfInt, to: HalfInt) -> impl Iterator<Item = HalfInt> {
        let mut t = from.twice;
        std::iter::from_fn(move || {
            if t > to.twice {
                return None;
            }
            let out = HalfInt { twice: t };
            t += 2;
            Some(out)
        })
    }

    /// Values `from, from+1/2, ..., to`.
    pub fn range_half(from: HalfInt, to: HalfInt) -> impl Iterator<Item = HalfInt> {
        (from.twice..=to.twice).map(HalfInt::from_twice)
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + o.twice }
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, o: HalfInt) {
        self.twice += o.twice;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - o.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    fn add(self, o: i64) -> HalfInt {
        self + HalfInt::int(o)
    }
}

impl Sub<i64> for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: i64) -> HalfInt {
        self - HalfInt::int(o)
    }
}

impl PartialEq<i64> for HalfInt {
    fn eq(&self, o: &i64) -> bool {
        self.twice == 2 * o
    }
}

impl PartialOrd<i64> for HalfInt {
    fn partial_cmp(&self, o: &i64) -> Option<Ordering> {
        self.twice.partial_cmp(&(2 * o))
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl fmt::Debug for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `n` or `p/2` with an optional leading minus sign.
    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse {
            line: 1,
            col: 1,
            msg: format!("malformed half-integer `{s}`"),
        };
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            if den != "2" {
                return Err(bad());
            }
            let p: i64 = num.parse().map_err(|_| bad())?;
            Ok(HalfInt::from_twice(p))
        } else {
            let n: i64 = s.parse().map_err(|_| bad())?;
            Ok(HalfInt::int(n))
        }
    }
}

/// How a GL cuspidal symbol relates to its contragredient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Duality {
    SelfDual,
    /// `ρ̃ ≅ ρ ⊗ ω` for the ambient central character ω.
    EssentiallySelfDual,
    Generic,
}

impl Duality {
    pub fn name(self) -> &'static str {
        match self {
            Duality::SelfDual => "self-dual",
            Duality::EssentiallySelfDual => "essentially-self-dual",
            Duality::Generic => "generic",
        }
    }
}

impl FromStr for Duality {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "self-dual" => Ok(Duality::SelfDual),
            "essentially-self-dual" => Ok(Duality::EssentiallySelfDual),
            "generic" => Ok(Duality::Generic),
            _ => Err(Error::Config(format!("unknown duality type `{s}`"))),
        }
    }
}

/// A cuspidal representation of some GL(d), as a label.
///
/// `conj` marks the image of the declared symbol under the ambient duality
/// (the contragredient, twisted by ω in the GSpin case). It is only ever set
/// for symbols that are not fixed by that duality.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CuspidalGL {
    pub label: Arc<str>,
    pub conj: bool,
    pub duality: Duality,
    pub degree: u32,
}

impl CuspidalGL {
    pub fn new(label: &str, duality: Duality) -> Self {
        CuspidalGL { label: label.into(), conj: false, duality, degree: 1 }
    }

    pub fn with_degree(mut self, degree: u32) -> Self {
        self.degree = degree;
        self
    }

    pub fn flipped(&self) -> Self {
        CuspidalGL { conj: !self.conj, ..self.clone() }
    }
}

impl fmt::Display for CuspidalGL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.label, if self.conj { "~" } else { "" })
    }
}

impl fmt::Debug for CuspidalGL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupFamily {
    SpEven,
    SoOdd,
    GSpinOdd,
}

impl GroupFamily {
    pub fn name(self) -> &'static str {
        match self {
            GroupFamily::SpEven => "sp-even",
            GroupFamily::SoOdd => "so-odd",
            GroupFamily::GSpinOdd => "gspin-odd",
        }
    }

    pub fn is_gspin(self) -> bool {
        self == GroupFamily::GSpinOdd
    }
}

impl FromStr for GroupFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_lowercase().as_str() {
            "sp" | "sp-even" => Ok(GroupFamily::SpEven),
            "so" | "so-odd" => Ok(GroupFamily::SoOdd),
            "gspin" | "gspin-odd" => Ok(GroupFamily::GSpinOdd),
            _ => Err(Error::Config(format!("unknown group family `{s}`"))),
        }
    }
}

/// Central character of σ, needed for duality in GSpin.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Omega {
    pub label: Arc<str>,
    pub trivial: bool,
}

/// A cuspidal representation of a group of the family.
#[derive(Clone, Debug)]
pub struct CuspidalG {
    pub label: Arc<str>,
    pub family: GroupFamily,
    pub rank: u32,
    pub reducibility: BTreeMap<Arc<str>, HalfInt>,
    pub omega: Option<Omega>,
}

impl CuspidalG {
    pub fn new(label: &str, family: GroupFamily) -> Self {
        CuspidalG { label: label.into(), family, rank: 0, reducibility: BTreeMap::new(), omega: None }
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.family.is_gspin() != self.omega.is_some() {
            return Err(Error::Config(format!(
                "`{}`: a central character is required exactly for the GSpin family",
                self.label
            )));
        }
        for (rho, e) in &self.reducibility {
            if *e < 0 {
                return Err(Error::Config(format!(
                    "reducibility exponent of `{rho}` against `{}` is negative",
                    self.label
                )));
            }
        }
        Ok(())
    }

    pub fn ambient(&self) -> Ambient {
        Ambient { family: self.family, omega: self.omega.clone() }
    }
}

// Atoms compare by label; a universe never declares two group cuspidals with
// the same label.
impl PartialEq for CuspidalG {
    fn eq(&self, o: &Self) -> bool {
        self.label == o.label
    }
}
impl Eq for CuspidalG {}
impl PartialOrd for CuspidalG {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for CuspidalG {
    fn cmp(&self, o: &Self) -> Ordering {
        self.label.cmp(&o.label)
    }
}
impl std::hash::Hash for CuspidalG {
    fn hash<H: std::hash::Hasher>(&self, h: &mut H) {
        self.label.hash(h)
    }
}

/// The group family plus, for GSpin, the central character that twists
/// every contragredient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    pub family: GroupFamily,
    pub omega: Option<Omega>,
}

impl Ambient {
    pub fn classical(family: GroupFamily) -> Self {
        Ambient { family, omega: None }
    }

    pub fn gspin(omega: &str, trivial: bool) -> Self {
        Ambient {
            family: GroupFamily::GSpinOdd,
            omega: Some(Omega { label: omega.into(), trivial }),
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        match (self.family.is_gspin(), &self.omega) {
            (true, None) => Err(Error::Config("GSpin family needs a central character".into())),
            (false, Some(_)) => {
                Err(Error::Config("a central character twist only exists for GSpin".into()))
            }
            _ => Ok(()),
        }
    }

    /// `ρ̃` classically, `ρ̃ ⊗ ω` in GSpin.
    pub fn dual_symbol(&self, r: &CuspidalGL) -> Result<CuspidalGL, Error> {
        self.validate()?;
        let fixed = match (r.duality, &self.omega) {
            (Duality::SelfDual, None) => true,
            (Duality::SelfDual, Some(w)) => w.trivial,
            (Duality::EssentiallySelfDual, Some(_)) => true,
            (Duality::EssentiallySelfDual, None) => {
                return Err(Error::Config(format!(
                    "`{}` is essentially self-dual, which needs a GSpin central character",
                    r.label
                )))
            }
            (Duality::Generic, _) => false,
        };
        Ok(if fixed { r.clone() } else { r.flipped() })
    }

    /// Whether `dual_symbol(r) == r`.
    pub fn is_fixed(&self, r: &CuspidalGL) -> bool {
        self.dual_symbol(r).map(|d| d == *r).unwrap_or(false)
    }
}

/// A cuspidal `ν^e ρ` of the GL side.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Exp {
    pub rho: CuspidalGL,
    pub e: HalfInt,
}

impl Exp {
    pub fn new(rho: &CuspidalGL, e: HalfInt) -> Self {
        Exp { rho: rho.clone(), e }
    }
}

impl fmt::Display for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu^{} {}", self.e, self.rho)
    }
}

impl fmt::Debug for Exp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
