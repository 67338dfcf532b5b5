//! Symbol tables, read from a plain `key = value` document.
//!
//! ```text
//! family = gspin-odd
//! omega = w
//! omega.trivial = false
//! gl.rho = essentially-self-dual
//! gl.rho.degree = 2
//! g.sigma.rank = 1
//! g.sigma.reducibility.rho = 3/2
//! ```
//!
//! `#` starts a comment. Every GL symbol named in a reducibility key must be
//! declared.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::symbols::{Ambient, CuspidalG, CuspidalGL, Duality, GroupFamily, HalfInt, Omega};

pub const DEFAULT_CONFIG: &str = include_str!("../config/default.conf");
pub const GSPIN_CONFIG: &str = include_str!("../config/gspin.conf");

/// Names the parser treats as keywords.
pub const RESERVED: [&str; 4] = ["nu", "x", "d", "z"];

#[derive(Clone, Debug)]
pub struct Config {
    pub ambient: Ambient,
    gl: BTreeMap<String, CuspidalGL>,
    g: BTreeMap<String, Arc<CuspidalG>>,
}

#[derive(Default)]
struct GDraft {
    line: usize,
    rank: u32,
    red: Vec<(String, HalfInt, usize)>,
}

fn at(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col: 1, msg: msg.into() }
}

pub fn valid_name(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
        && !RESERVED.contains(&s)
}

impl Config {
    pub fn parse(text: &str) -> Result<Config> {
        let mut family: Option<GroupFamily> = None;
        let mut omega: Option<String> = None;
        let mut trivial = false;
        let mut gl: BTreeMap<String, (Duality, u32, usize)> = BTreeMap::new();
        let mut g: BTreeMap<String, GDraft> = BTreeMap::new();

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, val) = content
                .split_once('=')
                .ok_or_else(|| at(line, format!("expected `key = value`, got `{content}`")))?;
            let (key, val) = (key.trim(), val.trim());
            let parts: Vec<&str> = key.split('.').collect();
            let name_ok = |n: &str| {
                if valid_name(n) {
                    Ok(())
                } else {
                    Err(at(line, format!("invalid or reserved symbol name `{n}`")))
                }
            };
            let wrap = |e: Error| match e {
                Error::Config(m) => at(line, m),
                Error::Parse { msg, .. } => at(line, msg),
                other => other,
            };
            match parts.as_slice() {
                ["family"] => family = Some(val.parse().map_err(wrap)?),
                ["omega"] => {
                    name_ok(val)?;
                    omega = Some(val.to_string());
                }
                ["omega", "trivial"] => {
                    trivial = val
                        .parse()
                        .map_err(|_| at(line, format!("expected true or false, got `{val}`")))?
                }
                ["gl", n] => {
                    name_ok(n)?;
                    let d: Duality = val.parse().map_err(wrap)?;
                    let e = gl.entry(n.to_string()).or_insert((d, 1, line));
                    e.0 = d;
                    e.2 = line;
                }
                ["gl", n, "degree"] => {
                    name_ok(n)?;
                    let deg: u32 = val
                        .parse()
                        .ok()
                        .filter(|d| *d > 0)
                        .ok_or_else(|| at(line, format!("degree must be a positive integer, got `{val}`")))?;
                    gl.entry(n.to_string()).or_insert((Duality::SelfDual, 1, line)).1 = deg;
                }
                ["g", n, "rank"] => {
                    name_ok(n)?;
                    let r: u32 =
                        val.parse().map_err(|_| at(line, format!("bad rank `{val}`")))?;
                    let d = g.entry(n.to_string()).or_default();
                    d.rank = r;
                    d.line = line;
                }
                ["g", n, "reducibility", r] => {
                    name_ok(n)?;
                    let q: HalfInt = val.parse().map_err(wrap)?;
                    let d = g.entry(n.to_string()).or_default();
                    d.red.push((r.to_string(), q, line));
                    if d.line == 0 {
                        d.line = line;
                    }
                }
                _ => return Err(at(line, format!("unknown key `{key}`"))),
            }
        }

        let family = family.ok_or_else(|| Error::Config("missing `family`".into()))?;
        let ambient = Ambient {
            family,
            omega: omega.map(|w| Omega { label: w.as_str().into(), trivial }),
        };
        ambient.validate()?;

        let mut gl_syms = BTreeMap::new();
        for (name, (d, deg, line)) in gl {
            let c = CuspidalGL::new(&name, d).with_degree(deg);
            ambient.dual_symbol(&c).map_err(|e| match e {
                Error::Config(m) => at(line, m),
                other => other,
            })?;
            gl_syms.insert(name, c);
        }
        let mut g_syms = BTreeMap::new();
        for (name, d) in g {
            if gl_syms.contains_key(&name) {
                return Err(at(d.line, format!("`{name}` is declared on both sides")));
            }
            let mut s = CuspidalG::new(&name, family);
            s.rank = d.rank;
            s.omega = ambient.omega.clone();
            for (r, q, line) in d.red {
                if !gl_syms.contains_key(&r) {
                    return Err(at(line, format!("undeclared GL symbol `{r}`")));
                }
                s.reducibility.insert(r.as_str().into(), q);
            }
            s.validate().map_err(|e| match e {
                Error::Config(m) => at(d.line, m),
                other => other,
            })?;
            g_syms.insert(name, Arc::new(s));
        }
        if g_syms.is_empty() {
            return Err(Error::Config("no group cuspidal declared".into()));
        }
        Ok(Config { ambient, gl: gl_syms, g: g_syms })
    }

    pub fn default_classical() -> Config {
        Config::parse(DEFAULT_CONFIG).expect("shipped config parses")
    }

    pub fn default_gspin() -> Config {
        Config::parse(GSPIN_CONFIG).expect("shipped config parses")
    }

    /// `default` or `gspin`.
    pub fn profile(name: &str) -> Result<Config> {
        match name {
            "default" | "classical" => Ok(Config::default_classical()),
            "gspin" => Ok(Config::default_gspin()),
            _ => Err(Error::Config(format!("unknown profile `{name}`"))),
        }
    }

    pub fn gl_symbol(&self, name: &str) -> Option<&CuspidalGL> {
        self.gl.get(name)
    }

    pub fn g_symbol(&self, name: &str) -> Option<&Arc<CuspidalG>> {
        self.g.get(name)
    }

    pub fn gl_symbols(&self) -> impl Iterator<Item = &CuspidalGL> {
        self.gl.values()
    }

    pub fn g_symbols(&self) -> impl Iterator<Item = &Arc<CuspidalG>> {
        self.g.values()
    }

    /// Same symbols, different family. Used to compare a classical family
    /// with GSpin under a trivial central character.
    pub fn with_ambient(&self, ambient: Ambient) -> Result<Config> {
        ambient.validate()?;
        let mut g = BTreeMap::new();
        for (n, s) in &self.g {
            let mut s = (**s).clone();
            s.family = ambient.family;
            s.omega = ambient.omega.clone();
            s.validate()?;
            g.insert(n.clone(), Arc::new(s));
        }
        for c in self.gl.values() {
            ambient.dual_symbol(c)?;
        }
        Ok(Config { ambient, gl: self.gl.clone(), g })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_profiles() {
        let c = Config::default_classical();
        assert_eq!(c.ambient.family, GroupFamily::SoOdd);
        let s = c.g_symbol("sigma").unwrap();
        assert_eq!(s.reducibility[&Arc::<str>::from("rho")], HalfInt::int(2));
        assert_eq!(s.reducibility[&Arc::<str>::from("rho0")], HalfInt::int(1));
        let g = Config::default_gspin();
        assert!(g.ambient.omega.as_ref().is_some_and(|w| !w.trivial));
        assert!(g.ambient.is_fixed(g.gl_symbol("rho").unwrap()));
    }

    #[test]
    fn omega_outside_gspin_is_rejected() {
        let e = Config::parse("family = sp\nomega = w\ng.s.rank = 0\n").unwrap_err();
        assert!(matches!(e, Error::Config(_)), "{e}");
    }

    #[test]
    fn undeclared_reducibility_symbol() {
        let e = Config::parse("family = so\ng.s.reducibility.tau = 1\n").unwrap_err();
        assert_eq!(e, at(2, "undeclared GL symbol `tau`"));
    }

    #[test]
    fn errors_carry_lines() {
        let e = Config::parse("family = so\n\ngl.rho = sometimes\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = Config::parse("family = so\ngl.x = self-dual\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = Config::parse("family = so\ng.s.reducibility.r = 1/3\ngl.r = generic").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }

    #[test]
    fn negative_exponent_and_esd_in_classical() {
        let e = Config::parse("family = so\ngl.r = self-dual\ng.s.reducibility.r = -1\n").unwrap_err();
        assert!(e.to_string().contains("negative"), "{e}");
        let e = Config::parse("family = sp\ngl.r = essentially-self-dual\ng.s.rank = 1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
    }
}
