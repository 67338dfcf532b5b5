//! Text syntax for words.
//!
//! ```text
//! expr   := NAME | term ( "|x|" expr )?
//! term   := factor ( "x" factor )*
//! factor := "nu^" q sym | ("d" | "z") "(" "[" q "," q ";" sym "]" ")" | "1" | "(" term ")"
//! q      := "-"? INT ( "/" "2" )?
//! sym    := NAME "~"?
//! ```
//!
//! `|x|` is right-associative, so `a |x| b |x| sigma` is `(a x b) |x| sigma`.
//! A trailing `~` names the dual image of a GL symbol.

use std::fmt;

use crate::config::{Config, RESERVED};
use crate::error::{Error, Result};
use crate::symbols::HalfInt;
use crate::word::{GAtom, GLWord, GWord, Kind, SegmentRep};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sym {
    pub name: String,
    pub conj: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    One,
    Cusp { e: HalfInt, sym: Sym },
    Seg { kind: Kind, lo: HalfInt, hi: HalfInt, sym: Sym },
    Group(Box<Expr>),
    Prod(Vec<Expr>),
    Rtimes(Box<Expr>, Box<Expr>),
    GSym(String),
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.name, if self.conj { "~" } else { "" })
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::One => write!(f, "1"),
            Expr::Cusp { e, sym } => write!(f, "nu^{e} {sym}"),
            Expr::Seg { kind, lo, hi, sym } => {
                let k = if *kind == Kind::Delta { "d" } else { "z" };
                write!(f, "{k}([{lo},{hi};{sym}])")
            }
            Expr::Group(x) => write!(f, "({x})"),
            Expr::Prod(xs) => {
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Expr::Rtimes(l, r) => write!(f, "{l} |x| {r}"),
            Expr::GSym(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Int(i64),
    Caret,
    Slash,
    Minus,
    Tilde,
    LParen,
    RParen,
    LBrack,
    RBrack,
    Comma,
    Semi,
    Rtimes,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::Slash => write!(f, "`/`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Tilde => write!(f, "`~`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::LBrack => write!(f, "`[`"),
            Tok::RBrack => write!(f, "`]`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Rtimes => write!(f, "`|x|`"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

type Pos = (usize, usize);

fn err(p: Pos, msg: impl Into<String>) -> Error {
    Error::Parse { line: p.0, col: p.1, msg: msg.into() }
}

fn lex(s: &str) -> Result<Vec<(Tok, Pos)>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < cs.len() {
        let c = cs[i];
        let p = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_' || cs[i] == '\'') {
                i += 1;
            }
            Tok::Ident(cs[start..i].iter().collect())
        } else if c.is_ascii_digit() {
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[start..i].iter().collect();
            Tok::Int(txt.parse().map_err(|_| err(p, format!("integer `{txt}` out of range")))?)
        } else if c == '|' {
            if cs.get(i + 1) == Some(&'x') && cs.get(i + 2) == Some(&'|') {
                i += 3;
                Tok::Rtimes
            } else {
                return Err(err(p, "expected `|x|`"));
            }
        } else {
            i += 1;
            match c {
                '^' => Tok::Caret,
                '/' => Tok::Slash,
                '-' => Tok::Minus,
                '~' => Tok::Tilde,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                _ => return Err(err(p, format!("unexpected character `{c}`"))),
            }
        };
        col += i - start;
        out.push((tok, p));
    }
    out.push((Tok::End, (line, col)));
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, Pos)>,
    i: usize,
    cfg: Option<&'a Config>,
    open: Vec<Pos>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.i].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.i + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.i].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.i].clone();
        if self.i + 1 < self.toks.len() {
            self.i += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos> {
        let (t, p) = self.bump();
        if t == want {
            return Ok(p);
        }
        // A missing closer is reported at its opener.
        if matches!(want, Tok::RParen | Tok::RBrack) && matches!(t, Tok::End) {
            let o = self.open.last().copied().unwrap_or(p);
            return Err(err(o, format!("unbalanced bracket: {want} never closed")));
        }
        Err(err(p, format!("expected {want}, found {t}")))
    }

    fn is_g_start(&self) -> bool {
        match (self.peek(), self.peek2()) {
            (Tok::Ident(n), next) => {
                !matches!(n.as_str(), "nu" | "d" | "z") || (n != "nu" && *next != Tok::LParen)
            }
            _ => false,
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        if self.is_g_start() {
            let (t, p) = self.bump();
            let Tok::Ident(n) = t else { unreachable!() };
            if RESERVED.contains(&n.as_str()) {
                return Err(err(p, format!("`{n}` is reserved")));
            }
            if let Some(c) = self.cfg {
                if c.g_symbol(&n).is_none() {
                    let hint = if c.gl_symbol(&n).is_some() {
                        " (a GL symbol needs an exponent, e.g. `nu^0 NAME`)"
                    } else {
                        ""
                    };
                    return Err(err(p, format!("unknown symbol `{n}`{hint}")));
                }
            }
            return Ok(Expr::GSym(n));
        }
        let lhs = self.term()?;
        if *self.peek() == Tok::Rtimes {
            self.bump();
            let rhs = self.expr()?;
            return Ok(Expr::Rtimes(Box::new(lhs), Box::new(rhs)));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut xs = vec![self.factor()?];
        while matches!(self.peek(), Tok::Ident(n) if n == "x") {
            self.bump();
            xs.push(self.factor()?);
        }
        Ok(if xs.len() == 1 { xs.pop().unwrap() } else { Expr::Prod(xs) })
    }

    fn half(&mut self) -> Result<HalfInt> {
        let p = self.pos();
        let neg = if *self.peek() == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let (t, tp) = self.bump();
        let Tok::Int(n) = t else {
            return Err(err(tp, format!("malformed half-integer: expected a number, found {t}")));
        };
        let n = if neg { -n } else { n };
        if *self.peek() == Tok::Slash {
            self.bump();
            let (d, _) = self.bump();
            if d != Tok::Int(2) {
                return Err(err(p, "malformed half-integer: only the denominator 2 is allowed"));
            }
            return Ok(HalfInt::from_twice(n));
        }
        n.checked_mul(2)
            .map(HalfInt::from_twice)
            .ok_or_else(|| err(p, "malformed half-integer: out of range"))
    }

    fn sym(&mut self) -> Result<Sym> {
        let (t, p) = self.bump();
        let Tok::Ident(name) = t else {
            return Err(err(p, format!("expected a symbol, found {t}")));
        };
        if RESERVED.contains(&name.as_str()) {
            return Err(err(p, format!("`{name}` is reserved")));
        }
        if let Some(c) = self.cfg {
            if c.gl_symbol(&name).is_none() {
                return Err(err(p, format!("unknown symbol `{name}`")));
            }
        }
        let conj = if *self.peek() == Tok::Tilde {
            self.bump();
            true
        } else {
            false
        };
        Ok(Sym { name, conj })
    }

    fn factor(&mut self) -> Result<Expr> {
        let (t, p) = self.bump();
        match t {
            Tok::Int(1) => Ok(Expr::One),
            Tok::LParen => {
                self.open.push(p);
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                self.open.pop();
                Ok(Expr::Group(Box::new(inner)))
            }
            Tok::Ident(n) if n == "nu" => {
                self.expect(Tok::Caret)?;
                let e = self.half()?;
                let sym = self.sym()?;
                Ok(Expr::Cusp { e, sym })
            }
            Tok::Ident(n) if n == "d" || n == "z" => {
                let kind = if n == "d" { Kind::Delta } else { Kind::Zeta };
                let po = self.expect(Tok::LParen)?;
                self.open.push(po);
                let pb = self.expect(Tok::LBrack)?;
                self.open.push(pb);
                let lo = self.half()?;
                self.expect(Tok::Comma)?;
                let hi = self.half()?;
                self.expect(Tok::Semi)?;
                let sym = self.sym()?;
                self.expect(Tok::RBrack)?;
                self.open.pop();
                self.expect(Tok::RParen)?;
                self.open.pop();
                if hi < lo {
                    return Err(err(pb, format!("segment [{lo},{hi}] has hi < lo")));
                }
                if !lo.congruent(hi) {
                    return Err(err(pb, format!("segment [{lo},{hi}]: endpoints differ by a non-integer")));
                }
                Ok(Expr::Seg { kind, lo, hi, sym })
            }
            Tok::Ident(n) => Err(err(p, format!("`{n}` cannot appear here; group symbols go after `|x|`"))),
            Tok::RParen | Tok::RBrack => Err(err(p, format!("unbalanced bracket: unexpected {t}"))),
            other => Err(err(p, format!("unexpected {other}"))),
        }
    }
}

fn run(s: &str, cfg: Option<&Config>) -> Result<Expr> {
    let mut p = Parser { toks: lex(s)?, i: 0, cfg, open: Vec::new() };
    let e = p.expr()?;
    match p.peek() {
        Tok::End => Ok(e),
        Tok::RParen | Tok::RBrack => Err(err(p.pos(), format!("unbalanced bracket: unexpected {}", p.peek()))),
        t => Err(err(p.pos(), format!("expected end of input, found {t}"))),
    }
}

/// Syntax only; symbol names are not checked.
pub fn parse_syntax(s: &str) -> Result<Expr> {
    run(s, None)
}

/// Parses against a symbol table, so unknown symbols are reported with their
/// position.
pub fn parse_expr(s: &str, cfg: &Config) -> Result<Expr> {
    run(s, Some(cfg))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Gl(GLWord),
    G(GWord),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Gl(w) => write!(f, "{w}"),
            Value::G(w) => write!(f, "{w}"),
        }
    }
}

fn gl_sym(s: &Sym, cfg: &Config) -> Result<crate::symbols::CuspidalGL> {
    let r = cfg
        .gl_symbol(&s.name)
        .ok_or_else(|| Error::Config(format!("unknown GL symbol `{}`", s.name)))?;
    if s.conj {
        cfg.ambient.dual_symbol(r)
    } else {
        Ok(r.clone())
    }
}

fn lower_gl(e: &Expr, cfg: &Config) -> Result<GLWord> {
    match lower(e, cfg)? {
        Value::Gl(w) => Ok(w),
        Value::G(w) => Err(Error::Params(format!("`{w}` is a group word where a GL word is expected"))),
    }
}

pub fn lower(e: &Expr, cfg: &Config) -> Result<Value> {
    Ok(match e {
        Expr::One => Value::Gl(GLWord::one()),
        Expr::Cusp { e, sym } => Value::Gl(GLWord::single(SegmentRep::cusp(&gl_sym(sym, cfg)?, *e))),
        Expr::Seg { kind, lo, hi, sym } => {
            Value::Gl(GLWord::single(SegmentRep::checked(*kind, &gl_sym(sym, cfg)?, *lo, *hi)?))
        }
        Expr::Group(x) => lower(x, cfg)?,
        Expr::Prod(xs) => {
            let mut w = GLWord::one();
            for x in xs {
                w = w.times(&lower_gl(x, cfg)?);
            }
            Value::Gl(w)
        }
        Expr::Rtimes(l, r) => {
            let pi = lower_gl(l, cfg)?;
            match lower(r, cfg)? {
                Value::G(g) => Value::G(g.induce(&pi)),
                Value::Gl(w) => {
                    return Err(Error::Params(format!("right of `|x|` must be a group word, got `{w}`")))
                }
            }
        }
        Expr::GSym(n) => {
            let s = cfg
                .g_symbol(n)
                .ok_or_else(|| Error::Config(format!("unknown group symbol `{n}`")))?;
            Value::G(GWord::atom(GAtom::cuspidal(s)))
        }
    })
}

pub fn parse_value(s: &str, cfg: &Config) -> Result<Value> {
    lower(&parse_expr(s, cfg)?, cfg)
}

pub fn parse_gl(s: &str, cfg: &Config) -> Result<GLWord> {
    match parse_value(s, cfg)? {
        Value::Gl(w) => Ok(w),
        Value::G(w) => Err(Error::Params(format!("expected a GL word, got `{w}`"))),
    }
}

pub fn parse_g(s: &str, cfg: &Config) -> Result<GWord> {
    match parse_value(s, cfg)? {
        Value::G(w) => Ok(w),
        Value::Gl(w) => Err(Error::Params(format!("expected a group word (`... |x| sigma`), got `{w}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> Config {
        Config::default_classical()
    }

    #[test]
    fn delta_over_sigma() {
        let g = parse_g("d([-1,2;rho]) |x| sigma", &cfg()).unwrap();
        assert_eq!(g.gl.factors().len(), 1);
        assert_eq!(g.gl.factors()[0].kind(), Kind::Delta);
        assert_eq!(g.to_string(), "d([-1,2;rho]) |x| sigma");
    }

    #[test]
    fn half_integral_cuspidals() {
        let g = parse_g("nu^1/2 rho x nu^3/2 rho |x| sigma", &cfg()).unwrap();
        assert_eq!(g.gl.factors().len(), 2);
        assert!(g.gl.is_cuspidal_word());
        assert_eq!(g.to_string(), "nu^1/2 rho x nu^3/2 rho |x| sigma");
    }

    #[test]
    fn right_associative_rtimes() {
        let a = parse_g("nu^1 rho |x| nu^2 rho0 |x| sigma", &cfg()).unwrap();
        let b = parse_g("nu^1 rho x nu^2 rho0 |x| sigma", &cfg()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn reversed_segment() {
        let e = parse_syntax("d([2,1;rho])").unwrap_err();
        assert_eq!(e, err((1, 3), "segment [2,1] has hi < lo"));
    }

    #[test]
    fn positioned_errors() {
        let e = parse_expr("nu^1 rho x nu^2 tau |x| sigma", &cfg()).unwrap_err();
        assert_eq!(e, err((1, 17), "unknown symbol `tau`"));
        let e = parse_syntax("nu^1/3 rho").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 4, .. }), "{e}");
        let e = parse_syntax("(nu^1 rho x\n d([0,1;rho]) |x| sigma").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 15, .. }), "{e}");
        let e = parse_syntax("d([0,1;rho] |x| sigma").unwrap_err();
        assert!(e.to_string().contains("expected `)`"), "{e}");
        let e = parse_syntax("d([0,1;rho").unwrap_err();
        assert_eq!(e, err((1, 3), "unbalanced bracket: `]` never closed"));
        let e = parse_syntax("nu^1 rho)").unwrap_err();
        assert!(e.to_string().contains("unbalanced"), "{e}");
        let e = parse_expr("sigma x nu^1 rho", &cfg()).unwrap_err();
        assert!(matches!(e, Error::Parse { col: 7, .. }), "{e}");
    }

    #[test]
    fn dual_image_of_fixed_symbol_is_itself() {
        let a = parse_gl("nu^1 rho~", &cfg()).unwrap();
        let b = parse_gl("nu^1 rho", &cfg()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn one_and_groups() {
        let e = parse_syntax("(1 x nu^-1/2 rho) x z([-2,-1;rho0])").unwrap();
        assert_eq!(e.to_string(), "(1 x nu^-1/2 rho) x z([-2,-1;rho0])");
        assert_eq!(parse_syntax(&e.to_string()).unwrap(), e);
        let w = parse_gl("1", &cfg()).unwrap();
        assert!(w.is_one());
    }
}
