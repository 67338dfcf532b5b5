//! Python module `jacquet`.
//!
//! Every entry point takes an optional `profile` (`"default"` or `"gspin"`)
//! or `config` (the text of a symbol table, which wins over `profile`).
//! Half-integer arguments accept `int` or strings such as `"-3/2"`.

use num_bigint::BigInt;
use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use jacquet_core::aubert::{aubert_standard, bruteforce_against_factorwise, DEFAULT_BRUTEFORCE_BOUND};
use jacquet_core::classify::{classify, DPSParams, Factor};
use jacquet_core::expr::{parse_value, Value};
use jacquet_core::harness::{verify_claims, Status};
use jacquet_core::hopf::m_star_word;
use jacquet_core::mu::mu_star_word;
use jacquet_core::word::GAtom;
use jacquet_core::{Config, GroupFamily, HalfInt};

create_exception!(jacquet, JacquetError, PyValueError);

fn err(e: jacquet_core::Error) -> PyErr {
    JacquetError::new_err(e.to_string())
}

fn config(profile: &str, config: Option<&str>) -> PyResult<Config> {
    match config {
        Some(text) => Config::parse(text),
        None => Config::profile(profile),
    }
    .map_err(err)
}

#[derive(FromPyObject)]
enum Half {
    Int(i64),
    Str(String),
}

impl Half {
    fn get(&self) -> PyResult<HalfInt> {
        match self {
            Half::Int(n) => Ok(HalfInt::int(*n)),
            Half::Str(s) => s.parse().map_err(err),
        }
    }
}

/// Canonical rendering of an expression and whether it is a GL or group word.
#[pyfunction]
#[pyo3(signature = (expr, profile="default", config=None))]
fn parse(expr: &str, profile: &str, config: Option<&str>) -> PyResult<(String, &'static str)> {
    let cfg = self::config(profile, config)?;
    Ok(match parse_value(expr, &cfg).map_err(err)? {
        Value::Gl(w) => (w.to_string(), "gl"),
        Value::G(w) => (w.to_string(), "g"),
    })
}

/// m* of a GL word as `[(coeff, left, right), ...]`.
#[pyfunction]
#[pyo3(signature = (expr, profile="default", config=None))]
fn m_star(expr: &str, profile: &str, config: Option<&str>) -> PyResult<Vec<(BigInt, String, String)>> {
    let cfg = self::config(profile, config)?;
    let w = jacquet_core::expr::parse_gl(expr, &cfg).map_err(err)?;
    Ok(m_star_word(&w).iter().map(|(t, c)| (c.clone(), t.0.to_string(), t.1.to_string())).collect())
}

/// μ* of a group word as `[(coeff, gl_part, g_part), ...]`.
#[pyfunction]
#[pyo3(signature = (expr, profile="default", config=None))]
fn mu_star(expr: &str, profile: &str, config: Option<&str>) -> PyResult<Vec<(BigInt, String, String)>> {
    let cfg = self::config(profile, config)?;
    let w = jacquet_core::expr::parse_g(expr, &cfg).map_err(err)?;
    let s = mu_star_word(&w, &cfg.ambient).map_err(err)?;
    Ok(s.iter().map(|(t, c)| (c.clone(), t.0.to_string(), t.1.to_string())).collect())
}

/// Aubert dual. With `bruteforce`, also returns the alternating sum and
/// whether it agrees with the factorwise dual.
#[pyfunction]
#[pyo3(signature = (expr, bruteforce=false, profile="default", config=None))]
fn aubert<'py>(
    py: Python<'py>,
    expr: &str,
    bruteforce: bool,
    profile: &str,
    config: Option<&str>,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = self::config(profile, config)?;
    let w = jacquet_core::expr::parse_g(expr, &cfg).map_err(err)?;
    let out = PyDict::new(py);
    if bruteforce {
        let d = bruteforce_against_factorwise(&w, &cfg.ambient, DEFAULT_BRUTEFORCE_BOUND).map_err(err)?;
        let terms: Vec<(BigInt, String)> = d.signed.iter().map(|(w, c)| (c.clone(), w.to_string())).collect();
        out.set_item("method", "bruteforce")?;
        out.set_item("sign", d.sign)?;
        out.set_item("hat", d.hat.to_string())?;
        out.set_item("terms", terms)?;
        out.set_item("matches_factorwise", d.sign.is_some())?;
    } else {
        let d = aubert_standard(&w, &cfg.ambient).map_err(err)?;
        out.set_item("method", "factorwise")?;
        out.set_item("sign", d.sign)?;
        out.set_item("hat", d.value.to_string())?;
    }
    Ok(out)
}

/// Composition factors of the degenerate principal series for the given
/// exponents. `beta` is ignored when `same`. `family` is `sp-even`, `so-odd` or `gspin-odd`.
#[pyfunction]
#[pyo3(signature = (alpha, a, b, x, beta=None, family="so-odd", same=false))]
#[allow(clippy::too_many_arguments)]
fn dps<'py>(
    py: Python<'py>,
    alpha: Half,
    a: Half,
    b: Half,
    x: Half,
    beta: Option<Half>,
    family: &str,
    same: bool,
) -> PyResult<Bound<'py, PyDict>> {
    let family: GroupFamily = family.parse().map_err(err)?;
    let alpha = alpha.get()?;
    let beta = match (same, beta) {
        (true, _) => alpha,
        (false, Some(b)) => b.get()?,
        (false, None) => return Err(JacquetError::new_err("beta is required unless same=True")),
    };
    let p = DPSParams::standard(family, same, alpha, beta, a.get()?, b.get()?, x.get()?);
    let v = classify(&p).map_err(err)?;
    let factors = PyList::empty(py);
    for f in v.factors() {
        let d = PyDict::new(py);
        d.set_item("text", f.to_string())?;
        if let Factor::Langlands(l) = f {
            d.set_item("deltas", l.deltas.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        }
        let atom = match f {
            Factor::Langlands(l) => &l.tempered,
            Factor::Tempered(t) => t,
        };
        if let GAtom::Tempered(t) = atom {
            d.set_item("condition", t.condition.clone())?;
        }
        factors.append(d)?;
    }
    let out = PyDict::new(py);
    out.set_item("params", v.params.to_string())?;
    out.set_item("irreducible", v.is_irreducible())?;
    out.set_item("length", v.factor_count())?;
    out.set_item("factors", factors)?;
    out.set_item("case", v.case)?;
    out.set_item("rule", v.rule)?;
    Ok(out)
}

/// Runs registered claims (all of them when `claims` is None) and returns
/// `[(id, status, detail), ...]`.
#[pyfunction]
#[pyo3(signature = (claims=None))]
fn verify(claims: Option<Vec<String>>) -> PyResult<Vec<(String, &'static str, Option<String>)>> {
    let rs = verify_claims(claims.as_deref()).map_err(err)?;
    Ok(rs
        .into_iter()
        .map(|r| {
            let detail = match &r.status {
                Status::Pass => None,
                Status::Fail { diff } => Some(diff.clone()),
                Status::Assumed { imported } => Some(imported.clone()),
            };
            (r.id.to_string(), r.status.name(), detail)
        })
        .collect())
}

#[pymodule]
pub fn jacquet(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("JacquetError", m.py().get_type::<JacquetError>())?;
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(m_star, m)?)?;
    m.add_function(wrap_pyfunction!(mu_star, m)?)?;
    m.add_function(wrap_pyfunction!(aubert, m)?)?;
    m.add_function(wrap_pyfunction!(dps, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
