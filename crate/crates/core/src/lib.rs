//! Grothendieck-group calculus for Jacquet modules of classical and GSpin
//! groups: the comultiplications m* and μ*, the Aubert involution,
//! Langlands data and the decomposition of degenerate principal series.

pub mod aubert;
pub mod classify;
pub mod config;
pub mod engine;
pub mod error;
pub mod expr;
pub mod harness;
pub mod hopf;
pub mod langlands;
pub mod mu;
pub mod symbols;
pub mod word;

pub use config::Config;
pub use error::{Error, Result};
pub use expr::{parse_expr, Expr};
pub use symbols::{Ambient, CuspidalG, CuspidalGL, Duality, Exp, GroupFamily, HalfInt, Omega};
