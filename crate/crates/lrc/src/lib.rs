//! Locally recoverable codes from algebraic curves and surfaces.
//!
//! A locally recoverable code (LRC) with locality `r` is a linear code in which
//! every codeword symbol can be recomputed from at most `r` other symbols. This
//! crate builds such codes by evaluating function spaces along fibers of
//! degree-(r+1) covering maps:
//!
//! * quotients of elliptic curves by small subgroups ([`covers::elliptic_quotient_cover`]),
//!   including a variant evaluated at every rational point
//!   ([`covers::elliptic_variant_cover`]),
//! * Kummer-type covers `z^(r+1) = h` and cubic covers in normal form
//!   ([`covers::kummer_cover`], [`covers::cubic_normalform_cover`]),
//! * a fixed quotient of the Hermitian curve `y^4 + y = x^5` over F16
//!   ([`covers::hermitian_quotient_cover`]),
//! * bielliptic-style quartic and hyperelliptic quotients by a Klein four-group
//!   ([`covers::v4_quartic_cover`], [`covers::v4_quartic_cover_char2`],
//!   [`covers::v4_hyperelliptic_cover`]),
//! * codes with two disjoint repair partitions from a pair of isogenies
//!   ([`engine::build_availability_code`]), and
//! * cyclic covers of the projective plane branched over a smooth curve,
//!   giving codes on surfaces `w^(r+1) = f(x,y,z)` ([`surfaces::build_surface_code`]).
//!
//! The [`analysis`] module provides exact rank/parity-check computations,
//! exhaustive and low-weight minimum-distance searches, and Singleton-type
//! bookkeeping. The [`catalog`] module carries a set of built-in reference
//! constructions with independently computed expected parameters, which the
//! CLI exposes as `lrc reproduce`.
//!
//! Everything is exact arithmetic over explicit small finite fields
//! (`q = p^m <= 2^16`); there is no floating point anywhere.

pub mod analysis;
pub mod catalog;
pub mod config;
pub mod covers;
pub mod curves;
pub mod engine;
pub mod exprs;
pub mod gf;
pub mod mpoly;
pub mod poly;
pub mod series;
pub mod surfaces;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum LrcError {
    #[error("field construction: {0}")]
    Field(String),
    #[error("bad field literal `{0}`")]
    Literal(String),
    #[error("expression parse error: {0}")]
    Parse(String),
    #[error("expression evaluation: {0}")]
    Eval(String),
    #[error("curve error: {0}")]
    Curve(String),
    #[error("cover construction: {0}")]
    Cover(String),
    #[error("code construction: {0}")]
    Engine(String),
    #[error("recovery: {0}")]
    Recover(String),
    #[error("analysis: {0}")]
    Analysis(String),
    #[error("surface construction: {0}")]
    Surface(String),
    #[error("config: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, LrcError>;
