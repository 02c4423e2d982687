//! Exact scalars.
//!
//! [`Rational`] carries every constant (structure constants, metric and
//! connection components, fitted constants). [`HypExpr`] is the differential
//! ring used for chart-dependent data: polynomials over the rationals in
//! coordinates, parameters and per-coordinate hyperbolic pairs
//! `(sinh x_i, cosh x_i)`, kept in a unique normal form.

mod hyp;
mod parse;

pub use hyp::{HypExpr, Monomial, Symbol};
pub use parse::{normalize, parse_expr, Expr, SymbolContext};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;
use thiserror::Error;

/// Canonical arbitrary-precision rational (denominator positive, reduced).
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("undeclared symbol `{0}`")]
    UndeclaredSymbol(String),
    #[error("`{0}` is not a coordinate symbol")]
    NotACoordinate(String),
    #[error("missing assignment for `{0}`")]
    MissingAssignment(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid rational literal `{0}`")]
    BadRational(String),
    #[error("division by zero")]
    DivisionByZero,
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational, ScalarError> {
    let t = s.trim();
    let bad = || ScalarError::BadRational(s.to_string());
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ScalarError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(
            BigInt::from_str(t).map_err(|_| bad())?,
        )),
    }
}

/// Lossy conversion used only by the approximate evaluator.
pub fn rational_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale down huge operands before dividing.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(900);
            let n = (r.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (r.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

/// A vector space over the rationals. Exact linear solving is written
/// against this trait so right-hand sides may be rationals or ring elements.
pub trait RationalModule: Clone + PartialEq {
    fn zero_element() -> Self;
    fn vanishes(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn scaled_by(&self, r: &Rational) -> Self;

    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled_by(&-Rational::one()))
    }
}

impl RationalModule for Rational {
    fn zero_element() -> Self {
        Zero::zero()
    }
    fn vanishes(&self) -> bool {
        Zero::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled_by(&self, r: &Rational) -> Self {
        self * r
    }
}

impl RationalModule for HypExpr {
    fn zero_element() -> Self {
        HypExpr::zero()
    }
    fn vanishes(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn scaled_by(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

/// Sign of a rational as -1, 0 or 1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}
