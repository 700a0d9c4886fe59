//! Torus knots `T(a,b)` and pretzel knots `P(-2,3,a)`.

mod pretzel;
mod torus;

use num_bigint::BigInt;
use thiserror::Error;

use crate::bounds::BoundsError;
use crate::coloring::ColoringError;
use crate::diagram::DiagramError;
use crate::laurent::{AlexanderError, LaurentPoly, PolyError};

pub use pretzel::{
    hironaka_numerator, pretzel_alexander, pretzel_alexander_hironaka, pretzel_diagram, pretzel_m2_coloring,
    pretzel_mincol_report, PretzelParams,
};
pub use torus::{torus_alexander, torus_diagram, torus_mincol_interval, TorusInterval, TorusParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("{value} is not an odd prime (factors found: {factors})")]
    NotOddPrime { value: BigInt, factors: String },
    #[error("m = {0} must be greater than 1")]
    MTooSmall(i64),
    #[error("closed form {closed} disagrees with {other}")]
    FormulaMismatch { closed: LaurentPoly, other: LaurentPoly },
    #[error("exact division failed: {0}")]
    Division(#[from] PolyError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error("explicit coloring check failed: {0}")]
    ColoringCheck(String),
}

/// Factorization attempt used in error messages.
fn describe_factors(value: &BigInt) -> String {
    let (factors, rest) = crate::primes::trial_factor(value, 100_000);
    let mut parts: Vec<String> = factors.iter().map(ToString::to_string).collect();
    if rest != BigInt::from(1) {
        parts.push(format!("{rest} (unfactored)"));
    }
    if parts.is_empty() {
        "none".into()
    } else {
        parts.join(" * ")
    }
}

fn require_odd_prime(value: &BigInt) -> Result<(), FamilyError> {
    if crate::primes::is_odd_prime(value) {
        Ok(())
    } else {
        Err(FamilyError::NotOddPrime { value: value.clone(), factors: describe_factors(value) })
    }
}
