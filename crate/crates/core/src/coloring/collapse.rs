//! Collapsing the integer coloring matrix along the color classes of a
//! coloring, and the determinant bounds that follow.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{ColoringError, Coloring};
use crate::diagram::Diagram;
use crate::laurent::alexander_matrix;
use crate::linalg::{bareiss_det, integer_rank_with_pivots};
use crate::primes::is_prime_u64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapseReport {
    pub p: u64,
    pub m: i64,
    /// Number of distinct colors `d`.
    pub d: usize,
    /// Distinct colors in order of first appearance along the arcs.
    pub class_colors: Vec<u64>,
    /// Class index of each arc, in arc order.
    pub arc_classes: Vec<usize>,
    /// `q x d`: columns of the integer coloring matrix summed per class.
    #[serde(serialize_with = "crate::serde_big::matrix")]
    pub a1: Vec<Vec<BigInt>>,
    pub rank_a1: usize,
    /// Rows of `A1` (0-based) kept in `A2`; independent over the rationals.
    pub a2_rows: Vec<usize>,
    /// `(d-1) x (d-1)`: the first `d - 1` columns of `A2`.
    #[serde(serialize_with = "crate::serde_big::matrix")]
    pub b: Vec<Vec<BigInt>>,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub det_b: BigInt,
    /// `M^(d-1)` with `M = max(|m|, |m - 1|)`.
    #[serde(serialize_with = "crate::serde_big::int")]
    pub bound: BigInt,
    /// Every row of `A1` sums to zero.
    pub rows_sum_to_zero: bool,
    /// `(y_i - y_d)` is a null vector of `B` mod `p`.
    pub difference_vector_in_kernel: bool,
    pub p_divides_det: bool,
    pub det_within_bound: bool,
    pub det_nonzero: bool,
}

impl CollapseReport {
    /// `det B` is non-zero, divisible by `p`, and at most `M^(d-1)` in size.
    pub fn bounds_hold(&self) -> bool {
        self.det_nonzero && self.p_divides_det && self.det_within_bound
    }
}

/// Collapses the coloring matrix along the classes of a non-trivial
/// coloring and checks `p | det B`, `|det B| <= M^(d-1)` and `rank A1 = d - 1`.
pub fn collapse_and_check(d: &Diagram, c: &Coloring) -> Result<CollapseReport, ColoringError> {
    let params = c.params()?;
    if !is_prime_u64(params.n) {
        return Err(ColoringError::CompositeModulus(params.n));
    }
    let colors = c.vector(d).ok_or(ColoringError::IncompleteColoring)?;
    if !super::verify_coloring(d, c) {
        return Err(ColoringError::InvalidColoring);
    }
    let mut class_colors: Vec<u64> = Vec::new();
    let arc_classes: Vec<usize> = colors
        .iter()
        .map(|x| match class_colors.iter().position(|y| y == x) {
            Some(i) => i,
            None => {
                class_colors.push(*x);
                class_colors.len() - 1
            }
        })
        .collect();
    let nd = class_colors.len();
    if nd < 2 {
        return Err(ColoringError::TrivialColoring);
    }

    let a = alexander_matrix(d)?.at_integer(&BigInt::from(params.m));
    let a1: Vec<Vec<BigInt>> = a
        .iter()
        .map(|row| {
            let mut out = vec![BigInt::zero(); nd];
            for (x, &k) in row.iter().zip(&arc_classes) {
                out[k] += x;
            }
            out
        })
        .collect();
    let rows_sum_to_zero = a1.iter().all(|r| r.iter().sum::<BigInt>().is_zero());
    let (rank_a1, pivots) = integer_rank_with_pivots(&a1);
    if rank_a1 != nd - 1 {
        return Err(ColoringError::RankDeficient { expected: nd - 1, found: rank_a1 });
    }
    let b: Vec<Vec<BigInt>> = pivots.iter().map(|&r| a1[r][..nd - 1].to_vec()).collect();
    let det_b = bareiss_det(&b);

    let p_big = BigInt::from(params.n);
    let last = class_colors[nd - 1] as i128;
    let diffs: Vec<BigInt> = class_colors[..nd - 1].iter().map(|&y| BigInt::from(y as i128 - last)).collect();
    let difference_vector_in_kernel = b
        .iter()
        .all(|row| row.iter().zip(&diffs).map(|(x, y)| x * y).sum::<BigInt>().is_multiple_of(&p_big));

    let bound = BigInt::from(params.big_m()).pow((nd - 1) as u32);
    Ok(CollapseReport {
        p: params.n,
        m: params.m,
        d: nd,
        class_colors,
        arc_classes,
        rank_a1,
        a2_rows: pivots,
        rows_sum_to_zero,
        difference_vector_in_kernel,
        p_divides_det: det_b.is_multiple_of(&p_big),
        det_within_bound: det_b.abs() <= bound,
        det_nonzero: !det_b.is_zero(),
        a1,
        b,
        det_b,
        bound,
    })
}
