//! Laurent polynomials, the Alexander matrix of a diagram, and the reduced
//! Alexander polynomial.

mod poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::diagram::{ArcId, Diagram, Sign};
use crate::linalg::bareiss_det;

pub use poly::{LaurentPoly, PolyError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlexanderError {
    #[error("diagram has no crossings")]
    NoCrossings,
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("minor index out of range: row {row}, col {col} for a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("the zero polynomial has no normalization")]
    ZeroPolynomial,
    #[error("normalized knot polynomial {poly} fails the {check} check")]
    NotKnotLike { poly: LaurentPoly, check: &'static str },
    #[error("link polynomial is not divisible by 1 - t: {0}")]
    LinkDivision(PolyError),
}

/// Crossings-by-arcs matrix of coloring relations over `Z[t, t^-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlexMatrix {
    pub entries: Vec<Vec<LaurentPoly>>,
    /// 1-based crossing numbers.
    pub row_labels: Vec<usize>,
    pub col_labels: Vec<ArcId>,
}

impl AlexMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.col_labels.len()
    }

    /// Substitutes `t = m`; all entries are polynomials, so no inverse is needed.
    pub fn at_integer(&self, m: &BigInt) -> Vec<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(m).expect("entries have no negative powers")).collect())
            .collect()
    }

    /// Determinant after deleting one row and one column (0-based indices).
    pub fn first_minor(&self, drop_row: usize, drop_col: usize) -> Result<LaurentPoly, AlexanderError> {
        let (rows, cols) = (self.rows(), self.cols());
        if rows != cols {
            return Err(AlexanderError::NotSquare { rows, cols });
        }
        if drop_row >= rows || drop_col >= cols {
            return Err(AlexanderError::IndexOutOfRange { row: drop_row, col: drop_col, rows, cols });
        }
        // Shift rows into Z[t]; the shifts are undone afterwards so the
        // result is the exact minor.
        let mut total_shift = 0i64;
        let sub: Vec<Vec<LaurentPoly>> = self
            .entries
            .iter()
            .enumerate()
            .filter(|&(r, _)| r != drop_row)
            .map(|(_, row)| {
                let low = row.iter().filter(|e| !e.is_zero()).map(LaurentPoly::min_exp).min().unwrap_or(0).min(0);
                total_shift += low;
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != drop_col)
                    .map(|(_, e)| e.shift(-low))
                    .collect()
            })
            .collect();
        Ok(bareiss_det(&sub).shift(total_shift))
    }

    /// Checks the row-shape invariants: three non-zero entries `t`, `1 - t`,
    /// `-1` per row (fewer when arcs coincide) and every row vanishing at `t = 1`.
    pub fn check_rows(&self) -> Vec<String> {
        let allowed = [LaurentPoly::t(), LaurentPoly::from_i64s(0, &[1, -1]), LaurentPoly::constant(-1)];
        let mut out = Vec::new();
        for (r, row) in self.entries.iter().enumerate() {
            let nz: Vec<&LaurentPoly> = row.iter().filter(|e| !e.is_zero()).collect();
            if nz.len() == 3 && !allowed.iter().all(|a| nz.contains(&a)) {
                out.push(format!("row {} entries are not {{t, 1-t, -1}}", r + 1));
            }
            let sum: BigInt = row.iter().map(|e| e.evaluate(&BigInt::one()).unwrap_or_default()).sum();
            if !sum.is_zero() {
                out.push(format!("row {} does not vanish at t = 1", r + 1));
            }
        }
        out
    }
}

/// One row per crossing, one column per arc. A positive crossing gives
/// `t x_in + (1 - t) x_over - x_out`; a negative one gives the inverse
/// relation multiplied through by `-t`: `t x_out + (1 - t) x_over - x_in`.
pub fn alexander_matrix(d: &Diagram) -> Result<AlexMatrix, AlexanderError> {
    if d.crossings.is_empty() {
        return Err(AlexanderError::NoCrossings);
    }
    let violations = d.validate();
    if !violations.is_empty() {
        return Err(AlexanderError::InvalidDiagram(violations.join("; ")));
    }
    let index = d.arc_index();
    let t = LaurentPoly::t();
    let one_minus_t = LaurentPoly::from_i64s(0, &[1, -1]);
    let minus_one = LaurentPoly::constant(-1);
    let entries = d
        .crossings
        .iter()
        .map(|x| {
            let mut row = vec![LaurentPoly::zero(); d.arc_count()];
            let (t_arc, minus_arc) = match x.sign {
                Sign::Positive => (x.under_in, x.under_out),
                Sign::Negative => (x.under_out, x.under_in),
            };
            for (arc, val) in [(t_arc, &t), (x.over, &one_minus_t), (minus_arc, &minus_one)] {
                let cell = &mut row[index[&arc]];
                *cell = &*cell + val;
            }
            row
        })
        .collect();
    Ok(AlexMatrix { entries, row_labels: (1..=d.crossing_count()).collect(), col_labels: d.arcs.clone() })
}

/// Normalizes an Alexander polynomial (known up to `±t^n`).
///
/// Knots: shift to lowest exponent 0 with positive constant term, then require
/// palindromic coefficients, even degree and an odd middle coefficient.
/// Links: divide by `1 - t` first, then shift and fix the sign.
pub fn reduce_normalize(p: &LaurentPoly, components: usize) -> Result<LaurentPoly, AlexanderError> {
    if p.is_zero() {
        return Err(AlexanderError::ZeroPolynomial);
    }
    let base = if components >= 2 {
        p.exact_div(&LaurentPoly::from_i64s(0, &[1, -1])).map_err(AlexanderError::LinkDivision)?
    } else {
        p.clone()
    };
    let mut q = base.shift(-base.min_exp());
    if q.trailing_coeff().is_some_and(|c| c.is_negative()) {
        q = -q;
    }
    if components <= 1 {
        let bad = |check| Err(AlexanderError::NotKnotLike { poly: q.clone(), check });
        if !q.is_palindromic() {
            return bad("palindromic");
        }
        if q.span() % 2 != 0 {
            return bad("even degree");
        }
        if q.coeff(q.span() as i64 / 2).is_even() {
            return bad("odd middle coefficient");
        }
    }
    Ok(q)
}

/// Reduced Alexander polynomial of a diagram via the first minor that drops
/// the first row and first column.
pub fn reduced_alexander(d: &Diagram) -> Result<(LaurentPoly, LaurentPoly), AlexanderError> {
    let a = alexander_matrix(d)?;
    let minor = a.first_minor(0, 0)?;
    let reduced = reduce_normalize(&minor, d.components)?;
    Ok((minor, reduced))
}
