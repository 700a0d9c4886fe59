//! Fraction-free elimination over integral domains.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;

/// The operations Bareiss elimination needs: a commutative ring without zero
/// divisors in which the divisions it performs are exact.
pub trait ExactRing: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics if `rhs` does not divide `self`.
    fn div_exact(&self, rhs: &Self) -> Self;
}

impl ExactRing for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        let (q, r) = self.div_rem(rhs);
        assert!(Zero::is_zero(&r), "inexact integer division in elimination");
        q
    }
}

impl ExactRing for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        LaurentPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self.exact_div(rhs).expect("inexact polynomial division in elimination")
    }
}

/// Determinant of a square matrix by Bareiss elimination with row swaps.
/// The empty matrix has determinant 1.
pub fn bareiss_det<R: ExactRing>(rows: &[Vec<R>]) -> R {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "determinant of a non-square matrix");
    if n == 0 {
        return R::one();
    }
    let mut a: Vec<Vec<R>> = rows.to_vec();
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].mul(&a[k][k]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = v.div_exact(&prev);
            }
            a[i][k] = R::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        d.neg()
    } else {
        d
    }
}

/// Rank of an integer matrix over `Q`, together with the indices of a set of
/// linearly independent rows (the pivot rows of a row-echelon reduction that
/// scans rows in their original order).
pub fn integer_rank_with_pivots(rows: &[Vec<BigInt>]) -> (usize, Vec<usize>) {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut work: Vec<(usize, Vec<BigInt>)> = rows.iter().cloned().enumerate().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(off) = work[r..].iter().position(|(_, row)| !Zero::is_zero(&row[c])) else {
            continue;
        };
        let picked = work.remove(r + off);
        work.insert(r, picked);
        let (pivot_idx, pivot) = work[r].clone();
        pivots.push(pivot_idx);
        for (_, row) in work.iter_mut().skip(r + 1) {
            if Zero::is_zero(&row[c]) {
                continue;
            }
            let factor = row[c].clone();
            for j in c..ncols {
                row[j] = &row[j] * &pivot[c] - &factor * &pivot[j];
            }
            let content = row.iter().fold(<BigInt as Zero>::zero(), |g, x| g.gcd(x));
            if !Zero::is_zero(&content) && !content.is_one() {
                for x in row.iter_mut() {
                    *x = &*x / &content;
                }
            }
        }
        r += 1;
        if r == work.len() {
            break;
        }
    }
    (pivots.len(), pivots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Cofactor expansion along the first row; exponential, for cross-checks only.
    fn cofactor_det<R: ExactRing>(rows: &[Vec<R>]) -> R {
        let n = rows.len();
        if n == 0 {
            return R::one();
        }
        let mut acc = R::zero();
        for j in 0..n {
            if rows[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<R>> = rows[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
                .collect();
            let term = rows[0][j].mul(&cofactor_det(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn big(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_determinants() {
        assert_eq!(bareiss_det(&big(&[&[2, 1], &[1, 2]])), BigInt::from(3));
        assert_eq!(bareiss_det(&big(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(bareiss_det(&big(&[&[1, 2], &[2, 4]])), BigInt::from(0));
        assert_eq!(bareiss_det::<BigInt>(&[]), BigInt::from(1));
    }

    #[test]
    fn rank_and_pivots() {
        let m = big(&[&[1, -1, 0], &[2, -2, 0], &[0, 1, -1], &[1, 0, -1]]);
        let (rank, piv) = integer_rank_with_pivots(&m);
        assert_eq!(rank, 2);
        assert_eq!(piv, vec![0, 2]);
        let (rank, _) = integer_rank_with_pivots(&big(&[&[0, 0], &[0, 0]]));
        assert_eq!(rank, 0);
    }

    fn int_matrix() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
        (1usize..=5).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(-4i64..=4, n), n)
                .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
        })
    }

    fn poly_matrix() -> impl Strategy<Value = Vec<Vec<LaurentPoly>>> {
        let entry = (0i64..2, prop::collection::vec(-2i64..=2, 0..3)).prop_map(|(e, c)| LaurentPoly::from_i64s(e, &c));
        (1usize..=4).prop_flat_map(move |n| prop::collection::vec(prop::collection::vec(entry.clone(), n), n))
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_on_integers(m in int_matrix()) {
            prop_assert_eq!(bareiss_det(&m), cofactor_det(&m));
        }

        #[test]
        fn bareiss_matches_cofactor_on_polynomials(m in poly_matrix()) {
            prop_assert_eq!(bareiss_det(&m), cofactor_det(&m));
        }

        #[test]
        fn pivot_rows_are_independent(m in int_matrix()) {
            let (rank, piv) = integer_rank_with_pivots(&m);
            let sub: Vec<Vec<BigInt>> = piv.iter().map(|&i| m[i].clone()).collect();
            prop_assert_eq!(integer_rank_with_pivots(&sub).0, rank);
            // full rank iff non-zero determinant
            prop_assert_eq!(rank == m.len(), !Zero::is_zero(&bareiss_det(&m)));
        }
    }
}
