//! Dense matrices over `Z/pZ`.

use serde::Serialize;

use super::ColoringError;
use crate::primes::is_prime_u64;

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Inverse of `a` modulo `n` when `gcd(a, n) = 1`.
pub(crate) fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, (a % n) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    (r0 == 1).then(|| s0.rem_euclid(n as i128) as u64)
}

pub(crate) fn reduce(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModMatrix {
    pub p: u64,
    pub entries: Vec<Vec<u64>>,
}

impl ModMatrix {
    /// Entries are reduced into `0..p`; `p` must be prime.
    pub fn new(p: u64, entries: Vec<Vec<i128>>) -> Result<Self, ColoringError> {
        if p < 2 || !is_prime_u64(p) {
            return Err(ColoringError::CompositeModulus(p));
        }
        let entries = entries.into_iter().map(|r| r.into_iter().map(|x| reduce(x, p)).collect()).collect();
        Ok(ModMatrix { p, entries })
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(0, Vec::len)
    }

    /// Reduced row echelon form and its pivot columns.
    fn rref(&self) -> (Vec<Vec<u64>>, Vec<usize>) {
        let p = self.p;
        let mut a = self.entries.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols() {
            if r == a.len() {
                break;
            }
            let Some(pr) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
            a.swap(r, pr);
            let inv = inv_mod(a[r][c], p).expect("non-zero element of a prime field");
            for x in a[r].iter_mut() {
                *x = mul_mod(*x, inv, p);
            }
            for i in 0..a.len() {
                if i == r || a[i][c] == 0 {
                    continue;
                }
                let f = a[i][c];
                for j in c..a[i].len() {
                    let sub = mul_mod(f, a[r][j], p);
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the null space, one vector per free column. When the
    /// all-ones vector lies in the kernel (every coloring matrix), it is
    /// returned first in place of the first free-column vector; the span is
    /// unchanged because all-ones is the sum of the free-column vectors.
    pub fn kernel_basis(&self) -> Vec<Vec<u64>> {
        let p = self.p;
        let n = self.cols();
        let (a, pivots) = self.rref();
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        let mut basis: Vec<Vec<u64>> = free
            .iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (p - a[r][f]) % p;
                }
                v
            })
            .collect();
        let ones = vec![1 % p; n];
        if !basis.is_empty() && self.apply(&ones).iter().all(|&x| x == 0) {
            basis[0] = ones;
        }
        basis
    }

    /// `M v` reduced mod p.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.entries
            .iter()
            .map(|row| row.iter().zip(v).fold(0u64, |acc, (&a, &x)| (acc + mul_mod(a, x, self.p)) % self.p))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        assert_eq!(inv_mod(2, 5), Some(3));
        assert_eq!(inv_mod(4, 8), None);
        assert_eq!(inv_mod(10, 7), Some(5));
    }

    #[test]
    fn composite_modulus_rejected() {
        assert_eq!(ModMatrix::new(9, vec![vec![1]]), Err(ColoringError::CompositeModulus(9)));
    }

    #[test]
    fn kernel_of_rank_one() {
        // Rows are multiples of (1, -1, 0) and (0, 1, -1) over Z_3 where
        // the second is twice the first plus something of rank 2.
        let m = ModMatrix::new(3, vec![vec![1, -1, 0], vec![2, -2, 0]]).unwrap();
        assert_eq!(m.rank(), 1);
        let k = m.kernel_basis();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![1, 1, 1]);
        for v in &k {
            assert!(m.apply(v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn full_rank_has_empty_kernel() {
        let m = ModMatrix::new(5, vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(m.rank(), 2);
        assert!(m.kernel_basis().is_empty());
    }
}
