//! Colorings of diagrams by linear Alexander quandles `Z_n` with
//! `x * y = m x + (1 - m) y`.

mod collapse;
mod modmatrix;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::{ArcId, Diagram, Sign};
use crate::laurent::{alexander_matrix, reduce_normalize, AlexanderError, LaurentPoly};

pub use collapse::{collapse_and_check, CollapseReport};
pub use modmatrix::ModMatrix;
pub(crate) use modmatrix::{inv_mod, mul_mod, reduce};

/// Upper limit on affine classes the minimum-color search will visit.
pub const MAX_SEARCH_CLASSES: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("invalid quandle parameters: {0}")]
    InvalidParams(String),
    #[error("modulus {0} is not prime; kernels need a field")]
    CompositeModulus(u64),
    #[error(transparent)]
    Alexander(#[from] AlexanderError),
    #[error("diagram has no non-trivial ({p},{m})-coloring")]
    NotColorable { p: u64, m: i64 },
    #[error("search over {classes} affine classes exceeds the limit of {limit}")]
    SearchTooLarge { classes: u128, limit: u128 },
    #[error("KH check precondition failed: {0}")]
    KhPrecondition(String),
    #[error("non-trivial coloring required")]
    TrivialColoring,
    #[error("coloring does not satisfy the crossing relations")]
    InvalidColoring,
    #[error("coloring does not assign every arc")]
    IncompleteColoring,
    #[error("rank deficiency: rank A1 = {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
}

/// `Λ_{n,m}`: `n >= 3` and `gcd(m, n) = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuandleParams {
    pub n: u64,
    pub m: i64,
}

impl QuandleParams {
    pub fn new(n: u64, m: i64) -> Result<Self, ColoringError> {
        if n < 3 {
            return Err(ColoringError::InvalidParams(format!("modulus {n} must be at least 3")));
        }
        if !BigInt::from(m).gcd(&BigInt::from(n)).is_one() {
            return Err(ColoringError::InvalidParams(format!("gcd({m}, {n}) != 1")));
        }
        Ok(QuandleParams { n, m })
    }

    pub fn m_mod(&self) -> u64 {
        reduce(self.m as i128, self.n)
    }

    pub fn m_inv(&self) -> u64 {
        inv_mod(self.m_mod(), self.n).expect("gcd(m, n) = 1")
    }

    /// `M = max(|m|, |m - 1|)`.
    pub fn big_m(&self) -> u64 {
        big_m(self.m)
    }

    /// `x * y = m x + (1 - m) y (mod n)`.
    pub fn op(&self, x: u64, y: u64) -> u64 {
        let m = self.m_mod();
        let one_minus_m = (1 + self.n - m) % self.n;
        (mul_mod(m, x, self.n) + mul_mod(one_minus_m, y, self.n)) % self.n
    }

    /// `x *^-1 y = m^-1 x + (1 - m^-1) y (mod n)`.
    pub fn op_inv(&self, x: u64, y: u64) -> u64 {
        let mi = self.m_inv();
        let one_minus = (1 + self.n - mi) % self.n;
        (mul_mod(mi, x, self.n) + mul_mod(one_minus, y, self.n)) % self.n
    }
}

pub fn big_m(m: i64) -> u64 {
    m.unsigned_abs().max((m as i128 - 1).unsigned_abs() as u64)
}

pub fn quandle_op(params: &QuandleParams, x: u64, y: u64) -> u64 {
    params.op(x, y)
}

pub fn quandle_op_inv(params: &QuandleParams, x: u64, y: u64) -> u64 {
    params.op_inv(x, y)
}

/// An assignment of residues mod `p` to arcs. Serialized as
/// `{p, m, colors: {arc: value}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub p: u64,
    pub m: i64,
    pub colors: BTreeMap<ArcId, u64>,
}

impl Coloring {
    pub fn from_vector(d: &Diagram, params: QuandleParams, v: &[u64]) -> Self {
        let colors = d.arcs.iter().zip(v).map(|(&a, &x)| (a, x % params.n)).collect();
        Coloring { p: params.n, m: params.m, colors }
    }

    pub fn params(&self) -> Result<QuandleParams, ColoringError> {
        QuandleParams::new(self.p, self.m)
    }

    pub fn distinct_count(&self) -> usize {
        let mut vals: Vec<u64> = self.colors.values().copied().collect();
        vals.sort_unstable();
        vals.dedup();
        vals.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.distinct_count() <= 1
    }

    /// Colors in diagram arc order.
    pub fn vector(&self, d: &Diagram) -> Option<Vec<u64>> {
        d.arcs.iter().map(|a| self.colors.get(a).copied()).collect()
    }

    /// Applies `x -> a x + b`.
    pub fn affine(&self, a: u64, b: u64) -> Coloring {
        let colors = self.colors.iter().map(|(&k, &x)| (k, (mul_mod(a % self.p, x, self.p) + b % self.p) % self.p)).collect();
        Coloring { p: self.p, m: self.m, colors }
    }

    /// Affine image with the first arc colored 0 and the first arc of a
    /// different color colored 1. Needs a prime modulus.
    pub fn normalized(&self) -> Coloring {
        let mut it = self.colors.values();
        let Some(&c0) = it.next() else { return self.clone() };
        let Some(&c1) = it.find(|&&x| x != c0) else { return self.clone() };
        let Some(a) = inv_mod((c1 + self.p - c0) % self.p, self.p) else { return self.clone() };
        let b = (self.p - mul_mod(a, c0, self.p)) % self.p;
        self.affine(a, b)
    }
}

/// The Alexander matrix at `t = m`, reduced mod the prime `params.n`.
pub fn coloring_matrix(d: &Diagram, params: &QuandleParams) -> Result<ModMatrix, ColoringError> {
    let a = alexander_matrix(d)?;
    let ints = a.at_integer(&BigInt::from(params.m));
    let n = BigInt::from(params.n);
    let rows = ints
        .into_iter()
        .map(|r| r.into_iter().map(|x| i128::try_from(x.mod_floor(&n)).expect("reduced below n")).collect())
        .collect();
    ModMatrix::new(params.n, rows)
}

pub fn kernel_basis(m: &ModMatrix) -> Vec<Vec<u64>> {
    m.kernel_basis()
}

/// Every crossing relation holds mod `n`; works for composite moduli.
pub fn verify_coloring(d: &Diagram, c: &Coloring) -> bool {
    let Ok(params) = c.params() else { return false };
    d.crossings.iter().all(|x| {
        let (Some(&xin), Some(&over), Some(&out)) = (c.colors.get(&x.under_in), c.colors.get(&x.over), c.colors.get(&x.under_out))
        else {
            return false;
        };
        let expected = match x.sign {
            Sign::Positive => params.op(xin % params.n, over % params.n),
            Sign::Negative => params.op_inv(xin % params.n, over % params.n),
        };
        expected == out % params.n
    }) && d.arcs.iter().all(|a| c.colors.contains_key(a))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Colorability {
    pub p: u64,
    pub m: i64,
    pub kernel_dim: usize,
    pub rank: usize,
    pub colorable: bool,
    /// Reduced Alexander polynomial at `m`.
    #[serde(serialize_with = "crate::serde_big::int")]
    pub reduced_value: BigInt,
    /// `p` divides the reduced polynomial at `m`.
    pub divides_reduced: bool,
    /// The kernel answer agrees with divisibility of the full first minor
    /// (`Δ⁰(m)` for knots, `(1 - m) Δ⁰(m)` for links).
    pub consistent: bool,
}

pub fn colorability(d: &Diagram, params: &QuandleParams) -> Result<Colorability, ColoringError> {
    let mat = coloring_matrix(d, params)?;
    let rank = mat.rank();
    let kernel_dim = mat.cols() - rank;
    let a = alexander_matrix(d)?;
    let minor = a.first_minor(0, 0)?;
    let reduced: LaurentPoly = reduce_normalize(&minor, d.components)?;
    let m_big = BigInt::from(params.m);
    let reduced_value = reduced.evaluate(&m_big).expect("normalized");
    let p_big = BigInt::from(params.n);
    let divides_reduced = reduced_value.is_multiple_of(&p_big);
    let full_value = if d.components >= 2 { &reduced_value * (BigInt::from(1) - &m_big) } else { reduced_value.clone() };
    let colorable = kernel_dim >= 2;
    Ok(Colorability {
        p: params.n,
        m: params.m,
        kernel_dim,
        rank,
        colorable,
        consistent: colorable == full_value.is_multiple_of(&p_big),
        reduced_value,
        divides_reduced,
    })
}

pub fn is_nontrivially_colorable(d: &Diagram, params: &QuandleParams) -> Result<bool, ColoringError> {
    Ok(colorability(d, params)?.colorable)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinColors {
    pub count: usize,
    pub witness: Coloring,
    pub classes_examined: u128,
}

/// Kernel vectors modulo the affine action: `[ones, w_1, .., w_r]` spans the
/// kernel, and every class of non-trivial colorings has exactly one
/// representative `Σ c_i w_i` whose first non-zero `c_i` is 1.
struct AffineClasses {
    p: u64,
    generators: Vec<Vec<u64>>,
}

impl AffineClasses {
    fn new(d: &Diagram, params: &QuandleParams) -> Result<Self, ColoringError> {
        let mat = coloring_matrix(d, params)?;
        let basis = mat.kernel_basis();
        if basis.len() < 2 {
            return Err(ColoringError::NotColorable { p: params.n, m: params.m });
        }
        let count = Self::count(params.n, basis.len() - 1);
        if count > MAX_SEARCH_CLASSES {
            return Err(ColoringError::SearchTooLarge { classes: count, limit: MAX_SEARCH_CLASSES });
        }
        Ok(AffineClasses { p: params.n, generators: basis[1..].to_vec() })
    }

    fn count(p: u64, r: usize) -> u128 {
        let p = p as u128;
        (0..r).map(|i| p.pow(i as u32)).sum()
    }

    /// Calls `f` on each representative; stops early when `f` returns false.
    fn for_each(&self, mut f: impl FnMut(&[u64]) -> bool) -> u128 {
        let r = self.generators.len();
        let q = self.generators[0].len();
        let p = self.p;
        let mut visited = 0u128;
        // Leading coefficient position `lead`; later coefficients free.
        for lead in 0..r {
            let tail = r - lead - 1;
            let mut coeffs = vec![0u64; tail];
            loop {
                let mut v = self.generators[lead].clone();
                for (k, &c) in coeffs.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let g = &self.generators[lead + 1 + k];
                    for i in 0..q {
                        v[i] = (v[i] + mul_mod(c, g[i], p)) % p;
                    }
                }
                visited += 1;
                if !f(&v) {
                    return visited;
                }
                // odometer
                let mut k = 0;
                while k < tail {
                    coeffs[k] += 1;
                    if coeffs[k] < p {
                        break;
                    }
                    coeffs[k] = 0;
                    k += 1;
                }
                if k == tail {
                    break;
                }
            }
        }
        visited
    }
}

fn distinct(v: &[u64]) -> usize {
    let mut s = v.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

/// Fewest distinct colors over the non-trivial colorings of this diagram.
pub fn min_colors_on_diagram(d: &Diagram, params: &QuandleParams) -> Result<MinColors, ColoringError> {
    let classes = AffineClasses::new(d, params)?;
    let mut best: Option<(usize, Vec<u64>)> = None;
    let visited = classes.for_each(|v| {
        let k = distinct(v);
        if best.as_ref().is_none_or(|(b, _)| k < *b) {
            best = Some((k, v.to_vec()));
        }
        true
    });
    let (count, v) = best.expect("at least one class");
    Ok(MinColors { count, witness: Coloring::from_vector(d, *params, &v).normalized(), classes_examined: visited })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KhReport {
    pub p: u64,
    pub m: i64,
    pub holds: bool,
    /// A coloring giving every arc its own color, when one exists.
    pub witness: Option<Coloring>,
    /// Only the supplied diagram is examined, not every reduced alternating
    /// diagram of the knot.
    pub scope: &'static str,
}

/// Whether some non-trivial coloring of this diagram gives pairwise
/// distinct colors to all arcs. The caller asserts the diagram is reduced
/// and alternating; `1 < m < p` and `p = Δ⁰(m)` are checked here.
pub fn kh_check(d: &Diagram, params: &QuandleParams, reduced_alternating: bool) -> Result<KhReport, ColoringError> {
    if !reduced_alternating {
        return Err(ColoringError::KhPrecondition("diagram not asserted reduced alternating".into()));
    }
    let p = params.n;
    if !(params.m > 1 && (params.m as u128) < p as u128) {
        return Err(ColoringError::KhPrecondition(format!("need 1 < m < p, got m = {}, p = {p}", params.m)));
    }
    let a = alexander_matrix(d)?;
    let reduced = reduce_normalize(&a.first_minor(0, 0)?, d.components)?;
    let value = reduced.evaluate(&BigInt::from(params.m)).expect("normalized");
    if value != BigInt::from(p) {
        return Err(ColoringError::KhPrecondition(format!("p = {p} differs from the reduced polynomial value {value}")));
    }
    if !crate::primes::is_prime_u64(p) {
        return Err(ColoringError::KhPrecondition(format!("p = {p} is not prime")));
    }
    let classes = AffineClasses::new(d, params)?;
    let q = d.arc_count();
    let mut witness = None;
    classes.for_each(|v| {
        if distinct(v) == q {
            witness = Some(v.to_vec());
            false
        } else {
            true
        }
    });
    Ok(KhReport {
        p,
        m: params.m,
        holds: witness.is_some(),
        witness: witness.map(|v| Coloring::from_vector(d, *params, &v).normalized()),
        scope: "given diagram only",
    })
}
