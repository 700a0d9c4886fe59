//! Lower bounds on the minimum number of colors: base-m expansions, the
//! logarithmic bound `2 + floor(log_M p)`, and its stabilized form `k+1` /
//! `k+2` for knots whose polynomial has small coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::coloring::{big_m, Coloring};
use crate::laurent::{reduce_normalize, LaurentPoly};
use crate::primes::{primality, Primality};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("base must be at least 2, got {0}")]
    InvalidBase(String),
    #[error("value must be positive, got {0}")]
    NonPositive(BigInt),
    #[error("{0} is not an odd prime")]
    NotOddPrime(BigInt),
    #[error("polynomial {0} is not a normalized knot polynomial")]
    NotNormalized(LaurentPoly),
    #[error("m = {m} does not satisfy m > {needed_above} (max |c_i| = {max_abs})")]
    HypothesisNotMet { m: i64, max_abs: BigInt, needed_above: BigInt },
    #[error("floor(log_m p) = {floor_log} but the case table predicts {predicted}")]
    CaseMismatch { floor_log: u32, predicted: u32 },
    #[error("empty range {from}..{to}")]
    EmptyRange { from: i64, to: i64 },
    #[error("{p} does not divide the polynomial value {value}")]
    NotAFactor { p: BigInt, value: BigInt },
}

/// Digits `d_0, .., d_r` of `p` in base `m`, least significant first.
pub fn base_m_digits(p: &BigInt, m: u64) -> Result<Vec<u64>, BoundsError> {
    if m < 2 {
        return Err(BoundsError::InvalidBase(m.to_string()));
    }
    if !p.is_positive() {
        return Err(BoundsError::NonPositive(p.clone()));
    }
    let base = BigInt::from(m);
    let mut rest = p.clone();
    let mut digits = Vec::new();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&base);
        digits.push(r.to_u64().expect("digit below base"));
        rest = q;
    }
    Ok(digits)
}

/// `floor(log_base p)` by repeated exact multiplication.
pub fn floor_log(p: &BigInt, base: &BigInt) -> Result<u32, BoundsError> {
    if base < &BigInt::from(2) {
        return Err(BoundsError::InvalidBase(base.to_string()));
    }
    if !p.is_positive() {
        return Err(BoundsError::NonPositive(p.clone()));
    }
    let mut r = 0;
    let mut power = base.clone();
    while &power <= p {
        r += 1;
        power *= base;
    }
    Ok(r)
}

/// `2 + floor(log_M p)` with `M = max(|m|, |m - 1|)`.
pub fn kl_lower_bound(p: &BigInt, m: i64) -> Result<u64, BoundsError> {
    let big = big_m(m);
    if big < 2 {
        return Err(BoundsError::InvalidBase(format!("M = {big} (m = {m})")));
    }
    Ok(2 + floor_log(p, &BigInt::from(big))? as u64)
}

/// Which hypothesis on `m` makes the stabilized bound valid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Hypothesis {
    /// `m > max |c_i| + 1`.
    Strict,
    /// `m > max |c_i|`, enough unless the coefficients end in two negative
    /// non-zero terms before `c_k` without alternating.
    Weak,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundCase {
    /// `c_k = 1` and the penultimate non-zero coefficient is negative: `k + 1`.
    LeadingOnePenultimateNegative,
    /// `c_k > 1` or the penultimate non-zero coefficient is positive: `k + 2`.
    LeadingAboveOneOrPenultimatePositive,
}

fn nonzero(poly: &LaurentPoly) -> Vec<&BigInt> {
    poly.coeffs().iter().filter(|c| !c.is_zero()).collect()
}

fn alternates(nz: &[&BigInt]) -> bool {
    nz.windows(2).all(|w| w[0].is_negative() != w[1].is_negative())
}

/// Penultimate non-zero coefficient.
pub fn penultimate(poly: &LaurentPoly) -> Option<BigInt> {
    let nz = nonzero(poly);
    (nz.len() >= 2).then(|| nz[nz.len() - 2].clone())
}

/// The strict hypothesis is needed only when the non-zero coefficients do
/// not alternate and the two non-zero coefficients just before `c_k` are
/// both negative.
pub fn strict_hypothesis_required(poly: &LaurentPoly) -> bool {
    let nz = nonzero(poly);
    let n = nz.len();
    n >= 3 && !alternates(&nz) && nz[n - 2].is_negative() && nz[n - 3].is_negative()
}

pub fn hypothesis(poly: &LaurentPoly, m: i64) -> Hypothesis {
    let max = poly.max_abs_coeff();
    let m = BigInt::from(m);
    if m > &max + 1 {
        Hypothesis::Strict
    } else if m > max && !strict_hypothesis_required(poly) {
        Hypothesis::Weak
    } else {
        Hypothesis::None
    }
}

pub fn bound_case(poly: &LaurentPoly) -> BoundCase {
    let leading_one = poly.leading_coeff().is_some_and(|c| c.is_one());
    let pen_negative = penultimate(poly).is_some_and(|c| c.is_negative());
    if leading_one && pen_negative {
        BoundCase::LeadingOnePenultimateNegative
    } else {
        BoundCase::LeadingAboveOneOrPenultimatePositive
    }
}

/// Every non-zero coefficient is `±1` and their signs alternate.
pub fn lspace_pattern_check(poly: &LaurentPoly) -> bool {
    let nz = nonzero(poly);
    !nz.is_empty() && nz.iter().all(|c| c.abs().is_one()) && alternates(&nz)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma31Value {
    #[serde(serialize_with = "crate::serde_big::int")]
    pub p: BigInt,
    pub digits: Vec<u64>,
    pub floor_log: u32,
    pub k: u32,
    pub predicted: u32,
    pub hypothesis: Hypothesis,
}

fn degree(poly: &LaurentPoly) -> u32 {
    poly.span() as u32
}

fn ensure_normalized_knot(poly: &LaurentPoly) -> Result<(), BoundsError> {
    match reduce_normalize(poly, 1) {
        Ok(q) if &q == poly => Ok(()),
        _ => Err(BoundsError::NotNormalized(poly.clone())),
    }
}

/// `floor(log_m p)` for `p = Δ⁰(m)` and the value the case table predicts:
/// `k - 1` when `c_k = 1` and the penultimate non-zero coefficient is
/// negative, `k` otherwise.
pub fn lemma31_value(poly: &LaurentPoly, m: i64) -> Result<Lemma31Value, BoundsError> {
    ensure_normalized_knot(poly)?;
    let hyp = hypothesis(poly, m);
    if hyp == Hypothesis::None {
        let max_abs = poly.max_abs_coeff();
        let needed_above = if strict_hypothesis_required(poly) { &max_abs + 1 } else { max_abs.clone() };
        return Err(BoundsError::HypothesisNotMet { m, max_abs, needed_above });
    }
    let p = poly.evaluate(&BigInt::from(m)).expect("normalized");
    let digits = base_m_digits(&p, m as u64)?;
    let floor_log = digits.len() as u32 - 1;
    let k = degree(poly);
    let predicted = match bound_case(poly) {
        BoundCase::LeadingOnePenultimateNegative => k - 1,
        BoundCase::LeadingAboveOneOrPenultimatePositive => k,
    };
    if floor_log != predicted {
        return Err(BoundsError::CaseMismatch { floor_log, predicted });
    }
    Ok(Lemma31Value { p, digits, floor_log, k, predicted, hypothesis: hyp })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UpperBound {
    pub value: u64,
    pub source: String,
    /// PD code of the diagram carrying the witness coloring.
    pub diagram: Option<String>,
    pub witness: Option<Coloring>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub knot_name: Option<String>,
    pub poly: LaurentPoly,
    pub components: usize,
    pub m: i64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub p: BigInt,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub value: BigInt,
    pub primality: Primality,
    pub k: u32,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub max_abs_coeff: BigInt,
    pub hypothesis: Hypothesis,
    pub case: Option<BoundCase>,
    /// `2 + floor(log_M p)`.
    pub kl: Option<u64>,
    /// `k + 1` or `k + 2`, only when a hypothesis holds and `p = Δ⁰(m)`.
    pub improved: Option<u64>,
    pub upper_bound: Option<UpperBound>,
    pub notes: Vec<String>,
}

impl BoundReport {
    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.knot_name = Some(name.into());
        self
    }

    pub fn with_upper_bound(mut self, upper: UpperBound) -> Self {
        self.upper_bound = Some(upper);
        self
    }

    /// Largest lower bound available.
    pub fn best_lower(&self) -> Option<u64> {
        self.kl.max(self.improved)
    }
}

/// Both bounds side by side. For links (`components >= 2`) only the
/// logarithmic bound applies. `p` defaults to the polynomial value at `m`;
/// an explicit `p` must be an odd prime factor of that value.
pub fn bound_report(poly: &LaurentPoly, components: usize, m: i64, p: Option<&BigInt>) -> Result<BoundReport, BoundsError> {
    let value = poly.evaluate(&BigInt::from(m)).map_err(|_| BoundsError::NotNormalized(poly.clone()))?;
    let p = p.cloned().unwrap_or_else(|| value.clone());
    let prim = primality(&p);
    let mut notes = Vec::new();
    if p != value && (p.is_zero() || !value.is_multiple_of(&p)) {
        return Err(BoundsError::NotAFactor { p, value });
    }
    let odd_prime = prim.is_prime() && p.is_odd();
    if !odd_prime {
        notes.push(format!("p = {p} is not an odd prime; no bound applies"));
    }
    if prim == Primality::ProbablePrime {
        notes.push("p is a probable prime (beyond the deterministic Miller-Rabin range)".into());
    }
    let kl = if odd_prime && big_m(m) >= 2 { Some(kl_lower_bound(&p, m)?) } else { None };

    let k = degree(poly);
    let (hyp, case, improved) = if components >= 2 {
        notes.push("link: only the logarithmic bound applies".into());
        (Hypothesis::None, None, None)
    } else {
        ensure_normalized_knot(poly)?;
        if poly.evaluate(&BigInt::one()).expect("normalized") == BigInt::from(-1) {
            notes.push("Δ⁰(1) = -1 under the positive-constant normalization; case split read from this form".into());
        }
        let hyp = hypothesis(poly, m);
        let case = bound_case(poly);
        let improved = (hyp != Hypothesis::None && odd_prime && p == value).then(|| match case {
            BoundCase::LeadingOnePenultimateNegative => k as u64 + 1,
            BoundCase::LeadingAboveOneOrPenultimatePositive => k as u64 + 2,
        });
        if hyp == Hypothesis::None {
            notes.push(format!("m = {m} is too small for the stabilized bound"));
        } else if p != value {
            notes.push("p differs from Δ⁰(m); stabilized bound withheld".into());
        }
        (hyp, Some(case), improved)
    };
    Ok(BoundReport {
        knot_name: None,
        poly: poly.clone(),
        components,
        m,
        p,
        value,
        primality: prim,
        k,
        max_abs_coeff: poly.max_abs_coeff(),
        hypothesis: hyp,
        case,
        kl,
        improved,
        upper_bound: None,
        notes,
    })
}

/// The stabilized bound for a normalized knot polynomial with `p = Δ⁰(m)`
/// an odd prime.
pub fn improved_lower_bound(poly: &LaurentPoly, m: i64) -> Result<BoundReport, BoundsError> {
    ensure_normalized_knot(poly)?;
    let report = bound_report(poly, 1, m, None)?;
    if !(report.primality.is_prime() && report.p.is_odd()) {
        return Err(BoundsError::NotOddPrime(report.p));
    }
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub m: i64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub value: BigInt,
    pub primality: Primality,
}

/// Every `m` in `from..=to` at which the polynomial takes an odd prime value.
pub fn prime_scan(poly: &LaurentPoly, from: i64, to: i64) -> Result<Vec<ScanRow>, BoundsError> {
    if from > to {
        return Err(BoundsError::EmptyRange { from, to });
    }
    let mut rows = Vec::new();
    for m in from..=to {
        let value = poly.evaluate(&BigInt::from(m)).map_err(|_| BoundsError::NotNormalized(poly.clone()))?;
        let prim = primality(&value);
        if prim.is_prime() && value.is_odd() {
            rows.push(ScanRow { m, value, primality: prim });
        }
    }
    Ok(rows)
}

/// CSV with header `m,value`.
pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("m,value\n");
    for r in rows {
        out.push_str(&format!("{},{}\n", r.m, r.value));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(0, c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn digits() {
        assert_eq!(base_m_digits(&big(43), 7).unwrap(), vec![1, 6]);
        assert_eq!(base_m_digits(&big(7), 7).unwrap(), vec![0, 1]);
        assert_eq!(base_m_digits(&big(101), 10).unwrap(), vec![1, 0, 1]);
        assert!(base_m_digits(&big(0), 7).is_err());
        assert!(base_m_digits(&big(5), 1).is_err());
    }

    #[test]
    fn kl_values() {
        assert_eq!(kl_lower_bound(&big(43), 7).unwrap(), 3);
        assert_eq!(kl_lower_bound(&big(3), 2).unwrap(), 3);
        assert_eq!(kl_lower_bound(&big(5), -1).unwrap(), 4);
        assert_eq!(kl_lower_bound(&big(5), 2).unwrap(), 4);
        assert!(kl_lower_bound(&big(5), 1).is_err());
        assert!(kl_lower_bound(&big(5), 0).is_err());
    }

    #[test]
    fn trefoil_bound() {
        let r = improved_lower_bound(&p(&[1, -1, 1]), 2).unwrap();
        assert_eq!(r.p, big(3));
        assert_eq!(r.hypothesis, Hypothesis::Weak);
        assert_eq!(r.improved, Some(3));
        assert_eq!(r.kl, Some(3));
        assert_eq!(r.case, Some(BoundCase::LeadingOnePenultimateNegative));
    }

    #[test]
    fn seven_three_at_five() {
        let poly = p(&[2, -3, 3, -3, 2]);
        assert_eq!(poly.evaluate(&big(5)).unwrap(), big(937));
        let r = improved_lower_bound(&poly, 5).unwrap();
        assert_eq!(r.hypothesis, Hypothesis::Strict);
        assert_eq!(r.improved, Some(6));
        assert_eq!(r.kl, Some(6));
        let l = lemma31_value(&poly, 5).unwrap();
        assert_eq!(l.floor_log, 4);
        assert_eq!(l.predicted, 4);
        // m = 2 gives 16, not a prime.
        assert!(matches!(improved_lower_bound(&poly, 2), Err(BoundsError::NotOddPrime(_))));
    }

    #[test]
    fn ten_145_case() {
        let poly = p(&[1, 1, -3, 1, 1]);
        assert_eq!(bound_case(&poly), BoundCase::LeadingAboveOneOrPenultimatePositive);
        let l = lemma31_value(&poly, 5).unwrap();
        assert_eq!(l.p, big(681));
        assert_eq!(l.floor_log, 4);
        assert!(!lspace_pattern_check(&poly));
    }

    #[test]
    fn weak_hypothesis_detector() {
        assert!(!strict_hypothesis_required(&p(&[1, -1, 1])));
        assert!(!strict_hypothesis_required(&p(&[2, -3, 3, -3, 2])));
        assert!(!strict_hypothesis_required(&p(&[1, 1, -3, 1, 1])));
        // Two negative coefficients before the leading term.
        assert!(strict_hypothesis_required(&p(&[3, -1, -1, 1])));
        assert_eq!(hypothesis(&p(&[3, -1, -1, 1]), 4), Hypothesis::None);
        assert_eq!(hypothesis(&p(&[3, -1, -1, 1]), 5), Hypothesis::Strict);
    }

    #[test]
    fn lspace_patterns() {
        assert!(lspace_pattern_check(&p(&[1, -1, 1])));
        assert!(lspace_pattern_check(&p(&[1, -1, 0, 1, 0, -1, 1])));
        assert!(!lspace_pattern_check(&p(&[2, -3, 3, -3, 2])));
    }

    #[test]
    fn scans() {
        let rows = prime_scan(&p(&[1, -1, 1]), 2, 15).unwrap();
        let got: Vec<(i64, i64)> = rows.iter().map(|r| (r.m, r.value.to_i64().unwrap())).collect();
        assert_eq!(got, vec![(2, 3), (3, 7), (4, 13), (6, 31), (7, 43), (9, 73), (13, 157), (15, 211)]);
        assert!(prime_scan(&p(&[1]), 2, 50).unwrap().is_empty());
        assert!(scan_csv(&rows).starts_with("m,value\n2,3\n"));
        assert!(prime_scan(&p(&[1]), 5, 2).is_err());
    }

    #[test]
    fn link_report() {
        let r = bound_report(&p(&[1, 0, 1]), 2, 2, None).unwrap();
        assert_eq!(r.kl, Some(4));
        assert_eq!(r.improved, None);
        let r = bound_report(&p(&[1, -1, 1]), 1, 4, Some(&big(7))).unwrap_err();
        assert!(matches!(r, BoundsError::NotAFactor { .. }));
    }

    #[test]
    fn figure_eight_note() {
        let r = bound_report(&p(&[1, -3, 1]), 1, 4, None).unwrap();
        assert!(r.notes.iter().any(|n| n.contains("-1")));
    }

    proptest! {
        #[test]
        fn digits_reconstruct(n in 1u64..10_000_000, m in 2u64..40) {
            let d = base_m_digits(&BigInt::from(n), m).unwrap();
            prop_assert!(d.iter().all(|&x| x < m));
            prop_assert!(*d.last().unwrap() >= 1);
            let back = d.iter().rev().fold(0u128, |acc, &x| acc * m as u128 + x as u128);
            prop_assert_eq!(back, n as u128);
            prop_assert_eq!(floor_log(&BigInt::from(n), &BigInt::from(m)).unwrap() as usize, d.len() - 1);
        }

        #[test]
        fn floor_log_brackets(n in 1u64..u64::MAX, m in 2u64..1000) {
            let r = floor_log(&BigInt::from(n), &BigInt::from(m)).unwrap();
            let mb = BigInt::from(m);
            prop_assert!(mb.pow(r) <= BigInt::from(n));
            prop_assert!(mb.pow(r + 1) > BigInt::from(n));
        }
    }
}
