//! Integer Laurent polynomials in one variable `t`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("inexact division: remainder {remainder}")]
    Inexact { remainder: LaurentPoly },
    #[error("cannot evaluate a polynomial with negative exponent t^{min_exp}")]
    NegativeExponent { min_exp: i64 },
    #[error("cannot parse polynomial at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// `Σ coeffs[i] · t^(min_exp + i)`.
///
/// Stored coefficients never start or end with a zero; the zero polynomial
/// has no coefficients and `min_exp == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { min_exp: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        Self::new(exp, vec![c.into()])
    }

    /// Builds `Σ coeffs[i] t^(min_exp+i)` and strips zero ends.
    pub fn new(min_exp: i64, coeffs: Vec<BigInt>) -> Self {
        let mut p = LaurentPoly { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(min_exp: i64, coeffs: &[i64]) -> Self {
        Self::new(min_exp, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.min_exp += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.min_exp = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> i64 {
        self.min_exp
    }

    /// Exponent of the highest non-zero term (0 for the zero polynomial).
    pub fn max_exp(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.min_exp + self.coeffs.len() as i64 - 1
        }
    }

    /// `max_exp - min_exp`; the degree `k` once normalized.
    pub fn span(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.min_exp;
        if idx < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn trailing_coeff(&self) -> Option<&BigInt> {
        self.coeffs.first()
    }

    /// Multiplies by `t^n`.
    pub fn shift(&self, n: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly { min_exp: self.min_exp + n, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.min_exp, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// `max |c_i|` over the stored coefficients.
    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Evaluates at an integer; only defined when no negative powers appear.
    pub fn evaluate(&self, m: &BigInt) -> Result<BigInt, PolyError> {
        if self.min_exp < 0 {
            return Err(PolyError::NegativeExponent { min_exp: self.min_exp });
        }
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * m + c;
        }
        Ok(acc * num_traits::pow(m.clone(), self.min_exp as usize))
    }

    /// Evaluates at `m` modulo `n`. Negative powers use the inverse of `m`,
    /// so `gcd(m, n)` must be 1 when `min_exp < 0`.
    pub fn evaluate_mod(&self, m: i64, n: u64) -> Option<u64> {
        let n_big = BigInt::from(n);
        let m_red = BigInt::from(m).mod_floor(&n_big);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = (acc * &m_red + c).mod_floor(&n_big);
        }
        let base = if self.min_exp < 0 {
            let e = m_red.extended_gcd(&n_big);
            if !e.gcd.is_one() {
                return None;
            }
            e.x.mod_floor(&n_big)
        } else {
            m_red
        };
        let shift = base.modpow(&BigInt::from(self.min_exp.unsigned_abs()), &n_big);
        (acc * shift).mod_floor(&n_big).to_u64()
    }

    /// Exact division in `Z[t, t^-1]`.
    pub fn exact_div(&self, divisor: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        // Both operands have non-zero constant terms after stripping their
        // lowest powers, so the units t^n factor out.
        let mut rem: Vec<BigInt> = self.coeffs.clone();
        let den = &divisor.coeffs;
        let lead = den.last().expect("non-zero divisor");
        if rem.len() < den.len() {
            return Err(PolyError::Inexact { remainder: self.clone() });
        }
        let qlen = rem.len() - den.len() + 1;
        let mut quot = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + den.len() - 1];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                let remainder = LaurentPoly::new(self.min_exp, rem);
                return Err(PolyError::Inexact { remainder });
            }
            for (j, d) in den.iter().enumerate() {
                rem[i + j] -= &q * d;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::Inexact { remainder: LaurentPoly::new(self.min_exp, rem) });
        }
        Ok(LaurentPoly::new(self.min_exp - divisor.min_exp, quot))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.min_exp.min(rhs.min_exp);
        let hi = self.max_exp().max(rhs.max_exp());
        let coeffs = (lo..=hi).map(|e| self.coeff(e) + rhs.coeff(e)).collect();
        LaurentPoly::new(lo, coeffs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        LaurentPoly { min_exp: self.min_exp, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::new(self.min_exp + rhs.min_exp, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $f(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.min_exp + i as i64;
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let unit = mag.is_one();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = PolyError;

    /// Accepts `2 - 3t + 3*t^2`, `t^-1 + 1`, `-t`, `0`, with free whitespace.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut acc = LaurentPoly::zero();
        let err = |pos: usize, msg: &str| PolyError::Parse { pos, msg: msg.to_string() };
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        let read_int = |pos: &mut usize| -> Option<BigInt> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| s[start..*pos].parse().expect("digits"))
        };
        let mut terms = 0;
        loop {
            skip_ws(&mut pos);
            let mut negative = false;
            if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
                negative = bytes[pos] == b'-';
                pos += 1;
                skip_ws(&mut pos);
            } else if terms > 0 {
                if pos == bytes.len() {
                    break;
                }
                return Err(err(pos, "expected '+' or '-'"));
            }
            let coeff = read_int(&mut pos);
            skip_ws(&mut pos);
            let mut exp = 0i64;
            let mut has_t = false;
            if pos < bytes.len() && bytes[pos] == b'*' {
                if coeff.is_none() {
                    return Err(err(pos, "'*' without a coefficient"));
                }
                pos += 1;
                skip_ws(&mut pos);
                if pos >= bytes.len() || bytes[pos] != b't' {
                    return Err(err(pos, "expected 't' after '*'"));
                }
            }
            if pos < bytes.len() && bytes[pos] == b't' {
                has_t = true;
                pos += 1;
                exp = 1;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    let neg_exp = pos < bytes.len() && bytes[pos] == b'-';
                    if neg_exp {
                        pos += 1;
                    }
                    let e = read_int(&mut pos).ok_or_else(|| err(pos, "expected exponent"))?;
                    let e = e.to_i64().ok_or_else(|| err(pos, "exponent out of range"))?;
                    exp = if neg_exp { -e } else { e };
                }
            }
            if coeff.is_none() && !has_t {
                return Err(err(pos, "expected a term"));
            }
            let mut c = coeff.unwrap_or_else(BigInt::one);
            if negative {
                c = -c;
            }
            acc = &acc + &LaurentPoly::monomial(c, exp);
            terms += 1;
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
        }
        Ok(acc)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum JsonInt {
    Small(i64),
    Big(String),
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    min_exp: i64,
    coeffs: Vec<JsonInt>,
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => JsonInt::Small(v),
                None => JsonInt::Big(c.to_string()),
            })
            .collect();
        PolyJson { min_exp: self.min_exp, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PolyJson::deserialize(d)?;
        let coeffs = raw
            .coeffs
            .into_iter()
            .map(|c| match c {
                JsonInt::Small(v) => Ok(BigInt::from(v)),
                JsonInt::Big(s) => s.parse::<BigInt>().map_err(serde::de::Error::custom),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LaurentPoly::new(raw.min_exp, coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(min_exp: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_i64s(min_exp, c)
    }

    #[test]
    fn exact_div_torus_quotient() {
        let num = p(0, &[1, 0, 0, 1]);
        let den = p(0, &[1, 1]);
        assert_eq!(num.exact_div(&den).unwrap(), p(0, &[1, -1, 1]));
    }

    #[test]
    fn multiply_by_one() {
        let q = p(-2, &[3, 0, -1, 7]);
        assert_eq!(&q * &LaurentPoly::one(), q);
    }

    #[test]
    fn inexact_division_reports_remainder() {
        let e = p(0, &[1, 1]).exact_div(&p(0, &[1, -1])).unwrap_err();
        match e {
            PolyError::Inexact { remainder } => assert!(!remainder.is_zero()),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(p(0, &[1]).exact_div(&LaurentPoly::zero()), Err(PolyError::DivisionByZero));
    }

    #[test]
    fn division_handles_units() {
        let num = p(-3, &[2, -3, 3, -3, 2]);
        let den = p(5, &[1]);
        assert_eq!(num.exact_div(&den).unwrap(), p(-8, &[2, -3, 3, -3, 2]));
    }

    #[test]
    fn trims_zero_ends() {
        let q = LaurentPoly::from_i64s(-1, &[0, 0, 4, 0]);
        assert_eq!(q.min_exp(), 1);
        assert_eq!(q.coeffs().len(), 1);
        assert!(LaurentPoly::from_i64s(3, &[0, 0]).is_zero());
        assert_eq!(LaurentPoly::from_i64s(3, &[0]).min_exp(), 0);
    }

    #[test]
    fn display_forms() {
        assert_eq!(p(0, &[2, -3, 3, -3, 2]).to_string(), "2 - 3t + 3t^2 - 3t^3 + 2t^4");
        assert_eq!(p(0, &[1, 0, 1]).to_string(), "1 + t^2");
        assert_eq!(p(1, &[-2, 3]).to_string(), "-2t + 3t^2");
        assert_eq!(p(-1, &[1]).to_string(), "t^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        assert!("c".parse::<LaurentPoly>().is_err());
        assert_eq!("2 - 3t + 3*t^2".parse::<LaurentPoly>().unwrap(), p(0, &[2, -3, 3]));
        assert_eq!("-t^-1 + 1".parse::<LaurentPoly>().unwrap(), p(-1, &[-1, 1]));
        assert_eq!("0".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert!("2 3t".parse::<LaurentPoly>().is_err());
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("2*".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn evaluate_requires_nonnegative_exponents() {
        let tre = p(0, &[1, -1, 1]);
        assert_eq!(tre.evaluate(&BigInt::from(7)).unwrap(), BigInt::from(43));
        assert_eq!(p(2, &[1]).evaluate(&BigInt::from(3)).unwrap(), BigInt::from(9));
        assert!(matches!(p(-1, &[1]).evaluate(&BigInt::from(3)), Err(PolyError::NegativeExponent { .. })));
    }

    #[test]
    fn evaluate_mod_uses_inverse_for_negative_powers() {
        // t^-1 at m = 2 mod 5 is 3.
        assert_eq!(p(-1, &[1]).evaluate_mod(2, 5), Some(3));
        assert_eq!(p(-1, &[1]).evaluate_mod(2, 4), None);
        assert_eq!(p(0, &[1, -1, 1]).evaluate_mod(7, 43), Some(0));
    }

    #[test]
    fn json_shape() {
        let q = p(-1, &[1, -2]);
        let v = serde_json::to_value(&q).unwrap();
        assert_eq!(v, serde_json::json!({"min_exp": -1, "coeffs": [1, -2]}));
        let big = LaurentPoly::constant(BigInt::from(10).pow(30));
        let s = serde_json::to_string(&big).unwrap();
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), big);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        (-3i64..3, prop::collection::vec(-5i64..=5, 0..6)).prop_map(|(e, c)| p(e, &c))
    }

    proptest! {
        #[test]
        fn div_undoes_mul(a in small_poly(), b in small_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
        }

        #[test]
        fn display_parse_round_trip(a in small_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
