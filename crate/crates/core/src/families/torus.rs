use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::{require_odd_prime, FamilyError};
use crate::bounds::kl_lower_bound;
use crate::diagram::{braid_closure, build_diagram, Diagram, PdCode};
use crate::laurent::{reduce_normalize, LaurentPoly};

/// Coprime `2 <= a < b`, after dropping signs and ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TorusParams {
    pub a: u32,
    pub b: u32,
}

impl TorusParams {
    pub fn new(a: i64, b: i64) -> Result<Self, FamilyError> {
        let (x, y) = (a.unsigned_abs(), b.unsigned_abs());
        let (a, b) = (x.min(y), x.max(y));
        if a < 2 {
            return Err(FamilyError::InvalidParams(format!("torus parameters need |a|, |b| >= 2, got {x}, {y}")));
        }
        if a.gcd(&b) != 1 {
            return Err(FamilyError::InvalidParams(format!("gcd({a}, {b}) != 1")));
        }
        let (a, b) = (u32::try_from(a), u32::try_from(b));
        match (a, b) {
            (Ok(a), Ok(b)) if (b as u64) * (a as u64 - 1) <= 10_000 => Ok(TorusParams { a, b }),
            _ => Err(FamilyError::InvalidParams("torus parameters too large".into())),
        }
    }

    /// `c(T_{a,b}) = b(a - 1)` for `a < b`.
    pub fn crossing_number(&self) -> u64 {
        self.b as u64 * (self.a as u64 - 1)
    }

    /// `(c - (a - 2), c)` without any primality hypothesis on `m`.
    pub fn interval_formula(&self) -> (u64, u64) {
        let c = self.crossing_number();
        (c - (self.a as u64 - 2), c)
    }

    pub fn name(&self) -> String {
        format!("T({},{})", self.a, self.b)
    }

    /// Closure of `(σ_1 ... σ_{a-1})^b`.
    pub fn braid_word(&self) -> Vec<i32> {
        (0..self.b).flat_map(|_| 1..self.a as i32).collect()
    }

    pub fn pd_code(&self) -> PdCode {
        braid_closure(self.a as usize, &self.braid_word()).expect("torus braid closes")
    }
}

pub fn torus_diagram(tp: &TorusParams) -> Result<Diagram, FamilyError> {
    Ok(build_diagram(&tp.pd_code())?.with_name(tp.name()))
}

/// `f(t^b) / f(t)` with `f(t) = 1 + t + ... + t^(a-1)`, normalized.
pub fn torus_alexander(tp: &TorusParams) -> Result<LaurentPoly, FamilyError> {
    let ones = |stride: usize| {
        let mut c = vec![0i64; stride * (tp.a as usize - 1) + 1];
        for i in 0..tp.a as usize {
            c[i * stride] = 1;
        }
        LaurentPoly::from_i64s(0, &c)
    };
    let q = ones(tp.b as usize).exact_div(&ones(1))?;
    Ok(reduce_normalize(&q, 1)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorusInterval {
    pub params: TorusParams,
    pub m: i64,
    #[serde(serialize_with = "crate::serde_big::int")]
    pub p: BigInt,
    pub crossing_number: u64,
    pub lower: u64,
    pub upper: u64,
    pub kl: u64,
}

/// `c - (a - 2) <= mincol <= c`; a single value when `a = 2`.
pub fn torus_mincol_interval(tp: &TorusParams, m: i64) -> Result<TorusInterval, FamilyError> {
    if m <= 1 {
        return Err(FamilyError::MTooSmall(m));
    }
    let p = torus_alexander(tp)?.evaluate(&BigInt::from(m))?;
    require_odd_prime(&p)?;
    let c = tp.crossing_number();
    let (lower, upper) = tp.interval_formula();
    Ok(TorusInterval {
        params: *tp,
        m,
        kl: kl_lower_bound(&p, m)?,
        p,
        crossing_number: c,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::reduced_alexander;

    #[test]
    fn canonical_form() {
        assert_eq!(TorusParams::new(-3, 2).unwrap(), TorusParams { a: 2, b: 3 });
        assert_eq!(TorusParams::new(4, -3).unwrap(), TorusParams { a: 3, b: 4 });
        assert!(TorusParams::new(2, 4).is_err());
        assert!(TorusParams::new(1, 4).is_err());
    }

    #[test]
    fn polynomials() {
        let t23 = TorusParams::new(2, 3).unwrap();
        assert_eq!(torus_alexander(&t23).unwrap(), LaurentPoly::from_i64s(0, &[1, -1, 1]));
        let t25 = TorusParams::new(2, 5).unwrap();
        assert_eq!(torus_alexander(&t25).unwrap(), LaurentPoly::from_i64s(0, &[1, -1, 1, -1, 1]));
        let t34 = TorusParams::new(3, 4).unwrap();
        assert_eq!(torus_alexander(&t34).unwrap().span(), 6);
    }

    #[test]
    fn diagrams_match_formula() {
        for (a, b) in [(2, 3), (2, 5), (3, 4)] {
            let tp = TorusParams::new(a, b).unwrap();
            let d = torus_diagram(&tp).unwrap();
            assert_eq!(d.crossing_count() as u64, tp.crossing_number());
            assert_eq!(reduced_alexander(&d).unwrap().1, torus_alexander(&tp).unwrap());
        }
    }

    #[test]
    fn intervals() {
        let t = torus_mincol_interval(&TorusParams::new(2, 3).unwrap(), 2).unwrap();
        assert_eq!((t.lower, t.upper, t.p.clone()), (3, 3, BigInt::from(3)));
        assert!(matches!(
            torus_mincol_interval(&TorusParams::new(3, 4).unwrap(), 2),
            Err(FamilyError::NotOddPrime { .. })
        ));
        assert!(matches!(torus_mincol_interval(&TorusParams::new(2, 3).unwrap(), 1), Err(FamilyError::MTooSmall(1))));
    }
}
