//! Independent reference implementations used to check the library.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use qcol::diagram::{Diagram, Sign};
use qcol::registry::{resolve, Registry};
use qcol::LaurentPoly;

pub fn diagram(input: &str) -> Diagram {
    resolve(input, &Registry::builtin()).unwrap_or_else(|e| panic!("{input}: {e}")).diagram
}

pub fn poly(c: &[i64]) -> LaurentPoly {
    LaurentPoly::from_i64s(0, c)
}

pub fn naive_is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn modp(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

/// `m^-1 mod n` by search.
pub fn naive_inverse(m: i64, n: u64) -> u64 {
    let mm = modp(m as i128, n);
    (1..n).find(|&x| (mm as u128 * x as u128) % n as u128 == 1).expect("invertible")
}

pub fn star(n: u64, m: i64, x: u64, y: u64) -> u64 {
    modp(m as i128 * x as i128 + (1 - m as i128) * y as i128, n)
}

pub fn star_inv(n: u64, m: i64, x: u64, y: u64) -> u64 {
    let mi = naive_inverse(m, n) as i128;
    modp(mi * x as i128 + (1 - mi) * y as i128, n)
}

/// Colors indexed by arc position in `d.arcs`.
pub fn satisfies(d: &Diagram, n: u64, m: i64, colors: &[u64]) -> bool {
    let pos = |a: u32| d.arcs.iter().position(|&x| x == a).unwrap();
    d.crossings.iter().all(|x| {
        let (i, o, u) = (colors[pos(x.under_in)], colors[pos(x.over)], colors[pos(x.under_out)]);
        match x.sign {
            Sign::Positive => star(n, m, i, o) == u,
            Sign::Negative => star_inv(n, m, i, o) == u,
        }
    })
}

/// Every assignment of `0..p` to the arcs that satisfies the crossing relations.
pub fn brute_force_colorings(d: &Diagram, p: u64, m: i64) -> BTreeSet<Vec<u64>> {
    let q = d.arc_count();
    let mut out = BTreeSet::new();
    let total = (p as u128).pow(q as u32);
    for code in 0..total {
        let mut c = code;
        let v: Vec<u64> = (0..q)
            .map(|_| {
                let digit = (c % p as u128) as u64;
                c /= p as u128;
                digit
            })
            .collect();
        if satisfies(d, p, m, &v) {
            out.insert(v);
        }
    }
    out
}

pub fn distinct(v: &[u64]) -> usize {
    v.iter().collect::<BTreeSet<_>>().len()
}

/// Integer floor of `log_base(value)` by repeated multiplication.
pub fn floor_log(value: &BigInt, base: i64) -> u32 {
    let b = BigInt::from(base);
    let mut acc = b.clone();
    let mut r = 0;
    while &acc <= value {
        acc *= &b;
        r += 1;
    }
    r
}

/// Determinant by cofactor expansion over Laurent polynomials.
pub fn cofactor_det(rows: &[Vec<LaurentPoly>]) -> LaurentPoly {
    if rows.is_empty() {
        return LaurentPoly::one();
    }
    let mut acc = LaurentPoly::zero();
    for j in 0..rows.len() {
        if rows[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = rows[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &rows[0][j] * &cofactor_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Reference Alexander matrix for 7_3 as published, columns a1..a7.
pub fn reference_seven_three_matrix() -> Vec<Vec<LaurentPoly>> {
    let t = poly(&[0, 1]);
    let s = poly(&[1, -1]);
    let o = LaurentPoly::zero();
    let n = poly(&[-1]);
    vec![
        vec![s.clone(), n.clone(), o.clone(), o.clone(), o.clone(), o.clone(), t.clone()],
        vec![n.clone(), s.clone(), t.clone(), o.clone(), o.clone(), o.clone(), o.clone()],
        vec![o.clone(), t.clone(), s.clone(), n.clone(), o.clone(), o.clone(), o.clone()],
        vec![t.clone(), o.clone(), o.clone(), s.clone(), n.clone(), o.clone(), o.clone()],
        vec![o.clone(), o.clone(), o.clone(), t.clone(), s.clone(), n.clone(), o.clone()],
        vec![o.clone(), o.clone(), o.clone(), o.clone(), t.clone(), s.clone(), n.clone()],
        vec![o.clone(), o.clone(), n.clone(), o.clone(), o.clone(), t.clone(), s],
    ]
}

/// `p = q * (±t^n)` for some sign and shift.
pub fn equal_up_to_unit(p: &LaurentPoly, q: &LaurentPoly) -> bool {
    if p.is_zero() || q.is_zero() {
        return p.is_zero() && q.is_zero();
    }
    let shifted = q.shift(p.min_exp() - q.min_exp());
    &shifted == p || -shifted == *p
}
