use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::{require_odd_prime, FamilyError};
use crate::bounds::{improved_lower_bound, BoundReport, UpperBound};
use crate::coloring::{coloring_matrix, inv_mod, mul_mod, verify_coloring, Coloring, QuandleParams};
use crate::diagram::{build_diagram, ArcId, Diagram, PdCode, PlanarBuilder, Port, Sign, Strand};
use crate::laurent::{reduce_normalize, LaurentPoly};

/// `P(-2, 3, a)` with `a = 2l + 1`, `l >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PretzelParams {
    pub l: u32,
}

impl PretzelParams {
    pub fn new(l: u32) -> Result<Self, FamilyError> {
        if l == 0 {
            return Err(FamilyError::InvalidParams("l must be at least 1 (a >= 3)".into()));
        }
        if l > 2000 {
            return Err(FamilyError::InvalidParams("l too large".into()));
        }
        Ok(PretzelParams { l })
    }

    pub fn from_a(a: i64) -> Result<Self, FamilyError> {
        if a < 3 || a % 2 == 0 {
            return Err(FamilyError::InvalidParams(format!("a must be odd and at least 3, got {a}")));
        }
        Self::new(((a - 1) / 2) as u32)
    }

    pub fn a(&self) -> u32 {
        2 * self.l + 1
    }

    pub fn name(&self) -> String {
        format!("P(-2,3,{})", self.a())
    }

    /// Three vertical twist columns with 2, 3 and `a` crossings; the first
    /// column twists the other way. Crossings are numbered column by column
    /// from the top, so the left tower is crossings 0 and 1.
    pub fn pd_code(&self) -> PdCode {
        let heights = [2usize, 3, self.a() as usize];
        let mut b = PlanarBuilder::new();
        let mut cols: Vec<Vec<usize>> = Vec::new();
        for (c, &h) in heights.iter().enumerate() {
            let over = if c == 0 { Strand::B } else { Strand::A };
            cols.push((0..h).map(|_| b.crossing(over)).collect());
        }
        // The first link fixes the orientation: downward on the left of the
        // left tower.
        for col in &cols {
            for w in col.windows(2) {
                b.connect((w[0], Port::SW), (w[1], Port::NW));
                b.connect((w[0], Port::SE), (w[1], Port::NE));
            }
        }
        let top = |c: usize| cols[c][0];
        let bottom = |c: usize| *cols[c].last().expect("non-empty column");
        for c in 0..2 {
            b.connect((top(c), Port::NE), (top(c + 1), Port::NW));
            b.connect((bottom(c), Port::SE), (bottom(c + 1), Port::SW));
        }
        b.connect((top(2), Port::NE), (top(0), Port::NW));
        b.connect((bottom(0), Port::SW), (bottom(2), Port::SE));
        b.build().expect("pretzel diagram is a closed planar graph")
    }
}

/// Diagram with `a + 5` arcs whose left tower arcs `x, y, z, w` are arcs
/// 1 to 4: the top tower crossing reads `x` under `y` giving `z`, the bottom
/// one `w` under `z` giving `y`, both positive.
pub fn pretzel_diagram(pp: &PretzelParams) -> Result<Diagram, FamilyError> {
    let d = build_diagram(&pp.pd_code())?;
    let (top, bottom) = (d.crossings[0], d.crossings[1]);
    if top.over != bottom.under_out || bottom.over != top.under_out || top.sign != bottom.sign {
        return Err(FamilyError::InvalidParams("left tower does not have the expected shape".into()));
    }
    let x = top.under_in;
    let y = top.over;
    let z = top.under_out;
    let w = bottom.under_in;
    let head = [x, y, z, w];
    let order: Vec<ArcId> = head.iter().copied().chain(d.arcs.iter().copied().filter(|a| !head.contains(a))).collect();
    let d = d.relabel_arcs(&order)?;
    if top.sign != Sign::Positive {
        return Err(FamilyError::InvalidParams("left tower crossings are not positive".into()));
    }
    Ok(d.with_name(pp.name()))
}

/// `1 - t + Σ_{i=3}^{a} (-1)^(i+1) t^i - t^(a+2) + t^(a+3)`, checked against
/// the rational formula.
pub fn pretzel_alexander(pp: &PretzelParams) -> Result<LaurentPoly, FamilyError> {
    let a = pp.a() as usize;
    let mut c = vec![0i64; a + 4];
    c[0] = 1;
    c[1] = -1;
    for (i, slot) in c.iter_mut().enumerate().take(a + 1).skip(3) {
        *slot = if i % 2 == 1 { 1 } else { -1 };
    }
    c[a + 2] = -1;
    c[a + 3] = 1;
    let closed = LaurentPoly::from_i64s(0, &c);
    let other = pretzel_alexander_hironaka(pp)?;
    if closed != other {
        return Err(FamilyError::FormulaMismatch { closed, other });
    }
    Ok(closed)
}

/// Numerator of the rational formula for `P(p, q, -2)`:
/// `1 + 2t + t^(1+p) + t^(1+q) - t^3 - t^(p+q) + t^(p+2) + t^(q+2) + 2t^(p+q+2) + t^(3+p+q)`.
pub fn hironaka_numerator(p: u32, q: u32) -> LaurentPoly {
    let (p, q) = (p as i64, q as i64);
    let terms = [(0, 1), (1, 2), (1 + p, 1), (1 + q, 1), (3, -1), (p + q, -1), (p + 2, 1), (q + 2, 1), (p + q + 2, 2), (3 + p + q, 1)];
    terms.iter().fold(LaurentPoly::zero(), |acc, &(e, c)| acc + LaurentPoly::monomial(BigInt::from(c), e))
}

/// The rational formula with `(p, q) = (3, a)`, divided exactly by `(1+t)^3`.
pub fn pretzel_alexander_hironaka(pp: &PretzelParams) -> Result<LaurentPoly, FamilyError> {
    let den = LaurentPoly::from_i64s(0, &[1, 3, 3, 1]);
    let q = hironaka_numerator(3, pp.a()).exact_div(&den)?;
    Ok(reduce_normalize(&q, 1)?)
}

/// The `m = 2` coloring with `x = 1`, `y = 0`, so `z = 2`, `w = 1`, and
/// `a + 4` distinct colors. Needs `p = Δ⁰(2)` to be an odd prime.
pub fn pretzel_m2_coloring(pp: &PretzelParams) -> Result<Coloring, FamilyError> {
    let value = pretzel_alexander(pp)?.evaluate(&BigInt::from(2))?;
    require_odd_prime(&value)?;
    let p = value.to_u64().ok_or_else(|| FamilyError::InvalidParams(format!("p = {value} exceeds 64 bits")))?;
    let params = QuandleParams::new(p, 2)?;
    let d = pretzel_diagram(pp)?;
    let basis = coloring_matrix(&d, &params)?.kernel_basis();
    let v = basis.get(1).ok_or(crate::coloring::ColoringError::NotColorable { p, m: 2 })?;
    let gap = (v[0] + p - v[1]) % p;
    let beta = inv_mod(gap, p).ok_or_else(|| FamilyError::ColoringCheck("x = y in every coloring".into()))?;
    let alpha = (p - mul_mod(beta, v[1], p)) % p;
    let colors: Vec<u64> = v.iter().map(|&vi| (alpha + mul_mod(beta, vi, p)) % p).collect();
    let c = Coloring::from_vector(&d, params, &colors);

    let expect = [(1, 1), (2, 0), (3, 2), (4, 1)];
    if let Some((arc, want)) = expect.iter().find(|&&(arc, want)| c.colors.get(&arc) != Some(&want)) {
        return Err(FamilyError::ColoringCheck(format!("arc {arc} should be colored {want}")));
    }
    if !verify_coloring(&d, &c) {
        return Err(FamilyError::ColoringCheck("crossing relation violated".into()));
    }
    let want = pp.a() as usize + 4;
    if c.distinct_count() != want {
        return Err(FamilyError::ColoringCheck(format!("{} colors used, expected {want}", c.distinct_count())));
    }
    Ok(c)
}

/// Lower bound `a + 4 = k + 1`; for `m = 2` the explicit coloring gives the
/// matching upper bound.
pub fn pretzel_mincol_report(pp: &PretzelParams, m: i64) -> Result<BoundReport, FamilyError> {
    if m <= 1 {
        return Err(FamilyError::MTooSmall(m));
    }
    let poly = pretzel_alexander(pp)?;
    let value = poly.evaluate(&BigInt::from(m))?;
    require_odd_prime(&value)?;
    let mut report = improved_lower_bound(&poly, m)?.with_name(pp.name());
    if report.improved != Some(pp.a() as u64 + 4) {
        return Err(FamilyError::ColoringCheck(format!("stabilized bound {:?} differs from a + 4", report.improved)));
    }
    if m == 2 {
        let witness = pretzel_m2_coloring(pp)?;
        report = report.with_upper_bound(UpperBound {
            value: witness.distinct_count() as u64,
            source: "explicit x = 1, y = 0 coloring of the pretzel diagram (left tower arcs are 1-4)".into(),
            diagram: Some(pp.pd_code().to_string()),
            witness: Some(witness),
        });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::reduced_alexander;

    #[test]
    fn params() {
        assert!(PretzelParams::from_a(1).is_err());
        assert!(PretzelParams::from_a(4).is_err());
        assert_eq!(PretzelParams::from_a(5).unwrap().l, 2);
    }

    #[test]
    fn closed_forms() {
        let a3 = PretzelParams::from_a(3).unwrap();
        assert_eq!(pretzel_alexander(&a3).unwrap(), LaurentPoly::from_i64s(0, &[1, -1, 0, 1, 0, -1, 1]));
        let a5 = PretzelParams::from_a(5).unwrap();
        assert_eq!(pretzel_alexander(&a5).unwrap(), LaurentPoly::from_i64s(0, &[1, -1, 0, 1, -1, 1, 0, -1, 1]));
        assert_eq!(
            hironaka_numerator(3, 3),
            LaurentPoly::from_i64s(0, &[1, 2, 0, -1, 2, 2, -1, 0, 2, 1])
        );
    }

    #[test]
    fn diagram_shape() {
        for a in [3, 5, 7] {
            let pp = PretzelParams::from_a(a).unwrap();
            let d = pretzel_diagram(&pp).unwrap();
            assert_eq!(d.arc_count(), a as usize + 5);
            assert!(d.is_knot());
            let (top, bottom) = (d.crossings[0], d.crossings[1]);
            assert_eq!((top.under_in, top.over, top.under_out), (1, 2, 3));
            assert_eq!((bottom.under_in, bottom.over, bottom.under_out), (4, 3, 2));
            assert_eq!(top.sign, Sign::Positive);
            assert_eq!(bottom.sign, Sign::Positive);
            assert_eq!(reduced_alexander(&d).unwrap().1, pretzel_alexander(&pp).unwrap());
        }
    }

    #[test]
    fn m2_colorings() {
        let c = pretzel_m2_coloring(&PretzelParams::from_a(5).unwrap()).unwrap();
        assert_eq!(c.p, 151);
        assert_eq!(c.distinct_count(), 9);
        match pretzel_m2_coloring(&PretzelParams::from_a(3).unwrap()) {
            Err(FamilyError::NotOddPrime { value, factors }) => {
                assert_eq!(value, BigInt::from(39));
                assert_eq!(factors, "3 * 13");
            }
            other => panic!("expected composite rejection, got {other:?}"),
        }
    }

    #[test]
    fn report() {
        let r = pretzel_mincol_report(&PretzelParams::from_a(5).unwrap(), 2).unwrap();
        assert_eq!(r.improved, Some(9));
        assert_eq!(r.upper_bound.as_ref().map(|u| u.value), Some(9));
    }
}
