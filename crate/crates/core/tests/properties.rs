mod common;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use proptest::prelude::*;

use common::*;
use qcol::bounds::{improved_lower_bound, lspace_pattern_check};
use qcol::diagram::{build_diagram, parse_pd};
use qcol::families::{pretzel_alexander, torus_alexander, torus_diagram, PretzelParams, TorusParams};
use qcol::laurent::{alexander_matrix, reduce_normalize, reduced_alexander};
use qcol::registry::{knot_suite, Registry};
use qcol::LaurentPoly;

#[test]
fn pd_round_trip_and_arc_structure() {
    let registry = Registry::builtin();
    for name in registry.names() {
        let pd = registry.get(name).unwrap();
        let again = parse_pd(&pd.to_string()).unwrap();
        assert_eq!(&again, pd, "{name}");
        let d = build_diagram(pd).unwrap();
        assert_eq!(d.arc_count(), d.crossing_count(), "{name}");
        for &a in &d.arcs {
            assert_eq!(d.crossings.iter().filter(|x| x.under_in == a).count(), 1, "{name} arc {a}");
            assert_eq!(d.crossings.iter().filter(|x| x.under_out == a).count(), 1, "{name} arc {a}");
        }
        assert!(d.validate().is_empty(), "{name}: {:?}", d.validate());
    }
}

#[test]
fn seven_three_is_planar() {
    let pd = Registry::builtin().get("7_3").unwrap().clone();
    assert_eq!(pd.face_count(), pd.crossing_count() + 2);
}

#[test]
fn first_minor_does_not_depend_on_the_deleted_row_and_column() {
    for name in ["3_1", "4_1", "5_1", "7_3", "L4a1_1"] {
        let d = diagram(name);
        let a = alexander_matrix(&d).unwrap();
        let reference = reduce_normalize(&a.first_minor(0, 0).unwrap(), d.components).unwrap();
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let minor = a.first_minor(i, j).unwrap();
                assert!(equal_up_to_unit(&minor, &a.first_minor(0, 0).unwrap()), "{name} ({i},{j}): {minor}");
                assert_eq!(reduce_normalize(&minor, d.components).unwrap(), reference, "{name} ({i},{j})");
            }
        }
    }
}

#[test]
fn mirror_keeps_the_reduced_polynomial() {
    for r in knot_suite(&Registry::builtin()).unwrap() {
        let (_, a) = reduced_alexander(&r.diagram).unwrap();
        let (_, b) = reduced_alexander(&r.diagram.mirror()).unwrap();
        assert_eq!(a, b, "{}", r.name);
    }
}

#[test]
fn torus_polynomials_alternate_with_unit_coefficients() {
    for a in 2..=10i64 {
        for b in (a + 1)..=10 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let poly = torus_alexander(&TorusParams::new(a, b).unwrap()).unwrap();
            assert_eq!(poly.span() as i64, (a - 1) * (b - 1), "T({a},{b})");
            let nz: Vec<i64> = poly.coeffs().iter().map(|c| c.to_i64().unwrap()).filter(|&c| c != 0).collect();
            assert!(nz.iter().all(|c| c.abs() == 1), "T({a},{b}): {poly}");
            assert!(nz.windows(2).all(|w| w[0] == -w[1]), "T({a},{b}): {poly}");
            assert!(lspace_pattern_check(&poly));
        }
    }
}

#[test]
fn torus_diagram_matches_formula() {
    for (a, b) in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)] {
        let tp = TorusParams::new(a, b).unwrap();
        let (_, reduced) = reduced_alexander(&torus_diagram(&tp).unwrap()).unwrap();
        assert_eq!(reduced, torus_alexander(&tp).unwrap(), "T({a},{b})");
    }
}

#[test]
fn pretzel_induction_step() {
    let numerator = poly(&[1, 2, -1, -3, 1, 2, -1, -1]);
    let step = numerator.exact_div(&poly(&[1, 3, 3, 1])).unwrap();
    assert_eq!(step, poly(&[1, -1, -1, 2, -1]));
    for l in 1..=5 {
        let lower = pretzel_alexander(&PretzelParams::new(l).unwrap()).unwrap();
        let upper = pretzel_alexander(&PretzelParams::new(l + 1).unwrap()).unwrap();
        assert_eq!(&upper - &lower.shift(2), step, "l = {l}");
    }
}

#[test]
fn lspace_polynomials_reach_degree_plus_one() {
    let mut polys: Vec<LaurentPoly> =
        [3, 5, 7, 9].iter().map(|&b| torus_alexander(&TorusParams::new(2, b).unwrap()).unwrap()).collect();
    polys.extend([3, 5, 7, 9].iter().map(|&a| pretzel_alexander(&PretzelParams::from_a(a).unwrap()).unwrap()));
    let mut hits = 0;
    for poly in &polys {
        assert!(lspace_pattern_check(poly), "{poly}");
        for m in 2..=40 {
            let v = poly.evaluate(&BigInt::from(m)).unwrap().to_u64().unwrap();
            if v % 2 == 0 || !naive_is_prime(v) {
                continue;
            }
            let r = improved_lower_bound(poly, m).unwrap();
            assert_eq!(r.improved, Some(poly.span() as u64 + 1), "{poly} at m={m}");
            hits += 1;
        }
    }
    assert!(hits > 10);
}

proptest! {
    #[test]
    fn reduced_polynomial_is_unit_free(name in prop::sample::select(vec!["3_1", "4_1", "5_1", "7_3", "10_145"]), shift in -5i64..5) {
        let (raw, reduced) = reduced_alexander(&diagram(name)).unwrap();
        let moved = -raw.shift(shift);
        prop_assert_eq!(reduce_normalize(&moved, 1).unwrap(), reduced.clone());
        let at_one = reduced.evaluate(&BigInt::from(1)).unwrap();
        prop_assert!(at_one == BigInt::from(1) || at_one == BigInt::from(-1));
        prop_assert!(reduced.is_palindromic());
    }
}
