mod common;

use std::cmp::Ordering;

use arrangeo::exact::geometry::{
    lattice, shear_to_generic, singular_points, validate, Arrangement, Component, Conic, Line, PointKind,
    ViolationKind,
};
use arrangeo::exact::scalar::{fmt_q, parse_q, q, ExactScalar, Q};
use num_bigint::BigInt;
use num_traits::Signed;
use proptest::prelude::*;

/// `a + b√d` to 100 decimal digits, as a rational with an error bound.
fn approx(x: &ExactScalar) -> (Q, Q) {
    let scale = BigInt::from(10).pow(100);
    let (a, b, d) = x.parts();
    let root = (d * &scale * &scale).sqrt();
    let v = &a + &b * Q::new(root, scale.clone());
    (v, b.abs() / Q::from_integer(scale))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (-200i64..200, 1i64..20, -50i64..50, 1i64..20, prop::sample::select(vec![1i64, 2, 3, 5, 7, 8, 12]))
        .prop_map(|(an, ad, bn, bd, d)| ExactScalar::quadratic(q(an, ad), q(bn, bd), d.into()))
}

proptest! {
    #[test]
    fn comparison_matches_high_precision(x in scalar(), y in scalar()) {
        let ((vx, ex), (vy, ey)) = (approx(&x), approx(&y));
        let diff = &vx - &vy;
        let tol = ex + ey;
        let want = if diff > tol { Ordering::Greater } else if -diff.clone() > tol { Ordering::Less } else { Ordering::Equal };
        prop_assert_eq!(x.compare(&y), want);
    }

    #[test]
    fn rationals_print_and_parse(n in -10_000i64..10_000, d in 1i64..1000) {
        let v = q(n, d);
        prop_assert_eq!(parse_q(&fmt_q(&v)), Some(v));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn shear_keeps_the_lattice(seed in 0u64..200) {
        let arr = common::beta_at_most_one(&mut common::rng(seed));
        let sheared = shear_to_generic(&arr);
        prop_assert_eq!(lattice(&arr).unwrap(), lattice(&sheared.arrangement).unwrap());
    }

    #[test]
    fn singular_points_lie_on_their_components(seed in 0u64..200) {
        let arr = common::beta_at_most_one(&mut common::rng(seed));
        for p in singular_points(&arr).unwrap() {
            for c in &p.components {
                let on = match c {
                    Component::Line(i) => arr.lines[*i].contains(&p.x, &p.y),
                    Component::Conic(i) => arr.conics[*i].contains(&p.x, &p.y),
                };
                prop_assert!(on);
            }
            // no other component passes through the point
            let all = arr.components();
            for c in all.iter().filter(|c| !p.components.contains(c)) {
                let on = match c {
                    Component::Line(i) => arr.lines[*i].contains(&p.x, &p.y),
                    Component::Conic(i) => arr.conics[*i].contains(&p.x, &p.y),
                };
                prop_assert!(!on || p.kind == PointKind::Branch);
            }
        }
    }
}

#[test]
fn sqrt_two_bounds() {
    let r2 = ExactScalar::sqrt(&q(2, 1));
    assert_eq!(ExactScalar::rational(q(99, 70)).compare(&r2), Ordering::Greater);
    assert_eq!(ExactScalar::rational(q(1393, 985)).compare(&r2), Ordering::Less);
}

#[test]
fn circle_and_secant() {
    let arr = Arrangement::new(vec![common::line((0, 1), (0, 1))], vec![common::circle(2)]);
    let pts = singular_points(&arr).unwrap();
    let inter: Vec<_> = pts.iter().filter(|p| p.kind == PointKind::Intersection).collect();
    assert_eq!(inter.len(), 2);
    assert_eq!(inter[0].x, ExactScalar::sqrt(&q(2, 1)).neg());
    assert_eq!(pts.iter().filter(|p| p.kind == PointKind::Branch).count(), 2);
}

#[test]
fn triple_point_is_found_once() {
    let arr = common::example_skel();
    let pts = singular_points(&arr).unwrap();
    assert_eq!(pts.len(), 4);
    assert_eq!(pts[0].components, vec![Component::Line(0), Component::Line(1), Component::Line(2)]);
}

#[test]
fn violations_are_listed() {
    let tangent = Arrangement::new(vec![common::line((0, 1), (1, 1))], vec![common::circle(1)]);
    assert!(validate(&tangent).has(ViolationKind::UnsupportedTangency));
    let twice = Arrangement::lines_only(vec![Line::from_ints(1, 1, 0), Line::from_ints(2, 2, 0)]);
    assert!(validate(&twice).has(ViolationKind::IdenticalLines));
    let degenerate = Arrangement::new(vec![], vec![Conic::from_ints([1, 0, -1, 0, 0, 0])]);
    assert!(validate(&degenerate).has(ViolationKind::DegenerateConic));
    let empty = Arrangement::new(vec![], vec![common::circle(-1)]);
    assert!(validate(&empty).has(ViolationKind::EmptyRealLocus));
    // the line x = 1 touches the unit circle at its branch point
    let vertical = Arrangement::new(vec![Line::from_ints(1, 0, -2)], vec![common::circle(1)]);
    assert!(validate(&vertical).has(ViolationKind::ComplexIntersection));
}

#[test]
fn vertical_lines_are_sheared() {
    let arr = Arrangement::lines_only(vec![Line::from_ints(1, 0, 0), Line::from_ints(0, 1, 0), Line::from_ints(1, 1, -1)]);
    let s = shear_to_generic(&arr);
    assert_ne!(s.t, Q::from_integer(0.into()));
    assert!(!s.arrangement.lines.iter().any(Line::is_vertical));
}
