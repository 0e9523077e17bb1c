use num_complex::Complex64;
use proptest::prelude::*;

use hypdomain::bianchi::{qnorm, ring};
use hypdomain::domain::{ford_domain, GroupInput, ReductionOptions};
use hypdomain::hyperplanes::{map_surface, poincare_bisector, HalfSpace};
use hypdomain::io::{polyhedron_from_json, polyhedron_json};
use hypdomain::moebius::hyperbolic_distance;
use hypdomain::scalar::parse_scalar;
use hypdomain::{Model, MoebiusElement, PointUH, Scalar};

const DS: [u64; 6] = [1, 2, 3, 5, 7, 19];

fn word(d: u64, steps: &[(i64, i64)]) -> MoebiusElement {
    let o = ring(d).unwrap();
    let s = MoebiusElement::int(Model::H3, 0, -1, 1, 0).unwrap();
    steps.iter().fold(MoebiusElement::identity(Model::H3), |g, &(m, n)| {
        let t = MoebiusElement::translation(Model::H3, o.element(m, n).to_scalar()).unwrap();
        g.compose(&t).unwrap().compose(&s).unwrap()
    })
}

fn point() -> impl Strategy<Value = PointUH> {
    (-3.0..3.0f64, -3.0..3.0f64, 0.05..4.0f64).prop_map(|(x, y, r)| PointUH::new(Complex64::new(x, y), r).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalars_round_trip_through_text(p in -50i64..50, q in 1i64..20, r in -50i64..50, s in 1i64..20, k in 0usize..6) {
        let text = format!("{p}/{q}+{r}/{s}*sqrt(-{})", DS[k]);
        let x = parse_scalar(&text).unwrap();
        prop_assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn norm_is_multiplicative(a in -20i64..20, b in -20i64..20, c in -20i64..20, e in -20i64..20, k in 0usize..6) {
        let o = ring(DS[k]).unwrap();
        let (x, y) = (o.element(a, b), o.element(c, e));
        prop_assert_eq!(qnorm(&x.mul(&y)), qnorm(&x) * qnorm(&y));
    }

    #[test]
    fn action_is_an_isometric_group_action(
        k in 0usize..6,
        w1 in prop::collection::vec((-3i64..=3, -2i64..=2), 1..4),
        w2 in prop::collection::vec((-3i64..=3, -2i64..=2), 1..4),
        p in point(),
        q in point(),
    ) {
        let (g, h) = (word(DS[k], &w1), word(DS[k], &w2));
        let x = g.act(&h.act(&p));
        let y = g.compose(&h).unwrap().act(&p);
        let scale = x.z.norm().max(x.r).max(1.0);
        prop_assert!(((x.z - y.z).norm() + (x.r - y.r).abs()) / scale < 1e-9);
        let d0 = hyperbolic_distance(&p, &q);
        prop_assert!((hyperbolic_distance(&g.act(&p), &g.act(&q)) - d0).abs() < 1e-8 * d0.max(1.0));
    }

    #[test]
    fn bisector_images_are_exact(k in 0usize..6, w in prop::collection::vec((-3i64..=3, -2i64..=2), 1..5)) {
        let g = word(DS[k], &w);
        prop_assume!(!g.fixes_center());
        let img = map_surface(&g, &poincare_bisector(&g).unwrap()).unwrap();
        prop_assert!(img.is_exact());
        prop_assert!(img.same_as(&poincare_bisector(&g.inverse()).unwrap()));
    }

    #[test]
    fn halfspaces_split_space(k in 0usize..6, w in prop::collection::vec((-3i64..=3, -2i64..=2), 1..5), p in point()) {
        let g = word(DS[k], &w);
        prop_assume!(!g.fixes_center());
        let h = HalfSpace::containing(&poincare_bisector(&g).unwrap(), &Model::H3.center());
        prop_assert!(h.complement().complement().same_as(&h));
        let s = h.signed_sinh_distance(&p);
        prop_assume!(s.abs() > 1e-9);
        prop_assert!(h.contains(&p, 0.0) != h.complement().contains(&p, 0.0));
    }
}

#[test]
fn exported_polyhedra_are_stable() {
    let p = ford_domain(&GroupInput::psl2z(), &ReductionOptions::default()).unwrap();
    let a = serde_json::to_string(&polyhedron_json(&p)).unwrap();
    let back = polyhedron_from_json(&serde_json::from_str(&a).unwrap(), 1e-9).unwrap();
    assert_eq!(serde_json::to_string(&polyhedron_json(&back)).unwrap(), a);
}

#[test]
fn exact_and_float_scalars_combine_as_floats() {
    let x = &Scalar::float(0.5, 0.0) + &Scalar::frac(1, 4);
    assert_eq!(x, Scalar::float(0.75, 0.0));
}
