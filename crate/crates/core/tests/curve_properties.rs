use lantern_core::curve::{BoundaryPoint, CurveDiagram};
use lantern_core::cut::{cut_along, is_essential, is_nonseparating};
use lantern_core::homology::{edge_loop, HomologyBasis};
use lantern_core::intersection::{algebraic_intersection, drawn_crossings, geometric_intersection, minimal_position};
use lantern_core::rotation::RotationMap;
use lantern_core::surface::PolygonSurface;
use proptest::prelude::*;

const GENUS: usize = 2;
const GRID: i64 = 6;

fn surface() -> PolygonSurface {
    PolygonSurface::standard(GENUS).unwrap()
}

/// Essential simple curves with up to three chords on the standard decagon.
fn curve() -> impl Strategy<Value = CurveDiagram> {
    let n = 4 * GENUS + 2;
    prop::collection::vec((0..n, 1..GRID), 1..=3).prop_filter_map("not an essential simple curve", |exits| {
        let s = surface();
        let exits: Vec<BoundaryPoint> = exits.into_iter().map(|(side, k)| BoundaryPoint::at(side, k, GRID)).collect();
        let c = CurveDiagram::from_exits(&s, &exits).ok()?;
        (c.is_simple() && is_essential(&s, &c).ok()?).then_some(c)
    })
}

fn oracle_pairing(x: &[i64], y: &[i64]) -> i64 {
    x.chunks(2).zip(y.chunks(2)).map(|(a, b)| a[0] * b[1] - a[1] * b[0]).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn algebraic_intersection_is_the_homology_pairing(a in curve(), b in curve()) {
        let s = surface();
        let h = HomologyBasis::new(&s).unwrap();
        let alg = algebraic_intersection(&s, &a, &b).unwrap();
        prop_assert_eq!(alg, oracle_pairing(&h.class(&a).0, &h.class(&b).0));
        prop_assert_eq!(algebraic_intersection(&s, &b, &a).unwrap(), -alg);
    }

    #[test]
    fn geometric_intersection_bounds_the_algebraic_one(a in curve(), b in curve()) {
        let s = surface();
        let alg = algebraic_intersection(&s, &a, &b).unwrap();
        let geo = geometric_intersection(&s, &a, &b).unwrap();
        prop_assert!(geo as i64 >= alg.abs());
        prop_assert_eq!((geo as i64 - alg).rem_euclid(2), 0);
        prop_assert!(geo <= drawn_crossings(&s, &a, &b).unwrap());
        prop_assert_eq!(geometric_intersection(&s, &b, &a).unwrap(), geo);
    }

    #[test]
    fn minimal_position_is_an_isotopy(a in curve(), b in curve()) {
        let s = surface();
        let h = HomologyBasis::new(&s).unwrap();
        let mp = minimal_position(&s, &a, &b).unwrap();
        prop_assert!(mp.first.is_simple() && mp.second.is_simple());
        prop_assert_eq!(h.class(&mp.first), h.class(&a));
        prop_assert_eq!(h.class(&mp.second), h.class(&b));
        prop_assert_eq!(drawn_crossings(&s, &mp.first, &mp.second).unwrap(), mp.crossings);
    }

    #[test]
    fn rotations_act_naturally_on_classes(a in curve(), shift in 0usize..10) {
        let s = surface();
        let h = HomologyBasis::new(&s).unwrap();
        let r = RotationMap::new(&s, shift).unwrap();
        let image = r.apply(&a);
        prop_assert!(image.is_simple());
        prop_assert_eq!(h.class(&image), r.homology_action(&h).unwrap().apply(&h.class(&a)));
    }

    #[test]
    fn cutting_preserves_euler_characteristic(a in curve()) {
        let s = surface();
        let profile = cut_along(&s, &[&a]).unwrap();
        let chi: i64 = profile.components.iter().map(|c| c.euler_char).sum();
        prop_assert_eq!(chi, s.euler_char());
        let circles: usize = profile.components.iter().map(|c| c.boundary_curves.len()).sum();
        prop_assert_eq!(circles, 2);
        let h = HomologyBasis::new(&s).unwrap();
        prop_assert_eq!(is_nonseparating(&s, &a).unwrap(), !h.class(&a).is_zero());
    }
}

#[test]
fn edge_loops_pair_like_a_symplectic_basis() {
    let s = surface();
    let h = HomologyBasis::new(&s).unwrap();
    let loops: Vec<CurveDiagram> = (0..2 * GENUS + 1).map(|i| edge_loop(&s, (i, i + 2 * GENUS + 1)).unwrap()).collect();
    for a in &loops {
        assert!(is_nonseparating(&s, a).unwrap());
        for b in &loops {
            let alg = algebraic_intersection(&s, a, b).unwrap();
            assert_eq!(alg, oracle_pairing(&h.class(a).0, &h.class(b).0));
        }
    }
}
