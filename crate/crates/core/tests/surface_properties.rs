use lantern_core::curve::{glue_point, BoundaryPoint};
use lantern_core::surface::PolygonSurface;
use lantern_core::Error;
use proptest::prelude::*;

/// Random perfect matching of `2m` sides, as a list of pairs.
fn pairing(max_pairs: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1..=max_pairs).prop_flat_map(|m| {
        Just((0..2 * m).collect::<Vec<_>>()).prop_shuffle().prop_map(move |order| {
            let pairs = order.chunks(2).map(|c| (c[0], c[1])).collect();
            (2 * m, pairs)
        })
    })
}

fn union_find_corners(n: usize, pairs: &[(usize, usize)]) -> usize {
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(i, j) in pairs {
        // (i, t) is glued to (j, 1 - t): start of i meets end of j and vice versa.
        for (a, b) in [(i, (j + 1) % n), ((i + 1) % n, j)] {
            let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
            parent[ra] = rb;
        }
    }
    (0..n).filter(|&x| root(&mut parent, x) == x).count()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn vertex_classes_match_union_find((n, pairs) in pairing(9)) {
        let s = PolygonSurface::from_pairs(n, &pairs).unwrap();
        let v = union_find_corners(n, &pairs);
        prop_assert_eq!(s.vertex_cycles().len(), v);
        let chi = v as i64 - (n / 2) as i64 + 1;
        prop_assert_eq!(s.euler_char(), chi);
        prop_assert_eq!(2 - 2 * s.genus() as i64, chi);
        let mut corners: Vec<usize> = s.vertex_cycles().iter().flatten().copied().collect();
        corners.sort_unstable();
        prop_assert_eq!(corners, (0..n).collect::<Vec<_>>());
    }

    #[test]
    fn rotation_shifts_commute_with_the_gluing((n, pairs) in pairing(9)) {
        let s = PolygonSurface::from_pairs(n, &pairs).unwrap();
        let expected: Vec<usize> = (0..n)
            .filter(|&k| (0..n).all(|i| s.partner((i + k) % n) == (s.partner(i) + k) % n))
            .collect();
        prop_assert_eq!(s.rotation_shifts(), expected);
    }

    #[test]
    fn gluing_is_an_involution((n, pairs) in pairing(9), side in 0usize..18, num in 1i64..7) {
        let s = PolygonSurface::from_pairs(n, &pairs).unwrap();
        let p = BoundaryPoint::at(side % n, num, 7);
        let q = glue_point(&s, p);
        prop_assert_eq!(q.side, s.partner(p.side));
        prop_assert_eq!(glue_point(&s, q), p);
    }

    #[test]
    fn text_format_round_trips((n, pairs) in pairing(9)) {
        let s = PolygonSurface::from_pairs(n, &pairs).unwrap();
        prop_assert_eq!(PolygonSurface::parse(&s.to_text()).unwrap(), s);
    }
}

#[test]
fn standard_surfaces() {
    for g in 1..=10 {
        let s = PolygonSurface::standard(g).unwrap();
        assert_eq!((s.n_sides(), s.genus(), s.vertex_cycles().len()), (4 * g + 2, g, 2));
        assert_eq!(s.rotation_shifts().len(), 4 * g + 2);
    }
}

#[test]
fn torus_and_sphere_diagrams() {
    let torus = PolygonSurface::from_pairs(4, &[(0, 2), (1, 3)]).unwrap();
    assert_eq!((torus.genus(), torus.vertex_cycles().len()), (1, 1));
    assert_eq!(torus.rotation_shifts(), vec![0, 1, 2, 3]);
    let sphere = PolygonSurface::from_pairs(2, &[(0, 1)]).unwrap();
    assert_eq!(sphere.genus(), 0);
}

#[test]
fn malformed_pairings() {
    assert_eq!(PolygonSurface::from_pairs(3, &[(0, 1)]), Err(Error::OddPolygon(3)));
    assert_eq!(PolygonSurface::from_pairs(4, &[(0, 0), (1, 3)]), Err(Error::SelfGlued(0)));
    assert_eq!(PolygonSurface::from_pairs(4, &[(0, 2)]), Err(Error::UnpairedSide(1)));
    assert!(matches!(PolygonSurface::from_pairs(4, &[(0, 5), (1, 3)]), Err(Error::SideOutOfRange { .. })));
    assert!(matches!(PolygonSurface::parse("polygon 4\nglue 0 2\nglue 1 x\n"), Err(Error::Parse { line: 3, .. })));
}
