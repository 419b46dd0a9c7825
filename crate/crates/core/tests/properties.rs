use polyannulus::annulus::{annulus_at, PointCloud};
use polyannulus::io::{read_points_csv, write_points_csv};
use polyannulus::polytope::{ConvexPolytope, Rotation};
use polyannulus::shapes;
use proptest::prelude::*;

fn family() -> Vec<ConvexPolytope> {
    vec![
        shapes::square(),
        shapes::hexagon(),
        shapes::triangle_t(),
        shapes::regular_polygon(5, 0.3),
        shapes::cube(),
        shapes::tetrahedron(),
    ]
}

fn coord() -> impl Strategy<Value = f64> {
    -50.0..50.0f64
}

fn shape_and_points(k: usize) -> impl Strategy<Value = (ConvexPolytope, Vec<Vec<f64>>)> {
    (0..family().len()).prop_flat_map(move |i| {
        let c = family().swap_remove(i);
        let d = c.dim();
        (Just(c), prop::collection::vec(prop::collection::vec(coord(), d), k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn gauge_is_positively_homogeneous((c, pts) in shape_and_points(1), lambda in 0.0..20.0f64) {
        let v = &pts[0];
        let scaled: Vec<f64> = v.iter().map(|x| lambda * x).collect();
        let lhs = c.gauge(&scaled);
        let rhs = lambda * c.gauge(v);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + rhs));
    }

    #[test]
    fn distance_obeys_triangle_inequality((c, pts) in shape_and_points(3)) {
        let (p, q, r) = (&pts[0], &pts[1], &pts[2]);
        let direct = c.distance(p, r);
        let via = c.distance(p, q) + c.distance(q, r);
        prop_assert!(direct <= via + 1e-12 * (1.0 + via));
    }

    #[test]
    fn annulus_contains_every_point((c, pts) in shape_and_points(12), centre in prop::collection::vec(coord(), 3)) {
        let s = PointCloud::from_points(c.dim(), &pts).unwrap();
        let centre = &centre[..c.dim()];
        let a = annulus_at(&c, &s, centre).unwrap();
        for p in s.iter() {
            let g = c.distance(centre, p);
            prop_assert!(a.inner_radius <= g && g <= a.outer_radius);
        }
        prop_assert!(a.width >= 0.0);
    }

    #[test]
    fn t_close_centres_change_width_by_at_most_2t(
        (c, pts) in shape_and_points(10),
        centre in prop::collection::vec(coord(), 3),
        dir in prop::collection::vec(-1.0..1.0f64, 3),
        t in 0.0..3.0f64,
    ) {
        let d = c.dim();
        let s = PointCloud::from_points(d, &pts).unwrap();
        let centre = &centre[..d];
        let dir = &dir[..d];
        let round_trip = c.gauge(dir).max(c.gauge(&dir.iter().map(|x| -x).collect::<Vec<_>>()));
        prop_assume!(round_trip > 1e-9);
        let moved: Vec<f64> = centre.iter().zip(dir).map(|(x, u)| x + t * u / round_trip).collect();
        prop_assert!(c.distance(centre, &moved) <= t + 1e-9 && c.distance(&moved, centre) <= t + 1e-9);
        let a = annulus_at(&c, &s, centre).unwrap();
        let b = annulus_at(&c, &s, &moved).unwrap();
        prop_assert!((a.width - b.width).abs() <= 2.0 * t + 1e-9);
    }

    #[test]
    fn fatness_and_slimness_are_reciprocal((c, pts) in shape_and_points(8), centre in prop::collection::vec(coord(), 3)) {
        let s = PointCloud::from_points(c.dim(), &pts).unwrap();
        let a = annulus_at(&c, &s, &centre[..c.dim()]).unwrap();
        if let Ok((fc, f)) = a.fatness_stats() {
            prop_assert!((1.0 / f - (1.0 - 1.0 / fc)).abs() <= 1e-9);
        }
    }

    #[test]
    fn csv_round_trip_is_bit_exact(
        dim in 1usize..4,
        raw in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..60),
    ) {
        let keep = raw.len() / dim * dim;
        prop_assume!(keep > 0);
        let s = PointCloud::new(dim, raw[..keep].to_vec()).unwrap();
        let back = read_points_csv(&write_points_csv(&s), Some(dim)).unwrap();
        let bits = |c: &PointCloud| c.coords().iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        prop_assert_eq!(bits(&back), bits(&s));
    }

    #[test]
    fn rotations_are_orthogonal(angles in prop::collection::vec(-10.0..10.0f64, 1..3)) {
        let r = Rotation::from_angles(&angles);
        let d = angles.len() + 1;
        let m = r.matrix();
        for i in 0..d {
            for j in 0..d {
                let dotp: f64 = (0..d).map(|k| m[k * d + i] * m[k * d + j]).sum();
                let expect = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dotp - expect).abs() < 1e-12);
            }
        }
    }
}
