//! Reference shapes used by the tests, the CLI and the benchmarks.

use crate::polytope::ConvexPolytope;

/// `[-1, 1]^2`.
pub fn square() -> ConvexPolytope {
    ConvexPolytope::from_vertices(2, &[vec![1.0, 1.0], vec![-1.0, 1.0], vec![-1.0, -1.0], vec![1.0, -1.0]])
        .expect("square")
}

/// Regular hexagon with circumradius 1 and a vertex on the positive x axis.
pub fn hexagon() -> ConvexPolytope {
    regular_polygon(6, 0.0)
}

/// Regular `k`-gon with circumradius 1, first vertex at angle `phase`.
pub fn regular_polygon(k: usize, phase: f64) -> ConvexPolytope {
    let pts: Vec<Vec<f64>> = (0..k)
        .map(|i| {
            let a = phase + std::f64::consts::TAU * i as f64 / k as f64;
            vec![a.cos(), a.sin()]
        })
        .collect();
    ConvexPolytope::from_vertices(2, &pts).expect("regular polygon")
}

/// Triangle with vertices `(1,1), (-1,1), (0,-1)`; asymmetry constant 3.
pub fn triangle_t() -> ConvexPolytope {
    ConvexPolytope::from_vertices(2, &[vec![1.0, 1.0], vec![-1.0, 1.0], vec![0.0, -1.0]]).expect("triangle")
}

/// `[-1, 1]^3`.
pub fn cube() -> ConvexPolytope {
    let mut pts = Vec::new();
    for x in [-1.0, 1.0] {
        for y in [-1.0, 1.0] {
            for z in [-1.0, 1.0] {
                pts.push(vec![x, y, z]);
            }
        }
    }
    ConvexPolytope::from_vertices(3, &pts).expect("cube")
}

/// Regular tetrahedron centred at the origin (not centrally symmetric).
pub fn tetrahedron() -> ConvexPolytope {
    let pts = vec![vec![1.0, 1.0, 1.0], vec![1.0, -1.0, -1.0], vec![-1.0, 1.0, -1.0], vec![-1.0, -1.0, 1.0]];
    ConvexPolytope::from_vertices(3, &pts).expect("tetrahedron")
}

/// Looks up a built-in shape by name.
pub fn by_name(name: &str) -> Option<ConvexPolytope> {
    Some(match name {
        "square" => square(),
        "hexagon" => hexagon(),
        "triangle" => triangle_t(),
        "cube" => cube(),
        "tetrahedron" => tetrahedron(),
        _ => return None,
    })
}
