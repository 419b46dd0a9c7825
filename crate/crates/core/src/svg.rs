//! SVG rendering of a planar annulus: sample points, both shells and the MinBall.

use crate::annulus::{AnnulusSolution, PointCloud};
use crate::error::{Error, Result};
use crate::minball::minball;
use crate::polytope::ConvexPolytope;
use std::fmt::Write as _;

/// Vertices of `center + radius·C` in the order of `C`'s (counterclockwise) vertex list.
pub fn shell_vertices(c: &ConvexPolytope, center: &[f64], radius: f64) -> Vec<[f64; 2]> {
    c.vertices().iter().map(|v| [center[0] + radius * v[0], center[1] + radius * v[1]]).collect()
}

fn path(points: &[[f64; 2]]) -> String {
    let mut d = String::new();
    for (i, p) in points.iter().enumerate() {
        let _ = write!(d, "{}{:.6} {:.6} ", if i == 0 { "M" } else { "L" }, p[0], -p[1]);
    }
    d.push('Z');
    d
}

/// Renders `s` with the annulus of `sol` (shells drawn under `sol.rotation`).
pub fn render_svg(c: &ConvexPolytope, s: &PointCloud, sol: &AnnulusSolution) -> Result<String> {
    if c.dim() != 2 {
        return Err(Error::NotPlanar(c.dim()));
    }
    if s.dim() != 2 {
        return Err(Error::NotPlanar(s.dim()));
    }
    let posed = c.rotate(&sol.rotation);
    let inner = shell_vertices(&posed, &sol.center, sol.inner_radius);
    let outer = shell_vertices(&posed, &sol.center, sol.outer_radius);
    let ball = minball(&posed, s, 0)?;
    let ball_shell = shell_vertices(&posed, &ball.center, ball.radius);

    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in s.iter().map(|p| [p[0], p[1]]).chain(outer.iter().copied()).chain(ball_shell.iter().copied()) {
        for j in 0..2 {
            lo[j] = lo[j].min(p[j]);
            hi[j] = hi[j].max(p[j]);
        }
    }
    let extent = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-9);
    let margin = 0.05 * extent;
    let (x0, y0) = (lo[0] - margin, -hi[1] - margin);
    let (w, h) = (hi[0] - lo[0] + 2.0 * margin, hi[1] - lo[1] + 2.0 * margin);
    let stroke = 0.004 * extent;
    let dot = 0.006 * extent;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.6} {y0:.6} {w:.6} {h:.6}" width="800" height="{:.0}">"#,
        800.0 * h / w
    );
    let _ = writeln!(
        out,
        r##"<path id="minball" d="{}" fill="none" stroke="#999999" stroke-width="{stroke:.6}" stroke-dasharray="{:.6}"/>"##,
        path(&ball_shell),
        4.0 * stroke
    );
    let _ = writeln!(
        out,
        r##"<path id="outer" d="{}" fill="none" stroke="#c0392b" stroke-width="{stroke:.6}"/>"##,
        path(&outer)
    );
    let _ = writeln!(
        out,
        r##"<path id="inner" d="{}" fill="none" stroke="#2e86c1" stroke-width="{stroke:.6}"/>"##,
        path(&inner)
    );
    out.push_str("<g id=\"points\" fill=\"#222222\">\n");
    for p in s.iter() {
        let _ = writeln!(out, r#"<circle cx="{:.6}" cy="{:.6}" r="{dot:.6}"/>"#, p[0], -p[1]);
    }
    out.push_str("</g>\n");
    let _ = writeln!(
        out,
        r##"<circle id="center" cx="{:.6}" cy="{:.6}" r="{:.6}" fill="#c0392b"/>"##,
        sol.center[0],
        -sol.center[1],
        1.5 * dot
    );
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::annulus::annulus_at;
    use crate::polytope::Rotation;
    use crate::shapes;

    fn path_data<'a>(svg: &'a str, id: &str) -> &'a str {
        let start = svg.find(&format!(r#"id="{id}" d=""#)).unwrap() + id.len() + 9;
        &svg[start..start + svg[start..].find('"').unwrap()]
    }

    #[test]
    fn zero_width_shells_coincide() {
        let s = PointCloud::new(2, vec![1.0, 0.0, 0.0, 1.0, -1.0, -0.5]).unwrap();
        let sol = annulus_at(&shapes::square(), &s, &[0.0, 0.0]).unwrap();
        let svg = render_svg(&shapes::square(), &s, &sol).unwrap();
        assert_eq!(path_data(&svg, "inner"), path_data(&svg, "outer"));
        assert_eq!(svg, render_svg(&shapes::square(), &s, &sol).unwrap());
    }

    #[test]
    fn shells_follow_rotation() {
        let s = PointCloud::new(2, vec![1.0, 0.2, 0.0, 2.0, -1.0, -0.5]).unwrap();
        let mut sol = annulus_at(&shapes::triangle_t(), &s, &[0.1, 0.3]).unwrap();
        sol.rotation = Rotation::from_angles(&[0.4]);
        let posed = shapes::triangle_t().rotate(&sol.rotation);
        let verts = shell_vertices(&posed, &sol.center, sol.outer_radius);
        for (v, pv) in verts.iter().zip(posed.vertices()) {
            for j in 0..2 {
                assert!((v[j] - (sol.center[j] + sol.outer_radius * pv[j])).abs() < 1e-15);
            }
        }
        let svg = render_svg(&shapes::triangle_t(), &s, &sol).unwrap();
        assert_eq!(path_data(&svg, "outer"), path(&verts));
    }

    #[test]
    fn rejects_3d() {
        let s = PointCloud::new(3, vec![0.0; 3]).unwrap();
        let sol = annulus_at(&shapes::cube(), &s, &[0.0; 3]).unwrap();
        assert!(matches!(render_svg(&shapes::cube(), &s, &sol), Err(Error::NotPlanar(3))));
    }
}
