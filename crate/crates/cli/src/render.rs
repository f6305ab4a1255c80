//! SVG drawings of identification polygons and chord diagrams.

use std::f64::consts::PI;
use std::fmt::Write;

use lantern_core::curve::{BoundaryPoint, CurveDiagram};
use lantern_core::rotation::RotationMap;
use lantern_core::surface::PolygonSurface;

const SIZE: f64 = 640.0;
const RADIUS: f64 = 250.0;

const STYLES: [(&str, &str); 4] = [
    ("#c0392b", "none"),
    ("#1f5fbf", "8 5"),
    ("#218c4a", "2 4"),
    ("#8e44ad", "12 4 2 4"),
];

fn corner(n: usize, i: usize) -> (f64, f64) {
    let theta = PI / 2.0 + PI / n as f64 + 2.0 * PI * i as f64 / n as f64;
    (SIZE / 2.0 + RADIUS * theta.cos(), SIZE / 2.0 - RADIUS * theta.sin())
}

fn on_side(n: usize, side: usize, t: f64) -> (f64, f64) {
    let (x0, y0) = corner(n, side);
    let (x1, y1) = corner(n, (side + 1) % n);
    (x0 + t * (x1 - x0), y0 + t * (y1 - y0))
}

fn point(n: usize, p: BoundaryPoint) -> (f64, f64) {
    let t = p.t;
    on_side(n, p.side, *t.numer() as f64 / *t.denom() as f64)
}

/// Renders the polygon with corner labels, gluing arrows, the given curves and
/// an optional rotation marker. The output depends only on the inputs.
pub fn render_svg(surface: &PolygonSurface, curves: &[&CurveDiagram], rotation: Option<&RotationMap>) -> String {
    let n = surface.n_sides();
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    out.push_str(concat!(
        r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="7" markerHeight="7" "#,
        r##"orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="#444"/></marker></defs>"##,
        "\n"
    ));
    out.push_str(r##"<rect width="100%" height="100%" fill="#ffffff"/>"##);
    out.push('\n');

    let corners: Vec<String> = (0..n)
        .map(|i| {
            let (x, y) = corner(n, i);
            format!("{x:.3},{y:.3}")
        })
        .collect();
    let _ = writeln!(
        out,
        r##"<polygon points="{}" fill="#f7f7f2" stroke="#222" stroke-width="2"/>"##,
        corners.join(" ")
    );

    for (k, (i, j)) in surface.pairing().pairs().into_iter().enumerate() {
        for (side, from) in [(i, 0.42), (j, 0.58)] {
            let (x0, y0) = on_side(n, side, from);
            let (x1, y1) = on_side(n, side, 1.0 - from);
            let _ = writeln!(
                out,
                r##"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}" stroke="#444" stroke-width="1.5" marker-end="url(#arrow)"/>"##
            );
            let (mx, my) = on_side(n, side, 0.5);
            let (lx, ly) = (SIZE / 2.0 + (mx - SIZE / 2.0) * 1.1, SIZE / 2.0 + (my - SIZE / 2.0) * 1.1);
            let _ = writeln!(
                out,
                r##"<text x="{lx:.3}" y="{ly:.3}" font-family="sans-serif" font-size="12" fill="#555" text-anchor="middle" dominant-baseline="middle">e{k}</text>"##
            );
        }
    }

    for i in 0..n {
        let (x, y) = corner(n, i);
        let (lx, ly) = (SIZE / 2.0 + (x - SIZE / 2.0) * 1.07, SIZE / 2.0 + (y - SIZE / 2.0) * 1.07);
        let _ = writeln!(out, r##"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="#222"/>"##);
        let _ = writeln!(
            out,
            r#"<text x="{lx:.3}" y="{ly:.3}" font-family="sans-serif" font-size="14" text-anchor="middle" dominant-baseline="middle">{i}</text>"#
        );
    }

    for (idx, curve) in curves.iter().enumerate() {
        let (color, dash) = STYLES[idx % STYLES.len()];
        let _ = writeln!(
            out,
            r#"<g class="curve-{idx}" stroke="{color}" stroke-width="2.5" stroke-dasharray="{dash}" fill="none">"#
        );
        for (a, b) in curve.chords() {
            let (x0, y0) = point(n, a);
            let (x1, y1) = point(n, b);
            let _ = writeln!(out, r#"<line x1="{x0:.3}" y1="{y0:.3}" x2="{x1:.3}" y2="{y1:.3}"/>"#);
        }
        out.push_str("</g>\n");
    }

    if let Some(r) = rotation {
        let c = SIZE / 2.0;
        let _ = writeln!(
            out,
            r##"<path d="M{:.3},{c:.3} A22,22 0 1,0 {c:.3},{:.3}" stroke="#444" stroke-width="1.5" fill="none" marker-end="url(#arrow)"/>"##,
            c + 22.0,
            c - 22.0
        );
        let _ = writeln!(
            out,
            r#"<text x="{c:.3}" y="{:.3}" font-family="sans-serif" font-size="13" text-anchor="middle">shift {} order {}</text>"#,
            c + 44.0,
            r.shift(),
            r.order()
        );
    }
    out.push_str("</svg>\n");
    out
}
