//! SVG picture of a staircase: lattice, exponents in the ideal, generators,
//! and the Newton polygon with its vertices emphasized.

use std::fmt::Write;

use crate::algebra::Monomial;
use crate::staircase::{newton_vertices, MonomialIdeal};

const CELL: u32 = 32;
const MARGIN: u32 = 40;

/// Deterministic SVG for an m-primary ideal.
pub fn render_svg(i: &MonomialIdeal) -> String {
    let a_max = i.gens()[0].a + 1;
    let b_max = i.gens()[i.r()].b + 1;
    let width = 2 * MARGIN + a_max * CELL;
    let height = 2 * MARGIN + b_max * CELL;
    // lattice point (a, b) to pixel, y axis pointing up
    let px = |a: u32| MARGIN + a * CELL;
    let py = |b: u32| height - MARGIN - b * CELL;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(
        s,
        r##"<rect width="{width}" height="{height}" fill="#ffffff"/>"##
    );
    for a in 0..=a_max {
        let _ = writeln!(
            s,
            r##"<line class="grid" x1="{x}" y1="{y0}" x2="{x}" y2="{y1}" stroke="#dddddd"/>"##,
            x = px(a),
            y0 = py(0),
            y1 = py(b_max)
        );
    }
    for b in 0..=b_max {
        let _ = writeln!(
            s,
            r##"<line class="grid" x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" stroke="#dddddd"/>"##,
            x0 = px(0),
            x1 = px(a_max),
            y = py(b)
        );
    }
    for b in 0..=b_max {
        for a in 0..=a_max {
            let fill = if i.contains(Monomial::new(a, b)) {
                "#9ecae1"
            } else {
                "#f0f0f0"
            };
            let _ = writeln!(
                s,
                r#"<circle class="lattice" cx="{}" cy="{}" r="3" fill="{fill}"/>"#,
                px(a),
                py(b)
            );
        }
    }
    let hull = newton_vertices(i);
    let path: Vec<String> = hull
        .vertices
        .iter()
        .map(|v| format!("{},{}", px(v.a), py(v.b)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline class="hull" points="{}" fill="none" stroke="#de2d26" stroke-width="2"/>"##,
        path.join(" ")
    );
    for g in i.gens() {
        let _ = writeln!(
            s,
            r##"<circle class="generator" cx="{}" cy="{}" r="5" fill="#3182bd"/>"##,
            px(g.a),
            py(g.b)
        );
    }
    for v in &hull.vertices {
        let _ = writeln!(
            s,
            r##"<circle class="vertex" cx="{}" cy="{}" r="8" fill="none" stroke="#de2d26" stroke-width="2"/>"##,
            px(v.a),
            py(v.b)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="monospace" font-size="12">{}</text>"#,
        MARGIN,
        MARGIN / 2,
        i.to_string().replace('<', "&lt;").replace('>', "&gt;")
    );
    s.push_str("</svg>\n");
    s
}
