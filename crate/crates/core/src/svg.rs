//! Deterministic SVG rendering of node configurations: nodes as circles,
//! node-lines as segments clipped to the viewport, maximal lines
//! emphasized, a distinguished line dashed. Exact coordinates are converted
//! to f64 only here, at the presentation boundary.

use crate::geom::{Line, Rat};
use crate::nodeset::NodeSet;
use num_traits::ToPrimitive;

fn to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Clips ax + by + c = 0 to the rectangle, returning segment endpoints.
fn clip_line(a: f64, b: f64, c: f64, x0: f64, y0: f64, x1: f64, y1: f64) -> Option<[(f64, f64); 2]> {
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let push = |pts: &mut Vec<(f64, f64)>, x: f64, y: f64| {
        let eps = 1e-9 * (1.0 + x.abs() + y.abs());
        if x >= x0 - eps && x <= x1 + eps && y >= y0 - eps && y <= y1 + eps {
            if !pts.iter().any(|(px, py)| (px - x).abs() < eps && (py - y).abs() < eps) {
                pts.push((x, y));
            }
        }
    };
    if b.abs() > 1e-12 {
        for x in [x0, x1] {
            push(&mut pts, x, -(a * x + c) / b);
        }
    }
    if a.abs() > 1e-12 {
        for y in [y0, y1] {
            push(&mut pts, -(b * y + c) / a, y);
        }
    }
    if pts.len() >= 2 {
        Some([pts[0], pts[1]])
    } else {
        None
    }
}

/// Renders the set with all of its node-lines. `distinguished` is drawn
/// dashed; maximal lines get a heavier stroke.
pub fn render_svg(set: &NodeSet, distinguished: Option<&Line>) -> String {
    let xs: Vec<f64> = set.nodes().iter().map(|p| to_f64(&p.x)).collect();
    let ys: Vec<f64> = set.nodes().iter().map(|p| to_f64(&p.y)).collect();
    let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
    for &x in &xs {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
    }
    for &y in &ys {
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    if !min_x.is_finite() {
        min_x = 0.0;
        max_x = 1.0;
        min_y = 0.0;
        max_y = 1.0;
    }
    let span_x = (max_x - min_x).max(1.0);
    let span_y = (max_y - min_y).max(1.0);
    // 10% margin around the node bounding box
    let (x0, x1) = (min_x - 0.1 * span_x, max_x + 0.1 * span_x);
    let (y0, y1) = (min_y - 0.1 * span_y, max_y + 0.1 * span_y);
    let scale = 640.0 / (x1 - x0).max(y1 - y0);
    let radius = 4.0 / scale;
    let thin = 1.0 / scale;
    let thick = 2.5 / scale;

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.4} {:.4} {:.4} {:.4}\">\n",
        x0,
        y0,
        x1 - x0,
        y1 - y0
    ));
    // flip the y axis so the figure reads in math orientation
    out.push_str(&format!(
        "<g transform=\"translate(0 {:.4}) scale(1 -1)\">\n",
        y0 + y1
    ));
    let maximal = set.maximal_lines();
    for nl in set.node_lines() {
        if nl.node_count < 2 {
            continue;
        }
        let l = &nl.line;
        let (a, b, c) = (
            to_f64(&Rat::from(l.a().clone())),
            to_f64(&Rat::from(l.b().clone())),
            to_f64(&Rat::from(l.c().clone())),
        );
        if let Some([(px, py), (qx, qy)]) = clip_line(a, b, c, x0, y0, x1, y1) {
            let is_max = maximal.contains(l);
            let is_dist = distinguished == Some(l);
            let stroke = if is_max { "#1f3b73" } else { "#9aa7bd" };
            let width = if is_max { thick } else { thin };
            let dash = if is_dist {
                format!(" stroke-dasharray=\"{:.4} {:.4}\"", 8.0 / scale, 5.0 / scale)
            } else {
                String::new()
            };
            out.push_str(&format!(
                "<line x1=\"{px:.4}\" y1=\"{py:.4}\" x2=\"{qx:.4}\" y2=\"{qy:.4}\" stroke=\"{stroke}\" stroke-width=\"{width:.4}\"{dash}/>\n"
            ));
        }
    }
    for (x, y) in xs.iter().zip(&ys) {
        out.push_str(&format!(
            "<circle cx=\"{x:.4}\" cy=\"{y:.4}\" r=\"{radius:.4}\" fill=\"#c23b22\"/>\n"
        ));
    }
    out.push_str("</g>\n</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pl2_renders_nodes_and_lines() {
        let svg = render_svg(&NodeSet::pl(2), None);
        assert_eq!(svg.matches("<circle").count(), 6);
        assert!(svg.matches("<line").count() >= 3);
        assert!(svg.starts_with("<svg"));
        // deterministic output
        assert_eq!(svg, render_svg(&NodeSet::pl(2), None));
    }

    #[test]
    fn distinguished_line_is_dashed() {
        let l = Line::new(1, 1, -1).unwrap();
        let svg = render_svg(&NodeSet::pl(2), Some(&l));
        assert!(svg.contains("stroke-dasharray"));
    }
}
