//! Static SVG drawings of a semi-polytope decomposition for `n ∈ {2, 3}`.
//!
//! `n = 2` is drawn on a number line along `x_2`; `n = 3` in barycentric
//! projection. Positive facets are dashed, good lattice points are filled in
//! their owner's color, other lattice points are hollow.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::bigraph::Tree;
use crate::decomp::{decompose, facet_points, facets, FacetSign};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, WeightVector};
use crate::subdivision::Subdivision;

const PALETTE: [&str; 8] = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1", "#9c755f"];
const WIDTH: f64 = 600.0;
const MARGIN: f64 = 40.0;

fn color(k: usize) -> &'static str {
    PALETTE[k % PALETTE.len()]
}

pub fn render_svg(s: &Subdivision, y: &WeightVector) -> Result<String> {
    let n = s.graph().n();
    if n != 2 && n != 3 {
        return Err(Error::UnsupportedDimension(n));
    }
    let d = decompose(s, y)?;
    let total = y.total() as f64;
    let scale = (WIDTH - 2.0 * MARGIN) / total;
    let height = if n == 2 { 120.0 } else { MARGIN * 2.0 + total * scale * 3f64.sqrt() / 2.0 };
    let project = |q: &[i64]| -> (f64, f64) {
        if n == 2 {
            (MARGIN + q[1] as f64 * scale, 60.0)
        } else {
            let x = q[1] as f64 + q[2] as f64 / 2.0;
            let h = q[2] as f64 * 3f64.sqrt() / 2.0;
            (MARGIN + x * scale, height - MARGIN - h * scale)
        }
    };

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:.0}" height="{height:.0}" viewBox="0 0 {WIDTH:.0} {height:.0}">"#
    );
    let _ =
        writeln!(svg, "<title>semi-polytope decomposition, m={}, n={n}, y={:?}</title>", s.graph().m(), y.as_slice());

    svg.push_str("<g id=\"cells\">\n");
    for (k, t) in s.cells().iter().enumerate() {
        let hull = convex_hull(&cell_vertices(t, y));
        if n == 2 {
            let ((x0, y0), (x1, _)) = (project(&hull[0]), project(hull.last().unwrap()));
            let _ = writeln!(
                svg,
                r#"<line x1="{x0:.2}" y1="{y0:.2}" x2="{x1:.2}" y2="{y0:.2}" stroke="{}" stroke-width="10" stroke-opacity="0.35"/>"#,
                color(k)
            );
        } else {
            let pts: Vec<String> = hull
                .iter()
                .map(|q| {
                    let (x, y) = project(q);
                    format!("{x:.2},{y:.2}")
                })
                .collect();
            let _ = writeln!(
                svg,
                r#"<polygon points="{}" fill="{}" fill-opacity="0.25" stroke="none"/>"#,
                pts.join(" "),
                color(k)
            );
        }
    }
    svg.push_str("</g>\n<g id=\"facets\">\n");
    for (k, t) in s.cells().iter().enumerate() {
        for f in facets(t, y) {
            let points = facet_points(t, y, f.edge)?;
            let dash = if f.sign == FacetSign::Positive { r#" stroke-dasharray="4 3""# } else { "" };
            let ends = convex_hull(&points.iter().cloned().collect::<Vec<_>>());
            let (a, b) = (project(&ends[0]), project(ends.last().unwrap()));
            if n == 2 {
                let _ = writeln!(
                    svg,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="9" fill="none" stroke="{}" stroke-width="2"{dash}/>"#,
                    a.0,
                    a.1,
                    color(k)
                );
            } else {
                let _ = writeln!(
                    svg,
                    r#"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="2"{dash}/>"#,
                    a.0,
                    a.1,
                    b.0,
                    b.1,
                    color(k)
                );
            }
        }
    }
    svg.push_str("</g>\n<g id=\"points\">\n");
    for q in &d.lattice.points {
        let (x, y) = project(q);
        match d.owners.get(q) {
            Some(&k) => {
                let _ = writeln!(svg, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="{}"/>"#, color(k));
            }
            None => {
                let _ = writeln!(svg, r##"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="white" stroke="#333"/>"##);
            }
        }
    }
    svg.push_str("</g>\n</svg>\n");
    Ok(svg)
}

/// Vertices `Σ_i y_i e_{j_i}` with `j_i ∈ T_i`.
fn cell_vertices(t: &Tree, y: &WeightVector) -> Vec<LatticePoint> {
    let mut out = BTreeSet::from([LatticePoint::zero(t.n())]);
    for i in 1..=t.m() {
        out = out.iter().flat_map(|p| t.neighbors(i).iter().map(move |&j| p.shifted(j, y.get(i)))).collect();
    }
    out.into_iter().collect()
}

/// Convex hull of points on `Σx = const` in `n ≤ 3`, via the integer chart
/// `(2x_2 + x_3, x_3)`. Counterclockwise, starting from the lexicographically
/// smallest chart point. Collinear inputs return the two endpoints.
fn convex_hull(points: &[LatticePoint]) -> Vec<LatticePoint> {
    let chart = |q: &LatticePoint| -> (i64, i64) {
        let x3 = q.get(2).copied().unwrap_or(0);
        (2 * q[1] + x3, x3)
    };
    let mut pts: Vec<&LatticePoint> = points.iter().collect();
    pts.sort_by_key(|q| chart(q));
    pts.dedup_by_key(|q| chart(q));
    if pts.len() <= 2 {
        return pts.into_iter().cloned().collect();
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut lower: Vec<&LatticePoint> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(chart(lower[lower.len() - 2]), chart(lower[lower.len() - 1]), chart(p)) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&LatticePoint> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(chart(upper[upper.len() - 2]), chart(upper[upper.len() - 1]), chart(p)) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.into_iter().chain(upper).cloned().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::{spanning_trees, BipartiteGraph, Edge};
    use crate::subdivision::{generate_regular, random_heights};

    #[test]
    fn worked_segment_has_one_dashed_endpoint_per_cell() {
        let g = BipartiteGraph::complete(2, 2).unwrap();
        let y = WeightVector::new(vec![1, 2]).unwrap();
        let cells = vec![
            Tree::new(&g, [Edge::new(1, 1), Edge::new(1, 2), Edge::new(2, 2)]).unwrap(),
            Tree::new(&g, [Edge::new(1, 1), Edge::new(2, 1), Edge::new(2, 2)]).unwrap(),
        ];
        let s = Subdivision::from_cells(&g, &y, cells).unwrap();
        let svg = render_svg(&s, &y).unwrap();
        assert_eq!(svg.matches("stroke-dasharray").count(), 2);
        assert_eq!(svg.matches("r=\"9\"").count(), 4);
        // Three good points filled, (0,3) hollow.
        assert_eq!(svg.matches("fill=\"white\"").count(), 1);
        assert_eq!(svg, render_svg(&s, &y).unwrap());
    }

    #[test]
    fn simplex_triangle_has_one_dashed_edge() {
        let g = BipartiteGraph::complete(1, 3).unwrap();
        let y = WeightVector::new(vec![2]).unwrap();
        let s = Subdivision::from_cells(&g, &y, spanning_trees(&g)).unwrap();
        let svg = render_svg(&s, &y).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 1);
        assert_eq!(svg.matches("<line").count(), 3);
        assert_eq!(svg.matches("stroke-dasharray").count(), 1);
    }

    #[test]
    fn four_dimensions_are_unsupported() {
        let g = BipartiteGraph::complete(1, 4).unwrap();
        let y = WeightVector::new(vec![1]).unwrap();
        let s = generate_regular(&g, &y, &random_heights(&g, 1).unwrap()).unwrap();
        assert!(matches!(render_svg(&s, &y), Err(Error::UnsupportedDimension(4))));
    }

    #[test]
    fn hull_of_triangle_grid() {
        let pts: Vec<LatticePoint> = crate::lattice::simplex_points(&[1, 2, 3], 2, 3).unwrap().into_iter().collect();
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 3);
    }
}
