//! Lattice points of P_G(y), of the trimmed polytope, and of a single cell.

use permuto_decomp::prelude::*;

pub fn run() -> Result<(usize, usize)> {
    let g = BipartiteGraph::complete(2, 3)?;
    let y = WeightVector::new(vec![1, 2])?;
    let pts = PolytopePoints::new(&g, &y);
    println!("P_G has {} lattice points, P_G^- has {}", pts.points.len(), pts.trimmed.len());
    for p in &pts.trimmed {
        println!("  trimmed {p}");
    }
    let t = &spanning_trees(&g)[0];
    let cell = permuto_decomp::lattice::cell_points(t, &y);
    let edges: Vec<String> = t.edges().iter().map(|e| e.to_string()).collect();
    println!("cell {} holds {} points, semi-count {}", edges.join(" "), cell.len(), semi_count(t, &y));
    Ok((pts.points.len(), pts.trimmed.len()))
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
