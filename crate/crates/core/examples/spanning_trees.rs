//! Spanning trees of K_{2,3} with their t-vectors and degree vectors.

use permuto_decomp::prelude::*;

pub fn run() -> Result<usize> {
    let g = BipartiteGraph::complete(2, 3)?;
    let trees = spanning_trees(&g);
    for t in &trees {
        let edges: Vec<String> = t.edges().iter().map(|e| e.to_string()).collect();
        let dv = degree_vectors(t);
        println!("{}  t={:?}  ld={:?}  rd={:?}", edges.join(" "), t_vector(t).as_slice(), dv.ld, dv.rd);
    }
    println!("{} trees (m^(n-1) n^(m-1) = {})", trees.len(), 2usize.pow(2) * 3);
    Ok(trees.len())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
