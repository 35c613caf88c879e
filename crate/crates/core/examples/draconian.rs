//! G-draconian sequences and the multiplicity-free count polynomial.

use permuto_decomp::prelude::*;

pub fn run() -> Result<usize> {
    // A 6-cycle: left i meets right i and i+1 (mod 3).
    let g = BipartiteGraph::new(3, 3, [(1, 1), (1, 2), (2, 2), (2, 3), (3, 3), (3, 1)].map(|(i, j)| Edge::new(i, j)))?;
    let seqs = draconian_sequences(&g);
    for d in &seqs {
        println!("{:?}", d.0);
    }
    let poly = ehrhart_terms(&g);
    println!("#P_G^-(y) = {}", poly.display());
    let y = WeightVector::new(vec![2, 1, 3])?;
    println!("at y = {:?}: {}", y.as_slice(), poly.evaluate(&y));
    Ok(seqs.len())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
