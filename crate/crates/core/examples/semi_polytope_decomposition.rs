//! Every good lattice point lands in exactly one semi-polytope.

use permuto_decomp::prelude::*;

pub fn run() -> Result<usize> {
    let g = BipartiteGraph::complete(2, 2)?;
    let y = WeightVector::new(vec![1, 2])?;
    let h = HeightFunction::from_fn(&g, |e| i64::from(e == Edge::new(2, 2)));
    let s = generate_regular(&g, &y, &h)?;
    let d = decompose(&s, &y)?;
    for (k, semi) in d.semis.iter().enumerate() {
        let owned: Vec<String> = d.owned_by(k).map(|q| q.to_string()).collect();
        let positive: Vec<String> = semi.positive_facets().iter().map(|e| e.to_string()).collect();
        println!("cell {k}: t={:?} positive facets {} owns {}", semi.t.as_slice(), positive.join(" "), owned.join(" "));
    }
    for q in d.owners.keys() {
        println!("{q} -> trimmed {}", q.shifted(1, -1));
    }
    Ok(d.owners.len())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
