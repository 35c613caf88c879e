//! A regular fine mixed subdivision from random heights, then certified.

use permuto_decomp::prelude::*;

pub fn run() -> Result<usize> {
    let g = BipartiteGraph::complete(3, 3)?;
    let y = WeightVector::new(vec![1, 2, 1])?;
    let h = random_heights(&g, 7)?;
    let s = generate_regular(&g, &y, &h)?;
    for (k, t) in s.cells().iter().enumerate() {
        let edges: Vec<String> = t.edges().iter().map(|e| e.to_string()).collect();
        println!("cell {k}: {}", edges.join(" "));
    }
    let report = validate(&g, &y, s.cells());
    println!(
        "{} cells, pass={}, semi-count total {} = brute {}",
        s.len(),
        report.pass,
        report.total_semi_count,
        report.brute_count
    );
    Ok(s.len())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
