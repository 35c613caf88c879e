//! Facet signs of every cell, each checked by independent rules.

use permuto_decomp::decomp::facets;
use permuto_decomp::prelude::*;

pub fn run() -> Result<usize> {
    let g = BipartiteGraph::complete(2, 3)?;
    let y = WeightVector::new(vec![2, 1])?;
    let s = generate_regular(&g, &y, &random_heights(&g, 5)?)?;
    let mut checked = 0;
    for t in s.cells() {
        let edges: Vec<String> = t.edges().iter().map(|e| e.to_string()).collect();
        println!("cell {}", edges.join(" "));
        for f in facets(t, &y) {
            let rules = facet_sign_rules(t, &y, f.edge)?;
            assert!(rules.agree());
            println!("  remove {}: sum over {:?} = {}  {:?}", f.edge, f.support, f.level, f.sign);
            checked += 1;
        }
    }
    for shared in shared_facets(&s, &y) {
        println!(
            "cells {:?} share a facet with signs {:?} / {:?}",
            shared.cells, shared.facets.0.sign, shared.facets.1.sign
        );
    }
    Ok(checked)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
