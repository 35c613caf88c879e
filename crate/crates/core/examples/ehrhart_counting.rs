//! |P_G^- ∩ Z^n| three ways: summing cells, draconian sequences, brute force.

use num_bigint::BigUint;
use permuto_decomp::prelude::*;

pub fn run() -> Result<BigUint> {
    let g = BipartiteGraph::new(
        3,
        4,
        [(1, 1), (1, 2), (2, 2), (2, 3), (2, 4), (3, 1), (3, 4)].map(|(i, j)| Edge::new(i, j)),
    )?;
    let y = WeightVector::new(vec![3, 1, 2])?;
    let s = generate_regular(&g, &y, &random_heights(&g, 3)?)?;
    let cells = count_via_cells(&s, &y);
    let draconian = count_via_draconian(&g, &y);
    let brute = count_brute(&g, &y);
    println!("cells {cells}  draconian {draconian}  brute {brute}");
    println!("polynomial: {}", ehrhart_terms(&s).display());
    assert!(cells == draconian && draconian == brute);
    Ok(brute)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run().map(|_| ())
}
