//! Draws a two-dimensional subdivision to an SVG file.

use permuto_decomp::prelude::*;
use permuto_decomp::render::render_svg;

pub fn run() -> Result<String> {
    let g = BipartiteGraph::complete(2, 3)?;
    let y = WeightVector::new(vec![2, 3])?;
    let s = generate_regular(&g, &y, &random_heights(&g, 1)?)?;
    render_svg(&s, &y)
}

#[allow(dead_code)]
fn main() -> Result<()> {
    let svg = run()?;
    let path = std::env::args().nth(1).unwrap_or_else(|| "subdivision.svg".into());
    std::fs::write(&path, svg)?;
    println!("wrote {path}");
    Ok(())
}
