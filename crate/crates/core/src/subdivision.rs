//! Regular fine mixed subdivisions of `P_G(y)` from edge heights.
//!
//! Lifting summand `i`'s vertex `e_j` to height `h(i,j̄)` and taking lower faces
//! selects the spanning trees `T` for which every non-tree edge `e` has a
//! positive alternating sum around its fundamental cycle. Every produced
//! subdivision is certified by [`validate`] before it is handed out.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bigraph::{cycle_alt_sum, spanning_trees, t_vector, BipartiteGraph, Edge, Tree};
use crate::error::{Error, Result};
use crate::lattice::{semi_contains, semi_count, LatticePoint, PolytopePoints, WeightVector};
use crate::serde_count;

/// Heights are drawn from `[0, HEIGHT_RANGE)`.
pub const HEIGHT_RANGE: i64 = 1 << 20;

/// Seeds tried by [`random_heights`] before giving up.
pub const GENERICITY_RETRIES: u32 = 32;

/// Integer heights on the edges of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightFunction {
    heights: BTreeMap<Edge, i64>,
}

impl HeightFunction {
    /// Requires a height for every edge of `g` and nothing else.
    pub fn new(g: &BipartiteGraph, heights: BTreeMap<Edge, i64>) -> Result<Self> {
        if let Some(e) = g.edges().iter().find(|e| !heights.contains_key(e)) {
            return Err(Error::MissingHeight(*e));
        }
        if let Some(e) = heights.keys().find(|e| !g.contains(**e)) {
            return Err(Error::UnknownHeightEdge(*e));
        }
        Ok(HeightFunction { heights })
    }

    pub fn from_fn(g: &BipartiteGraph, mut f: impl FnMut(Edge) -> i64) -> Self {
        HeightFunction { heights: g.edges().iter().map(|&e| (e, f(e))).collect() }
    }

    pub fn get(&self, e: Edge) -> Option<i64> {
        self.heights.get(&e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, i64)> + '_ {
        self.heights.iter().map(|(e, h)| (*e, *h))
    }
}

/// Cap on the graph size that tree enumeration will accept.
///
/// The default admits `m, n ≤ 6` with `m·n ≤ 25`. Setting the environment
/// variable `PERMUTO_SIZE_LIMIT=N` (read by [`SizeLimit::from_env`]) replaces
/// this with the single condition `m·n ≤ N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeLimit {
    pub max_side: usize,
    pub max_product: usize,
}

impl Default for SizeLimit {
    fn default() -> Self {
        SizeLimit { max_side: 6, max_product: 25 }
    }
}

impl SizeLimit {
    pub const ENV_VAR: &'static str = "PERMUTO_SIZE_LIMIT";

    pub fn from_env() -> Self {
        match std::env::var(Self::ENV_VAR).ok().and_then(|v| v.trim().parse().ok()) {
            Some(product) => SizeLimit { max_side: usize::MAX, max_product: product },
            None => SizeLimit::default(),
        }
    }

    pub fn check(&self, g: &BipartiteGraph) -> Result<()> {
        let (m, n) = (g.m(), g.n());
        if m > self.max_side || n > self.max_side || m * n > self.max_product {
            return Err(Error::SizeLimit {
                m,
                n,
                limit: format!("m,n <= {}, m*n <= {}", self.max_side, self.max_product),
            });
        }
        Ok(())
    }
}

/// Alternating cycle sums of every non-tree edge of every spanning tree.
fn all_cycle_sums(g: &BipartiteGraph, trees: &[Tree], h: &HeightFunction) -> Result<Vec<Vec<i64>>> {
    trees
        .iter()
        .map(|t| g.edges().iter().filter(|e| !t.contains(**e)).map(|e| cycle_alt_sum(t, *e, h)).collect())
        .collect()
}

/// `h` is generic when no fundamental cycle of any spanning tree has a zero
/// alternating sum.
pub fn is_generic(g: &BipartiteGraph, h: &HeightFunction) -> Result<bool> {
    let trees = spanning_trees(g);
    Ok(all_cycle_sums(g, &trees, h)?.iter().flatten().all(|&s| s != 0))
}

/// Deterministic heights in `[0, 2^20)` for edges in lexicographic order.
/// Non-generic draws are retried with `seed + 1, seed + 2, …`.
pub fn random_heights(g: &BipartiteGraph, seed: u64) -> Result<HeightFunction> {
    random_heights_with_limit(g, seed, &SizeLimit::default())
}

pub fn random_heights_with_limit(g: &BipartiteGraph, seed: u64, limit: &SizeLimit) -> Result<HeightFunction> {
    limit.check(g)?;
    let trees = spanning_trees(g);
    for attempt in 0..GENERICITY_RETRIES {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(u64::from(attempt)));
        let h = HeightFunction::from_fn(g, |_| rng.gen_range(0..HEIGHT_RANGE));
        if all_cycle_sums(g, &trees, &h)?.iter().flatten().all(|&s| s != 0) {
            return Ok(h);
        }
    }
    Err(Error::GenericityExhausted { seed, attempts: GENERICITY_RETRIES })
}

/// A validated fine mixed subdivision of `P_G(y)`, one spanning tree per cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdivision {
    graph: BipartiteGraph,
    y: WeightVector,
    cells: Vec<Tree>,
}

impl Subdivision {
    /// Accepts an arbitrary cell list after it passes [`validate`].
    pub fn from_cells(g: &BipartiteGraph, y: &WeightVector, cells: Vec<Tree>) -> Result<Self> {
        let report = validate(g, y, &cells);
        if !report.pass {
            return Err(Error::ValidationFailed(Box::new(report)));
        }
        Ok(Subdivision { graph: g.clone(), y: y.clone(), cells })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    /// The weight vector the subdivision was validated against.
    pub fn weights(&self) -> &WeightVector {
        &self.y
    }

    pub fn cells(&self) -> &[Tree] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// The regular subdivision induced by `h`, validated against `y`.
pub fn generate_regular(g: &BipartiteGraph, y: &WeightVector, h: &HeightFunction) -> Result<Subdivision> {
    generate_regular_with_limit(g, y, h, &SizeLimit::default())
}

pub fn generate_regular_with_limit(
    g: &BipartiteGraph,
    y: &WeightVector,
    h: &HeightFunction,
    limit: &SizeLimit,
) -> Result<Subdivision> {
    limit.check(g)?;
    let trees = spanning_trees(g);
    let sums = all_cycle_sums(g, &trees, h)?;
    if sums.iter().flatten().any(|&s| s == 0) {
        return Err(Error::NonGenericHeights);
    }
    let select = |keep: fn(i64) -> bool| -> Vec<Tree> {
        trees.iter().zip(&sums).filter(|(_, s)| s.iter().all(|&v| keep(v))).map(|(t, _)| t.clone()).collect()
    };
    // Lower hull first; the upper hull is also a regular subdivision.
    let lower = select(|s| s > 0);
    let first = match Subdivision::from_cells(g, y, lower) {
        Ok(s) => return Ok(s),
        Err(Error::ValidationFailed(report)) => report,
        Err(e) => return Err(e),
    };
    Subdivision::from_cells(g, y, select(|s| s < 0)).map_err(|e| match e {
        Error::ValidationFailed(_) => Error::ValidationFailed(first),
        other => other,
    })
}

/// A lattice point together with the cells whose semi-polytopes claim it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimedPoint {
    pub point: LatticePoint,
    pub cells: Vec<usize>,
}

/// Outcome of [`validate`]. Cell indices are positions in the candidate list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    #[serde(with = "serde_count")]
    pub total_semi_count: BigUint,
    #[serde(with = "serde_count")]
    pub brute_count: BigUint,
    /// Good points no semi-polytope claims.
    pub orphan_points: Vec<LatticePoint>,
    /// Good points claimed by two or more semi-polytopes.
    pub doubly_owned_points: Vec<ClaimedPoint>,
    /// Points on a positive facet of `P_G` that some semi-polytope claims.
    pub stray_points: Vec<ClaimedPoint>,
}

/// Checks that the semi-polytopes of `cells` partition the good lattice
/// points of `P_G(y)` and that their counts add up to `|P_G⁻(y) ∩ Z^n|`.
pub fn validate(g: &BipartiteGraph, y: &WeightVector, cells: &[Tree]) -> ValidationReport {
    let lattice = PolytopePoints::new(g, y);
    let tvs: Vec<_> = cells.iter().map(t_vector).collect();
    let mut orphan_points = Vec::new();
    let mut doubly_owned_points = Vec::new();
    let mut stray_points = Vec::new();
    for q in &lattice.points {
        let owners: Vec<usize> = cells
            .iter()
            .zip(&tvs)
            .enumerate()
            .filter(|(_, (t, tv))| semi_contains(t, tv, y, q))
            .map(|(k, _)| k)
            .collect();
        let good = lattice.trimmed.contains(&q.shifted(1, -1));
        match (good, owners.len()) {
            (true, 0) => orphan_points.push(q.clone()),
            (true, 1) | (false, 0) => {}
            (true, _) => doubly_owned_points.push(ClaimedPoint { point: q.clone(), cells: owners }),
            (false, _) => stray_points.push(ClaimedPoint { point: q.clone(), cells: owners }),
        }
    }
    let total_semi_count: BigUint = cells.iter().map(|t| semi_count(t, y)).sum();
    let brute_count = BigUint::from(lattice.trimmed.len());
    let pass = orphan_points.is_empty()
        && doubly_owned_points.is_empty()
        && stray_points.is_empty()
        && total_semi_count == brute_count;
    ValidationReport { pass, total_semi_count, brute_count, orphan_points, doubly_owned_points, stray_points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bigraph::validate_graph;

    fn k22() -> BipartiteGraph {
        BipartiteGraph::complete(2, 2).unwrap()
    }

    fn tree(g: &BipartiteGraph, edges: &[(usize, usize)]) -> Tree {
        Tree::new(g, edges.iter().copied().map(Edge::from)).unwrap()
    }

    fn y12() -> WeightVector {
        WeightVector::new(vec![1, 2]).unwrap()
    }

    fn worked_heights(g: &BipartiteGraph) -> HeightFunction {
        HeightFunction::from_fn(g, |e| i64::from(e == Edge::new(2, 2)))
    }

    #[test]
    fn heights_are_deterministic() {
        let g = BipartiteGraph::complete(3, 3).unwrap();
        assert_eq!(random_heights(&g, 7).unwrap(), random_heights(&g, 7).unwrap());
        assert_ne!(random_heights(&g, 7).unwrap(), random_heights(&g, 8).unwrap());
        for (_, h) in random_heights(&g, 7).unwrap().iter() {
            assert!((0..HEIGHT_RANGE).contains(&h));
        }
    }

    #[test]
    fn genericity() {
        let g = k22();
        assert!(!is_generic(&g, &HeightFunction::from_fn(&g, |_| 0)).unwrap());
        assert!(is_generic(&g, &worked_heights(&g)).unwrap());
        let path = validate_graph(2, 2, &[(1, 1), (2, 1), (2, 2)]).unwrap();
        assert!(is_generic(&path, &HeightFunction::from_fn(&path, |_| 0)).unwrap());
        assert!(matches!(
            generate_regular(&g, &y12(), &HeightFunction::from_fn(&g, |_| 0)),
            Err(Error::NonGenericHeights)
        ));
    }

    #[test]
    fn height_function_must_be_total() {
        let g = k22();
        let partial = BTreeMap::from([(Edge::new(1, 1), 0)]);
        assert!(matches!(HeightFunction::new(&g, partial), Err(Error::MissingHeight(_))));
        let mut extra: BTreeMap<_, _> = g.edges().iter().map(|e| (*e, 0)).collect();
        extra.insert(Edge::new(3, 1), 0);
        assert!(matches!(HeightFunction::new(&g, extra), Err(Error::UnknownHeightEdge(_))));
    }

    #[test]
    fn worked_heights_give_a_two_cell_subdivision() {
        let g = k22();
        let s = generate_regular(&g, &y12(), &worked_heights(&g)).unwrap();
        // Lower faces for h(2,2̄)=1: T2 = {(1,1̄),(1,2̄),(2,1̄)} and T4 = {(1,2̄),(2,1̄),(2,2̄)}.
        assert_eq!(s.cells(), &[tree(&g, &[(1, 1), (1, 2), (2, 1)]), tree(&g, &[(1, 2), (2, 1), (2, 2)])]);
        let counts: Vec<_> = s.cells().iter().map(|t| semi_count(t, &y12())).collect();
        assert_eq!(counts, vec![BigUint::from(1u8), BigUint::from(2u8)]);
    }

    #[test]
    fn trees_and_stars_are_their_own_subdivision() {
        let path = validate_graph(2, 2, &[(1, 1), (2, 1), (2, 2)]).unwrap();
        let h = random_heights(&path, 0).unwrap();
        let s = generate_regular(&path, &y12(), &h).unwrap();
        assert_eq!(s.cells(), spanning_trees(&path).as_slice());

        let star = BipartiteGraph::complete(1, 4).unwrap();
        let y = WeightVector::new(vec![3]).unwrap();
        let s = generate_regular(&star, &y, &random_heights(&star, 0).unwrap()).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn validate_examples() {
        let g = k22();
        let t1 = tree(&g, &[(1, 1), (1, 2), (2, 2)]);
        let t3 = tree(&g, &[(1, 1), (2, 1), (2, 2)]);
        let t4 = tree(&g, &[(1, 2), (2, 1), (2, 2)]);

        let ok = validate(&g, &y12(), &[t1.clone(), t3]);
        assert!(ok.pass);
        assert_eq!(ok.total_semi_count, BigUint::from(3u8));
        assert_eq!(ok.brute_count, BigUint::from(3u8));

        let overlap = validate(&g, &y12(), &[t1.clone(), t4]);
        assert!(!overlap.pass);
        assert_eq!(
            overlap.doubly_owned_points,
            vec![ClaimedPoint { point: LatticePoint(vec![1, 2]), cells: vec![0, 1] }]
        );

        let alone = validate(&g, &y12(), &[t1]);
        assert!(!alone.pass);
        assert_eq!(alone.orphan_points, vec![LatticePoint(vec![2, 1]), LatticePoint(vec![3, 0])]);
    }

    #[test]
    fn size_limit() {
        let g = BipartiteGraph::complete(5, 6).unwrap();
        assert!(matches!(SizeLimit::default().check(&g), Err(Error::SizeLimit { .. })));
        let wide = SizeLimit { max_side: usize::MAX, max_product: 30 };
        assert!(wide.check(&g).is_ok());
        assert!(SizeLimit::default().check(&BipartiteGraph::complete(5, 5).unwrap()).is_ok());
    }
}
