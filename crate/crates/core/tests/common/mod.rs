//! Test-only corpus generation and brute-force oracles. Nothing here calls
//! into the library code paths it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use permuto_decomp::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A random connected bipartite graph with no isolated vertices.
pub fn random_graph(rng: &mut ChaCha8Rng, m: usize, n: usize) -> BipartiteGraph {
    loop {
        let edges: Vec<Edge> =
            (1..=m).flat_map(|i| (1..=n).map(move |j| Edge::new(i, j))).filter(|_| rng.gen_bool(0.5)).collect();
        if let Ok(g) = BipartiteGraph::new(m, n, edges) {
            return g;
        }
    }
}

pub struct Instance {
    pub graph: BipartiteGraph,
    pub y: WeightVector,
}

/// `count` random graphs with `2 ≤ m, n ≤ max_side` and `y ∈ [1, max_y]^m`.
pub fn corpus(count: usize, seed: u64, max_side: usize, max_y: i64) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let m = rng.gen_range(2..=max_side);
            let n = rng.gen_range(2..=max_side);
            let graph = random_graph(&mut rng, m, n);
            let y = WeightVector::new((0..m).map(|_| rng.gen_range(1..=max_y)).collect()).unwrap();
            Instance { graph, y }
        })
        .collect()
}

/// Connected components count over vertices `L1..Lm, R1..Rn`, by repeated DFS.
fn component_count(m: usize, n: usize, edges: &[Edge]) -> usize {
    let mut seen = vec![false; m + n];
    let mut comps = 0;
    for start in 0..m + n {
        if seen[start] {
            continue;
        }
        comps += 1;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for e in edges {
                let (a, b) = (e.left - 1, m + e.right - 1);
                let w = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    comps
}

/// All spanning trees by testing every `(m+n-1)`-subset of edges.
pub fn brute_spanning_trees(g: &BipartiteGraph) -> Vec<Vec<Edge>> {
    let edges = g.edges();
    let k = g.m() + g.n() - 1;
    let mut out = Vec::new();
    for mask in 0u64..(1 << edges.len()) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let subset: Vec<Edge> = (0..edges.len()).filter(|b| mask >> b & 1 == 1).map(|b| edges[b]).collect();
        if component_count(g.m(), g.n(), &subset) == 1 {
            out.push(subset);
        }
    }
    out.sort();
    out
}

/// Every nonnegative vector supported on `support` with coordinate sum `y`.
fn simplex(support: &[usize], y: i64, n: usize) -> Vec<Vec<i64>> {
    if support.len() == 1 {
        let mut v = vec![0; n];
        v[support[0] - 1] = y;
        return vec![v];
    }
    let mut out = Vec::new();
    for k in 0..=y {
        for mut rest in simplex(&support[1..], y - k, n) {
            rest[support[0] - 1] += k;
            out.push(rest);
        }
    }
    out
}

/// Number of ways to write each cell point as `Σ p_i`, `p_i ∈ y_i Δ_{T_i}`,
/// by expanding the full product of summand point sets.
pub fn decomposition_counts(t: &Tree, y: &WeightVector) -> BTreeMap<Vec<i64>, usize> {
    let n = t.n();
    let mut partial: Vec<Vec<i64>> = vec![vec![0; n]];
    for i in 1..=t.m() {
        let pts = simplex(t.neighbors(i), y.get(i), n);
        partial = partial
            .iter()
            .flat_map(|a| pts.iter().map(move |b| a.iter().zip(b).map(|(x, z)| x + z).collect()))
            .collect();
    }
    let mut counts = BTreeMap::new();
    for p in partial {
        *counts.entry(p).or_insert(0) += 1;
    }
    counts
}

/// `f(J) = Σ_{i : I_i ∩ J ≠ ∅} y_i`, the support function of `P_G` in direction `1_J`.
fn rank(g: &BipartiteGraph, y: &WeightVector, mask: u32) -> i64 {
    (1..=g.m()).filter(|&i| g.neighborhood(i).iter().any(|&j| mask >> (j - 1) & 1 == 1)).map(|i| y.get(i)).sum()
}

fn subset_sum(q: &[i64], mask: u32) -> i64 {
    (0..q.len()).filter(|b| mask >> b & 1 == 1).map(|b| q[b]).sum()
}

/// Membership in `P_G` from its inequality description
/// `Σ x = Σ y`, `Σ_{j∈J} x_j ≤ f(J)` for all `J`.
pub fn polytope_contains(g: &BipartiteGraph, y: &WeightVector, q: &[i64]) -> bool {
    let n = g.n();
    q.iter().sum::<i64>() == y.total() && (1u32..(1 << n)).all(|mask| subset_sum(q, mask) <= rank(g, y, mask))
}

/// Good = on no positive facet. The hyperplane `Σ_J x = f(J)` separates the
/// far point `((n-1)c + Σy, -c, …, -c)` from `P_G` exactly when `1 ∈ J`, so a
/// point is good iff every tight proper subset `J` contains `1`.
pub fn is_good_by_facets(g: &BipartiteGraph, y: &WeightVector, q: &[i64]) -> bool {
    let n = g.n();
    let full = (1u32 << n) - 1;
    (1u32..full).all(|mask| subset_sum(q, mask) < rank(g, y, mask) || mask & 1 == 1)
}

/// All integer points of `P_G` from the inequality description.
pub fn polytope_points_by_facets(g: &BipartiteGraph, y: &WeightVector) -> BTreeSet<Vec<i64>> {
    let all: Vec<usize> = (1..=g.n()).collect();
    simplex(&all, y.total(), g.n()).into_iter().filter(|q| polytope_contains(g, y, q)).collect()
}

/// `C(a, b)` in `u128`.
pub fn binomial(a: u64, b: u64) -> u128 {
    (0..b).fold(1u128, |acc, k| acc * (a - k) as u128 / (k + 1) as u128)
}
