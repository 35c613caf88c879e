mod common;

use std::collections::BTreeSet;

use num_bigint::BigUint;
use permuto_decomp::bigraph::is_draconian;
use permuto_decomp::decomp::facets;
use permuto_decomp::lattice::{minkowski_sum_points, PolytopePoints};
use permuto_decomp::prelude::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{binomial, brute_spanning_trees, polytope_points_by_facets, random_graph};

fn instance(seed: u64, max_side: usize, max_y: i64) -> (BipartiteGraph, WeightVector) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=max_side);
    let n = rng.gen_range(1..=max_side);
    let g = random_graph(&mut rng, m, n);
    let y = WeightVector::new((0..m).map(|_| rng.gen_range(1..=max_y)).collect()).unwrap();
    (g, y)
}

/// Whether `i` stays with 1̄ after deleting `e` from `t`.
fn anchor_side_after_removal(t: &Tree, e: Edge, i: usize) -> bool {
    let (lefts, _) = t.anchor_component(e).unwrap();
    lefts.contains(&i)
}

#[test]
fn complete_graph_tree_counts_match_formula_and_brute_force() {
    for m in 1..=4usize {
        for n in 1..=4usize {
            let g = BipartiteGraph::complete(m, n).unwrap();
            let trees = spanning_trees(&g);
            let formula = m.pow(n as u32 - 1) * n.pow(m as u32 - 1);
            assert_eq!(trees.len(), formula, "K_{{{m},{n}}}");
            let listed: Vec<Vec<Edge>> = trees.iter().map(|t| t.edges().to_vec()).collect();
            assert_eq!(listed, brute_spanning_trees(&g), "K_{{{m},{n}}}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spanning_trees_match_brute_force(seed in any::<u64>()) {
        let (g, _) = instance(seed, 4, 1);
        let listed: Vec<Vec<Edge>> = spanning_trees(&g).iter().map(|t| t.edges().to_vec()).collect();
        prop_assert_eq!(listed, brute_spanning_trees(&g));
    }

    #[test]
    fn t_vector_separates_anchor(seed in any::<u64>()) {
        let (g, _) = instance(seed, 4, 1);
        for t in spanning_trees(&g) {
            let tv = t_vector(&t);
            for i in 1..=g.m() {
                prop_assert!(t.neighbors(i).contains(&tv.get(i)));
                if t.neighbors(i).contains(&1) {
                    prop_assert_eq!(tv.get(i), 1);
                }
                for &j in t.neighbors(i) {
                    let same_side = anchor_side_after_removal(&t, Edge::new(i, j), i);
                    prop_assert_eq!(same_side, j != tv.get(i));
                }
            }
        }
    }

    #[test]
    fn degree_vectors_sum(seed in any::<u64>()) {
        let (g, _) = instance(seed, 4, 1);
        for t in spanning_trees(&g) {
            let dv = degree_vectors(&t);
            prop_assert_eq!(dv.ld.iter().sum::<usize>() + 1, g.n());
            prop_assert_eq!(dv.rd.iter().sum::<usize>() + 1, g.m());
        }
    }

    #[test]
    fn draconian_invariant_under_right_relabeling(seed in any::<u64>(), shift in 0usize..8) {
        let (g, _) = instance(seed, 4, 1);
        let n = g.n();
        // Cyclically relabel 2̄..n̄, fixing 1̄.
        let relabel = |j: usize| if j == 1 || n <= 2 { j } else { 2 + (j - 2 + shift) % (n - 1) };
        let h = BipartiteGraph::new(g.m(), n, g.edges().iter().map(|e| Edge::new(e.left, relabel(e.right)))).unwrap();
        prop_assert_eq!(draconian_sequences(&g), draconian_sequences(&h));
    }

    #[test]
    fn draconian_sequences_are_exactly_the_passing_compositions(seed in any::<u64>()) {
        let (g, _) = instance(seed, 4, 1);
        let listed: BTreeSet<Vec<usize>> = draconian_sequences(&g).into_iter().map(|d| d.0).collect();
        let total = g.n() - 1;
        // Every vector in [0, n-1]^m.
        let mut all = vec![vec![]];
        for _ in 0..g.m() {
            all = all.into_iter().flat_map(|v: Vec<usize>| (0..=total).map(move |k| { let mut w = v.clone(); w.push(k); w })).collect();
        }
        let brute: BTreeSet<Vec<usize>> = all.into_iter().filter(|a| is_draconian(&g, a)).collect();
        prop_assert_eq!(listed, brute);
    }

    #[test]
    fn cycle_sums_match_potentials_and_flip_under_exchange(seed in any::<u64>()) {
        let (g, _) = instance(seed, 4, 1);
        let h = HeightFunction::from_fn(&g, |e| ((e.left * 31 + e.right * 17 + seed as usize % 97) % 23) as i64);
        for t in spanning_trees(&g) {
            // Potentials u_i - w_j = h on tree edges, solved by walking from 1̄ (w_1 = 0).
            let mut u = vec![None; g.m() + 1];
            let mut w = vec![None; g.n() + 1];
            w[1] = Some(0i64);
            for _ in 0..g.m() + g.n() {
                for &e in t.edges() {
                    let he = h.get(e).unwrap();
                    match (u[e.left], w[e.right]) {
                        (None, Some(wj)) => u[e.left] = Some(he + wj),
                        (Some(ui), None) => w[e.right] = Some(ui - he),
                        _ => {}
                    }
                }
            }
            for &e in g.edges().iter().filter(|e| !t.contains(**e)) {
                let sum = cycle_alt_sum(&t, e, &h).unwrap();
                let slack = h.get(e).unwrap() - (u[e.left].unwrap() - w[e.right].unwrap());
                prop_assert_eq!(sum, slack);
                // Path edges at even positions are traversed against `e` and
                // flip the sign; the others run with `e` and keep it.
                for (k, f) in t.path(Vertex::Right(e.right), Vertex::Left(e.left)).into_iter().enumerate() {
                    let other = t.exchange(&g, f, e).unwrap();
                    let expected = if k % 2 == 0 { -sum } else { sum };
                    prop_assert_eq!(cycle_alt_sum(&other, f, &h).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn simplex_point_count_is_binomial(support_mask in 1u32..32, y in 0i64..7) {
        let support: Vec<usize> = (1..=5).filter(|j| support_mask >> (j - 1) & 1 == 1).collect();
        let pts = simplex_points(&support, y, 5).unwrap();
        let k = support.len() as u64;
        prop_assert_eq!(pts.len() as u128, binomial(y as u64 + k - 1, k - 1));
    }

    #[test]
    fn minkowski_points_match_inequality_description(seed in any::<u64>()) {
        let (g, y) = instance(seed, 4, 3);
        let pts: BTreeSet<Vec<i64>> = minkowski_points(&g, &y).into_iter().map(|p| p.0).collect();
        prop_assert_eq!(pts, polytope_points_by_facets(&g, &y));
    }

    #[test]
    fn minkowski_points_are_order_independent(seed in any::<u64>()) {
        let (g, y) = instance(seed, 4, 3);
        let reversed = minkowski_sum_points(g.n(), (1..=g.m()).rev().map(|i| (g.neighborhood(i), y.get(i)))).unwrap();
        prop_assert_eq!(minkowski_points(&g, &y), reversed);
    }

    #[test]
    fn semi_count_matches_enumeration(seed in any::<u64>()) {
        let (g, y) = instance(seed, 4, 3);
        let points = minkowski_points(&g, &y);
        for t in spanning_trees(&g) {
            let tv = t_vector(&t);
            let hits = points.iter().filter(|q| semi_contains(&t, &tv, &y, q)).count();
            prop_assert_eq!(semi_count(&t, &y), BigUint::from(hits));
        }
    }

    #[test]
    fn subdivision_depends_only_on_graph_and_heights(seed in any::<u64>()) {
        let (g, y) = instance(seed, 4, 4);
        let h = random_heights(&g, seed).unwrap();
        let s = generate_regular(&g, &y, &h).unwrap();
        let s1 = generate_regular(&g, &WeightVector::ones(g.m()), &h).unwrap();
        prop_assert_eq!(s.cells(), s1.cells());
        prop_assert_eq!(s.len(), draconian_sequences(&g).len());
        prop_assert!(ehrhart_terms(&s).is_multiplicity_free());
    }

    #[test]
    fn counts_agree_for_several_weights(seed in any::<u64>()) {
        let (g, _) = instance(seed, 4, 1);
        let s = generate_regular(&g, &WeightVector::ones(g.m()), &random_heights(&g, seed).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabcdef);
        for _ in 0..3 {
            let y = WeightVector::new((0..g.m()).map(|_| rng.gen_range(1..=4)).collect()).unwrap();
            let brute = BigUint::from(trimmed_points(&g, &y).len());
            prop_assert_eq!(count_via_cells(&s, &y), brute.clone());
            prop_assert_eq!(count_via_draconian(&g, &y), brute.clone());
            prop_assert_eq!(ehrhart_terms(&s).evaluate(&y), brute);
        }
    }

    #[test]
    fn positive_facets_are_the_t_vector_edges(seed in any::<u64>()) {
        let (g, y) = instance(seed, 4, 3);
        for t in spanning_trees(&g) {
            let semi = semi_polytope_of_cell(&t, &y);
            let positive: Vec<Edge> = facets(&t, &y).into_iter().filter(|f| f.sign == FacetSign::Positive).map(|f| f.edge).collect();
            let mut expected = semi.positive_facets();
            expected.sort();
            prop_assert_eq!(positive, expected);
            for f in facets(&t, &y) {
                prop_assert_eq!(facet_sign(&t, f.edge).unwrap(), f.sign);
                prop_assert!(f.support.contains(&1) && f.support.len() < g.n());
                // Every facet point lies on the facet hyperplane.
                for p in permuto_decomp::decomp::facet_points(&t, &y, f.edge).unwrap() {
                    prop_assert_eq!(f.support.iter().map(|&j| p[j - 1]).sum::<i64>(), f.level);
                }
            }
        }
    }

    #[test]
    fn decomposition_report_round_trips(seed in any::<u64>()) {
        let (g, y) = instance(seed, 3, 3);
        let s = generate_regular(&g, &y, &random_heights(&g, seed).unwrap()).unwrap();
        let d = decompose(&s, &y).unwrap();
        let report = permuto_decomp::io::DecompositionReport::new(&s, &y, &d);
        let text = permuto_decomp::io::to_sorted_json(&report).unwrap();
        let back: permuto_decomp::io::DecompositionReport = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, report);
        let lattice = PolytopePoints::new(&g, &y);
        prop_assert_eq!(d.owners.len(), lattice.trimmed.len());
    }
}
