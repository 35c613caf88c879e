//! Semi-polytope decompositions of generalized permutohedra.
//!
//! For a connected bipartite graph `G ⊆ K_{m,n}` and positive integer weights
//! `y`, the generalized permutohedron is the Minkowski sum
//! `P_G(y) = y_1 Δ_{I_1} + … + y_m Δ_{I_m}`. This crate
//!
//! - enumerates spanning trees, t-vectors, degree vectors and `G`-draconian
//!   sequences ([`bigraph`]);
//! - enumerates lattice points of `P_G`, of the trimmed polytope `P_G⁻`, of
//!   fine cells and of semi-polytopes with exact integers ([`lattice`]);
//! - builds regular fine mixed subdivisions from edge heights and certifies
//!   them ([`subdivision`]);
//! - removes positive facets from every cell, assigns each good lattice point
//!   to exactly one cell, and counts `|P_G⁻ ∩ Z^n|` three ways ([`decomp`]).
//!
//! ```
//! use permuto_decomp::prelude::*;
//!
//! let g = BipartiteGraph::complete(2, 2)?;
//! let y = WeightVector::new(vec![1, 2])?;
//! let s = generate_regular(&g, &y, &random_heights(&g, 1)?)?;
//! assert_eq!(count_via_cells(&s, &y), count_via_draconian(&g, &y));
//! assert_eq!(trimmed_points(&g, &y).len(), 3);
//! # Ok::<(), permuto_decomp::Error>(())
//! ```

pub mod bigraph;
pub mod cli;
pub mod decomp;
pub mod error;
pub mod io;
pub mod lattice;
pub mod render;
mod serde_count;
pub mod subdivision;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::bigraph::{
        cycle_alt_sum, degree_vectors, draconian_sequences, spanning_trees, t_vector, transpose, validate_graph,
        BipartiteGraph, DegreeVectors, DraconianSequence, Edge, TVector, Tree, Vertex,
    };
    pub use crate::decomp::{
        assign_owner, count_brute, count_via_cells, count_via_draconian, decompose, ehrhart_terms, facet_descriptor,
        facet_sign, facet_sign_rules, is_good, semi_polytope_of_cell, shared_facets, verify_chain, CellSide,
        CountPolynomial, FacetDescriptor, FacetSign, SemiPolytope,
    };
    pub use crate::lattice::{
        cell_decompose, minkowski_points, raising_power, semi_contains, semi_count, simplex_points, trimmed_points,
        LatticePoint, PolytopePoints, WeightVector,
    };
    pub use crate::subdivision::{generate_regular, random_heights, validate, HeightFunction, SizeLimit, Subdivision};
    pub use crate::{Error, Result};
}
