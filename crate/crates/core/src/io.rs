//! JSON wire formats. Vertices are 1-indexed; an edge is `[left, right]`.
//! Cells are numbered from 0 in list order.
//!
//! ```text
//! graph:       {"m":2,"n":2,"edges":[[1,1],[1,2],[2,1],[2,2]]}
//! heights:     {"heights":[{"edge":[1,2],"h":7}, …]}
//! subdivision: {"cells":[{"edges":[[1,1],[1,2],[2,2]]}, …]}
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigUint;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bigraph::{degree_vectors, BipartiteGraph, Edge, Tree};
use crate::decomp::Decomposition;
use crate::error::Result;
use crate::lattice::{semi_count, LatticePoint, WeightVector};
use crate::serde_count;
use crate::subdivision::{HeightFunction, Subdivision};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    pub m: usize,
    pub n: usize,
    pub edges: Vec<Edge>,
}

impl GraphFile {
    pub fn into_graph(self) -> Result<BipartiteGraph> {
        BipartiteGraph::new(self.m, self.n, self.edges)
    }
}

impl From<&BipartiteGraph> for GraphFile {
    fn from(g: &BipartiteGraph) -> Self {
        GraphFile { m: g.m(), n: g.n(), edges: g.edges().to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightEntry {
    pub edge: Edge,
    pub h: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeightsFile {
    pub heights: Vec<HeightEntry>,
}

impl HeightsFile {
    pub fn into_heights(self, g: &BipartiteGraph) -> Result<HeightFunction> {
        let mut map = BTreeMap::new();
        for HeightEntry { edge, h } in self.heights {
            if map.insert(edge, h).is_some() {
                return Err(crate::Error::DuplicateEdge(edge));
            }
        }
        HeightFunction::new(g, map)
    }
}

impl From<&HeightFunction> for HeightsFile {
    fn from(h: &HeightFunction) -> Self {
        HeightsFile { heights: h.iter().map(|(edge, h)| HeightEntry { edge, h }).collect() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellEntry {
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsFile {
    pub cells: Vec<CellEntry>,
}

impl CellsFile {
    pub fn into_trees(self, g: &BipartiteGraph) -> Result<Vec<Tree>> {
        self.cells.into_iter().map(|c| Tree::new(g, c.edges)).collect()
    }
}

impl From<&[Tree]> for CellsFile {
    fn from(cells: &[Tree]) -> Self {
        CellsFile { cells: cells.iter().map(|t| CellEntry { edges: t.edges().to_vec() }).collect() }
    }
}

/// One cell of a decomposition report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellReport {
    pub index: usize,
    pub edges: Vec<Edge>,
    pub t: Vec<usize>,
    pub ld: Vec<usize>,
    #[serde(with = "serde_count")]
    pub semi_count: BigUint,
    /// Positive facets, named by the removed edge `(i, t_i)`.
    pub positive_facets: Vec<Edge>,
    pub owned_points: Vec<LatticePoint>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub lattice_points: usize,
    pub good_points: usize,
    pub trimmed_points: usize,
    #[serde(with = "serde_count")]
    pub semi_count_sum: BigUint,
}

/// A good point of `P_G` and the trimmed point it corresponds to (`good - e_1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRow {
    pub good: LatticePoint,
    pub trimmed: LatticePoint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub m: usize,
    pub n: usize,
    pub y: Vec<i64>,
    pub cells: Vec<CellReport>,
    pub totals: Totals,
    pub shift_table: Vec<ShiftRow>,
}

impl DecompositionReport {
    pub fn new(s: &Subdivision, y: &WeightVector, d: &Decomposition) -> Self {
        let cells: Vec<CellReport> = s
            .cells()
            .iter()
            .zip(&d.semis)
            .enumerate()
            .map(|(index, (t, semi))| CellReport {
                index,
                edges: t.edges().to_vec(),
                t: semi.t.0.clone(),
                ld: degree_vectors(t).ld,
                semi_count: semi_count(t, y),
                positive_facets: semi.positive_facets(),
                owned_points: d.owned_by(index).cloned().collect(),
            })
            .collect();
        let shift_table: Vec<ShiftRow> =
            d.owners.keys().map(|q| ShiftRow { good: q.clone(), trimmed: q.shifted(1, -1) }).collect();
        let totals = Totals {
            lattice_points: d.lattice.points.len(),
            good_points: d.owners.len(),
            trimmed_points: d.lattice.trimmed.len(),
            semi_count_sum: cells.iter().map(|c| &c.semi_count).sum(),
        };
        DecompositionReport { m: s.graph().m(), n: s.graph().n(), y: y.as_slice().to_vec(), cells, totals, shift_table }
    }
}

/// Pretty JSON with object keys sorted.
pub fn to_sorted_json<T: Serialize>(value: &T) -> Result<String> {
    // serde_json's default Map is a BTreeMap, so a round trip through Value sorts keys.
    let v = serde_json::to_value(value)?;
    let mut s = serde_json::to_string_pretty(&v)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_graph(path: &Path) -> Result<BipartiteGraph> {
    read_json::<GraphFile>(path)?.into_graph()
}
