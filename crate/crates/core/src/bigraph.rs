//! Bipartite graphs `G ⊆ K_{m,n}` and their spanning trees.
//!
//! Vertices are 1-indexed on both sides. Left vertex `i` ranges over `1..=m`,
//! right vertex `j̄` over `1..=n` and is stored as the plain index `j`. Right
//! vertex `1̄` is the anchor for t-vectors and facet signs throughout the crate.
//!
//! The neighborhood `I_i` of left vertex `i` is the support of the `i`-th
//! simplex summand of the permutohedron `P_G(y)`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Side};
use crate::subdivision::HeightFunction;

/// An edge `(i, j̄)` between left vertex `i` and right vertex `j̄`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    pub left: usize,
    pub right: usize,
}

impl Edge {
    pub const fn new(left: usize, right: usize) -> Self {
        Edge { left, right }
    }

    /// The same edge seen from the transposed graph.
    pub const fn flipped(self) -> Self {
        Edge { left: self.right, right: self.left }
    }
}

impl From<[usize; 2]> for Edge {
    fn from([left, right]: [usize; 2]) -> Self {
        Edge { left, right }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.left, e.right]
    }
}

impl From<(usize, usize)> for Edge {
    fn from((left, right): (usize, usize)) -> Self {
        Edge { left, right }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}\u{304})", self.left, self.right)
    }
}

/// A vertex of a bipartite graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Left(usize),
    Right(usize),
}

/// Dense vertex ids: left `i` -> `i-1`, right `j` -> `m+j-1`.
#[derive(Debug, Clone, Copy)]
struct Indexer {
    m: usize,
}

impl Indexer {
    fn id(self, v: Vertex) -> usize {
        match v {
            Vertex::Left(i) => i - 1,
            Vertex::Right(j) => self.m + j - 1,
        }
    }

    fn vertex(self, id: usize) -> Vertex {
        if id < self.m {
            Vertex::Left(id + 1)
        } else {
            Vertex::Right(id - self.m + 1)
        }
    }
}

/// Adjacency lists over dense ids, shared by graphs and trees.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Adjacency {
    left: Vec<Vec<usize>>,
    right: Vec<Vec<usize>>,
}

impl Adjacency {
    fn build(m: usize, n: usize, edges: &[Edge]) -> Self {
        let mut left = vec![Vec::new(); m];
        let mut right = vec![Vec::new(); n];
        for e in edges {
            left[e.left - 1].push(e.right);
            right[e.right - 1].push(e.left);
        }
        for l in left.iter_mut().chain(right.iter_mut()) {
            l.sort_unstable();
        }
        Adjacency { left, right }
    }

    fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        let (list, right_side) = match v {
            Vertex::Left(i) => (&self.left[i - 1], true),
            Vertex::Right(j) => (&self.right[j - 1], false),
        };
        list.iter().map(move |&k| if right_side { Vertex::Right(k) } else { Vertex::Left(k) })
    }

    /// Breadth-first search from `root`, ignoring `skip`. Returns the parent of
    /// every reached vertex (the root is its own parent).
    fn bfs(&self, m: usize, n: usize, root: Vertex, skip: Option<Edge>) -> Vec<Option<Vertex>> {
        let ix = Indexer { m };
        let mut parent = vec![None; m + n];
        parent[ix.id(root)] = Some(root);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if let Some(s) = skip {
                    if edge_between(v, w) == Some(s) {
                        continue;
                    }
                }
                let id = ix.id(w);
                if parent[id].is_none() {
                    parent[id] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        parent
    }
}

fn edge_between(a: Vertex, b: Vertex) -> Option<Edge> {
    match (a, b) {
        (Vertex::Left(i), Vertex::Right(j)) | (Vertex::Right(j), Vertex::Left(i)) => Some(Edge::new(i, j)),
        _ => None,
    }
}

/// A connected bipartite graph without isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    edges: Vec<Edge>,
    adj: Adjacency,
}

impl BipartiteGraph {
    /// Validates an edge list. See [`validate_graph`].
    pub fn new(m: usize, n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::EmptySide { m, n });
        }
        let mut seen = BTreeSet::new();
        for e in edges {
            if e.left == 0 || e.left > m || e.right == 0 || e.right > n {
                return Err(Error::EdgeOutOfRange(e));
            }
            if !seen.insert(e) {
                return Err(Error::DuplicateEdge(e));
            }
        }
        let edges: Vec<Edge> = seen.into_iter().collect();
        let adj = Adjacency::build(m, n, &edges);
        if let Some(i) = adj.left.iter().position(Vec::is_empty) {
            return Err(Error::IsolatedVertex { side: Side::Left, index: i + 1 });
        }
        if let Some(j) = adj.right.iter().position(Vec::is_empty) {
            return Err(Error::IsolatedVertex { side: Side::Right, index: j + 1 });
        }
        let parent = adj.bfs(m, n, Vertex::Left(1), None);
        if let Some(id) = parent.iter().position(Option::is_none) {
            let (side, index) = match (Indexer { m }).vertex(id) {
                Vertex::Left(i) => (Side::Left, i),
                Vertex::Right(j) => (Side::Right, j),
            };
            return Err(Error::Disconnected { side, index });
        }
        Ok(BipartiteGraph { m, n, edges, adj })
    }

    /// The complete bipartite graph `K_{m,n}`.
    pub fn complete(m: usize, n: usize) -> Result<Self> {
        let edges = (1..=m).flat_map(|i| (1..=n).map(move |j| Edge::new(i, j)));
        Self::new(m, n, edges)
    }

    /// Number of left vertices.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Number of right vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `I_i`: right neighbors of left vertex `i`, ascending.
    pub fn neighborhood(&self, i: usize) -> &[usize] {
        &self.adj.left[i - 1]
    }

    /// Left neighbors of right vertex `j̄`, ascending.
    pub fn right_neighborhood(&self, j: usize) -> &[usize] {
        &self.adj.right[j - 1]
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// `G*`: left and right vertices swapped.
    pub fn transpose(&self) -> BipartiteGraph {
        let mut edges: Vec<Edge> = self.edges.iter().map(|e| e.flipped()).collect();
        edges.sort_unstable();
        let adj = Adjacency::build(self.n, self.m, &edges);
        BipartiteGraph { m: self.n, n: self.m, edges, adj }
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.m + self.n
    }
}

/// Checks a raw edge list (pairs `(left, right)`, 1-indexed).
pub fn validate_graph(m: usize, n: usize, edges: &[(usize, usize)]) -> Result<BipartiteGraph> {
    BipartiteGraph::new(m, n, edges.iter().copied().map(Edge::from))
}

/// `G*`, the graph with left and right vertices switched.
pub fn transpose(g: &BipartiteGraph) -> BipartiteGraph {
    g.transpose()
}

/// A spanning tree `T` of a bipartite graph; indexes the fine cell `∏_T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    m: usize,
    n: usize,
    edges: Vec<Edge>,
    adj: Adjacency,
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.m, self.n, &self.edges).cmp(&(other.m, other.n, &other.edges))
    }
}

impl Tree {
    /// Checks that `edges` is a spanning tree of `g`.
    pub fn new(g: &BipartiteGraph, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in edges {
            if !g.contains(e) {
                return Err(Error::NotATree(format!("{e} is not an edge of the graph")));
            }
            if !set.insert(e) {
                return Err(Error::DuplicateEdge(e));
            }
        }
        let (m, n) = (g.m, g.n);
        if set.len() + 1 != m + n {
            return Err(Error::NotATree(format!("{} edges, a spanning tree needs {}", set.len(), m + n - 1)));
        }
        let edges: Vec<Edge> = set.into_iter().collect();
        let adj = Adjacency::build(m, n, &edges);
        // m+n-1 edges and connected implies acyclic.
        if adj.bfs(m, n, Vertex::Right(1), None).iter().any(Option::is_none) {
            return Err(Error::NotATree("edge set is disconnected".into()));
        }
        Ok(Tree { m, n, edges, adj })
    }

    fn from_sorted_unchecked(m: usize, n: usize, edges: Vec<Edge>) -> Self {
        let adj = Adjacency::build(m, n, &edges);
        Tree { m, n, edges, adj }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `T_i`: right neighbors of left vertex `i` in the tree.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj.left[i - 1]
    }

    /// Left neighbors of right vertex `j̄` in the tree.
    pub fn right_neighbors(&self, j: usize) -> &[usize] {
        &self.adj.right[j - 1]
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    pub fn is_left_leaf(&self, i: usize) -> bool {
        self.adj.left[i - 1].len() == 1
    }

    /// Edges of the unique tree path from `from` to `to`, in walking order.
    pub fn path(&self, from: Vertex, to: Vertex) -> Vec<Edge> {
        let ix = Indexer { m: self.m };
        let parent = self.adj.bfs(self.m, self.n, to, None);
        let mut out = Vec::new();
        let mut v = from;
        while v != to {
            let p = parent[ix.id(v)].expect("tree is connected");
            out.push(edge_between(v, p).expect("bipartite"));
            v = p;
        }
        out
    }

    /// Splits `T ∖ e` into two components and returns the one containing `1̄`
    /// as (left vertices, right vertices), both ascending.
    pub fn anchor_component(&self, e: Edge) -> Result<(Vec<usize>, Vec<usize>)> {
        if !self.contains(e) {
            return Err(Error::EdgeNotInTree(e));
        }
        let parent = self.adj.bfs(self.m, self.n, Vertex::Right(1), Some(e));
        let ix = Indexer { m: self.m };
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (id, p) in parent.iter().enumerate() {
            if p.is_some() {
                match ix.vertex(id) {
                    Vertex::Left(i) => left.push(i),
                    Vertex::Right(j) => right.push(j),
                }
            }
        }
        Ok((left, right))
    }

    /// `T ∖ e + f`, the tree reached by an exchange along `f`'s fundamental cycle.
    pub fn exchange(&self, g: &BipartiteGraph, remove: Edge, add: Edge) -> Result<Tree> {
        let edges = self.edges.iter().copied().filter(|&x| x != remove).chain([add]);
        Tree::new(g, edges)
    }
}

/// All spanning trees of `g`, each once, ordered lexicographically by their
/// sorted edge lists.
pub fn spanning_trees(g: &BipartiteGraph) -> Vec<Tree> {
    let need = g.m + g.n - 1;
    let labels: Vec<usize> = (0..g.m + g.n).collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(need);
    extend_forest(g, 0, need, &labels, &mut chosen, &mut out);
    out
}

fn extend_forest(
    g: &BipartiteGraph,
    start: usize,
    need: usize,
    labels: &[usize],
    chosen: &mut Vec<Edge>,
    out: &mut Vec<Tree>,
) {
    if chosen.len() == need {
        out.push(Tree::from_sorted_unchecked(g.m, g.n, chosen.clone()));
        return;
    }
    let ix = Indexer { m: g.m };
    let total = g.edges.len();
    for idx in start..total {
        if total - idx < need - chosen.len() {
            break;
        }
        let e = g.edges[idx];
        let a = labels[ix.id(Vertex::Left(e.left))];
        let b = labels[ix.id(Vertex::Right(e.right))];
        if a == b {
            continue;
        }
        let merged: Vec<usize> = labels.iter().map(|&l| if l == b { a } else { l }).collect();
        chosen.push(e);
        extend_forest(g, idx + 1, need, &merged, chosen, out);
        chosen.pop();
    }
}

/// For each left vertex `i`, the neighbor `t_i ∈ T_i` on the tree path from
/// `i` to `1̄` (so `t_i = 1` whenever `1̄ ∈ T_i`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TVector(pub Vec<usize>);

impl TVector {
    /// `t_i` for 1-indexed left vertex `i`.
    pub fn get(&self, i: usize) -> usize {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }
}

pub fn t_vector(t: &Tree) -> TVector {
    // The BFS parent of a left vertex in the tree rooted at 1̄ is its t_i.
    let parent = t.adj.bfs(t.m, t.n, Vertex::Right(1), None);
    let ix = Indexer { m: t.m };
    let entries = (1..=t.m)
        .map(|i| match parent[ix.id(Vertex::Left(i))] {
            Some(Vertex::Right(j)) => j,
            other => unreachable!("left vertex {i} has parent {other:?}"),
        })
        .collect();
    TVector(entries)
}

/// Left and right degree vectors of a tree: `deg - 1` on each side.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DegreeVectors {
    pub ld: Vec<usize>,
    pub rd: Vec<usize>,
}

pub fn degree_vectors(t: &Tree) -> DegreeVectors {
    let ld = t.adj.left.iter().map(|l| l.len() - 1).collect();
    let rd = t.adj.right.iter().map(|r| r.len() - 1).collect();
    DegreeVectors { ld, rd }
}

/// A `G`-draconian sequence `(a_1, …, a_m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DraconianSequence(pub Vec<usize>);

/// Union sizes `|⋃_{i ∈ S} I_i|` for every subset `S` of left vertices,
/// indexed by bitmask (bit `i-1` for left vertex `i`).
fn union_sizes(g: &BipartiteGraph) -> Vec<u32> {
    let m = g.m;
    let mut unions = vec![BTreeSet::<usize>::new(); 1 << m];
    let mut sizes = vec![0u32; 1 << m];
    for mask in 1usize..(1 << m) {
        let low = mask.trailing_zeros() as usize;
        let mut u = unions[mask & (mask - 1)].clone();
        u.extend(g.neighborhood(low + 1).iter().copied());
        sizes[mask] = u.len() as u32;
        unions[mask] = u;
    }
    sizes
}

/// Whether `a` sums to `n-1` and every nonempty subset `S ⊆ [m]` has
/// `|⋃_{i∈S} I_i| ≥ Σ_{i∈S} a_i + 1`.
pub fn is_draconian(g: &BipartiteGraph, a: &[usize]) -> bool {
    a.len() == g.m && a.iter().sum::<usize>() + 1 == g.n && {
        let sizes = union_sizes(g);
        subsets_ok(&sizes, a)
    }
}

fn subsets_ok(sizes: &[u32], a: &[usize]) -> bool {
    (1usize..sizes.len()).all(|mask| {
        let total: usize = (0..a.len()).filter(|b| mask >> b & 1 == 1).map(|b| a[b]).sum();
        sizes[mask] as usize > total
    })
}

/// All `G`-draconian sequences in lexicographic order.
pub fn draconian_sequences(g: &BipartiteGraph) -> Vec<DraconianSequence> {
    let sizes = union_sizes(g);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(g.m);
    compositions(g.m, g.n - 1, &mut current, &mut |a| {
        if subsets_ok(&sizes, a) {
            out.push(DraconianSequence(a.to_vec()));
        }
    });
    out
}

/// Visits every weak composition of `total` into `parts` parts, lexicographically.
pub(crate) fn compositions(parts: usize, total: usize, current: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if current.len() + 1 == parts {
        current.push(total);
        visit(current);
        current.pop();
        return;
    }
    if parts == 0 {
        if total == 0 {
            visit(current);
        }
        return;
    }
    for k in 0..=total {
        current.push(k);
        compositions(parts, total - k, current, visit);
        current.pop();
    }
}

/// Alternating height sum around the fundamental cycle of the non-tree edge
/// `e`: `h(e) - h(f_1) + h(f_2) - … - h(f_{2k-1})`, where `f_1, …` walk the tree
/// path from `e`'s right endpoint back to its left endpoint.
pub fn cycle_alt_sum(t: &Tree, e: Edge, h: &HeightFunction) -> Result<i64> {
    if t.contains(e) {
        return Err(Error::EdgeInTree(e));
    }
    let mut sum = h.get(e).ok_or(Error::MissingHeight(e))?;
    let path = t.path(Vertex::Right(e.right), Vertex::Left(e.left));
    for (k, f) in path.iter().enumerate() {
        let hf = h.get(*f).ok_or(Error::MissingHeight(*f))?;
        if k % 2 == 0 {
            sum -= hf;
        } else {
            sum += hf;
        }
    }
    Ok(sum)
}
