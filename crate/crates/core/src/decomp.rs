//! Semi-polytope decomposition of `P_G(y)` and the three lattice-point counts.
//!
//! Every cell `∏_T` of a fine mixed subdivision loses its positive facets,
//! leaving the semi-polytope `Σ y_i Δ*_{T_i, t_i}`. A facet is positive when its
//! hyperplane does not separate the far point `∞_1` from the cell. The
//! semi-polytopes partition the good lattice points of `P_G`, which in turn
//! are the trimmed points shifted by `e_1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::bigraph::{degree_vectors, draconian_sequences, t_vector, BipartiteGraph, Edge, TVector, Tree};
use crate::error::{Error, Result};
use crate::lattice::{
    cell_points, minkowski_sum_points, raising_over_factorial, semi_contains, semi_count, trimmed_points, LatticePoint,
    PolytopePoints, WeightVector,
};
use crate::serde_count;
use crate::subdivision::Subdivision;

/// Which closed half-space of `Σ_{j∈I_e} x_j = c_e` holds the cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CellSide {
    /// `Σ_{j∈I_e} x_j ≥ c_e`
    Above,
    /// `Σ_{j∈I_e} x_j ≤ c_e`
    Below,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FacetSign {
    Positive,
    Negative,
}

/// The facet `∏_{T∖e}` of `∏_T` and its hyperplane `Σ_{j∈I_e} x_j = c_e`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FacetDescriptor {
    pub edge: Edge,
    /// `I_e`: right vertices of the component of `T∖e` containing `1̄`.
    pub support: Vec<usize>,
    /// `c_e`: sum of `y_i` over left vertices of that component.
    pub level: i64,
    pub side: CellSide,
    pub sign: FacetSign,
}

fn check_facet_edge(t: &Tree, e: Edge) -> Result<()> {
    if !t.contains(e) {
        return Err(Error::EdgeNotInTree(e));
    }
    if t.is_left_leaf(e.left) {
        return Err(Error::LeafEdge(e));
    }
    Ok(())
}

pub fn facet_descriptor(t: &Tree, y: &WeightVector, e: Edge) -> Result<FacetDescriptor> {
    check_facet_edge(t, e)?;
    let (lefts, support) = t.anchor_component(e)?;
    let level = lefts.iter().map(|&i| y.get(i)).sum();
    let side = if support.contains(&e.right) { CellSide::Above } else { CellSide::Below };
    let sign = if t_vector(t).get(e.left) == e.right { FacetSign::Positive } else { FacetSign::Negative };
    Ok(FacetDescriptor { edge: e, support, level, side, sign })
}

/// `slope·c + offset` for a symbolic, arbitrarily large `c`. The derived order
/// compares slopes first, which is the order for all sufficiently large `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Linear {
    pub slope: i64,
    pub offset: i64,
}

impl Linear {
    pub const fn constant(offset: i64) -> Self {
        Linear { slope: 0, offset }
    }
}

impl std::ops::Add for Linear {
    type Output = Linear;

    fn add(self, rhs: Linear) -> Linear {
        Linear { slope: self.slope + rhs.slope, offset: self.offset + rhs.offset }
    }
}

impl std::iter::Sum for Linear {
    fn sum<I: Iterator<Item = Linear>>(iter: I) -> Linear {
        iter.fold(Linear::constant(0), |a, b| a + b)
    }
}

/// `∞_1 = ((n-1)c + Σy, -c, …, -c)`, which lies on `Σ x_j = Σ y_i` for every `c`.
pub fn infinity_point(n: usize, y: &WeightVector) -> Vec<Linear> {
    let mut p = vec![Linear { slope: -1, offset: 0 }; n];
    p[0] = Linear { slope: n as i64 - 1, offset: y.total() };
    p
}

/// Outcomes of the independent ways of deciding a facet's sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignRules {
    /// Positive iff `e = (i, t_i)`.
    pub by_t_vector: FacetSign,
    /// Positive iff `∞_1` and the cell's interior are on the same side.
    pub by_infinity: FacetSign,
    /// Side of the cell's centroid, evaluated exactly.
    pub centroid_side: CellSide,
    /// Side predicted from whether `e`'s right endpoint lies in `I_e`.
    pub endpoint_side: CellSide,
}

impl SignRules {
    pub fn agree(&self) -> bool {
        self.by_t_vector == self.by_infinity && self.centroid_side == self.endpoint_side
    }
}

pub fn facet_sign_rules(t: &Tree, y: &WeightVector, e: Edge) -> Result<SignRules> {
    let desc = facet_descriptor(t, y, e)?;
    let n = t.n();

    let at_infinity: Linear = desc.support.iter().map(|&j| infinity_point(n, y)[j - 1]).sum();
    let infinity_side = match at_infinity.cmp(&Linear::constant(desc.level)) {
        Ordering::Greater => CellSide::Above,
        Ordering::Less => CellSide::Below,
        Ordering::Equal => unreachable!("∞_1 lies on the facet hyperplane"),
    };

    // Centroid Σ_i y_i·(1/|T_i|)·Σ_{j∈T_i} e_j, scaled by the lcm of the |T_i|.
    let sizes: Vec<i64> = (1..=t.m()).map(|i| t.neighbors(i).len() as i64).collect();
    let scale = sizes.iter().fold(1i64, |acc, &s| lcm(acc, s));
    let mut centroid = vec![0i64; n];
    for i in 1..=t.m() {
        for &j in t.neighbors(i) {
            centroid[j - 1] += y.get(i) * (scale / sizes[i - 1]);
        }
    }
    let value: i64 = desc.support.iter().map(|&j| centroid[j - 1]).sum::<i64>() - scale * desc.level;
    let centroid_side = match value.cmp(&0) {
        Ordering::Greater => CellSide::Above,
        Ordering::Less => CellSide::Below,
        Ordering::Equal => unreachable!("cell interior lies on a facet hyperplane"),
    };

    let by_infinity = if infinity_side == centroid_side { FacetSign::Positive } else { FacetSign::Negative };
    Ok(SignRules { by_t_vector: desc.sign, by_infinity, centroid_side, endpoint_side: desc.side })
}

/// The sign of facet `∏_{T∖e}`, cross-checked between the t-vector rule and
/// the `∞_1` rule. The sign does not depend on `y`.
pub fn facet_sign(t: &Tree, e: Edge) -> Result<FacetSign> {
    let rules = facet_sign_rules(t, &WeightVector::ones(t.m()), e)?;
    if !rules.agree() {
        return Err(Error::SignRuleMismatch(e));
    }
    Ok(rules.by_t_vector)
}

/// All facet descriptors of a cell (edges at left leaves are skipped).
pub fn facets(t: &Tree, y: &WeightVector) -> Vec<FacetDescriptor> {
    t.edges()
        .iter()
        .filter(|e| !t.is_left_leaf(e.left))
        .map(|&e| facet_descriptor(t, y, e).expect("non-leaf tree edge"))
        .collect()
}

/// Lattice points of the facet `∏_{T∖e}`.
pub fn facet_points(t: &Tree, y: &WeightVector, e: Edge) -> Result<BTreeSet<LatticePoint>> {
    check_facet_edge(t, e)?;
    let supports: Vec<Vec<usize>> = (1..=t.m())
        .map(|i| t.neighbors(i).iter().copied().filter(|&j| i != e.left || j != e.right).collect())
        .collect();
    minkowski_sum_points(t.n(), supports.iter().enumerate().map(|(k, s)| (s.as_slice(), y.get(k + 1))))
}

fn lcm(a: i64, b: i64) -> i64 {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// A cell with its positive facets removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiPolytope {
    pub tree: Tree,
    pub t: TVector,
    pub y: WeightVector,
}

impl SemiPolytope {
    pub fn contains(&self, q: &LatticePoint) -> bool {
        semi_contains(&self.tree, &self.t, &self.y, q)
    }

    pub fn lattice_points(&self) -> BTreeSet<LatticePoint> {
        cell_points(&self.tree, &self.y).into_iter().filter(|q| self.contains(q)).collect()
    }

    /// The removed facets: edges `(i, t_i)` for every non-leaf left vertex `i`.
    pub fn positive_facets(&self) -> Vec<Edge> {
        (1..=self.tree.m()).filter(|&i| !self.tree.is_left_leaf(i)).map(|i| Edge::new(i, self.t.get(i))).collect()
    }

    pub fn count(&self) -> BigUint {
        semi_count(&self.tree, &self.y)
    }
}

pub fn semi_polytope_of_cell(t: &Tree, y: &WeightVector) -> SemiPolytope {
    SemiPolytope { tree: t.clone(), t: t_vector(t), y: y.clone() }
}

/// Good means "on no positive facet of `P_G`", decided as `q - e_1 ∈ P_G⁻`.
pub fn is_good(g: &BipartiteGraph, y: &WeightVector, q: &LatticePoint) -> Result<bool> {
    is_good_in(&PolytopePoints::new(g, y), q)
}

pub fn is_good_in(lattice: &PolytopePoints, q: &LatticePoint) -> Result<bool> {
    if !lattice.points.contains(q) {
        return Err(Error::NotInPolytope(q.0.clone()));
    }
    Ok(lattice.trimmed.contains(&q.shifted(1, -1)))
}

/// Index of the unique cell whose semi-polytope contains the good point `q`.
pub fn assign_owner(s: &Subdivision, y: &WeightVector, q: &LatticePoint) -> Result<usize> {
    assign_owner_in(s, y, &PolytopePoints::new(s.graph(), y), q)
}

pub fn assign_owner_in(s: &Subdivision, y: &WeightVector, lattice: &PolytopePoints, q: &LatticePoint) -> Result<usize> {
    if !is_good_in(lattice, q)? {
        return Err(Error::NotGood(q.0.clone()));
    }
    let hits: Vec<usize> =
        s.cells().iter().enumerate().filter(|(_, t)| semi_contains(t, &t_vector(t), y, q)).map(|(k, _)| k).collect();
    match hits.as_slice() {
        [k] => Ok(*k),
        _ => Err(Error::BrokenPartition { point: q.0.clone(), hits: hits.len() }),
    }
}

/// The full ownership map of a subdivision.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub lattice: PolytopePoints,
    pub semis: Vec<SemiPolytope>,
    /// Owner cell of every good point.
    pub owners: BTreeMap<LatticePoint, usize>,
}

impl Decomposition {
    pub fn owned_by(&self, cell: usize) -> impl Iterator<Item = &LatticePoint> {
        self.owners.iter().filter(move |(_, &k)| k == cell).map(|(q, _)| q)
    }
}

pub fn decompose(s: &Subdivision, y: &WeightVector) -> Result<Decomposition> {
    let lattice = PolytopePoints::new(s.graph(), y);
    let semis: Vec<_> = s.cells().iter().map(|t| semi_polytope_of_cell(t, y)).collect();
    let mut owners = BTreeMap::new();
    for q in &lattice.points {
        let hits: Vec<usize> = (0..semis.len()).filter(|&k| semis[k].contains(q)).collect();
        let good = lattice.trimmed.contains(&q.shifted(1, -1));
        match (good, hits.as_slice()) {
            (true, [k]) => {
                owners.insert(q.clone(), *k);
            }
            (false, []) => {}
            _ => return Err(Error::BrokenPartition { point: q.0.clone(), hits: hits.len() }),
        }
    }
    Ok(Decomposition { lattice, semis, owners })
}

/// `Σ_{T∈S} ∏_i (y_i)_{|T_i|-1} / (|T_i|-1)!`.
pub fn count_via_cells(s: &Subdivision, y: &WeightVector) -> BigUint {
    s.cells().iter().map(|t| semi_count(t, y)).sum()
}

/// `Σ_a ∏_i (y_i)_{a_i} / a_i!` over `G`-draconian sequences `a`.
pub fn count_via_draconian(g: &BipartiteGraph, y: &WeightVector) -> BigUint {
    CountPolynomial::new(draconian_sequences(g).into_iter().map(|d| d.0).collect()).evaluate(y)
}

/// `|P_G⁻(y) ∩ Z^n|` by enumeration.
pub fn count_brute(g: &BipartiteGraph, y: &WeightVector) -> BigUint {
    BigUint::from(trimmed_points(g, y).len())
}

/// A formal sum `Σ_a ∏_i (y_i)_{a_i} / a_i!` over a multiset of exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CountPolynomial {
    /// Exponent vectors, sorted, repeated according to multiplicity.
    pub terms: Vec<Vec<usize>>,
}

impl CountPolynomial {
    pub fn new(mut terms: Vec<Vec<usize>>) -> Self {
        terms.sort();
        CountPolynomial { terms }
    }

    pub fn evaluate(&self, y: &WeightVector) -> BigUint {
        self.terms
            .iter()
            .map(|a| {
                a.iter()
                    .enumerate()
                    .map(|(k, &ak)| raising_over_factorial(y.get(k + 1) as u64, ak as u64))
                    .product::<BigUint>()
            })
            .sum()
    }

    pub fn is_multiplicity_free(&self) -> bool {
        self.terms.windows(2).all(|w| w[0] != w[1])
    }

    /// Human-readable form, e.g. `(y1)_1/1! + (y2)_1/1!`.
    pub fn display(&self) -> String {
        let term = |a: &Vec<usize>| {
            let factors: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &ak)| ak > 0)
                .map(|(k, &ak)| format!("(y{})_{ak}/{ak}!", k + 1))
                .collect();
            if factors.is_empty() {
                "1".to_string()
            } else {
                factors.join("·")
            }
        };
        self.terms.iter().map(term).collect::<Vec<_>>().join(" + ")
    }
}

/// Where the exponent vectors of a [`CountPolynomial`] come from.
#[derive(Debug, Clone, Copy)]
pub enum TermSource<'a> {
    /// Left-degree vectors of the cells.
    Cells(&'a Subdivision),
    /// `G`-draconian sequences.
    Draconian(&'a BipartiteGraph),
}

impl<'a> From<&'a Subdivision> for TermSource<'a> {
    fn from(s: &'a Subdivision) -> Self {
        TermSource::Cells(s)
    }
}

impl<'a> From<&'a BipartiteGraph> for TermSource<'a> {
    fn from(g: &'a BipartiteGraph) -> Self {
        TermSource::Draconian(g)
    }
}

pub fn ehrhart_terms<'a>(source: impl Into<TermSource<'a>>) -> CountPolynomial {
    match source.into() {
        TermSource::Cells(s) => CountPolynomial::new(s.cells().iter().map(|t| degree_vectors(t).ld).collect()),
        TermSource::Draconian(g) => CountPolynomial::new(draconian_sequences(g).into_iter().map(|d| d.0).collect()),
    }
}

/// Two cells meeting along the common facet `T_a ∖ e_a = T_b ∖ e_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedFacet {
    pub cells: (usize, usize),
    pub facets: (FacetDescriptor, FacetDescriptor),
}

/// Pairs of cells whose trees differ by one exchange; these are exactly the
/// cells sharing a facet.
pub fn shared_facets(s: &Subdivision, y: &WeightVector) -> Vec<SharedFacet> {
    let mut by_forest: BTreeMap<Vec<Edge>, Vec<(usize, Edge)>> = BTreeMap::new();
    for (k, t) in s.cells().iter().enumerate() {
        for &e in t.edges() {
            if t.is_left_leaf(e.left) {
                continue;
            }
            let forest: Vec<Edge> = t.edges().iter().copied().filter(|&f| f != e).collect();
            by_forest.entry(forest).or_default().push((k, e));
        }
    }
    let mut out = Vec::new();
    for owners in by_forest.values() {
        for (x, &(a, ea)) in owners.iter().enumerate() {
            for &(b, eb) in &owners[x + 1..] {
                let fa = facet_descriptor(&s.cells()[a], y, ea).expect("non-leaf edge");
                let fb = facet_descriptor(&s.cells()[b], y, eb).expect("non-leaf edge");
                out.push(SharedFacet { cells: (a, b), facets: (fa, fb) });
            }
        }
    }
    out
}

/// Result of [`verify_chain`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub pass: bool,
    /// Left-degree vectors of the cells, sorted, with multiplicity.
    pub cell_ld_vectors: Vec<Vec<usize>>,
    pub draconian: Vec<Vec<usize>>,
    /// Lattice points of `P⁻_{G*}(1, …, 1)`.
    pub transposed_trimmed: Vec<Vec<usize>>,
    pub sets_equal: bool,
    #[serde(with = "serde_count")]
    pub count_cells: BigUint,
    #[serde(with = "serde_count")]
    pub count_draconian: BigUint,
    #[serde(with = "serde_count")]
    pub count_brute: BigUint,
    pub counts_equal: bool,
    /// Vectors present on one side of a comparison but not the other.
    pub diffs: Vec<String>,
}

fn describe_diff(name_a: &str, a: &[Vec<usize>], name_b: &str, b: &[Vec<usize>], out: &mut Vec<String>) {
    if a == b {
        return;
    }
    let sa: BTreeSet<_> = a.iter().collect();
    let sb: BTreeSet<_> = b.iter().collect();
    for v in sa.difference(&sb) {
        out.push(format!("{v:?} in {name_a} but not {name_b}"));
    }
    for v in sb.difference(&sa) {
        out.push(format!("{v:?} in {name_b} but not {name_a}"));
    }
    if sa == sb {
        out.push(format!("{name_a} and {name_b} differ in multiplicity"));
    }
}

/// Checks `{ld(T)} = draconian(G) = P⁻_{G*}(1,…,1) ∩ Z^m` and that the three
/// counts at `y` agree.
pub fn verify_chain(g: &BipartiteGraph, y: &WeightVector, s: &Subdivision) -> ChainReport {
    let cell_ld_vectors = ehrhart_terms(s).terms;
    let draconian = ehrhart_terms(g).terms;
    let gstar = g.transpose();
    let transposed_trimmed: Vec<Vec<usize>> = trimmed_points(&gstar, &WeightVector::ones(gstar.m()))
        .into_iter()
        .map(|p| p.0.iter().map(|&x| x as usize).collect())
        .collect();

    let mut diffs = Vec::new();
    describe_diff("cell ld-vectors", &cell_ld_vectors, "draconian sequences", &draconian, &mut diffs);
    describe_diff("draconian sequences", &draconian, "P⁻(G*) points", &transposed_trimmed, &mut diffs);
    let sets_equal = diffs.is_empty();

    let count_cells = count_via_cells(s, y);
    let count_draconian = count_via_draconian(g, y);
    let count_brute = count_brute(g, y);
    let counts_equal = count_cells == count_draconian && count_draconian == count_brute;
    if !counts_equal {
        diffs.push(format!("counts differ: cells={count_cells} draconian={count_draconian} brute={count_brute}"));
    }
    ChainReport {
        pass: sets_equal && counts_equal,
        cell_ld_vectors,
        draconian,
        transposed_trimmed,
        sets_equal,
        count_cells,
        count_draconian,
        count_brute,
        counts_equal,
        diffs,
    }
}
