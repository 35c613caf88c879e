//! Exact lattice-point engines.
//!
//! Everything here is integer arithmetic. Point sets come back as
//! [`BTreeSet`]s so iteration order is the canonical lexicographic order.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Deref;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::bigraph::{BipartiteGraph, TVector, Tree};
use crate::error::{Error, Result};

/// An integer point `(x_1, …, x_n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn zero(n: usize) -> Self {
        LatticePoint(vec![0; n])
    }

    /// Unit vector `e_j` (1-indexed).
    pub fn unit(n: usize, j: usize) -> Self {
        let mut v = vec![0; n];
        v[j - 1] = 1;
        LatticePoint(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coordinate_sum(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `self + k·e_j`.
    pub fn shifted(&self, j: usize, k: i64) -> Self {
        let mut v = self.0.clone();
        v[j - 1] += k;
        LatticePoint(v)
    }

    pub fn add(&self, other: &LatticePoint) -> Self {
        LatticePoint(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Deref for LatticePoint {
    type Target = [i64];

    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for LatticePoint {
    fn from(v: Vec<i64>) -> Self {
        LatticePoint(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Dilation factors `y_1, …, y_m`, all at least 1.
///
/// A summand with `y_i = 0` contributes nothing; model it by deleting left
/// vertex `i` from the graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(y: Vec<i64>) -> Result<Self> {
        if let Some((k, &v)) = y.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(Error::NonPositiveWeight { index: k + 1, value: v });
        }
        Ok(WeightVector(y))
    }

    /// Checks the length against `g` as well.
    pub fn for_graph(g: &BipartiteGraph, y: Vec<i64>) -> Result<Self> {
        if y.len() != g.m() {
            return Err(Error::WeightLength { expected: g.m(), got: y.len() });
        }
        Self::new(y)
    }

    pub fn ones(m: usize) -> Self {
        WeightVector(vec![1; m])
    }

    /// `y_i` for 1-indexed `i`.
    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl TryFrom<Vec<i64>> for WeightVector {
    type Error = Error;

    fn try_from(y: Vec<i64>) -> Result<Self> {
        WeightVector::new(y)
    }
}

impl From<WeightVector> for Vec<i64> {
    fn from(y: WeightVector) -> Self {
        y.0
    }
}

/// A lattice point of a fine cell together with its summand decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPoint {
    pub point: LatticePoint,
    /// `p_i ∈ y_i Δ_{T_i}` for each left vertex, in order.
    pub parts: Vec<LatticePoint>,
}

/// Raising power `(y)_a = y (y+1) ⋯ (y+a-1)`, with `(y)_0 = 1`.
pub fn raising_power(y: u64, a: u64) -> BigUint {
    (0..a).fold(BigUint::one(), |acc, k| acc * (y + k))
}

pub fn factorial(a: u64) -> BigUint {
    raising_power(1, a)
}

/// `(y)_a / a!`, computed factor by factor; every prefix is itself an
/// integer `(y)_k / k!`, so each division is exact.
pub fn raising_over_factorial(y: u64, a: u64) -> BigUint {
    let mut acc = BigUint::one();
    for k in 0..a {
        acc *= y + k;
        let divisor = BigUint::from(k + 1);
        assert!((&acc % &divisor).is_zero(), "inexact division in (y)_a/a!");
        acc /= divisor;
    }
    acc
}

/// Lattice points of `y·Δ_I` in `Z^n`: nonnegative vectors supported on `I`
/// with coordinate sum `y`.
pub fn simplex_points(support: &[usize], y: i64, n: usize) -> Result<BTreeSet<LatticePoint>> {
    if support.is_empty() {
        return Err(Error::EmptySupport);
    }
    let mut out = BTreeSet::new();
    let mut current = vec![0i64; n];
    fill_simplex(support, y, &mut current, &mut out);
    Ok(out)
}

fn fill_simplex(support: &[usize], remaining: i64, current: &mut [i64], out: &mut BTreeSet<LatticePoint>) {
    let (&last, rest) = support.split_last().expect("nonempty support");
    if rest.is_empty() {
        current[last - 1] = remaining;
        out.insert(LatticePoint(current.to_vec()));
        current[last - 1] = 0;
        return;
    }
    for k in 0..=remaining {
        current[last - 1] = k;
        fill_simplex(rest, remaining - k, current, out);
    }
    current[last - 1] = 0;
}

/// Pairwise sums `{a + b : a ∈ lhs, b ∈ rhs}`.
pub fn set_sum(lhs: &BTreeSet<LatticePoint>, rhs: &BTreeSet<LatticePoint>) -> BTreeSet<LatticePoint> {
    lhs.iter().flat_map(|a| rhs.iter().map(move |b| a.add(b))).collect()
}

/// Lattice points of `Σ_k y_k Δ_{S_k}` by iterated set sums.
pub fn minkowski_sum_points<'a>(
    n: usize,
    summands: impl IntoIterator<Item = (&'a [usize], i64)>,
) -> Result<BTreeSet<LatticePoint>> {
    let mut acc = BTreeSet::from([LatticePoint::zero(n)]);
    for (support, y) in summands {
        acc = set_sum(&acc, &simplex_points(support, y, n)?);
    }
    Ok(acc)
}

/// `P_G(y) ∩ Z^n`, enumerated as `{Σ p_i : p_i ∈ y_i Δ_{I_i}}`.
pub fn minkowski_points(g: &BipartiteGraph, y: &WeightVector) -> BTreeSet<LatticePoint> {
    assert_eq!(y.len(), g.m(), "weight vector length");
    minkowski_sum_points(g.n(), (1..=g.m()).map(|i| (g.neighborhood(i), y.get(i))))
        .expect("graph neighborhoods are nonempty")
}

/// Lattice points of `∏_T = Σ y_i Δ_{T_i}`.
pub fn cell_points(t: &Tree, y: &WeightVector) -> BTreeSet<LatticePoint> {
    assert_eq!(y.len(), t.m(), "weight vector length");
    minkowski_sum_points(t.n(), (1..=t.m()).map(|i| (t.neighbors(i), y.get(i))))
        .expect("tree neighborhoods are nonempty")
}

/// Lattice points of the trimmed polytope: `p` with `p + e_j ∈ P_G` for all `j`.
pub fn trimmed_points(g: &BipartiteGraph, y: &WeightVector) -> BTreeSet<LatticePoint> {
    trimmed_from(g.n(), &minkowski_points(g, y))
}

fn trimmed_from(n: usize, points: &BTreeSet<LatticePoint>) -> BTreeSet<LatticePoint> {
    points.iter().map(|q| q.shifted(1, -1)).filter(|p| (1..=n).all(|j| points.contains(&p.shifted(j, 1)))).collect()
}

/// `P_G(y) ∩ Z^n` and `P_G⁻(y) ∩ Z^n`, computed once and reused.
#[derive(Debug, Clone)]
pub struct PolytopePoints {
    pub points: BTreeSet<LatticePoint>,
    pub trimmed: BTreeSet<LatticePoint>,
}

impl PolytopePoints {
    pub fn new(g: &BipartiteGraph, y: &WeightVector) -> Self {
        let points = minkowski_points(g, y);
        let trimmed = trimmed_from(g.n(), &points);
        PolytopePoints { points, trimmed }
    }
}

/// Decomposes `q` as `p_1 + … + p_m` with `p_i ∈ y_i Δ_{T_i}` by peeling
/// leaves off `T`. A left leaf sends its whole remaining budget to its only
/// neighbor; a right leaf takes all of its remaining coordinate from its only
/// neighbor. Every step is forced, so the result is unique when it exists.
pub fn cell_decompose(t: &Tree, y: &WeightVector, q: &LatticePoint) -> Option<CellPoint> {
    let (m, n) = (t.m(), t.n());
    if q.dim() != n || q.coordinate_sum() != y.total() {
        return None;
    }
    let mut residual = q.0.clone();
    let mut budget = y.as_slice().to_vec();
    let mut parts = vec![vec![0i64; n]; m];
    let mut alive = vec![true; t.edges().len()];
    let mut left_deg: Vec<usize> = (1..=m).map(|i| t.neighbors(i).len()).collect();
    let mut right_deg: Vec<usize> = (1..=n).map(|j| t.right_neighbors(j).len()).collect();

    for _ in 0..t.edges().len() {
        let live =
            |alive: &[bool]| t.edges().iter().zip(alive).filter(|(_, &a)| a).map(|(e, _)| *e).collect::<Vec<_>>();
        let edges = live(&alive);
        let (k, e, from_left) = edges
            .iter()
            .find_map(|e| (left_deg[e.left - 1] == 1).then_some((*e, true)))
            .or_else(|| edges.iter().find_map(|e| (right_deg[e.right - 1] == 1).then_some((*e, false))))
            .map(|(e, l)| (t.edges().binary_search(&e).unwrap(), e, l))
            .expect("a forest with edges has a leaf");
        let (i, j) = (e.left - 1, e.right - 1);
        let amount = if from_left { budget[i] } else { residual[j] };
        if amount < 0 || amount > budget[i] {
            return None;
        }
        parts[i][j] += amount;
        budget[i] -= amount;
        residual[j] -= amount;
        alive[k] = false;
        left_deg[i] -= 1;
        right_deg[j] -= 1;
    }
    if residual.iter().any(|&r| r != 0) || budget.iter().any(|&b| b != 0) {
        return None;
    }
    Some(CellPoint { point: q.clone(), parts: parts.into_iter().map(LatticePoint).collect() })
}

/// Membership in the semi-polytope `Σ y_i Δ*_{T_i, t_i}`: `q` lies in the cell
/// and every part `p_i` is strictly positive at `t_i`.
pub fn semi_contains(t: &Tree, tv: &TVector, y: &WeightVector, q: &LatticePoint) -> bool {
    cell_decompose(t, y, q).is_some_and(|cp| cp.parts.iter().enumerate().all(|(k, p)| p[tv.get(k + 1) - 1] > 0))
}

/// `∏_i (y_i)_{|T_i|-1} / (|T_i|-1)!`, the number of lattice points of the
/// semi-polytope of `T`.
pub fn semi_count(t: &Tree, y: &WeightVector) -> BigUint {
    (1..=t.m()).map(|i| raising_over_factorial(y.get(i) as u64, t.neighbors(i).len() as u64 - 1)).product()
}
