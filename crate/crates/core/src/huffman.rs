//! Generating tuples, the generalized Huffman algorithm and weak majorization.
//!
//! Weight comparisons use the crate-wide relative tolerance
//! [`WEIGHT_TOLERANCE`]: `a` and `b` tie when
//! `|a − b| ≤ 1e-9 · max(1, |a|, |b|)`. Integer-valued weights therefore
//! compare exactly. Remaining ties are broken by ascending vertex id; the
//! `all_huffman_trees` mode instead follows every tied branch.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::oracle::prufer_decode;
use crate::error::{Error, Result};
use crate::indices::vertex_weighted_wiener;
use crate::tree::{check_weights, ChemicalTree, DirectedTree, VertexWeightedTree, WEIGHT_TOLERANCE};

/// Largest order accepted by the exhaustive search over `WT(μ, d)`.
pub const BRUTE_FORCE_MAX_ORDER: usize = 12;

pub fn weights_tie(a: f64, b: f64) -> bool {
    (a - b).abs() <= WEIGHT_TOLERANCE * 1f64.max(a.abs()).max(b.abs())
}

/// Three-way weight comparison honouring the tie tolerance.
pub fn compare_weights(a: f64, b: f64) -> Ordering {
    if weights_tie(a, b) {
        Ordering::Equal
    } else if a < b {
        Ordering::Less
    } else {
        Ordering::Greater
    }
}

/// Vertex weights and prescribed degrees on vertices `0..n`, with degrees
/// summing to `2(n − 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratingTuple {
    weights: Vec<f64>,
    degrees: Vec<usize>,
}

impl GeneratingTuple {
    pub fn new(weights: Vec<f64>, degrees: Vec<usize>) -> Result<Self> {
        if weights.len() != degrees.len() {
            return Err(Error::LengthMismatch {
                left: weights.len(),
                right: degrees.len(),
            });
        }
        let n = weights.len();
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "a generating tuple needs at least 2 vertices, got {n}"
            )));
        }
        check_weights(&weights)?;
        if let Some(v) = degrees.iter().position(|&d| d == 0) {
            return Err(Error::InvalidArgument(format!("vertex {v} has degree 0")));
        }
        let sum: usize = degrees.iter().sum();
        if sum != 2 * (n - 1) {
            return Err(Error::DegreeIdentity {
                sum,
                expected: 2 * (n - 1),
            });
        }
        Ok(GeneratingTuple { weights, degrees })
    }

    pub fn order(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Vertices of prescribed degree 1.
    pub fn pendants(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degrees[v] == 1).collect()
    }

    /// Vertices of prescribed degree at least 2.
    pub fn internals(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.degrees[v] > 1).collect()
    }

    /// Whether a labelled tree realises exactly these degrees.
    pub fn realised_by(&self, tree: &ChemicalTree) -> bool {
        tree.order() == self.order() && (0..self.order()).all(|v| tree.degree(v) == self.degrees[v])
    }
}

/// Pendant weights are positive and internal weights never decrease as the
/// prescribed degree grows.
pub fn is_degree_monotone(gt: &GeneratingTuple) -> bool {
    if gt.pendants().iter().any(|&w| gt.weight(w) <= 0.0) {
        return false;
    }
    let internals = gt.internals();
    internals.iter().all(|&m| {
        internals.iter().all(|&m2| {
            gt.degree(m) >= gt.degree(m2) || compare_weights(gt.weight(m), gt.weight(m2)) != Ordering::Greater
        })
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuffmanStep {
    pub merged: usize,
    pub attached: Vec<usize>,
    pub updated_weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuffmanTrace {
    pub steps: Vec<HuffmanStep>,
    pub terminal: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HuffmanResult {
    pub tree: VertexWeightedTree,
    pub directed: DirectedTree,
    pub trace: HuffmanTrace,
}

impl HuffmanResult {
    /// Edge list with `u < v`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.tree.tree().edges()
    }
}

/// Mutable state of one run of the algorithm.
#[derive(Clone)]
struct HuffmanState {
    weight: Vec<f64>,
    pendant: Vec<bool>,
    open: Vec<bool>,
    edges: Vec<(usize, usize)>,
    steps: Vec<HuffmanStep>,
}

impl HuffmanState {
    fn start(gt: &GeneratingTuple) -> Self {
        HuffmanState {
            weight: gt.weights.clone(),
            pendant: gt.degrees.iter().map(|&d| d == 1).collect(),
            open: gt.degrees.iter().map(|&d| d > 1).collect(),
            edges: Vec::with_capacity(gt.order() - 1),
            steps: Vec::new(),
        }
    }

    fn open_count(&self) -> usize {
        self.open.iter().filter(|&&o| o).count()
    }

    /// Internal vertices eligible for the next merge: least current weight,
    /// then least prescribed degree. Ascending by id.
    fn merge_candidates(&self, gt: &GeneratingTuple) -> Vec<usize> {
        let open: Vec<usize> = (0..gt.order()).filter(|&v| self.open[v]).collect();
        let min_w = open
            .iter()
            .map(|&v| self.weight[v])
            .min_by(|a, b| a.total_cmp(b))
            .expect("at least one open vertex");
        let lightest: Vec<usize> = open.into_iter().filter(|&v| weights_tie(self.weight[v], min_w)).collect();
        let min_d = lightest.iter().map(|&v| gt.degree(v)).min().unwrap();
        lightest.into_iter().filter(|&v| gt.degree(v) == min_d).collect()
    }

    /// Current pendants sorted by (weight, id).
    fn sorted_pendants(&self) -> Vec<usize> {
        let mut w: Vec<usize> = (0..self.pendant.len()).filter(|&v| self.pendant[v]).collect();
        w.sort_by(|&a, &b| compare_weights(self.weight[a], self.weight[b]).then(a.cmp(&b)));
        w
    }

    fn merge(&mut self, m: usize, attached: Vec<usize>, last: bool) {
        for &w in &attached {
            self.edges.push((m, w));
            self.pendant[w] = false;
            self.weight[m] += self.weight[w];
        }
        self.open[m] = false;
        if !last {
            self.pendant[m] = true;
        }
        self.steps.push(HuffmanStep {
            merged: m,
            attached,
            updated_weight: self.weight[m],
        });
    }

    fn finish(self, gt: &GeneratingTuple, terminal: usize) -> Result<HuffmanResult> {
        build_result(gt, &self.edges, terminal, self.steps)
    }
}

fn build_result(
    gt: &GeneratingTuple,
    edges: &[(usize, usize)],
    terminal: usize,
    steps: Vec<HuffmanStep>,
) -> Result<HuffmanResult> {
    let max_degree = gt.degrees.iter().copied().max().unwrap_or(1);
    let tree = ChemicalTree::from_edges(gt.order(), edges, max_degree)?;
    debug_assert!(gt.realised_by(&tree));
    let tree = VertexWeightedTree::new(tree, gt.weights.clone())?;
    let directed = tree.orient(terminal);
    Ok(HuffmanResult {
        tree,
        directed,
        trace: HuffmanTrace { steps, terminal },
    })
}

fn single_edge(gt: &GeneratingTuple) -> Result<HuffmanResult> {
    build_result(gt, &[(0, 1)], 1, Vec::new())
}

/// Runs the generalized Huffman algorithm with id-based tie-breaking.
///
/// Each step takes the lightest open internal vertex `m` (least prescribed
/// degree among equally light ones), hangs the `d(m) − 1` lightest current
/// pendants from it, adds their weight to `m`, and turns `m` into a pendant.
/// The last internal vertex receives every remaining pendant and becomes the
/// terminal of the directed tree.
pub fn generalized_huffman(gt: &GeneratingTuple) -> Result<HuffmanResult> {
    if gt.order() == 2 {
        return single_edge(gt);
    }
    let mut st = HuffmanState::start(gt);
    loop {
        let m = st.merge_candidates(gt)[0];
        let pendants = st.sorted_pendants();
        if st.open_count() == 1 {
            if pendants.len() != gt.degree(m) {
                return Err(Error::Infeasible(format!(
                    "final vertex {m} needs {} neighbours but {} pendants remain",
                    gt.degree(m),
                    pendants.len()
                )));
            }
            st.merge(m, pendants, true);
            return st.finish(gt, m);
        }
        let need = gt.degree(m) - 1;
        if pendants.len() < need + 1 {
            return Err(Error::Infeasible(format!(
                "vertex {m} needs {need} pendants but only {} are available",
                pendants.len()
            )));
        }
        st.merge(m, pendants[..need].to_vec(), false);
    }
}

/// Every tree the algorithm can output when ties are resolved in all
/// possible ways, deduplicated by edge set, in depth-first order (the first
/// entry equals [`generalized_huffman`]'s output).
pub fn all_huffman_trees(gt: &GeneratingTuple) -> Result<Vec<HuffmanResult>> {
    if gt.order() == 2 {
        return Ok(vec![single_edge(gt)?]);
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    explore(gt, HuffmanState::start(gt), &mut out, &mut seen)?;
    Ok(out)
}

fn explore(
    gt: &GeneratingTuple,
    st: HuffmanState,
    out: &mut Vec<HuffmanResult>,
    seen: &mut BTreeSet<Vec<(usize, usize)>>,
) -> Result<()> {
    let pendants = st.sorted_pendants();
    if st.open_count() == 1 {
        let m = st.merge_candidates(gt)[0];
        if pendants.len() != gt.degree(m) {
            return Err(Error::Infeasible(format!("final vertex {m} has the wrong number of pendants")));
        }
        let mut st = st;
        st.merge(m, pendants, true);
        let key = normalized(&st.edges);
        if seen.insert(key) {
            out.push(st.finish(gt, m)?);
        }
        return Ok(());
    }
    for m in st.merge_candidates(gt) {
        let need = gt.degree(m) - 1;
        if pendants.len() < need + 1 {
            return Err(Error::Infeasible(format!("vertex {m} lacks pendants")));
        }
        let threshold = st.weight[pendants[need - 1]];
        let forced: Vec<usize> = pendants
            .iter()
            .copied()
            .filter(|&w| compare_weights(st.weight[w], threshold) == Ordering::Less)
            .collect();
        let tied: Vec<usize> = pendants
            .iter()
            .copied()
            .filter(|&w| weights_tie(st.weight[w], threshold))
            .collect();
        for extra in itertools::Itertools::combinations(tied.iter().copied(), need - forced.len()) {
            let mut attached = forced.clone();
            attached.extend(extra);
            let mut next = st.clone();
            next.merge(m, attached, false);
            explore(gt, next, out, seen)?;
        }
    }
    Ok(())
}

fn normalized(edges: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut e: Vec<_> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    e.sort_unstable();
    e
}

pub fn subordinate_weights(dt: &DirectedTree) -> Vec<f64> {
    dt.subordinate_weights()
}

/// Vertex-weighted Wiener index of a directed tree as
/// `Σ_{v ≠ t} f(v)·(μ̄ − f(v))`.
pub fn vwwi_directed(dt: &DirectedTree) -> f64 {
    let f = dt.subordinate_weights();
    let total = f[dt.terminal()];
    (0..dt.order())
        .filter(|&v| v != dt.terminal())
        .map(|v| f[v] * (total - f[v]))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MajorizationRelation {
    Strict,
    WeakEqualSorted,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MajorizationVerdict {
    pub relation: MajorizationRelation,
    /// One-based prefix length `k` at which `Σ_{i≤k} x_[i] ≤ Σ_{i≤k} y_[i]`
    /// first fails; present only for incomparable pairs.
    pub prefix_gap: Option<usize>,
}

impl MajorizationVerdict {
    /// `x ⪰ y` holds (strictly or with equal sorted vectors).
    pub fn holds(&self) -> bool {
        self.relation != MajorizationRelation::Incomparable
    }

    pub fn is_strict(&self) -> bool {
        self.relation == MajorizationRelation::Strict
    }
}

/// Tests whether `x` weakly majorizes `y`: every ascending prefix sum of `x`
/// is at most the matching prefix sum of `y`.
pub fn weak_majorize(x: &[f64], y: &[f64]) -> Result<MajorizationVerdict> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    check_weights(x)?;
    check_weights(y)?;
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let (mut px, mut py) = (0.0, 0.0);
    for k in 0..xs.len() {
        px += xs[k];
        py += ys[k];
        if compare_weights(px, py) == Ordering::Greater {
            return Ok(MajorizationVerdict {
                relation: MajorizationRelation::Incomparable,
                prefix_gap: Some(k + 1),
            });
        }
    }
    let equal = xs.iter().zip(&ys).all(|(a, b)| weights_tie(*a, *b));
    Ok(MajorizationVerdict {
        relation: if equal {
            MajorizationRelation::WeakEqualSorted
        } else {
            MajorizationRelation::Strict
        },
        prefix_gap: None,
    })
}

/// Every internal vertex other than the terminal carries at most half of the
/// total weight in its subordinate group.
pub fn is_proper(dt: &DirectedTree) -> bool {
    let f = dt.subordinate_weights();
    let half = f[dt.terminal()] / 2.0;
    (0..dt.order())
        .filter(|&v| v != dt.terminal() && dt.degree(v) > 1)
        .all(|v| compare_weights(f[v], half) != Ordering::Greater)
}

/// First violation of the Huffman monotonicity property: for arcs `v → m`
/// and `v' → m'` with `m ≠ m'`, `f(v) < f(v')` must imply `f(m) < f(m')`.
/// Returns the offending `(v, m, v', m')`.
pub fn monotonicity_violation(dt: &DirectedTree) -> Option<(usize, usize, usize, usize)> {
    let f = dt.subordinate_weights();
    let arcs = dt.arcs();
    for &(v, m) in &arcs {
        for &(v2, m2) in &arcs {
            if m != m2
                && compare_weights(f[v], f[v2]) == Ordering::Less
                && compare_weights(f[m], f[m2]) != Ordering::Less
            {
                return Some((v, m, v2, m2));
            }
        }
    }
    None
}

/// Number of internal vertices of an extremal tuple of order `n`.
pub fn extremal_internal_count(n: usize, max_degree: usize) -> usize {
    if n <= 2 {
        0
    } else {
        (n - 2).div_ceil(max_degree - 1)
    }
}

/// Degree of the one internal vertex that may fall short of `max_degree`.
pub fn exceptional_degree(n: usize, max_degree: usize) -> Option<usize> {
    let k = extremal_internal_count(n, max_degree);
    (k > 0).then(|| n - 2 + k - (k - 1) * max_degree)
}

/// The extremal generating tuple: the heaviest vertices outside `forced`
/// become internal with degree `max_degree`, except the lightest of them,
/// which takes whatever degree the degree identity leaves. Ties in weight
/// are broken by ascending id for selection; the exceptional vertex is the
/// last selected among the lightest.
pub fn extremal_tuple(weights: &[f64], forced: &[usize], max_degree: usize) -> Result<GeneratingTuple> {
    Ok(extremal_tuples_impl(weights, forced, max_degree, false)?.remove(0))
}

/// Every extremal tuple obtainable by resolving weight ties differently.
pub fn extremal_tuples(weights: &[f64], forced: &[usize], max_degree: usize) -> Result<Vec<GeneratingTuple>> {
    extremal_tuples_impl(weights, forced, max_degree, true)
}

fn extremal_tuples_impl(
    weights: &[f64],
    forced: &[usize],
    max_degree: usize,
    all: bool,
) -> Result<Vec<GeneratingTuple>> {
    let n = weights.len();
    if max_degree < 2 {
        return Err(Error::InvalidArgument("max degree must be at least 2".into()));
    }
    if n < 2 {
        return Err(Error::InvalidArgument("need at least two vertices".into()));
    }
    check_weights(weights)?;
    if let Some(&v) = forced.iter().find(|&&v| v >= n) {
        return Err(Error::UnknownVertex { vertex: v, order: n });
    }
    let k = extremal_internal_count(n, max_degree);
    let mut eligible: Vec<usize> = (0..n).filter(|v| !forced.contains(v)).collect();
    if eligible.len() < k {
        return Err(Error::Infeasible(format!(
            "{k} internal vertices are needed but only {} vertices may be internal",
            eligible.len()
        )));
    }
    if k == 0 {
        return Ok(vec![GeneratingTuple::new(weights.to_vec(), vec![1; n])?]);
    }
    let e = exceptional_degree(n, max_degree).unwrap();
    eligible.sort_by(|&a, &b| compare_weights(weights[b], weights[a]).then(a.cmp(&b)));

    // Vertices strictly heavier than the k-th are always internal; those
    // tied with it fill the remaining places in every possible way.
    let boundary = weights[eligible[k - 1]];
    let sure: Vec<usize> = eligible
        .iter()
        .copied()
        .filter(|&v| compare_weights(weights[v], boundary) == Ordering::Greater)
        .collect();
    let tied: Vec<usize> = eligible.iter().copied().filter(|&v| weights_tie(weights[v], boundary)).collect();
    let selections: Vec<Vec<usize>> = if all {
        itertools::Itertools::combinations(tied.iter().copied(), k - sure.len())
            .map(|extra| sure.iter().copied().chain(extra).collect())
            .collect()
    } else {
        vec![eligible[..k].to_vec()]
    };

    let mut out = Vec::new();
    for internal in selections {
        let lightest = internal
            .iter()
            .map(|&v| weights[v])
            .min_by(|a, b| a.total_cmp(b))
            .unwrap();
        let exceptional: Vec<usize> = if e == max_degree {
            vec![*internal.last().unwrap()]
        } else if all {
            internal.iter().copied().filter(|&v| weights_tie(weights[v], lightest)).collect()
        } else {
            vec![*internal.last().unwrap()]
        };
        for u in exceptional {
            let mut degrees = vec![1; n];
            for &v in &internal {
                degrees[v] = max_degree;
            }
            degrees[u] = e;
            let gt = GeneratingTuple::new(weights.to_vec(), degrees)?;
            if !out.contains(&gt) {
                out.push(gt);
            }
        }
    }
    Ok(out)
}

/// Every labelled tree in `WT(μ, d)`, as sorted edge lists, by running over
/// all Prüfer sequences in which vertex `v` occurs `d(v) − 1` times.
pub fn weighted_trees_brute(gt: &GeneratingTuple) -> Result<Vec<Vec<(usize, usize)>>> {
    let n = gt.order();
    if n > BRUTE_FORCE_MAX_ORDER {
        return Err(Error::OrderOutOfRange {
            order: n,
            min: 2,
            max: BRUTE_FORCE_MAX_ORDER,
        });
    }
    if n == 2 {
        return Ok(vec![vec![(0, 1)]]);
    }
    let mut remaining: Vec<usize> = gt.degrees.iter().map(|d| d - 1).collect();
    let mut seq = vec![0u8; n - 2];
    let mut out = Vec::new();
    let mut edges = [(0u8, 0u8); 16];
    multiset_sequences(&mut remaining, &mut seq, 0, &mut |s| {
        prufer_decode(n, s, &mut edges);
        let mut e: Vec<(usize, usize)> = edges[..n - 1]
            .iter()
            .map(|&(a, b)| ((a.min(b)) as usize, (a.max(b)) as usize))
            .collect();
        e.sort_unstable();
        out.push(e);
    });
    Ok(out)
}

fn multiset_sequences(remaining: &mut [usize], seq: &mut [u8], pos: usize, visit: &mut impl FnMut(&[u8])) {
    if pos == seq.len() {
        visit(seq);
        return;
    }
    for v in 0..remaining.len() {
        if remaining[v] > 0 {
            remaining[v] -= 1;
            seq[pos] = v as u8;
            multiset_sequences(remaining, seq, pos + 1, visit);
            remaining[v] += 1;
        }
    }
}

/// Edge list of a labelled tree, `u < v`, ascending.
pub type EdgeList = Vec<(usize, usize)>;

/// Least vertex-weighted Wiener index over `WT(μ, d)` together with every
/// labelled tree attaining it.
pub fn brute_force_minimum(gt: &GeneratingTuple) -> Result<(f64, Vec<EdgeList>)> {
    let max_degree = gt.degrees.iter().copied().max().unwrap_or(1);
    let mut best = f64::INFINITY;
    let mut argmin: Vec<Vec<(usize, usize)>> = Vec::new();
    for edges in weighted_trees_brute(gt)? {
        let tree = ChemicalTree::from_edges(gt.order(), &edges, max_degree)?;
        let value = vertex_weighted_wiener(&VertexWeightedTree::new(tree, gt.weights.clone())?);
        if argmin.is_empty() {
            best = value;
            argmin.push(edges);
            continue;
        }
        match compare_weights(value, best) {
            Ordering::Less => {
                best = value;
                argmin = vec![edges];
            }
            Ordering::Equal => argmin.push(edges),
            Ordering::Greater => {}
        }
    }
    Ok((best, argmin))
}

/// Result of one named randomized property.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyOutcome {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    /// First counterexample in trial order.
    pub witness: Option<String>,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub seed: u64,
    pub trials: usize,
    pub outcomes: Vec<PropertyOutcome>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(PropertyOutcome::passed)
    }
}

/// Independent RNG stream for one trial.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Runs `check` over `trials` independent trials in parallel and keeps the
/// first failure in trial order.
fn run_property<F>(name: &str, seed: u64, salt: u64, trials: usize, check: F) -> PropertyOutcome
where
    F: Fn(&mut ChaCha8Rng) -> std::result::Result<(), String> + Sync,
{
    let results: Vec<std::result::Result<(), String>> = (0..trials)
        .into_par_iter()
        .map(|t| check(&mut trial_rng(seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15), t)))
        .collect();
    let failures = results.iter().filter(|r| r.is_err()).count();
    let witness = results.into_iter().find_map(|r| r.err());
    PropertyOutcome {
        name: name.to_string(),
        trials,
        failures,
        witness,
    }
}

/// Random degree-monotone tuple of order in `min_order..=max_order`, degrees
/// at most 4, small integer weights so that ties occur.
pub fn random_degree_monotone_tuple(rng: &mut impl Rng, min_order: usize, max_order: usize) -> GeneratingTuple {
    let n = rng.gen_range(min_order..=max_order);
    let mut degrees = vec![1usize; n];
    let cap = 4.min(n - 1);
    let mut extra = n - 2;
    while extra > 0 {
        let v = rng.gen_range(0..n);
        if degrees[v] < cap {
            degrees[v] += 1;
            extra -= 1;
        }
    }
    let mut weights = vec![0.0; n];
    for v in 0..n {
        if degrees[v] == 1 {
            weights[v] = rng.gen_range(1..=5) as f64;
        }
    }
    // Internal weights: sorted draws assigned in order of degree.
    let mut internals: Vec<usize> = (0..n).filter(|&v| degrees[v] > 1).collect();
    let mut draws: Vec<u32> = (0..internals.len()).map(|_| rng.gen_range(0..=5)).collect();
    draws.sort_unstable();
    internals.shuffle(rng);
    internals.sort_by_key(|&v| degrees[v]);
    for (v, w) in internals.into_iter().zip(draws) {
        weights[v] = w as f64;
    }
    GeneratingTuple::new(weights, degrees).expect("construction satisfies the degree identity")
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x}")).collect();
    format!("({})", parts.join(","))
}

fn fmt_tuple(gt: &GeneratingTuple) -> String {
    let d: Vec<String> = gt.degrees.iter().map(|x| x.to_string()).collect();
    format!("weights={} degrees=({})", fmt_vec(&gt.weights), d.join(","))
}

/// Moves weight `b` from a smaller entry to a larger one, `steps` times,
/// keeping entries within `[0, cap]`. The result strictly majorizes the
/// input whenever at least one move happened.
fn spread(rng: &mut impl Rng, z: &mut [f64], steps: usize, cap: f64) -> usize {
    let mut moved = 0;
    for _ in 0..steps {
        let i = rng.gen_range(0..z.len());
        let j = rng.gen_range(0..z.len());
        if i == j {
            continue;
        }
        let (hi, lo) = if z[i] >= z[j] { (i, j) } else { (j, i) };
        let room = (cap - z[hi]).min(z[lo]).floor() as i64;
        if room >= 1 {
            let b = rng.gen_range(1..=room) as f64;
            z[hi] += b;
            z[lo] -= b;
            moved += 1;
        }
    }
    moved
}

/// A vector that weakly majorizes `y` (possibly with equal sorted form),
/// built from pointwise decreases and spreading moves, then shuffled.
fn majorizing(rng: &mut impl Rng, y: &[f64], cap: f64) -> Vec<f64> {
    let mut x = y.to_vec();
    let steps = rng.gen_range(0..4);
    spread(rng, &mut x, steps, cap);
    for v in x.iter_mut() {
        if rng.gen_bool(0.3) {
            *v -= rng.gen_range(0..=(*v as i64)) as f64;
        }
    }
    x.shuffle(rng);
    x
}

fn shift_trial(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let b = rng.gen_range(1..=5) as f64;
    let l = rng.gen_range(1..=6);
    let k = rng.gen_range(0..=l);
    let ys: Vec<f64> = (0..l).map(|_| b + rng.gen_range(0..=10) as f64).collect();
    let xs: Vec<f64> = (0..k).map(|i| ys[i] + rng.gen_range(0..=10) as f64).collect();
    let x: Vec<f64> = xs.iter().chain(&ys).copied().collect();
    let y: Vec<f64> = xs.iter().map(|v| v + b).chain(ys.iter().map(|v| v - b)).collect();
    let verdict = weak_majorize(&y, &x).map_err(|e| e.to_string())?;
    if verdict.is_strict() {
        Ok(())
    } else {
        Err(format!("b={b} k={k} x={} y={} verdict={verdict:?}", fmt_vec(&x), fmt_vec(&y)))
    }
}

fn concatenation_trial(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let p = rng.gen_range(1..=5);
    let q = rng.gen_range(1..=5);
    let x: Vec<f64> = (0..p).map(|_| rng.gen_range(0..=10) as f64).collect();
    let y = majorizing(rng, &x, 20.0);
    let x2: Vec<f64> = (0..q).map(|_| rng.gen_range(1..=10) as f64).collect();
    let y2 = loop {
        let cand = majorizing(rng, &x2, 20.0);
        if weak_majorize(&cand, &x2).map(|v| v.is_strict()).unwrap_or(false) {
            break cand;
        }
    };
    if !weak_majorize(&y, &x).map_err(|e| e.to_string())?.holds() {
        return Err(format!("construction failed: y={} x={}", fmt_vec(&y), fmt_vec(&x)));
    }
    let lhs: Vec<f64> = y.iter().chain(&y2).copied().collect();
    let rhs: Vec<f64> = x.iter().chain(&x2).copied().collect();
    let verdict = weak_majorize(&lhs, &rhs).map_err(|e| e.to_string())?;
    if verdict.is_strict() {
        Ok(())
    } else {
        Err(format!("(y,y')={} (x,x')={} verdict={verdict:?}", fmt_vec(&lhs), fmt_vec(&rhs)))
    }
}

fn concave_sum_trial(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let total = 2.0 * rng.gen_range(2..=20) as f64;
    let half = total / 2.0;
    let p = rng.gen_range(1..=6);
    let y: Vec<f64> = (0..p).map(|_| rng.gen_range(0..=(half as i64)) as f64).collect();
    let x = if rng.gen_bool(0.2) {
        let mut x = y.clone();
        x.shuffle(rng);
        x
    } else {
        majorizing(rng, &y, half)
    };
    let verdict = weak_majorize(&x, &y).map_err(|e| e.to_string())?;
    if !verdict.holds() {
        return Err(format!("construction failed: x={} y={}", fmt_vec(&x), fmt_vec(&y)));
    }
    let chi = |v: &f64| v * (total - v);
    let sx: f64 = x.iter().map(chi).sum();
    let sy: f64 = y.iter().map(chi).sum();
    let ok = match verdict.relation {
        MajorizationRelation::Strict => sx < sy,
        _ => sx == sy,
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "total={total} x={} y={} sum_chi(x)={sx} sum_chi(y)={sy}",
            fmt_vec(&x),
            fmt_vec(&y)
        ))
    }
}

fn monotonicity_trial(rng: &mut ChaCha8Rng) -> std::result::Result<(), String> {
    let gt = random_degree_monotone_tuple(rng, 4, 9);
    let h = generalized_huffman(&gt).map_err(|e| e.to_string())?;
    if let Some(w) = monotonicity_violation(&h.directed) {
        return Err(format!("{} edges={:?} violation={w:?}", fmt_tuple(&gt), h.edges()));
    }
    if !is_proper(&h.directed) {
        return Err(format!("{} edges={:?} is not proper", fmt_tuple(&gt), h.edges()));
    }
    Ok(())
}

/// Randomized checks of the weak-majorization properties and of Huffman tree
/// monotonicity. Each property runs `trials` seed-pinned trials.
pub fn majorization_property_suite(seed: u64, trials: usize) -> PropertyReport {
    PropertyReport {
        seed,
        trials,
        outcomes: vec![
            run_property("shift_majorization", seed, 2, trials, shift_trial),
            run_property("concatenation_majorization", seed, 3, trials, concatenation_trial),
            run_property("concave_sum_majorization", seed, 4, trials, concave_sum_trial),
            run_property("huffman_monotone_and_proper", seed, 15, trials, monotonicity_trial),
        ],
    }
}

/// Checks on random degree-monotone tuples of order `4..=max_order` that the
/// Huffman tree attains the brute-force minimum over `WT(μ, d)` and that
/// every minimizer is produced under some tie resolution.
pub fn huffman_optimality_check(seed: u64, trials: usize, max_order: usize) -> Result<PropertyReport> {
    if !(4..=BRUTE_FORCE_MAX_ORDER.min(10)).contains(&max_order) {
        return Err(Error::OrderOutOfRange {
            order: max_order,
            min: 4,
            max: 10,
        });
    }
    let minimum = run_property("huffman_attains_minimum", seed, 20, trials, |rng| {
        let gt = random_degree_monotone_tuple(rng, 4, max_order);
        let h = generalized_huffman(&gt).map_err(|e| e.to_string())?;
        let value = vertex_weighted_wiener(&h.tree);
        let (best, _) = brute_force_minimum(&gt).map_err(|e| e.to_string())?;
        if (value - best).abs() <= 1e-9 * best.abs().max(1.0) {
            Ok(())
        } else {
            Err(format!("{} huffman={value} brute={best}", fmt_tuple(&gt)))
        }
    });
    let reach = run_property("every_minimizer_is_huffman", seed, 20, trials, |rng| {
        let gt = random_degree_monotone_tuple(rng, 4, max_order);
        let reachable: BTreeSet<Vec<(usize, usize)>> = all_huffman_trees(&gt)
            .map_err(|e| e.to_string())?
            .iter()
            .map(HuffmanResult::edges)
            .collect();
        let (_, argmin) = brute_force_minimum(&gt).map_err(|e| e.to_string())?;
        match argmin.into_iter().find(|e| !reachable.contains(e)) {
            None => Ok(()),
            Some(e) => Err(format!("{} minimizer {e:?} is not a Huffman tree", fmt_tuple(&gt))),
        }
    });
    Ok(PropertyReport {
        seed,
        trials,
        outcomes: vec![minimum, reach],
    })
}

/// Moving one unit of degree from `v` to a vertex `u` at least as heavy and
/// of at least the same degree strictly lowers the minimum over `WT`.
pub fn degree_shift_check(seed: u64, trials: usize, max_order: usize) -> Result<PropertyOutcome> {
    if !(4..=9).contains(&max_order) {
        return Err(Error::OrderOutOfRange {
            order: max_order,
            min: 4,
            max: 9,
        });
    }
    Ok(run_property("degree_shift_lowers_minimum", seed, 5, trials, |rng| {
        let (gt, u, v) = loop {
            let gt = random_degree_monotone_tuple(rng, 4, max_order);
            let pairs: Vec<(usize, usize)> = (0..gt.order())
                .flat_map(|u| (0..gt.order()).map(move |v| (u, v)))
                .filter(|&(u, v)| {
                    u != v
                        && gt.degree(v) >= 2
                        && gt.degree(u) >= gt.degree(v)
                        && compare_weights(gt.weight(u), gt.weight(v)) != Ordering::Less
                })
                .collect();
            if let Some(&(u, v)) = pairs.choose(rng) {
                break (gt, u, v);
            }
        };
        let mut d2 = gt.degrees().to_vec();
        d2[u] += 1;
        d2[v] -= 1;
        let shifted = GeneratingTuple::new(gt.weights().to_vec(), d2).map_err(|e| e.to_string())?;
        let (before, _) = brute_force_minimum(&gt).map_err(|e| e.to_string())?;
        let (after, _) = brute_force_minimum(&shifted).map_err(|e| e.to_string())?;
        if compare_weights(after, before) == Ordering::Less {
            Ok(())
        } else {
            Err(format!("{} u={u} v={v} before={before} after={after}", fmt_tuple(&gt)))
        }
    }))
}

/// Compares `vwwi_directed` with the pairwise definition on every chemical
/// tree of order `3..=max_order` directed at every internal vertex. Each
/// pair uses integer weights, which must agree exactly, and real weights,
/// which must agree within `1e-12` relative.
pub fn directed_identity_check(seed: u64, max_order: usize) -> Result<PropertyOutcome> {
    if !(3..=10).contains(&max_order) {
        return Err(Error::OrderOutOfRange {
            order: max_order,
            min: 3,
            max: 10,
        });
    }
    let mut cases = Vec::new();
    for n in 3..=max_order {
        for t in crate::enumeration::enumerate_chemical_trees(n, 4)? {
            for v in t.internal_vertices() {
                cases.push((t.clone(), v));
            }
        }
    }
    let results: Vec<std::result::Result<(), String>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (t, v))| {
            let mut rng = trial_rng(seed ^ 0x14, i);
            let int_w: Vec<f64> = (0..t.order()).map(|_| rng.gen_range(0..=20) as f64).collect();
            let real_w: Vec<f64> = (0..t.order()).map(|_| rng.gen_range(0.0..10.0)).collect();
            for (w, exact) in [(int_w, true), (real_w, false)] {
                let vt = VertexWeightedTree::new(t.clone(), w).map_err(|e| e.to_string())?;
                let pairwise = vertex_weighted_wiener(&vt);
                let directed = vwwi_directed(&vt.to_directed(*v).map_err(|e| e.to_string())?);
                let ok = if exact {
                    pairwise == directed
                } else {
                    (pairwise - directed).abs() <= 1e-12 * pairwise.abs().max(1.0)
                };
                if !ok {
                    return Err(format!(
                        "tree {} terminal {v}: pairwise {pairwise} directed {directed}",
                        t.canonical_form()
                    ));
                }
            }
            Ok(())
        })
        .collect();
    Ok(PropertyOutcome {
        name: "directed_sum_identity".into(),
        trials: results.len(),
        failures: results.iter().filter(|r| r.is_err()).count(),
        witness: results.into_iter().find_map(|r| r.err()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::indices::wiener;

    fn example() -> GeneratingTuple {
        GeneratingTuple::new(vec![1.0, 2.0, 3.0, 4.0, 1.0, 2.0], vec![1, 1, 1, 1, 3, 3]).unwrap()
    }

    #[test]
    fn tuple_validation() {
        assert!(matches!(
            GeneratingTuple::new(vec![1.0; 4], vec![1, 1, 1, 1]),
            Err(Error::DegreeIdentity { sum: 4, expected: 6 })
        ));
        assert!(GeneratingTuple::new(vec![1.0; 3], vec![1, 2]).is_err());
        assert!(GeneratingTuple::new(vec![-1.0, 1.0], vec![1, 1]).is_err());
        assert_eq!(example().pendants(), vec![0, 1, 2, 3]);
        assert_eq!(example().internals(), vec![4, 5]);
    }

    #[test]
    fn degree_monotone_examples() {
        assert!(is_degree_monotone(&GeneratingTuple::new(vec![1.0; 6], vec![1, 1, 1, 1, 3, 3]).unwrap()));
        let bad = GeneratingTuple::new(vec![1.0, 1.0, 1.0, 1.0, 1.0, 5.0, 2.0], vec![1, 1, 1, 1, 1, 3, 4]).unwrap();
        assert!(!is_degree_monotone(&bad));
        let zero = GeneratingTuple::new(vec![0.0, 1.0, 1.0], vec![1, 1, 2]).unwrap();
        assert!(!is_degree_monotone(&zero));
    }

    #[test]
    fn order_six_example() {
        let h = generalized_huffman(&example()).unwrap();
        assert_eq!(h.edges(), vec![(0, 4), (1, 4), (2, 5), (3, 5), (4, 5)]);
        assert_eq!(h.trace.steps.len(), 2);
        assert_eq!(h.trace.steps[0].merged, 4);
        assert_eq!(h.trace.steps[0].attached, vec![0, 1]);
        assert_eq!(h.trace.steps[0].updated_weight, 4.0);
        assert_eq!(h.trace.terminal, 5);
        let f = subordinate_weights(&h.directed);
        assert_eq!([f[0], f[1], f[4], f[2], f[3]], [1.0, 2.0, 4.0, 3.0, 4.0]);
        assert_eq!(f[5], 13.0);
        assert_eq!(vwwi_directed(&h.directed), 136.0);
        assert_eq!(vertex_weighted_wiener(&h.tree), 136.0);
        let (best, argmin) = brute_force_minimum(&example()).unwrap();
        assert_eq!(best, 136.0);
        assert_eq!(argmin, vec![h.edges()]);
    }

    #[test]
    fn star_tuple() {
        let gt = GeneratingTuple::new(vec![1.0, 1.0, 1.0, 100.0, 1.0], vec![1, 1, 1, 1, 4]).unwrap();
        let h = generalized_huffman(&gt).unwrap();
        assert_eq!(h.edges(), vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
        assert_eq!(h.trace.steps.len(), 1);
        assert_eq!(weighted_trees_brute(&gt).unwrap().len(), 1);
    }

    #[test]
    fn equal_weights_ties_are_all_optimal() {
        let gt = GeneratingTuple::new(vec![1.0; 6], vec![1, 1, 1, 1, 3, 3]).unwrap();
        let first = generalized_huffman(&gt).unwrap();
        let all = all_huffman_trees(&gt).unwrap();
        assert_eq!(all[0].edges(), first.edges());
        let (best, argmin) = brute_force_minimum(&gt).unwrap();
        for h in &all {
            assert_eq!(vertex_weighted_wiener(&h.tree), best);
        }
        let reach: BTreeSet<_> = all.iter().map(HuffmanResult::edges).collect();
        assert!(argmin.iter().all(|e| reach.contains(e)));
        assert_eq!(generalized_huffman(&gt).unwrap().edges(), first.edges());
    }

    #[test]
    fn order_two() {
        let gt = GeneratingTuple::new(vec![2.0, 3.0], vec![1, 1]).unwrap();
        let h = generalized_huffman(&gt).unwrap();
        assert_eq!(h.edges(), vec![(0, 1)]);
        assert!(h.trace.steps.is_empty());
        assert_eq!(vwwi_directed(&h.directed), 6.0);
    }

    #[test]
    fn directed_identity_small() {
        let o = directed_identity_check(3, 6).unwrap();
        assert!(o.passed(), "{o:?}");
        assert!(o.trials > 10);
    }

    #[test]
    fn vwwi_directed_examples() {
        let p4 = ChemicalTree::path(4).unwrap();
        let dt = VertexWeightedTree::unit(p4.clone()).to_directed(1).unwrap();
        assert_eq!(vwwi_directed(&dt), wiener(&p4) as f64);
    }

    #[test]
    fn majorization_examples() {
        let v = weak_majorize(&[1.0, 1.0, 4.0], &[1.0, 2.0, 3.0]).unwrap();
        assert_eq!(v.relation, MajorizationRelation::Strict);
        let v = weak_majorize(&[3.0, 1.0], &[1.0, 3.0]).unwrap();
        assert_eq!(v.relation, MajorizationRelation::WeakEqualSorted);
        assert!(weak_majorize(&[1.0, 3.0], &[2.0, 2.0]).unwrap().is_strict());
        let v = weak_majorize(&[2.0, 2.0], &[1.0, 3.0]).unwrap();
        assert_eq!(v.relation, MajorizationRelation::Incomparable);
        assert_eq!(v.prefix_gap, Some(1));
        assert!(weak_majorize(&[1.0], &[1.0, 2.0]).is_err());
        assert!(weak_majorize(&[-1.0], &[1.0]).is_err());
    }

    #[test]
    fn proper_examples() {
        let p3 = ChemicalTree::path(3).unwrap();
        let wt = VertexWeightedTree::new(p3, vec![10.0, 1.0, 1.0]).unwrap();
        // Terminal at the far end from the heavy vertex is a pendant, so use
        // the unchecked orientation.
        assert!(!is_proper(&wt.orient(2)));
        assert!(is_proper(&wt.orient(1)));
        let star = VertexWeightedTree::unit(ChemicalTree::star(4).unwrap());
        assert!(is_proper(&star.to_directed(0).unwrap()));
    }

    #[test]
    fn extremal_tuple_examples() {
        let t5 = extremal_tuple(&[1.0; 5], &[0], 4).unwrap();
        assert_eq!(t5.internals().len(), 1);
        assert_eq!(t5.degree(t5.internals()[0]), 4);
        let t6 = extremal_tuple(&[1.0; 6], &[0], 4).unwrap();
        let mut d6: Vec<usize> = t6.internals().iter().map(|&v| t6.degree(v)).collect();
        d6.sort_unstable();
        assert_eq!(d6, vec![2, 4]);
        let t7 = extremal_tuple(&[1.0; 7], &[0], 4).unwrap();
        let mut d7: Vec<usize> = t7.internals().iter().map(|&v| t7.degree(v)).collect();
        d7.sort_unstable();
        assert_eq!(d7, vec![3, 4]);
        assert!(matches!(extremal_tuple(&[1.0; 6], &[0, 1, 2, 3, 4], 4), Err(Error::Infeasible(_))));
    }

    #[test]
    fn extremal_tuple_prefers_heavy_vertices() {
        let w = [5.0, 1.0, 9.0, 1.0, 7.0, 1.0, 1.0];
        let t = extremal_tuple(&w, &[], 4).unwrap();
        assert_eq!(t.internals(), vec![2, 4]);
        assert_eq!(t.degree(2), 4);
        assert_eq!(t.degree(4), 3);
        assert!(is_degree_monotone(&t));
        // Ties between vertices 1, 3, 5, 6 yield several tuples when asked.
        let w = [1.0; 7];
        assert_eq!(extremal_tuples(&w, &[0], 4).unwrap().len(), 30);
    }

    #[test]
    fn property_suites_pass_small() {
        let r = majorization_property_suite(7, 200);
        assert!(r.passed(), "{r:?}");
        let r = huffman_optimality_check(7, 60, 8).unwrap();
        assert!(r.passed(), "{r:?}");
        let r = degree_shift_check(7, 30, 7).unwrap();
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn suites_are_deterministic() {
        assert_eq!(majorization_property_suite(3, 50), majorization_property_suite(3, 50));
    }
}
