//! Minimizers of indices and regressions over all trees of a given order.
//!
//! Two routes lead to a [`MinimizerSet`]. [`minimize_brute`] evaluates the
//! objective on every tree the enumerator produces. [`minimize_theory`]
//! builds the set directly from the known structure of the extremal trees,
//! and refuses to answer when the coefficient conditions that justify the
//! structure do not hold.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::{enumerate, enumerate_chemical_trees, EnumerationRequest, MAX_ORDER};
use crate::error::{Error, Result};
use crate::huffman::{extremal_internal_count, exceptional_degree, weights_tie};
use crate::indices::{
    ad_hoc_c, first_zagreb, oxygen_distance, second_zagreb, subroot_indicator, vertex_weighted_wiener, wiener,
    DegreeCostVector,
};
use crate::qspr::{predict, RegressionModel};
use crate::tree::{parse_tree, ChemicalTree, ParsedTree, PendentRootedTree, TreeEncoding, VertexWeightedTree};

/// Smallest order handled by the theory-guided constructions.
pub const THEORY_MIN_ORDER: usize = 4;

/// Largest order for which the weakened degree-pair condition suffices.
pub const WEAK_CONDITION_MAX_ORDER: usize = 17;

/// Largest order accepted by the boiling-point conjecture audit.
pub const AUDIT_MAX_ORDER: usize = 14;

/// Evaluation of the four strict inequalities on degree costs `c` and the
/// second-Zagreb weight `b3`. Each margin is right side minus left side, so
/// a condition holds exactly when its margin is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    /// `c1 + c4 + 18·b3 < c2 + c3`
    pub cond_23: bool,
    /// `c1 + c3 + 8·b3 < 2·c2`
    pub cond_22: bool,
    /// `c2 + c4 + 8·b3 < 2·c3`
    pub cond_33: bool,
    /// `c1 + c4 + 17·b3 < c2 + c3`
    pub cond_23bis: bool,
    pub extremal_guaranteed: bool,
    pub extremal_guaranteed_n_le_17: bool,
    pub margin_23: f64,
    pub margin_22: f64,
    pub margin_33: f64,
    pub margin_23bis: f64,
}

impl ConditionReport {
    /// Whether the conditions guarantee extremely branched minimizers at
    /// order `n`.
    pub fn applies_at(&self, n: usize) -> bool {
        self.extremal_guaranteed || (n <= WEAK_CONDITION_MAX_ORDER && self.extremal_guaranteed_n_le_17)
    }
}

pub fn check_c_conditions(c: &DegreeCostVector, b3: f64) -> ConditionReport {
    let margin_23 = (c.c2 + c.c3) - (c.c1 + c.c4 + 18.0 * b3);
    let margin_22 = 2.0 * c.c2 - (c.c1 + c.c3 + 8.0 * b3);
    let margin_33 = 2.0 * c.c3 - (c.c2 + c.c4 + 8.0 * b3);
    let margin_23bis = (c.c2 + c.c3) - (c.c1 + c.c4 + 17.0 * b3);
    let cond_23 = c.c1 + c.c4 + 18.0 * b3 < c.c2 + c.c3;
    let cond_22 = c.c1 + c.c3 + 8.0 * b3 < 2.0 * c.c2;
    let cond_33 = c.c2 + c.c4 + 8.0 * b3 < 2.0 * c.c3;
    let cond_23bis = c.c1 + c.c4 + 17.0 * b3 < c.c2 + c.c3;
    ConditionReport {
        cond_23,
        cond_22,
        cond_33,
        cond_23bis,
        extremal_guaranteed: cond_23 && cond_22 && cond_33,
        extremal_guaranteed_n_le_17: cond_23bis && cond_22 && cond_33,
        margin_23,
        margin_22,
        margin_33,
        margin_23bis,
    }
}

/// All internal vertices have the maximum degree, except possibly one whose
/// degree the degree-sum identity then fixes (2 when `n ≡ 0`, 3 when
/// `n ≡ 1 (mod 3)` for maximum degree 4).
pub fn is_extremely_branched<T: AsRef<ChemicalTree>>(t: &T) -> Result<bool> {
    let t = t.as_ref();
    if t.order() < 4 {
        return Err(Error::OrderOutOfRange {
            order: t.order(),
            min: 4,
            max: usize::MAX,
        });
    }
    let short = t
        .internal_vertices()
        .into_iter()
        .filter(|&v| t.degree(v) < t.max_degree())
        .count();
    Ok(short <= 1)
}

/// Quantity to minimize.
#[derive(Debug, Clone, PartialEq)]
pub enum Objective {
    /// Generalized first Zagreb index plus `b3` times the second Zagreb index.
    AdHocC { costs: DegreeCostVector, b3: f64 },
    FirstZagreb,
    SecondZagreb,
    Wiener,
    /// Sum of distances to the root.
    OxygenDistance,
    /// Sub-root degree indicator for degree 2, 3 or 4.
    SubRootIndicator(usize),
    /// Predicted boiling point of a regression model, labelled for output.
    BoilingPoint { label: String, model: RegressionModel },
    /// Vertex-weighted Wiener index with root weight `1/ε` and weight `ε`
    /// everywhere else.
    EpsilonWiener(f64),
}

impl Objective {
    /// Objective by command-line name.
    pub fn from_name(name: &str) -> Result<Self> {
        Ok(match name {
            "c" => Self::ad_hoc_from_model(&RegressionModel::regression_i()),
            "c0" => Self::ad_hoc_from_model(&RegressionModel::basic()),
            "m1" => Objective::FirstZagreb,
            "m2" => Objective::SecondZagreb,
            "wiener" => Objective::Wiener,
            "wio" => Objective::OxygenDistance,
            "s2" => Objective::SubRootIndicator(2),
            "s3" => Objective::SubRootIndicator(3),
            "s4" => Objective::SubRootIndicator(4),
            "bp0" | "bp1" | "bp2" => Objective::BoilingPoint {
                label: name.to_string(),
                model: RegressionModel::preset(name)?,
            },
            other => return Err(Error::UnknownObjective(other.to_string())),
        })
    }

    /// The ad hoc index `C` built from a model's degree costs and `b3`.
    pub fn ad_hoc_from_model(m: &RegressionModel) -> Self {
        Objective::AdHocC { costs: m.c, b3: m.b3 }
    }

    pub fn name(&self) -> String {
        match self {
            Objective::AdHocC { .. } => "c".into(),
            Objective::FirstZagreb => "m1".into(),
            Objective::SecondZagreb => "m2".into(),
            Objective::Wiener => "wiener".into(),
            Objective::OxygenDistance => "wio".into(),
            Objective::SubRootIndicator(i) => format!("s{i}"),
            Objective::BoilingPoint { label, .. } => label.clone(),
            Objective::EpsilonWiener(eps) => format!("vwwi-eps={eps}"),
        }
    }

    /// Whether the objective is only defined on pendent-rooted trees.
    pub fn requires_rooted(&self) -> bool {
        matches!(
            self,
            Objective::OxygenDistance
                | Objective::SubRootIndicator(_)
                | Objective::BoilingPoint { .. }
                | Objective::EpsilonWiener(_)
        )
    }

    pub fn evaluate(&self, t: &ParsedTree) -> Result<f64> {
        let tree = t.tree();
        let rooted = |t: &ParsedTree| -> Result<PendentRootedTree> {
            match t {
                ParsedTree::Rooted(r) => Ok(r.clone()),
                ParsedTree::Free(_) => Err(Error::InvalidArgument(format!(
                    "objective {} needs a pendent-rooted tree",
                    self.name()
                ))),
            }
        };
        Ok(match self {
            Objective::AdHocC { costs, b3 } => ad_hoc_c(tree, costs, *b3)?,
            Objective::FirstZagreb => first_zagreb(tree) as f64,
            Objective::SecondZagreb => second_zagreb(tree) as f64,
            Objective::Wiener => wiener(tree) as f64,
            Objective::OxygenDistance => oxygen_distance(&rooted(t)?) as f64,
            Objective::SubRootIndicator(i) => subroot_indicator(&rooted(t)?, *i)? as f64,
            Objective::BoilingPoint { model, .. } => predict(model, &rooted(t)?)?,
            Objective::EpsilonWiener(eps) => {
                let r = rooted(t)?;
                epsilon_wiener(&r, *eps)?
            }
        })
    }
}

/// Vertex-weighted Wiener index of `t` with the root weighted `1/ε` and
/// every other vertex `ε`.
pub fn epsilon_wiener(t: &PendentRootedTree, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::InvalidArgument(format!("epsilon must be positive, got {eps}")));
    }
    let weights = (0..t.order()).map(|v| if v == t.root() { 1.0 / eps } else { eps }).collect();
    Ok(vertex_weighted_wiener(&VertexWeightedTree::new(t.tree().clone(), weights)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Brute,
    Theory,
    Intersection,
}

/// The trees attaining the least objective value, as sorted canonical
/// encodings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimizerSet {
    pub order: usize,
    pub objective: String,
    pub rooted: bool,
    pub members: Vec<TreeEncoding>,
    pub value: f64,
    pub method: Method,
}

impl MinimizerSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, code: &TreeEncoding) -> bool {
        self.members.binary_search(code).is_ok()
    }

    /// Same order, rootedness and members.
    pub fn same_members(&self, other: &MinimizerSet) -> bool {
        self.order == other.order && self.rooted == other.rooted && self.members == other.members
    }
}

/// The minimizers of `objective` among the given canonical encodings.
pub fn minimize_over(
    order: usize,
    rooted: bool,
    codes: &[TreeEncoding],
    objective: &Objective,
) -> Result<MinimizerSet> {
    let values: Vec<f64> = codes
        .par_iter()
        .map(|c| objective.evaluate(&parse_tree(c.as_str())?))
        .collect::<Result<_>>()?;
    let best = values.iter().copied().fold(f64::INFINITY, f64::min);
    let members: Vec<TreeEncoding> = codes
        .iter()
        .zip(&values)
        .filter(|(_, &v)| weights_tie(v, best))
        .map(|(c, _)| c.clone())
        .collect();
    let mut members = members;
    members.sort();
    Ok(MinimizerSet {
        order,
        objective: objective.name(),
        rooted,
        members,
        value: best,
        method: Method::Brute,
    })
}

/// Exhaustive minimization over all trees (or all pendent-rooted trees) of
/// order `n`. Objectives defined only on rooted trees force `rooted`.
pub fn minimize_brute(n: usize, objective: &Objective, rooted: bool) -> Result<MinimizerSet> {
    let rooted = rooted || objective.requires_rooted();
    let req = if rooted {
        EnumerationRequest::rooted(n)
    } else {
        EnumerationRequest::free(n)
    };
    let codes = enumerate(&req)?;
    minimize_over(n, rooted, &codes, objective)
}

fn check_theory_order(n: usize) -> Result<()> {
    if !(THEORY_MIN_ORDER..=MAX_ORDER).contains(&n) {
        return Err(Error::OrderOutOfRange {
            order: n,
            min: THEORY_MIN_ORDER,
            max: MAX_ORDER,
        });
    }
    Ok(())
}

/// Builds the minimizer set from the structure of extremal trees.
///
/// * `C`: extremely branched trees. When `n ≡ 2 (mod 3)` every 4-tree
///   qualifies. Otherwise the second Zagreb index falls by a fixed amount
///   for each internal neighbour of the exceptional vertex, so a positive
///   `b3` asks for as many such neighbours as possible and a negative one
///   for as few.
/// * oxygen distance: the Huffman trees of the extremal tuple with weight
///   concentrated on the root.
/// * boiling points: the models without the distance term reduce to `C`
///   with sub-roots of degree 3 or 4; the models without the second Zagreb
///   term reduce to the oxygen-distance set.
pub fn minimize_theory(n: usize, objective: &Objective) -> Result<MinimizerSet> {
    check_theory_order(n)?;
    let (members, rooted) = match objective {
        Objective::AdHocC { costs, b3 } => (c_minimizers(n, costs, *b3)?, false),
        Objective::OxygenDistance => (wio_minimizers(n)?, true),
        Objective::BoilingPoint { model, .. } => (bp_minimizers(n, model)?, true),
        other => {
            return Err(Error::Precondition(format!(
                "no theory-guided construction for objective {}",
                other.name()
            )))
        }
    };
    let mut members: Vec<TreeEncoding> = members.into_iter().collect();
    members.sort();
    let value = objective.evaluate(&parse_tree(members[0].as_str())?)?;
    Ok(MinimizerSet {
        order: n,
        objective: objective.name(),
        rooted,
        members,
        value,
        method: Method::Theory,
    })
}

fn require_conditions(n: usize, costs: &DegreeCostVector, b3: f64) -> Result<()> {
    let report = check_c_conditions(costs, b3);
    if report.applies_at(n) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "degree-cost conditions do not hold at order {n}: {report:?}"
        )))
    }
}

/// Free extremely branched trees minimizing `C` at order `n`.
fn c_minimizers(n: usize, costs: &DegreeCostVector, b3: f64) -> Result<BTreeSet<TreeEncoding>> {
    require_conditions(n, costs, b3)?;
    let k = extremal_internal_count(n, 4);
    let e = exceptional_degree(n, 4).expect("order at least 3");
    let skeletons: Vec<ChemicalTree> = if k == 1 {
        Vec::new()
    } else {
        enumerate_chemical_trees(k, 4)?.collect()
    };
    let mut out = BTreeSet::new();
    if k == 1 {
        out.insert(ChemicalTree::star(e)?.canonical_form());
        return Ok(out);
    }
    if e == 4 {
        for s in &skeletons {
            out.insert(pad(s, |_| 4)?.canonical_form());
        }
        return Ok(out);
    }
    let max_a = e.min(k - 1);
    let wanted = |a: usize| {
        if b3 > 0.0 {
            a == max_a
        } else if b3 < 0.0 {
            a == 1
        } else {
            true
        }
    };
    for s in &skeletons {
        for u in 0..k {
            let a = s.degree(u);
            if a <= e && wanted(a) {
                out.insert(pad(s, |v| if v == u { e } else { 4 })?.canonical_form());
            }
        }
    }
    Ok(out)
}

/// Hangs leaves on each skeleton vertex until it reaches `target(v)`.
fn pad(skeleton: &ChemicalTree, target: impl Fn(usize) -> usize) -> Result<ChemicalTree> {
    let k = skeleton.order();
    let mut edges = skeleton.edges();
    let mut next = k;
    for v in 0..k {
        for _ in skeleton.degree(v)..target(v) {
            edges.push((v, next));
            next += 1;
        }
    }
    ChemicalTree::from_edges(next, &edges, 4)
}

/// Pendent-rooted trees minimizing the oxygen distance at order `n`.
///
/// All carbons weigh 1 and the root weighs `n`, which exceeds every
/// subtree weight the algorithm ever compares it with; this reproduces the
/// limit of a vanishing carbon weight. Carbons are interchangeable, so the
/// search runs over multisets of subtree shapes and branches only when
/// pendants of equal weight but different shape compete for a slot.
fn wio_minimizers(n: usize) -> Result<BTreeSet<TreeEncoding>> {
    let k = extremal_internal_count(n, 4);
    let e = exceptional_degree(n, 4).expect("order at least 3");
    // The lightest open vertex always has carbon weight 1, so merges go in
    // order of degree.
    let mut degrees = vec![4; k];
    degrees[0] = e;
    let leaves = vec![(1usize, "C".to_string()); n - 1 - k];
    let mut out = BTreeSet::new();
    let mut seen = HashSet::new();
    wio_explore(&degrees, leaves, &mut seen, &mut out)?;
    Ok(out)
}

fn wio_explore(
    degrees: &[usize],
    mut pendants: Vec<(usize, String)>,
    seen: &mut HashSet<(usize, Vec<(usize, String)>)>,
    out: &mut BTreeSet<TreeEncoding>,
) -> Result<()> {
    pendants.sort();
    if !seen.insert((degrees.len(), pendants.clone())) {
        return Ok(());
    }
    let d = degrees[0];
    if degrees.len() == 1 {
        // The last vertex takes every remaining carbon pendant plus the root.
        if pendants.len() + 1 != d {
            return Err(Error::Infeasible("final vertex has the wrong number of pendants".into()));
        }
        let kids: Vec<&str> = pendants.iter().map(|(_, s)| s.as_str()).collect();
        let text = format!("O(C({}))", kids.join(","));
        out.insert(parse_tree(&text)?.canonical_form());
        return Ok(());
    }
    let need = d - 1;
    let threshold = pendants[need - 1].0;
    let forced: Vec<(usize, String)> = pendants.iter().filter(|p| p.0 < threshold).cloned().collect();
    let tied: Vec<(usize, String)> = pendants.iter().filter(|p| p.0 == threshold).cloned().collect();
    // Equal shapes are interchangeable: keep one pick per shape multiset.
    let mut choices: BTreeMap<Vec<&str>, Vec<usize>> = BTreeMap::new();
    for pick in itertools::Itertools::combinations(0..tied.len(), need - forced.len()) {
        let mut key: Vec<&str> = pick.iter().map(|&i| tied[i].1.as_str()).collect();
        key.sort_unstable();
        choices.entry(key).or_insert(pick);
    }
    for pick in choices.into_values() {
        let mut attached: Vec<(usize, String)> = forced.clone();
        attached.extend(pick.iter().map(|&i| tied[i].clone()));
        let mut rest: Vec<(usize, String)> = pendants
            .iter()
            .filter(|p| p.0 > threshold)
            .cloned()
            .collect();
        rest.extend(
            (0..tied.len())
                .filter(|i| !pick.contains(i))
                .map(|i| tied[i].clone()),
        );
        let weight = 1 + attached.iter().map(|p| p.0).sum::<usize>();
        let mut kids: Vec<&str> = attached.iter().map(|p| p.1.as_str()).collect();
        kids.sort_unstable();
        rest.push((weight, format!("C({})", kids.join(","))));
        wio_explore(&degrees[1..], rest, seen, out)?;
    }
    Ok(())
}

fn bp_minimizers(n: usize, model: &RegressionModel) -> Result<BTreeSet<TreeEncoding>> {
    if model.b2 < 0.0 {
        return Err(Error::Precondition(
            "a negative sub-root coefficient rewards degree-2 sub-roots; no construction applies".into(),
        ));
    }
    if model.b1 == 0.0 {
        // Root-independent part is C; the sub-root term only filters rootings.
        let free = c_minimizers(n, &model.c, model.b3)?;
        let mut out = BTreeSet::new();
        for code in free {
            let t = parse_tree(code.as_str())?;
            for r in t.tree().pendant_rootings() {
                if model.b2 == 0.0 || r.tree().degree(r.sub_root()) >= 3 {
                    out.insert(r.canonical_form());
                }
            }
        }
        return Ok(out);
    }
    if model.b3 == 0.0 {
        if model.b1 < 0.0 {
            return Err(Error::Precondition(
                "a negative distance coefficient rewards long chains; no construction applies".into(),
            ));
        }
        require_conditions(n, &model.c, 0.0)?;
        let set = wio_minimizers(n)?;
        for code in &set {
            let r = PendentRootedTree::parse(code.as_str())?;
            if model.b2 > 0.0 && r.tree().degree(r.sub_root()) < 3 {
                return Err(Error::Precondition(format!(
                    "oxygen-distance minimizer {code} has a degree-2 sub-root"
                )));
            }
        }
        return Ok(set);
    }
    Err(Error::Precondition(
        "models with both the distance term and the second Zagreb term have no theory-guided construction".into(),
    ))
}

/// Members common to both sets; the value is the sum of the two minima.
pub fn intersect_minimizers(a: &MinimizerSet, b: &MinimizerSet) -> Result<MinimizerSet> {
    if a.order != b.order || a.rooted != b.rooted {
        return Err(Error::InvalidArgument(format!(
            "cannot intersect minimizers of order {} ({}) with order {} ({})",
            a.order,
            if a.rooted { "rooted" } else { "free" },
            b.order,
            if b.rooted { "rooted" } else { "free" },
        )));
    }
    let members = a.members.iter().filter(|m| b.contains(m)).cloned().collect();
    Ok(MinimizerSet {
        order: a.order,
        objective: format!("{}&{}", a.objective, b.objective),
        rooted: a.rooted,
        members,
        value: a.value + b.value,
        method: Method::Intersection,
    })
}

/// Outcome of the extremely-branched conjecture check at one order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjectureAuditRow {
    pub order: usize,
    /// Minimizers of the basic model over all pendent-rooted trees.
    pub minimizers: Vec<TreeEncoding>,
    pub value: f64,
    pub all_extremely_branched: bool,
    /// Minimizers over extremely branched pendent-rooted trees only.
    pub restricted_minimizers: Vec<TreeEncoding>,
    pub restricted_value: f64,
    pub restricted_agrees: bool,
    /// Common minimizers of the oxygen distance, of the basic ad hoc index
    /// on extremely branched trees and of the degree-2 sub-root indicator.
    pub intersection: Vec<TreeEncoding>,
    /// Whether a non-empty intersection equals the unrestricted minimizer
    /// set; absent when the intersection is empty.
    pub intersection_agrees: Option<bool>,
}

impl ConjectureAuditRow {
    pub fn consistent(&self) -> bool {
        self.all_extremely_branched && self.restricted_agrees && self.intersection_agrees != Some(false)
    }
}

pub fn audit_conjecture_bp0(orders: impl IntoIterator<Item = usize>) -> Result<Vec<ConjectureAuditRow>> {
    let basic = RegressionModel::basic();
    let bp0 = Objective::BoilingPoint {
        label: "bp0".into(),
        model: basic.clone(),
    };
    let c0 = Objective::ad_hoc_from_model(&basic);
    let mut rows = Vec::new();
    for n in orders {
        if !(THEORY_MIN_ORDER..=AUDIT_MAX_ORDER).contains(&n) {
            return Err(Error::OrderOutOfRange {
                order: n,
                min: THEORY_MIN_ORDER,
                max: AUDIT_MAX_ORDER,
            });
        }
        let all = enumerate(&EnumerationRequest::rooted(n))?;
        let eb = enumerate(&EnumerationRequest::rooted(n).extremely_branched())?;
        let full = minimize_over(n, true, &all, &bp0)?;
        let restricted = minimize_over(n, true, &eb, &bp0)?;
        let all_eb = full
            .members
            .iter()
            .map(|c| is_extremely_branched(parse_tree(c.as_str())?.tree()))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|b| b);

        let wio = minimize_over(n, true, &all, &Objective::OxygenDistance)?;
        let c0_eb = minimize_over(n, true, &eb, &c0)?;
        let s2 = minimize_over(n, true, &all, &Objective::SubRootIndicator(2))?;
        let inter = intersect_minimizers(&intersect_minimizers(&wio, &c0_eb)?, &s2)?;
        let intersection_agrees = (!inter.is_empty()).then(|| inter.members == full.members);

        rows.push(ConjectureAuditRow {
            order: n,
            restricted_agrees: restricted.members == full.members,
            minimizers: full.members,
            value: full.value,
            all_extremely_branched: all_eb,
            restricted_minimizers: restricted.members,
            restricted_value: restricted.value,
            intersection: inter.members,
            intersection_agrees,
        });
    }
    Ok(rows)
}

/// Argmin comparison at one order for the small-epsilon reduction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonRow {
    pub order: usize,
    pub oxygen_distance_minimizers: Vec<TreeEncoding>,
    pub epsilon_minimizers: Vec<TreeEncoding>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EpsilonReport {
    pub epsilon: f64,
    /// Rooted trees checked against `|VWWI − WI_O| ≤ ε²·n²·diameter`.
    pub bound_checked: usize,
    pub bound_violations: usize,
    pub rows: Vec<EpsilonRow>,
}

impl EpsilonReport {
    pub fn bound_holds(&self) -> bool {
        self.bound_violations == 0
    }

    pub fn argmins_agree(&self) -> bool {
        self.rows.iter().all(|r| r.agree)
    }
}

/// Checks the distance bound on every rooted tree of order `3..=bound_max`
/// and compares the two argmin sets at each of `orders`.
pub fn epsilon_reduction_check(
    eps: f64,
    bound_max: usize,
    orders: impl IntoIterator<Item = usize>,
) -> Result<EpsilonReport> {
    let mut checked = 0;
    let mut violations = 0;
    for n in 3..=bound_max {
        for code in enumerate(&EnumerationRequest::rooted(n))? {
            let r = PendentRootedTree::parse(code.as_str())?;
            let gap = (epsilon_wiener(&r, eps)? - oxygen_distance(&r) as f64).abs();
            let bound = eps * eps * (n * n) as f64 * r.tree().diameter() as f64;
            checked += 1;
            if gap > bound * (1.0 + 1e-9) {
                violations += 1;
            }
        }
    }
    let mut rows = Vec::new();
    for n in orders {
        let codes = enumerate(&EnumerationRequest::rooted(n))?;
        let a = minimize_over(n, true, &codes, &Objective::OxygenDistance)?;
        let b = minimize_over(n, true, &codes, &Objective::EpsilonWiener(eps))?;
        rows.push(EpsilonRow {
            order: n,
            agree: a.members == b.members,
            oxygen_distance_minimizers: a.members,
            epsilon_minimizers: b.members,
        });
    }
    Ok(EpsilonReport {
        epsilon: eps,
        bound_checked: checked,
        bound_violations: violations,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    #[test]
    fn condition_arithmetic_for_presets() {
        let r1 = RegressionModel::regression_i();
        let r = check_c_conditions(&r1.c, r1.b3);
        assert_eq!((r.cond_23, r.cond_22, r.cond_33, r.cond_23bis), (false, true, true, true));
        assert!(!r.extremal_guaranteed && r.extremal_guaranteed_n_le_17);
        assert!(r.applies_at(17) && !r.applies_at(18));

        let r2 = RegressionModel::regression_ii();
        let r = check_c_conditions(&r2.c, r2.b3);
        assert!(r.cond_23 && r.cond_22 && r.cond_33 && r.cond_23bis && r.extremal_guaranteed);

        let b = RegressionModel::basic();
        let r = check_c_conditions(&b.c, b.b3);
        assert!(!r.cond_23 && !r.cond_22 && !r.cond_33 && !r.cond_23bis);
    }

    #[test]
    fn extremely_branched_examples() {
        let t = |s: &str| is_extremely_branched(parse_tree(s).unwrap().tree()).unwrap();
        assert!(t("C(C,C,C,C)"));
        assert!(!t("C(C(C(C(C))))"));
        assert!(t("C(C,C,C,C(C,C))"));
        assert!(!t("C(C,C,C(C,C))"));
        assert!(!t("C(C,C(C),C(C))"));
        assert!(is_extremely_branched(&ChemicalTree::path(3).unwrap()).is_err());
    }

    #[test]
    fn brute_examples() {
        let c = Objective::from_name("c").unwrap();
        let m = minimize_brute(5, &c, false).unwrap();
        assert_eq!(m.members, vec![TreeEncoding::new("C(C,C,C,C)")]);
        let m = minimize_brute(5, &Objective::OxygenDistance, false).unwrap();
        assert!(m.rooted);
        assert_eq!(m.members, vec![TreeEncoding::new("O(C(C,C,C))")]);
        assert_eq!(m.value, 7.0);
        assert!(matches!(Objective::from_name("randic"), Err(Error::UnknownObjective(_))));
    }

    #[test]
    fn theory_examples() {
        let c = Objective::from_name("c").unwrap();
        let nine = minimize_theory(9, &c).unwrap();
        assert_eq!(nine.len(), 1);
        let t = parse_tree(nine.members[0].as_str()).unwrap();
        let tree = t.tree();
        let u = (0..9).find(|&v| tree.degree(v) == 2).unwrap();
        assert!(tree.neighbors(u).iter().all(|&w| tree.degree(w) > 1));
        assert_eq!(minimize_theory(14, &c).unwrap().len(), 2);
        let basic = Objective::from_name("c0").unwrap();
        assert!(matches!(minimize_theory(9, &basic), Err(Error::Precondition(_))));
        assert!(matches!(
            minimize_theory(9, &Objective::from_name("bp0").unwrap()),
            Err(Error::Precondition(_))
        ));
        assert!(minimize_theory(3, &c).is_err());
        assert!(minimize_theory(21, &c).is_err());
    }

    #[test]
    fn theory_matches_brute_small_orders() {
        for n in 4..=10 {
            for name in ["c", "bp1", "bp2"] {
                let obj = Objective::from_name(name).unwrap();
                let t = minimize_theory(n, &obj).unwrap();
                let b = minimize_brute(n, &obj, t.rooted).unwrap();
                assert!(t.same_members(&b), "{name} n={n}: {:?} vs {:?}", t.members, b.members);
                assert!(weights_tie(t.value, b.value));
            }
            // The construction reproduces the small-epsilon tie-break; the
            // plain distance objective can tie with further trees.
            let t = minimize_theory(n, &Objective::OxygenDistance).unwrap();
            let b = minimize_brute(n, &Objective::OxygenDistance, true).unwrap();
            let e = minimize_brute(n, &Objective::EpsilonWiener(1e-3), true).unwrap();
            assert!(t.same_members(&e), "n={n}");
            assert!(t.members.iter().all(|m| b.contains(m)) && t.value == b.value, "n={n}");
        }
    }

    #[test]
    fn wio_and_c_minimizers_differ_at_nine() {
        let c = Objective::from_name("c").unwrap();
        let c_rooted = minimize_brute(9, &c, true).unwrap();
        let wio = minimize_brute(9, &Objective::OxygenDistance, true).unwrap();
        assert!(intersect_minimizers(&c_rooted, &wio).unwrap().is_empty());
        assert_eq!(intersect_minimizers(&wio, &wio).unwrap().members, wio.members);
        let free = minimize_brute(9, &c, false).unwrap();
        assert!(intersect_minimizers(&free, &wio).is_err());
    }

    #[test]
    fn audit_order_five() {
        let rows = audit_conjecture_bp0([5]).unwrap();
        let r = &rows[0];
        assert_eq!(r.minimizers, vec![TreeEncoding::new("O(C(C,C,C))")]);
        assert!((r.value - 82.422).abs() < 5e-4);
        assert!(r.all_extremely_branched && r.restricted_agrees);
        assert_eq!(r.intersection_agrees, Some(true));
        assert!(audit_conjecture_bp0([15]).is_err());
    }
}
