//! Degree-based and distance-based topological indices.
//!
//! Every index is computed on the full graph of its argument. For a
//! pendent-rooted tree that means the root (oxygen) vertex counts as a
//! degree-1 vertex, its edge enters the second Zagreb sum, and it takes part
//! in distances. Integer indices use exact `u64` arithmetic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{ChemicalTree, PendentRootedTree, VertexWeightedTree};

/// Number of vertices of each degree 1 through 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct DegreeCounts {
    pub n1: usize,
    pub n2: usize,
    pub n3: usize,
    pub n4: usize,
}

impl DegreeCounts {
    pub fn as_array(&self) -> [usize; 4] {
        [self.n1, self.n2, self.n3, self.n4]
    }

    pub fn order(&self) -> usize {
        self.n1 + self.n2 + self.n3 + self.n4
    }

    /// Sum of degrees implied by the counts.
    pub fn degree_sum(&self) -> usize {
        self.n1 + 2 * self.n2 + 3 * self.n3 + 4 * self.n4
    }
}

/// Cost assigned to a vertex of each degree 1 through 4.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct DegreeCostVector {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
}

impl DegreeCostVector {
    pub fn new(c1: f64, c2: f64, c3: f64, c4: f64) -> Result<Self> {
        Self::try_from([c1, c2, c3, c4])
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.c1, self.c2, self.c3, self.c4]
    }

    pub fn dot(&self, counts: &DegreeCounts) -> f64 {
        self.c1 * counts.n1 as f64
            + self.c2 * counts.n2 as f64
            + self.c3 * counts.n3 as f64
            + self.c4 * counts.n4 as f64
    }
}

impl TryFrom<[f64; 4]> for DegreeCostVector {
    type Error = Error;

    fn try_from(c: [f64; 4]) -> Result<Self> {
        if let Some(bad) = c.iter().find(|x| !x.is_finite()) {
            return Err(Error::InvalidArgument(format!("degree cost {bad} is not finite")));
        }
        Ok(DegreeCostVector {
            c1: c[0],
            c2: c[1],
            c3: c[2],
            c4: c[3],
        })
    }
}

pub fn degree_counts<T: AsRef<ChemicalTree>>(t: &T) -> Result<DegreeCounts> {
    let t = t.as_ref();
    let mut counts = DegreeCounts::default();
    for v in 0..t.order() {
        match t.degree(v) {
            1 => counts.n1 += 1,
            2 => counts.n2 += 1,
            3 => counts.n3 += 1,
            4 => counts.n4 += 1,
            d => {
                return Err(Error::DegreeBound {
                    vertex: v,
                    degree: d,
                    max_degree: 4,
                })
            }
        }
    }
    Ok(counts)
}

/// Sum of squared degrees.
pub fn first_zagreb<T: AsRef<ChemicalTree>>(t: &T) -> u64 {
    let t = t.as_ref();
    (0..t.order()).map(|v| (t.degree(v) as u64).pow(2)).sum()
}

/// Sum over edges of the product of end degrees.
pub fn second_zagreb<T: AsRef<ChemicalTree>>(t: &T) -> u64 {
    let t = t.as_ref();
    t.edges()
        .into_iter()
        .map(|(u, v)| (t.degree(u) * t.degree(v)) as u64)
        .sum()
}

/// Per-degree cost summed over all vertices.
pub fn generalized_first_zagreb<T: AsRef<ChemicalTree>>(t: &T, c: &DegreeCostVector) -> Result<f64> {
    Ok(c.dot(&degree_counts(t)?))
}

/// Generalized first Zagreb index plus `b3` times the second Zagreb index.
pub fn ad_hoc_c<T: AsRef<ChemicalTree>>(t: &T, c: &DegreeCostVector, b3: f64) -> Result<f64> {
    let c1 = generalized_first_zagreb(t, c)?;
    if b3 == 0.0 {
        return Ok(c1);
    }
    Ok(c1 + b3 * second_zagreb(t) as f64)
}

/// For each non-root vertex of a traversal from vertex 0, the size of the
/// component that contains it after its parent edge is deleted.
fn branch_sizes(t: &ChemicalTree) -> Vec<u64> {
    let n = t.order();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[0] = 0;
    order.push(0);
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &u in t.neighbors(v) {
            if parent[u] == usize::MAX {
                parent[u] = v;
                order.push(u);
            }
        }
    }
    let mut acc = vec![1u64; n];
    for &v in order.iter().skip(1).rev() {
        acc[parent[v]] += acc[v];
    }
    order.iter().skip(1).map(|&v| acc[v]).collect()
}

/// Sum of distances over unordered vertex pairs, via the per-edge
/// decomposition `s·(n − s)`.
pub fn wiener<T: AsRef<ChemicalTree>>(t: &T) -> u64 {
    let t = t.as_ref();
    let n = t.order() as u64;
    branch_sizes(t).into_iter().map(|s| s * (n - s)).sum()
}

/// Half the sum over ordered pairs of `mu[u][v] · d(u, v)`.
pub fn pair_weighted_wiener<T: AsRef<ChemicalTree>>(t: &T, mu: &[Vec<f64>]) -> Result<f64> {
    let t = t.as_ref();
    let n = t.order();
    if mu.len() != n {
        return Err(Error::LengthMismatch {
            left: mu.len(),
            right: n,
        });
    }
    for (u, row) in mu.iter().enumerate() {
        if row.len() != n {
            return Err(Error::LengthMismatch {
                left: row.len(),
                right: n,
            });
        }
        for (v, &w) in row.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "pair weight ({u},{v}) is {w}; pair weights must be finite and non-negative"
                )));
            }
            if w != mu[v][u] {
                return Err(Error::InvalidWeights(format!(
                    "pair weights are asymmetric at ({u},{v}): {w} vs {}",
                    mu[v][u]
                )));
            }
        }
    }
    let mut total = 0.0;
    for (u, row) in mu.iter().enumerate() {
        let d = t.distances_from(u)?;
        total += row.iter().zip(&d).map(|(w, &d)| w * d as f64).sum::<f64>();
    }
    Ok(total / 2.0)
}

/// Vertex-weighted Wiener index from its pairwise definition,
/// `Σ_{u<v} μ(u)·μ(v)·d(u, v)`.
pub fn vertex_weighted_wiener(t: &VertexWeightedTree) -> f64 {
    let tree = t.tree();
    let w = t.weights();
    let mut total = 0.0;
    for u in 0..tree.order() {
        let d = tree.distances_from(u).expect("vertex in range");
        for v in (u + 1)..tree.order() {
            total += w[u] * w[v] * d[v] as f64;
        }
    }
    total
}

/// Sum of distances from every vertex to the root.
pub fn oxygen_distance(t: &PendentRootedTree) -> u64 {
    t.tree()
        .distances_from(t.root())
        .expect("root in range")
        .into_iter()
        .map(|d| d as u64)
        .sum()
}

/// 1 when the sub-root has degree `i`, else 0.
pub fn subroot_indicator(t: &PendentRootedTree, i: usize) -> Result<u8> {
    if !(2..=4).contains(&i) {
        return Err(Error::InvalidArgument(format!(
            "sub-root indicator index must be 2, 3 or 4, got {i}"
        )));
    }
    if t.order() < 3 {
        return Err(Error::OrderOutOfRange {
            order: t.order(),
            min: 3,
            max: usize::MAX,
        });
    }
    Ok(u8::from(t.tree().degree(t.sub_root()) == i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{parse_tree, ParsedTree};

    fn free(s: &str) -> ChemicalTree {
        match parse_tree(s).unwrap() {
            ParsedTree::Free(t) => t,
            other => panic!("{other:?}"),
        }
    }

    fn rooted(s: &str) -> PendentRootedTree {
        PendentRootedTree::parse(s).unwrap()
    }

    const REG1: DegreeCostVector = DegreeCostVector {
        c1: 0.0,
        c2: 14.534,
        c3: 20.172,
        c4: 17.015,
    };

    #[test]
    fn degree_counts_examples() {
        let c = degree_counts(&rooted("O(C(C))")).unwrap();
        assert_eq!(c.as_array(), [2, 1, 0, 0]);
        let c = degree_counts(&rooted("O(C(C,C,C))")).unwrap();
        assert_eq!(c.as_array(), [4, 0, 0, 1]);
        assert_eq!(degree_counts(&ChemicalTree::star(4).unwrap()).unwrap().as_array(), [4, 0, 0, 1]);
    }

    #[test]
    fn degree_five_is_rejected() {
        let t = ChemicalTree::star(5).unwrap();
        assert!(matches!(degree_counts(&t), Err(Error::DegreeBound { degree: 5, .. })));
    }

    #[test]
    fn zagreb_examples() {
        let p3 = ChemicalTree::path(3).unwrap();
        let k14 = ChemicalTree::star(4).unwrap();
        assert_eq!(first_zagreb(&p3), 6);
        assert_eq!(first_zagreb(&k14), 20);
        assert_eq!(first_zagreb(&ChemicalTree::path(5).unwrap()), 14);
        assert_eq!(second_zagreb(&p3), 4);
        assert_eq!(second_zagreb(&k14), 16);
        assert_eq!(second_zagreb(&rooted("O(C(C,C,C))")), 16);
    }

    #[test]
    fn cost_indices() {
        let zero = DegreeCostVector::default();
        assert_eq!(generalized_first_zagreb(&free("C(C,C,C)"), &zero).unwrap(), 0.0);
        assert!((generalized_first_zagreb(&free("C(C,C,C)"), &REG1).unwrap() - 20.172).abs() < 1e-12);
        let p4 = ChemicalTree::path(4).unwrap();
        assert!((generalized_first_zagreb(&p4, &REG1).unwrap() - 29.068).abs() < 1e-12);
        assert_eq!(ad_hoc_c(&p4, &REG1, 0.0).unwrap(), generalized_first_zagreb(&p4, &REG1).unwrap());
        let k14 = ChemicalTree::star(4).unwrap();
        assert!((ad_hoc_c(&k14, &REG1, 1.0).unwrap() - 33.015).abs() < 1e-12);
        assert!((ad_hoc_c(&p4, &REG1, 1.0).unwrap() - 37.068).abs() < 1e-12);
    }

    #[test]
    fn cost_vector_rejects_non_finite() {
        assert!(DegreeCostVector::new(0.0, f64::NAN, 0.0, 0.0).is_err());
    }

    #[test]
    fn wiener_examples() {
        assert_eq!(wiener(&ChemicalTree::path(2).unwrap()), 1);
        assert_eq!(wiener(&ChemicalTree::path(3).unwrap()), 4);
        assert_eq!(wiener(&ChemicalTree::star(4).unwrap()), 16);
        assert_eq!(wiener(&ChemicalTree::path(4).unwrap()), 10);
    }

    #[test]
    fn pair_weighted_matches_vertex_weighted() {
        let t = free("C(C,C(C),C(C,C))");
        let w: Vec<f64> = (0..t.order()).map(|v| (v * v % 7) as f64 + 0.5).collect();
        let mu: Vec<Vec<f64>> = w.iter().map(|a| w.iter().map(|b| a * b).collect()).collect();
        let vt = VertexWeightedTree::new(t.clone(), w).unwrap();
        assert_eq!(pair_weighted_wiener(&t, &mu).unwrap(), vertex_weighted_wiener(&vt));
        let ones = vec![vec![1.0; t.order()]; t.order()];
        assert_eq!(pair_weighted_wiener(&t, &ones).unwrap(), wiener(&t) as f64);
    }

    #[test]
    fn pair_weights_must_be_symmetric() {
        let t = ChemicalTree::path(2).unwrap();
        let mu = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert!(matches!(pair_weighted_wiener(&t, &mu), Err(Error::InvalidWeights(_))));
    }

    #[test]
    fn vertex_weighted_examples() {
        let p2 = VertexWeightedTree::new(ChemicalTree::path(2).unwrap(), vec![3.0, 5.0]).unwrap();
        assert_eq!(vertex_weighted_wiener(&p2), 15.0);
        let t = free("C(C(C),C)");
        assert_eq!(vertex_weighted_wiener(&VertexWeightedTree::unit(t.clone())), wiener(&t) as f64);
        // Star: center first in pre-order, then leaves; last leaf heavy.
        let k14 = ChemicalTree::star(4).unwrap();
        let center = (0..5).find(|&v| k14.degree(v) == 4).unwrap();
        let heavy = (0..5).rev().find(|&v| v != center).unwrap();
        let w: Vec<f64> = (0..5).map(|v| if v == heavy { 100.0 } else { 1.0 }).collect();
        let vt = VertexWeightedTree::new(k14, w).unwrap();
        assert_eq!(vertex_weighted_wiener(&vt), 709.0);
    }

    #[test]
    fn oxygen_distance_examples() {
        assert_eq!(oxygen_distance(&rooted("O(C(C))")), 3);
        assert_eq!(oxygen_distance(&rooted("O(C(C(C)))")), 6);
        assert_eq!(oxygen_distance(&rooted("O(C(C,C,C))")), 7);
    }

    #[test]
    fn subroot_examples() {
        assert_eq!(subroot_indicator(&rooted("O(C(C))"), 2).unwrap(), 1);
        let tb = rooted("O(C(C,C,C))");
        assert_eq!(subroot_indicator(&tb, 2).unwrap(), 0);
        assert_eq!(subroot_indicator(&tb, 4).unwrap(), 1);
        assert_eq!(subroot_indicator(&rooted("O(C(C,C))"), 3).unwrap(), 1);
        assert!(subroot_indicator(&tb, 1).is_err());
        assert!(subroot_indicator(&tb, 5).is_err());
    }
}
