//! Duplicate-free generation of chemical trees and pendent-rooted trees.
//!
//! Rooted shapes are built bottom-up: a shape of size `s` is a root plus a
//! multiset of smaller shapes, and each multiset is visited exactly once by
//! walking child lists in non-decreasing (size, index) order. Free trees are
//! hung from their centroid (all branches smaller than half the order) or,
//! for bicentral trees, glued from two halves of equal size. No candidate is
//! ever generated twice, so there is no filtering step.

use std::marker::PhantomData;

use crate::error::{Error, Result};
use crate::extremal::is_extremely_branched;
use crate::tree::{
    parse_tree_with_max_degree, ChemicalTree, ParsedTree, PendentRootedTree, TreeEncoding,
    DEFAULT_MAX_DEGREE,
};

/// Largest order accepted by the enumerators.
pub const MAX_ORDER: usize = 20;

/// Largest order accepted by the Prüfer oracle.
pub const PRUFER_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationRequest {
    pub order: usize,
    pub rooted: bool,
    pub extremely_branched_only: bool,
    pub max_degree: usize,
}

impl EnumerationRequest {
    pub fn free(order: usize) -> Self {
        EnumerationRequest {
            order,
            rooted: false,
            extremely_branched_only: false,
            max_degree: DEFAULT_MAX_DEGREE,
        }
    }

    pub fn rooted(order: usize) -> Self {
        EnumerationRequest {
            rooted: true,
            ..Self::free(order)
        }
    }

    pub fn max_degree(mut self, max_degree: usize) -> Self {
        self.max_degree = max_degree;
        self
    }

    pub fn extremely_branched(mut self) -> Self {
        self.extremely_branched_only = true;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.max_degree < 2 {
            return Err(Error::InvalidArgument(format!(
                "max degree must be at least 2, got {}",
                self.max_degree
            )));
        }
        let min = match (self.extremely_branched_only, self.rooted) {
            (true, _) => 4,
            (false, true) => 3,
            (false, false) => 2,
        };
        if self.order < min || self.order > MAX_ORDER {
            return Err(Error::OrderOutOfRange {
                order: self.order,
                min,
                max: MAX_ORDER,
            });
        }
        Ok(())
    }
}

/// Types that can be rebuilt from their canonical encoding.
pub trait FromEncoding: Sized {
    fn from_encoding(code: &TreeEncoding, max_degree: usize) -> Self;
}

impl FromEncoding for ChemicalTree {
    fn from_encoding(code: &TreeEncoding, max_degree: usize) -> Self {
        match parse_tree_with_max_degree(code.as_str(), max_degree) {
            Ok(ParsedTree::Free(t)) => t,
            other => panic!("enumerator produced an invalid free encoding {code}: {other:?}"),
        }
    }
}

impl FromEncoding for PendentRootedTree {
    fn from_encoding(code: &TreeEncoding, max_degree: usize) -> Self {
        match parse_tree_with_max_degree(code.as_str(), max_degree) {
            Ok(ParsedTree::Rooted(t)) => t,
            other => panic!("enumerator produced an invalid rooted encoding {code}: {other:?}"),
        }
    }
}

/// Lazily materialised sequence of trees in ascending canonical order.
#[derive(Debug, Clone)]
pub struct TreeStream<T> {
    codes: Vec<TreeEncoding>,
    next: usize,
    max_degree: usize,
    _kind: PhantomData<T>,
}

impl<T> TreeStream<T> {
    fn new(codes: Vec<TreeEncoding>, max_degree: usize) -> Self {
        TreeStream {
            codes,
            next: 0,
            max_degree,
            _kind: PhantomData,
        }
    }

    pub fn encodings(&self) -> &[TreeEncoding] {
        &self.codes
    }

    pub fn into_encodings(self) -> Vec<TreeEncoding> {
        self.codes
    }
}

impl<T: FromEncoding> Iterator for TreeStream<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        let code = self.codes.get(self.next)?;
        self.next += 1;
        Some(T::from_encoding(code, self.max_degree))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.codes.len() - self.next;
        (left, Some(left))
    }
}

impl<T: FromEncoding> ExactSizeIterator for TreeStream<T> {}

/// Canonical strings of rooted shapes, indexed by size, where every vertex
/// has at most `child_bound` children.
fn rooted_shapes(max_size: usize, child_bound: usize) -> Vec<Vec<String>> {
    let mut table: Vec<Vec<String>> = vec![Vec::new(); max_size + 1];
    if max_size >= 1 {
        table[1].push("C".to_string());
    }
    for size in 2..=max_size {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(child_bound);
        extend_children(&table, size - 1, (1, 0), child_bound, &mut current, &mut out);
        out.sort_unstable();
        table[size] = out;
    }
    table
}

/// Appends to `out` every root-plus-children string whose children form a
/// non-decreasing sequence of table items starting at `from`.
fn extend_children<'a>(
    table: &'a [Vec<String>],
    remaining: usize,
    from: (usize, usize),
    slots: usize,
    current: &mut Vec<&'a str>,
    out: &mut Vec<String>,
) {
    if remaining == 0 {
        out.push(join_children(current));
        return;
    }
    if slots == 0 {
        return;
    }
    for size in from.0..=remaining.min(table.len() - 1) {
        let rest = remaining - size;
        // Later children are at least as large as this one.
        if rest != 0 && (rest < size || slots == 1) {
            continue;
        }
        let start = if size == from.0 { from.1 } else { 0 };
        for idx in start..table[size].len() {
            current.push(&table[size][idx]);
            extend_children(table, rest, (size, idx), slots - 1, current, out);
            current.pop();
        }
    }
}

fn join_children(children: &[&str]) -> String {
    if children.is_empty() {
        return "C".to_string();
    }
    let mut sorted = children.to_vec();
    sorted.sort_unstable();
    let mut s = String::with_capacity(3 + sorted.iter().map(|c| c.len() + 1).sum::<usize>());
    s.push_str("C(");
    s.push_str(&sorted.join(","));
    s.push(')');
    s
}

/// Top-level children of a `C(...)` shape string.
fn split_children(shape: &str) -> Vec<&str> {
    if shape.len() <= 1 {
        return Vec::new();
    }
    let inner = &shape[2..shape.len() - 1];
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut start = 0;
    for (i, b) in inner.bytes().enumerate() {
        match b {
            b'(' => depth += 1,
            b')' => depth -= 1,
            b',' if depth == 0 => {
                out.push(&inner[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&inner[start..]);
    out
}

fn free_encodings(order: usize, max_degree: usize) -> Vec<TreeEncoding> {
    let half = order / 2;
    let table = rooted_shapes(half.max((order - 1) / 2), max_degree - 1);
    let mut out: Vec<String> = Vec::new();

    // Unique centroid: every branch has fewer than order/2 vertices.
    let branch_max = (order - 1) / 2;
    if branch_max >= 1 || order == 1 {
        let limited: Vec<Vec<String>> = table
            .iter()
            .enumerate()
            .map(|(s, v)| if s <= branch_max { v.clone() } else { Vec::new() })
            .collect();
        let mut current = Vec::new();
        extend_children(&limited, order - 1, (1, 0), max_degree, &mut current, &mut out);
    }

    // Two centroids joined by an edge, each side of size order/2.
    if order.is_multiple_of(2) {
        let halves = &table[half];
        for i in 0..halves.len() {
            for j in i..halves.len() {
                let (a, b) = (&halves[i], &halves[j]);
                let hang = |top: &str, other: &str| {
                    let mut kids = split_children(top);
                    kids.push(other);
                    join_children(&kids)
                };
                out.push(hang(a, b).min(hang(b, a)));
            }
        }
    }
    out.sort_unstable();
    out.into_iter().map(TreeEncoding::new).collect()
}

fn rooted_encodings(order: usize, max_degree: usize) -> Vec<TreeEncoding> {
    let table = rooted_shapes(order - 1, max_degree - 1);
    let mut out: Vec<String> = table[order - 1].iter().map(|s| format!("O({s})")).collect();
    out.sort_unstable();
    out.into_iter().map(TreeEncoding::new).collect()
}

/// All chemical trees of the requested order, one per isomorphism class.
pub fn enumerate_chemical_trees(order: usize, max_degree: usize) -> Result<TreeStream<ChemicalTree>> {
    EnumerationRequest::free(order).max_degree(max_degree).validate()?;
    Ok(TreeStream::new(free_encodings(order, max_degree), max_degree))
}

/// All pendent-rooted chemical trees (alcohol skeletons) of the requested order.
pub fn enumerate_pendent_rooted(
    order: usize,
    max_degree: usize,
) -> Result<TreeStream<PendentRootedTree>> {
    EnumerationRequest::rooted(order).max_degree(max_degree).validate()?;
    Ok(TreeStream::new(rooted_encodings(order, max_degree), max_degree))
}

/// Extremely branched trees (free, or every pendant rooting of them).
pub fn enumerate_extremely_branched(
    order: usize,
    rooted: bool,
    max_degree: usize,
) -> Result<Vec<TreeEncoding>> {
    enumerate(&EnumerationRequest {
        order,
        rooted,
        extremely_branched_only: true,
        max_degree,
    })
}

/// Canonical encodings satisfying `req`, ascending.
pub fn enumerate(req: &EnumerationRequest) -> Result<Vec<TreeEncoding>> {
    req.validate()?;
    let codes = if req.rooted {
        rooted_encodings(req.order, req.max_degree)
    } else {
        free_encodings(req.order, req.max_degree)
    };
    if !req.extremely_branched_only {
        return Ok(codes);
    }
    let mut kept = Vec::new();
    for code in codes {
        let parsed = parse_tree_with_max_degree(code.as_str(), req.max_degree)?;
        if is_extremely_branched(parsed.tree())? {
            kept.push(code);
        }
    }
    Ok(kept)
}

/// Number of isomorphism classes among all labelled trees on `order`
/// vertices with degrees at most `max_degree`, found by decoding Prüfer
/// sequences. Independent of the main enumerator; used as a test oracle.
///
/// Every tree has a labelling whose degrees do not increase with the label,
/// so only sequences in which label `i` occurs at least as often as label
/// `i + 1` are decoded. All orderings of each such multiset are visited.
pub fn prufer_oracle_count(order: usize, max_degree: usize) -> Result<usize> {
    if !(2..=PRUFER_MAX_ORDER).contains(&order) {
        return Err(Error::OrderOutOfRange {
            order,
            min: 2,
            max: PRUFER_MAX_ORDER,
        });
    }
    if max_degree < 1 {
        return Err(Error::InvalidArgument("max degree must be positive".into()));
    }
    if order == 2 {
        return Ok(1);
    }
    let mut seen = std::collections::HashSet::new();
    let mut counts = vec![0u8; order];
    let mut seq = vec![0u8; order - 2];
    let cap = (max_degree - 1).min(order - 2);
    degree_vectors(0, order - 2, cap, &mut counts, &mut |counts| {
        let mut left = counts.to_vec();
        arrangements(0, &mut seq, &mut left, &mut |s| {
            seen.insert(oracle::free_code(order, s));
        });
    });
    Ok(seen.len())
}

/// Non-increasing occurrence counts summing to `remaining`, each at most `cap`.
fn degree_vectors(pos: usize, remaining: usize, cap: usize, counts: &mut [u8], visit: &mut impl FnMut(&[u8])) {
    if remaining == 0 {
        visit(counts);
        return;
    }
    if pos == counts.len() {
        return;
    }
    for c in (1..=cap.min(remaining)).rev() {
        counts[pos] = c as u8;
        degree_vectors(pos + 1, remaining - c, c, counts, visit);
    }
    counts[pos] = 0;
}

/// Every distinct ordering of the multiset described by `left`.
fn arrangements(pos: usize, seq: &mut [u8], left: &mut [u8], visit: &mut impl FnMut(&[u8])) {
    if pos == seq.len() {
        visit(seq);
        return;
    }
    for v in 0..left.len() {
        if left[v] > 0 {
            left[v] -= 1;
            seq[pos] = v as u8;
            arrangements(pos + 1, seq, left, visit);
            left[v] += 1;
        }
    }
}

/// Allocation-free canonical codes for small labelled trees.
pub(crate) mod oracle {
    const N: usize = 16;

    /// Edges of the labelled tree encoded by a Prüfer sequence.
    pub fn prufer_decode(order: usize, seq: &[u8], edges: &mut [(u8, u8)]) {
        let mut degree = [1u8; N];
        for &v in seq {
            degree[v as usize] += 1;
        }
        let mut ptr = 0usize;
        while degree[ptr] != 1 {
            ptr += 1;
        }
        let mut leaf = ptr;
        for (i, &v) in seq.iter().enumerate() {
            edges[i] = (leaf as u8, v);
            degree[v as usize] -= 1;
            if degree[v as usize] == 1 && (v as usize) < ptr {
                leaf = v as usize;
            } else {
                ptr += 1;
                while degree[ptr] != 1 {
                    ptr += 1;
                }
                leaf = ptr;
            }
        }
        edges[order - 2] = (leaf as u8, (order - 1) as u8);
    }

    /// Balanced-parenthesis code (as bits, MSB first) of the free tree
    /// encoded by `seq`, minimised over centroids.
    pub fn free_code(order: usize, seq: &[u8]) -> u64 {
        let mut edges = [(0u8, 0u8); N];
        prufer_decode(order, seq, &mut edges);
        let mut adj = [[0u8; N]; N];
        let mut deg = [0usize; N];
        for &(u, v) in &edges[..order - 1] {
            adj[u as usize][deg[u as usize]] = v;
            deg[u as usize] += 1;
            adj[v as usize][deg[v as usize]] = u;
            deg[v as usize] += 1;
        }
        let (parent, order_vec) = traverse(&adj, &deg, order, 0);
        let mut size = [1usize; N];
        for &v in order_vec[1..order].iter().rev() {
            size[parent[v] as usize] += size[v];
        }
        let mut best = u64::MAX;
        for v in 0..order {
            let mut largest = order - size[v];
            for &u in &adj[v][..deg[v]] {
                if parent[u as usize] as usize == v && u as usize != v {
                    largest = largest.max(size[u as usize]);
                }
            }
            if 2 * largest <= order {
                best = best.min(rooted_code(&adj, &deg, order, v));
            }
        }
        best
    }

    fn traverse(adj: &[[u8; N]; N], deg: &[usize; N], order: usize, root: usize) -> ([u8; N], [usize; N]) {
        let mut parent = [u8::MAX; N];
        let mut seq = [0usize; N];
        parent[root] = root as u8;
        seq[0] = root;
        let (mut head, mut tail) = (0, 1);
        while head < tail {
            let v = seq[head];
            head += 1;
            for &u in &adj[v][..deg[v]] {
                if parent[u as usize] == u8::MAX {
                    parent[u as usize] = v as u8;
                    seq[tail] = u as usize;
                    tail += 1;
                }
            }
        }
        debug_assert_eq!(tail, order);
        (parent, seq)
    }

    /// Code of the tree hung from `root`; every code is the bit string
    /// `1 children… 0` left-aligned in a u64 with equal total length 2n, so
    /// numeric order equals lexicographic order for the full tree.
    fn rooted_code(adj: &[[u8; N]; N], deg: &[usize; N], order: usize, root: usize) -> u64 {
        let (parent, seq) = traverse(adj, deg, order, root);
        let mut bits = [0u64; N];
        let mut len = [0u32; N];
        for &v in seq[..order].iter().rev() {
            let mut kids = [(0u64, 0u32); N];
            let mut k = 0;
            for &u in &adj[v][..deg[v]] {
                let u = u as usize;
                if parent[u] as usize == v && u != v {
                    // Left-align for lexicographic comparison.
                    kids[k] = (bits[u] << (64 - len[u]), len[u]);
                    k += 1;
                }
            }
            kids[..k].sort_unstable();
            let mut code = 1u64;
            let mut l = 1u32;
            for &(aligned, kl) in &kids[..k] {
                code = (code << kl) | (aligned >> (64 - kl));
                l += kl;
            }
            bits[v] = code << 1;
            len[v] = l + 1;
        }
        bits[root]
    }
}
