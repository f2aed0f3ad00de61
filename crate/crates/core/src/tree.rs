//! Tree representations: chemical trees, pendent-rooted trees (alcohol
//! skeletons), vertex-weighted trees and directed trees.
//!
//! # Text format
//!
//! Trees are written in a nested-parenthesis grammar:
//!
//! ```text
//! Node     := Label Children?
//! Children := '(' Node (',' Node)* ')'
//! Label    := 'O' | 'C'
//! ```
//!
//! No whitespace is allowed inside an encoding (leading and trailing
//! whitespace is trimmed). At most one `O` may appear and only as the
//! outermost node; an encoding starting with `O` denotes a pendent-rooted
//! tree whose root is the oxygen. Vertex ids are assigned in pre-order, so
//! the outermost node is vertex 0. Error positions are 0-based byte offsets
//! into the trimmed text.
//!
//! A JSON parent-array form is accepted as well:
//!
//! ```text
//! {"parent": [null, 0, 1, 1], "root": 0, "free": false}
//! ```
//!
//! `parent[v]` is the neighbour of `v` on the path to `root` and is `null`
//! exactly at `root`. With `"free": false` (the default) the tree is
//! pendent-rooted at `root`; with `"free": true` it is an unrooted chemical
//! tree and `root` only anchors the parent pointers.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum vertex degree of a chemical tree unless configured otherwise.
pub const DEFAULT_MAX_DEGREE: usize = 4;

/// Comparison tolerance for real-valued weights.
pub const WEIGHT_TOLERANCE: f64 = 1e-9;

/// A text encoding in the nested-parenthesis grammar.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TreeEncoding(String);

impl TreeEncoding {
    pub fn new(text: impl Into<String>) -> Self {
        TreeEncoding(text.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for TreeEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for TreeEncoding {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// Unrooted tree with vertex degrees bounded by `max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChemicalTree {
    adj: Vec<Vec<usize>>,
    max_degree: usize,
}

impl ChemicalTree {
    pub fn from_edges(order: usize, edges: &[(usize, usize)], max_degree: usize) -> Result<Self> {
        if order < 2 {
            return Err(Error::InvalidTree(format!(
                "order must be at least 2, got {order}"
            )));
        }
        if edges.len() != order - 1 {
            return Err(Error::InvalidTree(format!(
                "a tree of order {order} needs {} edges, got {}",
                order - 1,
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); order];
        let mut seen = BTreeSet::new();
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= order {
                    return Err(Error::UnknownVertex { vertex: w, order });
                }
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at vertex {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidTree(format!("duplicate edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let tree = ChemicalTree { adj, max_degree };
        let reached = tree.bfs_order(0).len();
        if reached != order {
            return Err(Error::InvalidTree("graph is not connected".into()));
        }
        tree.check_degree_bound(max_degree)?;
        Ok(tree)
    }

    /// The path on `order` vertices, ids in path order.
    pub fn path(order: usize) -> Result<Self> {
        let edges: Vec<_> = (1..order).map(|v| (v - 1, v)).collect();
        ChemicalTree::from_edges(order, &edges, DEFAULT_MAX_DEGREE.max(2))
    }

    /// The star with centre 0 and `leaves` leaves, degree bound raised if needed.
    pub fn star(leaves: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        ChemicalTree::from_edges(leaves + 1, &edges, DEFAULT_MAX_DEGREE.max(leaves))
    }

    fn check_degree_bound(&self, max_degree: usize) -> Result<()> {
        for (v, nb) in self.adj.iter().enumerate() {
            if nb.len() > max_degree {
                return Err(Error::DegreeBound {
                    vertex: v,
                    degree: nb.len(),
                    max_degree,
                });
            }
        }
        Ok(())
    }

    /// Same tree with a different degree bound.
    pub fn with_max_degree(&self, max_degree: usize) -> Result<Self> {
        self.check_degree_bound(max_degree)?;
        Ok(ChemicalTree {
            adj: self.adj.clone(),
            max_degree,
        })
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_pendent(&self, v: usize) -> bool {
        self.adj[v].len() == 1
    }

    pub fn pendent_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| self.is_pendent(v)).collect()
    }

    pub fn internal_vertices(&self) -> Vec<usize> {
        (0..self.order()).filter(|&v| !self.is_pendent(v)).collect()
    }

    fn bfs_order(&self, source: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut order = Vec::with_capacity(self.order());
        let mut queue = VecDeque::from([source]);
        seen[source] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    queue.push_back(u);
                }
            }
        }
        order
    }

    /// Breadth-first distances from `source`.
    pub fn distances_from(&self, source: usize) -> Result<Vec<usize>> {
        if source >= self.order() {
            return Err(Error::UnknownVertex {
                vertex: source,
                order: self.order(),
            });
        }
        let mut dist = vec![usize::MAX; self.order()];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adj[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        Ok(dist)
    }

    pub fn diameter(&self) -> usize {
        let far = |s: usize| {
            let d = self.distances_from(s).expect("vertex in range");
            d.iter()
                .enumerate()
                .max_by_key(|&(_, &x)| x)
                .map(|(v, &x)| (v, x))
                .unwrap()
        };
        let (a, _) = far(0);
        far(a).1
    }

    /// Parent pointers of a traversal rooted at `root` (`parent[root] == root`)
    /// together with the traversal order (parents before children).
    fn rooted_structure(&self, root: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.order();
        let mut parent = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &u in &self.adj[v] {
                if parent[u] == usize::MAX {
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        (parent, order)
    }

    /// Sorted-children encoding of the tree hung from `root`.
    fn encode_from(&self, root: usize, root_label: char) -> String {
        let (parent, order) = self.rooted_structure(root);
        let mut code: Vec<String> = vec![String::new(); self.order()];
        for &v in order.iter().rev() {
            let mut kids: Vec<String> = self.adj[v]
                .iter()
                .filter(|&&u| v == root || u != parent[v])
                .map(|&u| std::mem::take(&mut code[u]))
                .collect();
            kids.sort_unstable();
            let label = if v == root { root_label } else { 'C' };
            code[v] = if kids.is_empty() {
                label.to_string()
            } else {
                let mut s = String::with_capacity(2 + kids.iter().map(|k| k.len() + 1).sum::<usize>());
                s.push(label);
                s.push('(');
                s.push_str(&kids.join(","));
                s.push(')');
                s
            };
        }
        std::mem::take(&mut code[root])
    }

    /// The one or two centroids, ascending.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.order();
        let (parent, order) = self.rooted_structure(0);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if v != 0 {
                size[parent[v]] += size[v];
            }
        }
        let mut out = Vec::with_capacity(2);
        for v in 0..n {
            let mut largest = n - size[v];
            for &u in &self.adj[v] {
                if parent[u] == v && u != v {
                    largest = largest.max(size[u]);
                }
            }
            if 2 * largest <= n {
                out.push(v);
            }
        }
        out
    }

    /// Canonical encoding: rooted at the centroid, children sorted; with two
    /// centroids the lexicographically smaller rooting is taken.
    pub fn canonical_form(&self) -> TreeEncoding {
        let code = self
            .centroids()
            .into_iter()
            .map(|c| self.encode_from(c, 'C'))
            .min()
            .expect("a tree has a centroid");
        TreeEncoding(code)
    }

    pub fn rooted_at(&self, root: usize) -> Result<PendentRootedTree> {
        PendentRootedTree::new(self.clone(), root)
    }

    /// One rooted tree per root-preserving isomorphism class of pendant rootings.
    pub fn pendant_rootings(&self) -> Vec<PendentRootedTree> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.pendent_vertices() {
            let rooted = PendentRootedTree {
                tree: self.clone(),
                root: v,
            };
            if seen.insert(rooted.canonical_form()) {
                out.push(rooted);
            }
        }
        out
    }

    /// Applies the vertex permutation `perm` (old id `v` becomes `perm[v]`).
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.order() {
            return Err(Error::LengthMismatch {
                left: perm.len(),
                right: self.order(),
            });
        }
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        ChemicalTree::from_edges(self.order(), &edges, self.max_degree)
    }

    pub fn parse(text: &str) -> Result<Self> {
        match parse_tree(text)? {
            ParsedTree::Free(t) => Ok(t),
            ParsedTree::Rooted(r) => Ok(r.tree),
        }
    }
}

impl AsRef<ChemicalTree> for ChemicalTree {
    fn as_ref(&self) -> &ChemicalTree {
        self
    }
}

impl fmt::Display for ChemicalTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical_form().as_str())
    }
}

/// Chemical tree with a distinguished pendent root (the hydroxyl oxygen).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PendentRootedTree {
    tree: ChemicalTree,
    root: usize,
}

impl PendentRootedTree {
    pub fn new(tree: ChemicalTree, root: usize) -> Result<Self> {
        if root >= tree.order() {
            return Err(Error::UnknownVertex {
                vertex: root,
                order: tree.order(),
            });
        }
        if tree.degree(root) != 1 {
            return Err(Error::RootNotPendent {
                root,
                degree: tree.degree(root),
            });
        }
        Ok(PendentRootedTree { tree, root })
    }

    pub fn parse(text: &str) -> Result<Self> {
        match parse_tree(text)? {
            ParsedTree::Rooted(r) => Ok(r),
            ParsedTree::Free(_) => Err(Error::InvalidTree(
                "expected a rooted encoding starting with 'O'".into(),
            )),
        }
    }

    pub fn tree(&self) -> &ChemicalTree {
        &self.tree
    }

    pub fn into_tree(self) -> ChemicalTree {
        self.tree
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn sub_root(&self) -> usize {
        self.tree.adj[self.root][0]
    }

    pub fn order(&self) -> usize {
        self.tree.order()
    }

    pub fn canonical_form(&self) -> TreeEncoding {
        TreeEncoding(self.tree.encode_from(self.root, 'O'))
    }

    /// Parent-array form anchored at the root.
    pub fn to_parent_array(&self) -> ParentArray {
        let (parent, _) = self.tree.rooted_structure(self.root);
        ParentArray {
            parent: parent
                .iter()
                .enumerate()
                .map(|(v, &p)| (v != self.root).then_some(p))
                .collect(),
            root: self.root,
            free: false,
        }
    }
}

impl AsRef<ChemicalTree> for PendentRootedTree {
    fn as_ref(&self) -> &ChemicalTree {
        &self.tree
    }
}

impl fmt::Display for PendentRootedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.canonical_form().as_str())
    }
}

/// Result of parsing an encoding: rooted when the outermost label is `O`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedTree {
    Rooted(PendentRootedTree),
    Free(ChemicalTree),
}

impl ParsedTree {
    pub fn tree(&self) -> &ChemicalTree {
        match self {
            ParsedTree::Rooted(r) => r.tree(),
            ParsedTree::Free(t) => t,
        }
    }

    pub fn canonical_form(&self) -> TreeEncoding {
        match self {
            ParsedTree::Rooted(r) => r.canonical_form(),
            ParsedTree::Free(t) => t.canonical_form(),
        }
    }
}

/// Parses either grammar text or the JSON parent-array form, with Δ = 4.
pub fn parse_tree(text: &str) -> Result<ParsedTree> {
    parse_tree_with_max_degree(text, DEFAULT_MAX_DEGREE)
}

pub fn parse_tree_with_max_degree(text: &str, max_degree: usize) -> Result<ParsedTree> {
    let text = text.trim();
    if text.starts_with('{') {
        return parse_parent_json(text, max_degree);
    }
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut labels: Vec<(u8, usize)> = Vec::new();
    let mut edges = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    let mut expect_node = true;
    loop {
        if expect_node {
            match bytes.get(pos) {
                Some(&c @ (b'C' | b'O')) => {
                    let id = labels.len();
                    labels.push((c, pos));
                    if let Some(&p) = stack.last() {
                        edges.push((p, id));
                    }
                    pos += 1;
                    if bytes.get(pos) == Some(&b'(') {
                        stack.push(id);
                        pos += 1;
                    } else {
                        expect_node = false;
                    }
                }
                Some(&c) => {
                    return Err(syntax(pos, format!("expected 'C' or 'O', found {:?}", c as char)))
                }
                None => return Err(syntax(pos, "expected 'C' or 'O', found end of input")),
            }
        } else {
            match bytes.get(pos) {
                None if stack.is_empty() => break,
                None => return Err(syntax(pos, "unclosed '('")),
                Some(b',') if !stack.is_empty() => {
                    pos += 1;
                    expect_node = true;
                }
                Some(b')') if !stack.is_empty() => {
                    stack.pop();
                    pos += 1;
                }
                Some(&c) => {
                    let what = if stack.is_empty() {
                        format!("unexpected {:?} after the outermost node", c as char)
                    } else {
                        format!("expected ',' or ')', found {:?}", c as char)
                    };
                    return Err(syntax(pos, what));
                }
            }
        }
    }

    let oxygens: Vec<_> = labels
        .iter()
        .enumerate()
        .filter(|(_, (c, _))| *c == b'O')
        .map(|(id, &(_, p))| (id, p))
        .collect();
    if oxygens.len() > 1 {
        return Err(Error::MultipleOxygen {
            position: oxygens[1].1,
        });
    }
    if let Some(&(id, p)) = oxygens.first() {
        if id != 0 {
            return Err(Error::OxygenNotRoot { position: p });
        }
    }
    let tree = ChemicalTree::from_edges(labels.len(), &edges, max_degree)?;
    if oxygens.is_empty() {
        Ok(ParsedTree::Free(tree))
    } else {
        Ok(ParsedTree::Rooted(PendentRootedTree::new(tree, 0)?))
    }
}

fn syntax(position: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        position,
        message: message.into(),
    }
}

/// JSON parent-array representation of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParentArray {
    pub parent: Vec<Option<usize>>,
    pub root: usize,
    #[serde(default)]
    pub free: bool,
}

fn parse_parent_json(text: &str, max_degree: usize) -> Result<ParsedTree> {
    let pa: ParentArray = serde_json::from_str(text)?;
    let n = pa.parent.len();
    if pa.root >= n {
        return Err(Error::UnknownVertex {
            vertex: pa.root,
            order: n,
        });
    }
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (v, p) in pa.parent.iter().enumerate() {
        match (v == pa.root, p) {
            (true, None) => {}
            (true, Some(_)) => {
                return Err(Error::InvalidTree(format!("parent of root {v} must be null")))
            }
            (false, None) => {
                return Err(Error::InvalidTree(format!("vertex {v} has no parent")))
            }
            (false, Some(p)) => edges.push((*p, v)),
        }
    }
    let tree = ChemicalTree::from_edges(n, &edges, max_degree)?;
    if pa.free {
        Ok(ParsedTree::Free(tree))
    } else {
        Ok(ParsedTree::Rooted(PendentRootedTree::new(tree, pa.root)?))
    }
}

/// Tree whose vertices carry non-negative weights.
#[derive(Debug, Clone, PartialEq)]
pub struct VertexWeightedTree {
    tree: ChemicalTree,
    weights: Vec<f64>,
    total: f64,
}

pub(crate) fn check_weights(weights: &[f64]) -> Result<()> {
    for (v, &w) in weights.iter().enumerate() {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidWeights(format!(
                "weight of vertex {v} is {w}; weights must be finite and non-negative"
            )));
        }
    }
    Ok(())
}

impl VertexWeightedTree {
    pub fn new(tree: ChemicalTree, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != tree.order() {
            return Err(Error::LengthMismatch {
                left: weights.len(),
                right: tree.order(),
            });
        }
        check_weights(&weights)?;
        let total = weights.iter().sum();
        Ok(VertexWeightedTree {
            tree,
            weights,
            total,
        })
    }

    /// All weights equal to one.
    pub fn unit(tree: ChemicalTree) -> Self {
        let n = tree.order();
        VertexWeightedTree {
            tree,
            weights: vec![1.0; n],
            total: n as f64,
        }
    }

    pub fn tree(&self) -> &ChemicalTree {
        &self.tree
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, v: usize) -> f64 {
        self.weights[v]
    }

    pub fn total_weight(&self) -> f64 {
        self.total
    }

    /// Orients every edge towards the internal vertex `terminal`.
    pub fn to_directed(&self, terminal: usize) -> Result<DirectedTree> {
        if terminal >= self.tree.order() {
            return Err(Error::UnknownVertex {
                vertex: terminal,
                order: self.tree.order(),
            });
        }
        if self.tree.is_pendent(terminal) {
            return Err(Error::PendentTerminal(terminal));
        }
        Ok(self.orient(terminal))
    }

    /// Like [`to_directed`](Self::to_directed) but accepts any terminal.
    pub(crate) fn orient(&self, terminal: usize) -> DirectedTree {
        let (parent, _) = self.tree.rooted_structure(terminal);
        let parent = parent
            .into_iter()
            .enumerate()
            .map(|(v, p)| (v != terminal).then_some(p))
            .collect();
        DirectedTree {
            parent,
            weights: self.weights.clone(),
            terminal,
        }
    }
}

impl AsRef<ChemicalTree> for VertexWeightedTree {
    fn as_ref(&self) -> &ChemicalTree {
        &self.tree
    }
}

/// Weighted tree with every arc pointing towards the terminal vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct DirectedTree {
    parent: Vec<Option<usize>>,
    weights: Vec<f64>,
    terminal: usize,
}

impl DirectedTree {
    pub fn new(parent: Vec<Option<usize>>, weights: Vec<f64>, terminal: usize) -> Result<Self> {
        let n = parent.len();
        if weights.len() != n {
            return Err(Error::LengthMismatch {
                left: weights.len(),
                right: n,
            });
        }
        if terminal >= n {
            return Err(Error::UnknownVertex {
                vertex: terminal,
                order: n,
            });
        }
        check_weights(&weights)?;
        for (v, p) in parent.iter().enumerate() {
            match p {
                None if v != terminal => {
                    return Err(Error::InvalidTree(format!(
                        "vertex {v} has no outbound arc but is not the terminal"
                    )))
                }
                Some(_) if v == terminal => {
                    return Err(Error::InvalidTree("terminal has an outbound arc".into()))
                }
                Some(p) if *p >= n => {
                    return Err(Error::UnknownVertex { vertex: *p, order: n })
                }
                _ => {}
            }
        }
        // Every walk along parents must end at the terminal within n steps.
        for start in 0..n {
            let mut v = start;
            let mut steps = 0;
            while let Some(p) = parent[v] {
                v = p;
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidTree("parent pointers contain a cycle".into()));
                }
            }
        }
        Ok(DirectedTree {
            parent,
            weights,
            terminal,
        })
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn terminal(&self) -> usize {
        self.terminal
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Degree of `v` in the underlying undirected tree.
    pub fn degree(&self, v: usize) -> usize {
        let incoming = self.parent.iter().filter(|p| **p == Some(v)).count();
        incoming + usize::from(self.parent[v].is_some())
    }

    /// Arcs `(tail, head)` sorted by tail.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.parent
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
            .collect()
    }

    /// Total weight of each vertex's subordinate group (itself plus every
    /// vertex with a directed path to it).
    pub fn subordinate_weights(&self) -> Vec<f64> {
        let n = self.order();
        let mut children = vec![Vec::new(); n];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                children[*p].push(v);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([self.terminal]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            queue.extend(children[v].iter().copied());
        }
        let mut f = self.weights.clone();
        for &v in order.iter().rev() {
            if let Some(p) = self.parent[v] {
                f[p] += f[v];
            }
        }
        f
    }

    pub fn to_undirected(&self) -> Result<VertexWeightedTree> {
        let n = self.order();
        let edges = self.arcs();
        let max_degree = (0..n).map(|v| self.degree(v)).max().unwrap_or(1);
        let tree = ChemicalTree::from_edges(n, &edges, max_degree)?;
        VertexWeightedTree::new(tree, self.weights.clone())
    }
}
