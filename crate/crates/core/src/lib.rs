//! Chemical trees, their topological indices, the generalized Huffman
//! algorithm, extremal-tree search and boiling-point regressions for
//! simple saturated alcohols.

pub mod enumeration;
pub mod error;
pub mod extremal;
pub mod huffman;
pub mod indices;
pub mod qspr;
pub mod tree;

pub use error::{Error, Result};
pub use tree::{
    parse_tree, parse_tree_with_max_degree, ChemicalTree, DirectedTree, ParsedTree, PendentRootedTree,
    TreeEncoding, VertexWeightedTree,
};
