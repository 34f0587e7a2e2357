//! Zig-zag witnesses of behavioural equivalence: construction, text format
//! and an independent checker.
//!
//! A zig-zag is a row of coalgebras `N_0, ..., N_L` joined by one morphism
//! between each pair of neighbours, with directions alternating. Nodes whose
//! arrows all point outwards carry a relating element; the images of
//! neighbouring relating elements must agree in the node between them.

mod build;
mod format;
mod verify;

pub use build::{cubic_zigzag, ghat_zigzag};
pub use format::{parse_zigzag, write_zigzag};
pub use verify::{verify_zigzag, Check, CheckResult, Report};

use std::fmt;
use std::str::FromStr;

use crate::automata::SemiringTag;
use crate::linalg::{RMat, RVec};

/// The functor whose coalgebras make up the nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctorTag {
    /// `S x (-)^A` over the given semiring.
    Cubic(SemiringTag),
    /// `Ĝ` on positively convex algebras.
    Ghat,
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorTag::Cubic(tag) => write!(f, "cubic {tag}"),
            FunctorTag::Ghat => f.write_str("ghat"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    FreeModule,
    GeneratedModule,
    FreePca,
    GeneratedPca,
}

impl NodeKind {
    pub const ALL: [NodeKind; 4] = [NodeKind::FreeModule, NodeKind::GeneratedModule, NodeKind::FreePca, NodeKind::GeneratedPca];

    pub fn name(self) -> &'static str {
        match self {
            NodeKind::FreeModule => "FREE_MODULE",
            NodeKind::GeneratedModule => "GENERATED_MODULE",
            NodeKind::FreePca => "FREE_PCA",
            NodeKind::GeneratedPca => "GENERATED_PCA",
        }
    }

    pub fn is_free(self) -> bool {
        matches!(self, NodeKind::FreeModule | NodeKind::FreePca)
    }

    pub fn is_pca(self) -> bool {
        matches!(self, NodeKind::FreePca | NodeKind::GeneratedPca)
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NodeKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        NodeKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown node kind '{s}'"))
    }
}

/// A coalgebra on the carrier generated by `generators` inside `Q^dim`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigZagNode {
    pub kind: NodeKind,
    pub dim: usize,
    pub generators: Vec<RVec>,
    pub out: RVec,
    pub trans: Vec<RMat>,
}

/// Linear map from node `from` to node `to`; `matrix` is `dim(to) x dim(from)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    pub from: usize,
    pub to: usize,
    pub matrix: RMat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZigZag {
    pub functor: FunctorTag,
    pub alphabet: Vec<String>,
    pub nodes: Vec<ZigZagNode>,
    pub morphisms: Vec<Morphism>,
    /// `(node, element)` for every node with outgoing arrows.
    pub relating: Vec<(usize, RVec)>,
    pub x1: RVec,
    pub x2: RVec,
}

impl ZigZag {
    /// Indices of nodes with at least one incoming arrow.
    pub fn sinks(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.morphisms.iter().map(|m| m.to).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn relating_element(&self, node: usize) -> Option<&RVec> {
        self.relating.iter().find(|(i, _)| *i == node).map(|(_, v)| v)
    }
}
