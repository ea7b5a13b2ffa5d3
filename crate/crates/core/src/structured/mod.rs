//! Dominating-path algorithms for interval, convex, bipartite permutation and
//! biconvex graphs, together with validators for the orderings they consume.
//!
//! Orderings are inputs: apart from the interval numbering nothing here
//! recognizes a class, so every algorithm validates its ordering first.

mod biconvex;
mod bipartite;
mod bpg;
mod decomposition;
mod interval;

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::GraphError;

pub use biconvex::{biconvex_frame, dom_path_biconvex, BiconvexFrame};
pub use bipartite::{two_dom_path_convex, validate_convex, validate_convex_y, validate_strong, Claim, OrderedBipartite, Window};
pub use bpg::dom_path_bpg;
pub use decomposition::{cb_decompose, validate_decomposition, Block, Decomposition};
pub use interval::{check_numbering, dom_path_interval, interval_order, Interval, IntervalFamily, IntervalOrder};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    X,
    Y,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::X => "x",
            Side::Y => "y",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{side}{index} out of range (side has {size} vertices)")]
    IndexOutOfRange { side: Side, index: usize, size: usize },
    #[error("duplicate edge x{0} y{1}")]
    DuplicateEdge(usize, usize),
    #[error("neighborhood of {side}{vertex} is not contiguous: missing {missing}")]
    NotConvex { side: Side, vertex: usize, missing: usize },
    #[error("strong ordering violated: x{xi}y{yc} and x{xk}y{ya} present but x{xi}y{ya} or x{xk}y{yc} missing")]
    NotStrong { xi: usize, xk: usize, ya: usize, yc: usize },
    #[error("flank neighborhoods not nested: N(x{inner}) is not contained in N(x{outer})")]
    FlankNotNested { inner: usize, outer: usize },
    #[error("no ordering of X puts x_L before x_R")]
    FrameOrder,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has no edges")]
    NoEdges,
    #[error("interval family is empty")]
    EmptyFamily,
    #[error("interval {id} has left endpoint {left} past right endpoint {right}")]
    InvertedInterval { id: usize, left: i64, right: i64 },
    #[error("interval ids must be exactly 0..{n}; {id} is {problem}")]
    BadIntervalId { id: usize, n: usize, problem: &'static str },
    #[error("ordering violates the interval numbering property at positions {i} < {j} < {k}")]
    NotIntervalOrder { i: usize, j: usize, k: usize },
    #[error("ordering is not a permutation of the vertices")]
    NotAPermutation,
    #[error("internal invariant failed: {0}")]
    Internal(String),
}
