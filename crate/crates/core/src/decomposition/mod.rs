//! Structural skeleton around a base odd cycle: dominated-vertex removal,
//! classification of cycle neighbours, the bounded dominating sets used for
//! precolouring, and the extra machinery for `Y*` vertices.
//!
//! Every function here assumes its input lies in the target class and reports
//! a [`StructureError`] as soon as an expected structural property fails. The
//! solver treats such errors as evidence that the input is out of class.

mod cycle;
pub mod dump;
mod long;
mod preprocess;
mod short;
mod star;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Vertex;

pub use cycle::{classify, find_base_cycle, CycleCase, CycleContext, VertexClass, YComponent};
pub use long::compute_x_long;
pub use preprocess::{preprocess, restore_colouring, PreprocessedGraph};
pub use short::compute_x_short;
pub use star::{compute_star, StarBlock, StarContext};

#[derive(Debug, Error, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureError {
    #[error("graph is bipartite; no base cycle exists")]
    Bipartite,
    #[error("shortest odd cycle has length {len}, expected t-2 or t")]
    UnexpectedOddGirth { len: usize },
    #[error("vertex {vertex} has a cycle neighbourhood matching no class")]
    UnclassifiableNeighbour { vertex: Vertex },
    #[error("vertex {vertex} lies at distance three or more from the base cycle")]
    DistanceThreeVertex { vertex: Vertex },
    #[error("adjacent vertices {u} and {v} fall in the same class")]
    UnstableClass { u: Vertex, v: Vertex },
    #[error("component of G[Y] containing {vertex} is not bipartite")]
    NonBipartiteYComponent { vertex: Vertex },
    #[error(
        "vertices {u} and {v} share a side of a Y-component but see different cycle neighbours"
    )]
    SideNeighbourhoodMismatch { u: Vertex, v: Vertex },
    #[error("edge {y}-{t} joins Y to T in the long case")]
    YTEdge { y: Vertex, t: Vertex },
    #[error("Y-component {vertices:?} fits no classification")]
    ComponentUnclassifiable { vertices: Vec<Vertex> },
    #[error("Y* structure violated at index {index}: {reason}")]
    StarStructureViolation { index: usize, reason: String },
}

/// A size bound that the construction is expected to respect.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: &'static str,
    pub value: usize,
    pub bound: usize,
}

impl BoundCheck {
    pub fn new(name: &'static str, value: usize, bound: usize) -> BoundCheck {
        BoundCheck { name, value, bound }
    }

    pub fn holds(&self) -> bool {
        self.value <= self.bound
    }
}

/// Why a component of `G[Y]` cannot survive precolouring unreduced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "tag")]
pub enum ComponentTag {
    /// Every vertex has a neighbour in `X`.
    I,
    /// A single vertex whose neighbourhood is inside `N(c)` for a cycle vertex.
    II { cycle_index: usize, c: Vertex },
    /// A single vertex of `Y*_i`, handled by the block colouring.
    #[serde(rename = "II'")]
    IIPrime { star_index: usize },
    /// Short case, bipartite with the three witnessed properties.
    #[serde(rename = "III")]
    IIIShort {
        b1: Vertex,
        b2: Vertex,
        x1: Vertex,
        x2: Vertex,
    },
    /// Long case, bipartite; `c_double_prime` is set for subcase D.
    #[serde(rename = "III")]
    IIILong {
        subcase: LongSubcase,
        /// Whether the roles of the two sides were swapped.
        swapped: bool,
        c: Vertex,
        c_prime: Vertex,
        c_double_prime: Option<Vertex>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LongSubcase {
    C,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifiedComponent {
    pub vertices: Vec<Vertex>,
    pub side1: Vec<Vertex>,
    pub side2: Vec<Vertex>,
    pub tag: ComponentTag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum XParts {
    Short {
        q: Vec<Vertex>,
        r: Vec<Vertex>,
        w: Vec<Vertex>,
    },
    Long {
        m: Vec<Vertex>,
        b: Vec<Vertex>,
        w: Vec<Vertex>,
        augmented: Vec<Vertex>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XReport {
    pub x: Vec<Vertex>,
    pub parts: XParts,
    pub components: Vec<ClassifiedComponent>,
    pub bounds: Vec<BoundCheck>,
}

pub(crate) fn sorted_dedup(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v.dedup();
    v
}
