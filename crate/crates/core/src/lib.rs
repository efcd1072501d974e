//! Exact 3-colouring for graphs with no induced `P_t` and no odd cycle of
//! length at most `t - 4`, for odd `t >= 9`.
//!
//! The pipeline removes vertices dominated by a non-neighbour, anchors the
//! remaining graph on a shortest odd cycle, precolours the cycle together with
//! a bounded dominating set, and reduces every precolouring to a 2-list
//! colouring instance solved through 2-SAT.
//!
//! ```
//! use tricol::{graph::named, solve, SolveResult};
//!
//! let g = named::cycle(7);
//! match solve(&g, 9).unwrap() {
//!     SolveResult::ThreeColourable(c) => assert!(tricol::validate_colouring(&g, &c)),
//!     other => panic!("unexpected verdict {other:?}"),
//! }
//! ```

pub mod decomposition;
pub mod graph;
pub mod palette;
pub mod recognizers;
pub mod solver;
pub mod testkit;
pub mod two_list;

pub use graph::{parse_dimacs, Graph, GraphError, Vertex, VertexSet};
pub use palette::{Colour, ColourList, Palette};
pub use recognizers::{in_class, ClassReport, SearchError, Violation};
pub use solver::{solve, solve_with, validate_colouring, Certificate, SolveOptions, SolveResult};
