//! Exact reciprocal degree distance (RDD) and related distance-degree
//! indices on small simple graphs, the extremal graphs that maximise RDD
//! for a fixed number of cut vertices or cut edges, the edge-grafting
//! rewrites that push RDD upward, and exhaustive certification of the
//! extremal results on all small connected graphs.
//!
//! ```
//! use rdd_core::{codec::parse_edge_list, metrics::rdd, rational::Rational};
//!
//! let p3 = parse_edge_list("3; 0-1, 1-2").unwrap().graph;
//! assert_eq!(rdd(&p3).unwrap(), Rational::integer(7));
//! ```

pub mod codec;
pub mod error;
pub mod families;
pub mod graft;
pub mod graph;
pub mod iso;
pub mod metrics;
pub mod rational;
pub mod structure;
pub mod verify;

pub use error::{
    ArithmeticError, ExtremalError, GraftError, GraphError, MetricsError, StructureError,
    VerifyError,
};
pub use graph::{Edge, Graph, MAX_N};
pub use rational::Rational;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../README.md")]
    mod readme {}
    #[doc = include_str!("../../../book/src/indices.md")]
    mod indices {}
    #[doc = include_str!("../../../book/src/structure.md")]
    mod structure {}
    #[doc = include_str!("../../../book/src/families.md")]
    mod families {}
    #[doc = include_str!("../../../book/src/grafting.md")]
    mod grafting {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
