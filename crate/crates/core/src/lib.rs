//! Sierpinski carpet graphs: word labels, the word-level geodesic metric and
//! an explicit breadth-first oracle.
//!
//! The crate is `no_std` and only needs `alloc`. Threading, timing, file
//! formats and the command line live in the `carpet` crate.

#![no_std]

extern crate alloc;

pub mod error;
pub mod lattice;
pub mod metric;
pub mod oracle;
pub mod wiener;
pub mod word;

pub use error::{Error, ParseErrorKind, Result};
pub use lattice::{carpet_side, l1, pow3, LatticePoint};
pub use metric::{
    classify, distance, distance_with, find_h, hole_corners, obstruction_index, route_around, Axis,
    CaseKind, DistanceCase, DistanceTrace, HoleCorners, Route, Rule,
};
pub use oracle::{bfs_from, oracle_wiener, AdjacencyGraph, DEFAULT_ORACLE_LEVEL_CAP};
pub use word::{Vertex, VertexTable, Word, XLetter, YLetter, DEFAULT_WORD_LEVEL_CAP};
