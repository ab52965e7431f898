//! Exact minimum-sum coloring of trees.
//!
//! * [`treebank`]: rooted trees, colorings, random trees, JSON/DOT formats.
//! * [`construct`]: the recursively defined trees `T(i, j)` whose strength
//!   reaches `1 + ceil(Δ/2)`, and their padded variants.
//! * [`sumcolor`]: chromatic sum, strength and minimal-coloring counts by
//!   tree DP, plus an exhaustive reference solver.
//! * [`verify`]: sweeps that check the construction's properties.

pub mod construct;
pub mod error;
pub mod sumcolor;
pub mod treebank;
pub mod verify;

pub use error::{Error, Result};
