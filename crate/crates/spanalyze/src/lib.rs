//! Statistical and network-based analysis of research collaboration.
//!
//! The crate delineates science-and-technology domains from a local
//! bibliographic corpus (boolean keyword retrieval plus query
//! expansion), builds weighted coauthorship graphs over time windows,
//! extracts the boundary-spanning network of authors active in two or
//! more domains, and derives diversity, impact, and funding-regression
//! indicators from it.
//!
//! Most capabilities are demonstrated by a runnable example under
//! `examples/`; the `spanalyze` binary wraps the same library calls in
//! a staged, reproducible pipeline driven by a TOML config.

#![forbid(unsafe_code)]

pub mod analysis;
pub mod cli;
pub mod corpus;
pub mod delineation;
pub mod error;
pub mod graph;
pub mod indicators;
pub mod report;
pub mod taxonomy;

pub use error::{Error, Result};
