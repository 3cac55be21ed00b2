//! k-nearest-neighbour and Gilbert random geometric graphs on Poisson point
//! sets.
//!
//! The crate samples Poisson and fixed-count point sets, builds exact k-NN
//! and disc graphs over a grid index, analyses connectivity (components,
//! isolated vertices, vertex connectivity by Menger flows), detects local
//! obstruction events inside boxes of side `M * sqrt(log n)`, and runs
//! seeded Monte Carlo campaigns whose outputs are independent of thread
//! count.

pub mod cli;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod graph;
pub mod graph_analysis;
pub mod knn_graph;
pub mod local_events;
pub mod point_process;
pub mod rng;
pub mod selfcheck;

pub use error::{Error, Result};
