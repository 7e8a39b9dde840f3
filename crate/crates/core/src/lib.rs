//! State-sum machinery and a checker for the state-reducibility of the
//! Birkhoff diamond.

pub mod cap;
pub mod capmap;
pub mod certificates;
pub mod coloring;
pub mod error;
pub mod extension;
pub mod graph;
pub mod notation;
pub mod pipeline;
pub mod region;
pub mod snapshot;
pub mod statesum;
pub mod table;

pub use error::{Error, Result};
