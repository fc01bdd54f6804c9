//! Laplacians, spectral-radius bounds and structural-set heuristics.

mod laplacian;
mod rho;
mod suggest;

pub use laplacian::{laplacian, LaplacianKind};
pub use rho::{estimate_rho, loopless_keep, RhoEstimate, RhoLevel};
pub use suggest::{exposed_boundary_scores, suggest_structural_sets, Strategy, Suggestion, EXHAUSTIVE_MAX};

use thiserror::Error;

use crate::graph::GraphError;
use crate::reduce::ReduceError;
use crate::regions::RegionError;
use crate::wfield::RootError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AppsError {
    #[error("vertex v{} carries a loop", .0 + 1)]
    HasLoop(usize),
    #[error("weight at (v{}, v{}) is not 0 or 1", .i + 1, .j + 1)]
    NotSimple { i: usize, j: usize },
    #[error("edge (v{}, v{}) has no reverse", .i + 1, .j + 1)]
    NotSymmetric { i: usize, j: usize },
    #[error("graph has an entry with positive π")]
    NotPiClass,
    #[error("Gershgorin-type region is not bounded")]
    Unbounded,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Roots(#[from] RootError),
}
