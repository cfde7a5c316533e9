//! Resistance distances and Kirchhoff indices of graphs, with closed-form
//! predictions and Monte Carlo checks for Erdős–Rényi graphs and a
//! Cramér–Rao demonstration for synchronization of translations.
//!
//! Modules, bottom-up:
//!
//! - [`graph`]: dense simple graphs, Laplacians, BFS distances, Wiener index.
//! - [`spectral`]: eigendecomposition, `trace(L^+)`, pseudoinverse,
//!   resistance distance, Kirchhoff index, operator norm.
//! - [`er`]: seeded `G(n, p)` sampling, centered Laplacian, `X_n`, the
//!   spectral event on `||L1||`.
//! - [`theory`]: closed-form expectation and fluctuation predictions.
//! - [`experiment`]: the Monte Carlo sweep and its CSV outputs.
//! - [`sync`]: least-squares synchronization and its efficiency check.

pub mod er;
pub mod error;
pub mod experiment;
pub mod format;
pub mod graph;
pub mod spectral;
pub mod sync;
pub mod theory;

pub use error::{Error, Result};
pub use graph::{Graph, Hops};
