//! Analytic and Monte Carlo tools for deciding when probabilistic error
//! cancellation beats raw sampling in a certify-the-energy benchmark.

pub mod advantage;
pub mod analytics;
pub mod centering;
pub mod error;
pub mod hamiltonian;
pub mod report;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};
