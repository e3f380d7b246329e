pub mod audit;
pub mod dirichlet;
pub mod epstein;
pub mod error;
pub mod numerics;
pub mod phase;
pub mod report;
pub mod zeros;
pub mod zeta;

pub use error::{Error, Result};
pub use numerics::{EMParams, EvalResult};
