//! Interference correlation and joint success probabilities in two-tier
//! cellular networks with clustered small cells.

pub mod correlation;
pub mod csvfmt;
pub mod error;
pub mod geometry;
pub mod jsp;
pub mod model;
pub mod presets;
pub mod rng;
pub mod simkit;
pub mod specfun;
pub mod stats;
pub mod validation;

pub use error::{Error, Result};
pub use model::{HcnModel, RadioParams, SbsTier, UserClass};
