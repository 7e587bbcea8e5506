//! Hyperbolic 3-space geometry, signed volumes of polyhedral chains, and
//! numerical checks of Schläfli-type volume derivative formulas.

pub mod error;
pub mod harness;
pub mod kernel;
pub mod oracle;
pub mod pleated;
pub mod schlafli;
pub mod tracks;
pub mod volume;

pub use error::{Error, Result};
