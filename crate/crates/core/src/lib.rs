pub mod algebra;
pub mod cech;
pub mod complex;
pub mod correlation;
pub mod error;
pub mod homcx;
pub mod koszul;
pub mod linalg;
pub mod random;
pub mod spectral;
pub mod strings;

pub use error::{Error, Result};

/// Engine version recorded in reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
