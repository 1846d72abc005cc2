//! Exact formal normal forms for everywhere 2-nondegenerate real hypersurfaces in `C³`,
//! relative to the tube over the light cone `v = P(z, ζ, z̄, ζ̄)`.

pub mod cli;
pub mod error;
pub mod hypersurface;
pub mod json;
pub mod linalg;
pub mod map;
pub mod model;
pub mod normalform;
pub mod reconstruct;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
pub use scalar::GaussQ;
pub use series::{HolJet, Mono, Trunc, Var, WSeries};
