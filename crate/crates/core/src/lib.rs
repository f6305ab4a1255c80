pub mod error;
pub mod surface;
pub mod curve;
mod arrangement;
pub mod intersection;
pub mod homology;
pub mod rotation;
pub mod cut;
pub mod theorem1;
pub mod word;
pub mod lantern;
pub mod symplectic;
mod text;

pub use error::{Error, Result};
