pub mod automata;
pub mod error;
pub mod hilbert;
pub mod linalg;
pub mod pca_functor;
pub mod polyhedra;
mod text;
pub mod zigzag;

pub use error::{Error, Result};
