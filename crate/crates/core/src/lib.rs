//! Graded quiver algebras, their Frobenius and Nakayama data, and
//! fractional Calabi-Yau dimensions.

pub mod algebra;
pub mod analysis;
pub mod category;
pub mod constructions;
pub mod error;
pub mod frobenius;
pub mod groebner;
pub mod linalg;
pub mod quiver;

pub use error::{FcyError, Result};
