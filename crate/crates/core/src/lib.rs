//! Knot concordance obstructions from Seifert matrices and satellite data.

pub mod arith;
pub mod error;
pub mod matrix;
pub mod polyring;

pub use error::{Error, Result};
pub mod seifert;
pub mod serde_util;
pub mod covers;
pub mod group;
pub mod linkform;
pub mod metarep;
pub mod etacalc;
pub mod knotfile;
pub mod obstruct;
