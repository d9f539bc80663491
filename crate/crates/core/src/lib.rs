pub mod bcourant;
pub mod cli;
pub mod dirac;
pub mod document;
pub mod error;
pub mod expr;
pub mod geometry;
pub mod groupoid;
pub mod homogeneous;
pub mod infinitesimal;
pub mod linalg;
pub mod report;
pub mod sampling;

pub use error::{Error, Result};
