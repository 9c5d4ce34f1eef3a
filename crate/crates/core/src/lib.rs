//! Exact and numeric tools for the isochronicity problem of complex
//! polynomial Hamiltonian centers.

pub mod algext;
pub mod bipoly;
pub mod criteria;
pub mod error;
pub mod field;
pub mod flow;
pub mod gauss;
pub mod homogeneous;
pub mod infinity;
pub mod jacobian;
pub mod parser;
pub mod ratfn;
pub mod report;
pub mod resultant;
pub mod roots;
pub mod system;
pub mod unipoly;

pub use error::{CoreError, Result};
pub use field::{ArithError, Field};
pub use gauss::GaussianRational;
