//! Exact finite-field machinery for the differential data criterion and
//! the Artin–Schreier–Witt bookkeeping around it.

pub mod cartier;
pub mod construct;
pub mod criterion;
pub mod error;
pub mod gf;
pub mod laurent;
pub mod planner;
pub mod poly;
pub mod search;
pub mod witt;

pub use error::{Error, Result};
