//! Exact equisingularity invariants of reduced plane curve germs.

pub mod branch;
pub mod contact;
pub mod doc;
pub mod eggers;
pub mod error;
pub mod ext;
pub mod newton;
pub mod polar;
pub mod random;
pub mod report;

pub use error::{Error, Result};
