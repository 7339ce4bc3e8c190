//! Concrete polynomials: Newton polygons, the track tree, the derivative
//! ledger and resultant-based intersection multiplicities.

pub mod bipoly;
pub mod upoly;
pub mod polygon;
pub mod resultant;
pub mod tree;
pub mod verify;
