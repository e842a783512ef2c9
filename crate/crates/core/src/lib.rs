//! Sum-rank metric codes over finite field towers, with their generalized
//! weights and skew-polynomial evaluation codes.

pub mod codes;
pub mod error;
pub mod field;
pub mod lattice;
pub mod linalg;
pub mod metric;
pub mod skew;
pub mod weights;


pub use error::{Budget, Error, ErrorClass, Result};
pub use codes::LinearCode;
pub use field::{ArithOp, Block, BlockSpec, Elem, Field, FieldTower};
pub use lattice::SupportList;
pub use metric::BlockVector;

