//! Concrete semigroup backends: finite tables, free (commutative) words and
//! the infinite symbolic families used by fixtures.

pub mod bicyclic;
pub mod expvec;
pub mod symbolic;
pub mod table;
pub mod words;

pub use bicyclic::Bicyclic;
pub use expvec::FreeCommutative;
pub use symbolic::InfiniteLeftZero;
pub use table::CayleyTable;
pub use words::FreeWords;
