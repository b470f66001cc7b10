//! Derived semigroups: adjoined identities and zeros, direct products,
//! quotients by an ideal, subsemigroups, free products, and homomorphisms
//! between backends.

pub mod adjoin;
pub mod free_product;
pub mod product;
pub mod rees;
pub mod retract;
pub mod sub;

pub use adjoin::{adjoin_identity, adjoin_zero, WithIdentity, WithZero};
pub use free_product::FreeProduct;
pub use product::{direct_product, DirectProduct};
pub use rees::{quotient_map, IdealSpec, ReesQuotient};
pub use retract::{ElementMap, Homomorphism};
pub use sub::{subsemigroup, subsemigroup_flags, Predicate, Subsemigroup, SubsemigroupFlags};
