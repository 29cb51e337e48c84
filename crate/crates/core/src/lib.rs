//! Exact computations around hereditary atomicity and the ascending chain
//! condition on principal ideals: lattice monoids, a tangent-line construction
//! of a rank-2 lattice monoid, Puiseux monoids, abelian group classification
//! and monoid algebras over fields of positive characteristic.

pub mod algebra;
pub mod construction;
pub mod exactnum;
pub mod groups;
pub mod lattice;
pub mod primes;
pub mod puiseux;
pub mod report;
pub mod serde_util;
