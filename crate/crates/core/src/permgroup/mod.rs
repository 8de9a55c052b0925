//! Finite permutation groups: elements, orbits, normalizers, conjugacy
//! classes and coset actions.

mod classes;
mod cosets;
mod group;
mod perm;

pub use classes::ConjugacyClassSet;
pub use cosets::CosetSpace;
pub use group::{orbit, GeneratedPermGroup, DEFAULT_ELEMENT_CAP};
pub use perm::{commutator, compose, Permutation, MAX_DEGREE};
