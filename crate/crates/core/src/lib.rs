//! Square-tiled surfaces built from finite-group data, the isotypic
//! decomposition of their homology under the automorphism group, and an
//! independent chain-level oracle for every multiplicity.

// Matrix and character-table code reads better with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod characters;
pub mod config;
pub mod error;
pub mod families;
pub mod homology;
pub mod io;
pub mod isotypic;
pub mod linalg;
pub mod lyapunov;
pub mod origami;
pub mod permgroup;
pub mod report;
pub mod search;
pub mod selftest;

pub use config::Config;
pub use error::{Error, Result};
