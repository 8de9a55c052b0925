//! Character theory of the automorphism group: generic tables, fixed-space
//! dimensions, Frobenius–Schur typing and symmetric-group characters.

mod real;
pub mod sn;
mod table;

pub use real::{real_classification, RealClass, RealType, RealTypeInfo};
pub use table::{CharacterTable, ClassExport, RowExport, TableExport};

#[cfg(test)]
mod tests;
