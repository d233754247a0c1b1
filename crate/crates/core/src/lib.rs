//! Geometrically local stabilizer and subsystem codes on hypercubic
//! lattices: construction, GF(2) group machinery, cleaning and restriction
//! transforms, and exact metrics (distance, linear distance, energy
//! barrier) for desk-scale instances.

pub mod budget;
pub mod code;
pub mod codefile;
pub mod error;
pub mod gf2;
pub mod group;
pub mod lattice;
pub mod layout;
pub mod metrics;
pub mod pauli;
pub mod report;
pub mod transforms;
pub mod zoo;

pub use budget::Budget;
pub use code::{CodeSpec, Locality, Role};
pub use codefile::{parse_code, serialize_code};
pub use error::{Error, Result};
pub use gf2::BitVec;
pub use group::{CodeGroups, GroupBasis, LogicalBasis};
pub use lattice::{Boundary, Cell, Lattice, Region};
pub use layout::QubitLayout;
pub use pauli::{Letter, PauliOp};
