//! Exact enumeration of rooted near-regular maps on the sphere, torus,
//! projective plane and Klein bottle, and of sensed regular maps on the torus.

pub mod bigmath;
pub mod cache;
pub mod census;
pub mod closed_forms;
pub mod error;
pub mod golden;
pub mod oracle;
pub mod orbifold;
pub mod par;
pub mod records;
pub mod recurrence;
pub mod verify;

pub use bigmath::BigCount;
pub use error::{CensusError, Result};
pub use recurrence::{DegreeTable, FamilyId, FamilyKind, RootedTables, Surface};
