//! Subgroup perfect codes of finite permutation groups and of group pairs.
//!
//! Groups are handled by exhaustive enumeration: every [`PermGroup`] carries
//! its full, canonically ordered element list, and all subgroup machinery is
//! plain set arithmetic over element indices.

pub mod catalog;
pub mod codes;
pub mod constructions;
pub mod error;
pub mod ffield;
pub mod graphs;
pub mod group;
pub mod perm;
pub mod verify;

pub use error::{Error, ParseError, Result};
pub use group::PermGroup;
pub use perm::Perm;
