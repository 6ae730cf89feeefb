//! Sum-free sets in finite abelian groups: group arithmetic, exact search and
//! counting, structural checks and the Fourier granularization.

pub mod error;
pub mod granular;
pub mod group;
pub mod structure;
pub mod sumfree;

pub use error::{Error, Result};
pub use group::{Character, GroupSet, GroupSpec, Subgroup};
