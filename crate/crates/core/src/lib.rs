//! Exact small quantum cohomology rings, their handle elements, and the
//! dynamics of multiplication by the handle element on projective states.

pub mod complexity;
pub mod error;
pub mod frobenius;
pub mod linalg;
pub mod oracle;
pub mod partition;
pub mod rings;
pub mod verify;

pub use error::{Error, Result};
