//! Graded commutative Frobenius algebras over `Q[q, q^-1]` with explicit
//! structure constants.

mod element;
mod export;
mod ops;
mod ring;

pub use element::Element;
pub use export::RingExport;
pub use ops::{FSpan, HandleElement, Theta};
pub use ring::{FrobeniusRing, RingData};
