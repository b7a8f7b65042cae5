//! Exact graded commutative algebra over the rationals.
//!
//! The crate computes change-of-rings functors between polynomial
//! cohomology rings, free resolutions, Ext and Tor, relative dualizing
//! modules and Gorenstein shifts, local cohomology by two independent
//! routes, and decides equalities of pasting diagrams built from
//! adjunctions.

pub mod catalog;
pub mod exact_linear;
pub mod groebner;
pub mod homological;
pub mod local_duality;
pub mod mates;
pub mod modules;
pub mod poly;
pub mod random;

mod error;

pub use error::{AlgebraError, ParseError};
pub use exact_linear::{RatMatrix, Rational};
pub use modules::{DegreeWindow, HilbertData, PresentedModule};
pub use poly::{FreeElement, GradedPolyRing, Mono, Poly, RingMap};
