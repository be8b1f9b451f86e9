//! Decision procedures for free-by-cyclic groups: conjugacy, twisted
//! conjugacy and power conjugacy, each `Yes` carrying a checked certificate.

pub mod automorphisms;
pub mod error;
pub mod fixed_points;
pub mod group;
pub mod limits;
pub mod orbit;
pub mod random;
pub mod stallings;
pub mod twisted;
pub mod words;

pub use automorphisms::{AutomorphismSpec, FreeAutomorphism, FreeEndomorphism};
pub use error::{Error, Result};
pub use fixed_points::{AutClass, Exactness, SubgroupBasis};
pub use group::{ConjVerdict, FbcPresentation, GroupElement, Modulus, PowerConjVerdict, PresentationSpec};
pub use limits::Limits;
pub use orbit::{OrbitVerdict, PowerOrbitVerdict};
pub use stallings::CoreGraph;
pub use twisted::{PowerTwistedVerdict, TwistedVerdict};
pub use words::{Alphabet, CyclicWord, Letter, Word};
