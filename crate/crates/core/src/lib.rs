//! Exact computations with τ-tilting pairs over bound quiver algebras:
//! path bases, representations and their homological invariants, the
//! exchange graph of support τ-tilting pairs, the bricks attached to its
//! edges, and the wall-and-chamber structure they cut out.
//!
//! Linear algebra is generic over [`field::Field`]. Everything that feeds
//! decompositions and isomorphism tests is done over the rationals, so the
//! aliases below fix that scalar.

pub mod algebra;
pub mod decompose;
pub mod error;
pub mod field;
pub mod homology;
pub mod intmat;
pub mod literal;
pub mod matrix;
pub mod rep;
pub mod stability;
pub mod tau_tilting;
pub mod verify;
pub mod wallchamber;

pub use algebra::{parse_algebra, BoundQuiver};
pub use error::{Error, Result};
pub use field::Rational;
pub use tau_tilting::{ExchangeGraph, Limits, TauPair, TauTilting};

/// A representation with rational entries.
pub type Module = rep::Representation<Rational>;
/// A morphism of rational representations.
pub type ModuleHom = rep::ModuleMap<Rational>;
/// A dense rational matrix.
pub type QMatrix = matrix::Matrix<Rational>;
