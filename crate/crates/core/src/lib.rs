//! Johnson-type homomorphisms of mapping classes of a surface of genus `g`
//! with one boundary component, computed exactly over the rationals.
//!
//! The pipeline is: mapping class as an automorphism of the free group
//! ([`surface`]), to truncated group-like series via an expansion
//! ([`series`]), to graded classes in a free Lie algebra ([`lie`]), to
//! derivation tensors ([`johnson`]) and tree diagrams ([`diagrams`]).

pub mod acceptance;
pub mod diagrams;
pub mod error;
pub mod johnson;
pub mod lie;
pub mod magnus;
pub mod schema;
pub mod series;
pub mod surface;

pub use diagrams::{Color, DiagramElement, Tree, TreeDiagram};
pub use error::{Error, Result};
pub use johnson::{ClassicalDerivation, DerivationElement, GElement, LevineDerivation};
pub use lie::{Alphabet, LieElement};
pub use series::{Expansion, ExpansionKind};
pub use surface::{FreeWord, GenKind, Generator, SurfaceEndo};

/// Exact rational coefficients.
pub type Q = num_rational::BigRational;
