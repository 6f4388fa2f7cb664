//! Bogner-Fox-Schmit C1 rectangular finite elements in two dimensions.
//!
//! The crate covers the whole evaluation pipeline: cubic Hermite factors
//! ([`hermite1d`]), the 16 tensor-product shape functions ([`bfs_basis`]),
//! equal-size rectangular meshes ([`mesh`]), nodal C1 fields and their batch
//! evaluation ([`field`]), Gauss rules ([`quadrature`]) and Sobolev-type
//! integrals with a uniform-refinement study ([`integrals`]).

pub mod bfs_basis;
pub mod error;
pub mod export;
pub mod field;
pub mod format;
pub mod functions;
pub mod hermite1d;
pub mod integrals;
pub mod mesh;
pub mod quadrature;
mod sum;

pub use bfs_basis::{shapeder, shapefun, DerivSlot, DerivTable, ElementSize, ShapeTable};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use field::{interpolate, C1Field, PointValues};
pub use functions::{AnalyticField, Poly2};
pub use integrals::{convergence_study, ConvergenceReport, IntegralValues, Quantity, StudyConfig};
pub use mesh::{Domain, MeshError, RectMesh};
pub use quadrature::{gauss_rule, GaussRule, QuadratureRule};
pub use sum::CompensatedSum;
