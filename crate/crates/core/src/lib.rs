//! Curvature machinery for curvature-adapted hypersurfaces of symmetric spaces.
//!
//! - [`octonion`]: octonion arithmetic over a canonical basis.
//! - [`cayley`]: the Cayley plane tangent model, its curvature tensor and
//!   normal Jacobi operators.
//! - [`grassmannian`]: the complex two-plane Grassmannian tangent model with
//!   its Kaehler and quaternionic-Kaehler structures.
//! - [`tube`]: closed-form Riccati flows of principal curvatures, tube
//!   spectra and the focal-configuration enumeration ([`theorem2`]) and
//!   non-existence sweep ([`theorem3`]).
//! - [`isoparametric`]: mean-curvature profiles, pole stripping, Newton
//!   identities and the power-sum cascade.
//! - [`cli`]: the command-line front end.

pub mod cayley;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod grassmannian;
pub mod isoparametric;
pub mod newton;
pub mod octonion;
pub mod sampling;
pub mod spectrum;
pub mod theorem2;
pub mod theorem3;
pub mod tube;

pub use cayley as cayley_plane;
pub use octonion as composition_algebra;
pub use tube as tube_flow;

use serde::{Deserialize, Serialize};

pub use certificate::{Certificate, Verdict, Witness};
pub use error::{Error, Result};

/// Which form of a curvature tensor to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TensorVariant {
    /// The form satisfying all algebraic curvature identities.
    Corrected,
    /// The form as commonly printed; kept as a negative control.
    Printed,
}
