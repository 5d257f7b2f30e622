//! Exact decision procedures for contextuality of simplicial
//! distributions over commutative semirings.
//!
//! The toolkit models 2-truncated measurement spaces, distributions on
//! them valued in `N(Z_d)` or `Delta_{Z_d}`, the convex-monoid product
//! on distributions, and the linear-programming machinery (exact
//! rational simplex) used to decide contextuality, compute contextual
//! and invertible fractions, enumerate polytope vertices and solve for
//! distribution homotopies.
//!
//! Start from the `examples/` directory for runnable entry points, or
//! the `sdist` binary for the file-driven command line.

pub mod cli;
pub mod dist;
pub mod error;
pub mod monoid;
pub mod polytope;
pub mod semiring;
pub mod simpdist;
pub mod sset;

pub use dist::Dist;
pub use error::{Error, Result};
pub use monoid::MonoidContext;
pub use semiring::{Scalar, SemiringKind};
pub use simpdist::{EmpiricalModel, SimpDist};
pub use sset::{build_standard, DetMap, SSet2, StandardSpace, Target, Word};
