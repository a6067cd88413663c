//! Exact-arithmetic toolkit for finite-dimensional left, right and symmetric
//! Leibniz algebras carrying L-invariant, R-invariant or associative
//! pseudo-Euclidean metrics.
//!
//! All arithmetic is over arbitrary-precision rationals; there is no floating
//! point anywhere in the crate. The main pieces:
//!
//! - [`exactlin`]: dense rational matrices, row reduction, subspace lattice
//!   operations and Sylvester inertia by congruence.
//! - [`algebra`]: structure-constant algebras, Leibniz/Lie identity checking
//!   with witnesses, distinguished subspaces, quotients and series.
//! - [`bilinear`]: invariant symmetric forms, the trace forms `B` and `K`,
//!   and the Cartan-style semisimplicity/solvability criteria.
//! - [`construct`]: double extensions, cotangent constructions, the
//!   data-driven extension constructors with their equation-system
//!   validators, and derivation-space linear algebra.
//! - [`core`]: core extraction for L- and R-quadratic algebras, structural
//!   classification and isomorphism-invariant fingerprints.
//! - [`catalog`]: built-in parameterized encodings of the low-dimensional
//!   classification tables, with a verification harness.
//! - [`json`]: file formats (rationals serialize as `"p/q"` strings,
//!   indices are 1-based).
//!
//! ```
//! use quadleib::bilinear::killing;
//! use quadleib::{Algebra, IdentityKind, KillingKind};
//!
//! // the 2-dimensional algebra with e2*e1 = e2*e2 = e1: left Leibniz,
//! // not Lie, and its K-form vanishes identically
//! let alg = Algebra::from_products_i64(2, &[(1, 0, 0, 1), (1, 1, 0, 1)]);
//! assert!(alg.check_identity(IdentityKind::LeftLeibniz).passed);
//! assert!(!alg.check_identity(IdentityKind::Lie).passed);
//! assert!(killing(&alg, KillingKind::K).matrix().is_zero());
//! ```

// dense tensor-index code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod bilinear;
pub mod catalog;
pub mod construct;
pub mod core;
pub mod error;
pub mod exactlin;
pub mod json;
pub mod sample;

pub use algebra::{Algebra, CheckResult, IdentityKind};
pub use bilinear::{BilForm, Invariance, KillingKind, Metric, MetricAlgebra};
pub use error::{Error, Result};
pub use exactlin::{RMatrix, Rat, Subspace};
