//! Exact desk-scale computation in n-dimensional local fields modeled as
//! iterated Laurent series.
//!
//! The crate provides:
//! - exact coefficient fields (`basefield`): rationals and `F_p[x]/(f)`;
//! - truncated iterated Laurent series with certified support/precision
//!   windows (`series`);
//! - the monomial lattice Grassmannian with meet, join, quotients and the
//!   lattice predicate (`lattice`);
//! - a finitely presented endomorphism algebra with a symbolic window
//!   transfer and two independent ideal-membership classifiers (`operator`);
//! - standard and twisted coefficient-field liftings plus the falsifier
//!   showing a twisted lifting is not a morphism of Tate objects
//!   (`liftings`);
//! - desk-scale geometry demos: Hensel coefficient fields, adelic
//!   staircases, the cusp lattice gap, and the Parshin cover (`geometry`);
//! - support diagrams (`plot`) and deterministic property suites (`suite`).
//!
//! Start with the runnable examples: `cargo run --example series_arithmetic`
//! and friends, one per capability.

pub mod basefield;
pub mod geometry;
pub mod jsonio;
pub mod lattice;
pub mod liftings;
pub mod operator;
pub mod plot;
pub mod series;
pub mod suite;

pub use basefield::{FieldError, FieldScalar, FieldSpec};
pub use lattice::{LatticeError, MonomialLattice, MonomialSubspace};
pub use operator::{IdealFlags, OperatorError, OperatorExpr, WindowTransfer};
pub use series::{BoundCertificate, Exponents, Prec, SeriesError, SliceRule, TruncatedSeries};
