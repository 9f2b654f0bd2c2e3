//! Certified bounds for the integral simplicial volume of triangulated
//! closed oriented manifolds, and its stabilization along towers of finite
//! covers.
//!
//! The crate is organized around a small pipeline:
//!
//! * [`complex`] — Δ-complexes as face-map tables: documents, validation,
//!   fundamental cycles, barycentric subdivision, cones, canonical forms;
//! * [`homology`] — exact integral homology via Smith normal form, cap
//!   products against the fundamental cycle, Poincaré-duality rank checks,
//!   and explicit small fillings on cones;
//! * [`pi1`] — fundamental-group presentations, low-index subgroup
//!   enumeration, explicit finite covers and residual towers;
//! * [`simplify`] — bistellar/contraction moves with invariant guards and a
//!   simulated-annealing search for small triangulations;
//! * [`bounds`] — a ledger of certified lower/upper bounds with provenance,
//!   stable sequences over covers, and homology-growth reports;
//! * [`hyp`] — high-precision hyperbolic constants (dihedral angles, overlap
//!   windows, Lobachevsky volumes) feeding exact volume-based bounds.

pub mod bounds;
pub mod chain;
pub mod complex;
pub mod error;
pub mod homology;
pub mod hyp;
pub mod matrix;
pub mod pi1;
pub mod real;
pub mod simplify;

pub use chain::ChainVector;
pub use complex::{DeltaComplex, ValidationReport};
pub use error::{Error, Result};
