//! Exact computational group theory for generator, relation, Schur multiplier
//! and torsion bounds on finite-index subgroups of direct products.
//!
//! The crate is organised bottom-up:
//!
//! * [`finite`] holds Cayley-table groups, subgroups, homomorphisms and the
//!   brute-force generation searches used as ground truth everywhere else.
//! * [`fp`] holds words, presentations, coset enumeration,
//!   Reidemeister–Schreier rewriting and Tietze simplification.
//! * [`smith`] is integer Smith normal form and abelian invariants.
//! * [`schur`] computes Schur multipliers through the bar resolution.
//! * [`bounds`] evaluates the generator and torsion bounds for `H ≤ A × B`.
//! * [`witt`] tabulates Witt numbers and the lower central dimension counts.
//! * [`gradient`] runs subgroup sequences and reports gradient estimates.
//! * [`suites`] bundles the exhaustive verification runs used by the CLI.

pub mod bounds;
pub mod config;
pub mod error;
pub mod finite;
pub mod fp;
pub mod gradient;
pub mod interval;
pub mod schur;
pub mod smith;
pub mod suites;
pub mod witt;

pub use config::Caps;
pub use error::{Error, Result};
