//! Hodge, Betti, Bott–Chern and Aeppli numbers of Kato manifolds.
//!
//! A Kato manifold is described here only through its modification data: a
//! sequence of blow-ups and blow-downs starting with a blow-up at the origin,
//! or a smooth toric fan obtained from the orthant by star subdivisions. From
//! that data the crate computes the cohomology tables of the induced
//! modification of projective space and translates them into the tables of
//! the Kato manifold by two independent routes, which are then compared.
//!
//! The [`germs`] module checks the operator `Id − γ*` on finite-dimensional
//! jet spaces of holomorphic p-forms with exact Gaussian-rational arithmetic.
//!
//! Modules:
//! - [`diamond`]: Hodge diamonds, Betti vectors, partial tables, rendering.
//! - [`modifications`]: blow-up/blow-down formulas and sequence evaluation.
//! - [`kato`]: Kato manifold numbers, Hopf comparison, Bott–Chern/Aeppli tables.
//! - [`toric`]: smooth simplicial fans, star subdivision, cone counts.
//! - [`germs`]: jets, pullbacks, exact matrices, Neumann series, contraction bounds.
//! - [`corpus`]: built-in inputs for the verification suite.

pub mod corpus;
pub mod diamond;
pub mod error;
pub mod germs;
pub mod kato;
pub mod modifications;
pub mod report;
pub mod toric;

pub use error::{Error, Result};
pub use report::Check;
