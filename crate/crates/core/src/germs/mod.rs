//! Exact checks of `Id − γ*` on jets of holomorphic p-forms.
//!
//! For a polynomial germ `γ` with `γ(0) = 0`, the pullback preserves the
//! filtration by coefficient order, so it descends to the finite-dimensional
//! space of p-forms with polynomial coefficients of degree `<= d`. This jet
//! space is a faithful quotient on which invertibility of `Id − γ*`, its
//! kernel on functions, and the convergence of the Neumann series can be
//! checked with exact Gaussian-rational arithmetic. The correspondence with
//! forms on a ball is this module's framing, not a statement about the full
//! function space.
//!
//! The operator matrix is block lower-triangular in the degree grading, with
//! diagonal blocks determined by `d_0γ`; a first-order contraction
//! certificate (`ρ(d_0γ) < 1`) is required before any analysis.

pub mod contraction;
pub mod iterate;
pub mod jet;
pub mod matrix;
pub mod modular;
pub mod neumann;
pub mod operator;
pub mod poly;
pub mod random;
pub mod scalar;

pub use contraction::{contraction_report, ContractionReport};
pub use iterate::{iterate_pullback_check, IterateReport};
pub use jet::{jet_dimension, pullback_jet, JetBasis, JetForm, Pullback};
pub use matrix::ExactMatrix;
pub use neumann::{exact_solve, neumann_basis_check, neumann_solve, BasisNeumannReport, NeumannResult};
pub use operator::{beta_matrix, contraction_certificate, BetaAnalysis, OperatorReport};
pub use poly::{Poly, PolyGermMap};
pub use random::{germ_battery, random_germ, BatteryCase};
pub use scalar::Scalar;
