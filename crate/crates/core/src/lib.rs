//! Discriminants of smooth plane cubic curves, two ways.
//!
//! The algebraic route computes the discriminant of a ternary cubic as a
//! normalized Macaulay resultant of its partial derivatives.  The analytic
//! route reduces the cubic to Weierstrass form, computes the period lattice
//! by the complex AGM, and evaluates a product of Jacobi theta constants.
//! Both routes are exposed through [`pipeline::discriminant_both_ways`],
//! together with the determinantal representations (matrix pencils) that
//! connect them.

pub mod detrep;
pub mod error;
pub mod forms;
pub mod macaulay;
pub mod periods;
pub mod pipeline;
pub mod reduce;
pub mod roots;
pub mod theta;
pub mod tol;
pub mod wp;
pub mod xcheck;

pub use error::Error;

/// Complex scalar used throughout; double precision.
pub type C = num_complex::Complex64;
