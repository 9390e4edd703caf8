//! Matched-asymptotic approximation and finite-difference reference solver for
//!
//! ```text
//! y_t - eps y_xx + M y_x = 0   on (0,1) x (0,T),
//! y(0,t) = v(t),  y(1,t) = 0,  y(x,0) = y0(x).
//! ```
//!
//! The approximation combines outer terms, an internal layer along the
//! characteristic `x = Mt` and a boundary layer at `x = 1`.

pub mod boundary;
pub mod cli;
pub mod composite;
pub mod error;
pub mod identities;
pub mod internal;
pub mod jet;
pub mod outer;
pub mod quadrature;
pub mod scenario;
pub mod selftest;
pub mod solver;
pub mod special;
pub mod study;

pub use composite::{Composite, Variant};
pub use error::{Error, Result};
pub use scenario::{ProblemData, SmoothFunction};
