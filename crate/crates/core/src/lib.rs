//! Dynamics of the meromorphic family `f(z) = sin z / (z² + λ)`, `λ > 0`.
//!
//! The crate is organised bottom-up:
//!
//! * [`family`] evaluates the map, its restriction to the imaginary axis and
//!   the auxiliary scalar functions behind the bifurcation analysis;
//! * [`rootkit`] holds the bracketed and 2D solvers everything else uses;
//! * [`paramlab`] computes the bifurcation constants, fixed points, 2-cycles,
//!   singular values and the parameter regime of a given `λ`;
//! * [`orbitlab`] iterates and classifies orbits, certifies chaos on the real
//!   line and samples bifurcation diagrams;
//! * [`render`] classifies pixel grids into basins and writes PPM images.

pub mod error;
pub mod family;
pub mod orbitlab;
pub mod paramlab;
pub mod render;
pub mod rootkit;

pub use error::{Error, Result};
pub use family::{Eval, EvalResult, ParamPoint};
pub use num_complex::Complex64;
