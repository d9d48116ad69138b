//! Fourier analysis on the regular hexagon and the equilateral triangle.
//!
//! Points live on the plane `t1 + t2 + t3 = 0` and functions are periodic
//! with respect to the hexagonal lattice. The crate provides the exponential
//! basis, exact quadrature for trigonometric polynomials, closed-form
//! summability kernels, the operators they define, moduli of smoothness and
//! approximation experiments, and generalized cosine series on the triangle.

pub mod approx;
pub mod error;
pub mod hexcoords;
pub mod json;
pub mod kernels;
pub mod operators;
pub mod quadrature;
pub mod registry;
pub mod triangle;

/// Library version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use approx::{ExperimentReport, ModulusSpec, ReportRow, StepNorm};
pub use error::{HexError, Result};
pub use hexcoords::{HexIndex, HexPoint, Reflection};
pub use kernels::KernelSpec;
pub use operators::{jackson_op, CoeffTable, JacksonParams, SummabilityMethod};
pub use quadrature::{GridFunction, HexFn, Lp, OMEGA_AREA};
pub use registry::TestFunction;
pub use triangle::{CosineCoeffTable, Parity, TriIndex};
