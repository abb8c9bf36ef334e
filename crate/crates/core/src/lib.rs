//! Spectral theory of sub-Laplacians on the motion group SE(2) and on
//! abelian groups `ℝⁿ × 𝕋ᵐ`.
//!
//! * [`mathieu`]: eigenpairs of `𝓜_q = -∂² + q sin²φ` per parity class.
//! * [`se2`]: normal forms, branch maps, Plancherel density, kernel synthesis
//!   and reconstruction on SE(2).
//! * [`abelian`]: Plancherel density, kernels and `χ_𝓛` on `ℝⁿ × 𝕋ᵐ`.
//! * [`verify`]: the numerical checks behind `subspec verify`.

pub mod abelian;
pub mod error;
pub mod grid;
pub mod mathieu;
pub mod multiplier;
pub mod quadrature;
pub mod roots;
pub mod se2;
pub mod tridiag;
pub mod verify;

pub use abelian::AbelianSpec;
pub use error::{Error, Result};
pub use grid::{Axis, KernelGrid};
pub use mathieu::{Branch, MathieuEigenpair, ParityClass, TruncationConfig};
pub use multiplier::{Multiplier, SpectralMultiplier};
pub use se2::{SE2Generators, SE2NormalForm, SpectralBranch};
