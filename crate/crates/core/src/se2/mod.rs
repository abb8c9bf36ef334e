//! Sub-Laplacians on the motion group SE(2) = ℂ ⋊ 𝕋.
//!
//! Group law `(z, θ)(z', θ') = (z + e^{iθ} z', θ + θ')`; the principal series
//! `π_r f(φ) = e^{i r Re(z e^{iφ})} f(θ + φ)` on `L²(𝕋)` carries
//! `dπ_r(𝓛_β) = 𝓜_{r²} + βr²`.

mod branch;
mod density;
mod kernel;
mod normal_form;

pub use branch::SpectralBranch;
pub use density::{
    active_branches, bi_plancherel_check, density_integral, density_terms, plancherel_density, sigma_integral,
    BiPlancherel, DensityTerm,
};
pub use kernel::{
    calibrate_inversion_constant, kernel_at, kernel_targets, matrix_coefficient, multiplier_reconstruct,
    reconstruct_g, synthesize_for_form, synthesize_kernel, Reconstructed, Se2Grid, SynthesisOptions,
    INVERSION_CONSTANT,
};
pub use normal_form::{
    horizontal_form, normalize_sublaplacian, Generator, SE2Generators, SE2NormalForm, ISOTROPY_TOL,
};
