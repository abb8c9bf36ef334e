//! Plancherel density of `𝓛 = 𝓛₀ + βΔ₀` and the two sides of the
//! bi-Plancherel identity.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::branch::SpectralBranch;
use crate::error::{Error, Result};
use crate::mathieu::{self, Branch, ParityClass, TruncationConfig};
use crate::multiplier::{effective_support, SpectralMultiplier, Squared};
use crate::quadrature::{adaptive, AdaptiveOptions};

fn check_beta(beta: f64) -> Result<()> {
    if !(beta >= 0.0 && beta.is_finite()) {
        return Err(Error::InvalidArgument(format!("beta must be finite and >= 0, got {beta}")));
    }
    Ok(())
}

/// Contribution `½ / ψ'(ψ⁻¹(λ))` of one branch to the density.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityTerm {
    pub branch: Branch,
    pub q: f64,
    pub value: f64,
}

/// Per-branch terms of the density at `lambda`, over exactly the branches
/// with `λ⁰ < lambda`.
pub fn density_terms(lambda: f64, beta: f64) -> Result<Vec<DensityTerm>> {
    check_beta(beta)?;
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("the density is defined for lambda > 0, got {lambda}")));
    }
    Branch::below(lambda)
        .into_iter()
        .map(|branch| {
            let sb = SpectralBranch::new(branch, beta)?;
            let q = sb.psi_inverse(lambda)?;
            let value = 0.5 / sb.psi_prime(q)?;
            Ok(DensityTerm { branch, q, value })
        })
        .collect()
}

/// Density of the Plancherel measure of `𝓛` with respect to Lebesgue measure.
pub fn plancherel_density(lambda: f64, beta: f64) -> Result<f64> {
    Ok(density_terms(lambda, beta)?.iter().map(|t| t.value).sum())
}

/// Branches whose start lies where `g` is still above `rel · sup |g|`.
pub fn active_branches<M: SpectralMultiplier + ?Sized>(g: &M, rel: f64) -> Vec<Branch> {
    let scale = g.tail_sup(0.0);
    let mut out = Vec::new();
    for class in ParityClass::ALL {
        let mut k = 0;
        while g.tail_sup(class.free_eigenvalue(k)) > rel * scale {
            out.push(Branch::new(class, k));
            k += 1;
        }
    }
    out
}

const TAIL_REL: f64 = 1e-14;

fn quad_opts() -> AdaptiveOptions {
    AdaptiveOptions {
        abs_tol: 1e-15,
        rel_tol: 1e-11,
        max_depth: 30,
    }
}

/// `R` with `g(ψ(r²))` negligible for `r ≥ R` on the given branch.
fn radial_cutoff<M: SpectralMultiplier + ?Sized>(g: &M, sb: &SpectralBranch, rel: f64) -> Result<f64> {
    let scale = g.tail_sup(0.0);
    let mut r = 1.0_f64;
    while g.tail_sup(sb.psi(r * r)?) > rel * scale {
        r *= 1.5;
        if r > 1e5 {
            return Err(Error::NonDecaying {
                tail: g.tail_sup(sb.psi(r * r)?) / scale,
                tol: rel,
                context: format!("radial cutoff on branch {}", sb.branch),
            });
        }
    }
    Ok(r)
}

/// `Σ_b ∫₀^∞ g(ψ_b(r²)) r dr`, i.e. `∫ g dσ` computed on the group side.
pub fn sigma_integral<M: SpectralMultiplier + ?Sized>(g: &M, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let branches = active_branches(g, TAIL_REL);
    let parts: Vec<Result<f64>> = branches
        .par_iter()
        .map(|&branch| {
            let sb = SpectralBranch::new(branch, beta)?;
            let r_max = radial_cutoff(g, &sb, TAIL_REL)?;
            let cfg = TruncationConfig::default();
            adaptive(0.0, r_max, quad_opts(), |r| {
                let q = r * r;
                let lambda = mathieu::eigenvalue(q, branch, &cfg)? + beta * q;
                Ok(g.eval(lambda) * r)
            })
        })
        .collect();
    parts.into_iter().sum()
}

/// `∫ g(λ) ρ(λ) dλ` on the spectral side, split at the perfect squares where
/// new branches enter.
pub fn density_integral<M: SpectralMultiplier + ?Sized>(g: &M, beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let cut = effective_support(g, TAIL_REL)?;
    let mut breaks = vec![0.0];
    let mut m = 1.0_f64;
    while m * m < cut {
        breaks.push(m * m);
        m += 1.0;
    }
    breaks.push(cut);
    let parts: Vec<Result<f64>> = breaks
        .par_windows(2)
        .map(|w| {
            adaptive(w[0], w[1], quad_opts(), |lambda| {
                Ok(g.eval(lambda) * plancherel_density(lambda, beta)?)
            })
        })
        .collect();
    parts.into_iter().sum()
}

/// Both sides of `∫|F|² dσ = ∫ Σ_b |F(ψ_b(r²))|² r dr`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BiPlancherel {
    pub lhs: f64,
    pub rhs: f64,
}

impl BiPlancherel {
    pub fn rel_err(&self) -> f64 {
        (self.lhs - self.rhs).abs() / self.rhs.abs().max(f64::MIN_POSITIVE)
    }
}

pub fn bi_plancherel_check<M: SpectralMultiplier>(f: &M, beta: f64) -> Result<BiPlancherel> {
    let g = Squared(f);
    Ok(BiPlancherel {
        lhs: density_integral(&g, beta)?,
        rhs: sigma_integral(&g, beta)?,
    })
}
