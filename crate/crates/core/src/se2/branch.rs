//! Branch maps `ψ(q) = λ^q + βq` of `dπ_r(𝓛) = 𝓜_{r²} + βr²`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mathieu::{self, Branch, MathieuEigenpair, ParityClass, TruncationConfig};
use crate::roots;

/// An eigenvalue curve of `𝓜_q` shifted by `βq`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectralBranch {
    pub branch: Branch,
    pub beta: f64,
}

impl SpectralBranch {
    pub fn new(branch: Branch, beta: f64) -> Result<Self> {
        if !(beta >= 0.0 && beta.is_finite()) {
            return Err(Error::InvalidArgument(format!("beta must be finite and >= 0, got {beta}")));
        }
        Ok(Self { branch, beta })
    }

    pub fn class(&self) -> ParityClass {
        self.branch.class
    }

    pub fn k(&self) -> usize {
        self.branch.k
    }

    /// `ψ(0) = λ⁰ = (2k + i + |i-j|)²`.
    pub fn start(&self) -> f64 {
        self.branch.free_eigenvalue()
    }

    fn check_q(q: f64) -> Result<()> {
        if !q.is_finite() {
            return Err(Error::NonFinite(q));
        }
        if q < 0.0 {
            return Err(Error::Domain(format!("the branch map is defined for q >= 0, got {q}")));
        }
        Ok(())
    }

    pub fn psi(&self, q: f64) -> Result<f64> {
        Self::check_q(q)?;
        Ok(mathieu::eigenvalue(q, self.branch, &TruncationConfig::default())? + self.beta * q)
    }

    pub fn psi_prime(&self, q: f64) -> Result<f64> {
        Ok(self.psi_with_derivative(q)?.1)
    }

    /// `(ψ(q), ψ'(q))` from one eigenpair solve.
    pub fn psi_with_derivative(&self, q: f64) -> Result<(f64, f64)> {
        let pair = self.eigenpair(q)?;
        Ok((pair.lambda + self.beta * q, pair.dlambda_dq() + self.beta))
    }

    pub fn eigenpair(&self, q: f64) -> Result<MathieuEigenpair> {
        Self::check_q(q)?;
        mathieu::solve_eigenpair(q, self.branch, &TruncationConfig::default())
    }

    /// The unique `q ≥ 0` with `ψ(q) = lambda`.
    ///
    /// The root is bracketed by `λ⁰ + βq ≤ ψ(q) ≤ λ⁰ + (1+β)q`; when `β` is
    /// small the upper end is found by geometric expansion instead.
    pub fn psi_inverse(&self, lambda: f64) -> Result<f64> {
        if !lambda.is_finite() {
            return Err(Error::NonFinite(lambda));
        }
        let start = self.start();
        let gap = lambda - start;
        let scale = lambda.abs().max(1.0);
        if gap < -1e-15 * scale {
            return Err(Error::Domain(format!(
                "lambda = {lambda} lies below the start {start} of branch {}",
                self.branch
            )));
        }
        if gap <= 1e-15 * scale {
            return Ok(0.0);
        }
        let lo = gap / (1.0 + self.beta);
        let closed_hi = if self.beta > 0.0 { gap / self.beta } else { f64::INFINITY };
        let hi = if closed_hi <= 4.0 * lo {
            closed_hi
        } else {
            let expanded = roots::expand_upper(|q| Ok(self.psi(q)? - lambda), lo, 2.0 * lo, 1e12)?;
            expanded.min(closed_hi)
        };
        let f_tol = 1e-13 * scale;
        let q = roots::newton_bisect_from(
            |q| {
                let (v, d) = self.psi_with_derivative(q)?;
                Ok((v - lambda, d))
            },
            lo,
            hi,
            lo,
            f_tol,
            1e-13 * hi,
        )?;
        Ok(q)
    }
}

impl fmt::Display for SpectralBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} beta={}", self.branch, self.beta)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn starts_and_slopes() {
        let g = SpectralBranch::new(Branch::ground(), 0.3).unwrap();
        assert!(g.psi(0.0).unwrap().abs() < 1e-12);
        assert!((g.psi_prime(0.0).unwrap() - 0.8).abs() < 1e-12);
        let b = SpectralBranch::new(Branch::new(ParityClass::EVEN_ANTIPERIODIC, 0), 0.0).unwrap();
        assert!((b.psi(0.0).unwrap() - 1.0).abs() < 1e-12);
        assert!(g.psi(-1.0).is_err());
        assert!(SpectralBranch::new(Branch::ground(), -0.1).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        for beta in [0.0, 0.5] {
            let b = SpectralBranch::new(Branch::ground(), beta).unwrap();
            for lambda in [0.5, 3.0, 10.0, 100.0] {
                let q = b.psi_inverse(lambda).unwrap();
                let back = b.psi(q).unwrap();
                assert!((back - lambda).abs() < 1e-9 * lambda, "beta={beta} lambda={lambda}: {back}");
            }
        }
    }

    #[test]
    fn inverse_at_start_and_below() {
        let b = SpectralBranch::new(Branch::new(ParityClass::ODD_PERIODIC, 1), 0.2).unwrap();
        assert_eq!(b.psi_inverse(16.0).unwrap(), 0.0);
        assert!(matches!(b.psi_inverse(15.0), Err(Error::Domain(_))));
    }
}
