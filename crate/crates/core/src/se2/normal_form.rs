//! Classification of sub-Laplacians on SE(2) up to automorphism.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::abelian::AbelianSpec;
use crate::error::{Error, Result};

/// A left-invariant vector field `a T + b X + c Y`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl Generator {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }
}

/// The generators `X_j` of `𝓛 = -Σ X_j²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SE2Generators(Vec<Generator>);

impl SE2Generators {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::InvalidArgument("at least one generator is required".into()));
        }
        if let Some(v) = gens.iter().flat_map(|g| [g.a, g.b, g.c]).find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(v));
        }
        Ok(Self(gens))
    }

    /// Reads CSV rows `a,b,c`; a header row `a,b,c` is optional.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_path(path)?;
        let mut gens = Vec::new();
        for (row_no, record) in reader.records().enumerate() {
            let record = record?;
            if row_no == 0 && record.iter().eq(["a", "b", "c"]) {
                continue;
            }
            let nums: Vec<f64> = record
                .iter()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidArgument(format!("generator row {}: {e}", row_no + 1)))?;
            match nums.as_slice() {
                [a, b, c] => gens.push(Generator::new(*a, *b, *c)),
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "generator row {} must have three fields a,b,c",
                        row_no + 1
                    )))
                }
            }
        }
        Self::new(gens)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }
}

/// Normal form of a sub-Laplacian `𝓛`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "case")]
pub enum SE2NormalForm {
    /// `-α𝓛 = T² + Y² + β(X² + Y²)`.
    Generic { alpha: f64, beta: f64 },
    /// `-α𝓛 = T² + X² + Y²`.
    Elliptic { alpha: f64 },
}

impl SE2NormalForm {
    pub fn alpha(&self) -> f64 {
        match *self {
            Self::Generic { alpha, .. } | Self::Elliptic { alpha } => alpha,
        }
    }

    pub fn beta(&self) -> Option<f64> {
        match *self {
            Self::Generic { beta, .. } => Some(beta),
            Self::Elliptic { .. } => None,
        }
    }

    /// In the elliptic case `𝓛` is a Laplacian on the abelian group `ℂ × 𝕋`.
    pub fn abelian_model(&self) -> Option<AbelianSpec> {
        match self {
            Self::Elliptic { .. } => Some(AbelianSpec::new(2, 1, vec![vec![1.0]]).expect("valid spec")),
            Self::Generic { .. } => None,
        }
    }
}

/// Relative eigenvalue gap below which the horizontal form counts as isotropic.
pub const ISOTROPY_TOL: f64 = 1e-10;

/// The horizontal form `Σ U_j² - U²` after normalizing `Σ a_j² = 1`, with
/// `s = Σ a_j²`.
///
/// Returns `(s, [[p, r], [r, t]])`.
pub fn horizontal_form(gens: &SE2Generators) -> Result<(f64, [[f64; 2]; 2])> {
    let g = gens.generators();
    let s: f64 = g.iter().map(|x| x.a * x.a).sum();
    if s == 0.0 {
        return Err(Error::AllHorizontalA);
    }
    // u = Σ a_j U_j / s, the horizontal part of the normalized T-direction
    let ub = g.iter().map(|x| x.a * x.b).sum::<f64>() / s;
    let uc = g.iter().map(|x| x.a * x.c).sum::<f64>() / s;
    let p = g.iter().map(|x| x.b * x.b).sum::<f64>() / s - ub * ub;
    let r = g.iter().map(|x| x.b * x.c).sum::<f64>() / s - ub * uc;
    let t = g.iter().map(|x| x.c * x.c).sum::<f64>() / s - uc * uc;
    Ok((s, [[p, r], [r, t]]))
}

/// Eigenvalues `b ≤ c` of a symmetric 2×2 matrix.
fn sym2_eigenvalues(m: [[f64; 2]; 2]) -> (f64, f64) {
    let mean = 0.5 * (m[0][0] + m[1][1]);
    let half = 0.5 * (m[0][0] - m[1][1]);
    let rad = half.hypot(m[0][1]);
    (mean - rad, mean + rad)
}

/// Brings `𝓛 = -Σ X_j²` to normal form by the constructive classification:
/// rescale so that `Σ a_j² = 1`, absorb the horizontal part of the
/// `T`-direction by an inner automorphism, diagonalize the remaining
/// horizontal form by a rotation and rescale `X, Y`.
pub fn normalize_sublaplacian(gens: &SE2Generators) -> Result<SE2NormalForm> {
    let (s, form) = horizontal_form(gens)?;
    let (b, c) = sym2_eigenvalues(form);
    let scale = 1.0
        + gens
            .generators()
            .iter()
            .map(|x| x.b * x.b + x.c * x.c)
            .sum::<f64>()
            / s;
    if c <= 1e-12 * scale {
        return Err(Error::DegenerateForm);
    }
    let b = b.max(0.0);
    let alpha = 1.0 / s;
    if c - b <= ISOTROPY_TOL * (b + c) {
        Ok(SE2NormalForm::Elliptic { alpha })
    } else {
        Ok(SE2NormalForm::Generic {
            alpha,
            beta: b / (c - b),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(rows: &[(f64, f64, f64)]) -> SE2Generators {
        SE2Generators::new(rows.iter().map(|&(a, b, c)| Generator::new(a, b, c)).collect()).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(
            normalize_sublaplacian(&gens(&[(1.0, 0.0, 0.0), (0.0, 0.0, 1.0)])).unwrap(),
            SE2NormalForm::Generic { alpha: 1.0, beta: 0.0 }
        );
        assert_eq!(
            normalize_sublaplacian(&gens(&[(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)])).unwrap(),
            SE2NormalForm::Elliptic { alpha: 1.0 }
        );
    }

    #[test]
    fn obstructions() {
        assert!(matches!(
            normalize_sublaplacian(&gens(&[(0.0, 1.0, 0.0), (0.0, 0.0, 1.0)])),
            Err(Error::AllHorizontalA)
        ));
        // T + X alone: the horizontal part is absorbed, nothing is left
        assert!(matches!(
            normalize_sublaplacian(&gens(&[(1.0, 1.0, 0.0)])),
            Err(Error::DegenerateForm)
        ));
        assert!(matches!(
            normalize_sublaplacian(&gens(&[(1.0, 2.0, 1.0), (2.0, 4.0, 2.0)])),
            Err(Error::DegenerateForm)
        ));
    }

    #[test]
    fn scaling_enters_alpha() {
        let nf = normalize_sublaplacian(&gens(&[(2.0, 0.0, 0.0), (0.0, 0.0, 3.0), (0.0, 1.0, 0.0)])).unwrap();
        // -𝓛 = 4T² + 9Y² + X², so -𝓛/4 = T² + (9/4)Y² + (1/4)X²
        match nf {
            SE2NormalForm::Generic { alpha, beta } => {
                assert!((alpha - 0.25).abs() < 1e-15);
                assert!((beta - 0.25 / 2.0).abs() < 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn csv_with_and_without_header() {
        let dir = tempfile::tempdir().unwrap();
        let p1 = dir.path().join("g1.csv");
        std::fs::write(&p1, "a,b,c\n1,0,0\n0,0,1\n").unwrap();
        let p2 = dir.path().join("g2.csv");
        std::fs::write(&p2, "1, 0, 0\n0,0,1\n").unwrap();
        assert_eq!(SE2Generators::from_csv(&p1).unwrap(), SE2Generators::from_csv(&p2).unwrap());
        let p3 = dir.path().join("g3.csv");
        std::fs::write(&p3, "1,0\n").unwrap();
        assert!(SE2Generators::from_csv(&p3).is_err());
    }
}
