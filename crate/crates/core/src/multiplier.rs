//! Spectral multipliers `F` on `[0, ∞)`.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bounded function of the spectral parameter.
pub trait SpectralMultiplier: Sync {
    fn eval(&self, lambda: f64) -> f64;

    /// An upper bound for `sup_{μ ≥ lambda} |F(μ)|`.
    fn tail_sup(&self, lambda: f64) -> f64;
}

impl<T: SpectralMultiplier + ?Sized> SpectralMultiplier for &T {
    fn eval(&self, lambda: f64) -> f64 {
        (**self).eval(lambda)
    }

    fn tail_sup(&self, lambda: f64) -> f64 {
        (**self).tail_sup(lambda)
    }
}

/// Piecewise-linear multiplier from samples, zero outside the sampled range.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    lambda: Vec<f64>,
    value: Vec<f64>,
}

impl Table {
    pub fn new(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidArgument("a multiplier table needs at least two rows".into()));
        }
        let (lambda, value): (Vec<f64>, Vec<f64>) = points.into_iter().unzip();
        if lambda.iter().chain(&value).any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("multiplier table contains non-finite entries".into()));
        }
        if lambda.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidArgument(
                "multiplier table lambdas must be strictly increasing".into(),
            ));
        }
        Ok(Self { lambda, value })
    }

    /// Reads a CSV file with header `lambda,value`.
    pub fn from_csv(path: impl AsRef<Path>) -> Result<Self> {
        #[derive(Deserialize)]
        struct Row {
            lambda: f64,
            value: f64,
        }
        let mut reader = csv::Reader::from_path(path)?;
        let mut points = Vec::new();
        for row in reader.deserialize() {
            let row: Row = row?;
            points.push((row.lambda, row.value));
        }
        Self::new(points)
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.lambda.len();
        if x < self.lambda[0] || x > self.lambda[n - 1] {
            return 0.0;
        }
        let i = self.lambda.partition_point(|&l| l <= x).clamp(1, n - 1);
        let (x0, x1) = (self.lambda[i - 1], self.lambda[i]);
        let s = (x - x0) / (x1 - x0);
        self.value[i - 1] * (1.0 - s) + self.value[i] * s
    }

    fn tail_sup(&self, x: f64) -> f64 {
        let start = self.lambda.partition_point(|&l| l <= x).saturating_sub(1);
        self.value[start..].iter().fold(0.0_f64, |m, v| m.max(v.abs()))
    }
}

/// The built-in multipliers plus sampled tables.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Multiplier {
    /// `e^{-tλ}`.
    Heat { t: f64 },
    /// Smooth bump supported in `(a, b)` with peak value 1.
    Bump { a: f64, b: f64 },
    /// Narrow band `exp(-(λ - center)² / (2 width²))`.
    Window { center: f64, width: f64 },
    Table(Table),
}

impl Multiplier {
    pub fn heat(t: f64) -> Result<Self> {
        if !(t > 0.0 && t.is_finite()) {
            return Err(Error::InvalidArgument(format!("heat time must be positive, got {t}")));
        }
        Ok(Self::Heat { t })
    }

    pub fn bump(a: f64, b: f64) -> Result<Self> {
        if !(a < b && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("bump needs a < b, got ({a}, {b})")));
        }
        Ok(Self::Bump { a, b })
    }

    pub fn window(center: f64, width: f64) -> Result<Self> {
        if !(width > 0.0 && center.is_finite() && width.is_finite()) {
            return Err(Error::InvalidArgument(format!("window width must be positive, got {width}")));
        }
        Ok(Self::Window { center, width })
    }
}

impl SpectralMultiplier for Multiplier {
    fn eval(&self, x: f64) -> f64 {
        match self {
            Self::Heat { t } => (-t * x).exp(),
            Self::Bump { a, b } => {
                if x <= *a || x >= *b {
                    return 0.0;
                }
                let s = (2.0 * x - a - b) / (b - a);
                (1.0 - 1.0 / (1.0 - s * s)).exp()
            }
            Self::Window { center, width } => {
                let u = (x - center) / width;
                (-0.5 * u * u).exp()
            }
            Self::Table(t) => t.eval(x),
        }
    }

    fn tail_sup(&self, x: f64) -> f64 {
        match self {
            Self::Heat { t } => (-t * x.max(0.0)).exp(),
            Self::Bump { a, b } => {
                if x <= 0.5 * (a + b) {
                    1.0
                } else {
                    self.eval(x)
                }
            }
            Self::Window { center, .. } => {
                if x <= *center {
                    1.0
                } else {
                    self.eval(x)
                }
            }
            Self::Table(t) => t.tail_sup(x),
        }
    }
}

impl FromStr for Multiplier {
    type Err = Error;

    /// `gaussian:t` (alias `heat:t`), `bump:a:b`, `window:center:width`, or
    /// `table:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("unrecognized multiplier `{s}`"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        if kind == "table" {
            return Ok(Self::Table(Table::from_csv(rest)?));
        }
        let args: Vec<f64> = rest
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        match (kind, args.as_slice()) {
            ("gaussian" | "heat", [t]) => Self::heat(*t),
            ("bump", [a, b]) => Self::bump(*a, *b),
            ("window", [c, w]) => Self::window(*c, *w),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Heat { t } => write!(f, "gaussian:{t}"),
            Self::Bump { a, b } => write!(f, "bump:{a}:{b}"),
            Self::Window { center, width } => write!(f, "window:{center}:{width}"),
            Self::Table(t) => write!(f, "table({} rows)", t.lambda.len()),
        }
    }
}

/// `|F|²` as a multiplier in its own right.
pub struct Squared<M>(pub M);

impl<M: SpectralMultiplier> SpectralMultiplier for Squared<M> {
    fn eval(&self, lambda: f64) -> f64 {
        self.0.eval(lambda).powi(2)
    }

    fn tail_sup(&self, lambda: f64) -> f64 {
        self.0.tail_sup(lambda).powi(2)
    }
}

/// `F(λ / α)`, the multiplier seen after rescaling the operator by `α`.
pub struct Rescaled<M> {
    pub f: M,
    pub alpha: f64,
}

impl<M: SpectralMultiplier> SpectralMultiplier for Rescaled<M> {
    fn eval(&self, lambda: f64) -> f64 {
        self.f.eval(lambda / self.alpha)
    }

    fn tail_sup(&self, lambda: f64) -> f64 {
        self.f.tail_sup(lambda / self.alpha)
    }
}

/// Smallest `Λ` on a doubling ladder with `tail_sup(Λ) ≤ rel · tail_sup(0)`.
pub fn effective_support<M: SpectralMultiplier + ?Sized>(f: &M, rel: f64) -> Result<f64> {
    let scale = f.tail_sup(0.0);
    if scale == 0.0 {
        return Ok(0.0);
    }
    let mut cut = 1.0;
    while f.tail_sup(cut) > rel * scale {
        cut *= 2.0;
        if cut > 1e8 {
            return Err(Error::NonDecaying {
                tail: f.tail_sup(cut) / scale,
                tol: rel,
                context: "multiplier still above tolerance at lambda = 1e8".into(),
            });
        }
    }
    Ok(cut)
}
