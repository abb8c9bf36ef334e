//! Sub-Laplacians `𝓛 = -Δ_x - (A∇_y)·(A∇_y)` on `ℝⁿ × 𝕋ᵐ`.
//!
//! Measures: Lebesgue on `ℝⁿ` and on `𝕋ᵐ = [0, 2π)ᵐ`. The symbol is
//! `M(ξ, k) = |ξ|² + |Ak|²` and
//!
//! ```text
//! K_{F(𝓛)}(x, y) = (2π)^{-(n+m)} Σ_k ∫ F(|ξ|² + |Ak|²) e^{i(ξ·x + k·y)} dξ.
//! ```

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::{Axis, KernelGrid};
use crate::multiplier::{effective_support, Multiplier, SpectralMultiplier};
use crate::quadrature::{adaptive, AdaptiveOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSpec")]
pub struct AbelianSpec {
    pub n: usize,
    pub m: usize,
    /// `m × m`, rows first.
    pub a: Vec<Vec<f64>>,
    #[serde(skip)]
    a_inv_frobenius: f64,
}

#[derive(Deserialize)]
struct RawSpec {
    n: usize,
    m: usize,
    a: Vec<Vec<f64>>,
}

impl TryFrom<RawSpec> for AbelianSpec {
    type Error = Error;

    fn try_from(raw: RawSpec) -> Result<Self> {
        Self::new(raw.n, raw.m, raw.a)
    }
}

impl AbelianSpec {
    pub fn new(n: usize, m: usize, a: Vec<Vec<f64>>) -> Result<Self> {
        if n + m == 0 {
            return Err(Error::InvalidArgument("n + m must be at least 1".into()));
        }
        if a.len() != m || a.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidArgument(format!("A must be {m} x {m}")));
        }
        if let Some(v) = a.iter().flatten().find(|v| !v.is_finite()) {
            return Err(Error::NonFinite(*v));
        }
        let mut a_inv_frobenius = 0.0;
        if m > 0 {
            let mat = DMatrix::from_fn(m, m, |i, j| a[i][j]);
            let det = mat.determinant();
            let norm = mat.norm();
            if det.abs() <= 1e-12 * norm.powi(m as i32) {
                return Err(Error::InvalidArgument(format!("A is singular (det = {det:e})")));
            }
            a_inv_frobenius = mat.try_inverse().expect("checked determinant").norm();
        }
        Ok(Self {
            n,
            m,
            a,
            a_inv_frobenius,
        })
    }

    /// `ℝ × 𝕋` with `A = 1`.
    pub fn real_line_times_circle() -> Self {
        Self::new(1, 1, vec![vec![1.0]]).expect("valid spec")
    }

    /// `ℝⁿ` alone.
    pub fn euclidean(n: usize) -> Result<Self> {
        Self::new(n, 0, Vec::new())
    }

    /// `|Ak|²`.
    pub fn symbol_offset(&self, k: &[i64]) -> f64 {
        self.a
            .iter()
            .map(|row| row.iter().zip(k).map(|(a, &k)| a * k as f64).sum::<f64>().powi(2))
            .sum()
    }

    /// The symbol `M(ξ, k) = |ξ|² + |Ak|²`.
    pub fn symbol(&self, xi: &[f64], k: &[i64]) -> f64 {
        xi.iter().map(|x| x * x).sum::<f64>() + self.symbol_offset(k)
    }

    /// All `k ∈ ℤᵐ` with `|Ak|² < bound`, ordered by `|Ak|²` and then `k`.
    pub fn lattice_below(&self, bound: f64) -> Vec<(Vec<i64>, f64)> {
        if self.m == 0 {
            return if bound > 0.0 { vec![(Vec::new(), 0.0)] } else { Vec::new() };
        }
        if bound <= 0.0 {
            return Vec::new();
        }
        // |k| ≤ ‖A⁻¹‖_F |Ak|
        let r = (self.a_inv_frobenius * bound.sqrt()).floor() as i64;
        let mut out = Vec::new();
        let mut k = vec![-r; self.m];
        loop {
            let v = self.symbol_offset(&k);
            if v < bound {
                out.push((k.clone(), v));
            }
            let mut d = 0;
            while d < self.m {
                if k[d] < r {
                    k[d] += 1;
                    break;
                }
                k[d] = -r;
                d += 1;
            }
            if d == self.m {
                break;
            }
        }
        out.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then_with(|| a.0.cmp(&b.0)));
        out
    }

    /// `κ_{n,m} = |S^{n-1}| / (2 (2π)^{n+m})`.
    pub fn kappa(&self) -> f64 {
        sphere_area(self.n) / (2.0 * (2.0 * PI).powi((self.n + self.m) as i32))
    }
}

/// Surface area of the unit sphere `S^{n-1} ⊂ ℝⁿ` (`|S⁰| = 2`).
pub fn sphere_area(n: usize) -> f64 {
    match n {
        0 => 0.0,
        1 => 2.0,
        2 => 2.0 * PI,
        _ => 2.0 * PI / (n - 2) as f64 * sphere_area(n - 2),
    }
}

/// Density of the Plancherel measure,
/// `κ_{n,m} Σ_{|Ak|² < λ} (λ - |Ak|²)^{n/2 - 1}`.
pub fn sigma_density(lambda: f64, spec: &AbelianSpec) -> Result<f64> {
    if spec.n == 0 {
        return Err(Error::DiscreteSpectrum);
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("the density is defined for lambda > 0, got {lambda}")));
    }
    let e = 0.5 * spec.n as f64 - 1.0;
    let s: f64 = spec
        .lattice_below(lambda)
        .iter()
        .map(|(_, v)| (lambda - v).powf(e))
        .sum();
    Ok(spec.kappa() * s)
}

/// Eigenvalues `|Ak|² ≤ bound` of the torus Laplacian with multiplicities.
pub fn discrete_spectrum(spec: &AbelianSpec, bound: f64) -> Vec<(f64, usize)> {
    let mut out: Vec<(f64, usize)> = Vec::new();
    let scale = bound.abs().max(1.0);
    for (_, v) in spec.lattice_below(bound + 1e-12 * scale) {
        match out.last_mut() {
            Some((w, c)) if (v - *w).abs() <= 1e-12 * scale => *c += 1,
            _ => out.push((v, 1)),
        }
    }
    out
}

fn quad_opts() -> AdaptiveOptions {
    AdaptiveOptions {
        abs_tol: 1e-16,
        rel_tol: 1e-13,
        max_depth: 40,
    }
}

const TAIL_REL: f64 = 1e-16;

/// `∫ g dσ = Σ_k 2κ ∫₀^∞ g(|Ak|² + s²) s^{n-1} ds`.
pub fn sigma_integral<M: SpectralMultiplier + ?Sized>(g: &M, spec: &AbelianSpec) -> Result<f64> {
    if spec.n == 0 {
        return Err(Error::DiscreteSpectrum);
    }
    let cut = effective_support(g, TAIL_REL)?;
    let kappa = spec.kappa();
    let terms = spec.lattice_below(cut);
    let parts: Vec<Result<f64>> = terms
        .par_iter()
        .map(|(_, c)| {
            let s_max = (cut - c).sqrt();
            let e = spec.n as i32 - 1;
            Ok(2.0 * kappa * adaptive(0.0, s_max, quad_opts(), |s| Ok(g.eval(c + s * s) * s.powi(e)))?)
        })
        .collect();
    parts.into_iter().sum()
}

/// `Θ_n(u) = ∫_{S^{n-1}} e^{i u ω₁} dω` (real by symmetry).
pub fn sphere_average(n: usize, u: f64) -> Result<f64> {
    match n {
        1 => Ok(2.0 * u.cos()),
        2 => {
            // trapezoid on a periodic entire integrand: converges once N > e|u|/2
            let nodes = ((2.0 * u.abs()).ceil() as usize + 32).next_multiple_of(4);
            let step = 2.0 * PI / nodes as f64;
            Ok((0..nodes).map(|p| (u * (p as f64 * step).cos()).cos()).sum::<f64>() * step)
        }
        3 => Ok(if u.abs() < 1e-4 {
            4.0 * PI * (1.0 - u * u / 6.0 + u.powi(4) / 120.0)
        } else {
            4.0 * PI * u.sin() / u
        }),
        _ => Err(Error::InvalidArgument(format!(
            "kernel evaluation supports n <= 3 Euclidean dimensions, got {n}"
        ))),
    }
}

/// `∫_{ℝⁿ} g(|ξ|² + c) e^{iξ·x} dξ` for `|x| = rho`.
fn radial_transform<M: SpectralMultiplier + ?Sized>(g: &M, n: usize, c: f64, rho: f64, cut: f64) -> Result<f64> {
    if n == 0 {
        return Ok(g.eval(c));
    }
    let s_max = (cut - c).max(0.0).sqrt();
    let e = n as i32 - 1;
    adaptive(0.0, s_max, quad_opts(), |s| {
        Ok(g.eval(c + s * s) * sphere_average(n, s * rho)? * s.powi(e))
    })
}

/// Sampling of `ℝⁿ × 𝕋ᵐ`: explicit axes for `x` and `y_len` angles per torus
/// factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AbelianGrid {
    pub x: Vec<Axis>,
    pub y_len: usize,
}

impl AbelianGrid {
    /// `len` centered points of spacing `h` on every real axis.
    pub fn uniform(spec: &AbelianSpec, len: usize, h: f64, y_len: usize) -> Self {
        let x = (0..spec.n)
            .map(|d| Axis::centered(format!("x{}", d + 1), len, h))
            .collect();
        Self { x, y_len }
    }

    fn axes(&self, spec: &AbelianSpec) -> Vec<Axis> {
        let mut axes = self.x.clone();
        if spec.n == 1 && axes[0].name == "x1" {
            axes[0].name = "x".into();
        }
        for d in 0..spec.m {
            let name = if spec.m == 1 { "y".to_string() } else { format!("y{}", d + 1) };
            axes.push(Axis::angle(name, self.y_len));
        }
        axes
    }
}

/// Samples `K_{F(𝓛)}` on `grid`.
pub fn kernel_synthesize<M: SpectralMultiplier + ?Sized>(
    f: &M,
    spec: &AbelianSpec,
    grid: &AbelianGrid,
) -> Result<KernelGrid> {
    if spec.n == 0 {
        return Err(Error::DiscreteSpectrum);
    }
    if grid.x.len() != spec.n {
        return Err(Error::InvalidArgument(format!(
            "grid has {} real axes, the group has n = {}",
            grid.x.len(),
            spec.n
        )));
    }
    if spec.m > 0 && grid.y_len < 2 {
        return Err(Error::InvalidArgument("torus axes need at least 2 points".into()));
    }
    let cut = effective_support(f, TAIL_REL)?;
    let lattice = spec.lattice_below(cut);
    let max_k = lattice
        .iter()
        .flat_map(|(k, _)| k.iter().map(|v| v.unsigned_abs()))
        .max()
        .unwrap_or(0);
    if spec.m > 0 && 2 * max_k as usize >= grid.y_len {
        return Err(Error::GridTooCoarse {
            required: max_k as f64,
            nyquist: (grid.y_len / 2) as f64,
        });
    }

    let axes = grid.axes(spec);
    let mut out = KernelGrid::zeros(axes, 1.0);
    out.cell_weight = out.axes.iter().map(|a| a.step).product();

    // radial profiles I_c(ρ) for each distinct |Ak|² and |x|
    let mut offsets: Vec<f64> = lattice.iter().map(|(_, c)| *c).collect();
    offsets.dedup_by(|a, b| a.to_bits() == b.to_bits());
    let x_points: Vec<Vec<f64>> = {
        let shape: Vec<usize> = grid.x.iter().map(|a| a.len).collect();
        let total: usize = shape.iter().product();
        (0..total)
            .map(|mut flat| {
                let mut p = vec![0.0; shape.len()];
                for d in (0..shape.len()).rev() {
                    p[d] = grid.x[d].coord(flat % shape[d]);
                    flat /= shape[d];
                }
                p
            })
            .collect()
    };
    let mut rho2: Vec<u64> = x_points
        .iter()
        .map(|p| p.iter().map(|v| v * v).sum::<f64>().to_bits())
        .collect();
    rho2.sort_unstable();
    rho2.dedup();
    let jobs: Vec<(usize, u64)> = (0..offsets.len())
        .flat_map(|i| rho2.iter().map(move |&r| (i, r)))
        .collect();
    let values: Vec<Result<f64>> = jobs
        .par_iter()
        .map(|&(i, r)| radial_transform(f, spec.n, offsets[i], f64::from_bits(r).sqrt(), cut))
        .collect();
    let mut profile: HashMap<(u64, u64), f64> = HashMap::with_capacity(jobs.len());
    for (&(i, r), v) in jobs.iter().zip(values) {
        profile.insert((offsets[i].to_bits(), r), v?);
    }

    let norm = (2.0 * PI).powi(-((spec.n + spec.m) as i32));
    let y_count = grid.y_len.pow(spec.m as u32);
    let y_axis = Axis::angle("y", grid.y_len.max(1));
    for (xi, p) in x_points.iter().enumerate() {
        let r = p.iter().map(|v| v * v).sum::<f64>().to_bits();
        for yi in 0..y_count {
            let mut rest = yi;
            let mut y = vec![0.0; spec.m];
            for d in (0..spec.m).rev() {
                y[d] = y_axis.coord(rest % grid.y_len);
                rest /= grid.y_len;
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (k, c) in &lattice {
                let phase: f64 = k.iter().zip(&y).map(|(&k, y)| k as f64 * y).sum();
                acc += profile[&(c.to_bits(), r)] * Complex64::from_polar(1.0, phase);
            }
            out.values[xi * y_count + yi] = acc * norm;
        }
    }
    let tail = f.tail_sup(cut) / f.tail_sup(0.0).max(f64::MIN_POSITIVE);
    out.metadata = serde_json::json!({
        "group": format!("R^{} x T^{}", spec.n, spec.m),
        "spec": spec,
        "lattice_points": lattice.len(),
        "spectral_cut": cut,
        "dropped_tail": tail,
        "boundary_max": out.boundary_max(),
        "haar_measure": "Lebesgue on R^n x [0, 2pi)^m",
    });
    Ok(out)
}

/// `K(0) = ∫ F dσ`, the kernel at the identity from the spectral side.
pub fn kernel_at_identity<M: SpectralMultiplier + ?Sized>(f: &M, spec: &AbelianSpec) -> Result<f64> {
    sigma_integral(f, spec)
}

/// Recovers `F(λ)` from the partial Fourier transform of `K` at
/// `(√λ e_axis, k = 0)`.
pub fn multiplier_invert(k: &KernelGrid, spec: &AbelianSpec, lambdas: &[f64], axis: usize) -> Result<Vec<(f64, f64)>> {
    if spec.n == 0 {
        return Err(Error::DiscreteSpectrum);
    }
    if axis >= spec.n {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range for n = {}", spec.n)));
    }
    if k.axes.len() != spec.n + spec.m {
        return Err(Error::InvalidArgument("kernel grid does not match the group".into()));
    }
    let ax = &k.axes[axis];
    lambdas
        .iter()
        .map(|&lambda| {
            if !(lambda >= 0.0) {
                return Err(Error::Domain(format!("lambda must be >= 0, got {lambda}")));
            }
            let w = lambda.sqrt();
            if w >= ax.nyquist() {
                return Err(Error::GridTooCoarse {
                    required: w,
                    nyquist: ax.nyquist(),
                });
            }
            let mut acc = Complex64::new(0.0, 0.0);
            for (flat, v) in k.values.iter().enumerate() {
                let x = ax.coord(k.unravel(flat)[axis]);
                acc += v * Complex64::from_polar(1.0, -w * x);
            }
            Ok((lambda, (acc * k.cell_weight).re))
        })
        .collect()
}

fn jump_point(lambda: f64) -> Option<u32> {
    let h = lambda.sqrt().round();
    (h >= 1.0 && h * h == lambda).then_some(h as u32)
}

fn chi_terms(lambda: f64, x: f64, y: f64, below: f64) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    let mut k = 0i64;
    while ((k * k) as f64) < below {
        let gap = lambda - (k * k) as f64;
        let w = if k == 0 { 1.0 } else { 2.0 } / gap.sqrt();
        num += w * (gap.sqrt() * x).cos() * (k as f64 * y).cos();
        den += w;
        k += 1;
    }
    num / den
}

/// `χ_𝓛(λ, (x, y))` on `ℝ × 𝕋` with `𝓛 = -∂_x² - ∂_y²`: the ratio of
/// `Σ_{|k|<√λ} cos(√(λ-k²) x) e^{iky} (λ-k²)^{-1/2}` and
/// `Σ_{|k|<√λ} (λ-k²)^{-1/2}`.
pub fn chi_rt(lambda: f64, x: f64, y: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("chi is defined for lambda > 0, got {lambda}")));
    }
    if let Some(h) = jump_point(lambda) {
        return Err(Error::JumpPoint { h });
    }
    Ok(chi_terms(lambda, x, y, lambda))
}

/// `lim_{λ↑h²} χ(λ, (x, y))`: the ratio restricted to `|k| < h`.
pub fn chi_rt_left(h: u32, x: f64, y: f64) -> Result<f64> {
    if h == 0 {
        return Err(Error::Domain("the left limit needs h >= 1".into()));
    }
    let lambda = (h as f64).powi(2);
    Ok(chi_terms(lambda, x, y, lambda))
}

/// `lim_{λ↓h²} χ(λ, (x, y))`. The terms `k = ±h` dominate both sums, so the
/// limit is `cos(hy)`.
pub fn chi_rt_right(h: u32, _x: f64, y: f64) -> Result<f64> {
    if h == 0 {
        return Err(Error::Domain("the right limit needs h >= 1".into()));
    }
    Ok((h as f64 * y).cos())
}

/// Narrow-band estimate of `χ(λ, x)` on `ℝⁿ` together with the band width
/// reached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NarrowBand {
    pub value: f64,
    pub delta: f64,
    pub last_change: f64,
}

/// `χ(λ, x) = lim K_{F_δ}(x) / ∫ F_δ dσ` with `F_δ` a window of width `δ`
/// at `λ`, extrapolated in `δ²` and halved until stable.
pub fn chi_narrow_band(lambda: f64, x: &[f64], spec: &AbelianSpec) -> Result<NarrowBand> {
    if spec.m != 0 {
        return Err(Error::InvalidArgument("narrow-band chi is implemented on R^n (m = 0)".into()));
    }
    if spec.n != x.len() {
        return Err(Error::InvalidArgument(format!("point has {} coordinates, n = {}", x.len(), spec.n)));
    }
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::Domain(format!("chi is defined for lambda > 0, got {lambda}")));
    }
    let rho = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    let n = spec.n;
    let e = 0.5 * n as f64 - 1.0;
    let area = sphere_area(n);
    let ratio = |delta: f64| -> Result<f64> {
        let f = Multiplier::window(lambda, delta)?;
        let lo = (lambda - 12.0 * delta).max(0.0);
        let hi = lambda + 12.0 * delta;
        // common factors (2π)^{-n} / 2 cancel
        let num = adaptive(lo, hi, quad_opts(), |mu| {
            Ok(f.eval(mu) * mu.powf(e) * sphere_average(n, mu.sqrt() * rho)?)
        })?;
        let den = adaptive(lo, hi, quad_opts(), |mu| Ok(f.eval(mu) * mu.powf(e)))?;
        Ok(num / (area * den))
    };
    let mut delta = lambda / 48.0;
    let mut prev_raw = ratio(delta)?;
    let mut prev_extrap: Option<f64> = None;
    for _ in 0..20 {
        delta *= 0.5;
        let raw = ratio(delta)?;
        let extrap = (4.0 * raw - prev_raw) / 3.0;
        if let Some(p) = prev_extrap {
            let change = (extrap - p).abs();
            if change < 1e-12 {
                return Ok(NarrowBand {
                    value: extrap,
                    delta,
                    last_change: change,
                });
            }
        }
        prev_raw = raw;
        prev_extrap = Some(extrap);
    }
    Err(Error::Quadrature(format!(
        "narrow-band chi at lambda = {lambda} did not stabilize"
    )))
}

/// `(χ(t²λ, x), χ(λ, t x))`, both by narrow-band extraction.
pub fn chi_homogeneity_check(lambda: f64, t: f64, x: &[f64], spec: &AbelianSpec) -> Result<(f64, f64)> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("dilation factor must be positive, got {t}")));
    }
    let lhs = chi_narrow_band(t * t * lambda, x, spec)?.value;
    let tx: Vec<f64> = x.iter().map(|v| t * v).collect();
    let rhs = chi_narrow_band(lambda, &tx, spec)?.value;
    Ok((lhs, rhs))
}
