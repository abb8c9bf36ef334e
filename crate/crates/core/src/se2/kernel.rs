//! Matrix coefficients of `π_r`, kernel synthesis and multiplier
//! reconstruction.
//!
//! Haar measure on SE(2) is `dz dθ / 4π²`, and `L²(𝕋)` carries the
//! unnormalized `dφ`. With these conventions the inversion formula
//!
//! ```text
//! K(z, θ) = c₀ ∫₀^∞ Σ_b F(ψ_b(r²)) ⟨π_r(z, θ) H_b, H_b⟩ r dr
//! ```
//!
//! holds with `c₀ = 1`, and `K(e) = ∫ F dσ`, `‖K‖² = ∫ |F|² dσ`.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use super::branch::SpectralBranch;
use super::density::{active_branches, sigma_integral};
use super::normal_form::SE2NormalForm;
use crate::error::{Error, Result};
use crate::grid::{Axis, KernelGrid};
use crate::mathieu::{self, Branch, MathieuEigenpair, ParityClass, TruncationConfig};
use crate::multiplier::{Rescaled, SpectralMultiplier, Squared};
use crate::quadrature::GaussLegendre;

/// Frozen inversion constant, see [`calibrate_inversion_constant`].
pub const INVERSION_CONSTANT: f64 = 1.0;

/// `⟨π_r(z, θ) H, H⟩ = ∫ e^{i r Re(z e^{iφ})} H(θ+φ) H(φ) dφ` by the
/// trapezoid rule.
pub fn matrix_coefficient(r: f64, z: Complex64, theta: f64, pair: &MathieuEigenpair) -> Result<Complex64> {
    if !(r.is_finite() && z.re.is_finite() && z.im.is_finite() && theta.is_finite()) {
        return Err(Error::InvalidArgument("matrix coefficient arguments must be finite".into()));
    }
    let q = r * r;
    if (pair.q - q).abs() > 1e-12 * q.max(1.0) {
        return Err(Error::InvalidArgument(format!(
            "eigenpair solved at q = {}, but r² = {q}",
            pair.q
        )));
    }
    let max_freq = pair.class().frequency(pair.coeffs.len().saturating_sub(1));
    let n = 256
        .max(8 * (r.abs() * z.norm()).ceil() as usize)
        .max(4 * max_freq + 16);
    let step = 2.0 * PI / n as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..n {
        let phi = p as f64 * step;
        let phase = r * (z * Complex64::from_polar(1.0, phi)).re;
        acc += Complex64::from_polar(pair.eval(theta + phi) * pair.eval(phi), phase);
    }
    Ok(acc * step)
}

/// Sampling of `ℂ × 𝕋`: `n × n` points `(j - n/2) h` in `z` and `n_theta`
/// angles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Se2Grid {
    pub n: usize,
    pub h: f64,
    pub n_theta: usize,
}

impl Default for Se2Grid {
    fn default() -> Self {
        Self {
            n: 128,
            h: 0.2,
            n_theta: 64,
        }
    }
}

impl Se2Grid {
    pub fn validate(&self) -> Result<()> {
        if self.n < 8 || self.n % 4 != 0 {
            return Err(Error::InvalidArgument(format!(
                "spatial grid size must be a multiple of 4 and >= 8, got {}",
                self.n
            )));
        }
        if !(self.h > 0.0 && self.h.is_finite()) {
            return Err(Error::InvalidArgument(format!("grid step must be positive, got {}", self.h)));
        }
        if self.n_theta < 4 {
            return Err(Error::InvalidArgument(format!(
                "angular grid needs at least 4 points, got {}",
                self.n_theta
            )));
        }
        Ok(())
    }

    /// Frequency spacing of the dual grid.
    pub fn dxi(&self) -> f64 {
        2.0 * PI / (self.n as f64 * self.h)
    }

    pub fn nyquist(&self) -> f64 {
        PI / self.h
    }

    /// Haar measure of one cell.
    pub fn cell_weight(&self) -> f64 {
        self.h * self.h / (2.0 * PI * self.n_theta as f64)
    }

    pub fn axes(&self) -> Vec<Axis> {
        vec![
            Axis::centered("x", self.n, self.h),
            Axis::centered("y", self.n, self.h),
            Axis::angle("theta", self.n_theta),
        ]
    }
}

/// Tolerances for [`synthesize_kernel`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisOptions {
    /// Branches with `sup_{λ ≥ λ⁰} |F| ≤ branch_tol · sup |F|` are dropped.
    pub branch_tol: f64,
    /// Largest admissible `|F|` (relative) beyond the Nyquist radius.
    pub tail_tol: f64,
    pub c0: f64,
}

impl Default for SynthesisOptions {
    fn default() -> Self {
        Self {
            branch_tol: 1e-12,
            tail_tol: 1e-8,
            c0: INVERSION_CONSTANT,
        }
    }
}

/// Kernel of `F(𝓛)` for `𝓛` with the given normal form, in the coordinates
/// where `-α𝓛 = T² + Y² + β(X² + Y²)`.
pub fn synthesize_for_form<M: SpectralMultiplier + ?Sized>(
    f: &M,
    form: &SE2NormalForm,
    grid: &Se2Grid,
    opts: &SynthesisOptions,
) -> Result<KernelGrid> {
    match *form {
        SE2NormalForm::Generic { alpha, beta } => {
            // F(𝓛) = F(𝓛_β / α)
            let g = Rescaled { f, alpha };
            synthesize_kernel(&g, beta, grid, opts)
        }
        SE2NormalForm::Elliptic { .. } => Err(Error::InvalidArgument(
            "the elliptic normal form is a Laplacian on the abelian group C x T; \
             use the abelian kernel synthesis"
                .into(),
        )),
    }
}

/// Eigenpairs of all active branches at one `q`, with weights `F(ψ_b(q))`.
fn weighted_pairs<M: SpectralMultiplier + ?Sized>(
    f: &M,
    beta: f64,
    q: f64,
    k_max: &[(ParityClass, usize)],
    floor: f64,
) -> Result<Vec<(f64, MathieuEigenpair)>> {
    let cfg = TruncationConfig::default();
    let mut out = Vec::new();
    for &(class, k_top) in k_max {
        // skip classes whose first branch is already negligible at this q
        let lowest = class.free_eigenvalue(0) + beta * q;
        if f.tail_sup(lowest) <= floor {
            continue;
        }
        for pair in mathieu::solve_branch(q, class, k_top, &cfg)? {
            let w = f.eval(pair.lambda + beta * q);
            if w.abs() > floor {
                out.push((w, pair));
            }
        }
    }
    Ok(out)
}

fn class_ranges(branches: &[Branch]) -> Vec<(ParityClass, usize)> {
    ParityClass::ALL
        .iter()
        .filter_map(|&c| {
            branches
                .iter()
                .filter(|b| b.class == c)
                .map(|b| b.k)
                .max()
                .map(|k| (c, k))
        })
        .collect()
}

/// Samples `K_{F(𝓛_β)}` with `𝓛_β = -(T² + Y² + β(X² + Y²))` on `grid`.
///
/// The partial Fourier transform `Â(ξ, θ) = Σ_b F(ψ_b(|ξ|²)) H_b(θ+φ) H_b(φ)`
/// with `ξ = |ξ|(cos φ, -sin φ)` is tabulated on the dual grid and inverted
/// by a 2-D FFT for every sampled `θ`.
pub fn synthesize_kernel<M: SpectralMultiplier + ?Sized>(
    f: &M,
    beta: f64,
    grid: &Se2Grid,
    opts: &SynthesisOptions,
) -> Result<KernelGrid> {
    grid.validate()?;
    let ground = SpectralBranch::new(Branch::ground(), beta)?;
    let scale = f.tail_sup(0.0);
    let nyq = grid.nyquist();
    let tail = f.tail_sup(ground.psi(nyq * nyq)?) / scale.max(f64::MIN_POSITIVE);
    if tail > opts.tail_tol {
        return Err(Error::NonDecaying {
            tail,
            tol: opts.tail_tol,
            context: format!("multiplier at the Nyquist radius {nyq} of the grid"),
        });
    }
    let branches = active_branches(f, opts.branch_tol);
    let ranges = class_ranges(&branches);
    let floor = opts.branch_tol * scale;

    let n = grid.n;
    let half = (n / 2) as i64;
    let dxi = grid.dxi();
    let offsets: Vec<i64> = (0..n as i64).map(|p| p - half).collect();

    // eigenpairs are shared by all dual points on one circle
    let mut radii: Vec<i64> = offsets
        .iter()
        .flat_map(|a| offsets.iter().map(move |b| a * a + b * b))
        .collect();
    radii.sort_unstable();
    radii.dedup();
    let solved: Vec<Result<(i64, Vec<(f64, MathieuEigenpair)>)>> = radii
        .par_iter()
        .map(|&m| {
            let q = m as f64 * dxi * dxi;
            Ok((m, weighted_pairs(f, beta, q, &ranges, floor)?))
        })
        .collect();
    let mut cache = HashMap::with_capacity(solved.len());
    for s in solved {
        let (m, pairs) = s?;
        cache.insert(m, pairs);
    }

    let nt = grid.n_theta;
    let thetas = Axis::angle("theta", nt).coords();
    // hat[p][l] for dual point p = p1 * n + p2
    let hat: Vec<Vec<f64>> = (0..n * n)
        .into_par_iter()
        .map(|p| {
            let (a, b) = (offsets[p / n], offsets[p % n]);
            let mut row = vec![0.0; nt];
            let pairs = &cache[&(a * a + b * b)];
            if pairs.is_empty() {
                return row;
            }
            let phi = (-(b as f64)).atan2(a as f64);
            for (w, pair) in pairs {
                let c = w * pair.eval(phi);
                for (l, th) in thetas.iter().enumerate() {
                    row[l] += c * pair.eval(th + phi);
                }
            }
            row
        })
        .collect();

    let fft = FftPlanner::<f64>::new().plan_fft_inverse(n);
    let sign = |i: usize| if i % 2 == 0 { 1.0 } else { -1.0 };
    let norm = opts.c0 * dxi * dxi;
    let planes: Vec<Vec<Complex64>> = (0..nt)
        .into_par_iter()
        .map(|l| {
            let mut buf: Vec<Complex64> = (0..n * n)
                .map(|p| Complex64::new(sign(p / n) * sign(p % n) * hat[p][l], 0.0))
                .collect();
            for row in buf.chunks_exact_mut(n) {
                fft.process(row);
            }
            let mut col = vec![Complex64::new(0.0, 0.0); n];
            for j2 in 0..n {
                for j1 in 0..n {
                    col[j1] = buf[j1 * n + j2];
                }
                fft.process(&mut col);
                for j1 in 0..n {
                    buf[j1 * n + j2] = col[j1];
                }
            }
            for (j, v) in buf.iter_mut().enumerate() {
                *v *= norm * sign(j / n) * sign(j % n);
            }
            buf
        })
        .collect();

    let mut out = KernelGrid::zeros(grid.axes(), grid.cell_weight());
    for (l, plane) in planes.iter().enumerate() {
        for (j, v) in plane.iter().enumerate() {
            out.values[j * nt + l] = *v;
        }
    }
    out.metadata = serde_json::json!({
        "group": "SE(2)",
        "beta": beta,
        "c0": opts.c0,
        "grid": grid,
        "branches": branches.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
        "nyquist_tail": tail,
        "boundary_max": out.boundary_max(),
        "haar_measure": "dx dy dtheta / (4 pi^2)",
    });
    Ok(out)
}

/// `K(z, θ)` at a single point by Gauss–Legendre panels in `r`, doubling the
/// panel count until the value moves by less than `1e-8` (relative).
pub fn kernel_at<M: SpectralMultiplier + ?Sized>(f: &M, beta: f64, z: Complex64, theta: f64) -> Result<Complex64> {
    let ground = SpectralBranch::new(Branch::ground(), beta)?;
    let scale = f.tail_sup(0.0);
    let mut r_max = 1.0_f64;
    while f.tail_sup(ground.psi(r_max * r_max)?) > 1e-13 * scale {
        r_max *= 1.5;
        if r_max > 1e4 {
            return Err(Error::NonDecaying {
                tail: f.tail_sup(ground.psi(r_max * r_max)?) / scale,
                tol: 1e-13,
                context: "pointwise kernel evaluation".into(),
            });
        }
    }
    let ranges = class_ranges(&active_branches(f, 1e-12));
    let floor = 1e-14 * scale;
    let rule = GaussLegendre::order20();
    let mut memo: HashMap<u64, Complex64> = HashMap::new();
    let mut integrand = |r: f64| -> Result<Complex64> {
        if let Some(v) = memo.get(&r.to_bits()) {
            return Ok(*v);
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (w, pair) in weighted_pairs(f, beta, r * r, &ranges, floor)? {
            acc += w * matrix_coefficient(r, z, theta, &pair)?.conj();
        }
        let v = acc * r;
        memo.insert(r.to_bits(), v);
        Ok(v)
    };
    let mut panels = 4;
    let mut prev: Option<Complex64> = None;
    loop {
        let h = r_max / panels as f64;
        let mut total = Complex64::new(0.0, 0.0);
        for p in 0..panels {
            for (x, w) in rule.mapped(p as f64 * h, (p + 1) as f64 * h) {
                total += w * integrand(x)?;
            }
        }
        if let Some(old) = prev {
            if (total - old).norm() < 1e-8 * total.norm().max(1e-300) {
                return Ok(total * INVERSION_CONSTANT);
            }
        }
        if panels >= 512 {
            return Err(Error::Quadrature(format!(
                "kernel value at z={z}, theta={theta} not stable after {panels} panels"
            )));
        }
        prev = Some(total);
        panels *= 2;
    }
}

/// `∫ F dσ` and `∫ |F|² dσ`, the targets for `K(e)` and `‖K‖²`.
pub fn kernel_targets<M: SpectralMultiplier + ?Sized>(f: &M, beta: f64) -> Result<(f64, f64)> {
    Ok((sigma_integral(f, beta)?, sigma_integral(&Squared(f), beta)?))
}

/// The `c₀` making `‖K‖² = ∫|F|² dσ` for a kernel synthesized with `c₀ = 1`.
pub fn calibrate_inversion_constant<M: SpectralMultiplier + ?Sized>(
    f: &M,
    beta: f64,
    grid: &Se2Grid,
) -> Result<f64> {
    let opts = SynthesisOptions {
        c0: 1.0,
        ..Default::default()
    };
    let k = synthesize_kernel(f, beta, grid, &opts)?;
    let (_, target) = kernel_targets(f, beta)?;
    Ok((target / k.norm_sq()).sqrt())
}

fn se2_layout(k: &KernelGrid) -> Result<(&Axis, &Axis, &Axis)> {
    match k.axes.as_slice() {
        [x, y, t] if !x.periodic && !y.periodic && t.periodic => Ok((x, y, t)),
        _ => Err(Error::InvalidArgument(
            "expected an SE(2) kernel grid with axes x, y, theta".into(),
        )),
    }
}

/// `G_F(r) = ⟨π_r(K) H, H⟩` for the ground eigenfunction `H` of `𝓜_{r²}`,
/// computed from direct grid sums of the partial Fourier transform in `z`.
/// Defined for all real `r`.
pub fn reconstruct_g(k: &KernelGrid, r: f64) -> Result<Complex64> {
    let (ax, ay, at) = se2_layout(k)?;
    let nyquist = ax.nyquist().min(ay.nyquist());
    if !(r.abs() < nyquist) {
        return Err(Error::GridTooCoarse {
            required: r.abs(),
            nyquist,
        });
    }
    let pair = mathieu::solve_eigenpair(r * r, Branch::ground(), &TruncationConfig::default())?;
    let nt = at.len;
    let thetas = at.coords();
    let xs = ax.coords();
    let ys = ay.coords();
    let n_phi = 128.max(4 * pair.class().frequency(pair.coeffs.len()) + 16);
    let dphi = 2.0 * PI / n_phi as f64;
    let cell = ax.step * ay.step;
    let terms: Vec<Complex64> = (0..n_phi)
        .into_par_iter()
        .map(|s| {
            let phi = s as f64 * dphi;
            let (sp, cp) = phi.sin_cos();
            // K̂(-r ω_φ, θ) = Σ K(x, θ) e^{i r ω_φ · x} h²
            let ex: Vec<Complex64> = xs.iter().map(|x| Complex64::from_polar(1.0, r * cp * x)).collect();
            let ey: Vec<Complex64> = ys.iter().map(|y| Complex64::from_polar(1.0, -r * sp * y)).collect();
            let mut khat = vec![Complex64::new(0.0, 0.0); nt];
            for (i, exi) in ex.iter().enumerate() {
                for (j, eyj) in ey.iter().enumerate() {
                    let e = exi * eyj;
                    let base = (i * ys.len() + j) * nt;
                    for (l, kh) in khat.iter_mut().enumerate() {
                        *kh += k.values[base + l] * e;
                    }
                }
            }
            let h_phi = pair.eval(phi);
            khat.iter()
                .zip(&thetas)
                .map(|(kh, th)| kh * (pair.eval(th + phi) * h_phi))
                .sum::<Complex64>()
        })
        .collect();
    let dtheta = 2.0 * PI / nt as f64;
    Ok(terms.iter().sum::<Complex64>() * (cell * dtheta * dphi / (4.0 * PI * PI)))
}

/// One row of [`multiplier_reconstruct`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Reconstructed {
    pub r: f64,
    pub lambda: f64,
    pub f_hat: f64,
    pub imag: f64,
}

/// Recovers `F(ψ(r²))` on the ground branch from a sampled kernel.
pub fn multiplier_reconstruct(k: &KernelGrid, r_list: &[f64], beta: f64) -> Result<Vec<Reconstructed>> {
    let ground = SpectralBranch::new(Branch::ground(), beta)?;
    r_list
        .iter()
        .map(|&r| {
            let g = reconstruct_g(k, r)?;
            Ok(Reconstructed {
                r,
                lambda: ground.psi(r * r)?,
                f_hat: g.re,
                imag: g.im,
            })
        })
        .collect()
}
