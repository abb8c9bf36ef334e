//! Spectrum of the modified Mathieu operator `M_q = -d²/dφ² + q sin²φ` on
//! `L²(T)`.
//!
//! The operator commutes with `φ ↦ -φ` and `φ ↦ φ + π`, so `L²(T)` splits
//! into four invariant subspaces labelled by a [`ParityClass`]. In the
//! orthonormal Fourier basis of each class `M_q` is tridiagonal, because
//! `sin²φ = ½ - ½ cos 2φ` only couples frequencies that differ by 2.
//!
//! Throughout, `L²(T)` carries the unnormalized measure `dφ` on `[0, 2π)`.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tridiag::SymTridiag;

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;

/// Joint eigenspace label `(i, j)` of the reflection (`i`: 0 even, 1 odd) and
/// the half-turn (`j`: 0 π-periodic, 1 π-antiperiodic).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ParityClass {
    i: u8,
    j: u8,
}

impl ParityClass {
    /// Even, π-periodic: `{cos 2mφ}`, m ≥ 0.
    pub const EVEN_PERIODIC: Self = Self { i: 0, j: 0 };
    /// Odd, π-periodic: `{sin 2mφ}`, m ≥ 1.
    pub const ODD_PERIODIC: Self = Self { i: 1, j: 0 };
    /// Even, π-antiperiodic: `{cos (2m+1)φ}`, m ≥ 0.
    pub const EVEN_ANTIPERIODIC: Self = Self { i: 0, j: 1 };
    /// Odd, π-antiperiodic: `{sin (2m+1)φ}`, m ≥ 0.
    pub const ODD_ANTIPERIODIC: Self = Self { i: 1, j: 1 };

    pub const ALL: [Self; 4] = [
        Self::EVEN_PERIODIC,
        Self::ODD_PERIODIC,
        Self::EVEN_ANTIPERIODIC,
        Self::ODD_ANTIPERIODIC,
    ];

    pub fn new(i: u8, j: u8) -> Result<Self> {
        if i > 1 || j > 1 {
            return Err(Error::InvalidArgument(format!(
                "parity class indices must be 0 or 1, got ({i},{j})"
            )));
        }
        Ok(Self { i, j })
    }

    pub fn i(self) -> u8 {
        self.i
    }

    pub fn j(self) -> u8 {
        self.j
    }

    pub fn is_odd(self) -> bool {
        self.i == 1
    }

    pub fn is_antiperiodic(self) -> bool {
        self.j == 1
    }

    /// Frequency of the `m`-th basis function of the class.
    pub fn frequency(self, m: usize) -> usize {
        match (self.i, self.j) {
            (0, 0) => 2 * m,
            (1, 0) => 2 * m + 2,
            _ => 2 * m + 1,
        }
    }

    /// `2k + i + |i - j|`: the frequency of the `k`-th free eigenfunction.
    pub fn free_index(self, k: usize) -> usize {
        2 * k + self.i as usize + self.i.abs_diff(self.j) as usize
    }

    /// Eigenvalue of the free Laplacian, `(2k + i + |i-j|)²`.
    pub fn free_eigenvalue(self, k: usize) -> f64 {
        let f = self.free_index(k) as f64;
        f * f
    }

    /// The class `(|i - j|, j)` that `φ ↦ φ + π/2` maps this class onto when
    /// `q` changes sign.
    pub fn reflected(self) -> Self {
        Self {
            i: self.i.abs_diff(self.j),
            j: self.j,
        }
    }

    /// Value at `φ` of the `m`-th orthonormal basis function.
    pub fn basis(self, m: usize, phi: f64) -> f64 {
        let f = self.frequency(m) as f64;
        if self.is_odd() {
            (f * phi).sin() * FRAC_1_SQRT_PI
        } else if f == 0.0 {
            FRAC_1_SQRT_2PI
        } else {
            (f * phi).cos() * FRAC_1_SQRT_PI
        }
    }
}

impl fmt::Display for ParityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.i, self.j)
    }
}

impl FromStr for ParityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let digits: Vec<char> = s.chars().filter(|c| *c != ',' && !c.is_whitespace()).collect();
        match digits.as_slice() {
            [a, b] => {
                let parse = |c: char| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(Error::InvalidArgument(format!("bad parity class {s:?}"))),
                };
                Self::new(parse(*a)?, parse(*b)?)
            }
            _ => Err(Error::InvalidArgument(format!(
                "parity class must be two binary digits like 01, got {s:?}"
            ))),
        }
    }
}

/// One eigenvalue curve `q ↦ λ^q_{(i,j),k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Branch {
    pub class: ParityClass,
    pub k: usize,
}

impl Branch {
    pub fn new(class: ParityClass, k: usize) -> Self {
        Self { class, k }
    }

    pub fn ground() -> Self {
        Self::new(ParityClass::EVEN_PERIODIC, 0)
    }

    pub fn free_eigenvalue(self) -> f64 {
        self.class.free_eigenvalue(self.k)
    }

    /// Limit of `λ^q / √q` as `q → ∞`: `2(2k + i) + 1`.
    pub fn harmonic_limit(self) -> f64 {
        (2 * (2 * self.k + self.class.i() as usize) + 1) as f64
    }

    /// All branches with `λ⁰ < bound`, ordered by class then `k`.
    pub fn below(bound: f64) -> Vec<Branch> {
        let mut out = Vec::new();
        for class in ParityClass::ALL {
            let mut k = 0;
            while class.free_eigenvalue(k) < bound {
                out.push(Branch::new(class, k));
                k += 1;
            }
        }
        out
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{}),{}", self.class.i(), self.class.j(), self.k)
    }
}

/// Basis-size schedule for the truncated eigenproblem.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationConfig {
    pub n_min: usize,
    /// Convergence threshold on the eigenvalue change under basis doubling,
    /// applied as `lambda_tol * max(1, |λ|)`.
    pub lambda_tol: f64,
    pub n_max: usize,
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self {
            n_min: 64,
            lambda_tol: 1e-12,
            n_max: 65536,
        }
    }
}

impl TruncationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_min < 8 {
            return Err(Error::InvalidArgument(format!("n_min must be >= 8, got {}", self.n_min)));
        }
        if !(self.lambda_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "lambda_tol must be positive, got {}",
                self.lambda_tol
            )));
        }
        if self.n_max < self.n_min {
            return Err(Error::InvalidArgument(format!(
                "n_max ({}) must be >= n_min ({})",
                self.n_max, self.n_min
            )));
        }
        Ok(())
    }

    /// Starting basis size for `q`: eigenfunction content reaches frequencies
    /// of order `√q`.
    fn start_size(&self, q: f64, k_max: usize) -> usize {
        let by_q = 2.0 * q.abs().sqrt().ceil() + 40.0;
        self.n_min.max(by_q as usize).max(2 * k_max + 16)
    }
}

/// Converged eigenpair of `M_q` restricted to one parity class.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MathieuEigenpair {
    pub q: f64,
    pub branch: Branch,
    pub lambda: f64,
    /// Coefficients in the orthonormal Fourier basis of the class, unit norm.
    pub coeffs: Vec<f64>,
    pub n_used: usize,
}

/// Matrix of the multiplication operator `sin²φ` compressed to the first `n`
/// basis functions of `class`.
pub fn sin2_matrix(class: ParityClass, n: usize) -> SymTridiag {
    assert!(n >= 1);
    let mut diag = vec![0.5; n];
    let mut off = vec![-0.25; n - 1];
    match (class.i(), class.j()) {
        (0, 0) => {
            if n > 1 {
                // cos 2φ · (2π)^{-1/2} = 2^{-1/2} · cos 2φ / √π
                off[0] = -0.5 * std::f64::consts::FRAC_1_SQRT_2;
            }
        }
        // cos φ · cos 2φ = ½ cos 3φ + ½ cos φ
        (0, 1) => diag[0] = 0.25,
        // sin φ · cos 2φ = ½ sin 3φ - ½ sin φ
        (1, 1) => diag[0] = 0.75,
        _ => {}
    }
    SymTridiag::new(diag, off)
}

/// Matrix of `M_q` on the first `n` orthonormal basis functions of `class`.
pub fn assemble_operator(q: f64, class: ParityClass, n: usize) -> Result<SymTridiag> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("basis size must be >= 2, got {n}")));
    }
    if !q.is_finite() {
        return Err(Error::NonFinite(q));
    }
    let b = sin2_matrix(class, n);
    let diag = (0..n)
        .map(|m| {
            let f = class.frequency(m) as f64;
            f * f + q * b.diag()[m]
        })
        .collect();
    let off = b.off().iter().map(|v| q * v).collect();
    Ok(SymTridiag::new(diag, off))
}

fn eigenvalue_hint(q: f64, class: ParityClass, k: usize) -> (f64, f64) {
    // 0 ≤ sin² ≤ 1 and Weyl's inequality for the compressed problem.
    let free = class.free_eigenvalue(k);
    let lo = free + q.min(0.0);
    let hi = free + q.max(0.0);
    let pad = 1e-9 * (1.0 + lo.abs().max(hi.abs()));
    (lo - pad, hi + pad)
}

fn eigenvalues_at(op: &SymTridiag, q: f64, class: ParityClass, ks: &[usize]) -> Vec<f64> {
    ks.iter()
        .map(|&k| op.eigenvalue(k, Some(eigenvalue_hint(q, class, k))))
        .collect()
}

/// Solve for the eigenpairs `k = 0..=k_max` of one parity class.
pub fn solve_branch(
    q: f64,
    class: ParityClass,
    k_max: usize,
    cfg: &TruncationConfig,
) -> Result<Vec<MathieuEigenpair>> {
    let ks: Vec<usize> = (0..=k_max).collect();
    solve_indices(q, class, &ks, cfg)
}

/// Solve for a single eigenpair.
pub fn solve_eigenpair(q: f64, branch: Branch, cfg: &TruncationConfig) -> Result<MathieuEigenpair> {
    let mut v = solve_indices(q, branch.class, &[branch.k], cfg)?;
    Ok(v.pop().expect("one eigenpair requested"))
}

/// Eigenvalue only (no eigenvector), with the same truncation schedule.
pub fn eigenvalue(q: f64, branch: Branch, cfg: &TruncationConfig) -> Result<f64> {
    let (_, values, _) = converge(q, branch.class, &[branch.k], cfg)?;
    Ok(values[0])
}

fn converge(
    q: f64,
    class: ParityClass,
    ks: &[usize],
    cfg: &TruncationConfig,
) -> Result<(SymTridiag, Vec<f64>, usize)> {
    if !q.is_finite() {
        return Err(Error::NonFinite(q));
    }
    cfg.validate()?;
    let k_max = ks.iter().copied().max().unwrap_or(0);
    let mut n = cfg.start_size(q, k_max);
    if n > cfg.n_max {
        return Err(Error::NotConverged {
            class,
            k: k_max,
            q,
            n_max: cfg.n_max,
            last_delta: f64::INFINITY,
        });
    }
    let mut op = assemble_operator(q, class, n)?;
    let mut prev = eigenvalues_at(&op, q, class, ks);
    loop {
        let next_n = 2 * n;
        if next_n > cfg.n_max {
            let last_delta = f64::INFINITY;
            return Err(Error::NotConverged {
                class,
                k: k_max,
                q,
                n_max: cfg.n_max,
                last_delta,
            });
        }
        let next_op = assemble_operator(q, class, next_n)?;
        let next = eigenvalues_at(&next_op, q, class, ks);
        let mut worst = 0.0_f64;
        let mut worst_k = ks[0];
        let mut ok = true;
        for ((&k, a), b) in ks.iter().zip(&prev).zip(&next) {
            let delta = (a - b).abs();
            if delta > cfg.lambda_tol * b.abs().max(1.0) {
                ok = false;
            }
            if delta >= worst {
                worst = delta;
                worst_k = k;
            }
        }
        n = next_n;
        op = next_op;
        if ok {
            return Ok((op, next, n));
        }
        if 2 * n > cfg.n_max {
            return Err(Error::NotConverged {
                class,
                k: worst_k,
                q,
                n_max: cfg.n_max,
                last_delta: worst,
            });
        }
        prev = next;
    }
}

fn solve_indices(
    q: f64,
    class: ParityClass,
    ks: &[usize],
    cfg: &TruncationConfig,
) -> Result<Vec<MathieuEigenpair>> {
    let (op, values, n_used) = converge(q, class, ks, cfg)?;
    Ok(ks
        .iter()
        .zip(values)
        .map(|(&k, lambda)| {
            let v = op.eigenvector(lambda);
            MathieuEigenpair::from_vector(q, Branch::new(class, k), lambda, v, n_used)
        })
        .collect())
}

impl MathieuEigenpair {
    fn from_vector(q: f64, branch: Branch, lambda: f64, mut v: Vec<f64>, n_used: usize) -> Self {
        let peak = v.iter().fold(0.0_f64, |m, c| m.max(c.abs()));
        let keep = v
            .iter()
            .rposition(|c| c.abs() > 1e-18 * peak)
            .map_or(1, |p| p + 1);
        v.truncate(keep);
        let norm = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        v.iter_mut().for_each(|c| *c /= norm);
        let mut pair = Self {
            q,
            branch,
            lambda,
            coeffs: v,
            n_used,
        };
        let witness = if branch.class.is_odd() {
            pair.derivative(0.0)
        } else {
            pair.eval(0.0)
        };
        if witness < 0.0 {
            pair.coeffs.iter_mut().for_each(|c| *c = -*c);
        }
        pair
    }

    pub fn class(&self) -> ParityClass {
        self.branch.class
    }

    /// `H(φ)` from the finite Fourier sum.
    pub fn eval(&self, phi: f64) -> f64 {
        let class = self.class();
        let f0 = class.frequency(0) as f64;
        // rotate (cos fφ, sin fφ) by 2φ per step
        let (s2, c2) = (2.0 * phi).sin_cos();
        let (mut s, mut c) = (f0 * phi).sin_cos();
        let mut acc = 0.0;
        for (m, a) in self.coeffs.iter().enumerate() {
            let b = if class.is_odd() {
                s
            } else if m == 0 && f0 == 0.0 {
                std::f64::consts::FRAC_1_SQRT_2
            } else {
                c
            };
            acc += a * b;
            let nc = c * c2 - s * s2;
            s = s * c2 + c * s2;
            c = nc;
        }
        acc * FRAC_1_SQRT_PI
    }

    /// `H'(φ)`.
    pub fn derivative(&self, phi: f64) -> f64 {
        let class = self.class();
        let mut acc = 0.0;
        for (m, a) in self.coeffs.iter().enumerate() {
            let f = class.frequency(m) as f64;
            acc += a * if class.is_odd() {
                f * (f * phi).cos()
            } else {
                -f * (f * phi).sin()
            };
        }
        acc * FRAC_1_SQRT_PI
    }

    /// `∂λ/∂q = ∫ sin²φ H(φ)² dφ`, evaluated exactly from the coefficients.
    pub fn dlambda_dq(&self) -> f64 {
        sin2_matrix(self.class(), self.coeffs.len().max(1)).quadratic_form(&self.coeffs)
    }

    /// Zeros of `H` in `[0, 2π)`, located by sampling and bisection.
    pub fn zeros(&self) -> Result<Vec<f64>> {
        let f = self.class().free_index(self.branch.k);
        let by_k = 16 * (self.branch.k + 2);
        let by_freq = 8 * (2 * f + self.q.abs().sqrt().ceil() as usize + 4);
        let n = by_k.max(by_freq).next_multiple_of(2);
        let step = 2.0 * PI / n as f64;
        // half-step offset keeps samples off the symmetry-forced zeros
        let nodes: Vec<f64> = (0..n).map(|p| (p as f64 + 0.5) * step).collect();
        let values: Vec<f64> = nodes.iter().map(|&phi| self.eval(phi)).collect();
        let mut zeros = Vec::new();
        for p in 0..n {
            let (a, va) = (nodes[p], values[p]);
            let (b, vb) = if p + 1 < n {
                (nodes[p + 1], values[p + 1])
            } else {
                (nodes[0] + 2.0 * PI, values[0])
            };
            if va.abs() < 1e-12 {
                let prev = values[(p + n - 1) % n];
                if prev.signum() == vb.signum() || vb.abs() < 1e-12 {
                    return Err(Error::AmbiguousZero { phi: a, value: va });
                }
            }
            if va.signum() != vb.signum() {
                let z = self.bisect_zero(a, b, va);
                zeros.push(z.rem_euclid(2.0 * PI));
            }
        }
        zeros.sort_by(|x, y| x.partial_cmp(y).unwrap());
        Ok(zeros)
    }

    fn bisect_zero(&self, mut a: f64, mut b: f64, va: f64) -> f64 {
        let sa = va.signum();
        for _ in 0..80 {
            let m = 0.5 * (a + b);
            if m <= a || m >= b {
                break;
            }
            if self.eval(m).signum() == sa {
                a = m;
            } else {
                b = m;
            }
        }
        0.5 * (a + b)
    }

    /// Number of sign changes over one period.
    pub fn count_zeros(&self) -> Result<usize> {
        Ok(self.zeros()?.len())
    }
}

/// `∂λ/∂q` of a converged pair.
pub fn dlambda_dq(pair: &MathieuEigenpair) -> f64 {
    pair.dlambda_dq()
}

pub fn eval_eigenfunction(pair: &MathieuEigenpair, phi: f64) -> f64 {
    pair.eval(phi)
}

pub fn count_zeros(pair: &MathieuEigenpair) -> Result<usize> {
    pair.count_zeros()
}

/// One row of [`asymptotic_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub q: f64,
    pub lambda: f64,
    /// `λ / √q`, tending to `2(2k+i)+1`.
    pub scaled: f64,
    /// `q ∂_q λ / λ`, tending to 1/2.
    pub log_slope: f64,
}

/// Large-`q` profile of one branch.
pub fn asymptotic_profile(
    branch: Branch,
    q_list: &[f64],
    cfg: &TruncationConfig,
) -> Result<Vec<ProfileRow>> {
    q_list
        .iter()
        .map(|&q| {
            if !(q > 0.0) {
                return Err(Error::InvalidArgument(format!("profile needs q > 0, got {q}")));
            }
            let pair = solve_eigenpair(q, branch, cfg)?;
            Ok(ProfileRow {
                q,
                lambda: pair.lambda,
                scaled: pair.lambda / q.sqrt(),
                log_slope: q * pair.dlambda_dq() / pair.lambda,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> TruncationConfig {
        TruncationConfig::default()
    }

    #[test]
    fn free_operator_is_diagonal() {
        for class in ParityClass::ALL {
            let op = assemble_operator(0.0, class, 4).unwrap();
            let want: Vec<f64> = (0..4).map(|m| (class.frequency(m) as f64).powi(2)).collect();
            assert_eq!(op.diag(), want.as_slice());
            assert!(op.off().iter().all(|v| *v == 0.0));
        }
    }

    #[test]
    fn ground_class_matrix_at_q2() {
        let op = assemble_operator(2.0, ParityClass::EVEN_PERIODIC, 3).unwrap();
        assert_eq!(op.diag(), &[1.0, 5.0, 17.0]);
        assert!((op.off()[0] + std::f64::consts::SQRT_2 / 2.0).abs() < 1e-15);
        assert!((op.off()[1] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn first_diagonal_entry_carries_self_coupling() {
        let q = 3.0;
        let odd = assemble_operator(q, ParityClass::ODD_ANTIPERIODIC, 3).unwrap();
        assert!((odd.diag()[0] - (1.0 + 0.75 * q)).abs() < 1e-15);
        let even = assemble_operator(q, ParityClass::EVEN_ANTIPERIODIC, 3).unwrap();
        assert!((even.diag()[0] - (1.0 + 0.25 * q)).abs() < 1e-15);
    }

    #[test]
    fn rejects_tiny_basis_and_nan() {
        assert!(assemble_operator(1.0, ParityClass::EVEN_PERIODIC, 1).is_err());
        assert!(matches!(
            solve_branch(f64::NAN, ParityClass::EVEN_PERIODIC, 0, &cfg()),
            Err(Error::NonFinite(_))
        ));
    }

    #[test]
    fn free_spectrum() {
        let close = |class, k_max, want: &[f64]| {
            let got = solve_branch(0.0, class, k_max, &cfg()).unwrap();
            for (p, w) in got.iter().zip(want) {
                assert!((p.lambda - w).abs() < 1e-12, "{class}: {} vs {w}", p.lambda);
            }
        };
        close(ParityClass::EVEN_PERIODIC, 2, &[0.0, 4.0, 16.0]);
        close(ParityClass::ODD_PERIODIC, 1, &[4.0, 16.0]);
        close(ParityClass::EVEN_ANTIPERIODIC, 1, &[1.0, 9.0]);
    }

    #[test]
    fn free_derivatives() {
        let d = |class, want: f64| {
            let p = solve_eigenpair(0.0, Branch::new(class, 0), &cfg()).unwrap();
            assert!((p.dlambda_dq() - want).abs() < 1e-14, "{class}: {}", p.dlambda_dq());
        };
        d(ParityClass::EVEN_PERIODIC, 0.5);
        d(ParityClass::EVEN_ANTIPERIODIC, 0.25);
        d(ParityClass::ODD_ANTIPERIODIC, 0.75);
    }

    #[test]
    fn constant_ground_state() {
        let p = solve_eigenpair(0.0, Branch::ground(), &cfg()).unwrap();
        for phi in [0.0, 0.3, 2.0, 5.5] {
            assert!((p.eval(phi) - 1.0 / (2.0 * PI).sqrt()).abs() < 1e-15);
        }
    }

    #[test]
    fn sign_convention() {
        for class in ParityClass::ALL {
            for p in solve_branch(7.3, class, 3, &cfg()).unwrap() {
                if class.is_odd() {
                    assert!(p.derivative(0.0) > 0.0);
                    assert!(p.eval(0.0).abs() < 1e-14);
                } else {
                    assert!(p.eval(0.0) > 0.0);
                }
            }
        }
    }

    #[test]
    fn symmetries_hold_pointwise() {
        for class in ParityClass::ALL {
            let p = solve_eigenpair(4.2, Branch::new(class, 1), &cfg()).unwrap();
            let si = if class.is_odd() { -1.0 } else { 1.0 };
            let sj = if class.is_antiperiodic() { -1.0 } else { 1.0 };
            for phi in [0.1, 0.9, 2.3] {
                assert!((p.eval(-phi) - si * p.eval(phi)).abs() < 1e-13);
                assert!((p.eval(phi + PI) - sj * p.eval(phi)).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn zero_counts_at_7_3() {
        let c = |class, k| {
            solve_eigenpair(7.3, Branch::new(class, k), &cfg())
                .unwrap()
                .count_zeros()
                .unwrap()
        };
        assert_eq!(c(ParityClass::EVEN_PERIODIC, 0), 0);
        assert_eq!(c(ParityClass::ODD_ANTIPERIODIC, 0), 2);
        assert_eq!(c(ParityClass::EVEN_ANTIPERIODIC, 1), 6);
    }

    #[test]
    fn reflection_identity() {
        for class in ParityClass::ALL {
            for k in 0..3 {
                let neg = solve_eigenpair(-7.3, Branch::new(class, k), &cfg()).unwrap();
                let pos = solve_eigenpair(7.3, Branch::new(class.reflected(), k), &cfg()).unwrap();
                assert!((neg.lambda - (pos.lambda - 7.3)).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn truncation_records_size_and_can_fail() {
        let p = solve_eigenpair(5.0, Branch::ground(), &cfg()).unwrap();
        assert!(p.n_used >= 64);
        let tight = TruncationConfig {
            n_min: 64,
            lambda_tol: 1e-12,
            n_max: 64,
        };
        assert!(matches!(
            solve_eigenpair(5.0, Branch::ground(), &tight),
            Err(Error::NotConverged { .. })
        ));
        let bad = TruncationConfig {
            n_min: 4,
            ..TruncationConfig::default()
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn parity_class_parsing() {
        assert_eq!("01".parse::<ParityClass>().unwrap(), ParityClass::EVEN_ANTIPERIODIC);
        assert_eq!("(1,1)".parse::<ParityClass>().unwrap(), ParityClass::ODD_ANTIPERIODIC);
        assert!("0X".parse::<ParityClass>().is_err());
        assert!("012".parse::<ParityClass>().is_err());
    }
}
