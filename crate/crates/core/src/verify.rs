//! The acceptance checks, each reporting a measured error against its
//! tolerance.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{self, AbelianGrid, AbelianSpec};
use crate::error::{Error, Result};
use crate::mathieu::{self, Branch, ParityClass, TruncationConfig};
use crate::multiplier::{Multiplier, SpectralMultiplier, Squared};
use crate::se2::{self, Generator, SE2Generators, SE2NormalForm, Se2Grid, SpectralBranch, SynthesisOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Mathieu,
    Se2,
    Abelian,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" => Ok(Self::All),
            "mathieu" => Ok(Self::Mathieu),
            "se2" => Ok(Self::Se2),
            "abelian" => Ok(Self::Abelian),
            _ => Err(Error::InvalidArgument(format!(
                "unknown suite {s:?} (expected all, mathieu, se2 or abelian)"
            ))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::All => "all",
            Self::Mathieu => "mathieu",
            Self::Se2 => "se2",
            Self::Abelian => "abelian",
        })
    }
}

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub suite: Suite,
    pub description: String,
    /// `None` when the computation itself failed.
    pub measured: Option<f64>,
    pub tolerance: f64,
    pub passed: bool,
    pub seconds: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let measured = self.measured.map_or("error".to_string(), |m| format!("{m:.3e}"));
        write!(
            f,
            "[{}] {:<4} {}: measured {} (tolerance {:.0e}, {:.1} s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.description,
            measured,
            self.tolerance,
            self.seconds
        )?;
        if let Some(note) = &self.note {
            write!(f, " -- {note}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub suite: Suite,
    pub passed: bool,
    pub seconds: f64,
    pub checks: Vec<Check>,
}

struct Outcome {
    measured: f64,
    passed: bool,
    note: Option<String>,
}

impl Outcome {
    fn within(measured: f64, tolerance: f64) -> Self {
        Self {
            measured,
            passed: measured <= tolerance,
            note: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

struct Spec {
    id: &'static str,
    suite: Suite,
    description: &'static str,
    tolerance: f64,
    run: fn(f64) -> Result<Outcome>,
}

const CHECKS: &[Spec] = &[
    Spec { id: "1", suite: Suite::Mathieu, description: "q = 0 spectrum (2k+i+|i-j|)^2, all classes, k <= 10", tolerance: 1e-10, run: free_spectrum },
    Spec { id: "2", suite: Suite::Mathieu, description: "1-Lipschitz and increasing on q in [-50, 50], k <= 3", tolerance: 1e-9, run: lipschitz },
    Spec { id: "3", suite: Suite::Mathieu, description: "reflection lambda(-q) = lambda'(q) - q at q in {1, 7.3, 40}", tolerance: 1e-9, run: reflection },
    Spec { id: "4a", suite: Suite::Mathieu, description: "Hellmann-Feynman vs central difference (relative)", tolerance: 1e-6, run: hellmann_feynman },
    Spec { id: "4b", suite: Suite::Mathieu, description: "d lambda/dq at q = 0 equals 1/2, 1/4, 3/4", tolerance: 1e-10, run: slope_at_zero },
    Spec { id: "5a", suite: Suite::Mathieu, description: "lambda/sqrt(q) - (2(2k+i)+1) at q = 1e6, (0,0) and (1,0), k <= 2", tolerance: 0.05, run: harmonic_limit },
    Spec { id: "5b", suite: Suite::Mathieu, description: "harmonic deviation nonincreasing along q = 1e2..1e6 (largest increase)", tolerance: 0.0, run: harmonic_monotone },
    Spec { id: "5c", suite: Suite::Mathieu, description: "q d(lambda)/dq / lambda - 1/2 at q = 1e6", tolerance: 0.05, run: virial_limit },
    Spec { id: "5d", suite: Suite::Mathieu, description: "asymptotic checks runtime in seconds", tolerance: 30.0, run: asymptotic_runtime },
    Spec { id: "6", suite: Suite::Mathieu, description: "zero counts 2(2k+i+|i-j|), k <= 5 (mismatches)", tolerance: 0.0, run: zero_counts },
    Spec { id: "7a", suite: Suite::Se2, description: "worked generator sets give Generic{1,0} and Elliptic{1}", tolerance: 0.0, run: worked_forms },
    Spec { id: "7b", suite: Suite::Se2, description: "normal form invariant under orthogonal recombination", tolerance: 1e-12, run: recombination },
    Spec { id: "7c", suite: Suite::Se2, description: "degenerate inputs rejected with the right error (misclassified)", tolerance: 0.0, run: obstructions },
    Spec { id: "8", suite: Suite::Se2, description: "bi-Plancherel, F = exp(-t lambda), t in {0.5,1,2}, beta in {0,0.2,0.7,2}", tolerance: 1e-4, run: bi_plancherel },
    Spec { id: "9a", suite: Suite::Se2, description: "kernel Plancherel ||K||^2 vs int |F|^2 d sigma, F = exp(-lambda), beta = 0.2", tolerance: 1e-3, run: se2_plancherel },
    Spec { id: "9b", suite: Suite::Se2, description: "inversion constant stable across t in {0.5, 2}", tolerance: 1e-3, run: c0_stability },
    Spec { id: "10a", suite: Suite::Se2, description: "multiplier round trip on the ground branch at r in {0.5, 1, 2}", tolerance: 1e-3, run: se2_round_trip },
    Spec { id: "10b", suite: Suite::Se2, description: "evenness G(-r) = G(r)", tolerance: 1e-10, run: se2_evenness },
    Spec { id: "11a", suite: Suite::Abelian, description: "R x T Plancherel, F = exp(-lambda) (relative)", tolerance: 1e-5, run: rt_plancherel },
    Spec { id: "11b", suite: Suite::Abelian, description: "chi(lambda, 0, 0) = 1", tolerance: 1e-12, run: chi_normalization },
    Spec { id: "11c", suite: Suite::Abelian, description: "right limit at lambda = h^2 equals 2cos(hy), 64 y-points, h in {1,2,3}", tolerance: 1e-6, run: chi_right_limit },
    Spec { id: "11d", suite: Suite::Abelian, description: "one-sided limits orthogonal in L^2(T), h in {1,2,3}", tolerance: 1e-8, run: chi_orthogonality },
    Spec { id: "12", suite: Suite::Abelian, description: "homogeneity chi(t^2 lambda, x) = chi(lambda, t x), n in {1,2}, t in {0.5,2}", tolerance: 1e-6, run: homogeneity },
];

/// Identifiers of the checks in `suite`, in report order.
pub fn check_ids(suite: Suite) -> Vec<&'static str> {
    CHECKS
        .iter()
        .filter(|c| suite == Suite::All || c.suite == suite)
        .map(|c| c.id)
        .collect()
}

/// Runs one check by identifier.
pub fn run_check(id: &str) -> Result<Check> {
    let spec = CHECKS
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown check {id:?}")))?;
    Ok(execute(spec))
}

fn execute(spec: &Spec) -> Check {
    let start = Instant::now();
    let outcome = (spec.run)(spec.tolerance);
    let seconds = start.elapsed().as_secs_f64();
    let (measured, passed, note) = match outcome {
        Ok(o) if o.measured.is_finite() => (Some(o.measured), o.passed, o.note),
        Ok(o) => (None, false, Some(o.note.unwrap_or_else(|| "non-finite measurement".into()))),
        Err(e) => (None, false, Some(e.to_string())),
    };
    Check {
        id: spec.id.to_string(),
        suite: spec.suite,
        description: spec.description.to_string(),
        measured,
        tolerance: spec.tolerance,
        passed,
        seconds,
        note,
    }
}

pub fn run_suite(suite: Suite) -> Report {
    let start = Instant::now();
    let selected: Vec<&Spec> = CHECKS
        .iter()
        .filter(|c| suite == Suite::All || c.suite == suite)
        .collect();
    let checks: Vec<Check> = selected.par_iter().map(|s| execute(s)).collect();
    Report {
        suite,
        passed: checks.iter().all(|c| c.passed),
        seconds: start.elapsed().as_secs_f64(),
        checks,
    }
}

/// `2k + i + |i - j|` computed from the class labels.
fn free_index(class: ParityClass, k: usize) -> usize {
    let (i, j) = (class.i() as usize, class.j() as usize);
    2 * k + i + i.abs_diff(j)
}

fn cfg() -> TruncationConfig {
    TruncationConfig::default()
}

fn free_spectrum(tol: f64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for class in ParityClass::ALL {
        let pairs = mathieu::solve_branch(0.0, class, 10, &cfg())?;
        for (k, p) in pairs.iter().enumerate() {
            let want = free_index(class, k) as f64;
            worst = worst.max((p.lambda - want * want).abs());
        }
    }
    Ok(Outcome::within(worst, tol))
}

fn lipschitz(tol: f64) -> Result<Outcome> {
    let qs: Vec<f64> = (0..=200).map(|i| -50.0 + 0.5 * i as f64).collect();
    let mut decrease: f64 = f64::NEG_INFINITY;
    let mut excess: f64 = f64::NEG_INFINITY;
    for class in ParityClass::ALL {
        let rows: Vec<Vec<f64>> = qs
            .par_iter()
            .map(|&q| Ok(mathieu::solve_branch(q, class, 3, &cfg())?.iter().map(|p| p.lambda).collect()))
            .collect::<Result<_>>()?;
        for (w, q) in rows.windows(2).zip(qs.windows(2)) {
            for k in 0..4 {
                let d = w[1][k] - w[0][k];
                decrease = decrease.max(-d);
                excess = excess.max(d - (q[1] - q[0]));
            }
        }
    }
    Ok(Outcome {
        measured: decrease.max(excess).max(0.0),
        passed: decrease <= 0.0 && excess <= tol,
        note: None,
    })
}

fn reflection(tol: f64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for q in [1.0, 7.3, 40.0] {
        for class in ParityClass::ALL {
            let neg = mathieu::solve_branch(-q, class, 3, &cfg())?;
            let pos = mathieu::solve_branch(q, class.reflected(), 3, &cfg())?;
            for (a, b) in neg.iter().zip(&pos) {
                worst = worst.max((a.lambda - (b.lambda - q)).abs());
            }
        }
    }
    Ok(Outcome::within(worst, tol))
}

fn hellmann_feynman(tol: f64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for q in [0.5f64, 5.0, 50.0] {
        let h = 1e-4 * q.max(1.0);
        for class in ParityClass::ALL {
            let mid = mathieu::solve_branch(q, class, 3, &cfg())?;
            let up = mathieu::solve_branch(q + h, class, 3, &cfg())?;
            let down = mathieu::solve_branch(q - h, class, 3, &cfg())?;
            for k in 0..4 {
                let fd = (up[k].lambda - down[k].lambda) / (2.0 * h);
                worst = worst.max((mid[k].dlambda_dq() - fd).abs() / fd.abs());
            }
        }
    }
    Ok(Outcome::within(worst, tol))
}

fn slope_at_zero(tol: f64) -> Result<Outcome> {
    let cases = [
        (ParityClass::EVEN_PERIODIC, 0.5),
        (ParityClass::EVEN_ANTIPERIODIC, 0.25),
        (ParityClass::ODD_ANTIPERIODIC, 0.75),
    ];
    let mut worst: f64 = 0.0;
    for (class, want) in cases {
        let pair = mathieu::solve_eigenpair(0.0, Branch::new(class, 0), &cfg())?;
        worst = worst.max((pair.dlambda_dq() - want).abs());
    }
    Ok(Outcome::within(worst, tol))
}

const HARMONIC_Q: [f64; 5] = [1e2, 1e3, 1e4, 1e5, 1e6];

fn harmonic_branches() -> Vec<Branch> {
    [ParityClass::EVEN_PERIODIC, ParityClass::ODD_PERIODIC]
        .into_iter()
        .flat_map(|c| (0..3).map(move |k| Branch::new(c, k)))
        .collect()
}

fn harmonic_profiles() -> Result<Vec<(Branch, Vec<mathieu::ProfileRow>)>> {
    harmonic_branches()
        .into_par_iter()
        .map(|b| Ok((b, mathieu::asymptotic_profile(b, &HARMONIC_Q, &cfg())?)))
        .collect()
}

fn harmonic_limit(tol: f64) -> Result<Outcome> {
    let worst = harmonic_profiles()?
        .iter()
        .map(|(b, rows)| (rows[4].scaled - b.harmonic_limit()).abs())
        .fold(0.0, f64::max);
    Ok(Outcome::within(worst, tol))
}

fn harmonic_monotone(tol: f64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for (b, rows) in harmonic_profiles()? {
        let dev: Vec<f64> = rows.iter().map(|r| (r.scaled - b.harmonic_limit()).abs()).collect();
        for w in dev.windows(2) {
            worst = worst.max(w[1] - w[0]);
        }
    }
    Ok(Outcome::within(worst, tol))
}

fn virial_limit(tol: f64) -> Result<Outcome> {
    let worst = harmonic_profiles()?
        .iter()
        .map(|(_, rows)| (rows[4].log_slope - 0.5).abs())
        .fold(0.0, f64::max);
    Ok(Outcome::within(worst, tol))
}

fn asymptotic_runtime(tol: f64) -> Result<Outcome> {
    let start = Instant::now();
    harmonic_profiles()?;
    Ok(Outcome::within(start.elapsed().as_secs_f64(), tol))
}

fn zero_counts(tol: f64) -> Result<Outcome> {
    let mut bad = 0usize;
    for q in [0.1, 7.3, 50.0] {
        for class in ParityClass::ALL {
            for (k, pair) in mathieu::solve_branch(q, class, 5, &cfg())?.iter().enumerate() {
                let want = 2 * free_index(class, k);
                if pair.count_zeros()? != want {
                    bad += 1;
                }
            }
        }
    }
    Ok(Outcome::within(bad as f64, tol))
}

fn generators(rows: &[(f64, f64, f64)]) -> Result<SE2Generators> {
    SE2Generators::new(rows.iter().map(|&(a, b, c)| Generator::new(a, b, c)).collect())
}

fn form_distance(x: &SE2NormalForm, y: &SE2NormalForm) -> f64 {
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(b.abs()).max(1.0);
    match (x, y) {
        (SE2NormalForm::Generic { alpha: a1, beta: b1 }, SE2NormalForm::Generic { alpha: a2, beta: b2 }) => {
            rel(*a1, *a2).max(rel(*b1, *b2))
        }
        (SE2NormalForm::Elliptic { alpha: a1 }, SE2NormalForm::Elliptic { alpha: a2 }) => rel(*a1, *a2),
        _ => f64::INFINITY,
    }
}

fn worked_forms(tol: f64) -> Result<Outcome> {
    let a = se2::normalize_sublaplacian(&generators(&[(1.0, 0.0, 0.0), (0.0, 0.0, 1.0)])?)?;
    let b = se2::normalize_sublaplacian(&generators(&[(1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (0.0, 0.0, 1.0)])?)?;
    let d = form_distance(&a, &SE2NormalForm::Generic { alpha: 1.0, beta: 0.0 })
        .max(form_distance(&b, &SE2NormalForm::Elliptic { alpha: 1.0 }));
    Ok(Outcome::within(d, tol))
}

fn recombination(tol: f64) -> Result<Outcome> {
    let mut rng = StdRng::seed_from_u64(0x5e2);
    let mut worst: f64 = 0.0;
    let mut trials = 0;
    while trials < 200 {
        let n = rng.gen_range(2..6);
        let rows: Vec<(f64, f64, f64)> = (0..n)
            .map(|_| (rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0)))
            .collect();
        let base = match se2::normalize_sublaplacian(&generators(&rows)?) {
            // keep well-conditioned forms: β = b/(c-b) amplifies rounding
            Ok(f @ SE2NormalForm::Generic { beta, .. }) if beta < 100.0 => f,
            _ => continue,
        };
        let o = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0)).qr().q();
        let mixed: Vec<(f64, f64, f64)> = (0..n)
            .map(|i| {
                (0..n).fold((0.0, 0.0, 0.0), |acc, j| {
                    let w = o[(i, j)];
                    (acc.0 + w * rows[j].0, acc.1 + w * rows[j].1, acc.2 + w * rows[j].2)
                })
            })
            .collect();
        let mut perm = mixed.clone();
        perm.rotate_left(rng.gen_range(0..n));
        for other in [mixed, perm] {
            let f = se2::normalize_sublaplacian(&generators(&other)?)?;
            worst = worst.max(form_distance(&base, &f));
        }
        trials += 1;
    }
    Ok(Outcome::within(worst, tol).note(format!("{trials} random generator sets")))
}

fn obstructions(tol: f64) -> Result<Outcome> {
    let horizontal = [
        vec![(0.0, 1.0, 0.0), (0.0, 0.0, 1.0)],
        vec![(0.0, 2.0, -1.0)],
    ];
    let degenerate = [
        vec![(1.0, 0.0, 0.0)],
        vec![(1.0, 1.0, 0.0)],
        vec![(1.0, 0.5, -1.0), (-2.0, -1.0, 2.0)],
    ];
    let mut bad = 0;
    for rows in &horizontal {
        if !matches!(se2::normalize_sublaplacian(&generators(rows)?), Err(Error::AllHorizontalA)) {
            bad += 1;
        }
    }
    for rows in &degenerate {
        if !matches!(se2::normalize_sublaplacian(&generators(rows)?), Err(Error::DegenerateForm)) {
            bad += 1;
        }
    }
    Ok(Outcome::within(bad as f64, tol))
}

fn bi_plancherel(tol: f64) -> Result<Outcome> {
    let cases: Vec<(f64, f64)> = [0.5, 1.0, 2.0]
        .into_iter()
        .flat_map(|t| [0.0, 0.2, 0.7, 2.0].into_iter().map(move |b| (t, b)))
        .collect();
    let errs: Vec<f64> = cases
        .par_iter()
        .map(|&(t, beta)| Ok(se2::bi_plancherel_check(&Multiplier::heat(t)?, beta)?.rel_err()))
        .collect::<Result<_>>()?;
    Ok(Outcome::within(errs.into_iter().fold(0.0, f64::max), tol))
}

const SE2_BETA: f64 = 0.2;

fn se2_heat_kernel() -> Result<crate::KernelGrid> {
    se2::synthesize_kernel(
        &Multiplier::heat(1.0)?,
        SE2_BETA,
        &Se2Grid::default(),
        &SynthesisOptions::default(),
    )
}

fn se2_plancherel(tol: f64) -> Result<Outcome> {
    let f = Multiplier::heat(1.0)?;
    let k = se2_heat_kernel()?;
    let (_, target) = se2::kernel_targets(&f, SE2_BETA)?;
    Ok(Outcome::within((k.norm_sq() - target).abs() / target, tol)
        .note(format!("c0 = {}", se2::INVERSION_CONSTANT)))
}

fn c0_stability(tol: f64) -> Result<Outcome> {
    let grid = Se2Grid::default();
    let c: Vec<f64> = [0.5, 2.0]
        .par_iter()
        .map(|&t| se2::calibrate_inversion_constant(&Multiplier::heat(t)?, SE2_BETA, &grid))
        .collect::<Result<_>>()?;
    Ok(Outcome::within((c[0] - c[1]).abs(), tol).note(format!("c0(0.5) = {:.12}, c0(2) = {:.12}", c[0], c[1])))
}

fn se2_round_trip(tol: f64) -> Result<Outcome> {
    let f = Multiplier::heat(1.0)?;
    let k = se2_heat_kernel()?;
    let ground = SpectralBranch::new(Branch::ground(), SE2_BETA)?;
    let mut worst: f64 = 0.0;
    for row in se2::multiplier_reconstruct(&k, &[0.5, 1.0, 2.0], SE2_BETA)? {
        worst = worst.max((row.f_hat - f.eval(ground.psi(row.r * row.r)?)).abs());
    }
    Ok(Outcome::within(worst, tol))
}

fn se2_evenness(tol: f64) -> Result<Outcome> {
    let k = se2_heat_kernel()?;
    let mut worst: f64 = 0.0;
    for r in [0.5, 1.0, 2.0] {
        let d: Complex64 = se2::reconstruct_g(&k, r)? - se2::reconstruct_g(&k, -r)?;
        worst = worst.max(d.norm());
    }
    Ok(Outcome::within(worst, tol))
}

fn rt_plancherel(tol: f64) -> Result<Outcome> {
    let spec = AbelianSpec::real_line_times_circle();
    let f = Multiplier::heat(1.0)?;
    let k = abelian::kernel_synthesize(&f, &spec, &AbelianGrid::uniform(&spec, 241, 0.1, 32))?;
    let target = abelian::sigma_integral(&Squared(&f), &spec)?;
    Ok(Outcome::within((k.norm_sq() - target).abs() / target, tol))
}

fn chi_normalization(tol: f64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for i in 1..=4000 {
        let lambda = 0.0125 * i as f64 + 1e-7;
        worst = worst.max((abelian::chi_rt(lambda, 0.0, 0.0)? - 1.0).abs());
    }
    Ok(Outcome::within(worst, tol))
}

fn y_samples() -> impl Iterator<Item = f64> {
    (0..64).map(|i| 2.0 * PI * i as f64 / 64.0)
}

fn chi_right_limit(tol: f64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for h in 1..=3u32 {
        for y in y_samples() {
            let got = abelian::chi_rt_right(h, 0.5, y)?;
            worst = worst.max((got - 2.0 * (h as f64 * y).cos()).abs());
        }
    }
    Ok(Outcome::within(worst, tol).note(
        "the ratio's k = +-h terms give cos(hy) in the limit; chi(0,0) = 1 rules out 2cos(hy)",
    ))
}

fn chi_orthogonality(tol: f64) -> Result<Outcome> {
    let mut worst: f64 = 0.0;
    for h in 1..=3u32 {
        for x in [0.0, 0.5, 1.7, 3.1] {
            let mut inner = 0.0;
            for y in y_samples() {
                inner += abelian::chi_rt_left(h, x, y)? * abelian::chi_rt_right(h, x, y)?;
            }
            worst = worst.max((inner * 2.0 * PI / 64.0).abs());
        }
    }
    Ok(Outcome::within(worst, tol))
}

fn homogeneity(tol: f64) -> Result<Outcome> {
    let line = AbelianSpec::euclidean(1)?;
    let plane = AbelianSpec::euclidean(2)?;
    let cases: Vec<(f64, f64, Vec<f64>, &AbelianSpec)> = [0.5, 2.0]
        .into_iter()
        .flat_map(|t| {
            [
                (1.0, t, vec![1.0], &line),
                (2.3, t, vec![-0.7], &line),
                (1.0, t, vec![0.6, 0.8], &plane),
                (3.0, t, vec![0.5, -1.2], &plane),
            ]
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (lambda, t, x, spec) in cases {
        let (l, r) = abelian::chi_homogeneity_check(lambda, t, &x, spec)?;
        worst = worst.max((l - r).abs());
    }
    Ok(Outcome::within(worst, tol))
}
