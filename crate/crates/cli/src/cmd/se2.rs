use std::path::PathBuf;

use clap::{ArgGroup, Subcommand};
use num_complex::Complex64;
use subspec::mathieu::Branch;
use subspec::multiplier::{Multiplier, Rescaled};
use subspec::se2::{self, SE2Generators, SE2NormalForm, Se2Grid, SpectralBranch, SynthesisOptions};
use subspec::{KernelGrid, SpectralMultiplier};

use crate::parse::{self, Values};
use crate::table::{Format, Table};
use crate::{Ctx, Failure};

#[derive(Debug, Subcommand)]
pub enum Se2Cmd {
    /// Normal form of -sum X_j^2 for generators read from a CSV of rows a,b,c.
    NormalForm {
        #[arg(long)]
        gens: PathBuf,
    },
    /// Plancherel density of -(T^2 + Y^2 + beta(X^2 + Y^2)).
    #[command(group(ArgGroup::new("at").required(true).args(["lambda", "lambda_grid"])))]
    Density {
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long)]
        lambda: Option<f64>,
        /// `a:b:n`.
        #[arg(long, value_parser = parse::range)]
        lambda_grid: Option<Values>,
        /// One row per contributing branch instead of the total.
        #[arg(long)]
        terms: bool,
    },
    /// Synthesize the kernel of F(L) on an (x, y, theta) grid and write it to --output.
    Kernel {
        /// gaussian:t, bump:a:b, window:c:w or table:PATH.
        #[arg(long, default_value = "gaussian:1")]
        multiplier: String,
        #[arg(long, conflicts_with = "gens")]
        beta: Option<f64>,
        /// Generators of L; the kernel is computed in normal-form coordinates.
        #[arg(long)]
        gens: Option<PathBuf>,
        /// `N:h:Ntheta`.
        #[arg(long, value_parser = parse::se2_grid, default_value = "128:0.2:64")]
        grid: Se2Grid,
    },
    /// Kernel value at one point by radial quadrature.
    KernelAt {
        #[arg(long, default_value = "gaussian:1")]
        multiplier: String,
        #[arg(long, default_value_t = 0.0)]
        beta: f64,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, allow_negative_numbers = true)]
        y: f64,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        theta: f64,
    },
    /// Recover F on the ground branch from a kernel file.
    Reconstruct {
        #[arg(long)]
        kernel: PathBuf,
        /// Comma-separated radii.
        #[arg(long, value_parser = parse::list, allow_negative_numbers = true)]
        r_list: Values,
        /// Defaults to the value recorded with the kernel.
        #[arg(long)]
        beta: Option<f64>,
    },
}

fn multiplier(spec: &str) -> Result<Multiplier, Failure> {
    parse::multiplier(spec).map_err(Failure::Usage)
}

pub fn run(cmd: Se2Cmd, ctx: &Ctx) -> Result<(), Failure> {
    match cmd {
        Se2Cmd::NormalForm { gens } => normal_form(&gens, ctx),
        Se2Cmd::Density {
            beta,
            lambda,
            lambda_grid,
            terms,
        } => {
            let lambdas = lambda_grid.map_or_else(|| vec![lambda.unwrap_or_default()], |v| v.0);
            density(beta, &lambdas, terms, ctx)
        }
        Se2Cmd::Kernel {
            multiplier: spec,
            beta,
            gens,
            grid,
        } => kernel(&spec, beta, gens, &grid, ctx),
        Se2Cmd::KernelAt {
            multiplier: spec,
            beta,
            x,
            y,
            theta,
        } => {
            let f = multiplier(&spec)?;
            let v = se2::kernel_at(&f, beta, Complex64::new(x, y), theta)?;
            let mut t = Table::new(&["x", "y", "theta", "re", "im"]);
            t.push(vec![x.into(), y.into(), theta.into(), v.re.into(), v.im.into()]);
            t.emit(ctx.format, ctx.output.as_deref())?;
            Ok(())
        }
        Se2Cmd::Reconstruct { kernel, r_list, beta } => reconstruct(&kernel, &r_list.0, beta, ctx),
    }
}

fn normal_form(path: &PathBuf, ctx: &Ctx) -> Result<(), Failure> {
    let gens = SE2Generators::from_csv(path)?;
    let form = se2::normalize_sublaplacian(&gens)?;
    let text = match ctx.format {
        Format::Json => serde_json::to_string_pretty(&form).expect("serializable") + "\n",
        Format::Csv => match form {
            SE2NormalForm::Generic { alpha, beta } => format!("Generic alpha={alpha} beta={beta}\n"),
            SE2NormalForm::Elliptic { alpha } => {
                format!("Elliptic alpha={alpha} (a Laplacian on the abelian group C x T)\n")
            }
        },
    };
    match &ctx.output {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn density(beta: f64, lambdas: &[f64], terms: bool, ctx: &Ctx) -> Result<(), Failure> {
    let table = if terms {
        let mut t = Table::new(&["lambda", "class", "k", "q", "value"]);
        for &l in lambdas {
            for term in se2::density_terms(l, beta)? {
                t.push(vec![
                    l.into(),
                    term.branch.class.to_string().into(),
                    term.branch.k.into(),
                    term.q.into(),
                    term.value.into(),
                ]);
            }
        }
        t
    } else {
        let mut t = Table::new(&["lambda", "density", "branches"]);
        for &l in lambdas {
            let terms = se2::density_terms(l, beta)?;
            let total: f64 = terms.iter().map(|t| t.value).sum();
            t.push(vec![l.into(), total.into(), terms.len().into()]);
        }
        t
    };
    table.emit(ctx.format, ctx.output.as_deref())?;
    Ok(())
}

fn kernel(spec: &str, beta: Option<f64>, gens: Option<PathBuf>, grid: &Se2Grid, ctx: &Ctx) -> Result<(), Failure> {
    let out = ctx
        .output
        .as_deref()
        .ok_or_else(|| Failure::Usage("se2 kernel needs --output FILE for the kernel grid".into()))?;
    let f = multiplier(spec)?;
    let form = match gens {
        Some(path) => se2::normalize_sublaplacian(&SE2Generators::from_csv(path)?)?,
        None => SE2NormalForm::Generic {
            alpha: 1.0,
            beta: beta.unwrap_or(0.0),
        },
    };
    let (alpha, beta) = match form {
        SE2NormalForm::Generic { alpha, beta } => (alpha, beta),
        SE2NormalForm::Elliptic { .. } => {
            return Err(Failure::Domain(
                "the generators give the elliptic normal form, a Laplacian on C x T; use `subspec abelian kernel --n 2 --m 1`"
                    .into(),
            ))
        }
    };
    let mut k = se2::synthesize_for_form(&f, &form, grid, &SynthesisOptions::default())?;
    let g = Rescaled { f: &f, alpha };
    let (at_e, norm) = se2::kernel_targets(&g, beta)?;
    if let Some(meta) = k.metadata.as_object_mut() {
        meta.insert("multiplier".into(), spec.into());
        meta.insert("alpha".into(), alpha.into());
    }
    k.save(out)?;
    let e = k.get(&[grid.n / 2, grid.n / 2, 0]);
    let mut t = Table::new(&[
        "k_identity",
        "int_f_dsigma",
        "norm_sq",
        "int_f2_dsigma",
        "plancherel_rel_err",
        "max_imag",
        "boundary_max",
    ]);
    t.push(vec![
        e.re.into(),
        at_e.into(),
        k.norm_sq().into(),
        norm.into(),
        ((k.norm_sq() - norm).abs() / norm).into(),
        k.max_imag().into(),
        k.boundary_max().into(),
    ]);
    t.emit(ctx.format, None)?;
    Ok(())
}

fn reconstruct(path: &PathBuf, r_list: &[f64], beta: Option<f64>, ctx: &Ctx) -> Result<(), Failure> {
    let k = KernelGrid::load(path)?;
    let beta = beta
        .or_else(|| k.metadata.get("beta").and_then(|v| v.as_f64()))
        .ok_or_else(|| Failure::Usage("the kernel file records no beta; pass --beta".into()))?;
    let alpha = k.metadata.get("alpha").and_then(|v| v.as_f64()).unwrap_or(1.0);
    let exact = match k.metadata.get("multiplier").and_then(|v| v.as_str()) {
        Some(s) => Some(multiplier(s)?),
        None => None,
    };
    let ground = SpectralBranch::new(Branch::ground(), beta)?;
    let rows = se2::multiplier_reconstruct(&k, r_list, beta)?;
    let table = match exact {
        Some(f) => {
            let g = Rescaled { f, alpha };
            let mut t = Table::new(&["r", "lambda", "f_hat", "imag", "f_exact", "abs_err"]);
            for row in rows {
                let want = g.eval(ground.psi(row.r * row.r)?);
                t.push(vec![
                    row.r.into(),
                    row.lambda.into(),
                    row.f_hat.into(),
                    row.imag.into(),
                    want.into(),
                    (row.f_hat - want).abs().into(),
                ]);
            }
            t
        }
        None => {
            let mut t = Table::new(&["r", "lambda", "f_hat", "imag"]);
            for row in rows {
                t.push(vec![row.r.into(), row.lambda.into(), row.f_hat.into(), row.imag.into()]);
            }
            t
        }
    };
    table.emit(ctx.format, ctx.output.as_deref())?;
    Ok(())
}
