use std::path::PathBuf;

use clap::{ArgGroup, Args, Subcommand};
use subspec::abelian::{self, AbelianGrid};
use subspec::{AbelianSpec, KernelGrid};

use crate::parse::{self, Matrix, Values};
use crate::table::Table;
use crate::{Ctx, Failure};

/// The group `R^n x T^m` and the `m x m` matrix `A` acting on the torus
/// directions.
#[derive(Debug, Clone, Args)]
pub struct SpecArgs {
    #[arg(long, default_value_t = 1)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Rows of A separated by `;`, entries by `,`. Identity when omitted.
    #[arg(long, value_parser = parse::matrix, allow_negative_numbers = true)]
    a: Option<Matrix>,
}

impl SpecArgs {
    fn spec(&self) -> Result<AbelianSpec, Failure> {
        let m = self.m;
        let a = match &self.a {
            Some(a) => a.0.clone(),
            None => (0..m).map(|i| (0..m).map(|j| f64::from(u8::from(i == j))).collect()).collect(),
        };
        Ok(AbelianSpec::new(self.n, self.m, a)?)
    }
}

#[derive(Debug, Subcommand)]
pub enum AbelianCmd {
    /// Plancherel density at lambda.
    #[command(group(ArgGroup::new("at").required(true).args(["lambda", "lambda_grid"])))]
    Density {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long, value_parser = parse::range)]
        lambda_grid: Option<Values>,
    },
    /// Eigenvalues and multiplicities on a torus (n = 0).
    Spectrum {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        bound: f64,
    },
    /// Synthesize the kernel of F(L) and write it to --output.
    Kernel {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value = "gaussian:1")]
        multiplier: String,
        /// `len:h:ylen`.
        #[arg(long, value_parser = parse::abelian_grid, default_value = "64:0.25:32")]
        grid: (usize, f64, usize),
    },
    /// Recover F from a kernel file along one real axis.
    Invert {
        #[arg(long)]
        kernel: PathBuf,
        #[arg(long, value_parser = parse::list)]
        lambda_list: Values,
        #[arg(long, default_value_t = 0)]
        axis: usize,
    },
    /// Spectral projection density chi on R x T.
    #[command(group(ArgGroup::new("mode").required(true).args(["lambda", "h"])))]
    Chi {
        #[arg(long, conflicts_with = "h", requires = "x")]
        lambda: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
        y: f64,
        /// Slices at lambda = h^2 -+ eps over y in [0, 2pi).
        #[arg(long, requires = "eps")]
        h: Option<u32>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long, default_value_t = 16)]
        ny: usize,
    },
    /// One-sided limits of chi at lambda = h^2 over y in [0, 2pi).
    ChiLimits {
        #[arg(long)]
        h: u32,
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        x: f64,
        #[arg(long, default_value_t = 64)]
        ny: usize,
    },
    /// chi(t^2 lambda, x) against chi(lambda, t x) on R^n.
    Homogeneity {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        t: f64,
        /// Comma-separated coordinates of x.
        #[arg(long, value_parser = parse::list, allow_negative_numbers = true)]
        x: Values,
    },
}

fn ys(ny: usize) -> Result<Vec<f64>, Failure> {
    if ny == 0 {
        return Err(Failure::Usage("--ny must be positive".into()));
    }
    Ok((0..ny).map(|j| std::f64::consts::TAU * j as f64 / ny as f64).collect())
}

pub fn run(cmd: AbelianCmd, ctx: &Ctx) -> Result<(), Failure> {
    let table = match cmd {
        AbelianCmd::Density {
            spec,
            lambda,
            lambda_grid,
        } => {
            let spec = spec.spec()?;
            let lambdas = lambda_grid.map_or_else(|| vec![lambda.unwrap_or_default()], |v| v.0);
            let mut t = Table::new(&["lambda", "density"]);
            for l in lambdas {
                t.push(vec![l.into(), abelian::sigma_density(l, &spec)?.into()]);
            }
            t
        }
        AbelianCmd::Spectrum { spec, bound } => {
            let spec = spec.spec()?;
            if spec.n != 0 {
                return Err(Failure::Domain(
                    "the spectrum is continuous for n > 0; use `abelian density`".into(),
                ));
            }
            let mut t = Table::new(&["eigenvalue", "multiplicity"]);
            for (e, mult) in abelian::discrete_spectrum(&spec, bound) {
                t.push(vec![e.into(), mult.into()]);
            }
            t
        }
        AbelianCmd::Kernel {
            spec,
            multiplier,
            grid: (len, h, y_len),
        } => {
            let out = ctx
                .output
                .as_deref()
                .ok_or_else(|| Failure::Usage("abelian kernel needs --output FILE for the kernel grid".into()))?;
            let spec = spec.spec()?;
            let f = parse::multiplier(&multiplier).map_err(Failure::Usage)?;
            let grid = AbelianGrid::uniform(&spec, len, h, y_len);
            let mut k = abelian::kernel_synthesize(&f, &spec, &grid)?;
            if let Some(meta) = k.metadata.as_object_mut() {
                meta.insert("multiplier".into(), multiplier.into());
            }
            k.save(out)?;
            let at_e = abelian::kernel_at_identity(&f, &spec)?;
            let centre: Vec<usize> = (0..spec.n).map(|_| len / 2).chain((0..spec.m).map(|_| 0)).collect();
            let mut t = Table::new(&["k_identity", "int_f_dsigma", "norm_sq", "max_imag", "boundary_max"]);
            t.push(vec![
                k.get(&centre).re.into(),
                at_e.into(),
                k.norm_sq().into(),
                k.max_imag().into(),
                k.boundary_max().into(),
            ]);
            t.emit(ctx.format, None)?;
            return Ok(());
        }
        AbelianCmd::Invert {
            kernel,
            lambda_list,
            axis,
        } => {
            let k = KernelGrid::load(&kernel)?;
            let spec: AbelianSpec = k
                .metadata
                .get("spec")
                .cloned()
                .ok_or_else(|| Failure::Usage("the kernel file records no group".into()))
                .and_then(|v| serde_json::from_value(v).map_err(|e| Failure::Usage(e.to_string())))?;
            let exact = match k.metadata.get("multiplier").and_then(|v| v.as_str()) {
                Some(s) => Some(parse::multiplier(s).map_err(Failure::Usage)?),
                None => None,
            };
            let rows = abelian::multiplier_invert(&k, &spec, &lambda_list.0, axis)?;
            match exact {
                Some(f) => {
                    use subspec::SpectralMultiplier;
                    let mut t = Table::new(&["lambda", "f_hat", "f_exact", "abs_err"]);
                    for (l, v) in rows {
                        let want = f.eval(l);
                        t.push(vec![l.into(), v.into(), want.into(), (v - want).abs().into()]);
                    }
                    t
                }
                None => {
                    let mut t = Table::new(&["lambda", "f_hat"]);
                    for (l, v) in rows {
                        t.push(vec![l.into(), v.into()]);
                    }
                    t
                }
            }
        }
        AbelianCmd::Chi {
            lambda,
            x,
            y,
            h,
            eps,
            ny,
        } => match (lambda, h) {
            (Some(l), _) => {
                let x = x.unwrap_or_default();
                let mut t = Table::new(&["lambda", "x", "y", "value"]);
                t.push(vec![l.into(), x.into(), y.into(), abelian::chi_rt(l, x, y)?.into()]);
                t
            }
            (None, Some(h)) => {
                let eps = eps.unwrap_or_default();
                if !(eps > 0.0) {
                    return Err(Failure::Usage("--eps must be positive".into()));
                }
                let x = x.unwrap_or_default();
                let h2 = f64::from(h * h);
                let mut t = Table::new(&["y", "below", "above"]);
                for y in ys(ny)? {
                    t.push(vec![
                        y.into(),
                        abelian::chi_rt(h2 - eps, x, y)?.into(),
                        abelian::chi_rt(h2 + eps, x, y)?.into(),
                    ]);
                }
                t
            }
            (None, None) => unreachable!("clap requires --lambda or --h"),
        },
        AbelianCmd::ChiLimits { h, x, ny } => {
            let mut t = Table::new(&["h", "x", "y", "left", "right"]);
            for y in ys(ny)? {
                t.push(vec![
                    h.into(),
                    x.into(),
                    y.into(),
                    abelian::chi_rt_left(h, x, y)?.into(),
                    abelian::chi_rt_right(h, x, y)?.into(),
                ]);
            }
            t
        }
        AbelianCmd::Homogeneity { n, lambda, t: dil, x } => {
            let spec = AbelianSpec::euclidean(n)?;
            let (lhs, rhs) = abelian::chi_homogeneity_check(lambda, dil, &x.0, &spec)?;
            let mut t = Table::new(&["lambda", "t", "chi_dilated_lambda", "chi_dilated_x", "abs_diff"]);
            t.push(vec![lambda.into(), dil.into(), lhs.into(), rhs.into(), (lhs - rhs).abs().into()]);
            t
        }
    };
    table.emit(ctx.format, ctx.output.as_deref())?;
    Ok(())
}
