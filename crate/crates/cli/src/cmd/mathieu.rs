use clap::Subcommand;
use subspec::mathieu::{self, Branch, ParityClass, TruncationConfig};

use crate::parse;
use crate::table::Table;
use crate::{Ctx, Failure};

#[derive(Debug, Subcommand)]
pub enum MathieuCmd {
    /// Eigenvalues k = 0..=kmax of one parity class and their q-derivatives.
    Eig {
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        /// Parity class `ij`: 00, 10, 01 or 11.
        #[arg(long, value_parser = parse::class)]
        class: ParityClass,
        #[arg(long, default_value_t = 0)]
        kmax: usize,
    },
    /// Large-q profile lambda/sqrt(q) and q dlambda/dq / lambda of one branch.
    Scan {
        #[arg(long, value_parser = parse::class)]
        class: ParityClass,
        #[arg(long, default_value_t = 0)]
        k: usize,
        /// `a:b:n`, q-values must be positive.
        #[arg(long, value_parser = parse::range)]
        q_grid: parse::Values,
    },
    /// Zeros of the eigenfunction in [0, 2pi).
    Zeros {
        #[arg(long, allow_negative_numbers = true)]
        q: f64,
        #[arg(long, value_parser = parse::class)]
        class: ParityClass,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
}

pub fn run(cmd: MathieuCmd, ctx: &Ctx) -> Result<(), Failure> {
    let cfg = TruncationConfig::default();
    let table = match cmd {
        MathieuCmd::Eig { q, class, kmax } => {
            let mut t = Table::new(&["class", "k", "q", "lambda", "dlambda_dq", "basis_size"]);
            for (k, pair) in mathieu::solve_branch(q, class, kmax, &cfg)?.iter().enumerate() {
                t.push(vec![
                    class.to_string().into(),
                    k.into(),
                    q.into(),
                    pair.lambda.into(),
                    pair.dlambda_dq().into(),
                    pair.n_used.into(),
                ]);
            }
            t
        }
        MathieuCmd::Scan { class, k, q_grid } => {
            let branch = Branch::new(class, k);
            let mut t = Table::new(&["q", "lambda", "scaled", "log_slope", "harmonic_limit"]);
            for row in mathieu::asymptotic_profile(branch, &q_grid.0, &cfg)? {
                t.push(vec![
                    row.q.into(),
                    row.lambda.into(),
                    row.scaled.into(),
                    row.log_slope.into(),
                    branch.harmonic_limit().into(),
                ]);
            }
            t
        }
        MathieuCmd::Zeros { q, class, k } => {
            let pair = mathieu::solve_eigenpair(q, Branch::new(class, k), &cfg)?;
            let mut t = Table::new(&["phi"]);
            for z in pair.zeros()? {
                t.push(vec![z.into()]);
            }
            t
        }
    };
    table.emit(ctx.format, ctx.output.as_deref())?;
    Ok(())
}
