use std::path::PathBuf;

use clap::Args;
use subspec::verify::{self, Suite};

use crate::{Ctx, Failure};

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// all, mathieu, se2 or abelian.
    #[arg(long, default_value = "all")]
    suite: Suite,
    /// Also write the full report as JSON.
    #[arg(long)]
    report: Option<PathBuf>,
}

pub fn run(args: VerifyArgs, ctx: &Ctx) -> Result<(), Failure> {
    let report = verify::run_suite(args.suite);
    let mut text = String::new();
    for c in &report.checks {
        text.push_str(&format!("{c}\n"));
    }
    let failed = report.checks.iter().filter(|c| !c.passed).count();
    text.push_str(&format!(
        "{} checks, {} failed, {:.1} s\n",
        report.checks.len(),
        failed,
        report.seconds
    ));
    match &ctx.output {
        Some(p) => std::fs::write(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &args.report {
        std::fs::write(p, serde_json::to_string_pretty(&report).expect("serializable"))?;
    }
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
