//! Command-line front end: `hqz <scenario> [--key=value ...] --out PATH --format csv|jsonl`.
//!
//! Settings are layered: built-in defaults, then `--config FILE`, then the
//! `HQZ_SEED` environment variable, then command-line options.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::Parser;

use crate::error::Result;
use crate::scenarios::{run, Outcome, RunConfig, Scenario};

#[derive(Debug, Parser)]
#[command(name = "hqz", version, about = "Numerical checks of Zygmund-type inequalities for harmonic maps")]
pub struct Args {
    /// One of: reproduce-sharpness-3d, reproduce-ratio-limit, reproduce-strip,
    /// verify-t1, verify-t2, verify-t3, fuzz, laplacian-audit, green-audit,
    /// calderon-estimate.
    pub scenario: String,

    /// Plain-text file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Output table path (default `hqz-<scenario>.<format>`).
    #[arg(long, alias = "output-path", alias = "output_path")]
    pub out: Option<String>,

    /// csv or jsonl.
    #[arg(long)]
    pub format: Option<String>,

    #[arg(long = "circle-nodes", alias = "circle_nodes")]
    pub circle_nodes: Option<String>,

    #[arg(long = "radial-nodes", alias = "radial_nodes")]
    pub radial_nodes: Option<String>,

    #[arg(long = "refinement-limit", alias = "refinement_limit")]
    pub refinement_limit: Option<String>,

    #[arg(long = "abs-tol", alias = "abs_tol")]
    pub abs_tol: Option<String>,

    /// Corpus size.
    #[arg(long)]
    pub seeds: Option<String>,

    /// First corpus seed.
    #[arg(long)]
    pub seed: Option<String>,

    /// Restrict to one dimension (or the largest strip index).
    #[arg(long)]
    pub n: Option<String>,

    /// Restrict to one dilatation level.
    #[arg(long)]
    pub k: Option<String>,

    /// Degree of random corpus maps.
    #[arg(long)]
    pub degree: Option<String>,
}

impl Args {
    fn overrides(&self) -> Vec<(&'static str, &str)> {
        [
            ("circle_nodes", &self.circle_nodes),
            ("radial_nodes", &self.radial_nodes),
            ("refinement_limit", &self.refinement_limit),
            ("abs_tol", &self.abs_tol),
            ("seeds", &self.seeds),
            ("seed", &self.seed),
            ("n", &self.n),
            ("k", &self.k),
            ("degree", &self.degree),
            ("output_path", &self.out),
            ("format", &self.format),
        ]
        .into_iter()
        .filter_map(|(key, value)| value.as_deref().map(|v| (key, v)))
        .collect()
    }

    pub fn into_config(self) -> Result<RunConfig> {
        let mut cfg = RunConfig::new(self.scenario.parse::<Scenario>()?);
        if let Some(path) = &self.config {
            cfg.apply_config_file(path)?;
        }
        cfg.apply_env()?;
        for (key, value) in self.overrides() {
            cfg.set(key, value)?;
        }
        Ok(cfg)
    }
}

pub fn execute(args: Args) -> Result<Outcome> {
    run(&args.into_config()?)
}

/// Parse, run, print the summary line; returns the process exit code
/// (0 on PASS, 1 on FAIL, 2 on usage or runtime errors).
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = match Args::try_parse_from(argv) {
        Ok(args) => args,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(args) {
        Ok(outcome) => {
            println!("{}", outcome.line());
            eprintln!("wrote {} rows to {}", outcome.rows, outcome.output.display());
            i32::from(!outcome.pass)
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
