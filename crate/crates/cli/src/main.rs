use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tadic_cli::config::parse_config;
use tadic_cli::run::{run, RunError, EXIT_FAILURE};
use tadic_cli::RunConfig;

/// T-adic exponential sums, L- and C-functions, Newton and Hodge polygons.
///
/// Settings come from `--config` (key = value lines) and are overridden by
/// flags. Output is JSON on stdout or in `--out`.
#[derive(Parser, Debug)]
#[command(name = "tadic", version)]
struct Cli {
    /// hodge, sum, lfun, cfun, np, dwork, verify, congruence, survey or faces
    command: Option<String>,
    /// Laurent polynomial, e.g. "x1 + x2 + x1^-1*x2^-1"
    poly: Option<String>,
    /// Read the polynomial from a file instead
    #[arg(long)]
    poly_file: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    a: Option<String>,
    /// Levels of the additive character, e.g. "1,2"
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    prec_p: Option<String>,
    #[arg(long)]
    prec_t: Option<String>,
    #[arg(long)]
    deg_s: Option<String>,
    /// Basis degree bound, e.g. "5/2"
    #[arg(long)]
    basis: Option<String>,
    #[arg(long)]
    hodge_depth: Option<String>,
    #[arg(short, long)]
    k: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    r_max: Option<String>,
    /// trace, char, ordinary or facial
    #[arg(long)]
    what: Option<String>,
    #[arg(long)]
    override_nondegenerate: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Cli {
    fn pairs(self) -> Result<Vec<(String, String)>, RunError> {
        let mut pairs = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?;
                parse_config(&text)?
            }
            None => Vec::new(),
        };
        let poly = match (&self.poly_file, self.poly) {
            (Some(path), _) => Some(
                fs::read_to_string(path)
                    .map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?
                    .trim()
                    .to_string(),
            ),
            (None, p) => p,
        };
        let flags = [
            ("command", self.command),
            ("poly", poly),
            ("p", self.p),
            ("a", self.a),
            ("m", self.m),
            ("prec_p", self.prec_p),
            ("prec_t", self.prec_t),
            ("deg_s", self.deg_s),
            ("basis", self.basis),
            ("hodge_depth", self.hodge_depth),
            ("k", self.k),
            ("seed", self.seed),
            ("samples", self.samples),
            ("r_max", self.r_max),
            ("what", self.what),
            ("override_nondegenerate", self.override_nondegenerate.then(|| "true".to_string())),
            ("out", self.out.map(|p| p.display().to_string())),
        ];
        pairs.extend(flags.into_iter().filter_map(|(k, v)| v.map(|v| (k.to_string(), v))));
        Ok(pairs)
    }
}

fn main_inner(cli: Cli) -> Result<i32, RunError> {
    let cfg = RunConfig::from_pairs(&cli.pairs()?)?;
    let outcome = run(&cfg)?;
    let text = outcome.render();
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| RunError::Io(format!("{}: {e}", path.display())))?,
        None => print!("{text}"),
    }
    Ok(outcome.exit)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match main_inner(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("tadic: {e}");
            e.exit_code()
        }
    };
    ExitCode::from(u8::try_from(code).unwrap_or(EXIT_FAILURE as u8))
}
