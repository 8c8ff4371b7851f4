use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use exact_elbow::pipeline::{exit_code, run_pipeline, PipelineConfig, PipelineOutcome};
use exact_elbow::{CsvOptions, Error, RunConfig};

/// Choose the number of k-means clusters from the exact corner angles of the SSE curve.
#[derive(Debug, Parser)]
#[command(name = "exact-elbow", version)]
struct Args {
    /// CSV file with one point per row
    #[arg(long, value_name = "PATH")]
    input: PathBuf,

    /// Largest k to evaluate [default: min(n, distinct points, 50)]
    #[arg(long, value_name = "N")]
    k_max: Option<usize>,

    /// k-means++ restarts per k; the lowest SSE is kept
    #[arg(long, value_name = "N", default_value_t = 10)]
    restarts: usize,

    /// Lloyd iteration limit per restart
    #[arg(long, value_name = "N", default_value_t = 300)]
    max_iter: usize,

    /// Base seed for all restarts
    #[arg(long, value_name = "U64", default_value_t = 0)]
    seed: u64,

    /// Also stop when no centroid moves more than this (0 disables)
    #[arg(long, value_name = "X", default_value_t = 0.0)]
    tol: f64,

    /// Divide the curve by SSE(1) before selecting the elbow
    #[arg(long)]
    normalize: bool,

    /// Replace SSE(k) by min(SSE(1..=k)) before selecting the elbow
    #[arg(long)]
    monotone_repair: bool,

    /// Use exhaustive partition search instead of Lloyd (at most 12 points)
    #[arg(long)]
    oracle: bool,

    /// Where to write the JSON report
    #[arg(long, value_name = "PATH", default_value = "elbow-report.json")]
    report: PathBuf,

    /// Directory for sse_raw.svg and sse_equal_axis.svg
    #[arg(long, value_name = "PATH", default_value = "elbow-plots")]
    plot_dir: PathBuf,

    /// Treat the first CSV row as a header
    #[arg(long)]
    header: bool,

    /// CSV field delimiter
    #[arg(long, value_name = "CHAR", default_value_t = ',')]
    delimiter: char,

    /// Evaluate k one at a time instead of in parallel
    #[arg(long)]
    sequential: bool,

    /// Print nothing on success
    #[arg(long)]
    quiet: bool,
}

impl Args {
    fn into_config(self) -> Result<PipelineConfig, Error> {
        if !self.delimiter.is_ascii() {
            return Err(Error::Config(format!(
                "delimiter {:?} must be a single ASCII character",
                self.delimiter
            )));
        }
        Ok(PipelineConfig {
            input: self.input,
            csv: CsvOptions {
                has_header: self.header,
                delimiter: self.delimiter as u8,
            },
            k_max: self.k_max,
            run: RunConfig {
                max_iter: self.max_iter,
                restarts: self.restarts,
                seed: self.seed,
                tol: self.tol,
            },
            normalize: self.normalize,
            monotone_repair: self.monotone_repair,
            oracle: self.oracle,
            report_path: Some(self.report),
            plot_dir: Some(self.plot_dir),
            parallel: !self.sequential,
        })
    }
}

fn print_summary(out: &PipelineOutcome) {
    let curve = out.elbow.curve.values();
    println!("{:>4}  {:>16}  {:>14}  valid", "k", "SSE", "tan(psi)");
    for (i, v) in curve.iter().enumerate() {
        let k = i + 1;
        match (out.elbow.series.tangent_at(k), out.elbow.series.is_valid_at(k)) {
            (Some(t), Some(valid)) => {
                println!("{k:>4}  {v:>16.6}  {t:>14.6}  {}", if valid { "yes" } else { "no" })
            }
            _ => println!("{k:>4}  {v:>16.6}  {:>14}  -", "-"),
        }
    }
    for w in &out.elbow.warnings {
        println!("warning: {w}");
    }
    println!(
        "elbow at k = {} (tan psi = {:.6}); final SSE = {:.6}",
        out.elbow.elbow_k, out.elbow.elbow_tangent, out.clustering.sse
    );
}

fn main() -> ExitCode {
    let args = Args::parse();
    let quiet = args.quiet;
    let report = args.report.clone();
    let result = args.into_config().and_then(|cfg| run_pipeline(&cfg));
    match result {
        Ok(outcome) => {
            if !quiet {
                print_summary(&outcome);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            if let Error::NoValidElbow { series } = &err {
                for (k, t, _) in series.iter() {
                    eprintln!("  k = {k}: tan psi = {t} (faces downwards)");
                }
                eprintln!("diagnostic report written to {}", report.display());
            }
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
