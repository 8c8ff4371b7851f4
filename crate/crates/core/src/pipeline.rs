//! End-to-end run: load points, sweep k, pick the elbow, cluster at the
//! elbow, write the report and both plots.

use std::path::{Path, PathBuf};

use rayon::prelude::*;

use crate::csv_input::{load_csv_with_digest, CsvOptions};
use crate::dataset::Dataset;
use crate::elbow::{normalize_curve, select_elbow, ElbowReport, SseCurve};
use crate::error::{Error, Result};
use crate::kmeans::{exhaustive_optimal_sse, lloyd_fit, Clustering, RunConfig, ORACLE_MAX_POINTS};
use crate::plot::{emit_sse_plot, PlotMode};
use crate::report::{
    emit_report, ConfigEcho, CurveSection, DatasetSummary, ReportDocument, Status, SCHEMA_VERSION,
};

/// Upper bound on the default `k_max`.
pub const DEFAULT_K_MAX_CAP: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub csv: CsvOptions,
    /// `None` means `min(n, distinct points, 50)`.
    pub k_max: Option<usize>,
    pub run: RunConfig,
    pub normalize: bool,
    pub monotone_repair: bool,
    /// Use the exhaustive optimum for every SSE(k); needs at most 12 points.
    pub oracle: bool,
    pub report_path: Option<PathBuf>,
    pub plot_dir: Option<PathBuf>,
    /// Sweep k on the rayon pool instead of in a plain loop.
    pub parallel: bool,
}

impl PipelineConfig {
    pub fn new(input: impl Into<PathBuf>) -> Self {
        Self {
            input: input.into(),
            csv: CsvOptions::default(),
            k_max: None,
            run: RunConfig::default(),
            normalize: false,
            monotone_repair: false,
            oracle: false,
            report_path: None,
            plot_dir: None,
            parallel: true,
        }
    }
}

/// Everything a successful run produced.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub elbow: ElbowReport,
    pub raw_curve: SseCurve,
    pub clustering: Clustering,
    pub document: ReportDocument,
}

/// Process exit status for an error: 2 usage/config, 3 data, 4 no valid elbow, 1 I/O.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) | Error::Config(_) | Error::Capacity(_) => 2,
        Error::Data(_) | Error::Degenerate(_) | Error::Singularity { .. } => 3,
        Error::NoValidElbow { .. } => 4,
        Error::Io { .. } => 1,
    }
}

/// Resolves and checks `k_max` for this dataset.
pub fn resolve_k_max(dataset: &Dataset, config: &PipelineConfig) -> Result<usize> {
    let distinct = dataset.distinct_count();
    if distinct == 1 {
        return Err(Error::Degenerate(format!(
            "all {} points are identical, so SSE(1) = 0 and there is no curve to analyse",
            dataset.len()
        )));
    }
    let k_max = match config.k_max {
        Some(k) => {
            if k > distinct {
                return Err(Error::Config(format!(
                    "k_max = {k} exceeds the {distinct} distinct points"
                )));
            }
            k
        }
        None => dataset.len().min(distinct).min(DEFAULT_K_MAX_CAP),
    };
    if k_max < 3 {
        return Err(Error::Config(format!(
            "k_max = {k_max}; at least 3 cluster counts are needed to form a corner"
        )));
    }
    if config.oracle && dataset.len() > ORACLE_MAX_POINTS {
        return Err(Error::Capacity(format!(
            "oracle mode supports at most {ORACLE_MAX_POINTS} points, dataset has {}",
            dataset.len()
        )));
    }
    Ok(k_max)
}

/// `SSE(k)` for `k = 1..=k_max`, from Lloyd or from the exhaustive oracle.
pub fn build_sse_curve(dataset: &Dataset, config: &PipelineConfig) -> Result<SseCurve> {
    config.run.validate()?;
    let k_max = resolve_k_max(dataset, config)?;
    let one = |k: usize| -> Result<f64> {
        if config.oracle {
            exhaustive_optimal_sse(dataset, k)
        } else {
            lloyd_fit(dataset, k, &config.run).map(|c| c.sse)
        }
    };
    let values = if config.parallel {
        (1..=k_max).into_par_iter().map(one).collect::<Result<Vec<_>>>()?
    } else {
        (1..=k_max).map(one).collect::<Result<Vec<_>>>()?
    };
    SseCurve::new(values)
}

/// Applies the optional repair and normalisation, in that order.
pub fn prepare_curve(raw: &SseCurve, config: &PipelineConfig) -> Result<SseCurve> {
    let mut curve = raw.clone();
    if config.monotone_repair {
        curve = curve.monotone_repaired();
    }
    if config.normalize {
        curve = normalize_curve(&curve)?;
    }
    Ok(curve)
}

/// Runs the whole pipeline and writes the requested artifacts.
///
/// When no valid corner exists the report is still written (with status
/// `no_valid_elbow`) before [`Error::NoValidElbow`] is returned.
pub fn run_pipeline(config: &PipelineConfig) -> Result<PipelineOutcome> {
    let (dataset, digest) = load_csv_with_digest(&config.input, &config.csv)?;
    let raw = build_sse_curve(&dataset, config)?;
    let analyzed = prepare_curve(&raw, config)?;

    let summary = DatasetSummary {
        n: dataset.len(),
        p: dataset.dim(),
        distinct: dataset.distinct_count(),
        source: config.input.clone(),
        sha256: digest,
    };
    let echo = ConfigEcho {
        k_min: 1,
        k_max: raw.k_max(),
        restarts: config.run.restarts,
        max_iter: config.run.max_iter,
        seed: config.run.seed,
        tol: config.run.tol,
        normalize: config.normalize,
        monotone_repair: config.monotone_repair,
        oracle: config.oracle,
    };
    let curve_section = CurveSection {
        raw: raw.values().to_vec(),
        analyzed: analyzed.values().to_vec(),
        monotone: raw.is_monotone(),
    };

    let elbow = match select_elbow(&analyzed) {
        Ok(r) => r,
        Err(Error::NoValidElbow { series }) => {
            let document = ReportDocument {
                schema: SCHEMA_VERSION,
                status: Status::NoValidElbow,
                dataset: summary,
                config: echo,
                curve: curve_section,
                tangents: series.clone(),
                elbow_k: None,
                elbow_tangent: None,
                warnings: analyzed
                    .first_increase()
                    .map(|k| crate::elbow::Warning::NonMonotone { k })
                    .into_iter()
                    .collect(),
                clustering: None,
            };
            if let Some(path) = &config.report_path {
                write_report(&document, path)?;
            }
            return Err(Error::NoValidElbow { series });
        }
        Err(e) => return Err(e),
    };

    let clustering = lloyd_fit(&dataset, elbow.elbow_k, &config.run)?;

    let document = ReportDocument {
        schema: SCHEMA_VERSION,
        status: Status::Ok,
        dataset: summary,
        config: echo,
        curve: curve_section,
        tangents: elbow.series.clone(),
        elbow_k: Some(elbow.elbow_k),
        elbow_tangent: Some(elbow.elbow_tangent),
        warnings: elbow.warnings.clone(),
        clustering: Some(clustering.clone()),
    };

    if let Some(path) = &config.report_path {
        write_report(&document, path)?;
    }
    if let Some(dir) = &config.plot_dir {
        std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
        for mode in [PlotMode::Raw, PlotMode::EqualAxis] {
            let path = dir.join(format!("{}.svg", mode.file_stem()));
            emit_sse_plot(&analyzed, elbow.elbow_k, mode, path)?;
        }
    }

    Ok(PipelineOutcome {
        elbow,
        raw_curve: raw,
        clustering,
        document,
    })
}

fn write_report(document: &ReportDocument, path: &Path) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    emit_report(document, path)
}
