//! k-means clustering with an exact, tangent-based choice of the number
//! of clusters.
//!
//! The SSE-versus-k curve is treated as a polyline. Every interior corner
//! gets the tangent of its upward-facing angle, corners where the curve
//! steepens are discarded, and the elbow is the remaining corner with the
//! smallest tangent. See [`elbow`] for the formula and [`pipeline`] for the
//! full run.

pub mod csv_input;
pub mod dataset;
pub mod elbow;
pub mod error;
pub mod kmeans;
pub mod pipeline;
pub mod plot;
pub mod report;
pub mod sample;

pub use csv_input::{load_csv, parse_csv, CsvOptions};
pub use dataset::Dataset;
pub use elbow::{
    is_valid_corner, normalize_curve, select_elbow, slope, tangent, tangent_series, ElbowReport,
    SseCurve, TangentSeries, Warning,
};
pub use error::{Error, Result};
pub use kmeans::{
    exhaustive_optimal_sse, kmeanspp_init, lloyd_fit, squared_distance, sse, Clustering, RunConfig,
};
pub use pipeline::{build_sse_curve, exit_code, run_pipeline, PipelineConfig, PipelineOutcome};
pub use plot::{emit_sse_plot, render_sse_plot, PlotMode};
pub use report::{emit_report, read_report, ReportDocument};
