//! Exact elbow selection on an SSE-versus-k curve.
//!
//! Consecutive points `(k, SSE(k))` are joined by segments with slope
//! `m_k = SSE(k+1) - SSE(k)`. At each interior point the upward-facing
//! corner angle `psi_k` has
//!
//! ```text
//! tan(psi_k) = (m_{k-1} - m_k) / (1 + m_{k-1} * m_k)
//!            = (-SSE(k+1) + 2 SSE(k) - SSE(k-1)) / (1 + (SSE(k) - SSE(k-1)) (SSE(k+1) - SSE(k)))
//! ```
//!
//! A corner is a candidate only if the curve flattens through it
//! (`m_k > m_{k-1}`); a corner followed by an equal or bigger drop faces
//! downwards and is skipped. The elbow is the candidate with the smallest
//! tangent, i.e. the angle closest to 90 degrees from above.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `SSE(1..=k_max)`, indexed by cluster count starting at 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct SseCurve {
    values: Vec<f64>,
}

impl SseCurve {
    /// A curve of SSE values: at least three, all finite and non-negative.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(i) = values.iter().position(|v| *v < 0.0) {
            return Err(Error::Data(format!(
                "SSE({}) = {} is negative",
                i + 1,
                values[i]
            )));
        }
        Self::from_values(values)
    }

    /// Like [`SseCurve::new`] but allows negative values, for analysing
    /// shifted or otherwise transformed curves.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.len() < 3 {
            return Err(Error::Config(format!(
                "an SSE curve needs at least 3 values to have a corner, got {}",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::Data(format!("SSE({}) is not finite", i + 1)));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn k_max(&self) -> usize {
        self.values.len()
    }

    /// `SSE(k)` for `1 <= k <= k_max`.
    pub fn value(&self, k: usize) -> Option<f64> {
        k.checked_sub(1).and_then(|i| self.values.get(i).copied())
    }

    /// True iff `SSE(k+1) <= SSE(k)` for every `k`.
    pub fn is_monotone(&self) -> bool {
        self.first_increase().is_none()
    }

    /// Smallest `k` with `SSE(k+1) > SSE(k)`.
    pub fn first_increase(&self) -> Option<usize> {
        self.values.windows(2).position(|w| w[1] > w[0]).map(|i| i + 1)
    }

    /// Replaces every `SSE(k)` by `min(SSE(1..=k))`.
    pub fn monotone_repaired(&self) -> Self {
        let mut run = f64::INFINITY;
        let values = self
            .values
            .iter()
            .map(|&v| {
                run = run.min(v);
                run
            })
            .collect();
        Self { values }
    }

    /// Adds `c` to every value.
    pub fn shifted(&self, c: f64) -> Result<Self> {
        Self::from_values(self.values.iter().map(|v| v + c).collect())
    }
}

impl TryFrom<Vec<f64>> for SseCurve {
    type Error = Error;

    fn try_from(values: Vec<f64>) -> Result<Self> {
        Self::from_values(values)
    }
}

impl From<SseCurve> for Vec<f64> {
    fn from(curve: SseCurve) -> Self {
        curve.values
    }
}

/// `tan(psi_k)` and corner validity for `k = 2..=k_max-1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentSeries {
    pub tangents: Vec<f64>,
    pub valid: Vec<bool>,
}

impl TangentSeries {
    pub fn len(&self) -> usize {
        self.tangents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tangents.is_empty()
    }

    /// `(k, tangent, valid)` triples in increasing `k`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, f64, bool)> + '_ {
        self.tangents
            .iter()
            .zip(&self.valid)
            .enumerate()
            .map(|(i, (&t, &v))| (i + 2, t, v))
    }

    pub fn tangent_at(&self, k: usize) -> Option<f64> {
        k.checked_sub(2).and_then(|i| self.tangents.get(i).copied())
    }

    pub fn is_valid_at(&self, k: usize) -> Option<bool> {
        k.checked_sub(2).and_then(|i| self.valid.get(i).copied())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    /// The curve rises somewhere; `k` is the first count with `SSE(k+1) > SSE(k)`.
    NonMonotone { k: usize },
    /// Several valid corners share the minimum tangent; the smallest `k` was chosen.
    Tie { ks: Vec<usize> },
}

impl std::fmt::Display for Warning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Warning::NonMonotone { k } => {
                write!(f, "SSE curve is not monotone: SSE({}) > SSE({k})", k + 1)
            }
            Warning::Tie { ks } => write!(f, "minimum tangent shared by k = {ks:?}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElbowReport {
    pub elbow_k: usize,
    pub elbow_tangent: f64,
    pub series: TangentSeries,
    pub curve: SseCurve,
    pub warnings: Vec<Warning>,
}

/// `SSE(k+1) - SSE(k)` for `1 <= k <= k_max - 1`.
pub fn slope(curve: &SseCurve, k: usize) -> Result<f64> {
    let k_max = curve.k_max();
    if !(1..k_max).contains(&k) {
        return Err(Error::Usage(format!(
            "slope index k = {k} outside 1..={}",
            k_max - 1
        )));
    }
    Ok(curve.values[k] - curve.values[k - 1])
}

fn check_interior(curve: &SseCurve, k: usize) -> Result<()> {
    let k_max = curve.k_max();
    if !(2..k_max).contains(&k) {
        return Err(Error::Usage(format!(
            "corner index k = {k} outside 2..={}",
            k_max - 1
        )));
    }
    Ok(())
}

/// `tan(psi_k)` at interior point `k`.
pub fn tangent(curve: &SseCurve, k: usize) -> Result<f64> {
    check_interior(curve, k)?;
    let before = slope(curve, k - 1)?;
    let after = slope(curve, k)?;
    let denominator = 1.0 + before * after;
    if denominator == 0.0 {
        return Err(Error::Singularity { k });
    }
    Ok((before - after) / denominator)
}

/// Whether the corner at `k` flattens the curve (`m_k > m_{k-1}`).
pub fn is_valid_corner(curve: &SseCurve, k: usize) -> Result<bool> {
    check_interior(curve, k)?;
    Ok(slope(curve, k)? > slope(curve, k - 1)?)
}

pub fn tangent_series(curve: &SseCurve) -> Result<TangentSeries> {
    let ks = 2..curve.k_max();
    let tangents = ks
        .clone()
        .map(|k| tangent(curve, k))
        .collect::<Result<Vec<_>>>()?;
    let valid = ks
        .map(|k| is_valid_corner(curve, k))
        .collect::<Result<Vec<_>>>()?;
    Ok(TangentSeries { tangents, valid })
}

/// Picks the valid corner with the smallest tangent.
///
/// Non-monotone curves are analysed as given, with a warning. Fails with
/// [`Error::NoValidElbow`] when every corner faces downwards.
pub fn select_elbow(curve: &SseCurve) -> Result<ElbowReport> {
    let series = tangent_series(curve)?;

    let mut warnings = Vec::new();
    if let Some(k) = curve.first_increase() {
        warnings.push(Warning::NonMonotone { k });
    }

    let best = series
        .iter()
        .filter(|&(_, _, valid)| valid)
        .map(|(_, t, _)| t)
        .reduce(f64::min);
    let Some(best) = best else {
        return Err(Error::NoValidElbow { series });
    };
    let ties: Vec<usize> = series
        .iter()
        .filter(|&(_, t, valid)| valid && t == best)
        .map(|(k, _, _)| k)
        .collect();
    let elbow_k = ties[0];
    if ties.len() > 1 {
        warnings.push(Warning::Tie { ks: ties });
    }

    Ok(ElbowReport {
        elbow_k,
        elbow_tangent: best,
        series,
        curve: curve.clone(),
        warnings,
    })
}

/// Divides every value by `SSE(1)`.
pub fn normalize_curve(curve: &SseCurve) -> Result<SseCurve> {
    let first = curve.values[0];
    if first <= 0.0 {
        return Err(Error::Degenerate(format!(
            "SSE(1) = {first}; all points coincide, nothing to normalise"
        )));
    }
    SseCurve::from_values(curve.values.iter().map(|v| v / first).collect())
}
