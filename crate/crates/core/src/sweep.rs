//! Threshold-curve sweeps over the leading Schmidt weight.
//!
//! For fixed (d1, d2, p2) and a grid of p1 values, each emitted row carries
//! two noise levels expressed as 1 - p: the general white-noise bound
//! (upper curve) and the trace-distance criterion (lower curve). Both are
//! raw formula evaluations in (p1, p2, d1 d2); no full Schmidt spec is
//! constructed, so grids may cross p1 = p2 (both curves vanish there).
//!
//! Grid points with p1 <= 0 or p1^2 + p2^2 > 1 are not physical weight
//! pairs and are skipped with a reason instead of being evaluated.

use thiserror::Error;

use crate::thresholds::{tracedist_one_minus_p, white_highdim_bound};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SweepError {
    #[error("local dimension must be >= 2, got d{party} = {dim}")]
    DimensionTooSmall { party: u8, dim: usize },
    #[error("p2 must lie in (0, 1], got {p2}")]
    InvalidP2 { p2: f64 },
    #[error("empty grid: steps must be >= 1")]
    EmptyGrid,
    #[error("grid bounds must be finite with start <= stop, got {start}..{stop}")]
    InvalidGridBounds { start: f64, stop: f64 },
}

/// A sweep of the two nonlocality curves over a p1 grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRequest {
    pub d1: usize,
    pub d2: usize,
    pub p2: f64,
    pub p1_start: f64,
    pub p1_stop: f64,
    pub steps: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRow {
    pub p1: f64,
    /// 1 - p at the general white-noise bound; noise below this is tolerated.
    pub upper_one_minus_p: f64,
    /// 1 - p at the trace-distance criterion.
    pub lower_one_minus_p: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SkippedPoint {
    pub p1: f64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub skipped: Vec<SkippedPoint>,
}

impl SweepRequest {
    fn validate(&self) -> Result<(), SweepError> {
        if self.d1 < 2 {
            return Err(SweepError::DimensionTooSmall {
                party: 1,
                dim: self.d1,
            });
        }
        if self.d2 < 2 {
            return Err(SweepError::DimensionTooSmall {
                party: 2,
                dim: self.d2,
            });
        }
        if !self.p2.is_finite() || self.p2 <= 0.0 || self.p2 > 1.0 {
            return Err(SweepError::InvalidP2 { p2: self.p2 });
        }
        if self.steps == 0 {
            return Err(SweepError::EmptyGrid);
        }
        if !self.p1_start.is_finite() || !self.p1_stop.is_finite() || self.p1_start > self.p1_stop {
            return Err(SweepError::InvalidGridBounds {
                start: self.p1_start,
                stop: self.p1_stop,
            });
        }
        Ok(())
    }

    /// The evaluated grid: `steps` points from start to stop inclusive.
    pub fn grid(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.p1_start];
        }
        let span = self.p1_stop - self.p1_start;
        (0..self.steps)
            .map(|i| self.p1_start + span * i as f64 / (self.steps - 1) as f64)
            .collect()
    }
}

/// Evaluates the sweep. Row order follows the grid; skipped points keep
/// their grid position in the trailer list.
pub fn run(request: &SweepRequest) -> Result<SweepResult, SweepError> {
    request.validate()?;
    let dim_product = request.d1 * request.d2;
    let p2 = request.p2;
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for p1 in request.grid() {
        if p1 <= 0.0 {
            skipped.push(SkippedPoint {
                p1,
                reason: "p1 must be > 0".to_string(),
            });
            continue;
        }
        if p1 * p1 + p2 * p2 > 1.0 + 1e-12 {
            skipped.push(SkippedPoint {
                p1,
                reason: "p1^2 + p2^2 > 1".to_string(),
            });
            continue;
        }
        let upper = 1.0 - white_highdim_bound(p1, p2, dim_product);
        let lower = tracedist_one_minus_p(p1, p2, dim_product);
        debug_assert!(upper >= lower);
        rows.push(SweepRow {
            p1,
            upper_one_minus_p: upper,
            lower_one_minus_p: lower,
        });
    }
    Ok(SweepResult { rows, skipped })
}
