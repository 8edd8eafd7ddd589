//! Threshold extraction from crossings of failure-rate curves.

use std::collections::BTreeMap;

use super::sim::{CurvePoint, Sector};
use crate::decoders::Decoder;
use crate::error::{Error, Result};
use crate::tiling::Family;

/// Failure rate against `p` for one lattice size, sorted by `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    pub size: usize,
    pub points: Vec<(f64, f64)>,
}

impl Curve {
    pub fn new(size: usize, mut points: Vec<(f64, f64)>) -> Self {
        points.sort_by(|a, b| a.0.total_cmp(&b.0));
        Curve { size, points }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdEstimate {
    /// Mean of the pairwise crossings.
    pub p_th: f64,
    /// Half the spread of the pairwise crossings.
    pub uncertainty: f64,
    /// `(smaller size, larger size, crossing p)`.
    pub crossings: Vec<(usize, usize, f64)>,
}

/// Crossing of two curves. `diff = larger - smaller` is taken on the
/// common `p` grid; grid points where the curves tie are dropped, and among
/// the remaining sign changes from negative to positive the steepest one
/// is interpolated linearly. Noise away from threshold produces shallow
/// spurious changes, the real crossing is where the curves separate
/// fastest.
pub fn crossing(smaller: &Curve, larger: &Curve) -> Result<f64> {
    let diff: Vec<(f64, f64)> = smaller
        .points
        .iter()
        .filter_map(|&(p, r)| {
            larger
                .points
                .iter()
                .find(|q| q.0 == p)
                .map(|&(_, r2)| (p, r2 - r))
        })
        .filter(|&(_, d)| d != 0.0)
        .collect();
    let mut best: Option<(f64, f64)> = None;
    for w in diff.windows(2) {
        let ((p0, d0), (p1, d1)) = (w[0], w[1]);
        if d0 < 0.0 && d1 > 0.0 {
            let slope = (d1 - d0) / (p1 - p0);
            let p = p0 - d0 / slope;
            if best.is_none_or(|(s, _)| slope > s) {
                best = Some((slope, p));
            }
        }
    }
    if let Some((_, p)) = best {
        return Ok(p);
    }
    let direction = if diff.is_empty() {
        "curves coincide on every common p".to_string()
    } else if diff.iter().all(|&(_, d)| d < 0.0) {
        format!(
            "size {} stays below size {} on the whole range (threshold above it)",
            larger.size, smaller.size
        )
    } else if diff.iter().all(|&(_, d)| d > 0.0) {
        format!(
            "size {} stays above size {} on the whole range (threshold below it)",
            larger.size, smaller.size
        )
    } else {
        format!(
            "size {} crosses size {} only from above to below",
            larger.size, smaller.size
        )
    };
    Err(Error::NoCrossing { direction })
}

/// Mean and half-range of the crossings of consecutive sizes.
pub fn estimate_threshold(curves: &[Curve]) -> Result<ThresholdEstimate> {
    let mut sorted: Vec<&Curve> = curves.iter().collect();
    sorted.sort_by_key(|c| c.size);
    if sorted.len() < 2 {
        return Err(Error::InvalidParameter(
            "threshold estimation needs at least two sizes".into(),
        ));
    }
    let mut crossings = Vec::with_capacity(sorted.len() - 1);
    for w in sorted.windows(2) {
        crossings.push((w[0].size, w[1].size, crossing(w[0], w[1])?));
    }
    let ps = crossings.iter().map(|c| c.2);
    let lo = ps.clone().fold(f64::INFINITY, f64::min);
    let hi = ps.clone().fold(f64::NEG_INFINITY, f64::max);
    Ok(ThresholdEstimate {
        p_th: ps.sum::<f64>() / crossings.len() as f64,
        uncertainty: (hi - lo) / 2.0,
        crossings,
    })
}

pub type CurveKey = (Family, Decoder, Sector);

/// Splits rows into one curve set per `(family, decoder, sector)`.
pub fn group_curves(points: &[CurvePoint]) -> BTreeMap<CurveKey, Vec<Curve>> {
    let mut raw: BTreeMap<CurveKey, BTreeMap<usize, Vec<(f64, f64)>>> = BTreeMap::new();
    for pt in points {
        raw.entry((pt.family, pt.decoder, pt.sector))
            .or_default()
            .entry(pt.size)
            .or_default()
            .push((pt.p, pt.rate));
    }
    raw.into_iter()
        .map(|(k, sizes)| {
            let curves = sizes.into_iter().map(|(s, pts)| Curve::new(s, pts)).collect();
            (k, curves)
        })
        .collect()
}
