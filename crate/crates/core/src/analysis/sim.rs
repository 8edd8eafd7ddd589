//! Seeded Monte Carlo estimation of logical failure rates.

use std::fmt;
use std::str::FromStr;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::stats::wilson_interval;
use crate::decoders::{decode_pma, Decoder};
use crate::error::{Error, Result};
use crate::noise::{sample_qubits, DepolarizingParams, PauliErrorPair};
use crate::syndrome::{classify_cycles, residual_class, syndrome, HomologyClass};
use crate::tiling::{Family, SurfaceCode};

/// Which residual bits count as a failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Both,
    Z,
    X,
}

impl Sector {
    pub fn as_str(self) -> &'static str {
        match self {
            Sector::Both => "both",
            Sector::Z => "z",
            Sector::X => "x",
        }
    }

    pub fn failed(self, class: &HomologyClass) -> bool {
        match self {
            Sector::Both => !class.is_trivial(),
            Sector::Z => class.z_failed(),
            Sector::X => class.x_failed(),
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Sector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "both" => Ok(Sector::Both),
            "z" => Ok(Sector::Z),
            "x" => Ok(Sector::X),
            other => Err(Error::Parse(format!("unknown sector '{other}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub family: Family,
    pub sizes: Vec<usize>,
    pub ps: Vec<f64>,
    pub decoder: Decoder,
    pub sector: Sector,
    pub trials: u64,
    pub seed: u64,
}

impl SimulationConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.sizes.is_empty() || self.ps.is_empty() {
            return Err(Error::InvalidParameter("need at least one size and one p".into()));
        }
        for &p in &self.ps {
            DepolarizingParams::new(p)?;
        }
        Ok(())
    }
}

/// One row of a failure-rate curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub family: Family,
    pub size: usize,
    pub p: f64,
    pub decoder: Decoder,
    pub sector: Sector,
    pub trials: u64,
    pub failures: u64,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl CurvePoint {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        family: Family,
        size: usize,
        p: f64,
        decoder: Decoder,
        sector: Sector,
        trials: u64,
        failures: u64,
        seed: u64,
    ) -> Self {
        let (ci_low, ci_high) = wilson_interval(failures, trials);
        CurvePoint {
            family,
            size,
            p,
            decoder,
            sector,
            trials,
            failures,
            rate: failures as f64 / trials as f64,
            ci_low,
            ci_high,
            seed,
        }
    }
}

/// Aggregate of a batch of trials. Addition is associative, so batches
/// combine in any order.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct TrialCounts {
    pub trials: u64,
    pub failures: u64,
    pub z_failures: u64,
    pub x_failures: u64,
}

impl std::ops::Add for TrialCounts {
    type Output = TrialCounts;

    fn add(self, o: TrialCounts) -> TrialCounts {
        TrialCounts {
            trials: self.trials + o.trials,
            failures: self.failures + o.failures,
            z_failures: self.z_failures + o.z_failures,
            x_failures: self.x_failures + o.x_failures,
        }
    }
}

/// The random stream of trial `k`: ChaCha8 keyed by `seed`, stream `k`.
pub fn trial_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// Seed used for every point of one lattice size in a sweep.
pub fn point_seed(master: u64, size: usize) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(master);
    rng.set_stream(size as u64);
    rng.next_u64()
}

/// Samples, decodes and classifies trial `k`.
pub fn run_trial(
    code: &SurfaceCode,
    params: DepolarizingParams,
    decoder: Decoder,
    sector: Sector,
    seed: u64,
    k: u64,
) -> Result<(PauliErrorPair, HomologyClass)> {
    let mut rng = trial_rng(seed, k);
    let truth = sample_qubits(code.qubit_count(), params, &mut rng);
    let s = syndrome(code, &truth);
    // Sector-restricted runs skip a half that cannot affect the verdict.
    let estimate = match (decoder, sector) {
        (Decoder::Standard, Sector::Z) => PauliErrorPair {
            ex: truth.ex.clone(),
            ez: decode_pma(&code.primal, &s.s_x)?.edges,
        },
        (_, Sector::X) => PauliErrorPair {
            ex: decode_pma(code.dual_tiling(), &s.s_z)?.edges,
            ez: truth.ez.clone(),
        },
        _ => decoder.decode(code, &s)?.estimate,
    };
    let class = if cfg!(debug_assertions) {
        residual_class(code, &truth, &estimate)?
    } else {
        classify_cycles(code, &truth.product(&estimate))
    };
    Ok((truth, class))
}

/// Runs trials `0..n`, each on its own stream derived from `seed`. The
/// result does not depend on scheduling or thread count.
pub fn run_trials(
    code: &SurfaceCode,
    p: f64,
    decoder: Decoder,
    sector: Sector,
    n: u64,
    seed: u64,
) -> Result<TrialCounts> {
    if n == 0 {
        return Err(Error::InvalidParameter("trial count must be at least 1".into()));
    }
    let params = DepolarizingParams::new(p)?;
    (0..n)
        .into_par_iter()
        .map(|k| {
            let (_, class) = run_trial(code, params, decoder, sector, seed, k).map_err(|e| {
                Error::Trial {
                    trial: k,
                    size: code.size(),
                    p,
                    source: Box::new(e),
                }
            })?;
            Ok(TrialCounts {
                trials: 1,
                failures: u64::from(sector.failed(&class)),
                z_failures: u64::from(class.z_failed()),
                x_failures: u64::from(class.x_failed()),
            })
        })
        .try_reduce(TrialCounts::default, |a, b| Ok(a + b))
}

/// One curve point per `(size, p)`, sizes outermost.
pub fn simulate(config: &SimulationConfig) -> Result<Vec<CurvePoint>> {
    config.validate()?;
    let mut out = Vec::with_capacity(config.sizes.len() * config.ps.len());
    for &size in &config.sizes {
        let code = SurfaceCode::new(config.family, size)?;
        let seed = point_seed(config.seed, size);
        for &p in &config.ps {
            let counts = run_trials(&code, p, config.decoder, config.sector, config.trials, seed)?;
            out.push(CurvePoint::new(
                config.family,
                size,
                p,
                config.decoder,
                config.sector,
                counts.trials,
                counts.failures,
                seed,
            ));
        }
    }
    Ok(out)
}

pub fn write_points_csv<W: std::io::Write>(points: &[CurvePoint], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if points.is_empty() {
        w.write_record([
            "family", "size", "p", "decoder", "sector", "trials", "failures", "rate", "ci_low",
            "ci_high", "seed",
        ])?;
    }
    for pt in points {
        w.serialize(pt)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_points_csv<R: std::io::Read>(input: R) -> Result<Vec<CurvePoint>> {
    let mut r = csv::Reader::from_reader(input);
    let mut out = Vec::new();
    for row in r.deserialize() {
        out.push(row?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_noise_never_fails() {
        for fam in [Family::Square, Family::Triangular] {
            let code = SurfaceCode::new(fam, 4).unwrap();
            for d in [Decoder::Standard, Decoder::Correlated] {
                let c = run_trials(&code, 0.0, d, Sector::Both, 50, 1).unwrap();
                assert_eq!(c.failures, 0);
                assert_eq!(c.trials, 50);
            }
        }
    }

    #[test]
    fn zero_trials_rejected() {
        let code = SurfaceCode::new(Family::Square, 4).unwrap();
        assert!(run_trials(&code, 0.1, Decoder::Standard, Sector::Both, 0, 1).is_err());
    }

    #[test]
    fn sector_shortcuts_agree_with_full_decode() {
        let code = SurfaceCode::new(Family::Triangular, 5).unwrap();
        let params = DepolarizingParams::new(0.12).unwrap();
        for k in 0..200 {
            let (_, full) = run_trial(&code, params, Decoder::Standard, Sector::Both, 3, k).unwrap();
            let (_, z) = run_trial(&code, params, Decoder::Standard, Sector::Z, 3, k).unwrap();
            let (_, x) = run_trial(&code, params, Decoder::Correlated, Sector::X, 3, k).unwrap();
            assert_eq!(full.z_bits, z.z_bits);
            assert_eq!(full.x_bits, x.x_bits);
        }
    }

    #[test]
    fn reproducible_across_thread_counts() {
        let code = SurfaceCode::new(Family::Square, 6).unwrap();
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| run_trials(&code, 0.12, Decoder::Correlated, Sector::Both, 300, 77).unwrap())
        };
        assert_eq!(run(1), run(3));
    }

    #[test]
    fn csv_header_and_round_trip() {
        let pts = vec![CurvePoint::new(
            Family::Square,
            8,
            0.1,
            Decoder::Standard,
            Sector::Both,
            100,
            7,
            42,
        )];
        let mut buf = Vec::new();
        write_points_csv(&pts, &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with(
            "family,size,p,decoder,sector,trials,failures,rate,ci_low,ci_high,seed\nsquare,8,0.1,standard,both,100,7,0.07,"
        ));
        assert_eq!(read_points_csv(buf.as_slice()).unwrap(), pts);
    }
}
