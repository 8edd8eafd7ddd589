//! Perfect-matching decoders: errors only, errors with erasures, the
//! correlated two-step decoder and the standard CSS baseline.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{build_distance_graph, mwpm, ErasureSet};
use crate::noise::PauliErrorPair;
use crate::syndrome::SyndromePair;
use crate::tiling::{SurfaceCode, Tiling};

/// Output of one matching step: the correction and the matched weight,
/// which equals `|edges \ erasure|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchingCorrection {
    pub edges: FixedBitSet,
    pub matched_weight: u64,
}

/// Minimum-size edge set with boundary `s`.
pub fn decode_pma(graph: &Tiling, s: &[usize]) -> Result<MatchingCorrection> {
    decode_erasure_pma(graph, s, &ErasureSet::none(graph.edge_count()))
}

/// Edge set with boundary `s` minimising the number of non-erased edges:
/// the symmetric difference of e-geodesics along a minimum-weight perfect
/// matching of the e-distance graph.
pub fn decode_erasure_pma(
    graph: &Tiling,
    s: &[usize],
    erasure: &ErasureSet,
) -> Result<MatchingCorrection> {
    let k = build_distance_graph(graph, s, erasure)?;
    let m = mwpm(&k)?;
    let mut edges = FixedBitSet::with_capacity(graph.edge_count());
    for &(i, j) in &m.pairs {
        let path = k
            .geodesic(graph, i, j)
            .expect("distance graph built from a tiling carries paths");
        for e in path {
            edges.toggle(e);
        }
    }
    Ok(MatchingCorrection {
        edges,
        matched_weight: m.total_weight,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub estimate: PauliErrorPair,
    pub matched_weight_x: u64,
    pub matched_weight_z: u64,
    pub erasure_used: ErasureSet,
}

fn check_even(s: &SyndromePair) -> Result<()> {
    for half in [&s.s_x, &s.s_z] {
        if half.len() % 2 == 1 {
            return Err(Error::InvalidSyndrome { len: half.len() });
        }
    }
    Ok(())
}

/// X first by plain matching on the dual graph, then Z on the primal graph
/// with the X-estimate's edges erased.
pub fn decode_correlated(code: &SurfaceCode, s: &SyndromePair) -> Result<DecodeResult> {
    check_even(s)?;
    let x = decode_pma(code.dual_tiling(), &s.s_z)?;
    let erasure = ErasureSet::from_set(
        code.primal
            .edge_set(x.edges.ones().map(|d| code.dual.primal_edge(d))),
    );
    let z = decode_erasure_pma(&code.primal, &s.s_x, &erasure)?;
    Ok(DecodeResult {
        estimate: PauliErrorPair {
            ex: x.edges,
            ez: z.edges,
        },
        matched_weight_x: x.matched_weight,
        matched_weight_z: z.matched_weight,
        erasure_used: erasure,
    })
}

/// The two binary halves decoded independently.
pub fn decode_standard(code: &SurfaceCode, s: &SyndromePair) -> Result<DecodeResult> {
    check_even(s)?;
    let x = decode_pma(code.dual_tiling(), &s.s_z)?;
    let z = decode_pma(&code.primal, &s.s_x)?;
    Ok(DecodeResult {
        estimate: PauliErrorPair {
            ex: x.edges,
            ez: z.edges,
        },
        matched_weight_x: x.matched_weight,
        matched_weight_z: z.matched_weight,
        erasure_used: ErasureSet::none(code.qubit_count()),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Decoder {
    Standard,
    Correlated,
}

impl Decoder {
    pub fn as_str(self) -> &'static str {
        match self {
            Decoder::Standard => "standard",
            Decoder::Correlated => "correlated",
        }
    }

    pub fn decode(self, code: &SurfaceCode, s: &SyndromePair) -> Result<DecodeResult> {
        match self {
            Decoder::Standard => decode_standard(code, s),
            Decoder::Correlated => decode_correlated(code, s),
        }
    }
}

impl fmt::Display for Decoder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Decoder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Decoder::Standard),
            "correlated" => Ok(Decoder::Correlated),
            other => Err(Error::Parse(format!("unknown decoder '{other}'"))),
        }
    }
}
