//! Entropy, binary channel capacities and the depolarizing hashing bound.
//! All logarithms are base 2.

use crate::error::{Error, Result};

fn xlog2x(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.log2()
    }
}

/// Binary entropy `h(x)` with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain(format!("binary entropy needs 0 <= x <= 1, got {x}")));
    }
    Ok(-xlog2x(x) - xlog2x(1.0 - x))
}

/// Capacities seen by the two halves of the correlated decoder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Capacities {
    /// Binary symmetric channel with crossover `p' = 2p/3`.
    pub c_x: f64,
    /// Erasure-and-error channel: erasure rate `p'`, crossover `p''` on
    /// the rest.
    pub c_z: f64,
}

pub fn channel_capacities(p: f64) -> Result<Capacities> {
    if !(0.0..0.75).contains(&p) {
        return Err(Error::Domain(format!(
            "channel capacities need 0 <= p < 3/4, got {p}"
        )));
    }
    let pp = 2.0 * p / 3.0;
    let ppp = (p / 3.0) / (1.0 - pp);
    Ok(Capacities {
        c_x: 1.0 - binary_entropy(pp)?,
        c_z: (1.0 - pp) * (1.0 - binary_entropy(ppp)?),
    })
}

/// `1 + p log(p/3) + (1-p) log(1-p)`.
pub fn hashing_bound(p: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::Domain(format!("hashing bound needs 0 <= p < 1, got {p}")));
    }
    let term = if p == 0.0 { 0.0 } else { p * (p / 3.0).log2() };
    Ok(1.0 + term + xlog2x(1.0 - p))
}

/// `1 - 2h(2p/3)`, the rate reachable when both halves are decoded
/// independently.
pub fn standard_css_rate(p: f64) -> Result<f64> {
    if !(0.0..=1.5).contains(&p) {
        return Err(Error::Domain(format!("need 0 <= p <= 3/2, got {p}")));
    }
    Ok(1.0 - 2.0 * binary_entropy(2.0 * p / 3.0)?)
}
