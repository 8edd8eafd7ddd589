//! Depolarizing noise and the Pauli-error representation.

use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use rand::Rng;

use crate::error::{Error, Result};
use crate::tiling::Tiling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            Pauli::I => "I",
            Pauli::X => "X",
            Pauli::Y => "Y",
            Pauli::Z => "Z",
        };
        f.write_str(c)
    }
}

impl FromStr for Pauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "I" => Ok(Pauli::I),
            "X" => Ok(Pauli::X),
            "Y" => Ok(Pauli::Y),
            "Z" => Ok(Pauli::Z),
            other => Err(Error::Parse(format!("unknown Pauli '{other}'"))),
        }
    }
}

/// Depolarizing probability `p` with the derived marginal `p' = 2p/3` of
/// each binary component and the crossover `p'' = (p/3)/(1 - 2p/3)` of the
/// Z component on positions free of X.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DepolarizingParams {
    p: f64,
}

impl DepolarizingParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!(
                "depolarizing probability must lie in [0, 1), got {p}"
            )));
        }
        Ok(DepolarizingParams { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn p_prime(&self) -> f64 {
        2.0 * self.p / 3.0
    }

    pub fn p_dprime(&self) -> f64 {
        (self.p / 3.0) / (1.0 - 2.0 * self.p / 3.0)
    }
}

/// A Pauli error split as `E = E_X E_Z`. A `Y` on edge `i` puts `i` in
/// both supports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliErrorPair {
    pub ex: FixedBitSet,
    pub ez: FixedBitSet,
}

impl PauliErrorPair {
    pub fn identity(qubits: usize) -> Self {
        PauliErrorPair {
            ex: FixedBitSet::with_capacity(qubits),
            ez: FixedBitSet::with_capacity(qubits),
        }
    }

    pub fn from_paulis<I: IntoIterator<Item = (usize, Pauli)>>(
        qubits: usize,
        paulis: I,
    ) -> Result<Self> {
        let mut e = Self::identity(qubits);
        for (i, p) in paulis {
            if i >= qubits {
                return Err(Error::InvalidParameter(format!(
                    "edge {i} out of range for {qubits} qubits"
                )));
            }
            e.set(i, p);
        }
        Ok(e)
    }

    pub fn qubits(&self) -> usize {
        self.ex.len()
    }

    pub fn set(&mut self, i: usize, p: Pauli) {
        self.ex.set(i, matches!(p, Pauli::X | Pauli::Y));
        self.ez.set(i, matches!(p, Pauli::Z | Pauli::Y));
    }

    pub fn get(&self, i: usize) -> Pauli {
        match (self.ex.contains(i), self.ez.contains(i)) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    /// Non-identity positions in edge order.
    pub fn support(&self) -> Vec<(usize, Pauli)> {
        let mut all = self.ex.clone();
        all.union_with(&self.ez);
        all.ones().map(|i| (i, self.get(i))).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.ex.is_clear() && self.ez.is_clear()
    }

    /// Componentwise product (up to phase).
    pub fn product(&self, other: &Self) -> Self {
        let mut ex = self.ex.clone();
        ex.symmetric_difference_with(&other.ex);
        let mut ez = self.ez.clone();
        ez.symmetric_difference_with(&other.ez);
        PauliErrorPair { ex, ez }
    }

    /// Writes `edge_id,pauli` rows for the non-identity positions.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["edge_id", "pauli"])?;
        for (i, p) in self.support() {
            w.write_record([i.to_string(), p.to_string()])?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn read_csv<R: std::io::Read>(qubits: usize, input: R) -> Result<Self> {
        let mut r = csv::Reader::from_reader(input);
        let mut paulis = Vec::new();
        for record in r.records() {
            let record = record?;
            if record.len() != 2 {
                return Err(Error::Parse(format!(
                    "expected 'edge_id,pauli', got {} fields",
                    record.len()
                )));
            }
            let edge: usize = record[0]
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad edge id '{}'", &record[0])))?;
            paulis.push((edge, record[1].parse()?));
        }
        Self::from_paulis(qubits, paulis)
    }
}

/// Number of non-identity positions, `|E_X E_Z|`.
pub fn pauli_weight(e: &PauliErrorPair) -> usize {
    let mut all = e.ex.clone();
    all.union_with(&e.ez);
    all.count_ones(..)
}

/// Draws one depolarizing error. Edges are visited in index order and each
/// consumes exactly one uniform draw: `u < p/3` is X, `u < 2p/3` is Y,
/// `u < p` is Z.
pub fn sample_depolarizing<R: Rng + ?Sized>(
    t: &Tiling,
    p: f64,
    rng: &mut R,
) -> Result<PauliErrorPair> {
    let params = DepolarizingParams::new(p)?;
    Ok(sample_qubits(t.edge_count(), params, rng))
}

pub(crate) fn sample_qubits<R: Rng + ?Sized>(
    qubits: usize,
    params: DepolarizingParams,
    rng: &mut R,
) -> PauliErrorPair {
    let p = params.p();
    let (tx, ty) = (p / 3.0, 2.0 * p / 3.0);
    let mut e = PauliErrorPair::identity(qubits);
    for i in 0..qubits {
        let u: f64 = rng.gen();
        if u < tx {
            e.ex.insert(i);
        } else if u < ty {
            e.ex.insert(i);
            e.ez.insert(i);
        } else if u < p {
            e.ez.insert(i);
        }
    }
    e
}

/// Conditional distribution of the Z component given the X component of a
/// single depolarized qubit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditionalProbabilities {
    pub z_given_x: f64,
    pub i_given_x: f64,
    pub z_given_no_x: f64,
    pub i_given_no_x: f64,
}

pub fn conditional_probabilities(p: f64) -> Result<ConditionalProbabilities> {
    if !(0.0..0.75).contains(&p) {
        return Err(Error::Domain(format!(
            "conditional probabilities need 0 <= p < 3/4, got {p}"
        )));
    }
    let no_x = 1.0 - 2.0 * p / 3.0;
    Ok(ConditionalProbabilities {
        z_given_x: 0.5,
        i_given_x: 0.5,
        z_given_no_x: (p / 3.0) / no_x,
        i_given_no_x: (1.0 - p) / no_x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::build_square_torus;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_noise_is_identity() {
        let t = build_square_torus(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_depolarizing(&t, 0.0, &mut rng).unwrap().is_identity());
    }

    #[test]
    fn invalid_probability() {
        let t = build_square_torus(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for p in [-0.1, 1.0, 1.5, f64::NAN] {
            assert!(matches!(
                sample_depolarizing(&t, p, &mut rng),
                Err(Error::InvalidParameter(_))
            ));
        }
    }

    #[test]
    fn marginals_and_erasure_structure() {
        let n = 100_000;
        let p = 0.3;
        let mut rng = ChaCha8Rng::seed_from_u64(2024);
        let e = sample_qubits(n, DepolarizingParams::new(p).unwrap(), &mut rng);
        let q = 2.0 * p / 3.0;
        let sigma = (q * (1.0 - q) / n as f64).sqrt();
        let fx = e.ex.count_ones(..) as f64 / n as f64;
        let fz = e.ez.count_ones(..) as f64 / n as f64;
        assert!((fx - q).abs() < 3.0 * sigma, "fx = {fx}");
        assert!((fz - q).abs() < 3.0 * sigma, "fz = {fz}");

        // Among X-support positions, Z is present half the time.
        let nx = e.ex.count_ones(..);
        let both = e.ex.intersection(&e.ez).count();
        let half_sigma = (0.25 / nx as f64).sqrt();
        let f = both as f64 / nx as f64;
        assert!((f - 0.5).abs() < 3.0 * half_sigma, "P(Z|X) ~ {f}");
    }

    #[test]
    fn sampling_is_reproducible() {
        let t = build_square_torus(7).unwrap();
        let a = sample_depolarizing(&t, 0.2, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        let b = sample_depolarizing(&t, 0.2, &mut ChaCha8Rng::seed_from_u64(9)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn conditionals() {
        for p in [0.0, 0.1, 0.3, 0.6, 0.74] {
            let c = conditional_probabilities(p).unwrap();
            assert_eq!(c.z_given_x, 0.5);
            assert!((c.z_given_x + c.i_given_x - 1.0).abs() < 1e-15);
            assert!((c.z_given_no_x + c.i_given_no_x - 1.0).abs() < 1e-12);
            assert!((0.0..=1.0).contains(&c.z_given_no_x));
        }
        assert_eq!(conditional_probabilities(0.0).unwrap().i_given_no_x, 1.0);
        let c = conditional_probabilities(0.6).unwrap();
        assert!((c.z_given_no_x - 1.0 / 3.0).abs() < 1e-12);
        assert!(matches!(conditional_probabilities(0.75), Err(Error::Domain(_))));
    }

    #[test]
    fn derived_parameters() {
        let d = DepolarizingParams::new(0.15).unwrap();
        assert!((d.p_prime() - 0.1).abs() < 1e-15);
        assert!(d.p_dprime() <= d.p_prime());
        assert!((d.p_dprime() - 0.05 / 0.9).abs() < 1e-15);
    }

    #[test]
    fn weights() {
        let e = PauliErrorPair::identity(10);
        assert_eq!(pauli_weight(&e), 0);
        let y = PauliErrorPair::from_paulis(10, [(3, Pauli::Y)]).unwrap();
        assert_eq!(pauli_weight(&y), 1);
        let mut e = PauliErrorPair::identity(10);
        e.ex.insert(1);
        e.ex.insert(2);
        e.ez.insert(2);
        e.ez.insert(5);
        assert_eq!(pauli_weight(&e), 3);
        assert_eq!(e.get(2), Pauli::Y);
    }

    #[test]
    fn csv_round_trip() {
        let e = PauliErrorPair::from_paulis(8, [(0, Pauli::X), (3, Pauli::Y), (7, Pauli::Z)]).unwrap();
        let mut buf = Vec::new();
        e.write_csv(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf.clone()).unwrap(),
            "edge_id,pauli\n0,X\n3,Y\n7,Z\n"
        );
        assert_eq!(PauliErrorPair::read_csv(8, buf.as_slice()).unwrap(), e);
        assert!(PauliErrorPair::read_csv(8, "edge_id,pauli\n9,X\n".as_bytes()).is_err());
        assert!(PauliErrorPair::read_csv(8, "edge_id,pauli\n1,W\n".as_bytes()).is_err());
    }
}
