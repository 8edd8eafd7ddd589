//! Syndromes as end-point sets, and homological classification of residual
//! errors.

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::noise::PauliErrorPair;
use crate::tiling::{SurfaceCode, Tiling};

/// Vertices of `graph` incident to an odd number of edges of `u`, sorted.
pub fn boundary(graph: &Tiling, u: &FixedBitSet) -> Vec<usize> {
    let mut odd = vec![false; graph.vertex_count()];
    for e in u.ones() {
        let edge = graph.edge(e);
        odd[edge.a] ^= true;
        odd[edge.b] ^= true;
    }
    odd.iter()
        .enumerate()
        .filter_map(|(v, &o)| o.then_some(v))
        .collect()
}

/// `s_x` lives on primal vertices (site checks), `s_z` on dual vertices
/// (plaquette checks).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SyndromePair {
    pub s_x: Vec<usize>,
    pub s_z: Vec<usize>,
}

impl SyndromePair {
    pub fn is_trivial(&self) -> bool {
        self.s_x.is_empty() && self.s_z.is_empty()
    }
}

pub fn syndrome(code: &SurfaceCode, e: &PauliErrorPair) -> SyndromePair {
    SyndromePair {
        s_x: boundary(&code.primal, &e.ez),
        s_z: boundary(code.dual_tiling(), &e.ex),
    }
}

/// Intersection parities of the residual cycles with the homology cuts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomologyClass {
    /// Z residual against `(cut_x, cut_y)`.
    pub z_bits: [bool; 2],
    /// X residual against `(dual_cut_x, dual_cut_y)`.
    pub x_bits: [bool; 2],
}

impl HomologyClass {
    pub fn z_failed(&self) -> bool {
        self.z_bits.iter().any(|&b| b)
    }

    pub fn x_failed(&self) -> bool {
        self.x_bits.iter().any(|&b| b)
    }

    pub fn is_trivial(&self) -> bool {
        !self.z_failed() && !self.x_failed()
    }
}

fn parity(a: &FixedBitSet, cut: &FixedBitSet) -> bool {
    a.intersection(cut).count() % 2 == 1
}

/// Classifies `truth * estimate` up to stabilizers. Both residuals must be
/// cycles, which holds exactly when the two errors share a syndrome.
pub fn residual_class(
    code: &SurfaceCode,
    truth: &PauliErrorPair,
    estimate: &PauliErrorPair,
) -> Result<HomologyClass> {
    let residual = truth.product(estimate);
    let open_z = boundary(&code.primal, &residual.ez);
    let open_x = boundary(code.dual_tiling(), &residual.ex);
    if !open_z.is_empty() || !open_x.is_empty() {
        return Err(Error::PreconditionViolation(format!(
            "estimate syndrome differs from the true syndrome ({} site and {} plaquette checks disagree)",
            open_z.len(),
            open_x.len()
        )));
    }
    Ok(classify_cycles(code, &residual))
}

/// Homology bits of a residual already known to have empty boundary.
pub(crate) fn classify_cycles(code: &SurfaceCode, residual: &PauliErrorPair) -> HomologyClass {
    let c = &code.cuts;
    HomologyClass {
        z_bits: [parity(&residual.ez, &c.cut_x), parity(&residual.ez, &c.cut_y)],
        x_bits: [
            parity(&residual.ex, &c.dual_cut_x),
            parity(&residual.ex, &c.dual_cut_y),
        ],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::noise::Pauli;
    use crate::tiling::Family;

    fn square5() -> SurfaceCode {
        SurfaceCode::new(Family::Square, 5).unwrap()
    }

    #[test]
    fn single_edge_boundary() {
        let code = square5();
        let t = &code.primal;
        let mut b = boundary(t, &t.edge_set([7]));
        b.sort();
        let e = t.edge(7);
        let mut want = vec![e.a, e.b];
        want.sort();
        assert_eq!(b, want);
    }

    #[test]
    fn faces_have_empty_boundary() {
        for fam in [Family::Square, Family::Triangular] {
            let code = SurfaceCode::new(fam, 4).unwrap();
            for t in [&code.primal, code.dual_tiling()] {
                for f in t.faces() {
                    assert!(boundary(t, &t.edge_set(f.iter().copied())).is_empty());
                }
            }
        }
    }

    #[test]
    fn path_boundary_is_its_ends() {
        let code = square5();
        let t = &code.primal;
        // h(0,0), h(1,0), h(2,0): (0,0) -> (3,0)
        assert_eq!(boundary(t, &t.edge_set([0, 1, 2])), vec![0, 3]);
    }

    #[test]
    fn empty_and_single_y() {
        let code = square5();
        let id = PauliErrorPair::identity(50);
        assert!(syndrome(&code, &id).is_trivial());
        let i = 31;
        let y = PauliErrorPair::from_paulis(50, [(i, Pauli::Y)]).unwrap();
        let s = syndrome(&code, &y);
        let (e, d) = (code.primal.edge(i), code.dual_tiling().edge(i));
        assert_eq!(s.s_x, {
            let mut v = vec![e.a, e.b];
            v.sort();
            v
        });
        assert_eq!(s.s_z, {
            let mut v = vec![d.a, d.b];
            v.sort();
            v
        });
    }

    #[test]
    fn residual_classes() {
        let code = square5();
        let truth = PauliErrorPair::from_paulis(50, [(3, Pauli::Z), (30, Pauli::X)]).unwrap();
        assert!(residual_class(&code, &truth, &truth).unwrap().is_trivial());

        // Adding a face boundary keeps the class trivial.
        let mut est = truth.clone();
        for &e in &code.primal.faces()[12] {
            est.ez.toggle(e);
        }
        for &e in &code.dual_tiling().faces()[6] {
            est.ex.toggle(e);
        }
        assert!(residual_class(&code, &truth, &est).unwrap().is_trivial());

        // Horizontal loop h(., 0) crosses cut_x once.
        let mut est = truth.clone();
        for x in 0..5 {
            est.ez.toggle(x);
        }
        let class = residual_class(&code, &truth, &est).unwrap();
        assert_eq!(class.z_bits, [true, false]);
        assert_eq!(class.x_bits, [false, false]);

        // Vertical dual loop through faces (0, y): the edges h(0, y).
        let mut est = truth.clone();
        for y in 0..5 {
            est.ex.toggle(y * 5);
        }
        let class = residual_class(&code, &truth, &est).unwrap();
        assert_eq!(class.x_bits, [false, true]);
    }

    #[test]
    fn mismatched_syndrome_is_rejected() {
        let code = square5();
        let truth = PauliErrorPair::from_paulis(50, [(3, Pauli::Z)]).unwrap();
        let est = PauliErrorPair::identity(50);
        assert!(matches!(
            residual_class(&code, &truth, &est),
            Err(Error::PreconditionViolation(_))
        ));
    }
}
