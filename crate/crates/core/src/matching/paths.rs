use std::cmp::Reverse;
use std::collections::BinaryHeap;

use fixedbitset::FixedBitSet;

use crate::tiling::Tiling;

const NO_EDGE: usize = usize::MAX;

/// Edges whose qubit is already suspected in error. Erased edges cost 0 in
/// the e-distance, all others cost 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ErasureSet {
    pub erased: FixedBitSet,
}

impl ErasureSet {
    pub fn none(edges: usize) -> Self {
        ErasureSet {
            erased: FixedBitSet::with_capacity(edges),
        }
    }

    pub fn all(edges: usize) -> Self {
        let mut erased = FixedBitSet::with_capacity(edges);
        erased.insert_range(..);
        ErasureSet { erased }
    }

    pub fn from_set(erased: FixedBitSet) -> Self {
        ErasureSet { erased }
    }

    pub fn is_erased(&self, e: usize) -> bool {
        self.erased.contains(e)
    }

    pub fn len(&self) -> usize {
        self.erased.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.erased.is_clear()
    }

    /// Non-erased edges of `x`.
    pub fn cost(&self, x: &FixedBitSet) -> usize {
        x.difference(&self.erased).count()
    }
}

/// Single-source e-shortest paths.
///
/// Paths are ranked by e-length first and total edge count second; the
/// predecessor of each vertex is the smallest-index edge that is tight under
/// that order. The second key keeps predecessor chains acyclic when erased
/// edges tie at zero cost.
#[derive(Clone, Debug)]
pub struct ShortestPaths {
    pub source: usize,
    pub dist: Vec<u32>,
    hops: Vec<u32>,
    pred: Vec<usize>,
}

impl ShortestPaths {
    /// Predecessor edge on the chosen geodesic, `None` at the source.
    pub fn pred_edge(&self, v: usize) -> Option<usize> {
        (self.pred[v] != NO_EDGE).then_some(self.pred[v])
    }

    pub fn hops(&self, v: usize) -> u32 {
        self.hops[v]
    }

    /// Edges of the chosen geodesic from the source to `target`.
    pub fn path_to(&self, graph: &Tiling, target: usize) -> Vec<usize> {
        let mut path = Vec::with_capacity(self.hops[target] as usize);
        let mut v = target;
        while let Some(e) = self.pred_edge(v) {
            path.push(e);
            v = graph.edge(e).other(v);
        }
        path.reverse();
        path
    }
}

pub fn e_shortest_paths(graph: &Tiling, source: usize, erasure: &ErasureSet) -> ShortestPaths {
    let n = graph.vertex_count();
    let mut key = vec![u64::MAX; n];
    let mut pred = vec![NO_EDGE; n];
    let mut done = vec![false; n];
    let mut heap = BinaryHeap::new();
    key[source] = 0;
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((k, u))) = heap.pop() {
        if done[u] || k != key[u] {
            continue;
        }
        done[u] = true;
        for &(e, w) in graph.incident(u) {
            if done[w] {
                continue;
            }
            let step = if erasure.is_erased(e) { 1 } else { (1u64 << 32) | 1 };
            let nk = k + step;
            if nk < key[w] {
                key[w] = nk;
                pred[w] = e;
                heap.push(Reverse((nk, w)));
            } else if nk == key[w] && e < pred[w] {
                pred[w] = e;
            }
        }
    }
    ShortestPaths {
        source,
        dist: key.iter().map(|&k| (k >> 32) as u32).collect(),
        hops: key.iter().map(|&k| (k & 0xffff_ffff) as u32).collect(),
        pred,
    }
}

/// An e-geodesic from `u` to `v` as an edge list in walking order.
pub fn geodesic(graph: &Tiling, u: usize, v: usize, erasure: &ErasureSet) -> Vec<usize> {
    e_shortest_paths(graph, u, erasure).path_to(graph, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::build_square_torus;

    #[test]
    fn grid_and_wrap_distances() {
        let t = build_square_torus(5).unwrap();
        let sp = e_shortest_paths(&t, 0, &ErasureSet::none(50));
        assert_eq!(sp.dist[2], 2);
        assert_eq!(sp.dist[4], 1);
        assert_eq!(sp.dist[12], 4);
        assert_eq!(sp.dist[0], 0);
    }

    #[test]
    fn erased_path_is_free() {
        let t = build_square_torus(5).unwrap();
        // h(0,0), h(1,0), h(2,0)
        let e = ErasureSet::from_set(t.edge_set([0, 1, 2]));
        let sp = e_shortest_paths(&t, 0, &e);
        assert_eq!(sp.dist[3], 0);
        let path = sp.path_to(&t, 3);
        assert_eq!(path, vec![0, 1, 2]);
        assert_eq!(e.cost(&t.edge_set(path)), 0);
    }

    #[test]
    fn geodesics() {
        let t = build_square_torus(5).unwrap();
        let none = ErasureSet::none(50);
        assert_eq!(geodesic(&t, 0, 1, &none), vec![0]);
        // (0,0) -> (0,2): v(0,0), v(0,1)
        assert_eq!(geodesic(&t, 0, 10, &none), vec![25, 30]);
    }

    #[test]
    fn geodesic_prefers_small_edge_index() {
        let t = build_square_torus(5).unwrap();
        // (0,0) -> (1,1): h(0,0) v(1,0) or v(0,0) h(0,1); the last edge into
        // (1,1) is the smaller of v(1,0) = 26 and h(0,1) = 5.
        let path = geodesic(&t, 0, 6, &ErasureSet::none(50));
        assert_eq!(path, vec![25, 5]);
    }
}
