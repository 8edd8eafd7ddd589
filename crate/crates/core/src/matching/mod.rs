//! Distance graphs over syndrome vertices, minimum-weight perfect matching,
//! and geodesic recovery.

mod blossom;
mod brute;
mod paths;

pub use blossom::max_weight_matching;
pub use brute::{mwpm_bruteforce, BRUTEFORCE_LIMIT};
pub use paths::{e_shortest_paths, geodesic, ErasureSet, ShortestPaths};

use crate::error::{Error, Result};
use crate::tiling::Tiling;

/// Complete graph on a vertex set with integer weights.
///
/// Built from a tiling, row `i` of `paths` holds the shortest-path tree
/// rooted at `nodes[i]`, from which geodesics are read back.
#[derive(Clone, Debug)]
pub struct DistanceGraph {
    pub nodes: Vec<usize>,
    weights: Vec<u32>,
    paths: Vec<ShortestPaths>,
}

impl DistanceGraph {
    /// A bare weighted complete graph on nodes `0..n` with no geodesic data.
    /// Only the upper triangle of `weights` is read.
    pub fn from_matrix(weights: &[Vec<u32>]) -> Self {
        let n = weights.len();
        let mut flat = vec![0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                flat[i * n + j] = weights[i][j];
                flat[j * n + i] = weights[i][j];
            }
        }
        DistanceGraph {
            nodes: (0..n).collect(),
            weights: flat,
            paths: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight(&self, i: usize, j: usize) -> u32 {
        self.weights[i * self.nodes.len() + j]
    }

    /// Geodesic between `nodes[i]` and `nodes[j]`.
    pub fn geodesic(&self, graph: &Tiling, i: usize, j: usize) -> Option<Vec<usize>> {
        self.paths.get(i).map(|sp| sp.path_to(graph, self.nodes[j]))
    }

    /// `i,j,weight` rows for `i < j`.
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["i", "j", "weight"])?;
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                w.write_record([i.to_string(), j.to_string(), self.weight(i, j).to_string()])?;
            }
        }
        w.flush()?;
        Ok(())
    }
}

/// Complete graph on `s` weighted by e-distance; one shortest-path sweep
/// per node.
pub fn build_distance_graph(
    graph: &Tiling,
    s: &[usize],
    erasure: &ErasureSet,
) -> Result<DistanceGraph> {
    if s.len() % 2 == 1 {
        return Err(Error::InvalidSyndrome { len: s.len() });
    }
    let n = s.len();
    let paths: Vec<ShortestPaths> = s
        .iter()
        .map(|&src| e_shortest_paths(graph, src, erasure))
        .collect();
    let mut weights = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            weights[i * n + j] = paths[i].dist[s[j]];
        }
    }
    Ok(DistanceGraph {
        nodes: s.to_vec(),
        weights,
        paths,
    })
}

/// A perfect matching given as pairs `(i, j)` of node positions, `i < j`,
/// sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
    pub total_weight: u64,
}

impl Matching {
    pub(crate) fn from_pairs(k: &DistanceGraph, mut pairs: Vec<(usize, usize)>) -> Self {
        for p in pairs.iter_mut() {
            if p.0 > p.1 {
                *p = (p.1, p.0);
            }
        }
        pairs.sort_unstable();
        let total_weight = pairs.iter().map(|&(i, j)| u64::from(k.weight(i, j))).sum();
        Matching {
            pairs,
            total_weight,
        }
    }

    /// Every node `0..n` appears in exactly one pair.
    pub fn is_perfect(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for &(i, j) in &self.pairs {
            if i >= n || j >= n || i == j || seen[i] || seen[j] {
                return false;
            }
            seen[i] = true;
            seen[j] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

/// Minimum-weight perfect matching of the complete graph `k`.
///
/// Weights are reflected as `max + 1 - w` and handed to the blossom
/// maximiser in maximum-cardinality mode, so zero weights are ordinary
/// positive edges there.
pub fn mwpm(k: &DistanceGraph) -> Result<Matching> {
    let n = k.len();
    if n % 2 == 1 {
        return Err(Error::NoPerfectMatching { nodes: n });
    }
    if n == 0 {
        return Ok(Matching {
            pairs: Vec::new(),
            total_weight: 0,
        });
    }
    let max = k.weights.iter().copied().max().unwrap_or(0) as i64;
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j, max + 1 - k.weight(i, j) as i64));
        }
    }
    let mate = max_weight_matching(n, &edges, true);
    let mut pairs = Vec::with_capacity(n / 2);
    for (i, m) in mate.iter().enumerate() {
        match m {
            Some(j) if *j > i => pairs.push((i, *j)),
            Some(_) => {}
            None => return Err(Error::NoPerfectMatching { nodes: n }),
        }
    }
    Ok(Matching::from_pairs(k, pairs))
}

/// Pairing obtained by repeatedly matching the globally closest pair.
/// Used as an upper bound in tests.
pub fn greedy_matching(k: &DistanceGraph) -> Matching {
    let n = k.len();
    let mut cand: Vec<(u32, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            cand.push((k.weight(i, j), i, j));
        }
    }
    cand.sort_unstable();
    let mut used = vec![false; n];
    let mut pairs = Vec::new();
    for (_, i, j) in cand {
        if !used[i] && !used[j] {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
    }
    Matching::from_pairs(k, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tiling::build_square_torus;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn four_node_example() -> DistanceGraph {
        // w(1,2)=1, w(3,4)=1, w(1,3)=2, w(2,4)=2, w(1,4)=3, w(2,3)=3
        DistanceGraph::from_matrix(&[
            vec![0, 1, 2, 3],
            vec![1, 0, 3, 2],
            vec![2, 3, 0, 1],
            vec![3, 2, 1, 0],
        ])
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32) -> DistanceGraph {
        let mut w = vec![vec![0; n]; n];
        for i in 0..n {
            for j in i + 1..n {
                w[i][j] = rng.gen_range(lo..=hi);
                w[j][i] = w[i][j];
            }
        }
        DistanceGraph::from_matrix(&w)
    }

    #[test]
    fn enumerated_four_node_optimum() {
        // The three perfect matchings weigh 1+1, 2+2 and 3+3.
        let k = four_node_example();
        let m = mwpm(&k).unwrap();
        assert_eq!(m.pairs, vec![(0, 1), (2, 3)]);
        assert_eq!(m.total_weight, 2);
        assert_eq!(mwpm_bruteforce(&k).unwrap().total_weight, 2);
    }

    #[test]
    fn two_nodes_and_empty() {
        let k = DistanceGraph::from_matrix(&[vec![0, 7], vec![7, 0]]);
        assert_eq!(mwpm(&k).unwrap().pairs, vec![(0, 1)]);
        assert_eq!(mwpm_bruteforce(&k).unwrap().pairs, vec![(0, 1)]);
        let e = DistanceGraph::from_matrix(&[]);
        assert_eq!(mwpm(&e).unwrap().total_weight, 0);
    }

    #[test]
    fn odd_node_count_has_no_perfect_matching() {
        let k = DistanceGraph::from_matrix(&[vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
        assert!(matches!(mwpm(&k), Err(Error::NoPerfectMatching { nodes: 3 })));
    }

    #[test]
    fn zero_weights_are_fine() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = 2 * rng.gen_range(1..=5);
            let k = random_graph(&mut rng, n, 0, 2);
            let m = mwpm(&k).unwrap();
            assert!(m.is_perfect(n));
            assert_eq!(m.total_weight, mwpm_bruteforce(&k).unwrap().total_weight);
        }
    }

    #[test]
    fn distance_graph_basics() {
        let t = build_square_torus(5).unwrap();
        let none = ErasureSet::none(50);
        assert!(build_distance_graph(&t, &[], &none).unwrap().is_empty());
        let k = build_distance_graph(&t, &[0, 1], &none).unwrap();
        assert_eq!(k.weight(0, 1), 1);
        assert_eq!(k.geodesic(&t, 0, 1), Some(vec![0]));
        let all = ErasureSet::all(50);
        let k = build_distance_graph(&t, &[0, 7, 13, 24], &all).unwrap();
        assert!((0..4).all(|i| (0..4).all(|j| k.weight(i, j) == 0)));
        assert!(matches!(
            build_distance_graph(&t, &[0, 1, 2], &none),
            Err(Error::InvalidSyndrome { len: 3 })
        ));
    }

    #[test]
    fn distance_graph_csv() {
        let k = four_node_example();
        let mut buf = Vec::new();
        k.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("i,j,weight\n0,1,1\n0,2,2\n"));
        assert_eq!(text.lines().count(), 7);
    }

    proptest! {
        #[test]
        fn mwpm_matches_bruteforce(seed in any::<u64>(), half in 1usize..=5) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let k = random_graph(&mut rng, 2 * half, 1, 20);
            let m = mwpm(&k).unwrap();
            prop_assert!(m.is_perfect(2 * half));
            prop_assert_eq!(m.total_weight, mwpm_bruteforce(&k).unwrap().total_weight);
            prop_assert!(m.total_weight <= greedy_matching(&k).total_weight);
        }

        #[test]
        fn e_distance_is_a_metric_below_graph_distance(
            seed in any::<u64>(),
            density in 0.0f64..0.6,
        ) {
            let t = build_square_torus(6).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let erasure = ErasureSet::from_set(
                t.edge_set((0..72).filter(|_| rng.gen_bool(density))),
            );
            let nodes: Vec<usize> = (0..36).collect();
            let ke = build_distance_graph(&t, &nodes, &erasure).unwrap();
            let kd = build_distance_graph(&t, &nodes, &ErasureSet::none(72)).unwrap();
            for i in 0..36 {
                prop_assert_eq!(ke.weight(i, i), 0);
                for j in 0..36 {
                    prop_assert!(ke.weight(i, j) <= kd.weight(i, j));
                    prop_assert_eq!(ke.weight(i, j), ke.weight(j, i));
                    for l in 0..36 {
                        prop_assert!(ke.weight(i, l) <= ke.weight(i, j) + ke.weight(j, l));
                    }
                }
            }
            // Geodesics realise the e-distance and join the right ends.
            for j in 1..36 {
                let path = ke.geodesic(&t, 0, j).unwrap();
                let set = t.edge_set(path.iter().copied());
                prop_assert_eq!(set.count_ones(..), path.len());
                prop_assert_eq!(erasure.cost(&set) as u32, ke.weight(0, j));
                prop_assert_eq!(crate::syndrome::boundary(&t, &set), vec![0, j]);
            }
        }
    }
}
