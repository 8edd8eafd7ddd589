use super::{DistanceGraph, Matching};
use crate::error::{Error, Result};

pub const BRUTEFORCE_LIMIT: usize = 12;

/// Exhaustive minimum over all `(n-1)!!` perfect matchings. The first
/// optimum in lexicographic pair order wins.
pub fn mwpm_bruteforce(k: &DistanceGraph) -> Result<Matching> {
    let n = k.len();
    if n > BRUTEFORCE_LIMIT {
        return Err(Error::SizeLimit {
            nodes: n,
            limit: BRUTEFORCE_LIMIT,
        });
    }
    if n % 2 == 1 {
        return Err(Error::NoPerfectMatching { nodes: n });
    }
    let mut used = vec![false; n];
    let mut current = Vec::with_capacity(n / 2);
    let mut best: Option<(u64, Vec<(usize, usize)>)> = None;
    search(k, &mut used, &mut current, 0, &mut best);
    let (_, pairs) = best.unwrap_or_default();
    Ok(Matching::from_pairs(k, pairs))
}

fn search(
    k: &DistanceGraph,
    used: &mut [bool],
    current: &mut Vec<(usize, usize)>,
    weight: u64,
    best: &mut Option<(u64, Vec<(usize, usize)>)>,
) {
    let Some(i) = used.iter().position(|&u| !u) else {
        if best.as_ref().is_none_or(|(w, _)| weight < *w) {
            *best = Some((weight, current.clone()));
        }
        return;
    };
    used[i] = true;
    for j in i + 1..used.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        current.push((i, j));
        search(k, used, current, weight + u64::from(k.weight(i, j)), best);
        current.pop();
        used[j] = false;
    }
    used[i] = false;
}
