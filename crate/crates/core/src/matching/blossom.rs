//! Maximum-weight matching in general graphs by Edmonds' blossom method
//! with primal-dual updates, `O(n^3)`.
//!
//! The structure follows Galil's presentation as organised in Joris van
//! Rantwijk's reference implementation: vertices are `0..n`, non-trivial
//! blossoms `n..2n`, and edge `k` has endpoints `2k` and `2k + 1`. Vertex
//! duals are stored doubled so integer weights keep every quantity
//! integral.

const NONE: usize = usize::MAX;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Label {
    Free,
    S,
    T,
}

struct Blossom<'a> {
    n: usize,
    edges: &'a [(usize, usize, i64)],
    endpoint: Vec<usize>,
    neighbend: Vec<Vec<usize>>,
    mate: Vec<usize>,
    label: Vec<Label>,
    // breadcrumb used while scanning for a blossom base
    marked: Vec<bool>,
    labelend: Vec<usize>,
    inblossom: Vec<usize>,
    blossomparent: Vec<usize>,
    blossomchilds: Vec<Vec<usize>>,
    blossombase: Vec<usize>,
    blossomendps: Vec<Vec<usize>>,
    bestedge: Vec<usize>,
    blossombestedges: Vec<Option<Vec<usize>>>,
    unusedblossoms: Vec<usize>,
    dualvar: Vec<i64>,
    allowedge: Vec<bool>,
    queue: Vec<usize>,
}

/// Returns `mate[v]`, the partner of `v` or `None`. With `max_cardinality`
/// the matching maximises weight among maximum-cardinality matchings.
pub fn max_weight_matching(
    n: usize,
    edges: &[(usize, usize, i64)],
    max_cardinality: bool,
) -> Vec<Option<usize>> {
    if edges.is_empty() || n == 0 {
        return vec![None; n];
    }
    let mut b = Blossom::new(n, edges);
    b.solve(max_cardinality);
    b.mate
        .iter()
        .map(|&p| (p != NONE).then(|| b.endpoint[p]))
        .collect()
}

impl<'a> Blossom<'a> {
    fn new(n: usize, edges: &'a [(usize, usize, i64)]) -> Self {
        let nedge = edges.len();
        let maxweight = edges.iter().map(|e| e.2).max().unwrap_or(0).max(0);
        let mut endpoint = Vec::with_capacity(2 * nedge);
        let mut neighbend = vec![Vec::new(); n];
        for (k, &(i, j, _)) in edges.iter().enumerate() {
            debug_assert!(i != j && i < n && j < n);
            endpoint.push(i);
            endpoint.push(j);
            neighbend[i].push(2 * k + 1);
            neighbend[j].push(2 * k);
        }
        let mut dualvar = vec![maxweight; n];
        dualvar.extend(std::iter::repeat_n(0, n));
        let mut blossombase: Vec<usize> = (0..n).collect();
        blossombase.extend(std::iter::repeat_n(NONE, n));
        Blossom {
            n,
            edges,
            endpoint,
            neighbend,
            mate: vec![NONE; n],
            label: vec![Label::Free; 2 * n],
            marked: vec![false; 2 * n],
            labelend: vec![NONE; 2 * n],
            inblossom: (0..n).collect(),
            blossomparent: vec![NONE; 2 * n],
            blossomchilds: vec![Vec::new(); 2 * n],
            blossombase,
            blossomendps: vec![Vec::new(); 2 * n],
            bestedge: vec![NONE; 2 * n],
            blossombestedges: vec![None; 2 * n],
            unusedblossoms: (n..2 * n).rev().collect(),
            dualvar,
            allowedge: vec![false; nedge],
            queue: Vec::new(),
        }
    }

    /// Twice the slack of edge `k` (only meaningful between top-level blossoms).
    #[inline]
    fn slack(&self, k: usize) -> i64 {
        let (i, j, w) = self.edges[k];
        self.dualvar[i] + self.dualvar[j] - 2 * w
    }

    fn leaves(&self, b: usize, out: &mut Vec<usize>) {
        if b < self.n {
            out.push(b);
        } else {
            for &c in &self.blossomchilds[b] {
                self.leaves(c, out);
            }
        }
    }

    fn leaves_of(&self, b: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.leaves(b, &mut out);
        out
    }

    fn assign_label(&mut self, w: usize, t: Label, p: usize) {
        let mut w = w;
        let mut t = t;
        let mut p = p;
        loop {
            let b = self.inblossom[w];
            debug_assert!(self.label[w] == Label::Free && self.label[b] == Label::Free);
            self.label[w] = t;
            self.label[b] = t;
            self.labelend[w] = p;
            self.labelend[b] = p;
            self.bestedge[w] = NONE;
            self.bestedge[b] = NONE;
            match t {
                Label::S => {
                    let mut leaves = Vec::new();
                    self.leaves(b, &mut leaves);
                    self.queue.extend(leaves);
                    return;
                }
                Label::T => {
                    // The base of a T-blossom is the only vertex with an
                    // external mate; that mate becomes S.
                    let base = self.blossombase[b];
                    let mbase = self.mate[base];
                    debug_assert!(mbase != NONE);
                    w = self.endpoint[mbase];
                    t = Label::S;
                    p = mbase ^ 1;
                }
                Label::Free => unreachable!(),
            }
        }
    }

    /// Traces back from `v` and `w`; returns the base of a new blossom, or
    /// `NONE` if the two trees are disjoint (augmenting path).
    fn scan_blossom(&mut self, v: usize, w: usize) -> usize {
        let mut path = Vec::new();
        let mut base = NONE;
        let (mut v, mut w) = (v, w);
        while v != NONE || w != NONE {
            let mut b = self.inblossom[v];
            if self.marked[b] {
                base = self.blossombase[b];
                break;
            }
            debug_assert_eq!(self.label[b], Label::S);
            path.push(b);
            self.marked[b] = true;
            if self.labelend[b] == NONE {
                v = NONE;
            } else {
                v = self.endpoint[self.labelend[b]];
                b = self.inblossom[v];
                debug_assert_eq!(self.label[b], Label::T);
                v = self.endpoint[self.labelend[b]];
            }
            if w != NONE {
                std::mem::swap(&mut v, &mut w);
            }
        }
        for b in path {
            self.marked[b] = false;
        }
        base
    }

    fn add_blossom(&mut self, base: usize, k: usize) {
        let (mut v, mut w, _) = self.edges[k];
        let bb = self.inblossom[base];
        let mut bv = self.inblossom[v];
        let mut bw = self.inblossom[w];
        let b = self.unusedblossoms.pop().expect("blossom slots exhausted");
        self.blossombase[b] = base;
        self.blossomparent[b] = NONE;
        self.blossomparent[bb] = b;

        let mut childs = Vec::new();
        let mut endps = Vec::new();
        while bv != bb {
            self.blossomparent[bv] = b;
            childs.push(bv);
            endps.push(self.labelend[bv]);
            v = self.endpoint[self.labelend[bv]];
            bv = self.inblossom[v];
        }
        childs.push(bb);
        childs.reverse();
        endps.reverse();
        endps.push(2 * k);
        while bw != bb {
            self.blossomparent[bw] = b;
            childs.push(bw);
            endps.push(self.labelend[bw] ^ 1);
            w = self.endpoint[self.labelend[bw]];
            bw = self.inblossom[w];
        }
        debug_assert_eq!(self.label[bb], Label::S);
        self.label[b] = Label::S;
        self.labelend[b] = self.labelend[bb];
        self.dualvar[b] = 0;

        let mut leaves = Vec::new();
        for &c in &childs {
            self.leaves(c, &mut leaves);
        }
        for &lv in &leaves {
            if self.label[self.inblossom[lv]] == Label::T {
                // T-vertices become S inside the new S-blossom.
                self.queue.push(lv);
            }
            self.inblossom[lv] = b;
        }

        // Least-slack edges from the new blossom to neighbouring S-blossoms.
        let mut bestedgeto = vec![NONE; 2 * self.n];
        for &c in &childs {
            let nblist: Vec<usize> = match self.blossombestedges[c].take() {
                Some(list) => list,
                None => self
                    .leaves_of(c)
                    .into_iter()
                    .flat_map(|lv| self.neighbend[lv].iter().map(|&p| p / 2))
                    .collect(),
            };
            for k2 in nblist {
                let (i, j, _) = self.edges[k2];
                let far = if self.inblossom[j] == b { i } else { j };
                let bj = self.inblossom[far];
                if bj != b
                    && self.label[bj] == Label::S
                    && (bestedgeto[bj] == NONE || self.slack(k2) < self.slack(bestedgeto[bj]))
                {
                    bestedgeto[bj] = k2;
                }
            }
            self.bestedge[c] = NONE;
        }
        let list: Vec<usize> = bestedgeto.into_iter().filter(|&k2| k2 != NONE).collect();
        let mut best = NONE;
        for &k2 in &list {
            if best == NONE || self.slack(k2) < self.slack(best) {
                best = k2;
            }
        }
        self.bestedge[b] = best;
        self.blossombestedges[b] = Some(list);
        self.blossomchilds[b] = childs;
        self.blossomendps[b] = endps;
    }

    fn expand_blossom(&mut self, b: usize, endstage: bool) {
        let childs = self.blossomchilds[b].clone();
        for &s in &childs {
            self.blossomparent[s] = NONE;
            if s < self.n {
                self.inblossom[s] = s;
            } else if endstage && self.dualvar[s] == 0 {
                self.expand_blossom(s, endstage);
            } else {
                for lv in self.leaves_of(s) {
                    self.inblossom[lv] = s;
                }
            }
        }

        if !endstage && self.label[b] == Label::T {
            // Relabel the sub-blossoms of an expanding T-blossom, starting
            // from the child through which it got its label.
            let len = childs.len() as isize;
            let at = |v: &Vec<usize>, i: isize| v[i.rem_euclid(len) as usize];
            let entrychild = self.inblossom[self.endpoint[self.labelend[b] ^ 1]];
            let mut j = childs.iter().position(|&c| c == entrychild).unwrap() as isize;
            let (jstep, endptrick): (isize, usize) = if j & 1 == 1 {
                j -= len;
                (1, 0)
            } else {
                (-1, 1)
            };
            let endps = self.blossomendps[b].clone();
            let mut p = self.labelend[b];
            while j != 0 {
                // Relabel the T-sub-blossom.
                self.label[self.endpoint[p ^ 1]] = Label::Free;
                let q = at(&endps, j - endptrick as isize) ^ endptrick ^ 1;
                self.label[self.endpoint[q]] = Label::Free;
                self.assign_label(self.endpoint[p ^ 1], Label::T, p);
                // Step to the next S-sub-blossom and note its forward endpoint.
                self.allowedge[at(&endps, j - endptrick as isize) / 2] = true;
                j += jstep;
                p = at(&endps, j - endptrick as isize) ^ endptrick;
                // Step to the next T-sub-blossom.
                self.allowedge[p / 2] = true;
                j += jstep;
            }
            // Relabel the base T-sub-blossom without stepping through to its mate.
            let bv = at(&childs, j);
            self.label[self.endpoint[p ^ 1]] = Label::T;
            self.label[bv] = Label::T;
            self.labelend[self.endpoint[p ^ 1]] = p;
            self.labelend[bv] = p;
            self.bestedge[bv] = NONE;
            j += jstep;
            while at(&childs, j) != entrychild {
                // Sub-blossoms reachable from a neighbouring S-vertex outside
                // the expanding blossom get label T.
                let bv = at(&childs, j);
                if self.label[bv] == Label::S {
                    j += jstep;
                    continue;
                }
                let leaves = self.leaves_of(bv);
                let reached = leaves
                    .iter()
                    .copied()
                    .find(|&lv| self.label[lv] != Label::Free);
                if let Some(v) = reached {
                    debug_assert_eq!(self.label[v], Label::T);
                    debug_assert_eq!(self.inblossom[v], bv);
                    self.label[v] = Label::Free;
                    let mb = self.mate[self.blossombase[bv]];
                    self.label[self.endpoint[mb]] = Label::Free;
                    self.assign_label(v, Label::T, self.labelend[v]);
                }
                j += jstep;
            }
        }

        self.label[b] = Label::Free;
        self.labelend[b] = NONE;
        self.blossomchilds[b].clear();
        self.blossomendps[b].clear();
        self.blossombase[b] = NONE;
        self.blossombestedges[b] = None;
        self.bestedge[b] = NONE;
        self.unusedblossoms.push(b);
    }

    /// Flips matched and unmatched edges along the alternating path inside
    /// blossom `b` from `v` to the base, making `v` the new base.
    fn augment_blossom(&mut self, b: usize, v: usize) {
        let mut t = v;
        while self.blossomparent[t] != b {
            t = self.blossomparent[t];
        }
        if t >= self.n {
            self.augment_blossom(t, v);
        }
        let len = self.blossomchilds[b].len() as isize;
        let i = self.blossomchilds[b].iter().position(|&c| c == t).unwrap();
        let mut j = i as isize;
        let (jstep, endptrick): (isize, usize) = if i & 1 == 1 {
            j -= len;
            (1, 0)
        } else {
            (-1, 1)
        };
        while j != 0 {
            j += jstep;
            let t = self.blossomchilds[b][j.rem_euclid(len) as usize];
            let p = self.blossomendps[b][(j - endptrick as isize).rem_euclid(len) as usize]
                ^ endptrick;
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p]);
            }
            j += jstep;
            let t = self.blossomchilds[b][j.rem_euclid(len) as usize];
            if t >= self.n {
                self.augment_blossom(t, self.endpoint[p ^ 1]);
            }
            self.mate[self.endpoint[p]] = p ^ 1;
            self.mate[self.endpoint[p ^ 1]] = p;
        }
        self.blossomchilds[b].rotate_left(i);
        self.blossomendps[b].rotate_left(i);
        self.blossombase[b] = self.blossombase[self.blossomchilds[b][0]];
        debug_assert_eq!(self.blossombase[b], v);
    }

    fn augment_matching(&mut self, k: usize) {
        let (v, w, _) = self.edges[k];
        for (s0, p0) in [(v, 2 * k + 1), (w, 2 * k)] {
            let (mut s, mut p) = (s0, p0);
            loop {
                let bs = self.inblossom[s];
                debug_assert_eq!(self.label[bs], Label::S);
                if bs >= self.n {
                    self.augment_blossom(bs, s);
                }
                self.mate[s] = p;
                if self.labelend[bs] == NONE {
                    break;
                }
                let t = self.endpoint[self.labelend[bs]];
                let bt = self.inblossom[t];
                debug_assert_eq!(self.label[bt], Label::T);
                s = self.endpoint[self.labelend[bt]];
                let j = self.endpoint[self.labelend[bt] ^ 1];
                debug_assert_eq!(self.blossombase[bt], t);
                if bt >= self.n {
                    self.augment_blossom(bt, j);
                }
                self.mate[j] = self.labelend[bt];
                p = self.labelend[bt] ^ 1;
            }
        }
    }

    fn solve(&mut self, max_cardinality: bool) {
        let n = self.n;
        for _stage in 0..n {
            self.label.iter_mut().for_each(|l| *l = Label::Free);
            self.bestedge.iter_mut().for_each(|e| *e = NONE);
            for b in n..2 * n {
                self.blossombestedges[b] = None;
            }
            self.allowedge.iter_mut().for_each(|a| *a = false);
            self.queue.clear();
            for v in 0..n {
                if self.mate[v] == NONE && self.label[self.inblossom[v]] == Label::Free {
                    self.assign_label(v, Label::S, NONE);
                }
            }

            let mut augmented = false;
            loop {
                while let Some(v) = self.queue.pop() {
                    debug_assert_eq!(self.label[self.inblossom[v]], Label::S);
                    for idx in 0..self.neighbend[v].len() {
                        let p = self.neighbend[v][idx];
                        let k = p / 2;
                        let w = self.endpoint[p];
                        if self.inblossom[v] == self.inblossom[w] {
                            continue;
                        }
                        let mut kslack = 0;
                        if !self.allowedge[k] {
                            kslack = self.slack(k);
                            if kslack <= 0 {
                                self.allowedge[k] = true;
                            }
                        }
                        let bw = self.inblossom[w];
                        if self.allowedge[k] {
                            match self.label[bw] {
                                Label::Free => self.assign_label(w, Label::T, p ^ 1),
                                Label::S => {
                                    let base = self.scan_blossom(v, w);
                                    if base != NONE {
                                        self.add_blossom(base, k);
                                    } else {
                                        self.augment_matching(k);
                                        augmented = true;
                                        break;
                                    }
                                }
                                Label::T => {
                                    if self.label[w] == Label::Free {
                                        // w sits in a T-blossom and is now
                                        // reached from outside it.
                                        self.label[w] = Label::T;
                                        self.labelend[w] = p ^ 1;
                                    }
                                }
                            }
                        } else if self.label[bw] == Label::S {
                            let b = self.inblossom[v];
                            if self.bestedge[b] == NONE || kslack < self.slack(self.bestedge[b]) {
                                self.bestedge[b] = k;
                            }
                        } else if self.label[w] == Label::Free
                            && (self.bestedge[w] == NONE || kslack < self.slack(self.bestedge[w]))
                        {
                            self.bestedge[w] = k;
                        }
                    }
                    if augmented {
                        break;
                    }
                }
                if augmented {
                    break;
                }

                // No augmenting path under the current duals: pick the
                // smallest dual change (all quantities doubled).
                let mut deltatype = 0u8;
                let mut delta = 0i64;
                let mut deltaedge = NONE;
                let mut deltablossom = NONE;
                if !max_cardinality {
                    deltatype = 1;
                    delta = *self.dualvar[..n].iter().min().unwrap();
                }
                for v in 0..n {
                    if self.label[self.inblossom[v]] == Label::Free && self.bestedge[v] != NONE {
                        let d = self.slack(self.bestedge[v]);
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 2;
                            deltaedge = self.bestedge[v];
                        }
                    }
                }
                for b in 0..2 * n {
                    if self.blossomparent[b] == NONE
                        && self.label[b] == Label::S
                        && self.bestedge[b] != NONE
                    {
                        let kslack = self.slack(self.bestedge[b]);
                        debug_assert!(kslack % 2 == 0);
                        let d = kslack / 2;
                        if deltatype == 0 || d < delta {
                            delta = d;
                            deltatype = 3;
                            deltaedge = self.bestedge[b];
                        }
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE
                        && self.blossomparent[b] == NONE
                        && self.label[b] == Label::T
                        && (deltatype == 0 || self.dualvar[b] < delta)
                    {
                        delta = self.dualvar[b];
                        deltatype = 4;
                        deltablossom = b;
                    }
                }
                if deltatype == 0 {
                    // Maximum cardinality reached; final update keeps the
                    // duals verifiable.
                    debug_assert!(max_cardinality);
                    deltatype = 1;
                    delta = (*self.dualvar[..n].iter().min().unwrap()).max(0);
                }

                for v in 0..n {
                    match self.label[self.inblossom[v]] {
                        Label::S => self.dualvar[v] -= delta,
                        Label::T => self.dualvar[v] += delta,
                        Label::Free => {}
                    }
                }
                for b in n..2 * n {
                    if self.blossombase[b] != NONE && self.blossomparent[b] == NONE {
                        match self.label[b] {
                            Label::S => self.dualvar[b] += delta,
                            Label::T => self.dualvar[b] -= delta,
                            Label::Free => {}
                        }
                    }
                }

                match deltatype {
                    1 => break,
                    2 => {
                        self.allowedge[deltaedge] = true;
                        let (mut i, j, _) = self.edges[deltaedge];
                        if self.label[self.inblossom[i]] == Label::Free {
                            i = j;
                        }
                        debug_assert_eq!(self.label[self.inblossom[i]], Label::S);
                        self.queue.push(i);
                    }
                    3 => {
                        self.allowedge[deltaedge] = true;
                        let (i, _, _) = self.edges[deltaedge];
                        debug_assert_eq!(self.label[self.inblossom[i]], Label::S);
                        self.queue.push(i);
                    }
                    _ => self.expand_blossom(deltablossom, false),
                }
            }

            if !augmented {
                break;
            }
            // End of stage: expand S-blossoms whose dual dropped to zero.
            for b in n..2 * n {
                if self.blossomparent[b] == NONE
                    && self.blossombase[b] != NONE
                    && self.label[b] == Label::S
                    && self.dualvar[b] == 0
                {
                    self.expand_blossom(b, true);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mates(n: usize, edges: &[(usize, usize, i64)], maxcard: bool) -> Vec<Option<usize>> {
        max_weight_matching(n, edges, maxcard)
    }

    fn opt(v: &[i64]) -> Vec<Option<usize>> {
        v.iter().map(|&x| (x >= 0).then_some(x as usize)).collect()
    }

    #[test]
    fn trivial_cases() {
        assert_eq!(mates(0, &[], false), vec![]);
        assert_eq!(mates(2, &[(0, 1, 1)], false), vec![Some(1), Some(0)]);
        assert_eq!(
            mates(4, &[(1, 2, 10), (2, 3, 11)], false),
            opt(&[-1, -1, 3, 2])
        );
    }

    #[test]
    fn cardinality_versus_weight() {
        let e = [(1, 2, 5), (2, 3, 11), (3, 4, 5)];
        assert_eq!(mates(5, &e, false), opt(&[-1, -1, 3, 2, -1]));
        assert_eq!(mates(5, &e, true), opt(&[-1, 2, 1, 4, 3]));
    }

    #[test]
    fn negative_weights() {
        let e = [(1, 2, 2), (1, 3, -2), (2, 3, 1), (2, 4, -1), (3, 4, -6)];
        assert_eq!(mates(5, &e, false), opt(&[-1, 2, 1, -1, -1]));
        assert_eq!(mates(5, &e, true), opt(&[-1, 3, 4, 1, 2]));
    }

    #[test]
    fn s_blossoms() {
        let e = [(1, 2, 8), (1, 3, 9), (2, 3, 10), (3, 4, 7)];
        assert_eq!(mates(5, &e, false), opt(&[-1, 2, 1, 4, 3]));
        let e = [(1, 2, 8), (1, 3, 9), (2, 3, 10), (3, 4, 7), (1, 6, 5), (4, 5, 6)];
        assert_eq!(mates(7, &e, false), opt(&[-1, 6, 3, 2, 5, 4, 1]));
    }

    #[test]
    fn s_t_relabel() {
        let e = [(1, 2, 9), (1, 3, 8), (2, 3, 10), (1, 4, 5), (4, 5, 4), (1, 6, 3)];
        assert_eq!(mates(7, &e, false), opt(&[-1, 6, 3, 2, 5, 4, 1]));
        let e = [(1, 2, 9), (1, 3, 8), (2, 3, 10), (1, 4, 5), (4, 5, 3), (3, 6, 4)];
        assert_eq!(mates(7, &e, false), opt(&[-1, 2, 1, 6, 5, 4, 3]));
    }

    #[test]
    fn nested_blossoms() {
        let e = [(1, 2, 9), (1, 3, 9), (2, 3, 10), (2, 4, 8), (3, 5, 8), (4, 5, 10), (5, 6, 6)];
        assert_eq!(mates(7, &e, false), opt(&[-1, 3, 4, 1, 2, 6, 5]));
        let e = [
            (1, 2, 10),
            (1, 7, 10),
            (2, 3, 12),
            (3, 4, 20),
            (3, 5, 20),
            (4, 5, 25),
            (5, 6, 10),
            (6, 7, 10),
            (7, 8, 8),
        ];
        assert_eq!(mates(9, &e, false), opt(&[-1, 2, 1, 4, 3, 6, 5, 8, 7]));
        let e = [
            (1, 2, 8),
            (1, 3, 8),
            (2, 3, 10),
            (2, 4, 12),
            (3, 5, 12),
            (4, 5, 14),
            (4, 6, 12),
            (5, 7, 12),
            (6, 7, 14),
            (7, 8, 12),
        ];
        assert_eq!(mates(9, &e, false), opt(&[-1, 2, 1, 5, 6, 3, 4, 8, 7]));
    }

    #[test]
    fn t_blossom_expansion() {
        let e = [(1, 2, 23), (1, 5, 22), (1, 6, 15), (2, 3, 25), (3, 4, 22), (4, 5, 25), (4, 8, 14), (5, 7, 13)];
        assert_eq!(mates(9, &e, false), opt(&[-1, 6, 3, 2, 8, 7, 1, 5, 4]));
        let e = [(1, 2, 19), (1, 3, 20), (1, 8, 8), (2, 3, 25), (2, 4, 18), (3, 5, 18), (4, 5, 13), (4, 7, 7), (5, 6, 7)];
        assert_eq!(mates(9, &e, false), opt(&[-1, 8, 3, 2, 7, 6, 5, 4, 1]));
    }

    #[test]
    fn nasty_expansions() {
        let base = [(1, 2, 45), (1, 5, 45), (2, 3, 50), (3, 4, 45), (4, 5, 50), (1, 6, 30), (3, 9, 35)];
        let want = opt(&[-1, 6, 3, 2, 8, 7, 1, 5, 4, 10, 9]);
        for tail in [
            [(4, 8, 35), (5, 7, 26), (9, 10, 5)],
            [(4, 8, 26), (5, 7, 40), (9, 10, 5)],
            [(4, 8, 28), (5, 7, 26), (9, 10, 5)],
        ] {
            let e: Vec<_> = base.iter().chain(tail.iter()).copied().collect();
            assert_eq!(mates(11, &e, false), want);
        }
        let e = [
            (1, 2, 45),
            (1, 7, 45),
            (2, 3, 50),
            (3, 4, 45),
            (4, 5, 95),
            (4, 6, 94),
            (5, 6, 94),
            (6, 7, 50),
            (1, 8, 30),
            (3, 11, 35),
            (5, 9, 36),
            (7, 10, 26),
            (11, 12, 5),
        ];
        assert_eq!(
            mates(13, &e, false),
            opt(&[-1, 8, 3, 2, 6, 9, 4, 10, 1, 5, 7, 12, 11])
        );
        let e = [
            (1, 2, 40),
            (1, 3, 40),
            (2, 3, 60),
            (2, 4, 55),
            (3, 5, 55),
            (4, 5, 50),
            (1, 8, 15),
            (5, 7, 30),
            (7, 6, 10),
            (8, 10, 10),
            (4, 9, 30),
        ];
        assert_eq!(
            mates(11, &e, false),
            opt(&[-1, 2, 1, 5, 9, 3, 7, 6, 10, 4, 8])
        );
    }
}
