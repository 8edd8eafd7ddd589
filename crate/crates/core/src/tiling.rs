//! Combinatorial tilings of the torus.
//!
//! A [`Tiling`] is a cellular embedding of a simple graph on the flat torus
//! `[0, size)^2`. Qubits live on edges; the primal graph carries the
//! vertex (site) checks and the dual graph carries the face (plaquette)
//! checks. Edge `i` of a tiling and edge `i` of its dual are the same qubit.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Smallest lattice parameter that yields a simple graph.
pub const MIN_SIZE: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Square,
    Triangular,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::Square => "square",
            Family::Triangular => "triangular",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(Family::Square),
            "triangular" => Ok(Family::Triangular),
            other => Err(Error::Parse(format!("unknown tiling family '{other}'"))),
        }
    }
}

/// An edge `a -- b`. The wrap flags record whether the straight segment
/// between the endpoints crosses the `x = 0` or `y = 0` seam of the
/// fundamental domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub wrap_x: bool,
    pub wrap_y: bool,
}

impl Edge {
    pub fn other(&self, v: usize) -> usize {
        if self.a == v {
            self.b
        } else {
            self.a
        }
    }
}

/// The first broken invariant found by [`Tiling::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    EndpointOutOfRange { edge: usize },
    FaceEdgeOutOfRange { face: usize, edge: usize },
    Loop { edge: usize },
    MultipleEdge { first: usize, second: usize },
    /// Some vertex is hit an odd number of times by a face's edges,
    /// i.e. the face boundary is not closed.
    OpenFace { face: usize, vertex: usize },
    EdgeFaceCount { edge: usize, count: usize },
    EulerCharacteristic { chi: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EndpointOutOfRange { edge } => {
                write!(f, "edge {edge} has an endpoint out of range")
            }
            Violation::FaceEdgeOutOfRange { face, edge } => {
                write!(f, "face {face} references missing edge {edge}")
            }
            Violation::Loop { edge } => write!(f, "edge {edge} is a loop"),
            Violation::MultipleEdge { first, second } => {
                write!(f, "edges {first} and {second} join the same vertices")
            }
            Violation::OpenFace { face, vertex } => {
                write!(f, "boundary of face {face} is not closed at vertex {vertex}")
            }
            Violation::EdgeFaceCount { edge, count } => {
                write!(f, "edge {edge} lies on {count} faces instead of 2")
            }
            Violation::EulerCharacteristic { chi } => {
                write!(f, "Euler characteristic is {chi}, a torus has 0")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Tiling {
    family: Family,
    size: usize,
    is_dual: bool,
    positions: Vec<[f64; 2]>,
    edges: Vec<Edge>,
    faces: Vec<Vec<usize>>,
    // vertex -> (edge, neighbour), ascending by edge index
    incidence: Vec<Vec<(usize, usize)>>,
}

impl Tiling {
    /// Assembles a tiling from raw parts without checking any invariant.
    /// Use [`Tiling::validate`] to check the result.
    pub fn from_parts(
        family: Family,
        size: usize,
        positions: Vec<[f64; 2]>,
        edges: Vec<Edge>,
        faces: Vec<Vec<usize>>,
    ) -> Self {
        let mut incidence = vec![Vec::new(); positions.len()];
        for (i, e) in edges.iter().enumerate() {
            if e.a < positions.len() && e.b < positions.len() {
                incidence[e.a].push((i, e.b));
                if e.b != e.a {
                    incidence[e.b].push((i, e.a));
                }
            }
        }
        Tiling {
            family,
            size,
            is_dual: false,
            positions,
            edges,
            faces,
            incidence,
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// True for a tiling produced by [`dual`].
    pub fn is_dual(&self) -> bool {
        self.is_dual
    }

    pub fn vertex_count(&self) -> usize {
        self.positions.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn position(&self, v: usize) -> [f64; 2] {
        self.positions[v]
    }

    /// Incident `(edge, neighbour)` pairs of `v`, sorted by edge index.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// Edge-index set of the given edges, sized for this tiling.
    pub fn edge_set<I: IntoIterator<Item = usize>>(&self, edges: I) -> FixedBitSet {
        let mut set = FixedBitSet::with_capacity(self.edge_count());
        for e in edges {
            set.insert(e);
        }
        set
    }

    /// Number of faces each edge lies on.
    fn face_multiplicity(&self) -> Vec<usize> {
        let mut count = vec![0usize; self.edges.len()];
        for face in &self.faces {
            for &e in face {
                if e < count.len() {
                    count[e] += 1;
                }
            }
        }
        count
    }

    /// Checks the tiling invariants in a fixed order and reports the first
    /// violation.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.vertex_count();
        for (i, e) in self.edges.iter().enumerate() {
            if e.a >= n || e.b >= n {
                return Err(Violation::EndpointOutOfRange { edge: i });
            }
        }
        for (f, face) in self.faces.iter().enumerate() {
            if let Some(&e) = face.iter().find(|&&e| e >= self.edges.len()) {
                return Err(Violation::FaceEdgeOutOfRange { face: f, edge: e });
            }
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.a == e.b {
                return Err(Violation::Loop { edge: i });
            }
        }
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (i, e) in self.edges.iter().enumerate() {
            let key = (e.a.min(e.b), e.a.max(e.b));
            if let Some(&first) = seen.get(&key) {
                return Err(Violation::MultipleEdge { first, second: i });
            }
            seen.insert(key, i);
        }
        let mut parity = vec![false; n];
        for (f, face) in self.faces.iter().enumerate() {
            for &e in face {
                parity[self.edges[e].a] ^= true;
                parity[self.edges[e].b] ^= true;
            }
            let open = face
                .iter()
                .flat_map(|&e| [self.edges[e].a, self.edges[e].b])
                .find(|&v| parity[v]);
            if let Some(vertex) = open {
                return Err(Violation::OpenFace { face: f, vertex });
            }
        }
        for (edge, count) in self.face_multiplicity().into_iter().enumerate() {
            if count != 2 {
                return Err(Violation::EdgeFaceCount { edge, count });
            }
        }
        let chi = self.euler_characteristic();
        if chi != 0 {
            return Err(Violation::EulerCharacteristic { chi });
        }
        Ok(())
    }

    /// Writes the edge list as `edge_id,va,vb,wrap_x,wrap_y`.
    pub fn write_edges_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["edge_id", "va", "vb", "wrap_x", "wrap_y"])?;
        for (i, e) in self.edges.iter().enumerate() {
            w.write_record([
                i.to_string(),
                e.a.to_string(),
                e.b.to_string(),
                u8::from(e.wrap_x).to_string(),
                u8::from(e.wrap_y).to_string(),
            ])?;
        }
        w.flush()?;
        Ok(())
    }
}

fn check_size(size: usize) -> Result<()> {
    if size < MIN_SIZE {
        return Err(Error::InvalidParameter(format!(
            "lattice size must be at least {MIN_SIZE} to avoid multiple edges, got {size}"
        )));
    }
    Ok(())
}

fn grid_positions(n: usize) -> Vec<[f64; 2]> {
    (0..n * n)
        .map(|i| [(i % n) as f64, (i / n) as f64])
        .collect()
}

/// Square tiling of the `L x L` torus.
///
/// Vertex `(x, y)` has index `y*L + x`. Horizontal edge `h(x, y)` joins
/// `(x, y)` and `(x+1, y)` and has index `y*L + x`; vertical edge `v(x, y)`
/// joins `(x, y)` and `(x, y+1)` and has index `L^2 + y*L + x`. Face
/// `(x, y)` is the unit square with lower-left corner `(x, y)`.
pub fn build_square_torus(l: usize) -> Result<Tiling> {
    check_size(l)?;
    let n = l * l;
    let vid = |x: usize, y: usize| (y % l) * l + (x % l);
    let mut edges = Vec::with_capacity(2 * n);
    for y in 0..l {
        for x in 0..l {
            edges.push(Edge {
                a: vid(x, y),
                b: vid(x + 1, y),
                wrap_x: x == l - 1,
                wrap_y: false,
            });
        }
    }
    for y in 0..l {
        for x in 0..l {
            edges.push(Edge {
                a: vid(x, y),
                b: vid(x, y + 1),
                wrap_x: false,
                wrap_y: y == l - 1,
            });
        }
    }
    let h = |x: usize, y: usize| vid(x, y);
    let v = |x: usize, y: usize| n + vid(x, y);
    let faces = (0..n)
        .map(|i| {
            let (x, y) = (i % l, i / l);
            vec![h(x, y), v(x + 1, y), h(x, y + 1), v(x, y)]
        })
        .collect();
    Ok(Tiling::from_parts(Family::Square, l, grid_positions(l), edges, faces))
}

/// Index of the square-torus edge whose midpoint sits at `(x2/2, y2/2)`,
/// i.e. in doubled coordinates. Horizontal edges have midpoints
/// `(x+0.5, y)`, vertical ones `(x, y+0.5)`.
pub fn square_edge_at(l: usize, x2: usize, y2: usize) -> Option<usize> {
    let (x2, y2) = (x2 % (2 * l), y2 % (2 * l));
    match (x2 % 2, y2 % 2) {
        (1, 0) => Some((y2 / 2) * l + x2 / 2),
        (0, 1) => Some(l * l + (y2 / 2) * l + x2 / 2),
        _ => None,
    }
}

/// Triangular tiling of the `m x m` torus: the Cayley graph of `Z_m^2`
/// with generators `±(1,0), ±(0,1), ±(1,-1)`.
///
/// Edge families `a(x,y) = (x,y)--(x+1,y)`, `b(x,y) = (x,y)--(x,y+1)` and
/// `c(x,y) = (x,y)--(x+1,y-1)` are indexed `k*m^2 + y*m + x` for
/// `k = 0, 1, 2`. Face `y*m + x` is the triangle
/// `{a(x,y), b(x+1,y-1), c(x,y)}`, face `m^2 + y*m + x` is
/// `{c(x,y), a(x,y-1), b(x,y-1)}`.
pub fn build_triangular_torus(m: usize) -> Result<Tiling> {
    check_size(m)?;
    let n = m * m;
    let vid = |x: usize, y: usize| (y % m) * m + (x % m);
    let mut edges = Vec::with_capacity(3 * n);
    for y in 0..m {
        for x in 0..m {
            edges.push(Edge {
                a: vid(x, y),
                b: vid(x + 1, y),
                wrap_x: x == m - 1,
                wrap_y: false,
            });
        }
    }
    for y in 0..m {
        for x in 0..m {
            edges.push(Edge {
                a: vid(x, y),
                b: vid(x, y + 1),
                wrap_x: false,
                wrap_y: y == m - 1,
            });
        }
    }
    for y in 0..m {
        for x in 0..m {
            edges.push(Edge {
                a: vid(x, y),
                b: vid(x + 1, y + m - 1),
                wrap_x: x == m - 1,
                wrap_y: y == 0,
            });
        }
    }
    let ea = |x: usize, y: usize| vid(x, y);
    let eb = |x: usize, y: usize| n + vid(x, y);
    let ec = |x: usize, y: usize| 2 * n + vid(x, y);
    let mut faces = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (x, y) = (i % m, i / m);
        faces.push(vec![ea(x, y), eb(x + 1, y + m - 1), ec(x, y)]);
    }
    for i in 0..n {
        let (x, y) = (i % m, i / m);
        faces.push(vec![ec(x, y), ea(x, y + m - 1), eb(x, y + m - 1)]);
    }
    Ok(Tiling::from_parts(
        Family::Triangular,
        m,
        grid_positions(m),
        edges,
        faces,
    ))
}

pub fn build_torus(family: Family, size: usize) -> Result<Tiling> {
    match family {
        Family::Square => build_square_torus(size),
        Family::Triangular => build_triangular_torus(size),
    }
}

fn min_image(d: f64, period: f64) -> f64 {
    d - period * (d / period).round()
}

fn reduce(x: f64, period: f64) -> f64 {
    let r = x.rem_euclid(period);
    if r >= period {
        0.0
    } else {
        r
    }
}

/// The dual tiling, with primal edge `i` identified with dual edge `i`.
#[derive(Clone, Debug)]
pub struct DualView {
    pub tiling: Tiling,
}

impl DualView {
    /// Dual edge carrying the same qubit as primal edge `i`.
    pub fn dual_edge(&self, primal_edge: usize) -> usize {
        primal_edge
    }

    pub fn primal_edge(&self, dual_edge: usize) -> usize {
        dual_edge
    }
}

/// Builds the dual: one vertex per face, one edge per primal edge joining
/// the two faces that share it, one face per primal vertex star.
pub fn dual(t: &Tiling) -> Result<DualView> {
    let period = t.size as f64;
    let mut edge_faces: Vec<Vec<usize>> = vec![Vec::with_capacity(2); t.edge_count()];
    for (f, face) in t.faces.iter().enumerate() {
        for &e in face {
            if e >= t.edge_count() {
                return Err(Error::MalformedTiling(Violation::FaceEdgeOutOfRange {
                    face: f,
                    edge: e,
                }));
            }
            edge_faces[e].push(f);
        }
    }
    if let Some((edge, fs)) = edge_faces.iter().enumerate().find(|(_, fs)| fs.len() != 2) {
        return Err(Error::MalformedTiling(Violation::EdgeFaceCount {
            edge,
            count: fs.len(),
        }));
    }

    // Face centroids, unwrapped around the first vertex of the face.
    let centroids: Vec<[f64; 2]> = t
        .faces
        .iter()
        .map(|face| {
            let mut verts: Vec<usize> = face
                .iter()
                .flat_map(|&e| [t.edges[e].a, t.edges[e].b])
                .collect();
            verts.sort_unstable();
            verts.dedup();
            let origin = t.positions[verts[0]];
            let mut sum = [0.0, 0.0];
            for &v in &verts {
                let p = t.positions[v];
                sum[0] += min_image(p[0] - origin[0], period);
                sum[1] += min_image(p[1] - origin[1], period);
            }
            let k = verts.len() as f64;
            [
                reduce(origin[0] + sum[0] / k, period),
                reduce(origin[1] + sum[1] / k, period),
            ]
        })
        .collect();

    let crosses = |from: f64, to: f64| {
        let end = from + min_image(to - from, period);
        !(0.0..period).contains(&end)
    };
    let edges: Vec<Edge> = edge_faces
        .iter()
        .map(|fs| {
            let (a, b) = (fs[0], fs[1]);
            let (pa, pb) = (centroids[a], centroids[b]);
            Edge {
                a,
                b,
                wrap_x: crosses(pa[0], pb[0]),
                wrap_y: crosses(pa[1], pb[1]),
            }
        })
        .collect();

    // Vertex stars, ordered by angle so each is a closed walk in the dual.
    let faces: Vec<Vec<usize>> = (0..t.vertex_count())
        .map(|v| {
            let p = t.positions[v];
            let mut star: Vec<(f64, usize)> = t.incidence[v]
                .iter()
                .map(|&(e, w)| {
                    let q = t.positions[w];
                    let dx = min_image(q[0] - p[0], period);
                    let dy = min_image(q[1] - p[1], period);
                    (dy.atan2(dx), e)
                })
                .collect();
            star.sort_by(|l, r| l.0.total_cmp(&r.0).then(l.1.cmp(&r.1)));
            star.into_iter().map(|(_, e)| e).collect()
        })
        .collect();

    let mut tiling = Tiling::from_parts(t.family, t.size, centroids, edges, faces);
    tiling.is_dual = !t.is_dual;
    Ok(DualView { tiling })
}

/// Cocycles detecting the two homology classes of cycles in the primal
/// (`cut_x`, `cut_y`) and in the dual (`dual_cut_x`, `dual_cut_y`).
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub cut_x: FixedBitSet,
    pub cut_y: FixedBitSet,
    pub dual_cut_x: FixedBitSet,
    pub dual_cut_y: FixedBitSet,
}

fn wrap_cuts(t: &Tiling) -> (FixedBitSet, FixedBitSet) {
    let cut_x = t.edge_set(t.edges.iter().enumerate().filter(|(_, e)| e.wrap_x).map(|(i, _)| i));
    let cut_y = t.edge_set(t.edges.iter().enumerate().filter(|(_, e)| e.wrap_y).map(|(i, _)| i));
    (cut_x, cut_y)
}

/// Seam cuts of a tiling and its dual.
pub fn homology_cuts(t: &Tiling, d: &DualView) -> HomologyBasis {
    let (cut_x, cut_y) = wrap_cuts(t);
    let (dual_cut_x, dual_cut_y) = wrap_cuts(&d.tiling);
    HomologyBasis {
        cut_x,
        cut_y,
        dual_cut_x,
        dual_cut_y,
    }
}

/// True if every face of `t` contains an even number of edges from `cut`.
pub fn is_cocycle(t: &Tiling, cut: &FixedBitSet) -> bool {
    t.faces
        .iter()
        .all(|face| face.iter().filter(|&&e| cut.contains(e)).count() % 2 == 0)
}

/// A tiling, its dual and the homology cuts: everything needed to
/// simulate and decode the associated surface code.
#[derive(Clone, Debug)]
pub struct SurfaceCode {
    pub primal: Tiling,
    pub dual: DualView,
    pub cuts: HomologyBasis,
}

impl SurfaceCode {
    pub fn new(family: Family, size: usize) -> Result<Self> {
        Self::from_tiling(build_torus(family, size)?)
    }

    pub fn from_tiling(primal: Tiling) -> Result<Self> {
        primal.validate().map_err(Error::MalformedTiling)?;
        let dual = dual(&primal)?;
        let cuts = homology_cuts(&primal, &dual);
        Ok(SurfaceCode { primal, dual, cuts })
    }

    pub fn family(&self) -> Family {
        self.primal.family()
    }

    pub fn size(&self) -> usize {
        self.primal.size()
    }

    /// Number of physical qubits.
    pub fn qubit_count(&self) -> usize {
        self.primal.edge_count()
    }

    pub fn dual_tiling(&self) -> &Tiling {
        &self.dual.tiling
    }
}
