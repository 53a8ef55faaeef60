//! Abstract triangulations: pure simplicial 2-complexes given by their
//! triangle lists, plus the closed-surface checks the rest of the crate
//! gates on.

mod canon;
mod io;

pub use canon::{canonical_code, canonical_labeling, is_isomorphic, CanonicalCode};
pub use io::TriangulationFile;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index into a [`Triangulation`]'s label table.
///
/// Ids follow the label order: numeric labels first by value, then the
/// remaining labels lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Three distinct vertices, stored sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangle([VertexId; 3]);

impl Triangle {
    pub fn new(a: VertexId, b: VertexId, c: VertexId) -> Option<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return None;
        }
        Some(Triangle(v))
    }

    #[inline]
    pub fn vertices(&self) -> [VertexId; 3] {
        self.0
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.0.contains(&v)
    }

    /// The three sorted edges.
    pub fn edges(&self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge(a, b), Edge(a, c), Edge(b, c)]
    }

    /// Number of shared vertices.
    pub fn meet(&self, other: &Triangle) -> usize {
        self.0.iter().filter(|v| other.contains(**v)).count()
    }

    /// The two vertices other than `v`, if `v` is a corner.
    pub fn opposite(&self, v: VertexId) -> Option<(VertexId, VertexId)> {
        let [a, b, c] = self.0;
        if v == a {
            Some((b, c))
        } else if v == b {
            Some((a, c))
        } else if v == c {
            Some((a, b))
        } else {
            None
        }
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.contains(e.0) && self.contains(e.1)
    }
}

/// An unordered vertex pair with `.0 < .1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub VertexId, pub VertexId);

impl Edge {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }
}

/// A finite pure simplicial 2-complex. Triangle order is significant: it
/// fixes the row order of the intersection matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangulation {
    labels: Vec<String>,
    triangles: Vec<Triangle>,
}

fn label_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y).then_with(|| a.cmp(b)),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        (Err(_), Err(_)) => a.cmp(b),
    }
}

impl Triangulation {
    /// Builds a triangulation from labelled triangles.
    pub fn new<S: AsRef<str>>(triangles: &[[S; 3]]) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::Empty);
        }
        let mut labels: Vec<String> = triangles
            .iter()
            .flat_map(|t| t.iter().map(|s| s.as_ref().to_string()))
            .collect();
        labels.sort_by(|a, b| label_order(a, b));
        labels.dedup();
        let ids: HashMap<&str, VertexId> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), VertexId(i as u32)))
            .collect();
        let mut out = Vec::with_capacity(triangles.len());
        for (index, t) in triangles.iter().enumerate() {
            let [a, b, c] = [0, 1, 2].map(|k| ids[t[k].as_ref()]);
            let tri = Triangle::new(a, b, c).ok_or_else(|| Error::MalformedTriangle {
                index,
                reason: "repeated vertex".into(),
            })?;
            out.push(tri);
        }
        Self::check_duplicates(&out)?;
        Ok(Triangulation {
            labels,
            triangles: out,
        })
    }

    /// Builds a triangulation from integer-labelled triangles.
    pub fn from_indexed(triangles: &[[usize; 3]]) -> Result<Self> {
        let labelled: Vec<[String; 3]> =
            triangles.iter().map(|t| t.map(|v| v.to_string())).collect();
        Self::new(&labelled)
    }

    /// Builds from dense ids `0..n`, all of which must be used.
    pub(crate) fn from_dense(n: usize, triangles: Vec<Triangle>) -> Result<Self> {
        if triangles.is_empty() {
            return Err(Error::Empty);
        }
        let mut seen = vec![false; n];
        for t in &triangles {
            for v in t.vertices() {
                seen[v.index()] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedTriangle {
                index: 0,
                reason: format!("vertex {missing} is not in any triangle"),
            });
        }
        Self::check_duplicates(&triangles)?;
        Ok(Triangulation {
            labels: (0..n).map(|i| i.to_string()).collect(),
            triangles,
        })
    }

    fn check_duplicates(triangles: &[Triangle]) -> Result<()> {
        let mut first: HashMap<Triangle, usize> = HashMap::with_capacity(triangles.len());
        for (index, t) in triangles.iter().enumerate() {
            if let Some(&f) = first.get(t) {
                return Err(Error::DuplicateTriangle { index, first: f });
            }
            first.insert(*t, index);
        }
        Ok(())
    }

    #[inline]
    pub fn triangles(&self) -> &[Triangle] {
        &self.triangles
    }

    #[inline]
    pub fn triangle(&self, i: usize) -> Triangle {
        self.triangles[i]
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len() as u32).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex(&self, label: &str) -> Result<VertexId> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| VertexId(i as u32))
            .ok_or_else(|| Error::UnknownVertex(label.to_string()))
    }

    /// Index of the given triangle, if present.
    pub fn position(&self, t: &Triangle) -> Option<usize> {
        self.triangles.iter().position(|s| s == t)
    }

    /// Every distinct edge with the number of triangles containing it.
    pub fn edges(&self) -> BTreeMap<Edge, usize> {
        let mut edges = BTreeMap::new();
        for t in &self.triangles {
            for e in t.edges() {
                *edges.entry(e).or_insert(0) += 1;
            }
        }
        edges
    }

    /// Triangles per vertex.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for t in &self.triangles {
            for v in t.vertices() {
                deg[v.index()] += 1;
            }
        }
        deg
    }

    /// Same complex with triangles in a new order: position `k` of the
    /// result holds triangle `order[k]` of `self`.
    pub fn reordered(&self, order: &[usize]) -> Triangulation {
        Triangulation {
            labels: self.labels.clone(),
            triangles: order.iter().map(|&i| self.triangles[i]).collect(),
        }
    }

    /// Sub-complex on the given triangle indices, in the given order.
    /// Vertex labels are kept.
    pub fn subcomplex(&self, indices: &[usize]) -> Triangulation {
        let tris: Vec<[&str; 3]> = indices
            .iter()
            .map(|&i| self.triangles[i].vertices().map(|v| self.label(v)))
            .collect();
        Triangulation::new(&tris).expect("subset of a valid complex is valid")
    }

    /// Relabels vertices through `map` (indexed by `VertexId`).
    pub fn relabeled<S: AsRef<str>>(&self, map: &[S]) -> Result<Triangulation> {
        let tris: Vec<[&str; 3]> = self
            .triangles
            .iter()
            .map(|t| t.vertices().map(|v| map[v.index()].as_ref()))
            .collect();
        Triangulation::new(&tris)
    }
}

/// Outcome of [`validate_surface`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceReport {
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub is_closed_surface: bool,
    pub is_connected: bool,
    pub every_edge_in_two_triangles: bool,
    pub all_links_single_cycles: bool,
    pub euler_characteristic: i64,
    /// Meaningful only when `is_closed_surface`.
    pub orientable: bool,
}

pub fn euler_characteristic(s: &Triangulation) -> i64 {
    s.vertex_count() as i64 - s.edges().len() as i64 + s.len() as i64
}

pub fn validate_surface(s: &Triangulation) -> SurfaceReport {
    let edges = s.edges();
    let every_edge_in_two_triangles = edges.values().all(|&c| c == 2);
    let all_links_single_cycles = s
        .vertices()
        .all(|v| matches!(vertex_star(s, v), Ok(star) if star.closed));
    let is_connected = components(s) == 1;
    let orientable = edges.values().all(|&c| c <= 2) && is_orientable(s);
    SurfaceReport {
        vertices: s.vertex_count(),
        edges: edges.len(),
        triangles: s.len(),
        is_closed_surface: is_connected && every_edge_in_two_triangles && all_links_single_cycles,
        is_connected,
        every_edge_in_two_triangles,
        all_links_single_cycles,
        euler_characteristic: euler_characteristic(s),
        orientable,
    }
}

/// Triangles sharing an edge with each triangle.
pub(crate) fn edge_neighbours(s: &Triangulation) -> Vec<Vec<usize>> {
    let mut by_edge: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
    for (i, t) in s.triangles().iter().enumerate() {
        for e in t.edges() {
            by_edge.entry(e).or_default().push(i);
        }
    }
    let mut adj = vec![Vec::new(); s.len()];
    for ts in by_edge.values() {
        for &a in ts {
            for &b in ts {
                if a != b {
                    adj[a].push(b);
                }
            }
        }
    }
    for a in &mut adj {
        a.sort_unstable();
        a.dedup();
    }
    adj
}

fn components(s: &Triangulation) -> usize {
    let adj = edge_neighbours(s);
    let mut seen = vec![false; s.len()];
    let mut count = 0;
    for start in 0..s.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
    }
    count
}

/// Tries to give every triangle a cyclic orientation so that each shared
/// edge is traversed in opposite directions by its two triangles.
fn is_orientable(s: &Triangulation) -> bool {
    // orientation[t] = Some(true) means sorted order (a, b, c) is positive
    let mut orientation: Vec<Option<bool>> = vec![None; s.len()];
    let adj = edge_neighbours(s);
    let directed = |t: Triangle, positive: bool, e: Edge| -> bool {
        // true if the oriented triangle traverses e as e.0 -> e.1
        let [a, b, c] = t.vertices();
        let cyc = if positive { [a, b, c] } else { [a, c, b] };
        (0..3).any(|k| cyc[k] == e.0 && cyc[(k + 1) % 3] == e.1)
    };
    for start in 0..s.len() {
        if orientation[start].is_some() {
            continue;
        }
        orientation[start] = Some(true);
        let mut stack = vec![start];
        while let Some(t) = stack.pop() {
            let ot = orientation[t].unwrap();
            let tt = s.triangle(t);
            for &u in &adj[t] {
                let tu = s.triangle(u);
                for e in tt.edges() {
                    if !tu.contains_edge(e) {
                        continue;
                    }
                    let want = !directed(tt, ot, e);
                    let ou = directed(tu, true, e) == want;
                    match orientation[u] {
                        None => {
                            orientation[u] = Some(ou);
                            stack.push(u);
                        }
                        Some(existing) if existing != ou => return false,
                        Some(_) => {}
                    }
                }
            }
        }
    }
    true
}

/// The triangles around one vertex, in fan order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Star {
    pub vertex: VertexId,
    /// Triangle indices; consecutive entries share an edge through `vertex`.
    pub triangles: Vec<usize>,
    /// True when the link is a cycle (and the last triangle meets the first).
    pub closed: bool,
}

/// Orders the triangles containing `v` along its link.
///
/// A path-shaped link (boundary vertex) yields an open star; anything
/// else that is not a single cycle is [`Error::LinkNotCycle`].
pub fn vertex_star(s: &Triangulation, v: VertexId) -> Result<Star> {
    if v.index() >= s.vertex_count() {
        return Err(Error::UnknownVertex(v.to_string()));
    }
    let not_cycle = || Error::LinkNotCycle(s.label(v).to_string());
    let around: Vec<usize> = (0..s.len())
        .filter(|&i| s.triangle(i).contains(v))
        .collect();
    // link vertex -> triangles (positions in `around`) whose link edge touches it
    let mut touching: BTreeMap<VertexId, Vec<usize>> = BTreeMap::new();
    for (k, &i) in around.iter().enumerate() {
        let (a, b) = s.triangle(i).opposite(v).unwrap();
        touching.entry(a).or_default().push(k);
        touching.entry(b).or_default().push(k);
    }
    if touching.values().any(|ks| ks.len() > 2) {
        return Err(not_cycle());
    }
    let ends: Vec<usize> = touching
        .values()
        .filter(|ks| ks.len() == 1)
        .map(|ks| ks[0])
        .collect();
    let closed = match ends.len() {
        0 => true,
        2 => false,
        _ => return Err(not_cycle()),
    };
    let start = if closed {
        0
    } else {
        ends.iter().copied().min().unwrap()
    };
    let mut order = vec![start];
    let mut used = vec![false; around.len()];
    used[start] = true;
    loop {
        let cur = *order.last().unwrap();
        let (a, b) = s.triangle(around[cur]).opposite(v).unwrap();
        let next = [a, b]
            .iter()
            .flat_map(|x| touching[x].iter().copied())
            .filter(|&k| !used[k])
            .min();
        match next {
            Some(k) => {
                used[k] = true;
                order.push(k);
            }
            None => break,
        }
    }
    if order.len() != around.len() {
        return Err(not_cycle());
    }
    Ok(Star {
        vertex: v,
        triangles: order.into_iter().map(|k| around[k]).collect(),
        closed,
    })
}
