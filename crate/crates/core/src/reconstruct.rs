//! Extending intersection-preserving maps to vertex isomorphisms, and
//! rebuilding a triangulation from a bare intersection matrix.
//!
//! For a closed surface, the star of every vertex `v` is a closed shell.
//! Its image under an intersection-preserving map `f` is again a closed
//! shell, hence a disk, a five-triangle Möbius band or a six-triangle
//! Möbius band. If every image is a disk, sending `v` to the apex of its
//! image star induces `f`. A Möbius image only happens on the
//! half-icosahedron (five triangles) and the subdivided half-cube (six).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::complex::{
    canonical_code, validate_surface, CanonicalCode, Edge, Triangle, Triangulation, VertexId,
};
use crate::corpus::catalog;
use crate::error::{Error, Result};
use crate::intersection::{
    find_preserving_maps, intersection_matrix, is_induced, IntersectionMatrix, TriangleBijection,
};
use crate::shells::{
    classify_shell, is_shell, realize_shell_class, shell_apex, shell_around_vertex, ShellClass,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExceptionalKind {
    HalfIcosahedron,
    HalfCube,
}

impl ExceptionalKind {
    pub fn catalog_name(self) -> &'static str {
        match self {
            ExceptionalKind::HalfIcosahedron => "half_icosahedron",
            ExceptionalKind::HalfCube => "half_cube",
        }
    }

    pub fn code(self) -> &'static CanonicalCode {
        static CODES: OnceLock<[CanonicalCode; 2]> = OnceLock::new();
        let codes = CODES.get_or_init(|| {
            [ExceptionalKind::HalfIcosahedron, ExceptionalKind::HalfCube].map(|k| {
                canonical_code(
                    &catalog(k.catalog_name())
                        .expect("catalog entry")
                        .triangulation,
                )
            })
        });
        match self {
            ExceptionalKind::HalfIcosahedron => &codes[0],
            ExceptionalKind::HalfCube => &codes[1],
        }
    }

    /// The exceptional surface with this canonical code, if any.
    pub fn from_code(code: &CanonicalCode) -> Option<Self> {
        [ExceptionalKind::HalfIcosahedron, ExceptionalKind::HalfCube]
            .into_iter()
            .find(|k| k.code() == code)
    }
}

impl fmt::Display for ExceptionalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExceptionalKind::HalfIcosahedron => "half-icosahedron",
            ExceptionalKind::HalfCube => "half-cube",
        })
    }
}

/// The vertex whose star maps onto a Möbius band, with the triangles of
/// the case analysis. `r[k]` is the preimage of `r_image[k]`, the triangle
/// across the free edge of `image_shell[k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub vertex: VertexId,
    pub shell: Vec<usize>,
    pub image_shell: Vec<usize>,
    pub image_class: ShellClass,
    pub r: Vec<usize>,
    pub r_image: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtendResult {
    /// `g[v]` is the image of vertex `v`.
    Extends(Vec<VertexId>),
    Exceptional {
        kind: ExceptionalKind,
        witness: Witness,
    },
}

impl ExtendResult {
    pub fn is_extends(&self) -> bool {
        matches!(self, ExtendResult::Extends(_))
    }
}

/// JSON form of an [`ExtendResult`], with vertices written as labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ExtendReport {
    Extends {
        vertex_map: BTreeMap<String, String>,
    },
    Exceptional {
        kind: ExceptionalKind,
        witness_vertex: String,
        shell: Vec<usize>,
        image_shell: Vec<usize>,
        image_class: ShellClass,
        r: Vec<usize>,
        r_image: Vec<usize>,
    },
}

impl ExtendReport {
    pub fn new(result: &ExtendResult, s: &Triangulation, s2: &Triangulation) -> Self {
        match result {
            ExtendResult::Extends(g) => ExtendReport::Extends {
                vertex_map: s
                    .vertices()
                    .map(|v| (s.label(v).to_string(), s2.label(g[v.index()]).to_string()))
                    .collect(),
            },
            ExtendResult::Exceptional { kind, witness } => ExtendReport::Exceptional {
                kind: *kind,
                witness_vertex: s.label(witness.vertex).to_string(),
                shell: witness.shell.clone(),
                image_shell: witness.image_shell.clone(),
                image_class: witness.image_class,
                r: witness.r.clone(),
                r_image: witness.r_image.clone(),
            },
        }
    }
}

fn require_closed(s: &Triangulation, which: &str) -> Result<()> {
    let r = validate_surface(s);
    if !r.is_closed_surface {
        return Err(Error::NotClosedSurface(format!(
            "{which}: connected={}, edges_in_two={}, links_cycles={}",
            r.is_connected, r.every_edge_in_two_triangles, r.all_links_single_cycles
        )));
    }
    Ok(())
}

fn contradiction(msg: impl Into<String>) -> Error {
    Error::InternalContradiction(msg.into())
}

/// Runs the extension procedure on an intersection-preserving `f`.
///
/// Vertices are scanned in ascending id order; the first vertex whose
/// image star is a Möbius band decides the exceptional case.
pub fn extend_map(
    f: &TriangleBijection,
    s: &Triangulation,
    s2: &Triangulation,
) -> Result<ExtendResult> {
    require_closed(s, "source")?;
    require_closed(s2, "target")?;
    if s.len() != s2.len() {
        return Err(Error::SizeMismatch {
            left: s.len(),
            right: s2.len(),
        });
    }
    f.check_bijective(s2.len())?;
    let (m, m2) = (intersection_matrix(s), intersection_matrix(s2));
    for i in 0..m.n() {
        for j in i + 1..m.n() {
            if m.get(i, j) != m2.get(f.apply(i), f.apply(j)) {
                return Err(Error::NotIntersectionPreserving { i, j });
            }
        }
    }

    let mut h = Vec::with_capacity(s.vertex_count());
    for v in s.vertices() {
        let shell = shell_around_vertex(s, v)?;
        let image: Vec<usize> = shell.triangles.iter().map(|&i| f.apply(i)).collect();
        let image_shell = is_shell(s2, &image).filter(|sh| !sh.open).ok_or_else(|| {
            contradiction(format!(
                "image of the star of `{}` is not a closed shell",
                s.label(v)
            ))
        })?;
        let class = classify_shell(s2, &image_shell).map_err(|e| {
            contradiction(format!(
                "image of the star of `{}` is unclassifiable: {e}",
                s.label(v)
            ))
        })?;
        match class {
            ShellClass::Disk(_) => {
                let apex = shell_apex(s2, &image_shell)
                    .ok_or_else(|| contradiction("disk image without a single apex"))?;
                h.push(apex);
            }
            ShellClass::Mobius5 | ShellClass::Mobius6 => {
                return mobius_case(f, s, s2, v, shell.triangles, image, class);
            }
        }
    }

    let mut hit = vec![false; s2.vertex_count()];
    for w in &h {
        if std::mem::replace(&mut hit[w.index()], true) {
            return Err(contradiction("apex map is not injective"));
        }
    }
    let induces = s.triangles().iter().enumerate().all(|(i, t)| {
        let [a, b, c] = t.vertices().map(|v| h[v.index()]);
        Triangle::new(a, b, c) == Some(s2.triangle(f.apply(i)))
    });
    if !induces || s.vertex_count() != s2.vertex_count() {
        return Err(contradiction("apex map does not induce f"));
    }
    Ok(ExtendResult::Extends(h))
}

/// The edge of `image[k]` lying in no other triangle of the image shell.
fn free_edge(s2: &Triangulation, image: &[usize], k: usize) -> Result<Edge> {
    let t = s2.triangle(image[k]);
    let mut free = t.edges().into_iter().filter(|&e| {
        image
            .iter()
            .enumerate()
            .all(|(j, &i)| j == k || !s2.triangle(i).contains_edge(e))
    });
    match (free.next(), free.next()) {
        (Some(e), None) => Ok(e),
        _ => Err(contradiction(
            "Möbius shell triangle without a unique free edge",
        )),
    }
}

/// Dihedral re-indexing `sigma` (image position -> template position)
/// under which the image shell is the template vertex-for-vertex.
fn align_to_template(s2: &Triangulation, image: &[usize], class: ShellClass) -> Option<Vec<usize>> {
    let n = image.len();
    let template = realize_shell_class(class);
    let sub = s2.subcomplex(image);
    for reflect in [false, true] {
        for shift in 0..n {
            let sigma: Vec<usize> = (0..n)
                .map(|k| {
                    if reflect {
                        (shift + n - k) % n
                    } else {
                        (shift + k) % n
                    }
                })
                .collect();
            let f = TriangleBijection(sigma.clone());
            if let Ok(Some(_)) = is_induced(&f, &sub, &template) {
                return Some(sigma);
            }
        }
    }
    None
}

fn mobius_case(
    f: &TriangleBijection,
    s: &Triangulation,
    s2: &Triangulation,
    v: VertexId,
    shell: Vec<usize>,
    image: Vec<usize>,
    class: ShellClass,
) -> Result<ExtendResult> {
    let n = shell.len();
    let inv = f.inverse();
    let mut r_image = Vec::with_capacity(n);
    for k in 0..n {
        let e = free_edge(s2, &image, k)?;
        let across = (0..s2.len())
            .find(|&i| i != image[k] && s2.triangle(i).contains_edge(e))
            .ok_or_else(|| contradiction("free edge of a closed surface has no second triangle"))?;
        r_image.push(across);
    }
    // the apex x'_k of each r'_k lies off the band
    let band: Vec<VertexId> = {
        let mut vs: Vec<VertexId> = image
            .iter()
            .flat_map(|&i| s2.triangle(i).vertices())
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    };
    for (k, &ri) in r_image.iter().enumerate() {
        let apex_on_band = s2
            .triangle(ri)
            .vertices()
            .into_iter()
            .filter(|x| !s2.triangle(image[k]).contains(*x))
            .any(|x| band.contains(&x));
        if apex_on_band {
            return Err(contradiction(format!("r'_{k} closes onto the Möbius band")));
        }
    }
    let r: Vec<usize> = r_image.iter().map(|&i| inv.apply(i)).collect();
    for k in 0..n {
        for j in 0..n {
            let want = if j == k { 2 } else { 1 };
            let got = s.triangle(r[k]).meet(&s.triangle(shell[j]));
            let got_image = s2.triangle(r_image[k]).meet(&s2.triangle(image[j]));
            if class == ShellClass::Mobius5 && (got != want || got_image != want) {
                return Err(contradiction(format!(
                    "|r_{k} ∩ t_{j}| = {got}, expected {want}"
                )));
            }
            if got != got_image {
                return Err(contradiction("f does not preserve r/t intersections"));
            }
        }
    }
    let mut all: Vec<usize> = shell.iter().chain(r.iter()).copied().collect();
    all.sort_unstable();
    all.dedup();
    if all.len() != 2 * n || s.len() != 2 * n {
        return Err(contradiction(
            "star and its r-triangles do not exhaust the surface",
        ));
    }

    let kind = match class {
        ShellClass::Mobius5 => {
            for k in 0..n {
                for d in [2, n - 2] {
                    if s.triangle(r[k]).meet(&s.triangle(r[(k + d) % n])) != 2 {
                        return Err(contradiction(format!("|r_{k} ∩ r_{}| != 2", (k + d) % n)));
                    }
                }
            }
            ExceptionalKind::HalfIcosahedron
        }
        ShellClass::Mobius6 => {
            let sigma = align_to_template(s2, &image, class).ok_or_else(|| {
                contradiction("six-triangle image does not align with its template")
            })?;
            let mut by_template = vec![0; n];
            for k in 0..n {
                by_template[sigma[k]] = r_image[k];
            }
            for (p, q) in [(0, 1), (1, 4), (4, 5), (5, 2), (2, 3), (3, 0)] {
                if s2
                    .triangle(by_template[p])
                    .meet(&s2.triangle(by_template[q]))
                    != 2
                {
                    return Err(contradiction(format!("|r'_{p} ∩ r'_{q}| != 2")));
                }
            }
            ExceptionalKind::HalfCube
        }
        ShellClass::Disk(_) => unreachable!("disk images extend"),
    };
    let (cs, cs2) = (canonical_code(s), canonical_code(s2));
    if &cs != kind.code() || &cs2 != kind.code() {
        return Err(contradiction(format!(
            "Möbius witness found but the surfaces are not both the {kind}"
        )));
    }
    Ok(ExtendResult::Exceptional {
        kind,
        witness: Witness {
            vertex: v,
            shell,
            image_shell: image,
            image_class: class,
            r,
            r_image,
        },
    })
}

/// One row of a [`Theorem2Report`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapOutcome {
    pub map: TriangleBijection,
    pub extends: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<ExceptionalKind>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Report {
    pub maps: usize,
    pub extending: usize,
    pub exceptional: usize,
    /// Search stopped at the budget.
    pub truncated: bool,
    /// Every non-extending map certified an exceptional surface on both
    /// sides, and `extend_map` agreed with the independent induced-map
    /// check on every map.
    pub dichotomy_holds: bool,
    pub outcomes: Vec<MapOutcome>,
}

/// Runs [`extend_map`] on every intersection-preserving map (up to
/// `budget`) and checks each outcome against [`is_induced`].
pub fn verify_theorem2(
    s: &Triangulation,
    s2: &Triangulation,
    budget: Option<usize>,
) -> Result<Theorem2Report> {
    require_closed(s, "source")?;
    require_closed(s2, "target")?;
    let maps = find_preserving_maps(&intersection_matrix(s), &intersection_matrix(s2), budget);
    let truncated = budget.is_some_and(|b| maps.len() >= b);
    let mut outcomes = Vec::with_capacity(maps.len());
    let mut holds = true;
    for f in maps {
        let result = extend_map(&f, s, s2)?;
        let induced = is_induced(&f, s, s2)?.is_some();
        let kind = match &result {
            ExtendResult::Extends(_) => None,
            ExtendResult::Exceptional { kind, .. } => Some(*kind),
        };
        if induced != result.is_extends() {
            holds = false;
        }
        if kind.is_some()
            && (ExceptionalKind::from_code(&canonical_code(s)) != kind
                || ExceptionalKind::from_code(&canonical_code(s2)) != kind)
        {
            holds = false;
        }
        outcomes.push(MapOutcome {
            map: f,
            extends: kind.is_none(),
            kind,
        });
    }
    let extending = outcomes.iter().filter(|o| o.extends).count();
    Ok(Theorem2Report {
        maps: outcomes.len(),
        extending,
        exceptional: outcomes.len() - extending,
        truncated,
        dichotomy_holds: holds,
        outcomes,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReconstructOptions {
    /// Search nodes to spend per phase before giving up on exhaustiveness.
    pub node_budget: u64,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        ReconstructOptions {
            node_budget: 2_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Reconstruction {
    /// Realizes the matrix under the identity indexing.
    pub triangulation: Triangulation,
    /// Two non-isomorphic realizations were found.
    pub ambiguous_boundary: bool,
    pub alternative: Option<Triangulation>,
    /// The search space was exhausted within the budget.
    pub exhaustive: bool,
}

struct Realizer<'a> {
    m: &'a IntersectionMatrix,
    order: Vec<usize>,
    /// position in `order` -> the placed triangle used as anchor, and its entry
    anchor: Vec<Option<(usize, u8)>>,
    placed: Vec<Option<[u32; 3]>>,
    labels: u32,
    edge_mult: HashMap<(u32, u32), u8>,
    max_edge: Option<u8>,
    nodes: u64,
    budget: u64,
    classes: Vec<(CanonicalCode, Triangulation)>,
    want_classes: usize,
    out_of_budget: bool,
}

fn sorted3(mut t: [u32; 3]) -> [u32; 3] {
    t.sort_unstable();
    t
}

impl Realizer<'_> {
    fn meet(a: &[u32; 3], b: &[u32; 3]) -> u8 {
        a.iter().filter(|x| b.contains(x)).count() as u8
    }

    fn fits(&self, pos: usize, cand: &[u32; 3]) -> bool {
        let i = self.order[pos];
        for &q in &self.order[..pos] {
            let t = self.placed[q].as_ref().unwrap();
            if Self::meet(cand, t) != self.m.get(i, q) {
                return false;
            }
        }
        if let Some(max) = self.max_edge {
            let [a, b, c] = *cand;
            for e in [(a, b), (a, c), (b, c)] {
                if self.edge_mult.get(&e).copied().unwrap_or(0) >= max {
                    return false;
                }
            }
        }
        true
    }

    fn candidates(&self, pos: usize) -> Vec<[u32; 3]> {
        let l = self.labels;
        if pos == 0 {
            return vec![[0, 1, 2]];
        }
        let (fixed_sets, anchor_verts): (Vec<Vec<u32>>, Vec<u32>) = match self.anchor[pos] {
            Some((q, k)) if k > 0 => {
                let t = self.placed[q].unwrap();
                let subsets: Vec<Vec<u32>> = if pos == 1 {
                    // labels of the first triangle are interchangeable
                    vec![t[..k as usize].to_vec()]
                } else if k == 2 {
                    vec![vec![t[0], t[1]], vec![t[0], t[2]], vec![t[1], t[2]]]
                } else {
                    t.iter().map(|&x| vec![x]).collect()
                };
                (subsets, t.to_vec())
            }
            Some((q, _)) => (vec![vec![]], self.placed[q].unwrap().to_vec()),
            None => (vec![vec![]], vec![]),
        };
        let pool: Vec<u32> = (0..l).filter(|x| !anchor_verts.contains(x)).collect();
        let mut out = Vec::new();
        for fixed in fixed_sets {
            let r = 3 - fixed.len();
            for from_pool in 0..=r {
                let fresh: Vec<u32> = (l..l + (r - from_pool) as u32).collect();
                for combo in combinations(&pool, from_pool) {
                    let mut t = [0u32; 3];
                    for (k, &x) in fixed.iter().chain(&combo).chain(&fresh).enumerate() {
                        t[k] = x;
                    }
                    out.push(sorted3(t));
                }
            }
        }
        out
    }

    fn place(&mut self, pos: usize, t: [u32; 3]) {
        let i = self.order[pos];
        self.placed[i] = Some(t);
        let [a, b, c] = t;
        for e in [(a, b), (a, c), (b, c)] {
            *self.edge_mult.entry(e).or_insert(0) += 1;
        }
    }

    fn unplace(&mut self, pos: usize) {
        let i = self.order[pos];
        let [a, b, c] = self.placed[i].take().unwrap();
        for e in [(a, b), (a, c), (b, c)] {
            *self.edge_mult.get_mut(&e).unwrap() -= 1;
        }
    }

    fn leaf(&mut self) {
        let tris: Vec<Triangle> = self
            .placed
            .iter()
            .map(|t| {
                let [a, b, c] = t.unwrap();
                Triangle::new(VertexId(a), VertexId(b), VertexId(c)).unwrap()
            })
            .collect();
        let t = Triangulation::from_dense(self.labels as usize, tris)
            .expect("realization is simplicial");
        debug_assert_eq!(&intersection_matrix(&t), self.m);
        let code = canonical_code(&t);
        if !self.classes.iter().any(|(c, _)| *c == code) {
            self.classes.push((code, t));
        }
    }

    /// Returns true to stop the search.
    fn go(&mut self, pos: usize) -> bool {
        if pos == self.order.len() {
            self.leaf();
            return self.classes.len() >= self.want_classes;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.out_of_budget = true;
            return true;
        }
        for cand in self.candidates(pos) {
            if !self.fits(pos, &cand) {
                continue;
            }
            let before = self.labels;
            self.labels = self.labels.max(cand[2] + 1);
            self.place(pos, cand);
            let stop = self.go(pos + 1);
            self.unplace(pos);
            self.labels = before;
            if stop {
                return true;
            }
        }
        false
    }
}

fn combinations(pool: &[u32], k: usize) -> Vec<Vec<u32>> {
    fn rec(pool: &[u32], k: usize, start: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(pool, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Placement order: each next triangle shares the most edges with the
/// ones already placed (ties by index), so most rows get an edge anchor.
fn placement_order(m: &IntersectionMatrix) -> (Vec<usize>, Vec<Option<(usize, u8)>>) {
    let n = m.n();
    let mut order = vec![0];
    let mut placed = vec![false; n];
    placed[0] = true;
    while order.len() < n {
        let next = (0..n)
            .filter(|&i| !placed[i])
            .max_by_key(|&i| {
                let twos = order.iter().filter(|&&q| m.get(i, q) == 2).count();
                let ones = order.iter().filter(|&&q| m.get(i, q) == 1).count();
                (twos, ones, std::cmp::Reverse(i))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let anchor = (0..n)
        .map(|pos| {
            if pos == 0 {
                return None;
            }
            let i = order[pos];
            let best = order[..pos]
                .iter()
                .copied()
                .max_by_key(|&q| (m.get(i, q), std::cmp::Reverse(q)))?;
            Some((best, m.get(i, best)))
        })
        .collect();
    (order, anchor)
}

fn realize(
    m: &IntersectionMatrix,
    max_edge: Option<u8>,
    want: usize,
    budget: u64,
) -> (Vec<Triangulation>, bool) {
    let (order, anchor) = placement_order(m);
    let mut r = Realizer {
        m,
        order,
        anchor,
        placed: vec![None; m.n()],
        labels: 0,
        edge_mult: HashMap::new(),
        max_edge,
        nodes: 0,
        budget,
        classes: Vec::new(),
        want_classes: want,
        out_of_budget: false,
    };
    let stopped_early = r.go(0);
    let exhaustive = !stopped_early && !r.out_of_budget;
    (r.classes.into_iter().map(|(_, t)| t).collect(), exhaustive)
}

/// Finds a triangulation whose intersection matrix is `m` (identity
/// indexing).
///
/// Realizations are first sought among complexes whose edges lie in at
/// most two triangles (surfaces, possibly with boundary); only if none
/// exists is the restriction dropped. A closed-surface realization is
/// preferred when one is found. `ambiguous_boundary` is set when a second,
/// non-isomorphic realization turns up.
pub fn reconstruct_from_matrix(
    m: &IntersectionMatrix,
    opts: ReconstructOptions,
) -> Result<Reconstruction> {
    let (mut found, mut exhaustive) = realize(m, Some(2), 2, opts.node_budget);
    if found.is_empty() {
        if !exhaustive {
            return Err(Error::NotRealizable);
        }
        (found, exhaustive) = realize(m, None, 2, opts.node_budget);
    }
    if found.is_empty() {
        return Err(Error::NotRealizable);
    }
    let ambiguous = found.len() > 1;
    let pick = found
        .iter()
        .position(|t| validate_surface(t).is_closed_surface)
        .unwrap_or(0);
    let triangulation = found.remove(pick);
    Ok(Reconstruction {
        triangulation,
        ambiguous_boundary: ambiguous,
        alternative: found.into_iter().next(),
        exhaustive,
    })
}
