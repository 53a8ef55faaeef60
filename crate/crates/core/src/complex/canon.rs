//! Canonical codes and vertex isomorphism for triangle complexes.

use std::fmt;

use super::{Triangle, Triangulation, VertexId};

/// Relabelling-invariant byte string: vertex count, triangle count, then
/// the lexicographically least sorted triangle list over all labellings
/// reachable by the refinement search. Every number is a big-endian u16.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(pub Vec<u8>);

impl CanonicalCode {
    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

struct Incidence {
    /// per vertex: the opposite pairs of the triangles through it
    opposite: Vec<Vec<(usize, usize)>>,
}

impl Incidence {
    fn new(s: &Triangulation) -> Self {
        let mut opposite = vec![Vec::new(); s.vertex_count()];
        for t in s.triangles() {
            let [a, b, c] = t.vertices().map(VertexId::index);
            opposite[a].push((b, c));
            opposite[b].push((a, c));
            opposite[c].push((a, b));
        }
        Incidence { opposite }
    }
}

/// Re-ranks `keys` into dense colours; equal keys share a colour and the
/// colour order follows key order.
fn rank<K: Ord + Clone>(keys: &[K]) -> Vec<u32> {
    let mut sorted: Vec<K> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap() as u32)
        .collect()
}

fn cell_count(colours: &[u32]) -> usize {
    colours.iter().copied().max().map_or(0, |m| m as usize + 1)
}

/// Iterated refinement: a vertex's new colour is its old colour plus the
/// sorted multiset of colour pairs across its triangles.
fn refine(inc: &Incidence, mut colours: Vec<u32>) -> Vec<u32> {
    loop {
        let before = cell_count(&colours);
        let keys: Vec<(u32, Vec<(u32, u32)>)> = (0..colours.len())
            .map(|v| {
                let mut sig: Vec<(u32, u32)> = inc.opposite[v]
                    .iter()
                    .map(|&(a, b)| {
                        let (x, y) = (colours[a], colours[b]);
                        (x.min(y), x.max(y))
                    })
                    .collect();
                sig.sort_unstable();
                (colours[v], sig)
            })
            .collect();
        colours = rank(&keys);
        if cell_count(&colours) == before {
            return colours;
        }
    }
}

fn encode(s: &Triangulation, label: &[u32]) -> Vec<u8> {
    let mut tris: Vec<[u32; 3]> = s
        .triangles()
        .iter()
        .map(|t| {
            let mut x = t.vertices().map(|v| label[v.index()]);
            x.sort_unstable();
            x
        })
        .collect();
    tris.sort_unstable();
    let mut out = Vec::with_capacity(4 + 6 * tris.len());
    out.extend_from_slice(&(s.vertex_count() as u16).to_be_bytes());
    out.extend_from_slice(&(s.len() as u16).to_be_bytes());
    for t in tris {
        for x in t {
            out.extend_from_slice(&(x as u16).to_be_bytes());
        }
    }
    out
}

fn search(
    s: &Triangulation,
    inc: &Incidence,
    colours: Vec<u32>,
    best: &mut Option<(Vec<u8>, Vec<u32>)>,
) {
    let n = colours.len();
    if cell_count(&colours) == n {
        let code = encode(s, &colours);
        if best.as_ref().is_none_or(|(b, _)| code < *b) {
            *best = Some((code, colours));
        }
        return;
    }
    // first non-singleton cell, smallest colour
    let mut size = vec![0usize; n];
    for &c in &colours {
        size[c as usize] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1).unwrap() as u32;
    for v in 0..n {
        if colours[v] != target {
            continue;
        }
        let split: Vec<u32> = colours
            .iter()
            .enumerate()
            .map(|(w, &c)| {
                if c > target || (c == target && w != v) {
                    2 * c + 1
                } else {
                    2 * c
                }
            })
            .collect();
        let refined = refine(inc, rank(&split));
        search(s, inc, refined, best);
    }
}

/// A canonical labelling: position `v` holds the canonical index of
/// vertex `v`. Isomorphic complexes get labellings that carry one onto
/// the other.
pub fn canonical_labeling(s: &Triangulation) -> (CanonicalCode, Vec<u32>) {
    let inc = Incidence::new(s);
    let degrees: Vec<usize> = inc.opposite.iter().map(Vec::len).collect();
    let start = refine(&inc, rank(&degrees));
    let mut best = None;
    search(s, &inc, start, &mut best);
    let (code, label) = best.expect("search reaches at least one leaf");
    (CanonicalCode(code), label)
}

pub fn canonical_code(s: &Triangulation) -> CanonicalCode {
    canonical_labeling(s).0
}

/// Backtracking vertex matcher, independent of the canonical-code search.
///
/// Returns `g` with `g[v]` the image of vertex `v`, such that every
/// triangle of `s` maps onto a triangle of `t`.
pub fn is_isomorphic(s: &Triangulation, t: &Triangulation) -> Option<Vec<VertexId>> {
    if s.vertex_count() != t.vertex_count() || s.len() != t.len() {
        return None;
    }
    let (ds, dt) = (s.degrees(), t.degrees());
    let mut a = ds.clone();
    let mut b = dt.clone();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return None;
    }
    let n = s.vertex_count();
    let (inc_s, inc_t) = (Incidence::new(s), Incidence::new(t));
    let tri_t: std::collections::HashSet<Triangle> = t.triangles().iter().copied().collect();

    // vertex order: greedy by most already-placed neighbours
    let mut adj = vec![vec![false; n]; n];
    for tr in s.triangles() {
        let [x, y, z] = tr.vertices().map(VertexId::index);
        for (p, q) in [(x, y), (x, z), (y, z)] {
            adj[p][q] = true;
            adj[q][p] = true;
        }
    }
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| {
                let linked = order.iter().filter(|&&u: &&usize| adj[v][u]).count();
                (linked, ds[v], std::cmp::Reverse(v))
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }

    struct State<'a> {
        order: Vec<usize>,
        ds: &'a [usize],
        dt: &'a [usize],
        inc_s: &'a Incidence,
        inc_t: &'a Incidence,
        tri_t: &'a std::collections::HashSet<Triangle>,
        g: Vec<Option<usize>>,
        used: Vec<bool>,
    }

    fn consistent(st: &State<'_>, v: usize, w: usize) -> bool {
        if st.ds[v] != st.dt[w] {
            return false;
        }
        let mut closed = 0;
        for &(a, b) in &st.inc_s.opposite[v] {
            if let (Some(ga), Some(gb)) = (st.g[a], st.g[b]) {
                closed += 1;
                let img =
                    Triangle::new(VertexId(w as u32), VertexId(ga as u32), VertexId(gb as u32));
                match img {
                    Some(tr) if st.tri_t.contains(&tr) => {}
                    _ => return false,
                }
            }
        }
        let closed_t = st.inc_t.opposite[w]
            .iter()
            .filter(|&&(a, b)| st.used[a] && st.used[b])
            .count();
        closed == closed_t
    }

    fn go(st: &mut State<'_>, depth: usize) -> bool {
        if depth == st.order.len() {
            return true;
        }
        let v = st.order[depth];
        for w in 0..st.used.len() {
            if st.used[w] || !consistent(st, v, w) {
                continue;
            }
            st.g[v] = Some(w);
            st.used[w] = true;
            if go(st, depth + 1) {
                return true;
            }
            st.g[v] = None;
            st.used[w] = false;
        }
        false
    }

    let mut st = State {
        order,
        ds: &ds,
        dt: &dt,
        inc_s: &inc_s,
        inc_t: &inc_t,
        tri_t: &tri_t,
        g: vec![None; n],
        used: vec![false; n],
    };
    if go(&mut st, 0) {
        Some(
            st.g.into_iter()
                .map(|x| VertexId(x.unwrap() as u32))
                .collect(),
        )
    } else {
        None
    }
}
