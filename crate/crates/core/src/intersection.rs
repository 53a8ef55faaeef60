//! Intersection matrices and the search for bijections that preserve them.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::{Triangle, Triangulation, VertexId};
use crate::error::{Error, Result};

/// Pairwise shared-vertex counts between the triangles of a complex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntersectionMatrix {
    n: usize,
    entries: Vec<u8>,
}

impl fmt::Debug for IntersectionMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntersectionMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(u8::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// JSON form `{"n": n, "entries": [[...], ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<u8>>,
}

impl IntersectionMatrix {
    /// Checks symmetry, the diagonal and the off-diagonal range.
    pub fn from_rows(rows: Vec<Vec<u8>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidMatrix("empty".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidMatrix(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            entries.extend_from_slice(row);
        }
        let m = IntersectionMatrix { n, entries };
        for i in 0..n {
            if m.get(i, i) != 3 {
                return Err(Error::InvalidMatrix(format!("diagonal entry {i} is not 3")));
            }
            for j in 0..n {
                let x = m.get(i, j);
                if i != j && x > 2 {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i}, {j}) = {x} exceeds 2"
                    )));
                }
                if x != m.get(j, i) {
                    return Err(Error::InvalidMatrix(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        Ok(m)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Simultaneous row/column permutation: entry `(i, j)` of the result is
    /// entry `(order[i], order[j])` of `self`.
    pub fn permuted(&self, order: &[usize]) -> IntersectionMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for &i in order {
            for &j in order {
                entries.push(self.get(i, j));
            }
        }
        IntersectionMatrix { n, entries }
    }

    pub fn to_file(&self) -> MatrixFile {
        MatrixFile {
            n: self.n,
            entries: self.rows(),
        }
    }

    pub fn from_file(file: MatrixFile) -> Result<Self> {
        if file.entries.len() != file.n {
            return Err(Error::InvalidMatrix(format!(
                "n = {} but {} rows given",
                file.n,
                file.entries.len()
            )));
        }
        Self::from_rows(file.entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("plain data serializes")
    }

    /// Headerless CSV, one row per line.
    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(Vec::new());
        for i in 0..self.n {
            w.write_record(self.row(i).iter().map(u8::to_string))
                .expect("writing to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("ascii")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for (line, rec) in r.records().enumerate() {
            let rec = rec.map_err(|e| Error::InvalidMatrix(format!("line {}: {e}", line + 1)))?;
            let row = rec
                .iter()
                .map(|f| {
                    f.parse::<u8>().map_err(|_| {
                        Error::InvalidMatrix(format!(
                            "line {}: `{f}` is not a small integer",
                            line + 1
                        ))
                    })
                })
                .collect::<Result<Vec<u8>>>()?;
            rows.push(row);
        }
        Self::from_rows(rows)
    }
}

pub fn intersection_matrix(s: &Triangulation) -> IntersectionMatrix {
    let t = s.triangles();
    let n = t.len();
    let mut entries = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = t[i].meet(&t[j]) as u8;
        }
    }
    IntersectionMatrix { n, entries }
}

/// A bijection between triangle index sets: position `i` holds `f(i)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TriangleBijection(pub Vec<usize>);

impl TriangleBijection {
    pub fn identity(n: usize) -> Self {
        TriangleBijection((0..n).collect())
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn check_bijective(&self, codomain: usize) -> Result<()> {
        if self.len() != codomain {
            return Err(Error::SizeMismatch {
                left: self.len(),
                right: codomain,
            });
        }
        let mut hit = vec![false; codomain];
        for (i, &x) in self.0.iter().enumerate() {
            if x >= codomain {
                return Err(Error::NotBijection(format!("f({i}) = {x} is out of range")));
            }
            if hit[x] {
                return Err(Error::NotBijection(format!("{x} is hit twice")));
            }
            hit[x] = true;
        }
        Ok(())
    }

    pub fn inverse(&self) -> TriangleBijection {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        TriangleBijection(inv)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &TriangleBijection) -> TriangleBijection {
        TriangleBijection(other.0.iter().map(|&i| self.0[i]).collect())
    }
}

/// First pair `(i, j)` where `f` breaks the matrix, if any.
fn first_violation(
    m: &IntersectionMatrix,
    m2: &IntersectionMatrix,
    f: &TriangleBijection,
) -> Option<(usize, usize)> {
    for i in 0..m.n() {
        for j in i + 1..m.n() {
            if m.get(i, j) != m2.get(f.apply(i), f.apply(j)) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn same_intersection_matrix(
    s: &Triangulation,
    s2: &Triangulation,
    f: &TriangleBijection,
) -> Result<bool> {
    if s.len() != s2.len() {
        return Err(Error::SizeMismatch {
            left: s.len(),
            right: s2.len(),
        });
    }
    f.check_bijective(s2.len())?;
    Ok(first_violation(&intersection_matrix(s), &intersection_matrix(s2), f).is_none())
}

/// Joint colour refinement on the rows of two matrices. Rows may only be
/// matched within one colour. Returns `None` when the colour multisets of
/// the two sides already differ.
fn refine_rows(m: &IntersectionMatrix, m2: &IntersectionMatrix) -> Option<(Vec<u32>, Vec<u32>)> {
    let n = m.n();
    let mats = [m, m2];
    let mut colour: Vec<u32> = vec![0; 2 * n];
    loop {
        let keys: Vec<(u32, Vec<(u8, u32)>)> = (0..2 * n)
            .map(|r| {
                let (side, i) = (r / n, r % n);
                let mat = mats[side];
                let mut sig: Vec<(u8, u32)> = (0..n)
                    .filter(|&j| j != i)
                    .map(|j| (mat.get(i, j), colour[side * n + j]))
                    .collect();
                sig.sort_unstable();
                (colour[r], sig)
            })
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        sorted.dedup();
        let next: Vec<u32> = keys
            .iter()
            .map(|k| sorted.binary_search(k).unwrap() as u32)
            .collect();
        let mut left: Vec<u32> = next[..n].to_vec();
        let mut right: Vec<u32> = next[n..].to_vec();
        left.sort_unstable();
        right.sort_unstable();
        if left != right {
            return None;
        }
        let stable = sorted.len()
            == colour
                .iter()
                .collect::<std::collections::BTreeSet<_>>()
                .len();
        colour = next;
        if stable {
            return Some((colour[..n].to_vec(), colour[n..].to_vec()));
        }
    }
}

/// Every intersection-preserving bijection from the rows of `m` to the
/// rows of `m2`, or the first `limit` found. The result is sorted
/// lexicographically.
pub fn find_preserving_maps(
    m: &IntersectionMatrix,
    m2: &IntersectionMatrix,
    limit: Option<usize>,
) -> Vec<TriangleBijection> {
    let n = m.n();
    if n != m2.n() || limit == Some(0) {
        return Vec::new();
    }
    let Some((cl, cr)) = refine_rows(m, m2) else {
        return Vec::new();
    };
    let mut class_size = std::collections::HashMap::new();
    for &c in &cl {
        *class_size.entry(c).or_insert(0usize) += 1;
    }
    // rarest class first, ties by index
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (class_size[&cl[i]], i));

    struct Search<'a> {
        m: &'a IntersectionMatrix,
        m2: &'a IntersectionMatrix,
        cl: &'a [u32],
        cr: &'a [u32],
        order: Vec<usize>,
        f: Vec<usize>,
        used: Vec<bool>,
        out: Vec<TriangleBijection>,
        limit: usize,
    }

    fn go(s: &mut Search<'_>, depth: usize) -> bool {
        if depth == s.order.len() {
            s.out.push(TriangleBijection(s.f.clone()));
            return s.out.len() >= s.limit;
        }
        let i = s.order[depth];
        for w in 0..s.used.len() {
            if s.used[w] || s.cl[i] != s.cr[w] {
                continue;
            }
            let fits = s.order[..depth]
                .iter()
                .all(|&k| s.m.get(i, k) == s.m2.get(w, s.f[k]));
            if !fits {
                continue;
            }
            s.f[i] = w;
            s.used[w] = true;
            let stop = go(s, depth + 1);
            s.used[w] = false;
            if stop {
                return true;
            }
        }
        false
    }

    let mut search = Search {
        m,
        m2,
        cl: &cl,
        cr: &cr,
        order,
        f: vec![usize::MAX; n],
        used: vec![false; n],
        out: Vec::new(),
        limit: limit.unwrap_or(usize::MAX),
    };
    go(&mut search, 0);
    let mut out = search.out;
    out.sort();
    out
}

pub fn find_intersection_preserving_maps(
    s: &Triangulation,
    s2: &Triangulation,
    limit: Option<usize>,
) -> Vec<TriangleBijection> {
    find_preserving_maps(&intersection_matrix(s), &intersection_matrix(s2), limit)
}

/// A vertex bijection `g` with `g(t_i) = t'_{f(i)}` for every `i`, if
/// one exists.
///
/// A vertex `v` can only go to a vertex lying in every `f(t)` with
/// `v ∈ t` and in no `f(t)` with `v ∉ t`; the remaining choice (if any)
/// is settled by backtracking and each candidate is verified.
pub fn is_induced(
    f: &TriangleBijection,
    s: &Triangulation,
    s2: &Triangulation,
) -> Result<Option<Vec<VertexId>>> {
    if s.len() != s2.len() {
        return Err(Error::SizeMismatch {
            left: s.len(),
            right: s2.len(),
        });
    }
    f.check_bijective(s2.len())?;
    if let Some((i, j)) = first_violation(&intersection_matrix(s), &intersection_matrix(s2), f) {
        return Err(Error::NotIntersectionPreserving { i, j });
    }
    if s.vertex_count() != s2.vertex_count() {
        return Ok(None);
    }
    let n2 = s2.vertex_count();
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(s.vertex_count());
    for v in s.vertices() {
        let mut inside = vec![true; n2];
        for (i, t) in s.triangles().iter().enumerate() {
            let img = s2.triangle(f.apply(i));
            let contains = t.contains(v);
            for (w, keep) in inside.iter_mut().enumerate() {
                if img.contains(VertexId(w as u32)) != contains {
                    *keep = false;
                }
            }
        }
        let c: Vec<usize> = (0..n2).filter(|&w| inside[w]).collect();
        if c.is_empty() {
            return Ok(None);
        }
        candidates.push(c);
    }

    fn assign(
        v: usize,
        cands: &[Vec<usize>],
        g: &mut Vec<usize>,
        used: &mut [bool],
        check: &dyn Fn(&[usize]) -> bool,
    ) -> bool {
        if v == cands.len() {
            return check(g);
        }
        for &w in &cands[v] {
            if used[w] {
                continue;
            }
            used[w] = true;
            g.push(w);
            if assign(v + 1, cands, g, used, check) {
                return true;
            }
            g.pop();
            used[w] = false;
        }
        false
    }

    let check = |g: &[usize]| {
        s.triangles().iter().enumerate().all(|(i, t)| {
            let [a, b, c] = t.vertices().map(|v| VertexId(g[v.index()] as u32));
            Triangle::new(a, b, c) == Some(s2.triangle(f.apply(i)))
        })
    };
    let mut g = Vec::with_capacity(candidates.len());
    let mut used = vec![false; n2];
    if assign(0, &candidates, &mut g, &mut used, &check) {
        Ok(Some(g.into_iter().map(|w| VertexId(w as u32)).collect()))
    } else {
        Ok(None)
    }
}

/// The bijection on triangle indices induced by a vertex map `g`, if `g`
/// carries every triangle of `s` onto a triangle of `s2`.
pub fn induced_bijection(
    g: &[VertexId],
    s: &Triangulation,
    s2: &Triangulation,
) -> Option<TriangleBijection> {
    if s.len() != s2.len() {
        return None;
    }
    let index: std::collections::HashMap<Triangle, usize> = s2
        .triangles()
        .iter()
        .enumerate()
        .map(|(i, t)| (*t, i))
        .collect();
    let f = s
        .triangles()
        .iter()
        .map(|t| {
            let [a, b, c] = t.vertices().map(|v| g[v.index()]);
            Triangle::new(a, b, c).and_then(|img| index.get(&img).copied())
        })
        .collect::<Option<Vec<usize>>>()?;
    let f = TriangleBijection(f);
    f.check_bijective(s2.len()).ok()?;
    Some(f)
}
