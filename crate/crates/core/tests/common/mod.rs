//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library except to build `Triangulation` values at the end.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use shellrec::Triangulation;

pub type Tri = [usize; 3];

pub fn sorted(mut t: Tri) -> Tri {
    t.sort_unstable();
    t
}

pub fn meet(a: &Tri, b: &Tri) -> usize {
    a.iter().filter(|x| b.contains(x)).count()
}

pub fn plain(s: &Triangulation) -> Vec<Tri> {
    s.triangles()
        .iter()
        .map(|t| t.vertices().map(|v| v.index()))
        .collect()
}

pub fn vertex_count(tris: &[Tri]) -> usize {
    tris.iter().flatten().copied().max().map_or(0, |m| m + 1)
}

/// Renumbers the vertices that occur to `0..k`, keeping their order.
pub fn compact(tris: &[Tri]) -> Vec<Tri> {
    let used: BTreeSet<usize> = tris.iter().flatten().copied().collect();
    let index: BTreeMap<usize, usize> = used.into_iter().enumerate().map(|(i, v)| (v, i)).collect();
    tris.iter().map(|t| t.map(|v| index[&v])).collect()
}

/// Vertex isomorphism by plain backtracking over degree-compatible
/// candidates, with a full check at the leaves.
pub fn naive_isomorphic(s: &[Tri], t: &[Tri]) -> bool {
    let (s, t) = (&compact(s)[..], &compact(t)[..]);
    let (n, m) = (vertex_count(s), vertex_count(t));
    if n != m || s.len() != t.len() {
        return false;
    }
    let deg = |tris: &[Tri], n: usize| {
        let mut d = vec![0usize; n];
        for tr in tris {
            for &v in tr {
                d[v] += 1;
            }
        }
        d
    };
    let (ds, dt) = (deg(s, n), deg(t, n));
    let target: BTreeSet<Tri> = t.iter().map(|x| sorted(*x)).collect();
    let mut g = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn partial_ok(s: &[Tri], g: &[usize], target: &BTreeSet<Tri>) -> bool {
        s.iter().all(|tr| {
            if tr.iter().any(|&v| g[v] == usize::MAX) {
                true
            } else {
                target.contains(&sorted(tr.map(|v| g[v])))
            }
        })
    }

    fn go(
        k: usize,
        s: &[Tri],
        ds: &[usize],
        dt: &[usize],
        g: &mut Vec<usize>,
        used: &mut Vec<bool>,
        target: &BTreeSet<Tri>,
    ) -> bool {
        if k == g.len() {
            return true;
        }
        for w in 0..g.len() {
            if used[w] || ds[k] != dt[w] {
                continue;
            }
            g[k] = w;
            used[w] = true;
            if partial_ok(s, g, target) && go(k + 1, s, ds, dt, g, used, target) {
                return true;
            }
            used[w] = false;
            g[k] = usize::MAX;
        }
        false
    }
    go(0, s, &ds, &dt, &mut g, &mut used, &target)
}

/// Splits `items` into classes under `naive_isomorphic`, keeping the first
/// representative of each.
pub fn iso_classes(items: Vec<Vec<Tri>>) -> Vec<Vec<Tri>> {
    let mut reps: Vec<Vec<Tri>> = Vec::new();
    for x in items {
        if !reps.iter().any(|r| naive_isomorphic(r, &x)) {
            reps.push(x);
        }
    }
    reps
}

/// The cyclic shell pattern: consecutive pairs meet in two vertices,
/// every other pair in one.
pub fn shell_target(n: usize, i: usize, j: usize) -> usize {
    let d = i.abs_diff(j);
    if d == 1 || d == n - 1 {
        2
    } else {
        1
    }
}

/// Every assignment of vertex triples to `t_0..t_{n-1}` that realizes the
/// closed n-shell pattern, over a pool of `3n` labels. Fresh labels are
/// taken in increasing order, which loses nothing up to relabelling.
pub fn shell_realizations(n: usize) -> Vec<Vec<Tri>> {
    fn go(n: usize, pool: usize, fresh: usize, acc: &mut Vec<Tri>, out: &mut Vec<Vec<Tri>>) {
        let k = acc.len();
        if k == n {
            out.push(acc.clone());
            return;
        }
        let limit = (fresh + 3).min(pool);
        for a in 0..limit {
            for b in a + 1..limit {
                for c in b + 1..limit {
                    let t = [a, b, c];
                    let new: Vec<usize> = t.iter().copied().filter(|&x| x >= fresh).collect();
                    if new.iter().enumerate().any(|(i, &x)| x != fresh + i) {
                        continue;
                    }
                    if (0..k).any(|j| meet(&acc[j], &t) != shell_target(n, j, k)) {
                        continue;
                    }
                    acc.push(t);
                    go(n, pool, fresh + new.len(), acc, out);
                    acc.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(n, 3 * n, 0, &mut Vec::new(), &mut out);
    out
}

/// Open 4-windows: `t_0..t_3` with consecutive pairs meeting in two
/// vertices and all others in one.
pub fn window_realizations() -> Vec<Vec<Tri>> {
    let target = |i: usize, j: usize| if i.abs_diff(j) == 1 { 2 } else { 1 };
    let mut out = Vec::new();
    fn go(
        pool: usize,
        fresh: usize,
        acc: &mut Vec<Tri>,
        out: &mut Vec<Vec<Tri>>,
        target: &dyn Fn(usize, usize) -> usize,
    ) {
        let k = acc.len();
        if k == 4 {
            out.push(acc.clone());
            return;
        }
        let limit = (fresh + 3).min(pool);
        for a in 0..limit {
            for b in a + 1..limit {
                for c in b + 1..limit {
                    let t = [a, b, c];
                    let new: Vec<usize> = t.iter().copied().filter(|&x| x >= fresh).collect();
                    if new.iter().enumerate().any(|(i, &x)| x != fresh + i) {
                        continue;
                    }
                    if (0..k).any(|j| meet(&acc[j], &t) != target(j, k)) {
                        continue;
                    }
                    acc.push(t);
                    go(pool, fresh + new.len(), acc, out, target);
                    acc.pop();
                }
            }
        }
    }
    go(12, 0, &mut Vec::new(), &mut out, &target);
    out
}

/// Ordered canonical form of a short triangle sequence: the least image of
/// the sequence under every vertex permutation. Only for a handful of
/// vertices.
pub fn ordered_form(seq: &[Tri]) -> Vec<Tri> {
    let n = vertex_count(seq);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Tri>> = None;
    permutations(&mut perm, 0, &mut |p| {
        let img: Vec<Tri> = seq.iter().map(|t| sorted(t.map(|v| p[v]))).collect();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    });
    best.unwrap_or_default()
}

pub fn permutations(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Closed connected surface test written from the definitions: each edge
/// in zero or two triangles, each vertex link one cycle, dual graph
/// connected.
pub fn naive_is_closed_surface(tris: &[Tri], n: usize) -> bool {
    if tris.is_empty() {
        return false;
    }
    let mut edge: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for t in tris {
        for (x, y) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *edge.entry((x.min(y), x.max(y))).or_default() += 1;
        }
    }
    if edge.values().any(|&c| c != 2) {
        return false;
    }
    for v in 0..n {
        let link: Vec<(usize, usize)> = tris
            .iter()
            .filter(|t| t.contains(&v))
            .map(|t| {
                let o: Vec<usize> = t.iter().copied().filter(|&x| x != v).collect();
                (o[0], o[1])
            })
            .collect();
        if link.is_empty() {
            return false;
        }
        // walk the link; every link vertex has degree two because each edge
        // through v lies in two triangles
        let mut seen = vec![false; link.len()];
        seen[0] = true;
        let (start, mut cur) = link[0];
        let mut steps = 1;
        while cur != start {
            let Some(k) =
                (0..link.len()).find(|&k| !seen[k] && (link[k].0 == cur || link[k].1 == cur))
            else {
                return false;
            };
            seen[k] = true;
            cur = if link[k].0 == cur {
                link[k].1
            } else {
                link[k].0
            };
            steps += 1;
        }
        if steps != link.len() {
            return false;
        }
    }
    let mut reached = vec![false; tris.len()];
    let mut stack = vec![0];
    reached[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..tris.len() {
            if !reached[j] && meet(&tris[i], &tris[j]) == 2 {
                reached[j] = true;
                stack.push(j);
            }
        }
    }
    reached.into_iter().all(|r| r)
}

/// Every closed connected surface whose vertex set is exactly `0..n`,
/// one representative per isomorphism class, by scanning all subsets of
/// the triangles of the complete graph.
pub fn naive_surfaces(n: usize) -> Vec<Vec<Tri>> {
    let mut all: Vec<Tri> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                all.push([a, b, c]);
            }
        }
    }
    assert!(all.len() < 32, "subset scan only for n <= 6");
    let mut found: BTreeSet<Vec<Tri>> = BTreeSet::new();
    for mask in 1u32..(1 << all.len()) {
        let count = mask.count_ones() as usize;
        if count % 2 == 1 || count < 4 {
            continue;
        }
        let tris: Vec<Tri> = (0..all.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| all[i])
            .collect();
        if vertex_count(&tris) != n || (0..n).any(|v| !tris.iter().any(|t| t.contains(&v))) {
            continue;
        }
        if naive_is_closed_surface(&tris, n) {
            found.insert(ordered_form_set(&tris));
        }
    }
    found.into_iter().collect()
}

/// Least sorted triangle list over all vertex permutations.
pub fn ordered_form_set(tris: &[Tri]) -> Vec<Tri> {
    let n = vertex_count(tris);
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<Tri>> = None;
    permutations(&mut perm, 0, &mut |p| {
        let mut img: Vec<Tri> = tris.iter().map(|t| sorted(t.map(|v| p[v]))).collect();
        img.sort_unstable();
        if best.as_ref().is_none_or(|b| img < *b) {
            best = Some(img);
        }
    });
    best.unwrap_or_default()
}

/// Intersection matrix straight from the definition.
pub fn naive_matrix(tris: &[Tri]) -> Vec<Vec<usize>> {
    tris.iter()
        .map(|a| tris.iter().map(|b| meet(a, b)).collect())
        .collect()
}

/// Every triangle permutation `f` with `|t_i ∩ t_j| = |u_f(i) ∩ u_f(j)|`.
/// Exhaustive over all `n!` orderings.
pub fn naive_preserving_maps(s: &[Tri], t: &[Tri]) -> Vec<Vec<usize>> {
    if s.len() != t.len() {
        return Vec::new();
    }
    let (ms, mt) = (naive_matrix(s), naive_matrix(t));
    let mut perm: Vec<usize> = (0..s.len()).collect();
    let mut out = Vec::new();
    permutations(&mut perm, 0, &mut |p| {
        let ok = (0..p.len()).all(|i| (0..p.len()).all(|j| ms[i][j] == mt[p[i]][p[j]]));
        if ok {
            out.push(p.to_vec());
        }
    });
    out.sort();
    out
}

/// Does some vertex bijection carry `s[i]` onto `t[f[i]]` for every `i`?
pub fn naive_induced(f: &[usize], s: &[Tri], t: &[Tri]) -> bool {
    let n = vertex_count(s);
    if n != vertex_count(t) {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut hit = false;
    permutations(&mut perm, 0, &mut |g| {
        if !hit && (0..s.len()).all(|i| sorted(s[i].map(|v| g[v])) == sorted(t[f[i]])) {
            hit = true;
        }
    });
    hit
}

pub fn to_triangulation(tris: &[Tri]) -> Triangulation {
    Triangulation::from_indexed(tris).expect("oracle output is simplicial")
}

/// Closed and open shells of a surface, found by walking the dual graph.
/// Each closed shell is reported once per starting triangle and direction.
pub fn all_shells(tris: &[Tri]) -> Vec<(Vec<usize>, bool)> {
    let m = tris.len();
    let mut out = Vec::new();
    fn go(tris: &[Tri], path: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, bool)>) {
        let k = path.len();
        if k >= 3 && meet(&tris[path[0]], &tris[path[k - 1]]) == 1 {
            out.push((path.clone(), true));
        }
        let last = path[k - 1];
        for next in 0..tris.len() {
            if path.contains(&next) || meet(&tris[last], &tris[next]) != 2 {
                continue;
            }
            // all earlier non-neighbours meet the newcomer in one vertex,
            // except possibly the first, which may close the shell
            let ok = path[..k - 1].iter().enumerate().all(|(idx, &p)| {
                let c = meet(&tris[p], &tris[next]);
                c == 1 || (idx == 0 && c == 2)
            });
            if !ok {
                continue;
            }
            // a closed shell cannot be extended further
            let closes = k >= 2 && meet(&tris[path[0]], &tris[next]) == 2;
            path.push(next);
            if closes {
                out.push((path.clone(), false));
            } else {
                go(tris, path, out);
            }
            path.pop();
        }
    }
    for start in 0..m {
        let mut path = vec![start];
        go(tris, &mut path, &mut out);
    }
    out.sort();
    out.dedup();
    out
}
