//! Corpus-wide checks: equal matrices mean isomorphic surfaces, and only
//! the two exceptional surfaces carry maps that no vertex map induces.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::enumerate::{enumerate_closed, EnumerationConfig};
use crate::complex::{
    canonical_code, validate_surface, CanonicalCode, Triangulation, TriangulationFile,
};
use crate::error::{Error, Result};
use crate::intersection::{
    find_preserving_maps, intersection_matrix, is_induced, IntersectionMatrix, TriangleBijection,
};

/// Members sharing one intersection matrix up to simultaneous
/// row/column permutation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixGroup {
    pub members: Vec<usize>,
    pub triangles: usize,
    /// Hex canonical codes of the distinct isomorphism classes.
    pub classes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub group: usize,
    pub left_index: usize,
    pub right_index: usize,
    pub left: TriangulationFile,
    pub right: TriangulationFile,
    /// Intersection-preserving map from left to right.
    pub map: TriangleBijection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem1Report {
    pub corpus_size: usize,
    pub groups: Vec<MatrixGroup>,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonInducedMap {
    pub left: usize,
    pub right: usize,
    pub map: TriangleBijection,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalReport {
    pub corpus_size: usize,
    /// Hex canonical codes of members with a non-induced map, sorted.
    pub codes: Vec<String>,
    pub members: Vec<usize>,
    pub maps: Vec<NonInducedMap>,
}

fn gate(corpus: &[Triangulation], require_closed: bool) -> Result<()> {
    if !require_closed {
        return Ok(());
    }
    for (i, t) in corpus.iter().enumerate() {
        if !validate_surface(t).is_closed_surface {
            return Err(Error::NotClosedSurface(format!("corpus member {i}")));
        }
    }
    Ok(())
}

/// Cheap permutation invariant: size plus sorted sorted-rows.
fn matrix_key(m: &IntersectionMatrix) -> (usize, Vec<Vec<u8>>) {
    let mut rows: Vec<Vec<u8>> = m
        .rows()
        .into_iter()
        .map(|mut r| {
            r.sort_unstable();
            r
        })
        .collect();
    rows.sort();
    (m.n(), rows)
}

struct Prepared {
    matrices: Vec<IntersectionMatrix>,
    codes: Vec<CanonicalCode>,
    buckets: Vec<Vec<usize>>,
}

fn prepare(corpus: &[Triangulation]) -> Prepared {
    let matrices: Vec<IntersectionMatrix> = corpus.par_iter().map(intersection_matrix).collect();
    let codes: Vec<CanonicalCode> = corpus.par_iter().map(canonical_code).collect();
    let mut by_key: BTreeMap<(usize, Vec<Vec<u8>>), Vec<usize>> = BTreeMap::new();
    for (i, m) in matrices.iter().enumerate() {
        by_key.entry(matrix_key(m)).or_default().push(i);
    }
    let mut buckets: Vec<Vec<usize>> = by_key.into_values().collect();
    buckets.sort();
    Prepared {
        matrices,
        codes,
        buckets,
    }
}

/// Groups the corpus by matrix equivalence and reports every group that
/// holds more than one isomorphism class.
pub fn theorem1_scan_corpus(
    corpus: &[Triangulation],
    require_closed: bool,
) -> Result<Theorem1Report> {
    gate(corpus, require_closed)?;
    let p = prepare(corpus);
    let mut groups = Vec::new();
    let mut violations = Vec::new();
    for bucket in &p.buckets {
        // union-find over "some intersection-preserving map exists"
        let pairs: Vec<(usize, usize)> = bucket
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| bucket[k + 1..].iter().map(move |&b| (a, b)))
            .collect();
        let linked: Vec<(usize, usize, TriangleBijection)> = pairs
            .par_iter()
            .filter_map(|&(a, b)| {
                find_preserving_maps(&p.matrices[a], &p.matrices[b], Some(1))
                    .into_iter()
                    .next()
                    .map(|f| (a, b, f))
            })
            .collect();
        let mut parent: BTreeMap<usize, usize> = bucket.iter().map(|&i| (i, i)).collect();
        fn find(parent: &mut BTreeMap<usize, usize>, x: usize) -> usize {
            let p = parent[&x];
            if p == x {
                return x;
            }
            let r = find(parent, p);
            parent.insert(x, r);
            r
        }
        for (a, b, _) in &linked {
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            if ra != rb {
                parent.insert(ra.max(rb), ra.min(rb));
            }
        }
        let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &i in bucket {
            let r = find(&mut parent, i);
            members.entry(r).or_default().push(i);
        }
        for ms in members.into_values() {
            let gid = groups.len();
            let mut classes: Vec<String> = ms.iter().map(|&i| p.codes[i].to_hex()).collect();
            classes.sort();
            classes.dedup();
            for (a, b, f) in &linked {
                if ms.contains(a) && p.codes[*a] != p.codes[*b] {
                    violations.push(Violation {
                        group: gid,
                        left_index: *a,
                        right_index: *b,
                        left: TriangulationFile::from(&corpus[*a]),
                        right: TriangulationFile::from(&corpus[*b]),
                        map: f.clone(),
                    });
                }
            }
            groups.push(MatrixGroup {
                triangles: p.matrices[ms[0]].n(),
                members: ms,
                classes,
            });
        }
    }
    groups.sort_by(|a, b| a.members.cmp(&b.members));
    Ok(Theorem1Report {
        corpus_size: corpus.len(),
        groups,
        violations,
    })
}

pub fn theorem1_scan(config: &EnumerationConfig) -> Result<Theorem1Report> {
    let corpus = enumerate_closed(config)?;
    theorem1_scan_corpus(&corpus, config.require_closed)
}

/// Every intersection-preserving map inside the corpus (self-maps and
/// maps between matrix-equivalent members) that no vertex map induces.
pub fn exceptional_scan_corpus(
    corpus: &[Triangulation],
    require_closed: bool,
) -> Result<ExceptionalReport> {
    gate(corpus, require_closed)?;
    let p = prepare(corpus);
    let pairs: Vec<(usize, usize)> = p
        .buckets
        .iter()
        .flat_map(|b| b.iter().flat_map(move |&x| b.iter().map(move |&y| (x, y))))
        .collect();
    let found: Vec<Vec<NonInducedMap>> = pairs
        .par_iter()
        .map(|&(a, b)| {
            find_preserving_maps(&p.matrices[a], &p.matrices[b], None)
                .into_iter()
                .filter(|f| matches!(is_induced(f, &corpus[a], &corpus[b]), Ok(None)))
                .map(|map| NonInducedMap {
                    left: a,
                    right: b,
                    map,
                })
                .collect()
        })
        .collect();
    let maps: Vec<NonInducedMap> = found.into_iter().flatten().collect();
    let mut members: Vec<usize> = maps.iter().flat_map(|m| [m.left, m.right]).collect();
    members.sort_unstable();
    members.dedup();
    let mut codes: Vec<String> = members.iter().map(|&i| p.codes[i].to_hex()).collect();
    codes.sort();
    codes.dedup();
    Ok(ExceptionalReport {
        corpus_size: corpus.len(),
        codes,
        members,
        maps,
    })
}

pub fn exceptional_scan(config: &EnumerationConfig) -> Result<ExceptionalReport> {
    let corpus = enumerate_closed(config)?;
    exceptional_scan_corpus(&corpus, config.require_closed)
}
