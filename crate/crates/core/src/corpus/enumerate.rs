//! Isomorph-free generation of small closed-surface triangulations.
//!
//! Starting from the triangle `{0, 1, 2}`, the smallest edge lying in only
//! one triangle is closed off by every admissible third vertex: an existing
//! vertex, or the next unused label (so labels appear in increasing order).
//! A vertex link may only close into a cycle when it is a single path at
//! that moment. Complete complexes are deduplicated by canonical code.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::complex::{
    canonical_code, validate_surface, CanonicalCode, Triangle, Triangulation, VertexId,
};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SurfaceFilter {
    #[default]
    All,
    Sphere,
    ProjectivePlane,
    Torus,
    KleinBottle,
}

impl SurfaceFilter {
    pub fn accepts(self, chi: i64, orientable: bool) -> bool {
        match self {
            SurfaceFilter::All => true,
            SurfaceFilter::Sphere => chi == 2,
            SurfaceFilter::ProjectivePlane => chi == 1 && !orientable,
            SurfaceFilter::Torus => chi == 0 && orientable,
            SurfaceFilter::KleinBottle => chi == 0 && !orientable,
        }
    }
}

impl fmt::Display for SurfaceFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SurfaceFilter::All => "all",
            SurfaceFilter::Sphere => "sphere",
            SurfaceFilter::ProjectivePlane => "projective_plane",
            SurfaceFilter::Torus => "torus",
            SurfaceFilter::KleinBottle => "klein_bottle",
        })
    }
}

impl FromStr for SurfaceFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => SurfaceFilter::All,
            "sphere" => SurfaceFilter::Sphere,
            "projective_plane" => SurfaceFilter::ProjectivePlane,
            "torus" => SurfaceFilter::Torus,
            "klein_bottle" => SurfaceFilter::KleinBottle,
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "unknown surface filter `{s}`"
                )))
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationConfig {
    pub max_vertices: usize,
    pub surface_filter: SurfaceFilter,
    /// Scans reject inputs that are not closed connected surfaces.
    pub require_closed: bool,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            max_vertices: 8,
            surface_filter: SurfaceFilter::All,
            require_closed: true,
        }
    }
}

impl EnumerationConfig {
    pub fn with_max_vertices(max_vertices: usize) -> Self {
        EnumerationConfig {
            max_vertices,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_vertices < 4 {
            return Err(Error::InvalidConfig(format!(
                "max_vertices must be at least 4, got {}",
                self.max_vertices
            )));
        }
        if self.max_vertices > 12 {
            return Err(Error::InvalidConfig(format!(
                "max_vertices above 12 is out of desk range, got {}",
                self.max_vertices
            )));
        }
        Ok(())
    }
}

struct Builder {
    max: usize,
    used: usize,
    /// edge multiplicities, `max * max`
    edge: Vec<u8>,
    /// triangles per vertex
    deg: Vec<usize>,
    closed: Vec<bool>,
    triangles: Vec<[usize; 3]>,
}

impl Builder {
    fn new(max: usize) -> Self {
        let mut b = Builder {
            max,
            used: 3,
            edge: vec![0; max * max],
            deg: vec![0; max],
            closed: vec![false; max],
            triangles: Vec::new(),
        };
        b.push([0, 1, 2]);
        b
    }

    #[inline]
    fn e(&self, a: usize, b: usize) -> u8 {
        self.edge[a * self.max + b]
    }

    fn bump(&mut self, a: usize, b: usize, by: i8) {
        let k1 = a * self.max + b;
        let k2 = b * self.max + a;
        self.edge[k1] = (self.edge[k1] as i8 + by) as u8;
        self.edge[k2] = self.edge[k1];
    }

    fn neighbours(&self, v: usize) -> usize {
        (0..self.used).filter(|&w| self.e(v, w) > 0).count()
    }

    fn push(&mut self, t: [usize; 3]) {
        let [a, b, c] = t;
        self.bump(a, b, 1);
        self.bump(a, c, 1);
        self.bump(b, c, 1);
        for v in t {
            self.deg[v] += 1;
        }
        self.triangles.push(t);
    }

    fn pop(&mut self) {
        let [a, b, c] = self.triangles.pop().unwrap();
        self.bump(a, b, -1);
        self.bump(a, c, -1);
        self.bump(b, c, -1);
        for v in [a, b, c] {
            self.deg[v] -= 1;
        }
    }

    /// Walks the link of `v` from `from` (an end of a path) and reports
    /// whether the path ends at `to`.
    fn link_path_joins(&self, v: usize, from: usize, to: usize) -> bool {
        let mut prev = usize::MAX;
        let mut cur = from;
        loop {
            let next = self.triangles.iter().find_map(|t| {
                if !t.contains(&v) || !t.contains(&cur) {
                    return None;
                }
                let other = t.iter().copied().find(|&x| x != v && x != cur).unwrap();
                (other != prev).then_some(other)
            });
            match next {
                None => return false,
                Some(n) if n == to => return true,
                Some(n) => {
                    prev = cur;
                    cur = n;
                }
            }
        }
    }

    /// Whether adding `{v, x, y}` keeps the link of `v` a path or a single
    /// cycle. Returns `Some(true)` when the link of `v` would close.
    fn link_ok(&self, v: usize, x: usize, y: usize) -> Option<bool> {
        if self.closed[v] {
            return None;
        }
        let (ex, ey) = (self.e(v, x), self.e(v, y));
        if ex == 1 && ey == 1 && self.link_path_joins(v, x, y) {
            // closing: the path must be the whole link
            let after_nbrs = self.neighbours(v);
            return (self.deg[v] + 1 == after_nbrs).then_some(true);
        }
        Some(false)
    }

    fn admissible(&self, t: [usize; 3]) -> Option<[bool; 3]> {
        let [a, b, c] = t;
        if self.e(a, b) >= 2 || self.e(a, c) >= 2 || self.e(b, c) >= 2 {
            return None;
        }
        let mut s = t;
        s.sort_unstable();
        if self.triangles.iter().any(|u| {
            let mut u = *u;
            u.sort_unstable();
            u == s
        }) {
            return None;
        }
        Some([
            self.link_ok(a, b, c)?,
            self.link_ok(b, a, c)?,
            self.link_ok(c, a, b)?,
        ])
    }

    fn open_edge(&self) -> Option<(usize, usize)> {
        for a in 0..self.used {
            for b in a + 1..self.used {
                if self.e(a, b) == 1 {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn run(&mut self, emit: &mut dyn FnMut(&Builder)) {
        let Some((a, b)) = self.open_edge() else {
            emit(self);
            return;
        };
        let fresh = if self.used < self.max {
            self.used + 1
        } else {
            self.used
        };
        for c in 0..fresh {
            if c == a || c == b {
                continue;
            }
            let is_new = c == self.used;
            let Some(closes) = (if is_new {
                (!self.closed[a] && !self.closed[b]).then_some([false; 3])
            } else {
                self.admissible([a, b, c])
            }) else {
                continue;
            };
            if is_new {
                self.used += 1;
            }
            self.push([a, b, c]);
            for (v, cl) in [a, b, c].into_iter().zip(closes) {
                if cl {
                    self.closed[v] = true;
                }
            }
            self.run(emit);
            for (v, cl) in [a, b, c].into_iter().zip(closes) {
                if cl {
                    self.closed[v] = false;
                }
            }
            self.pop();
            if is_new {
                self.used -= 1;
            }
        }
    }

    fn to_triangulation(&self) -> Triangulation {
        let tris = self
            .triangles
            .iter()
            .map(|&[a, b, c]| {
                Triangle::new(VertexId(a as u32), VertexId(b as u32), VertexId(c as u32)).unwrap()
            })
            .collect();
        Triangulation::from_dense(self.used, tris).expect("builder keeps the complex simplicial")
    }
}

/// Every closed connected surface with at most `max_vertices` vertices,
/// once per isomorphism class, sorted by canonical code.
pub fn enumerate_closed(config: &EnumerationConfig) -> Result<Vec<Triangulation>> {
    config.validate()?;
    let mut raw: Vec<Triangulation> = Vec::new();
    let mut builder = Builder::new(config.max_vertices);
    builder.run(&mut |b| raw.push(b.to_triangulation()));
    let coded: Vec<(CanonicalCode, Triangulation)> = raw
        .into_par_iter()
        .filter_map(|t| {
            let r = validate_surface(&t);
            (r.is_closed_surface
                && config
                    .surface_filter
                    .accepts(r.euler_characteristic, r.orientable))
            .then(|| (canonical_code(&t), t))
        })
        .collect();
    let mut unique: BTreeMap<CanonicalCode, Triangulation> = BTreeMap::new();
    for (code, t) in coded {
        unique.entry(code).or_insert(t);
    }
    Ok(unique.into_values().collect())
}
