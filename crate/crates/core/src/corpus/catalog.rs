use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::complex::{validate_surface, SurfaceReport, Triangulation};
use crate::error::{Error, Result};
use crate::shells::{realize_shell_class, ShellClass};

/// A named triangulation with the surface report it must reproduce.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    #[serde(with = "triangulation_serde")]
    pub triangulation: Triangulation,
    pub expected: SurfaceReport,
    pub notes: String,
}

pub(crate) mod triangulation_serde {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::complex::{Triangulation, TriangulationFile};

    pub fn serialize<S: Serializer>(t: &Triangulation, s: S) -> Result<S::Ok, S::Error> {
        TriangulationFile::from(t).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Triangulation, D::Error> {
        TriangulationFile::deserialize(d)?
            .into_triangulation()
            .map_err(serde::de::Error::custom)
    }
}

/// Names accepted by [`catalog`]; `_n` entries take a numeric suffix.
pub const CATALOG_NAMES: &[&str] = &[
    "tetrahedron",
    "octahedron",
    "sphere_bipyramid_n",
    "torus_7",
    "half_icosahedron",
    "half_cube",
    "disk_shell_n",
    "mobius5",
    "mobius6",
];

/// The closed surfaces among the fixed-size catalog entries.
pub const CLOSED_CATALOG: &[&str] = &[
    "tetrahedron",
    "octahedron",
    "sphere_bipyramid_5",
    "torus_7",
    "half_icosahedron",
    "half_cube",
];

struct Expect {
    v: usize,
    e: usize,
    t: usize,
    chi: i64,
    closed: bool,
    orientable: bool,
}

impl Expect {
    fn closed(v: usize, e: usize, t: usize, chi: i64, orientable: bool) -> Self {
        Expect {
            v,
            e,
            t,
            chi,
            closed: true,
            orientable,
        }
    }

    fn report(&self) -> SurfaceReport {
        SurfaceReport {
            vertices: self.v,
            edges: self.e,
            triangles: self.t,
            is_closed_surface: self.closed,
            is_connected: true,
            every_edge_in_two_triangles: self.closed,
            all_links_single_cycles: self.closed,
            euler_characteristic: self.chi,
            orientable: self.orientable,
        }
    }
}

fn suffix(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

pub fn catalog(name: &str) -> Result<CatalogEntry> {
    let (triangulation, expect, notes) = if name == "tetrahedron" {
        (
            Triangulation::from_indexed(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]])?,
            Expect::closed(4, 6, 4, 2, true),
            "boundary of the 3-simplex",
        )
    } else if name == "octahedron" {
        (
            bipyramid(4)?,
            Expect::closed(6, 12, 8, 2, true),
            "bipyramid over a square",
        )
    } else if let Some(n) = suffix(name, "sphere_bipyramid_") {
        if n < 3 {
            return Err(Error::UnknownName(name.to_string()));
        }
        (
            bipyramid(n)?,
            Expect::closed(n + 2, 3 * n, 2 * n, 2, true),
            "suspension of an n-cycle",
        )
    } else if name == "torus_7" {
        let tris: Vec<[usize; 3]> = (0..7)
            .flat_map(|i| [[i, (i + 1) % 7, (i + 3) % 7], [i, (i + 2) % 7, (i + 3) % 7]])
            .collect();
        (
            Triangulation::from_indexed(&tris)?,
            Expect::closed(7, 21, 14, 0, true),
            "seven-vertex torus, triangles {i,i+1,i+3} and {i,i+2,i+3} mod 7",
        )
    } else if name == "half_icosahedron" {
        (
            half_icosahedron(),
            Expect::closed(6, 15, 10, 1, false),
            "icosahedron with antipodal vertices identified",
        )
    } else if name == "half_cube" {
        (
            half_cube(),
            Expect::closed(7, 18, 12, 1, false),
            "cube boundary with antipodes identified, each of the three squares coned from a centre vertex",
        )
    } else if let Some(n) = suffix(name, "disk_shell_") {
        if n < 3 {
            return Err(Error::UnknownName(name.to_string()));
        }
        (
            realize_shell_class(ShellClass::Disk(n)),
            Expect {
                v: n + 1,
                e: 2 * n,
                t: n,
                chi: 1,
                closed: false,
                orientable: true,
            },
            "cone over an n-gon",
        )
    } else if name == "mobius5" {
        (
            realize_shell_class(ShellClass::Mobius5),
            Expect {
                v: 5,
                e: 10,
                t: 5,
                chi: 0,
                closed: false,
                orientable: false,
            },
            "five-triangle Möbius band realizing the 5-shell matrix",
        )
    } else if name == "mobius6" {
        (
            realize_shell_class(ShellClass::Mobius6),
            Expect {
                v: 6,
                e: 12,
                t: 6,
                chi: 0,
                closed: false,
                orientable: false,
            },
            "six-triangle Möbius band realizing the 6-shell matrix",
        )
    } else {
        return Err(Error::UnknownName(name.to_string()));
    };
    let entry = CatalogEntry {
        name: name.to_string(),
        triangulation,
        expected: expect.report(),
        notes: notes.to_string(),
    };
    entry.revalidate()?;
    Ok(entry)
}

impl CatalogEntry {
    /// Recomputes the surface report and compares it with `expected`.
    pub fn revalidate(&self) -> Result<()> {
        let got = validate_surface(&self.triangulation);
        if got != self.expected {
            return Err(Error::Fixture(format!(
                "`{}` validates as {got:?}, expected {:?}",
                self.name, self.expected
            )));
        }
        Ok(())
    }
}

fn bipyramid(n: usize) -> Result<Triangulation> {
    let tris: Vec<[usize; 3]> = (0..n)
        .flat_map(|i| [[i, (i + 1) % n, n], [i, (i + 1) % n, n + 1]])
        .collect();
    Triangulation::from_indexed(&tris)
}

type Point = [i64; 3];

/// Identifies antipodal points of a centrally symmetric vertex set and
/// returns the class of each point.
fn antipodal_classes(points: &[Point]) -> Vec<usize> {
    let mut class = vec![usize::MAX; points.len()];
    let mut next = 0;
    for i in 0..points.len() {
        if class[i] != usize::MAX {
            continue;
        }
        let neg = points[i].map(|x| -x);
        let j = points
            .iter()
            .position(|p| *p == neg)
            .expect("centrally symmetric");
        class[i] = next;
        class[j] = next;
        next += 1;
    }
    class
}

fn quotient(classes: &[usize], triangles: &[[usize; 3]]) -> Triangulation {
    let set: BTreeSet<[usize; 3]> = triangles
        .iter()
        .map(|t| {
            let mut q = t.map(|v| classes[v]);
            q.sort_unstable();
            q
        })
        .collect();
    let tris: Vec<[usize; 3]> = set.into_iter().collect();
    Triangulation::from_indexed(&tris).expect("quotient is simplicial")
}

/// Icosahedron vertices in the golden-ratio coordinates, scaled so that
/// `phi` is represented exactly: points are `(x + y*phi)` per axis, stored
/// as pairs, and adjacency is decided by the exact squared length 4.
fn half_icosahedron() -> Triangulation {
    // each coordinate is u + v*phi with u, v in {-1, 0, 1}
    let mut pts: Vec<[(i64, i64); 3]> = Vec::new();
    for s1 in [-1, 1] {
        for s2 in [-1, 1] {
            pts.push([(0, 0), (s1, 0), (0, s2)]);
            pts.push([(s1, 0), (0, s2), (0, 0)]);
            pts.push([(0, s2), (0, 0), (s1, 0)]);
        }
    }
    // (u + v phi)^2 = u^2 + v^2 (phi + 1) + 2uv phi, using phi^2 = phi + 1
    let sq = |(u, v): (i64, i64)| (u * u + v * v, v * v + 2 * u * v);
    let dist2 = |p: &[(i64, i64); 3], q: &[(i64, i64); 3]| {
        (0..3).fold((0, 0), |acc, k| {
            let d = (p[k].0 - q[k].0, p[k].1 - q[k].1);
            let s = sq(d);
            (acc.0 + s.0, acc.1 + s.1)
        })
    };
    let n = pts.len();
    let adjacent = |i: usize, j: usize| dist2(&pts[i], &pts[j]) == (4, 0);
    let mut tris = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if adjacent(i, j) && adjacent(j, k) && adjacent(i, k) {
                    tris.push([i, j, k]);
                }
            }
        }
    }
    assert_eq!(tris.len(), 20, "icosahedron has 20 faces");
    // antipodes: negate both parts of every coordinate
    let flat: Vec<Point> = pts
        .iter()
        .map(|p| {
            [
                p[0].0 * 3 + p[0].1,
                p[1].0 * 3 + p[1].1,
                p[2].0 * 3 + p[2].1,
            ]
        })
        .collect();
    quotient(&antipodal_classes(&flat), &tris)
}

fn half_cube() -> Triangulation {
    let mut corners: Vec<Point> = Vec::new();
    for x in [-1, 1] {
        for y in [-1, 1] {
            for z in [-1, 1] {
                corners.push([x, y, z]);
            }
        }
    }
    let class = antipodal_classes(&corners);
    let corner_classes = 1 + *class.iter().max().unwrap();
    // one face per axis survives the quotient; cone it from a new centre
    let mut tris = BTreeMap::new();
    for axis in 0..3 {
        let centre = corner_classes + axis;
        let face: Vec<usize> = (0..8).filter(|&i| corners[i][axis] == 1).collect();
        for (p, &i) in face.iter().enumerate() {
            for &j in &face[p + 1..] {
                let differing = (0..3).filter(|&k| corners[i][k] != corners[j][k]).count();
                if differing == 1 {
                    let mut t = [class[i], class[j], centre];
                    t.sort_unstable();
                    tris.insert(t, ());
                }
            }
        }
    }
    let tris: Vec<[usize; 3]> = tris.into_keys().collect();
    Triangulation::from_indexed(&tris).expect("half cube is simplicial")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixed_entry_builds_and_revalidates() {
        for name in [
            "tetrahedron",
            "octahedron",
            "sphere_bipyramid_3",
            "sphere_bipyramid_6",
            "torus_7",
            "half_icosahedron",
            "half_cube",
            "disk_shell_3",
            "disk_shell_5",
            "mobius5",
            "mobius6",
        ] {
            catalog(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_names() {
        for name in ["cube", "sphere_bipyramid_2", "disk_shell_x", ""] {
            assert!(
                matches!(catalog(name), Err(Error::UnknownName(_))),
                "{name}"
            );
        }
    }

    #[test]
    fn half_icosahedron_is_five_regular() {
        let e = catalog("half_icosahedron").unwrap();
        assert!(e.triangulation.degrees().iter().all(|&d| d == 5));
    }

    #[test]
    fn half_cube_degrees() {
        let e = catalog("half_cube").unwrap();
        let mut d = e.triangulation.degrees();
        d.sort_unstable();
        assert_eq!(d, vec![4, 4, 4, 6, 6, 6, 6]);
    }
}
