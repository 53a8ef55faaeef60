//! Shells: cyclic fans of triangles where consecutive triangles share an
//! edge and every other pair shares exactly one vertex.
//!
//! A closed shell is realised by exactly one of three complexes: the cone
//! over an n-gon (a disk), a five-triangle Möbius band, or a six-triangle
//! Möbius band. Which one is read off the repetitions in the shell's
//! structural vertex list and then confirmed against an explicit template.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::complex::{is_isomorphic, vertex_star, Triangulation, VertexId};
use crate::error::{Error, Result};

/// Triangle indices `t_0..t_{n-1}` in shell order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shell {
    pub triangles: Vec<usize>,
    /// The closing pair `t_{n-1}, t_0` meets in one vertex instead of two.
    pub open: bool,
}

impl Shell {
    #[inline]
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ShellClass {
    Disk(usize),
    Mobius5,
    Mobius6,
}

impl fmt::Display for ShellClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShellClass::Disk(n) => write!(f, "disk:{n}"),
            ShellClass::Mobius5 => f.write_str("mobius5"),
            ShellClass::Mobius6 => f.write_str("mobius6"),
        }
    }
}

impl FromStr for ShellClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mobius5" => Ok(ShellClass::Mobius5),
            "mobius6" => Ok(ShellClass::Mobius6),
            _ => s
                .strip_prefix("disk:")
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| n >= 3)
                .map(ShellClass::Disk)
                .ok_or_else(|| Error::InvalidShell(format!("unknown shell class `{s}`"))),
        }
    }
}

impl Serialize for ShellClass {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ShellClass {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Checks the shell pattern on `indices` in the given cyclic order.
pub fn is_shell(s: &Triangulation, indices: &[usize]) -> Option<Shell> {
    let n = indices.len();
    if n < 3 || indices.iter().any(|&i| i >= s.len()) {
        return None;
    }
    let meet = |i: usize, j: usize| s.triangle(indices[i]).meet(&s.triangle(indices[j]));
    let mut open = false;
    for i in 0..n {
        for j in i + 1..n {
            let m = meet(i, j);
            let want = if j == i + 1 {
                2
            } else if i == 0 && j == n - 1 {
                match m {
                    2 => 2,
                    1 => {
                        open = true;
                        1
                    }
                    _ => return None,
                }
            } else {
                1
            };
            if m != want {
                return None;
            }
        }
    }
    Some(Shell {
        triangles: indices.to_vec(),
        open,
    })
}

/// The closed shell formed by the star of `v`.
pub fn shell_around_vertex(s: &Triangulation, v: VertexId) -> Result<Shell> {
    let star = vertex_star(s, v)?;
    if !star.closed {
        return Err(Error::LinkNotCycle(s.label(v).to_string()));
    }
    is_shell(s, &star.triangles)
        .ok_or_else(|| Error::InvalidShell(format!("star of `{}` is not a shell", s.label(v))))
}

/// `a_i = t_i ∖ t_{i+1}`, `b_i = t_i ∖ t_{i-1}` (indices mod n). For an
/// open shell `a_{n-1}` and `b_0` are undefined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralVertexList {
    pub a: Vec<Option<VertexId>>,
    pub b: Vec<Option<VertexId>>,
    pub open: bool,
}

fn lone_difference(s: &Triangulation, i: usize, j: usize) -> Option<VertexId> {
    let (ti, tj) = (s.triangle(i), s.triangle(j));
    let mut rest = ti.vertices().into_iter().filter(|v| !tj.contains(*v));
    match (rest.next(), rest.next()) {
        (Some(v), None) => Some(v),
        _ => None,
    }
}

pub fn structural_vertex_list(s: &Triangulation, shell: &Shell) -> StructuralVertexList {
    let n = shell.len();
    let t = &shell.triangles;
    let a = (0..n)
        .map(|i| {
            if shell.open && i == n - 1 {
                None
            } else {
                lone_difference(s, t[i], t[(i + 1) % n])
            }
        })
        .collect();
    let b = (0..n)
        .map(|i| {
            if shell.open && i == 0 {
                None
            } else {
                lone_difference(s, t[i], t[(i + n - 1) % n])
            }
        })
        .collect();
    StructuralVertexList {
        a,
        b,
        open: shell.open,
    }
}

impl StructuralVertexList {
    #[inline]
    pub fn len(&self) -> usize {
        self.a.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    fn idx(&self, i: isize) -> Option<usize> {
        let n = self.len() as isize;
        if self.open {
            (0..n).contains(&i).then_some(i as usize)
        } else {
            Some(i.rem_euclid(n) as usize)
        }
    }

    pub fn a_at(&self, i: isize) -> Option<VertexId> {
        self.idx(i).and_then(|k| self.a[k])
    }

    pub fn b_at(&self, i: isize) -> Option<VertexId> {
        self.idx(i).and_then(|k| self.b[k])
    }

    /// `a_i ≠ b_i`, `a_i ≠ a_{i+1}`, `b_i ≠ b_{i+1}`, `a_i ≠ b_{i+1}`, and
    /// all a's (resp. all b's) pairwise distinct. Checked wherever both
    /// sides are defined.
    pub fn check_laws(&self) -> Result<()> {
        let n = self.len();
        if self.a.len() != self.b.len() || n < 3 {
            return Err(Error::InvalidShell("structural list shorter than 3".into()));
        }
        let differ = |x: Option<VertexId>, y: Option<VertexId>, what: String| match (x, y) {
            (Some(p), Some(q)) if p == q => Err(Error::InvalidShell(what)),
            _ => Ok(()),
        };
        for i in 0..n as isize {
            differ(self.a_at(i), self.b_at(i), format!("a_{i} = b_{i}"))?;
            if self.idx(i + 1).is_some() {
                differ(
                    self.a_at(i),
                    self.a_at(i + 1),
                    format!("a_{i} = a_{}", i + 1),
                )?;
                differ(
                    self.b_at(i),
                    self.b_at(i + 1),
                    format!("b_{i} = b_{}", i + 1),
                )?;
                differ(
                    self.a_at(i),
                    self.b_at(i + 1),
                    format!("a_{i} = b_{}", i + 1),
                )?;
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                differ(self.a[i], self.a[j], format!("a_{i} = a_{j}"))?;
                differ(self.b[i], self.b[j], format!("b_{i} = b_{j}"))?;
            }
        }
        Ok(())
    }
}

/// Which of the two permitted repetitions a window `t_i..t_{i+3}` shows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowRepetition {
    pub start: usize,
    /// `b_{i+1} = a_{i+2}`: the four triangles fan around one vertex.
    pub fan: bool,
    /// `a_i = b_{i+3}`: the window twists back onto its first triangle.
    pub twist: bool,
}

/// Reports the repetition of every window of four consecutive triangles.
///
/// Fails with [`Error::InvalidShell`] if the list breaks the basic laws, if
/// a window repeats anything but the two permitted pairs, or if a window
/// has no repetition. For n ≥ 5 exactly one repetition per window is
/// required; a closed 4-shell wraps, so both may hold there.
pub fn repetition_pattern(svl: &StructuralVertexList) -> Result<Vec<WindowRepetition>> {
    let n = svl.len();
    if n < 4 {
        return Err(Error::InvalidShell(format!("windows need n >= 4, got {n}")));
    }
    svl.check_laws()?;
    let last = if svl.open { n - 3 } else { n };
    let mut out = Vec::with_capacity(last);
    for i in 0..last as isize {
        // a_k ≠ b_{k+2} inside any three consecutive triangles
        for k in [i, i + 1] {
            if let (Some(x), Some(y)) = (svl.a_at(k), svl.b_at(k + 2)) {
                if x == y && n > 3 {
                    return Err(Error::InvalidShell(format!("a_{k} = b_{}", k + 2)));
                }
            }
        }
        let fan = svl.b_at(i + 1).is_some() && svl.b_at(i + 1) == svl.a_at(i + 2);
        let twist = svl.a_at(i).is_some() && svl.a_at(i) == svl.b_at(i + 3);
        if !fan && !twist {
            return Err(Error::InvalidShell(format!("window {i} has no repetition")));
        }
        if fan && twist && n >= 5 {
            return Err(Error::InvalidShell(format!("window {i} repeats twice")));
        }
        out.push(WindowRepetition {
            start: i as usize,
            fan,
            twist,
        });
    }
    Ok(out)
}

/// The explicit template for each class, labelled `a0, a1, ...` plus the
/// centre `x` for disks.
pub fn realize_shell_class(class: ShellClass) -> Triangulation {
    let a = |i: usize| format!("a{i}");
    let tris: Vec<[String; 3]> = match class {
        ShellClass::Disk(n) => (0..n)
            .map(|i| [a(i), a((i + 1) % n), "x".to_string()])
            .collect(),
        ShellClass::Mobius5 => [[0, 2, 1], [1, 3, 2], [2, 4, 3], [3, 0, 4], [4, 1, 0]]
            .iter()
            .map(|t| t.map(a))
            .collect(),
        ShellClass::Mobius6 => [
            [0, 1, 2],
            [1, 2, 4],
            [2, 3, 4],
            [3, 0, 4],
            [0, 5, 4],
            [5, 2, 0],
        ]
        .iter()
        .map(|t| t.map(a))
        .collect(),
    };
    Triangulation::new(&tris).expect("templates are simplicial")
}

/// Decides which of the three realizations a closed shell is.
pub fn classify_shell(s: &Triangulation, shell: &Shell) -> Result<ShellClass> {
    let n = shell.len();
    if n < 3 {
        return Err(Error::InvalidShell(format!("shell of length {n}")));
    }
    if shell.open {
        return Err(Error::InvalidShell(
            "open shells have no closed realization".into(),
        ));
    }
    if is_shell(s, &shell.triangles).as_ref() != Some(shell) {
        return Err(Error::InvalidShell(
            "triangles do not follow the shell pattern".into(),
        ));
    }
    let svl = structural_vertex_list(s, shell);
    let candidate = if n == 3 {
        svl.check_laws().map_err(|_| Error::Unclassifiable)?;
        ShellClass::Disk(3)
    } else {
        let windows = repetition_pattern(&svl).map_err(|_| Error::Unclassifiable)?;
        let fans = windows.iter().filter(|w| w.fan).count();
        let twists = windows.iter().filter(|w| w.twist).count();
        let alternating = windows
            .iter()
            .enumerate()
            .all(|(i, w)| w.fan != w.twist && w.fan == (i % 2 == 1))
            || windows
                .iter()
                .enumerate()
                .all(|(i, w)| w.fan != w.twist && w.fan == (i % 2 == 0));
        if fans == n {
            ShellClass::Disk(n)
        } else if n == 5 && twists == 5 {
            ShellClass::Mobius5
        } else if n == 6 && alternating {
            ShellClass::Mobius6
        } else {
            return Err(Error::Unclassifiable);
        }
    };
    let sub = s.subcomplex(&shell.triangles);
    if is_isomorphic(&sub, &realize_shell_class(candidate)).is_some() {
        Ok(candidate)
    } else {
        Err(Error::Unclassifiable)
    }
}

/// Common vertex of every triangle in the shell, if exactly one.
pub fn shell_apex(s: &Triangulation, shell: &Shell) -> Option<VertexId> {
    let first = s.triangle(*shell.triangles.first()?);
    let mut common = first
        .vertices()
        .into_iter()
        .filter(|&v| shell.triangles.iter().all(|&i| s.triangle(i).contains(v)));
    match (common.next(), common.next()) {
        (Some(v), None) => Some(v),
        _ => None,
    }
}
