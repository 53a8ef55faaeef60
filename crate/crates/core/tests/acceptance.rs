//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::collections::BTreeSet;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::*;
use shellrec::corpus::{
    catalog, discover_exceptional_self_map, enumerate_closed, exceptional_scan_corpus,
    exceptional_self_map, theorem1_scan_corpus, EnumerationConfig,
};
use shellrec::{
    canonical_code, classify_shell, extend_map, intersection_matrix, is_isomorphic, is_shell,
    reconstruct_from_matrix, repetition_pattern, structural_vertex_list, validate_surface, Error,
    ExceptionalKind, ExtendResult, ReconstructOptions, ShellClass, Triangulation,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn disk_template(n: usize) -> Vec<Tri> {
    (0..n).map(|i| sorted([i, (i + 1) % n, n])).collect()
}

fn mobius5_template() -> Vec<Tri> {
    vec![[0, 1, 2], [1, 2, 3], [2, 3, 4], [0, 3, 4], [0, 1, 4]]
}

fn mobius6_template() -> Vec<Tri> {
    vec![
        [0, 1, 2],
        [1, 2, 4],
        [2, 3, 4],
        [0, 3, 4],
        [0, 4, 5],
        [0, 2, 5],
    ]
}

fn shell_realizations_match() -> Outcome {
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for n in 3..=8 {
        let classes = iso_classes(shell_realizations(n));
        let mut expected = vec![(ShellClass::Disk(n), disk_template(n))];
        match n {
            5 => expected.push((ShellClass::Mobius5, mobius5_template())),
            6 => expected.push((ShellClass::Mobius6, mobius6_template())),
            _ => {}
        }
        let mut matched = BTreeSet::new();
        let mut extra = Vec::new();
        for c in &classes {
            match expected.iter().position(|(_, t)| naive_isomorphic(t, c)) {
                Some(k) => {
                    matched.insert(k);
                    // the library must agree on the class it names
                    let s = to_triangulation(c);
                    let shell = is_shell(&s, &(0..n).collect::<Vec<_>>());
                    let got = shell.map(|sh| classify_shell(&s, &sh));
                    if !matches!(got, Some(Ok(cls)) if cls == expected[k].0) {
                        failures.push(format!("n={n}: library classified {c:?} as {got:?}"));
                    }
                }
                None => extra.push(c.clone()),
            }
        }
        if matched.len() != expected.len() {
            failures.push(format!(
                "n={n}: only {} of {} expected classes",
                matched.len(),
                expected.len()
            ));
        }
        for c in &extra {
            failures.push(format!("n={n}: unexpected realization {c:?}"));
        }
        summary.push(format!("n={n}:{}", classes.len()));
    }
    if failures.is_empty() {
        Ok(summary.join(" "))
    } else {
        Err(failures.join("; "))
    }
}

fn theorem1(corpus: &[Triangulation]) -> Outcome {
    // the enumerator against the subset-scan oracle
    let small: BTreeSet<Vec<Tri>> = corpus
        .iter()
        .filter(|s| s.vertex_count() <= 6)
        .map(|s| ordered_form_set(&plain(s)))
        .collect();
    let oracle: BTreeSet<Vec<Tri>> = (4..=6).flat_map(naive_surfaces).collect();
    if small != oracle {
        return Err(format!(
            "enumerator gives {} surfaces on <= 6 vertices, oracle gives {}",
            small.len(),
            oracle.len()
        ));
    }
    // distinct small classes of equal size never share a matrix
    let reps: Vec<Vec<Tri>> = oracle.into_iter().collect();
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            if reps[i].len() == reps[j].len()
                && !naive_preserving_maps(&reps[i], &reps[j]).is_empty()
            {
                return Err(format!(
                    "oracle finds a shared matrix: {:?} / {:?}",
                    reps[i], reps[j]
                ));
            }
        }
    }
    let report = theorem1_scan_corpus(corpus, true).map_err(|e| e.to_string())?;
    if !report.violations.is_empty() {
        return Err(format!("{} violations", report.violations.len()));
    }
    if let Some(g) = report.groups.iter().find(|g| g.classes.len() != 1) {
        return Err(format!(
            "group {:?} spans {} classes",
            g.members,
            g.classes.len()
        ));
    }
    Ok(format!(
        "{} surfaces, {} matrix groups, 0 violations; {} oracle classes on <= 6 vertices",
        corpus.len(),
        report.groups.len(),
        reps.len()
    ))
}

fn theorem2(corpus: &[Triangulation]) -> Outcome {
    let report = exceptional_scan_corpus(corpus, true).map_err(|e| e.to_string())?;
    let got: BTreeSet<String> = report.codes.iter().cloned().collect();
    let want: BTreeSet<String> = ["half_icosahedron", "half_cube"]
        .iter()
        .map(|n| canonical_code(&catalog(n).unwrap().triangulation).to_hex())
        .collect();
    if got != want {
        return Err(format!("non-induced maps on {:?}", report.members));
    }
    for m in &report.maps {
        let (s, s2) = (&corpus[m.left], &corpus[m.right]);
        let want = ExceptionalKind::from_code(&canonical_code(s));
        match extend_map(&m.map, s, s2) {
            Ok(ExtendResult::Exceptional { kind, .. }) if Some(kind) == want => {}
            other => return Err(format!("member {}: extend_map gave {other:?}", m.left)),
        }
        if naive_induced(&m.map.0, &plain(s), &plain(s2)) {
            return Err(format!(
                "member {}: oracle finds a vertex map for {:?}",
                m.left, m.map.0
            ));
        }
    }
    // every self-map of every member goes through extend_map
    let mut total = 0;
    for (i, s) in corpus.iter().enumerate() {
        for f in shellrec::find_intersection_preserving_maps(s, s, None) {
            total += 1;
            match extend_map(&f, s, s) {
                Err(Error::InternalContradiction(msg)) => {
                    return Err(format!("member {i}: internal contradiction: {msg}"))
                }
                Err(e) => return Err(format!("member {i}: {e}")),
                Ok(ExtendResult::Extends(g)) => {
                    if !induces(&g, &f.0, s, s) {
                        return Err(format!("member {i}: returned vertex map does not induce f"));
                    }
                }
                Ok(ExtendResult::Exceptional { kind, .. }) => {
                    if ExceptionalKind::from_code(&canonical_code(s)) != Some(kind) {
                        return Err(format!("member {i}: certified {kind} on the wrong surface"));
                    }
                }
            }
        }
    }
    Ok(format!(
        "exceptional set = {{half-icosahedron, half-cube}} via {} non-induced maps; {total} self-maps checked",
        report.maps.len()
    ))
}

fn induces(g: &[shellrec::VertexId], f: &[usize], s: &Triangulation, s2: &Triangulation) -> bool {
    s.triangles().iter().enumerate().all(|(i, t)| {
        let img = sorted(t.vertices().map(|v| g[v.index()].index()));
        img == s2.triangle(f[i]).vertices().map(|v| v.index())
    })
}

fn boundary_counterexample() -> Outcome {
    let disk = catalog("disk_shell_5")
        .map_err(|e| e.to_string())?
        .triangulation;
    let mob = catalog("mobius5").map_err(|e| e.to_string())?.triangulation;
    if naive_matrix(&plain(&disk)) != naive_matrix(&plain(&mob)) {
        return Err("oracle matrices differ".into());
    }
    let m = intersection_matrix(&disk);
    if m != intersection_matrix(&mob) {
        return Err("library matrices differ".into());
    }
    if is_isomorphic(&disk, &mob).is_some() || naive_isomorphic(&plain(&disk), &plain(&mob)) {
        return Err("disk and Möbius band reported isomorphic".into());
    }
    let r =
        reconstruct_from_matrix(&m, ReconstructOptions::default()).map_err(|e| e.to_string())?;
    if !r.ambiguous_boundary {
        return Err("reconstruction did not flag the ambiguity".into());
    }
    if intersection_matrix(&r.triangulation) != m {
        return Err("reconstruction does not realize the matrix".into());
    }
    Ok("equal matrices, not isomorphic, ambiguous_boundary = true".into())
}

fn extension_soundness(corpus: &[Triangulation]) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let trials = 1000;
    for trial in 0..trials {
        let s = &corpus[rng.gen_range(0..corpus.len())];
        let n = s.vertex_count();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);
        let mut order: Vec<usize> = (0..s.len()).collect();
        order.shuffle(&mut rng);
        let label = |v: usize| format!("q{}", perm[v]);
        let tris: Vec<[String; 3]> = order
            .iter()
            .map(|&i| s.triangle(i).vertices().map(|v| label(v.index())))
            .collect();
        let s2 = Triangulation::new(&tris).map_err(|e| e.to_string())?;
        // f sends triangle i of s to the position of its image in s2
        let mut f = vec![0; s.len()];
        for (pos, &i) in order.iter().enumerate() {
            f[i] = pos;
        }
        let f = shellrec::TriangleBijection(f);
        match extend_map(&f, s, &s2) {
            Ok(ExtendResult::Extends(g)) => {
                if !induces(&g, &f.0, s, &s2) {
                    return Err(format!("trial {trial}: vertex map does not induce f"));
                }
            }
            other => return Err(format!("trial {trial}: {other:?}")),
        }
    }
    Ok(format!("{trials}/{trials} relabelled pairs extend"))
}

fn svl_laws(corpus: &[Triangulation]) -> Outcome {
    let (mut shells, mut windows) = (0usize, 0usize);
    for (i, s) in corpus.iter().enumerate() {
        let tris = plain(s);
        for (path, open) in all_shells(&tris) {
            shells += 1;
            let Some(shell) = is_shell(s, &path) else {
                return Err(format!("member {i}: library rejects shell {path:?}"));
            };
            if shell.open != open {
                return Err(format!("member {i}: open flag disagrees on {path:?}"));
            }
            if let Some(law) = oracle_law_violation(&tris, &path, open) {
                return Err(format!("member {i}: shell {path:?} breaks {law}"));
            }
            let svl = structural_vertex_list(s, &shell);
            svl.check_laws()
                .map_err(|e| format!("member {i}: {path:?}: {e}"))?;
            if path.len() >= 5 {
                let pattern =
                    repetition_pattern(&svl).map_err(|e| format!("member {i}: {path:?}: {e}"))?;
                for w in pattern {
                    windows += 1;
                    if w.fan == w.twist {
                        return Err(format!(
                            "member {i}: {path:?} window {} not exactly one repetition",
                            w.start
                        ));
                    }
                }
            }
        }
    }
    Ok(format!("{shells} shells, {windows} windows, 0 violations"))
}

/// Checks the list laws directly from set differences.
fn oracle_law_violation(tris: &[Tri], path: &[usize], open: bool) -> Option<String> {
    let n = path.len();
    let t = |i: usize| &tris[path[i % n]];
    let diff = |x: &Tri, y: &Tri| -> Option<usize> {
        let d: Vec<usize> = x.iter().copied().filter(|v| !y.contains(v)).collect();
        (d.len() == 1).then(|| d[0])
    };
    let a: Vec<Option<usize>> = (0..n)
        .map(|i| {
            if open && i == n - 1 {
                None
            } else {
                diff(t(i), t(i + 1))
            }
        })
        .collect();
    let b: Vec<Option<usize>> = (0..n)
        .map(|i| {
            if open && i == 0 {
                None
            } else {
                diff(t(i), t(i + n - 1))
            }
        })
        .collect();
    let same = |x: Option<usize>, y: Option<usize>| x.is_some() && x == y;
    for i in 0..n {
        let j = (i + 1) % n;
        let wraps = open && j == 0;
        if same(a[i], b[i]) {
            return Some(format!("a_{i} != b_{i}"));
        }
        if !wraps && (same(a[i], a[j]) || same(b[i], b[j])) {
            return Some(format!("neighbouring repeats at {i}"));
        }
        if !wraps && same(a[i], b[j]) {
            return Some(format!("a_{i} != b_{j}"));
        }
        for k in i + 1..n {
            if same(a[i], a[k]) || same(b[i], b[k]) {
                return Some(format!("pairwise distinctness at {i},{k}"));
            }
        }
    }
    None
}

fn fixture_stability() -> Outcome {
    let checks = [
        (
            "half_icosahedron",
            ExceptionalKind::HalfIcosahedron,
            6,
            15,
            10,
        ),
        ("half_cube", ExceptionalKind::HalfCube, 7, 18, 12),
    ];
    for (name, kind, v, e, t) in checks {
        let entry = catalog(name).map_err(|e| e.to_string())?;
        entry.revalidate().map_err(|e| e.to_string())?;
        let r = validate_surface(&entry.triangulation);
        if (
            r.vertices,
            r.edges,
            r.triangles,
            r.euler_characteristic,
            r.orientable,
            r.is_closed_surface,
        ) != (v, e, t, 1, false, true)
        {
            return Err(format!("{name}: {r:?}"));
        }
        let degrees = entry.triangulation.degrees();
        if name == "half_icosahedron" && degrees.iter().any(|&d| d != 5) {
            return Err(format!("{name}: degrees {degrees:?}"));
        }
        if name == "half_cube" {
            let mut d = degrees.clone();
            d.sort_unstable();
            if d != [4, 4, 4, 6, 6, 6, 6] {
                return Err(format!("{name}: degrees {degrees:?}"));
            }
        }
        let stored = exceptional_self_map(kind).map_err(|e| e.to_string())?;
        let fresh = discover_exceptional_self_map(kind).map_err(|e| e.to_string())?;
        if stored != fresh {
            return Err(format!("{name}: stored map differs from a fresh search"));
        }
        if naive_induced(
            &stored.0,
            &plain(&entry.triangulation),
            &plain(&entry.triangulation),
        ) {
            return Err(format!(
                "{name}: oracle finds a vertex map for the stored map"
            ));
        }
    }
    Ok("half_icosahedron and half_cube re-validate; stored maps stay non-induced".into())
}

fn main() {
    let t0 = Instant::now();
    let corpus = enumerate_closed(&EnumerationConfig::default()).expect("enumeration runs");
    eprintln!("corpus: {} surfaces in {:?}", corpus.len(), t0.elapsed());

    let criteria: Vec<Criterion> = vec![
        (
            "1 shell realizations n=3..8",
            Box::new(shell_realizations_match),
        ),
        (
            "2 matrix determines surface, <= 8 vertices",
            Box::new(|| theorem1(&corpus)),
        ),
        (
            "3 exceptional set and certificates",
            Box::new(|| theorem2(&corpus)),
        ),
        (
            "4 disk/Möbius boundary ambiguity",
            Box::new(boundary_counterexample),
        ),
        (
            "5 extension soundness, 1000 relabellings",
            Box::new(|| extension_soundness(&corpus)),
        ),
        (
            "6 structural vertex list laws",
            Box::new(|| svl_laws(&corpus)),
        ),
        ("7 exceptional fixtures", Box::new(fixture_stability)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} ({secs:.2}s)"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} ({secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all acceptance criteria passed");
}
