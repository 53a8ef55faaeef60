mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::*;
use shellrec::corpus::catalog;
use shellrec::{
    classify_shell, is_shell, realize_shell_class, repetition_pattern, shell_around_vertex,
    structural_vertex_list, Error, ShellClass, StructuralVertexList, VertexId,
};

#[test]
fn window_type_determines_the_window() {
    let mut by_type: BTreeMap<(bool, bool), BTreeSet<Vec<Tri>>> = BTreeMap::new();
    for w in window_realizations() {
        let s = to_triangulation(&w);
        let shell = is_shell(&s, &[0, 1, 2, 3]).expect("oracle windows are shells");
        assert!(shell.open);
        let svl = structural_vertex_list(&s, &shell);
        let pattern = repetition_pattern(&svl).unwrap();
        assert_eq!(pattern.len(), 1);
        let key = (pattern[0].fan, pattern[0].twist);
        by_type.entry(key).or_default().insert(ordered_form(&w));
    }
    assert_eq!(by_type.len(), 2, "{by_type:?}");
    for (key, forms) in &by_type {
        assert_eq!(forms.len(), 1, "type {key:?}: {forms:?}");
    }
    assert!(by_type.contains_key(&(true, false)));
    assert!(by_type.contains_key(&(false, true)));
}

#[test]
fn two_fan_windows_force_a_disk() {
    for n in 5..=8 {
        for r in shell_realizations(n) {
            let s = to_triangulation(&r);
            let shell = is_shell(&s, &(0..n).collect::<Vec<_>>()).unwrap();
            let pattern = repetition_pattern(&structural_vertex_list(&s, &shell)).unwrap();
            let two_fans = (0..n).any(|i| pattern[i].fan && pattern[(i + 1) % n].fan);
            if two_fans {
                assert!(pattern.iter().all(|w| w.fan), "n={n}: {r:?}");
                assert_eq!(classify_shell(&s, &shell).unwrap(), ShellClass::Disk(n));
            }
        }
    }
}

#[test]
fn every_oracle_realization_is_classified() {
    for n in 4..=8 {
        let mut seen = BTreeSet::new();
        for r in shell_realizations(n) {
            let s = to_triangulation(&r);
            let shell = is_shell(&s, &(0..n).collect::<Vec<_>>()).unwrap();
            let class = classify_shell(&s, &shell).unwrap();
            let template: Vec<Tri> = plain(&realize_shell_class(class));
            assert!(
                naive_isomorphic(&template, &r),
                "n={n}: {r:?} is not {class}"
            );
            seen.insert(class);
        }
        let mut want = BTreeSet::from([ShellClass::Disk(n)]);
        match n {
            5 => _ = want.insert(ShellClass::Mobius5),
            6 => _ = want.insert(ShellClass::Mobius6),
            _ => {}
        }
        assert_eq!(seen, want, "n={n}");
    }
}

#[test]
fn three_page_book_realizes_the_three_shell_pattern() {
    // the pattern with n = 3 does not pin the realization down
    let classes = iso_classes(shell_realizations(3));
    assert_eq!(classes.len(), 2);
    let book = to_triangulation(&[[0, 1, 2], [0, 1, 3], [0, 1, 4]]);
    let shell = is_shell(&book, &[0, 1, 2]).unwrap();
    assert_eq!(classify_shell(&book, &shell), Err(Error::Unclassifiable));
    assert!(structural_vertex_list(&book, &shell).check_laws().is_err());
}

#[test]
fn band_patterns() {
    let m5 = catalog("mobius5").unwrap().triangulation;
    let sh = is_shell(&m5, &[0, 1, 2, 3, 4]).unwrap();
    let svl = structural_vertex_list(&m5, &sh);
    for i in 0..5 {
        assert_eq!(svl.a_at(i), svl.b_at(i + 3));
    }
    assert!(repetition_pattern(&svl)
        .unwrap()
        .iter()
        .all(|w| w.twist && !w.fan));
    assert_eq!(classify_shell(&m5, &sh).unwrap(), ShellClass::Mobius5);

    let m6 = catalog("mobius6").unwrap().triangulation;
    let sh = is_shell(&m6, &[0, 1, 2, 3, 4, 5]).unwrap();
    let kinds: Vec<bool> = repetition_pattern(&structural_vertex_list(&m6, &sh))
        .unwrap()
        .iter()
        .map(|w| w.fan)
        .collect();
    let alternating = (0..6).all(|i| kinds[i] != kinds[(i + 1) % 6]);
    assert!(alternating, "{kinds:?}");
    assert_eq!(classify_shell(&m6, &sh).unwrap(), ShellClass::Mobius6);
}

#[test]
fn stars_of_closed_surfaces_are_disks() {
    for name in [
        "tetrahedron",
        "octahedron",
        "torus_7",
        "half_icosahedron",
        "half_cube",
    ] {
        let s = catalog(name).unwrap().triangulation;
        for v in s.vertices() {
            let shell = shell_around_vertex(&s, v).unwrap();
            assert!(!shell.open);
            assert_eq!(shell.len(), s.degrees()[v.index()]);
            assert_eq!(
                classify_shell(&s, &shell).unwrap(),
                ShellClass::Disk(shell.len())
            );
        }
    }
    let o = catalog("octahedron").unwrap().triangulation;
    assert_eq!(shell_around_vertex(&o, VertexId(0)).unwrap().len(), 4);
}

#[test]
fn fabricated_list_with_repeated_a_is_rejected() {
    let v = |i: u32| Some(VertexId(i));
    let svl = StructuralVertexList {
        a: vec![v(0), v(1), v(2), v(1), v(4)],
        b: vec![v(4), v(0), v(1), v(2), v(3)],
        open: false,
    };
    assert!(matches!(svl.check_laws(), Err(Error::InvalidShell(_))));
    assert!(matches!(
        repetition_pattern(&svl),
        Err(Error::InvalidShell(_))
    ));
}

#[test]
fn open_shells_are_not_classified() {
    let d = catalog("disk_shell_5").unwrap().triangulation;
    let sh = is_shell(&d, &[0, 1, 2, 3]).unwrap();
    assert!(sh.open);
    assert!(matches!(
        classify_shell(&d, &sh),
        Err(Error::InvalidShell(_))
    ));
    assert!(is_shell(&d, &[0, 2, 1, 3, 4]).is_none());
}

#[test]
fn class_strings_round_trip() {
    for c in [
        ShellClass::Disk(7),
        ShellClass::Mobius5,
        ShellClass::Mobius6,
    ] {
        assert_eq!(c.to_string().parse::<ShellClass>().unwrap(), c);
    }
    assert_eq!(ShellClass::Disk(4).to_string(), "disk:4");
    assert!("disk:x".parse::<ShellClass>().is_err());
}
