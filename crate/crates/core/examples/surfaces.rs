//! Surface checks and canonical codes for a few catalog triangulations.

use shellrec::corpus::catalog;
use shellrec::{canonical_code, is_isomorphic, validate_surface, Triangulation};

fn main() -> shellrec::Result<()> {
    for name in [
        "tetrahedron",
        "octahedron",
        "torus_7",
        "half_icosahedron",
        "half_cube",
        "mobius5",
    ] {
        let s = catalog(name)?.triangulation;
        let r = validate_surface(&s);
        println!(
            "{name:>17}: V={} E={} T={} chi={} closed={} orientable={}",
            r.vertices,
            r.edges,
            r.triangles,
            r.euler_characteristic,
            r.is_closed_surface,
            r.orientable
        );
    }

    // the same octahedron written with other labels and triangle order
    let a = catalog("octahedron")?.triangulation;
    let b = Triangulation::new(&[
        ["s", "e", "n"],
        ["n", "w", "s"],
        ["u", "n", "e"],
        ["w", "n", "u"],
        ["d", "e", "s"],
        ["s", "w", "d"],
        ["e", "u", "d"],
        ["d", "u", "w"],
    ])?;
    println!("codes equal: {}", canonical_code(&a) == canonical_code(&b));
    if let Some(g) = is_isomorphic(&a, &b) {
        let pairs: Vec<String> = a
            .vertices()
            .map(|v| format!("{}->{}", a.label(v), b.label(g[v.index()])))
            .collect();
        println!("vertex map: {}", pairs.join(" "));
    }
    Ok(())
}
