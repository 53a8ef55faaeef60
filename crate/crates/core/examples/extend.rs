//! Extending triangle bijections to vertex isomorphisms.

use shellrec::corpus::{catalog, exceptional_self_map};
use shellrec::{
    extend_map, verify_theorem2, ExceptionalKind, ExtendReport, TriangleBijection, Triangulation,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // a relabelled octahedron with its triangles in reverse order
    let o = catalog("octahedron")?.triangulation;
    let names = ["u", "a", "b", "c", "d", "v"];
    let rev: Vec<[&str; 3]> = o
        .triangles()
        .iter()
        .rev()
        .map(|t| t.vertices().map(|v| names[v.index()]))
        .collect();
    let o2 = Triangulation::new(&rev)?;
    let f = TriangleBijection((0..o.len()).rev().collect());
    let result = extend_map(&f, &o, &o2)?;
    println!(
        "{}",
        serde_json::to_string(&ExtendReport::new(&result, &o, &o2))?
    );

    for kind in [ExceptionalKind::HalfIcosahedron, ExceptionalKind::HalfCube] {
        let s = catalog(kind.catalog_name())?.triangulation;
        let f = exceptional_self_map(kind)?;
        println!(
            "{}",
            serde_json::to_string(&ExtendReport::new(&extend_map(&f, &s, &s)?, &s, &s))?
        );
        let r = verify_theorem2(&s, &s, None)?;
        println!(
            "{kind}: {} maps, {} extend, {} certified exceptional",
            r.maps, r.extending, r.exceptional
        );
    }
    Ok(())
}
