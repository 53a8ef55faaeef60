//! Prints a fresh `exceptional_maps.json`, one non-extendable self-map per
//! exceptional surface, and runs each through `extend_map`.
//!
//!     cargo run --example exceptional_maps > fixtures/exceptional_maps.json

use shellrec::corpus::{catalog, discover_exceptional_self_map, ExceptionalMapFixture};
use shellrec::{extend_map, ExceptionalKind, ExtendResult, TriangulationFile};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut out = Vec::new();
    for kind in [ExceptionalKind::HalfIcosahedron, ExceptionalKind::HalfCube] {
        let s = catalog(kind.catalog_name())?.triangulation;
        let f = discover_exceptional_self_map(kind)?;
        match extend_map(&f, &s, &s)? {
            ExtendResult::Exceptional {
                kind: found,
                witness,
            } => {
                eprintln!(
                    "{kind}: certified {found} at vertex {}",
                    s.label(witness.vertex)
                );
            }
            ExtendResult::Extends(_) => eprintln!("{kind}: unexpectedly extends"),
        }
        out.push(ExceptionalMapFixture {
            kind,
            catalog: kind.catalog_name().to_string(),
            triangles: TriangulationFile::from(&s),
            map: f,
            provenance: "lexicographically first non-induced self-map from exhaustive search"
                .into(),
        });
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    Ok(())
}
