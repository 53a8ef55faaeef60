//! Rebuilding triangulations from bare intersection matrices.

use shellrec::corpus::catalog;
use shellrec::{intersection_matrix, is_isomorphic, reconstruct_from_matrix, ReconstructOptions};

fn main() -> shellrec::Result<()> {
    for name in ["octahedron", "torus_7", "half_cube"] {
        let s = catalog(name)?.triangulation;
        let r = reconstruct_from_matrix(&intersection_matrix(&s), ReconstructOptions::default())?;
        println!(
            "{name}: rebuilt {} triangles, isomorphic to the original: {}",
            r.triangulation.len(),
            is_isomorphic(&r.triangulation, &s).is_some()
        );
    }

    let m = intersection_matrix(&catalog("disk_shell_5")?.triangulation);
    let r = reconstruct_from_matrix(&m, ReconstructOptions::default())?;
    println!("5-shell matrix: ambiguous = {}", r.ambiguous_boundary);
    println!("  one realization: {}", r.triangulation.to_json());
    if let Some(alt) = r.alternative {
        println!("  another:         {}", alt.to_json());
    }
    Ok(())
}
