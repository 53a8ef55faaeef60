//! Intersection matrices and the triangle bijections that preserve them.

use shellrec::corpus::catalog;
use shellrec::{find_intersection_preserving_maps, intersection_matrix, is_induced};

fn main() -> shellrec::Result<()> {
    let tetra = catalog("tetrahedron")?.triangulation;
    print!("{}", intersection_matrix(&tetra).to_csv());

    for name in ["tetrahedron", "octahedron", "half_icosahedron", "half_cube"] {
        let s = catalog(name)?.triangulation;
        let maps = find_intersection_preserving_maps(&s, &s, None);
        let mut induced = 0;
        for f in &maps {
            if is_induced(f, &s, &s)?.is_some() {
                induced += 1;
            }
        }
        println!(
            "{name}: {} self-maps, {induced} induced by vertex maps",
            maps.len()
        );
    }

    let disk = catalog("disk_shell_5")?.triangulation;
    let band = catalog("mobius5")?.triangulation;
    println!(
        "disk and band share a matrix: {}, maps between them: {}",
        intersection_matrix(&disk) == intersection_matrix(&band),
        find_intersection_preserving_maps(&disk, &band, None).len()
    );
    Ok(())
}
