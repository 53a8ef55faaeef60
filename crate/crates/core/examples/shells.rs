//! Structural vertex lists and the three shell realizations.

use shellrec::corpus::catalog;
use shellrec::{
    classify_shell, is_shell, repetition_pattern, shell_around_vertex, structural_vertex_list,
    VertexId,
};

fn main() -> shellrec::Result<()> {
    for name in ["disk_shell_6", "mobius5", "mobius6"] {
        let s = catalog(name)?.triangulation;
        let shell =
            is_shell(&s, &(0..s.len()).collect::<Vec<_>>()).expect("catalog shells are shells");
        let svl = structural_vertex_list(&s, &shell);
        let show = |xs: &[Option<VertexId>]| -> Vec<&str> {
            xs.iter().map(|v| v.map_or("-", |v| s.label(v))).collect()
        };
        let windows: String = repetition_pattern(&svl)?
            .iter()
            .map(|w| if w.fan { 'F' } else { 'T' })
            .collect();
        println!(
            "{name:>12}: {} a={:?} b={:?} windows={windows}",
            classify_shell(&s, &shell)?,
            show(&svl.a),
            show(&svl.b)
        );
    }

    let i2 = catalog("half_icosahedron")?.triangulation;
    let star = shell_around_vertex(&i2, VertexId(0))?;
    println!(
        "star of vertex 0 in the half-icosahedron: {}",
        classify_shell(&i2, &star)?
    );
    Ok(())
}
