//! Enumerates closed surfaces on up to eight vertices and runs both scans.
//!
//!     cargo run --release --example scans -- 8

use std::collections::BTreeMap;

use shellrec::corpus::{
    enumerate_closed, exceptional_scan_corpus, theorem1_scan_corpus, EnumerationConfig,
};
use shellrec::validate_surface;

fn main() -> shellrec::Result<()> {
    let max = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(8);
    let corpus = enumerate_closed(&EnumerationConfig::with_max_vertices(max))?;
    let mut tally: BTreeMap<(usize, i64, bool), usize> = BTreeMap::new();
    for s in &corpus {
        let r = validate_surface(s);
        *tally
            .entry((r.vertices, r.euler_characteristic, r.orientable))
            .or_default() += 1;
    }
    for ((v, chi, orientable), count) in tally {
        println!(
            "V={v} chi={chi:>2} {:<14} {count}",
            if orientable {
                "orientable"
            } else {
                "non-orientable"
            }
        );
    }

    let t1 = theorem1_scan_corpus(&corpus, true)?;
    println!(
        "{} surfaces, {} matrix groups, {} violations",
        t1.corpus_size,
        t1.groups.len(),
        t1.violations.len()
    );
    let ex = exceptional_scan_corpus(&corpus, true)?;
    for &member in &ex.members {
        let r = validate_surface(&corpus[member]);
        println!(
            "non-induced maps on member {member}: V={} T={} chi={}",
            r.vertices, r.triangles, r.euler_characteristic
        );
    }
    Ok(())
}
