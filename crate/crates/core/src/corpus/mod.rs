//! Named triangulations, the closed-surface enumerator, and the scans
//! that check matrix reconstruction over them.

mod catalog;
mod enumerate;
mod fixtures;
mod scan;

pub use catalog::{catalog, CatalogEntry, CATALOG_NAMES, CLOSED_CATALOG};
pub use enumerate::{enumerate_closed, EnumerationConfig, SurfaceFilter};
pub use fixtures::{
    discover_exceptional_self_map, exceptional_self_map, load_fixtures, ExceptionalMapFixture,
    FIXTURES_ENV,
};
pub use scan::{
    exceptional_scan, exceptional_scan_corpus, theorem1_scan, theorem1_scan_corpus,
    ExceptionalReport, MatrixGroup, NonInducedMap, Theorem1Report, Violation,
};
