//! Frozen non-extendable self-maps of the two exceptional surfaces.
//!
//! The maps were found once by [`discover_exceptional_self_map`] and are
//! stored with the triangle order they index, so a change in the catalog
//! constructions shows up as a fixture error instead of a silently
//! different map.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use super::catalog::catalog;
use crate::complex::TriangulationFile;
use crate::error::{Error, Result};
use crate::intersection::{find_intersection_preserving_maps, is_induced, TriangleBijection};
use crate::reconstruct::ExceptionalKind;

/// Overrides the directory holding `exceptional_maps.json`.
pub const FIXTURES_ENV: &str = "SHELLREC_FIXTURES";

const EMBEDDED: &str = include_str!("../../fixtures/exceptional_maps.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalMapFixture {
    pub kind: ExceptionalKind,
    pub catalog: String,
    pub triangles: TriangulationFile,
    pub map: TriangleBijection,
    pub provenance: String,
}

/// Reads the fixtures from `$SHELLREC_FIXTURES/exceptional_maps.json` if
/// the variable is set, otherwise the copy compiled into the crate.
pub fn load_fixtures() -> Result<Vec<ExceptionalMapFixture>> {
    let text = match std::env::var_os(FIXTURES_ENV) {
        Some(dir) => {
            let path = PathBuf::from(dir).join("exceptional_maps.json");
            std::fs::read_to_string(&path)
                .map_err(|e| Error::Fixture(format!("{}: {e}", path.display())))?
        }
        None => EMBEDDED.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::Fixture(format!("exceptional_maps.json: {e}")))
}

/// The stored non-extendable self-map, re-verified against the catalog.
pub fn exceptional_self_map(kind: ExceptionalKind) -> Result<TriangleBijection> {
    let fixture = load_fixtures()?
        .into_iter()
        .find(|f| f.kind == kind)
        .ok_or_else(|| Error::Fixture(format!("no fixture for {kind}")))?;
    let entry = catalog(&fixture.catalog)?;
    if TriangulationFile::from(&entry.triangulation) != fixture.triangles {
        return Err(Error::Fixture(format!(
            "catalog `{}` no longer matches the fixture's triangle order",
            fixture.catalog
        )));
    }
    let s = &entry.triangulation;
    match is_induced(&fixture.map, s, s) {
        Ok(None) => Ok(fixture.map),
        Ok(Some(_)) => Err(Error::Fixture(format!(
            "{kind} fixture map is induced by a vertex map"
        ))),
        Err(e) => Err(Error::Fixture(format!("{kind} fixture map: {e}"))),
    }
}

/// Lexicographically first intersection-preserving self-map that no
/// vertex map induces.
pub fn discover_exceptional_self_map(kind: ExceptionalKind) -> Result<TriangleBijection> {
    let s = catalog(kind.catalog_name())?.triangulation;
    find_intersection_preserving_maps(&s, &s, None)
        .into_iter()
        .find(|f| matches!(is_induced(f, &s, &s), Ok(None)))
        .ok_or_else(|| Error::Fixture(format!("no non-induced self-map of the {kind}")))
}
