use serde::{Deserialize, Serialize};

use super::Triangulation;
use crate::error::Result;

/// On-disk form: `{"triangles": [["a","b","c"], ...]}`. File order is
/// matrix row order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationFile {
    pub triangles: Vec<[String; 3]>,
}

impl TriangulationFile {
    pub fn into_triangulation(self) -> Result<Triangulation> {
        Triangulation::new(&self.triangles)
    }
}

impl From<&Triangulation> for TriangulationFile {
    fn from(s: &Triangulation) -> Self {
        TriangulationFile {
            triangles: s
                .triangles()
                .iter()
                .map(|t| t.vertices().map(|v| s.label(v).to_string()))
                .collect(),
        }
    }
}

impl Triangulation {
    pub fn from_json(text: &str) -> std::result::Result<Result<Self>, serde_json::Error> {
        let file: TriangulationFile = serde_json::from_str(text)?;
        Ok(file.into_triangulation())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TriangulationFile::from(self)).expect("plain data serializes")
    }
}
