//! The JSON instance format.
//!
//! ```json
//! {
//!   "kind": "quiver",
//!   "field_p": 2,
//!   "vertices": ["1", "2"],
//!   "arrows": [{"name": "a", "source": "1", "target": "2"}],
//!   "objects": {"M": {"dims": [1, 1], "maps": {"a": [[1]]}}},
//!   "morphisms": {"f": {"source": "M", "target": "S1", "maps": {"1": [[1]], "2": [[]]}}}
//! }
//! ```
//!
//! Tube objects are given by `"partition"` or by a nilpotent `"operator"`;
//! tube morphisms by a single `"matrix"`. Matrices are arrays of rows of
//! nonnegative integers, reduced mod p on load.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Quiver,
    Tube,
}

pub type MatrixSpec = Vec<Vec<u64>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowSpec {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<Vec<usize>>,
    /// Keyed by arrow name; an arrow between zero spaces may be omitted.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<BTreeMap<String, MatrixSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub operator: Option<MatrixSpec>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    /// Quiver morphisms, keyed by vertex name.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub maps: Option<BTreeMap<String, MatrixSpec>>,
    /// Tube morphisms.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<MatrixSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceSpec {
    pub kind: Kind,
    pub field_p: u64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub vertices: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arrows: Vec<ArrowSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub objects: BTreeMap<String, ObjectSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
}

impl InstanceSpec {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("line {}, column {}: {e}", e.line(), e.column())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance specs serialize")
    }

    pub fn tube(field_p: u64) -> Self {
        InstanceSpec {
            kind: Kind::Tube,
            field_p,
            vertices: Vec::new(),
            arrows: Vec::new(),
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
        }
    }

    /// Linearly oriented `A_n` with vertices `1..=n` and arrows `a1, a2, ...`.
    pub fn linear_a(field_p: u64, n: usize) -> Self {
        InstanceSpec {
            kind: Kind::Quiver,
            field_p,
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            arrows: (1..n)
                .map(|i| ArrowSpec {
                    name: format!("a{i}"),
                    source: i.to_string(),
                    target: (i + 1).to_string(),
                })
                .collect(),
            objects: BTreeMap::new(),
            morphisms: BTreeMap::new(),
        }
    }
}

/// `where` with the line of the first occurrence of `"key"` in the source
/// text, when it can be found.
pub fn locate(source: Option<&str>, key: &str, what: String) -> String {
    let needle = format!("\"{key}\"");
    match source.and_then(|s| s.lines().position(|l| l.contains(&needle))) {
        Some(i) => format!("line {}: {what}", i + 1),
        None => what,
    }
}
