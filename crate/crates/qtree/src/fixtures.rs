//! Transcribed polynomial tables, shipped as data so corrections stay
//! reviewable. The built-in copy is `fixtures/published_catalog.json`.

use std::path::Path;

use qtree_core::cospectral::TableEntry;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

const EMBEDDED: &str = include_str!("../fixtures/published_catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub p: usize,
    pub p_pen: usize,
    pub label: String,
    pub text: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub flagged: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fixture {
    pub schema_version: u32,
    #[serde(default)]
    pub description: String,
    pub entries: Vec<FixtureEntry>,
}

impl Fixture {
    pub fn embedded() -> Fixture {
        Fixture::parse(EMBEDDED).expect("embedded fixture is valid")
    }

    pub fn load(path: &Path) -> CliResult<Fixture> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Fixture::parse(&text)
    }

    pub fn parse(text: &str) -> CliResult<Fixture> {
        let f: Fixture =
            serde_json::from_str(text).map_err(|e| CliError::Input(format!("fixture: {e}")))?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "fixture schema version {} (expected {SCHEMA_VERSION})",
                f.schema_version
            )));
        }
        Ok(f)
    }

    /// Entries for `p` vertices, in table order.
    pub fn table(&self, p: usize) -> Vec<TableEntry> {
        self.entries
            .iter()
            .filter(|e| e.p == p)
            .map(|e| TableEntry {
                p_pen: e.p_pen,
                label: e.label.clone(),
                text: e.text.clone(),
                flagged: e.flagged,
            })
            .collect()
    }
}
