//! JSON shapes shared by the CLI. Polynomial coefficients are decimal
//! strings (lowest degree first) so they survive any JSON reader.

use std::path::Path;

use qtree_core::{
    normalize, spectral_key, CanonicalCode, IntPoly, ShapeDictionary, SpectralKey, SpectrumSample,
    Tree,
};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const DICTIONARY_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PolyJson {
    pub text: String,
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn new(q: &IntPoly) -> PolyJson {
        PolyJson {
            text: q.to_string(),
            coeffs: qtree_core::poly::coeff_strings(q),
        }
    }
}

pub fn poly_from_coeffs(coeffs: &[String]) -> CliResult<IntPoly> {
    let parsed = coeffs
        .iter()
        .map(|c| {
            c.parse()
                .map_err(|_| CliError::Input(format!("bad coefficient {c:?}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(IntPoly::new(parsed))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct TreeJson {
    pub code: String,
    pub p: usize,
    pub p_pen: usize,
    pub edges: Vec<(usize, usize)>,
}

impl TreeJson {
    pub fn new(t: &Tree, code: &CanonicalCode) -> TreeJson {
        TreeJson {
            code: code.to_string(),
            p: t.vertex_count(),
            p_pen: t.pendant_count(),
            edges: t.edges().to_vec(),
        }
    }

    /// The tree drawn from `code`, whose labeling is canonical.
    pub fn from_code(code: &CanonicalCode) -> TreeJson {
        let t = code.to_tree().expect("canonical codes decode");
        TreeJson::new(&t, code)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct EigenvalueJson {
    pub x: f64,
    pub lambda: f64,
    pub multiplicity: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SpectrumJson {
    pub method: String,
    pub l: f64,
    pub x_max: f64,
    pub zero_multiplicity: usize,
    pub eigenvalues: Vec<EigenvalueJson>,
}

impl SpectrumJson {
    pub fn new(method: &str, s: &SpectrumSample) -> SpectrumJson {
        SpectrumJson {
            method: method.into(),
            l: s.l,
            x_max: s.x_max,
            zero_multiplicity: s.zero_multiplicity,
            eigenvalues: s
                .eigenvalues
                .iter()
                .map(|e| EigenvalueJson {
                    x: e.x,
                    lambda: e.lambda,
                    multiplicity: e.multiplicity,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DictionaryEntryJson {
    pub p: usize,
    pub p_pen: usize,
    /// Normalized pencil determinant.
    pub coeffs: Vec<String>,
    pub members: Vec<TreeJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct DictionaryJson {
    pub schema_version: u32,
    pub max_p: usize,
    pub entries: Vec<DictionaryEntryJson>,
}

impl DictionaryJson {
    pub fn new(dict: &ShapeDictionary) -> DictionaryJson {
        DictionaryJson {
            schema_version: DICTIONARY_SCHEMA_VERSION,
            max_p: dict.max_p,
            entries: dict
                .entries
                .iter()
                .map(|(key, entry)| DictionaryEntryJson {
                    p: key.p,
                    p_pen: key.p_pen,
                    coeffs: qtree_core::poly::coeff_strings(key.poly.as_poly()),
                    members: entry.members.iter().map(TreeJson::from_code).collect(),
                })
                .collect(),
        }
    }

    /// Validates every entry: codes must be canonical, edge lists must be
    /// the trees they name, and the stored polynomial must be the tree's key.
    pub fn into_dictionary(self) -> CliResult<ShapeDictionary> {
        if self.schema_version != DICTIONARY_SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "dictionary schema version {} (expected {DICTIONARY_SCHEMA_VERSION})",
                self.schema_version
            )));
        }
        let mut parts = Vec::with_capacity(self.entries.len());
        for e in self.entries {
            let poly = normalize(&poly_from_coeffs(&e.coeffs)?)?;
            let key = SpectralKey {
                p: e.p,
                p_pen: e.p_pen,
                poly,
            };
            let mut members = Vec::new();
            for m in e.members {
                let code = CanonicalCode::parse(&m.code)?;
                let t = Tree::new(m.p, m.edges)?;
                if qtree_core::canonical_code(&t) != code {
                    return Err(CliError::Input(format!(
                        "edge list does not match code {code}"
                    )));
                }
                if spectral_key(&t)? != key {
                    return Err(CliError::Input(format!(
                        "stored polynomial is not the key of {code}"
                    )));
                }
                members.push(code);
            }
            parts.push((key, members));
        }
        Ok(ShapeDictionary::from_parts(self.max_p, parts))
    }
}

pub fn save_dictionary(dict: &ShapeDictionary, path: &Path) -> CliResult<()> {
    let text = serde_json::to_string(&DictionaryJson::new(dict)).expect("dictionary serializes");
    std::fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn load_dictionary(path: &Path) -> CliResult<ShapeDictionary> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let json: DictionaryJson = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    json.into_dictionary()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dictionary_round_trips_through_json() {
        let dict = qtree_core::build_dictionary(7).unwrap();
        let json = serde_json::to_string(&DictionaryJson::new(&dict)).unwrap();
        let back: DictionaryJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.into_dictionary().unwrap(), dict);
    }

    #[test]
    fn tampered_dictionary_is_rejected() {
        let dict = qtree_core::build_dictionary(5).unwrap();
        let mut json = DictionaryJson::new(&dict);
        json.entries[0].coeffs = vec!["1".into(), "0".into(), "7".into()];
        assert!(json.clone().into_dictionary().is_err());
        let mut json = DictionaryJson::new(&dict);
        json.entries[1].members[0].edges.swap(0, 1);
        json.entries[1].members[0].edges[0] = (0, 0);
        assert!(json.into_dictionary().is_err());
        let mut json = DictionaryJson::new(&dict);
        json.schema_version = 9;
        assert!(json.into_dictionary().is_err());
    }

    #[test]
    fn coefficients_are_strings() {
        let q: IntPoly = "48z^4-22z^2+1".parse().unwrap();
        let j = serde_json::to_value(PolyJson::new(&q)).unwrap();
        assert_eq!(j["coeffs"], serde_json::json!(["1", "0", "-22", "0", "48"]));
    }
}
