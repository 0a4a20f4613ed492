//! Input document schema and parsing.
//!
//! A datum document is JSON with `schema: 1`:
//!
//! ```json
//! {
//!   "schema": 1,
//!   "label": "circle-inversion",
//!   "rank": 1,
//!   "generators": [ { "matrix": [[-1]], "translation": [[0, 1]] } ],
//!   "cocycle": "trivial",
//!   "options": { "max_degree": 3, "fiber_points": [[[1, 2]]] }
//! }
//! ```
//!
//! Rationals are `[numerator, denominator]` pairs.  A nontrivial cocycle is
//! an object `{ "modulus": N, "entries": [ { "left": word, "right": word,
//! "exponent": e }, ... ] }` whose entries must cover every ordered pair of
//! group elements; element words are `"e"` or `*`-separated generator
//! tokens such as `"g0*g1"` (the rightmost factor acts first).

use serde::Deserialize;

use crate::cocycle::CocycleTable;
use crate::error::{EngineError, Result};
use crate::group::{close_group, AffineTorusMap, DEFAULT_GROUP_CAP};
use crate::invariants::{BlockDatum, CocycleInput};
use crate::lattice::{IntMatrix, RationalVector};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub schema: u32,
    #[serde(default)]
    pub label: Option<String>,
    pub rank: usize,
    pub generators: Vec<GeneratorDoc>,
    /// Omitted means trivial.
    #[serde(default)]
    pub cocycle: Option<CocycleDoc>,
    #[serde(default)]
    pub options: OptionsDoc,
    #[serde(default)]
    pub notes: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorDoc {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default)]
    pub translation: Option<Vec<(i64, i64)>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum CocycleDoc {
    Flag(String),
    Table(CocycleTableDoc),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleTableDoc {
    pub modulus: u64,
    pub entries: Vec<CocycleEntryDoc>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleEntryDoc {
    pub left: String,
    pub right: String,
    pub exponent: u64,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default)]
    pub group_cap: Option<usize>,
    #[serde(default)]
    pub max_degree: Option<usize>,
    #[serde(default)]
    pub fiber_points: Option<Vec<Vec<(i64, i64)>>>,
}

/// Options that accompany a parsed datum into report generation.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub max_degree: Option<usize>,
    pub fiber_points: Vec<RationalVector>,
    pub group_cap: usize,
}

/// Parse the JSON text of a datum document.
pub fn parse_input_document(text: &str) -> Result<InputDocument> {
    let doc: InputDocument = serde_json::from_str(text).map_err(|e| EngineError::ParseError {
        detail: format!("line {}, column {}: {e}", e.line(), e.column()),
    })?;
    if doc.schema != SCHEMA_VERSION {
        return Err(EngineError::ParseError {
            detail: format!(
                "unsupported schema version {} (this engine reads schema {SCHEMA_VERSION})",
                doc.schema
            ),
        });
    }
    Ok(doc)
}

/// Resolve a generator word like `"e"` or `"g0*g1"` to the composed map.
fn resolve_word(word: &str, generators: &[AffineTorusMap], rank: usize) -> Result<AffineTorusMap> {
    let mut acc = AffineTorusMap::identity(rank);
    let trimmed = word.trim();
    if trimmed == "e" {
        return Ok(acc);
    }
    for token in trimmed.split('*') {
        let token = token.trim();
        let index: usize = token
            .strip_prefix('g')
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| EngineError::ParseError {
                detail: format!("malformed element word token {token:?} (expected \"e\" or \"g<k>\")"),
            })?;
        let generator = generators.get(index).ok_or_else(|| EngineError::ParseError {
            detail: format!("element word references generator g{index}, but only {} generators are defined", generators.len()),
        })?;
        acc = acc.compose(generator);
    }
    Ok(acc)
}

/// Build the validated datum and run options from a parsed document.
pub fn build_block_datum(doc: &InputDocument) -> Result<(BlockDatum, RunOptions)> {
    let rank = doc.rank;
    let label = doc.label.clone().unwrap_or_else(|| "block".to_string());
    let group_cap = doc.options.group_cap.unwrap_or(DEFAULT_GROUP_CAP);

    let mut generators = Vec::with_capacity(doc.generators.len());
    for (k, g) in doc.generators.iter().enumerate() {
        let matrix = IntMatrix::from_rows(&g.matrix).map_err(|e| EngineError::ParseError {
            detail: format!("generator {k}: {e}"),
        })?;
        if matrix.rows() != rank || matrix.cols() != rank {
            return Err(EngineError::ParseError {
                detail: format!(
                    "generator {k}: matrix is {}x{}, expected {rank}x{rank}",
                    matrix.rows(),
                    matrix.cols()
                ),
            });
        }
        let translation = match &g.translation {
            Some(pairs) => RationalVector::from_pairs(pairs).map_err(|e| {
                EngineError::ParseError {
                    detail: format!("generator {k}: {e}"),
                }
            })?,
            None => RationalVector::zero(rank),
        };
        if translation.dim() != rank {
            return Err(EngineError::ParseError {
                detail: format!(
                    "generator {k}: translation has {} coordinates, expected {rank}",
                    translation.dim()
                ),
            });
        }
        let map = AffineTorusMap::new(matrix, translation).map_err(|e| {
            EngineError::ParseError {
                detail: format!("generator {k}: {e}"),
            }
        })?;
        generators.push(map);
    }

    let cocycle_input = match &doc.cocycle {
        None => CocycleInput::Trivial,
        Some(CocycleDoc::Flag(flag)) if flag == "trivial" => CocycleInput::Trivial,
        Some(CocycleDoc::Flag(flag)) => {
            return Err(EngineError::ParseError {
                detail: format!("unknown cocycle flag {flag:?} (expected \"trivial\" or a table)"),
            });
        }
        Some(CocycleDoc::Table(table_doc)) => {
            // Word resolution needs element indices, so close the group here;
            // the datum constructor recloses deterministically to the same
            // indexing.
            let group = close_group(rank, &generators, group_cap)?;
            let mut table = CocycleTable::with_order(table_doc.modulus, group.order())?;
            for entry in &table_doc.entries {
                let left_map = resolve_word(&entry.left, &generators, rank)?;
                let right_map = resolve_word(&entry.right, &generators, rank)?;
                let left = group.index_of(&left_map).ok_or_else(|| {
                    EngineError::InternalError {
                        detail: format!("word {:?} escaped the group closure", entry.left),
                    }
                })?;
                let right = group.index_of(&right_map).ok_or_else(|| {
                    EngineError::InternalError {
                        detail: format!("word {:?} escaped the group closure", entry.right),
                    }
                })?;
                let reduced = entry.exponent % table_doc.modulus.max(1);
                if let Ok(existing) = table.get(left, right) {
                    if existing != reduced {
                        return Err(EngineError::ParseError {
                            detail: format!(
                                "conflicting cocycle entries for pair ({:?}, {:?})",
                                entry.left, entry.right
                            ),
                        });
                    }
                }
                table.set(left, right, entry.exponent)?;
            }
            CocycleInput::Table(table)
        }
    };

    let datum = BlockDatum::new(&label, rank, &generators, cocycle_input, group_cap)?;

    let mut fiber_points = Vec::new();
    if let Some(points) = &doc.options.fiber_points {
        for (i, coords) in points.iter().enumerate() {
            let v = RationalVector::from_pairs(coords).map_err(|e| EngineError::ParseError {
                detail: format!("fiber point {i}: {e}"),
            })?;
            if v.dim() != rank {
                return Err(EngineError::ParseError {
                    detail: format!(
                        "fiber point {i} has {} coordinates, expected {rank}",
                        v.dim()
                    ),
                });
            }
            fiber_points.push(v.reduce_mod_one());
        }
    }

    Ok((
        datum,
        RunOptions {
            max_degree: doc.options.max_degree,
            fiber_points,
            group_cap,
        },
    ))
}

/// One-call convenience: parse JSON text into a validated datum.
pub fn parse_block_datum(text: &str) -> Result<(BlockDatum, RunOptions)> {
    let doc = parse_input_document(text)?;
    build_block_datum(&doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    const INVERSION_DOC: &str = r#"{
        "schema": 1,
        "label": "circle-inversion",
        "rank": 1,
        "generators": [ { "matrix": [[-1]], "translation": [[0, 1]] } ],
        "cocycle": "trivial",
        "options": { "max_degree": 3, "fiber_points": [[[1, 2]], [[1, 3]]] }
    }"#;

    #[test]
    fn parses_a_minimal_document() {
        let (datum, options) = parse_block_datum(INVERSION_DOC).unwrap();
        assert_eq!(datum.label(), "circle-inversion");
        assert_eq!(datum.rank(), 1);
        assert_eq!(datum.group().order(), 2);
        assert_eq!(options.max_degree, Some(3));
        assert_eq!(options.fiber_points.len(), 2);
    }

    #[test]
    fn missing_translation_defaults_to_zero() {
        let text = r#"{
            "schema": 1, "rank": 2,
            "generators": [ { "matrix": [[0,1],[1,0]] } ],
            "cocycle": "trivial"
        }"#;
        let (datum, options) = parse_block_datum(text).unwrap();
        assert_eq!(datum.group().order(), 2);
        assert!(options.fiber_points.is_empty());
        assert_eq!(options.group_cap, DEFAULT_GROUP_CAP);
    }

    #[test]
    fn rejects_wrong_schema_version() {
        let text = r#"{ "schema": 2, "rank": 1, "generators": [], "cocycle": "trivial" }"#;
        let err = parse_block_datum(text).unwrap_err();
        assert!(matches!(err, EngineError::ParseError { .. }));
    }

    #[test]
    fn rejects_malformed_json_with_location() {
        let err = parse_block_datum("{ not json").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line"), "parse error must carry a location: {msg}");
    }

    #[test]
    fn rejects_non_square_generator() {
        let text = r#"{
            "schema": 1, "rank": 2,
            "generators": [ { "matrix": [[1,0]] } ],
            "cocycle": "trivial"
        }"#;
        assert!(parse_block_datum(text).is_err());
    }

    #[test]
    fn rejects_non_unimodular_generator() {
        let text = r#"{
            "schema": 1, "rank": 1,
            "generators": [ { "matrix": [[2]] } ],
            "cocycle": "trivial"
        }"#;
        let err = parse_block_datum(text).unwrap_err();
        assert!(err.to_string().contains("GL"), "should mention GL_d(Z): {err}");
    }

    #[test]
    fn resolves_cocycle_words() {
        let text = r#"{
            "schema": 1, "rank": 2,
            "generators": [
                { "matrix": [[-1,0],[0,1]] },
                { "matrix": [[1,0],[0,-1]] }
            ],
            "cocycle": {
                "modulus": 2,
                "entries": [
                    { "left": "e", "right": "e", "exponent": 0 },
                    { "left": "e", "right": "g0", "exponent": 0 },
                    { "left": "e", "right": "g1", "exponent": 0 },
                    { "left": "e", "right": "g0*g1", "exponent": 0 },
                    { "left": "g0", "right": "e", "exponent": 0 },
                    { "left": "g0", "right": "g0", "exponent": 0 },
                    { "left": "g0", "right": "g1", "exponent": 1 },
                    { "left": "g0", "right": "g0*g1", "exponent": 1 },
                    { "left": "g1", "right": "e", "exponent": 0 },
                    { "left": "g1", "right": "g0", "exponent": 0 },
                    { "left": "g1", "right": "g1", "exponent": 0 },
                    { "left": "g1", "right": "g0*g1", "exponent": 0 },
                    { "left": "g0*g1", "right": "e", "exponent": 0 },
                    { "left": "g0*g1", "right": "g0", "exponent": 0 },
                    { "left": "g0*g1", "right": "g1", "exponent": 1 },
                    { "left": "g0*g1", "right": "g0*g1", "exponent": 1 }
                ]
            }
        }"#;
        let (datum, _) = parse_block_datum(text).unwrap();
        assert_eq!(datum.group().order(), 4);
        assert!(!datum.cocycle().is_trivial());
        assert_eq!(datum.hp_dims().unwrap(), (1, 4));
    }

    #[test]
    fn incomplete_cocycle_table_is_missing_entry() {
        let text = r#"{
            "schema": 1, "rank": 1,
            "generators": [ { "matrix": [[-1]] } ],
            "cocycle": { "modulus": 2, "entries": [
                { "left": "e", "right": "e", "exponent": 0 }
            ] }
        }"#;
        let err = parse_block_datum(text).unwrap_err();
        assert!(matches!(err, EngineError::MissingEntry { .. }));
    }

    #[test]
    fn unknown_generator_in_word_is_rejected() {
        let text = r#"{
            "schema": 1, "rank": 1,
            "generators": [ { "matrix": [[-1]] } ],
            "cocycle": { "modulus": 2, "entries": [
                { "left": "g7", "right": "e", "exponent": 0 }
            ] }
        }"#;
        let err = parse_block_datum(text).unwrap_err();
        assert!(err.to_string().contains("g7"));
    }

    #[test]
    fn fiber_point_dimension_mismatch_is_rejected() {
        let text = r#"{
            "schema": 1, "rank": 1,
            "generators": [],
            "cocycle": "trivial",
            "options": { "fiber_points": [[[1, 2], [1, 3]]] }
        }"#;
        assert!(parse_block_datum(text).is_err());
    }
}
