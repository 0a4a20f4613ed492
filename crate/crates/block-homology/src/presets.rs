//! Built-in example data, stored as ordinary input documents so the presets
//! exercise exactly the same parsing path as user files.

/// Preset names in listing order.
pub fn preset_names() -> &'static [&'static str] {
    &[
        "sl2-ord-gt2",
        "sl2-ord-2",
        "sl2-ord-1",
        "gl2-principal",
        "gl3-principal",
        "klein-four-heisenberg",
    ]
}

/// The JSON document of a preset, if the name is known.
pub fn preset_document(name: &str) -> Option<&'static str> {
    match name {
        "sl2-ord-gt2" => Some(SL2_ORD_GT2),
        "sl2-ord-2" => Some(SL2_ORD_2),
        "sl2-ord-1" => Some(SL2_ORD_1),
        "gl2-principal" => Some(GL2_PRINCIPAL),
        "gl3-principal" => Some(GL3_PRINCIPAL),
        "klein-four-heisenberg" => Some(KLEIN_FOUR_HEISENBERG),
        _ => None,
    }
}

/// First line of a preset's notes, for listings.
pub fn preset_summary(name: &str) -> Option<String> {
    let doc = preset_document(name)?;
    let parsed = crate::input::parse_input_document(doc).ok()?;
    Some(
        parsed
            .notes
            .unwrap_or_default()
            .lines()
            .next()
            .unwrap_or("")
            .to_string(),
    )
}

const SL2_ORD_GT2: &str = r#"{
  "schema": 1,
  "label": "sl2-ord-gt2",
  "rank": 1,
  "generators": [],
  "cocycle": "trivial",
  "options": {
    "max_degree": 1,
    "fiber_points": [[[0, 1]], [[1, 3]]]
  },
  "notes": "Rank-1 torus with trivial symmetry group: one free line in each degree 0 and 1."
}"#;

const SL2_ORD_2: &str = r#"{
  "schema": 1,
  "label": "sl2-ord-2",
  "rank": 1,
  "generators": [
    { "matrix": [[-1]], "translation": [[0, 1]] }
  ],
  "cocycle": "trivial",
  "options": {
    "max_degree": 3,
    "fiber_points": [[[0, 1]], [[1, 2]], [[1, 3]]]
  },
  "notes": "Circle with inversion symmetry: invariant functions plus one extra line at each of the two fixed points."
}"#;

const SL2_ORD_1: &str = r#"{
  "schema": 1,
  "label": "sl2-ord-1",
  "rank": 1,
  "generators": [
    { "matrix": [[-1]], "translation": [[0, 1]] }
  ],
  "cocycle": "trivial",
  "options": {
    "max_degree": 3,
    "fiber_points": [[[0, 1]], [[1, 2]], [[1, 3]]]
  },
  "notes": "Same engine datum as sl2-ord-2: the invariants depend only on the triple (rank, group, cocycle), and the two blocks differ only in data the engine does not consume."
}"#;

const GL2_PRINCIPAL: &str = r#"{
  "schema": 1,
  "label": "gl2-principal",
  "rank": 2,
  "generators": [
    { "matrix": [[0, 1], [1, 0]] }
  ],
  "cocycle": "trivial",
  "options": {
    "max_degree": 2,
    "fiber_points": [[[0, 1], [0, 1]], [[1, 3], [1, 3]], [[1, 4], [0, 1]]]
  },
  "notes": "Two-torus modulo the coordinate swap: the symmetric square of a circle, with the diagonal as extra stratum."
}"#;

const GL3_PRINCIPAL: &str = r#"{
  "schema": 1,
  "label": "gl3-principal",
  "rank": 3,
  "generators": [
    { "matrix": [[0, 1, 0], [1, 0, 0], [0, 0, 1]] },
    { "matrix": [[1, 0, 0], [0, 0, 1], [0, 1, 0]] }
  ],
  "cocycle": "trivial",
  "options": {
    "max_degree": 3,
    "fiber_points": [[[0, 1], [0, 1], [0, 1]]]
  },
  "notes": "Three-torus modulo the full permutation action of S3."
}"#;

const KLEIN_FOUR_HEISENBERG: &str = r#"{
  "schema": 1,
  "label": "klein-four-heisenberg",
  "rank": 2,
  "generators": [
    { "matrix": [[-1, 0], [0, 1]] },
    { "matrix": [[1, 0], [0, -1]] }
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
  },
  "options": {
    "max_degree": 2,
    "fiber_points": [[[0, 1], [0, 1]], [[1, 3], [0, 1]], [[1, 2], [1, 2]]]
  },
  "notes": "Klein four group of coordinate sign flips on the two-torus, twisted by the nondegenerate bilinear cocycle: the twisted symmetry algebra at the origin collapses to a single matrix block."
}"#;
