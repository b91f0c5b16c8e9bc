//! JSON interchange for models and actions. Rational values travel as
//! strings ("3", "-1/2"); the torus shorthand takes plain integers.

use std::collections::BTreeSet;
use std::path::Path;

use serde::Deserialize;

use crate::matrix::RatMatrix;
use crate::rat::Rat;
use crate::{Error, Result};

use super::{fujiki, torus, AutoAction, Form, IntersectionModel, SparseTensor};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TensorFile {
    complex_dim: usize,
    h: usize,
    basis: Vec<String>,
    intersection: Vec<EntryFile>,
    kahler: Vec<Rat>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    idx: Vec<usize>,
    val: Rat,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AutoFile {
    matrix: Vec<Vec<Rat>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TorusFile {
    #[serde(rename = "type")]
    kind: String,
    h10_matrix: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FujikiFile {
    #[serde(rename = "type")]
    kind: String,
    q: Vec<Vec<Rat>>,
    c: Rat,
    half_dim: usize,
    omega: Vec<Rat>,
}

fn matrix_from_rows(rows: Vec<Vec<Rat>>) -> Result<RatMatrix> {
    RatMatrix::from_rows(rows)
}

/// Parse a model from JSON text. Shorthand forms carry a "type" tag; the
/// explicit tensor form has none. A torus shorthand also yields its action.
pub fn model_from_json(text: &str) -> Result<(IntersectionModel, Option<AutoAction>)> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let tag = value.get("type").and_then(|t| t.as_str());
    match tag {
        Some("torus") => {
            let file: TorusFile = serde_json::from_value(value)?;
            debug_assert_eq!(file.kind, "torus");
            let d = file.h10_matrix.len();
            for row in &file.h10_matrix {
                if row.len() != d {
                    return Err(Error::Invalid("h10_matrix must be square".into()));
                }
            }
            let a = RatMatrix::from_fn(d, d, |i, j| Rat::from_int(file.h10_matrix[i][j]));
            let (model, auto) = torus::build_torus(&a)?;
            Ok((model, Some(auto)))
        }
        Some("fujiki") => {
            let file: FujikiFile = serde_json::from_value(value)?;
            debug_assert_eq!(file.kind, "fujiki");
            let q = matrix_from_rows(file.q)?;
            let model = fujiki::build_fujiki(&q, &file.c, file.half_dim, &file.omega)?;
            Ok((model, None))
        }
        Some(other) => Err(Error::Invalid(format!("unknown model type {other:?}"))),
        None => {
            let file: TensorFile = serde_json::from_value(value)?;
            let mut tensor = SparseTensor::new(file.complex_dim, file.h);
            let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
            for entry in &file.intersection {
                let mut key = entry.idx.clone();
                key.sort_unstable();
                if !seen.insert(key) {
                    return Err(Error::Invalid(format!(
                        "duplicate intersection entry at {:?}",
                        entry.idx
                    )));
                }
                tensor.add(&entry.idx, entry.val.clone())?;
            }
            let model = IntersectionModel::new(
                file.complex_dim,
                file.h,
                file.basis,
                file.kahler,
                false,
                Form::Tensor(tensor),
            )?;
            Ok((model, None))
        }
    }
}

pub fn auto_from_json(text: &str) -> Result<AutoAction> {
    let file: AutoFile = serde_json::from_str(text)?;
    AutoAction::new(matrix_from_rows(file.matrix)?)
}

/// Reattach the offending path to read and parse failures.
fn with_path(path: &Path, e: Error) -> Error {
    match e {
        Error::Invalid(m) => Error::Invalid(format!("{}: {m}", path.display())),
        Error::Json(j) => Error::Invalid(format!("{}: {j}", path.display())),
        Error::Io(i) => Error::Invalid(format!("{}: {i}", path.display())),
        other => other,
    }
}

pub fn load_model(path: &Path) -> Result<(IntersectionModel, Option<AutoAction>)> {
    let text = std::fs::read_to_string(path).map_err(|e| with_path(path, Error::Io(e)))?;
    model_from_json(&text).map_err(|e| with_path(path, e))
}

pub fn load_auto(path: &Path) -> Result<AutoAction> {
    let text = std::fs::read_to_string(path).map_err(|e| with_path(path, Error::Io(e)))?;
    auto_from_json(&text).map_err(|e| with_path(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelKind;

    #[test]
    fn tensor_roundtrip() {
        let text = r#"{
            "complex_dim": 2,
            "h": 2,
            "basis": ["x", "y"],
            "intersection": [ { "idx": [0, 1], "val": "1" } ],
            "kahler": ["1", "1"]
        }"#;
        let (model, auto) = model_from_json(text).unwrap();
        assert!(auto.is_none());
        assert_eq!(model.kind(), ModelKind::Tensor);
        assert!(!model.is_geometric());
        assert_eq!(model.eval_power(model.omega()).unwrap(), Rat::from_int(2));
    }

    #[test]
    fn torus_shorthand() {
        let text = r#"{ "type": "torus", "h10_matrix": [[1, 0], [1, 1]] }"#;
        let (model, auto) = model_from_json(text).unwrap();
        let auto = auto.unwrap();
        assert_eq!(model.kind(), ModelKind::Torus);
        assert!(model.is_geometric());
        assert!(model.validate(&auto).all_pass());
    }

    #[test]
    fn fujiki_shorthand() {
        let text = r#"{
            "type": "fujiki",
            "q": [["0","0","1"],["0","-1","0"],["1","0","0"]],
            "c": "1",
            "half_dim": 1,
            "omega": ["1", "0", "1"]
        }"#;
        let (model, auto) = model_from_json(text).unwrap();
        assert!(auto.is_none());
        assert_eq!(model.kind(), ModelKind::Fujiki);
    }

    #[test]
    fn rejects_unknown_type_and_degenerate_volume() {
        assert!(model_from_json(r#"{ "type": "weird" }"#).is_err());
        let text = r#"{
            "complex_dim": 2,
            "h": 2,
            "basis": ["x", "y"],
            "intersection": [ { "idx": [0, 0], "val": "1" } ],
            "kahler": ["0", "1"]
        }"#;
        // kahler^2 pairs to zero: rejected at build
        assert!(model_from_json(text).is_err());
    }

    #[test]
    fn rejects_duplicate_entries() {
        let text = r#"{
            "complex_dim": 2,
            "h": 2,
            "basis": ["x", "y"],
            "intersection": [
                { "idx": [0, 1], "val": "1" },
                { "idx": [1, 0], "val": "1" }
            ],
            "kahler": ["1", "1"]
        }"#;
        assert!(model_from_json(text).is_err());
    }

    #[test]
    fn auto_parse() {
        let auto = auto_from_json(r#"{ "matrix": [["1","0"],["1","1"]] }"#).unwrap();
        assert_eq!(*auto.matrix().get(1, 0), Rat::one());
    }
}
