//! Versioned JSON model documents.
//!
//! ```json
//! { "format": 1, "name": "kt", "dim": 4,
//!   "brackets": [{"i": 1, "j": 2, "k": 3, "c": "-1"}],
//!   "J": [["0","0","0","-1"], ["0","0","-1","0"], ["0","1","0","0"], ["1","0","0","0"]] }
//! ```
//!
//! Indices are 1-based. `J[r][c]` is the `X_r`-component of `J X_c`.
//! The optional `holomorphic_frame` lists the frame vectors generating the
//! (1,0)-frame in coframe order.

use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::exact::{parse_rational, Matrix, Rational};

use super::{Bracket, LieModel};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDoc {
    format: u64,
    name: String,
    dim: usize,
    #[serde(default)]
    brackets: Vec<BracketDoc>,
    #[serde(rename = "J")]
    j: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    holomorphic_frame: Option<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BracketDoc {
    i: usize,
    j: usize,
    k: usize,
    c: String,
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn load_model_str(text: &str) -> Result<LieModel, ModelError> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
    if doc.format != 1 {
        return Err(ModelError::Format(doc.format));
    }
    let dim = doc.dim;
    if doc.j.len() != dim || doc.j.iter().any(|r| r.len() != dim) {
        return Err(ModelError::BadJShape {
            dim,
            rows: doc.j.len(),
            lens: doc.j.iter().map(Vec::len).collect(),
        });
    }
    let mut rows = Vec::with_capacity(dim);
    for (r, row) in doc.j.iter().enumerate() {
        let mut out = Vec::with_capacity(dim);
        for (c, s) in row.iter().enumerate() {
            out.push(parse_rational(s).map_err(|source| ModelError::Scalar {
                field: format!("J[{}][{}]", r + 1, c + 1),
                source,
            })?);
        }
        rows.push(out);
    }
    let mut brackets = Vec::with_capacity(doc.brackets.len());
    for (entry, b) in doc.brackets.iter().enumerate() {
        for index in [b.i, b.j, b.k] {
            if index == 0 || index > dim {
                return Err(ModelError::IndexOutOfRange { entry, index, dim });
            }
        }
        let c = parse_rational(&b.c).map_err(|source| ModelError::Scalar {
            field: format!("brackets[{entry}].c"),
            source,
        })?;
        brackets.push(Bracket { i: b.i - 1, j: b.j - 1, k: b.k - 1, c });
    }
    let model = LieModel::new(doc.name, dim, &brackets, Matrix::from_rows(dim, rows))?;
    Ok(match doc.holomorphic_frame {
        Some(f) => model.with_holomorphic_frame(f),
        None => model,
    })
}

pub fn model_to_json(model: &LieModel) -> String {
    let n = model.dim();
    let doc = ModelDoc {
        format: 1,
        name: model.name().to_string(),
        dim: n,
        brackets: model
            .brackets()
            .into_iter()
            .map(|b| BracketDoc { i: b.i + 1, j: b.j + 1, k: b.k + 1, c: fmt_rational(&b.c) })
            .collect(),
        j: (0..n).map(|r| (0..n).map(|c| fmt_rational(&model.j()[(r, c)])).collect()).collect(),
        holomorphic_frame: model.holomorphic_frame().map(<[usize]>::to_vec),
    };
    serde_json::to_string_pretty(&doc).expect("model serialization")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{catalog, catalog_names};

    #[test]
    fn catalog_round_trip() {
        for name in catalog_names() {
            let m = catalog(name).unwrap();
            let text = model_to_json(&m);
            let back = load_model_str(&text).unwrap();
            assert_eq!(back, m);
            assert_eq!(model_to_json(&back), text);
        }
    }

    #[test]
    fn diagnostics() {
        let bad_rational = r#"{"format":1,"name":"x","dim":2,"J":[["0","-1"],["1","x/2"]]}"#;
        let e = load_model_str(bad_rational).unwrap_err();
        assert!(e.to_string().contains("J[2][2]"), "{e}");

        let odd = r#"{"format":1,"name":"x","dim":3,"J":[["0","0","0"],["0","0","0"],["0","0","0"]]}"#;
        assert_eq!(load_model_str(odd).unwrap_err(), ModelError::OddDimension(3));

        let ragged = r#"{"format":1,"name":"x","dim":2,"J":[["0","-1"],["1"]]}"#;
        assert!(matches!(load_model_str(ragged), Err(ModelError::BadJShape { .. })));

        let version = r#"{"format":2,"name":"x","dim":2,"J":[["0","-1"],["1","0"]]}"#;
        assert_eq!(load_model_str(version).unwrap_err(), ModelError::Format(2));

        let extra = r#"{"format":1,"name":"x","dim":2,"J":[["0","-1"],["1","0"]],"metric":[]}"#;
        assert!(matches!(load_model_str(extra), Err(ModelError::Json(_))));

        let syntax = "{\"format\":1,\n\"name\":}";
        let e = load_model_str(syntax).unwrap_err();
        assert!(e.to_string().contains("line 2"), "{e}");

        let range = r#"{"format":1,"name":"x","dim":2,"brackets":[{"i":1,"j":3,"k":1,"c":"1"}],"J":[["0","-1"],["1","0"]]}"#;
        assert!(matches!(load_model_str(range), Err(ModelError::IndexOutOfRange { index: 3, .. })));
    }
}
