//! JSON wire format for algebras.
//!
//! ```json
//! {"dim": 4, "label": "n4",
//!  "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
//!               {"i": 1, "j": 3, "terms": [{"k": 4, "c": "1"}]}]}
//! ```
//!
//! Indices are 1-based with `i < j`; absent pairs mean a zero bracket; `c` is
//! the scalar string `p/q`.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::LieAlgebra;
use crate::exactlin::Scalar;

#[derive(Serialize, Deserialize)]
struct TermRepr {
    k: usize,
    c: Scalar,
}

#[derive(Serialize, Deserialize)]
struct BracketRepr {
    i: usize,
    j: usize,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraRepr {
    dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
    brackets: Vec<BracketRepr>,
}

impl Serialize for LieAlgebra {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let brackets = self
            .brackets()
            .map(|(&(i, j), coeffs)| BracketRepr {
                i: i + 1,
                j: j + 1,
                terms: coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| TermRepr {
                        k: k + 1,
                        c: c.clone(),
                    })
                    .collect(),
            })
            .collect();
        AlgebraRepr {
            dim: self.dim(),
            label: self.label().map(str::to_string),
            brackets,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LieAlgebra {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let repr = AlgebraRepr::deserialize(deserializer)?;
        let mut seen = std::collections::BTreeSet::new();
        let mut brackets = Vec::new();
        for b in repr.brackets {
            if b.i == 0 || b.j == 0 || b.i > repr.dim || b.j > repr.dim || b.i >= b.j {
                return Err(D::Error::custom(format!(
                    "bracket indices ({}, {}) must satisfy 1 <= i < j <= {}",
                    b.i, b.j, repr.dim
                )));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(D::Error::custom(format!(
                    "duplicate bracket entry for ({}, {})",
                    b.i, b.j
                )));
            }
            let mut coeffs = vec![Scalar::zero(); repr.dim];
            for t in b.terms {
                if t.k == 0 || t.k > repr.dim {
                    return Err(D::Error::custom(format!(
                        "term index {} out of range 1..={}",
                        t.k, repr.dim
                    )));
                }
                if !coeffs[t.k - 1].is_zero() {
                    return Err(D::Error::custom(format!(
                        "duplicate term k={} in bracket ({}, {})",
                        t.k, b.i, b.j
                    )));
                }
                coeffs[t.k - 1] = t.c;
            }
            brackets.push(((b.i - 1, b.j - 1), coeffs));
        }
        LieAlgebra::new(repr.dim, brackets, repr.label).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    #[test]
    fn round_trip_catalog_entries() {
        for name in ["n4", "contre6", "g6", "sl2"] {
            let g = super::super::catalog(name, &BTreeMap::new()).unwrap();
            let text = serde_json::to_string(&g).unwrap();
            let back: LieAlgebra = serde_json::from_str(&text).unwrap();
            assert_eq!(g, back);
        }
    }

    #[test]
    fn parses_spec_shape() {
        let text = r#"{"dim": 4, "label": "n4",
            "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
                         {"i": 1, "j": 3, "terms": [{"k": 4, "c": "1"}]}]}"#;
        let g: LieAlgebra = serde_json::from_str(text).unwrap();
        let expected = super::super::catalog("n4", &BTreeMap::new()).unwrap();
        assert_eq!(g, expected);
    }

    #[test]
    fn rejects_malformed_documents() {
        let bad_order = r#"{"dim": 3, "brackets": [{"i": 2, "j": 1, "terms": []}]}"#;
        assert!(serde_json::from_str::<LieAlgebra>(bad_order).is_err());
        let dup = r#"{"dim": 3, "brackets": [
            {"i": 1, "j": 2, "terms": [{"k": 3, "c": "1"}]},
            {"i": 1, "j": 2, "terms": [{"k": 3, "c": "2"}]}]}"#;
        assert!(serde_json::from_str::<LieAlgebra>(dup).is_err());
        let out_of_range = r#"{"dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 4, "c": "1"}]}]}"#;
        assert!(serde_json::from_str::<LieAlgebra>(out_of_range).is_err());
        let bad_scalar = r#"{"dim": 3, "brackets": [{"i": 1, "j": 2, "terms": [{"k": 3, "c": "1/0"}]}]}"#;
        assert!(serde_json::from_str::<LieAlgebra>(bad_scalar).is_err());
    }
}
