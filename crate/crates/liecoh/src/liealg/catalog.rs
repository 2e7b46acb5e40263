//! Built-in catalog of named Lie algebras.
//!
//! Covers the standard low-dimensional algebras used as test beds (abelian,
//! Heisenberg, the solvable 4-dimensional families) and the filiform model
//! laws `mu0 + combinations of psi_{i,j}` in dimensions 6 and 8, realized
//! through the adapted-basis parameter map.

use std::collections::BTreeMap;

use super::LieAlgebra;
use crate::exactlin::Scalar;
use crate::filiform::{build, FiliformParams};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog name {0:?}")]
    UnknownName(String),
    #[error("catalog entry {name:?} requires parameter {param:?}")]
    MissingParam { name: String, param: String },
    #[error("bad parameter {param:?} for {name:?}: {reason}")]
    BadParam {
        name: String,
        param: String,
        reason: String,
    },
}

/// Metadata for one catalog entry.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub description: &'static str,
}

pub fn catalog_entries() -> Vec<CatalogEntry> {
    macro_rules! entry {
        ($name:literal, [$($p:literal),*], $desc:literal) => {
            CatalogEntry { name: $name, params: &[$($p),*], description: $desc }
        };
    }
    vec![
        entry!("abelian", ["n"], "abelian algebra of dimension n"),
        entry!("n3", [], "Heisenberg algebra: [e1,e2]=e3"),
        entry!("n4", [], "filiform nilpotent: [e1,e2]=e3, [e1,e3]=e4"),
        entry!("r2", [], "non-abelian 2-dimensional: [e1,e2]=e1"),
        entry!("r2c2", [], "r2 + 2-dimensional abelian factor"),
        entry!(
            "r3lam",
            ["lambda"],
            "4-dimensional solvable: [e1,e2]=e2, [e1,e3]=lambda*e3, central e4 (lambda nonzero)"
        ),
        entry!("r3m1c", [], "r3lam at lambda = -1"),
        entry!("r2r2", [], "r2 + r2: [e1,e2]=e1, [e3,e4]=e3"),
        entry!("sl2", [], "sl2: [e1,e2]=2e2, [e1,e3]=-2e3, [e2,e3]=e1"),
        entry!("sl2c", [], "sl2 + 1-dimensional center"),
        entry!("g1m1", [], "[e1,e2]=e2, [e1,e3]=e3, [e1,e4]=-e4"),
        entry!(
            "g2",
            ["alpha"],
            "[e1,e2]=e3, [e1,e3]=e4, [e1,e4]=alpha*e2-alpha*e3+e4"
        ),
        entry!("g6", [], "[e1,e2]=e2, [e1,e3]=e3, [e1,e4]=2e4, [e2,e3]=e4"),
        entry!(
            "g8",
            ["alpha"],
            "[e1,e2]=e3, [e1,e3]=-alpha*e2+e3, [e1,e4]=e4, [e2,e3]=e4"
        ),
        entry!(
            "contre6",
            [],
            "6-dimensional filiform: [e1,ei]=e(i+1), [e2,e5]=-e6, [e3,e4]=e6"
        ),
        entry!("mu0", ["n"], "filiform model law with all parameters zero"),
        entry!("mu6_1", [], "mu0 in dimension 6"),
        entry!("mu6_2", [], "mu0 + psi_{2,5} in dimension 6"),
        entry!("mu6_3", [], "mu0 + psi_{2,6} in dimension 6"),
        entry!("mu8_5", ["alpha"], "mu0 + alpha*psi_{2,5} + psi_{3,7} + psi_{3,8}"),
        entry!("mu8_6", ["alpha"], "mu0 + alpha*psi_{2,5} + psi_{3,7}"),
        entry!("mu8_9", ["alpha"], "mu0 + alpha*psi_{2,6} + psi_{2,7} + psi_{3,8}"),
        entry!("mu8_10", ["alpha"], "mu0 + alpha*psi_{2,6} + psi_{3,8}"),
        entry!("mu8_11_0", [], "mu0 + psi_{2,7} + psi_{2,8}"),
        entry!("mu8_15", [], "mu0 + psi_{2,6} + psi_{2,7}"),
        entry!("mu8_16", [], "mu0 + psi_{2,6}"),
        entry!("mu8_17", [], "mu0 + psi_{2,7}"),
        entry!("mu8_18", [], "mu0 + psi_{2,8}"),
        entry!("mu8_19", [], "mu0 in dimension 8"),
    ]
}

fn get_param(
    name: &str,
    params: &BTreeMap<String, Scalar>,
    key: &str,
) -> Result<Scalar, CatalogError> {
    params
        .get(key)
        .cloned()
        .ok_or_else(|| CatalogError::MissingParam {
            name: name.to_string(),
            param: key.to_string(),
        })
}

fn get_dim_param(
    name: &str,
    params: &BTreeMap<String, Scalar>,
    key: &str,
    min: usize,
) -> Result<usize, CatalogError> {
    let v = get_param(name, params, key)?;
    let n = v.to_usize().ok_or_else(|| CatalogError::BadParam {
        name: name.to_string(),
        param: key.to_string(),
        reason: format!("expected a non-negative integer, got {v}"),
    })?;
    if n < min {
        return Err(CatalogError::BadParam {
            name: name.to_string(),
            param: key.to_string(),
            reason: format!("must be at least {min}, got {n}"),
        });
    }
    Ok(n)
}

/// Brackets written with 1-based single-term values `[ei,ej] = c*ek`.
fn algebra(dim: usize, terms: &[(usize, usize, Vec<(usize, Scalar)>)]) -> LieAlgebra {
    let brackets = terms.iter().map(|(i, j, v)| {
        let mut coeffs = vec![Scalar::zero(); dim];
        for (k, c) in v {
            coeffs[k - 1] = c.clone();
        }
        ((i - 1, j - 1), coeffs)
    });
    LieAlgebra::new(dim, brackets, None).expect("valid catalog bracket data")
}

fn filiform_entry(n: usize, alpha: &[((usize, usize), Scalar)], label: String) -> LieAlgebra {
    let params = FiliformParams::new(n, alpha.iter().cloned().collect())
        .expect("catalog filiform parameters lie in the index set");
    build(&params).with_label(label)
}

/// Look up a named algebra. Every entry returned here satisfies the Jacobi
/// identity; this is asserted on construction.
pub fn catalog(name: &str, params: &BTreeMap<String, Scalar>) -> Result<LieAlgebra, CatalogError> {
    let one = Scalar::one;
    let g = match name {
        "abelian" => {
            let n = get_dim_param(name, params, "n", 1)?;
            LieAlgebra::abelian(n).with_label(format!("abelian({n})"))
        }
        "n3" => algebra(3, &[(1, 2, vec![(3, one())])]).with_label("n3"),
        "n4" => algebra(4, &[(1, 2, vec![(3, one())]), (1, 3, vec![(4, one())])]).with_label("n4"),
        "r2" => algebra(2, &[(1, 2, vec![(1, one())])]).with_label("r2"),
        "r2c2" => algebra(2, &[(1, 2, vec![(1, one())])])
            .extend_by_abelian(2)
            .with_label("r2c2"),
        "r3lam" => {
            let lam = get_param(name, params, "lambda")?;
            if lam.is_zero() {
                return Err(CatalogError::BadParam {
                    name: name.to_string(),
                    param: "lambda".to_string(),
                    reason: "lambda must be nonzero".to_string(),
                });
            }
            algebra(
                4,
                &[(1, 2, vec![(2, one())]), (1, 3, vec![(3, lam.clone())])],
            )
            .with_label(format!("r3lam(lambda={lam})"))
        }
        "r3m1c" => algebra(
            4,
            &[(1, 2, vec![(2, one())]), (1, 3, vec![(3, -one())])],
        )
        .with_label("r3m1c"),
        "r2r2" => algebra(4, &[(1, 2, vec![(1, one())]), (3, 4, vec![(3, one())])])
            .with_label("r2r2"),
        "sl2" => algebra(
            3,
            &[
                (1, 2, vec![(2, Scalar::from_int(2))]),
                (1, 3, vec![(3, Scalar::from_int(-2))]),
                (2, 3, vec![(1, one())]),
            ],
        )
        .with_label("sl2"),
        "sl2c" => algebra(
            3,
            &[
                (1, 2, vec![(2, Scalar::from_int(2))]),
                (1, 3, vec![(3, Scalar::from_int(-2))]),
                (2, 3, vec![(1, one())]),
            ],
        )
        .extend_by_abelian(1)
        .with_label("sl2c"),
        "g1m1" => algebra(
            4,
            &[
                (1, 2, vec![(2, one())]),
                (1, 3, vec![(3, one())]),
                (1, 4, vec![(4, -one())]),
            ],
        )
        .with_label("g1m1"),
        "g2" => {
            let a = get_param(name, params, "alpha")?;
            algebra(
                4,
                &[
                    (1, 2, vec![(3, one())]),
                    (1, 3, vec![(4, one())]),
                    (1, 4, vec![(2, a.clone()), (3, -&a), (4, one())]),
                ],
            )
            .with_label(format!("g2(alpha={a})"))
        }
        "g6" => algebra(
            4,
            &[
                (1, 2, vec![(2, one())]),
                (1, 3, vec![(3, one())]),
                (1, 4, vec![(4, Scalar::from_int(2))]),
                (2, 3, vec![(4, one())]),
            ],
        )
        .with_label("g6"),
        "g8" => {
            let a = get_param(name, params, "alpha")?;
            algebra(
                4,
                &[
                    (1, 2, vec![(3, one())]),
                    (1, 3, vec![(2, -&a), (3, one())]),
                    (1, 4, vec![(4, one())]),
                    (2, 3, vec![(4, one())]),
                ],
            )
            .with_label(format!("g8(alpha={a})"))
        }
        "contre6" => algebra(
            6,
            &[
                (1, 2, vec![(3, one())]),
                (1, 3, vec![(4, one())]),
                (1, 4, vec![(5, one())]),
                (1, 5, vec![(6, one())]),
                (2, 5, vec![(6, -one())]),
                (3, 4, vec![(6, one())]),
            ],
        )
        .with_label("contre6"),
        "mu0" => {
            let n = get_dim_param(name, params, "n", 4)?;
            filiform_entry(n, &[], format!("mu0({n})"))
        }
        "mu6_1" => filiform_entry(6, &[], "mu6_1".to_string()),
        "mu6_2" => filiform_entry(6, &[((2, 5), one())], "mu6_2".to_string()),
        "mu6_3" => filiform_entry(6, &[((2, 6), one())], "mu6_3".to_string()),
        "mu8_5" => {
            let a = get_param(name, params, "alpha")?;
            filiform_entry(
                8,
                &[((2, 5), a.clone()), ((3, 7), one()), ((3, 8), one())],
                format!("mu8_5(alpha={a})"),
            )
        }
        "mu8_6" => {
            let a = get_param(name, params, "alpha")?;
            filiform_entry(
                8,
                &[((2, 5), a.clone()), ((3, 7), one())],
                format!("mu8_6(alpha={a})"),
            )
        }
        "mu8_9" => {
            let a = get_param(name, params, "alpha")?;
            filiform_entry(
                8,
                &[((2, 6), a.clone()), ((2, 7), one()), ((3, 8), one())],
                format!("mu8_9(alpha={a})"),
            )
        }
        "mu8_10" => {
            let a = get_param(name, params, "alpha")?;
            filiform_entry(
                8,
                &[((2, 6), a.clone()), ((3, 8), one())],
                format!("mu8_10(alpha={a})"),
            )
        }
        "mu8_11_0" => filiform_entry(
            8,
            &[((2, 7), one()), ((2, 8), one())],
            "mu8_11_0".to_string(),
        ),
        "mu8_15" => filiform_entry(
            8,
            &[((2, 6), one()), ((2, 7), one())],
            "mu8_15".to_string(),
        ),
        "mu8_16" => filiform_entry(8, &[((2, 6), one())], "mu8_16".to_string()),
        "mu8_17" => filiform_entry(8, &[((2, 7), one())], "mu8_17".to_string()),
        "mu8_18" => filiform_entry(8, &[((2, 8), one())], "mu8_18".to_string()),
        "mu8_19" => filiform_entry(8, &[], "mu8_19".to_string()),
        other => return Err(CatalogError::UnknownName(other.to_string())),
    };
    assert!(
        g.is_lie_algebra(),
        "catalog entry {name} violates the Jacobi identity"
    );
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::unit_vector;

    fn with_alpha(v: Scalar) -> BTreeMap<String, Scalar> {
        [("alpha".to_string(), v)].into_iter().collect()
    }

    fn no_params() -> BTreeMap<String, Scalar> {
        BTreeMap::new()
    }

    #[test]
    fn every_entry_satisfies_jacobi_for_sampled_parameters() {
        let sample_values = [
            Scalar::from_int(1),
            Scalar::from_int(-2),
            Scalar::ratio(1, 2),
            Scalar::ratio(-5, 3),
        ];
        for entry in catalog_entries() {
            if entry.params.is_empty() {
                catalog(entry.name, &no_params()).unwrap();
            } else if entry.params == ["n"] {
                for n in [4u64, 6, 9, 12] {
                    let p = [("n".to_string(), Scalar::from_int(n as i64))]
                        .into_iter()
                        .collect();
                    catalog(entry.name, &p).unwrap();
                }
            } else {
                for v in &sample_values {
                    let p = [(entry.params[0].to_string(), v.clone())]
                        .into_iter()
                        .collect();
                    catalog(entry.name, &p).unwrap();
                }
            }
        }
    }

    #[test]
    fn named_brackets_match_their_definitions() {
        let g6 = catalog("g6", &no_params()).unwrap();
        let e2 = unit_vector(4, 1);
        let e3 = unit_vector(4, 2);
        assert_eq!(g6.bracket(&e2, &e3).unwrap(), unit_vector(4, 3));

        let n4 = catalog("n4", &no_params()).unwrap();
        assert_eq!(
            n4.bracket(&unit_vector(4, 0), &unit_vector(4, 1)).unwrap(),
            unit_vector(4, 2)
        );
    }

    #[test]
    fn contre6_equals_its_filiform_presentation() {
        let direct = catalog("contre6", &no_params()).unwrap();
        let p = crate::filiform::FiliformParams::new(
            6,
            [((3, 6), Scalar::one())].into_iter().collect(),
        )
        .unwrap();
        let built = crate::filiform::build(&p).with_label("contre6");
        assert_eq!(direct, built);
    }

    #[test]
    fn error_paths() {
        assert!(matches!(
            catalog("nope", &no_params()),
            Err(CatalogError::UnknownName(_))
        ));
        assert!(matches!(
            catalog("r3lam", &no_params()),
            Err(CatalogError::MissingParam { .. })
        ));
        let zero = [("lambda".to_string(), Scalar::zero())]
            .into_iter()
            .collect();
        assert!(matches!(
            catalog("r3lam", &zero),
            Err(CatalogError::BadParam { .. })
        ));
        let frac_n = [("n".to_string(), Scalar::ratio(7, 2))].into_iter().collect();
        assert!(matches!(
            catalog("mu0", &frac_n),
            Err(CatalogError::BadParam { .. })
        ));
        let small_n = [("n".to_string(), Scalar::from_int(3))].into_iter().collect();
        assert!(matches!(
            catalog("mu0", &small_n),
            Err(CatalogError::BadParam { .. })
        ));
    }

    #[test]
    fn mu_laws_are_filiform() {
        for name in ["mu6_2", "mu8_15", "mu8_19"] {
            let g = catalog(name, &no_params()).unwrap();
            assert!(g.series_report().unwrap().is_filiform, "{name}");
        }
        let g = catalog("mu8_5", &with_alpha(Scalar::from_int(2))).unwrap();
        assert!(g.series_report().unwrap().is_filiform);
    }
}
