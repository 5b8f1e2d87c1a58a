//! Input documents: `dims`, `hamiltonian` and an optional `state`.

use std::path::Path;

use ergogap::{ComplexMatrix, CompositeHamiltonian, DensityMatrix, LocalHamiltonian, C64};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize};

use crate::error::CliError;

/// Rows of `[re, im]` pairs.
pub type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDoc {
    pub dims: Vec<usize>,
    pub hamiltonian: HamiltonianSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianSpec {
    pub locals: Vec<LocalSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum LocalSpec {
    Energies { energies: Vec<f64> },
    Matrix { matrix: Rows },
}

impl<'de> Deserialize<'de> for LocalSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            energies: Option<Vec<f64>>,
            matrix: Option<Rows>,
        }
        match Raw::deserialize(d)? {
            Raw {
                energies: Some(energies),
                matrix: None,
            } => Ok(LocalSpec::Energies { energies }),
            Raw {
                energies: None,
                matrix: Some(matrix),
            } => Ok(LocalSpec::Matrix { matrix }),
            _ => Err(D::Error::custom(
                "expected exactly one of `energies` or `matrix`",
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum StateSpec {
    Family(FamilySpec),
    Matrix { matrix: Rows },
}

impl<'de> Deserialize<'de> for StateSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        let obj = v
            .as_object()
            .ok_or_else(|| D::Error::custom("expected an object"))?;
        if obj.contains_key("family") {
            FamilySpec::deserialize(v)
                .map(StateSpec::Family)
                .map_err(D::Error::custom)
        } else if obj.contains_key("matrix") {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct Raw {
                matrix: Rows,
            }
            Raw::deserialize(v)
                .map(|r| StateSpec::Matrix { matrix: r.matrix })
                .map_err(D::Error::custom)
        } else {
            Err(D::Error::custom("expected a `family` or a `matrix` field"))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilySpec {
    Werner {
        p: f64,
    },
    /// Weights of ψ⁻, ψ⁺, φ⁺, φ⁻.
    BellMixture {
        weights: [f64; 4],
    },
    CcDiagonal {
        populations: Vec<f64>,
    },
    /// Tensor product of local density matrices.
    Product {
        locals: Vec<Rows>,
    },
    HaarRandomPure {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
    InducedRandomMixed {
        ancilla_dim: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        seed: Option<u64>,
    },
}

pub fn read_document(path: &Path) -> Result<InputDoc, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    parse_document(&text)
}

pub fn parse_document(text: &str) -> Result<InputDoc, CliError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let doc: InputDoc = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let inner = e.into_inner();
        if path == "." {
            CliError::Parse(inner.to_string())
        } else {
            CliError::Parse(format!("{path}: {inner}"))
        }
    })?;
    if doc.dims.is_empty() || doc.dims.contains(&0) {
        return Err(CliError::Parse(format!(
            "dims: expected positive subsystem dimensions, got {:?}",
            doc.dims
        )));
    }
    Ok(doc)
}

/// Fills unset seeds of randomized families with `seed`, so the echoed
/// document reproduces the same state on its own.
pub fn resolve_seeds(doc: &mut InputDoc, seed: u64) {
    if let Some(StateSpec::Family(
        FamilySpec::HaarRandomPure { seed: s } | FamilySpec::InducedRandomMixed { seed: s, .. },
    )) = &mut doc.state
    {
        s.get_or_insert(seed);
    }
}

fn complex_matrix(rows: &Rows, field: &str) -> Result<ComplexMatrix, CliError> {
    let n = rows.len();
    if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(CliError::Parse(format!(
            "{field}: row {i} has {} entries, expected {n}",
            r.len()
        )));
    }
    let data: Vec<Vec<C64>> = rows
        .iter()
        .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect();
    ComplexMatrix::from_rows(&data).map_err(|e| CliError::Parse(format!("{field}: {e}")))
}

pub fn build_hamiltonian(doc: &InputDoc) -> Result<CompositeHamiltonian, CliError> {
    let locals = &doc.hamiltonian.locals;
    if locals.len() != doc.dims.len() {
        return Err(CliError::Parse(format!(
            "hamiltonian.locals: {} entries for {} parties",
            locals.len(),
            doc.dims.len()
        )));
    }
    let mut built = Vec::with_capacity(locals.len());
    for (i, (spec, &d)) in locals.iter().zip(&doc.dims).enumerate() {
        let field = format!("hamiltonian.locals[{i}]");
        let h = match spec {
            LocalSpec::Energies { energies } => {
                if energies.len() != d {
                    return Err(CliError::Parse(format!(
                        "{field}.energies: {} levels for dimension {d}",
                        energies.len()
                    )));
                }
                LocalHamiltonian::from_energies(energies)
            }
            LocalSpec::Matrix { matrix } => {
                let m = complex_matrix(matrix, &format!("{field}.matrix"))?;
                if m.rows() != d {
                    return Err(CliError::Parse(format!(
                        "{field}.matrix: {0}x{0} for dimension {d}",
                        m.rows()
                    )));
                }
                LocalHamiltonian::new(m)
            }
        };
        built.push(h.map_err(|e| CliError::from_core(&field, e))?);
    }
    CompositeHamiltonian::compose(built).map_err(|e| CliError::from_core("hamiltonian", e))
}

fn require_two_qubits(doc: &InputDoc, family: &str) -> Result<(), CliError> {
    if doc.dims != [2, 2] {
        return Err(CliError::Parse(format!(
            "state: family `{family}` needs dims [2, 2], got {:?}",
            doc.dims
        )));
    }
    Ok(())
}

/// Builds the state. Seeds must already be resolved.
pub fn build_state(doc: &InputDoc) -> Result<DensityMatrix, CliError> {
    let dims = &doc.dims;
    let total: usize = dims.iter().product();
    let spec = doc
        .state
        .as_ref()
        .ok_or_else(|| CliError::Parse("state: missing field".into()))?;
    let core = |e| CliError::from_core("state", e);
    match spec {
        StateSpec::Matrix { matrix } => {
            let m = complex_matrix(matrix, "state.matrix")?;
            if m.rows() != total {
                return Err(CliError::Parse(format!(
                    "state.matrix: {0}x{0} does not match dims {dims:?} (product {total})",
                    m.rows()
                )));
            }
            DensityMatrix::new(dims, m).map_err(core)
        }
        StateSpec::Family(f) => match f {
            FamilySpec::Werner { p } => {
                require_two_qubits(doc, "werner")?;
                DensityMatrix::werner(*p).map_err(core)
            }
            FamilySpec::BellMixture { weights } => {
                require_two_qubits(doc, "bell_mixture")?;
                DensityMatrix::bell_mixture(*weights).map_err(core)
            }
            FamilySpec::CcDiagonal { populations } => {
                if populations.len() != total {
                    return Err(CliError::Parse(format!(
                        "state.populations: {} entries for total dimension {total}",
                        populations.len()
                    )));
                }
                DensityMatrix::cc_diagonal(dims, populations).map_err(core)
            }
            FamilySpec::Product { locals } => {
                if locals.len() != dims.len() {
                    return Err(CliError::Parse(format!(
                        "state.locals: {} entries for {} parties",
                        locals.len(),
                        dims.len()
                    )));
                }
                let mut parts = Vec::with_capacity(locals.len());
                for (i, (rows, &d)) in locals.iter().zip(dims).enumerate() {
                    let field = format!("state.locals[{i}]");
                    let m = complex_matrix(rows, &field)?;
                    if m.rows() != d {
                        return Err(CliError::Parse(format!(
                            "{field}: {0}x{0} for dimension {d}",
                            m.rows()
                        )));
                    }
                    parts.push(
                        DensityMatrix::new(&[d], m).map_err(|e| CliError::from_core(&field, e))?,
                    );
                }
                DensityMatrix::product_state(&parts).map_err(core)
            }
            FamilySpec::HaarRandomPure { seed } => {
                DensityMatrix::haar_random_pure(dims, seed.unwrap_or_default()).map_err(core)
            }
            FamilySpec::InducedRandomMixed { ancilla_dim, seed } => {
                if *ancilla_dim == 0 {
                    return Err(CliError::Parse(
                        "state.ancilla_dim: must be positive".into(),
                    ));
                }
                DensityMatrix::induced_random_mixed(dims, *ancilla_dim, seed.unwrap_or_default())
                    .map_err(core)
            }
        },
    }
}
