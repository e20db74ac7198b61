//! The version-1 JSON algebra file and JSON views of solver output.
//!
//! Scalars travel as strings ("3/2", "-1") so no value ever passes through a
//! float. Emission is deterministic: fixed field order, canonical scalar
//! strings, two-space indentation and a trailing newline, so emit → load →
//! emit is byte-identical.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{AlgebraSpec, Tensor};
use crate::double::DoubleSpec;
use crate::error::{Error, Result};
use crate::field::FieldConfig;
use crate::solver::{
    classify_space, Classification, SolutionBasis, SolutionSpace, TrivialityReason, Verdict,
};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FieldJson {
    Rational,
    Prime { p: u64 },
}

impl FieldJson {
    pub fn to_config(&self) -> Result<FieldConfig> {
        match self {
            FieldJson::Rational => Ok(FieldConfig::Rational),
            FieldJson::Prime { p } => FieldConfig::prime(*p),
        }
    }

    pub fn from_config(c: FieldConfig) -> Self {
        match c {
            FieldConfig::Rational => FieldJson::Rational,
            FieldConfig::Prime(p) => FieldJson::Prime { p },
        }
    }
}

/// Where a generated file came from, attached when emitting doubles.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ProvenanceJson {
    pub construction: String,
    pub base_dim: usize,
    pub base_names: Vec<String>,
}

/// The on-disk algebra format, version 1.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraFileV1 {
    pub version: u32,
    pub field: FieldJson,
    pub dim: usize,
    pub names: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<u8>>,
    pub table: Vec<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table2: Option<Vec<Vec<Vec<String>>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub provenance: Option<ProvenanceJson>,
}

fn tensor_to_strings(t: &Tensor) -> Vec<Vec<Vec<String>>> {
    let n = t.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| t.get(i, j, k).to_string()).collect())
                .collect()
        })
        .collect()
}

fn tensor_from_strings(
    raw: &[Vec<Vec<String>>],
    dim: usize,
    field: FieldConfig,
) -> Result<Tensor> {
    if raw.len() != dim {
        return Err(Error::ShapeMismatch(format!(
            "table has {} slices for dimension {dim}",
            raw.len()
        )));
    }
    let mut t = Tensor::zero(dim, field);
    for (i, plane) in raw.iter().enumerate() {
        if plane.len() != dim {
            return Err(Error::ShapeMismatch(format!("table[{i}] has {} rows", plane.len())));
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "table[{i}][{j}] has {} entries",
                    row.len()
                )));
            }
            for (k, s) in row.iter().enumerate() {
                t.set(i, j, k, field.parse(s)?);
            }
        }
    }
    Ok(t)
}

impl AlgebraFileV1 {
    pub fn from_algebra(a: &AlgebraSpec) -> Self {
        AlgebraFileV1 {
            version: 1,
            field: FieldJson::from_config(a.field()),
            dim: a.dim(),
            names: a.names().to_vec(),
            grading: a.grading().map(|g| g.to_vec()),
            table: tensor_to_strings(a.table()),
            table2: a.table2().map(tensor_to_strings),
            provenance: None,
        }
    }

    /// A double serializes as an ordinary algebra file plus provenance, so it
    /// feeds straight back into the solvers.
    pub fn from_double(d: &DoubleSpec, construction: &str) -> Self {
        let mut file = AlgebraFileV1::from_algebra(d.double());
        file.provenance = Some(ProvenanceJson {
            construction: construction.to_string(),
            base_dim: d.base().dim(),
            base_names: d.base().names().to_vec(),
        });
        file
    }

    pub fn to_algebra(&self) -> Result<AlgebraSpec> {
        if self.version != 1 {
            return Err(Error::UnsupportedVersion(self.version));
        }
        let field = self.field.to_config()?;
        if self.names.len() != self.dim {
            return Err(Error::ShapeMismatch(format!(
                "{} names for dimension {}",
                self.names.len(),
                self.dim
            )));
        }
        let table = tensor_from_strings(&self.table, self.dim, field)?;
        let table2 = self
            .table2
            .as_ref()
            .map(|t| tensor_from_strings(t, self.dim, field))
            .transpose()?;
        AlgebraSpec::new(field, self.names.clone(), self.grading.clone(), table, table2)
    }

    /// Canonical pretty JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

fn matrix_to_strings(m: &crate::linalg::Matrix) -> Value {
    let rows: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect();
    json!(rows)
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Trivial => "trivial",
        Verdict::Nontrivial => "nontrivial",
    }
}

pub fn reason_name(r: TrivialityReason) -> &'static str {
    match r {
        TrivialityReason::DeltaIsZeroOrOne => "delta-is-zero-or-one",
        TrivialityReason::InCentroid => "in-centroid",
        TrivialityReason::IsDeltaDerivation => "is-delta-derivation",
        TrivialityReason::ChiPhiZero => "chi-phi-zero",
        TrivialityReason::Other => "other",
    }
}

fn classification_json(c: &Classification) -> Value {
    json!({
        "verdict": verdict_name(c.verdict),
        "reason": reason_name(c.reason),
    })
}

/// JSON view of a solved space: kind, delta, dim, basis members with their
/// classifications.
pub fn solution_space_json(space: &SolutionSpace, a: &AlgebraSpec) -> Value {
    let classifications = classify_space(space, a);
    let members: Vec<Value> = match &space.basis {
        SolutionBasis::Maps(maps) => maps
            .iter()
            .zip(&classifications)
            .map(|(m, c)| {
                json!({
                    "map": matrix_to_strings(m),
                    "classification": classification_json(c),
                })
            })
            .collect(),
        SolutionBasis::Pairs(pairs) => pairs
            .iter()
            .zip(&classifications)
            .map(|((chi, phi), c)| {
                json!({
                    "chi": matrix_to_strings(chi),
                    "phi": matrix_to_strings(phi),
                    "classification": classification_json(c),
                })
            })
            .collect(),
    };
    json!({
        "kind": space.kind.name(),
        "delta": space.delta.as_ref().map(|d| d.to_string()),
        "dim": space.dim(),
        "basis": members,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::solver::delta_derivations;

    #[test]
    fn catalog_files_round_trip_byte_identically() {
        let algebras = vec![
            catalog::sl2(),
            catalog::m2(),
            catalog::kaplansky_k3(),
            catalog::abelian(2),
            catalog::witt_modular(5).unwrap(),
        ];
        for a in algebras {
            let emitted = AlgebraFileV1::from_algebra(&a).to_json_string();
            let reloaded = AlgebraFileV1::from_json_str(&emitted).unwrap();
            let reparsed = reloaded.to_algebra().unwrap();
            let emitted_again = AlgebraFileV1::from_algebra(&reparsed).to_json_string();
            assert_eq!(emitted, emitted_again);
        }
    }

    #[test]
    fn doubles_carry_provenance_and_still_load() {
        let d = crate::double::lie_double(&catalog::sl2()).unwrap();
        let file = AlgebraFileV1::from_double(&d, "lie_double");
        assert_eq!(file.grading.as_deref(), Some(&[0, 0, 0, 1, 1, 1][..]));
        assert_eq!(file.provenance.as_ref().unwrap().base_dim, 3);
        let loaded = AlgebraFileV1::from_json_str(&file.to_json_string()).unwrap();
        assert_eq!(loaded.to_algebra().unwrap().dim(), 6);
    }

    #[test]
    fn malformed_files_are_rejected() {
        assert!(AlgebraFileV1::from_json_str("{").is_err());
        let mut file = AlgebraFileV1::from_algebra(&catalog::sl2());
        file.table[0][0].pop();
        assert!(file.to_algebra().is_err());
        let mut file = AlgebraFileV1::from_algebra(&catalog::sl2());
        file.version = 3;
        assert!(matches!(file.to_algebra(), Err(Error::UnsupportedVersion(3))));
        let mut file = AlgebraFileV1::from_algebra(&catalog::sl2());
        file.table[0][1][0] = "1/0".into();
        assert!(file.to_algebra().is_err());
    }

    #[test]
    fn prime_field_header_round_trips() {
        let a = catalog::witt_modular(5).unwrap();
        let file = AlgebraFileV1::from_algebra(&a);
        assert_eq!(file.field, FieldJson::Prime { p: 5 });
        let b = file.to_algebra().unwrap();
        assert_eq!(b.field(), FieldConfig::prime(5).unwrap());
    }

    #[test]
    fn solution_space_json_shape() {
        let a = catalog::sl2();
        let space = delta_derivations(&a, &FieldConfig::Rational.half());
        let v = solution_space_json(&space, &a);
        assert_eq!(v["dim"], 1);
        assert_eq!(v["delta"], "1/2");
        assert_eq!(v["basis"][0]["classification"]["verdict"], "trivial");
        assert_eq!(v["basis"][0]["classification"]["reason"], "in-centroid");
    }
}
