//! Points of an incidence scheme: one linear subspace `E_v` of `k^r` per
//! vertex, of dimension `d(v)`, with `E_u ⊆ E_v` along every edge.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::field::{Field, FieldSpec, PrimeField, Rationals};
use super::matrix::ExactMatrix;
use crate::error::{invalid, Error, Result};
use crate::incidence::IncidenceStructure;

/// A configuration of subspaces satisfying a structure's incidences. The
/// ambient dimension is `r = rank + 1`. Every space is stored as its reduced
/// row echelon basis.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceConfig<F: Field> {
    structure: IncidenceStructure,
    spaces: Vec<ExactMatrix<F>>,
}

impl<F: Field> SubspaceConfig<F> {
    /// Validates dimensions and incidences, normalizing each basis.
    pub fn new(structure: IncidenceStructure, spaces: Vec<ExactMatrix<F>>) -> Result<Self> {
        let r = structure.rank() as usize + 1;
        if spaces.len() != structure.num_vertices() {
            return invalid(format!("{} spaces for {} vertices", spaces.len(), structure.num_vertices()));
        }
        let mut normalized = Vec::with_capacity(spaces.len());
        for (v, m) in spaces.iter().enumerate() {
            let d = structure.level(v as u32) as usize;
            if m.cols() != r {
                return invalid(format!("space of vertex {v} has {} columns, expected {r}", m.cols()));
            }
            let (red, pivots) = m.rref();
            if m.rows() != d || pivots.len() != d {
                return invalid(format!("space of vertex {v} is not {d}-dimensional"));
            }
            normalized.push(red);
        }
        for &(u, v) in structure.edges() {
            if !normalized[u as usize].row_space_within(&normalized[v as usize]) {
                return Err(Error::Invariant(format!("space of vertex {u} is not contained in space of vertex {v}")));
            }
        }
        Ok(SubspaceConfig { structure, spaces: normalized })
    }

    pub fn structure(&self) -> &IncidenceStructure {
        &self.structure
    }

    pub fn ambient(&self) -> usize {
        self.structure.rank() as usize + 1
    }

    pub fn space(&self, v: u32) -> &ExactMatrix<F> {
        &self.spaces[v as usize]
    }

    pub fn spaces(&self) -> &[ExactMatrix<F>] {
        &self.spaces
    }

    pub fn field(&self) -> Option<&F> {
        self.spaces.first().map(ExactMatrix::field)
    }

    fn to_json_repr(&self, field: &F) -> ConfigJson {
        let spaces = self
            .spaces
            .iter()
            .enumerate()
            .map(|(v, m)| {
                let rows = m.to_rows().iter().map(|r| r.iter().map(|x| field.format(x)).collect()).collect();
                (v.to_string(), rows)
            })
            .collect();
        ConfigJson { field: field.spec(), structure: self.structure.clone(), spaces }
    }

    fn from_json_repr(field: &F, raw: ConfigJson) -> Result<Self> {
        let r = raw.structure.rank() as usize + 1;
        let n = raw.structure.num_vertices();
        let mut spaces: Vec<Option<ExactMatrix<F>>> = vec![None; n];
        for (key, rows) in raw.spaces {
            let v: usize = key.parse().map_err(|_| Error::Invalid(format!("bad vertex key {key:?}")))?;
            if v >= n {
                return invalid(format!("space given for unknown vertex {v}"));
            }
            let parsed = rows
                .iter()
                .map(|row| row.iter().map(|x| field.parse(x)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            spaces[v] = Some(ExactMatrix::from_rows(field, r, parsed)?);
        }
        let spaces = spaces
            .into_iter()
            .enumerate()
            .map(|(v, m)| m.ok_or_else(|| Error::Invalid(format!("no space given for vertex {v}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(raw.structure, spaces)
    }
}

#[derive(Serialize, Deserialize)]
struct ConfigJson {
    field: FieldSpec,
    structure: IncidenceStructure,
    spaces: BTreeMap<String, Vec<Vec<String>>>,
}

/// A configuration over whichever field its JSON names.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyConfig {
    Q(SubspaceConfig<Rationals>),
    Fp(PrimeField, SubspaceConfig<PrimeField>),
}

impl AnyConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: ConfigJson = serde_json::from_str(text)?;
        match raw.field {
            FieldSpec::Q => Ok(AnyConfig::Q(SubspaceConfig::from_json_repr(&Rationals, raw)?)),
            FieldSpec::Fp(p) => {
                let f = PrimeField::new(p)?;
                Ok(AnyConfig::Fp(f, SubspaceConfig::from_json_repr(&f, raw)?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        let repr = match self {
            AnyConfig::Q(c) => c.to_json_repr(&Rationals),
            AnyConfig::Fp(f, c) => c.to_json_repr(f),
        };
        serde_json::to_string(&repr).expect("configuration serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn rows(f: &PrimeField, r: &[Vec<i64>]) -> ExactMatrix<PrimeField> {
        ExactMatrix::from_i64_rows(f, 3, r).unwrap()
    }

    #[test]
    fn k22_coincident_config() {
        let f = PrimeField::new(5).unwrap();
        let p = rows(&f, &[vec![1, 0, 0]]);
        let l = rows(&f, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let c = SubspaceConfig::new(fixtures::k22(), vec![p.clone(), p, l.clone(), l]).unwrap();
        let json = AnyConfig::Fp(f, c.clone()).to_json();
        assert!(json.starts_with(r#"{"field":{"Fp":5},"#));
        assert_eq!(AnyConfig::from_json(&json).unwrap(), AnyConfig::Fp(f, c));
    }

    #[test]
    fn rejects_broken_incidence_and_dimension() {
        let f = PrimeField::new(5).unwrap();
        let p = rows(&f, &[vec![0, 0, 1]]);
        let l = rows(&f, &[vec![1, 0, 0], vec![0, 1, 0]]);
        let s = fixtures::k22();
        assert!(matches!(
            SubspaceConfig::new(s.clone(), vec![p.clone(), p.clone(), l.clone(), l.clone()]),
            Err(Error::Invariant(_))
        ));
        let degenerate = rows(&f, &[vec![1, 0, 0], vec![2, 0, 0]]);
        assert!(SubspaceConfig::new(s, vec![p.clone(), p, degenerate, l]).is_err());
    }

    #[test]
    fn rational_json() {
        let s = IncidenceStructure::new(2, vec![vec![0], vec![]], []).unwrap();
        let text =
            r#"{"field":"Q","structure":{"rank":2,"parts":[[0],[]],"edges":[]},"spaces":{"0":[["2/3","1","0"]]}}"#;
        let AnyConfig::Q(c) = AnyConfig::from_json(text).unwrap() else { panic!("expected Q") };
        assert_eq!(c.structure(), &s);
        assert_eq!(Rationals.format(c.space(0).get(0, 0)), "1");
        assert_eq!(Rationals.format(c.space(0).get(0, 1)), "3/2");
        assert!(AnyConfig::from_json(
            r#"{"field":{"Fp":4},"structure":{"rank":1,"parts":[[]],"edges":[]},"spaces":{}}"#
        )
        .is_err());
    }
}
