//! JSON file formats for subspaces and codes. Entries are integer-encoded
//! elements of `F_{q^m}`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::FqSubspace;
use crate::gf::{Elem, Tower};
use crate::linalg::Matrix;
use crate::rankmetric::RankMetricCode;

/// `{k, generators}`: an `F_q`-subspace of `F_{q^m}^k` given by spanning vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    pub k: usize,
    pub generators: Vec<Vec<u32>>,
}

impl SubspaceFile {
    pub fn from_subspace(tower: &Tower, u: &FqSubspace) -> Self {
        SubspaceFile {
            k: u.ambient_k(),
            generators: u
                .generators(tower)
                .into_iter()
                .map(|g| g.into_iter().map(Elem::code).collect())
                .collect(),
        }
    }

    pub fn to_subspace(&self, tower: &Tower) -> Result<FqSubspace> {
        if self.k == 0 {
            return Err(Error::Format("k must be at least 1".into()));
        }
        let rows = decode_matrix(tower, &self.generators, self.k, "generator")?;
        FqSubspace::from_vectors(tower, self.k, &rows)
    }
}

/// `{n, k, G}`: a rank-metric code with `k × n` generator matrix `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeFile {
    pub n: usize,
    pub k: usize,
    #[serde(rename = "G")]
    pub g: Vec<Vec<u32>>,
}

impl CodeFile {
    pub fn from_code(code: &RankMetricCode) -> Self {
        CodeFile {
            n: code.n(),
            k: code.k(),
            g: code
                .generator()
                .iter()
                .map(|r| r.iter().map(|e| e.code()).collect())
                .collect(),
        }
    }

    pub fn to_code(&self, tower: &Tower) -> Result<RankMetricCode> {
        if self.g.len() != self.k {
            return Err(Error::Format(format!(
                "G has {} rows, expected k = {}",
                self.g.len(),
                self.k
            )));
        }
        RankMetricCode::new(tower, decode_matrix(tower, &self.g, self.n, "row of G")?)
    }
}

fn decode_matrix(tower: &Tower, rows: &[Vec<u32>], len: usize, what: &str) -> Result<Matrix> {
    rows.iter()
        .map(|r| {
            if r.len() != len {
                return Err(Error::Format(format!("{what} has length {}, expected {len}", r.len())));
            }
            r.iter().map(|&c| tower.fqm().elem(c)).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rankmetric::gabidulin;

    #[test]
    fn subspace_round_trip() {
        let t = Tower::for_q(2, 4).unwrap();
        let f: SubspaceFile = serde_json::from_str(r#"{"k":3,"generators":[[1,2,4],[3,0,0],[0,0,1]]}"#).unwrap();
        let u = f.to_subspace(&t).unwrap();
        assert_eq!(u.dim(), 3);
        let back = SubspaceFile::from_subspace(&t, &u);
        assert_eq!(back.to_subspace(&t).unwrap(), u);
    }

    #[test]
    fn rejects_bad_input() {
        let t = Tower::for_q(2, 4).unwrap();
        let bad_len = SubspaceFile {
            k: 3,
            generators: vec![vec![1, 2]],
        };
        assert!(matches!(bad_len.to_subspace(&t), Err(Error::Format(_))));
        let bad_code = SubspaceFile {
            k: 2,
            generators: vec![vec![1, 16]],
        };
        assert!(bad_code.to_subspace(&t).is_err());
        assert!(serde_json::from_str::<SubspaceFile>(r#"{"k":2,"gens":[]}"#).is_err());
        let bad_rows = CodeFile {
            n: 2,
            k: 2,
            g: vec![vec![1, 0]],
        };
        assert!(bad_rows.to_code(&t).is_err());
    }

    #[test]
    fn code_round_trip() {
        let t = Tower::for_q(2, 4).unwrap();
        let c = gabidulin(&t, &t.fq_basis(), 2, 1, false).unwrap().code;
        let f = CodeFile::from_code(&c);
        let json = serde_json::to_string(&f).unwrap();
        assert!(json.contains("\"G\""));
        let back: CodeFile = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_code(&t).unwrap().generator(), c.generator());
    }
}
