//! Lattice text documents: JSON with `rank`, `gram` and an optional
//! `isometry`, every integer written as a decimal string.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::{check_isometry, Isometry, Lattice};
use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDocument {
    pub rank: usize,
    pub gram: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub isometry: Option<Vec<Vec<String>>>,
}

fn matrix_to_strings(m: &IntMatrix) -> Vec<Vec<String>> {
    m.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn parse_matrix(rows: &[Vec<String>], n: usize, what: &str) -> Result<IntMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(Error::Parse(format!("{what} must be {n}x{n}")));
    }
    let data = rows
        .iter()
        .flatten()
        .map(|s| {
            // strict: optional leading '-', then digits only
            let digits = s.strip_prefix('-').unwrap_or(s);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::Parse(format!("{what}: '{s}' is not a decimal integer")));
            }
            s.parse::<BigInt>().map_err(|e| Error::Parse(format!("{what}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_vec(n, n, data)
}

impl LatticeDocument {
    pub fn from_lattice(lattice: &Lattice, isometry: Option<&Isometry>) -> Self {
        LatticeDocument {
            rank: lattice.rank(),
            gram: matrix_to_strings(lattice.gram()),
            isometry: isometry.map(|t| matrix_to_strings(t.matrix())),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    /// Validate into a lattice and optional isometry.
    pub fn load(&self) -> Result<(Lattice, Option<Isometry>)> {
        let gram = parse_matrix(&self.gram, self.rank, "gram")?;
        let lattice = Lattice::new(gram)?;
        let iso = match &self.isometry {
            Some(rows) => Some(check_isometry(&lattice, &parse_matrix(rows, self.rank, "isometry")?)?),
            None => None,
        };
        Ok((lattice, iso))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_strictness() {
        let l = Lattice::new(IntMatrix::from_i64(&[&[2, 1], &[1, -2]])).unwrap();
        let t = check_isometry(&l, &IntMatrix::from_i64(&[&[1, 1], &[1, 2]])).unwrap();
        let doc = LatticeDocument::from_lattice(&l, Some(&t));
        let back = LatticeDocument::parse(&doc.to_text()).unwrap();
        let (l2, t2) = back.load().unwrap();
        assert_eq!(l2, l);
        assert_eq!(t2.unwrap(), t);

        let bad = r#"{"rank": 2, "gram": [["2","1"],["1","-2"]], "extra": 1}"#;
        assert!(matches!(LatticeDocument::parse(bad), Err(Error::Parse(_))));
        let bad = r#"{"rank": 2, "gram": [["2","1.0"],["1","-2"]]}"#;
        assert!(matches!(LatticeDocument::parse(bad).unwrap().load(), Err(Error::Parse(_))));
        let bad = r#"{"rank": 2, "gram": [["2","+1"],["1","-2"]]}"#;
        assert!(matches!(LatticeDocument::parse(bad).unwrap().load(), Err(Error::Parse(_))));
        let asym = r#"{"rank": 2, "gram": [["2","1"],["0","-2"]]}"#;
        assert_eq!(LatticeDocument::parse(asym).unwrap().load(), Err(Error::NotSymmetric));
    }
}
