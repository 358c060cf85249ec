//! JSON file format for algebras. Indices are 1-based; omitted products are
//! zero; `alpha` defaults to the identity.

use serde::{Deserialize, Serialize};

use super::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational};

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct BinaryEntry(pub usize, pub usize, pub Vec<Rational>);

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TernaryEntry(pub usize, pub usize, pub usize, pub Vec<Rational>);

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub binary: Vec<BinaryEntry>,
    #[serde(default)]
    pub ternary: Vec<TernaryEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<Vec<Rational>>>,
}

fn index(field: &str, pos: usize, i: usize, dim: usize) -> Result<usize> {
    if i == 0 || i > dim {
        return Err(Error::InvalidInput(format!(
            "{field}[{pos}]: index {i} out of range 1..={dim}"
        )));
    }
    Ok(i - 1)
}

fn coeffs(field: &str, pos: usize, c: &[Rational], dim: usize) -> Result<()> {
    if c.len() != dim {
        return Err(Error::InvalidInput(format!(
            "{field}[{pos}]: expected {dim} coefficients, found {}",
            c.len()
        )));
    }
    Ok(())
}

impl AlgebraFile {
    /// Structure constants only; the axioms are not checked here.
    pub fn to_algebra(&self) -> Result<Algebra> {
        let d = self.dim;
        if d == 0 {
            return Err(Error::InvalidInput("dim: must be positive".into()));
        }
        let mut b = Algebra::builder(self.name.clone(), d);
        for (pos, BinaryEntry(i, j, c)) in self.binary.iter().enumerate() {
            let (i, j) = (index("binary", pos, *i, d)?, index("binary", pos, *j, d)?);
            coeffs("binary", pos, c, d)?;
            b = b.bracket(i, j, c);
        }
        for (pos, TernaryEntry(i, j, k, c)) in self.ternary.iter().enumerate() {
            let (i, j, k) = (
                index("ternary", pos, *i, d)?,
                index("ternary", pos, *j, d)?,
                index("ternary", pos, *k, d)?,
            );
            coeffs("ternary", pos, c, d)?;
            b = b.ternary(i, j, k, c);
        }
        if let Some(rows) = &self.alpha {
            if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                return Err(Error::InvalidInput(format!(
                    "alpha: expected a {d}x{d} array"
                )));
            }
            b = b.alpha(Matrix::from_rows(rows.clone())?);
        }
        b.build_unchecked()
    }

    pub fn from_algebra(a: &Algebra) -> Self {
        let d = a.dim();
        let mut binary = Vec::new();
        let mut ternary = Vec::new();
        for i in 0..d {
            for j in i + 1..d {
                let c = a.bracket_of(i, j);
                if c.iter().any(|x| !x.is_zero()) {
                    binary.push(BinaryEntry(i + 1, j + 1, c.to_vec()));
                }
                for k in 0..d {
                    let c = a.ternary_of(i, j, k);
                    if c.iter().any(|x| !x.is_zero()) {
                        ternary.push(TernaryEntry(i + 1, j + 1, k + 1, c.to_vec()));
                    }
                }
            }
        }
        let alpha = (0..d).map(|r| a.alpha().row(r).to_vec()).collect();
        AlgebraFile {
            name: a.name().to_string(),
            dim: d,
            binary,
            ternary,
            alpha: Some(alpha),
        }
    }
}

pub fn parse_algebra(json: &str) -> Result<Algebra> {
    let file: AlgebraFile = serde_json::from_str(json)
        .map_err(|e| Error::InvalidInput(format!("algebra file: {e}")))?;
    file.to_algebra()
}

pub fn algebra_to_json(a: &Algebra) -> String {
    serde_json::to_string_pretty(&AlgebraFile::from_algebra(a)).expect("serializable")
}
