//! Twisted derivations `Der_{alpha^k}(L)` and the bracket on their direct sum.
//!
//! A linear map is a `d x d` matrix acting on column vectors; in flattened
//! form entry `(r, c)` sits at index `r * d + c`.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, Matrix, Rational, Subspace, Vector};

fn flatten(m: &Matrix) -> Vector {
    Vector(m.entries().to_vec())
}

fn unflatten(d: usize, v: &[Rational]) -> Matrix {
    Matrix::from_fn(d, d, |r, c| v[r * d + c].clone())
}

/// Residuals of the three defining conditions for `dm`, stacked: commutation
/// with `alpha`, then binary Leibniz on pairs `i < j`, then ternary Leibniz
/// on triples with `i < j`.
fn residuals(a: &Algebra, k: usize, dm: &Matrix) -> Vector {
    let d = a.dim();
    let ak = a.alpha_pow(k);
    let alpha = a.alpha();
    let mut out = flatten(&dm.mul(alpha).sub(&alpha.mul(dm)));
    let de: Vec<Vector> = dm.columns();
    let ake: Vec<Vector> = ak.columns();
    for i in 0..d {
        for j in i + 1..d {
            let mut r = dm.mul_vec(a.bracket_of(i, j));
            r -= a.bracket(&ake[i], &de[j]);
            r -= a.bracket(&de[i], &ake[j]);
            out.0.extend(r.0);
            for l in 0..d {
                let mut r = dm.mul_vec(a.ternary_of(i, j, l));
                r -= a.triple(&de[i], &ake[j], &ake[l]);
                r -= a.triple(&ake[i], &de[j], &ake[l]);
                r -= a.triple(&ake[i], &ake[j], &de[l]);
                out.0.extend(r.0);
            }
        }
    }
    out
}

/// Whether `dm` is an `alpha^k`-derivation of `a`.
pub fn is_derivation(a: &Algebra, k: usize, dm: &Matrix) -> bool {
    dm.rows() == a.dim() && dm.cols() == a.dim() && residuals(a, k, dm).is_zero()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub k: usize,
    d: usize,
    space: Subspace,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> Vec<Matrix> {
        self.space
            .basis_vectors()
            .iter()
            .map(|v| unflatten(self.d, v))
            .collect()
    }

    pub fn contains(&self, dm: &Matrix) -> bool {
        dm.rows() == self.d && dm.cols() == self.d && self.space.contains(&flatten(dm))
    }

    pub fn subspace(&self) -> &Subspace {
        &self.space
    }
}

/// `Der_{alpha^k}(a)`, solved as the kernel of the conditions on the `d^2`
/// matrix entries.
pub fn derivation_space(a: &Algebra, k: usize) -> DerivationSpace {
    let d = a.dim();
    let columns: Vec<Vector> = (0..d * d)
        .map(|idx| residuals(a, k, &unflatten(d, &Vector::unit(d * d, idx))))
        .collect();
    let rows = columns.first().map_or(0, |c| c.len());
    let space = kernel_basis(&Matrix::from_columns(rows, &columns));
    DerivationSpace { k, d, space }
}

/// `[D1, D2] = D1 D2 - D2 D1` for `D1` of degree `k` and `D2` of degree `s`,
/// checked to be an `alpha^(k+s)`-derivation.
pub fn der_bracket(a: &Algebra, d1: &Matrix, k: usize, d2: &Matrix, s: usize) -> Result<Matrix> {
    let c = d1.mul(d2).sub(&d2.mul(d1));
    if !is_derivation(a, k + s, &c) {
        return Err(Error::ClosureViolation { k, s });
    }
    Ok(c)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationLevel {
    pub k: usize,
    pub dim: usize,
    /// Basis matrices, each as a list of rows.
    pub basis: Vec<Vec<Vec<Rational>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationReport {
    pub algebra: String,
    pub k_max: usize,
    pub levels: Vec<DerivationLevel>,
    /// Basis-pair commutators checked for closure.
    pub brackets_checked: usize,
    pub closed: bool,
}

/// Derivation spaces for `k <= k_max` and closure of every basis-pair
/// commutator with `k + s <= k_max`. A failed closure is a `ClosureViolation`.
pub fn check_der_is_lie(a: &Algebra, k_max: usize) -> Result<DerivationReport> {
    let spaces: Vec<DerivationSpace> = (0..=k_max).map(|k| derivation_space(a, k)).collect();
    let bases: Vec<Vec<Matrix>> = spaces.iter().map(DerivationSpace::basis).collect();
    let mut checked = 0;
    for k in 0..=k_max {
        for s in 0..=k_max - k {
            for d1 in &bases[k] {
                for d2 in &bases[s] {
                    let c = d1.mul(d2).sub(&d2.mul(d1));
                    if !spaces[k + s].contains(&c) {
                        return Err(Error::ClosureViolation { k, s });
                    }
                    checked += 1;
                }
            }
        }
    }
    let levels = spaces
        .iter()
        .zip(&bases)
        .map(|(sp, b)| DerivationLevel {
            k: sp.k,
            dim: sp.dim(),
            basis: b
                .iter()
                .map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect())
                .collect(),
        })
        .collect();
    Ok(DerivationReport {
        algebra: a.name().to_string(),
        k_max,
        levels,
        brackets_checked: checked,
        closed: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::samples::*;

    fn ad(a: &Algebra, x: usize) -> Matrix {
        let d = a.dim();
        Matrix::from_fn(d, d, |r, c| a.bracket_of(x, c)[r].clone())
    }

    #[test]
    fn abelian_derivations_are_all_maps() {
        assert_eq!(derivation_space(&e0_abelian(), 0).dim(), 4);
        assert_eq!(derivation_space(&e0_abelian(), 3).dim(), 4);
    }

    #[test]
    fn sl2_inner_derivations() {
        let a = e2_sl2();
        let der = derivation_space(&a, 0);
        assert!(der.dim() >= 3);
        for x in 0..3 {
            assert!(der.contains(&ad(&a, x)), "ad e{}", x + 1);
        }
        // [ad h, ad e] = 2 ad e
        let c = der_bracket(&a, &ad(&a, 0), 0, &ad(&a, 1), 0).unwrap();
        assert_eq!(c, ad(&a, 1).scaled(&Rational::from_integer(2)));
    }

    #[test]
    fn heisenberg_derivations_commute_with_alpha() {
        let a = e3_heisenberg();
        for k in 0..4 {
            for dm in derivation_space(&a, k).basis() {
                assert_eq!(dm.mul(a.alpha()), a.alpha().mul(&dm));
                assert!(is_derivation(&a, k, &dm));
            }
        }
    }

    #[test]
    fn non_derivation_is_rejected() {
        let a = e1_aff1();
        let id = Matrix::identity(2);
        assert!(!is_derivation(&a, 0, &id));
        assert!(is_derivation(&e0_abelian(), 0, &id));
        // closure failure on hand-fed non-derivations
        let e11 = Matrix::from_integer_rows(&[&[1, 0], &[0, 0]]);
        let e21 = Matrix::from_integer_rows(&[&[0, 0], &[1, 0]]);
        assert!(matches!(
            der_bracket(&a, &e11, 0, &e21, 0),
            Err(Error::ClosureViolation { k: 0, s: 0 })
        ));
    }

    #[test]
    fn bundled_derivation_algebras_close() {
        for a in bundled() {
            let report = check_der_is_lie(&a, 3).unwrap();
            assert!(report.closed);
            assert_eq!(report.levels.len(), 4);
        }
    }
}
