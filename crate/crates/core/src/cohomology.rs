//! Cocycles, coboundaries and cohomology in degrees 1, 2-3 and 4-5.
//!
//! Paired spaces are handled in concatenated coordinates: an element of
//! `HomC^2 x HomC^3` is the `C^2` coordinates followed by the `C^3`
//! coordinates, and likewise for `HomC^4 x HomC^5`. Degree 1 stores a single
//! 1-cochain `f` for the diagonal pair `(f, f)`.

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::coboundary::CochainComplex;
use crate::cochain::Cochain;
use crate::error::{Error, Result};
use crate::exactlin::{image_basis, kernel_basis, quotient_dim, solve, Rational, Subspace, Vector};

/// `Z`, `B` and `dim Z/B` at one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub z: Subspace,
    pub b: Subspace,
    pub h_dim: usize,
}

impl CohomologyGroup {
    /// Fails with `NotContained` unless `b` lies in `z`.
    pub fn new(z: Subspace, b: Subspace) -> Result<Self> {
        let h_dim = quotient_dim(&z, &b)?;
        Ok(CohomologyGroup { z, b, h_dim })
    }

    /// Vectors of the `Z` basis completing the `B` basis; their classes form
    /// a basis of the quotient.
    pub fn representatives(&self) -> Vec<Vector> {
        self.z.complement_of(&self.b)
    }
}

/// `HomZ^1 = HomH^1`: 1-cochains killed by both components of `delta^1`.
pub fn h1(c: &CochainComplex) -> Result<Subspace> {
    Ok(kernel_basis(&c.delta1()?.matrix))
}

/// `Z = ker delta^2 ∩ ker d^2`, `B = im delta^1`.
pub fn h2h3(c: &CochainComplex) -> Result<CohomologyGroup> {
    let stacked = c.delta2()?.matrix.vstack(&c.d2()?.matrix);
    CohomologyGroup::new(kernel_basis(&stacked), image_basis(&c.delta1()?.matrix))
}

/// `Z = ker delta^3`, `B = im delta^2`.
pub fn h4h5(c: &CochainComplex) -> Result<CohomologyGroup> {
    CohomologyGroup::new(
        kernel_basis(&c.delta3()?.matrix),
        image_basis(&c.delta2()?.matrix),
    )
}

/// Concatenated coordinates of `(f, g)` in `HomC^n x HomC^(n+1)`.
pub fn pair_coordinates(c: &CochainComplex, f: &Cochain, g: &Cochain) -> Result<Vector> {
    let n = f.arity();
    if g.arity() != n + 1 {
        return Err(Error::InvalidInput(format!(
            "expected cochains of arities {n} and {}, found {}",
            n + 1,
            g.arity()
        )));
    }
    let mut v = c.space(n)?.coordinates(f)?;
    v.0.extend(c.space(n + 1)?.coordinates(g)?.0);
    Ok(v)
}

/// Inverse of [`pair_coordinates`].
pub fn pair_from_coordinates(
    c: &CochainComplex,
    n: usize,
    coords: &[Rational],
) -> Result<(Cochain, Cochain)> {
    let (s, t) = (c.space(n)?, c.space(n + 1)?);
    if coords.len() != s.dim() + t.dim() {
        return Err(Error::DimMismatch {
            expected: s.dim() + t.dim(),
            found: coords.len(),
        });
    }
    let (a, b) = coords.split_at(s.dim());
    Ok((s.from_coordinates(a), t.from_coordinates(b)))
}

/// Whether `(f, g)` satisfies both 2-cocycle conditions.
pub fn in_z2z3(c: &CochainComplex, f: &Cochain, g: &Cochain) -> Result<bool> {
    let v = pair_coordinates(c, f, g)?;
    Ok(c.delta2()?.apply(&v).is_zero() && c.d2()?.apply(&v).is_zero())
}

/// Whether `(F, G)` is killed by `delta^3`.
pub fn in_z4z5(c: &CochainComplex, f: &Cochain, g: &Cochain) -> Result<bool> {
    let v = pair_coordinates(c, f, g)?;
    Ok(c.delta3()?.apply(&v).is_zero())
}

/// A 1-cochain `h` with `(delta^1_I h, delta^1_II h) = (f, g)`, or `None`.
pub fn is_coboundary_2(c: &CochainComplex, f: &Cochain, g: &Cochain) -> Result<Option<Cochain>> {
    let v = pair_coordinates(c, f, g)?;
    Ok(solve(&c.delta1()?.matrix, &v).map(|h| c.space(1).unwrap().from_coordinates(&h)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyDims {
    pub h1: usize,
    pub z2z3: usize,
    pub b2b3: usize,
    pub h2h3: usize,
    pub z4z5: usize,
    pub b4b5: usize,
    pub h4h5: usize,
}

/// Dimensions plus bases, all in cochain-space coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub algebra: String,
    /// `dim HomC^n` for `n = 1..=5`.
    pub cochain_dims: Vec<usize>,
    pub dims: CohomologyDims,
    pub z1: Vec<Vector>,
    pub z2z3: Vec<Vector>,
    pub b2b3: Vec<Vector>,
    pub h2h3_representatives: Vec<Vector>,
    pub z4z5: Vec<Vector>,
    pub b4b5: Vec<Vector>,
    pub h4h5_representatives: Vec<Vector>,
}

impl CohomologyReport {
    pub fn compute(c: &CochainComplex) -> Result<Self> {
        let z1 = h1(c)?;
        let two = h2h3(c)?;
        let four = h4h5(c)?;
        let cochain_dims = (1..=5)
            .map(|n| Ok(c.space(n)?.dim()))
            .collect::<Result<_>>()?;
        Ok(CohomologyReport {
            algebra: c.algebra().name().to_string(),
            cochain_dims,
            dims: CohomologyDims {
                h1: z1.dim(),
                z2z3: two.z.dim(),
                b2b3: two.b.dim(),
                h2h3: two.h_dim,
                z4z5: four.z.dim(),
                b4b5: four.b.dim(),
                h4h5: four.h_dim,
            },
            z1: z1.basis_vectors(),
            z2z3: two.z.basis_vectors(),
            b2b3: two.b.basis_vectors(),
            h2h3_representatives: two.representatives(),
            z4z5: four.z.basis_vectors(),
            b4b5: four.b.basis_vectors(),
            h4h5_representatives: four.representatives(),
        })
    }
}

pub fn cohomology_report(a: &Algebra) -> Result<CohomologyReport> {
    CohomologyReport::compute(&CochainComplex::new(a)?)
}
