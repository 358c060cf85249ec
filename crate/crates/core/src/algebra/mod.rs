//! Hom-Lie-Yamaguti algebras given by structure constants.
//!
//! An algebra on basis `e_0..e_{d-1}` stores
//! - `binary[(i*d + j)*d + k]`: coefficient of `e_k` in `[e_i, e_j]`,
//! - `ternary[((i*d + j)*d + k)*d + l]`: coefficient of `e_l` in `{e_i e_j e_k}`,
//! - `alpha`: the twist map, column `j` holding the coordinates of `alpha(e_j)`.
//!
//! Both products are kept antisymmetric in their first two slots, which is
//! how `[xx] = 0` and `{xxy} = 0` are realized on a basis.

mod axioms;
pub mod io;
pub mod samples;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational, Vector};

pub use axioms::{check_identity, residual_at, Axiom, AxiomReport, AxiomResult, GradedProducts};

/// Highest power of the twist map that the coboundary formulas use.
const CACHED_ALPHA_POWERS: usize = 4;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Algebra {
    name: String,
    dim: usize,
    binary: Vec<Rational>,
    ternary: Vec<Rational>,
    alpha: Matrix,
    alpha_powers: Arc<Vec<Matrix>>,
    alpha_is_identity: bool,
}

fn check_len(what: &str, expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::InvalidInput(format!(
            "{what} has {found} entries, expected {expected}"
        )));
    }
    Ok(())
}

impl Algebra {
    /// Build from full structure-constant tensors. Rejects tensors that are
    /// not antisymmetric in their first two slots.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        binary: Vec<Rational>,
        ternary: Vec<Rational>,
        alpha: Matrix,
    ) -> Result<Self> {
        check_len("binary tensor", dim.pow(3), binary.len())?;
        check_len("ternary tensor", dim.pow(4), ternary.len())?;
        if alpha.rows() != dim || alpha.cols() != dim {
            return Err(Error::InvalidInput(format!(
                "alpha is {}x{}, expected {dim}x{dim}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        let d = dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let a = &binary[(i * d + j) * d + k];
                    let b = &binary[(j * d + i) * d + k];
                    if &-a != b {
                        return Err(Error::InvalidInput(format!(
                            "binary product is not alternating at [e{}, e{}]",
                            i + 1,
                            j + 1
                        )));
                    }
                    for l in 0..d {
                        let a = &ternary[((i * d + j) * d + k) * d + l];
                        let b = &ternary[((j * d + i) * d + k) * d + l];
                        if &-a != b {
                            return Err(Error::InvalidInput(format!(
                                "ternary product is not alternating in its first two slots at {{e{} e{} e{}}}",
                                i + 1,
                                j + 1,
                                k + 1
                            )));
                        }
                    }
                }
            }
        }
        let mut powers = vec![Matrix::identity(d)];
        for p in 1..=CACHED_ALPHA_POWERS {
            let next = powers[p - 1].mul(&alpha);
            powers.push(next);
        }
        let alpha_is_identity = alpha.is_identity();
        Ok(Algebra {
            name: name.into(),
            dim,
            binary,
            ternary,
            alpha,
            alpha_powers: Arc::new(powers),
            alpha_is_identity,
        })
    }

    pub fn builder(name: impl Into<String>, dim: usize) -> AlgebraBuilder {
        AlgebraBuilder::new(name, dim)
    }

    /// A Hom-Lie algebra seen as a Hom-Lie-Yamaguti algebra with zero
    /// ternary product. `bracket` is the full `d^3` tensor.
    pub fn from_lie_algebra(
        name: impl Into<String>,
        dim: usize,
        bracket: Vec<Rational>,
        alpha: Matrix,
    ) -> Result<Self> {
        let a = Algebra::new(
            name,
            dim,
            bracket,
            vec![Rational::zero(); dim.pow(4)],
            alpha,
        )?;
        let report = a.check_axioms();
        if !report.passes(Axiom::CyclicBinary) {
            return Err(Error::NotHomLie(format!(
                "Hom-Jacobi identity fails at basis tuple {:?}",
                report
                    .counterexample(Axiom::CyclicBinary)
                    .unwrap_or_default()
            )));
        }
        if !report.all_pass() {
            return Err(Error::AxiomFail(Box::new(report)));
        }
        Ok(a)
    }

    /// The Lie-Yamaguti algebra `{xyz} = [[x, y], z]`, `alpha = id`, of a Lie
    /// algebra.
    pub fn from_lya_standard(
        name: impl Into<String>,
        dim: usize,
        bracket: Vec<Rational>,
    ) -> Result<Self> {
        let d = dim;
        check_len("binary tensor", d.pow(3), bracket.len())?;
        let mut ternary = vec![Rational::zero(); d.pow(4)];
        for i in 0..d {
            for j in 0..d {
                for m in 0..d {
                    let c = &bracket[(i * d + j) * d + m];
                    if c.is_zero() {
                        continue;
                    }
                    for k in 0..d {
                        for l in 0..d {
                            let e = &bracket[(m * d + k) * d + l];
                            if !e.is_zero() {
                                ternary[((i * d + j) * d + k) * d + l] += c * e;
                            }
                        }
                    }
                }
            }
        }
        let a = Algebra::new(name, dim, bracket, ternary, Matrix::identity(d))?;
        let report = a.check_axioms();
        if !report.all_pass() {
            return Err(Error::AxiomFail(Box::new(report)));
        }
        Ok(a)
    }

    /// Twist an algebra with `alpha = id` along an endomorphism `beta`:
    /// `[x,y]' = beta[x,y]`, `{xyz}' = beta^2{xyz}`, `alpha' = beta`.
    /// The result is returned only if it passes the axiom checker.
    pub fn yau_twist(&self, beta: &Matrix) -> Result<Self> {
        let d = self.dim;
        if !self.alpha_is_identity {
            return Err(Error::PreconditionFailed(
                "twisting needs an algebra whose alpha is the identity".into(),
            ));
        }
        if beta.rows() != d || beta.cols() != d {
            return Err(Error::DimMismatch {
                expected: d,
                found: beta.rows(),
            });
        }
        for i in 0..d {
            for j in 0..d {
                let (bi, bj) = (beta.column(i), beta.column(j));
                let lhs = beta.mul_vec(self.bracket_of(i, j));
                if lhs != self.bracket(&bi, &bj) {
                    return Err(Error::NotMorphism(format!(
                        "beta[e{}, e{}] != [beta e{}, beta e{}]",
                        i + 1,
                        j + 1,
                        i + 1,
                        j + 1
                    )));
                }
                for k in 0..d {
                    let bk = beta.column(k);
                    let lhs = beta.mul_vec(self.ternary_of(i, j, k));
                    if lhs != self.triple(&bi, &bj, &bk) {
                        return Err(Error::NotMorphism(format!(
                            "beta{{e{} e{} e{}}} != {{beta e{} beta e{} beta e{}}}",
                            i + 1,
                            j + 1,
                            k + 1,
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        let beta2 = beta.mul(beta);
        let mut binary = vec![Rational::zero(); d.pow(3)];
        let mut ternary = vec![Rational::zero(); d.pow(4)];
        for i in 0..d {
            for j in 0..d {
                let v = beta.mul_vec(self.bracket_of(i, j));
                binary[(i * d + j) * d..(i * d + j + 1) * d].clone_from_slice(&v);
                for k in 0..d {
                    let w = beta2.mul_vec(self.ternary_of(i, j, k));
                    let base = ((i * d + j) * d + k) * d;
                    ternary[base..base + d].clone_from_slice(&w);
                }
            }
        }
        let twisted = Algebra::new(
            format!("{} (twisted)", self.name),
            d,
            binary,
            ternary,
            beta.clone(),
        )?;
        let report = twisted.check_axioms();
        if !report.all_pass() {
            return Err(Error::AxiomFail(Box::new(report)));
        }
        Ok(twisted)
    }

    /// Transport the structure along the basis change `p` (columns: new
    /// basis vectors in old coordinates).
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let d = self.dim;
        let p_inv = invert(p)
            .ok_or_else(|| Error::InvalidInput("basis change matrix is singular".into()))?;
        let cols: Vec<Vector> = p.columns();
        let mut binary = vec![Rational::zero(); d.pow(3)];
        let mut ternary = vec![Rational::zero(); d.pow(4)];
        for i in 0..d {
            for j in 0..d {
                let v = p_inv.mul_vec(&self.bracket(&cols[i], &cols[j]));
                binary[(i * d + j) * d..(i * d + j + 1) * d].clone_from_slice(&v);
                for k in 0..d {
                    let w = p_inv.mul_vec(&self.triple(&cols[i], &cols[j], &cols[k]));
                    let base = ((i * d + j) * d + k) * d;
                    ternary[base..base + d].clone_from_slice(&w);
                }
            }
        }
        let alpha = p_inv.mul(&self.alpha).mul(p);
        Algebra::new(self.name.clone(), d, binary, ternary, alpha)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Overwrite `{e_i e_j e_k}` (and `{e_j e_i e_k}` with the opposite sign).
    /// Used to build deliberately broken structures.
    pub fn with_ternary_entry(
        &self,
        i: usize,
        j: usize,
        k: usize,
        value: &[Rational],
    ) -> Result<Self> {
        let d = self.dim;
        if value.len() != d
            || i >= d
            || j >= d
            || k >= d
            || (i == j && value.iter().any(|x| !x.is_zero()))
        {
            return Err(Error::InvalidInput("bad ternary entry".into()));
        }
        let mut ternary = self.ternary.clone();
        for l in 0..d {
            ternary[((i * d + j) * d + k) * d + l] = value[l].clone();
            ternary[((j * d + i) * d + k) * d + l] = -&value[l];
        }
        Algebra::new(
            self.name.clone(),
            d,
            self.binary.clone(),
            ternary,
            self.alpha.clone(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn alpha_is_identity(&self) -> bool {
        self.alpha_is_identity
    }

    pub fn binary_tensor(&self) -> &[Rational] {
        &self.binary
    }

    pub fn ternary_tensor(&self) -> &[Rational] {
        &self.ternary
    }

    /// `alpha^k`; powers above 4 are computed on demand.
    pub fn alpha_pow(&self, k: usize) -> Matrix {
        match self.alpha_powers.get(k) {
            Some(m) => m.clone(),
            None => self.alpha.pow(k as u32),
        }
    }

    /// `alpha^k(x)` for `k <= 4`.
    pub fn apply_alpha(&self, k: usize, x: &[Rational]) -> Vector {
        if self.alpha_is_identity || k == 0 {
            return Vector(x.to_vec());
        }
        self.alpha_powers[k].mul_vec(x)
    }

    /// Coordinates of `[e_i, e_j]`.
    pub fn bracket_of(&self, i: usize, j: usize) -> &[Rational] {
        let d = self.dim;
        &self.binary[(i * d + j) * d..(i * d + j + 1) * d]
    }

    /// Coordinates of `{e_i e_j e_k}`.
    pub fn ternary_of(&self, i: usize, j: usize, k: usize) -> &[Rational] {
        let d = self.dim;
        let base = ((i * d + j) * d + k) * d;
        &self.ternary[base..base + d]
    }

    /// `[x, y]` without dimension checks.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let d = self.dim;
        let mut out = Vector::zeros(d);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let c = xi * yj;
                out.add_scaled(&c, self.bracket_of(i, j));
            }
        }
        out
    }

    /// `{x y z}` without dimension checks.
    pub fn triple(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Vector {
        let mut out = Vector::zeros(self.dim);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() || i == j {
                    continue;
                }
                let xy = xi * yj;
                for (k, zk) in z.iter().enumerate() {
                    if zk.is_zero() {
                        continue;
                    }
                    out.add_scaled(&(&xy * zk), self.ternary_of(i, j, k));
                }
            }
        }
        out
    }

    fn check_vec(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim {
            return Err(Error::DimMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }

    pub fn eval_binary(&self, x: &[Rational], y: &[Rational]) -> Result<Vector> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        Ok(self.bracket(x, y))
    }

    pub fn eval_ternary(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Vector> {
        self.check_vec(x)?;
        self.check_vec(y)?;
        self.check_vec(z)?;
        Ok(self.triple(x, y, z))
    }

    /// Evaluate all eight defining identities on every basis tuple.
    pub fn check_axioms(&self) -> AxiomReport {
        AxiomReport::from_products(self, 0)
    }

    /// `Ok(self)` when all axioms hold.
    pub fn verified(self) -> Result<Self> {
        let report = self.check_axioms();
        if report.all_pass() {
            Ok(self)
        } else {
            Err(Error::AxiomFail(Box::new(report)))
        }
    }
}

impl GradedProducts for Algebra {
    fn dim(&self) -> usize {
        self.dim
    }

    fn alpha_power(&self, k: usize, x: &[Rational]) -> Vector {
        self.apply_alpha(k, x)
    }

    fn binary(&self, order: usize, x: &[Rational], y: &[Rational]) -> Option<Vector> {
        (order == 0).then(|| self.bracket(x, y))
    }

    fn ternary(
        &self,
        order: usize,
        x: &[Rational],
        y: &[Rational],
        z: &[Rational],
    ) -> Option<Vector> {
        (order == 0).then(|| self.triple(x, y, z))
    }
}

/// Incremental construction from sparse products (0-based indices).
/// Each entry sets the product and its antisymmetric partner; conflicting
/// entries are rejected.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    name: String,
    dim: usize,
    binary: Vec<Option<Rational>>,
    ternary: Vec<Option<Rational>>,
    alpha: Matrix,
    error: Option<String>,
}

impl AlgebraBuilder {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        AlgebraBuilder {
            name: name.into(),
            dim,
            binary: vec![None; dim.pow(3)],
            ternary: vec![None; dim.pow(4)],
            alpha: Matrix::identity(dim),
            error: None,
        }
    }

    fn set(slot: &mut Option<Rational>, value: Rational, error: &mut Option<String>, what: String) {
        match slot {
            Some(old) if *old != value => {
                error.get_or_insert(format!("conflicting values for {what}"));
            }
            _ => *slot = Some(value),
        }
    }

    /// `[e_i, e_j] = sum_k coeffs[k] e_k`.
    pub fn bracket(mut self, i: usize, j: usize, coeffs: &[Rational]) -> Self {
        let d = self.dim;
        if i >= d || j >= d || coeffs.len() != d {
            self.error
                .get_or_insert(format!("bad bracket entry ({}, {})", i + 1, j + 1));
            return self;
        }
        if i == j {
            if coeffs.iter().any(|c| !c.is_zero()) {
                self.error
                    .get_or_insert(format!("[e{0}, e{0}] must vanish", i + 1));
            }
            return self;
        }
        for (k, c) in coeffs.iter().enumerate() {
            let what = format!("[e{}, e{}]", i + 1, j + 1);
            Self::set(
                &mut self.binary[(i * d + j) * d + k],
                c.clone(),
                &mut self.error,
                what.clone(),
            );
            Self::set(
                &mut self.binary[(j * d + i) * d + k],
                -c,
                &mut self.error,
                what,
            );
        }
        self
    }

    pub fn bracket_int(self, i: usize, j: usize, coeffs: &[i64]) -> Self {
        let v = Vector::from_integers(coeffs);
        self.bracket(i, j, &v)
    }

    /// `{e_i e_j e_k} = sum_l coeffs[l] e_l`.
    pub fn ternary(mut self, i: usize, j: usize, k: usize, coeffs: &[Rational]) -> Self {
        let d = self.dim;
        if i >= d || j >= d || k >= d || coeffs.len() != d {
            self.error.get_or_insert(format!(
                "bad ternary entry ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            ));
            return self;
        }
        if i == j {
            if coeffs.iter().any(|c| !c.is_zero()) {
                self.error
                    .get_or_insert(format!("{{e{0} e{0} e{1}}} must vanish", i + 1, k + 1));
            }
            return self;
        }
        for (l, c) in coeffs.iter().enumerate() {
            let what = format!("{{e{} e{} e{}}}", i + 1, j + 1, k + 1);
            Self::set(
                &mut self.ternary[((i * d + j) * d + k) * d + l],
                c.clone(),
                &mut self.error,
                what.clone(),
            );
            Self::set(
                &mut self.ternary[((j * d + i) * d + k) * d + l],
                -c,
                &mut self.error,
                what,
            );
        }
        self
    }

    pub fn ternary_int(self, i: usize, j: usize, k: usize, coeffs: &[i64]) -> Self {
        let v = Vector::from_integers(coeffs);
        self.ternary(i, j, k, &v)
    }

    pub fn alpha(mut self, alpha: Matrix) -> Self {
        self.alpha = alpha;
        self
    }

    /// Structure constants only; no axiom check.
    pub fn build_unchecked(self) -> Result<Algebra> {
        if let Some(e) = self.error {
            return Err(Error::InvalidInput(e));
        }
        let unwrap =
            |v: Vec<Option<Rational>>| v.into_iter().map(Option::unwrap_or_default).collect();
        Algebra::new(
            self.name,
            self.dim,
            unwrap(self.binary),
            unwrap(self.ternary),
            self.alpha,
        )
    }

    /// Build and require all axioms to hold.
    pub fn build(self) -> Result<Algebra> {
        self.build_unchecked()?.verified()
    }
}

/// Inverse of a square matrix, if it exists.
pub(crate) fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    if m.cols() != n {
        return None;
    }
    let (reduced, pivots) = crate::exactlin::rref(&m.hstack(&Matrix::identity(n)));
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(Matrix::from_fn(n, n, |r, c| reduced[(r, n + c)].clone()))
}
