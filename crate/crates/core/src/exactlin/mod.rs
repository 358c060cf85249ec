//! Exact linear algebra over the rationals.
//!
//! Everything here is dense and exact. Row reduction skips zero entries, which
//! keeps the structured (mostly sparse) systems built by the cochain and
//! coboundary code cheap.

mod rational;

use std::fmt;
use std::ops::{Add, AddAssign, Deref, DerefMut, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use rational::{common_denominator, ParseRationalError, Rational};

/// A column vector with exact entries.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(pub Vec<Rational>);

impl Vector {
    pub fn zeros(len: usize) -> Self {
        Vector(vec![Rational::zero(); len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Vector(values.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn scaled(&self, c: &Rational) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &[Rational]) {
        if c.is_zero() {
            return;
        }
        for (x, y) in self.0.iter_mut().zip(other) {
            if !y.is_zero() {
                *x += c * y;
            }
        }
    }

    pub fn dot(&self, other: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (x, y) in self.0.iter().zip(other) {
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        acc
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

impl Deref for Vector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl DerefMut for Vector {
    fn deref_mut(&mut self) -> &mut [Rational] {
        &mut self.0
    }
}

impl From<Vec<Rational>> for Vector {
    fn from(v: Vec<Rational>) -> Self {
        Vector(v)
    }
}

impl AddAssign<&Vector> for Vector {
    fn add_assign(&mut self, rhs: &Vector) {
        for (x, y) in self.0.iter_mut().zip(&rhs.0) {
            if !y.is_zero() {
                *x += y;
            }
        }
    }
}

impl AddAssign<Vector> for Vector {
    fn add_assign(&mut self, rhs: Vector) {
        *self += &rhs;
    }
}

impl SubAssign<&Vector> for Vector {
    fn sub_assign(&mut self, rhs: &Vector) {
        for (x, y) in self.0.iter_mut().zip(&rhs.0) {
            if !y.is_zero() {
                *x -= y;
            }
        }
    }
}

impl SubAssign<Vector> for Vector {
    fn sub_assign(&mut self, rhs: Vector) {
        *self -= &rhs;
    }
}

impl Add<&Vector> for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&Vector> for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        -&self
    }
}

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn diagonal(entries: &[Rational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            data.extend(r);
        }
        Ok(Matrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_integer_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn row_mut(&mut self, r: usize) -> &mut [Rational] {
        &mut self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector((0..self.rows).map(|r| self[(r, c)].clone()).collect())
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = &self[(r, c)];
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "matrix-vector dimension mismatch");
        let mut out = Vector::zeros(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for r in 0..self.rows {
                let a = &self.data[r * self.cols + c];
                if !a.is_zero() {
                    out.0[r] += a * x;
                }
            }
        }
        out
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[r * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other.data[k * other.cols + c];
                    if !b.is_zero() {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Matrix::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// Stack `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Place `self` to the left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Nonzero entries as `(row, col, value)`, row-major.
    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(move |(i, x)| (i / self.cols.max(1), i % self.cols.max(1), x))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (r, c): (usize, usize)) -> &Rational {
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Rational {
        &mut self.data[r * self.cols + c]
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs)
    }
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let pivots = rref_in_place(&mut a);
    (a, pivots)
}

fn rref_in_place(a: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(found) = (pivot_row..rows).find(|&r| !a[(r, col)].is_zero()) else {
            continue;
        };
        if found != pivot_row {
            for c in 0..cols {
                a.data.swap(found * cols + c, pivot_row * cols + c);
            }
        }
        let inv = a[(pivot_row, col)].recip();
        for x in a.row_mut(pivot_row)[col..].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        let support: Vec<(usize, Rational)> = (col..cols)
            .filter(|&c| !a[(pivot_row, c)].is_zero())
            .map(|c| (c, a[(pivot_row, c)].clone()))
            .collect();
        for r in 0..rows {
            if r == pivot_row {
                continue;
            }
            let factor = a[(r, col)].clone();
            if factor.is_zero() {
                continue;
            }
            let row = a.row_mut(r);
            for (c, p) in &support {
                row[*c] -= &factor * p;
            }
        }
        pivots.push(col);
        pivot_row += 1;
    }
    pivots
}

/// A linear subspace of `Q^ambient_dim`, stored by a canonical basis.
///
/// The basis columns are the nonzero rows of the reduced row echelon form of
/// any spanning set, so two subspaces are equal exactly when their bases are.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in Q^{})", self.dim(), self.ambient_dim)
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(ambient_dim, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self::spanned_by_columns(&Matrix::identity(ambient_dim))
    }

    /// Span of the columns of `m` (dependent columns are fine).
    pub fn spanned_by_columns(m: &Matrix) -> Self {
        let (reduced, pivots) = rref(&m.transpose());
        let k = pivots.len();
        let basis = Matrix::from_fn(m.rows(), k, |r, c| reduced[(c, r)].clone());
        Subspace {
            ambient_dim: m.rows(),
            basis,
            pivots,
        }
    }

    pub fn spanned_by(ambient_dim: usize, vectors: &[Vector]) -> Self {
        Self::spanned_by_columns(&Matrix::from_columns(ambient_dim, vectors))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    /// For each basis vector, the coordinate where it is 1 and every other
    /// basis vector is 0.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn basis_vectors(&self) -> Vec<Vector> {
        self.basis.columns()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` lies
    /// outside the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        assert_eq!(v.len(), self.ambient_dim, "vector length");
        let coords = Vector(self.pivots.iter().map(|&p| v[p].clone()).collect());
        let back = self.basis.mul_vec(&coords);
        (back.0 == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.ambient_dim == self.ambient_dim
            && other.basis.columns().iter().all(|v| self.contains(v))
    }

    /// Vectors of this basis that extend a basis of `sub` to a basis of
    /// `self`, chosen greedily in basis order.
    pub fn complement_of(&self, sub: &Subspace) -> Vec<Vector> {
        let mut span = sub.basis.columns();
        let mut picked = Vec::new();
        let mut rank = sub.dim();
        for v in self.basis.columns() {
            span.push(v.clone());
            let r = Matrix::from_columns(self.ambient_dim, &span).rank();
            if r > rank {
                rank = r;
                picked.push(v);
            } else {
                span.pop();
            }
        }
        picked
    }
}

const RANK_PRIME: u64 = 2_147_483_647;

/// Rank of `m` reduced modulo a fixed prime, or `None` if some entry has a
/// denominator divisible by it. Never exceeds the rational rank.
pub fn rank_mod_prime(m: &Matrix) -> Option<usize> {
    let p = RANK_PRIME;
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = Vec::with_capacity(rows * cols);
    for x in m.entries() {
        a.push(x.residue_mod(p)?);
    }
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(found) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        for c in 0..cols {
            a.swap(found * cols + c, rank * cols + c);
        }
        let inv = {
            let (mut b, mut e, mut acc) = (a[rank * cols + col], p - 2, 1u64);
            while e > 0 {
                if e & 1 == 1 {
                    acc = acc * b % p;
                }
                b = b * b % p;
                e >>= 1;
            }
            acc
        };
        for r in rank + 1..rows {
            let factor = a[r * cols + col] * inv % p;
            if factor == 0 {
                continue;
            }
            for c in col..cols {
                let sub = factor * a[rank * cols + c] % p;
                a[r * cols + c] = (a[r * cols + c] + p - sub) % p;
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Basis of `{ v : m v = 0 }`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    if rank_mod_prime(m) == Some(m.cols()) {
        return Subspace::zero(m.cols());
    }
    let (reduced, pivots) = rref(m);
    let cols = m.cols();
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let vectors: Vec<Vector> = (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = Vector::unit(cols, free);
            for (r, &p) in pivots.iter().enumerate() {
                v.0[p] = -&reduced[(r, free)];
            }
            v
        })
        .collect();
    Subspace::spanned_by(cols, &vectors)
}

/// Basis of the column space of `m`.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::spanned_by_columns(m)
}

/// Some `x` with `m x = b`, or `None` when `b` is not in the image.
pub fn solve(m: &Matrix, b: &[Rational]) -> Option<Vector> {
    assert_eq!(b.len(), m.rows(), "right-hand side length");
    let aug = m.hstack(&Matrix::from_columns(m.rows(), &[Vector(b.to_vec())]));
    let (reduced, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols()) {
        return None;
    }
    let mut x = Vector::zeros(m.cols());
    for (r, &p) in pivots.iter().enumerate() {
        x.0[p] = reduced[(r, m.cols())].clone();
    }
    Some(x)
}

/// `dim z - dim b`, after checking `b` is a subspace of `z`.
pub fn quotient_dim(z: &Subspace, b: &Subspace) -> Result<usize> {
    if z.ambient_dim() != b.ambient_dim() {
        return Err(Error::DimMismatch {
            expected: z.ambient_dim(),
            found: b.ambient_dim(),
        });
    }
    if !z.contains_subspace(b) {
        return Err(Error::NotContained {
            inner: b.dim(),
            outer: z.dim(),
        });
    }
    Ok(z.dim() - b.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        Matrix::from_integer_rows(rows)
    }

    #[test]
    fn modular_rank_bounds_rational_rank() {
        assert_eq!(rank_mod_prime(&m(&[&[1, 2], &[2, 4]])), Some(1));
        assert_eq!(rank_mod_prime(&Matrix::identity(3)), Some(3));
        let half = Matrix::diagonal(&[Rational::new(1, 2), Rational::new(-3, 7)]);
        assert_eq!(rank_mod_prime(&half), Some(2));
        // p itself vanishes mod p
        assert_eq!(rank_mod_prime(&m(&[&[2_147_483_647]])), Some(0));
        assert_eq!(m(&[&[2_147_483_647]]).rank(), 1);
    }

    #[test]
    fn rref_examples() {
        let (r, p) = rref(&Matrix::identity(2));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);

        let (r, p) = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);

        let (r, p) = rref(&m(&[&[0, 1], &[1, 0]]));
        assert_eq!(r, Matrix::identity(2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&Matrix::zeros(3, 3)).dim(), 3);
        assert_eq!(kernel_basis(&Matrix::identity(2)).dim(), 0);
        let k = kernel_basis(&m(&[&[1, 1]]));
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&Vector::from_integers(&[1, -1])));
        assert!(!k.contains(&Vector::from_integers(&[1, 1])));
    }

    #[test]
    fn image_examples() {
        assert_eq!(image_basis(&Matrix::zeros(2, 3)).dim(), 0);
        assert_eq!(image_basis(&Matrix::identity(4)).dim(), 4);
        assert_eq!(image_basis(&m(&[&[1, 2], &[2, 4]])).dim(), 1);
    }

    #[test]
    fn solve_examples() {
        let x = solve(&Matrix::identity(2), &Vector::from_integers(&[3, 5])).unwrap();
        assert_eq!(x, Vector::from_integers(&[3, 5]));
        assert!(solve(&Matrix::zeros(2, 2), &Vector::from_integers(&[1, 0])).is_none());
        let x = solve(&m(&[&[2]]), &Vector::from_integers(&[1])).unwrap();
        assert_eq!(x.0, vec![Rational::new(1, 2)]);
    }

    #[test]
    fn quotient_examples() {
        let z = Subspace::full(6);
        assert_eq!(quotient_dim(&z, &Subspace::zero(6)).unwrap(), 6);
        assert_eq!(quotient_dim(&z, &z).unwrap(), 0);

        let units: Vec<Vector> = (0..4).map(|i| Vector::unit(5, i)).collect();
        let z4 = Subspace::spanned_by(5, &units);
        let b1 = Subspace::spanned_by(5, &[Vector::from_integers(&[1, 1, 0, 0, 0])]);
        assert_eq!(quotient_dim(&z4, &b1).unwrap(), 3);

        let outside = Subspace::spanned_by(5, &[Vector::from_integers(&[0, 0, 0, 0, 1])]);
        assert!(matches!(
            quotient_dim(&z4, &outside),
            Err(Error::NotContained { .. })
        ));
    }

    #[test]
    fn subspace_equality_is_canonical() {
        let a = Subspace::spanned_by(
            3,
            &[
                Vector::from_integers(&[1, 1, 0]),
                Vector::from_integers(&[0, 1, 1]),
            ],
        );
        let b = Subspace::spanned_by(
            3,
            &[
                Vector::from_integers(&[1, 2, 1]),
                Vector::from_integers(&[1, 0, -1]),
                Vector::from_integers(&[2, 2, 0]),
            ],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn complement_extends_basis() {
        let z = Subspace::full(3);
        let b = Subspace::spanned_by(3, &[Vector::from_integers(&[1, 1, 0])]);
        let reps = z.complement_of(&b);
        assert_eq!(reps.len(), 2);
        let mut all = b.basis_vectors();
        all.extend(reps);
        assert_eq!(Matrix::from_columns(3, &all).rank(), 3);
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |xs| {
                Matrix::from_fn(r, c, |i, j| Rational::from_integer(xs[i * c + j]))
            })
        })
    }

    proptest! {
        #[test]
        fn modular_rank_never_exceeds_rank(a in small_matrix()) {
            prop_assert!(rank_mod_prime(&a).unwrap() <= a.rank());
        }

        #[test]
        fn rank_nullity(a in small_matrix()) {
            prop_assert_eq!(kernel_basis(&a).dim() + image_basis(&a).dim(), a.cols());
        }

        #[test]
        fn kernel_vectors_are_annihilated(a in small_matrix()) {
            for v in kernel_basis(&a).basis_vectors() {
                prop_assert!(a.mul_vec(&v).is_zero());
            }
        }

        #[test]
        fn rref_idempotent(a in small_matrix()) {
            let (r1, p1) = rref(&a);
            let (r2, p2) = rref(&r1);
            prop_assert_eq!(r1, r2);
            prop_assert_eq!(p1, p2);
        }

        #[test]
        fn solve_is_exact(a in small_matrix(), seed in proptest::collection::vec(-4i64..=4, 6)) {
            let x0 = Vector::from_integers(&seed[..a.cols()]);
            let b = a.mul_vec(&x0);
            let x = solve(&a, &b).expect("b is in the image by construction");
            prop_assert_eq!(a.mul_vec(&x), b);
        }
    }
}
