//! Hom-cochain spaces `HomC^n(L, L)`.
//!
//! A multilinear map `f: L^n -> L` is stored by its coordinates in the full
//! tensor space of dimension `d^(n+1)`: entry `((i_1*d + i_2)*d + ... + i_n)*d + k`
//! is the coefficient of `e_k` in `f(e_{i_1}, ..., e_{i_n})`. A cochain must be
//! alternating in each adjacent slot pair `(1,2), (3,4), ...` and commute
//! with the twist map slotwise.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, Matrix, Rational, Vector};

pub const MAX_ARITY: usize = 7;

/// Ambient index of the coordinate `(tuple, k)`.
pub fn ambient_index(d: usize, tuple: &[usize], k: usize) -> usize {
    tuple.iter().fold(0, |acc, &i| acc * d + i) * d + k
}

/// Inverse of [`ambient_index`].
pub fn decode_index(d: usize, n: usize, mut idx: usize) -> (Vec<usize>, usize) {
    let k = idx % d;
    idx /= d;
    let mut tuple = vec![0; n];
    for slot in (0..n).rev() {
        tuple[slot] = idx % d;
        idx /= d;
    }
    (tuple, k)
}

/// All index tuples of length `n` over `0..d`, lexicographic.
pub fn tuples(d: usize, n: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = d.pow(n as u32);
    (0..total).map(move |mut idx| {
        let mut t = vec![0; n];
        for slot in (0..n).rev() {
            t[slot] = idx % d;
            idx /= d;
        }
        t
    })
}

fn is_canonical(tuple: &[usize], pairs: usize) -> bool {
    tuple[..2 * pairs].chunks_exact(2).all(|p| p[0] < p[1])
}

/// Ambient positions `(tuple, k)` whose tuple is strictly increasing in each
/// of the first `pairs` slot pairs. A map alternating in those pairs is
/// determined by these coordinates.
fn canonical_positions(d: usize, n: usize, pairs: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for t in tuples(d, n) {
        if is_canonical(&t, pairs) {
            let base = ambient_index(d, &t, 0);
            out.extend(base..base + d);
        }
    }
    out
}

type Sparse = Vec<(usize, Rational)>;

/// The pair-alternating map that is 1 at canonical position `pos`, with the
/// sign-flipped entries at every pair transposition of its tuple.
fn alternating_unit(d: usize, n: usize, pairs: usize, pos: usize) -> Vec<(usize, bool)> {
    let (tuple, k) = decode_index(d, n, pos);
    let mut out = Vec::with_capacity(1 << pairs);
    for mask in 0..(1usize << pairs) {
        let mut t = tuple.clone();
        for p in 0..pairs {
            if mask >> p & 1 == 1 {
                t.swap(2 * p, 2 * p + 1);
            }
        }
        out.push((ambient_index(d, &t, k), mask.count_ones() % 2 == 1));
    }
    out.sort_unstable();
    out
}

/// Basis of `HomC^n(L, L)` inside the ambient tensor space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    n: usize,
    d: usize,
    /// Number of leading slot pairs the maps alternate in; `n / 2` for cochains.
    pairs: usize,
    basis: Vec<Sparse>,
    /// Ambient coordinate reading off each basis coefficient.
    pivots: Vec<usize>,
}

impl CochainSpace {
    pub fn new(a: &Algebra, n: usize) -> Result<Self> {
        Self::alternating_in(a, n, n / 2)
    }

    /// Twist-equivariant `n`-linear maps alternating only in the first
    /// `pairs` slot pairs. With `pairs = n / 2` this is `HomC^n(L, L)`.
    pub fn alternating_in(a: &Algebra, n: usize, pairs: usize) -> Result<Self> {
        if n == 0 || n > MAX_ARITY {
            return Err(Error::ArityOutOfRange(n));
        }
        if pairs > n / 2 {
            return Err(Error::InvalidInput(format!(
                "{pairs} slot pairs do not fit in arity {n}"
            )));
        }
        let d = a.dim();
        let canon = canonical_positions(d, n, pairs);
        let units: Vec<Vec<(usize, bool)>> = canon
            .iter()
            .map(|&p| alternating_unit(d, n, pairs, p))
            .collect();
        let expand = |packed: &[Rational]| -> Sparse {
            let mut acc: Sparse = Vec::new();
            for (c, unit) in packed.iter().zip(&units) {
                if c.is_zero() {
                    continue;
                }
                for &(idx, neg) in unit {
                    acc.push((idx, if neg { -c } else { c.clone() }));
                }
            }
            acc.sort_by_key(|e| e.0);
            // distinct packed units have disjoint supports
            acc
        };

        if a.alpha_is_identity() {
            let basis = units
                .iter()
                .map(|u| {
                    u.iter()
                        .map(|&(idx, neg)| {
                            (
                                idx,
                                if neg {
                                    -Rational::one()
                                } else {
                                    Rational::one()
                                },
                            )
                        })
                        .collect()
                })
                .collect();
            return Ok(CochainSpace {
                n,
                d,
                pairs,
                basis,
                pivots: canon,
            });
        }

        let constraint = equivariance_constraint(a, n, pairs, &canon, &units);
        let kernel = kernel_basis(&constraint);
        let basis = kernel.basis_vectors().iter().map(|v| expand(v)).collect();
        let pivots = kernel.pivots().iter().map(|&p| canon[p]).collect();
        Ok(CochainSpace {
            n,
            d,
            pairs,
            basis,
            pivots,
        })
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    /// Whether this is the full cochain space `HomC^n(L, L)`.
    pub fn is_cochain_space(&self) -> bool {
        self.pairs == self.n / 2
    }

    pub fn algebra_dim(&self) -> usize {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.d.pow(self.n as u32 + 1)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_cochain(&self, i: usize) -> Cochain {
        let mut coords = vec![Rational::zero(); self.ambient_dim()];
        for (idx, c) in &self.basis[i] {
            coords[*idx] = c.clone();
        }
        Cochain {
            n: self.n,
            d: self.d,
            coords,
        }
    }

    pub fn basis(&self) -> Vec<Cochain> {
        (0..self.dim()).map(|i| self.basis_cochain(i)).collect()
    }

    /// Cochain with the given coordinates in this basis.
    pub fn from_coordinates(&self, coords: &[Rational]) -> Cochain {
        assert_eq!(coords.len(), self.dim(), "coordinate vector length");
        let mut out = vec![Rational::zero(); self.ambient_dim()];
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (idx, v) in b {
                out[*idx] += c * v;
            }
        }
        Cochain {
            n: self.n,
            d: self.d,
            coords: out,
        }
    }

    /// Coordinates of `f` in this basis; `NotACochain` if `f` is outside
    /// the space.
    pub fn coordinates(&self, f: &Cochain) -> Result<Vector> {
        if f.n != self.n || f.d != self.d {
            return Err(Error::DimMismatch {
                expected: self.ambient_dim(),
                found: f.coords.len(),
            });
        }
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| f.coords[p].clone()).collect();
        let mut residual = f.coords.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (idx, v) in b {
                residual[*idx] -= c * v;
            }
        }
        if let Some(pos) = residual.iter().position(|x| !x.is_zero()) {
            let (tuple, k) = decode_index(self.d, self.n, pos);
            return Err(Error::NotACochain {
                arity: self.n,
                reason: format!(
                    "coefficient of e{} at {:?} breaks pair alternation or twist equivariance",
                    k + 1,
                    tuple.iter().map(|i| i + 1).collect::<Vec<_>>()
                ),
            });
        }
        Ok(Vector(coords))
    }

    pub fn contains(&self, f: &Cochain) -> bool {
        self.coordinates(f).is_ok()
    }

    /// Tabulate a multilinear map on basis tuples, spot-check multilinearity
    /// on random vectors, and return it with its coordinates in this space.
    pub fn tabulate(&self, f: &dyn Fn(&[&[Rational]]) -> Vector) -> Result<(Cochain, Vector)> {
        let (d, n) = (self.d, self.n);
        let units: Vec<Vector> = (0..d).map(|i| Vector::unit(d, i)).collect();
        let mut coords = Vec::with_capacity(self.ambient_dim());
        for t in tuples(d, n) {
            let args: Vec<&[Rational]> = t.iter().map(|&i| &units[i][..]).collect();
            let v = f(&args);
            if v.len() != d {
                return Err(Error::DimMismatch {
                    expected: d,
                    found: v.len(),
                });
            }
            coords.extend(v.0);
        }
        let cochain = Cochain { n, d, coords };

        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);
        let sample: Vec<Vector> = (0..n)
            .map(|_| {
                Vector(
                    (0..d)
                        .map(|_| Rational::new(rng.gen_range(-4..=4), rng.gen_range(1..=3)))
                        .collect(),
                )
            })
            .collect();
        let args: Vec<&[Rational]> = sample.iter().map(|v| &v[..]).collect();
        if f(&args) != cochain.eval_unchecked(&args) {
            return Err(Error::InvalidInput(format!(
                "tabulated map of arity {n} is not multilinear"
            )));
        }
        let c = self.coordinates(&cochain)?;
        Ok((cochain, c))
    }
}

/// Rows: canonical positions; columns: alternating units. Entry `(r, c)` is
/// the coordinate `r` of `alpha . u_c - u_c . (alpha x ... x alpha)`.
fn equivariance_constraint(
    a: &Algebra,
    n: usize,
    pairs: usize,
    canon: &[usize],
    units: &[Vec<(usize, bool)>],
) -> Matrix {
    let d = a.dim();
    let alpha = a.alpha();
    let row_of: std::collections::HashMap<usize, usize> =
        canon.iter().enumerate().map(|(r, &p)| (p, r)).collect();
    // nonzero entries of each row of alpha: alpha[j][i] != 0
    let row_support: Vec<Vec<(usize, Rational)>> = (0..d)
        .map(|j| {
            (0..d)
                .filter(|&i| !alpha[(j, i)].is_zero())
                .map(|i| (i, alpha[(j, i)].clone()))
                .collect()
        })
        .collect();
    let mut m = Matrix::zeros(canon.len(), canon.len());
    for (col, unit) in units.iter().enumerate() {
        for &(idx, neg) in unit {
            let (jt, k) = decode_index(d, n, idx);
            let sign = if neg {
                -Rational::one()
            } else {
                Rational::one()
            };
            if is_canonical(&jt, pairs) {
                // alpha . u at the canonical tuple itself
                let base = idx - k;
                for kk in 0..d {
                    let c = &alpha[(kk, k)];
                    if !c.is_zero() {
                        m[(row_of[&(base + kk)], col)] += c;
                    }
                }
            }
            // u . alpha^{(n)}: sum over tuples i with prod alpha[j_s][i_s] != 0
            let mut stack: Vec<(usize, usize, Rational)> = vec![(0, 0, sign)];
            while let Some((slot, prefix, coeff)) = stack.pop() {
                if slot == n {
                    let pos = prefix * d + k;
                    if let Some(&r) = row_of.get(&pos) {
                        m[(r, col)] -= &coeff;
                    }
                    continue;
                }
                for (i, c) in &row_support[jt[slot]] {
                    stack.push((slot + 1, prefix * d + i, &coeff * c));
                }
            }
        }
    }
    m
}

pub fn build_cochain_space(a: &Algebra, n: usize) -> Result<CochainSpace> {
    CochainSpace::new(a, n)
}

/// Tabulate `f` as an `n`-cochain of `a`.
pub fn coords_of_map(
    a: &Algebra,
    n: usize,
    f: &dyn Fn(&[&[Rational]]) -> Vector,
) -> Result<Cochain> {
    Ok(CochainSpace::new(a, n)?.tabulate(f)?.0)
}

/// A multilinear map `L^n -> L` in ambient tensor coordinates.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Cochain {
    n: usize,
    d: usize,
    coords: Vec<Rational>,
}

impl Cochain {
    pub fn zero(d: usize, n: usize) -> Self {
        Cochain {
            n,
            d,
            coords: vec![Rational::zero(); d.pow(n as u32 + 1)],
        }
    }

    pub fn from_coords(d: usize, n: usize, coords: Vec<Rational>) -> Result<Self> {
        let expected = d.pow(n as u32 + 1);
        if coords.len() != expected {
            return Err(Error::DimMismatch {
                expected,
                found: coords.len(),
            });
        }
        Ok(Cochain { n, d, coords })
    }

    /// The binary product of `a` as a 2-cochain.
    pub fn from_binary(a: &Algebra) -> Self {
        Cochain {
            n: 2,
            d: a.dim(),
            coords: a.binary_tensor().to_vec(),
        }
    }

    /// The ternary product of `a` as a 3-cochain.
    pub fn from_ternary(a: &Algebra) -> Self {
        Cochain {
            n: 3,
            d: a.dim(),
            coords: a.ternary_tensor().to_vec(),
        }
    }

    /// A linear map `L -> L` given by a matrix (columns are images).
    pub fn from_matrix(m: &Matrix) -> Self {
        let d = m.rows();
        Cochain {
            n: 1,
            d,
            coords: (0..d * d)
                .map(|idx| m[(idx % d, idx / d)].clone())
                .collect(),
        }
    }

    /// Inverse of [`Cochain::from_matrix`] for 1-cochains.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.n, 1, "only 1-cochains are linear maps");
        let d = self.d;
        Matrix::from_fn(d, d, |r, c| self.coords[c * d + r].clone())
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn algebra_dim(&self) -> usize {
        self.d
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rational::is_zero)
    }

    /// Coordinates of `f(e_{tuple})`.
    pub fn value(&self, tuple: &[usize]) -> &[Rational] {
        let base = ambient_index(self.d, tuple, 0);
        &self.coords[base..base + self.d]
    }

    pub fn eval(&self, args: &[&[Rational]]) -> Result<Vector> {
        if args.len() != self.n {
            return Err(Error::ArityOutOfRange(args.len()));
        }
        if let Some(bad) = args.iter().find(|x| x.len() != self.d) {
            return Err(Error::DimMismatch {
                expected: self.d,
                found: bad.len(),
            });
        }
        Ok(self.eval_unchecked(args))
    }

    pub fn eval_unchecked(&self, args: &[&[Rational]]) -> Vector {
        self.sparse().eval(args)
    }

    pub fn sparse(&self) -> SparseCochain {
        SparseCochain::new(self)
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.n, self.d), (other.n, other.d), "cochain shapes");
        Cochain {
            n: self.n,
            d: self.d,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        assert_eq!((self.n, self.d), (other.n, other.d), "cochain shapes");
        Cochain {
            n: self.n,
            d: self.d,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Cochain {
        Cochain {
            n: self.n,
            d: self.d,
            coords: self.coords.iter().map(|x| x * c).collect(),
        }
    }

    /// Nonzero coordinates as 1-based `(i_1..i_n, k)` entries.
    pub fn to_entries(&self) -> Vec<CochainEntry> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| {
                let (t, k) = decode_index(self.d, self.n, idx);
                let mut indices: Vec<usize> = t.into_iter().map(|i| i + 1).collect();
                indices.push(k + 1);
                CochainEntry {
                    indices,
                    value: c.clone(),
                }
            })
            .collect()
    }

    /// Build from sparse entries; entries given only at one ordering of a
    /// slot pair are completed by antisymmetry. Conflicting entries are an
    /// error.
    pub fn from_entries(d: usize, n: usize, entries: &[CochainEntry]) -> Result<Cochain> {
        let mut coords: Vec<Option<Rational>> = vec![None; d.pow(n as u32 + 1)];
        let set = |coords: &mut Vec<Option<Rational>>, idx: usize, v: Rational| -> Result<()> {
            match &coords[idx] {
                Some(old) if *old != v => {
                    let (t, k) = decode_index(d, n, idx);
                    Err(Error::InvalidInput(format!(
                        "conflicting cochain entries at {:?} -> e{}",
                        t.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        k + 1
                    )))
                }
                _ => {
                    coords[idx] = Some(v);
                    Ok(())
                }
            }
        };
        for (pos, e) in entries.iter().enumerate() {
            if e.indices.len() != n + 1 {
                return Err(Error::InvalidInput(format!(
                    "entry {pos}: expected {} indices, found {}",
                    n + 1,
                    e.indices.len()
                )));
            }
            if let Some(bad) = e.indices.iter().find(|&&i| i == 0 || i > d) {
                return Err(Error::InvalidInput(format!(
                    "entry {pos}: index {bad} out of range 1..={d}"
                )));
            }
            let t: Vec<usize> = e.indices[..n].iter().map(|i| i - 1).collect();
            let k = e.indices[n] - 1;
            let unit = alternating_unit_any(d, n, &t, k);
            match unit {
                None => {
                    if !e.value.is_zero() {
                        return Err(Error::InvalidInput(format!(
                            "entry {pos}: nonzero value on a repeated slot pair"
                        )));
                    }
                }
                Some(unit) => {
                    for (idx, neg) in unit {
                        set(
                            &mut coords,
                            idx,
                            if neg { -&e.value } else { e.value.clone() },
                        )?;
                    }
                }
            }
        }
        Ok(Cochain {
            n,
            d,
            coords: coords.into_iter().map(Option::unwrap_or_default).collect(),
        })
    }
}

/// Like [`alternating_unit`] but for any tuple, with signs relative to the
/// given ordering; `None` if some slot pair repeats an index.
fn alternating_unit_any(
    d: usize,
    n: usize,
    tuple: &[usize],
    k: usize,
) -> Option<Vec<(usize, bool)>> {
    if tuple.chunks_exact(2).any(|p| p[0] == p[1]) {
        return None;
    }
    let pairs = n / 2;
    let mut out = Vec::with_capacity(1 << pairs);
    for mask in 0..(1usize << pairs) {
        let mut t = tuple.to_vec();
        for p in 0..pairs {
            if mask >> p & 1 == 1 {
                t.swap(2 * p, 2 * p + 1);
            }
        }
        out.push((ambient_index(d, &t, k), mask.count_ones() % 2 == 1));
    }
    Some(out)
}

/// Nonzero coordinates of a cochain, laid out for fast evaluation.
#[derive(Clone, Debug)]
pub struct SparseCochain {
    n: usize,
    d: usize,
    inputs: Vec<u8>,
    outputs: Vec<u8>,
    values: Vec<Rational>,
}

impl SparseCochain {
    pub fn new(f: &Cochain) -> Self {
        let mut inputs = Vec::new();
        let mut outputs = Vec::new();
        let mut values = Vec::new();
        for (idx, c) in f.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (t, k) = decode_index(f.d, f.n, idx);
            inputs.extend(t.iter().map(|&i| i as u8));
            outputs.push(k as u8);
            values.push(c.clone());
        }
        SparseCochain {
            n: f.n,
            d: f.d,
            inputs,
            outputs,
            values,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn eval(&self, args: &[&[Rational]]) -> Vector {
        let mut out = Vector::zeros(self.d);
        'entries: for (e, c) in self.values.iter().enumerate() {
            let idx = &self.inputs[e * self.n..(e + 1) * self.n];
            let mut prod = c.clone();
            for (arg, &i) in args.iter().zip(idx) {
                let x = &arg[i as usize];
                if x.is_zero() {
                    continue 'entries;
                }
                if !x.is_one() {
                    prod *= x;
                }
            }
            out[self.outputs[e] as usize] += prod;
        }
        out
    }
}

/// One nonzero coordinate: `f(e_{i_1}, ..., e_{i_n})` has coefficient
/// `value` at `e_k`. Serialized as the flat array `[i_1, ..., i_n, k, "p/q"]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CochainEntry {
    pub indices: Vec<usize>,
    pub value: Rational,
}

impl Serialize for CochainEntry {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.indices.len() + 1))?;
        for i in &self.indices {
            seq.serialize_element(i)?;
        }
        seq.serialize_element(&self.value)?;
        seq.end()
    }
}

impl<'de> Deserialize<'de> for CochainEntry {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let mut raw: Vec<serde_json::Value> = Vec::deserialize(de)?;
        let value = raw
            .pop()
            .ok_or_else(|| D::Error::custom("empty cochain entry"))?;
        let value: Rational = serde_json::from_value(value).map_err(D::Error::custom)?;
        let indices = raw
            .into_iter()
            .map(|v| {
                v.as_u64().map(|i| i as usize).ok_or_else(|| {
                    D::Error::custom(format!("cochain index {v} is not a positive integer"))
                })
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(CochainEntry { indices, value })
    }
}
