//! Independent oracles: brute-force constraint reduction over the full tensor
//! space with `BigRational` arithmetic, sharing no code with the solver's
//! packed cochain bases.

#![allow(dead_code)]

use std::collections::BTreeMap;

use hlya_core::algebra::samples::random_algebra;
use hlya_core::cochain::{tuples, Cochain};
use hlya_core::{Algebra, Rational};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Row = BTreeMap<usize, BigRational>;

/// Row echelon form kept as pivot column -> row with that leading column.
#[derive(Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, Row>,
}

impl Echelon {
    /// Reduce `row` against the current pivots; returns whether it was
    /// independent (and was added).
    pub fn insert(&mut self, mut row: Row) -> bool {
        row.retain(|_, v| !v.is_zero());
        while let Some((&c, lead)) = row.iter().next() {
            match self.pivots.get(&c) {
                Some(p) => {
                    let factor = lead.clone();
                    for (&k, v) in p {
                        let e = row.entry(k).or_insert_with(BigRational::zero);
                        *e -= &factor * v;
                        if e.is_zero() {
                            row.remove(&k);
                        }
                    }
                }
                None => {
                    let inv = lead.recip();
                    for v in row.values_mut() {
                        *v *= &inv;
                    }
                    self.pivots.insert(c, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn big(q: &Rational) -> BigRational {
    q.to_big()
}

fn index(d: usize, t: &[usize], k: usize) -> usize {
    t.iter().fold(0, |acc, &i| acc * d + i) * d + k
}

/// Expansion of `alpha e_{t_1} x ... x alpha e_{t_n}` as (tuple index, coefficient).
fn twisted_tuple(a: &Algebra, t: &[usize]) -> Vec<(Vec<usize>, BigRational)> {
    let d = a.dim();
    let alpha = a.alpha();
    let mut out = vec![(Vec::new(), BigRational::one())];
    for &ti in t {
        let mut next = Vec::new();
        for (prefix, c) in &out {
            for s in 0..d {
                let e = big(&alpha[(s, ti)]);
                if !e.is_zero() {
                    let mut p = prefix.clone();
                    p.push(s);
                    next.push((p, c * &e));
                }
            }
        }
        out = next;
    }
    out
}

/// All linear constraints (9) and (10) on the `d^(n+1)` coordinates of an
/// `n`-linear map, restricted to alternation in the first `pairs` pairs.
pub fn cochain_constraints(a: &Algebra, n: usize, pairs: usize) -> Vec<Row> {
    let d = a.dim();
    let alpha = a.alpha();
    let mut rows = Vec::new();
    for t in tuples(d, n) {
        for p in 0..pairs {
            let (i, j) = (t[2 * p], t[2 * p + 1]);
            if i > j {
                continue;
            }
            let mut s = t.clone();
            s.swap(2 * p, 2 * p + 1);
            for k in 0..d {
                let mut row = Row::new();
                *row.entry(index(d, &t, k)).or_insert_with(BigRational::zero) += BigRational::one();
                *row.entry(index(d, &s, k)).or_insert_with(BigRational::zero) += BigRational::one();
                rows.push(row);
            }
        }
        if a.alpha_is_identity() {
            continue;
        }
        let expansion = twisted_tuple(a, &t);
        for k in 0..d {
            let mut row = Row::new();
            for m in 0..d {
                let c = big(&alpha[(k, m)]);
                if !c.is_zero() {
                    *row.entry(index(d, &t, m)).or_insert_with(BigRational::zero) += c;
                }
            }
            for (s, c) in &expansion {
                *row.entry(index(d, s, k)).or_insert_with(BigRational::zero) -= c;
            }
            rows.push(row);
        }
    }
    rows
}

/// `dim HomC^n` by eliminating every constraint over the full tensor space.
pub fn brute_force_cochain_dim(a: &Algebra, n: usize) -> usize {
    let mut e = Echelon::default();
    for row in cochain_constraints(a, n, n / 2) {
        e.insert(row);
    }
    a.dim().pow(n as u32 + 1) - e.rank()
}

/// Closed form for `alpha = id`: choose an unordered pair per slot pair,
/// a free index for an odd last slot, and an output index.
pub fn closed_form_dim(d: usize, n: usize) -> usize {
    (d * (d - 1) / 2).pow((n / 2) as u32) * d.pow((n % 2) as u32) * d
}

/// Number of constraints from [`cochain_constraints`] that `f` violates,
/// by direct evaluation.
pub fn violated(rows: &[Row], f: &Cochain) -> usize {
    if f.is_zero() {
        return 0;
    }
    let coords: Vec<Option<BigRational>> = f
        .coords()
        .iter()
        .map(|q| (!q.is_zero()).then(|| big(q)))
        .collect();
    rows.iter()
        .filter(|row| {
            let value: BigRational = row
                .iter()
                .filter_map(|(&i, c)| coords[i].as_ref().map(|x| c * x))
                .sum();
            !value.is_zero()
        })
        .count()
}

pub fn random_algebras(seed: u64, count: usize) -> Vec<Algebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_algebra(&mut rng)).collect()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational<R: rand::Rng>(rng: &mut R) -> Rational {
    Rational::new(rng.gen_range(-3..=3), rng.gen_range(1..=2))
}

pub fn random_vector<R: rand::Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| small_rational(rng)).collect()
}

/// A random combination of the basis vectors, with small rational weights.
pub fn random_in(
    basis: &[hlya_core::Vector],
    ambient: usize,
    rng: &mut impl rand::Rng,
) -> Vec<Rational> {
    let mut v = hlya_core::Vector::zeros(ambient);
    for b in basis {
        v.add_scaled(&small_rational(rng), b);
    }
    v.into_inner()
}

/// A random `(f_1, g_1)` in `Z^2 x Z^3`.
pub fn random_cocycle<R: rand::Rng>(
    c: &hlya_core::coboundary::CochainComplex,
    rng: &mut R,
) -> (Cochain, Cochain) {
    let z = hlya_core::cohomology::h2h3(c).unwrap().z;
    let v = random_in(&z.basis_vectors(), z.ambient_dim(), rng);
    hlya_core::cohomology::pair_from_coordinates(c, 2, &v).unwrap()
}

/// A random gauge whose coefficients are random elements of `HomC^1`.
pub fn random_gauge<R: rand::Rng>(
    c: &hlya_core::coboundary::CochainComplex,
    order: usize,
    rng: &mut R,
) -> hlya_core::deformation::Gauge {
    let space = c.space(1).unwrap();
    let phis = (0..order)
        .map(|_| {
            space
                .from_coordinates(&random_vector(rng, space.dim()))
                .to_matrix()
        })
        .collect();
    hlya_core::deformation::Gauge::new(c.algebra(), phis).unwrap()
}

/// `f_t = lambda(t) f_0`, `g_t = lambda(t)^2 g_0` for `lambda = 1 + sum l_i t^i`:
/// every identity is homogeneous, so this is a deformation to all orders.
pub fn scaling_deformation(
    a: &Algebra,
    lambda: &[Rational],
) -> hlya_core::deformation::Deformation {
    let order = lambda.len();
    let mut l = vec![Rational::one()];
    l.extend_from_slice(lambda);
    let square: Vec<Rational> = (0..=order)
        .map(|k| (0..=k).map(|i| &l[i] * &l[k - i]).sum())
        .collect();
    let (f0, g0) = (Cochain::from_binary(a), Cochain::from_ternary(a));
    let f = (1..=order).map(|i| f0.scaled(&l[i])).collect();
    let g = (1..=order).map(|i| g0.scaled(&square[i])).collect();
    hlya_core::deformation::Deformation::new(a, f, g).unwrap()
}
