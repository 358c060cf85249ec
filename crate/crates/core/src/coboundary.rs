//! Coboundary operators `delta^1`, `delta^2`, `d^2`, `delta^3` as exact
//! matrices between cochain coordinate spaces.
//!
//! Every operator is assembled column by column: each basis cochain of the
//! domain is pushed through the defining formula, the image is tabulated on
//! basis tuples and read off in the codomain basis. Tabulation fails with
//! `NotACochain` if an image ever leaves the codomain space.
//!
//! The second component of `d^2` is alternating in its first two arguments
//! but not, in general, in the last two, so it is read off in the larger
//! space [`CochainComplex::d2_target`] rather than in `HomC^4`.

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::algebra::Algebra;
use crate::cochain::{Cochain, CochainSpace, SparseCochain, MAX_ARITY};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Rational, Vector};

type Args<'a> = [&'a [Rational]];

/// Which of the four operators a [`CoboundaryMap`] realizes.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Delta1,
    Delta2,
    D2,
    Delta3,
}

impl Level {
    pub fn domain_arities(self) -> &'static [usize] {
        match self {
            Level::Delta1 => &[1],
            Level::Delta2 | Level::D2 => &[2, 3],
            Level::Delta3 => &[4, 5],
        }
    }

    pub fn codomain_arities(self) -> &'static [usize] {
        match self {
            Level::Delta1 => &[2, 3],
            Level::Delta2 => &[4, 5],
            Level::D2 => &[3, 4],
            Level::Delta3 => &[6, 7],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Level::Delta1 => "delta1",
            Level::Delta2 => "delta2",
            Level::D2 => "d2",
            Level::Delta3 => "delta3",
        }
    }

    pub fn parse(s: &str) -> Option<Level> {
        [Level::Delta1, Level::Delta2, Level::D2, Level::Delta3]
            .into_iter()
            .find(|l| l.name() == s)
    }
}

/// Matrix of a paired coboundary operator with respect to the cochain space
/// bases. Columns follow the domain blocks in order, rows the codomain blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoboundaryMap {
    pub level: Level,
    /// `(arity, dim)` of each domain block.
    pub domain: Vec<(usize, usize)>,
    /// `(arity, dim)` of each codomain block.
    pub codomain: Vec<(usize, usize)>,
    pub matrix: Matrix,
}

impl CoboundaryMap {
    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn apply(&self, coords: &[Rational]) -> Vector {
        self.matrix.mul_vec(coords)
    }
}

/// Order in which the double sums over `(k, i)` in `delta^3` are visited.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SumOrder {
    KThenI,
    IThenK,
}

/// One argument of a term in the hat-omission sums.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Slot {
    /// `alpha^2(x_j)`, 0-based `j`.
    Twisted(usize),
    /// `{x_{2k-1} x_{2k} x_j}`, 0-based `j`.
    Bracketed(usize),
}

/// Argument list of the `(k, i)` term (1-based as in the formulas) for `n`
/// inputs: slots `2k-1` and `2k` are dropped, slot `i` becomes bracketed and
/// the rest are twisted by `alpha^2`.
pub fn hat_slots(n: usize, k: usize, i: usize) -> Vec<Slot> {
    assert!(
        k >= 1 && 2 * k < i && i <= n,
        "hat term ({k}, {i}) out of range for {n} inputs"
    );
    (1..=n)
        .filter(|&j| j != 2 * k - 1 && j != 2 * k)
        .map(|j| {
            if j == i {
                Slot::Bracketed(j - 1)
            } else {
                Slot::Twisted(j - 1)
            }
        })
        .collect()
}

/// All `(k, i)` with `1 <= k <= kmax`, `2k + 1 <= i <= n`.
pub fn hat_pairs(n: usize, kmax: usize, order: SumOrder) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    match order {
        SumOrder::KThenI => {
            for k in 1..=kmax {
                for i in 2 * k + 1..=n {
                    pairs.push((k, i));
                }
            }
        }
        SumOrder::IThenK => {
            for i in 3..=n {
                for k in 1..=kmax {
                    if 2 * k < i {
                        pairs.push((k, i));
                    }
                }
            }
        }
    }
    pairs
}

fn sign(k: usize) -> bool {
    k.is_multiple_of(2)
}

struct Acc(Vector);

impl Acc {
    fn new(d: usize) -> Self {
        Acc(Vector::zeros(d))
    }
    fn push(&mut self, positive: bool, v: &[Rational]) {
        for (acc, x) in self.0.iter_mut().zip(v) {
            if x.is_zero() {
                continue;
            }
            if positive {
                *acc += x;
            } else {
                *acc -= x;
            }
        }
    }
}

fn tw(a: &Algebra, k: usize, x: &[Rational]) -> Vector {
    a.apply_alpha(k, x)
}

/// `delta^1_I f (x, y) = [x f(y)] + [f(x) y] - f([xy])`
pub fn delta1_i(a: &Algebra, f: &SparseCochain, x: &Args) -> Vector {
    let (p, q) = (x[0], x[1]);
    let mut acc = Acc::new(a.dim());
    acc.push(true, &a.bracket(p, &f.eval(&[q])));
    acc.push(true, &a.bracket(&f.eval(&[p]), q));
    acc.push(false, &f.eval(&[&a.bracket(p, q)]));
    acc.0
}

/// `delta^1_II f (x, y, z) = {f(x) y z} + {x f(y) z} + {x y f(z)} - f({xyz})`
pub fn delta1_ii(a: &Algebra, f: &SparseCochain, x: &Args) -> Vector {
    let (p, q, r) = (x[0], x[1], x[2]);
    let mut acc = Acc::new(a.dim());
    acc.push(true, &a.triple(&f.eval(&[p]), q, r));
    acc.push(true, &a.triple(p, &f.eval(&[q]), r));
    acc.push(true, &a.triple(p, q, &f.eval(&[r])));
    acc.push(false, &f.eval(&[&a.triple(p, q, r)]));
    acc.0
}

/// `delta^2_I (f, g)(x, y, z, u)`; depends on both `f` and `g`.
pub fn delta2_i(a: &Algebra, f: &SparseCochain, g: &SparseCochain, x: &Args) -> Vector {
    let (x1, y, z, u) = (x[0], x[1], x[2], x[3]);
    let mut acc = Acc::new(a.dim());
    if !f.is_zero() {
        let fzu = f.eval(&[z, u]);
        if !fzu.is_zero() {
            acc.push(true, &a.triple(&tw(a, 1, x1), &tw(a, 1, y), &fzu));
        }
        acc.push(false, &f.eval(&[&a.triple(x1, y, z), &tw(a, 2, u)]));
        acc.push(false, &f.eval(&[&tw(a, 2, z), &a.triple(x1, y, u)]));
    }
    if !g.is_zero() {
        acc.push(
            true,
            &g.eval(&[&tw(a, 1, x1), &tw(a, 1, y), &a.bracket(z, u)]),
        );
        acc.push(false, &a.bracket(&tw(a, 2, z), &g.eval(&[x1, y, u])));
        acc.push(false, &a.bracket(&g.eval(&[x1, y, z]), &tw(a, 2, u)));
    }
    acc.0
}

/// `delta^2_II g (x, y, u, v, w)`
pub fn delta2_ii(a: &Algebra, g: &SparseCochain, x: &Args) -> Vector {
    let (x1, y, u, v, w) = (x[0], x[1], x[2], x[3], x[4]);
    let mut acc = Acc::new(a.dim());
    if g.is_zero() {
        return acc.0;
    }
    let (x2, y2, u2, v2, w2) = (
        tw(a, 2, x1),
        tw(a, 2, y),
        tw(a, 2, u),
        tw(a, 2, v),
        tw(a, 2, w),
    );
    acc.push(true, &a.triple(&x2, &y2, &g.eval(&[u, v, w])));
    acc.push(false, &a.triple(&g.eval(&[x1, y, u]), &v2, &w2));
    acc.push(false, &a.triple(&u2, &g.eval(&[x1, y, v]), &w2));
    acc.push(false, &a.triple(&u2, &v2, &g.eval(&[x1, y, w])));
    acc.push(true, &g.eval(&[&x2, &y2, &a.triple(u, v, w)]));
    acc.push(false, &g.eval(&[&a.triple(x1, y, u), &v2, &w2]));
    acc.push(false, &g.eval(&[&u2, &a.triple(x1, y, v), &w2]));
    acc.push(false, &g.eval(&[&u2, &v2, &a.triple(x1, y, w)]));
    acc.0
}

/// `d^2_I (f, g)(x, y, z)`: cyclic sum of `[f(x,y) alpha z] + f([xy], alpha z) + g(x,y,z)`.
pub fn d2_i(a: &Algebra, f: &SparseCochain, g: &SparseCochain, x: &Args) -> Vector {
    let mut acc = Acc::new(a.dim());
    for (p, q, r) in [(x[0], x[1], x[2]), (x[1], x[2], x[0]), (x[2], x[0], x[1])] {
        if !f.is_zero() {
            let ar = tw(a, 1, r);
            acc.push(true, &a.bracket(&f.eval(&[p, q]), &ar));
            acc.push(true, &f.eval(&[&a.bracket(p, q), &ar]));
        }
        acc.push(true, &g.eval(&[p, q, r]));
    }
    acc.0
}

/// `d^2_II (f, g)(x, y, z, u)`: cyclic sum over `x, y, z` of
/// `{f(x,y) alpha z alpha u} + g([xy], alpha z, alpha u)`.
pub fn d2_ii(a: &Algebra, f: &SparseCochain, g: &SparseCochain, x: &Args) -> Vector {
    let mut acc = Acc::new(a.dim());
    let au = tw(a, 1, x[3]);
    for (p, q, r) in [(x[0], x[1], x[2]), (x[1], x[2], x[0]), (x[2], x[0], x[1])] {
        let ar = tw(a, 1, r);
        if !f.is_zero() {
            let fpq = f.eval(&[p, q]);
            if !fpq.is_zero() {
                acc.push(true, &a.triple(&fpq, &ar, &au));
            }
        }
        if !g.is_zero() {
            acc.push(true, &g.eval(&[&a.bracket(p, q), &ar, &au]));
        }
    }
    acc.0
}

/// The hat-omission double sum `sum_{(k,i)} (-1)^k h(..)` shared by both
/// components of `delta^3`.
fn hat_sum(a: &Algebra, h: &SparseCochain, x: &Args, pairs: &[(usize, usize)], acc: &mut Acc) {
    let twisted: Vec<Vector> = x.iter().map(|v| tw(a, 2, v)).collect();
    for &(k, i) in pairs {
        let slots = hat_slots(x.len(), k, i);
        let bracketed = a.triple(x[2 * k - 2], x[2 * k - 1], x[i - 1]);
        if bracketed.is_zero() {
            continue;
        }
        let args: Vec<&[Rational]> = slots
            .iter()
            .map(|s| match *s {
                Slot::Twisted(j) => &twisted[j][..],
                Slot::Bracketed(_) => &bracketed[..],
            })
            .collect();
        acc.push(sign(k), &h.eval(&args));
    }
}

fn delta3_i_with(
    a: &Algebra,
    f: &SparseCochain,
    g: &SparseCochain,
    x: &Args,
    order: SumOrder,
) -> Vector {
    let mut acc = Acc::new(a.dim());
    if !f.is_zero() {
        let v = f.eval(&[x[2], x[3], x[4], x[5]]);
        if !v.is_zero() {
            acc.push(true, &a.triple(&tw(a, 3, x[0]), &tw(a, 3, x[1]), &v));
        }
        let v = f.eval(&[x[0], x[1], x[4], x[5]]);
        if !v.is_zero() {
            acc.push(false, &a.triple(&tw(a, 3, x[2]), &tw(a, 3, x[3]), &v));
        }
        hat_sum(a, f, x, &hat_pairs(6, 2, order), &mut acc);
    }
    if !g.is_zero() {
        let t: Vec<Vector> = x[..4].iter().map(|v| tw(a, 1, v)).collect();
        acc.push(
            false,
            &g.eval(&[&t[0], &t[1], &t[2], &t[3], &a.bracket(x[4], x[5])]),
        );
        acc.push(
            true,
            &a.bracket(&tw(a, 4, x[4]), &g.eval(&[x[0], x[1], x[2], x[3], x[5]])),
        );
        acc.push(
            true,
            &a.bracket(&g.eval(&[x[0], x[1], x[2], x[3], x[4]]), &tw(a, 4, x[5])),
        );
    }
    acc.0
}

fn delta3_ii_with(a: &Algebra, g: &SparseCochain, x: &Args, order: SumOrder) -> Vector {
    let mut acc = Acc::new(a.dim());
    if g.is_zero() {
        return acc.0;
    }
    for k in 1..=3 {
        let rest: Vec<&[Rational]> = (0..7)
            .filter(|&j| j != 2 * k - 2 && j != 2 * k - 1)
            .map(|j| x[j])
            .collect();
        let v = g.eval(&rest);
        if !v.is_zero() {
            let t = a.triple(&tw(a, 4, x[2 * k - 2]), &tw(a, 4, x[2 * k - 1]), &v);
            acc.push(k % 2 == 1, &t);
        }
    }
    hat_sum(a, g, x, &hat_pairs(7, 3, order), &mut acc);
    let v = g.eval(&[x[0], x[1], x[2], x[3], x[4]]);
    if !v.is_zero() {
        acc.push(true, &a.triple(&v, &tw(a, 4, x[5]), &tw(a, 4, x[6])));
    }
    let v = g.eval(&[x[0], x[1], x[2], x[3], x[5]]);
    if !v.is_zero() {
        acc.push(false, &a.triple(&v, &tw(a, 4, x[4]), &tw(a, 4, x[6])));
    }
    acc.0
}

/// `delta^3_I (f, g)(x_1, ..., x_6)`
pub fn delta3_i(a: &Algebra, f: &SparseCochain, g: &SparseCochain, x: &Args) -> Vector {
    delta3_i_with(a, f, g, x, SumOrder::KThenI)
}

/// `delta^3_II g (x_1, ..., x_7)`
pub fn delta3_ii(a: &Algebra, g: &SparseCochain, x: &Args) -> Vector {
    delta3_ii_with(a, g, x, SumOrder::KThenI)
}

/// An algebra together with its cochain spaces and coboundary matrices,
/// each computed on first use.
pub struct CochainComplex {
    algebra: Algebra,
    spaces: [OnceLock<CochainSpace>; MAX_ARITY],
    delta1: OnceLock<CoboundaryMap>,
    delta2: OnceLock<CoboundaryMap>,
    d2: OnceLock<CoboundaryMap>,
    delta3: OnceLock<CoboundaryMap>,
    d2_target: OnceLock<CochainSpace>,
}

fn cached<T>(cell: &OnceLock<T>, make: impl FnOnce() -> Result<T>) -> Result<&T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = make()?;
    Ok(cell.get_or_init(|| v))
}

impl CochainComplex {
    /// Requires `a` to satisfy all axioms.
    pub fn new(a: &Algebra) -> Result<Self> {
        let a = a.clone().verified()?;
        Ok(CochainComplex {
            algebra: a,
            spaces: Default::default(),
            delta1: OnceLock::new(),
            delta2: OnceLock::new(),
            d2: OnceLock::new(),
            delta3: OnceLock::new(),
            d2_target: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    /// `HomC^n`, `1 <= n <= 7`.
    pub fn space(&self, n: usize) -> Result<&CochainSpace> {
        if n == 0 || n > MAX_ARITY {
            return Err(Error::ArityOutOfRange(n));
        }
        cached(&self.spaces[n - 1], || CochainSpace::new(&self.algebra, n))
    }

    /// Twist-equivariant 4-linear maps alternating in the first slot pair;
    /// contains `HomC^4` and every image of `d^2_II`.
    pub fn d2_target(&self) -> Result<&CochainSpace> {
        cached(&self.d2_target, || {
            CochainSpace::alternating_in(&self.algebra, 4, 1)
        })
    }

    /// Space the `slot`-th codomain block of `level` is read off in.
    pub fn codomain_space(&self, level: Level, slot: usize) -> Result<&CochainSpace> {
        match (level, slot) {
            (Level::D2, 1) => self.d2_target(),
            _ => self.space(level.codomain_arities()[slot]),
        }
    }

    fn domain_dims(&self, level: Level) -> Result<Vec<(usize, usize)>> {
        level
            .domain_arities()
            .iter()
            .map(|&n| Ok((n, self.space(n)?.dim())))
            .collect()
    }

    fn codomain_dims(&self, level: Level) -> Result<Vec<(usize, usize)>> {
        (0..level.codomain_arities().len())
            .map(|slot| {
                let s = self.codomain_space(level, slot)?;
                Ok((s.arity(), s.dim()))
            })
            .collect()
    }

    pub fn operator(&self, level: Level) -> Result<&CoboundaryMap> {
        let cell = match level {
            Level::Delta1 => &self.delta1,
            Level::Delta2 => &self.delta2,
            Level::D2 => &self.d2,
            Level::Delta3 => &self.delta3,
        };
        cached(cell, || self.assemble(level, SumOrder::KThenI))
    }

    pub fn delta1(&self) -> Result<&CoboundaryMap> {
        self.operator(Level::Delta1)
    }

    pub fn delta2(&self) -> Result<&CoboundaryMap> {
        self.operator(Level::Delta2)
    }

    pub fn d2(&self) -> Result<&CoboundaryMap> {
        self.operator(Level::D2)
    }

    pub fn delta3(&self) -> Result<&CoboundaryMap> {
        self.operator(Level::Delta3)
    }

    /// Image of one domain element given as cochains (use a zero cochain for
    /// an absent component), tabulated in the codomain spaces.
    pub fn apply_cochains(&self, level: Level, inputs: &[&Cochain]) -> Result<Vec<Cochain>> {
        Ok(self
            .image(level, inputs, SumOrder::KThenI)?
            .into_iter()
            .map(|(c, _)| c)
            .collect())
    }

    fn image(
        &self,
        level: Level,
        inputs: &[&Cochain],
        order: SumOrder,
    ) -> Result<Vec<(Cochain, Vector)>> {
        let a = &self.algebra;
        let expected = level.domain_arities();
        if inputs.len() != expected.len()
            || inputs
                .iter()
                .zip(expected)
                .any(|(c, &n)| c.arity() != n || c.algebra_dim() != a.dim())
        {
            return Err(Error::InvalidInput(format!(
                "{} expects cochains of arities {:?} on dimension {}",
                level.name(),
                expected,
                a.dim()
            )));
        }
        let sparse: Vec<SparseCochain> = inputs.iter().map(|c| c.sparse()).collect();
        let codomain = level.codomain_arities();
        let mut out = Vec::with_capacity(2);
        for (slot, &n) in codomain.iter().enumerate() {
            let space = self.codomain_space(level, slot)?;
            let skip = match (level, slot) {
                (Level::Delta1, _) => sparse[0].is_zero(),
                (Level::Delta2 | Level::Delta3, 1) => sparse[1].is_zero(),
                _ => sparse.iter().all(SparseCochain::is_zero),
            };
            if skip {
                out.push((Cochain::zero(a.dim(), n), Vector::zeros(space.dim())));
                continue;
            }
            let sparse = &sparse;
            let eval: Box<dyn Fn(&Args) -> Vector + '_> = match (level, slot) {
                (Level::Delta1, 0) => Box::new(|x: &Args| delta1_i(a, &sparse[0], x)),
                (Level::Delta1, _) => Box::new(|x: &Args| delta1_ii(a, &sparse[0], x)),
                (Level::Delta2, 0) => Box::new(|x: &Args| delta2_i(a, &sparse[0], &sparse[1], x)),
                (Level::Delta2, _) => Box::new(|x: &Args| delta2_ii(a, &sparse[1], x)),
                (Level::D2, 0) => Box::new(|x: &Args| d2_i(a, &sparse[0], &sparse[1], x)),
                (Level::D2, _) => Box::new(|x: &Args| d2_ii(a, &sparse[0], &sparse[1], x)),
                (Level::Delta3, 0) => {
                    Box::new(move |x: &Args| delta3_i_with(a, &sparse[0], &sparse[1], x, order))
                }
                (Level::Delta3, _) => {
                    Box::new(move |x: &Args| delta3_ii_with(a, &sparse[1], x, order))
                }
            };
            out.push(space.tabulate(&*eval)?);
        }
        Ok(out)
    }

    fn assemble(&self, level: Level, order: SumOrder) -> Result<CoboundaryMap> {
        let d = self.algebra.dim();
        let domain = self.domain_dims(level)?;
        let codomain = self.codomain_dims(level)?;
        let rows: usize = codomain.iter().map(|b| b.1).sum();
        let mut columns = Vec::new();
        for (block, &(n, dim)) in domain.iter().enumerate() {
            let space = self.space(n)?;
            for b in 0..dim {
                let inputs: Vec<Cochain> = domain
                    .iter()
                    .enumerate()
                    .map(|(j, &(m, _))| {
                        if j == block {
                            space.basis_cochain(b)
                        } else {
                            Cochain::zero(d, m)
                        }
                    })
                    .collect();
                let refs: Vec<&Cochain> = inputs.iter().collect();
                let mut col = Vec::with_capacity(rows);
                for (_, coords) in self.image(level, &refs, order)? {
                    col.extend(coords.0);
                }
                columns.push(Vector(col));
            }
        }
        Ok(CoboundaryMap {
            level,
            domain,
            codomain,
            matrix: Matrix::from_columns(rows, &columns),
        })
    }

    /// `delta^3` assembled with the double sums visited in the given order.
    pub fn delta3_with_order(&self, order: SumOrder) -> Result<CoboundaryMap> {
        self.assemble(Level::Delta3, order)
    }
}

/// `delta^1` of `a`, recomputing all spaces.
pub fn delta1(a: &Algebra) -> Result<CoboundaryMap> {
    CochainComplex::new(a)?.delta1().cloned()
}

pub fn delta2(a: &Algebra) -> Result<CoboundaryMap> {
    CochainComplex::new(a)?.delta2().cloned()
}

pub fn d2(a: &Algebra) -> Result<CoboundaryMap> {
    CochainComplex::new(a)?.d2().cloned()
}

pub fn delta3(a: &Algebra) -> Result<CoboundaryMap> {
    CochainComplex::new(a)?.delta3().cloned()
}
