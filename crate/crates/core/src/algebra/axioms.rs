//! The eight defining identities, evaluated order by order.
//!
//! An algebra is the order-0 slice of a graded family of products; a
//! truncated deformation supplies the higher slices. Both go through the
//! same residual code so that their verdicts agree exactly at order 0.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactlin::{Rational, Vector};

/// Source of graded binary/ternary products `f_n`, `g_n` plus the fixed twist.
/// `None` stands for the zero map and lets callers skip work.
pub trait GradedProducts {
    fn dim(&self) -> usize;
    fn alpha_power(&self, k: usize, x: &[Rational]) -> Vector;
    fn binary(&self, order: usize, x: &[Rational], y: &[Rational]) -> Option<Vector>;
    fn ternary(
        &self,
        order: usize,
        x: &[Rational],
        y: &[Rational],
        z: &[Rational],
    ) -> Option<Vector>;
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Axiom {
    /// `alpha[xy] = [alpha x, alpha y]`
    MultBinary,
    /// `alpha{xyz} = {alpha x, alpha y, alpha z}`
    MultTernary,
    /// `[xx] = 0`
    AltBinary,
    /// `{xxy} = 0`
    AltTernary,
    /// cyclic sum of `[[xy] alpha z] + {xyz}`
    CyclicBinary,
    /// cyclic sum of `{[xy] alpha z alpha u}`
    CyclicTernary,
    /// `{alpha x alpha y [zu]} = [{xyz} alpha^2 u] + [alpha^2 z {xyu}]`
    BinaryLeibniz,
    /// `{alpha^2 u alpha^2 v {xyz}} = ...`, the ternary derivation rule
    TernaryLeibniz,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::MultBinary,
        Axiom::MultTernary,
        Axiom::AltBinary,
        Axiom::AltTernary,
        Axiom::CyclicBinary,
        Axiom::CyclicTernary,
        Axiom::BinaryLeibniz,
        Axiom::TernaryLeibniz,
    ];

    /// Equation number, 1 through 8.
    pub fn number(self) -> u8 {
        self as u8 + 1
    }

    pub fn from_number(n: u8) -> Option<Axiom> {
        Axiom::ALL.get(usize::from(n).checked_sub(1)?).copied()
    }

    /// Number of basis vectors the identity quantifies over.
    pub fn arity(self) -> usize {
        match self {
            Axiom::MultBinary | Axiom::AltBinary => 2,
            Axiom::MultTernary | Axiom::AltTernary | Axiom::CyclicBinary => 3,
            Axiom::CyclicTernary | Axiom::BinaryLeibniz => 4,
            Axiom::TernaryLeibniz => 5,
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.number())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AxiomResult {
    pub equation: u8,
    pub passed: bool,
    /// First failing basis tuple, 1-based.
    pub counterexample: Option<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    /// Evaluate the identities at `order` for any graded product source.
    pub fn from_products<P: GradedProducts + ?Sized>(p: &P, order: usize) -> Self {
        let results = Axiom::ALL
            .iter()
            .map(|&ax| {
                let counterexample =
                    check_identity(p, ax, order).map(|t| t.into_iter().map(|i| i + 1).collect());
                AxiomResult {
                    equation: ax.number(),
                    passed: counterexample.is_none(),
                    counterexample,
                }
            })
            .collect();
        AxiomReport { results }
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.passed)
    }

    pub fn passes(&self, ax: Axiom) -> bool {
        self.result(ax).is_some_and(|r| r.passed)
    }

    pub fn result(&self, ax: Axiom) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.equation == ax.number())
    }

    pub fn counterexample(&self, ax: Axiom) -> Option<Vec<usize>> {
        self.result(ax).and_then(|r| r.counterexample.clone())
    }

    pub fn failures_summary(&self) -> String {
        let failed: Vec<String> = self
            .results
            .iter()
            .filter(|r| !r.passed)
            .map(|r| match &r.counterexample {
                Some(t) => format!("({}) at {:?}", r.equation, t),
                None => format!("({})", r.equation),
            })
            .collect();
        if failed.is_empty() {
            "none".into()
        } else {
            failed.join(", ")
        }
    }
}

/// First 0-based basis tuple (in lexicographic order) where the identity
/// fails at the given order, or `None` if it holds everywhere.
pub fn check_identity<P: GradedProducts + ?Sized>(
    p: &P,
    ax: Axiom,
    order: usize,
) -> Option<Vec<usize>> {
    let d = p.dim();
    let units: Vec<Vector> = (0..d).map(|i| Vector::unit(d, i)).collect();
    let arity = ax.arity();
    let mut tuple = vec![0usize; arity];
    if d == 0 {
        return None;
    }
    loop {
        let args: Vec<&[Rational]> = tuple.iter().map(|&i| &units[i][..]).collect();
        let r = residual(p, ax, order, &tuple, &args);
        if !r.is_zero() {
            return Some(tuple);
        }
        // next tuple, last index fastest
        let mut pos = arity;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < d {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// Left side minus right side of the identity at `order` on a 0-based basis
/// tuple of length `ax.arity()`.
pub fn residual_at<P: GradedProducts + ?Sized>(
    p: &P,
    ax: Axiom,
    order: usize,
    tuple: &[usize],
) -> Vector {
    assert_eq!(tuple.len(), ax.arity(), "tuple length");
    let d = p.dim();
    let units: Vec<Vector> = tuple.iter().map(|&i| Vector::unit(d, i)).collect();
    let args: Vec<&[Rational]> = units.iter().map(|v| &v[..]).collect();
    residual(p, ax, order, tuple, &args)
}

struct Acc(Vector);

impl Acc {
    fn add(&mut self, v: Option<Vector>) {
        if let Some(v) = v {
            self.0 += &v;
        }
    }
    fn sub(&mut self, v: Option<Vector>) {
        if let Some(v) = v {
            self.0 -= &v;
        }
    }
}

/// `sum_{i+j=n} outer_i(inner_j(..), ..)` with zero slices skipped.
fn composed(
    n: usize,
    inner: impl Fn(usize) -> Option<Vector>,
    outer: impl Fn(usize, &Vector) -> Option<Vector>,
    acc: &mut Acc,
    sign: bool,
) {
    for j in 0..=n {
        if let Some(v) = inner(j) {
            let w = outer(n - j, &v);
            if sign {
                acc.add(w);
            } else {
                acc.sub(w);
            }
        }
    }
}

fn residual<P: GradedProducts + ?Sized>(
    p: &P,
    ax: Axiom,
    n: usize,
    tuple: &[usize],
    a: &[&[Rational]],
) -> Vector {
    let d = p.dim();
    let mut acc = Acc(Vector::zeros(d));
    let al = |k: usize, x: &[Rational]| p.alpha_power(k, x);
    match ax {
        Axiom::MultBinary => {
            acc.add(p.binary(n, a[0], a[1]).map(|v| al(1, &v)));
            acc.sub(p.binary(n, &al(1, a[0]), &al(1, a[1])));
        }
        Axiom::MultTernary => {
            acc.add(p.ternary(n, a[0], a[1], a[2]).map(|v| al(1, &v)));
            acc.sub(p.ternary(n, &al(1, a[0]), &al(1, a[1]), &al(1, a[2])));
        }
        Axiom::AltBinary => {
            acc.add(p.binary(n, a[0], a[1]));
            if tuple[0] != tuple[1] {
                acc.add(p.binary(n, a[1], a[0]));
            }
        }
        Axiom::AltTernary => {
            acc.add(p.ternary(n, a[0], a[1], a[2]));
            if tuple[0] != tuple[1] {
                acc.add(p.ternary(n, a[1], a[0], a[2]));
            }
        }
        Axiom::CyclicBinary => {
            for (x, y, z) in [(a[0], a[1], a[2]), (a[1], a[2], a[0]), (a[2], a[0], a[1])] {
                let az = al(1, z);
                composed(
                    n,
                    |j| p.binary(j, x, y),
                    |i, v| p.binary(i, v, &az),
                    &mut acc,
                    true,
                );
                acc.add(p.ternary(n, x, y, z));
            }
        }
        Axiom::CyclicTernary => {
            let au = al(1, a[3]);
            for (x, y, z) in [(a[0], a[1], a[2]), (a[1], a[2], a[0]), (a[2], a[0], a[1])] {
                let az = al(1, z);
                composed(
                    n,
                    |j| p.binary(j, x, y),
                    |i, v| p.ternary(i, v, &az, &au),
                    &mut acc,
                    true,
                );
            }
        }
        Axiom::BinaryLeibniz => {
            let (x, y, z, u) = (a[0], a[1], a[2], a[3]);
            let (ax1, ay1) = (al(1, x), al(1, y));
            let (az2, au2) = (al(2, z), al(2, u));
            composed(
                n,
                |j| p.binary(j, z, u),
                |i, v| p.ternary(i, &ax1, &ay1, v),
                &mut acc,
                true,
            );
            composed(
                n,
                |j| p.ternary(j, x, y, z),
                |i, v| p.binary(i, v, &au2),
                &mut acc,
                false,
            );
            composed(
                n,
                |j| p.ternary(j, x, y, u),
                |i, v| p.binary(i, &az2, v),
                &mut acc,
                false,
            );
        }
        Axiom::TernaryLeibniz => {
            let (u, v, x, y, z) = (a[0], a[1], a[2], a[3], a[4]);
            let (au2, av2) = (al(2, u), al(2, v));
            let (ax2, ay2, az2) = (al(2, x), al(2, y), al(2, z));
            composed(
                n,
                |j| p.ternary(j, x, y, z),
                |i, w| p.ternary(i, &au2, &av2, w),
                &mut acc,
                true,
            );
            composed(
                n,
                |j| p.ternary(j, u, v, x),
                |i, w| p.ternary(i, w, &ay2, &az2),
                &mut acc,
                false,
            );
            composed(
                n,
                |j| p.ternary(j, u, v, y),
                |i, w| p.ternary(i, &ax2, w, &az2),
                &mut acc,
                false,
            );
            composed(
                n,
                |j| p.ternary(j, u, v, z),
                |i, w| p.ternary(i, &ax2, &ay2, w),
                &mut acc,
                false,
            );
        }
    }
    acc.0
}
