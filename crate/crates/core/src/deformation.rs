//! Truncated one-parameter formal deformations `f_t = sum f_i t^i`,
//! `g_t = sum g_i t^i` of an algebra, gauge equivalence, trivialization and
//! the second-order obstruction.
//!
//! Everything is computed modulo `t^(N+1)` for an explicit order `N`. A
//! gauge `Phi_t = sum phi_i t^i` acts by
//! `f'_t(x, y) = Phi_t^-1 f_t(Phi_t x, Phi_t y)` and likewise on `g_t`.

use serde::{Deserialize, Serialize};

use crate::algebra::io::AlgebraFile;
use crate::algebra::{check_identity, Algebra, Axiom, AxiomReport, AxiomResult, GradedProducts};
use crate::coboundary::{CochainComplex, Level};
use crate::cochain::{tuples, Cochain, CochainEntry, CochainSpace, SparseCochain};
use crate::cohomology::{
    in_z2z3, in_z4z5, is_coboundary_2, pair_coordinates, pair_from_coordinates,
};
use crate::error::{Error, Result};
use crate::exactlin::{solve, Matrix, Rational, Vector};

#[derive(Clone, Debug)]
pub struct Deformation {
    base: Algebra,
    f: Vec<Cochain>,
    g: Vec<Cochain>,
    sf: Vec<SparseCochain>,
    sg: Vec<SparseCochain>,
}

impl PartialEq for Deformation {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.f == other.f && self.g == other.g
    }
}

impl Eq for Deformation {}

fn check_member(space: &CochainSpace, c: &Cochain, what: &str) -> Result<()> {
    if c.arity() != space.arity() || c.algebra_dim() != space.algebra_dim() {
        return Err(Error::InvalidInput(format!(
            "{what}: expected a {}-cochain on dimension {}",
            space.arity(),
            space.algebra_dim()
        )));
    }
    space.coordinates(c).map(|_| ()).map_err(|e| match e {
        Error::NotACochain { arity, reason } => Error::NotACochain {
            arity,
            reason: format!("{what}: {reason}"),
        },
        other => other,
    })
}

impl Deformation {
    /// `f[i]`, `g[i]` are the coefficients of `t^(i+1)`; both lists must have
    /// the same length `N`. Every coefficient must be a cochain of the base.
    pub fn new(base: &Algebra, f: Vec<Cochain>, g: Vec<Cochain>) -> Result<Self> {
        if f.len() != g.len() {
            return Err(Error::InvalidInput(format!(
                "{} binary and {} ternary coefficients",
                f.len(),
                g.len()
            )));
        }
        let c2 = CochainSpace::new(base, 2)?;
        let c3 = CochainSpace::new(base, 3)?;
        for (i, (fi, gi)) in f.iter().zip(&g).enumerate() {
            check_member(&c2, fi, &format!("f_{}", i + 1))?;
            check_member(&c3, gi, &format!("g_{}", i + 1))?;
        }
        Ok(Self::from_parts(base, f, g))
    }

    fn from_parts(base: &Algebra, f: Vec<Cochain>, g: Vec<Cochain>) -> Self {
        let mut fs = vec![Cochain::from_binary(base)];
        fs.extend(f);
        let mut gs = vec![Cochain::from_ternary(base)];
        gs.extend(g);
        Deformation {
            base: base.clone(),
            sf: fs.iter().map(Cochain::sparse).collect(),
            sg: gs.iter().map(Cochain::sparse).collect(),
            f: fs,
            g: gs,
        }
    }

    /// All higher coefficients zero.
    pub fn null(base: &Algebra, order: usize) -> Self {
        let d = base.dim();
        Self::from_parts(
            base,
            vec![Cochain::zero(d, 2); order],
            vec![Cochain::zero(d, 3); order],
        )
    }

    pub fn base(&self) -> &Algebra {
        &self.base
    }

    pub fn order(&self) -> usize {
        self.f.len() - 1
    }

    /// `f_i`, with `f_0` the base bracket.
    pub fn f(&self, i: usize) -> &Cochain {
        &self.f[i]
    }

    pub fn g(&self, i: usize) -> &Cochain {
        &self.g[i]
    }

    pub fn is_null(&self) -> bool {
        self.f[1..].iter().chain(&self.g[1..]).all(Cochain::is_zero)
    }

    /// Smallest `r >= 1` with `(f_r, g_r) != 0`.
    pub fn leading_order(&self) -> Option<usize> {
        (1..=self.order()).find(|&r| !self.f[r].is_zero() || !self.g[r].is_zero())
    }

    /// Same coefficients, truncated or padded with zeros to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        let d = self.base.dim();
        let mut f: Vec<Cochain> = self.f[1..].iter().take(order).cloned().collect();
        let mut g: Vec<Cochain> = self.g[1..].iter().take(order).cloned().collect();
        f.resize(order, Cochain::zero(d, 2));
        g.resize(order, Cochain::zero(d, 3));
        Self::from_parts(&self.base, f, g)
    }

    fn same_shape(&self, other: &Deformation) -> Result<()> {
        if self.base != other.base {
            return Err(Error::BaseMismatch(format!(
                "'{}' vs '{}'",
                self.base.name(),
                other.base.name()
            )));
        }
        if self.order() != other.order() {
            return Err(Error::BaseMismatch(format!(
                "orders {} and {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }
}

impl GradedProducts for Deformation {
    fn dim(&self) -> usize {
        self.base.dim()
    }

    fn alpha_power(&self, k: usize, x: &[Rational]) -> Vector {
        self.base.apply_alpha(k, x)
    }

    fn binary(&self, order: usize, x: &[Rational], y: &[Rational]) -> Option<Vector> {
        let f = self.sf.get(order)?;
        (!f.is_zero()).then(|| f.eval(&[x, y]))
    }

    fn ternary(
        &self,
        order: usize,
        x: &[Rational],
        y: &[Rational],
        z: &[Rational],
    ) -> Option<Vector> {
        let g = self.sg.get(order)?;
        (!g.is_zero()).then(|| g.eval(&[x, y, z]))
    }
}

/// Verdicts of the eight deformation equations at each order `0..=N`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeformationReport {
    pub order: usize,
    /// Entry `n` holds the equations at order `n`.
    pub levels: Vec<AxiomReport>,
}

impl DeformationReport {
    pub fn all_pass(&self) -> bool {
        self.levels.iter().all(AxiomReport::all_pass)
    }

    /// Whether every equation holds at every order `<= n`.
    pub fn passes_through(&self, n: usize) -> bool {
        self.levels.iter().take(n + 1).all(AxiomReport::all_pass)
    }

    /// `(n, equation, 1-based tuple)` of every failure.
    pub fn failures(&self) -> Vec<(usize, u8, Option<Vec<usize>>)> {
        let mut out = Vec::new();
        for (n, level) in self.levels.iter().enumerate() {
            for r in level.results.iter().filter(|r| !r.passed) {
                out.push((n, r.equation, r.counterexample.clone()));
            }
        }
        out
    }
}

pub fn verify_deformation(d: &Deformation) -> DeformationReport {
    verify_through(d, d.order())
}

/// Deformation equations at orders `0..=n` only.
pub fn verify_through(d: &Deformation, n: usize) -> DeformationReport {
    DeformationReport {
        order: d.order(),
        levels: (0..=n.min(d.order()))
            .map(|k| AxiomReport::from_products(d, k))
            .collect(),
    }
}

/// The first-order term `(f_1, g_1)`, checked to be a 2-cocycle pair.
pub fn infinitesimal(c: &CochainComplex, d: &Deformation) -> Result<(Cochain, Cochain)> {
    if d.order() < 1 {
        return Err(Error::PreconditionFailed("deformation has order 0".into()));
    }
    if !verify_through(d, 1).all_pass() {
        return Err(Error::PreconditionFailed(
            "deformation equations fail at order <= 1".into(),
        ));
    }
    let (f1, g1) = (d.f(1).clone(), d.g(1).clone());
    if !in_z2z3(c, &f1, &g1)? {
        return Err(Error::NotCocycle { order: 1 });
    }
    Ok((f1, g1))
}

/// Truncated series of linear maps `Phi_t = sum phi_i t^i` with `phi_0 = id`,
/// each `phi_i` commuting with the twist.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gauge {
    phi: Vec<Matrix>,
}

fn series_mul(a: &[Matrix], b: &[Matrix]) -> Vec<Matrix> {
    let n = a.len();
    (0..n)
        .map(|k| {
            (0..=k).fold(Matrix::zeros(a[0].rows(), a[0].cols()), |acc, i| {
                acc.add(&a[i].mul(&b[k - i]))
            })
        })
        .collect()
}

impl Gauge {
    /// `phi[i]` is the coefficient of `t^(i+1)`; the order is `phi.len()`.
    pub fn new(base: &Algebra, phi: Vec<Matrix>) -> Result<Self> {
        let d = base.dim();
        let alpha = base.alpha();
        for (i, p) in phi.iter().enumerate() {
            if p.rows() != d || p.cols() != d {
                return Err(Error::DimMismatch {
                    expected: d,
                    found: p.rows(),
                });
            }
            if p.mul(alpha) != alpha.mul(p) {
                return Err(Error::InvalidInput(format!(
                    "phi_{} does not commute with the twist map",
                    i + 1
                )));
            }
        }
        let mut all = vec![Matrix::identity(d)];
        all.extend(phi);
        Ok(Gauge { phi: all })
    }

    pub fn identity(base: &Algebra, order: usize) -> Self {
        let d = base.dim();
        Gauge {
            phi: std::iter::once(Matrix::identity(d))
                .chain(std::iter::repeat_n(Matrix::zeros(d, d), order))
                .collect(),
        }
    }

    /// `id - h t^r` truncated at `order`.
    pub fn elementary(base: &Algebra, order: usize, h: &Matrix, r: usize) -> Result<Self> {
        assert!(r >= 1, "elementary gauge needs r >= 1");
        let d = base.dim();
        let phi = (1..=order)
            .map(|i| {
                if i == r {
                    h.scaled(&-Rational::one())
                } else {
                    Matrix::zeros(d, d)
                }
            })
            .collect();
        Self::new(base, phi)
    }

    pub fn order(&self) -> usize {
        self.phi.len() - 1
    }

    pub fn phi(&self, i: usize) -> &Matrix {
        &self.phi[i]
    }

    pub fn is_identity(&self) -> bool {
        self.phi[1..].iter().all(Matrix::is_zero)
    }

    /// `Psi_t` with `Phi_t Psi_t = id` modulo `t^(N+1)`:
    /// `psi_0 = id`, `psi_n = -sum_{i=1..n} phi_i psi_{n-i}`.
    pub fn inverse(&self) -> Self {
        let d = self.phi[0].rows();
        let mut psi = vec![Matrix::identity(d)];
        for n in 1..self.phi.len() {
            let s = (1..=n).fold(Matrix::zeros(d, d), |acc, i| {
                acc.add(&self.phi[i].mul(&psi[n - i]))
            });
            psi.push(s.scaled(&-Rational::one()));
        }
        Gauge { phi: psi }
    }

    /// Series product `Phi_t Psi_t`. Gauging by `self` and then by `next`
    /// equals gauging once by `self.compose(next)`.
    pub fn compose(&self, next: &Gauge) -> Self {
        assert_eq!(self.order(), next.order(), "gauge orders differ");
        Gauge {
            phi: series_mul(&self.phi, &next.phi),
        }
    }
}

/// Coefficients of `Psi_t h_t(Phi_t x_1, ..., Phi_t x_m)` for a graded
/// `m`-ary product `h_t`, truncated at `N`.
fn gauge_products(
    d: usize,
    m: usize,
    h: &[SparseCochain],
    phi: &[Matrix],
    psi: &[Matrix],
) -> Vec<Vec<Rational>> {
    let big_n = h.len() - 1;
    let mut out = vec![Vec::with_capacity(d.pow(m as u32 + 1)); big_n + 1];
    // images[c][i] = phi_c e_i
    let images: Vec<Vec<Vector>> = phi.iter().map(Matrix::columns).collect();
    for t in tuples(d, m) {
        // s[n] = sum over b + c_1 + ... + c_m = n of h_b(phi_c1 x_1, ...)
        let mut s = vec![Vector::zeros(d); big_n + 1];
        let mut degs = vec![0usize; m];
        loop {
            let used: usize = degs.iter().sum();
            if used <= big_n && degs.iter().zip(&t).all(|(&c, &i)| !images[c][i].is_zero()) {
                let args: Vec<&[Rational]> = degs
                    .iter()
                    .zip(&t)
                    .map(|(&c, &i)| &images[c][i][..])
                    .collect();
                for (b, hb) in h.iter().enumerate().take(big_n + 1 - used) {
                    if !hb.is_zero() {
                        s[used + b] += &hb.eval(&args);
                    }
                }
            }
            // next degree vector with entries <= N
            let mut pos = m;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                degs[pos] += 1;
                if degs[pos] <= big_n {
                    break;
                }
                degs[pos] = 0;
            }
            if degs.iter().all(|&c| c == 0) {
                break;
            }
        }
        for (n, slot) in out.iter_mut().enumerate() {
            let mut v = Vector::zeros(d);
            for a in 0..=n {
                if !s[n - a].is_zero() {
                    v += &psi[a].mul_vec(&s[n - a]);
                }
            }
            slot.extend(v.0);
        }
    }
    out
}

/// `f'_t = Phi_t^-1 f_t(Phi_t ., Phi_t .)`, `g'_t` likewise, modulo `t^(N+1)`.
pub fn apply_gauge(d: &Deformation, p: &Gauge) -> Result<Deformation> {
    if p.order() != d.order() {
        return Err(Error::BaseMismatch(format!(
            "gauge of order {} on a deformation of order {}",
            p.order(),
            d.order()
        )));
    }
    let dim = d.base.dim();
    if p.phi[0].rows() != dim {
        return Err(Error::BaseMismatch(format!(
            "gauge acts on dimension {}, algebra has dimension {dim}",
            p.phi[0].rows()
        )));
    }
    let alpha = d.base.alpha();
    if p.phi.iter().any(|m| m.mul(alpha) != alpha.mul(m)) {
        return Err(Error::BaseMismatch(
            "gauge does not commute with the twist map of the base".into(),
        ));
    }
    let psi = p.inverse().phi;
    let fc = gauge_products(dim, 2, &d.sf, &p.phi, &psi);
    let gc = gauge_products(dim, 3, &d.sg, &p.phi, &psi);
    let f = fc
        .into_iter()
        .skip(1)
        .map(|c| Cochain::from_coords(dim, 2, c))
        .collect::<Result<_>>()?;
    let g = gc
        .into_iter()
        .skip(1)
        .map(|c| Cochain::from_coords(dim, 3, c))
        .collect::<Result<_>>()?;
    Deformation::new(&d.base, f, g)
}

/// Whether gauging `d1` by `p` gives exactly `d2`.
pub fn verify_equivalence(d1: &Deformation, d2: &Deformation, p: &Gauge) -> Result<bool> {
    d1.same_shape(d2)?;
    Ok(apply_gauge(d1, p)? == *d2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Trivialization {
    /// Gauging the input by this series gives the null deformation.
    Trivial(Gauge),
    /// After gauging away all lower orders, `(f_r, g_r)` is a cocycle pair
    /// that is not a coboundary.
    Obstructed {
        r: usize,
        gauge: Gauge,
        f: Cochain,
        g: Cochain,
    },
}

/// Gauge the deformation to the null one order by order: at the leading
/// order `r`, solve `delta^1 h = (f_r, g_r)` and apply `id - h t^r`. The full
/// set of deformation equations is re-checked after every step.
pub fn trivialize(c: &CochainComplex, d: &Deformation) -> Result<Trivialization> {
    if c.algebra() != d.base() {
        return Err(Error::BaseMismatch(format!(
            "complex of '{}' used for a deformation of '{}'",
            c.algebra().name(),
            d.base().name()
        )));
    }
    if !verify_deformation(d).all_pass() {
        return Err(Error::PreconditionFailed(
            "input does not satisfy the deformation equations".into(),
        ));
    }
    let mut current = d.clone();
    let mut total = Gauge::identity(d.base(), d.order());
    while let Some(r) = current.leading_order() {
        let (fr, gr) = (current.f(r).clone(), current.g(r).clone());
        if !in_z2z3(c, &fr, &gr)? {
            return Err(Error::NotCocycle { order: r });
        }
        let Some(h) = is_coboundary_2(c, &fr, &gr)? else {
            return Ok(Trivialization::Obstructed {
                r,
                gauge: total,
                f: fr,
                g: gr,
            });
        };
        let step = Gauge::elementary(d.base(), d.order(), &h.to_matrix(), r)?;
        current = apply_gauge(&current, &step)?;
        total = total.compose(&step);
        if !verify_deformation(&current).all_pass() {
            return Err(Error::PreconditionFailed(format!(
                "deformation equations fail after the gauge step at order {r}"
            )));
        }
        if current.leading_order().is_some_and(|s| s <= r) {
            return Err(Error::NotCocycle { order: r });
        }
    }
    Ok(Trivialization::Trivial(total))
}

/// The quadratic pair `(F, G)` built from a 2-cocycle pair `(f_1, g_1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionPair {
    pub f: Cochain,
    pub g: Cochain,
    /// Whether `(F, G)` is killed by `delta^3`.
    pub in_z4z5: bool,
}

/// `F(x,y,z,u) = f1(g1(x,y,z), a^2 u) + f1(a^2 z, g1(x,y,u)) - g1(a x, a y, f1(z,u))`,
/// `G(u,v,x,y,z) = g1(g1(u,v,x), a^2 y, a^2 z) + g1(a^2 x, g1(u,v,y), a^2 z)
///   + g1(a^2 x, a^2 y, g1(u,v,z)) - g1(a^2 u, a^2 v, g1(x,y,z))`.
pub fn obstruction_pair(c: &CochainComplex, f1: &Cochain, g1: &Cochain) -> Result<ObstructionPair> {
    if !in_z2z3(c, f1, g1)? {
        return Err(Error::NotInZ2Z3);
    }
    let a = c.algebra();
    let (sf, sg) = (f1.sparse(), g1.sparse());
    let al = |k: usize, x: &[Rational]| a.apply_alpha(k, x);
    let (big_f, _) = c.space(4)?.tabulate(&|x| {
        let (x, y, z, u) = (x[0], x[1], x[2], x[3]);
        let mut v = sf.eval(&[&sg.eval(&[x, y, z]), &al(2, u)]);
        v += &sf.eval(&[&al(2, z), &sg.eval(&[x, y, u])]);
        v -= &sg.eval(&[&al(1, x), &al(1, y), &sf.eval(&[z, u])]);
        v
    })?;
    let (big_g, _) = c.space(5)?.tabulate(&|x| {
        let (u, v, x, y, z) = (x[0], x[1], x[2], x[3], x[4]);
        let (x2, y2, z2) = (al(2, x), al(2, y), al(2, z));
        let mut w = sg.eval(&[&sg.eval(&[u, v, x]), &y2, &z2]);
        w += &sg.eval(&[&x2, &sg.eval(&[u, v, y]), &z2]);
        w += &sg.eval(&[&x2, &y2, &sg.eval(&[u, v, z])]);
        w -= &sg.eval(&[&al(2, u), &al(2, v), &sg.eval(&[x, y, z])]);
        w
    })?;
    let in_z = in_z4z5(c, &big_f, &big_g)?;
    Ok(ObstructionPair {
        f: big_f,
        g: big_g,
        in_z4z5: in_z,
    })
}

/// Some `(f_2, g_2)` with `(delta^2_I, delta^2_II)(f_2, g_2) = (F, G)`, or
/// `None` when `(F, G)` is not a coboundary. This is the sign under which the
/// order-2 equations (7') and (8') reduce to an identity.
pub fn second_order_candidate(
    c: &CochainComplex,
    obstruction: &ObstructionPair,
) -> Result<Option<(Cochain, Cochain)>> {
    let target = pair_coordinates(c, &obstruction.f, &obstruction.g)?;
    match solve(&c.delta2()?.matrix, &target) {
        Some(x) => Ok(Some(pair_from_coordinates(c, 2, &x)?)),
        None => Ok(None),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeReport {
    /// Verdicts of equations (5')-(8') at order 2.
    pub equations: Vec<AxiomResult>,
}

impl ProbeReport {
    pub fn passes(&self, equation: u8) -> bool {
        self.equations
            .iter()
            .any(|r| r.equation == equation && r.passed)
    }
}

/// Evaluate (5')-(8') at order 2 for `(f_0, g_0), (f_1, g_1), (f_2, g_2)`.
/// Requires `(f_1, g_1)` in `Z^2 x Z^3` and `delta^2 (f_2, g_2) = (F, G)`.
pub fn second_order_probe(
    c: &CochainComplex,
    f1: &Cochain,
    g1: &Cochain,
    f2: &Cochain,
    g2: &Cochain,
) -> Result<ProbeReport> {
    if !in_z2z3(c, f1, g1)? {
        return Err(Error::PreconditionFailed(
            "(f1, g1) is not in Z2 x Z3".into(),
        ));
    }
    let obstruction = obstruction_pair(c, f1, g1)?;
    let image = c.apply_cochains(Level::Delta2, &[f2, g2])?;
    if image[0] != obstruction.f || image[1] != obstruction.g {
        return Err(Error::PreconditionFailed(
            "delta2(f2, g2) differs from (F, G)".into(),
        ));
    }
    let d = Deformation::new(
        c.algebra(),
        vec![f1.clone(), f2.clone()],
        vec![g1.clone(), g2.clone()],
    )?;
    let equations = [
        Axiom::CyclicBinary,
        Axiom::CyclicTernary,
        Axiom::BinaryLeibniz,
        Axiom::TernaryLeibniz,
    ]
    .iter()
    .map(|&ax| {
        let counterexample =
            check_identity(&d, ax, 2).map(|t| t.into_iter().map(|i| i + 1).collect());
        AxiomResult {
            equation: ax.number(),
            passed: counterexample.is_none(),
            counterexample,
        }
    })
    .collect();
    Ok(ProbeReport { equations })
}

/// Algebra given inline or as a path to an algebra file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Path(String),
    Inline(AlgebraFile),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderedCochain(pub usize, pub Vec<CochainEntry>);

/// Truncation order used when a deformation file does not give one.
pub const DEFAULT_ORDER: usize = 4;

fn default_order() -> usize {
    DEFAULT_ORDER
}

/// JSON form of a deformation: coefficients are listed by order `1..=N`,
/// omitted orders are zero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeformationFile {
    pub base: BaseRef,
    #[serde(default = "default_order")]
    pub order: usize,
    #[serde(default)]
    pub f: Vec<OrderedCochain>,
    #[serde(default)]
    pub g: Vec<OrderedCochain>,
}

fn place(
    field: &str,
    d: usize,
    arity: usize,
    order: usize,
    entries: &[OrderedCochain],
) -> Result<Vec<Cochain>> {
    let mut out: Vec<Option<Cochain>> = vec![None; order];
    for (pos, OrderedCochain(i, e)) in entries.iter().enumerate() {
        if *i == 0 || *i > order {
            return Err(Error::InvalidInput(format!(
                "{field}[{pos}]: order {i} out of range 1..={order}"
            )));
        }
        if out[i - 1].is_some() {
            return Err(Error::InvalidInput(format!(
                "{field}[{pos}]: order {i} given twice"
            )));
        }
        let c = Cochain::from_entries(d, arity, e)
            .map_err(|err| Error::InvalidInput(format!("{field}[{pos}]: {err}")))?;
        out[i - 1] = Some(c);
    }
    Ok(out
        .into_iter()
        .map(|c| c.unwrap_or_else(|| Cochain::zero(d, arity)))
        .collect())
}

impl DeformationFile {
    /// `resolve` loads a base given by path.
    pub fn to_deformation(&self, resolve: impl Fn(&str) -> Result<Algebra>) -> Result<Deformation> {
        let base = match &self.base {
            BaseRef::Path(p) => resolve(p)?,
            BaseRef::Inline(file) => file.to_algebra()?,
        };
        let d = base.dim();
        let f = place("f", d, 2, self.order, &self.f)?;
        let g = place("g", d, 3, self.order, &self.g)?;
        Deformation::new(&base, f, g)
    }

    /// Inline base; zero coefficients are omitted.
    pub fn from_deformation(d: &Deformation) -> Self {
        let list = |cs: &[Cochain]| {
            cs.iter()
                .enumerate()
                .skip(1)
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| OrderedCochain(i, c.to_entries()))
                .collect()
        };
        DeformationFile {
            base: BaseRef::Inline(AlgebraFile::from_algebra(d.base())),
            order: d.order(),
            f: list(&d.f),
            g: list(&d.g),
        }
    }
}

pub fn parse_deformation(
    json: &str,
    resolve: impl Fn(&str) -> Result<Algebra>,
) -> Result<Deformation> {
    let file: DeformationFile = serde_json::from_str(json)
        .map_err(|e| Error::InvalidInput(format!("deformation file: {e}")))?;
    file.to_deformation(resolve)
}

pub fn deformation_to_json(d: &Deformation) -> String {
    serde_json::to_string_pretty(&DeformationFile::from_deformation(d)).expect("serializable")
}
