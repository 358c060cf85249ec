//! Acceptance run: one line per criterion, `PASS` or `FAIL`, with counts.
//!
//! A criterion that is known not to hold is printed as `FAIL (expected)`
//! together with the counterexample it is checked against; the run only
//! fails if a criterion fails in any other way.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{
    cochain_constraints, random_cocycle, random_gauge, random_in, scaling_deformation,
    small_rational, violated,
};
use hlya_core::algebra::samples::bundled;
use hlya_core::coboundary::{
    d2_i, d2_ii, delta1_i, delta1_ii, delta2_i, delta2_ii, delta3_i, delta3_ii, CochainComplex,
    Level,
};
use hlya_core::cochain::{tuples, Cochain};
use hlya_core::cohomology::{h1, h2h3, in_z2z3, is_coboundary_2, pair_from_coordinates};
use hlya_core::deformation::{
    apply_gauge, infinitesimal, obstruction_pair, second_order_candidate, second_order_probe,
    trivialize, verify_deformation, verify_equivalence, verify_through, Deformation,
    Trivialization,
};
use hlya_core::derivations::{check_der_is_lie, derivation_space};
use hlya_core::{Algebra, Error, Rational, Vector};

/// Seed of the random algebras; this stream includes a twisted Heisenberg
/// algebra on which (5') fails at order 2.
const ALGEBRA_SEED: u64 = 3;
const RANDOM_ALGEBRAS: usize = 24;

struct Outcome {
    pass: bool,
    /// Set when the failure is the documented one and has been reproduced.
    expected: bool,
    detail: String,
}

impl Outcome {
    fn check(pass: bool, detail: String) -> Self {
        Outcome {
            pass,
            expected: false,
            detail,
        }
    }
}

type Criterion = fn(&Ctx) -> Outcome;

struct Ctx {
    complexes: Vec<CochainComplex>,
}

impl Ctx {
    fn bundled(&self) -> &[CochainComplex] {
        &self.complexes[..4]
    }

    fn random(&self) -> &[CochainComplex] {
        &self.complexes[4..]
    }
}

fn c1_composition(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    for c in &ctx.complexes {
        let d1 = &c.delta1().unwrap().matrix;
        let d2 = &c.delta2().unwrap().matrix;
        let dd2 = &c.d2().unwrap().matrix;
        let d3 = &c.delta3().unwrap().matrix;
        for (name, p) in [
            ("δ²∘δ¹", d2.mul(d1)),
            ("d²∘δ¹", dd2.mul(d1)),
            ("δ³∘δ²", d3.mul(d2)),
        ] {
            if !p.is_zero() {
                bad.push(format!("{name} on {}", c.algebra().name()));
            }
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{} algebras (4 bundled, {} random), {} products exactly zero{}",
            ctx.complexes.len(),
            ctx.random().len(),
            3 * ctx.complexes.len() - bad.len(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("; nonzero: {}", bad.join(", "))
            }
        ),
    )
}

fn tabulate(d: usize, n: usize, f: &dyn Fn(&[&[Rational]]) -> Vector) -> Cochain {
    let units: Vec<Vector> = (0..d).map(|i| Vector::unit(d, i)).collect();
    let mut coords = Vec::with_capacity(d.pow(n as u32 + 1));
    for t in tuples(d, n) {
        let args: Vec<&[Rational]> = t.iter().map(|&i| &units[i][..]).collect();
        coords.extend(f(&args).into_inner());
    }
    Cochain::from_coords(d, n, coords).unwrap()
}

/// Basis inputs of a two-block domain: `(b, 0)` then `(0, b)`.
fn pair_inputs(c: &CochainComplex, n: usize) -> Vec<(Cochain, Cochain)> {
    let d = c.algebra().dim();
    let first = c
        .space(n)
        .unwrap()
        .basis()
        .into_iter()
        .map(|f| (f, Cochain::zero(d, n + 1)));
    let second = c
        .space(n + 1)
        .unwrap()
        .basis()
        .into_iter()
        .map(|g| (Cochain::zero(d, n), g));
    first.chain(second).collect()
}

fn c2_well_defined(ctx: &Ctx) -> Outcome {
    let mut inputs = 0;
    let mut delta_bad = Vec::new();
    // d^2_II images that are not alternating in (3,4), per algebra
    let (mut d2_outside, mut d2_inputs, mut d2_algebras) = (0, 0, 0);
    let mut d2_first_pair_bad = 0;
    let mut e2 = (0, 0);
    for (idx, c) in ctx.complexes.iter().enumerate() {
        let a = c.algebra();
        let d = a.dim();
        let rows: Vec<_> = (0..=7).map(|n| cochain_constraints(a, n, n / 2)).collect();
        let mut record = |what: &str, f: &Cochain| {
            if violated(&rows[f.arity()], f) > 0 {
                delta_bad.push(format!("{what} on {}", a.name()));
            }
        };
        for h in c.space(1).unwrap().basis() {
            let s = h.sparse();
            record("δ¹_I", &tabulate(d, 2, &|x| delta1_i(a, &s, x)));
            record("δ¹_II", &tabulate(d, 3, &|x| delta1_ii(a, &s, x)));
            inputs += 1;
        }
        for (f, g) in pair_inputs(c, 2) {
            let (sf, sg) = (f.sparse(), g.sparse());
            record("δ²_I", &tabulate(d, 4, &|x| delta2_i(a, &sf, &sg, x)));
            record("δ²_II", &tabulate(d, 5, &|x| delta2_ii(a, &sg, x)));
            record("d²_I", &tabulate(d, 3, &|x| d2_i(a, &sf, &sg, x)));
            inputs += 2;
        }
        for (f, g) in pair_inputs(c, 4) {
            let (sf, sg) = (f.sparse(), g.sparse());
            record("δ³_I", &tabulate(d, 6, &|x| delta3_i(a, &sf, &sg, x)));
            record("δ³_II", &tabulate(d, 7, &|x| delta3_ii(a, &sg, x)));
            inputs += 1;
        }
        let first_pair = cochain_constraints(a, 4, 1);
        let mut outside_here = 0;
        let pairs = pair_inputs(c, 2);
        for (f, g) in &pairs {
            let (sf, sg) = (f.sparse(), g.sparse());
            let img = tabulate(d, 4, &|x| d2_ii(a, &sf, &sg, x));
            d2_first_pair_bad += usize::from(violated(&first_pair, &img) > 0);
            outside_here += usize::from(violated(&rows[4], &img) > 0);
        }
        d2_inputs += pairs.len();
        d2_outside += outside_here;
        d2_algebras += usize::from(outside_here > 0);
        if idx == 2 {
            e2 = (outside_here, pairs.len());
        }
    }
    let delta_ok = delta_bad.is_empty() && d2_first_pair_bad == 0;
    let detail = format!(
        "δ¹ δ² δ³ d²_I: {} violations over {} (operator, basis input) pairs on {} algebras; \
         d²_II leaves HomC⁴ (not alternating in slots 3,4) on {}/{} inputs across {} algebras, \
         E2 sl2: {}/{}; d²_II images alternating in slots 1,2 and α-equivariant: {}",
        delta_bad.len(),
        inputs,
        ctx.complexes.len(),
        d2_outside,
        d2_inputs,
        d2_algebras,
        e2.0,
        e2.1,
        if d2_first_pair_bad == 0 { "all" } else { "NO" }
    );
    Outcome {
        pass: delta_ok && d2_outside == 0,
        expected: delta_ok && e2.0 > 0,
        detail: if delta_bad.is_empty() {
            detail
        } else {
            format!("{detail}; {}", delta_bad.join(", "))
        },
    }
}

fn c3_h1_is_der0(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let mut dims = Vec::new();
    for c in &ctx.complexes {
        let (z1, der) = (h1(c).unwrap().dim(), derivation_space(c.algebra(), 0).dim());
        dims.push(z1);
        if z1 != der {
            bad.push(format!("{}: {z1} vs {der}", c.algebra().name()));
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "dim H¹ = dim Der_α⁰ on {} algebras (bundled dims {:?}){}",
            ctx.complexes.len(),
            &dims[..4],
            if bad.is_empty() {
                String::new()
            } else {
                format!("; mismatches: {}", bad.join(", "))
            }
        ),
    )
}

fn c4_der_closure(ctx: &Ctx) -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for c in &ctx.complexes {
        match check_der_is_lie(c.algebra(), 3) {
            Ok(r) => checked += r.brackets_checked,
            Err(e) => bad.push(format!("{}: {e}", c.algebra().name())),
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{checked} basis-pair commutators with k + s <= 3 on {} algebras lie in Der_α^(k+s){}",
            ctx.complexes.len(),
            if bad.is_empty() {
                String::new()
            } else {
                format!("; {}", bad.join(", "))
            }
        ),
    )
}

fn c5_infinitesimal(ctx: &Ctx) -> Outcome {
    let mut rng = common::rng(5);
    let (mut draws, mut passing, mut bad) = (0, 0, Vec::new());
    let n = ctx.complexes.len();
    for i in 0..150 {
        let c = &ctx.complexes[i % n];
        let a = c.algebra();
        let def = match i % 3 {
            0 => {
                let (f, g) = random_cocycle(c, &mut rng);
                Deformation::new(a, vec![f], vec![g]).unwrap()
            }
            1 => {
                let (s2, s3) = (c.space(2).unwrap(), c.space(3).unwrap());
                let f = s2.from_coordinates(&common::random_vector(&mut rng, s2.dim()));
                let g = s3.from_coordinates(&common::random_vector(&mut rng, s3.dim()));
                Deformation::new(a, vec![f], vec![g]).unwrap()
            }
            _ => {
                let lambda: Vec<Rational> = (0..3).map(|_| small_rational(&mut rng)).collect();
                apply_gauge(
                    &scaling_deformation(a, &lambda),
                    &random_gauge(c, 3, &mut rng),
                )
                .unwrap()
            }
        };
        draws += 1;
        let passes = verify_through(&def, 1).passes_through(1);
        let cocycle = in_z2z3(c, def.f(1), def.g(1)).unwrap();
        match infinitesimal(c, &def) {
            Ok((f1, g1)) if passes && cocycle && in_z2z3(c, &f1, &g1).unwrap() => passing += 1,
            Err(Error::PreconditionFailed(_)) if !passes && !cocycle => {}
            other => bad.push(format!(
                "{} draw {i}: n=1 {passes}, cocycle {cocycle}, infinitesimal {:?}",
                a.name(),
                other.map(|_| ())
            )),
        }
    }
    // converse: every Z basis element is first-order deformation data
    let mut basis_elements = 0;
    for c in &ctx.complexes {
        for v in h2h3(c).unwrap().z.basis_vectors() {
            let (f, g) = pair_from_coordinates(c, 2, &v).unwrap();
            let def = Deformation::new(c.algebra(), vec![f], vec![g]).unwrap();
            basis_elements += 1;
            if !verify_through(&def, 1).passes_through(1) {
                bad.push(format!(
                    "Z basis element of {} fails n=1",
                    c.algebra().name()
                ));
            }
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{draws} draws, {passing} pass n=1 and all of those have infinitesimal in Z²×Z³, \
             the rest fail n=1 exactly when not cocycles; {basis_elements} Z basis elements all pass n=1{}",
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn c6_equivalence(ctx: &Ctx) -> Outcome {
    let mut rng = common::rng(6);
    let mut bad = Vec::new();
    let (mut pairs, mut nonzero) = (0, 0);
    let n = ctx.complexes.len();
    for i in 0..60 {
        let c = &ctx.complexes[i % n];
        let a = c.algebra();
        let (def, order) = if i % 2 == 0 {
            let lambda: Vec<Rational> = (0..3).map(|_| small_rational(&mut rng)).collect();
            (scaling_deformation(a, &lambda), 3)
        } else {
            let (f, g) = random_cocycle(c, &mut rng);
            (Deformation::new(a, vec![f], vec![g]).unwrap(), 1)
        };
        let p = random_gauge(c, order, &mut rng);
        let moved = apply_gauge(&def, &p).unwrap();
        pairs += 1;
        let ok = (|| -> hlya_core::Result<bool> {
            if !verify_deformation(&moved).all_pass() || !verify_equivalence(&def, &moved, &p)? {
                return Ok(false);
            }
            let (f1, g1) = infinitesimal(c, &def)?;
            let (f1m, g1m) = infinitesimal(c, &moved)?;
            let (df, dg) = (f1m.sub(&f1), g1m.sub(&g1));
            nonzero += usize::from(!(df.is_zero() && dg.is_zero()));
            let Some(w) = is_coboundary_2(c, &df, &dg)? else {
                return Ok(false);
            };
            Ok(c.apply_cochains(Level::Delta1, &[&w])? == [df, dg])
        })();
        if !matches!(ok, Ok(true)) {
            bad.push(format!("{} pair {i}: {ok:?}", a.name()));
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{pairs} (deformation, gauge) pairs, {nonzero} with nonzero infinitesimal difference; \
             every difference has a coboundary witness{}",
            if bad.is_empty() {
                String::new()
            } else {
                format!("; {}", bad.join("; "))
            }
        ),
    )
}

fn c7_rigidity(ctx: &Ctx) -> Outcome {
    const ORDER: usize = 4;
    let mut rng = common::rng(7);
    let mut bad = Vec::new();
    let mut slowest = 0.0f64;
    let mut count = 0;
    for c in ctx.bundled().iter().chain(&ctx.random()[..8]) {
        let a = c.algebra();
        let start = Instant::now();
        for _ in 0..2 {
            let null = Deformation::null(a, ORDER);
            let d = apply_gauge(&null, &random_gauge(c, ORDER, &mut rng)).unwrap();
            count += 1;
            match trivialize(c, &d) {
                Ok(Trivialization::Trivial(q)) => {
                    if !(apply_gauge(&d, &q).unwrap().is_null()
                        && verify_equivalence(&d, &null, &q).unwrap())
                    {
                        bad.push(format!("{}: recovered gauge does not reach null", a.name()));
                    }
                }
                other => bad.push(format!("{}: {other:?}", a.name())),
            }
        }
        slowest = slowest.max(start.elapsed().as_secs_f64());
    }
    Outcome::check(
        bad.is_empty() && slowest < 120.0,
        format!(
            "{count} gauged null deformations of order {ORDER} on {} algebras trivialized back to null, \
             recovered gauges verify equivalence; slowest algebra {slowest:.2} s{}",
            ctx.bundled().len() + 8,
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join("; ")) }
        ),
    )
}

fn c8_obstruction(ctx: &Ctx) -> Outcome {
    let mut rng = common::rng(8);
    let (mut draws, mut nonzero, mut bad) = (0, 0, Vec::new());
    let mut random_draws = 0;
    for c in ctx.bundled() {
        for _ in 0..30 {
            let (f1, g1) = random_cocycle(c, &mut rng);
            let ob = obstruction_pair(c, &f1, &g1).unwrap();
            draws += 1;
            nonzero += usize::from(!(ob.f.is_zero() && ob.g.is_zero()));
            if !ob.in_z4z5 {
                bad.push(c.algebra().name().to_string());
            }
        }
    }
    for c in ctx.random() {
        let (f1, g1) = random_cocycle(c, &mut rng);
        random_draws += 1;
        if !obstruction_pair(c, &f1, &g1).unwrap().in_z4z5 {
            bad.push(c.algebra().name().to_string());
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{draws} random cocycles on the bundled algebras ({nonzero} with (F,G) ≠ 0) plus {random_draws} \
             on random algebras: (F,G) ∈ Z⁴×Z⁵ every time{}",
            if bad.is_empty() { String::new() } else { format!("; failed on {}", bad.join(", ")) }
        ),
    )
}

fn c9_probe(ctx: &Ctx) -> Outcome {
    let mut rng = common::rng(9);
    let (mut probes, mut unsolvable) = (0, 0);
    let (mut fail5, mut fail6) = (0, 0);
    let mut examples: Vec<String> = Vec::new();
    let mut bad = Vec::new();
    for c in &ctx.complexes {
        let z = h2h3(c).unwrap().z;
        let mut inputs: Vec<Vec<Rational>> = z
            .basis_vectors()
            .into_iter()
            .map(Vector::into_inner)
            .collect();
        for _ in 0..3 {
            inputs.push(random_in(&z.basis_vectors(), z.ambient_dim(), &mut rng));
        }
        for v in inputs {
            let (f1, g1) = pair_from_coordinates(c, 2, &v).unwrap();
            let ob = obstruction_pair(c, &f1, &g1).unwrap();
            let Some((f2, g2)) = second_order_candidate(c, &ob).unwrap() else {
                unsolvable += 1;
                continue;
            };
            let report = second_order_probe(c, &f1, &g1, &f2, &g2).unwrap();
            probes += 1;
            if !(report.passes(7) && report.passes(8)) {
                bad.push(format!("{}: {:?}", c.algebra().name(), report.equations));
            }
            for (eq, counter) in [(5u8, &mut fail5), (6, &mut fail6)] {
                if !report.passes(eq) {
                    *counter += 1;
                    if examples.len() < 2 {
                        let tuple = report
                            .equations
                            .iter()
                            .find(|r| r.equation == eq)
                            .unwrap()
                            .counterexample
                            .clone();
                        examples.push(format!(
                            "({eq}′) on {} at {:?}",
                            c.algebra().name(),
                            tuple.unwrap_or_default()
                        ));
                    }
                }
            }
        }
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{probes} probes (plus {unsolvable} cocycles whose (F,G) is no δ²-image): (7′)(8′) at n=2 pass in all; \
             reported, not asserted: (5′) fails in {fail5}, (6′) fails in {fail6}{}{}",
            if examples.is_empty() { String::new() } else { format!(", e.g. {}", examples.join(", ")) },
            if bad.is_empty() { String::new() } else { format!("; (7′)/(8′) failures: {}", bad.join("; ")) }
        ),
    )
}

fn c10_oracle(ctx: &Ctx) -> Outcome {
    let mut bad = Vec::new();
    let mut compared = 0;
    for c in ctx.bundled() {
        let a = c.algebra();
        for n in 1..=7 {
            let solver = c.space(n).unwrap().dim();
            let oracle = common::brute_force_cochain_dim(a, n);
            compared += 1;
            if solver != oracle {
                bad.push(format!("{} n={n}: {solver} vs {oracle}", a.name()));
            }
            if a.alpha_is_identity() && solver != common::closed_form_dim(a.dim(), n) {
                bad.push(format!("{} n={n}: closed form", a.name()));
            }
        }
    }
    let e0: Vec<usize> = (1..=3)
        .map(|n| ctx.complexes[0].space(n).unwrap().dim())
        .collect();
    if e0 != [4, 2, 4] {
        bad.push(format!("E0 dims {e0:?}"));
    }
    Outcome::check(
        bad.is_empty(),
        format!(
            "{compared} cochain-space dimensions (n = 1..7, bundled) equal the brute-force reduction; \
             closed form holds for α = id; E0 C¹,C²,C³ = {e0:?}{}",
            if bad.is_empty() { String::new() } else { format!("; {}", bad.join(", ")) }
        ),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let algebras: Vec<Algebra> = bundled()
        .into_iter()
        .chain(common::random_algebras(ALGEBRA_SEED, RANDOM_ALGEBRAS))
        .collect();
    let ctx = Ctx {
        complexes: algebras
            .iter()
            .map(|a| CochainComplex::new(a).unwrap())
            .collect(),
    };
    let criteria: [(&str, Criterion); 10] = [
        ("composition identities", c1_composition),
        ("coboundaries well defined", c2_well_defined),
        ("H¹ = α⁰-derivations", c3_h1_is_der0),
        ("Der(L) closed under the bracket", c4_der_closure),
        ("infinitesimal is a cocycle", c5_infinitesimal),
        (
            "equivalent deformations, cohomologous infinitesimals",
            c6_equivalence,
        ),
        ("rigidity round trip", c7_rigidity),
        ("obstruction pair is a cocycle", c8_obstruction),
        ("second-order probe", c9_probe),
        ("oracle cochain dimensions", c10_oracle),
    ];
    let mut unexpected = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run(&ctx);
        let verdict = match (o.pass, o.expected) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => {
                unexpected += 1;
                "FAIL"
            }
        };
        println!(
            "criterion {:>2} {verdict}: {name} [{:.1} s] {}",
            i + 1,
            t.elapsed().as_secs_f64(),
            o.detail
        );
    }
    println!(
        "acceptance finished in {:.1} s",
        start.elapsed().as_secs_f64()
    );
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
