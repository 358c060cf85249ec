mod common;

use common::{big, brute_force_cochain_dim, closed_form_dim, Echelon, Row};
use hlya_core::algebra::samples::{bundled, e0_abelian};
use hlya_core::algebra::{residual_at, Axiom};
use hlya_core::coboundary::CochainComplex;
use hlya_core::cochain::{tuples, CochainSpace};
use hlya_core::cohomology::h2h3;
use hlya_core::deformation::Deformation;
use hlya_core::Algebra;

#[test]
fn cochain_dims_match_brute_force_on_bundled_algebras() {
    for a in bundled() {
        for n in 1..=7 {
            let solver = CochainSpace::new(&a, n).unwrap().dim();
            assert_eq!(solver, brute_force_cochain_dim(&a, n), "{} n={n}", a.name());
        }
    }
}

#[test]
fn untwisted_dims_follow_the_closed_form() {
    let e0 = e0_abelian();
    let dims: Vec<usize> = (1..=3)
        .map(|n| CochainSpace::new(&e0, n).unwrap().dim())
        .collect();
    assert_eq!(dims, [4, 2, 4]);
    for a in bundled().into_iter().filter(Algebra::alpha_is_identity) {
        for n in 1..=7 {
            assert_eq!(
                CochainSpace::new(&a, n).unwrap().dim(),
                closed_form_dim(a.dim(), n),
                "{} n={n}",
                a.name()
            );
        }
    }
}

#[test]
fn brute_force_agrees_with_random_twists() {
    for a in common::random_algebras(11, 6) {
        for n in 1..=4 {
            assert_eq!(
                CochainSpace::new(&a, n).unwrap().dim(),
                brute_force_cochain_dim(&a, n),
                "{} n={n}",
                a.name()
            );
        }
    }
}

/// `dim Z^2 x Z^3` as the kernel of the first-order deformation equations,
/// evaluated through the generic identity checker instead of the coboundary
/// matrices.
fn first_order_cocycle_dim(a: &Algebra) -> usize {
    let (c2, c3) = (
        CochainSpace::new(a, 2).unwrap(),
        CochainSpace::new(a, 3).unwrap(),
    );
    let d = a.dim();
    let inputs: Vec<_> = c2
        .basis()
        .into_iter()
        .map(|f| (f, hlya_core::cochain::Cochain::zero(d, 3)))
        .chain(
            c3.basis()
                .into_iter()
                .map(|g| (hlya_core::cochain::Cochain::zero(d, 2), g)),
        )
        .collect();
    // one row per (equation, tuple, output coordinate), one column per input
    let mut columns: Vec<Vec<num_rational::BigRational>> = Vec::new();
    for (f, g) in &inputs {
        let def = Deformation::new(a, vec![f.clone()], vec![g.clone()]).unwrap();
        let mut col = Vec::new();
        for ax in [
            Axiom::CyclicBinary,
            Axiom::CyclicTernary,
            Axiom::BinaryLeibniz,
            Axiom::TernaryLeibniz,
        ] {
            for t in tuples(d, ax.arity()) {
                col.extend(residual_at(&def, ax, 1, &t).iter().map(big));
            }
        }
        columns.push(col);
    }
    let rows = columns.first().map_or(0, Vec::len);
    let mut e = Echelon::default();
    for r in 0..rows {
        let row: Row = columns
            .iter()
            .enumerate()
            .map(|(j, col)| (j, col[r].clone()))
            .collect();
        e.insert(row);
    }
    inputs.len() - e.rank()
}

#[test]
fn cocycle_dims_match_first_order_equations() {
    for a in bundled() {
        let c = CochainComplex::new(&a).unwrap();
        assert_eq!(
            h2h3(&c).unwrap().z.dim(),
            first_order_cocycle_dim(&a),
            "{}",
            a.name()
        );
    }
}
