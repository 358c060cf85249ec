//! Bundled example algebras and a seeded generator of verified random ones.
//!
//! E0 abelian (d = 2), E1 the affine algebra aff(1) with `{xyz} = [[x,y],z]`,
//! E2 sl2 with the same ternary product, E3 the Heisenberg algebra twisted
//! by `alpha = diag(1, 2, 2)` with zero ternary product.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Algebra;
use crate::exactlin::{Matrix, Rational};

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn e0_abelian() -> Algebra {
    Algebra::builder("E0 abelian", 2)
        .build()
        .expect("abelian algebra")
}

fn aff1_bracket() -> Vec<Rational> {
    Algebra::builder("aff(1)", 2)
        .bracket_int(0, 1, &[1, 0])
        .build_unchecked()
        .expect("aff(1) bracket")
        .binary_tensor()
        .to_vec()
}

fn sl2_bracket() -> Vec<Rational> {
    // basis h, e, f
    Algebra::builder("sl2", 3)
        .bracket_int(0, 1, &[0, 2, 0])
        .bracket_int(0, 2, &[0, 0, -2])
        .bracket_int(1, 2, &[1, 0, 0])
        .build_unchecked()
        .expect("sl2 bracket")
        .binary_tensor()
        .to_vec()
}

fn heisenberg_bracket() -> Vec<Rational> {
    Algebra::builder("heisenberg", 3)
        .bracket_int(0, 1, &[0, 0, 1])
        .build_unchecked()
        .expect("heisenberg bracket")
        .binary_tensor()
        .to_vec()
}

pub fn e1_aff1() -> Algebra {
    Algebra::from_lya_standard("E1 aff(1)", 2, aff1_bracket()).expect("aff(1) is Lie")
}

pub fn e2_sl2() -> Algebra {
    Algebra::from_lya_standard("E2 sl2", 3, sl2_bracket()).expect("sl2 is Lie")
}

pub fn e3_heisenberg() -> Algebra {
    Algebra::from_lie_algebra(
        "E3 Heisenberg",
        3,
        heisenberg_bracket(),
        Matrix::diagonal(&[q(1), q(2), q(2)]),
    )
    .expect("twisted Heisenberg is Hom-Lie")
}

/// E0, E1, E2, E3 in order.
pub fn bundled() -> Vec<Algebra> {
    vec![e0_abelian(), e1_aff1(), e2_sl2(), e3_heisenberg()]
}

/// How a Lie bracket is turned into binary/ternary products.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flavor {
    /// `[,]` and `{xyz} = [[x,y],z]`
    Standard,
    /// `[,]` and zero ternary product
    HomLie,
    /// zero binary product and `{xyz} = [[x,y],z]`
    TripleSystem,
}

fn flavored(name: &str, d: usize, bracket: Vec<Rational>, flavor: Flavor) -> Algebra {
    let standard = Algebra::from_lya_standard(name, d, bracket).expect("input bracket is Lie");
    match flavor {
        Flavor::Standard => standard,
        Flavor::HomLie => Algebra::new(
            name,
            d,
            standard.binary_tensor().to_vec(),
            vec![Rational::zero(); d.pow(4)],
            Matrix::identity(d),
        )
        .expect("tensor shapes"),
        Flavor::TripleSystem => Algebra::new(
            name,
            d,
            vec![Rational::zero(); d.pow(3)],
            standard.ternary_tensor().to_vec(),
            Matrix::identity(d),
        )
        .expect("tensor shapes"),
    }
}

fn small_nonzero<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    let num = *[-3i64, -2, -1, 1, 2, 3].choose(rng).unwrap();
    let den = rng.gen_range(1..=2);
    Rational::new(num, den)
}

fn small<R: Rng + ?Sized>(rng: &mut R) -> Rational {
    Rational::from_integer(rng.gen_range(-2..=2))
}

fn permutation_matrix(perm: &[usize]) -> Matrix {
    let d = perm.len();
    Matrix::from_fn(d, d, |r, c| if perm[c] == r { q(1) } else { q(0) })
}

/// A random algebra of dimension at most 3 that passes the axiom checker.
///
/// Draws from twists of aff(1), sl2, semidirect products `R^2 x| R` and the
/// Heisenberg algebra, each in one of the three flavors, plus abelian
/// algebras with a random twist map; the basis is then shuffled. Twist maps
/// mostly have eigenvalues `1` and `-1` so that the twisted cochain spaces
/// stay large; a generic twist is drawn one time in four.
pub fn random_algebra<R: Rng + ?Sized>(rng: &mut R) -> Algebra {
    let flavor = *[Flavor::Standard, Flavor::HomLie, Flavor::TripleSystem]
        .choose(rng)
        .unwrap();
    let generic = rng.gen_bool(0.25);
    let sign = |rng: &mut R| if rng.gen_bool(0.5) { q(1) } else { q(-1) };
    let unit_or_any = |rng: &mut R| {
        if generic {
            small_nonzero(rng)
        } else {
            sign(rng)
        }
    };
    let family = rng.gen_range(0..5);
    let (base, beta) = match family {
        0 => {
            let base = flavored("aff(1)", 2, aff1_bracket(), flavor);
            let (a, b) = (unit_or_any(rng), small(rng));
            let beta = Matrix::from_rows(vec![vec![a, b], vec![q(0), q(1)]]).unwrap();
            (base, beta)
        }
        1 => {
            let base = flavored("sl2", 3, sl2_bracket(), flavor);
            let beta = if !generic && rng.gen_bool(0.5) {
                // Weyl element: h -> -h, e <-> f
                Matrix::from_integer_rows(&[&[-1, 0, 0], &[0, 0, 1], &[0, 1, 0]])
            } else {
                let l = unit_or_any(rng);
                Matrix::diagonal(&[q(1), l.clone(), l.recip()])
            };
            (base, beta)
        }
        2 => {
            let m: Vec<Rational> = (0..4).map(|_| small(rng)).collect();
            let mut b = Algebra::builder("semidirect", 3);
            // [e3, e1] = M e1, [e3, e2] = M e2 with M acting on span(e1, e2)
            b = b.bracket(2, 0, &[m[0].clone(), m[2].clone(), q(0)]);
            b = b.bracket(2, 1, &[m[1].clone(), m[3].clone(), q(0)]);
            let bracket = b.build_unchecked().unwrap().binary_tensor().to_vec();
            let base = flavored("semidirect", 3, bracket, flavor);
            let s = unit_or_any(rng);
            let u = if generic { small(rng) } else { q(0) };
            let beta = Matrix::from_rows(vec![
                vec![&s + &(&u * &m[0]), &u * &m[1], q(0)],
                vec![&u * &m[2], &s + &(&u * &m[3]), q(0)],
                vec![q(0), q(0), q(1)],
            ])
            .unwrap();
            (base, beta)
        }
        3 => {
            let base = flavored("heisenberg", 3, heisenberg_bracket(), Flavor::HomLie);
            let (a, dd) = (unit_or_any(rng), unit_or_any(rng));
            let (b, c) = if generic || rng.gen_bool(0.5) {
                (small(rng), if generic { small(rng) } else { q(0) })
            } else {
                (q(0), small(rng))
            };
            let det = &(&a * &dd) - &(&b * &c);
            let beta = Matrix::from_rows(vec![
                vec![a, c, q(0)],
                vec![b, dd, q(0)],
                vec![small(rng), small(rng), det],
            ])
            .unwrap();
            (base, beta)
        }
        _ => {
            let base = Algebra::builder("abelian", 2).build().unwrap();
            let beta = if generic {
                Matrix::from_fn(2, 2, |_, _| small(rng))
            } else {
                let (s1, s2) = (sign(rng), sign(rng));
                Matrix::from_rows(vec![vec![s1, small(rng)], vec![q(0), s2]]).unwrap()
            };
            (base, beta)
        }
    };
    let twisted = base
        .yau_twist(&beta)
        .expect("twist by an endomorphism of a Lie-Yamaguti algebra is valid");
    let mut perm: Vec<usize> = (0..twisted.dim()).collect();
    perm.shuffle(rng);
    let out = twisted
        .change_basis(&permutation_matrix(&perm))
        .expect("permutation is invertible");
    let label = match family {
        3 => format!("{} {:?}", base.name(), Flavor::HomLie),
        4 => base.name().to_string(),
        _ => format!("{} {:?}", base.name(), flavor),
    };
    let name = format!("random {label} beta={:?}", beta_entries(&beta));
    out.verified()
        .expect("basis change preserves the axioms")
        .with_name(name)
}

fn beta_entries(m: &Matrix) -> Vec<String> {
    m.entries().iter().map(ToString::to_string).collect()
}
