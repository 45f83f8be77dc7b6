#![allow(dead_code)]

use num_traits::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use superquad_core::algebra::LieSuperalgebra;
use superquad_core::catalog::{self, Params};
use superquad_core::linalg::Matrix;
use superquad_core::quadratic::QuadraticLieSuperalgebra;
use superquad_core::scalar::{self, Scalar};
use superquad_core::sp2::Sp2Element;
use superquad_core::superexterior::{monomials_of_bidegree, Cochain};

/// Every catalog entry that carries an invariant form, at default parameters.
pub fn quadratic_catalog() -> Vec<QuadraticLieSuperalgebra> {
    catalog::list()
        .into_iter()
        .filter(|e| e.has_form)
        .map(|e| catalog::build_quadratic(e.key, &Params::new()).unwrap())
        .collect()
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    let num: i64 = rng.gen_range(-4..=4);
    let den: i64 = rng.gen_range(1..=3);
    scalar::ratio(num, den)
}

pub fn nonzero_rational(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let x = small_rational(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random cochain of bidegree `(a, b)`; `None` when that space is empty.
pub fn random_homogeneous(
    rng: &mut ChaCha8Rng,
    shape: (usize, usize),
    a: usize,
    b: usize,
) -> Option<Cochain> {
    let monos = monomials_of_bidegree(shape, a, b);
    if monos.is_empty() {
        return None;
    }
    let mut c = Cochain::zero(shape);
    for _ in 0..rng.gen_range(1..=3) {
        let m = monos[rng.gen_range(0..monos.len())].clone();
        c.add_term(m, nonzero_rational(rng));
    }
    Some(c)
}

/// A random homogeneous cochain of total degree at most `max_degree`,
/// with its bidegree `(alternating degree, symmetric degree)`.
pub fn random_cochain(
    rng: &mut ChaCha8Rng,
    shape: (usize, usize),
    max_degree: usize,
) -> (Cochain, (usize, usize)) {
    loop {
        let a = rng.gen_range(0..=max_degree.min(shape.0));
        let b = rng.gen_range(0..=max_degree - a);
        if let Some(c) = random_homogeneous(rng, shape, a, b) {
            return (c, (a, b));
        }
    }
}

/// A random invertible matrix preserving the parity split of `g`.
pub fn random_graded_invertible(rng: &mut ChaCha8Rng, g: &LieSuperalgebra) -> Matrix {
    let n = g.dim();
    let m = g.basis().even_dim();
    loop {
        let mut p = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                if (i < m) == (j < m) {
                    p[(i, j)] = small_rational(rng);
                }
            }
        }
        if p.inverse().is_some() {
            return p;
        }
    }
}

/// Structure constants in the basis `e'_i = Σ_k P[k][i] e_k`.
pub fn change_basis(g: &LieSuperalgebra, p: &Matrix) -> LieSuperalgebra {
    let n = g.dim();
    let inv = p.inverse().expect("invertible");
    let mut out = LieSuperalgebra::new(format!("{}'", g.name()), g.basis().clone());
    for i in 0..n {
        for j in i..n {
            let x = p.column(i);
            let y = p.column(j);
            let v = g.bracket(&x, &y).unwrap();
            let w = inv.mul_vec(&v).unwrap();
            let terms: Vec<(usize, Scalar)> = w.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            out.set_bracket(i, j, &terms).unwrap();
        }
    }
    out
}

pub fn random_sp2(rng: &mut ChaCha8Rng) -> Sp2Element {
    Sp2Element::new(small_rational(rng), small_rational(rng), small_rational(rng))
}

/// A random invertible rational 2x2 matrix.
pub fn random_gl2(rng: &mut ChaCha8Rng) -> Matrix {
    loop {
        let m = Matrix::from_rows(vec![
            vec![small_rational(rng), small_rational(rng)],
            vec![small_rational(rng), small_rational(rng)],
        ])
        .unwrap();
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A commuting pair: `A` random (sometimes zero or nilpotent), `B` a random
/// point of `ker(ad_A)` found by solving the linear conditions.
pub fn commuting_pair(rng: &mut ChaCha8Rng) -> (Sp2Element, Sp2Element) {
    let a = match rng.gen_range(0..6) {
        0 => Sp2Element::zero(),
        1 => Sp2Element::x().conjugate(&random_gl2(rng)).unwrap(),
        _ => random_sp2(rng),
    };
    let mut b = Sp2Element::zero();
    for v in ad_sp2(&a).nullspace() {
        let s = small_rational(rng);
        b = b.add(&Sp2Element::new(v[0].clone(), v[1].clone(), v[2].clone()).scale(&s));
    }
    if rng.gen_bool(0.5) {
        (a, b)
    } else {
        (b, a)
    }
}

/// `ad_A` on coordinates `(a, b, c)` of `sp(2)`.
pub fn ad_sp2(a: &Sp2Element) -> Matrix {
    let cols: Vec<Vec<Scalar>> = [Sp2Element::h(), Sp2Element::x(), Sp2Element::y()]
        .iter()
        .map(|e| {
            let c = a.commutator(e);
            vec![c.a, c.b, c.c]
        })
        .collect();
    Matrix::from_columns(&cols, 3).unwrap()
}
