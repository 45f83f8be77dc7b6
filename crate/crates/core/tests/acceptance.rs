//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line; all
//! comparisons are exact.

mod common;

use std::io::Write;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use superquad_core::algebra::{GradedBasis, LieSuperalgebra, Parity};
use superquad_core::catalog::{self, Params};
use superquad_core::cohomology::{cohomology, differential_matrix, CohomologySpaces, DEFAULT_SIZE_LIMIT};
use superquad_core::extensions::{double_extension, skew_superderivation_space, ExtensionDatum, Superderivation};
use superquad_core::quadratic::{BilinearForm, QuadraticLieSuperalgebra};
use superquad_core::scalar::{int, ratio, Scalar};
use superquad_core::sp2::{check_commuting_dependence, check_eigenvector_relation, Dependence, Sp2Element};
use superquad_core::superexterior::{
    differential_direct, differential_via_poisson, monomials_of_degree, Cochain, PoissonStructure,
};

use common::*;

type Outcome = Result<String, String>;

fn quad(key: &str) -> QuadraticLieSuperalgebra {
    catalog::build_quadratic(key, &Params::new()).unwrap()
}

fn params(pairs: &[(&str, Scalar)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn criterion_1_betti() -> Outcome {
    let mut got = Vec::new();
    for (key, expect) in [("g_4_1_s", 2), ("g_4_2_s", 0), ("g_6_s", 6)] {
        let b = cohomology(&quad(key).algebra, 2).map_err(|e| e.to_string())?.betti;
        got.push(format!("b2({key}) = {b}"));
        if b != expect {
            return Err(format!("{} (expected {expect})", got.join(", ")));
        }
    }
    Ok(got.join(", "))
}

fn criterion_2_spans() -> Outcome {
    let mut got = Vec::new();
    for (key, im, ker) in [("g_4_1_s", 2, 4), ("g_4_2_s", 3, 3), ("g_6_s", 3, 9)] {
        let r = cohomology(&quad(key).algebra, 2).map_err(|e| e.to_string())?;
        got.push(format!("{key}: {}/{}", r.dim_coboundaries, r.dim_cocycles));
        if (r.dim_coboundaries, r.dim_cocycles) != (im, ker) {
            return Err(format!("{} (expected {im}/{ker} for {key})", got.join(", ")));
        }
    }
    Ok(format!("dim Im d1 / dim Ker d2: {}", got.join(", ")))
}

fn criterion_3_representatives() -> Outcome {
    let listed: [(&str, &[&str]); 2] = [
        ("g_4_1_s", &["Y0* ⊗ X1*", "X1*Y1* - 2 X0*∧Y0*"]),
        (
            "g_6_s",
            &[
                "Y0* ⊗ X1*",
                "Y0* ⊗ Y1*",
                "(Z1*)^2",
                "(T1*)^2",
                "X1*Z1* - X0*∧Y0*",
                "Y1*T1* - X0*∧Y0*",
            ],
        ),
    ];
    let mut checked = 0;
    for (key, reps) in listed {
        let q = quad(key);
        let s = CohomologySpaces::compute(&q.algebra, 2, DEFAULT_SIZE_LIMIT).map_err(|e| e.to_string())?;
        let mut cs = Vec::new();
        for r in reps {
            let c = Cochain::parse_labelled(q.algebra.basis(), r).map_err(|e| e.to_string())?;
            if !s.is_nonzero_class(&c).map_err(|e| e.to_string())? {
                return Err(format!("{key}: [{r}] is not a non-zero class"));
            }
            cs.push(c);
            checked += 1;
        }
        let rank = s.class_rank(&cs).map_err(|e| e.to_string())?;
        if rank != reps.len() {
            return Err(format!("{key}: listed classes span only {rank} dimensions"));
        }
    }
    Ok(format!("{checked} listed classes are independent non-zero classes"))
}

fn heisenberg_formula(n: i64, m: i64) -> i64 {
    2 * n * n - n + 2 * n * m + (m * m + m) / 2 - 1
}

fn criterion_4_heisenberg() -> Outcome {
    let mut got = Vec::new();
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let b = cohomology(&catalog::heisenberg(n, m), 2).map_err(|e| e.to_string())?.betti as i64;
        let f = heisenberg_formula(n as i64, m as i64);
        got.push(format!("({n},{m}): {b}"));
        if b != f {
            return Err(format!("{} (formula gives {f} at ({n},{m}))", got.join(", ")));
        }
    }
    Ok(format!("b2 = formula at {}", got.join(", ")))
}

/// The displayed table for g_4_1_s, with `I = Y0* ⊗ (Y1*)^2` as displayed.
const G41_TABLE: [(&str, &str); 12] = [
    ("X0*", "(Y1*)^2"),
    ("Y0*", "0"),
    ("X1*", "2 Y0* ⊗ Y1*"),
    ("Y1*", "0"),
    ("X0*∧Y0*", "Y0* ⊗ (Y1*)^2"),
    ("X0* ⊗ X1*", "X1*(Y1*)^2 + 2 X0*∧Y0* ⊗ Y1*"),
    ("X0* ⊗ Y1*", "-(Y1*)^3"),
    ("Y0* ⊗ X1*", "0"),
    ("Y0* ⊗ Y1*", "0"),
    ("(X1*)^2", "4 Y0* ⊗ X1*Y1*"),
    ("(Y1*)^2", "0"),
    ("X1*Y1*", "2 Y0* ⊗ (Y1*)^2"),
];

fn criterion_5_poisson_table() -> Outcome {
    let q = quad("g_4_1_s");
    let basis = q.algebra.basis();
    let parse = |t: &str| -> Result<Cochain, String> {
        if t == "0" {
            Ok(Cochain::zero(basis.shape()))
        } else {
            Cochain::parse_labelled(basis, t).map_err(|e| e.to_string())
        }
    };
    let p = PoissonStructure::from_quadratic(&q).map_err(|e| e.to_string())?;
    let i = parse("Y0* ⊗ (Y1*)^2")?;
    let mut mismatches = Vec::new();
    for (arg, expect) in G41_TABLE {
        let got = p.bracket(&i, &parse(arg)?).map_err(|e| e.to_string())?;
        if got != parse(expect)? {
            mismatches.push(format!("{{I, {arg}}} = {} (displayed {expect})", got.display(basis)));
        }
    }
    let matched = G41_TABLE.len() - mismatches.len();
    if mismatches.is_empty() {
        Ok(format!("{matched}/{} displayed values reproduced", G41_TABLE.len()))
    } else {
        Err(format!(
            "{matched}/{} displayed values reproduced; {}",
            G41_TABLE.len(),
            mismatches.join("; ")
        ))
    }
}

fn criterion_6_dual_differential() -> Outcome {
    let mut monomials = 0;
    let mut algebras = 0;
    for e in catalog::list() {
        let built = catalog::build(e.key, &Params::new()).map_err(|e| e.to_string())?;
        let g = built.algebra();
        for k in 0..=2 {
            let d0 = differential_matrix(g, k).map_err(|e| e.to_string())?.matrix;
            let d1 = differential_matrix(g, k + 1).map_err(|e| e.to_string())?.matrix;
            if !d1.mul(&d0).map_err(|e| e.to_string())?.is_zero() {
                return Err(format!("{}: d{} d{k} != 0", e.key, k + 1));
            }
        }
        if let Some(q) = built.quadratic() {
            for k in 0..=3 {
                for m in monomials_of_degree(g.basis().shape(), k) {
                    let a = Cochain::monomial(g.basis().shape(), m, Scalar::one());
                    let direct = differential_direct(g, &a).map_err(|e| e.to_string())?;
                    let via = differential_via_poisson(q, &a).map_err(|e| e.to_string())?;
                    if direct != via {
                        return Err(format!(
                            "{}: d({}) = {} but -{{I, .}} gives {}",
                            e.key,
                            a.display(g.basis()),
                            direct.display(g.basis()),
                            via.display(g.basis())
                        ));
                    }
                    monomials += 1;
                }
            }
        }
        algebras += 1;
    }
    Ok(format!(
        "d o d = 0 for {algebras} algebras; d = -{{I, .}} on {monomials} monomials"
    ))
}

/// `(-1)^{aa' + bb'}` where `a` is the total degree and `b` the parity, for
/// cochains given by (alternating degree, symmetric degree).
fn sign(x: (usize, usize), y: (usize, usize)) -> Scalar {
    let (a, b) = (x.0 + x.1, x.1);
    let (a2, b2) = (y.0 + y.1, y.1);
    if (a * a2 + b * b2) % 2 == 1 {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

fn criterion_7_graded_lie() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut triples = 0;
    let algebras = quadratic_catalog();
    for q in &algebras {
        let p = PoissonStructure::from_quadratic(q).map_err(|e| e.to_string())?;
        let shape = q.algebra.basis().shape();
        let br = |x: &Cochain, y: &Cochain| p.bracket(x, y).unwrap();
        for _ in 0..200 {
            let (a, da) = random_cochain(&mut rng, shape, 3);
            let (b, db) = random_cochain(&mut rng, shape, 3);
            let (c, _) = random_cochain(&mut rng, shape, 2);
            let s = sign(da, db);
            // {A', A} = -(-1)^{aa'+bb'} {A, A'}
            if br(&b, &a) != br(&a, &b).scale(&-s.clone()) {
                return Err(format!("{}: antisymmetry fails", q.name()));
            }
            // {{A, A'}, A''} = {A, {A', A''}} - (-1)^{aa'+bb'} {A', {A, A''}}
            let lhs = br(&br(&a, &b), &c);
            let rhs = br(&a, &br(&b, &c)).sub(&br(&b, &br(&a, &c)).scale(&s)).unwrap();
            if lhs != rhs {
                return Err(format!("{}: Jacobi identity fails", q.name()));
            }
            // {A, A' ∧ A''} = {A, A'} ∧ A'' + (-1)^{aa'+bb'} A' ∧ {A, A''}
            let lhs = br(&a, &b.wedge(&c).unwrap());
            let rhs = br(&a, &b)
                .wedge(&c)
                .unwrap()
                .add(&b.wedge(&br(&a, &c)).unwrap().scale(&s))
                .unwrap();
            if lhs != rhs {
                return Err(format!("{}: Leibniz rule fails", q.name()));
            }
            triples += 1;
        }
    }
    Ok(format!(
        "antisymmetry, Jacobi and Leibniz on {triples} triples over {} algebras",
        algebras.len()
    ))
}

fn random_combination(rng: &mut ChaCha8Rng, space: &[Superderivation], n: usize) -> Option<Superderivation> {
    let first = space.first()?;
    let mut m = superquad_core::linalg::Matrix::zeros(n, n);
    for d in space {
        m = m.add(&d.matrix.scale(&small_rational(rng))).unwrap();
    }
    if m.is_zero() {
        m = first.matrix.clone();
    }
    Some(Superderivation::new(m, first.degree))
}

/// `h` abelian and even, of dimension 1 or 2, acting through commuting
/// multiples of one skew derivation.
fn even_datum(rng: &mut ChaCha8Rng, q: &QuadraticLieSuperalgebra) -> Option<ExtensionDatum> {
    let space = skew_superderivation_space(q, Parity::Even).ok()?;
    let d = random_combination(rng, &space, q.dim())?;
    let p = rng.gen_range(1..=2);
    let labels: Vec<String> = (0..p).map(|i| format!("h{i}")).collect();
    let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
    let h = LieSuperalgebra::new("h", GradedBasis::from_labels(&refs, &[]).unwrap());
    let mut gamma = BilinearForm::zero(p);
    let pars = vec![Parity::Even; p];
    for i in 0..p {
        for j in i..p {
            gamma.set(i, j, small_rational(rng), &pars);
        }
    }
    let psi = (0..p)
        .map(|_| Superderivation::new(d.matrix.scale(&small_rational(rng)), Parity::Even))
        .collect();
    Some(ExtensionDatum::new(q.clone(), h, gamma, psi))
}

/// `h = span{c, e}` with `c` even, `e` odd, `[e, e] = c`, `ψ(e) = D` odd and
/// `ψ(c) = 2D²`.
fn odd_datum(rng: &mut ChaCha8Rng, q: &QuadraticLieSuperalgebra) -> Option<ExtensionDatum> {
    let space = skew_superderivation_space(q, Parity::Odd).ok()?;
    let d = random_combination(rng, &space, q.dim())?;
    let h = LieSuperalgebra::new("h", GradedBasis::from_labels(&["c"], &["e"]).unwrap())
        .with_bracket(1, 1, &[(0, Scalar::one())])
        .unwrap();
    let d2 = d.matrix.mul(&d.matrix).unwrap().scale(&int(2));
    let psi = vec![Superderivation::new(d2, Parity::Even), d];
    Some(ExtensionDatum::new(q.clone(), h, BilinearForm::zero(2), psi))
}

fn criterion_8_double_extension() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let bases = quadratic_catalog();
    let (mut even, mut odd) = (0, 0);
    let mut attempts = 0;
    while even + odd < 60 {
        attempts += 1;
        if attempts > 1000 {
            return Err(format!("only {} data generated", even + odd));
        }
        let q = &bases[rng.gen_range(0..bases.len())];
        let want_odd = rng.gen_bool(0.5);
        let datum = if want_odd { odd_datum(&mut rng, q) } else { even_datum(&mut rng, q) };
        let Some(datum) = datum else { continue };
        let out = double_extension(&datum).map_err(|e| format!("{}: {e}", q.name()))?;
        if let Some(v) = out.validate_quadratic().first() {
            return Err(format!("{}: output fails {}: {}", q.name(), v.axiom, v.detail));
        }
        if want_odd {
            odd += 1;
        } else {
            even += 1;
        }
    }
    if odd == 0 || even == 0 {
        return Err(format!("{even} even and {odd} odd data; both kinds are required"));
    }
    Ok(format!("{} data ({even} with even h, {odd} with odd h) give valid quadratic outputs", even + odd))
}

fn criterion_9_reconstruction() -> Outcome {
    let bindings: Vec<(&str, Vec<Params>)> = vec![
        (
            "g_8_2_3_s",
            vec![params(&[("lambda", int(1))]), params(&[("lambda", int(-2))]), params(&[("lambda", ratio(1, 3))])],
        ),
        (
            "g_8_2_4_s",
            vec![
                params(&[("lambda", int(1)), ("mu", int(1))]),
                params(&[("lambda", int(2)), ("mu", ratio(-1, 2))]),
                params(&[("lambda", int(-3)), ("mu", int(5))]),
            ],
        ),
        // No parameters: the single instance is rebuilt.
        ("g_8_2_7_s", vec![Params::new()]),
        (
            "g_8_2_8_s",
            vec![params(&[("lambda", int(1))]), params(&[("lambda", ratio(-1, 2))]), params(&[("lambda", int(3))])],
        ),
    ];
    let mut rebuilt = 0;
    for (key, list) in &bindings {
        for p in list {
            let table = catalog::build_quadratic(key, p).map_err(|e| e.to_string())?;
            let again = catalog::reconstruct(key, p).map_err(|e| e.to_string())?;
            if again.algebra.stored_brackets().collect::<Vec<_>>()
                != table.algebra.stored_brackets().collect::<Vec<_>>()
                || again.form != table.form
            {
                return Err(format!("{key} [{}] differs from its extension data", catalog::format_params(p)));
            }
            rebuilt += 1;
        }
    }
    let families = catalog::list().into_iter().filter(|e| e.key.starts_with("g_8_2_")).collect::<Vec<_>>();
    for e in &families {
        let q = catalog::build_quadratic(e.key, &Params::new()).map_err(|e| e.to_string())?;
        if let Some(v) = q.validate_quadratic().first() {
            return Err(format!("{} fails {}", e.key, v.axiom));
        }
        if !q.algebra.is_solvable() {
            return Err(format!("{} is not solvable", e.key));
        }
    }
    Ok(format!(
        "{rebuilt} parameter bindings rebuilt exactly; {} families valid and solvable",
        families.len()
    ))
}

fn criterion_10_sp2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1000 {
        let (a, b) = commuting_pair(&mut rng);
        match check_commuting_dependence(&a, &b).map_err(|e| e.to_string())? {
            Dependence::Dependent { .. } => {}
            Dependence::Counterexample => return Err(format!("no certificate for {a:?}, {b:?}")),
        }
    }

    // [A, B] = C with [A, C] = [B, C] = 0: B is solved from ad_A² B = 0, then
    // the quadratic condition [B, C] = 0 is checked.
    let mut triples = 0;
    for _ in 0..1000 {
        let a = match rng.gen_range(0..3) {
            0 => random_sp2(&mut rng),
            _ => Sp2Element::x().scale(&nonzero_rational(&mut rng)).conjugate(&random_gl2(&mut rng)).unwrap(),
        };
        let ad = ad_sp2(&a);
        let mut b = Sp2Element::zero();
        for v in ad.mul(&ad).unwrap().nullspace() {
            b = b.add(&Sp2Element::new(v[0].clone(), v[1].clone(), v[2].clone()).scale(&small_rational(&mut rng)));
        }
        let c = a.commutator(&b);
        if !a.commutator(&c).is_zero() || !b.commutator(&c).is_zero() {
            continue;
        }
        if !c.is_zero() {
            return Err(format!("C != 0 for A = {a:?}, B = {b:?}"));
        }
        triples += 1;
    }

    // [A, B] = B with B != 0: solve (ad_A - 1) B = 0.
    let mut instances = 0;
    let half = ratio(1, 2);
    let seeds = [
        (Sp2Element::h().scale(&half), Sp2Element::x()),
        (Sp2Element::h().scale(&-half.clone()), Sp2Element::y()),
    ];
    for (a, b) in &seeds {
        let r = check_eigenvector_relation(a, b).map_err(|e| e.to_string())?;
        if !(r.semisimple_half && r.b_nilpotent) {
            return Err(format!("flags fail for A = {a:?}"));
        }
        instances += 1;
    }
    for _ in 0..500 {
        let g = random_gl2(&mut rng);
        let a = match rng.gen_range(0..3) {
            0 => random_sp2(&mut rng),
            1 => Sp2Element::h().scale(&half).conjugate(&g).unwrap(),
            _ => Sp2Element::h()
                .scale(&half)
                .add(&Sp2Element::x().scale(&small_rational(&mut rng)))
                .conjugate(&g)
                .unwrap(),
        };
        let shifted = ad_sp2(&a)
            .sub(&superquad_core::linalg::Matrix::identity(3))
            .unwrap();
        for v in shifted.nullspace() {
            let b = Sp2Element::new(v[0].clone(), v[1].clone(), v[2].clone()).scale(&nonzero_rational(&mut rng));
            let r = check_eigenvector_relation(&a, &b).map_err(|e| e.to_string())?;
            if !(r.semisimple_half && r.b_nilpotent) {
                return Err(format!("flags fail for A = {a:?}, B = {b:?}"));
            }
            instances += 1;
        }
    }
    if triples == 0 || instances < 100 {
        return Err(format!("too few instances ({triples} triples, {instances} eigen pairs)"));
    }
    Ok(format!(
        "1000 commuting pairs dependent; C = 0 in {triples} triples; eigenvalue flags hold in {instances} pairs"
    ))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 Betti regression", criterion_1_betti),
        ("2 span dimensions", criterion_2_spans),
        ("3 representative membership", criterion_3_representatives),
        ("4 Heisenberg formula", criterion_4_heisenberg),
        ("5 Poisson bracket table", criterion_5_poisson_table),
        ("6 dual-differential oracle", criterion_6_dual_differential),
        ("7 graded Lie properties", criterion_7_graded_lie),
        ("8 double-extension soundness", criterion_8_double_extension),
        ("9 classification reconstruction", criterion_9_reconstruction),
        ("10 sp(2) lemmas", criterion_10_sp2),
    ];
    let mut failed = Vec::new();
    let mut out = std::io::stdout().lock();
    for (name, f) in criteria {
        let (tag, detail) = match f() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed.push(name);
                ("FAIL", d)
            }
        };
        // Written directly so the lines appear even when the test passes.
        writeln!(out, "criterion {name}: {tag}: {detail}").unwrap();
    }
    out.flush().unwrap();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn heisenberg_formula_excludes_m_zero() {
    // The formula is stated for m >= 1; at m = 0 the engine finds b2 = 2.
    assert_eq!(cohomology(&catalog::heisenberg(1, 0), 2).unwrap().betti, 2);
    assert_eq!(heisenberg_formula(1, 0), 0);
}

#[test]
fn three_form_of_g41() {
    let q = quad("g_4_1_s");
    let i = superquad_core::superexterior::associated_three_form(&q);
    let expect = Cochain::parse_labelled(q.algebra.basis(), "-Y0* ⊗ (Y1*)^2").unwrap();
    assert_eq!(i, expect);
}

#[test]
fn differential_of_x0_in_g41() {
    let q = quad("g_4_1_s");
    let basis = q.algebra.basis();
    let a = Cochain::parse_labelled(basis, "X0*").unwrap();
    let expect = Cochain::parse_labelled(basis, "(Y1*)^2").unwrap();
    assert_eq!(differential_via_poisson(&q, &a).unwrap(), expect);
    assert_eq!(differential_direct(&q.algebra, &a).unwrap(), expect);
}
