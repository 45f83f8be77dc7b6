//! Built-in algebras: Heisenberg superalgebras, the elementary quadratic Lie
//! superalgebras, the indecomposable six-dimensional quadratic Lie algebras and
//! the eight-dimensional families with six-dimensional indecomposable even part.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use crate::algebra::{GradedBasis, LieSuperalgebra};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::quadratic::{BilinearForm, QuadraticLieSuperalgebra};
use crate::scalar::{self, int, ratio, Scalar};

pub type Params = BTreeMap<String, Scalar>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub default: Scalar,
    pub constraint: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub key: &'static str,
    pub description: &'static str,
    pub params: Vec<ParamSpec>,
    pub has_form: bool,
}

impl CatalogEntry {
    pub fn default_params(&self) -> Params {
        self.params
            .iter()
            .map(|p| (p.name.to_string(), p.default.clone()))
            .collect()
    }
}

/// A catalog algebra, with its invariant form when one is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Built {
    Quadratic(QuadraticLieSuperalgebra),
    Plain(LieSuperalgebra),
}

impl Built {
    pub fn algebra(&self) -> &LieSuperalgebra {
        match self {
            Built::Quadratic(q) => &q.algebra,
            Built::Plain(g) => g,
        }
    }

    pub fn quadratic(&self) -> Option<&QuadraticLieSuperalgebra> {
        match self {
            Built::Quadratic(q) => Some(q),
            Built::Plain(_) => None,
        }
    }

    pub fn into_quadratic(self) -> Result<QuadraticLieSuperalgebra> {
        match self {
            Built::Quadratic(q) => Ok(q),
            Built::Plain(g) => Err(Error::Precondition(format!(
                "`{}` carries no invariant form",
                g.name()
            ))),
        }
    }
}

fn spec(name: &'static str, default: Scalar, constraint: &'static str) -> ParamSpec {
    ParamSpec {
        name,
        default,
        constraint,
    }
}

pub fn list() -> Vec<CatalogEntry> {
    let e = |key, description, params, has_form| CatalogEntry {
        key,
        description,
        params,
        has_form,
    };
    vec![
        e(
            "heisenberg",
            "Heisenberg Lie superalgebra h_{2n+1,m}: [X_i, X_{n+i}] = Z, [Y_j, Y_j] = Z",
            vec![
                spec("n", int(1), "non-negative integer"),
                spec("m", int(1), "non-negative integer"),
            ],
            false,
        ),
        e("g_4_1_s", "elementary quadratic Lie superalgebra g_{4,1}^s", vec![], true),
        e("g_4_2_s", "elementary quadratic Lie superalgebra g_{4,2}^s", vec![], true),
        e("g_6_s", "elementary quadratic Lie superalgebra g_6^s", vec![], true),
        e("g_6_1", "six-dimensional indecomposable quadratic Lie algebra g_{6,1}", vec![], true),
        e(
            "g_6_2",
            "six-dimensional indecomposable quadratic Lie algebra g_{6,2}(lambda)",
            vec![spec("lambda", int(1), "non-zero")],
            true,
        ),
        e("g_6_3", "six-dimensional indecomposable quadratic Lie algebra g_{6,3}", vec![], true),
        e(
            "g_8_2_1_s",
            "g_{8,2,1}^s(lambda, mu, nu) over g_{6,1}, diagonal odd action",
            vec![
                spec("lambda", int(1), "lambda, mu, nu not all zero"),
                spec("mu", int(0), "lambda, mu, nu not all zero"),
                spec("nu", int(0), "lambda, mu, nu not all zero"),
            ],
            true,
        ),
        e(
            "g_8_2_2_s",
            "g_{8,2,2}^s(lambda, mu) over g_{6,1}, nilpotent odd action",
            vec![spec("lambda", int(0), "any"), spec("mu", int(0), "any")],
            true,
        ),
        e(
            "g_8_2_3_s",
            "g_{8,2,3}^s(lambda) over g_{6,2}(lambda), nilpotent ad(X3) on the odd part",
            vec![spec("lambda", int(1), "non-zero")],
            true,
        ),
        e(
            "g_8_2_4_s",
            "g_{8,2,4}^s(lambda, mu) over g_{6,2}(lambda), diagonal ad(X3) on the odd part",
            vec![spec("lambda", int(1), "non-zero"), spec("mu", int(1), "non-zero")],
            true,
        ),
        e(
            "g_8_2_5_s",
            "g_{8,2,5}^s(lambda) over g_{6,2}(lambda), two-dimensional odd action",
            vec![spec("lambda", int(1), "non-zero")],
            true,
        ),
        e(
            "g_8_2_6_s",
            "g_{8,2,6}^s(lambda, mu) over g_{6,2}(lambda) with ad(Z2) non-zero on the odd part",
            vec![
                spec("lambda", int(1), "must equal 1 (forced by the Jacobi identity)"),
                spec("mu", int(1), "non-zero"),
            ],
            true,
        ),
        e(
            "g_8_2_7_s",
            "g_{8,2,7}^s over g_{6,3}, nilpotent ad(X3) on the odd part",
            vec![],
            true,
        ),
        e(
            "g_8_2_8_s",
            "g_{8,2,8}^s(lambda) over g_{6,3}, diagonal ad(X3) on the odd part",
            vec![spec("lambda", int(1), "non-zero")],
            true,
        ),
        e(
            "g_8_2_9_s",
            "g_{8,2,9}^s over g_{6,3}, two-dimensional odd action",
            vec![],
            true,
        ),
        e(
            "g_8_decomposable",
            "orthogonal sum of g_{6,1} / g_{6,2}(lambda) / g_{6,3} (base = 1, 2, 3) and a 2-dimensional symplectic odd space",
            vec![
                spec("base", int(1), "1, 2 or 3"),
                spec("lambda", int(1), "non-zero; used when base = 2"),
            ],
            true,
        ),
    ]
}

pub fn entry(key: &str) -> Result<CatalogEntry> {
    list()
        .into_iter()
        .find(|e| e.key == key)
        .ok_or_else(|| Error::UnknownKey(key.to_string()))
}

/// Builds `key` with `params` overriding the defaults.
pub fn build(key: &str, params: &Params) -> Result<Built> {
    let entry = entry(key)?;
    for name in params.keys() {
        if !entry.params.iter().any(|p| p.name == name) {
            return Err(Error::ParameterConstraint {
                key: key.to_string(),
                message: format!("unknown parameter `{name}`"),
            });
        }
    }
    let mut p = entry.default_params();
    p.extend(params.iter().map(|(k, v)| (k.clone(), v.clone())));
    let get = |n: &str| p[n].clone();
    let constraint = |message: &str| Error::ParameterConstraint {
        key: key.to_string(),
        message: message.to_string(),
    };
    let nonzero = |n: &str| -> Result<Scalar> {
        let v = get(n);
        if v.is_zero() {
            return Err(constraint(&format!("{n} must be non-zero")));
        }
        Ok(v)
    };
    let q = match key {
        "heisenberg" => {
            let n = small_natural(&get("n")).ok_or_else(|| constraint("n must be a non-negative integer"))?;
            let m = small_natural(&get("m")).ok_or_else(|| constraint("m must be a non-negative integer"))?;
            return Ok(Built::Plain(heisenberg(n, m)));
        }
        "g_4_1_s" => g_4_1_s(),
        "g_4_2_s" => g_4_2_s(),
        "g_6_s" => g_6_s(),
        "g_6_1" => g_6_1(),
        "g_6_2" => g_6_2(&nonzero("lambda")?),
        "g_6_3" => g_6_3(),
        "g_8_2_1_s" => {
            let (l, m, n) = (get("lambda"), get("mu"), get("nu"));
            if l.is_zero() && m.is_zero() && n.is_zero() {
                return Err(constraint("lambda, mu, nu must not all be zero"));
            }
            g_8_2_1_s(&l, &m, &n)
        }
        "g_8_2_2_s" => g_8_2_2_s(&get("lambda"), &get("mu")),
        "g_8_2_3_s" => g_8_2_3_s(&nonzero("lambda")?),
        "g_8_2_4_s" => g_8_2_4_s(&nonzero("lambda")?, &nonzero("mu")?),
        "g_8_2_5_s" => g_8_2_5_s(&nonzero("lambda")?),
        "g_8_2_6_s" => {
            if !get("lambda").is_one() {
                return Err(constraint("lambda must equal 1"));
            }
            g_8_2_6_s(&nonzero("mu")?)
        }
        "g_8_2_7_s" => g_8_2_7_s(),
        "g_8_2_8_s" => g_8_2_8_s(&nonzero("lambda")?),
        "g_8_2_9_s" => g_8_2_9_s(),
        "g_8_decomposable" => {
            let base = match small_natural(&get("base")) {
                Some(b @ 1..=3) => b,
                _ => return Err(constraint("base must be 1, 2 or 3")),
            };
            let lambda = if base == 2 { nonzero("lambda")? } else { get("lambda") };
            g_8_decomposable(base, &lambda)
        }
        _ => unreachable!("every listed key has a builder"),
    }?;
    Ok(Built::Quadratic(q))
}

/// Builds a catalog entry that carries a form.
pub fn build_quadratic(key: &str, params: &Params) -> Result<QuadraticLieSuperalgebra> {
    build(key, params)?.into_quadratic()
}

fn small_natural(x: &Scalar) -> Option<usize> {
    if !x.is_integer() || x.is_negative() {
        return None;
    }
    x.numer().to_string().parse().ok()
}

/// Bracket entries `(i, j, [(k, c)])` and form entries `(i, j, value)`.
type Table<'a> = &'a [(usize, usize, Vec<(usize, Scalar)>)];

fn assemble(
    name: &str,
    even: &[&str],
    odd: &[&str],
    brackets: Table<'_>,
    form: &[(usize, usize, Scalar)],
) -> Result<QuadraticLieSuperalgebra> {
    let basis = GradedBasis::from_labels(even, odd)?;
    let mut g = LieSuperalgebra::new(name, basis);
    for (i, j, terms) in brackets {
        g.set_bracket(*i, *j, terms)?;
    }
    let mut b = BilinearForm::zero(g.dim());
    for (i, j, v) in form {
        b.set(*i, *j, v.clone(), g.basis().parities());
    }
    QuadraticLieSuperalgebra::new(g, b)
}

/// `h_{2n+1,m}` on `(Z, X_1..X_{2n} | Y_1..Y_m)`.
pub fn heisenberg(n: usize, m: usize) -> LieSuperalgebra {
    let even: Vec<String> = std::iter::once("Z".to_string())
        .chain((1..=2 * n).map(|i| format!("X{i}")))
        .collect();
    let odd: Vec<String> = (1..=m).map(|j| format!("Y{j}")).collect();
    let e: Vec<&str> = even.iter().map(String::as_str).collect();
    let o: Vec<&str> = odd.iter().map(String::as_str).collect();
    let basis = GradedBasis::from_labels(&e, &o).expect("generated labels are distinct");
    let mut g = LieSuperalgebra::new(format!("heisenberg_{}_{}", 2 * n + 1, m), basis);
    for i in 1..=n {
        g.set_bracket(i, n + i, &[(0, int(1))]).expect("indices in range");
    }
    for j in 0..m {
        let y = 2 * n + 1 + j;
        g.set_bracket(y, y, &[(0, int(1))]).expect("indices in range");
    }
    g
}

// Elementary algebras on (X0, Y0 | X1, Y1[, Z1, T1]).
const X0: usize = 0;
const Y0: usize = 1;
const X1: usize = 2;
const Y1: usize = 3;

pub fn g_4_1_s() -> Result<QuadraticLieSuperalgebra> {
    assemble(
        "g_4_1_s",
        &["X0", "Y0"],
        &["X1", "Y1"],
        &[
            (Y1, Y1, vec![(X0, int(-2))]),
            (Y0, Y1, vec![(X1, int(-2))]),
        ],
        &[(X0, Y0, int(1)), (X1, Y1, int(1))],
    )
}

pub fn g_4_2_s() -> Result<QuadraticLieSuperalgebra> {
    assemble(
        "g_4_2_s",
        &["X0", "Y0"],
        &["X1", "Y1"],
        &[
            (X1, Y1, vec![(X0, int(1))]),
            (Y0, X1, vec![(X1, int(1))]),
            (Y0, Y1, vec![(Y1, int(-1))]),
        ],
        &[(X0, Y0, int(1)), (X1, Y1, int(1))],
    )
}

pub fn g_6_s() -> Result<QuadraticLieSuperalgebra> {
    const Z1: usize = 4;
    const T1: usize = 5;
    assemble(
        "g_6_s",
        &["X0", "Y0"],
        &["X1", "Y1", "Z1", "T1"],
        &[
            (Z1, T1, vec![(X0, int(-1))]),
            (Y0, Z1, vec![(Y1, int(-1))]),
            (Y0, T1, vec![(X1, int(-1))]),
        ],
        &[(X0, Y0, int(1)), (X1, Z1, int(1)), (Y1, T1, int(1))],
    )
}

// Six- and eight-dimensional algebras on (Z1, Z2, Z3, X1, X2, X3 | Y1, T1).
pub mod idx {
    pub const Z1: usize = 0;
    pub const Z2: usize = 1;
    pub const Z3: usize = 2;
    pub const X1: usize = 3;
    pub const X2: usize = 4;
    pub const X3: usize = 5;
    pub const Y1: usize = 6;
    pub const T1: usize = 7;
}
use idx::{T1 as T, X1 as A1, X2 as A2, X3 as A3, Y1 as Y, Z1 as C1, Z2 as C2, Z3 as C3};

const EVEN6: [&str; 6] = ["Z1", "Z2", "Z3", "X1", "X2", "X3"];
const ODD2: [&str; 2] = ["Y1", "T1"];

fn six_form() -> Vec<(usize, usize, Scalar)> {
    vec![(A1, C1, int(1)), (A2, C2, int(1)), (A3, C3, int(1))]
}

fn eight_form() -> Vec<(usize, usize, Scalar)> {
    let mut f = six_form();
    f.push((Y, T, int(1)));
    f
}

type Brackets = Vec<(usize, usize, Vec<(usize, Scalar)>)>;

fn table_6_1() -> Brackets {
    vec![
        (A1, A2, vec![(C3, int(1))]),
        (A2, A3, vec![(C1, int(1))]),
        (A3, A1, vec![(C2, int(1))]),
    ]
}

fn table_6_2(l: &Scalar) -> Brackets {
    vec![
        (A3, C1, vec![(C1, int(1))]),
        (A3, C2, vec![(C2, l.clone())]),
        (A3, A1, vec![(A1, int(-1))]),
        (A3, A2, vec![(A2, -l.clone())]),
        (C1, A1, vec![(C3, int(1))]),
        (C2, A2, vec![(C3, l.clone())]),
    ]
}

fn table_6_3() -> Brackets {
    vec![
        (A3, C1, vec![(C1, int(1))]),
        (A3, C2, vec![(C1, int(1)), (C2, int(1))]),
        (A3, A1, vec![(A1, int(-1)), (A2, int(-1))]),
        (A3, A2, vec![(A2, int(-1))]),
        (C1, A1, vec![(C3, int(1))]),
        (C2, A1, vec![(C3, int(1))]),
        (C2, A2, vec![(C3, int(1))]),
    ]
}

pub fn g_6_1() -> Result<QuadraticLieSuperalgebra> {
    assemble("g_6_1", &EVEN6, &[], &table_6_1(), &six_form())
}

pub fn g_6_2(lambda: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    assemble("g_6_2", &EVEN6, &[], &table_6_2(lambda), &six_form())
}

pub fn g_6_3() -> Result<QuadraticLieSuperalgebra> {
    assemble("g_6_3", &EVEN6, &[], &table_6_3(), &six_form())
}

fn eight(name: &str, mut table: Brackets, extra: Brackets) -> Result<QuadraticLieSuperalgebra> {
    table.extend(extra);
    assemble(name, &EVEN6, &ODD2, &table, &eight_form())
}

pub fn g_8_2_1_s(l: &Scalar, m: &Scalar, n: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    eight(
        "g_8_2_1_s",
        table_6_1(),
        vec![
            (A1, Y, vec![(Y, l.clone())]),
            (A1, T, vec![(T, -l.clone())]),
            (A2, Y, vec![(Y, m.clone())]),
            (A2, T, vec![(T, -m.clone())]),
            (A3, Y, vec![(Y, n.clone())]),
            (A3, T, vec![(T, -n.clone())]),
            (Y, T, vec![(C1, l.clone()), (C2, m.clone()), (C3, n.clone())]),
        ],
    )
}

pub fn g_8_2_2_s(l: &Scalar, m: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    eight(
        "g_8_2_2_s",
        table_6_1(),
        vec![
            (A3, T, vec![(Y, int(1))]),
            (A1, T, vec![(Y, l.clone())]),
            (A2, T, vec![(Y, m.clone())]),
            (T, T, vec![(C1, l.clone()), (C2, m.clone()), (C3, int(1))]),
        ],
    )
}

pub fn g_8_2_3_s(l: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    eight(
        "g_8_2_3_s",
        table_6_2(l),
        vec![(A3, T, vec![(Y, int(1))]), (T, T, vec![(C3, int(1))])],
    )
}

pub fn g_8_2_4_s(l: &Scalar, m: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    eight(
        "g_8_2_4_s",
        table_6_2(l),
        vec![
            (A3, Y, vec![(Y, m.clone())]),
            (A3, T, vec![(T, -m.clone())]),
            (Y, T, vec![(C3, m.clone())]),
        ],
    )
}

pub fn g_8_2_5_s(l: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    eight(
        "g_8_2_5_s",
        table_6_2(l),
        vec![
            (A3, Y, vec![(Y, ratio(1, 2))]),
            (A3, T, vec![(T, ratio(-1, 2))]),
            (C1, T, vec![(Y, int(1))]),
            (Y, T, vec![(C3, ratio(1, 2))]),
            (T, T, vec![(A1, int(1))]),
        ],
    )
}

/// Only `lambda = 1` is admissible, so the parameter is not passed.
pub fn g_8_2_6_s(m: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    eight(
        "g_8_2_6_s",
        table_6_2(&int(1)),
        vec![
            (A3, Y, vec![(Y, ratio(1, 2))]),
            (A3, T, vec![(T, ratio(-1, 2))]),
            (C1, T, vec![(Y, int(1))]),
            (C2, T, vec![(Y, m.clone())]),
            (Y, T, vec![(C3, ratio(1, 2))]),
            (T, T, vec![(A1, int(1)), (A2, m.clone())]),
        ],
    )
}

pub fn g_8_2_7_s() -> Result<QuadraticLieSuperalgebra> {
    with_solved_odd_brackets("g_8_2_7_s", table_6_3(), vec![(A3, T, vec![(Y, int(1))])])
}

pub fn g_8_2_8_s(l: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    with_solved_odd_brackets(
        "g_8_2_8_s",
        table_6_3(),
        vec![
            (A3, Y, vec![(Y, l.clone())]),
            (A3, T, vec![(T, -l.clone())]),
        ],
    )
}

pub fn g_8_2_9_s() -> Result<QuadraticLieSuperalgebra> {
    eight(
        "g_8_2_9_s",
        table_6_3(),
        vec![
            (A3, Y, vec![(Y, ratio(1, 2))]),
            (A3, T, vec![(T, ratio(-1, 2))]),
            (C2, T, vec![(Y, int(1))]),
            (Y, T, vec![(C3, ratio(1, 2))]),
            (T, T, vec![(A2, int(1))]),
        ],
    )
}

pub fn g_8_decomposable(base: usize, lambda: &Scalar) -> Result<QuadraticLieSuperalgebra> {
    let table = match base {
        1 => table_6_1(),
        2 => table_6_2(lambda),
        _ => table_6_3(),
    };
    eight("g_8_decomposable", table, vec![])
}

/// Fills in the odd-odd brackets from the even-odd ones by invariance:
/// for odd `u, v` and even `w`, `B([u, v], w) = B(u, [v, w])`.
fn with_solved_odd_brackets(
    name: &str,
    even: Brackets,
    mixed: Brackets,
) -> Result<QuadraticLieSuperalgebra> {
    let mut q = eight(name, even, mixed)?;
    solve_odd_brackets(&mut q)?;
    Ok(q)
}

/// Overwrites every odd-odd bracket with the unique value compatible with
/// invariance of a non-degenerate even form.
pub fn solve_odd_brackets(q: &mut QuadraticLieSuperalgebra) -> Result<()> {
    let m = q.algebra.basis().even_dim();
    let n = q.dim();
    let even_idx: Vec<usize> = (0..m).collect();
    let g0 = q.form.gram().submatrix(&even_idx, &even_idx);
    let inv = g0
        .transpose()
        .inverse()
        .ok_or_else(|| Error::DegenerateForm("B restricted to the even part".into()))?;
    for u in m..n {
        for v in u..n {
            let b: Vec<Scalar> = (0..m)
                .map(|w| {
                    q.algebra
                        .bracket_basis(v, w)
                        .iter()
                        .map(|(l, c)| c * q.form.entry(u, *l))
                        .sum()
                })
                .collect();
            let c = inv.mul_vec(&b)?;
            let terms: Vec<(usize, Scalar)> = c.into_iter().enumerate().collect();
            q.algebra.set_bracket(u, v, &terms)?;
        }
    }
    Ok(())
}

/// `ad(X3)` on `(Z1, Z2, X1, X2, Y1, T1)` as printed for the cases built by a
/// one-dimensional double extension; columns are images.
pub fn extension_matrix(key: &str, params: &Params) -> Result<Matrix> {
    let get = |n: &str| -> Scalar {
        params
            .get(n)
            .cloned()
            .unwrap_or_else(|| entry(key).map(|e| e.default_params()[n].clone()).unwrap_or_else(|_| int(1)))
    };
    let z = Scalar::zero();
    let o = Scalar::one();
    let rows: Vec<Vec<Scalar>> = match key {
        "g_8_2_3_s" => {
            let l = get("lambda");
            diag_block(&[o.clone(), l.clone(), -o.clone(), -l], false, &[[z.clone(), o.clone()], [z.clone(), z.clone()]])
        }
        "g_8_2_4_s" => {
            let (l, m) = (get("lambda"), get("mu"));
            diag_block(&[o.clone(), l.clone(), -o.clone(), -l], false, &[[m.clone(), z.clone()], [z.clone(), -m]])
        }
        "g_8_2_7_s" => diag_block(&[o.clone(), o.clone(), -o.clone(), -o.clone()], true, &[[z.clone(), o.clone()], [z.clone(), z.clone()]]),
        "g_8_2_8_s" => {
            let l = get("lambda");
            diag_block(&[o.clone(), o.clone(), -o.clone(), -o.clone()], true, &[[l.clone(), z.clone()], [z.clone(), -l]])
        }
        _ => {
            return Err(Error::InvalidInput(format!(
                "`{key}` is not built from a printed ad(X3) matrix"
            )))
        }
    };
    Matrix::from_rows(rows)
}

/// `q₀ ⊕ g₁` with `q₀ = span{Z1, Z2, X1, X2}` abelian, `B(X_i, Z_i) = 1` and a
/// two-dimensional symplectic odd part `B(Y1, T1) = 1`.
pub fn extension_base() -> Result<QuadraticLieSuperalgebra> {
    assemble(
        "q0+g1",
        &["Z1", "Z2", "X1", "X2"],
        &ODD2,
        &[],
        &[(2, 0, int(1)), (3, 1, int(1)), (4, 5, int(1))],
    )
}

/// Rebuilds `key` as the one-dimensional double extension of
/// [`extension_base`] by [`extension_matrix`], with `e = X3` and `f = Z3`,
/// in the catalog basis order.
pub fn reconstruct(key: &str, params: &Params) -> Result<QuadraticLieSuperalgebra> {
    let base = extension_base()?;
    let d = extension_matrix(key, params)?;
    let ext = crate::extensions::one_dim_double_extension_labeled(&base, &d, ("X3", "Z3"))?;
    let labels: Vec<String> = EVEN6.iter().chain(ODD2.iter()).map(|s| s.to_string()).collect();
    let mut out = ext.reorder_by_labels(&labels)?;
    out.algebra.set_name(key);
    Ok(out)
}

fn diag_block(diag: &[Scalar; 4], jordan: bool, odd: &[[Scalar; 2]; 2]) -> Vec<Vec<Scalar>> {
    let mut m = vec![vec![Scalar::zero(); 6]; 6];
    for (i, d) in diag.iter().enumerate() {
        m[i][i] = d.clone();
    }
    if jordan {
        m[0][1] = Scalar::one();
        m[3][2] = -Scalar::one();
    }
    for r in 0..2 {
        for c in 0..2 {
            m[4 + r][4 + c] = odd[r][c].clone();
        }
    }
    m
}

/// Formats a parameter binding such as `lambda=1/2, mu=3`.
pub fn format_params(p: &Params) -> String {
    p.iter()
        .map(|(k, v)| format!("{k}={}", scalar::format(v)))
        .collect::<Vec<_>>()
        .join(", ")
}
