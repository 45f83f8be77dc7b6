//! Invariant bilinear forms, quadratic structures and Darboux frames.

use num_traits::{One, Zero};

use crate::algebra::{koszul, unit, Axiom, LieSuperalgebra, Parity, ValidationReport};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::{self, Scalar};

/// Gram matrix of a bilinear form on the graded basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BilinearForm {
    gram: Matrix,
}

impl BilinearForm {
    pub fn zero(dim: usize) -> Self {
        BilinearForm {
            gram: Matrix::zeros(dim, dim),
        }
    }

    pub fn from_gram(gram: Matrix) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::DimensionMismatch {
                expected: gram.rows(),
                found: gram.cols(),
            });
        }
        Ok(BilinearForm { gram })
    }

    /// Sets `B(e_i, e_j)` and the partner `B(e_j, e_i)` implied by supersymmetry.
    pub fn set(&mut self, i: usize, j: usize, value: Scalar, parities: &[Parity]) {
        let partner = if koszul(parities[i], parities[j]) {
            -value.clone()
        } else {
            value.clone()
        };
        self.gram[(i, j)] = value;
        self.gram[(j, i)] = partner;
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.gram[(i, j)]
    }

    pub fn eval(&self, x: &[Scalar], y: &[Scalar]) -> Scalar {
        let gy = self.gram.mul_vec(y).expect("vector has form dimension");
        x.iter().zip(&gy).map(|(a, b)| a * b).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.gram.is_zero()
    }
}

/// A Lie superalgebra together with an even, supersymmetric, invariant and
/// non-degenerate form. Construction does not validate; call
/// [`validate_quadratic`](Self::validate_quadratic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticLieSuperalgebra {
    pub algebra: LieSuperalgebra,
    pub form: BilinearForm,
}

/// Odd Darboux basis and even dual frame.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DarbouxFrame {
    /// `2n × 2n`, in odd coordinates; columns are `X^1..X^n, Y^1..Y^n`.
    pub odd_change_of_basis: Matrix,
    /// `m × m`; column `i` is `Y^i` in even coordinates, so that `B(Y^i, e_j) = δ_ij`.
    pub even_dual_frame: Matrix,
}

impl DarbouxFrame {
    pub fn half_odd_dim(&self) -> usize {
        self.odd_change_of_basis.cols() / 2
    }

    /// Odd Poisson tensor `Π = Σ_r (Y^r ⊗ X^r − X^r ⊗ Y^r)` in odd coordinates.
    pub fn odd_poisson_tensor(&self) -> Matrix {
        let n = self.half_odd_dim();
        let m = &self.odd_change_of_basis;
        let size = m.rows();
        let mut pi = Matrix::zeros(size, size);
        for r in 0..n {
            for k in 0..size {
                for l in 0..size {
                    let v = &m[(k, n + r)] * &m[(l, r)] - &m[(k, r)] * &m[(l, n + r)];
                    pi[(k, l)] += v;
                }
            }
        }
        pi
    }

    /// `B(Y^i, Y^j)`, the coefficients of the even part of the bracket.
    pub fn even_metric(&self, form: &BilinearForm) -> Matrix {
        let m = self.even_dual_frame.rows();
        let idx: Vec<usize> = (0..m).collect();
        let g = form.gram().submatrix(&idx, &idx);
        let f = &self.even_dual_frame;
        f.transpose()
            .mul(&g)
            .and_then(|x| x.mul(f))
            .expect("square blocks of equal size")
    }
}

impl QuadraticLieSuperalgebra {
    pub fn new(algebra: LieSuperalgebra, form: BilinearForm) -> Result<Self> {
        if form.dim() != algebra.dim() {
            return Err(Error::DimensionMismatch {
                expected: algebra.dim(),
                found: form.dim(),
            });
        }
        Ok(QuadraticLieSuperalgebra { algebra, form })
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn name(&self) -> &str {
        self.algebra.name()
    }

    /// See [`LieSuperalgebra::reorder`].
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let algebra = self.algebra.reorder(order)?;
        let gram = self.form.gram().submatrix(order, order);
        Ok(QuadraticLieSuperalgebra {
            algebra,
            form: BilinearForm::from_gram(gram)?,
        })
    }

    /// Reorders the basis to follow `labels`, which must be a permutation of
    /// the current labels.
    pub fn reorder_by_labels(&self, labels: &[String]) -> Result<Self> {
        let order = labels
            .iter()
            .map(|l| {
                self.algebra
                    .basis()
                    .index_of(l)
                    .ok_or_else(|| Error::InvalidInput(format!("unknown label `{l}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        self.reorder(&order)
    }

    /// Form axioms only (supersymmetry, evenness, invariance, non-degeneracy).
    pub fn validate_form(&self) -> ValidationReport {
        let g = &self.algebra;
        let b = &self.form;
        let n = g.dim();
        let label = |i: usize| g.basis().label(i).to_string();
        let mut report = ValidationReport::default();
        for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (g.parity(i), g.parity(j));
                let bij = b.entry(i, j);
                let bji = b.entry(j, i);
                let expected = if koszul(pi, pj) { -bji.clone() } else { bji.clone() };
                if i < j && *bij != expected {
                    report.push(
                        Axiom::FormSupersymmetry,
                        vec![i, j],
                        format!("B({}, {}) = {} but the supersymmetric partner gives {}",
                            label(i), label(j), scalar::format(bij), scalar::format(&expected)),
                    );
                }
                if pi != pj && !bij.is_zero() {
                    report.push(
                        Axiom::FormEvenness,
                        vec![i, j],
                        format!("B({}, {}) pairs vectors of different parity", label(i), label(j)),
                    );
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = g.bracket_basis(i, j);
                for k in 0..n {
                    let lhs: Scalar = ij.iter().map(|(l, c)| c * b.entry(*l, k)).sum();
                    let rhs: Scalar = g
                        .bracket_basis(j, k)
                        .iter()
                        .map(|(l, c)| c * b.entry(i, *l))
                        .sum();
                    if lhs != rhs {
                        report.push(
                            Axiom::Invariance,
                            vec![i, j, k],
                            format!(
                                "B([{0}, {1}], {2}) = {3} but B({0}, [{1}, {2}]) = {4}",
                                label(i), label(j), label(k),
                                scalar::format(&lhs), scalar::format(&rhs)
                            ),
                        );
                    }
                }
            }
        }
        let rank = b.gram().rank();
        if rank < n {
            report.push(
                Axiom::NonDegeneracy,
                vec![],
                format!("Gram matrix has rank {rank} < {n}"),
            );
        }
        report
    }

    /// Algebra axioms followed by form axioms.
    pub fn validate_quadratic(&self) -> ValidationReport {
        let mut r = self.algebra.validate();
        r.extend(self.validate_form());
        r
    }

    /// Symplectic reduction of the odd block and inversion of the even block.
    pub fn darboux_frame(&self) -> Result<DarbouxFrame> {
        let m = self.algebra.basis().even_dim();
        let q = self.algebra.basis().odd_dim();
        let gram = self.form.gram();
        let even_idx: Vec<usize> = (0..m).collect();
        let odd_idx: Vec<usize> = (m..m + q).collect();
        let g0 = gram.submatrix(&even_idx, &even_idx);
        let g1 = gram.submatrix(&odd_idx, &odd_idx);
        let even_dual_frame = g0
            .transpose()
            .inverse()
            .ok_or_else(|| Error::DegenerateForm("B restricted to the even part".into()))?;
        let odd_change_of_basis = symplectic_basis(&g1)?;
        Ok(DarbouxFrame {
            odd_change_of_basis,
            even_dual_frame,
        })
    }

    /// `{x : B(x, s) = 0}`. For a non-degenerate ideal, also checks
    /// `[s, s^⊥] = 0` and `s ∩ s^⊥ = 0`.
    pub fn orthogonal_complement(&self, s: &Subspace) -> Result<Subspace> {
        let n = self.dim();
        if s.ambient() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: s.ambient(),
            });
        }
        if !self.algebra.is_ideal(s) {
            return Err(Error::NotAnIdeal(format!(
                "subspace of dimension {} is not stable under ad",
                s.dim()
            )));
        }
        // Rows B(v, ·) for v in s; the complement is their common kernel.
        let rows: Vec<Vec<Scalar>> = s
            .basis()
            .iter()
            .map(|v| (0..n).map(|j| self.form.eval(v, &unit(n, j))).collect())
            .collect();
        let perp = if rows.is_empty() {
            Subspace::full(n)
        } else {
            Subspace::span(n, Matrix::from_rows_with_cols(rows, n)?.nullspace())?
        };
        if self.restriction_nondegenerate(s) {
            if perp.intersection(s)?.dim() != 0 {
                return Err(Error::Invariant("ideal meets its orthogonal".into()));
            }
            if self.algebra.bracket_of_subspaces(s, &perp)?.dim() != 0 {
                return Err(Error::Invariant("ideal does not commute with its orthogonal".into()));
            }
            if !self.algebra.is_ideal(&perp) {
                return Err(Error::Invariant("orthogonal of an ideal is not an ideal".into()));
            }
        }
        Ok(perp)
    }

    fn restriction_nondegenerate(&self, s: &Subspace) -> bool {
        let k = s.dim();
        let mut m = Matrix::zeros(k, k);
        for (a, u) in s.basis().iter().enumerate() {
            for (b, v) in s.basis().iter().enumerate() {
                m[(a, b)] = self.form.eval(u, v);
            }
        }
        m.rank() == k
    }

    /// A homogeneous even central line `Cz` with `B(z, z) != 0`, if the
    /// search finds one. `None` does not prove indecomposability.
    ///
    /// The search tries the center's echelon generators, then pairwise sums.
    pub fn find_nondegenerate_central_line(&self) -> Option<Subspace> {
        let n = self.dim();
        let m = self.algebra.basis().even_dim();
        let center = self.algebra.center();
        let even: Vec<&Vec<Scalar>> = center
            .basis()
            .iter()
            .filter(|v| v[m..].iter().all(Zero::is_zero))
            .collect();
        let mut candidates: Vec<Vec<Scalar>> = even.iter().map(|v| (*v).clone()).collect();
        for i in 0..even.len() {
            for j in i + 1..even.len() {
                candidates.push(even[i].iter().zip(even[j]).map(|(a, b)| a + b).collect());
            }
        }
        candidates
            .into_iter()
            .find(|z| !self.form.eval(z, z).is_zero())
            .map(|z| Subspace::span(n, vec![z]).expect("vector has algebra dimension"))
    }
}

/// Symplectic Gram–Schmidt on a non-degenerate skew Gram matrix `g`.
/// Returns `M` with columns `X^1..X^n, Y^1..Y^n` and `M^T g M = [[0, I], [-I, 0]]`.
pub fn symplectic_basis(g: &Matrix) -> Result<Matrix> {
    let q = g.rows();
    if !q.is_multiple_of(2) {
        return Err(Error::DegenerateForm(format!(
            "odd part has odd dimension {q}"
        )));
    }
    let n = q / 2;
    let form = |u: &[Scalar], v: &[Scalar]| -> Scalar {
        let gv = g.mul_vec(v).expect("square");
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    };
    let mut pool: Vec<Vec<Scalar>> = (0..q).map(|i| unit(q, i)).collect();
    let mut xs = Vec::with_capacity(n);
    let mut ys = Vec::with_capacity(n);
    for _ in 0..n {
        let pair = (0..pool.len())
            .flat_map(|i| (i + 1..pool.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !form(&pool[i], &pool[j]).is_zero());
        let Some((i, j)) = pair else {
            return Err(Error::DegenerateForm("B restricted to the odd part".into()));
        };
        let x = pool[i].clone();
        let s = form(&x, &pool[j]).recip();
        let y: Vec<Scalar> = pool[j].iter().map(|c| c * &s).collect();
        pool.remove(j);
        pool.remove(i);
        for w in pool.iter_mut() {
            // w - B(w, y) x + B(w, x) y is orthogonal to both x and y.
            let wy = form(w, &y);
            let wx = form(w, &x);
            for k in 0..q {
                w[k] = &w[k] - &wy * &x[k] + &wx * &y[k];
            }
        }
        xs.push(x);
        ys.push(y);
    }
    xs.extend(ys);
    Matrix::from_columns(&xs, q)
}

/// `[[0, I], [-I, 0]]` of size `2n`.
pub fn standard_symplectic(n: usize) -> Matrix {
    let mut j = Matrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        j[(i, n + i)] = Scalar::one();
        j[(n + i, i)] = -Scalar::one();
    }
    j
}
