//! Superderivations and double extensions of quadratic Lie superalgebras.
//!
//! A double extension of `(g, B)` by `(h, γ)` through `ψ : h → Der_a(g, B)`
//! lives on `h ⊕ g ⊕ h*`. The basis is first laid out as `(h, g, h*)` and then
//! stably split into even vectors followed by odd ones, as [`GradedBasis`]
//! requires. Each `h*` vector `f_b` is dual to `h_b` and has the same parity.

use num_traits::{One, Zero};

use crate::algebra::{
    koszul, unit, Axiom, GradedBasis, LieSuperalgebra, Parity, ValidationReport,
};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::quadratic::{BilinearForm, QuadraticLieSuperalgebra};
use crate::scalar::{self, Scalar};

/// A homogeneous linear endomorphism; column `j` is `D(e_j)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Superderivation {
    pub matrix: Matrix,
    pub degree: Parity,
}

impl Superderivation {
    pub fn new(matrix: Matrix, degree: Parity) -> Self {
        Superderivation { matrix, degree }
    }

    pub fn apply(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.matrix.mul_vec(x).expect("vector has derivation dimension")
    }

    /// `[D, D'] = DD' − (−1)^{αα'} D'D`.
    pub fn supercommutator(&self, other: &Superderivation) -> Result<Superderivation> {
        let ab = self.matrix.mul(&other.matrix)?;
        let ba = other.matrix.mul(&self.matrix)?;
        let m = if koszul(self.degree, other.degree) {
            ab.add(&ba)?
        } else {
            ab.sub(&ba)?
        };
        Ok(Superderivation::new(m, self.degree.plus(other.degree)))
    }
}

fn check_square(g: &LieSuperalgebra, d: &Matrix) -> Result<()> {
    if d.rows() != g.dim() || d.cols() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: d.rows().max(d.cols()),
        });
    }
    Ok(())
}

/// Violations of the block structure and of
/// `D[X, Y] = [DX, Y] + (−1)^{αx}[X, DY]` over basis pairs.
pub fn is_superderivation(g: &LieSuperalgebra, d: &Matrix, alpha: Parity) -> Result<ValidationReport> {
    check_square(g, d)?;
    let n = g.dim();
    let label = |i: usize| g.basis().label(i).to_string();
    let mut report = ValidationReport::default();
    for j in 0..n {
        for k in 0..n {
            if g.parity(k) != g.parity(j).plus(alpha) && !d[(k, j)].is_zero() {
                report.push(
                    Axiom::Grading,
                    vec![k, j],
                    format!("D({}) has a component on {} of the wrong parity", label(j), label(k)),
                );
            }
        }
    }
    let cols: Vec<Vec<Scalar>> = (0..n).map(|j| d.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let ei = unit(n, i);
            let ej = unit(n, j);
            let lhs = d.mul_vec(&g.bracket(&ei, &ej)?)?;
            let a = g.bracket(&cols[i], &ej)?;
            let b = g.bracket(&ei, &cols[j])?;
            let neg = koszul(alpha, g.parity(i));
            let ok = (0..n).all(|k| {
                let rhs = if neg { &a[k] - &b[k] } else { &a[k] + &b[k] };
                lhs[k] == rhs
            });
            if !ok {
                report.push(
                    Axiom::Superderivation,
                    vec![i, j],
                    format!("Leibniz rule fails on ({}, {})", label(i), label(j)),
                );
            }
        }
    }
    Ok(report)
}

/// Violations of `B(DX, Y) = −(−1)^{αx} B(X, DY)` over basis pairs.
pub fn is_skew_supersymmetric(
    q: &QuadraticLieSuperalgebra,
    d: &Matrix,
    alpha: Parity,
) -> Result<ValidationReport> {
    check_square(&q.algebra, d)?;
    let n = q.dim();
    let mut report = ValidationReport::default();
    for i in 0..n {
        let di = d.column(i);
        for j in 0..n {
            let dj = d.column(j);
            let lhs = q.form.eval(&di, &unit(n, j));
            let rhs = q.form.eval(&unit(n, i), &dj);
            let sum = if koszul(alpha, q.algebra.parity(i)) {
                lhs - rhs
            } else {
                lhs + rhs
            };
            if !sum.is_zero() {
                report.push(
                    Axiom::SkewSupersymmetricDerivation,
                    vec![i, j],
                    format!(
                        "B(D{0}, {1}) and B({0}, D{1}) are not skew-related",
                        q.algebra.basis().label(i),
                        q.algebra.basis().label(j)
                    ),
                );
            }
        }
    }
    Ok(report)
}

/// Basis of `Der_a(g, B)` in degree `alpha`: the joint kernel of the
/// Leibniz and skew-supersymmetry constraints, in reduced echelon order.
pub fn skew_superderivation_space(
    q: &QuadraticLieSuperalgebra,
    alpha: Parity,
) -> Result<Vec<Superderivation>> {
    let g = &q.algebra;
    let n = g.dim();
    // Unknown D[k][i] for every admissible (k, i).
    let mut slot = vec![vec![None; n]; n];
    let mut count = 0;
    for k in 0..n {
        for i in 0..n {
            if g.parity(k) == g.parity(i).plus(alpha) {
                slot[k][i] = Some(count);
                count += 1;
            }
        }
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    let zero_row = || vec![Scalar::zero(); count];
    for i in 0..n {
        for j in 0..n {
            let neg = koszul(alpha, g.parity(i));
            let eij = g.bracket_basis(i, j);
            // Component l of D[e_i,e_j] − [De_i,e_j] − (−1)^{αx_i}[e_i,De_j].
            let mut eqs: Vec<Vec<Scalar>> = (0..n).map(|_| zero_row()).collect();
            for (m, c) in &eij {
                for l in 0..n {
                    if let Some(s) = slot[l][*m] {
                        eqs[l][s] += c;
                    }
                }
            }
            for k in 0..n {
                if let Some(s) = slot[k][i] {
                    for (l, c) in g.bracket_basis(k, j) {
                        eqs[l][s] -= c;
                    }
                }
                if let Some(s) = slot[k][j] {
                    for (l, c) in g.bracket_basis(i, k) {
                        if neg {
                            eqs[l][s] += c;
                        } else {
                            eqs[l][s] -= c;
                        }
                    }
                }
            }
            rows.extend(eqs.into_iter().filter(|r| r.iter().any(|x| !x.is_zero())));
            // B(De_i, e_j) + (−1)^{αx_i} B(e_i, De_j) = 0.
            let mut eq = zero_row();
            for k in 0..n {
                if let Some(s) = slot[k][i] {
                    eq[s] += q.form.entry(k, j);
                }
                if let Some(s) = slot[k][j] {
                    let b = q.form.entry(i, k);
                    if neg {
                        eq[s] -= b;
                    } else {
                        eq[s] += b;
                    }
                }
            }
            if eq.iter().any(|x| !x.is_zero()) {
                rows.push(eq);
            }
        }
    }
    let kernel = if rows.is_empty() {
        Matrix::identity(count).to_rows()
    } else {
        Matrix::from_rows_with_cols(rows, count)?.nullspace()
    };
    let space = Subspace::span(count, kernel)?;
    Ok(space
        .basis()
        .iter()
        .map(|v| {
            let mut m = Matrix::zeros(n, n);
            for k in 0..n {
                for i in 0..n {
                    if let Some(s) = slot[k][i] {
                        m[(k, i)] = v[s].clone();
                    }
                }
            }
            Superderivation::new(m, alpha)
        })
        .collect())
}

/// Whether `d` lies in the span of `space`.
pub fn in_span(space: &[Superderivation], d: &Matrix) -> bool {
    let flat = |m: &Matrix| -> Vec<Scalar> { m.to_rows().into_iter().flatten().collect() };
    let len = d.rows() * d.cols();
    match Subspace::span(len, space.iter().map(|s| flat(&s.matrix)).collect()) {
        Ok(s) => s.contains(&flat(d)),
        Err(_) => false,
    }
}

/// Input of [`double_extension`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    pub base: QuadraticLieSuperalgebra,
    pub h: LieSuperalgebra,
    /// Even, supersymmetric, invariant form on `h`; may be zero.
    pub gamma: BilinearForm,
    /// `psi[a] = ψ(h_a)`, of degree `parity(h_a)`.
    pub psi: Vec<Superderivation>,
    /// Labels of the dual vectors `f_a`.
    pub dual_labels: Vec<String>,
}

impl ExtensionDatum {
    /// Dual vectors labelled `<label>*`.
    pub fn new(
        base: QuadraticLieSuperalgebra,
        h: LieSuperalgebra,
        gamma: BilinearForm,
        psi: Vec<Superderivation>,
    ) -> Self {
        let dual_labels = h.basis().labels().iter().map(|l| format!("{l}*")).collect();
        ExtensionDatum {
            base,
            h,
            gamma,
            psi,
            dual_labels,
        }
    }

    /// Checks every hypothesis of the construction.
    pub fn validate(&self) -> Result<()> {
        let fail = |axiom: &str, detail: String| Error::InvalidDatum {
            axiom: axiom.to_string(),
            detail,
        };
        let p = self.h.dim();
        if self.psi.len() != p || self.gamma.dim() != p || self.dual_labels.len() != p {
            return Err(Error::DimensionMismatch {
                expected: p,
                found: self.psi.len(),
            });
        }
        if let Some(v) = self.base.validate_quadratic().first() {
            return Err(fail("quadratic base", v.detail.clone()));
        }
        if let Some(v) = self.h.validate().first() {
            return Err(fail("Lie superalgebra h", v.detail.clone()));
        }
        let hq = QuadraticLieSuperalgebra::new(self.h.clone(), self.gamma.clone())?;
        if let Some(v) = hq
            .validate_form()
            .violations
            .into_iter()
            .find(|v| v.axiom != Axiom::NonDegeneracy)
        {
            return Err(fail("form gamma", v.detail));
        }
        for (a, d) in self.psi.iter().enumerate() {
            let label = self.h.basis().label(a);
            if d.degree != self.h.parity(a) {
                return Err(fail(
                    "degree of psi",
                    format!("psi({label}) has degree {} but {label} has parity {}", d.degree, self.h.parity(a)),
                ));
            }
            if let Some(v) = is_superderivation(&self.base.algebra, &d.matrix, d.degree)?.first() {
                return Err(fail("superderivation", format!("psi({label}): {}", v.detail)));
            }
            if let Some(v) = is_skew_supersymmetric(&self.base, &d.matrix, d.degree)?.first() {
                return Err(fail("skew-supersymmetry", format!("psi({label}): {}", v.detail)));
            }
        }
        // ψ([h_a, h_b]) = [ψ(h_a), ψ(h_b)].
        for a in 0..p {
            for b in 0..p {
                let lhs = self
                    .h
                    .bracket_basis(a, b)
                    .iter()
                    .fold(Matrix::zeros(self.base.dim(), self.base.dim()), |acc, (c, x)| {
                        acc.add(&self.psi[*c].matrix.scale(x)).expect("same shape")
                    });
                let rhs = self.psi[a].supercommutator(&self.psi[b])?.matrix;
                if lhs != rhs {
                    return Err(fail(
                        "morphism",
                        format!(
                            "psi([{0}, {1}]) differs from [psi({0}), psi({1})]",
                            self.h.basis().label(a),
                            self.h.basis().label(b)
                        ),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// Stable split into evens then odds: returns the new order.
fn parity_order(parities: &[Parity]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..parities.len()).filter(|&i| !parities[i].is_odd()).collect();
    order.extend((0..parities.len()).filter(|&i| parities[i].is_odd()));
    order
}

/// Builds a quadratic Lie superalgebra on a basis that may interleave
/// parities, then sorts evens first.
struct Layout {
    labels: Vec<String>,
    parities: Vec<Parity>,
    brackets: Vec<(usize, usize, Vec<(usize, Scalar)>)>,
    form: Vec<(usize, usize, Scalar)>,
}

impl Layout {
    fn finish(self, name: &str) -> Result<QuadraticLieSuperalgebra> {
        let order = parity_order(&self.parities);
        let mut inverse = vec![0; order.len()];
        for (k, &o) in order.iter().enumerate() {
            inverse[o] = k;
        }
        let basis = GradedBasis::new(
            order.iter().map(|&o| self.labels[o].clone()).collect(),
            order.iter().map(|&o| self.parities[o]).collect(),
        )?;
        let mut g = LieSuperalgebra::new(name, basis);
        for (i, j, terms) in self.brackets {
            let t: Vec<(usize, Scalar)> = terms.into_iter().map(|(k, c)| (inverse[k], c)).collect();
            g.set_bracket(inverse[i], inverse[j], &t)?;
        }
        let mut b = BilinearForm::zero(g.dim());
        let pars = g.basis().parities().to_vec();
        for (i, j, v) in self.form {
            b.set(inverse[i], inverse[j], v, &pars);
        }
        QuadraticLieSuperalgebra::new(g, b)
    }
}

/// The double extension `h ⊕ g ⊕ h*`.
pub fn double_extension(d: &ExtensionDatum) -> Result<QuadraticLieSuperalgebra> {
    d.validate()?;
    let g = &d.base.algebra;
    let h = &d.h;
    let (p, n) = (h.dim(), g.dim());
    let hi = |a: usize| a;
    let gi = |j: usize| p + j;
    let fi = |b: usize| p + n + b;
    let mut labels: Vec<String> = h.basis().labels().to_vec();
    labels.extend(g.basis().labels().iter().cloned());
    labels.extend(d.dual_labels.iter().cloned());
    let mut parities: Vec<Parity> = h.basis().parities().to_vec();
    parities.extend(g.basis().parities());
    parities.extend(h.basis().parities());
    let z = |a: usize| h.parity(a);
    let x = |j: usize| g.parity(j);

    let mut brackets = Vec::new();
    for a in 0..p {
        for b in a..p {
            let t: Vec<_> = h.bracket_basis(a, b).into_iter().map(|(c, v)| (hi(c), v)).collect();
            brackets.push((hi(a), hi(b), t));
        }
        for j in 0..n {
            let col = d.psi[a].matrix.column(j);
            let t: Vec<_> = col
                .into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (gi(k), v))
                .collect();
            brackets.push((hi(a), gi(j), t));
        }
        // Coadjoint action: (π(h_a) f_b)(h_c) = −(−1)^{|a||b|} f_b([h_a, h_c]).
        for b in 0..p {
            let neg = !koszul(z(a), z(b));
            let t: Vec<_> = (0..p)
                .filter_map(|c| {
                    let v = h.structure_constant(a, c, b);
                    if v.is_zero() {
                        None
                    } else {
                        Some((fi(c), if neg { -v } else { v }))
                    }
                })
                .collect();
            brackets.push((hi(a), fi(b), t));
        }
    }
    for i in 0..n {
        for j in i..n {
            let mut t: Vec<_> = g.bracket_basis(i, j).into_iter().map(|(k, v)| (gi(k), v)).collect();
            // φ(e_i, e_j)(h_c) = (−1)^{(x_i + x_j) z_c} B(ψ(h_c) e_i, e_j).
            for c in 0..p {
                let v = d.base.form.eval(&d.psi[c].matrix.column(i), &unit(n, j));
                if v.is_zero() {
                    continue;
                }
                let neg = koszul(x(i).plus(x(j)), z(c));
                t.push((fi(c), if neg { -v } else { v }));
            }
            brackets.push((gi(i), gi(j), t));
        }
    }

    let mut form = Vec::new();
    for i in 0..n {
        for j in i..n {
            let v = d.base.form.entry(i, j).clone();
            if !v.is_zero() {
                form.push((gi(i), gi(j), v));
            }
        }
    }
    for a in 0..p {
        for b in a..p {
            let v = d.gamma.entry(a, b).clone();
            if !v.is_zero() {
                form.push((hi(a), hi(b), v));
            }
        }
        form.push((fi(a), hi(a), Scalar::one()));
    }
    let name = format!("double_extension({})", g.name());
    let out = Layout {
        labels,
        parities,
        brackets,
        form,
    }
    .finish(&name)?;
    if let Some(v) = out.validate_quadratic().first() {
        return Err(Error::Invariant(format!(
            "double extension violates {}: {}",
            v.axiom, v.detail
        )));
    }
    Ok(out)
}

/// Labels of the two added vectors in a one-dimensional double extension.
pub const DEFAULT_EXTENSION_LABELS: (&str, &str) = ("e", "f");

/// `[X, Y] = [X, Y]_g + B(DX, Y) f`, `[e, X] = DX`, `f` central,
/// `B̄(e, f) = 1`, on the basis `(e, g, f)` sorted evens first.
pub fn one_dim_double_extension(q: &QuadraticLieSuperalgebra, d: &Matrix) -> Result<QuadraticLieSuperalgebra> {
    one_dim_double_extension_labeled(q, d, DEFAULT_EXTENSION_LABELS)
}

pub fn one_dim_double_extension_labeled(
    q: &QuadraticLieSuperalgebra,
    d: &Matrix,
    labels: (&str, &str),
) -> Result<QuadraticLieSuperalgebra> {
    let fail = |axiom: &str, v: &crate::algebra::Violation| Error::InvalidDatum {
        axiom: axiom.to_string(),
        detail: v.detail.clone(),
    };
    if let Some(v) = is_superderivation(&q.algebra, d, Parity::Even)?.first() {
        return Err(fail("superderivation", v));
    }
    if let Some(v) = is_skew_supersymmetric(q, d, Parity::Even)?.first() {
        return Err(fail("skew-supersymmetry", v));
    }
    let g = &q.algebra;
    let n = g.dim();
    let (e, f) = (0, n + 1);
    let mut all_labels = vec![labels.0.to_string()];
    all_labels.extend(g.basis().labels().iter().cloned());
    all_labels.push(labels.1.to_string());
    let mut parities = vec![Parity::Even];
    parities.extend(g.basis().parities());
    parities.push(Parity::Even);
    let mut brackets = Vec::new();
    for j in 0..n {
        let t: Vec<_> = d
            .column(j)
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(k, v)| (k + 1, v))
            .collect();
        brackets.push((e, j + 1, t));
    }
    for i in 0..n {
        let di = d.column(i);
        for j in i..n {
            let mut t: Vec<_> = g.bracket_basis(i, j).into_iter().map(|(k, v)| (k + 1, v)).collect();
            let v = q.form.eval(&di, &unit(n, j));
            if !v.is_zero() {
                t.push((f, v));
            }
            brackets.push((i + 1, j + 1, t));
        }
    }
    let mut form = vec![(e, f, Scalar::one())];
    for i in 0..n {
        for j in i..n {
            let v = q.form.entry(i, j).clone();
            if !v.is_zero() {
                form.push((i + 1, j + 1, v));
            }
        }
    }
    Layout {
        labels: all_labels,
        parities,
        brackets,
        form,
    }
    .finish(&format!("one_dim_double_extension({})", g.name()))
}

/// The datum of a one-dimensional double extension for [`double_extension`].
pub fn one_dim_datum(
    q: &QuadraticLieSuperalgebra,
    d: &Matrix,
    labels: (&str, &str),
) -> Result<ExtensionDatum> {
    let h = LieSuperalgebra::new("line", GradedBasis::from_labels(&[labels.0], &[])?);
    Ok(ExtensionDatum {
        base: q.clone(),
        h,
        gamma: BilinearForm::zero(1),
        psi: vec![Superderivation::new(d.clone(), Parity::Even)],
        dual_labels: vec![labels.1.to_string()],
    })
}

/// Renders a derivation matrix row by row, for diagnostics.
pub fn format_matrix(m: &Matrix) -> String {
    (0..m.rows())
        .map(|r| {
            m.row(r)
                .iter()
                .map(scalar::format)
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::int;

    #[test]
    fn zero_map_is_a_derivation_of_both_degrees() {
        let q = catalog::g_6_1().unwrap();
        let z = Matrix::zeros(6, 6);
        assert!(is_superderivation(&q.algebra, &z, Parity::Even).unwrap().is_ok());
        assert!(is_superderivation(&q.algebra, &z, Parity::Odd).unwrap().is_ok());
    }

    #[test]
    fn inner_derivation_is_in_solved_space() {
        let q = catalog::g_4_1_s().unwrap();
        let space = skew_superderivation_space(&q, Parity::Even).unwrap();
        assert!(in_span(&space, &q.algebra.ad_basis(1)));
    }

    #[test]
    fn trivial_one_dim_extension_pairs_e_and_f() {
        let base = catalog::g_6_1().unwrap();
        let out = one_dim_double_extension(&base, &Matrix::zeros(6, 6)).unwrap();
        let e = out.algebra.basis().index_of("e").unwrap();
        let f = out.algebra.basis().index_of("f").unwrap();
        assert_eq!(out.form.entry(e, f), &int(1));
        assert!(out.validate_quadratic().is_ok());
    }

    #[test]
    fn invalid_datum_names_axiom() {
        let q = catalog::g_6_1().unwrap();
        let mut d = Matrix::zeros(6, 6);
        d[(0, 0)] = int(1);
        let err = one_dim_double_extension(&q, &d).unwrap_err();
        assert!(matches!(err, Error::InvalidDatum { .. }));
    }
}
