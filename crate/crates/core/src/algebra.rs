//! Lie superalgebras given by structure constants on a graded basis.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(bit: u8) -> Option<Parity> {
        match bit {
            0 => Some(Parity::Even),
            1 => Some(Parity::Odd),
            _ => None,
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn plus(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit())
    }
}

/// `(-1)^{xy}` is negative exactly when both parities are odd.
pub fn koszul(x: Parity, y: Parity) -> bool {
    x.is_odd() && y.is_odd()
}

/// Labels and parities of a basis. Even vectors always precede odd ones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    labels: Vec<String>,
    parity: Vec<Parity>,
    even_dim: usize,
}

impl GradedBasis {
    pub fn new(labels: Vec<String>, parity: Vec<Parity>) -> Result<Self> {
        if labels.len() != parity.len() {
            return Err(Error::DimensionMismatch {
                expected: labels.len(),
                found: parity.len(),
            });
        }
        let even_dim = parity.iter().take_while(|p| !p.is_odd()).count();
        if parity[even_dim..].iter().any(|p| !p.is_odd()) {
            return Err(Error::InvalidInput(
                "even basis vectors must be listed before odd ones".into(),
            ));
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() || labels[..i].contains(l) {
                return Err(Error::InvalidInput(format!("empty or duplicate label `{l}`")));
            }
        }
        Ok(GradedBasis {
            labels,
            parity,
            even_dim,
        })
    }

    /// Convenience constructor from label slices.
    pub fn from_labels(even: &[&str], odd: &[&str]) -> Result<Self> {
        let labels = even.iter().chain(odd).map(|s| s.to_string()).collect();
        let parity = std::iter::repeat_n(Parity::Even, even.len())
            .chain(std::iter::repeat_n(Parity::Odd, odd.len()))
            .collect();
        Self::new(labels, parity)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn even_dim(&self) -> usize {
        self.even_dim
    }

    pub fn odd_dim(&self) -> usize {
        self.dim() - self.even_dim
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Shape used to detect mixing of cochains over different bases.
    pub fn shape(&self) -> (usize, usize) {
        (self.even_dim, self.odd_dim())
    }
}

/// Sparse coordinate vector: basis index → nonzero coefficient.
pub type SparseVec = BTreeMap<usize, Scalar>;

fn add_term(v: &mut SparseVec, k: usize, c: Scalar) {
    if c.is_zero() {
        return;
    }
    let entry = v.entry(k).or_insert_with(Scalar::zero);
    *entry += c;
    if entry.is_zero() {
        v.remove(&k);
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Axiom {
    Grading,
    SkewSupersymmetry,
    SuperJacobi,
    FormSupersymmetry,
    FormEvenness,
    Invariance,
    NonDegeneracy,
    Superderivation,
    SkewSupersymmetricDerivation,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::Grading => "grading",
            Axiom::SkewSupersymmetry => "skew-supersymmetry",
            Axiom::SuperJacobi => "super Jacobi identity",
            Axiom::FormSupersymmetry => "supersymmetry of B",
            Axiom::FormEvenness => "evenness of B",
            Axiom::Invariance => "invariance of B",
            Axiom::NonDegeneracy => "non-degeneracy of B",
            Axiom::Superderivation => "superderivation rule",
            Axiom::SkewSupersymmetricDerivation => "skew-supersymmetry of D",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    /// Basis indices of the witness (pair or triple).
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: Axiom, witness: Vec<usize>, detail: String) {
        self.violations.push(Violation {
            axiom,
            witness,
            detail,
        });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// A Lie superalgebra `[e_i, e_j] = Σ c_ij^k e_k`.
///
/// Only pairs with `i <= j` are stored; `[e_j, e_i]` follows from
/// skew-supersymmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieSuperalgebra {
    name: String,
    basis: GradedBasis,
    constants: BTreeMap<(usize, usize), SparseVec>,
}

impl LieSuperalgebra {
    pub fn new(name: impl Into<String>, basis: GradedBasis) -> Self {
        LieSuperalgebra {
            name: name.into(),
            basis,
            constants: BTreeMap::new(),
        }
    }

    /// Abelian algebra with `p` even and `q` odd basis vectors.
    pub fn abelian(p: usize, q: usize) -> Self {
        let even: Vec<String> = (0..p).map(|i| format!("E{}", i + 1)).collect();
        let odd: Vec<String> = (0..q).map(|i| format!("O{}", i + 1)).collect();
        let e: Vec<&str> = even.iter().map(String::as_str).collect();
        let o: Vec<&str> = odd.iter().map(String::as_str).collect();
        let basis = GradedBasis::from_labels(&e, &o).expect("generated labels are distinct");
        LieSuperalgebra::new(format!("abelian_{p}_{q}"), basis)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn basis(&self) -> &GradedBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis.parity(i)
    }

    /// Sets `[e_i, e_j]`; for `i > j` the value is converted to the stored
    /// `[e_j, e_i]` by skew-supersymmetry. Replaces any previous value.
    pub fn set_bracket(&mut self, i: usize, j: usize, terms: &[(usize, Scalar)]) -> Result<()> {
        let n = self.dim();
        if i >= n || j >= n || terms.iter().any(|(k, _)| *k >= n) {
            return Err(Error::InvalidInput(format!(
                "bracket index out of range for dimension {n}"
            )));
        }
        let flip = i > j;
        let neg = flip && !koszul(self.parity(i), self.parity(j));
        let mut v = SparseVec::new();
        for (k, c) in terms {
            let c = if neg { -c.clone() } else { c.clone() };
            add_term(&mut v, *k, c);
        }
        let key = if flip { (j, i) } else { (i, j) };
        if v.is_empty() {
            self.constants.remove(&key);
        } else {
            self.constants.insert(key, v);
        }
        Ok(())
    }

    /// Builder form of [`set_bracket`](Self::set_bracket).
    pub fn with_bracket(mut self, i: usize, j: usize, terms: &[(usize, Scalar)]) -> Result<Self> {
        self.set_bracket(i, j, terms)?;
        Ok(self)
    }

    /// Stored entries `(i, j) -> [e_i, e_j]` with `i <= j`.
    pub fn stored_brackets(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.constants.iter()
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// `[e_i, e_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> SparseVec {
        if i <= j {
            return self.constants.get(&(i, j)).cloned().unwrap_or_default();
        }
        let Some(v) = self.constants.get(&(j, i)) else {
            return SparseVec::new();
        };
        if koszul(self.parity(i), self.parity(j)) {
            v.clone()
        } else {
            v.iter().map(|(k, c)| (*k, -c.clone())).collect()
        }
    }

    /// Coefficient `c_ij^k`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Scalar {
        self.bracket_basis(i, j).remove(&k).unwrap_or_else(Scalar::zero)
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        let n = self.dim();
        for v in [x, y] {
            if v.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (k, c) in self.bracket_basis(i, j) {
                    out[k] += xi * yj * c;
                }
            }
        }
        Ok(out)
    }

    /// Bracket of sparse vectors.
    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (i, xi) in x {
            for (j, yj) in y {
                for (k, c) in self.bracket_basis(*i, *j) {
                    add_term(&mut out, k, xi * yj * c);
                }
            }
        }
        out
    }

    /// Matrix of `ad(x)`; column `j` holds `[x, e_j]`.
    pub fn ad(&self, x: &[Scalar]) -> Result<Matrix> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let col = self.bracket(x, &unit(n, j))?;
            for (k, c) in col.into_iter().enumerate() {
                m[(k, j)] = c;
            }
        }
        Ok(m)
    }

    pub fn ad_basis(&self, i: usize) -> Matrix {
        self.ad(&unit(self.dim(), i)).expect("unit vector has algebra dimension")
    }

    /// Grading and skew-supersymmetry over all basis pairs.
    pub fn validate_grading_and_skew(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for (&(i, j), v) in &self.constants {
            let target = self.parity(i).plus(self.parity(j));
            for (k, c) in v {
                if self.parity(*k) != target {
                    report.push(
                        Axiom::Grading,
                        vec![i, j],
                        format!(
                            "[{}, {}] has a component {} on {} of the wrong parity",
                            self.basis.label(i),
                            self.basis.label(j),
                            crate::scalar::format(c),
                            self.basis.label(*k)
                        ),
                    );
                }
            }
            // The only skew condition not enforced by storage: [e, e] = 0 for even e.
            if i == j && !self.parity(i).is_odd() {
                report.push(
                    Axiom::SkewSupersymmetry,
                    vec![i, i],
                    format!("[{0}, {0}] must vanish for an even vector", self.basis.label(i)),
                );
            }
        }
        report
    }

    /// Every basis triple violating the super Jacobi identity.
    pub fn validate_super_jacobi(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim();
        let p: Vec<Parity> = (0..n).map(|i| self.parity(i)).collect();
        let term = |a: usize, b: usize, c: usize, neg: bool, acc: &mut SparseVec| {
            let ab = self.bracket_basis(a, b);
            for (k, coef) in ab {
                for (l, d) in self.bracket_basis(k, c) {
                    let v = &coef * d;
                    add_term(acc, l, if neg { -v } else { v });
                }
            }
        };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut acc = SparseVec::new();
                    term(i, j, k, koszul(p[k], p[i]), &mut acc);
                    term(j, k, i, koszul(p[i], p[j]), &mut acc);
                    term(k, i, j, koszul(p[j], p[k]), &mut acc);
                    if !acc.is_empty() {
                        report.push(
                            Axiom::SuperJacobi,
                            vec![i, j, k],
                            format!(
                                "super Jacobi fails on ({}, {}, {})",
                                self.basis.label(i),
                                self.basis.label(j),
                                self.basis.label(k)
                            ),
                        );
                    }
                }
            }
        }
        report
    }

    pub fn validate(&self) -> ValidationReport {
        let mut r = self.validate_grading_and_skew();
        r.extend(self.validate_super_jacobi());
        r
    }

    /// Span of `[a, b]` for `a` in `x`, `b` in `y`.
    pub fn bracket_of_subspaces(&self, x: &Subspace, y: &Subspace) -> Result<Subspace> {
        let mut vecs = Vec::new();
        for a in x.basis() {
            for b in y.basis() {
                let v = self.bracket(a, b)?;
                if v.iter().any(|c| !c.is_zero()) {
                    vecs.push(v);
                }
            }
        }
        Subspace::span(self.dim(), vecs)
    }

    /// `g ⊇ [g,g] ⊇ ...`, stopping at the first repeated term.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut series = vec![Subspace::full(self.dim())];
        loop {
            let last = series.last().expect("series is never empty");
            let next = self
                .bracket_of_subspaces(last, last)
                .expect("subspaces share the algebra dimension");
            if next.dim() == last.dim() {
                return series;
            }
            let done = next.dim() == 0;
            series.push(next);
            if done {
                return series;
            }
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().is_some_and(|s| s.dim() == 0)
    }

    /// `{z : [z, e_j] = 0 for all j}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        // Row (j, k), column i: c_ij^k.
        let mut m = Matrix::zeros(n * n, n);
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m[(j * n + k, i)] = c;
                }
            }
        }
        Subspace::span(n, m.nullspace()).expect("nullspace vectors have algebra dimension")
    }

    /// Same algebra on the reordered basis whose `k`-th vector is the old
    /// `order[k]`. The result must still list even vectors first.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let n = self.dim();
        let mut inverse = vec![usize::MAX; n];
        for (k, &old) in order.iter().enumerate() {
            if old >= n || inverse[old] != usize::MAX {
                return Err(Error::InvalidInput("reordering is not a permutation".into()));
            }
            inverse[old] = k;
        }
        if order.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: order.len(),
            });
        }
        let basis = GradedBasis::new(
            order.iter().map(|&o| self.basis.label(o).to_string()).collect(),
            order.iter().map(|&o| self.parity(o)).collect(),
        )?;
        let mut out = LieSuperalgebra::new(self.name.clone(), basis);
        for (&(i, j), v) in &self.constants {
            let terms: Vec<(usize, Scalar)> =
                v.iter().map(|(k, c)| (inverse[*k], c.clone())).collect();
            out.set_bracket(inverse[i], inverse[j], &terms)?;
        }
        Ok(out)
    }

    /// Whether `s` is closed under bracketing with all of `g`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        let n = self.dim();
        s.basis().iter().all(|v| {
            (0..n).all(|j| {
                let w = self.bracket(v, &unit(n, j)).expect("dimensions agree");
                s.contains(&w)
            })
        })
    }
}

/// The `i`-th standard coordinate vector.
pub fn unit(n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn heisenberg3() -> LieSuperalgebra {
        let b = GradedBasis::from_labels(&["Z", "X1", "X2"], &[]).unwrap();
        LieSuperalgebra::new("h3", b)
            .with_bracket(1, 2, &[(0, int(1))])
            .unwrap()
    }

    #[test]
    fn basis_rejects_interleaved_parities() {
        let r = GradedBasis::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![Parity::Even, Parity::Odd, Parity::Even],
        );
        assert!(r.is_err());
    }

    #[test]
    fn reversed_bracket_uses_skew_sign() {
        let h = heisenberg3();
        assert_eq!(h.structure_constant(2, 1, 0), int(-1));
        let mut g = LieSuperalgebra::abelian(1, 2);
        g.set_bracket(2, 1, &[(0, int(3))]).unwrap();
        // odd-odd brackets are symmetric
        assert_eq!(g.structure_constant(1, 2, 0), int(3));
    }

    #[test]
    fn heisenberg_center_and_series() {
        let h = heisenberg3();
        assert!(h.validate().is_ok());
        let z = h.center();
        assert_eq!(z.dim(), 1);
        assert!(z.contains(&unit(3, 0)));
        let s = h.derived_series();
        assert_eq!(s.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 1, 0]);
    }

    #[test]
    fn grading_violation_detected() {
        let mut g = LieSuperalgebra::abelian(2, 1);
        g.set_bracket(0, 1, &[(2, int(1))]).unwrap();
        let r = g.validate_grading_and_skew();
        assert_eq!(r.first().unwrap().axiom, Axiom::Grading);
    }
}
