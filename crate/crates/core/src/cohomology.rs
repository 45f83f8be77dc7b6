//! Cohomology with trivial coefficients from exact differential matrices.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::LieSuperalgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Subspace};
use crate::scalar::Scalar;
use crate::superexterior::{differential_row, monomials_of_degree, Cochain, Monomial};

/// Refuse to build `C^k` above this many monomials unless told otherwise.
pub const DEFAULT_SIZE_LIMIT: usize = 200_000;

/// Ordered monomial basis of `C^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainBasis {
    pub degree: usize,
    pub shape: (usize, usize),
    pub monomials: Vec<Monomial>,
    index: BTreeMap<Monomial, usize>,
}

impl CochainBasis {
    pub fn new(shape: (usize, usize), degree: usize) -> Self {
        let monomials = monomials_of_degree(shape, degree);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        CochainBasis {
            degree,
            shape,
            monomials,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a cochain of this degree.
    pub fn coordinates(&self, c: &Cochain) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.len()];
        for (m, x) in c.terms() {
            let i = self.position(m).ok_or_else(|| {
                Error::InvalidInput(format!("cochain has a term outside degree {}", self.degree))
            })?;
            v[i] = x.clone();
        }
        Ok(v)
    }

    pub fn cochain(&self, coords: &[Scalar]) -> Cochain {
        let mut c = Cochain::zero(self.shape);
        for (m, x) in self.monomials.iter().zip(coords) {
            c.add_term(m.clone(), x.clone());
        }
        c
    }
}

/// `dim C^k = Σ_a C(m, a) · C(q + k − a − 1, k − a)`, without enumerating.
pub fn cochain_dimension(shape: (usize, usize), k: usize) -> usize {
    let (m, q) = shape;
    (0..=k.min(m))
        .map(|a| {
            let b = k - a;
            let sym = if b == 0 {
                1
            } else if q == 0 {
                0
            } else {
                binomial(q + b - 1, b)
            };
            binomial(m, a).saturating_mul(sym)
        })
        .fold(0usize, usize::saturating_add)
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > usize::MAX as u128 {
            return usize::MAX;
        }
    }
    acc as usize
}

fn guard(shape: (usize, usize), k: usize, limit: usize) -> Result<()> {
    let dim = cochain_dimension(shape, k);
    if dim > limit {
        return Err(Error::ResourceLimit {
            degree: k,
            dim,
            limit,
        });
    }
    Ok(())
}

/// `δ_k : C^k → C^{k+1}`; rows index `C^{k+1}`, columns `C^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferentialMatrix {
    pub degree: usize,
    pub matrix: Matrix,
}

pub fn differential_matrix(g: &LieSuperalgebra, k: usize) -> Result<DifferentialMatrix> {
    differential_matrix_with_limit(g, k, DEFAULT_SIZE_LIMIT)
}

pub fn differential_matrix_with_limit(
    g: &LieSuperalgebra,
    k: usize,
    limit: usize,
) -> Result<DifferentialMatrix> {
    let shape = g.basis().shape();
    guard(shape, k, limit)?;
    guard(shape, k + 1, limit)?;
    let source = CochainBasis::new(shape, k);
    let target = CochainBasis::new(shape, k + 1);
    let mut matrix = Matrix::zeros(target.len(), source.len());
    for (r, t) in target.monomials.iter().enumerate() {
        for (mono, w) in differential_row(g, t) {
            let c = source
                .position(&mono)
                .ok_or_else(|| Error::Invariant("δ produced a monomial of the wrong degree".into()))?;
            matrix[(r, c)] = w;
        }
    }
    Ok(DifferentialMatrix { degree: k, matrix })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub betti: usize,
    pub representatives: Vec<Cochain>,
}

/// Cocycles, coboundaries and a basis of the quotient in one degree.
#[derive(Clone, Debug)]
pub struct CohomologySpaces {
    pub basis: CochainBasis,
    pub cocycles: Subspace,
    pub coboundaries: Subspace,
}

impl CohomologySpaces {
    pub fn compute(g: &LieSuperalgebra, k: usize, limit: usize) -> Result<Self> {
        let shape = g.basis().shape();
        guard(shape, k, limit)?;
        let basis = CochainBasis::new(shape, k);
        let n = basis.len();
        let dk = differential_matrix_with_limit(g, k, limit)?.matrix;
        let cocycles = Subspace::span(n, dk.nullspace())?;
        let coboundaries = if k == 0 {
            Subspace::zero(n)
        } else {
            let prev = differential_matrix_with_limit(g, k - 1, limit)?.matrix;
            let cols: Vec<Vec<Scalar>> = (0..prev.cols()).map(|c| prev.column(c)).collect();
            let b = Subspace::span(n, cols)?;
            if b.dim() != prev.rank_fraction_free() {
                return Err(Error::Invariant("rank routes disagree on δ".into()));
            }
            b
        };
        if dk.rank_fraction_free() + cocycles.dim() != n {
            return Err(Error::Invariant("rank-nullity fails for δ".into()));
        }
        if !cocycles.contains_subspace(&coboundaries) {
            return Err(Error::Invariant("a coboundary is not a cocycle".into()));
        }
        Ok(CohomologySpaces {
            basis,
            cocycles,
            coboundaries,
        })
    }

    /// Echelon rows of the cocycle space that enlarge the coboundary span.
    pub fn representatives(&self) -> Result<Vec<Cochain>> {
        let mut span = self.coboundaries.clone();
        let mut reps = Vec::new();
        for z in self.cocycles.basis() {
            if !span.contains(z) {
                span = span.sum(&Subspace::span(span.ambient(), vec![z.clone()])?)?;
                reps.push(self.basis.cochain(z));
            }
        }
        Ok(reps)
    }

    pub fn is_cocycle(&self, c: &Cochain) -> Result<bool> {
        Ok(self.cocycles.contains(&self.basis.coordinates(c)?))
    }

    pub fn is_coboundary(&self, c: &Cochain) -> Result<bool> {
        Ok(self.coboundaries.contains(&self.basis.coordinates(c)?))
    }

    /// True when `c` is a cocycle whose class is non-zero.
    pub fn is_nonzero_class(&self, c: &Cochain) -> Result<bool> {
        Ok(self.is_cocycle(c)? && !self.is_coboundary(c)?)
    }

    /// Dimension of the span of the given classes in cohomology.
    pub fn class_rank(&self, cs: &[Cochain]) -> Result<usize> {
        let mut vecs: Vec<Vec<Scalar>> = self.coboundaries.basis().to_vec();
        for c in cs {
            vecs.push(self.basis.coordinates(c)?);
        }
        Ok(Subspace::span(self.basis.len(), vecs)?.dim() - self.coboundaries.dim())
    }
}

pub fn cohomology(g: &LieSuperalgebra, k: usize) -> Result<CohomologyResult> {
    cohomology_with_limit(g, k, DEFAULT_SIZE_LIMIT)
}

pub fn cohomology_with_limit(g: &LieSuperalgebra, k: usize, limit: usize) -> Result<CohomologyResult> {
    let s = CohomologySpaces::compute(g, k, limit)?;
    let representatives = s.representatives()?;
    let betti = s.cocycles.dim() - s.coboundaries.dim();
    if representatives.len() != betti {
        return Err(Error::Invariant("representative count differs from the Betti number".into()));
    }
    Ok(CohomologyResult {
        degree: k,
        dim_cochains: s.basis.len(),
        dim_cocycles: s.cocycles.dim(),
        dim_coboundaries: s.coboundaries.dim(),
        betti,
        representatives,
    })
}

/// Results for `k = 0..=k_max`.
pub fn betti_table(g: &LieSuperalgebra, k_max: usize) -> Result<Vec<CohomologyResult>> {
    betti_table_with_limit(g, k_max, DEFAULT_SIZE_LIMIT)
}

pub fn betti_table_with_limit(
    g: &LieSuperalgebra,
    k_max: usize,
    limit: usize,
) -> Result<Vec<CohomologyResult>> {
    // Fail before any work if the top degree is out of reach.
    guard(g.basis().shape(), k_max + 1, limit)?;
    (0..=k_max).map(|k| cohomology_with_limit(g, k, limit)).collect()
}

/// Machine-readable form of a [`CohomologyResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub betti: usize,
    pub representatives: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub schema: u32,
    pub algebra: String,
    pub degrees: Vec<DegreeReport>,
}

impl CohomologyReport {
    pub fn new(algebra: &str, results: &[CohomologyResult]) -> Self {
        CohomologyReport {
            schema: 1,
            algebra: algebra.to_string(),
            degrees: results
                .iter()
                .map(|r| DegreeReport {
                    degree: r.degree,
                    dim_cochains: r.dim_cochains,
                    dim_cocycles: r.dim_cocycles,
                    dim_coboundaries: r.dim_coboundaries,
                    betti: r.betti,
                    representatives: r.representatives.iter().map(Cochain::render).collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_dimension_matches_enumeration() {
        for shape in [(0, 0), (2, 2), (2, 4), (6, 2), (3, 0), (0, 3)] {
            for k in 0..5 {
                assert_eq!(
                    cochain_dimension(shape, k),
                    monomials_of_degree(shape, k).len(),
                    "{shape:?} {k}"
                );
            }
        }
    }

    #[test]
    fn abelian_betti_equals_cochain_dimension() {
        let g = LieSuperalgebra::abelian(2, 1);
        for r in betti_table(&g, 3).unwrap() {
            assert_eq!(r.betti, r.dim_cochains);
        }
    }

    #[test]
    fn guard_names_offending_degree() {
        let g = LieSuperalgebra::abelian(2, 3);
        let e = betti_table_with_limit(&g, 4, 10).unwrap_err();
        assert!(matches!(e, Error::ResourceLimit { degree: 5, .. }));
    }
}
