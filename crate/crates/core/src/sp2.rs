//! The symplectic Lie algebra `sp(2)` of traceless 2×2 matrices.
//!
//! `((a, b), (c, −a)) = aH + bX + cY` with `[H, X] = 2X`, `[H, Y] = −2Y`,
//! `[X, Y] = H`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sp2Element {
    pub a: Scalar,
    pub b: Scalar,
    pub c: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sp2Class {
    Zero,
    Nilpotent,
    /// Eigenvalues `±√discriminant`.
    Semisimple { discriminant: Scalar },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Dependence {
    /// `mu·A + nu·B = 0` with `(mu, nu) != 0`.
    Dependent { mu: Scalar, nu: Scalar },
    Counterexample,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenRelation {
    pub semisimple_half: bool,
    pub b_nilpotent: bool,
}

/// `P` with `P⁻¹ A P` diagonal or strictly upper triangular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Zero,
    Diagonal { eigenvalue: Scalar, change_of_basis: Matrix },
    UpperNilpotent { change_of_basis: Matrix },
    /// The discriminant is not a rational square.
    IrrationalEigenvalues { discriminant: Scalar },
}

impl Sp2Element {
    pub fn new(a: Scalar, b: Scalar, c: Scalar) -> Self {
        Sp2Element { a, b, c }
    }

    pub fn zero() -> Self {
        Self::new(Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    pub fn h() -> Self {
        Self::new(Scalar::one(), Scalar::zero(), Scalar::zero())
    }

    pub fn x() -> Self {
        Self::new(Scalar::zero(), Scalar::one(), Scalar::zero())
    }

    pub fn y() -> Self {
        Self::new(Scalar::zero(), Scalar::zero(), Scalar::one())
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: m.rows(),
            });
        }
        if !(&m[(0, 0)] + &m[(1, 1)]).is_zero() {
            return Err(Error::InvalidInput("sp(2) elements are traceless".into()));
        }
        Ok(Self::new(m[(0, 0)].clone(), m[(0, 1)].clone(), m[(1, 0)].clone()))
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix::from_rows(vec![
            vec![self.a.clone(), self.b.clone()],
            vec![self.c.clone(), -self.a.clone()],
        ])
        .expect("2x2")
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::new(&self.a * s, &self.b * s, &self.c * s)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(&self.a + &o.a, &self.b + &o.b, &self.c + &o.c)
    }

    /// `a² + bc`, the square of the eigenvalues.
    pub fn discriminant(&self) -> Scalar {
        &self.a * &self.a + &self.b * &self.c
    }

    pub fn classify(&self) -> Sp2Class {
        if self.is_zero() {
            return Sp2Class::Zero;
        }
        let d = self.discriminant();
        if d.is_zero() {
            Sp2Class::Nilpotent
        } else {
            Sp2Class::Semisimple { discriminant: d }
        }
    }

    /// `(bc′ − b′c)H + 2(ab′ − a′b)X − 2(ac′ − a′c)Y`.
    pub fn commutator(&self, o: &Self) -> Self {
        let two = scalar::int(2);
        Self::new(
            &self.b * &o.c - &o.b * &self.c,
            &two * (&self.a * &o.b - &o.a * &self.b),
            -(&two * (&self.a * &o.c - &o.a * &self.c)),
        )
    }

    /// `g A g⁻¹`.
    pub fn conjugate(&self, g: &Matrix) -> Result<Self> {
        let inv = g
            .inverse()
            .ok_or_else(|| Error::InvalidInput("conjugating matrix is singular".into()))?;
        Self::from_matrix(&g.mul(&self.to_matrix())?.mul(&inv)?)
    }

    /// Change of basis to a diagonal or strictly upper triangular form, when
    /// it exists over the rationals.
    pub fn normal_form(&self) -> NormalForm {
        match self.classify() {
            Sp2Class::Zero => NormalForm::Zero,
            Sp2Class::Nilpotent => {
                // First column: a kernel vector; second: any vector mapped onto it.
                let (v1, v2) = if !self.b.is_zero() || !self.a.is_zero() {
                    if !self.b.is_zero() {
                        // A e2 = (b, −a) spans the image = kernel.
                        ((self.b.clone(), -self.a.clone()), (Scalar::zero(), Scalar::one()))
                    } else {
                        // b = 0 forces a = 0 for a nilpotent element.
                        unreachable!("a² + bc = 0 with b = 0 gives a = 0")
                    }
                } else {
                    // Only c non-zero: A e1 = c e2.
                    ((Scalar::zero(), self.c.clone()), (Scalar::one(), Scalar::zero()))
                };
                let p = Matrix::from_rows(vec![vec![v1.0, v2.0], vec![v1.1, v2.1]]).expect("2x2");
                NormalForm::UpperNilpotent { change_of_basis: p }
            }
            Sp2Class::Semisimple { discriminant } => match scalar::rational_sqrt(&discriminant) {
                None => NormalForm::IrrationalEigenvalues { discriminant },
                Some(l) => {
                    let v1 = self.eigenvector(&l);
                    let v2 = self.eigenvector(&-l.clone());
                    let p = Matrix::from_rows(vec![
                        vec![v1.0, v2.0],
                        vec![v1.1, v2.1],
                    ])
                    .expect("2x2");
                    NormalForm::Diagonal {
                        eigenvalue: l,
                        change_of_basis: p,
                    }
                }
            },
        }
    }

    /// A non-zero vector in `ker(A − l)`, for an eigenvalue `l`.
    fn eigenvector(&self, l: &Scalar) -> (Scalar, Scalar) {
        // Rows (a − l, b) and (c, −a − l); take a non-zero row's orthogonal.
        let r1 = (&self.a - l, self.b.clone());
        if !r1.0.is_zero() || !r1.1.is_zero() {
            return (r1.1, -r1.0);
        }
        let r2 = (self.c.clone(), -&self.a - l);
        (r2.1, -r2.0)
    }
}

/// For commuting `A, B`, a rational `(μ, ν) ≠ 0` with `μA + νB = 0`.
pub fn check_commuting_dependence(a: &Sp2Element, b: &Sp2Element) -> Result<Dependence> {
    if !a.commutator(b).is_zero() {
        return Err(Error::Precondition("[A, B] must vanish".into()));
    }
    let av = [&a.a, &a.b, &a.c];
    let bv = [&b.a, &b.b, &b.c];
    let (mu, nu) = match bv.iter().position(|x| !x.is_zero()) {
        None => (Scalar::zero(), Scalar::one()),
        Some(k) => (bv[k].clone(), -av[k].clone()),
    };
    let combo = a.scale(&mu).add(&b.scale(&nu));
    if combo.is_zero() {
        Ok(Dependence::Dependent { mu, nu })
    } else {
        Ok(Dependence::Counterexample)
    }
}

/// For `B ≠ 0` with `[A, B] = B`: whether `A` has eigenvalues `±1/2` and
/// whether `B` is nilpotent.
pub fn check_eigenvector_relation(a: &Sp2Element, b: &Sp2Element) -> Result<EigenRelation> {
    if b.is_zero() {
        return Err(Error::Precondition("B must be non-zero".into()));
    }
    if a.commutator(b) != *b {
        return Err(Error::Precondition("[A, B] must equal B".into()));
    }
    Ok(EigenRelation {
        semisimple_half: a.discriminant() == scalar::ratio(1, 4),
        b_nilpotent: b.classify() == Sp2Class::Nilpotent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, ratio};

    #[test]
    fn basis_relations() {
        let (h, x, y) = (Sp2Element::h(), Sp2Element::x(), Sp2Element::y());
        assert_eq!(h.commutator(&x), x.scale(&int(2)));
        assert_eq!(h.commutator(&y), y.scale(&int(-2)));
        assert_eq!(x.commutator(&y), h);
    }

    #[test]
    fn commutator_matches_matrices() {
        let a = Sp2Element::new(int(1), int(2), int(3));
        let b = Sp2Element::new(ratio(1, 2), int(-1), int(4));
        let ma = a.to_matrix();
        let mb = b.to_matrix();
        let m = ma.mul(&mb).unwrap().sub(&mb.mul(&ma).unwrap()).unwrap();
        assert_eq!(Sp2Element::from_matrix(&m).unwrap(), a.commutator(&b));
    }

    #[test]
    fn classification_examples() {
        assert_eq!(Sp2Element::x().classify(), Sp2Class::Nilpotent);
        assert_eq!(Sp2Element::zero().classify(), Sp2Class::Zero);
        assert_eq!(
            Sp2Element::new(int(1), int(2), int(3)).classify(),
            Sp2Class::Semisimple { discriminant: int(7) }
        );
    }

    #[test]
    fn dependence_certificate_for_multiples() {
        let h = Sp2Element::h();
        let d = check_commuting_dependence(&h, &h.scale(&int(3))).unwrap();
        assert_eq!(d, Dependence::Dependent { mu: int(3), nu: int(-1) });
        assert!(check_commuting_dependence(&Sp2Element::x(), &Sp2Element::y()).is_err());
    }

    #[test]
    fn normal_forms_conjugate_correctly() {
        for a in [
            Sp2Element::new(int(0), int(0), int(5)),
            Sp2Element::new(int(2), int(4), int(-1)),
            Sp2Element::new(int(1), int(3), int(1)),
            Sp2Element::new(int(0), int(1), int(1)),
        ] {
            let m = a.to_matrix();
            match a.normal_form() {
                NormalForm::UpperNilpotent { change_of_basis: p } => {
                    let r = p.inverse().unwrap().mul(&m).unwrap().mul(&p).unwrap();
                    assert_eq!(r, Sp2Element::x().scale(&r[(0, 1)]).to_matrix());
                    assert!(!r[(0, 1)].is_zero());
                }
                NormalForm::Diagonal { eigenvalue, change_of_basis: p } => {
                    let r = p.inverse().unwrap().mul(&m).unwrap().mul(&p).unwrap();
                    assert_eq!(r, Sp2Element::h().scale(&eigenvalue).to_matrix());
                }
                other => panic!("unexpected {other:?}"),
            }
        }
        assert!(matches!(
            Sp2Element::new(int(1), int(2), int(3)).normal_form(),
            NormalForm::IrrationalEigenvalues { .. }
        ));
    }
}
