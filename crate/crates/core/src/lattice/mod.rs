//! Integral lattices given by Gram matrices, their isometries and twists.

mod glue;
pub mod io;
mod sublattice;

pub use glue::{GlueAction, GlueGroup, PrimeAction, SylowComponent, TorsionValue};
pub use sublattice::{is_primitive, orthogonal_complement, restricted_gram, Primitivity, Sublattice};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix};
use crate::poly::IntPoly;

/// A free Z-module with a nondegenerate symmetric integral bilinear form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    gram: IntMatrix,
    det: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeInvariants {
    pub rank: usize,
    pub even: bool,
    pub unimodular: bool,
    #[serde(serialize_with = "crate::report::ser_display")]
    pub det: BigInt,
    pub signature: (usize, usize),
}

impl Lattice {
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::NotSquare { rows: gram.rows(), cols: gram.cols() });
        }
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let det = linalg::det(&gram)?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Lattice { gram, det })
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn det(&self) -> &BigInt {
        &self.det
    }

    pub fn is_even(&self) -> bool {
        self.gram.diagonal().iter().all(|d| d.is_even())
    }

    pub fn is_unimodular(&self) -> bool {
        self.det.abs().is_one()
    }

    pub fn signature(&self) -> Result<(usize, usize)> {
        linalg::signature_symmetric(&self.gram)
    }

    pub fn invariants(&self) -> Result<LatticeInvariants> {
        Ok(LatticeInvariants {
            rank: self.rank(),
            even: self.is_even(),
            unimodular: self.is_unimodular(),
            det: self.det.clone(),
            signature: self.signature()?,
        })
    }

    /// b(x, y) for rational coordinate vectors.
    pub fn inner(&self, x: &[Rat], y: &[Rat]) -> Result<Rat> {
        self.gram.to_rat().bilinear(x, y)
    }

    pub fn inner_int(&self, x: &[BigInt], y: &[BigInt]) -> Result<BigInt> {
        self.gram.bilinear(x, y)
    }

    /// Whether a rational vector lies in the dual lattice.
    pub fn in_dual(&self, x: &[Rat]) -> Result<bool> {
        Ok(self.gram.to_rat().mul_vec(x)?.iter().all(|v| v.is_integer()))
    }

    pub fn glue_group(&self) -> GlueGroup {
        GlueGroup::of(self)
    }

    /// Gram matrix scaled by an integer.
    pub fn scaled(&self, s: &BigInt) -> Result<Lattice> {
        Lattice::new(self.gram.scale(s))
    }

    /// Orthogonal direct sum.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        Lattice { gram: self.gram.direct_sum(&other.gram), det: &self.det * &other.det }
    }

    /// gcd of all values b(x, x): the diagonal entries together with twice
    /// the off-diagonal entries.
    pub fn norm_gcd(&self) -> BigInt {
        let n = self.rank();
        let mut g = BigInt::zero();
        for i in 0..n {
            g = g.gcd(&self.gram[(i, i)]);
            for j in 0..i {
                g = g.gcd(&(&self.gram[(i, j)] * 2));
            }
        }
        g
    }
}

/// An integer matrix `M` (acting on column coordinate vectors) with
/// `Mᵀ·G·M = G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isometry {
    lattice: Lattice,
    matrix: IntMatrix,
}

pub fn check_isometry(lattice: &Lattice, m: &IntMatrix) -> Result<Isometry> {
    let n = lattice.rank();
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "isometry is {}x{}, lattice rank {n}",
            m.rows(),
            m.cols()
        )));
    }
    let d = linalg::det(m)?;
    if !d.abs().is_one() {
        return Err(Error::NotAnIsometry(format!("determinant {d} is not a unit")));
    }
    let pulled = m.transpose().mul(lattice.gram())?.mul(m)?;
    if &pulled != lattice.gram() {
        return Err(Error::NotAnIsometry("MᵀGM differs from G".into()));
    }
    Ok(Isometry { lattice: lattice.clone(), matrix: m.clone() })
}

impl Isometry {
    pub fn identity(lattice: &Lattice) -> Self {
        Isometry { lattice: lattice.clone(), matrix: IntMatrix::identity(lattice.rank()) }
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn charpoly(&self) -> IntPoly {
        linalg::charpoly(&self.matrix).expect("square by construction")
    }

    pub fn inverse_matrix(&self) -> IntMatrix {
        linalg::inverse(&self.matrix)
            .ok()
            .and_then(|m| m.to_int())
            .expect("unit determinant")
    }

    /// The same matrix viewed as an isometry of another lattice structure on
    /// the same module (e.g. a twist).
    pub fn on(&self, lattice: &Lattice) -> Result<Isometry> {
        check_isometry(lattice, &self.matrix)
    }

    pub fn induced_glue_action(&self) -> GlueAction {
        GlueAction::of(self)
    }

    /// The twist `L(a)` with `a = A(t)`: new form `b_a(x, y) = b(a·x, y)`,
    /// Gram matrix `A(t)ᵀ·G`.
    pub fn twist(&self, a: &IntPoly) -> Result<Lattice> {
        let am = linalg::poly_at_matrix(a, &self.matrix)?;
        let g = self.lattice.gram();
        // a must be self-adjoint for b and commute with t
        let ga = g.mul(&am)?;
        let atg = am.transpose().mul(g)?;
        if ga != atg {
            return Err(Error::InvalidTwist("A(t) is not self-adjoint for the form".into()));
        }
        if am.mul(&self.matrix)? != self.matrix.mul(&am)? {
            return Err(Error::InvalidTwist("A(t) does not commute with t".into()));
        }
        let det_a = linalg::det(&am)?;
        if det_a.is_zero() {
            return Err(Error::InvalidTwist("A(t) is singular".into()));
        }
        let twisted = Lattice::new(atg)?;
        if twisted.det() != &(&det_a * self.lattice.det()) {
            return Err(Error::Construction("twist determinant law violated".into()));
        }
        if self.lattice.is_even() && !twisted.is_even() {
            return Err(Error::Construction("twist of an even lattice is odd".into()));
        }
        Ok(twisted)
    }

    /// Check that an integer polynomial gives a valid twist element without
    /// building the lattice.
    pub fn twist_det(&self, a: &IntPoly) -> Result<BigInt> {
        linalg::det(&linalg::poly_at_matrix(a, &self.matrix)?)
    }
}

/// (|F(1)|, |F(-1)|, (-1)^n F(1) F(-1)) for a polynomial of degree 2n, and
/// whether all three are perfect squares.
pub fn square_condition(f: &IntPoly) -> (BigInt, BigInt, BigInt, bool) {
    use crate::arith::is_perfect_square;
    let n = f.degree().unwrap_or(0) / 2;
    let f1 = f.eval(&BigInt::one());
    let fm1 = f.eval(&-BigInt::one());
    let mut prod = &f1 * &fm1;
    if n % 2 == 1 {
        prod = -prod;
    }
    let ok = is_perfect_square(&f1.abs()) && is_perfect_square(&fm1.abs()) && is_perfect_square(&prod);
    (f1.abs(), fm1.abs(), prod, ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    fn l1() -> Lattice {
        Lattice::new(IntMatrix::from_i64(&[&[2, 1], &[1, -2]]).scale(&int(3001))).unwrap()
    }

    #[test]
    fn make_lattice_examples() {
        let l = l1();
        assert!(l.is_even());
        assert_eq!(
            Lattice::new(IntMatrix::from_i64(&[&[1, 1], &[1, 1]])),
            Err(Error::Singular)
        );
        let h = Lattice::new(IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        assert!(h.is_even() && h.is_unimodular());
        assert_eq!(
            Lattice::new(IntMatrix::from_i64(&[&[0, 1], &[2, 0]])),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn invariants_examples() {
        let inv = l1().invariants().unwrap();
        assert!(inv.even && !inv.unimodular);
        assert_eq!(inv.det, int(-5) * int(3001) * int(3001));
        assert_eq!(inv.signature, (1, 1));
        let h = Lattice::new(IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let inv = h.invariants().unwrap();
        assert_eq!((inv.even, inv.unimodular, inv.det.clone(), inv.signature), (true, true, int(-1), (1, 1)));
    }

    #[test]
    fn isometry_examples() {
        let l = l1();
        let t = check_isometry(&l, &IntMatrix::from_i64(&[&[1, 1], &[1, 2]])).unwrap();
        assert_eq!(t.charpoly(), IntPoly::from_i64(&[1, -3, 1]));
        assert!(matches!(
            check_isometry(&l, &IntMatrix::from_i64(&[&[0, 1], &[1, 0]])),
            Err(Error::NotAnIsometry(_))
        ));
        assert!(check_isometry(&l, &IntMatrix::identity(2)).is_ok());
        assert!(check_isometry(&l, &IntMatrix::from_i64(&[&[2, 0], &[0, 1]])).is_err());
    }

    #[test]
    fn twist_examples() {
        let lp = Lattice::new(IntMatrix::from_i64(&[&[2, 1], &[1, -2]])).unwrap();
        let t = check_isometry(&lp, &IntMatrix::from_i64(&[&[1, 1], &[1, 2]])).unwrap();
        let tw = t.twist(&IntPoly::from_i64(&[3001])).unwrap();
        assert_eq!(tw, l1());
        assert_eq!(t.twist(&IntPoly::one()).unwrap(), lp);
        // a = t + t^{-1} = 3 for this t (trace 3, det 1): the twist is 3·G
        let a = IntPoly::from_i64(&[0, 1]).add(&IntPoly::from_i64(&[3, -1]));
        assert_eq!(t.twist(&a).unwrap().gram(), &lp.gram().scale(&int(3)));
        // t itself is not self-adjoint
        assert!(matches!(t.twist(&IntPoly::x()), Err(Error::InvalidTwist(_))));
        // singular twist: A(X) = X^2 - 3X + 1 kills t
        assert!(matches!(t.twist(&IntPoly::from_i64(&[1, -3, 1])), Err(Error::InvalidTwist(_))));
    }

    #[test]
    fn square_condition_on_known_polys() {
        // F = (X^2 - 3X + 1)·Φ50 has F(1) = -1, F(-1) = 25
        let phi50 = IntPoly::from_i64(&[1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1, 0, 0, 0, 0, 1]);
        let f = IntPoly::from_i64(&[1, -3, 1]).mul(&phi50);
        let (a, b, c, ok) = square_condition(&f);
        assert_eq!((a, b, c, ok), (int(1), int(25), int(25), true));
    }
}
