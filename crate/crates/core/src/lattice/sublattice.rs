use num_traits::{One, Zero};

use super::Lattice;
use crate::error::{Error, Result};
use crate::linalg::{self, integer_kernel, smith_normal_form, IntMatrix};

/// A sublattice given by basis vectors as the columns of `basis` (ambient
/// coordinates), together with the restricted Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublattice {
    pub basis: IntMatrix,
    pub gram: IntMatrix,
}

impl Sublattice {
    pub fn lattice(&self) -> Result<Lattice> {
        Lattice::new(self.gram.clone())
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    /// Matrix of an ambient endomorphism restricted to this sublattice, if
    /// the sublattice is invariant and the restriction is integral.
    pub fn restrict(&self, t: &IntMatrix) -> Result<IntMatrix> {
        let b = &self.basis;
        let tb = t.mul(b)?;
        let bt = b.transpose();
        let normal = bt.mul(b)?;
        let rhs = bt.mul(&tb)?;
        let r = linalg::solve_rat_matrix(&normal.to_rat(), &rhs.to_rat())?;
        let r = r
            .to_int()
            .ok_or_else(|| Error::InvalidArgument("restriction is not integral".into()))?;
        if b.mul(&r)? != tb {
            return Err(Error::InvalidArgument("sublattice is not invariant".into()));
        }
        Ok(r)
    }
}

/// Restricted Gram matrix `Sᵀ·G·S`.
pub fn restricted_gram(lattice: &Lattice, s: &IntMatrix) -> Result<IntMatrix> {
    s.transpose().mul(lattice.gram())?.mul(s)
}

/// `S⊥ = { y in L : b(y, x) = 0 for all x in S }` for generators in the
/// columns of `s`.
pub fn orthogonal_complement(lattice: &Lattice, s: &IntMatrix) -> Result<Sublattice> {
    if s.rows() != lattice.rank() {
        return Err(Error::DimensionMismatch("generator rows vs lattice rank".into()));
    }
    let a = s.transpose().mul(lattice.gram())?;
    let k = integer_kernel(&a);
    if k.cols() == 0 {
        return Err(Error::Degenerate("orthogonal complement is zero".into()));
    }
    let gram = restricted_gram(lattice, &k)?;
    if linalg::det(&gram)?.is_zero() {
        return Err(Error::Degenerate("form restricted to the complement is degenerate".into()));
    }
    Ok(Sublattice { basis: k, gram })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Primitivity {
    pub primitive: bool,
    /// Basis (columns) of `L ∩ Q·S`.
    pub saturation: IntMatrix,
}

/// Whether the span of the columns of `s` is primitive in `Z^n`.
pub fn is_primitive(s: &IntMatrix) -> Primitivity {
    let snf = smith_normal_form(s);
    let rank = linalg::rank(s);
    let primitive = snf.diagonal().iter().take(rank).all(|d| d.is_one())
        && snf.diagonal().iter().skip(rank).all(|d| d.is_zero());
    let ann = integer_kernel(&s.transpose());
    let saturation = if ann.cols() == 0 {
        IntMatrix::identity(s.rows())
    } else {
        integer_kernel(&ann.transpose())
    };
    Primitivity { primitive, saturation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn complement_in_hyperbolic_plane() {
        let h = Lattice::new(IntMatrix::from_i64(&[&[0, 1], &[1, 0]])).unwrap();
        let c = orthogonal_complement(&h, &IntMatrix::from_i64(&[&[1], &[1]])).unwrap();
        assert_eq!(c.gram, IntMatrix::from_i64(&[&[-2]]));
        let v = c.basis.col(0);
        assert!(v == vec![int(1), int(-1)] || v == vec![int(-1), int(1)]);
        assert!(matches!(
            orthogonal_complement(&h, &IntMatrix::identity(2)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn primitivity_examples() {
        let p = is_primitive(&IntMatrix::from_i64(&[&[1], &[0]]));
        assert!(p.primitive);
        let p = is_primitive(&IntMatrix::from_i64(&[&[2], &[0]]));
        assert!(!p.primitive);
        assert_eq!(p.saturation, IntMatrix::from_i64(&[&[1], &[0]]));
        let p = is_primitive(&IntMatrix::from_i64(&[&[2, 0], &[0, 3], &[4, 3]]));
        assert!(!p.primitive);
        assert_eq!(p.saturation.cols(), 2);
    }

    #[test]
    fn restriction_to_invariant_sublattice() {
        let t = IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let h = Lattice::new(IntMatrix::identity(3)).unwrap();
        let s = orthogonal_complement(&h, &IntMatrix::from_i64(&[&[0], &[0], &[1]])).unwrap();
        let r = s.restrict(&t).unwrap();
        assert_eq!(linalg::charpoly(&r).unwrap(), crate::poly::IntPoly::from_i64(&[-1, 0, 1]));
    }
}
