//! Exact integer and rational linear algebra.

mod matrix;
mod normal_forms;

pub use matrix::{IntMatrix, RatMatrix};
pub use normal_forms::{hermite_normal_form, integer_kernel, smith_normal_form, HnfResult, SnfResult};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};
use crate::poly::IntPoly;

fn require_square(m: &IntMatrix) -> Result<usize> {
    if !m.is_square() {
        return Err(Error::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    Ok(m.rows())
}

/// Determinant by Bareiss fraction-free elimination.
pub fn det(m: &IntMatrix) -> Result<BigInt> {
    let n = require_square(m)?;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                a[(i, j)] = v;
            }
        }
        prev = a[(k, k)].clone();
    }
    Ok(sign * &a[(n - 1, n - 1)])
}

/// Characteristic polynomial det(X·I − M), by Faddeev–LeVerrier with exact
/// integer division.
pub fn charpoly(m: &IntMatrix) -> Result<IntPoly> {
    let n = require_square(m)?;
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut mk = IntMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A·M_{k-1} + c_{n-k+1}·I
        let mut next = m.mul(&mk)?;
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        mk = next;
        let amk = m.mul(&mk)?;
        let tr: BigInt = (0..n).map(|i| amk[(i, i)].clone()).sum();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs[n - k] = -q;
    }
    Ok(IntPoly::new(coeffs))
}

/// Evaluate an integer polynomial at a square matrix.
pub fn poly_at_matrix(p: &IntPoly, m: &IntMatrix) -> Result<IntMatrix> {
    let n = require_square(m)?;
    let mut acc = IntMatrix::zeros(n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(m)?;
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    Ok(acc)
}

/// Solve A·x = b exactly over Q (A square and invertible).
pub fn solve_rational(a: &IntMatrix, b: &[Rat]) -> Result<Vec<Rat>> {
    let n = require_square(a)?;
    let rhs = crate::linalg::RatMatrix::from_cols(&[b.to_vec()])?;
    if rhs.rows() != n {
        return Err(Error::DimensionMismatch("right-hand side length".into()));
    }
    Ok(solve_rat_matrix(&a.to_rat(), &rhs)?.col(0))
}

/// Solve A·X = B over Q for a square invertible A.
pub fn solve_rat_matrix(a: &RatMatrix, b: &RatMatrix) -> Result<RatMatrix> {
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if b.rows() != n {
        return Err(Error::DimensionMismatch("right-hand side rows".into()));
    }
    let mut aug = a.hstack(b)?;
    let w = aug.cols();
    for k in 0..n {
        let p = (k..n).find(|&i| !aug[(i, k)].is_zero()).ok_or(Error::Singular)?;
        aug.swap_rows(k, p);
        let inv = Rat::one() / &aug[(k, k)];
        for j in 0..w {
            let v = &aug[(k, j)] * &inv;
            aug[(k, j)] = v;
        }
        for i in 0..n {
            if i != k && !aug[(i, k)].is_zero() {
                let f = -aug[(i, k)].clone();
                aug.add_row_multiple(i, k, &f);
            }
        }
    }
    Ok(aug.col_range(n, w))
}

pub fn inverse_rat(a: &RatMatrix) -> Result<RatMatrix> {
    solve_rat_matrix(a, &RatMatrix::identity(a.rows()))
}

/// Rank over Q.
pub fn rank(m: &IntMatrix) -> usize {
    let h = hermite_normal_form(m);
    h.rank
}

/// (positive, negative) inertia of a nondegenerate symmetric matrix, computed
/// exactly: square-free decomposition of the characteristic polynomial, then
/// Sturm counts of positive roots per factor, weighted by multiplicity.
pub fn signature_symmetric(g: &IntMatrix) -> Result<(usize, usize)> {
    let n = require_square(g)?;
    if !g.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    if det(g)?.is_zero() {
        return Err(Error::Singular);
    }
    // all eigenvalues are real, so Descartes' rule of signs is exact
    let f = charpoly(g)?;
    let pos = sign_changes(f.coeffs());
    let neg = sign_changes(f.compose(&IntPoly::from_i64(&[0, -1])).coeffs());
    if pos + neg != n {
        return Err(Error::Construction(format!(
            "eigenvalue count {pos}+{neg} != {n} for a symmetric matrix"
        )));
    }
    Ok((pos, neg))
}

fn sign_changes(c: &[BigInt]) -> usize {
    let signs: Vec<bool> = c.iter().filter(|x| !x.is_zero()).map(|x| x > &BigInt::zero()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Q-inverse of an integer matrix.
pub fn inverse(m: &IntMatrix) -> Result<RatMatrix> {
    require_square(m)?;
    inverse_rat(&m.to_rat())
}
