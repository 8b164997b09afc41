//! Dense univariate polynomials over Z and Q.
//!
//! Coefficients are stored in ascending degree order and kept trimmed, so the
//! zero polynomial has no coefficients at all.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::Rat;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

fn trim<T: Zero>(v: &mut Vec<T>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        trim(&mut coeffs);
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// X^k
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of X^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn deg_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rat(&self, x: &Rat) -> Rat {
        self.coeffs
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * x + Rat::from_integer(c.clone()))
    }

    pub fn neg(&self) -> Self {
        IntPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// f(g(X))
    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// gcd of the coefficients (nonnegative; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = self.content();
        if self.leading().is_negative() {
            c = -c;
        }
        Self::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b.
    pub fn pseudo_rem(&self, b: &Self) -> Result<Self> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = b.leading();
        let mut r = self.clone();
        let Some(da) = r.degree() else { return Ok(r) };
        if da < db {
            return Ok(r);
        }
        let mut e = da - db + 1;
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let lr = r.leading();
            let shifted = b.mul(&Self::monomial(dr - db)).scale(&lr);
            r = r.scale(&lc).sub(&shifted);
            e -= 1;
        }
        Ok(r.scale(&lc.pow(e as u32)))
    }

    /// Exact division over Z; None if `b` does not divide `self`.
    pub fn div_exact(&self, b: &Self) -> Option<Self> {
        let db = b.degree()?;
        let lc = b.leading();
        let mut r = self.clone();
        let Some(da) = r.degree() else { return Some(Self::zero()) };
        if da < db {
            return None;
        }
        let mut q = vec![BigInt::zero(); da - db + 1];
        while let Some(dr) = r.degree() {
            if dr < db {
                return None;
            }
            let (c, rem) = r.leading().div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            r = r.sub(&b.mul(&Self::monomial(dr - db)).scale(&c));
            q[dr - db] = c;
        }
        Some(Self::new(q))
    }

    /// Primitive gcd over Q[X] with positive leading coefficient.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        if a.deg_or_zero() < b.deg_or_zero() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).expect("nonzero divisor").primitive_part();
            a = b;
            b = r;
        }
        a
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree().unwrap_or(0) == 0
    }

    /// Yun's algorithm over Q: returns (factor, multiplicity) with primitive,
    /// pairwise coprime factors of positive degree. Content is dropped.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPoly, usize)> {
        if self.deg_or_zero() == 0 {
            return vec![];
        }
        let f = RatPoly::from(self).monic();
        let fp = f.derivative();
        let a0 = f.ext_gcd(&fp).0;
        let div = |x: &RatPoly, y: &RatPoly| x.div_rem(y).expect("nonzero").0;
        let mut b = div(&f, &a0);
        let mut d = div(&fp, &a0).sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let a = b.ext_gcd(&d).0;
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.to_scaled_int().primitive_part(), i));
            }
            b = div(&b, &a);
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            d = div(&d, &a).sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Resultant by the subresultant PRS.
    pub fn resultant(&self, other: &Self) -> Result<BigInt> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let ca = a.content();
        let cb = b.content();
        let da0 = a.deg_or_zero() as u32;
        let db0 = b.deg_or_zero() as u32;
        let t = ca.pow(db0) * cb.pow(da0);
        a = Self::new(a.coeffs.iter().map(|x| x / &ca).collect());
        b = Self::new(b.coeffs.iter().map(|x| x / &cb).collect());
        let mut s = BigInt::one();
        if a.deg_or_zero() < b.deg_or_zero() {
            std::mem::swap(&mut a, &mut b);
            if a.deg_or_zero() % 2 == 1 && b.deg_or_zero() % 2 == 1 {
                s = -s;
            }
        }
        if b.deg_or_zero() == 0 {
            return Ok(s * t * b.leading().pow(a.deg_or_zero() as u32));
        }
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let da = a.deg_or_zero();
            let db = b.deg_or_zero();
            let delta = (da - db) as u32;
            if da % 2 == 1 && db % 2 == 1 {
                s = -s;
            }
            let r = a.pseudo_rem(&b)?;
            a = b;
            if r.is_zero() {
                return Ok(BigInt::zero());
            }
            let div = &g * h.pow(delta);
            b = Self::new(r.coeffs.iter().map(|x| x / &div).collect());
            g = a.leading();
            h = match delta {
                0 => h,
                1 => g.clone(),
                _ => g.pow(delta) / h.pow(delta - 1),
            };
            if b.deg_or_zero() == 0 {
                break;
            }
        }
        // deg a >= 1 here, since the loop only continues while deg b > 0
        let da = a.deg_or_zero() as u32;
        let hr = b.leading().pow(da) / h.pow(da - 1);
        Ok(s * t * hr)
    }

    /// Coefficients reduced into [0, p).
    pub fn reduce_mod(&self, p: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mod_floor(p)).collect())
    }

    /// The reversed polynomial X^deg f(1/X) equals ±f.
    pub fn is_self_reciprocal(&self) -> bool {
        let rev: Vec<BigInt> = self.coeffs.iter().rev().cloned().collect();
        rev == self.coeffs || rev.iter().zip(&self.coeffs).all(|(a, b)| *a == -b)
    }
}

impl From<&IntPoly> for RatPoly {
    fn from(p: &IntPoly) -> Self {
        RatPoly::new(p.coeffs.iter().map(|c| Rat::from_integer(c.clone())).collect())
    }
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        trim(&mut coeffs);
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    pub fn monomial(k: usize) -> Self {
        RatPoly::from(&IntPoly::monomial(k))
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        RatPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.coeffs.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rat::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn compose(&self, g: &Self) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| acc.mul(g).add(&Self::constant(c.clone())))
    }

    pub fn div_rem(&self, b: &Self) -> Result<(Self, Self)> {
        let db = b.degree().ok_or(Error::ZeroPolynomial)?;
        let lc = b.leading();
        let mut r = self.clone();
        let mut q = vec![Rat::zero(); self.coeffs.len().saturating_sub(db).max(1)];
        while let Some(dr) = r.degree() {
            if dr < db {
                break;
            }
            let c = r.leading() / &lc;
            r = r.sub(&b.mul(&Self::monomial(dr - db)).scale(&c));
            q[dr - db] = c;
        }
        Ok((Self::new(q), r))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.div_rem(b)?.1)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rat::one() / self.leading()))
    }

    /// Returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Rat::one() / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Multiply by the positive lcm of denominators and divide by the content
    /// of the numerators, keeping the sign of the leading coefficient.
    pub fn to_scaled_int(&self) -> IntPoly {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let p = IntPoly::new(self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect());
        let g = p.content();
        if g.is_zero() {
            return p;
        }
        IntPoly::new(p.coeffs.iter().map(|x| x / &g).collect())
    }

    /// (integer numerator polynomial, positive denominator) with self = num / den.
    pub fn to_int_with_denominator(&self) -> (IntPoly, BigInt) {
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let p = IntPoly::new(self.coeffs.iter().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect());
        (p, den)
    }

    /// Resultant over Q, via the integer subresultant on cleared denominators.
    pub fn resultant(&self, other: &Self) -> Result<Rat> {
        let (a, da) = self.to_int_with_denominator();
        let (b, db) = other.to_int_with_denominator();
        let r = a.resultant(&b)?;
        let ea = a.degree().unwrap_or(0) as u32;
        let eb = b.degree().unwrap_or(0) as u32;
        Ok(Rat::new(r, da.pow(eb) * db.pow(ea)))
    }
}

fn fmt_terms<T: fmt::Display + Zero + One + PartialEq + Clone>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[T],
    is_neg: impl Fn(&T) -> bool,
    abs: impl Fn(&T) -> T,
) -> fmt::Result {
    if coeffs.is_empty() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = is_neg(c);
        let a = abs(c);
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let coef = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
        match i {
            0 => write!(f, "{a}")?,
            1 => write!(f, "{coef}X")?,
            _ => write!(f, "{coef}X^{i}")?,
        }
    }
    Ok(())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, |c| c.is_negative(), |c| c.abs())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_terms(f, &self.coeffs, |c| c.is_negative(), |c| c.abs())
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// Polynomial helpers over F_p with coefficients in [0, p).
pub mod modp {
    use super::*;

    pub fn normalize(c: &[BigInt], p: &BigInt) -> Vec<BigInt> {
        let mut v: Vec<BigInt> = c.iter().map(|x| x.mod_floor(p)).collect();
        trim(&mut v);
        v
    }

    /// All roots in F_p by exhaustive evaluation; only sensible for small p.
    pub fn roots_bruteforce(c: &[BigInt], p: &BigInt) -> Vec<BigInt> {
        let f = IntPoly::new(normalize(c, p));
        let mut out = Vec::new();
        let mut x = BigInt::zero();
        while &x < p {
            if f.eval(&x).mod_floor(p).is_zero() {
                out.push(x.clone());
            }
            x += 1;
        }
        out
    }

    /// Product of (X - r) over the given roots, reduced mod p.
    pub fn from_roots(roots: &[BigInt], p: &BigInt) -> IntPoly {
        roots
            .iter()
            .fold(IntPoly::one(), |acc, r| acc.mul(&IntPoly::new(vec![-r.clone(), BigInt::one()])))
            .reduce_mod(p)
    }
}
