//! Arithmetic in Q(ζ_n) and its real subfield Q(ζ + ζ⁻¹), trace-form
//! lattices, and exact sign data at the real embeddings.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{int, rat, rat_int, rat_to_sig_digits, Rat};
use crate::error::{Error, Result};
use crate::lattice::{check_isometry, Isometry, Lattice};
use crate::linalg::{self, IntMatrix, RatMatrix};
use crate::poly::{IntPoly, RatPoly};
use crate::roots::{real_root_isolation, sign_and_enclosure_at_root};

/// Φ_n, by dividing X^n − 1 by Φ_d for every proper divisor d.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut num = IntPoly::monomial(n as usize).sub(&IntPoly::one());
    for d in (1..n).filter(|d| n % d == 0) {
        num = num.div_exact(&cyclotomic_poly(d)).expect("Φ_d divides X^n - 1");
    }
    num
}

/// X^k + X^-k written as a polynomial in Y = X + X^-1.
fn chebyshev_sum(k: usize) -> IntPoly {
    let (mut prev, mut cur) = (IntPoly::constant(int(2)), IntPoly::x());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = IntPoly::x().mul(&cur).sub(&prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// Ψ with f(X) = X^(d/2)·Ψ(X + X⁻¹) for a palindromic f of even degree d.
pub fn trace_polynomial_of(f: &IntPoly) -> Result<IntPoly> {
    let d = f.degree().ok_or(Error::ZeroPolynomial)?;
    if d % 2 == 1 {
        return Err(Error::NoTracePolynomial(format!("degree {d} is odd")));
    }
    let h = d / 2;
    let mut psi = IntPoly::constant(f.coeff(h));
    for k in 1..=h {
        psi = psi.add(&chebyshev_sum(k).scale(&f.coeff(h + k)));
    }
    // verify X^h Ψ(X + 1/X) = f, term by term as X^(h-j)(X^2+1)^j
    let x2p1 = IntPoly::from_i64(&[1, 0, 1]);
    let mut back = IntPoly::zero();
    for (j, c) in psi.coeffs().iter().enumerate() {
        back = back.add(&IntPoly::monomial(h - j).mul(&x2p1.pow(j as u32)).scale(c));
    }
    if &back != f {
        return Err(Error::NoTracePolynomial("polynomial is not palindromic".into()));
    }
    Ok(psi)
}

/// The cyclotomic field Q(ζ_n) = Q[X]/(Φ_n).
pub struct CycloField {
    n: u64,
    phi: IntPoly,
    psi: Option<IntPoly>,
    degree: usize,
    // Tr(ζ^k) for 0 <= k < degree
    traces: Vec<Rat>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloField(n = {})", self.n)
    }
}

/// Power sums s_0..s_{count-1} of the roots of a monic polynomial, count <= degree.
fn newton_power_sums(f: &IntPoly, count: usize) -> Vec<BigInt> {
    let d = f.degree().expect("nonzero");
    let a = |i: usize| f.coeff(i);
    let mut s = vec![int(d as i64)];
    for k in 1..count {
        let mut v = BigInt::zero();
        for i in 1..k {
            v += a(d - i) * &s[k - i];
        }
        v += a(d - k) * BigInt::from(k);
        s.push(-v);
    }
    s
}

impl CycloField {
    pub fn new(n: u64) -> Arc<Self> {
        let phi = cyclotomic_poly(n);
        let degree = phi.degree().unwrap();
        let psi = trace_polynomial_of(&phi).ok().filter(|_| n >= 3);
        let traces = newton_power_sums(&phi, degree).into_iter().map(Rat::from_integer).collect();
        Arc::new(CycloField { n, phi, psi, degree, traces })
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn phi(&self) -> &IntPoly {
        &self.phi
    }

    pub fn trace_polynomial(&self) -> Result<&IntPoly> {
        self.psi
            .as_ref()
            .ok_or_else(|| Error::NoTracePolynomial(format!("Φ_{} has odd degree", self.n)))
    }

    /// Units k in [1, n/2) in increasing order, labelling ζ^k + ζ^-k.
    pub fn real_embedding_labels(&self) -> Vec<u64> {
        (1..)
            .take_while(|k| 2 * k < self.n)
            .filter(|k| k.gcd(&self.n) == 1)
            .collect()
    }
}

/// An element of Q(ζ_n) in the power basis 1, ζ, …, ζ^(d-1).
#[derive(Clone)]
pub struct CycloElement {
    field: Arc<CycloField>,
    coeffs: RatPoly,
}

impl PartialEq for CycloElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl Eq for CycloElement {}

impl fmt::Debug for CycloElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElement[{}]({})", self.field.n, self.coeffs)
    }
}

impl CycloElement {
    pub fn from_poly(field: &Arc<CycloField>, p: &RatPoly) -> Self {
        let coeffs = p.rem(&RatPoly::from(&field.phi)).expect("Φ nonzero");
        CycloElement { field: field.clone(), coeffs }
    }

    pub fn from_int_poly(field: &Arc<CycloField>, p: &IntPoly) -> Self {
        Self::from_poly(field, &RatPoly::from(p))
    }

    pub fn from_rat(field: &Arc<CycloField>, c: Rat) -> Self {
        Self::from_poly(field, &RatPoly::constant(c))
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        Self::from_poly(field, &RatPoly::zero())
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_rat(field, Rat::one())
    }

    /// ζ^k for any integer k (negative exponents allowed).
    pub fn zeta_pow(field: &Arc<CycloField>, k: i64) -> Self {
        let e = k.rem_euclid(field.n as i64) as usize;
        Self::from_poly(field, &RatPoly::monomial(e))
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    /// Power-basis coefficients, padded to the field degree.
    pub fn coefficients(&self) -> Vec<Rat> {
        (0..self.field.degree).map(|i| self.coeffs.coeff(i)).collect()
    }

    pub fn as_poly(&self) -> &RatPoly {
        &self.coeffs
    }

    /// Integer polynomial A with self = A(ζ), when integral.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        self.is_integral()
            .then(|| IntPoly::new(self.coeffs.coeffs().iter().map(|c| c.to_integer()).collect()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Membership in Z[ζ], the ring of integers.
    pub fn is_integral(&self) -> bool {
        self.coeffs.coeffs().iter().all(|c| c.is_integer())
    }

    pub fn add(&self, o: &Self) -> Self {
        CycloElement { field: self.field.clone(), coeffs: self.coeffs.add(&o.coeffs) }
    }

    pub fn sub(&self, o: &Self) -> Self {
        CycloElement { field: self.field.clone(), coeffs: self.coeffs.sub(&o.coeffs) }
    }

    pub fn neg(&self) -> Self {
        CycloElement { field: self.field.clone(), coeffs: self.coeffs.neg() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::from_poly(&self.field, &self.coeffs.mul(&o.coeffs))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        CycloElement { field: self.field.clone(), coeffs: self.coeffs.scale(c) }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = self.coeffs.ext_gcd(&RatPoly::from(&self.field.phi));
        debug_assert_eq!(g, RatPoly::one(), "Φ_n is irreducible");
        Ok(Self::from_poly(&self.field, &s))
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// ι: ζ ↦ ζ⁻¹.
    pub fn involution(&self) -> Self {
        let n = self.field.n as i64;
        let mut acc = RatPoly::zero();
        for (i, c) in self.coeffs.coeffs().iter().enumerate() {
            let e = ((n - 1) * i as i64).rem_euclid(n) as usize;
            acc = acc.add(&RatPoly::monomial(e).scale(c));
        }
        Self::from_poly(&self.field, &acc)
    }

    /// Tr_{K/Q} via the cached power sums.
    pub fn trace(&self) -> Rat {
        self.coeffs
            .coeffs()
            .iter()
            .zip(&self.field.traces)
            .fold(Rat::zero(), |acc, (c, t)| acc + c * t)
    }

    /// N_{K/Q} = Res(Φ_n, representative).
    pub fn norm(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatPoly::from(&self.field.phi).resultant(&self.coeffs)
    }

    /// ζ + ζ⁻¹.
    pub fn real_generator(field: &Arc<CycloField>) -> Self {
        Self::zeta_pow(field, 1).add(&Self::zeta_pow(field, -1))
    }

    /// Evaluate a polynomial at this element.
    pub fn eval_poly(p: &RatPoly, at: &Self) -> Self {
        let mut acc = Self::zero(&at.field);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(at).add(&Self::from_rat(&at.field, c.clone()));
        }
        acc
    }

    /// Express an involution-fixed element as a polynomial in ζ + ζ⁻¹.
    pub fn to_real_subfield(&self) -> Result<RealSubfieldElement> {
        let psi = self.field.trace_polynomial()?.clone();
        if self.involution() != *self {
            return Err(Error::InvalidArgument("element is not fixed by the involution".into()));
        }
        let h = psi.degree().unwrap();
        let d = self.field.degree;
        let y = Self::real_generator(&self.field);
        // columns: power-basis coordinates of Y^0..Y^(h-1)
        let mut cols = Vec::with_capacity(h);
        let mut pw = Self::one(&self.field);
        for _ in 0..h {
            cols.push(pw.coefficients());
            pw = pw.mul(&y);
        }
        let m = RatMatrix::from_cols(&cols)?;
        // least-squares normal equations on a consistent full-column-rank system
        let mt = m.transpose();
        let rhs = RatMatrix::from_cols(&[self.coefficients()])?;
        let sol = linalg::solve_rat_matrix(&mt.mul(&m)?, &mt.mul(&rhs)?)?;
        let out = RealSubfieldElement::new(&self.field, &RatPoly::new(sol.col(0)))?;
        if out.embed() != *self {
            return Err(Error::Construction(format!("descent to the real subfield failed (degree {d})")));
        }
        Ok(out)
    }
}

/// An element of Q(ζ + ζ⁻¹) as a residue modulo Ψ_n in Y = ζ + ζ⁻¹.
#[derive(Clone)]
pub struct RealSubfieldElement {
    field: Arc<CycloField>,
    coeffs: RatPoly,
}

impl PartialEq for RealSubfieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.n == other.field.n && self.coeffs == other.coeffs
    }
}

impl fmt::Debug for RealSubfieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealSubfieldElement[{}]({})", self.field.n, self.coeffs)
    }
}

impl RealSubfieldElement {
    pub fn new(field: &Arc<CycloField>, p: &RatPoly) -> Result<Self> {
        let psi = RatPoly::from(field.trace_polynomial()?);
        Ok(RealSubfieldElement { field: field.clone(), coeffs: p.rem(&psi)? })
    }

    pub fn from_int_poly(field: &Arc<CycloField>, p: &IntPoly) -> Result<Self> {
        Self::new(field, &RatPoly::from(p))
    }

    pub fn as_poly(&self) -> &RatPoly {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        RealSubfieldElement { field: self.field.clone(), coeffs: self.coeffs.add(&o.coeffs) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.field, &self.coeffs.mul(&o.coeffs)).expect("same field")
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let psi = RatPoly::from(self.field.trace_polynomial()?);
        let (g, s, _) = self.coeffs.ext_gcd(&psi);
        if g != RatPoly::one() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.field, &s)
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inverse()?))
    }

    /// Image in Q(ζ) under Y ↦ ζ + ζ⁻¹.
    pub fn embed(&self) -> CycloElement {
        CycloElement::eval_poly(&self.coeffs, &CycloElement::real_generator(&self.field))
    }

    /// N_{k/Q}(e) = Res(Ψ_n, e) (Ψ_n is monic).
    pub fn norm(&self) -> Result<Rat> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatPoly::from(self.field.trace_polynomial()?).resultant(&self.coeffs)
    }
}

/// The element a = u₁·u₂·a′ of Q(ζ₅₀) used to twist the trace-form lattice,
/// with its factors and the quantities verified on construction.
#[derive(Clone, Debug)]
pub struct TwistElement {
    pub a: CycloElement,
    pub u1: CycloElement,
    pub u2: CycloElement,
    pub a_prime: CycloElement,
    pub a_real: RealSubfieldElement,
    pub norm_a: Rat,
    pub norm_u1: Rat,
    pub norm_u2: Rat,
    pub norm_a_prime: Rat,
}

/// u₁ = ζ² + 1 + ζ⁻², u₂ = Σ_{i=0..5} (ζ^(2i+1) + ζ^-(2i+1)),
/// a′ = (ζ + ζ⁻¹ − 3)/(ζ + ζ⁻¹ + 2), a = u₁u₂a′.
pub fn build_twist_element(field: &Arc<CycloField>) -> Result<TwistElement> {
    if field.conductor() != 50 {
        return Err(Error::InvalidArgument("the twist element is defined for n = 50".into()));
    }
    let z = |k: i64| CycloElement::zeta_pow(field, k);
    let c = |v: i64| CycloElement::from_rat(field, rat(v, 1));
    let u1 = z(2).add(&c(1)).add(&z(-2));
    let u2 = (0..=5).fold(CycloElement::zero(field), |acc, i| acc.add(&z(2 * i + 1)).add(&z(-(2 * i + 1))));
    let y = CycloElement::real_generator(field);
    let a_prime = y.sub(&c(3)).div(&y.add(&c(2)))?;
    let a = u1.mul(&u2).mul(&a_prime);

    if !a.is_integral() {
        return Err(Error::Construction("a is not integral".into()));
    }
    if a.involution() != a {
        return Err(Error::Construction("a is not fixed by the involution".into()));
    }
    let a_real = a.to_real_subfield()?;
    let norm_a = a_real.norm()?;
    let norm_u1 = u1.to_real_subfield()?.norm()?;
    let norm_u2 = u2.to_real_subfield()?.norm()?;
    let norm_a_prime = a_prime.to_real_subfield()?.norm()?;
    if norm_u1.abs() != Rat::one() || norm_u2.abs() != Rat::one() {
        return Err(Error::Construction("u1, u2 are not units".into()));
    }
    if norm_a != rat(3001, 1) {
        return Err(Error::Construction(format!("N(a) = {norm_a}, expected 3001")));
    }
    Ok(TwistElement { a, u1, u2, a_prime, a_real, norm_a, norm_u1, norm_u2, norm_a_prime })
}

/// μ = 1/Ψ′_n(ζ + ζ⁻¹) in Q(ζ).
pub fn inverse_different(field: &Arc<CycloField>) -> Result<CycloElement> {
    let dpsi = RatPoly::from(&field.trace_polynomial()?.derivative());
    CycloElement::eval_poly(&dpsi, &CycloElement::real_generator(field)).inverse()
}

/// Multiplication by ζ on the power basis: the companion matrix of Φ_n.
pub fn multiplication_by_zeta(field: &Arc<CycloField>) -> IntMatrix {
    let d = field.degree();
    let mut m = IntMatrix::zeros(d, d);
    for j in 0..d {
        let img = CycloElement::zeta_pow(field, j as i64 + 1);
        for (i, c) in img.coefficients().iter().enumerate() {
            m[(i, j)] = c.to_integer();
        }
    }
    m
}

/// The lattice (Z[ζ], b_a) with b_a(x, y) = Tr(a·x·ι(y)/Ψ′(ζ + ζ⁻¹)) on the
/// basis 1, ζ, …, ζ^(d-1), and multiplication by ζ as an isometry.
pub fn build_trace_form_lattice(field: &Arc<CycloField>, a: &CycloElement) -> Result<(Lattice, Isometry)> {
    if !a.is_integral() || a.involution() != *a || a.is_zero() {
        return Err(Error::InvalidArgument("a must be a nonzero integral real element".into()));
    }
    let d = field.degree();
    let w = a.mul(&inverse_different(field)?);
    // Tr(w·ζ^(i-j)) depends only on i - j
    let diffs: Vec<Rat> = (-(d as i64) + 1..d as i64)
        .map(|k| w.mul(&CycloElement::zeta_pow(field, k)).trace())
        .collect();
    let mut gram = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let v = &diffs[i + d - 1 - j];
            if !v.is_integer() {
                return Err(Error::Construction(format!("Gram entry ({i},{j}) = {v} is not integral")));
            }
            gram[(i, j)] = v.to_integer();
        }
    }
    let lattice = Lattice::new(gram)?;
    let t = check_isometry(&lattice, &multiplication_by_zeta(field))?;
    Ok((lattice, t))
}

/// Value of a real-subfield element at the embedding Y ↦ ζ^k + ζ^-k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingValue {
    pub k: u64,
    pub sign: i8,
    pub approx: String,
    pub enclosure: (Rat, Rat),
    pub digits: u32,
}

/// Exact signs and decimal approximations of e at every real embedding,
/// ordered by k = 1, 3, 7, … (decreasing value of 2cos(2πk/n)).
pub fn real_embedding_signs(e: &RealSubfieldElement, digits: u32) -> Result<Vec<EmbeddingValue>> {
    let field = &e.field;
    let psi = field.trace_polynomial()?;
    let mut roots = real_root_isolation(psi)?;
    roots.reverse();
    let labels = field.real_embedding_labels();
    if roots.len() != labels.len() {
        return Err(Error::Construction("Ψ_n does not have the expected real roots".into()));
    }
    let ten = int(10);
    let target_exp = digits + 2;
    let mut out = Vec::with_capacity(roots.len());
    for (iv, k) in roots.iter().zip(labels) {
        // coarse pass fixes the sign and magnitude
        let (sign, (lo, hi)) = sign_and_enclosure_at_root(psi, &e.coeffs, iv, &rat(1, 1000))?;
        let mag = if sign > 0 { lo.clone() } else { -hi.clone() };
        let mag = if mag.is_positive() { mag } else { (&hi - &lo).abs() };
        let tol = &mag * Rat::new(BigInt::one(), ten.pow(target_exp));
        let (_, enc) = sign_and_enclosure_at_root(psi, &e.coeffs, iv, &tol)?;
        let mid = (&enc.0 + &enc.1) / rat_int(&int(2));
        out.push(EmbeddingValue { k, sign, approx: rat_to_sig_digits(&mid, digits), enclosure: enc, digits });
    }
    Ok(out)
}

/// (2·P, d − 2·P) from the embedding signs, P = number of positive values.
pub fn signature_from_embeddings(values: &[EmbeddingValue], degree: usize) -> (usize, usize) {
    let p = values.iter().filter(|v| v.sign > 0).count();
    (2 * p, degree - 2 * p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic_poly(12), IntPoly::from_i64(&[1, 0, -1, 0, 1]));
        let mut c50 = vec![0i64; 21];
        for (i, v) in [(0, 1), (5, -1), (10, 1), (15, -1), (20, 1)] {
            c50[i] = v;
        }
        assert_eq!(cyclotomic_poly(50), IntPoly::from_i64(&c50));
    }

    #[test]
    fn trace_polynomial_examples() {
        assert_eq!(CycloField::new(4).trace_polynomial().unwrap(), &IntPoly::x());
        assert_eq!(CycloField::new(5).trace_polynomial().unwrap(), &IntPoly::from_i64(&[-1, 1, 1]));
        let f50 = CycloField::new(50);
        let psi = f50.trace_polynomial().unwrap();
        assert_eq!(psi.degree(), Some(10));
        assert_eq!(psi, &IntPoly::from_i64(&[-1, -5, 25, 5, -50, -1, 35, 0, -10, 0, 1]));
        assert!(CycloField::new(2).trace_polynomial().is_err());
        assert!(matches!(trace_polynomial_of(&IntPoly::from_i64(&[1, 2, 1, 1])), Err(Error::NoTracePolynomial(_))));
    }

    #[test]
    fn element_arithmetic() {
        let f = CycloField::new(50);
        let z = CycloElement::zeta_pow(&f, 1);
        assert_eq!(z.inverse().unwrap(), CycloElement::zeta_pow(&f, 49));
        let z1 = z.add(&CycloElement::one(&f));
        let inv = z1.inverse().unwrap();
        assert_eq!(inv.mul(&z1), CycloElement::one(&f));
        assert!(inv.coefficients().iter().all(|c| (int(5) % c.denom()).is_zero()));
        assert_eq!(CycloElement::zero(&f).inverse(), Err(Error::DivisionByZero));
        let e = CycloElement::from_int_poly(&f, &IntPoly::from_i64(&[3, -1, 0, 7, 2]));
        assert_eq!(e.involution().involution(), e);
    }

    #[test]
    fn traces() {
        let f = CycloField::new(50);
        assert_eq!(CycloElement::one(&f).trace(), rat(20, 1));
        assert_eq!(CycloElement::zeta_pow(&f, 1).trace(), rat(0, 1));
        assert_eq!(CycloElement::zeta_pow(&f, 5).trace(), rat(5, 1));
        assert_eq!(CycloElement::zeta_pow(&f, 25).trace(), rat(-20, 1));
    }

    #[test]
    fn real_subfield_norms() {
        let f = CycloField::new(50);
        let one = RealSubfieldElement::from_int_poly(&f, &IntPoly::one()).unwrap();
        assert_eq!(one.norm().unwrap(), rat(1, 1));
        let num = RealSubfieldElement::from_int_poly(&f, &IntPoly::from_i64(&[-3, 1])).unwrap();
        let den = RealSubfieldElement::from_int_poly(&f, &IntPoly::from_i64(&[2, 1])).unwrap();
        assert_eq!(num.div(&den).unwrap().norm().unwrap(), rat(3001, 1));
        let psi = f.trace_polynomial().unwrap();
        assert_eq!(num.norm().unwrap(), rat_int(&psi.eval(&int(3))));
        assert_eq!(
            RealSubfieldElement::from_int_poly(&f, &IntPoly::zero()).unwrap().norm(),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn twist_element_properties() {
        let f = CycloField::new(50);
        let t = build_twist_element(&f).unwrap();
        assert!(t.a.is_integral());
        assert_eq!(t.a.involution(), t.a);
        assert_eq!(t.norm_a, rat(3001, 1));
        assert_eq!(t.norm_a_prime, rat(3001, 1));
        assert_eq!(t.norm_u1.abs(), rat(1, 1));
        assert_eq!(t.norm_u2.abs(), rat(1, 1));
        assert!(build_twist_element(&CycloField::new(12)).is_err());
    }

    #[test]
    fn twist_element_via_real_subfield_route() {
        // u1 = Y^2 - 1, u2 = sum of C_{2i+1}(Y), a' = (Y - 3)/(Y + 2), all in k directly
        let f = CycloField::new(50);
        let r = |p: IntPoly| RealSubfieldElement::from_int_poly(&f, &p).unwrap();
        let u1 = r(IntPoly::from_i64(&[-1, 0, 1]));
        let u2 = (0..=5).fold(r(IntPoly::zero()), |acc, i| acc.add(&r(chebyshev_sum(2 * i + 1))));
        let ap = r(IntPoly::from_i64(&[-3, 1])).div(&r(IntPoly::from_i64(&[2, 1]))).unwrap();
        let a = u1.mul(&u2).mul(&ap);
        assert_eq!(a, build_twist_element(&f).unwrap().a_real);
    }

    #[test]
    fn untwisted_trace_form_lattice() {
        let f = CycloField::new(50);
        let (l, t) = build_trace_form_lattice(&f, &CycloElement::one(&f)).unwrap();
        assert_eq!(l.rank(), 20);
        assert!(l.is_even());
        assert_eq!(l.det().abs(), int(5));
        assert_eq!(t.charpoly(), cyclotomic_poly(50));
    }

    #[test]
    fn twisted_gram_first_row() {
        let f = CycloField::new(50);
        let a = build_twist_element(&f).unwrap().a;
        let (l, _) = build_trace_form_lattice(&f, &a).unwrap();
        let row: Vec<i64> = (0..20).map(|j| i64::try_from(&l.gram()[(0, j)]).unwrap()).collect();
        assert_eq!(&row[..8], &[-10, 8, -6, 3, -1, -2, 3, -3]);
        assert_eq!(l.det().abs(), int(3001 * 3001 * 5));
        assert_eq!(l.signature().unwrap(), (2, 18));
    }

    #[test]
    fn embedding_values_of_a_over_psi_prime() {
        let f = CycloField::new(50);
        let a = build_twist_element(&f).unwrap().a_real;
        let dpsi = RealSubfieldElement::from_int_poly(&f, &f.trace_polynomial().unwrap().derivative()).unwrap();
        let e = a.div(&dpsi).unwrap();
        let v = real_embedding_signs(&e, 6).unwrap();
        let approx: Vec<&str> = v.iter().map(|x| x.approx.as_str()).collect();
        assert_eq!(
            approx,
            ["-0.113723", "-0.0670944", "0.0280276", "-0.0266055", "-0.111411", "-0.105658", "-0.0294971", "-0.518540", "-1.50611", "-2.54938"]
        );
        assert_eq!(signature_from_embeddings(&v, 20), (2, 18));
    }

    #[test]
    fn embedding_signs_of_one_are_positive() {
        let f = CycloField::new(50);
        let one = RealSubfieldElement::from_int_poly(&f, &IntPoly::one()).unwrap();
        let v = real_embedding_signs(&one, 5).unwrap();
        assert_eq!(v.len(), 10);
        assert!(v.iter().all(|e| e.sign == 1 && e.approx == "1.0000"));
        assert_eq!(v.iter().map(|e| e.k).collect::<Vec<_>>(), vec![1, 3, 7, 9, 11, 13, 17, 19, 21, 23]);
    }
}
