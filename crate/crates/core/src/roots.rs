//! Real root isolation by Sturm sequences with exact rational endpoints.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::{rat, Rat};
use crate::error::{Error, Result};
use crate::poly::{IntPoly, RatPoly};

/// A closed interval `[lo, hi]` with rational endpoints. When `lo < hi` the
/// endpoints are never roots of the polynomial it isolates; `lo == hi` marks
/// an exactly known rational root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootInterval {
    pub lo: Rat,
    pub hi: Rat,
}

impl RootInterval {
    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / Rat::from_integer(BigInt::from(2))
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }
}

fn sign(x: &BigInt) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn rat_sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sturm chain of a polynomial, with positive rescalings only.
#[derive(Clone, Debug)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    pub fn new(p: &IntPoly) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut chain = vec![p.clone()];
        let d = p.derivative();
        if d.is_zero() {
            return Ok(SturmChain { chain });
        }
        chain.push(d);
        loop {
            let n = chain.len();
            let (a, b) = (&chain[n - 2], &chain[n - 1]);
            let delta = a.degree().unwrap_or(0) + 1 - b.degree().unwrap_or(0);
            let mut r = a.pseudo_rem(b)?;
            if b.leading().is_negative() && delta % 2 == 1 {
                r = r.neg();
            }
            if r.is_zero() {
                break;
            }
            let c = r.content();
            let r = IntPoly::new(r.coeffs().iter().map(|x| -(x / &c)).collect());
            chain.push(r);
        }
        Ok(SturmChain { chain })
    }

    fn changes(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut n = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                n += 1;
            }
            last = s;
        }
        n
    }

    pub fn variations_at(&self, x: &Rat) -> usize {
        Self::changes(self.chain.iter().map(|q| rat_sign(&q.eval_rat(x))))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::changes(self.chain.iter().map(|q| sign(&q.leading())))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::changes(self.chain.iter().map(|q| {
            let s = sign(&q.leading());
            if q.degree().unwrap_or(0) % 2 == 1 {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in (a, b].
    pub fn count_in(&self, a: &Rat, b: &Rat) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_positive(&self) -> usize {
        self.variations_at(&Rat::zero()).saturating_sub(self.variations_at_pos_inf())
    }

    pub fn count_negative(&self) -> usize {
        // (-inf, 0) excludes zero; callers must handle p(0) = 0 separately
        let zero_is_root = self.chain[0].eval(&BigInt::zero()).is_zero();
        self.variations_at_neg_inf()
            .saturating_sub(self.variations_at(&Rat::zero()))
            .saturating_sub(zero_is_root as usize)
    }

    pub fn count_real(&self) -> usize {
        self.variations_at_neg_inf().saturating_sub(self.variations_at_pos_inf())
    }
}

/// Strict bound on the absolute value of every complex root.
pub fn cauchy_bound(p: &IntPoly) -> Rat {
    let lc = p.leading().abs();
    let m = p.coeffs()[..p.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_default();
    Rat::new(m, lc) + Rat::one()
}

/// Isolating intervals for the real roots of a squarefree polynomial, in
/// increasing order.
pub fn real_root_isolation(p: &IntPoly) -> Result<Vec<RootInterval>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !p.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if p.degree() == Some(0) {
        return Ok(vec![]);
    }
    let sturm = SturmChain::new(p)?;
    let b = cauchy_bound(p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sturm.count_in(&lo, &hi);
        match n {
            0 => {}
            1 => out.push(RootInterval { lo, hi }),
            _ => {
                let m = split_point(p, &lo, &hi);
                if p.eval_rat(&m).is_zero() {
                    unreachable!("split_point avoids roots");
                }
                stack.push((lo, m.clone()));
                stack.push((m, hi));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    Ok(out)
}

// A point strictly inside (lo, hi) that is not a root of p.
fn split_point(p: &IntPoly, lo: &Rat, hi: &Rat) -> Rat {
    let w = hi - lo;
    for den in 2i64.. {
        for num in 1..den {
            let m = lo + &w * rat(num, den);
            if !p.eval_rat(&m).is_zero() {
                return m;
            }
        }
    }
    unreachable!()
}

/// Bisect an isolating interval (simple root, non-root endpoints) until its
/// width is at most `width`.
pub fn refine(p: &IntPoly, iv: &RootInterval, width: &Rat) -> RootInterval {
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    if lo == hi {
        return iv.clone();
    }
    let s_lo = rat_sign(&p.eval_rat(&lo));
    while &(&hi - &lo) > width {
        let m = (&lo + &hi) / Rat::from_integer(BigInt::from(2));
        let s = rat_sign(&p.eval_rat(&m));
        if s == 0 {
            return RootInterval { lo: m.clone(), hi: m };
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    RootInterval { lo, hi }
}

/// Enclosure of `{ q(x) : x in [lo, hi] }` by interval Horner evaluation.
pub fn eval_interval(q: &RatPoly, lo: &Rat, hi: &Rat) -> (Rat, Rat) {
    let mut acc = (Rat::zero(), Rat::zero());
    for c in q.coeffs().iter().rev() {
        let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
        let mn = prods.iter().min().cloned().unwrap();
        let mx = prods.iter().max().cloned().unwrap();
        acc = (mn + c, mx + c);
    }
    acc
}

/// Sign of `q` at the unique root of `p` in `iv`, decided exactly, together
/// with an enclosure of the value whose width is at most `tol`.
/// Fails if `q` vanishes at that root.
pub fn sign_and_enclosure_at_root(
    p: &IntPoly,
    q: &RatPoly,
    iv: &RootInterval,
    tol: &Rat,
) -> Result<(i8, (Rat, Rat))> {
    let (qn, _) = q.to_int_with_denominator();
    if qn.is_zero() {
        return Err(Error::VanishesAtRoot);
    }
    // q(root) = 0 iff gcd(p, qn) has a root in iv
    let g = p.gcd(&qn);
    if g.degree().unwrap_or(0) > 0 {
        if iv.is_exact() {
            if g.eval_rat(&iv.lo).is_zero() {
                return Err(Error::VanishesAtRoot);
            }
        } else if SturmChain::new(&g)?.count_in(&iv.lo, &iv.hi) > 0 {
            return Err(Error::VanishesAtRoot);
        }
    }
    let mut cur = iv.clone();
    let mut w = cur.width();
    loop {
        let (lo, hi) = eval_interval(q, &cur.lo, &cur.hi);
        let definite = lo.is_positive() || hi.is_negative() || cur.is_exact();
        if definite && &(&hi - &lo) <= tol {
            let s = if cur.is_exact() { rat_sign(&lo) } else if lo.is_positive() { 1 } else { -1 };
            return Ok((s, (lo, hi)));
        }
        w = w / Rat::from_integer(BigInt::from(16));
        cur = refine(p, &cur, &w);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_ratio_quadratic() {
        let q = IntPoly::from_i64(&[1, -3, 1]);
        let roots = real_root_isolation(&q).unwrap();
        assert_eq!(roots.len(), 2);
        let a = refine(&q, &roots[0], &rat(1, 1_000_000));
        let b = refine(&q, &roots[1], &rat(1, 1_000_000));
        // (3 - sqrt5)/2 = 0.3819660..., (3 + sqrt5)/2 = 2.6180339...
        assert!(a.contains(&rat(381966, 1_000_000)) || a.lo > rat(381965, 1_000_000));
        assert!(a.hi < rat(381967, 1_000_000) && a.lo > rat(381965, 1_000_000));
        assert!(b.hi < rat(2618035, 1_000_000) && b.lo > rat(2618033, 1_000_000));
    }

    #[test]
    fn no_real_roots() {
        assert!(real_root_isolation(&IntPoly::from_i64(&[1, 0, 1])).unwrap().is_empty());
    }

    #[test]
    fn rejects_non_squarefree() {
        let f = IntPoly::from_i64(&[1, 2, 1]);
        assert_eq!(real_root_isolation(&f), Err(Error::NotSquarefree));
    }

    #[test]
    fn rational_roots_are_handled() {
        // (X)(X-1)(X+1)(2X-1): roots at the first split points
        let f = IntPoly::from_i64(&[0, 1])
            .mul(&IntPoly::from_i64(&[-1, 1]))
            .mul(&IntPoly::from_i64(&[1, 1]))
            .mul(&IntPoly::from_i64(&[-1, 2]));
        let r = real_root_isolation(&f).unwrap();
        assert_eq!(r.len(), 4);
        for w in r.windows(2) {
            assert!(w[0].hi <= w[1].lo);
        }
    }

    #[test]
    fn sign_counts() {
        // (X-2)(X+3)(X-5)
        let f = IntPoly::from_i64(&[-2, 1]).mul(&IntPoly::from_i64(&[3, 1])).mul(&IntPoly::from_i64(&[-5, 1]));
        let s = SturmChain::new(&f).unwrap();
        assert_eq!(s.count_positive(), 2);
        assert_eq!(s.count_negative(), 1);
        assert_eq!(s.count_real(), 3);
    }
}
