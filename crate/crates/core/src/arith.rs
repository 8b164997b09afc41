//! Integer helpers: perfect squares, modular arithmetic, factorization.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(v: &BigInt) -> Rat {
    Rat::from_integer(v.clone())
}

/// Zero counts as a perfect square; negatives never do.
pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Least nonnegative residue.
pub fn mod_floor(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

/// Reduce a rational into `[0, modulus)`.
pub fn rat_mod(q: &Rat, modulus: &BigInt) -> Rat {
    let m = rat_int(modulus);
    let k = (q / &m).floor();
    q - k * m
}

/// Interpret a rational with denominator coprime to `m` as an element of Z/m.
pub fn rat_to_residue(q: &Rat, m: &BigInt) -> Option<BigInt> {
    let inv = mod_inverse(q.denom(), m)?;
    Some((q.numer() * inv).mod_floor(m))
}

fn pow_mod(base: &BigInt, exp: &BigInt, m: &BigInt) -> BigInt {
    base.modpow(exp, m)
}

/// Deterministic Miller-Rabin for n < 3.3e24, probabilistic-strength beyond.
pub fn is_prime(n: &BigInt) -> bool {
    let two = int(2);
    if *n < two {
        return false;
    }
    for p in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let p = BigInt::from(p);
        if *n == p {
            return true;
        }
        if (n % &p).is_zero() {
            return false;
        }
    }
    let n1 = n - 1u32;
    let mut d = n1.clone();
    let mut s = 0u32;
    while d.is_even() {
        d >>= 1;
        s += 1;
    }
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let mut x = pow_mod(&BigInt::from(a), &d, n);
        if x.is_one() || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: &BigInt) -> BigInt {
    if n.is_even() {
        return int(2);
    }
    let mut c = BigInt::one();
    loop {
        let f = |x: &BigInt| (x * x + &c) % n;
        let mut x = int(2);
        let mut y = int(2);
        let mut d = BigInt::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            d = (&x - &y).abs().gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization of |n| as sorted (prime, exponent) pairs.
/// Trial division up to 10^6, Pollard rho for whatever remains.
pub fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    if n.is_zero() {
        return out;
    }
    let push = |p: BigInt, out: &mut Vec<(BigInt, u32)>| {
        if let Some(e) = out.iter_mut().find(|(q, _)| *q == p) {
            e.1 += 1;
        } else {
            out.push((p, 1));
        }
    };
    let mut p = 2u64;
    while p <= 1_000_000 {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            n /= &bp;
            push(bp.clone(), &mut out);
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut stack = vec![];
    if n > BigInt::one() {
        stack.push(n);
    }
    while let Some(m) = stack.pop() {
        if is_prime(&m) {
            push(m, &mut out);
        } else {
            let d = pollard_rho(&m);
            stack.push(&m / &d);
            stack.push(d);
        }
    }
    out.sort();
    out
}

/// p-adic valuation of a nonzero integer.
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.abs();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Euler's totient for small arguments.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Format a rational as "p/q" or "p".
pub fn fmt_rat(q: &Rat) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => match s.split_once('.') {
            Some((whole, frac)) => {
                if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
                    return None;
                }
                let neg = whole.starts_with('-');
                let digits: BigInt = format!("{}{frac}", whole.trim_start_matches(['-', '+'])).parse().ok()?;
                let r = Rat::new(digits, BigInt::from(10u32).pow(frac.len() as u32));
                Some(if neg { -r } else { r })
            }
            None => Some(Rat::from_integer(s.parse().ok()?)),
        },
    }
}

/// Decimal rendering of a rational with `sig` significant digits (round half away from zero).
pub fn rat_to_sig_digits(q: &Rat, sig: u32) -> String {
    if q.is_zero() {
        return "0".to_string();
    }
    let neg = q.is_negative();
    let a = q.abs();
    // exponent e with 10^e <= a < 10^(e+1)
    let mut e: i64 = (a.numer().bits() as i64 - a.denom().bits() as i64) * 3 / 10;
    let ten = Rat::from_integer(int(10));
    let pow = |k: i64| -> Rat {
        if k >= 0 {
            Rat::from_integer(int(10).pow(k as u32))
        } else {
            Rat::new(BigInt::one(), int(10).pow((-k) as u32))
        }
    };
    while pow(e) > a {
        e -= 1;
    }
    while pow(e + 1) <= a {
        e += 1;
    }
    let shift = sig as i64 - 1 - e;
    let scaled = &a * pow(shift);
    let half = rat(1, 2);
    let mut digits = (scaled + half).floor().to_integer();
    let mut shift = shift;
    if digits == int(10).pow(sig) {
        digits /= 10;
        shift -= 1;
    }
    let _ = ten;
    let s = digits.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{s}{zeros}")
    } else {
        let shift = shift as usize;
        if s.len() > shift {
            let (i, f) = s.split_at(s.len() - shift);
            format!("{i}.{f}")
        } else {
            format!("0.{}{}", "0".repeat(shift - s.len()), s)
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

pub fn to_f64(q: &Rat) -> f64 {
    q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
}
