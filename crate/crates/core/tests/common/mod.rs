//! Independent oracles and shared property checks for the integration tests.
#![allow(dead_code)]

use k3glue::arith::Rat;
use k3glue::cyclotomic::{build_trace_form_lattice, CycloElement, CycloField, RealSubfieldElement};
use k3glue::lattice::{check_isometry, Isometry, Lattice};
use k3glue::linalg::{self, hermite_normal_form, smith_normal_form, IntMatrix};
use k3glue::poly::IntPoly;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

// ---------- oracles ----------

/// Determinant by Gaussian elimination over Q (no fraction-free tricks).
pub fn rational_det(m: &IntMatrix) -> Rat {
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = m.row_vecs().into_iter().map(|r| r.into_iter().map(Rat::from_integer).collect()).collect();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rat::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let v = &f * &a[c][k];
                a[r][k] -= v;
            }
        }
    }
    det
}

/// Determinant by cofactor expansion along the first row.
pub fn laplace_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut acc = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = &m[0][j] * laplace_det(&minor);
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Signature by symmetric congruence diagonalization over Q.
pub fn ldl_signature(m: &IntMatrix) -> (usize, usize) {
    let n = m.rows();
    let mut a: Vec<Vec<Rat>> = m.row_vecs().into_iter().map(|r| r.into_iter().map(Rat::from_integer).collect()).collect();
    let (mut pos, mut neg) = (0, 0);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        // pick a nonzero diagonal entry, or create one with a congruence
        let piv = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let piv = match piv {
            Some(p) => p,
            None => {
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                let Some((i, j)) = pair else { break };
                // row_i += row_j, col_i += col_j
                for k in 0..n {
                    let v = a[j][k].clone();
                    a[i][k] += v;
                }
                for k in 0..n {
                    let v = a[k][j].clone();
                    a[k][i] += v;
                }
                i
            }
        };
        let d = a[piv][piv].clone();
        if d.is_positive() {
            pos += 1;
        } else {
            neg += 1;
        }
        active.retain(|&i| i != piv);
        for &r in &active {
            let f = &a[r][piv] / &d;
            for &c in &active {
                let v = &f * &a[piv][c];
                a[r][c] -= v;
            }
        }
        for &r in &active {
            a[r][piv] = Rat::zero();
            a[piv][r] = Rat::zero();
        }
    }
    (pos, neg)
}

/// Resultant as the determinant of the Sylvester matrix.
pub fn sylvester_resultant(f: &IntPoly, g: &IntPoly) -> BigInt {
    let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
    let size = m + n;
    if size == 0 {
        return BigInt::one();
    }
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..n {
        for k in 0..=m {
            s[(i, i + k)] = f.coeff(m - k);
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s[(n + i, i + k)] = g.coeff(n - k);
        }
    }
    rational_det(&s).to_integer()
}

fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

fn phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// Ramanujan sum c_n(k) = Tr(ζ_n^k).
pub fn ramanujan_sum(n: u64, k: i64) -> i64 {
    let g = (k.rem_euclid(n as i64) as u64).gcd(&n);
    let g = if g == 0 { n } else { g };
    let q = n / g;
    mobius(q) * (phi(n) / phi(q)) as i64
}

// ---------- strategies ----------

pub fn int_matrix(rows: usize, cols: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec(-bound..=bound, rows * cols)
        .prop_map(move |v| IntMatrix::from_vec(rows, cols, v.into_iter().map(BigInt::from).collect()).unwrap())
}

pub fn any_small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| int_matrix(r, c, 9))
}

pub fn square_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5).prop_flat_map(|n| int_matrix(n, n, 7))
}

pub fn symmetric_matrix() -> impl Strategy<Value = IntMatrix> {
    square_matrix().prop_map(|m| m.add(&m.transpose()).unwrap())
}

pub fn int_poly(max_deg: usize, bound: i64) -> impl Strategy<Value = IntPoly> {
    proptest::collection::vec(-bound..=bound, 1..=max_deg + 1).prop_map(|v| IntPoly::from_i64(&v))
}

/// A product of elementary unimodular operations.
pub fn unimodular(n: usize) -> impl Strategy<Value = IntMatrix> {
    proptest::collection::vec((0..n, 0..n, -2i64..=2), 0..8).prop_map(move |ops| {
        let mut m = IntMatrix::identity(n);
        for (i, j, f) in ops {
            if i != j {
                m.add_row_multiple(i, j, &BigInt::from(f));
            }
        }
        m
    })
}

// ---------- shared checks ----------

pub fn check_snf(m: &IntMatrix) -> Check {
    let s = smith_normal_form(m);
    ensure!(s.u.mul(m).unwrap().mul(&s.v).unwrap() == s.d, "U·M·V != D for {m:?}");
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            ensure!(i == j || s.d[(i, j)].is_zero(), "D is not diagonal");
        }
    }
    let d = s.diagonal();
    ensure!(d.iter().all(|x| !x.is_negative()), "negative invariant factor");
    for w in d.windows(2) {
        ensure!(w[1].is_zero() || (!w[0].is_zero() && w[1].is_multiple_of(&w[0])), "divisibility chain broken: {d:?}");
    }
    ensure!(rational_det(&s.u).abs() == Rat::one(), "U not unimodular");
    ensure!(rational_det(&s.v).abs() == Rat::one(), "V not unimodular");
    Ok(())
}

pub fn check_hnf(m: &IntMatrix) -> Check {
    let h = hermite_normal_form(m);
    ensure!(h.u.mul(m).unwrap() == h.h, "U·M != H");
    ensure!(rational_det(&h.u).abs() == Rat::one(), "U not unimodular");
    ensure!(h.rank == linalg::rank(m), "rank mismatch");
    let mut last: Option<usize> = None;
    for (r, &c) in h.pivots.iter().enumerate() {
        ensure!(last.map_or(true, |l| c > l), "pivots not increasing");
        last = Some(c);
        ensure!(h.h[(r, c)].is_positive(), "pivot not positive");
        for k in 0..c {
            ensure!(h.h[(r, k)].is_zero(), "entry left of pivot");
        }
        for above in 0..r {
            let v = &h.h[(above, c)];
            ensure!(!v.is_negative() && v < &h.h[(r, c)], "above-pivot entry not reduced");
        }
    }
    for r in h.rank..h.h.rows() {
        ensure!(h.h.row(r).iter().all(|x| x.is_zero()), "nonzero row below rank");
    }
    Ok(())
}

pub fn check_charpoly(m: &IntMatrix) -> Check {
    let p = linalg::charpoly(m).unwrap();
    let n = m.rows();
    ensure!(p.degree() == Some(n) && p.is_monic(), "charpoly not monic of degree n");
    ensure!(linalg::poly_at_matrix(&p, m).unwrap().is_zero(), "Cayley-Hamilton fails for {m:?}");
    let det = linalg::det(m).unwrap();
    let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    ensure!(det == sign * p.coeff(0), "det != (-1)^n charpoly(0)");
    ensure!(Rat::from_integer(det.clone()) == rational_det(m), "Bareiss det disagrees with Gaussian elimination");
    let trace: BigInt = (0..n).map(|i| m[(i, i)].clone()).sum();
    ensure!(-p.coeff(n - 1) == trace, "trace mismatch");
    Ok(())
}

pub fn check_signature(m: &IntMatrix) -> Check {
    match linalg::signature_symmetric(m) {
        Ok(s) => {
            ensure!(s == ldl_signature(m), "signature {s:?} vs oracle {:?} for {m:?}", ldl_signature(m));
            ensure!(s.0 + s.1 == m.rows(), "signature does not add up");
        }
        Err(k3glue::Error::Singular) => ensure!(rational_det(m).is_zero(), "nonsingular matrix reported singular"),
        Err(e) => return Err(e.to_string()),
    }
    Ok(())
}

/// Lattices with isometries: a base list transported by unimodular base change.
pub fn base_lattices_with_isometries() -> Vec<(IntMatrix, IntMatrix)> {
    vec![
        (IntMatrix::from_i64(&[&[6002, 3001], &[3001, -6002]]), IntMatrix::from_i64(&[&[1, 1], &[1, 2]])),
        (IntMatrix::from_i64(&[&[2, -1], &[-1, 2]]), IntMatrix::from_i64(&[&[0, -1], &[1, -1]])),
        (IntMatrix::from_i64(&[&[4, 0, 0], &[0, 4, 0], &[0, 0, -6]]), IntMatrix::from_i64(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, -1]])),
        (IntMatrix::from_i64(&[&[2, 1], &[1, -2]]).scale(&BigInt::from(7)), IntMatrix::from_i64(&[&[1, 1], &[1, 2]])),
        (IntMatrix::from_i64(&[&[6, 3], &[3, 6]]), IntMatrix::from_i64(&[&[0, 1], &[1, 0]])),
    ]
}

/// Transport (G, t) along P: Gram PᵀGP and isometry P⁻¹tP.
pub fn transport(g: &IntMatrix, t: &IntMatrix, p: &IntMatrix) -> (Lattice, Isometry) {
    let gp = p.transpose().mul(g).unwrap().mul(p).unwrap();
    let pinv = linalg::inverse(p).unwrap().to_int().unwrap();
    let tp = pinv.mul(t).unwrap().mul(p).unwrap();
    let l = Lattice::new(gp).unwrap();
    let iso = check_isometry(&l, &tp).unwrap();
    (l, iso)
}

pub fn check_glue_action(l: &Lattice, t: &Isometry) -> Check {
    let a = t.induced_glue_action();
    ensure!(a.preserves_forms(), "t̄ does not preserve the torsion forms");
    ensure!(a.group.order() == l.det().abs(), "|G| != |det|");
    // the actions of t and t⁻¹ compose to the identity
    let inv = check_isometry(l, &t.inverse_matrix()).unwrap().induced_glue_action();
    let prod = a.matrix.mul(&inv.matrix).unwrap();
    let orders = a.group.orders();
    for i in 0..prod.rows() {
        for j in 0..prod.cols() {
            let e = if i == j { BigInt::one() } else { BigInt::zero() };
            ensure!((&prod[(i, j)] - e).is_multiple_of(&orders[i]), "t̄ ∘ t̄⁻¹ != id");
        }
    }
    Ok(())
}

/// Twist of the plain trace-form lattice of Q(ζ_n) by a = B(ζ + ζ⁻¹).
pub fn check_twist_det_law(n: u64, b: &IntPoly) -> Check {
    let field = CycloField::new(n);
    let (plain, zeta) = build_trace_form_lattice(&field, &CycloElement::one(&field)).map_err(|e| e.to_string())?;
    let real = RealSubfieldElement::from_int_poly(&field, b).map_err(|e| e.to_string())?;
    if real.is_zero() {
        return Ok(());
    }
    let a = real.embed();
    let poly = a.to_int_poly().ok_or("a not integral")?;
    let det_a = linalg::det(&linalg::poly_at_matrix(&poly, zeta.matrix()).unwrap()).unwrap();
    if det_a.is_zero() {
        return Ok(());
    }
    let twisted = zeta.twist(&poly).map_err(|e| e.to_string())?;
    ensure!(twisted.det() == &(&det_a * plain.det()), "det(L(a)) != det(A(t))·det(L)");
    let norm = a.norm().unwrap();
    ensure!(Rat::from_integer(det_a.clone()) == norm, "det A(t) != N(a)");
    let (direct, _) = build_trace_form_lattice(&field, &a).map_err(|e| e.to_string())?;
    ensure!(direct.gram() == twisted.gram(), "twist differs from the direct trace form");
    ensure!(zeta.on(&twisted).is_ok(), "ζ is not an isometry of the twist");
    Ok(())
}

/// Run a check under proptest with a fixed seed; returns the number of cases.
pub fn run_property<S: Strategy>(cases: u32, strategy: S, f: impl Fn(S::Value) -> Check) -> Result<u32, String>
where
    S::Value: std::fmt::Debug,
{
    use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner
        .run(&strategy, |v| f(v).map_err(proptest::test_runner::TestCaseError::fail))
        .map(|_| cases)
        .map_err(|e| e.to_string())
}
