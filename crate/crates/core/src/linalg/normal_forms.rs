use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Smith normal form `U·M·V = D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries d_1 | d_2 | ... (zeros last).
    pub fn diagonal(&self) -> Vec<BigInt> {
        self.d.diagonal()
    }
}

/// Row-style Hermite normal form `H = U·M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Number of nonzero rows of `h`.
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block becomes the pivot
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if !a[(i, j)].is_zero()
                        && best.is_none_or(|(bi, bj)| a[(i, j)].abs() < a[(bi, bj)].abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                return finish(a, u, v);
            };
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if a[(i, t)].is_zero() {
                    continue;
                }
                let q = a[(i, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(i, t, &-q.clone());
                u.add_row_multiple(i, t, &-q);
                clean &= a[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if a[(t, j)].is_zero() {
                    continue;
                }
                let q = a[(t, j)].div_floor(&a[(t, t)]);
                a.add_col_multiple(j, t, &-q.clone());
                v.add_col_multiple(j, t, &-q);
                clean &= a[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // divisibility: the pivot must divide the whole trailing block
            let bad = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !(&a[(i, j)] % &a[(t, t)]).is_zero())
            });
            match bad {
                Some(i) => {
                    let one = BigInt::from(1);
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(a, u, v)
}

fn finish(d: IntMatrix, u: IntMatrix, v: IntMatrix) -> SnfResult {
    SnfResult { u, d, v }
}

pub fn hermite_normal_form(m: &IntMatrix) -> HnfResult {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h[(i, c)].is_zero() {
                continue;
            }
            let a = h[(r, c)].clone();
            let b = h[(i, c)].clone();
            let e = a.extended_gcd(&b);
            let (g, x, y) = (e.gcd, e.x, e.y);
            let (ag, bg) = (&a / &g, &b / &g);
            combine_rows(&mut h, r, i, &x, &y, &-bg.clone(), &ag);
            combine_rows(&mut u, r, i, &x, &y, &-bg, &ag);
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-q.clone());
                u.add_row_multiple(i, r, &-q);
            }
        }
        pivots.push(c);
        r += 1;
    }
    HnfResult { h, u, rank: r, pivots }
}

// (row_r, row_i) <- (x·row_r + y·row_i, p·row_r + q·row_i)
fn combine_rows(m: &mut IntMatrix, r: usize, i: usize, x: &BigInt, y: &BigInt, p: &BigInt, q: &BigInt) {
    for j in 0..m.cols() {
        let a = m[(r, j)].clone();
        let b = m[(i, j)].clone();
        m[(r, j)] = x * &a + y * &b;
        m[(i, j)] = p * &a + q * &b;
    }
}

/// Basis (as columns) of the integer kernel `{x in Z^n : A·x = 0}`, in
/// Hermite-reduced form. The kernel is automatically saturated.
pub fn integer_kernel(a: &IntMatrix) -> IntMatrix {
    let n = a.cols();
    let hnf = hermite_normal_form(&a.transpose());
    let k = n - hnf.rank;
    let mut basis = IntMatrix::zeros(k, n);
    for (idx, row) in (hnf.rank..n).enumerate() {
        for j in 0..n {
            basis[(idx, j)] = hnf.u[(row, j)].clone();
        }
    }
    hermite_normal_form(&basis).h.transpose()
}
