use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{fmt_rat, Rat};
use crate::error::{Error, Result};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

/// Dense row-major matrix of rationals (always in lowest terms).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

macro_rules! dense_common {
    ($ty:ident, $elem:ty) => {
        impl $ty {
            pub fn zeros(rows: usize, cols: usize) -> Self {
                $ty { rows, cols, data: vec![<$elem>::zero(); rows * cols] }
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = <$elem>::one();
                }
                m
            }

            pub fn from_vec(rows: usize, cols: usize, data: Vec<$elem>) -> Result<Self> {
                if data.len() != rows * cols {
                    return Err(Error::DimensionMismatch(format!(
                        "{} entries for a {rows}x{cols} matrix",
                        data.len()
                    )));
                }
                Ok($ty { rows, cols, data })
            }

            pub fn from_rows_vec(rows: Vec<Vec<$elem>>) -> Result<Self> {
                let r = rows.len();
                let c = rows.first().map_or(0, |row| row.len());
                if rows.iter().any(|row| row.len() != c) {
                    return Err(Error::DimensionMismatch("ragged rows".into()));
                }
                Ok($ty { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
            }

            pub fn rows(&self) -> usize {
                self.rows
            }

            pub fn cols(&self) -> usize {
                self.cols
            }

            pub fn is_square(&self) -> bool {
                self.rows == self.cols
            }

            pub fn entries(&self) -> &[$elem] {
                &self.data
            }

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn col(&self, j: usize) -> Vec<$elem> {
                (0..self.rows).map(|i| self[(i, j)].clone()).collect()
            }

            pub fn row_vecs(&self) -> Vec<Vec<$elem>> {
                (0..self.rows).map(|i| self.row(i).to_vec()).collect()
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t[(j, i)] = self[(i, j)].clone();
                    }
                }
                t
            }

            pub fn is_symmetric(&self) -> bool {
                self.is_square()
                    && (0..self.rows)
                        .all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
            }

            pub fn is_zero(&self) -> bool {
                self.data.iter().all(|x| x.is_zero())
            }

            pub fn mul(&self, other: &Self) -> Result<Self> {
                if self.cols != other.rows {
                    return Err(Error::DimensionMismatch(format!(
                        "cannot multiply {}x{} by {}x{}",
                        self.rows, self.cols, other.rows, other.cols
                    )));
                }
                let mut out = Self::zeros(self.rows, other.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self[(i, k)];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..other.cols {
                            let b = &other[(k, j)];
                            if !b.is_zero() {
                                out.data[i * other.cols + j] += a * b;
                            }
                        }
                    }
                }
                Ok(out)
            }

            pub fn add(&self, other: &Self) -> Result<Self> {
                self.zip(other, |a, b| a + b)
            }

            pub fn sub(&self, other: &Self) -> Result<Self> {
                self.zip(other, |a, b| a - b)
            }

            fn zip(&self, other: &Self, f: impl Fn(&$elem, &$elem) -> $elem) -> Result<Self> {
                if self.rows != other.rows || self.cols != other.cols {
                    return Err(Error::DimensionMismatch("shape mismatch".into()));
                }
                let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
                Ok($ty { rows: self.rows, cols: self.cols, data })
            }

            pub fn scale(&self, s: &$elem) -> Self {
                $ty { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * s).collect() }
            }

            pub fn mul_vec(&self, v: &[$elem]) -> Result<Vec<$elem>> {
                if v.len() != self.cols {
                    return Err(Error::DimensionMismatch("vector length".into()));
                }
                Ok((0..self.rows)
                    .map(|i| {
                        self.row(i).iter().zip(v).fold(<$elem>::zero(), |acc, (a, b)| acc + a * b)
                    })
                    .collect())
            }

            /// x^T M y.
            pub fn bilinear(&self, x: &[$elem], y: &[$elem]) -> Result<$elem> {
                let my = self.mul_vec(y)?;
                if x.len() != my.len() {
                    return Err(Error::DimensionMismatch("vector length".into()));
                }
                Ok(x.iter().zip(&my).fold(<$elem>::zero(), |acc, (a, b)| acc + a * b))
            }

            /// Block diagonal sum.
            pub fn direct_sum(&self, other: &Self) -> Self {
                let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        out[(i, j)] = self[(i, j)].clone();
                    }
                }
                for i in 0..other.rows {
                    for j in 0..other.cols {
                        out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
                    }
                }
                out
            }

            /// Columns `start..end`.
            pub fn col_range(&self, start: usize, end: usize) -> Self {
                let mut out = Self::zeros(self.rows, end - start);
                for i in 0..self.rows {
                    for j in start..end {
                        out[(i, j - start)] = self[(i, j)].clone();
                    }
                }
                out
            }

            /// Horizontal concatenation.
            pub fn hstack(&self, other: &Self) -> Result<Self> {
                if self.rows != other.rows {
                    return Err(Error::DimensionMismatch("hstack row counts".into()));
                }
                let mut out = Self::zeros(self.rows, self.cols + other.cols);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        out[(i, j)] = self[(i, j)].clone();
                    }
                    for j in 0..other.cols {
                        out[(i, self.cols + j)] = other[(i, j)].clone();
                    }
                }
                Ok(out)
            }

            pub fn swap_rows(&mut self, a: usize, b: usize) {
                if a != b {
                    for j in 0..self.cols {
                        self.data.swap(a * self.cols + j, b * self.cols + j);
                    }
                }
            }

            pub fn swap_cols(&mut self, a: usize, b: usize) {
                if a != b {
                    for i in 0..self.rows {
                        self.data.swap(i * self.cols + a, i * self.cols + b);
                    }
                }
            }

            /// row[dst] += factor * row[src]
            pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &$elem) {
                if factor.is_zero() {
                    return;
                }
                for j in 0..self.cols {
                    let v = &self.data[src * self.cols + j] * factor;
                    self.data[dst * self.cols + j] += v;
                }
            }

            /// col[dst] += factor * col[src]
            pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &$elem) {
                if factor.is_zero() {
                    return;
                }
                for i in 0..self.rows {
                    let v = &self.data[i * self.cols + src] * factor;
                    self.data[i * self.cols + dst] += v;
                }
            }

            pub fn negate_row(&mut self, i: usize) {
                for j in 0..self.cols {
                    let v = -std::mem::take(&mut self.data[i * self.cols + j]);
                    self.data[i * self.cols + j] = v;
                }
            }
        }

        impl Index<(usize, usize)> for $ty {
            type Output = $elem;
            fn index(&self, (i, j): (usize, usize)) -> &$elem {
                assert!(i < self.rows && j < self.cols, "index out of bounds");
                &self.data[i * self.cols + j]
            }
        }

        impl IndexMut<(usize, usize)> for $ty {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut $elem {
                assert!(i < self.rows && j < self.cols, "index out of bounds");
                &mut self.data[i * self.cols + j]
            }
        }
    };
}

dense_common!(IntMatrix, BigInt);
dense_common!(RatMatrix, Rat);

impl IntMatrix {
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows_vec(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
            .expect("ragged literal")
    }

    pub fn from_i64_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_rows_vec(rows.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).collect()
    }

    pub fn from_diagonal(d: &[BigInt]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m[(i, i)] = x.clone();
        }
        m
    }
}

impl RatMatrix {
    /// Some integer matrix if all entries are integral.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(IntMatrix {
                rows: self.rows,
                cols: self.cols,
                data: self.data.iter().map(|x| x.to_integer()).collect(),
            })
        } else {
            None
        }
    }

    /// Least common multiple of all denominators.
    pub fn common_denominator(&self) -> BigInt {
        use num_integer::Integer;
        self.data.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    pub fn from_cols(cols: &[Vec<Rat>]) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut m = Self::zeros(r, c);
        for (j, col) in cols.iter().enumerate() {
            if col.len() != r {
                return Err(Error::DimensionMismatch("ragged columns".into()));
            }
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.row_vecs().iter().map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{:?}", self.row_vecs().iter().map(|r| r.iter().map(fmt_rat).collect::<Vec<_>>()).collect::<Vec<_>>())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
