//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Ranks use fraction-free (Bareiss) elimination on integer rows; kernels and
//! changes of basis use reduced row echelon form over the rationals. Pivots
//! are always the first nonzero entry in column order, so every result is
//! reproducible bit-for-bit.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn frac(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Dense row-major matrix of rationals. `0 x m` and `m x 0` shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount {
                rows,
                cols,
                actual: entries.len(),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for k in 0..size {
            m.set(k, k, Rational::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(rows, cols, entries.iter().map(|&x| rat(x)).collect())
    }

    /// Builds a matrix from nested rows; all rows must share one length.
    /// An empty row list gives a `0 x cols` matrix.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for (index, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::VectorLength {
                    index,
                    expected: cols,
                    actual: row.len(),
                });
            }
            entries.extend(row);
        }
        Self::new(nrows, cols, entries)
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::VectorLength {
                    index: c,
                    expected: rows,
                    actual: col.len(),
                });
            }
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    /// Matrix product; panics on incompatible shapes.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "incompatible matrix shapes");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "incompatible vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    /// Block diagonal sum `self ⊕ other`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
        }
        for r in 0..other.rows {
            for c in 0..other.cols {
                out.set(self.rows + r, self.cols + c, other.get(r, c).clone());
            }
        }
        out
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Self {
        let mut out = Self::zeros(self.rows, self.cols);
        for (dst, &src) in perm.iter().enumerate() {
            for c in 0..self.cols {
                out.set(dst, c, self.get(src, c).clone());
            }
        }
        out
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Self {
        self.transpose().permute_rows(perm).transpose()
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Rank over the rationals by fraction-free elimination.
///
/// Each row is first scaled by the lcm of its denominators, so the working
/// matrix is integral and every division in the Bareiss update is exact.
pub fn rank(m: &RatMatrix) -> usize {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|r| integral_row(m.row(r))).collect();

    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let x = &row[j];
                let y = &pivot_row[j];
                if lead.is_zero() {
                    if x.is_zero() {
                        continue;
                    }
                    row[j] = (pivot * x) / &prev;
                } else if x.is_zero() {
                    if y.is_zero() {
                        continue;
                    }
                    row[j] = -(&lead * y) / &prev;
                } else {
                    row[j] = (pivot * x - &lead * y) / &prev;
                }
            }
        }
        prev = pivot_row[c].clone();
        r += 1;
    }
    r
}

fn integral_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
}

/// Reduced row echelon form together with the pivot columns.
pub(crate) fn rref(m: &RatMatrix) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let rows = m.rows();
    let cols = m.cols();
    let mut a: Vec<Vec<Rational>> = (0..rows).map(|r| m.row(r).to_vec()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&k| !a[k][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (k, row) in a.iter_mut().enumerate() {
            if k == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for j in c..cols {
                if !pivot_row[j].is_zero() {
                    row[j] -= &factor * &pivot_row[j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

/// Basis of the null space, one vector per free column (in column order).
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let cols = m.cols();
    let (reduced, pivots) = rref(m);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &RatMatrix) -> Option<RatMatrix> {
    let n = m.rows();
    if n != m.cols() {
        return None;
    }
    let mut aug = RatMatrix::zeros(n, 2 * n);
    for r in 0..n {
        for c in 0..n {
            aug.set(r, c, m.get(r, c).clone());
        }
        aug.set(r, n + r, Rational::one());
    }
    if n == 0 {
        return Some(RatMatrix::zeros(0, 0));
    }
    let (reduced, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    let entries = reduced.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
    RatMatrix::new(n, n, entries).ok()
}

/// A subspace of `k^ambient` together with a completion to a full basis.
///
/// The completion takes the standard vectors `e_j` for every non-pivot column
/// of the subspace basis in echelon form, so it is deterministic.
#[derive(Debug, Clone)]
pub(crate) struct QuotientFrame {
    sub_dim: usize,
    complement: Vec<Vec<Rational>>,
    to_coords: RatMatrix,
    sub_basis: Vec<Vec<Rational>>,
}

impl QuotientFrame {
    pub(crate) fn new(subspace_basis: &[Vec<Rational>], ambient_dim: usize) -> Result<Self> {
        for (index, v) in subspace_basis.iter().enumerate() {
            if v.len() != ambient_dim {
                return Err(Error::VectorLength {
                    index,
                    expected: ambient_dim,
                    actual: v.len(),
                });
            }
        }
        let sub = RatMatrix::from_rows(ambient_dim, subspace_basis.to_vec())?;
        let (_, pivots) = rref(&sub);
        if pivots.len() != subspace_basis.len() {
            return Err(Error::DependentBasis);
        }
        let complement: Vec<Vec<Rational>> = (0..ambient_dim)
            .filter(|c| !pivots.contains(c))
            .map(|c| {
                let mut e = vec![Rational::zero(); ambient_dim];
                e[c] = Rational::one();
                e
            })
            .collect();
        let columns: Vec<Vec<Rational>> = subspace_basis.iter().chain(complement.iter()).cloned().collect();
        let change = RatMatrix::from_columns(ambient_dim, &columns)?;
        let to_coords = inverse(&change).ok_or(Error::DependentBasis)?;
        Ok(Self {
            sub_dim: subspace_basis.len(),
            complement,
            to_coords,
            sub_basis: subspace_basis.to_vec(),
        })
    }

    pub(crate) fn quotient_dim(&self) -> usize {
        self.complement.len()
    }

    fn coords(&self, v: &[Rational]) -> Vec<Rational> {
        self.to_coords.mul_vec(v)
    }

    /// The map induced on quotients by `map: src ambient -> dst ambient`.
    /// Fails when `map` does not carry the source subspace into the target one.
    pub(crate) fn induced(src: &Self, dst: &Self, map: &RatMatrix) -> Option<RatMatrix> {
        for b in &src.sub_basis {
            let image = dst.coords(&map.mul_vec(b));
            if image[dst.sub_dim..].iter().any(|x| !x.is_zero()) {
                return None;
            }
        }
        let mut out = RatMatrix::zeros(dst.quotient_dim(), src.quotient_dim());
        for (c, v) in src.complement.iter().enumerate() {
            let image = dst.coords(&map.mul_vec(v));
            for (r, x) in image.into_iter().skip(dst.sub_dim).enumerate() {
                out.set(r, c, x);
            }
        }
        Some(out)
    }
}

/// Expresses each endomorphism on the quotient of `k^ambient_dim` by the span
/// of `subspace_basis`.
pub fn quotient_matrices(
    subspace_basis: &[Vec<Rational>],
    ambient_dim: usize,
    maps: &[RatMatrix],
) -> Result<Vec<RatMatrix>> {
    let frame = QuotientFrame::new(subspace_basis, ambient_dim)?;
    maps.iter()
        .enumerate()
        .map(|(index, map)| {
            if map.rows() != ambient_dim || map.cols() != ambient_dim {
                return Err(Error::ShapeMismatch {
                    arrow: index.to_string(),
                    rows: ambient_dim,
                    cols: ambient_dim,
                    actual_rows: map.rows(),
                    actual_cols: map.cols(),
                });
            }
            QuotientFrame::induced(&frame, &frame, map).ok_or(Error::NotInvariant { map: index })
        })
        .collect()
}
