//! Dense linear algebra over F₂.
//!
//! Vectors pack up to 64 coordinates into one machine word and matrices
//! store one word per row. Elimination always takes the lowest-index pivot,
//! so ranks, kernels and inverses come out the same on every run.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign};

use crate::error::{Error, Result};

/// Largest vector dimension (and matrix column count) supported.
pub const MAX_DIM: usize = 64;

/// Largest rank for which [`group_generators`] is supported.
pub const MAX_GROUP_RANK: usize = 6;

#[inline]
fn low_mask(dim: usize) -> u64 {
    if dim >= 64 {
        u64::MAX
    } else {
        (1u64 << dim) - 1
    }
}

/// A vector in F₂^dim. Coordinate `i` is bit `i` of the packed word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct F2Vector {
    dim: usize,
    bits: u64,
}

impl F2Vector {
    pub fn zero(dim: usize) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        F2Vector { dim, bits: 0 }
    }

    /// Bits above `dim` are discarded.
    pub fn from_bits(dim: usize, bits: u64) -> Self {
        assert!(dim <= MAX_DIM, "dimension {dim} exceeds {MAX_DIM}");
        F2Vector {
            dim,
            bits: bits & low_mask(dim),
        }
    }

    /// The standard basis vector e_i (0-based).
    pub fn basis(dim: usize, i: usize) -> Self {
        assert!(i < dim, "basis index {i} out of range for dimension {dim}");
        F2Vector::from_bits(dim, 1u64 << i)
    }

    pub fn from_bools(coords: &[bool]) -> Self {
        let bits = coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &b)| acc | ((b as u64) << i));
        F2Vector::from_bits(coords.len(), bits)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.dim);
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(
            i < self.dim,
            "index {i} out of range for dimension {}",
            self.dim
        );
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Standard dot product.
    pub fn dot(&self, other: &F2Vector) -> bool {
        debug_assert_eq!(self.dim, other.dim);
        (self.bits & other.bits).count_ones() & 1 == 1
    }

    /// Indices of the nonzero coordinates, ascending.
    pub fn support(&self) -> impl Iterator<Item = usize> {
        let mut bits = self.bits;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    pub(crate) fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: dim,
                found: self.dim,
            })
        }
    }
}

impl Add for F2Vector {
    type Output = F2Vector;
    fn add(self, rhs: F2Vector) -> F2Vector {
        debug_assert_eq!(self.dim, rhs.dim);
        F2Vector {
            dim: self.dim,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl AddAssign for F2Vector {
    fn add_assign(&mut self, rhs: F2Vector) {
        debug_assert_eq!(self.dim, rhs.dim);
        self.bits ^= rhs.bits;
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        f.write_str(")")
    }
}

/// A `rows × cols` matrix over F₂, row-major, one word per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl F2Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(cols <= MAX_DIM, "column count {cols} exceeds {MAX_DIM}");
        F2Matrix {
            rows,
            cols,
            data: alloc::vec![0; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = F2Matrix::zero(n, n);
        for (i, row) in m.data.iter_mut().enumerate() {
            *row = 1 << i;
        }
        m
    }

    /// Row `r` is the low `cols` bits of `rows[r]`.
    pub fn from_row_bits(cols: usize, rows: Vec<u64>) -> Self {
        assert!(cols <= MAX_DIM, "column count {cols} exceeds {MAX_DIM}");
        let mask = low_mask(cols);
        F2Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().map(|r| r & mask).collect(),
        }
    }

    pub fn from_rows(rows: &[&[u8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .map(|r| {
                assert_eq!(r.len(), cols, "ragged matrix rows");
                r.iter()
                    .enumerate()
                    .fold(0u64, |acc, (c, &b)| acc | (((b & 1) as u64) << c))
            })
            .collect();
        F2Matrix::from_row_bits(cols, data)
    }

    /// The matrix whose `i`-th column is `columns[i]`.
    pub fn from_columns(dim: usize, columns: &[F2Vector]) -> Self {
        let mut m = F2Matrix::zero(dim, columns.len());
        for (c, v) in columns.iter().enumerate() {
            assert_eq!(v.dim(), dim, "column dimension mismatch");
            for r in v.support() {
                m.data[r] |= 1 << c;
            }
        }
        m
    }

    /// The elementary transvection `I + E_{ij}`: sends e_j to e_j + e_i and
    /// fixes every other basis vector.
    pub fn transvection(n: usize, i: usize, j: usize) -> Self {
        assert!(i != j && i < n && j < n);
        let mut m = F2Matrix::identity(n);
        m.data[i] |= 1 << j;
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        (self.data[r] >> c) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        if value {
            self.data[r] |= 1 << c;
        } else {
            self.data[r] &= !(1 << c);
        }
    }

    #[inline]
    pub fn row_bits(&self, r: usize) -> u64 {
        self.data[r]
    }

    pub fn row(&self, r: usize) -> F2Vector {
        F2Vector::from_bits(self.cols, self.data[r])
    }

    pub fn column(&self, c: usize) -> F2Vector {
        let bits = self
            .data
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, &row)| acc | (((row >> c) & 1) << r));
        F2Vector::from_bits(self.rows, bits)
    }

    pub fn columns(&self) -> Vec<F2Vector> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn mul_vec(&self, v: &F2Vector) -> Result<F2Vector> {
        v.check_dim(self.cols)?;
        Ok(self.apply(v))
    }

    #[inline]
    pub(crate) fn apply(&self, v: &F2Vector) -> F2Vector {
        let bits = self.data.iter().enumerate().fold(0u64, |acc, (r, &row)| {
            acc | ((((row & v.bits()).count_ones() & 1) as u64) << r)
        });
        F2Vector::from_bits(self.rows, bits)
    }

    pub fn mul(&self, other: &F2Matrix) -> Result<F2Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|&row| {
                let mut acc = 0u64;
                let mut bits = row;
                while bits != 0 {
                    let k = bits.trailing_zeros() as usize;
                    acc ^= other.data[k];
                    bits &= bits - 1;
                }
                acc
            })
            .collect();
        Ok(F2Matrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn transpose(&self) -> F2Matrix {
        let mut t = F2Matrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.data[c] |= 1 << r;
                }
            }
        }
        t
    }

    /// Reduced row echelon form together with the pivot columns.
    fn rref(&self) -> (Vec<u64>, Vec<usize>) {
        let mut rows = self.data.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for c in 0..self.cols {
            let bit = 1u64 << c;
            let Some(p) = (next..rows.len()).find(|&r| rows[r] & bit != 0) else {
                continue;
            };
            rows.swap(next, p);
            let pivot_row = rows[next];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != next && *row & bit != 0 {
                    *row ^= pivot_row;
                }
            }
            pivots.push(c);
            next += 1;
            if next == rows.len() {
                break;
            }
        }
        rows.truncate(next);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right null space `{x : Mx = 0}`, one vector per free
    /// column in ascending order.
    pub fn kernel_basis(&self) -> Vec<F2Vector> {
        let (rows, pivots) = self.rref();
        let mut is_pivot = 0u64;
        for &p in &pivots {
            is_pivot |= 1 << p;
        }
        (0..self.cols)
            .filter(|&c| is_pivot & (1 << c) == 0)
            .map(|free| {
                let mut bits = 1u64 << free;
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row & (1 << free) != 0 {
                        bits |= 1 << p;
                    }
                }
                F2Vector::from_bits(self.cols, bits)
            })
            .collect()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<F2Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut a = self.data.clone();
        let mut inv = F2Matrix::identity(n).data;
        for c in 0..n {
            let bit = 1u64 << c;
            let p = (c..n).find(|&r| a[r] & bit != 0).ok_or(Error::Singular)?;
            a.swap(c, p);
            inv.swap(c, p);
            for r in 0..n {
                if r != c && a[r] & bit != 0 {
                    a[r] ^= a[c];
                    inv[r] ^= inv[c];
                }
            }
        }
        Ok(F2Matrix {
            rows: n,
            cols: n,
            data: inv,
        })
    }
}

impl fmt::Debug for F2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(";")?;
            }
            for c in 0..self.cols {
                f.write_str(if self.get(r, c) { "1" } else { "0" })?;
            }
        }
        f.write_str("]")
    }
}

/// An invertible matrix whose first column is `v`; the remaining columns are
/// the lowest-index standard basis vectors outside the growing span.
pub fn complete_basis(v: &F2Vector) -> Result<F2Matrix> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let dim = v.dim();
    let mut columns = Vec::with_capacity(dim);
    columns.push(*v);
    for i in 0..dim {
        if columns.len() == dim {
            break;
        }
        let mut candidate = columns.clone();
        candidate.push(F2Vector::basis(dim, i));
        if F2Matrix::from_columns(dim, &candidate).rank() == candidate.len() {
            columns = candidate;
        }
    }
    Ok(F2Matrix::from_columns(dim, &columns))
}

/// |GL(n, 2)| = ∏_{i<n} (2^n − 2^i).
pub fn gl_order(n: usize) -> u64 {
    (0..n).map(|i| (1u64 << n) - (1u64 << i)).product()
}

/// A generating set of GL(rho, 2), or of the stabilizer of `fixed` when given.
///
/// All generators are transvections. For the full group these are the
/// elementary `I + E_ij`; the stabilizer of e₁ is generated by those with
/// `j ≠ 1`, and a general `fixed` is handled by conjugating with a basis
/// completion of it.
pub fn group_generators(rho: usize, fixed: Option<&F2Vector>) -> Result<Vec<F2Matrix>> {
    if rho == 0 || rho > MAX_GROUP_RANK {
        return Err(Error::RankOutOfRange {
            rank: rho,
            min: 1,
            max: MAX_GROUP_RANK,
        });
    }
    if let Some(v) = fixed {
        v.check_dim(rho)?;
        if v.is_zero() {
            return Err(Error::ZeroVector);
        }
    }
    if rho == 1 {
        return Ok(alloc::vec![F2Matrix::identity(1)]);
    }
    let elementary = |skip_first_column: bool| {
        let mut out = Vec::new();
        for i in 0..rho {
            for j in 0..rho {
                if i != j && !(skip_first_column && j == 0) {
                    out.push(F2Matrix::transvection(rho, i, j));
                }
            }
        }
        out
    };
    match fixed {
        None => Ok(elementary(false)),
        Some(v) => {
            let h = complete_basis(v)?;
            let h_inv = h.inverse()?;
            elementary(true)
                .into_iter()
                .map(|t| h.mul(&t)?.mul(&h_inv))
                .collect()
        }
    }
}
