//! Symmetric trilinear forms over F₂ and MS-descriptors.
//!
//! A closed 3-manifold's mod-2 cohomology ring is a Poincaré duality algebra
//! whose degree-2 part is identified with the dual of the degree-1 part, so
//! the whole ring is determined by the triple product
//! `ν(x, y, z) = ⟨x ∪ y ∪ z, [M]⟩` on degree-1 classes together with the
//! orientation class `w`. [`SymTrilinearForm`] stores `ν` as one bit per
//! multiset `{i ≤ j ≤ k}` of basis indices; [`MsDescriptor`] pairs it with
//! `w`. Nonsingularity of the pairing A¹ × A² → A³ holds by construction of
//! this representation and is never checked at runtime.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::f2::{F2Matrix, F2Vector, MAX_DIM};

/// `C(rank + 2, 3)`, the number of multisets `{i ≤ j ≤ k}`.
pub const fn multiset_count(rank: usize) -> usize {
    rank * (rank + 1) * (rank + 2) / 6
}

/// All multisets `[i, j, k]` with `i ≤ j ≤ k < rank`, in lexicographic order.
pub fn multisets(rank: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..rank).flat_map(move |i| (i..rank).flat_map(move |j| (j..rank).map(move |k| [i, j, k])))
}

#[inline]
fn sort3(mut t: [usize; 3]) -> [usize; 3] {
    if t[0] > t[1] {
        t.swap(0, 1);
    }
    if t[1] > t[2] {
        t.swap(1, 2);
    }
    if t[0] > t[1] {
        t.swap(0, 1);
    }
    t
}

/// Position of a sorted multiset in the order of [`multisets`].
pub fn multiset_index(rank: usize, t: [usize; 3]) -> usize {
    let [i, j, k] = sort3(t);
    debug_assert!(k < rank);
    // multisets whose first entry is below i
    let before_i: usize = (0..i).map(|a| (rank - a) * (rank - a + 1) / 2).sum();
    // then those starting with i whose second entry is below j
    let before_j: usize = (i..j).map(|b| rank - b).sum();
    before_i + before_j + (k - j)
}

/// The fully symmetric `ρ × ρ × ρ` tensor of a form, packed so that
/// `cells[i * ρ + j]` is the mask of all `k` with `ν(e_i, e_j, e_k) = 1`.
#[derive(Clone)]
pub(crate) struct Tensor {
    rank: usize,
    cells: Vec<u64>,
}

impl Tensor {
    #[inline]
    pub(crate) fn cell(&self, i: usize, j: usize) -> u64 {
        self.cells[i * self.rank + j]
    }

    #[inline]
    pub(crate) fn eval(&self, x: u64, y: u64, z: u64) -> bool {
        let mut parity = 0u32;
        let mut xs = x;
        while xs != 0 {
            let i = xs.trailing_zeros() as usize;
            xs &= xs - 1;
            let mut ys = y;
            while ys != 0 {
                let j = ys.trailing_zeros() as usize;
                ys &= ys - 1;
                parity ^= (self.cells[i * self.rank + j] & z).count_ones();
            }
        }
        parity & 1 == 1
    }
}

/// The triple product of an MS-algebra: a symmetric trilinear form on F₂^ρ.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymTrilinearForm {
    rank: usize,
    bits: Vec<u64>,
}

impl SymTrilinearForm {
    pub fn zero(rank: usize) -> Self {
        assert!(rank <= MAX_DIM, "rank {rank} exceeds {MAX_DIM}");
        SymTrilinearForm {
            rank,
            bits: alloc::vec![0; multiset_count(rank).div_ceil(64)],
        }
    }

    /// A form whose nonzero multisets are exactly `triples` (0-based, any
    /// order within a triple). Repeated multisets cancel in pairs.
    pub fn from_triples(rank: usize, triples: &[[usize; 3]]) -> Result<Self> {
        let mut f = SymTrilinearForm::zero(rank);
        for &t in triples {
            for &idx in &t {
                if idx >= rank {
                    return Err(Error::IndexOutOfRange {
                        index: idx,
                        bound: rank,
                    });
                }
            }
            f.flip_index(multiset_index(rank, t));
        }
        Ok(f)
    }

    /// The form with the given multiset bits, multiset 0 in the most
    /// significant position (see [`SymTrilinearForm::code`]).
    pub fn from_code(rank: usize, code: u64) -> Self {
        let n = multiset_count(rank);
        assert!(n <= 64, "rank {rank} too large for a 64-bit code");
        let mut f = SymTrilinearForm::zero(rank);
        for m in 0..n {
            if (code >> (n - 1 - m)) & 1 == 1 {
                f.flip_index(m);
            }
        }
        f
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    #[inline]
    pub fn multiset_count(&self) -> usize {
        multiset_count(self.rank)
    }

    #[inline]
    pub(crate) fn bit(&self, m: usize) -> bool {
        (self.bits[m / 64] >> (m % 64)) & 1 == 1
    }

    #[inline]
    fn flip_index(&mut self, m: usize) {
        self.bits[m / 64] ^= 1 << (m % 64);
    }

    /// `ν(e_i, e_j, e_k)`, indices in any order.
    pub fn get(&self, i: usize, j: usize, k: usize) -> bool {
        self.bit(multiset_index(self.rank, [i, j, k]))
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, value: bool) {
        assert!(i < self.rank && j < self.rank && k < self.rank);
        let m = multiset_index(self.rank, [i, j, k]);
        if self.bit(m) != value {
            self.flip_index(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Nonzero multisets in lexicographic order (0-based).
    pub fn triples(&self) -> Vec<[usize; 3]> {
        multisets(self.rank)
            .enumerate()
            .filter(|&(m, _)| self.bit(m))
            .map(|(_, t)| t)
            .collect()
    }

    /// The serialized bit string read as an integer, multiset 0 first (most
    /// significant). Comparing codes is comparing bit strings
    /// lexicographically. `None` when there are more than 64 multisets.
    pub fn code(&self) -> Option<u64> {
        let n = self.multiset_count();
        (n <= 64).then(|| (0..n).fold(0u64, |acc, m| acc | ((self.bit(m) as u64) << (n - 1 - m))))
    }

    pub(crate) fn tensor(&self) -> Tensor {
        let r = self.rank;
        let mut cells = alloc::vec![0u64; r * r];
        for (m, [i, j, k]) in multisets(r).enumerate() {
            if !self.bit(m) {
                continue;
            }
            for (a, b, c) in [
                (i, j, k),
                (i, k, j),
                (j, i, k),
                (j, k, i),
                (k, i, j),
                (k, j, i),
            ] {
                cells[a * r + b] |= 1 << c;
            }
        }
        Tensor { rank: r, cells }
    }

    /// Trilinear evaluation `Σ xᵢ yⱼ z_k ν{i,j,k}` mod 2.
    pub fn eval(&self, x: &F2Vector, y: &F2Vector, z: &F2Vector) -> Result<bool> {
        for v in [x, y, z] {
            v.check_dim(self.rank)?;
        }
        Ok(self.tensor().eval(x.bits(), y.bits(), z.bits()))
    }

    /// Basis pairs `(i, j)`, `i ≤ j`, on which
    /// `ν(w, eᵢ, eⱼ) = ν(eᵢ, eᵢ, eⱼ) + ν(eᵢ, eⱼ, eⱼ)` fails.
    ///
    /// Both sides are biadditive (squaring is additive in characteristic 2),
    /// so an empty list means the identity holds for all vectors.
    pub fn pw_violations(&self, w: &F2Vector) -> Result<Vec<(usize, usize)>> {
        w.check_dim(self.rank)?;
        let t = self.tensor();
        let mut out = Vec::new();
        for i in 0..self.rank {
            for j in i..self.rank {
                let lhs = t.eval(w.bits(), 1 << i, 1 << j);
                let rhs = self.get(i, i, j) ^ self.get(i, j, j);
                if lhs != rhs {
                    out.push((i, j));
                }
            }
        }
        Ok(out)
    }

    /// The Postnikov–Wu identity `wxy = x²y + xy²`.
    pub fn check_pw(&self, w: &F2Vector) -> Result<bool> {
        Ok(self.pw_violations(w)?.is_empty())
    }

    /// The matrix of Sq¹: column `i` is the functional `j ↦ ν{i,i,j}`.
    pub fn squaring_matrix(&self) -> F2Matrix {
        let t = self.tensor();
        let rows = (0..self.rank)
            .map(|j| (0..self.rank).fold(0u64, |acc, i| acc | (((t.cell(i, i) >> j) & 1) << i)))
            .collect();
        F2Matrix::from_row_bits(self.rank, rows)
    }

    /// The diagonal `cᵢ = ν{i,i,i}`.
    pub fn cube_functional(&self) -> F2Vector {
        let bits = (0..self.rank).fold(0u64, |acc, i| acc | ((self.get(i, i, i) as u64) << i));
        F2Vector::from_bits(self.rank, bits)
    }

    /// `x ↦ ν(x, x, x)`.
    pub fn cube(&self, x: &F2Vector) -> Result<bool> {
        self.eval(x, x, x)
    }

    /// Gram matrix of the bilinear form `(x, y) ↦ ν(a, x, y)`.
    pub fn contraction(&self, a: &F2Vector) -> Result<F2Matrix> {
        a.check_dim(self.rank)?;
        let t = self.tensor();
        let rows = (0..self.rank)
            .map(|i| {
                (0..self.rank).fold(0u64, |acc, j| {
                    acc | ((t.eval(a.bits(), 1 << i, 1 << j) as u64) << j)
                })
            })
            .collect();
        Ok(F2Matrix::from_row_bits(self.rank, rows))
    }

    /// The form `f′(x, y, z) = f(gx, gy, gz)`. This is a right action:
    /// pulling back by `g` then `h` equals pulling back by `g·h`.
    pub fn pullback(&self, g: &F2Matrix) -> Result<SymTrilinearForm> {
        if g.rows() != self.rank || g.cols() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                found: g.rows().max(g.cols()),
            });
        }
        if !g.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(self.pullback_unchecked(g))
    }

    pub(crate) fn pullback_unchecked(&self, g: &F2Matrix) -> SymTrilinearForm {
        let t = self.tensor();
        let cols: Vec<u64> = (0..self.rank).map(|c| g.column(c).bits()).collect();
        let mut out = SymTrilinearForm::zero(self.rank);
        for (m, [i, j, k]) in multisets(self.rank).enumerate() {
            if t.eval(cols[i], cols[j], cols[k]) {
                out.flip_index(m);
            }
        }
        out
    }

    /// Dimension of the kernel of `x ⊙ y ↦ (z ↦ ν(x, y, z))` on the
    /// symmetric square, i.e. `C(ρ+1, 2)` minus the rank of that map.
    pub fn cup_kernel_dim(&self) -> usize {
        let t = self.tensor();
        let rows = (0..self.rank)
            .flat_map(|i| (i..self.rank).map(move |j| (i, j)))
            .map(|(i, j)| t.cell(i, j))
            .collect::<Vec<_>>();
        let pairs = rows.len();
        pairs - F2Matrix::from_row_bits(self.rank, rows).rank()
    }
}

impl fmt::Debug for SymTrilinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SymTrilinearForm(rank {}; ", self.rank)?;
        let mut first = true;
        for [i, j, k] in self.triples() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{{{},{},{}}}", i + 1, j + 1, k + 1)?;
        }
        f.write_str(")")
    }
}

/// An MS-algebra up to isomorphism: the triple product and the orientation
/// class `w` (zero iff orientable).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MsDescriptor {
    pub form: SymTrilinearForm,
    pub w: F2Vector,
}

impl MsDescriptor {
    /// Checks dimensions only; see [`MsDescriptor::check_pw`].
    pub fn new(form: SymTrilinearForm, w: F2Vector) -> Result<Self> {
        w.check_dim(form.rank())?;
        Ok(MsDescriptor { form, w })
    }

    pub fn orientable(form: SymTrilinearForm) -> Self {
        let w = F2Vector::zero(form.rank());
        MsDescriptor { form, w }
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn is_orientable(&self) -> bool {
        self.w.is_zero()
    }

    pub fn check_pw(&self) -> bool {
        self.form.check_pw(&self.w).unwrap_or(false)
    }

    /// Fails with the first violated basis pair.
    pub fn require_pw(&self) -> Result<()> {
        match self.form.pw_violations(&self.w)?.first() {
            None => Ok(()),
            Some(&(i, j)) => Err(Error::PostnikovWu { i, j }),
        }
    }

    /// The descriptor expressed in the basis given by the columns of `g`:
    /// the form is pulled back and `w` becomes `g⁻¹w`.
    pub fn transport(&self, g: &F2Matrix) -> Result<MsDescriptor> {
        let form = self.form.pullback(g)?;
        let w = g.inverse()?.apply(&self.w);
        Ok(MsDescriptor { form, w })
    }

    /// Rank of `x ↦ w·x`, equal to the rank of `(x, y) ↦ ν(w, x, y)`.
    pub fn sigma(&self) -> usize {
        self.form
            .contraction(&self.w)
            .map(|m| m.rank())
            .unwrap_or(0)
    }
}

/// A witness `g` with `pullback(b.form, g) = a.form` and `g·a.w = b.w`, or
/// `None` when the descriptors are not isomorphic.
///
/// Ranks up to 4 compare canonical forms; larger ranks use a backtracking
/// search over images of basis vectors.
pub fn isomorphic(a: &MsDescriptor, b: &MsDescriptor) -> Option<F2Matrix> {
    if a.rank() != b.rank() || a.w.is_zero() != b.w.is_zero() {
        return None;
    }
    if a.rank() == 0 {
        return Some(F2Matrix::identity(0));
    }
    if a.rank() <= crate::classify::MAX_CANONICAL_RANK {
        let (ca, ga) = crate::classify::canonical_with_witness(a).ok()?;
        let (cb, gb) = crate::classify::canonical_with_witness(b).ok()?;
        if ca != cb {
            return None;
        }
        // pullback(a, ga) = pullback(b, gb)  ⇒  pullback(b, gb·ga⁻¹) = a
        gb.mul(&ga.inverse().ok()?).ok()
    } else {
        isomorphic_backtrack(a, b)
    }
}

/// Exhaustive backtracking isomorphism search: assigns images of e₁, e₂, …
/// in increasing vector order, pruning on every triple product among the
/// basis vectors placed so far.
pub fn isomorphic_backtrack(a: &MsDescriptor, b: &MsDescriptor) -> Option<F2Matrix> {
    let n = a.rank();
    if n != b.rank() {
        return None;
    }
    let tb = b.form.tensor();
    let mut images: Vec<u64> = Vec::with_capacity(n);
    // span of chosen images, kept in echelon form keyed by leading bit
    fn search(
        a: &MsDescriptor,
        b: &MsDescriptor,
        tb: &Tensor,
        images: &mut Vec<u64>,
        span: &mut Vec<u64>,
    ) -> bool {
        let n = a.rank();
        let idx = images.len();
        if idx == n {
            let gw = a.w.support().fold(0u64, |acc, i| acc ^ images[i]);
            return gw == b.w.bits();
        }
        for v in 1u64..(1u64 << n) {
            if reduce(span, v) == 0 {
                continue;
            }
            images.push(v);
            let consistent = (0..=idx).all(|j| {
                (j..=idx).all(|k| tb.eval(images[j], images[k], v) == a.form.get(j, k, idx))
            });
            if consistent {
                let r = reduce(span, v);
                span.push(r);
                if search(a, b, tb, images, span) {
                    return true;
                }
                span.pop();
            }
            images.pop();
        }
        false
    }
    fn reduce(span: &[u64], mut v: u64) -> u64 {
        for &s in span {
            let lead = 63 - s.leading_zeros();
            if (v >> lead) & 1 == 1 {
                v ^= s;
            }
        }
        v
    }
    let mut span = Vec::with_capacity(n);
    if search(a, b, &tb, &mut images, &mut span) {
        let cols: Vec<F2Vector> = images.iter().map(|&v| F2Vector::from_bits(n, v)).collect();
        Some(F2Matrix::from_columns(n, &cols))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn q8() -> SymTrilinearForm {
        SymTrilinearForm::from_triples(2, &[[0, 0, 1], [0, 1, 1]]).unwrap()
    }

    fn mt_half_turn() -> SymTrilinearForm {
        SymTrilinearForm::from_triples(3, &[[1, 1, 2], [1, 2, 2], [0, 1, 2]]).unwrap()
    }

    fn sol() -> (SymTrilinearForm, F2Vector) {
        let f = SymTrilinearForm::from_triples(3, &[[0, 1, 2], [1, 1, 2], [1, 1, 1], [2, 2, 2]])
            .unwrap();
        (f, F2Vector::basis(3, 0))
    }

    fn v(bits: &[u8]) -> F2Vector {
        F2Vector::from_bools(&bits.iter().map(|&b| b == 1).collect::<Vec<_>>())
    }

    #[test]
    fn multiset_indexing_is_dense_and_ordered() {
        for rank in 0..6 {
            for (m, t) in multisets(rank).enumerate() {
                assert_eq!(multiset_index(rank, t), m);
                assert_eq!(multiset_index(rank, [t[2], t[0], t[1]]), m);
            }
            assert_eq!(multisets(rank).count(), multiset_count(rank));
        }
    }

    #[test]
    fn eval_examples() {
        let f = q8();
        assert!(f.eval(&v(&[1, 0]), &v(&[1, 0]), &v(&[0, 1])).unwrap());
        assert!(!f.eval(&v(&[1, 1]), &v(&[1, 0]), &v(&[0, 0])).unwrap());
        // expansion over all 8 ordered basis triples: u²v and uv² each appear
        // three times, so the total is 6 ≡ 0
        assert!(!f.eval(&v(&[1, 1]), &v(&[1, 1]), &v(&[1, 1])).unwrap());
        assert_eq!(
            f.eval(&v(&[1]), &v(&[1, 0]), &v(&[1, 0])),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn check_pw_examples() {
        assert!(q8().check_pw(&F2Vector::zero(2)).unwrap());
        let lopsided = SymTrilinearForm::from_triples(2, &[[0, 0, 1]]).unwrap();
        assert_eq!(
            lopsided.pw_violations(&F2Vector::zero(2)).unwrap(),
            vec![(0, 1)]
        );
        let (f, w) = sol();
        assert!(f.check_pw(&w).unwrap());
    }

    #[test]
    fn squaring_matrix_examples() {
        assert_eq!(
            q8().squaring_matrix(),
            F2Matrix::from_rows(&[&[0, 1], &[1, 0]])
        );
        assert_eq!(
            SymTrilinearForm::zero(3).squaring_matrix(),
            F2Matrix::zero(3, 3)
        );
        let q = mt_half_turn().squaring_matrix();
        let expected = F2Matrix::from_rows(&[&[0, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        assert_eq!(q, expected);
    }

    #[test]
    fn cube_functional_examples() {
        let rp3 = SymTrilinearForm::from_triples(1, &[[0, 0, 0]]).unwrap();
        assert_eq!(rp3.cube_functional(), v(&[1]));
        assert_eq!(SymTrilinearForm::zero(1).cube_functional(), v(&[0]));
        let rp3_sum = SymTrilinearForm::from_triples(2, &[[0, 0, 0], [1, 1, 1]]).unwrap();
        assert_eq!(rp3_sum.cube_functional(), v(&[1, 1]));
    }

    #[test]
    fn pullback_examples() {
        let f = mt_half_turn();
        assert_eq!(f.pullback(&F2Matrix::identity(3)).unwrap(), f);
        let swap = F2Matrix::from_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(q8().pullback(&swap).unwrap(), q8());

        // e₂ ↦ e₂ + e₁; recompute every multiset by expanding eval directly
        let g = F2Matrix::transvection(3, 0, 1);
        let pulled = f.pullback(&g).unwrap();
        for [i, j, k] in multisets(3) {
            let cols = [g.column(i), g.column(j), g.column(k)];
            let mut expect = false;
            for a in cols[0].support() {
                for b in cols[1].support() {
                    for c in cols[2].support() {
                        expect ^= f.get(a, b, c);
                    }
                }
            }
            assert_eq!(pulled.get(i, j, k), expect, "multiset {:?}", [i, j, k]);
        }
        assert_eq!(
            q8().pullback(&F2Matrix::from_rows(&[&[1, 1], &[1, 1]])),
            Err(Error::Singular)
        );
    }

    #[test]
    fn cup_kernel_examples() {
        assert_eq!(q8().cup_kernel_dim(), 1);
        let rp3_sum = SymTrilinearForm::from_triples(2, &[[0, 0, 0], [1, 1, 1]]).unwrap();
        assert_eq!(rp3_sum.cup_kernel_dim(), 1);
        assert_eq!(SymTrilinearForm::zero(2).cup_kernel_dim(), 3);
    }

    #[test]
    fn code_round_trip() {
        let f = mt_half_turn();
        let code = f.code().unwrap();
        assert_eq!(SymTrilinearForm::from_code(3, code), f);
        // {1,1,1} is the most significant bit
        let rp3 = SymTrilinearForm::from_triples(3, &[[0, 0, 0]]).unwrap();
        assert_eq!(rp3.code(), Some(1 << 9));
    }

    #[test]
    fn isomorphic_examples() {
        let d = MsDescriptor::orientable(q8());
        let g = isomorphic(&d, &d).unwrap();
        assert_eq!(d.form.pullback(&g).unwrap(), d.form);
        let rp3 =
            MsDescriptor::orientable(SymTrilinearForm::from_triples(1, &[[0, 0, 0]]).unwrap());
        let s1s2 = MsDescriptor::orientable(SymTrilinearForm::zero(1));
        assert!(isomorphic(&rp3, &s1s2).is_none());
    }

    #[test]
    fn backtracking_finds_witness_for_transported_sol() {
        let (f, w) = sol();
        let a = MsDescriptor::new(f, w).unwrap();
        let g = F2Matrix::from_rows(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert!(!g.is_invertible());
        let g = F2Matrix::from_rows(&[&[1, 1, 0], &[0, 1, 1], &[0, 0, 1]]);
        let b = a.transport(&g).unwrap();
        for candidate in [isomorphic_backtrack(&a, &b), isomorphic(&a, &b)] {
            let h = candidate.unwrap();
            assert_eq!(b.form.pullback(&h).unwrap(), a.form);
            assert_eq!(h.apply(&a.w), b.w);
        }
    }
}
