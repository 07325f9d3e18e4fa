//! Basis normalization of the two pairings attached to an MS-descriptor.
//!
//! Orientable case: `B(x, y) = ν(x, x, y)` is a symmetric bilinear form
//! whose diagonal is the cube map, and is brought to a block sum of `[1]`
//! blocks, hyperbolic planes and a radical. Nonorientable case: the
//! alternating form `W(x, y) = ν(w, x, y)` is brought to symplectic pairs
//! with `w` kept as the first basis vector.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2::{complete_basis, F2Matrix, F2Vector};
use crate::form::{MsDescriptor, SymTrilinearForm};

/// An invertible change of basis; column `i` is the new `i`-th basis vector
/// written in the old coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange<R> {
    pub g: F2Matrix,
    pub report: R,
}

/// Shape of the squaring pairing in the normalized basis: `a` diagonal `[1]`
/// blocks first, then `b` hyperbolic pairs, then a `c`-dimensional radical.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OrientableReport {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// Shape of the `w`-pairing in the normalized basis (where `e₁ = w`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NonorientableReport {
    pub sigma: usize,
    pub w_square_nonzero: bool,
    /// 1-based index pairs on which `W` is nonzero.
    pub pairs: Vec<(usize, usize)>,
}

/// Evaluates a bilinear form given by its Gram rows (`gram[i]` is the mask of
/// `j` with `B(eᵢ, eⱼ) = 1`).
fn bilinear(gram: &[u64], x: u64, y: u64) -> bool {
    let mut parity = 0;
    let mut xs = x;
    while xs != 0 {
        let i = xs.trailing_zeros() as usize;
        xs &= xs - 1;
        parity ^= (gram[i] & y).count_ones();
    }
    parity & 1 == 1
}

pub fn normalize_orientable(f: &SymTrilinearForm) -> Result<BasisChange<OrientableReport>> {
    let n = f.rank();
    if let Some(&(i, j)) = f.pw_violations(&F2Vector::zero(n))?.first() {
        return Err(Error::PostnikovWu { i, j });
    }
    let gram: Vec<u64> = (0..n)
        .map(|i| (0..n).fold(0u64, |acc, j| acc | ((f.get(i, i, j) as u64) << j)))
        .collect();
    let b = |x: u64, y: u64| bilinear(&gram, x, y);

    let mut rest: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
    let mut diagonal = Vec::new();
    let mut hyperbolic: Vec<(u64, u64)> = Vec::new();
    loop {
        if let Some(pos) = rest.iter().position(|&v| b(v, v)) {
            let d = rest.remove(pos);
            for v in rest.iter_mut() {
                if b(*v, d) {
                    *v ^= d;
                }
            }
            diagonal.push(d);
            continue;
        }
        let pair = (0..rest.len())
            .flat_map(|p| (p + 1..rest.len()).map(move |q| (p, q)))
            .find(|&(p, q)| b(rest[p], rest[q]));
        let Some((p, q)) = pair else { break };
        let v = rest.remove(q);
        let u = rest.remove(p);
        for x in rest.iter_mut() {
            let (bu, bv) = (b(*x, u), b(*x, v));
            if bv {
                *x ^= u;
            }
            if bu {
                *x ^= v;
            }
        }
        hyperbolic.push((u, v));
    }
    // [1] ⊕ H ≅ [1] ⊕ [1] ⊕ [1]; convert so that a non-alternating pairing is
    // fully diagonal and the report depends only on the isomorphism class.
    while !diagonal.is_empty() && !hyperbolic.is_empty() {
        let d = diagonal.pop().unwrap();
        let (u, v) = hyperbolic.pop().unwrap();
        diagonal.extend([d ^ u, d ^ v, d ^ u ^ v]);
    }
    let report = OrientableReport {
        a: diagonal.len(),
        b: hyperbolic.len(),
        c: rest.len(),
    };
    let columns: Vec<F2Vector> = diagonal
        .iter()
        .copied()
        .chain(hyperbolic.iter().flat_map(|&(u, v)| [u, v]))
        .chain(rest.iter().copied())
        .map(|bits| F2Vector::from_bits(n, bits))
        .collect();
    Ok(BasisChange {
        g: F2Matrix::from_columns(n, &columns),
        report,
    })
}

pub fn normalize_nonorientable(
    f: &SymTrilinearForm,
    w: &F2Vector,
) -> Result<BasisChange<NonorientableReport>> {
    let n = f.rank();
    w.check_dim(n)?;
    if w.is_zero() {
        return Err(Error::OrientableClass);
    }
    if let Some(&(i, j)) = f.pw_violations(w)?.first() {
        return Err(Error::PostnikovWu { i, j });
    }
    let gram: Vec<u64> = f
        .contraction(w)?
        .columns()
        .iter()
        .map(|c| c.bits())
        .collect();
    let pairing = |x: u64, y: u64| bilinear(&gram, x, y);

    let start = complete_basis(w)?;
    let mut rest: Vec<u64> = (1..n).map(|c| start.column(c).bits()).collect();
    let mut head: Vec<u64> = Vec::with_capacity(n);
    let mut pairs = Vec::new();
    let wb = w.bits();

    let w_partner = rest.iter().position(|&v| pairing(wb, v));
    let w_square_nonzero = w_partner.is_some();
    head.push(wb);
    if let Some(pos) = w_partner {
        let x2 = rest.remove(pos);
        // xᵢ ← xᵢ + W(xᵢ, x₂)·w + W(xᵢ, w)·x₂
        for x in rest.iter_mut() {
            let (bw, bx) = (pairing(*x, wb), pairing(*x, x2));
            if bx {
                *x ^= wb;
            }
            if bw {
                *x ^= x2;
            }
        }
        head.push(x2);
        pairs.push((1, 2));
    }
    loop {
        let pair = (0..rest.len())
            .flat_map(|p| (p + 1..rest.len()).map(move |q| (p, q)))
            .find(|&(p, q)| pairing(rest[p], rest[q]));
        let Some((p, q)) = pair else { break };
        let v = rest.remove(q);
        let u = rest.remove(p);
        for x in rest.iter_mut() {
            let (bu, bv) = (pairing(*x, u), pairing(*x, v));
            if bv {
                *x ^= u;
            }
            if bu {
                *x ^= v;
            }
        }
        let first = head.len() + 1;
        head.extend([u, v]);
        pairs.push((first, first + 1));
    }
    head.extend(rest);
    let columns: Vec<F2Vector> = head.iter().map(|&b| F2Vector::from_bits(n, b)).collect();
    Ok(BasisChange {
        g: F2Matrix::from_columns(n, &columns),
        report: NonorientableReport {
            sigma: 2 * pairs.len(),
            w_square_nonzero,
            pairs,
        },
    })
}

/// Dispatches on whether `w` vanishes.
pub fn normalize(d: &MsDescriptor) -> Result<NormalForm> {
    if d.is_orientable() {
        normalize_orientable(&d.form).map(NormalForm::Orientable)
    } else {
        normalize_nonorientable(&d.form, &d.w).map(NormalForm::Nonorientable)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalForm {
    Orientable(BasisChange<OrientableReport>),
    Nonorientable(BasisChange<NonorientableReport>),
}

impl NormalForm {
    pub fn basis_change(&self) -> &F2Matrix {
        match self {
            NormalForm::Orientable(b) => &b.g,
            NormalForm::Nonorientable(b) => &b.g,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn form(rank: usize, triples: &[[usize; 3]]) -> SymTrilinearForm {
        SymTrilinearForm::from_triples(rank, triples).unwrap()
    }

    #[test]
    fn orientable_examples() {
        let q8 = form(2, &[[0, 0, 1], [0, 1, 1]]);
        assert_eq!(
            normalize_orientable(&q8).unwrap().report,
            OrientableReport { a: 0, b: 1, c: 0 }
        );
        let rp3_sum = form(2, &[[0, 0, 0], [1, 1, 1]]);
        assert_eq!(
            normalize_orientable(&rp3_sum).unwrap().report,
            OrientableReport { a: 2, b: 0, c: 0 }
        );
        let zero = SymTrilinearForm::zero(3);
        let nf = normalize_orientable(&zero).unwrap();
        assert_eq!(nf.report, OrientableReport { a: 0, b: 0, c: 3 });
        assert_eq!(nf.g, F2Matrix::identity(3));
    }

    #[test]
    fn orientable_rejects_pw_violation() {
        let bad = form(2, &[[0, 0, 1]]);
        assert_eq!(
            normalize_orientable(&bad),
            Err(Error::PostnikovWu { i: 0, j: 1 })
        );
    }

    #[test]
    fn nonorientable_examples() {
        let w = F2Vector::basis(2, 0);
        let s1rp2 = form(2, &[[0, 0, 1]]);
        let r = normalize_nonorientable(&s1rp2, &w).unwrap().report;
        assert_eq!(
            r,
            NonorientableReport {
                sigma: 2,
                w_square_nonzero: true,
                pairs: vec![(1, 2)]
            }
        );

        let w3 = F2Vector::basis(3, 0);
        let sol = form(3, &[[0, 1, 2], [1, 1, 2], [1, 1, 1], [2, 2, 2]]);
        let nf = normalize_nonorientable(&sol, &w3).unwrap();
        assert_eq!(
            nf.report,
            NonorientableReport {
                sigma: 2,
                w_square_nonzero: false,
                pairs: vec![(2, 3)]
            }
        );
        assert_eq!(nf.g, F2Matrix::identity(3));

        let r = normalize_nonorientable(&SymTrilinearForm::zero(2), &w)
            .unwrap()
            .report;
        assert_eq!(
            r,
            NonorientableReport {
                sigma: 0,
                w_square_nonzero: false,
                pairs: vec![]
            }
        );
    }

    #[test]
    fn nonorientable_errors() {
        let f = SymTrilinearForm::zero(2);
        assert_eq!(
            normalize_nonorientable(&f, &F2Vector::zero(2)),
            Err(Error::OrientableClass)
        );
        // ν(w, e₂, e₂) = 1 breaks w·x² = 0
        let bad = form(2, &[[0, 1, 1]]);
        assert!(matches!(
            normalize_nonorientable(&bad, &F2Vector::basis(2, 0)),
            Err(Error::PostnikovWu { .. })
        ));
    }
}
