//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the algorithms under test beyond plain accessors.

#![allow(dead_code)]

use mscoh_core::form::{multiset_count, multisets};
use mscoh_core::{F2Matrix, F2Vector, MsDescriptor, SymTrilinearForm};

/// Every invertible ρ×ρ matrix, by scanning all 2^(ρ²) bit patterns and
/// testing that the columns span (via the size of their span).
pub fn all_gl(rho: usize) -> Vec<F2Matrix> {
    let mut out = Vec::new();
    for pattern in 0u64..1 << (rho * rho) {
        let cols: Vec<u64> = (0..rho)
            .map(|c| (pattern >> (c * rho)) & ((1 << rho) - 1))
            .collect();
        let mut span = vec![false; 1 << rho];
        for mask in 0u64..1 << rho {
            let v = (0..rho)
                .filter(|&c| mask >> c & 1 == 1)
                .fold(0, |acc, c| acc ^ cols[c]);
            span[v as usize] = true;
        }
        if span.iter().all(|&s| s) {
            let columns: Vec<F2Vector> =
                cols.iter().map(|&b| F2Vector::from_bits(rho, b)).collect();
            out.push(F2Matrix::from_columns(rho, &columns));
        }
    }
    out
}

/// `ν(x, y, z)` by expanding over all index triples.
pub fn eval_oracle(f: &SymTrilinearForm, x: u64, y: u64, z: u64) -> bool {
    let n = f.rank();
    let mut acc = false;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if x >> i & 1 == 1 && y >> j & 1 == 1 && z >> k & 1 == 1 {
                    acc ^= f.get(i, j, k);
                }
            }
        }
    }
    acc
}

/// `(x, y, z) ↦ f(gx, gy, gz)` by direct expansion.
pub fn pullback_oracle(f: &SymTrilinearForm, g: &F2Matrix) -> SymTrilinearForm {
    let n = f.rank();
    let col = |c: usize| (0..n).fold(0u64, |acc, r| acc | (g.get(r, c) as u64) << r);
    let mut out = SymTrilinearForm::zero(n);
    for [i, j, k] in multisets(n) {
        out.set(i, j, k, eval_oracle(f, col(i), col(j), col(k)));
    }
    out
}

pub fn mat_vec(g: &F2Matrix, v: u64) -> u64 {
    (0..g.rows()).fold(0, |acc, r| {
        let bit = (0..g.cols())
            .filter(|&c| g.get(r, c) && v >> c & 1 == 1)
            .count()
            % 2;
        acc | (bit as u64) << r
    })
}

/// Postnikov–Wu checked on every pair of vectors.
pub fn pw_oracle(f: &SymTrilinearForm, w: u64) -> bool {
    let n = f.rank();
    (0u64..1 << n).all(|x| {
        (0u64..1 << n)
            .all(|y| eval_oracle(f, w, x, y) == (eval_oracle(f, x, x, y) ^ eval_oracle(f, x, y, y)))
    })
}

pub fn form_from_mask(rho: usize, mask: u64) -> SymTrilinearForm {
    let mut f = SymTrilinearForm::zero(rho);
    for (m, [i, j, k]) in multisets(rho).enumerate() {
        f.set(i, j, k, mask >> m & 1 == 1);
    }
    f
}

/// Every Postnikov–Wu form for the given `w`, by scanning all forms.
pub fn pw_forms(rho: usize, w: u64) -> Vec<SymTrilinearForm> {
    (0u64..1 << multiset_count(rho))
        .map(|m| form_from_mask(rho, m))
        .filter(|f| pw_oracle(f, w))
        .collect()
}

/// Every Postnikov–Wu descriptor of rank `rho`, all `w`.
pub fn all_descriptors(rho: usize) -> Vec<MsDescriptor> {
    (0u64..1 << rho)
        .flat_map(|w| {
            pw_forms(rho, w)
                .into_iter()
                .map(move |f| MsDescriptor::new(f, F2Vector::from_bits(rho, w)).unwrap())
        })
        .collect()
}

/// Isomorphism classes among the given forms under the subgroup of `group`
/// fixing `w`, as sorted lists of orbit sizes.
pub fn orbit_sizes_oracle(
    rho: usize,
    w: u64,
    group: &[F2Matrix],
    forms: &[SymTrilinearForm],
) -> Vec<u64> {
    let stab: Vec<&F2Matrix> = group.iter().filter(|g| mat_vec(g, w) == w).collect();
    let key = |f: &SymTrilinearForm| {
        multisets(rho)
            .map(|[i, j, k]| f.get(i, j, k))
            .collect::<Vec<_>>()
    };
    let mut assigned = std::collections::BTreeSet::new();
    let mut sizes = Vec::new();
    for f in forms {
        if assigned.contains(&key(f)) {
            continue;
        }
        let orbit: std::collections::BTreeSet<Vec<bool>> =
            stab.iter().map(|g| key(&pullback_oracle(f, g))).collect();
        sizes.push(orbit.len() as u64);
        assigned.extend(orbit);
    }
    sizes.sort_unstable();
    sizes
}
