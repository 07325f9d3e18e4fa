//! Compiling a descriptor into a surgery plan that evaluates back to it.
//!
//! Orientable descriptors are realized in the given basis: one component per
//! basis vector, framings from cubes, clasps from the (symmetric) pair
//! products, and Borromean moves correcting whatever triple products the
//! clasps did not already produce.
//!
//! Nonorientable descriptors are first normalized so that `e₁ = w` and the
//! `w`-pairing consists of disjoint pairs. The pair containing `w` (present
//! iff `w² ≠ 0`) becomes an RP² block and every other pair a Klein-bottle
//! block; the remaining products are then filled in exactly as in the
//! orientable case. The correction is triangular: framings touch only cubes,
//! clasps touch pair products and triples, Borromean moves touch only
//! triples.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2::F2Matrix;
use crate::form::{multisets, MsDescriptor};
use crate::normal::normalize_nonorientable;
use crate::plan::{KbBlock, LinkPlan};

/// A plan and the basis it realizes: evaluating `plan` yields
/// `descriptor.transport(basis_change)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Realization {
    pub plan: LinkPlan,
    pub basis_change: F2Matrix,
}

pub fn realize(d: &MsDescriptor) -> Result<Realization> {
    d.require_pw()?;
    if d.is_orientable() {
        let plan = plan_in_basis(d, true, &[], &[]);
        return Ok(Realization {
            plan,
            basis_change: F2Matrix::identity(d.rank()),
        });
    }

    let nf = normalize_nonorientable(&d.form, &d.w)?;
    let target = d.transport(&nf.g)?;
    let f = &target.form;
    let mut rp2 = Vec::new();
    let mut kb = Vec::new();
    for &(p, q) in &nf.report.pairs {
        if p == 1 {
            // (w, x₂): component q − 1 = 1
            rp2.push(q - 1);
            continue;
        }
        // basis indices p−1, q−1 are components p−1, q−1; exactly one of
        // ν(x,x,y), ν(x,y,y) is set since their sum is W(x,y) = 1
        let (x, y) = (p - 1, q - 1);
        let (a, b) = if f.get(x, x, y) { (x, y) } else { (y, x) };
        kb.push(KbBlock {
            a,
            q: b,
            k: f.get(a, a, a),
            m: f.get(b, b, b),
        });
    }
    let plan = plan_in_basis(&target, false, &rp2, &kb);
    Ok(Realization {
        plan,
        basis_change: nf.g,
    })
}

/// Fills in framings, clasps and Borromean corrections around the given
/// blocks so that the plan evaluates to `target` exactly.
fn plan_in_basis(
    target: &MsDescriptor,
    orientable: bool,
    rp2: &[usize],
    kb: &[KbBlock],
) -> LinkPlan {
    let f = &target.form;
    let n = if orientable { f.rank() } else { f.rank() - 1 };
    let mut plan = LinkPlan::trivial(orientable, n);
    plan.rp2_blocks = rp2.to_vec();
    plan.kb_blocks = kb.to_vec();
    let offset = usize::from(!orientable);
    let idx = |c: usize| c - 1 + offset;

    let kb_pairs: BTreeSet<(usize, usize)> =
        kb.iter().map(|b| (b.a.min(b.q), b.a.max(b.q))).collect();
    let kb_strands: BTreeSet<usize> = kb.iter().flat_map(|b| [b.a, b.q]).collect();

    for c in 1..=n {
        if !kb_strands.contains(&c) && f.get(idx(c), idx(c), idx(c)) {
            plan.framings[c - 1] = 2;
        }
    }

    let mut clasped = BTreeSet::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if !kb_pairs.contains(&(i, j)) && f.get(idx(i), idx(i), idx(j)) {
                clasped.insert((i, j));
                plan.clasps.push([i, j]);
            }
        }
    }

    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                let clasps = [(i, j), (i, k), (j, k)]
                    .iter()
                    .filter(|p| clasped.contains(p))
                    .count();
                if f.get(idx(i), idx(j), idx(k)) != (clasps >= 2) {
                    plan.borromeans.push([i, j, k]);
                }
            }
        }
    }
    plan
}

/// Why a round trip failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mismatch {
    /// The descriptor violates Postnikov–Wu on this basis pair (0-based).
    NotRealizable { i: usize, j: usize },
    /// The evaluated form differs on this multiset (0-based).
    Entry([usize; 3]),
    /// The evaluated orientation class differs.
    OrientationClass,
    /// The evaluator rejected the plan or returned the wrong rank.
    Evaluation,
}

/// Realizes `d`, evaluates the plan and compares with `d` in the realizing
/// basis.
pub fn roundtrip(d: &MsDescriptor) -> Result<(), Mismatch> {
    roundtrip_with(d, |p| p.eval().ok().map(|r| r.descriptor))
}

/// As [`roundtrip`] with a caller-supplied plan evaluator.
pub fn roundtrip_with(
    d: &MsDescriptor,
    eval: impl FnOnce(&LinkPlan) -> Option<MsDescriptor>,
) -> Result<(), Mismatch> {
    let r = match realize(d) {
        Ok(r) => r,
        Err(Error::PostnikovWu { i, j }) => return Err(Mismatch::NotRealizable { i, j }),
        Err(_) => return Err(Mismatch::Evaluation),
    };
    let expected = d
        .transport(&r.basis_change)
        .map_err(|_| Mismatch::Evaluation)?;
    let got = eval(&r.plan).ok_or(Mismatch::Evaluation)?;
    if got.rank() != expected.rank() {
        return Err(Mismatch::Evaluation);
    }
    if let Some(t) = multisets(expected.rank())
        .find(|&[i, j, k]| got.form.get(i, j, k) != expected.form.get(i, j, k))
    {
        return Err(Mismatch::Entry(t));
    }
    if got.w != expected.w {
        return Err(Mismatch::OrientationClass);
    }
    Ok(())
}
