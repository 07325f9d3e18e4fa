//! Named reference manifolds with their cohomology descriptors and surgery
//! plans.

use alloc::vec;
use alloc::vec::Vec;

use crate::f2::F2Vector;
use crate::form::{MsDescriptor, SymTrilinearForm};
use crate::plan::{KbBlock, LinkPlan};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: &'static str,
    pub descriptor: MsDescriptor,
    pub plan: LinkPlan,
}

/// Triples are 1-based here, as in the printed rings.
fn entry(
    name: &'static str,
    rank: usize,
    nonorientable: bool,
    triples: &[[usize; 3]],
    plan: LinkPlan,
) -> Entry {
    let zero_based: Vec<[usize; 3]> = triples.iter().map(|t| t.map(|i| i - 1)).collect();
    let form = SymTrilinearForm::from_triples(rank, &zero_based).expect("catalogue triple");
    let w = if nonorientable {
        F2Vector::basis(rank, 0)
    } else {
        F2Vector::zero(rank)
    };
    Entry {
        name,
        descriptor: MsDescriptor::new(form, w).expect("catalogue descriptor"),
        plan,
    }
}

fn orientable_plan(framings: &[i64], clasps: &[[usize; 2]], borromeans: &[[usize; 3]]) -> LinkPlan {
    let mut p = LinkPlan::trivial(true, framings.len());
    p.framings = framings.to_vec();
    p.clasps = clasps.to_vec();
    p.borromeans = borromeans.to_vec();
    p
}

pub const NAMES: [&str; 13] = [
    "s3",
    "rp3",
    "s1xs2",
    "l41",
    "q8",
    "rp3#rp3",
    "mt-halfturn",
    "fig4",
    "fig5",
    "s2xts1",
    "s1xrp2",
    "s1xkb",
    "sol",
];

pub fn all() -> Vec<Entry> {
    let mut s1xrp2 = LinkPlan::trivial(false, 1);
    s1xrp2.rp2_blocks = vec![1];
    let mut s1xkb = LinkPlan::trivial(false, 2);
    s1xkb.kb_blocks = vec![KbBlock {
        a: 1,
        q: 2,
        k: false,
        m: false,
    }];
    let mut sol = LinkPlan::trivial(false, 2);
    sol.kb_blocks = vec![KbBlock {
        a: 1,
        q: 2,
        k: true,
        m: true,
    }];

    vec![
        entry("s3", 0, false, &[], LinkPlan::trivial(true, 0)),
        entry(
            "rp3",
            1,
            false,
            &[[1, 1, 1]],
            orientable_plan(&[2], &[], &[]),
        ),
        entry("s1xs2", 1, false, &[], orientable_plan(&[0], &[], &[])),
        // x² = 0 in degree 1 mod 2, so the ring agrees with S¹×S²
        entry("l41", 1, false, &[], orientable_plan(&[0], &[], &[])),
        entry(
            "q8",
            2,
            false,
            &[[1, 1, 2], [1, 2, 2]],
            orientable_plan(&[0, 0], &[[1, 2]], &[]),
        ),
        entry(
            "rp3#rp3",
            2,
            false,
            &[[1, 1, 1], [2, 2, 2]],
            orientable_plan(&[2, 2], &[], &[]),
        ),
        entry(
            "mt-halfturn",
            3,
            false,
            &[[2, 2, 3], [2, 3, 3], [1, 2, 3]],
            orientable_plan(&[0, 0, 0], &[[2, 3]], &[[1, 2, 3]]),
        ),
        entry(
            "fig4",
            3,
            false,
            &[[1, 1, 3], [1, 3, 3], [2, 2, 3], [2, 3, 3], [1, 2, 3]],
            orientable_plan(&[0, 0, 0], &[[1, 3], [2, 3]], &[]),
        ),
        entry(
            "fig5",
            3,
            false,
            &[
                [1, 1, 2],
                [1, 2, 2],
                [1, 1, 3],
                [1, 3, 3],
                [2, 2, 3],
                [2, 3, 3],
                [1, 2, 3],
            ],
            orientable_plan(&[0, 0, 0], &[[1, 2], [1, 3], [2, 3]], &[]),
        ),
        entry("s2xts1", 1, true, &[], LinkPlan::trivial(false, 0)),
        entry("s1xrp2", 2, true, &[[1, 1, 2]], s1xrp2),
        entry("s1xkb", 3, true, &[[1, 2, 3], [2, 2, 3]], s1xkb),
        entry(
            "sol",
            3,
            true,
            &[[1, 2, 3], [2, 2, 3], [2, 2, 2], [3, 3, 3]],
            sol,
        ),
    ]
}

pub fn get(name: &str) -> Option<Entry> {
    all().into_iter().find(|e| e.name == name)
}
