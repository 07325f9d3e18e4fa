//! Surgery plans: a combinatorial language for framed links in S³ (orientable)
//! or in the nonorientable S²-bundle over S¹, built from a fixed repertoire
//! of tangle blocks, and its evaluator.
//!
//! Components are labelled `1..=n`. The evaluated descriptor uses basis
//! index `c − 1` for component `c` in the orientable case; in the
//! nonorientable case index 0 is the orientation class `w` (the core of the
//! added solid Klein bottle) and component `c` sits at index `c`.
//!
//! Evaluation superposes the contributions of the blocks:
//!
//! * framing 2 on a free component makes its cube nonzero;
//! * a clasp (linking number 2) between `i` and `j` sets `ν(i,i,j) = ν(i,j,j) = 1`;
//! * a triple of components carries a triple product when it holds a
//!   Borromean move, flipped when at least two of its three pairs are clasped;
//! * an RP² block on `i` sets `ν(w,w,i) = 1`;
//! * a Klein-bottle block on strands `(a, q)` sets `ν(w,a,q) = ν(a,a,q) = 1`,
//!   with cubes of `a` and `q` given by its parameters `k` and `m`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::f2::F2Vector;
use crate::form::{MsDescriptor, SymTrilinearForm};

/// A Klein-bottle block. `a` is the strand whose square pairs nontrivially
/// with `q`; `k` and `m` are the framing parities of `a` and `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KbBlock {
    pub a: usize,
    pub q: usize,
    pub k: bool,
    pub m: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkPlan {
    pub orientable: bool,
    pub n: usize,
    /// One entry per component; the accepted values are 0 and ±2.
    pub framings: Vec<i64>,
    pub clasps: Vec<[usize; 2]>,
    pub borromeans: Vec<[usize; 3]>,
    pub rp2_blocks: Vec<usize>,
    pub kb_blocks: Vec<KbBlock>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    FramingCount {
        expected: usize,
        found: usize,
    },
    FramingValue {
        component: usize,
        value: i64,
    },
    IndexOutOfRange {
        primitive: &'static str,
        index: usize,
    },
    RepeatedIndex {
        primitive: &'static str,
        entry: Vec<usize>,
    },
    DuplicateEntry {
        primitive: &'static str,
        entry: Vec<usize>,
    },
    BlockInOrientablePlan {
        primitive: &'static str,
    },
    ComponentInSeveralBlocks {
        component: usize,
    },
    FramedKbStrand {
        component: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FramingCount { expected, found } => {
                write!(f, "framings: expected {expected} entries, found {found}")
            }
            Violation::FramingValue { component, value } => {
                write!(f, "framings: component {component} has framing {value}, expected 0 or 2")
            }
            Violation::IndexOutOfRange { primitive, index } => {
                write!(f, "{primitive}: component {index} out of range")
            }
            Violation::RepeatedIndex { primitive, entry } => {
                write!(f, "{primitive}: repeated index in {entry:?}")
            }
            Violation::DuplicateEntry { primitive, entry } => {
                write!(f, "{primitive}: duplicate entry {entry:?}")
            }
            Violation::BlockInOrientablePlan { primitive } => {
                write!(f, "{primitive}: not allowed in an orientable plan")
            }
            Violation::ComponentInSeveralBlocks { component } => {
                write!(f, "component {component} belongs to more than one rp2/kb block")
            }
            Violation::FramedKbStrand { component } => write!(
                f,
                "framings: component {component} is a kb strand and takes its framing from the block"
            ),
        }
    }
}

/// Evaluated plan: the descriptor of the surgered manifold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalResult {
    pub descriptor: MsDescriptor,
}

impl LinkPlan {
    /// `n` unknotted, unlinked, 0-framed components.
    pub fn trivial(orientable: bool, n: usize) -> Self {
        LinkPlan {
            orientable,
            n,
            framings: alloc::vec![0; n],
            clasps: Vec::new(),
            borromeans: Vec::new(),
            rp2_blocks: Vec::new(),
            kb_blocks: Vec::new(),
        }
    }

    /// Rank of the evaluated descriptor.
    pub fn rank(&self) -> usize {
        if self.orientable {
            self.n
        } else {
            self.n + 1
        }
    }

    /// Basis index of component `c` (1-based) in the evaluated descriptor.
    #[inline]
    pub fn basis_index(&self, c: usize) -> usize {
        if self.orientable {
            c - 1
        } else {
            c
        }
    }

    /// Every primitive list sorted ascending (clasp and Borromean entries
    /// sorted internally first), the form used for serialization.
    pub fn normalized(&self) -> LinkPlan {
        let mut p = self.clone();
        for c in &mut p.clasps {
            c.sort_unstable();
        }
        for b in &mut p.borromeans {
            b.sort_unstable();
        }
        p.clasps.sort_unstable();
        p.borromeans.sort_unstable();
        p.rp2_blocks.sort_unstable();
        p.kb_blocks.sort_unstable();
        p
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let in_range = |c: usize| (1..=self.n).contains(&c);

        if self.framings.len() != self.n {
            out.push(Violation::FramingCount {
                expected: self.n,
                found: self.framings.len(),
            });
        }
        for (i, &fr) in self.framings.iter().enumerate() {
            if !matches!(fr, -2 | 0 | 2) {
                out.push(Violation::FramingValue {
                    component: i + 1,
                    value: fr,
                });
            }
        }

        let mut seen = BTreeSet::new();
        for c in &self.clasps {
            check_entry(&mut out, &mut seen, "clasps", c, in_range);
        }
        let mut seen = BTreeSet::new();
        for b in &self.borromeans {
            check_entry(&mut out, &mut seen, "borromeans", b, in_range);
        }

        if self.orientable {
            if !self.rp2_blocks.is_empty() {
                out.push(Violation::BlockInOrientablePlan {
                    primitive: "rp2_blocks",
                });
            }
            if !self.kb_blocks.is_empty() {
                out.push(Violation::BlockInOrientablePlan {
                    primitive: "kb_blocks",
                });
            }
        }

        let mut in_block = BTreeSet::new();
        let mut claim = |out: &mut Vec<Violation>, c: usize, primitive: &'static str| {
            if !in_range(c) {
                out.push(Violation::IndexOutOfRange {
                    primitive,
                    index: c,
                });
            } else if !in_block.insert(c) {
                out.push(Violation::ComponentInSeveralBlocks { component: c });
            }
        };
        for &c in &self.rp2_blocks {
            claim(&mut out, c, "rp2_blocks");
        }
        for kb in &self.kb_blocks {
            if kb.a == kb.q {
                out.push(Violation::RepeatedIndex {
                    primitive: "kb_blocks",
                    entry: alloc::vec![kb.a, kb.q],
                });
                claim(&mut out, kb.a, "kb_blocks");
                continue;
            }
            claim(&mut out, kb.a, "kb_blocks");
            claim(&mut out, kb.q, "kb_blocks");
            for c in [kb.a, kb.q] {
                if in_range(c) && self.framings.get(c - 1).is_some_and(|&f| f != 0) {
                    out.push(Violation::FramedKbStrand { component: c });
                }
            }
        }
        out
    }

    /// Evaluates the plan to the descriptor of the surgered manifold.
    pub fn eval(&self) -> Result<EvalResult> {
        let violations = self.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidPlan(violations));
        }
        Ok(EvalResult {
            descriptor: self.eval_unchecked(),
        })
    }

    fn eval_unchecked(&self) -> MsDescriptor {
        let rank = self.rank();
        let mut form = SymTrilinearForm::zero(rank);
        let idx = |c: usize| self.basis_index(c);

        let mut clasped = BTreeSet::new();
        for &[i, j] in &self.clasps {
            clasped.insert((i.min(j), i.max(j)));
        }

        // cubes
        let mut kb_strand = alloc::vec![false; self.n + 1];
        for kb in &self.kb_blocks {
            kb_strand[kb.a] = true;
            kb_strand[kb.q] = true;
            form.set(idx(kb.a), idx(kb.a), idx(kb.a), kb.k);
            form.set(idx(kb.q), idx(kb.q), idx(kb.q), kb.m);
        }
        for c in (1..=self.n).filter(|&c| !kb_strand[c]) {
            let cube = (self.framings[c - 1] / 2).rem_euclid(2) == 1;
            form.set(idx(c), idx(c), idx(c), cube);
        }

        // pair products ν(i,i,j), i ≠ j
        for &(i, j) in &clasped {
            form.set(idx(i), idx(i), idx(j), true);
            form.set(idx(i), idx(j), idx(j), true);
        }
        for kb in &self.kb_blocks {
            let (a, q) = (idx(kb.a), idx(kb.q));
            let flipped = !form.get(a, a, q);
            form.set(a, a, q, flipped);
        }

        // triple products
        for i in 1..=self.n {
            for j in i + 1..=self.n {
                for k in j + 1..=self.n {
                    let clasps = [(i, j), (i, k), (j, k)]
                        .iter()
                        .filter(|p| clasped.contains(p))
                        .count();
                    if clasps >= 2 {
                        form.set(idx(i), idx(j), idx(k), true);
                    }
                }
            }
        }
        for b in &self.borromeans {
            let (i, j, k) = (idx(b[0]), idx(b[1]), idx(b[2]));
            let flipped = !form.get(i, j, k);
            form.set(i, j, k, flipped);
        }

        // orientation class
        let w = if self.orientable {
            F2Vector::zero(rank)
        } else {
            for &c in &self.rp2_blocks {
                form.set(0, 0, idx(c), true);
            }
            for kb in &self.kb_blocks {
                form.set(0, idx(kb.a), idx(kb.q), true);
            }
            F2Vector::basis(rank, 0)
        };
        MsDescriptor { form, w }
    }
}

fn check_entry<const N: usize>(
    out: &mut Vec<Violation>,
    seen: &mut BTreeSet<[usize; N]>,
    primitive: &'static str,
    entry: &[usize; N],
    in_range: impl Fn(usize) -> bool,
) {
    for &c in entry {
        if !in_range(c) {
            out.push(Violation::IndexOutOfRange {
                primitive,
                index: c,
            });
        }
    }
    let mut sorted = *entry;
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        out.push(Violation::RepeatedIndex {
            primitive,
            entry: entry.to_vec(),
        });
    } else if !seen.insert(sorted) {
        out.push(Violation::DuplicateEntry {
            primitive,
            entry: entry.to_vec(),
        });
    }
}

/// Disjoint union of two plans; the second plan's components are shifted
/// past the first's. Both must have the same orientability, and in the
/// nonorientable case they share the single class `w`.
pub fn splice(p1: &LinkPlan, p2: &LinkPlan) -> Result<LinkPlan> {
    if p1.orientable != p2.orientable {
        return Err(Error::OrientabilityMismatch);
    }
    let s = p1.n;
    let mut out = p1.clone();
    out.n = p1.n + p2.n;
    out.framings.extend(&p2.framings);
    out.clasps
        .extend(p2.clasps.iter().map(|c| c.map(|i| i + s)));
    out.borromeans
        .extend(p2.borromeans.iter().map(|b| b.map(|i| i + s)));
    out.rp2_blocks.extend(p2.rp2_blocks.iter().map(|i| i + s));
    out.kb_blocks.extend(p2.kb_blocks.iter().map(|kb| KbBlock {
        a: kb.a + s,
        q: kb.q + s,
        ..*kb
    }));
    Ok(out)
}
