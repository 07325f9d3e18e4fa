//! Census of MS-descriptors at small rank.
//!
//! For a fixed `w` the Postnikov–Wu identity is a system of linear equations
//! on the bits of the form, so the admissible forms make up a subspace. The
//! stabilizer of `w` acts linearly on it; orbits are found by breadth-first
//! search over a generating set, never by scanning the whole group. Only
//! `w = 0` and `w = e₁` are needed because GL(ρ, 2) is transitive on nonzero
//! vectors.
//!
//! Forms are handled through their 64-bit codes (see
//! [`SymTrilinearForm::code`]); the canonical form of an orbit is the member
//! with the smallest code, i.e. the lexicographically smallest bit string.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::f2::{complete_basis, group_generators, F2Matrix, F2Vector};
use crate::form::{multiset_count, multisets, MsDescriptor, SymTrilinearForm};

pub const MAX_ENUM_RANK: usize = 5;
pub const MAX_CENSUS_RANK: usize = 4;
pub const MAX_CANONICAL_RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WClass {
    Zero,
    Nonzero,
}

impl WClass {
    /// The representative used for censuses: `0` or `e₁`.
    pub fn representative(self, rho: usize) -> F2Vector {
        match self {
            WClass::Zero => F2Vector::zero(rho),
            WClass::Nonzero => F2Vector::basis(rho, 0),
        }
    }

    pub fn of(w: &F2Vector) -> WClass {
        if w.is_zero() {
            WClass::Zero
        } else {
            WClass::Nonzero
        }
    }
}

fn check_rank(rho: usize, max: usize) -> Result<()> {
    if (1..=max).contains(&rho) {
        Ok(())
    } else {
        Err(Error::RankOutOfRange {
            rank: rho,
            min: 1,
            max,
        })
    }
}

/// The forms satisfying Postnikov–Wu for a fixed `w`, as a linear subspace of
/// the code space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub rho: usize,
    pub w: F2Vector,
    /// Codes of a basis of the subspace.
    pub basis: Vec<u64>,
}

impl SolutionSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn size(&self) -> u64 {
        1u64 << self.dim()
    }

    /// The member `Σ cᵢ bᵢ` selected by the bits of `coefficients`.
    pub fn member(&self, coefficients: u64) -> u64 {
        self.basis
            .iter()
            .enumerate()
            .filter(|&(i, _)| (coefficients >> i) & 1 == 1)
            .fold(0, |acc, (_, &b)| acc ^ b)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.size()).map(move |c| self.member(c))
    }

    pub fn descriptor(&self, code: u64) -> MsDescriptor {
        MsDescriptor {
            form: SymTrilinearForm::from_code(self.rho, code),
            w: self.w,
        }
    }

    /// All member codes, ascending.
    pub fn sorted_members(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.iter().collect();
        v.sort_unstable();
        v
    }
}

/// Solves the Postnikov–Wu equations
/// `Σₖ wₖ ν{k,i,j} + ν{i,i,j} + ν{i,j,j} = 0` for all `i ≤ j`.
pub fn enumerate_pw(rho: usize, w: &F2Vector) -> Result<SolutionSpace> {
    check_rank(rho, MAX_ENUM_RANK)?;
    w.check_dim(rho)?;
    let n = multiset_count(rho);
    let to_code_bit = |t: [usize; 3]| 1u64 << (n - 1 - crate::form::multiset_index(rho, t));
    let mut rows = Vec::new();
    for i in 0..rho {
        for j in i..rho {
            let mut row = to_code_bit([i, i, j]) ^ to_code_bit([i, j, j]);
            for k in w.support() {
                row ^= to_code_bit([k, i, j]);
            }
            rows.push(row);
        }
    }
    let basis = F2Matrix::from_row_bits(n, rows)
        .kernel_basis()
        .into_iter()
        .map(|v| v.bits())
        .collect();
    Ok(SolutionSpace { rho, w: *w, basis })
}

/// Linear action of a set of basis changes on form codes.
#[derive(Clone, Debug)]
pub struct OrbitAction {
    rho: usize,
    generators: Vec<F2Matrix>,
    /// `images[g][m]`: code of the pullback by generator `g` of the form
    /// whose only nonzero multiset is `m`.
    images: Vec<Vec<u64>>,
}

impl OrbitAction {
    pub fn new(rho: usize, generators: Vec<F2Matrix>) -> Self {
        let n = multiset_count(rho);
        assert!(n <= 64, "rank {rho} too large for coded forms");
        let images = generators
            .iter()
            .map(|g| {
                multisets(rho)
                    .map(|t| {
                        let unit = SymTrilinearForm::from_triples(rho, &[t]).unwrap();
                        unit.pullback_unchecked(g).code().unwrap()
                    })
                    .collect()
            })
            .collect();
        OrbitAction {
            rho,
            generators,
            images,
        }
    }

    /// Generators of the stabilizer of the class representative.
    pub fn for_class(rho: usize, w_class: WClass) -> Result<Self> {
        let gens = match w_class {
            WClass::Zero => group_generators(rho, None)?,
            WClass::Nonzero => group_generators(rho, Some(&F2Vector::basis(rho, 0)))?,
        };
        Ok(OrbitAction::new(rho, gens))
    }

    pub fn rho(&self) -> usize {
        self.rho
    }

    pub fn generator_count(&self) -> usize {
        self.generators.len()
    }

    pub fn generator(&self, g: usize) -> &F2Matrix {
        &self.generators[g]
    }

    /// Code of the pullback of `code` by generator `g`.
    #[inline]
    pub fn apply(&self, g: usize, code: u64) -> u64 {
        let n = self.images[g].len();
        let mut out = 0;
        let mut bits = code;
        while bits != 0 {
            let p = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            out ^= self.images[g][n - 1 - p];
        }
        out
    }

    /// Every code in the orbit of `start`.
    pub fn orbit(&self, start: u64) -> BTreeSet<u64> {
        let mut seen = BTreeSet::new();
        seen.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(c) = queue.pop_front() {
            for g in 0..self.generators.len() {
                let next = self.apply(g, c);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        seen
    }
}

/// The lexicographically smallest form in the orbit of `d` under basis
/// changes preserving `w`, returned with `w` moved to `0` or `e₁`, together
/// with a witness `g` such that `d.transport(g)` is the canonical descriptor.
pub fn canonical_with_witness(d: &MsDescriptor) -> Result<(MsDescriptor, F2Matrix)> {
    let rho = d.rank();
    check_rank(rho, MAX_CANONICAL_RANK)?;
    d.require_pw()?;
    let w_class = WClass::of(&d.w);
    let h = match w_class {
        WClass::Zero => F2Matrix::identity(rho),
        WClass::Nonzero => complete_basis(&d.w)?,
    };
    let start = d.form.pullback_unchecked(&h);
    let action = OrbitAction::for_class(rho, w_class)?;

    let start_code = start.code().unwrap();
    let mut seen = BTreeSet::from([start_code]);
    let mut queue = VecDeque::from([(start_code, F2Matrix::identity(rho))]);
    let mut best = (start_code, F2Matrix::identity(rho));
    while let Some((c, g)) = queue.pop_front() {
        if c < best.0 {
            best = (c, g.clone());
        }
        for i in 0..action.generator_count() {
            let next = action.apply(i, c);
            if seen.insert(next) {
                queue.push_back((next, g.mul(action.generator(i))?));
            }
        }
    }
    let canonical = MsDescriptor {
        form: SymTrilinearForm::from_code(rho, best.0),
        w: w_class.representative(rho),
    };
    Ok((canonical, h.mul(&best.1)?))
}

pub fn canonical(d: &MsDescriptor) -> Result<MsDescriptor> {
    canonical_with_witness(d).map(|(c, _)| c)
}

/// Isomorphism invariants reported per census class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub sq_rank: usize,
    pub cup_kernel_dim: usize,
    pub sigma: usize,
}

impl Invariants {
    pub fn of(d: &MsDescriptor) -> Self {
        Invariants {
            sq_rank: d.form.squaring_matrix().rank(),
            cup_kernel_dim: d.form.cup_kernel_dim(),
            sigma: d.sigma(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    pub representative: MsDescriptor,
    pub orbit_size: u64,
    pub invariants: Invariants,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub rho: usize,
    pub w_class: WClass,
    pub classes: Vec<CensusClass>,
}

impl Census {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn orbit_sizes(&self) -> Vec<u64> {
        self.classes.iter().map(|c| c.orbit_size).collect()
    }

    /// Assembles a census from `(smallest code, orbit size)` pairs in any
    /// order; classes are sorted by representative code.
    pub fn from_orbits(rho: usize, w_class: WClass, orbits: &BTreeMap<u64, u64>) -> Census {
        let w = w_class.representative(rho);
        let classes = orbits
            .iter()
            .map(|(&code, &size)| {
                let representative = MsDescriptor {
                    form: SymTrilinearForm::from_code(rho, code),
                    w,
                };
                CensusClass {
                    invariants: Invariants::of(&representative),
                    representative,
                    orbit_size: size,
                }
            })
            .collect();
        Census {
            rho,
            w_class,
            classes,
        }
    }
}

/// Dense visited-set over all `2^bits` codes.
struct Visited(Vec<u64>);

impl Visited {
    fn new(bits: usize) -> Self {
        Visited(alloc::vec![0; (1usize << bits).div_ceil(64)])
    }

    /// Marks `code`; returns whether it was new.
    fn insert(&mut self, code: u64) -> bool {
        let (word, bit) = ((code / 64) as usize, code % 64);
        let new = self.0[word] & (1 << bit) == 0;
        self.0[word] |= 1 << bit;
        new
    }

    fn contains(&self, code: u64) -> bool {
        self.0[(code / 64) as usize] & (1 << (code % 64)) != 0
    }
}

/// Partitions the Postnikov–Wu forms for `(rho, w_class)` into isomorphism
/// classes. Seeds are taken in increasing code order, so each seed is the
/// smallest member of its orbit.
pub fn census(rho: usize, w_class: WClass) -> Result<Census> {
    check_rank(rho, MAX_CENSUS_RANK)?;
    let space = enumerate_pw(rho, &w_class.representative(rho))?;
    let action = OrbitAction::for_class(rho, w_class)?;
    let mut visited = Visited::new(multiset_count(rho));
    let mut orbits = BTreeMap::new();
    let mut queue = VecDeque::new();
    for seed in space.sorted_members() {
        if visited.contains(seed) {
            continue;
        }
        visited.insert(seed);
        queue.push_back(seed);
        let mut size = 0u64;
        while let Some(c) = queue.pop_front() {
            size += 1;
            for g in 0..action.generator_count() {
                let next = action.apply(g, c);
                if visited.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        orbits.insert(seed, size);
    }
    Ok(Census::from_orbits(rho, w_class, &orbits))
}
