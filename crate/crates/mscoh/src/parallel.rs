//! Multi-threaded census. Generator images of the solution space are
//! computed in parallel chunks; orbits are then merged with a union-find
//! keyed by the smallest code, so the result does not depend on the thread
//! count.

use std::collections::BTreeMap;
use std::thread;

use mscoh_core::classify::{census, enumerate_pw, Census, OrbitAction, WClass, MAX_CENSUS_RANK};
use mscoh_core::Result;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller index as the root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Same output as [`census`] for any `threads ≥ 1`.
pub fn census_parallel(rho: usize, w_class: WClass, threads: usize) -> Result<Census> {
    if threads <= 1 || rho > MAX_CENSUS_RANK {
        return census(rho, w_class);
    }
    let space = enumerate_pw(rho, &w_class.representative(rho))?;
    let action = OrbitAction::for_class(rho, w_class)?;
    let members = space.sorted_members();
    let chunk = members.len().div_ceil(threads).max(1);

    let edges: Vec<Vec<(u64, u64)>> = thread::scope(|s| {
        let handles: Vec<_> = members
            .chunks(chunk)
            .map(|part| {
                let action = &action;
                s.spawn(move || {
                    let mut out = Vec::with_capacity(part.len() * action.generator_count());
                    for &c in part {
                        for g in 0..action.generator_count() {
                            out.push((c, action.apply(g, c)));
                        }
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker"))
            .collect()
    });

    // members are sorted, so index order is code order
    let index = |code: u64| {
        members
            .binary_search(&code)
            .expect("images stay in the space")
    };
    let mut uf = UnionFind::new(members.len());
    for (a, b) in edges.iter().flatten() {
        uf.union(index(*a), index(*b));
    }
    let mut orbits = BTreeMap::new();
    for i in 0..members.len() {
        let root = uf.find(i);
        *orbits.entry(members[root]).or_insert(0u64) += 1;
    }
    Ok(Census::from_orbits(rho, w_class, &orbits))
}
