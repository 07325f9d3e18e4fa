//! Alternating 3-forms over finite fields: standard classes against orbit
//! brute force, and the small-rank kernel facts.

use std::collections::{HashMap, VecDeque};

use mscoh_core::integral::{
    build_ring, cup_kernel_dim_mod_p, cup_rows, mu_of_boplan, rank_mod_p, realize_integral,
    standard_class_small_beta, strict_triples, AltForm, BoPlan, BoTriple, StandardClass,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn from_index(beta: usize, p: u64, mut idx: u64) -> AltForm {
    let terms: Vec<_> = strict_triples(beta)
        .map(|t| {
            let c = (idx % p) as i64;
            idx /= p;
            (t, c)
        })
        .collect();
    AltForm::from_terms(beta, &terms).unwrap()
}

fn to_index(mu: &AltForm, p: u64) -> u64 {
    strict_triples(mu.beta())
        .collect::<Vec<_>>()
        .iter()
        .rev()
        .fold(0, |acc, t| {
            acc * p + mu.get(t[0], t[1], t[2]).rem_euclid(p as i64) as u64
        })
}

/// Columns of the elementary matrices generating GL(β, F_p): transvections
/// `e_j ↦ e_j + e_i` and the scaling `e_0 ↦ 2e_0` (2 is a primitive root
/// mod 3 and mod 5).
fn generators(beta: usize) -> Vec<Vec<Vec<i64>>> {
    let unit = |i: usize| (0..beta).map(|r| (r == i) as i64).collect::<Vec<i64>>();
    let mut out = Vec::new();
    for i in 0..beta {
        for j in 0..beta {
            if i != j {
                let mut cols: Vec<_> = (0..beta).map(unit).collect();
                cols[j][i] = 1;
                out.push(cols);
            }
        }
    }
    if beta > 0 {
        let mut scale: Vec<_> = (0..beta).map(unit).collect();
        scale[0][0] = 2;
        out.push(scale);
    }
    out
}

/// Orbit label of every form over F_p^β.
fn orbits(beta: usize, p: u64) -> Vec<u32> {
    let total = p.pow(strict_triples(beta).count() as u32);
    let gens = generators(beta);
    let mut label = vec![u32::MAX; total as usize];
    let mut next = 0;
    for seed in 0..total {
        if label[seed as usize] != u32::MAX {
            continue;
        }
        label[seed as usize] = next;
        let mut queue = VecDeque::from([seed]);
        while let Some(i) = queue.pop_front() {
            let mu = from_index(beta, p, i);
            for g in &gens {
                let j = to_index(&mu.pullback(g, p).unwrap(), p);
                if label[j as usize] == u32::MAX {
                    label[j as usize] = next;
                    queue.push_back(j);
                }
            }
        }
        next += 1;
    }
    label
}

#[test]
fn standard_classes_match_orbits_over_f3() {
    for beta in 0..=5 {
        let label = orbits(beta, 3);
        let mut by_orbit: HashMap<u32, StandardClass> = HashMap::new();
        for (i, &orbit) in label.iter().enumerate() {
            let class = standard_class_small_beta(&from_index(beta, 3, i as u64), 3).unwrap();
            let prev = *by_orbit.entry(orbit).or_insert(class);
            assert_eq!(prev, class, "beta={beta}");
        }
        let expected = match beta {
            0..=2 => 1,
            3 | 4 => 2,
            _ => 3,
        };
        assert_eq!(by_orbit.len(), expected, "beta={beta}");
        let mut classes: Vec<_> = by_orbit.values().copied().collect();
        classes.sort_by_key(|c| c.label());
        classes.dedup();
        assert_eq!(classes.len(), expected, "labels must separate orbits");
    }
}

#[test]
fn standard_classes_match_orbits_over_f5_up_to_rank_four() {
    for beta in 3..=4 {
        let label = orbits(beta, 5);
        let mut by_orbit: HashMap<u32, StandardClass> = HashMap::new();
        for (i, &orbit) in label.iter().enumerate() {
            let class = standard_class_small_beta(&from_index(beta, 5, i as u64), 5).unwrap();
            assert_eq!(*by_orbit.entry(orbit).or_insert(class), class);
        }
        assert_eq!(by_orbit.len(), 2);
    }
}

fn random_form(rng: &mut ChaCha8Rng, beta: usize, bound: i64) -> AltForm {
    let terms: Vec<_> = strict_triples(beta)
        .map(|t| (t, rng.gen_range(-bound..=bound)))
        .collect();
    AltForm::from_terms(beta, &terms).unwrap()
}

#[test]
fn small_rank_kernel_facts() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for p in [3u64, 5] {
        for beta in 0..=5usize {
            let pairs = beta * beta.saturating_sub(1) / 2;
            for _ in 0..400 {
                let mu = random_form(&mut rng, beta, p as i64).reduce_mod(p);
                if beta < 3 {
                    assert!(mu.is_zero());
                }
                let rank = rank_mod_p(&cup_rows(&mu), p);
                if beta == 3 {
                    assert!(rank == 0 || rank == 3, "contraction is zero or invertible");
                }
                let kernel = cup_kernel_dim_mod_p(&mu, p).unwrap();
                assert_eq!(kernel, pairs - rank);
                if beta > 3 {
                    assert!(kernel >= pairs - beta);
                    assert!(kernel > 0);
                }
            }
        }
    }
    assert!(cup_kernel_dim_mod_p(&AltForm::zero(3), 2).is_err());
}

#[test]
fn bo_cables_scale_the_triple_coefficient() {
    for n in -5..=5 {
        let p = BoPlan {
            m: 3,
            triples: vec![BoTriple {
                triple: [0, 1, 2],
                n,
            }],
        };
        let mu = mu_of_boplan(&p).unwrap();
        assert_eq!(mu, AltForm::from_terms(3, &[([0, 1, 2], n)]).unwrap());
    }
}

#[test]
fn realization_round_trips_random_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..500 {
        let beta = rng.gen_range(0..=5);
        let mu = random_form(&mut rng, beta, 5);
        let plan = realize_integral(&mu);
        assert_eq!(plan.triples.len(), mu.terms().len());
        assert_eq!(mu_of_boplan(&plan).unwrap(), mu);
    }
}

#[test]
fn rings_are_associative_and_graded_commutative() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let beta = rng.gen_range(0..=5);
        let mu = random_form(&mut rng, beta, 5);
        let ring = build_ring(&mu);
        assert!(ring.is_associative());
        assert!(ring.is_graded_commutative());
        let basis1 = |i| mscoh_core::integral::RingElement::basis(beta, 1, i);
        for [i, j, k] in strict_triples(beta) {
            let top = ring.mul(&ring.mul(&basis1(i), &basis1(j)), &basis1(k));
            assert_eq!(top.parts[3][0], mu.get(i, j, k));
        }
    }
}
