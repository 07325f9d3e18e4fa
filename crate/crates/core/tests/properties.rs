//! Algebraic laws checked on random forms, vectors and basis changes.

mod common;

use common::{eval_oracle, form_from_mask, pullback_oracle};
use mscoh_core::classify::enumerate_pw;
use mscoh_core::form::multiset_count;
use mscoh_core::{F2Matrix, F2Vector, MsDescriptor, SymTrilinearForm};
use proptest::prelude::*;

fn form_strategy(max_rank: usize) -> impl Strategy<Value = SymTrilinearForm> {
    (1..=max_rank).prop_flat_map(|rho| {
        let bits = multiset_count(rho);
        any::<u64>().prop_map(move |m| form_from_mask(rho, m & ((1u64 << bits) - 1)))
    })
}

fn invertible(rho: usize, seed: u64) -> F2Matrix {
    // a seeded product of transvections
    let mut g = F2Matrix::identity(rho);
    let mut s = seed;
    for _ in 0..3 * rho * rho {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let (i, j) = ((s >> 33) as usize % rho, (s >> 17) as usize % rho);
        if i != j {
            g = g.mul(&F2Matrix::transvection(rho, i, j)).unwrap();
        }
    }
    g
}

fn vec_of(rho: usize, bits: u64) -> F2Vector {
    F2Vector::from_bits(rho, bits & ((1u64 << rho) - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn evaluation_is_symmetric_and_trilinear(f in form_strategy(6), x: u64, y: u64, z: u64, t: u64) {
        let rho = f.rank();
        let (x, y, z, t) = (vec_of(rho, x), vec_of(rho, y), vec_of(rho, z), vec_of(rho, t));
        let e = |a: &F2Vector, b: &F2Vector, c: &F2Vector| f.eval(a, b, c).unwrap();
        let v = e(&x, &y, &z);
        for p in [e(&x, &z, &y), e(&y, &x, &z), e(&y, &z, &x), e(&z, &x, &y), e(&z, &y, &x)] {
            prop_assert_eq!(p, v);
        }
        prop_assert_eq!(e(&(x + t), &y, &z), v ^ e(&t, &y, &z));
        prop_assert_eq!(v, eval_oracle(&f, x.bits(), y.bits(), z.bits()));
    }

    #[test]
    fn pullback_is_a_right_action(f in form_strategy(5), s1: u64, s2: u64) {
        let rho = f.rank();
        let (g, h) = (invertible(rho, s1), invertible(rho, s2));
        let gh = g.mul(&h).unwrap();
        prop_assert_eq!(f.pullback(&gh).unwrap(), f.pullback(&g).unwrap().pullback(&h).unwrap());
        prop_assert_eq!(f.pullback(&g).unwrap(), pullback_oracle(&f, &g));
        prop_assert_eq!(f.pullback(&F2Matrix::identity(rho)).unwrap(), f);
    }

    #[test]
    fn transport_preserves_postnikov_wu(rho in 1usize..=5, w: u64, c: u64, s: u64) {
        let w = vec_of(rho, w);
        let space = enumerate_pw(rho, &w).unwrap();
        let d = space.descriptor(space.member(c));
        prop_assert!(d.check_pw());
        let t = d.transport(&invertible(rho, s)).unwrap();
        prop_assert!(t.check_pw());
        prop_assert_eq!(t.rank(), rho);
    }

    #[test]
    fn cube_map_is_quadratic_with_polarization_w(rho in 1usize..=5, w: u64, c: u64, x: u64, y: u64) {
        let w = vec_of(rho, w);
        let space = enumerate_pw(rho, &w).unwrap();
        let d = space.descriptor(space.member(c));
        let (x, y) = (vec_of(rho, x), vec_of(rho, y));
        let cube = |v: &F2Vector| d.form.cube(v).unwrap();
        prop_assert_eq!(cube(&(x + y)), cube(&x) ^ cube(&y) ^ d.form.eval(&w, &x, &y).unwrap());
    }

    #[test]
    fn cup_kernel_dimension_bound(rho in 1usize..=5, w: u64, c: u64) {
        let w = vec_of(rho, w);
        let space = enumerate_pw(rho, &w).unwrap();
        let d: MsDescriptor = space.descriptor(space.member(c));
        let k = d.form.cup_kernel_dim();
        prop_assert!(k >= rho * (rho + 1) / 2 - rho);
        prop_assert!(k <= rho * (rho + 1) / 2);
    }
}
