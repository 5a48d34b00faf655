mod common;

use common::*;
use nctame::alphabet::{xyz, z_pair};
use nctame::autom::{compose_all, elementary, jz, NcEndo};
use nctame::cring::CPoly;
use nctame::deriv::Side;
use nctame::ge2::{ge2_membership, Membership};
use nctame::metab::{cyclic_class, is_metab_automorphism, j2_bar, jm, trace_test, TraceOutcome};
use nctame::ncpoly::{NcPoly, Word};
use proptest::prelude::*;
use rand::Rng;

fn rand_tame(r: &mut impl Rng) -> NcEndo {
    let ctx = xyz();
    let n = r.gen_range(1..=3);
    let steps: Vec<NcEndo> = (0..n)
        .map(|_| {
            let j = [X, Y, Z][r.gen_range(0..3)];
            let others: Vec<_> = [X, Y, Z].into_iter().filter(|&v| v != j).collect();
            elementary(&ctx, j, small_q(r), &rand_nc_in(r, &ctx, &others, 3, 3)).unwrap()
        })
        .collect();
    compose_all(&ctx, &steps).unwrap()
}

/// `x -> x + a[u, v]b` with `u, v, a, b` free of `x`; such maps induce the
/// identity modulo commutators. The same for `y` with `x, z`.
fn kernel_generator(r: &mut impl Rng) -> NcEndo {
    let ctx = xyz();
    let (j, others) = if r.gen_bool(0.5) { (X, [Y, Z]) } else { (Y, [X, Z]) };
    let one = NcPoly::one(&ctx);
    let mut f = NcPoly::zero(&ctx);
    for _ in 0..r.gen_range(1..=2) {
        let a = &one + &rand_nc_in(r, &ctx, &others, 1, 2);
        let b = &one + &rand_nc_in(r, &ctx, &others, 1, 2);
        let u = NcPoly::var(&ctx, others[0]);
        let v = &NcPoly::var(&ctx, others[1]) + &rand_nc_in(r, &ctx, &others, 2, 2);
        f = &f + &(&(&a * &u.commutator(&v)) * &b);
    }
    elementary(&ctx, j, nctame::field::q(1), &f).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn metabelian_determinants_stay_units(s1 in any::<u64>(), s2 in any::<u64>()) {
        let (phi, psi) = (rand_tame(&mut rng(s1)), rand_tame(&mut rng(s2)));
        prop_assert!(is_metab_automorphism(&phi).unwrap() && is_metab_automorphism(&psi).unwrap());
        let det = jm(&phi.compose(&psi).unwrap()).unwrap().det().unwrap();
        prop_assert!(det.is_constant() && !det.is_zero());
    }

    #[test]
    fn kernel_products_have_elementary_j2(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=3);
        let steps: Vec<NcEndo> = (0..n).map(|_| kernel_generator(&mut r)).collect();
        let phi = compose_all(&xyz(), &steps).unwrap();
        let m = j2_bar(&phi).unwrap();
        prop_assert!(matches!(ge2_membership(&m).unwrap(), Membership::Member(_)), "j2 = {}", m);
    }

    #[test]
    fn trace_test_ignores_higher_tails(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = xyz();
        let k = r.gen_range(2..=4);
        let images: Vec<NcPoly> = [X, Y, Z]
            .into_iter()
            .map(|v| &NcPoly::var(&ctx, v) + &rand_nc(&mut r, k, 3).homogeneous_component(k, &[X, Y, Z]))
            .collect();
        let sigma = NcEndo::new(&ctx, images.clone()).unwrap();
        let tails: Vec<NcPoly> = images
            .iter()
            .map(|p| p + &rand_nc(&mut r, k + 2, 4).filter(|w| w.len() > k))
            .collect();
        let tailed = NcEndo::new(&ctx, tails).unwrap();
        for side in [Side::Left, Side::Right] {
            let (a, b) = (trace_test(&sigma, side).unwrap(), trace_test(&tailed, side).unwrap());
            if matches!(a, TraceOutcome::NotApplicable { .. }) {
                continue;
            }
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn upper_jm_block_specializes_to_jz(seed in any::<u64>()) {
        let rho = rand_tame_linear(&mut rng(seed), 4, 3).0;
        let zctx = z_pair();
        let zero = CPoly::zero(&zctx);
        let images = [zero.clone(), zero.clone(), CPoly::var(&zctx, 0), zero.clone(), zero, CPoly::var(&zctx, 1)];
        let block = jm(&rho).unwrap().submatrix(0..2, 0..2).map(&zctx, |p| p.eval(&zctx, &images));
        prop_assert_eq!(block, jz(&rho).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn cyclic_classes_are_rotation_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let len = r.gen_range(1..=8);
        let w = rand_word(&mut r, &[X, Y, Z], len);
        let cut = r.gen_range(0..=len);
        let ctx = xyz();
        let rotated = Word([&w.0[cut..], &w.0[..cut]].concat());
        prop_assert_eq!(cyclic_class(&NcPoly::word(&ctx, &w.0)), cyclic_class(&NcPoly::word(&ctx, &rotated.0)));
    }
}
