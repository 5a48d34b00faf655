mod common;

use std::collections::HashMap;

use common::*;
use nctame::alphabet::{xyz, z_pair, Alphabet};
use nctame::cring::{exact_divide_homogeneous, leading_form, CMatrix, CPoly};
use nctame::ncpoly::NcPoly;
use nctame::parse::{parse_cmatrix, parse_cpoly, parse_nc};
use proptest::prelude::*;

fn nonzero_cpoly(seed: u64, ctx: &nctame::Ctx, deg: u32) -> CPoly {
    let mut r = rng(seed);
    loop {
        let p = rand_cpoly(&mut r, ctx, deg, 4);
        if !p.is_zero() {
            return p;
        }
    }
}

fn rand_matrix(r: &mut impl rand::Rng) -> CMatrix {
    let ctx = z_pair();
    CMatrix::from_fn(&ctx, 2, 2, |_, _| rand_cpoly(r, &ctx, 2, 3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn printed_polynomials_parse_back(seed in any::<u64>()) {
        let f = rand_nc(&mut rng(seed), 6, 6);
        prop_assert_eq!(parse_nc(&f.to_string(), &xyz()).unwrap(), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn xy_linear_forms_reconstitute(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = xyz();
        let f = &(&rand_nc_in(&mut r, &ctx, &[Z], 3, 3) * &(&NcPoly::var(&ctx, X) * &rand_nc_in(&mut r, &ctx, &[Z], 3, 3)))
            + &(&rand_nc_in(&mut r, &ctx, &[Z], 3, 3) * &(&NcPoly::var(&ctx, Y) + &rand_nc_in(&mut r, &ctx, &[Z], 3, 3)));
        let form = f.xy_linear_decompose().unwrap();
        prop_assert_eq!(form.reconstitute().unwrap(), f);
    }

    #[test]
    fn homogeneous_components_sum_to_the_polynomial(seed in any::<u64>()) {
        let f = rand_nc(&mut rng(seed), 6, 8);
        let all = [X, Y, Z];
        let mut sum = NcPoly::zero(&xyz());
        for d in 0..=6 {
            sum = &sum + &f.homogeneous_component(d, &all);
        }
        prop_assert_eq!(sum, f);
    }

    #[test]
    fn substitution_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (f, g) = (rand_nc(&mut r, 3, 4), rand_nc(&mut r, 3, 4));
        let target = Alphabet::new(&["a", "b"]).unwrap();
        let [a, b] = [0u32, 1].map(nctame::Var);
        let images: HashMap<_, _> = [X, Y, Z]
            .into_iter()
            .map(|v| (v, rand_nc_in(&mut r, &target, &[a, b], 2, 3)))
            .collect();
        let lhs = (&f * &g).substitute(&target, &images).unwrap();
        let rhs = &f.substitute(&target, &images).unwrap() * &g.substitute(&target, &images).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn leading_forms_multiply(s1 in any::<u64>(), s2 in any::<u64>()) {
        let ctx = Alphabet::new(&["z1", "z2", "z3"]).unwrap();
        let (p, q) = (nonzero_cpoly(s1, &ctx, 4), nonzero_cpoly(s2, &ctx, 4));
        prop_assert_eq!(leading_form(&(&p * &q)).unwrap(), &leading_form(&p).unwrap() * &leading_form(&q).unwrap());
    }

    #[test]
    fn exact_quotients_multiply_back(s1 in any::<u64>(), s2 in any::<u64>(), divisible in any::<bool>()) {
        let ctx = z_pair();
        let d = leading_form(&nonzero_cpoly(s1, &ctx, 3)).unwrap();
        let n = if divisible {
            &d * &leading_form(&nonzero_cpoly(s2, &ctx, 3)).unwrap()
        } else {
            leading_form(&nonzero_cpoly(s2, &ctx, 5)).unwrap()
        };
        match exact_divide_homogeneous(&n, &d).unwrap() {
            Some(q) => prop_assert_eq!(&d * &q, n),
            None => prop_assert!(!divisible),
        }
    }

    #[test]
    fn printed_commutative_objects_parse_back(seed in any::<u64>()) {
        let mut r = rng(seed);
        let ctx = z_pair();
        let p = rand_cpoly(&mut r, &ctx, 4, 5);
        prop_assert_eq!(parse_cpoly(&p.to_string(), &ctx).unwrap(), p);
        let m = rand_matrix(&mut r);
        prop_assert_eq!(parse_cmatrix(&m.to_string(), &ctx).unwrap(), m);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn determinant_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (a, b) = (rand_matrix(&mut r), rand_matrix(&mut r));
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(ab.det().unwrap(), &a.det().unwrap() * &b.det().unwrap());
    }
}
