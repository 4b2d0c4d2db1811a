//! Property tests over seeded random group expressions.

mod common;

use common::{built, random_element, random_expr, subsets, BUDGET};
use fitheight_core::bounds::{check_all, lambda, rows, scenario};
use fitheight_core::invariants::*;
use fitheight_core::pc::{quotient, section_kernel};
use fitheight_core::towers::{
    counting_lemma, monotone_kernels, search_max, stats, tails_normal, SearchLimits, SearchMode,
};
use fitheight_core::Subgroup;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn multiplication_is_associative(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 1_000_000);
        let (g, basis) = built(&e);
        basis.verify(&g).unwrap();
        for _ in 0..50 {
            let (x, y, z) = (random_element(&mut rng, &g), random_element(&mut rng, &g), random_element(&mut rng, &g));
            let l = g.product(&g.product(&x, &y).unwrap(), &z).unwrap();
            let r = g.product(&x, &g.product(&y, &z).unwrap()).unwrap();
            prop_assert_eq!(l, r, "{}", e);
            let xi = g.inverse(&x).unwrap();
            prop_assert!(g.product(&x, &xi).unwrap().is_identity());
        }
    }

    #[test]
    fn induced_sequences_are_canonical(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 100_000);
        let (g, _) = built(&e);
        let mut gens: Vec<_> = (0..3).map(|_| random_element(&mut rng, &g)).collect();
        let h = Subgroup::generated(&g, &gens).unwrap();
        for (x, &d) in h.igs().iter().zip(h.depths()) {
            prop_assert_eq!(x.leading_exponent(), Some(1));
            for &d2 in h.depths() {
                if d2 != d {
                    prop_assert!(d2 < d || x.exponents()[d2] == 0);
                }
            }
        }
        let extra = g.product(&gens[0], &gens[gens.len() - 1]).unwrap();
        gens.push(extra);
        gens.shuffle(&mut rng);
        prop_assert_eq!(Subgroup::generated(&g, &gens).unwrap(), h.clone());
        for x in &gens {
            prop_assert!(h.contains(&g, x));
        }
        let t = random_element(&mut rng, &g);
        let conj = h.conjugate(&g, &t);
        prop_assert_eq!(conj.order(), h.order());
    }

    #[test]
    fn projections_are_homomorphisms(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 100_000);
        let (g, _) = built(&e);
        let w = Subgroup::whole(&g);
        let mut normals = derived_series(&g, &w);
        normals.extend(lower_nilpotent_series(&g, &w));
        let n = normals.choose(&mut rng).unwrap().clone();
        let pr = quotient(&g, &n).unwrap();
        let q = pr.target();
        prop_assert_eq!(q.order() * n.order(), g.order().clone());
        for _ in 0..30 {
            let (x, y) = (random_element(&mut rng, &g), random_element(&mut rng, &g));
            let lhs = pr.image(&g.product(&x, &y).unwrap());
            let rhs = q.product(&pr.image(&x), &pr.image(&y)).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(pr.image(&x).is_identity(), n.contains(&g, &x));
            let back = pr.lift(&pr.image(&x));
            prop_assert!(n.contains(&g, &g.product(&g.inverse(&back).unwrap(), &x).unwrap()));
        }
    }

    #[test]
    fn section_kernels_act_trivially(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 100_000);
        let (g, basis) = built(&e);
        let w = Subgroup::whole(&g);
        let series = derived_series(&g, &w);
        let i = rng.gen_range(0..series.len());
        let j = rng.gen_range(i..series.len());
        let (q, r) = (&series[i], &series[j]);
        let primes = g.primes();
        let p = basis.get(*primes.choose(&mut rng).unwrap()).unwrap();
        let c = section_kernel(&g, p, q, r, BUDGET).unwrap();
        prop_assert!(c.is_subgroup_of(&g, p));
        for _ in 0..30 {
            let x = p.elements(&g).choose(&mut rng).cloned().unwrap();
            let trivial = q.igs().iter().all(|y| r.contains(&g, &g.commutator(y, &x).unwrap()));
            prop_assert_eq!(trivial, c.contains(&g, &x));
        }
    }
}

use rand::Rng;

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn series_are_consistent(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 1_000_000);
        let (g, basis) = built(&e);
        let w = Subgroup::whole(&g);
        let ds = derived_series(&g, &w);
        prop_assert!(ds.last().unwrap().is_trivial());
        prop_assert!(ds.iter().all(|s| s.is_normal(&g)));
        let h = fitting_height(&g, &w);
        let up = upper_fitting_series(&g, &basis, BUDGET).unwrap();
        prop_assert_eq!(up.length, h);
        let f = fitting_subgroup(&g, &basis, BUDGET).unwrap();
        prop_assert!(f.is_normal(&g) && is_nilpotent(&g, &f));
        let m = minimal_normal_subgroup(&g, &basis, BUDGET).unwrap();
        prop_assert!(m.is_normal(&g) && !m.is_trivial() && m.is_subgroup_of(&g, &f));
        for p in g.primes() {
            let lp = pi_length(&g, &basis, &[p], BUDGET).unwrap();
            prop_assert!(lp <= derived_length(&g, basis.get(p).unwrap()), "{} p={}", e, p);
        }
        for sigma in subsets(&g.primes()) {
            let rest: Vec<u32> = g.primes().into_iter().filter(|p| !sigma.contains(p)).collect();
            let a = pi_length(&g, &basis, &sigma, BUDGET).unwrap();
            let b = pi_length(&g, &basis, &rest, BUDGET).unwrap();
            prop_assert!(b <= a + 1, "{} {:?}", e, sigma);
            let o = o_pi(&g, &basis, &sigma, BUDGET).unwrap();
            prop_assert!(o.is_normal(&g) && o.primes(&g).iter().all(|p| sigma.contains(p)));
        }
    }

    #[test]
    fn bounds_hold_and_swap(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 1_000_000);
        let (g, basis) = built(&e);
        let primes = g.primes();
        let sigma = subsets(&primes).choose(&mut rng).unwrap().clone();
        let rest: Vec<u32> = primes.iter().copied().filter(|p| !sigma.contains(p)).collect();
        let f = scenario(&g, &basis, &sigma).unwrap();
        let r = check_all(&g, &basis, &f, BUDGET).unwrap();
        prop_assert!(r.violations().is_empty(), "{} {:?}: {:?}", e, sigma, r.violations());
        for h in [&f.a, &f.b] {
            if !h.is_trivial() {
                let l = lambda(&g, &basis, h, BUDGET).unwrap();
                prop_assert_eq!(l.layers.len(), fitting_height(&g, h));
                prop_assert!(l.total <= delta(&g, &basis, h).unwrap() * fitting_height(&g, h));
            }
        }
        if f.is_proper() && f.b_nilpotent {
            let mixed = r.row(rows::MIXED).unwrap().rhs;
            prop_assert_eq!(mixed, r.row(rows::NILPOTENT_B).unwrap().rhs);
        }
        let s = check_all(&g, &basis, &scenario(&g, &basis, &rest).unwrap(), BUDGET).unwrap();
        prop_assert_eq!((s.h_a, s.h_b, s.d_a, s.d_b), (r.h_b, r.h_a, r.d_b, r.d_a));
        prop_assert_eq!((s.delta_a, s.delta_b), (r.delta_b, r.delta_a));
        prop_assert_eq!((s.ell_sigma, s.ell_sigma_prime), (r.ell_sigma_prime, r.ell_sigma));
        prop_assert_eq!(&s.lambda_a, &r.lambda_b);
        prop_assert_eq!(s.row(rows::LAMBDA).unwrap().rhs, r.row(rows::LAMBDA).unwrap().rhs);
        prop_assert_eq!(s.row(rows::LENGTH_SUM).unwrap().rhs, r.row(rows::LENGTH_SUM).unwrap().rhs);
        prop_assert_eq!(s.row(rows::DELTA_PRODUCT).unwrap().rhs, r.row(rows::DELTA_PRODUCT).unwrap().rhs);
    }

    #[test]
    fn searched_towers_satisfy_the_counting_lemma(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_expr(&mut rng, 100_000);
        let (g, basis) = built(&e);
        let found = search_max(&g, &basis, SearchMode::Exact, &SearchLimits::default()).unwrap();
        prop_assert!(found.certified, "{}", e);
        let t = &found.tower;
        prop_assert!(monotone_kernels(&g, t, BUDGET).unwrap());
        prop_assert!(tails_normal(&g, t));
        for sigma in subsets(&g.primes()) {
            let c = counting_lemma(&g, &basis, t, &sigma, BUDGET).unwrap();
            prop_assert!(c.holds, "{} {:?}: {:?}", e, sigma, c);
            let st = stats(&g, t, &sigma);
            prop_assert!(st.beta <= st.nu && st.nu <= t.len());
            prop_assert!(st.tail_orders.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
