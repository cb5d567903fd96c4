use num_traits::Zero;
use proptest::prelude::*;

use mukai::gcy::plane::{cross_pairings, four_space, plane_of};
use mukai::gcy::random::{random_classical_pair, random_gcy_with, random_nonzero_crat, random_rat, random_sparse_h2, rng_from_seed};
use mukai::gcy::{bfield_transform, classical_reduction, classify, is_hk_pair, GcyKind, NormalForm};
use mukai::json::{parse_class, parse_normal_form, ToJson};
use mukai::lattice::{inertia, Inertia};
use mukai::mukai::{h2_dot, mukai_pair, CClass, H2_RANK, IDX_H0, IDX_H4, RANK};
use mukai::scalar::{rat, Rat};

fn kind_of(flag: bool) -> GcyKind {
    if flag {
        GcyKind::Symplectic
    } else {
        GcyKind::Complex
    }
}

fn random_b(seed: u64) -> Vec<Rat> {
    let mut rng = rng_from_seed(seed);
    (0..H2_RANK).map(|_| random_rat(&mut rng, 30)).collect()
}

fn random_complex(seed: u64) -> CClass {
    let mut rng = rng_from_seed(seed);
    CClass::unflatten((0..RANK).map(|_| random_nonzero_crat(&mut rng, 30)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn bfield_preserves_pairing(sb in any::<u64>(), sx in any::<u64>(), sy in any::<u64>()) {
        let b = random_b(sb);
        let (x, y) = (random_complex(sx), random_complex(sy));
        let bx = bfield_transform(&b, &x).unwrap();
        let by = bfield_transform(&b, &y).unwrap();
        prop_assert_eq!(mukai_pair(&bx, &by), mukai_pair(&x, &y));
    }

    #[test]
    fn bfield_group_law(sb in any::<u64>(), sc in any::<u64>(), sx in any::<u64>()) {
        let (b, c) = (random_b(sb), random_b(sc));
        let x = random_complex(sx);
        let sum: Vec<Rat> = b.iter().zip(&c).map(|(p, q)| p + q).collect();
        let twice = bfield_transform(&b, &bfield_transform(&c, &x).unwrap()).unwrap();
        prop_assert_eq!(twice, bfield_transform(&sum, &x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn normal_form_round_trip(seed in any::<u64>(), symplectic in any::<bool>()) {
        let phi = random_gcy_with(&mut rng_from_seed(seed), kind_of(symplectic), 6);
        let nf = classify(&phi).unwrap();
        prop_assert_eq!(nf.rebuild().unwrap(), phi.clone());
        let via_json = parse_normal_form(&nf.to_json(), "$").unwrap();
        prop_assert_eq!(&via_json, &nf);
        let class = parse_class(&phi.phi().to_json(), "$").unwrap().to_complex();
        prop_assert_eq!(&class, phi.phi());
    }

    #[test]
    fn symplectic_norm_formula(seed in any::<u64>()) {
        let phi = random_gcy_with(&mut rng_from_seed(seed), GcyKind::Symplectic, 6);
        match classify(&phi).unwrap() {
            NormalForm::Symplectic { lambda, omega, .. } => {
                let expected = rat(2, 1) * lambda.norm_sqr() * h2_dot(&omega, &omega);
                prop_assert_eq!(phi.norm(), &expected);
            }
            other => prop_assert!(false, "classified as {}", other.type_name()),
        }
    }

    #[test]
    fn plane_is_bfield_equivariant(seed in any::<u64>(), sb in any::<u64>(), symplectic in any::<bool>()) {
        let phi = random_gcy_with(&mut rng_from_seed(seed), kind_of(symplectic), 5);
        let b = random_sparse_h2(&mut rng_from_seed(sb), 9, 6);
        let moved = plane_of(&phi.bfield(&b).unwrap());
        prop_assert_eq!(moved, plane_of(&phi).bfield(&b).unwrap());
    }

    #[test]
    fn classical_reduction_invariants(seed in any::<u64>(), sb in any::<u64>(), twisted in any::<bool>()) {
        let mut rng = rng_from_seed(seed);
        let (phi, phi_prime) = random_classical_pair(&mut rng, 5);
        let b = if twisted { random_sparse_h2(&mut rng_from_seed(sb), 6, 6) } else { vec![Rat::zero(); H2_RANK] };
        let pair = is_hk_pair(&phi, &phi_prime).unwrap().bfield(&b).unwrap();
        let pi = four_space(&pair);
        prop_assert_eq!(inertia(&pi.gram()).unwrap(), Inertia::new(4, 0, 0));
        let red = classical_reduction(&pi).unwrap();
        for x in [red.h.u(), red.h.v()] {
            prop_assert!(x[IDX_H0].is_zero() && x[IDX_H4].is_zero());
        }
        prop_assert!(cross_pairings(&red.h, &red.complement).iter().all(Zero::is_zero));
        prop_assert!(red.reassemble().unwrap().same_subspace(&pi));
        if !twisted {
            prop_assert!(red.b_prime.unwrap().iter().all(Zero::is_zero));
        }
    }
}
