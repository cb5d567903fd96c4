use proptest::prelude::*;

use mukai::gcy::random::{random_gcy, random_nonzero_crat, random_omega, random_rat, rng_from_seed};
use mukai::gcy::GcyKind;
use mukai::moduli::{hermitian_signature, lagrangian_check, omega, tangent_basis, tangent_omega_rank};
use mukai::mukai::{CClass, H2_RANK, RANK};
use mukai::scalar::{CRat, Rat};

fn random_complex(seed: u64) -> CClass {
    let mut rng = rng_from_seed(seed);
    CClass::unflatten((0..RANK).map(|_| random_nonzero_crat(&mut rng, 20)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn omega_is_real_bilinear_antisymmetric_and_compatible(
        sx in any::<u64>(), sy in any::<u64>(), sz in any::<u64>(), p in -20i64..20, q in 1i64..20,
    ) {
        let (x, y, z) = (random_complex(sx), random_complex(sy), random_complex(sz));
        let t = Rat::new(p.into(), q.into());
        prop_assert_eq!(omega(&x, &y), -omega(&y, &x));
        prop_assert_eq!(omega(&x.scale_rat(&t).add(&z), &y), &t * omega(&x, &y) + omega(&z, &y));
        let i = CRat::i();
        prop_assert_eq!(omega(&x.scale(&i), &y.scale(&i)), omega(&x, &y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn symplectic_images_are_lagrangian(seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let w = random_omega(&mut rng, 7);
        let alphas: Vec<Vec<Rat>> = (0..H2_RANK).map(|_| (0..H2_RANK).map(|_| random_rat(&mut rng, 4)).collect()).collect();
        let rep = lagrangian_check(&w, &alphas).unwrap();
        prop_assert!(rep.raw && rep.projected);
    }
}

#[test]
fn omega_is_nondegenerate_on_tangent_spaces() {
    for kind in [GcyKind::Symplectic, GcyKind::Complex] {
        for seed in 0..50 {
            let phi = random_gcy(seed, kind, 4);
            assert_eq!(tangent_basis(&phi).len(), 22);
            assert_eq!(tangent_omega_rank(&phi), 44, "{kind:?} seed {seed}");
        }
    }
}

#[test]
fn hermitian_form_has_signature_4_20() {
    assert_eq!(hermitian_signature(), (4, 20));
}
