use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use mukai::gcy::random::{random_nonzero_crat, random_rat, rng_from_seed};
use mukai::lattice::{inertia, Inertia};
use mukai::mukai::{gram_mukai, mukai_pair, CClass, RatClass, RANK};
use mukai::scalar::{CRat, Int, Rat};

fn rat_class(seed: u64, bound: i64) -> RatClass {
    let mut rng = rng_from_seed(seed);
    RatClass::unflatten((0..RANK).map(|_| random_rat(&mut rng, bound)).collect()).unwrap()
}

fn complex_class(seed: u64) -> CClass {
    let mut rng = rng_from_seed(seed);
    CClass::unflatten((0..RANK).map(|_| random_nonzero_crat(&mut rng, 50)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pairing_is_symmetric_and_bilinear(sx in any::<u64>(), sy in any::<u64>(), sz in any::<u64>(), p in -50i64..50, q in 1i64..50) {
        let (x, y, z) = (rat_class(sx, 100), rat_class(sy, 100), rat_class(sz, 100));
        let lambda = Rat::new(p.into(), q.into());
        prop_assert_eq!(mukai_pair(&x, &y), mukai_pair(&y, &x));
        let lhs = mukai_pair(&x.scale(&lambda).add(&z), &y);
        prop_assert_eq!(lhs, &lambda * mukai_pair(&x, &y) + mukai_pair(&z, &y));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn hermitian_norm_is_real(seed in any::<u64>()) {
        let x = complex_class(seed);
        let n: CRat = mukai_pair(&x, &x.conjugate());
        prop_assert!(n.im.is_zero());
    }
}

#[test]
fn mukai_gram_is_unimodular_of_signature_4_20() {
    let g = gram_mukai();
    assert_eq!(g.determinant().abs(), Int::one());
    assert_eq!(inertia(&g.to_rat()).unwrap(), Inertia::new(4, 0, 20));
}
