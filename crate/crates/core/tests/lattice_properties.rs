use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use mukai::gcy::random::{random_minus_two_class, rng_from_seed};
use mukai::lattice::hnf::smith_diagonal;
use mukai::lattice::{hnf, hnf_solve, integer_kernel, orth_complement, reflection, Isometry, Sublattice};
use mukai::matrix::{IntMatrix, RatMatrix};
use mukai::mukai::RANK;
use mukai::scalar::{Int, Rat};

fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    IntMatrix::from_i64(&refs)
}

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn hnf_idempotent_with_unimodular_transform(a in small_matrix(5, 5)) {
        let a = int_matrix(&a);
        let (h, u) = hnf(&a);
        prop_assert_eq!(u.mul(&a), h.clone());
        prop_assert_eq!(u.determinant().abs(), Int::one());
        prop_assert_eq!(hnf(&h).0, h);
    }

    #[test]
    fn smith_chain_and_determinant(a in (1usize..=4).prop_flat_map(|n| prop::collection::vec(prop::collection::vec(-6i64..=6, n), n))) {
        let m = int_matrix(&a);
        let d = smith_diagonal(&m);
        for w in d.windows(2) {
            let divides = if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            prop_assert!(divides);
        }
        let prod = d.iter().fold(Int::one(), |acc, x| acc * x);
        prop_assert_eq!(prod.abs(), m.determinant().abs());
    }

    #[test]
    fn integer_kernel_is_complete_on_a_box(
        a in (1usize..=2).prop_flat_map(|r| prop::collection::vec(prop::collection::vec(-3i64..=3, 4), r)),
        den in 1i64..=4,
    ) {
        // the system lives on the first four coordinates; the rest are free
        let m = RatMatrix::from_fn(a.len(), RANK, |i, j| {
            if j < 4 { Rat::new(a[i][j].into(), den.into()) } else { Rat::zero() }
        });
        let k = integer_kernel(&m);
        prop_assert_eq!(k.rank(), RANK - mukai::lattice::field::rank(&m));
        let ints = int_matrix(&a);
        for row in k.rows() {
            prop_assert!(ints.mul_vec(&row[..4]).iter().all(Zero::is_zero));
        }
        let h = k.basis().clone();
        for idx in 0..5usize.pow(4) {
            let mut v = vec![Int::zero(); RANK];
            for (t, slot) in v.iter_mut().take(4).enumerate() {
                *slot = Int::from((idx / 5usize.pow(t as u32)) % 5) - Int::from(2);
            }
            if ints.mul_vec(&v[..4]).iter().all(Zero::is_zero) {
                prop_assert!(hnf_solve(&h, &v).is_some(), "kernel vector {:?} missing", v);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn reflections_are_involutive_isometries(seed in any::<u64>()) {
        let delta = random_minus_two_class(&mut rng_from_seed(seed), 4);
        let s = reflection(&delta).unwrap();
        prop_assert_eq!(s.compose(&s), Isometry::identity());
        prop_assert_eq!(s.apply(&delta), delta.neg());
        prop_assert_eq!(s.determinant(), -Int::one());
    }

    #[test]
    fn complement_ranks_add_up(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, RANK), 0..6)) {
        let l = Sublattice::from_rows(rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect());
        prop_assert_eq!(orth_complement(&l).rank() + l.rank(), RANK);
    }
}
