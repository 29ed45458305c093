mod oracles;

use num_bigint::BigInt;
use num_traits::Zero;
use oracles::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use waring_core::heisenberg::symplectic_form;
use waring_core::{CongruenceLattice, HeisLie, HeisPoint};

fn point(n: usize) -> impl Strategy<Value = HeisPoint> {
    (
        proptest::collection::vec(-50i64..=50, n),
        proptest::collection::vec(-50i64..=50, n),
        -200i64..=200,
    )
        .prop_map(|(a, b, c)| HeisPoint::from_ints(&a, &b, c))
}

fn triple() -> impl Strategy<Value = (HeisPoint, HeisPoint, HeisPoint)> {
    (1usize..=3).prop_flat_map(|n| (point(n), point(n), point(n)))
}

proptest! {
    #[test]
    fn associativity((x, y, z) in triple()) {
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn identity_and_inverse((x, _, _) in triple()) {
        let e = HeisPoint::identity(x.n());
        prop_assert_eq!(x.mul(&e).unwrap(), x.clone());
        prop_assert_eq!(e.mul(&x).unwrap(), x.clone());
        prop_assert!(x.mul(&x.inv()).unwrap().is_identity());
        prop_assert!(x.inv().mul(&x).unwrap().is_identity());
    }

    #[test]
    fn multiplication_matches_matrices((x, y, _) in triple()) {
        let expected = from_matrix(&mat_mul(&to_matrix(&x), &to_matrix(&y)));
        prop_assert_eq!(x.mul(&y).unwrap(), expected);
    }

    #[test]
    fn log_exp_inverse((x, _, _) in triple()) {
        prop_assert_eq!(x.log().exp(), x.clone());
        let lie = x.log();
        prop_assert_eq!(lie.exp().log(), lie.clone());
        prop_assert_eq!(lie.to_vec(), lie_coords(&mat_log(&to_matrix(&x))));
    }

    #[test]
    fn bch_is_log_of_product((x, y, _) in triple()) {
        let lhs = x.mul(&y).unwrap().log();
        prop_assert_eq!(lhs, x.log().bch(&y.log()).unwrap());
    }

    #[test]
    fn commutator_is_symplectic((x, y, _) in triple()) {
        let comm = x.commutator(&y).unwrap();
        prop_assert!(comm.a.iter().chain(&comm.b).all(Zero::is_zero));
        let mut u = x.a.clone();
        u.extend(x.b.iter().cloned());
        let mut v = y.a.clone();
        v.extend(y.b.iter().cloned());
        prop_assert_eq!(comm.c, symplectic_form(&u, &v).unwrap());
        let bracket = x.log().bracket(&y.log()).unwrap();
        prop_assert!(bracket.a.iter().chain(&bracket.b).all(Zero::is_zero));
    }

    #[test]
    fn power_matches_repeated_product(x in point(2), k in -6i64..=6) {
        let mut acc = HeisPoint::identity(2);
        let step = if k >= 0 { x.clone() } else { x.inv() };
        for _ in 0..k.abs() {
            acc = acc.mul(&step).unwrap();
        }
        prop_assert_eq!(x.pow(k), acc);
    }

    #[test]
    fn delta_iota_round_trip((x, _, _) in triple()) {
        prop_assert_eq!(HeisPoint::iota(&x.delta()).unwrap(), x.clone());
        let v = x.to_vec();
        prop_assert_eq!(HeisPoint::iota(&v).unwrap().delta(), v);
    }
}

/// Exhaustive axioms on 1000 seeded triples, `n` cycling through 1..=3.
#[test]
fn group_axioms_seeded() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..1000 {
        let n = 1 + i % 3;
        let (x, y, z) = (random_point(&mut rng, n, 30), random_point(&mut rng, n, 30), random_point(&mut rng, n, 30));
        assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
        assert!(x.mul(&x.inv()).unwrap().is_identity());
        assert_eq!(x.mul(&HeisPoint::identity(n)).unwrap(), x);
        assert_eq!(x.log().exp(), x);
        let lie = HeisLie::from_ints(
            &(0..n).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>(),
            &(0..n).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>(),
            rng.gen_range(-9..=9),
        );
        assert_eq!(lie.exp().log(), lie);
        let m = mat_exp(&lie_matrix(&lie.a, &lie.b, &lie.d));
        assert_eq!(lie.exp(), from_matrix(&m));
    }
}

/// With `D` even, `ι` maps the congruence subgroup onto itself.
#[test]
fn iota_preserves_congruence_subgroup() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for d in [2i64, 4, 6, 12] {
        let lat = CongruenceLattice::new(2, BigInt::from(d)).unwrap();
        for _ in 0..200 {
            let p = random_point(&mut rng, 2, 20);
            let scaled = HeisPoint::from_vec(&p.to_vec().iter().map(|x| x * r(d)).collect::<Vec<_>>()).unwrap();
            assert!(lat.contains(&scaled).unwrap());
            assert!(lat.contains(&HeisPoint::iota(&scaled.to_vec()).unwrap()).unwrap());
            assert!(lat.contains_coords(&scaled.delta()).unwrap());
        }
    }
    assert!(CongruenceLattice::new(1, BigInt::from(3)).is_err());
}
