use exph_core::field::is_prime;
use exph_core::{Fp, Modulus};
use proptest::prelude::*;

fn elems() -> impl Strategy<Value = (u64, i64, i64, i64)> {
    prop::sample::select(vec![2u64, 3, 5, 7, 13, 65_521, 2_147_483_647])
        .prop_flat_map(|p| (Just(p), any::<i64>(), any::<i64>(), any::<i64>()))
}

proptest! {
    #[test]
    fn ring_axioms((p, a, b, c) in elems()) {
        let (a, b, c) = (Fp::new(a, p).unwrap(), Fp::new(b, p).unwrap(), Fp::new(c, p).unwrap());
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(a - a, Fp::new(0, p).unwrap());
        prop_assert_eq!(-(-a), a);
    }

    #[test]
    fn inverses((p, a, _, _) in elems()) {
        let a = Fp::new(a, p).unwrap();
        if a.is_zero() {
            prop_assert!(a.inv().is_err());
        } else {
            prop_assert_eq!((a * a.inv().unwrap()).value(), 1);
        }
    }

    #[test]
    fn reduce_agrees_with_rem_euclid((p, a, _, _) in elems()) {
        let m = Modulus::new(p).unwrap();
        prop_assert_eq!(m.reduce(a) as i64, a.rem_euclid(p as i64));
    }

    #[test]
    fn primality_by_trial_division(n in 0u64..5000) {
        let slow = n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0);
        prop_assert_eq!(is_prime(n), slow);
        prop_assert_eq!(Modulus::new(n).is_ok(), slow);
    }
}

#[test]
fn mixed_moduli_are_rejected() {
    let a = Fp::new(1, 3).unwrap();
    let b = Fp::new(1, 5).unwrap();
    assert!(a.try_add(b).is_err());
    assert!(a.try_mul(b).is_err());
}
