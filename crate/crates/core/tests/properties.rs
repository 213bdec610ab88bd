use num_rational::BigRational;
use proptest::prelude::*;

use scod_core::invariants::{profile, tau_pair};
use scod_core::{LatticeVector, RootSystem, RootVec};

const TYPES: [&str; 14] = [
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "E6", "F4", "G2",
];

fn system() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(TYPES.to_vec()).prop_map(|n| RootSystem::of(n).unwrap())
}

/// A root system with a random (not necessarily reduced) word in its letters.
fn system_and_word() -> impl Strategy<Value = (RootSystem, Vec<usize>)> {
    system().prop_flat_map(|s| {
        let r = s.rank();
        (Just(s), prop::collection::vec(0..r, 0..40))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn symmetrised_form_is_symmetric_and_even(s in system()) {
        let b = s.form_matrix();
        for i in 0..s.rank() {
            prop_assert_eq!(b[i][i] % 2, 0);
            for j in 0..s.rank() {
                prop_assert_eq!(b[i][j], b[j][i]);
            }
        }
    }

    #[test]
    fn two_rho_pairs_with_simple_roots_like_their_square(s in system()) {
        for i in 0..s.rank() {
            let a = s.simple_root(i);
            prop_assert_eq!(s.pairing_int(&s.two_rho(), &a), s.pairing_int(&a, &a));
        }
    }

    #[test]
    fn weight_coordinates_round_trip(
        (s, c) in system().prop_flat_map(|s| {
            let r = s.rank();
            (Just(s), prop::collection::vec(-6i64..=6, r))
        })
    ) {
        let lambda = s.weight(&c);
        let back: Vec<BigRational> = s.to_weight_coords(&lambda);
        let want: Vec<BigRational> = c.iter().map(|&v| BigRational::from_integer(v.into())).collect();
        prop_assert_eq!(back, want);
    }

    #[test]
    fn words_reduce_and_invert((s, word) in system_and_word()) {
        let w = s.element_from_word(&word);
        let red = s.reduced_word(&w);
        prop_assert_eq!(red.len(), w.length());
        prop_assert_eq!(&s.element_from_word(&red), &w);
        let inv = s.inverse(&w);
        prop_assert_eq!(inv.length(), w.length());
        prop_assert!(s.multiply(&w, &inv).is_identity());
        prop_assert_eq!(&s.inverse(&inv), &w);
        prop_assert!(s.bruhat_leq(&s.identity(), &w));
        prop_assert!(s.bruhat_leq(&w, &s.longest_element(None)));
    }

    #[test]
    fn multiplication_is_associative(
        (s, a, b, c) in system().prop_flat_map(|s| {
            let r = s.rank();
            let word = prop::collection::vec(0..r, 0..20);
            (Just(s), word.clone(), word.clone(), word)
        })
    ) {
        let (x, y, z) = (s.element_from_word(&a), s.element_from_word(&b), s.element_from_word(&c));
        prop_assert_eq!(
            s.multiply(&s.multiply(&x, &y), &z),
            s.multiply(&x, &s.multiply(&y, &z))
        );
    }

    #[test]
    fn tau_sums_and_differences((s, word) in system_and_word()) {
        let w = s.element_from_word(&word);
        let (same, opp) = tau_pair(&w, &s);
        prop_assert_eq!(same + opp, s.two_rho());
        prop_assert_eq!(same - opp, w.apply(&s.two_rho()));
        prop_assert_eq!(s.pairing_int(&same, &opp), 0);
    }

    #[test]
    fn levi_sets_split_the_full_sets(
        (s, word, mask) in system_and_word().prop_flat_map(|(s, w)| {
            let r = s.rank();
            (Just(s), Just(w), 0usize..(1 << r))
        })
    ) {
        let subset: Vec<usize> = (0..s.rank()).filter(|i| mask >> i & 1 == 1).collect();
        let p = s.parabolic(&subset).unwrap();
        let w = s.element_from_word(&word);
        let prof = profile(&s, &w, &p);
        prop_assert!(prof.psi_same_l.iter().all(|j| prof.psi_same.contains(j)));
        prop_assert!(prof.psi_opp_l.iter().all(|j| prof.psi_opp.contains(j)));
        let levi_images = prof.psi_same.len() - prof.psi_same_l.len()
            + prof.psi_opp.len() - prof.psi_opp_l.len();
        prop_assert_eq!(levi_images, p.levi_positive().len());
        let lv = LatticeVector::from_root(&prof.tau_same_l, s.rank());
        prop_assert_eq!(lv.to_root_vec(), Some(prof.tau_same_l));
        prop_assert!(prof.tau_same_l != RootVec::zero() || prof.psi_same_l.is_empty());
    }
}
