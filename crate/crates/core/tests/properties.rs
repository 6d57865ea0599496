use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use gauss_vassiliev::corpus::{random_braid_link, random_gauss_code};
use gauss_vassiliev::homfly::skein_triple;
use gauss_vassiliev::surgery::{alpha_unknot, alpha_with, is_descending, smooth, AlphaRule, SplitWord};
use gauss_vassiliev::{gauss, homfly, pair, Catalog, Evaluator, HomflyPoly, LinkCode, Sign};

fn code(seed: u64) -> LinkCode {
    random_gauss_code(&mut ChaCha8Rng::seed_from_u64(seed), 8, 3)
}

fn braid(seed: u64) -> LinkCode {
    random_braid_link(&mut ChaCha8Rng::seed_from_u64(seed), 8, 3)
}

fn first_nonempty(l: &LinkCode) -> Option<usize> {
    (0..l.num_components()).find(|&c| !l.components()[c].is_empty())
}

proptest! {
    #[test]
    fn text_round_trip(seed in any::<u64>()) {
        let l = code(seed);
        prop_assert_eq!(LinkCode::parse(&l.to_string()).unwrap(), l);
    }

    #[test]
    fn switching_twice_is_identity(seed in any::<u64>()) {
        let l = code(seed);
        for a in l.crossing_ids() {
            let s = l.switch_crossing(a).unwrap();
            prop_assert_ne!(s.sign(a).unwrap(), l.sign(a).unwrap());
            prop_assert_eq!(s.switch_crossing(a).unwrap(), l.clone());
        }
    }

    #[test]
    fn pairing_ignores_basepoints(seed in any::<u64>(), shift in 0usize..16) {
        let l = code(seed);
        let Some(c) = first_nonempty(&l) else { return Ok(()) };
        let r = l.rotate(c, shift % l.components()[c].len()).unwrap();
        let cat = Catalog::builtin();
        for key in cat.keys() {
            prop_assert_eq!(pair(&gauss(&l), cat.at(key)), pair(&gauss(&r), cat.at(key)), "{}", key);
        }
    }

    #[test]
    fn doubling_a_chord_refines_classes(seed in any::<u64>()) {
        // with every crossing positive, pair counts embedding classes; a
        // doubled chord can split a class but never empties one
        let mut l = code(seed);
        for a in l.crossing_ids() {
            l = l.with_sign(a, Sign::Pos).unwrap();
        }
        let g = gauss(&l);
        let cat = Catalog::builtin();
        for key in ["v2.D1", "v3.1.D1", "v4.1.D2", "v4.3.A1", "v4.4.B2"] {
            let c = cat.at(key);
            let d = c.with_multiplicity(1, 2).unwrap();
            let (p, pd) = (pair(&g, c), pair(&g, &d));
            let k = num_rational::BigRational::from_integer((c.num_chords() as i64).into());
            prop_assert!(p <= pd && pd <= &k * &p, "{}: {} vs {}", key, p, pd);
        }
    }

    #[test]
    fn alpha_is_descending_and_idempotent(seed in any::<u64>()) {
        let l = code(seed);
        let a = alpha_unknot(&l);
        prop_assert!(is_descending(&a));
        prop_assert_eq!(alpha_unknot(&a), a.clone());
        let b = alpha_with(&l, AlphaRule::ReverseFirstUnder);
        prop_assert_eq!(alpha_with(&b, AlphaRule::ReverseFirstUnder), b);
    }

    #[test]
    fn all_c_word_is_identity(seed in any::<u64>()) {
        let l = code(seed);
        let sel: Vec<u32> = l.crossing_ids().into_iter().collect();
        let w = SplitWord::parse(&"C".repeat(sel.len())).unwrap();
        prop_assert_eq!(smooth(&l, &sel, &w).unwrap(), l);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn descending_diagrams_are_unlinks(seed in any::<u64>()) {
        let l = braid(seed);
        let n = l.num_components() as u32;
        prop_assert_eq!(homfly(&alpha_unknot(&l)), HomflyPoly::delta().pow(n - 1));
    }

    #[test]
    fn skein_relation(seed in any::<u64>()) {
        let l = braid(seed);
        for a in l.crossing_ids() {
            let (p, m, z) = skein_triple(&l, a).unwrap();
            let one = num_rational::BigRational::from_integer(1.into());
            let lhs = homfly(&p).shift(&one, 1, 0) - homfly(&m).shift(&one, -1, 0);
            prop_assert_eq!(lhs, homfly(&z).shift(&one, 0, 1));
        }
    }

    #[test]
    fn invariants_ignore_basepoint_and_alpha(seed in any::<u64>(), shift in 0usize..16) {
        let l = braid(seed);
        let cat = Catalog::builtin();
        let base = Evaluator::new(cat).all(&l).unwrap();
        if let Some(c) = first_nonempty(&l) {
            let r = l.rotate(c, shift % l.components()[c].len()).unwrap();
            prop_assert_eq!(Evaluator::new(cat).all(&r).unwrap(), base.clone());
        }
        prop_assert_eq!(Evaluator::new(cat).with_rule(AlphaRule::ReverseFirstUnder).all(&l).unwrap(), base.clone());
        prop_assert_eq!(Evaluator::new(cat).all(&l.reversed()).unwrap(), base);
    }

    #[test]
    fn pruning_is_sound(seed in any::<u64>()) {
        let l = code(seed);
        let cat = Catalog::builtin();
        let pruned = Evaluator::new(cat).all(&l).unwrap();
        prop_assert_eq!(Evaluator::new(cat).without_pruning().all(&l).unwrap(), pruned);
    }
}
