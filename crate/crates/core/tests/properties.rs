//! Randomized invariants: algebraic laws of the polynomial types and
//! symmetry properties of the full series pipeline.

use proptest::collection::vec;
use proptest::prelude::*;

use pattern_duel::gf::{cluster_gf, series_in_ab, transfer_gf, DEFAULT_TRANSFER_BUDGET};
use pattern_duel::pattern::{BetSpec, Pattern};
use pattern_duel::recurrence::{guess, ExactSequence, GuessConfig, Provenance};
use pattern_duel::series::tie_splits;
use pattern_duel::tripoly::{TriPoly, TriRat};
use pattern_duel::{Int, Rat};

fn tripoly_strategy() -> impl Strategy<Value = TriPoly> {
    vec(((0u32..4, 0u32..3, 0u32..3), -5i64..=5), 0..6).prop_map(|terms| {
        let mut p = TriPoly::zero();
        for ((ex, ea, eb), c) in terms {
            p.add_term((ex, ea, eb), &Int::from(c));
        }
        p
    })
}

/// A random bet: alphabet 2..=3, pattern length 2..=3, one or two patterns
/// per side.
fn spec_strategy() -> impl Strategy<Value = BetSpec> {
    (2u32..=3, 2usize..=3)
        .prop_flat_map(|(m, k)| {
            let pattern = vec(1u32..=m, k).prop_map(Pattern::new);
            (
                Just(m),
                vec(pattern.clone(), 1..=2),
                vec(pattern, 1..=2),
            )
        })
        .prop_map(|(m, alice, bob)| BetSpec::new(m, alice, bob).unwrap())
}

proptest! {
    #[test]
    fn tripoly_multiplication_distributes(
        a in tripoly_strategy(),
        b in tripoly_strategy(),
        c in tripoly_strategy(),
    ) {
        let lhs = &(&a + &b) * &c;
        let rhs = &(&a * &c) + &(&b * &c);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tripoly_multiplication_commutes(a in tripoly_strategy(), b in tripoly_strategy()) {
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn trirat_equality_survives_common_factors(
        num in tripoly_strategy(),
        factor in tripoly_strategy(),
    ) {
        prop_assume!(!factor.is_zero());
        let den = &TriPoly::one() - &TriPoly::x_power(1);
        let f = TriRat::new(num.clone(), den.clone());
        let g = TriRat::new(&num * &factor, &den * &factor);
        prop_assert!(f.equal(&g));
    }
}

proptest! {
    // full-pipeline cases are slower; keep the sample count modest
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cluster_and_transfer_agree(spec in spec_strategy()) {
        let a = cluster_gf(&spec);
        let b = transfer_gf(&spec, DEFAULT_TRANSFER_BUDGET).unwrap();
        prop_assert!(a.equal(&b));
    }

    #[test]
    fn setting_a_b_to_one_counts_all_words(spec in spec_strategy()) {
        // F(x; 1, 1) must equal 1/(1 - mx): cross-multiply the substitution
        let f = cluster_gf(&spec);
        let unrestricted = &TriPoly::one() - &TriPoly::monomial(i64::from(spec.m()), 1, 0, 0);
        let lhs = f.num().subst_ab_one();
        let rhs = f.den().subst_ab_one();
        prop_assert_eq!(&lhs * &unrestricted, rhs);
    }

    #[test]
    fn swapping_sides_mirrors_the_split(spec in spec_strategy()) {
        let direct = tie_splits(&spec, 12).unwrap();
        let swapped = tie_splits(&spec.swapped(), 12).unwrap();
        for (a, b) in direct.iter().zip(&swapped) {
            prop_assert_eq!(&a.plus, &b.minus);
            prop_assert_eq!(&a.zero, &b.zero);
            prop_assert_eq!(&a.minus, &b.plus);
        }
    }

    #[test]
    fn relabeling_letters_preserves_the_split(spec in spec_strategy(), swap in any::<bool>()) {
        // a transposition (extended by identity) is enough to exercise the map
        let perm: Vec<u32> = if swap {
            let mut p: Vec<u32> = (1..=spec.m()).collect();
            p.swap(0, 1);
            p
        } else {
            (1..=spec.m()).rev().collect()
        };
        let relabeled = spec.relabeled(&perm);
        prop_assert_eq!(
            tie_splits(&spec, 12).unwrap(),
            tie_splits(&relabeled, 12).unwrap()
        );
    }

    #[test]
    fn reversing_all_patterns_preserves_the_split(spec in spec_strategy()) {
        let rev = BetSpec::new(
            spec.m(),
            spec.alice().iter().map(Pattern::reversed).collect(),
            spec.bob().iter().map(Pattern::reversed).collect(),
        )
        .unwrap();
        prop_assert_eq!(tie_splits(&spec, 12).unwrap(), tie_splits(&rev, 12).unwrap());
    }

    #[test]
    fn series_coefficients_are_word_counts(spec in spec_strategy()) {
        use pattern_duel::pattern::{brute_enumerator, DEFAULT_BRUTE_BUDGET};
        let series = series_in_ab(&cluster_gf(&spec), 6);
        for n in 0..=6 {
            let brute = brute_enumerator(&spec, n, DEFAULT_BRUTE_BUDGET).unwrap();
            prop_assert_eq!(&series[n], &brute);
        }
    }

    #[test]
    fn guessing_is_scale_invariant(p in -40i64..=40, q in 1i64..=40) {
        prop_assume!(p != 0);
        let mut terms = vec![Rat::from_integer(Int::from(1)); 2];
        for i in 2..60 {
            let next = &terms[i - 1] + &terms[i - 2];
            terms.push(next);
        }
        let seq = ExactSequence::new(0, terms, Provenance::SeriesDirect);
        let factor = Rat::new(Int::from(p), Int::from(q));
        let rec = guess(&seq, &GuessConfig::default()).unwrap();
        let rec_scaled = guess(&seq.scaled(&factor), &GuessConfig::default()).unwrap();
        prop_assert_eq!(rec, rec_scaled);
    }
}
