use std::sync::OnceLock;

use proptest::prelude::*;

use quatlat_core::build_squares;
use quatlat_core::membership::factor_element;
use quatlat_core::quat::reduce_canonical;
use quatlat_core::rewrite::{
    classify_pair, commute_in_group, evaluate_word, normalize_ab, normalize_ba, power_commute_scan,
    PairClass,
};
use quatlat_core::sample::{random_nonzero_quaternion, random_reduced_word, random_word, rng};
use quatlat_core::{GroupElement, Presentation, Quaternion, Side};

fn groups() -> &'static [Presentation] {
    static GROUPS: OnceLock<Vec<Presentation>> = OnceLock::new();
    GROUPS.get_or_init(|| {
        [(3, 5), (5, 7), (5, 17), (7, 3)]
            .iter()
            .map(|&(p, l)| build_squares(p, l).unwrap())
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn normal_forms_agree_with_evaluation(seed in any::<u64>(), g in 0usize..4, len in 0usize..30) {
        let pres = &groups()[g];
        let mut r = rng(seed);
        let w = random_word(pres, len, &mut r);
        let e = evaluate_word(pres, &w).unwrap();
        let ab = normalize_ab(pres, &w).unwrap();
        let ba = normalize_ba(pres, &w).unwrap();
        prop_assert_eq!(evaluate_word(pres, &ab.to_word(pres)).unwrap(), e.clone());
        prop_assert_eq!(evaluate_word(pres, &ba.to_word(pres)).unwrap(), e.clone());
        prop_assert_eq!(normalize_ab(pres, &ab.to_word(pres)).unwrap(), ab.clone());
        prop_assert_eq!(normalize_ab(pres, &ba.to_word(pres)).unwrap(), ab.clone());
        prop_assert_eq!(ab.sigma_a.len(), ba.sigma_a.len());
        prop_assert_eq!(ab.sigma_b.len(), ba.sigma_b.len());
        let inv = w.concat(&w.inverse()).unwrap();
        prop_assert!(normalize_ab(pres, &inv).unwrap().is_empty());
    }

    #[test]
    fn reduced_words_in_one_factor_are_nontrivial(seed in any::<u64>(), g in 0usize..4, len in 1usize..16, h in any::<bool>()) {
        let pres = &groups()[g];
        let side = if h { Side::H } else { Side::V };
        let w = random_reduced_word(pres, Some(side), len, &mut rng(seed));
        let e = evaluate_word(pres, &w).unwrap();
        prop_assert!(!e.is_identity());
        let nf = normalize_ab(pres, &w).unwrap();
        prop_assert_eq!(nf.len(), len);
    }

    #[test]
    fn factorization_round_trips(seed in any::<u64>(), g in 0usize..4, len in 0usize..12) {
        let pres = &groups()[g];
        let w = random_word(pres, len, &mut rng(seed));
        let e = evaluate_word(pres, &w).unwrap();
        let f = factor_element(&e, pres).unwrap();
        prop_assert_eq!(evaluate_word(pres, &f).unwrap(), e);
        prop_assert_eq!(f.len(), normalize_ab(pres, &w).unwrap().len());
    }

    #[test]
    fn canonical_form_ignores_scaling(seed in any::<u64>(), num in 1i64..50, den in 1i64..50, neg in any::<bool>()) {
        let x = random_nonzero_quaternion(40, &mut rng(seed));
        let s = if neg { -num } else { num };
        let lambda = num_rational::BigRational::new(s.into(), den.into());
        prop_assert_eq!(reduce_canonical(&x.scale(&lambda)).unwrap(), reduce_canonical(&x).unwrap());
    }

    #[test]
    fn commutation_is_transitive(seed in any::<u64>(), a in 1i64..4, b in 1i64..4) {
        let pres = &groups()[0];
        let mut r = rng(seed);
        let base = evaluate_word(pres, &random_reduced_word(pres, None, 3, &mut r)).unwrap();
        let other = evaluate_word(pres, &random_reduced_word(pres, None, 4, &mut r)).unwrap();
        let g1 = base.pow(a);
        let g2 = base.pow(b);
        for g3 in [base.pow(a + b), other] {
            if [&g1, &g2, &g3].iter().any(|g| g.is_identity()) {
                continue;
            }
            if commute_in_group(&g1, &g2) && commute_in_group(&g2, &g3) {
                prop_assert!(commute_in_group(&g1, &g3));
            }
        }
    }

    #[test]
    fn anti_tori_have_no_commuting_powers(seed in any::<u64>(), la in 1usize..3, lb in 1usize..3) {
        let pres = &groups()[2];
        let mut r = rng(seed);
        let a = evaluate_word(pres, &random_reduced_word(pres, Some(Side::H), la, &mut r)).unwrap();
        let b = evaluate_word(pres, &random_reduced_word(pres, Some(Side::V), lb, &mut r)).unwrap();
        let class = classify_pair(5, 17, &a, &b).unwrap();
        let scan = power_commute_scan(&a, &b, 5);
        match class {
            PairClass::AntiTorus => prop_assert_eq!(scan, None),
            PairClass::ZCrossZ => prop_assert_eq!(scan, Some((1, 1))),
            PairClass::TrivialFactor => prop_assert!(false, "nontrivial inputs"),
        }
    }
}

#[test]
fn commuting_generators_exist_in_5_17() {
    // 1+2i and 1+4i share an axis
    let a: GroupElement = reduce_canonical(&"1+2i".parse::<Quaternion>().unwrap()).unwrap();
    let b = reduce_canonical(&"1+4i".parse::<Quaternion>().unwrap()).unwrap();
    assert!(commute_in_group(&a, &b));
    assert_eq!(classify_pair(5, 17, &a, &b).unwrap(), PairClass::ZCrossZ);
}
