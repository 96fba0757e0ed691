#![allow(clippy::needless_range_loop)]

mod common;

use bounded_affine::affine::AffinePerm;
use bounded_affine::enumerate::{derangement_eulerian_recurrence, indecomposable_counts, DEFAULT_CAP};
use bounded_affine::perm::{contains, Perm};
use bounded_affine::series::{
    affine_from_class, affine_from_class_convolution, indecomposables_from_class, Builtin, ClassSpec, Series,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use proptest::prelude::*;

fn perm_strategy(max: usize) -> impl Strategy<Value = Perm> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Perm::new(v).unwrap())
}

/// Any affine permutation of size `1..=max_n` with standard word entries
/// in `-2..=2`.
fn affine_strategy(max_n: usize) -> impl Strategy<Value = AffinePerm> {
    (1..=max_n)
        .prop_flat_map(|n| {
            (Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle(), proptest::collection::vec(-2i64..=2, n))
        })
        .prop_map(|(flat, mut word)| {
            let s: i64 = word.iter().sum();
            word[0] -= s;
            AffinePerm::from_standard(&Perm::new(flat).unwrap(), &word).unwrap()
        })
}

proptest! {
    #[test]
    fn containment_agrees_with_wide_window(omega in affine_strategy(4), tau in perm_strategy(3)) {
        let span = 3 * tau.len() as i64 * omega.default_horizon() as i64;
        let oracle = common::contains_wide(omega.window(), tau.values(), span);
        prop_assert_eq!(omega.contains_finite_pattern(&tau, None).unwrap(), oracle);
    }

    #[test]
    fn witness_is_an_occurrence(omega in affine_strategy(6), tau in perm_strategy(4)) {
        if let Some(pos) = omega.find_finite_pattern(&tau, None).unwrap() {
            prop_assert!(pos.windows(2).all(|w| w[0] < w[1]));
            prop_assert!((1..=omega.size() as i64).contains(&pos[0]));
            let vals: Vec<i64> = pos.iter().map(|&i| omega.apply(i)).collect();
            prop_assert_eq!(common::pattern_of(&vals), tau.values().to_vec());
        }
    }

    #[test]
    fn horizon_is_stable(omega in affine_strategy(6), tau in perm_strategy(4), mult in 2u64..5) {
        let h = omega.default_horizon();
        prop_assert_eq!(
            omega.contains_finite_pattern(&tau, None).unwrap(),
            omega.contains_finite_pattern(&tau, Some(mult * h)).unwrap()
        );
        prop_assert!(omega.contains_finite_pattern(&tau, Some(h - 1)).is_err());
    }

    #[test]
    fn standard_round_trip(omega in affine_strategy(7)) {
        let s = omega.standard_decomposition();
        prop_assert_eq!(s.word.iter().sum::<i64>(), 0);
        prop_assert_eq!(AffinePerm::from_standard(&s.flat, &s.word).unwrap(), omega.clone());
        prop_assert_eq!(s.has_bounded_signs(), omega.is_bounded());
    }

    #[test]
    fn shifts_compose(omega in affine_strategy(6), a in -7i64..7, b in -7i64..7) {
        prop_assert_eq!(omega.shift(a).shift(b), omega.shift(a + b));
        prop_assert_eq!(omega.shift(a).is_bounded(), omega.is_bounded());
        let n = omega.size() as i64;
        for i in -10..10 {
            prop_assert_eq!(omega.shift(a).apply(i), omega.apply(i - a) + a);
            prop_assert_eq!(omega.apply(i + n), omega.apply(i) + n);
        }
    }

    #[test]
    fn decomposition_reassembles(omega in affine_strategy(6)) {
        if let Some(d) = omega.is_decomposable() {
            let back = AffinePerm::infinite_sum(&d.block).unwrap().shift(d.shift);
            prop_assert_eq!(back, omega);
        }
    }

    #[test]
    fn infinite_sum_of_a_doubled_block(p in perm_strategy(5)) {
        let single = AffinePerm::infinite_sum(&p).unwrap();
        let double = AffinePerm::infinite_sum(&p.direct_sum(&p)).unwrap();
        prop_assert!(single.same_function(&double));
        prop_assert_ne!(single.size(), double.size());
    }

    #[test]
    fn window_text_round_trip(omega in affine_strategy(8)) {
        let text = omega.to_string();
        prop_assert_eq!(text.parse::<AffinePerm>().unwrap(), omega.clone());
        let json = serde_json::to_string(&omega).unwrap();
        prop_assert_eq!(serde_json::from_str::<AffinePerm>(&json).unwrap(), omega);
    }

    #[test]
    fn perm_containment_matches_subsequences(host in perm_strategy(7), tau in perm_strategy(4)) {
        use itertools::Itertools;
        let oracle = (0..host.len()).combinations(tau.len()).any(|c| {
            let vals: Vec<i64> = c.iter().map(|&i| host.values()[i] as i64).collect();
            common::pattern_of(&vals) == tau.values()
        });
        prop_assert_eq!(contains(&tau, &host), oracle);
    }

    #[test]
    fn sum_blocks_reassemble(p in perm_strategy(9)) {
        let b = p.sum_blocks().unwrap();
        prop_assert_eq!(b.reassemble(), p.clone());
        prop_assert!(b.blocks.iter().all(Perm::is_indecomposable));
        prop_assert_eq!(b.block_count, b.blocks.len());
    }
}

#[test]
fn affine_transforms_agree_for_every_builtin() {
    for b in Builtin::ALL {
        let f = ClassSpec::builtin(b).f_series(200).unwrap();
        let a = affine_from_class(&f).unwrap();
        assert_eq!(a, affine_from_class_convolution(&f).unwrap(), "{b}");
        let g = indecomposables_from_class(&f).unwrap();
        for n in 1..=200 {
            let (an, fnn, gn) = (a.coeff(n), f.coeff(n), g.coeff(n));
            let ni = BigInt::from(n);
            let lower = std::cmp::max(gn * &ni, fnn.clone());
            assert!(&lower <= an, "{b} n={n}: lower bound");
            assert!(an <= &(fnn * &ni), "{b} n={n}: upper bound");
        }
    }
}

#[test]
fn full_class_affine_is_shifted_indecomposables() {
    let g = indecomposable_counts(8, DEFAULT_CAP).unwrap();
    let f = ClassSpec::builtin(Builtin::Full).f_series(7).unwrap();
    let a = affine_from_class(&f).unwrap().to_integers().unwrap();
    for n in 1..=7 {
        assert_eq!(a[n], BigInt::from(g[n + 1].clone()), "n={n}");
    }
}

#[test]
fn derangement_variance_trend() {
    let d = derangement_eulerian_recurrence(40);
    let dev = |n: usize| {
        let row: Vec<f64> = (0..=n).map(|k| d.get(n, k).to_f64().unwrap()).collect();
        let total: f64 = row.iter().sum();
        let mean: f64 = row.iter().enumerate().map(|(k, c)| k as f64 * c).sum::<f64>() / total;
        let var: f64 = row.iter().enumerate().map(|(k, c)| (k as f64 - mean).powi(2) * c).sum::<f64>() / total;
        (var / n as f64 - 1.0 / 12.0).abs()
    };
    assert!(dev(20) < dev(10));
    assert!(dev(40) < dev(20));
}

#[test]
fn derangement_multiplicity_identity() {
    // Permutations with exactly m fixed points and k excedances.
    use itertools::Itertools;
    let d = derangement_eulerian_recurrence(6);
    for n in 0..=6usize {
        let mut counts = vec![vec![0u64; n + 1]; n + 1];
        for p in (1..=n as u32).permutations(n) {
            let fixed = p.iter().enumerate().filter(|(i, &v)| v as usize == i + 1).count();
            let exc = p.iter().enumerate().filter(|(i, &v)| v as usize > i + 1).count();
            counts[fixed][exc] += 1;
        }
        for m in 0..=n {
            for k in 0..=n {
                let want = common::binom(n as u64, m as u64) * d.get(n - m, k);
                assert_eq!(want, counts[m][k].into(), "n={n} m={m} k={k}");
            }
        }
    }
}

#[test]
fn class_file_round_trip() {
    let dir = std::env::temp_dir().join(format!("affperm-class-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalan.json");
    std::fs::write(&path, r#"{"name": "cat", "f": [1, 1, 2, 5, 14, 42]}"#).unwrap();
    let spec = ClassSpec::parse(&format!("file:{}", path.display())).unwrap();
    let a = affine_from_class(&spec.f_series(5).unwrap()).unwrap();
    assert_eq!(a, Series::from_integers([0, 1, 3, 10, 35, 126]));
    assert!(spec.f_series(6).is_err());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn rational_series_identities() {
    let f = Series::new((0..12).map(|i| BigRational::new(BigInt::from(i * i + 1), BigInt::from(i + 2))).collect());
    let inv = f.reciprocal().unwrap();
    let prod = f.mul_series(&inv);
    assert!(prod.coeff(0) == &BigRational::from_integer(1.into()));
    assert!((1..=11).all(|n| prod.coeff(n).is_zero()));
    let ld = f.log_derivative().unwrap();
    assert_eq!(ld.mul_series(&f), f.x_derivative());
}
