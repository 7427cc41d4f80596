use posterize::{bilateral_plane, build_lut, quantize_value, BilateralParams, MembershipParams};
use testkit::gen;
use testkit::suite::LutFault;
use testkit::{
    oracle_bilateral, oracle_quantize_value, run_property_suite, run_property_suite_with,
    SuiteOptions,
};

#[test]
fn default_seeds_pass() {
    let report = run_property_suite();
    assert!(report.all_passed(), "{report}");
    assert_eq!(report.outcomes.len(), 15);
}

#[test]
fn other_seeds_pass() {
    for seed in [1, 2] {
        let report = run_property_suite_with(&SuiteOptions::with_seed(seed));
        assert!(report.all_passed(), "seed {seed}\n{report}");
    }
}

#[test]
fn injected_lut_fault_is_caught() {
    let correct = build_lut(&MembershipParams::default()).table()[100];
    let opts = SuiteOptions {
        lut_fault: Some(LutFault {
            index: 100,
            value: correct.wrapping_add(1),
        }),
        ..SuiteOptions::with_seed(0x5eed)
    };
    let report = run_property_suite_with(&opts);
    assert!(!report.all_passed());
    let lut = report.get("lut_oracle_equivalence").unwrap();
    assert!(!lut.passed());
    assert!(lut.failure.as_ref().unwrap().contains("lut[100]"));
    assert_eq!(report.outcomes.iter().filter(|o| !o.passed()).count(), 1);
    assert!(report.to_string().contains("FAIL lut_oracle_equivalence"));
}

#[test]
fn determinism_over_1_2_8_threads() {
    let opts = SuiteOptions {
        thread_counts: vec![1, 2, 8],
        ..SuiteOptions::with_seed(3)
    };
    assert!(run_property_suite_with(&opts)
        .get("thread_determinism")
        .unwrap()
        .passed());
}

#[test]
fn quantize_agrees_with_oracle_on_fuzzed_params() {
    let mut rng = gen::rng(77);
    for i in 0..500 {
        let params = if i % 2 == 0 {
            gen::random_membership(&mut rng)
        } else {
            gen::random_integer_membership(&mut rng)
        };
        for p in 0..=255u8 {
            assert_eq!(
                quantize_value(p, &params),
                oracle_quantize_value(p, &params),
                "p={p} {params:?}"
            );
        }
    }
}

#[test]
fn bilateral_agrees_with_oracle_on_rgb_sized_inputs() {
    // 16x16 planes, sigma_s = 1.5, sigma_r = 30, r = 4
    let params = BilateralParams::new(1.5, 30.0, 4).unwrap();
    for seed in 0..3 {
        let img = gen::random_image(16, 16, 3, seed);
        for plane in img.split_channels() {
            assert_eq!(
                bilateral_plane(&plane, &params),
                oracle_bilateral(&plane, &params)
            );
        }
    }
}
