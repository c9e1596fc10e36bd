use proptest::prelude::*;
use sliderule_core::analysis::{aligned_value, alignment, resolvable_bound, AccuracyParams};
use sliderule_core::tickgen::{generate_ticks, TickPolicy};
use sliderule_core::{Origin, ScaleFunction, ScaleRegistry, ScaleSpec};

const L: f64 = 250.0;

fn registry_scales() -> Vec<ScaleSpec> {
    let reg = ScaleRegistry::standard();
    reg.entries().iter().map(|e| e.build(L).unwrap()).collect()
}

fn power(name: &str, alpha: f64, x_min: f64, x_max: f64) -> ScaleSpec {
    ScaleSpec::builder(name, ScaleFunction::Power { alpha })
        .length_mm(L)
        .range(x_min, x_max)
        .origin(Origin::Natural)
        .build()
        .unwrap()
}

fn close(got: f64, want: f64, rel: f64) -> bool {
    (got - want).abs() <= rel * want.abs().max(f64::MIN_POSITIVE)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn value_at_inverts_position(t in 0.0f64..=1.0) {
        for s in registry_scales() {
            let x = s.x_min() + t * (s.x_max() - s.x_min());
            let back = s.value_at(s.position(x).unwrap()).unwrap();
            prop_assert!(
                close(back, x, 1e-9) || (x == 0.0 && back.abs() < 1e-12),
                "{}: {x} -> {back}", s.name()
            );
        }
    }

    #[test]
    fn zoom_multiplies_positions(t in 0.0f64..=1.0, zoom in 0.1f64..10.0) {
        for s in registry_scales() {
            let z = s.with_zoom(zoom).unwrap();
            let x = s.x_min() + t * (s.x_max() - s.x_min());
            let ratio = zoom / s.zoom();
            let want = ratio * s.position(x).unwrap();
            prop_assert!((z.position(x).unwrap() - want).abs() <= 1e-9 * z.length_mm());
        }
    }

    #[test]
    fn squares_and_cubes_sit_over_their_roots(x in 1.0f64..10.0) {
        let reg = ScaleRegistry::standard();
        let c = reg.scale("C", L).unwrap();
        let b = reg.scale("B", L).unwrap();
        let k = reg.scale("K", L).unwrap();
        let pc = c.position(x).unwrap();
        prop_assert!((b.position(x * x).unwrap() - pc).abs() <= 1e-9 * L);
        prop_assert!((k.position(x.powi(3)).unwrap() - pc).abs() <= 1e-9 * L);
    }

    #[test]
    fn power_scales_are_homogeneous(
        alpha in prop::sample::select(vec![-2.0, -1.0, 0.5, 2.0, 3.0]),
        x in 0.5f64..5.0,
        s in 1.1f64..2.0,
    ) {
        let scale = power("P", alpha, 0.5, 10.0);
        let ratio = scale.position(s * x).unwrap() / scale.position(x).unwrap();
        prop_assert!(close(ratio, s.powf(alpha), 1e-12));
    }

    #[test]
    fn aligned_values_share_a_position(
        alpha in prop::sample::select(vec![0.5, 2.0, 3.0]),
        m1 in 1.0f64..100.0,
        m2 in 1.0f64..100.0,
        t in 0.0f64..=1.0,
    ) {
        let a = power("A", alpha, 0.0, m1);
        let b = power("B", alpha, 0.0, m2);
        let report = alignment(&a, &b).unwrap();
        prop_assert!(close(report.t, m2 / m1, 1e-15));
        prop_assert!(close(report.unit_ratio, report.t.powf(alpha), 1e-12));
        let x1 = t * m1;
        let x2 = aligned_value(&report, x1).unwrap();
        prop_assert!((a.position(x1).unwrap() - b.position(x2).unwrap()).abs() <= 1e-9 * L);
    }

    #[test]
    fn smaller_h_reaches_further(h in 0.05f64..1.0, shrink in 0.1f64..0.95) {
        let q = power("Q", 2.0, 0.0, 100.0);
        let wide = resolvable_bound(&q, &AccuracyParams::new(h).unwrap()).unwrap();
        let fine = resolvable_bound(&q, &AccuracyParams::new(h * shrink).unwrap()).unwrap();
        prop_assert!(fine.resolvable_x_bound.unwrap() <= wide.resolvable_x_bound.unwrap());
    }

    #[test]
    fn multiplication_on_c_and_d(a in 1.0f64..10.0, b in 1.0f64..10.0) {
        let reg = ScaleRegistry::standard();
        let c = reg.scale("C", L).unwrap();
        let d = reg.scale("D", L).unwrap();
        let (mut sum, mut shift) = (d.position(a).unwrap() + c.position(b).unwrap(), 1.0);
        if sum > L {
            sum -= L;
            shift = 10.0;
        }
        let product = d.value_at(sum).unwrap() * shift;
        prop_assert!(close(product, a * b, 1e-6));
    }
}

fn random_spec() -> impl Strategy<Value = ScaleSpec> {
    let log = (0.1f64..10.0, 2.0f64..1000.0, 50.0f64..500.0).prop_map(|(lo, r, len)| {
        ScaleSpec::builder("Lg", ScaleFunction::Log { base: 10.0 })
            .length_mm(len)
            .range(lo, lo * r)
            .origin(Origin::RangeEnd)
            .build()
            .unwrap()
    });
    let pos = (
        prop::sample::select(vec![0.5, 2.0, 3.0]),
        0.0f64..50.0,
        1.5f64..100.0,
        50.0f64..500.0,
        any::<bool>(),
    )
        .prop_map(|(alpha, lo, r, len, natural)| {
            ScaleSpec::builder("P", ScaleFunction::Power { alpha })
                .length_mm(len)
                .range(lo, lo * r + 1.0)
                .origin(if natural {
                    Origin::Natural
                } else {
                    Origin::RangeEnd
                })
                .build()
                .unwrap()
        });
    let neg = (
        prop::sample::select(vec![-1.0, -2.0]),
        0.1f64..5.0,
        2.0f64..100.0,
        50.0f64..500.0,
    )
        .prop_map(|(alpha, lo, r, len)| {
            ScaleSpec::builder("N", ScaleFunction::Power { alpha })
                .length_mm(len)
                .range(lo, lo * r)
                .build()
                .unwrap()
        });
    let horizon = (10.0f64..1e5, 50.0f64..500.0).prop_map(|(hi, len)| {
        ScaleSpec::builder("H", ScaleFunction::horizon_km())
            .length_mm(len)
            .range(0.0, hi)
            .build()
            .unwrap()
    });
    prop_oneof![log, pos, neg, horizon]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ticks_keep_their_distance(spec in random_spec(), min_gap in 0.3f64..2.0) {
        let policy = TickPolicy {
            min_gap_mm: min_gap,
            min_label_gap_mm: 6.0f64.max(min_gap),
            ..Default::default()
        };
        let set = generate_ticks(&spec, &policy).unwrap();
        prop_assert!(!set.ticks.is_empty());
        for w in set.ticks.windows(2) {
            prop_assert!(w[1].pos_mm - w[0].pos_mm >= min_gap - 1e-9, "{:?}", w);
        }
    }
}
