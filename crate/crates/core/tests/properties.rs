mod common;

use braid_entropy::bounds::{self, BoundProfile, Side, Target, Thm61Variant};
use braid_entropy::curves::{self, CaseTag, ChainShape};
use braid_entropy::pf::{self, IntersectionMatrix, PfOptions, DEFAULT_TOLERANCE};
use proptest::prelude::*;

use common::{gram_f64, inertia_largest_eigenvalue, random_connected_matrix, SplitMix};

fn grid() -> impl Iterator<Item = (u32, u32)> {
    (2u32..=64).flat_map(|g| (2..=2 * g + 16).map(move |n| (g, n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pf_bracket_properties(seed in any::<u64>()) {
        let rows = random_connected_matrix(&mut SplitMix(seed), 8, 50);
        let m = IntersectionMatrix::from_rows(&rows).unwrap().gram();
        let sol = pf::pf_solve(&m, &PfOptions::default()).unwrap();
        let b = sol.bracket;
        prop_assert!(b.lower <= b.upper);
        prop_assert!(b.width() <= b.tolerance);
        prop_assert!(m.min_row_sum() as f64 <= b.lower);
        prop_assert!(b.upper <= m.max_row_sum() as f64);
        let vmax = sol.vector.iter().copied().fold(0.0, f64::max);
        prop_assert!(sol.vector.iter().all(|&v| v > 0.0));
        prop_assert!(sol.residual(&m) <= 1e-8 * vmax);
        let oracle = inertia_largest_eigenvalue(&gram_f64(&rows));
        prop_assert!((oracle - b.midpoint()).abs() <= 1e-9 * oracle.max(1.0));
    }

    #[test]
    fn power_method_agrees(seed in any::<u64>()) {
        let rows = random_connected_matrix(&mut SplitMix(seed), 6, 20);
        let m = IntersectionMatrix::from_rows(&rows).unwrap().gram();
        let a = pf::pf_solve(&m, &PfOptions::default()).unwrap().bracket;
        let b = pf::pf_solve(&m, &PfOptions { method: pf::PfMethod::Power, ..PfOptions::default() })
            .unwrap()
            .bracket;
        prop_assert!(a.lower <= b.upper && b.lower <= a.upper);
    }

    #[test]
    fn trace_relation(exp in 0.0f64..12.0) {
        let mu = 10f64.powf(exp);
        let d = pf::dilatation_from_mu(mu).unwrap();
        let err = (d.lambda + 1.0 / d.lambda - d.trace).abs();
        prop_assert!(err <= 4.0 * f64::EPSILON * d.trace);
        if mu <= 1e5 {
            prop_assert!(err <= 1e-10);
        }
        prop_assert_eq!(d.trace, 2.0 + mu);
        prop_assert!(d.lambda > 1.0);
    }

    #[test]
    fn entropy_below_log_trace(exp in -6.0f64..12.0) {
        let mu = 10f64.powf(exp);
        let d = pf::dilatation_from_mu(mu).unwrap();
        prop_assert!(d.entropy <= (2.0 + mu).ln());
        // the gap is about 1/μ², below double resolution of log(2 + μ) past 1e6
        if mu <= 1e6 {
            prop_assert!(d.entropy < (2.0 + mu).ln());
        }
        prop_assert!((d.entropy - d.lambda.ln()).abs() == 0.0);
    }

    #[test]
    fn thm61_monotone(g in 6u32..5000, n in 1u32..200) {
        for v in [Thm61Variant::Statement, Thm61Variant::Proof] {
            let here = bounds::thm61_lower(g, n, v).unwrap();
            prop_assert!(bounds::thm61_lower(g + 1, n, v).unwrap() >= here);
            prop_assert!(bounds::thm61_lower(g, n + 1, v).unwrap() <= here);
        }
    }

    #[test]
    fn varkappa_strictly_increasing(a in 0.0f64..1e6, delta in 1e-6f64..1e3) {
        let x = bounds::varkappa_lower(a).unwrap();
        let y = bounds::varkappa_lower(a + delta).unwrap();
        prop_assert!(x < y);
    }

    #[test]
    fn ivanov_ordering(
        s in proptest::collection::vec(-6i64..=6, 0..5),
        seed in any::<u64>(),
        rho_gamma in 0u64..100,
    ) {
        let mut rng = SplitMix(seed);
        let a: Vec<u64> = s.iter().map(|_| rng.below(50)).collect();
        let b: Vec<u64> = s.iter().map(|_| rng.below(50)).collect();
        let big = s.iter().all(|x| x.abs() >= 2);
        let input = bounds::IvanovInput::new(s, a, b, rho_gamma).unwrap();
        let (lo, hi) = bounds::ivanov_bounds(&input);
        prop_assert!(lo <= hi);
        if big {
            prop_assert!(lo >= -(rho_gamma as i128));
        }
    }
}

#[test]
fn configuration_invariants_on_grid() {
    for (g, n) in grid() {
        let c = curves::build_configuration(g, n).unwrap();
        c.check_invariants()
            .unwrap_or_else(|e| panic!("({g},{n}): {e}"));
        assert!(c.graph.is_connected());
        assert_eq!(c.subsurface_genera.iter().sum::<u32>(), g);
        assert_eq!(c.layout.total(), n);
        let gram = c.matrix.gram();
        let paths = c.graph.path_weight_matrix();
        assert_eq!(gram.to_rows(), paths, "({g},{n})");
        // brute force over blue vertices, straight from N
        let rows = c.matrix.to_rows();
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                let w: u128 = (0..rows[0].len())
                    .map(|b| rows[i][b] as u128 * rows[j][b] as u128)
                    .sum();
                assert_eq!(gram.get(i, j), w);
            }
        }
        assert!(gram.is_symmetric());
    }
}

#[test]
fn valences() {
    for (g, n) in grid() {
        let c = curves::build_configuration(g, n).unwrap();
        if c.case == CaseTag::Case1 {
            continue;
        }
        for i in 0..c.graph.red().len() {
            assert!(c.graph.red_valence(i) <= 2, "({g},{n})");
        }
        for j in 0..c.graph.blue().len() {
            let v = c.graph.blue_valence(j);
            match c.chain {
                Some(ChainShape::Cyclic) => assert_eq!(v, 3, "({g},{n})"),
                _ => assert!((2..=3).contains(&v), "({g},{n})"),
            }
        }
    }
}

#[test]
fn lower_bounds_below_upper_bounds() {
    for g in 2u32..=64 {
        for n in 1..=2 * g + 16 {
            let p = BoundProfile::evaluate(g, n, Some(2.0)).unwrap();
            assert!(
                p.inconsistencies().is_empty(),
                "({g},{n}): {:?}",
                p.inconsistencies()
            );
            let upper = bounds::main_upper(g, n).unwrap();
            let lower = bounds::constant_lower()
                .max(bounds::thm61_lower(g, n, Thm61Variant::Proof).unwrap_or(0.0));
            assert!(lower <= upper);
            for (name, v) in p.valid(Side::Lower, Target::PureBraid) {
                for (uname, u) in p.valid(Side::Upper, Target::PureBraid) {
                    assert!(v <= u, "({g},{n}): {name} > {uname}");
                }
            }
        }
    }
}

#[test]
fn sandwich_on_grid() {
    for (g, n) in grid() {
        let c = curves::build_configuration(g, n).unwrap();
        let h = curves::configuration_dilatation(&c, DEFAULT_TOLERANCE)
            .unwrap()
            .estimate
            .entropy;
        let p = BoundProfile::evaluate(g, n, None).unwrap();
        let (_, best) = p.best_lower().unwrap();
        assert!(best <= h, "({g},{n})");
        assert!(h <= bounds::main_upper(g, n).unwrap(), "({g},{n})");
    }
}

#[test]
fn alm_bound_exhaustive() {
    for g in 2u32..=64 {
        for n in 1..=2 * g + 16 {
            let v = bounds::alm_lower(
                bounds::kappa_lower(g, n),
                bounds::euler_characteristic(g, n),
            )
            .unwrap();
            assert!(v >= 0.000155);
            assert!(bounds::alm_ratio_exceeds_half(g, n));
        }
    }
}

#[test]
fn coarsening_is_monotone() {
    for g in 2u32..=64 {
        let mut last: Option<(u32, u128)> = None;
        for n in 4..2 * g {
            let c = curves::build_configuration(g, n).unwrap();
            let equal = c
                .subsurface_genera
                .iter()
                .all(|&h| h == c.subsurface_genera[0]);
            if c.chain != Some(ChainShape::Cyclic) || !equal {
                continue;
            }
            let k = (2 * g).div_ceil(n);
            let (ceiling, _) = curves::row_sum_ceilings(k);
            let h = curves::configuration_dilatation(&c, DEFAULT_TOLERANCE)
                .unwrap()
                .estimate
                .entropy;
            assert!(h <= (2.0 + ceiling as f64).ln());
            if let Some((k0, c0)) = last {
                assert!(k <= k0);
                assert!(ceiling <= c0);
            }
            last = Some((k, ceiling));
        }
    }
}
