use mohgen_core::document;
use mohgen_core::forge::{reduce_by_curve_binomial, Part};
use mohgen_core::params::valid_lambdas;
use mohgen_core::verify::parse_grid;
use mohgen_core::{build_generators, run_suite, GeneratorSet, Polynomial, Rational, Suite};
use num_traits::{One, Pow, Zero};
use proptest::prelude::*;

fn grid() -> Vec<GeneratorSet> {
    parse_grid("1,3,5,7,9,11;3")
        .unwrap()
        .into_iter()
        .map(|(n, l)| build_generators(n, l).unwrap())
        .collect()
}

/// `f(t^{nm} + t^{nm+λ}, t^{(n+1)m}, t^{(n+2)m})` at a rational point.
fn eval_on_curve(f: &Polynomial, set: &GeneratorSet, t: &Rational) -> Rational {
    let p = &set.params;
    let n = u64::from(p.n);
    let pow = |e: u64| Pow::pow(t.clone(), e);
    let x = pow(n * p.m) + pow(n * p.m + p.lambda);
    let y = pow((n + 1) * p.m);
    let z = pow((n + 2) * p.m);
    f.terms().fold(Rational::zero(), |acc, (m, c)| {
        acc + c.clone()
            * Pow::pow(x.clone(), m.x())
            * Pow::pow(y.clone(), m.y())
            * Pow::pow(z.clone(), m.z())
    })
}

#[test]
fn full_suite_passes_across_grid() {
    for (n, l) in parse_grid("1,3,5,7,9,11;3").unwrap() {
        let report = run_suite(n, l, Suite::All).unwrap();
        assert!(report.passed(), "{}", report.to_text());
    }
}

#[test]
fn generators_vanish_at_rational_points() {
    let points = [
        Rational::new(2.into(), 3.into()),
        Rational::new((-5).into(), 7.into()),
    ];
    for set in grid().iter().filter(|s| s.params.n <= 5) {
        for f in &set.generators {
            for t in &points {
                assert!(
                    eval_on_curve(f, set, t).is_zero(),
                    "n={} λ={} f={f}",
                    set.params.n,
                    set.params.lambda
                );
            }
        }
        let one = Rational::one();
        assert!(!eval_on_curve(&Polynomial::x(), set, &one).is_zero());
    }
}

#[test]
fn chain_relations_hold_on_sigma_parts_and_modulo_the_curve() {
    for set in grid() {
        for k in 1..=set.chain_count() {
            assert!(set.syzygy_residual(k, Part::Sigma).is_zero());
            let full = set.syzygy_residual(k, Part::Full);
            assert!(
                reduce_by_curve_binomial(&full, set.params.n).is_zero(),
                "chain {k}: {full}"
            );
        }
    }
}

#[test]
fn documents_round_trip_across_grid() {
    for set in grid() {
        assert_eq!(document::parse(&document::emit(&set)).unwrap(), set);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn display_forms_are_primitive_scalings(k in 0u32..4, idx in 0usize..6) {
        let n = 2 * k + 1;
        let l = valid_lambdas(n).nth(idx).unwrap();
        let set = build_generators(n, l).unwrap();
        for (f, (shown, s)) in set.generators.iter().zip(set.display.iter().zip(set.display_scales())) {
            prop_assert_eq!(&f.scale(&s), shown);
        }
    }
}
