//! Acceptance criteria, one line per criterion. Exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use mohgen_core::forge::{check_binomial_identities, tail_skeleton, Part};
use mohgen_core::groebner::{
    buchberger_check, ideal_equal, kernel_oracle, n1_basis, n1_short_generators,
};
use mohgen_core::params::valid_lambdas;
use mohgen_core::poly::{sigma_leading_form, sigma_order};
use mohgen_core::rho::{rho_apply, rho_monomial, tail_image_profile};
use mohgen_core::{
    build_generators, validate_and_derive, BuchbergerOptions, GeneratorSet, OrderedBasis,
    Polynomial,
};

const EXPECTED_27: [&str; 4] = [
    "x^4 - 4*x*y*z + 3*y^3 - x^2*y^2*z^5 - 2*x*y^4*z^4 - 3*y*z^7",
    "x^3*y - 3*x*z^2 + 2*y^2*z - x*y^3*z^5 - 2*z^8",
    "2*x^3*z - 3*x^2*y^2 + y*z^2 - 2*x*y^2*z^6 - y^4*z^5",
    "x^2*y*z - 2*x*y^3 + z^3 - y^3*z^6",
];

struct Verdict {
    problems: Vec<String>,
    checked: usize,
}

impl Verdict {
    fn new() -> Self {
        Self {
            problems: Vec::new(),
            checked: 0,
        }
    }

    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.problems.push(what());
        }
    }
}

fn grid() -> Vec<GeneratorSet> {
    [1u32, 3, 5, 7, 9, 11]
        .into_iter()
        .flat_map(|n| valid_lambdas(n).take(3).map(move |l| (n, l)))
        .map(|(n, l)| build_generators(n, l).unwrap_or_else(|e| panic!("({n}, {l}): {e}")))
        .collect()
}

fn label(set: &GeneratorSet) -> String {
    format!("(n={}, lambda={})", set.params.n, set.params.lambda)
}

fn example_reproduction(v: &mut Verdict) {
    let out = Command::new(env!("CARGO_BIN_EXE_mohgen"))
        .args(["generate", "--n", "3", "--lambda", "27"])
        .output()
        .expect("binary runs");
    v.expect(out.status.success(), || {
        format!("exit status {}", out.status)
    });
    let text = String::from_utf8_lossy(&out.stdout);
    let shown: Vec<&str> = text
        .lines()
        .skip_while(|l| *l != "generators:")
        .skip(1)
        .take_while(|l| l.starts_with("  f"))
        .collect();
    v.expect(shown.len() == 4, || {
        format!("{} generator lines", shown.len())
    });
    for (i, want) in EXPECTED_27.iter().enumerate() {
        let line = format!("  f{} = {want}", i + 1);
        v.expect(shown.get(i) == Some(&line.as_str()), || {
            format!("f{}: got {:?}", i + 1, shown.get(i))
        });
    }
}

fn kernel_grid(v: &mut Verdict, sets: &[GeneratorSet]) {
    for set in sets {
        for (i, f) in set.generators.iter().enumerate() {
            v.expect(rho_apply(f, &set.params).is_zero(), || {
                format!("{} f{} not in kernel", label(set), i + 1)
            });
        }
    }
}

fn syzygy_exactness(v: &mut Verdict, sets: &[GeneratorSet]) {
    for set in sets {
        for k in 1..=set.chain_count() {
            let r = set.syzygy_residual(k, Part::Full);
            v.expect(r.is_zero(), || {
                format!("{} chain {k}: residual {r}", label(set))
            });
        }
    }
}

fn sigma_law(v: &mut Verdict, sets: &[GeneratorSet]) {
    for set in sets {
        let g = set.grading();
        let n = u64::from(set.params.n);
        for (i, f) in set.generators.iter().enumerate() {
            let want = n * n + n + i as u64;
            let got = sigma_order(f, &g).ok();
            v.expect(got == Some(want), || {
                format!(
                    "{} f{}: sigma order {got:?}, want {want}",
                    label(set),
                    i + 1
                )
            });
            let lead = sigma_leading_form(f, &g).ok();
            v.expect(lead.as_ref() == Some(&set.sigma_parts[i]), || {
                format!(
                    "{} f{}: leading form differs from f^sigma",
                    label(set),
                    i + 1
                )
            });
        }
    }
}

fn n1_groebner(v: &mut Verdict) {
    let (x, y, z) = (Polynomial::x(), Polynomial::y(), Polynomial::z());
    for lambda in 3..=20u64 {
        let Ok(p) = validate_and_derive(1, lambda) else {
            continue;
        };
        let g = match n1_basis(&p) {
            Ok(g) => g,
            Err(e) => {
                v.expect(false, || format!("lambda={lambda}: {e}"));
                continue;
            }
        };
        let check = buchberger_check(&g, true);
        v.expect(check.is_groebner(), || {
            format!("lambda={lambda}: S-pair leaves a remainder")
        });
        let g = g.polys();
        let (lhs, rhs) = if p.sec2_r == 3 {
            (g[0].clone(), &(&z * &g[2]) - &(&y * &g[1]))
        } else {
            (g[1].clone(), &(&y * &g[3]) - &(&x * &g[2]))
        };
        v.expect(lhs == rhs, || {
            format!("lambda={lambda} (r={}): reduction identity fails", p.sec2_r)
        });
    }
}

fn oracle_equivalence(v: &mut Verdict) {
    let opts = BuchbergerOptions::default();
    for lambda in [3u64, 4, 5, 7] {
        let p = validate_and_derive(1, lambda).expect("valid");
        let oracle = match kernel_oracle(&p, &opts) {
            Ok(o) => o,
            Err(e) => {
                v.expect(false, || format!("lambda={lambda}: oracle {e}"));
                continue;
            }
        };
        let short = n1_short_generators(&p).expect("short generators");
        let forge = OrderedBasis::new(build_generators(1, lambda).expect("forge").generators)
            .expect("nonzero");
        for (name, other) in [("short generators", &short), ("forge output", &forge)] {
            for (first, a, b) in [(true, &oracle, other), (false, other, &oracle)] {
                let eq = ideal_equal(a, b, &opts);
                v.expect(matches!(eq, Ok(true)), || {
                    let pair = if first {
                        format!("oracle vs {name}")
                    } else {
                        format!("{name} vs oracle")
                    };
                    format!("lambda={lambda}: {pair}: {eq:?}")
                });
            }
        }
    }
}

fn binomial_identities(v: &mut Verdict) {
    for m in 1..=100u64 {
        v.expect(check_binomial_identities(m), || format!("m={m}"));
    }
}

fn tail_image(v: &mut Verdict, sets: &[GeneratorSet]) {
    for set in sets {
        let p = &set.params;
        let skel = match tail_skeleton(p, 1) {
            Ok(s) => s,
            Err(e) => {
                v.expect(false, || format!("{}: {e}", label(set)));
                continue;
            }
        };
        v.expect(skel.len() as u64 == p.m + 1, || {
            format!("{}: {} tail monomials", label(set), skel.len())
        });
        for (idx, mon) in skel.iter().enumerate() {
            let u = idx as u64 + 1;
            let image = rho_monomial(mon, p);
            let profile = tail_image_profile(u, p).expect("u in range");
            let same = image.terms().count() == profile.len()
                && profile
                    .iter()
                    .all(|(d, c)| image.coeff(*d) == c.clone().into());
            v.expect(same, || format!("{} u={u}: image {image}", label(set)));
        }
    }
}

fn generator_count(v: &mut Verdict, sets: &[GeneratorSet]) {
    for set in sets {
        let n = u64::from(set.params.n);
        let g = set.grading();
        v.expect(set.generators.len() as u64 == n + 1, || {
            format!("{}: {} generators", label(set), set.generators.len())
        });
        let orders: Vec<u64> = set
            .generators
            .iter()
            .filter_map(|f| sigma_order(f, &g).ok())
            .collect();
        let want: Vec<u64> = (n * n + n..=n * n + 2 * n).collect();
        v.expect(orders == want, || {
            format!("{}: sigma orders {orders:?}", label(set))
        });
    }
}

fn report(
    index: usize,
    name: &str,
    v: Verdict,
    elapsed: Duration,
    budget: Option<Duration>,
) -> bool {
    let mut problems = v.problems;
    if let Some(b) = budget {
        if elapsed >= b {
            problems.push(format!("took {elapsed:?}, budget {b:?}"));
        }
    }
    let ok = problems.is_empty();
    println!(
        "criterion {index} {name}: {} ({} checks, {} failed, {:.3}s)",
        if ok { "PASS" } else { "FAIL" },
        v.checked,
        problems.len(),
        elapsed.as_secs_f64()
    );
    for p in problems.iter().take(8) {
        println!("    {p}");
    }
    if problems.len() > 8 {
        println!("    ... {} more", problems.len() - 8);
    }
    ok
}

fn timed(f: impl FnOnce(&mut Verdict)) -> (Verdict, Duration) {
    let mut v = Verdict::new();
    let start = Instant::now();
    f(&mut v);
    (v, start.elapsed())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let mut ok = true;

    let (v, t) = timed(example_reproduction);
    ok &= report(1, "example reproduction", v, t, Some(secs(1)));

    let start = Instant::now();
    let sets = grid();
    let build = start.elapsed();
    let (v, t) = timed(|v| kernel_grid(v, &sets));
    ok &= report(2, "kernel membership grid", v, build + t, Some(secs(60)));
    let (v, t) = timed(|v| syzygy_exactness(v, &sets));
    ok &= report(3, "syzygy exactness", v, build + t, Some(secs(60)));
    let (v, t) = timed(|v| sigma_law(v, &sets));
    ok &= report(4, "sigma-order law", v, t, None);
    let (v, t) = timed(n1_groebner);
    ok &= report(5, "n=1 Groebner basis", v, t, Some(secs(5)));
    let (v, t) = timed(oracle_equivalence);
    ok &= report(6, "oracle equivalence", v, t, Some(secs(120)));
    let (v, t) = timed(binomial_identities);
    ok &= report(7, "binomial identities", v, t, Some(secs(10)));
    let (v, t) = timed(|v| tail_image(v, &sets));
    ok &= report(8, "tail-image identity", v, t, None);
    let (v, t) = timed(|v| generator_count(v, &sets));
    ok &= report(9, "generator count", v, t, None);

    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
