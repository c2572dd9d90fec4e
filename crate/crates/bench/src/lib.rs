//! Shared inputs for the benchmarks.

use mohgen_core::params::valid_lambdas;

/// `(n, λ)` with the smallest valid `λ` for each odd `n` up to `max_n`.
pub fn first_instances(max_n: u32) -> Vec<(u32, u64)> {
    (1..=max_n)
        .step_by(2)
        .map(|n| (n, valid_lambdas(n).next().expect("infinitely many λ")))
        .collect()
}
