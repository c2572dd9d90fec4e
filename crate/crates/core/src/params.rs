//! Validation of `(n, λ)` and every quantity derived from them.

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("n must be an odd positive integer, got {0}")]
    EvenN(u32),
    #[error("lambda must exceed n(n+1)m = {bound}, got {lambda}")]
    LambdaTooSmall { lambda: u64, bound: u64 },
    #[error("gcd(lambda, m) must be 1 (lambda = {lambda}, m = {m})")]
    NotCoprime { lambda: u64, m: u64 },
    #[error("divisibility by n+2 failed: {0}")]
    InternalDivisibilityViolation(String),
}

/// Validated parameters of the curve `x = t^{nm} + t^{nm+λ}, y = t^{(n+1)m},
/// z = t^{(n+2)m}`.
///
/// The two decompositions of λ both use a remainder called `r` in the
/// literature; they are stored as `sec2_r` (used by the `n = 1` Gröbner
/// basis) and `sec4_r` (used by the tail construction).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MohParams {
    pub n: u32,
    pub m: u64,
    pub lambda: u64,
    /// `n(n+1)m`
    pub sec2_a: u64,
    /// `(n+2)m`
    pub sec2_b: u64,
    pub sec2_p: u64,
    /// In `[1, sec2_b]`.
    pub sec2_r: u64,
    pub sec4_w: u64,
    /// In `[1, n+1]`.
    pub sec4_r: u64,
    pub sec4_alpha: u64,
    pub sec4_q: u64,
    pub sec4_alpha_prime: u64,
    pub sec4_q_prime: u64,
    /// `t_1 .. t_m`, residues mod `n+2`.
    pub t_seq: Vec<u64>,
    /// `t'_1 .. t'_{m+1}`, residues mod `n+2`.
    pub t_prime_seq: Vec<u64>,
}

impl MohParams {
    pub fn new(n: u32, lambda: u64) -> Result<Self, ParamError> {
        validate_and_derive(n, lambda)
    }

    pub fn n64(&self) -> u64 {
        u64::from(self.n)
    }

    /// `(n(m+1) + λ - (n+1)t_1 + 1) / (n+2)`, the base z-exponent of the
    /// first tail monomial family.
    pub fn gamma_base(&self) -> u64 {
        let n = self.n64();
        (n * (self.m + 1) + self.lambda + 1 - (n + 1) * self.t_seq[0]) / (n + 2)
    }

    /// `(nm + λ - (n+1)t'_1) / (n+2)`.
    pub fn gamma_prime_base(&self) -> u64 {
        let n = self.n64();
        (n * self.m + self.lambda - (n + 1) * self.t_prime_seq[0]) / (n + 2)
    }
}

fn residue_sequence(first: u64, len: usize, modulus: u64) -> Vec<u64> {
    std::iter::successors(Some(first), |t| Some((t + 2) % modulus))
        .take(len)
        .collect()
}

pub fn validate_and_derive(n: u32, lambda: u64) -> Result<MohParams, ParamError> {
    if n.is_multiple_of(2) {
        return Err(ParamError::EvenN(n));
    }
    let n64 = u64::from(n);
    let m = n64.div_ceil(2);
    let bound = n64 * (n64 + 1) * m;
    if lambda <= bound {
        return Err(ParamError::LambdaTooSmall { lambda, bound });
    }
    if lambda.gcd(&m) != 1 {
        return Err(ParamError::NotCoprime { lambda, m });
    }

    let sec2_a = bound;
    let sec2_b = (n64 + 2) * m;
    let sec2_r = (lambda - sec2_a - 1) % sec2_b + 1;
    let sec2_p = (lambda - sec2_a - sec2_r) / sec2_b;

    let sec4_r = (lambda - 1) % (n64 + 1) + 1;
    let sec4_w = (lambda - sec4_r) / (n64 + 1) - n64 * m;
    let (sec4_alpha, sec4_q) = sec4_w.div_rem(&(n64 + 2));
    let (sec4_alpha_prime, sec4_q_prime) = (sec4_w + n64 + 1).div_rem(&(n64 + 2));

    let modulus = n64 + 2;
    let t1 = (sec4_q + (sec4_r - 1) * (n64 + 1)) % modulus;
    let t1p = (sec4_q_prime + (sec4_r - 1) * (n64 + 1)) % modulus;
    let m_len = usize::try_from(m).expect("m fits in usize");
    let params = MohParams {
        n,
        m,
        lambda,
        sec2_a,
        sec2_b,
        sec2_p,
        sec2_r,
        sec4_w,
        sec4_r,
        sec4_alpha,
        sec4_q,
        sec4_alpha_prime,
        sec4_q_prime,
        t_seq: residue_sequence(t1, m_len, modulus),
        t_prime_seq: residue_sequence(t1p, m_len + 1, modulus),
    };
    check_invariants(&params)?;
    Ok(params)
}

fn check_invariants(p: &MohParams) -> Result<(), ParamError> {
    let n = p.n64();
    let violation = |what: String| Err(ParamError::InternalDivisibilityViolation(what));
    if p.sec2_a + p.sec2_b * p.sec2_p + p.sec2_r != p.lambda || !(1..=p.sec2_b).contains(&p.sec2_r)
    {
        return violation(format!("lambda != A + Bp + r for {p:?}"));
    }
    if (n * p.m + p.sec4_w) * (n + 1) + p.sec4_r != p.lambda || !(1..=n + 1).contains(&p.sec4_r) {
        return violation(format!("lambda != (nm+w)(n+1) + r for {p:?}"));
    }
    let first = n * (p.m + 1) + p.lambda + 1;
    let t1 = p.t_seq[0];
    if first < (n + 1) * t1 || !(first - (n + 1) * t1).is_multiple_of(n + 2) {
        return violation(format!(
            "n+2 = {} does not divide n(m+1)+lambda-(n+1)t1+1 with t1 = {t1}",
            n + 2
        ));
    }
    let second = n * p.m + p.lambda;
    let t1p = p.t_prime_seq[0];
    if second < (n + 1) * t1p || !(second - (n + 1) * t1p).is_multiple_of(n + 2) {
        return violation(format!(
            "n+2 = {} does not divide nm+lambda-(n+1)t'1 with t'1 = {t1p}",
            n + 2
        ));
    }
    Ok(())
}

/// The valid λ for `n`, ascending from the smallest admissible value.
pub fn valid_lambdas(n: u32) -> impl Iterator<Item = u64> {
    let n64 = u64::from(n);
    let m = n64.div_ceil(2);
    let start = n64 * (n64 + 1) * m + 1;
    (start..).filter(move |l| l.gcd(&m) == 1)
}
