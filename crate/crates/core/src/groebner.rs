//! Lex Gröbner machinery: multivariate division, S-polynomials, the
//! Buchberger criterion and completion, the explicit `n = 1` basis, and the
//! elimination oracle for the defining ideal of the curve.

use std::collections::BTreeSet;

use num_traits::Zero;
use thiserror::Error;

use crate::exact::Rational;
use crate::params::MohParams;
use crate::poly::{Exponents, Monomial, MultiPoly, PolyError, Polynomial};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("pair budget of {budget} exhausted before the basis closed")]
    ResourceBudgetExceeded { budget: usize },
    #[error("the n = 1 basis needs n = 1, got n = {0}")]
    NotN1(u32),
    #[error("bases use different monomial orders")]
    OrderMismatch,
    #[error("exponent is not a nonnegative integer: {0}")]
    InvalidExponent(String),
}

impl From<PolyError> for GroebnerError {
    fn from(_: PolyError) -> Self {
        GroebnerError::ZeroPolynomial
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    /// lex with `x > y > z`
    LexXyz,
    /// lex with `t > x > y > z`, used by the elimination oracle
    LexTxyz,
    /// lex on some other number of variables
    Lex(usize),
}

impl MonomialOrder {
    fn for_arity(n: usize) -> Self {
        match n {
            3 => MonomialOrder::LexXyz,
            4 => MonomialOrder::LexTxyz,
            k => MonomialOrder::Lex(k),
        }
    }
}

/// A list of nonzero polynomials tagged with the order their leading terms
/// refer to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedBasis<const N: usize> {
    polys: Vec<MultiPoly<N>>,
    order: MonomialOrder,
}

impl<const N: usize> OrderedBasis<N> {
    pub fn new(polys: Vec<MultiPoly<N>>) -> Result<Self, GroebnerError> {
        if polys.iter().any(MultiPoly::is_zero) {
            return Err(GroebnerError::ZeroPolynomial);
        }
        Ok(Self {
            polys,
            order: MonomialOrder::for_arity(N),
        })
    }

    pub fn polys(&self) -> &[MultiPoly<N>] {
        &self.polys
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    fn leading_monomials(&self) -> Vec<Exponents<N>> {
        self.polys.iter().map(leading_monomial).collect()
    }
}

fn leading_monomial<const N: usize>(f: &MultiPoly<N>) -> Exponents<N> {
    *f.leading_term().expect("basis polynomials are nonzero").0
}

/// Quotients and remainder of multivariate division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division<const N: usize> {
    pub quotients: Vec<MultiPoly<N>>,
    pub remainder: MultiPoly<N>,
}

/// Divides `f` by `divisors` in order: the leading term of the running
/// dividend is cancelled by the first divisor whose leading monomial divides
/// it, otherwise it moves to the remainder. Zero divisors are ignored.
pub fn divide<const N: usize>(f: &MultiPoly<N>, divisors: &[MultiPoly<N>]) -> Division<N> {
    let leads: Vec<Option<(Exponents<N>, Rational)>> = divisors
        .iter()
        .map(|g| g.leading_term().map(|(m, c)| (*m, c.clone())))
        .collect();
    let mut quotients = vec![MultiPoly::zero(); divisors.len()];
    let mut remainder = MultiPoly::zero();
    let mut p = f.clone();
    while let Some((lm, lc)) = p.pop_leading() {
        let hit = leads.iter().enumerate().find_map(|(i, lead)| {
            let (gm, gc) = lead.as_ref()?;
            lm.div(gm).map(|q| (i, q, &lc / gc))
        });
        match hit {
            Some((i, q, c)) => {
                quotients[i].add_term(q, c.clone());
                // leading term already removed; subtract the rest of c*q*g
                let mut rest = divisors[i].clone();
                rest.pop_leading();
                p.add_scaled_shifted(&rest, &q, &-c);
            }
            None => remainder.add_term(lm, lc),
        }
    }
    Division {
        quotients,
        remainder,
    }
}

pub fn normal_form<const N: usize>(f: &MultiPoly<N>, g: &OrderedBasis<N>) -> MultiPoly<N> {
    divide(f, &g.polys).remainder
}

/// `(L / LT(f)) f - (L / LT(g)) g` with `L = lcm(LM(f), LM(g))`.
pub fn s_polynomial<const N: usize>(
    f: &MultiPoly<N>,
    g: &MultiPoly<N>,
) -> Result<MultiPoly<N>, GroebnerError> {
    let (fm, fc) = f.leading_term().ok_or(GroebnerError::ZeroPolynomial)?;
    let (gm, gc) = g.leading_term().ok_or(GroebnerError::ZeroPolynomial)?;
    let l = fm.lcm(gm);
    let left = f.mul_term(&l.div(fm).expect("lcm"), &fc.recip());
    let right = g.mul_term(&l.div(gm).expect("lcm"), &gc.recip());
    Ok(&left - &right)
}

/// Outcome of the Buchberger criterion: every pair whose S-polynomial does
/// not reduce to zero, with its remainder.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbCheck<const N: usize> {
    pub pairs_examined: usize,
    pub pairs_skipped_coprime: usize,
    pub witnesses: Vec<(usize, usize, MultiPoly<N>)>,
}

impl<const N: usize> GbCheck<N> {
    pub fn is_groebner(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Buchberger's criterion. With `skip_coprime` set, pairs with coprime
/// leading monomials are taken to reduce to zero without computing them.
pub fn buchberger_check<const N: usize>(g: &OrderedBasis<N>, skip_coprime: bool) -> GbCheck<N> {
    let leads = g.leading_monomials();
    let mut check = GbCheck {
        pairs_examined: 0,
        pairs_skipped_coprime: 0,
        witnesses: Vec::new(),
    };
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if skip_coprime && leads[i].is_coprime(&leads[j]) {
                check.pairs_skipped_coprime += 1;
                continue;
            }
            check.pairs_examined += 1;
            let s = s_polynomial(&g.polys[i], &g.polys[j]).expect("nonzero basis");
            let r = normal_form(&s, g);
            if !r.is_zero() {
                check.witnesses.push((i, j, r));
            }
        }
    }
    check
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BuchbergerOptions {
    /// Upper bound on S-pairs taken from the queue.
    pub max_pairs: usize,
    pub skip_coprime: bool,
}

impl Default for BuchbergerOptions {
    fn default() -> Self {
        Self {
            max_pairs: 20_000,
            skip_coprime: true,
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `f`: monic, inter-reduced,
/// sorted by descending leading monomial.
///
/// Pairs are selected by smallest total degree of the lcm of the leading
/// monomials, ties broken by the lex-smaller lcm, then by index.
pub fn buchberger_complete<const N: usize>(
    f: &OrderedBasis<N>,
    opts: &BuchbergerOptions,
) -> Result<OrderedBasis<N>, GroebnerError> {
    let mut basis: Vec<MultiPoly<N>> = Vec::new();
    for p in &f.polys {
        let r = divide(p, &basis).remainder;
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut queue: BTreeSet<(u64, Exponents<N>, usize, usize)> = BTreeSet::new();
    let push_pairs = |queue: &mut BTreeSet<_>, basis: &[MultiPoly<N>], k: usize| {
        let lk = leading_monomial(&basis[k]);
        for (i, g) in basis.iter().enumerate().take(k) {
            let l = leading_monomial(g).lcm(&lk);
            queue.insert((l.total_degree(), l, i, k));
        }
    };
    for k in 0..basis.len() {
        push_pairs(&mut queue, &basis, k);
    }

    let mut taken = 0usize;
    while let Some((_, _, i, j)) = queue.pop_first() {
        taken += 1;
        if taken > opts.max_pairs {
            return Err(GroebnerError::ResourceBudgetExceeded {
                budget: opts.max_pairs,
            });
        }
        let (li, lj) = (leading_monomial(&basis[i]), leading_monomial(&basis[j]));
        if opts.skip_coprime && li.is_coprime(&lj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j])?;
        let r = divide(&s, &basis).remainder;
        if !r.is_zero() {
            basis.push(r.monic());
            push_pairs(&mut queue, &basis, basis.len() - 1);
        }
    }
    Ok(OrderedBasis {
        polys: reduce_basis(basis),
        order: f.order,
    })
}

/// Minimalizes and inter-reduces a Gröbner basis.
fn reduce_basis<const N: usize>(mut basis: Vec<MultiPoly<N>>) -> Vec<MultiPoly<N>> {
    basis.sort_by_key(leading_monomial);
    let mut minimal: Vec<MultiPoly<N>> = Vec::new();
    for g in basis {
        let lm = leading_monomial(&g);
        if minimal.iter().any(|h| leading_monomial(h).divides(&lm)) {
            continue;
        }
        minimal.push(g);
    }
    let reduced: Vec<MultiPoly<N>> = (0..minimal.len())
        .map(|i| {
            let others: Vec<MultiPoly<N>> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            let (lm, lc) = minimal[i].leading_term().expect("nonzero");
            let mut tail = minimal[i].clone();
            tail.pop_leading();
            let mut r = divide(&tail, &others).remainder;
            r.add_term(*lm, lc.clone());
            r.monic()
        })
        .collect();
    let mut out = reduced;
    out.sort_by_key(|g| std::cmp::Reverse(leading_monomial(g)));
    out
}

pub fn reduced_groebner_basis<const N: usize>(
    f: &OrderedBasis<N>,
    opts: &BuchbergerOptions,
) -> Result<Vec<MultiPoly<N>>, GroebnerError> {
    Ok(buchberger_complete(f, opts)?.polys)
}

/// Ideal equality by comparing reduced Gröbner bases.
pub fn ideal_equal<const N: usize>(
    f: &OrderedBasis<N>,
    g: &OrderedBasis<N>,
    opts: &BuchbergerOptions,
) -> Result<bool, GroebnerError> {
    if f.order != g.order {
        return Err(GroebnerError::OrderMismatch);
    }
    Ok(reduced_groebner_basis(f, opts)? == reduced_groebner_basis(g, opts)?)
}

/// Whether every element of `f` reduces to zero modulo the reduced basis of
/// `g`, i.e. `<f> ⊆ <g>`.
pub fn ideal_contains<const N: usize>(
    g: &OrderedBasis<N>,
    f: &OrderedBasis<N>,
    opts: &BuchbergerOptions,
) -> Result<bool, GroebnerError> {
    let gb = buchberger_complete(g, opts)?;
    Ok(f.polys.iter().all(|p| normal_form(p, &gb).is_zero()))
}

fn nonneg_exponent(value: i64, what: &str) -> Result<u32, GroebnerError> {
    u32::try_from(value).map_err(|_| GroebnerError::InvalidExponent(format!("{what} = {value}")))
}

/// The four polynomials `g1..g4` of the `n = 1` basis, with `r` and `p` from
/// `λ = 2 + 3p + r`.
pub fn n1_basis(params: &MohParams) -> Result<OrderedBasis<3>, GroebnerError> {
    if params.n != 1 {
        return Err(GroebnerError::NotN1(params.n));
    }
    let r = i64::try_from(params.sec2_r).expect("r <= 3");
    let p = i64::try_from(params.sec2_p)
        .map_err(|_| GroebnerError::InvalidExponent("p too large".into()))?;
    let twice = (r - 2) * (3 * r - 5);
    if twice % 2 != 0 {
        return Err(GroebnerError::InvalidExponent(format!(
            "(r-2)(3r-5)/2 with r = {r}"
        )));
    }
    let e = |v: i64, what: &str| nonneg_exponent(v, what);
    let mono = |a: u32, b: u32, c: u32| Polynomial::monomial(Monomial::new(a, b, c));

    let g1 = &mono(0, 3, 0) - &mono(0, 0, 2);
    let g2 = &(&mono(1, 0, 1) - &mono(0, 2, 0)) - &mono(0, e(3 - r, "3-r")?, e(r + p, "r+p")?);
    let g3 =
        &(&mono(1, 1, 0) - &mono(0, 0, 1)) - &mono(0, e(4 - r, "4-r")?, e(r + p - 1, "r+p-1")?);
    let g4 = &(&(&mono(2, 0, 0) - &mono(0, 1, 0))
        - &mono(1, e(3 - r, "3-r")?, e(r + p - 1, "r+p-1")?))
        - &mono(
            0,
            e(twice / 2, "(r-2)(3r-5)/2")?,
            e(-r * r + 4 * r + p - 2, "-r^2+4r+p-2")?,
        );
    OrderedBasis::new(vec![g1, g2, g3, g4])
}

/// `<g3, g4>` when `r ∈ {1, 2}`, `<g2, g3, g4>` when `r = 3`.
pub fn n1_short_generators(params: &MohParams) -> Result<OrderedBasis<3>, GroebnerError> {
    let g = n1_basis(params)?;
    let keep = if params.sec2_r == 3 { 1 } else { 2 };
    OrderedBasis::new(g.polys[keep..].to_vec())
}

/// Generators of `<x - ρ(x), y - ρ(y), z - ρ(z)> ∩ k[x, y, z]`: the t-free
/// part of the reduced lex basis with `t > x > y > z`.
pub fn kernel_oracle(
    params: &MohParams,
    opts: &BuchbergerOptions,
) -> Result<OrderedBasis<3>, GroebnerError> {
    let n = params.n64();
    let to_u32 =
        |v: u64| u32::try_from(v).map_err(|_| GroebnerError::InvalidExponent(format!("t^{v}")));
    let dx = to_u32(n * params.m)?;
    let dx2 = to_u32(n * params.m + params.lambda)?;
    let dy = to_u32((n + 1) * params.m)?;
    let dz = to_u32((n + 2) * params.m)?;
    let one = Rational::from_integer(1.into());
    let t = |d: u32| Exponents([d, 0, 0, 0]);
    let gens = vec![
        MultiPoly::from_terms([
            (Exponents([0, 1, 0, 0]), one.clone()),
            (t(dx), -one.clone()),
            (t(dx2), -one.clone()),
        ]),
        MultiPoly::from_terms([
            (Exponents([0, 0, 1, 0]), one.clone()),
            (t(dy), -one.clone()),
        ]),
        MultiPoly::from_terms([(Exponents([0, 0, 0, 1]), one.clone()), (t(dz), -one)]),
    ];
    let gb = buchberger_complete(&OrderedBasis::new(gens)?, opts)?;
    let eliminated: Vec<Polynomial> = gb
        .polys
        .iter()
        .filter(|g| g.monomials().all(|m| m.0[0] == 0))
        .map(drop_t)
        .collect();
    OrderedBasis::new(eliminated)
}

fn lift(f: &Polynomial, t: u32) -> MultiPoly<4> {
    MultiPoly::from_terms(
        f.terms()
            .map(|(m, c)| (Exponents([t, m.0[0], m.0[1], m.0[2]]), c.clone())),
    )
}

fn drop_t(f: &MultiPoly<4>) -> Polynomial {
    Polynomial::from_terms(
        f.terms()
            .map(|(m, c)| (Monomial::new(m.0[1], m.0[2], m.0[3]), c.clone())),
    )
}

/// Generators of `<F> : g`, via `<F> ∩ <g>` by elimination of an auxiliary
/// variable.
pub fn ideal_quotient(
    f: &OrderedBasis<3>,
    g: &Polynomial,
    opts: &BuchbergerOptions,
) -> Result<OrderedBasis<3>, GroebnerError> {
    if g.is_zero() {
        return Err(GroebnerError::ZeroPolynomial);
    }
    let t = MultiPoly::monomial(Exponents([1, 0, 0, 0]));
    let mut gens: Vec<MultiPoly<4>> = f.polys.iter().map(|p| &t * &lift(p, 0)).collect();
    let lifted = lift(g, 0);
    gens.push(&lifted - &(&t * &lifted));
    let gb = buchberger_complete(&OrderedBasis::new(gens)?, opts)?;
    let g_only = [g.clone()];
    let quotient = gb
        .polys
        .iter()
        .filter(|h| h.monomials().all(|m| m.0[0] == 0))
        .map(|h| {
            let d = divide(&drop_t(h), &g_only);
            debug_assert!(d.remainder.is_zero(), "intersection member divisible by g");
            d.quotients.into_iter().next().expect("one divisor")
        })
        .collect();
    OrderedBasis::new(quotient)
}

/// Whether `g` lies in the ideal generated by `f` in the local ring at the
/// origin, i.e. `u g ∈ <f>` for some `u` with `u(0) ≠ 0`.
pub fn local_member(
    f: &OrderedBasis<3>,
    g: &Polynomial,
    opts: &BuchbergerOptions,
) -> Result<bool, GroebnerError> {
    if g.is_zero() {
        return Ok(true);
    }
    let q = ideal_quotient(f, g, opts)?;
    Ok(q.polys.iter().any(|u| !u.coeff(&Monomial::one()).is_zero()))
}

/// Ideal equality after localizing at the origin, checked in both
/// directions.
pub fn ideal_equal_local(
    f: &OrderedBasis<3>,
    g: &OrderedBasis<3>,
    opts: &BuchbergerOptions,
) -> Result<bool, GroebnerError> {
    for (a, b) in [(f, g), (g, f)] {
        for p in &b.polys {
            if !local_member(a, p, opts)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::validate_and_derive;
    use crate::rho::is_in_kernel;
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn basis(polys: &[&str]) -> OrderedBasis<3> {
        OrderedBasis::new(polys.iter().map(|s| p(s)).collect()).unwrap()
    }

    fn n1(lambda: u64) -> OrderedBasis<3> {
        n1_basis(&validate_and_derive(1, lambda).unwrap()).unwrap()
    }

    #[test]
    fn explicit_n1_polynomials() {
        let g = n1(3);
        assert_eq!(g.polys()[3], p("x^2 - y - x*y^2 - y*z"));
        assert_eq!(n1(4).polys()[2], p("x*y - z - y^2*z"));
        assert_eq!(n1(5).polys()[1], p("x*z - y^2 - z^3"));
        assert_eq!(
            n1_basis(&validate_and_derive(3, 25).unwrap()),
            Err(GroebnerError::NotN1(3))
        );
    }

    #[test]
    fn normal_form_examples() {
        let g = n1(3);
        for gi in g.polys() {
            assert!(normal_form(gi, &g).is_zero());
        }
        let [g1, g2, g3, _] = [0, 1, 2, 3].map(|i| g.polys()[i].clone());
        let combo = &(&Polynomial::z() * &g3) - &(&Polynomial::y() * &g2);
        assert_eq!(combo, g1);
        assert!(normal_form(&combo, &g).is_zero());
        assert_eq!(normal_form(&Polynomial::x(), &g), Polynomial::x());
    }

    #[test]
    fn s_polynomial_examples() {
        for lambda in [3, 4, 5, 9, 13] {
            let params = validate_and_derive(1, lambda).unwrap();
            let g = n1_basis(&params).unwrap();
            let g = g.polys();
            assert_eq!(s_polynomial(&g[1], &g[2]).unwrap(), -&g[0]);
            let (r, q) = (params.sec2_r as u32, params.sec2_p as u32);
            let expected = Polynomial::from_terms([
                (Monomial::new(1, 0, 2), crate::exact::int(-1)),
                (Monomial::new(0, 2, 1), crate::exact::int(1)),
                (Monomial::new(0, 6 - r, r + q - 1), crate::exact::int(1)),
            ]);
            assert_eq!(s_polynomial(&g[0], &g[2]).unwrap(), expected);
            assert!(s_polynomial(&g[0], &g[0]).unwrap().is_zero());
        }
        assert!(s_polynomial(&Polynomial::zero(), &Polynomial::x()).is_err());
    }

    #[test]
    fn criterion_on_known_bases() {
        let check = buchberger_check(&n1(3), true);
        assert!(check.is_groebner());
        assert_eq!(check.pairs_skipped_coprime, 2);
        // the skipped pairs really do reduce to zero
        assert!(buchberger_check(&n1(3), false).is_groebner());

        let short = n1_short_generators(&validate_and_derive(1, 3).unwrap()).unwrap();
        assert_eq!(short.len(), 2);
        assert!(!buchberger_check(&short, true).is_groebner());

        assert!(buchberger_check(&basis(&["x*y - z^3 + 1"]), true).is_groebner());
    }

    #[test]
    fn completion_examples() {
        let opts = BuchbergerOptions::default();
        let full = buchberger_complete(&basis(&["x"]), &opts).unwrap();
        assert_eq!(full.polys(), &[Polynomial::x()]);
        for lambda in [3, 4, 6, 7] {
            let params = validate_and_derive(1, lambda).unwrap();
            assert!(params.sec2_r <= 2);
            assert!(ideal_equal(
                &n1_short_generators(&params).unwrap(),
                &n1_basis(&params).unwrap(),
                &opts
            )
            .unwrap());
        }
        let g = n1(3);
        assert!(ideal_equal(&g, &g, &opts).unwrap());
    }

    #[test]
    fn reduced_basis_is_monic_and_interreduced() {
        let opts = BuchbergerOptions::default();
        let gb = buchberger_complete(&basis(&["2*x^2 - 2*y", "x*y - z"]), &opts).unwrap();
        assert!(buchberger_check(&gb, false).is_groebner());
        let leads: Vec<Monomial> = gb.polys().iter().map(leading_monomial).collect();
        for (i, g) in gb.polys().iter().enumerate() {
            assert_eq!(g.leading_term().unwrap().1, &crate::exact::int(1));
            for (j, lm) in leads.iter().enumerate() {
                if i != j {
                    assert!(g.monomials().all(|m| !lm.divides(m)));
                }
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let opts = BuchbergerOptions {
            max_pairs: 1,
            skip_coprime: false,
        };
        let r = buchberger_complete(&basis(&["x^2 - y", "x*y - z", "y^2 - x*z"]), &opts);
        assert_eq!(r, Err(GroebnerError::ResourceBudgetExceeded { budget: 1 }));
    }

    #[test]
    fn oracle_small_cases() {
        let opts = BuchbergerOptions::default();
        for lambda in [3, 4] {
            let params = validate_and_derive(1, lambda).unwrap();
            let oracle = kernel_oracle(&params, &opts).unwrap();
            assert!(oracle.polys().iter().all(|f| is_in_kernel(f, &params)));
            assert!(ideal_equal(&oracle, &n1_basis(&params).unwrap(), &opts).unwrap());
        }
    }

    #[test]
    fn local_equality_at_the_origin() {
        let opts = BuchbergerOptions::default();
        // (1 + z) is a unit at the origin
        let f = basis(&["x + x*z"]);
        let g = basis(&["x"]);
        assert!(!ideal_equal(&f, &g, &opts).unwrap());
        assert!(ideal_equal_local(&f, &g, &opts).unwrap());
        // z is not
        assert!(!ideal_equal_local(&basis(&["x*z"]), &g, &opts).unwrap());
        let q = ideal_quotient(&basis(&["x*y", "x*z"]), &p("x"), &opts).unwrap();
        assert_eq!(q.polys(), &[p("y"), p("z")]);
    }

    #[test]
    fn forge_output_for_n1_is_locally_the_curve_ideal() {
        let opts = BuchbergerOptions::default();
        let params = validate_and_derive(1, 3).unwrap();
        let short = n1_short_generators(&params).unwrap();
        let forged = basis(&["x^2 - y - x*y^2 - y*z", "x*y - z - z^2"]);
        assert!(!ideal_equal(&forged, &short, &opts).unwrap());
        assert!(ideal_equal_local(&forged, &short, &opts).unwrap());
    }

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..4), 1..4).prop_map(|ts| {
            Polynomial::from_terms(
                ts.into_iter()
                    .map(|((a, b, c), k)| (Monomial::new(a, b, c), crate::exact::int(k))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn division_reconstructs_dividend(f in small_poly(), g1 in small_poly(), g2 in small_poly()) {
            let divisors = vec![g1, g2];
            let d = divide(&f, &divisors);
            let mut back = d.remainder.clone();
            for (q, g) in d.quotients.iter().zip(&divisors) {
                back = &back + &(q * g);
            }
            prop_assert_eq!(back, f);
            let leads: Vec<Monomial> = divisors.iter().filter(|g| !g.is_zero()).map(leading_monomial).collect();
            prop_assert!(d.remainder.monomials().all(|m| leads.iter().all(|l| !l.divides(m))));
        }

        #[test]
        fn completion_passes_criterion(f in small_poly(), g in small_poly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let opts = BuchbergerOptions { max_pairs: 400, skip_coprime: true };
            if let Ok(gb) = buchberger_complete(&OrderedBasis::new(vec![f.clone(), g.clone()]).unwrap(), &opts) {
                prop_assert!(buchberger_check(&gb, false).is_groebner());
                prop_assert!(normal_form(&f, &gb).is_zero());
                prop_assert!(normal_form(&g, &gb).is_zero());
            }
        }
    }
}
