//! Sparse polynomials with exact rational coefficients.
//!
//! [`MultiPoly`] is generic over the number of variables so the elimination
//! oracle can work in four variables; everything else uses the trivariate
//! [`Polynomial`] in `x, y, z`. Monomials compare lexicographically with the
//! first variable largest, which is exactly the derived `Ord` on the exponent
//! array.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{denominator_lcm, numerator_gcd, parse_rational, Rational};

const VAR_NAMES: [&str; 4] = ["t", "x", "y", "z"];

fn var_names<const N: usize>() -> &'static [&'static str] {
    assert!(N <= VAR_NAMES.len(), "at most four variables are named");
    &VAR_NAMES[VAR_NAMES.len() - N..]
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("operation is undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
    #[error("sigma grading needs an odd positive n, got {0}")]
    InvalidGrading(u32),
}

/// Exponent vector; lex order with variable 0 largest.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponents<const N: usize>(pub [u32; N]);

impl<const N: usize> Exponents<N> {
    pub fn one() -> Self {
        Self([0; N])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o += e;
        }
        Self(out)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        if !other.divides(self) {
            return None;
        }
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o -= e;
        }
        Some(Self(out))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.0;
        for (o, e) in out.iter_mut().zip(other.0) {
            *o = (*o).max(e);
        }
        Self(out)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(&a, b)| a == 0 || b == 0)
    }

    fn fmt_factors(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = var_names::<N>();
        let mut first = true;
        for (name, &e) in names.iter().zip(&self.0) {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl<const N: usize> fmt::Debug for Exponents<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_factors(f)
    }
}

impl<const N: usize> fmt::Display for Exponents<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_factors(f)
    }
}

/// `x^a y^b z^c`.
pub type Monomial = Exponents<3>;

impl Monomial {
    pub const fn new(a: u32, b: u32, c: u32) -> Self {
        Self([a, b, c])
    }

    pub fn x(&self) -> u32 {
        self.0[0]
    }

    pub fn y(&self) -> u32 {
        self.0[1]
    }

    pub fn z(&self) -> u32 {
        self.0[2]
    }
}

/// Sparse polynomial; never stores a zero coefficient.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MultiPoly<const N: usize> {
    terms: BTreeMap<Exponents<N>, Rational>,
}

/// Trivariate polynomial in `x > y > z`.
pub type Polynomial = MultiPoly<3>;

impl<const N: usize> MultiPoly<N> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Exponents::one(), c)
    }

    pub fn term(m: Exponents<N>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn monomial(m: Exponents<N>) -> Self {
        Self::term(m, Rational::one())
    }

    /// Sums the given terms; repeated monomials are combined.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents<N>, Rational)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lex-descending order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents<N>, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Exponents<N>> + '_ {
        self.terms.keys().rev()
    }

    pub fn coeff(&self, m: &Exponents<N>) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Exponents<N>, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, m: Exponents<N>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Exponents<N>, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Exponents<N>) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    /// Keeps the terms whose monomial satisfies `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&Exponents<N>) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Some((_, c)) => self.scale(&c.recip()),
            None => Self::zero(),
        }
    }

    /// `self += c * m * g`, in place.
    pub fn add_scaled_shifted(&mut self, g: &Self, m: &Exponents<N>, c: &Rational) {
        for (k, v) in &g.terms {
            self.add_term(k.mul(m), v * c);
        }
    }

    pub fn pop_leading(&mut self) -> Option<(Exponents<N>, Rational)> {
        self.terms.pop_last()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exponents<N>, Rational)> {
        self.terms.into_iter().rev()
    }
}

impl<const N: usize> Add for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn add(self, rhs: &MultiPoly<N>) -> MultiPoly<N> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<const N: usize> Sub for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn sub(self, rhs: &MultiPoly<N>) -> MultiPoly<N> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<const N: usize> Mul for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn mul(self, rhs: &MultiPoly<N>) -> MultiPoly<N> {
        let mut out = MultiPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl<const N: usize> Neg for &MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn neg(self) -> MultiPoly<N> {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<const N: usize> $tr for MultiPoly<N> {
            type Output = MultiPoly<N>;
            fn $method(self, rhs: MultiPoly<N>) -> MultiPoly<N> {
                (&self).$method(&rhs)
            }
        }
        impl<const N: usize> $tr<&MultiPoly<N>> for MultiPoly<N> {
            type Output = MultiPoly<N>;
            fn $method(self, rhs: &MultiPoly<N>) -> MultiPoly<N> {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<const N: usize> Neg for MultiPoly<N> {
    type Output = MultiPoly<N>;
    fn neg(self) -> MultiPoly<N> {
        -&self
    }
}

fn write_terms<'a, const N: usize>(
    f: &mut impl fmt::Write,
    terms: impl Iterator<Item = (&'a Exponents<N>, &'a Rational)>,
) -> fmt::Result {
    let mut empty = true;
    for (i, (m, c)) in terms.enumerate() {
        empty = false;
        match (i, c.is_negative()) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let abs = c.abs();
        if m.is_one() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            write!(f, "{m}")?;
        }
    }
    if empty {
        f.write_str("0")?;
    }
    Ok(())
}

impl<const N: usize> fmt::Display for MultiPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms())
    }
}

impl<const N: usize> fmt::Debug for MultiPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl<const N: usize> FromStr for MultiPoly<N> {
    type Err = PolyError;

    /// Accepts the canonical text form and reasonable variations of it:
    /// any term order, spaces anywhere, `*`-separated factors.
    fn from_str(s: &str) -> Result<Self, PolyError> {
        let names = var_names::<N>();
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(PolyError::Parse("empty input".into()));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 && !compact[..i].ends_with('^') {
                pieces.push(&compact[start..i]);
                start = i;
            }
        }
        pieces.push(&compact[start..]);

        let mut out = Self::zero();
        for piece in pieces {
            let (negative, body) = match piece.as_bytes().first() {
                Some(b'-') => (true, &piece[1..]),
                Some(b'+') => (false, &piece[1..]),
                _ => (false, piece),
            };
            if body.is_empty() {
                return Err(PolyError::Parse(format!("dangling sign in {s:?}")));
            }
            let mut coeff = Rational::one();
            let mut exps = [0u32; N];
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => {
                        let e: u32 = e
                            .parse()
                            .map_err(|_| PolyError::Parse(format!("bad exponent in {factor:?}")))?;
                        (b, e)
                    }
                    None => (factor, 1),
                };
                if let Some(v) = names.iter().position(|n| *n == base) {
                    exps[v] += exp;
                } else {
                    let c = parse_rational(base)
                        .map_err(|_| PolyError::Parse(format!("bad factor {factor:?}")))?;
                    let mut p = Rational::one();
                    for _ in 0..exp {
                        p *= &c;
                    }
                    coeff *= p;
                }
            }
            if negative {
                coeff = -coeff;
            }
            out.add_term(Exponents(exps), coeff);
        }
        Ok(out)
    }
}

/// JSON-friendly term: exponents plus a `num/den` coefficient string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub x: u32,
    pub y: u32,
    pub z: u32,
    pub coeff: String,
}

impl Polynomial {
    pub fn x() -> Self {
        Self::monomial(Monomial::new(1, 0, 0))
    }

    pub fn y() -> Self {
        Self::monomial(Monomial::new(0, 1, 0))
    }

    pub fn z() -> Self {
        Self::monomial(Monomial::new(0, 0, 1))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.terms()
            .map(|(m, c)| TermRecord {
                x: m.x(),
                y: m.y(),
                z: m.z(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<Self, PolyError> {
        let mut p = Self::zero();
        for r in records {
            let c = parse_rational(&r.coeff).map_err(|e| PolyError::Parse(e.to_string()))?;
            p.add_term(Monomial::new(r.x, r.y, r.z), c);
        }
        Ok(p)
    }
}

/// Lex-greatest monomial (x > y > z) with its coefficient.
pub fn lex_leading_term(f: &Polynomial) -> Result<(Monomial, Rational), PolyError> {
    f.leading_term()
        .map(|(m, c)| (*m, c.clone()))
        .ok_or(PolyError::ZeroPolynomial)
}

/// Weights `(n, n+1, n+2)` on `(x, y, z)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SigmaGrading {
    n: u32,
}

impl SigmaGrading {
    pub fn new(n: u32) -> Result<Self, PolyError> {
        if n == 0 || n.is_multiple_of(2) {
            return Err(PolyError::InvalidGrading(n));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn weights(&self) -> [u64; 3] {
        let n = u64::from(self.n);
        [n, n + 1, n + 2]
    }

    pub fn weight(&self, m: &Monomial) -> u64 {
        self.weights()
            .iter()
            .zip(m.0)
            .map(|(w, e)| w * u64::from(e))
            .sum()
    }
}

pub fn sigma_weight(m: &Monomial, g: &SigmaGrading) -> u64 {
    g.weight(m)
}

/// Minimum σ-weight over the terms of `f`.
pub fn sigma_order(f: &Polynomial, g: &SigmaGrading) -> Result<u64, PolyError> {
    f.monomials()
        .map(|m| g.weight(m))
        .min()
        .ok_or(PolyError::ZeroPolynomial)
}

/// Sum of the terms of minimal σ-weight.
pub fn sigma_leading_form(f: &Polynomial, g: &SigmaGrading) -> Result<Polynomial, PolyError> {
    let order = sigma_order(f, g)?;
    Ok(f.filter(|m| g.weight(m) == order))
}

/// `f - sigma_leading_form(f)`.
pub fn sigma_tail(f: &Polynomial, g: &SigmaGrading) -> Result<Polynomial, PolyError> {
    let order = sigma_order(f, g)?;
    Ok(f.filter(|m| g.weight(m) != order))
}

pub fn is_sigma_homogeneous(f: &Polynomial, g: &SigmaGrading) -> bool {
    let mut weights = f.monomials().map(|m| g.weight(m));
    match weights.next() {
        Some(w) => weights.all(|v| v == w),
        None => true,
    }
}

/// Text form with terms grouped by ascending σ-weight, lex-descending inside
/// each weight. For a generator this prints the σ-leading form first and the
/// tail after it.
pub fn to_sigma_graded_string(f: &Polynomial, g: &SigmaGrading) -> String {
    let mut terms: Vec<(&Monomial, &Rational)> = f.terms().collect();
    terms.sort_by_key(|(m, _)| (g.weight(m), std::cmp::Reverse(**m)));
    let mut out = String::new();
    write_terms(&mut out, terms.into_iter()).expect("writing to a String");
    out
}

/// The positive rational `s` such that `s * f` has coprime integer
/// coefficients and a positive lex-leading coefficient.
pub fn primitive_scale(f: &Polynomial) -> Result<Rational, PolyError> {
    let (_, lead) = lex_leading_term(f)?;
    let coeffs: Vec<&Rational> = f.terms().map(|(_, c)| c).collect();
    let den = denominator_lcm(coeffs.iter().copied());
    let cleared: Vec<Rational> = coeffs
        .iter()
        .map(|c| *c * Rational::from_integer(den.clone()))
        .collect();
    let content = numerator_gcd(cleared.iter());
    let mut scale = Rational::new(den, content);
    if lead.is_negative() {
        scale = -scale;
    }
    Ok(scale)
}

/// Integer-coefficient primitive representative with positive lex-leading
/// coefficient. For the generators built here the lex-leading term lies in
/// the σ-leading form, so this also makes that form's leading coefficient
/// positive.
pub fn canonicalize_primitive(f: &Polynomial) -> Result<Polynomial, PolyError> {
    let s = primitive_scale(f)?;
    Ok(f.scale(&s))
}

/// Integer content check used by tests and the serializer.
pub fn has_integer_coefficients(f: &Polynomial) -> bool {
    f.terms().all(|(_, c)| c.is_integer())
}

pub fn integer_content(f: &Polynomial) -> BigInt {
    numerator_gcd(f.terms().map(|(_, c)| c))
}
