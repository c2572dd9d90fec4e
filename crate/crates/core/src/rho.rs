//! The substitution `x -> t^{nm} + t^{nm+λ}, y -> t^{(n+1)m}, z -> t^{(n+2)m}`
//! and exact kernel membership.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact::{binomial, Rational};
use crate::params::MohParams;
use crate::poly::{Monomial, Polynomial};

/// Polynomial in `t`; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UniPolynomial {
    coeffs: BTreeMap<u64, Rational>,
}

impl UniPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (u64, Rational)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: u64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(degree).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&degree);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in ascending degree.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> + '_ {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn coeff(&self, degree: u64) -> Rational {
        self.coeffs
            .get(&degree)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Lowest degree with a nonzero coefficient.
    pub fn order(&self) -> Option<u64> {
        self.coeffs.keys().next().copied()
    }
}

impl Add for &UniPolynomial {
    type Output = UniPolynomial;
    fn add(self, rhs: &UniPolynomial) -> UniPolynomial {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Mul for &UniPolynomial {
    type Output = UniPolynomial;
    fn mul(self, rhs: &UniPolynomial) -> UniPolynomial {
        let mut out = UniPolynomial::zero();
        for (da, ca) in self.terms() {
            for (db, cb) in rhs.terms() {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (d, c)) in self.terms().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            match d {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !abs.is_one() {
                        write!(f, "{abs}*")?;
                    }
                    if d == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPolynomial({self})")
    }
}

/// t-degrees of the pure parts of the images: `(nm, (n+1)m, (n+2)m)`.
fn degrees(p: &MohParams) -> (u64, u64, u64) {
    let n = p.n64();
    (n * p.m, (n + 1) * p.m, (n + 2) * p.m)
}

/// Image of a single monomial.
pub fn rho_monomial(mon: &Monomial, p: &MohParams) -> UniPolynomial {
    let (dx, dy, dz) = degrees(p);
    let a = u64::from(mon.x());
    let base = dx * a + dy * u64::from(mon.y()) + dz * u64::from(mon.z());
    UniPolynomial::from_terms(
        (0..=a).map(|j| (base + p.lambda * j, Rational::from_integer(binomial(a, j)))),
    )
}

/// Exact image of `f`; no truncation is needed since `f` is a polynomial.
pub fn rho_apply(f: &Polynomial, p: &MohParams) -> UniPolynomial {
    let (dx, dy, dz) = degrees(p);
    let mut out = UniPolynomial::zero();
    for (mon, c) in f.terms() {
        let a = u64::from(mon.x());
        let base = dx * a + dy * u64::from(mon.y()) + dz * u64::from(mon.z());
        let mut b = BigInt::one();
        for j in 0..=a {
            out.add_term(base + p.lambda * j, c * Rational::from_integer(b.clone()));
            b = b * (a - j) / (j + 1);
        }
    }
    out
}

pub fn is_in_kernel(f: &Polynomial, p: &MohParams) -> bool {
    rho_apply(f, p).is_zero()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RhoError {
    #[error("index u = {u} outside 1..={max}")]
    IndexOutOfRange { u: u64, max: u64 },
}

/// Closed-form image of the `u`-th tail monomial of `f_1`:
/// `sum_{j=0}^{m+1-u} C(m+1-u, j) t^{nm(n+1) + λ(m+j)}`, ascending degree.
pub fn tail_image_profile(u: u64, p: &MohParams) -> Result<Vec<(u64, BigInt)>, RhoError> {
    if u == 0 || u > p.m + 1 {
        return Err(RhoError::IndexOutOfRange { u, max: p.m + 1 });
    }
    let n = p.n64();
    let k = p.m + 1 - u;
    Ok((0..=k)
        .map(|j| (n * p.m * (n + 1) + p.lambda * (p.m + j), binomial(k, j)))
        .collect())
}
