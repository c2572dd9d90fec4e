//! Exact rational arithmetic and the small amount of linear algebra the
//! construction needs: reduced row echelon nullspaces and forward
//! substitution over an ordered list of linear equations.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision fraction, always kept in lowest terms with a positive
/// denominator. Its `Display` form is the canonical `num/den` (or `num` when
/// the denominator is one).
pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num/den` as a rational. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses the canonical `num/den` or `num` string form.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| ParseRationalError(s.to_string()))?;
    let den: BigInt = den.parse().map_err(|_| ParseRationalError(s.to_string()))?;
    if den.is_zero() {
        return Err(ParseRationalError(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid rational literal {0:?}")]
pub struct ParseRationalError(pub String);

/// Binomial coefficient via the multiplicative formula. `k > n` yields zero.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Dense matrix of rationals with fixed dimensions.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    /// Builds a matrix from row vectors; every row must have the same length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        let n = rows.len();
        Some(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: Rational) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|r| (0..self.cols).fold(Rational::zero(), |acc, c| acc + self.get(r, c) * &v[c]))
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns. Pivots are
    /// chosen as the first row (from the top of the unreduced block) with a
    /// nonzero entry in the leftmost remaining column.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip();
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r == row || m.get(r, col).is_zero() {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let v = m.get(r, c) - &factor * m.get(row, c);
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Basis of the right nullspace. One vector per free column (ascending), with
/// that free variable set to 1 and the other free variables set to 0.
pub fn nullspace(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (reduced, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); m.cols()];
            v[fc] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -reduced.get(r, fc).clone();
            }
            v
        })
        .collect()
}

/// `sum(coeff * unknown) + constant = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearEquation<K> {
    pub terms: Vec<(K, Rational)>,
    pub constant: Rational,
}

impl<K> LinearEquation<K> {
    pub fn new(terms: Vec<(K, Rational)>, constant: Rational) -> Self {
        Self { terms, constant }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSolution<K> {
    /// Every unknown, including the ones that were supplied as known.
    pub values: BTreeMap<K, Rational>,
    /// Unknowns in the order they were pinned.
    pub solved_order: Vec<K>,
    /// Indices of equations that reduced to a pure constraint and held.
    pub constraints_checked: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError<K: fmt::Debug> {
    #[error("equation {index} is inconsistent (residual {residual})")]
    Inconsistent { index: usize, residual: Rational },
    #[error("unknown {0:?} is never pinned by a single-unknown equation")]
    Underdetermined(K),
}

/// Forward substitution in the given equation order. Each pass walks the
/// pending equations front to back; an equation with exactly one unfixed
/// unknown pins it, one with none is checked as a consistency constraint.
pub fn solve_triangular_chain<K>(
    equations: &[LinearEquation<K>],
    known: &BTreeMap<K, Rational>,
) -> Result<ChainSolution<K>, SolveError<K>>
where
    K: Ord + Clone + fmt::Debug,
{
    let mut values = known.clone();
    let mut solved_order = Vec::new();
    let mut constraints_checked = Vec::new();
    let mut pending: Vec<usize> = (0..equations.len()).collect();

    loop {
        let mut progress = false;
        let mut still = Vec::new();
        for &idx in &pending {
            let eq = &equations[idx];
            let mut residual = eq.constant.clone();
            let mut open: BTreeMap<&K, Rational> = BTreeMap::new();
            for (k, c) in &eq.terms {
                match values.get(k) {
                    Some(v) => residual += c * v,
                    None => *open.entry(k).or_insert_with(Rational::zero) += c,
                }
            }
            open.retain(|_, c| !c.is_zero());
            match open.len() {
                0 => {
                    if !residual.is_zero() {
                        return Err(SolveError::Inconsistent {
                            index: idx,
                            residual,
                        });
                    }
                    constraints_checked.push(idx);
                    progress = true;
                }
                1 => {
                    let (k, c) = open.into_iter().next().expect("one entry");
                    let value = -residual / c;
                    values.insert(k.clone(), value);
                    solved_order.push(k.clone());
                    progress = true;
                }
                _ => still.push(idx),
            }
        }
        pending = still;
        if pending.is_empty() {
            break;
        }
        if !progress {
            let eq = &equations[pending[0]];
            let k = eq
                .terms
                .iter()
                .map(|(k, _)| k)
                .find(|k| !values.contains_key(*k))
                .expect("pending equation has an open unknown");
            return Err(SolveError::Underdetermined(k.clone()));
        }
    }

    Ok(ChainSolution {
        values,
        solved_order,
        constraints_checked,
    })
}

/// Positive lcm of the denominators of `values`.
pub fn denominator_lcm<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Positive gcd of the numerators; zero for an empty or all-zero input.
pub fn numerator_gcd<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    use num_integer::Integer;
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v.numer()))
        .abs()
}
