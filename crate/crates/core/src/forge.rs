//! Construction of the generators `f_1, ..., f_{n+1}`.
//!
//! The σ-leading forms are produced chain by chain from the two binomial
//! seeds: chain `k` fixes the scalars `a` and the coefficients of
//! `f_{k+2}^σ` from `a_kk z f_k + a_(k,k+1) y f_{k+1} + a_(k,k+2) x f_{k+2} = 0`.
//! The tails are then carried through the same chain relation, with the
//! coefficients `d` read off against the known monomial skeleton.
//!
//! Internally every `c_(k,1)` is 1 and every `a_(k,k+2)` is 1. The display
//! form of each generator is its primitive integer multiple.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact::{
    binomial, nullspace, solve_triangular_chain, LinearEquation, Rational, RationalMatrix,
    SolveError,
};
use crate::params::{validate_and_derive, MohParams, ParamError};
use crate::poly::{
    primitive_scale, sigma_leading_form, sigma_order, to_sigma_graded_string, Exponents, Monomial,
    Polynomial, SigmaGrading,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgeError {
    #[error(transparent)]
    Param(#[from] ParamError),
    #[error("chain {chain}: equation {equation} at {monomial} leaves residual {residual}")]
    ChainInconsistent {
        chain: usize,
        equation: usize,
        monomial: String,
        residual: String,
    },
    #[error("chain {chain}: the system for the a-coefficients is singular")]
    ChainDegenerate { chain: usize },
    #[error("tail exponent of {what} is not an integer")]
    NonIntegralExponent { what: String },
    #[error("tail exponent of {what} is negative ({value})")]
    NegativeExponent { what: String, value: i64 },
    #[error("chain {chain}: tail term {monomial} does not fit the skeleton of f{target}")]
    TailInconsistent {
        chain: usize,
        target: usize,
        monomial: String,
    },
    #[error("tail level l = {l} outside 1..={m}")]
    LevelOutOfRange { l: u64, m: u64 },
    #[error("generator f{index}: {what}")]
    SigmaInvariant { index: usize, what: String },
}

pub type Table = BTreeMap<(usize, usize), Rational>;

/// `c`, `a` and `d`, keyed by `(row, column)` with 1-based indices as they
/// appear in the subscripts: `c[(i, j)]`, `a[(chain, slot)]` with slot in
/// `{chain, chain+1, chain+2}`, `d[(i, s)]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoefficientTables {
    pub c: Table,
    pub a: Table,
    pub d: Table,
}

impl CoefficientTables {
    /// The three chain scalars `(a_kk, a_(k,k+1), a_(k,k+2))`.
    pub fn chain(&self, k: usize) -> Option<[Rational; 3]> {
        Some([
            self.a.get(&(k, k))?.clone(),
            self.a.get(&(k, k + 1))?.clone(),
            self.a.get(&(k, k + 2))?.clone(),
        ])
    }
}

/// The assembled construction for one `(n, λ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorSet {
    pub params: MohParams,
    pub sigma_parts: Vec<Polynomial>,
    pub tails: Vec<Polynomial>,
    /// `f_i = f_i^σ + f_i^τ`, internal scaling.
    pub generators: Vec<Polynomial>,
    pub tables: CoefficientTables,
    /// Primitive integer multiples of the generators.
    pub display: Vec<Polynomial>,
}

impl GeneratorSet {
    pub fn n(&self) -> u32 {
        self.params.n
    }

    pub fn chain_count(&self) -> usize {
        self.generators.len().saturating_sub(2)
    }

    pub fn grading(&self) -> SigmaGrading {
        SigmaGrading::new(self.params.n).expect("validated n is odd")
    }

    /// The display generators as text, σ-leading form first.
    pub fn display_strings(&self) -> Vec<String> {
        let g = self.grading();
        self.display
            .iter()
            .map(|f| to_sigma_graded_string(f, &g))
            .collect()
    }

    /// Factors `s_i` with `display[i] = s_i * generators[i]`.
    pub fn display_scales(&self) -> Vec<Rational> {
        self.generators
            .iter()
            .map(|f| primitive_scale(f).expect("generators are nonzero"))
            .collect()
    }

    /// `a_kk z f_k + a_(k,k+1) y f_{k+1} + a_(k,k+2) x f_{k+2}` applied to the
    /// chosen parts (`σ`, `τ`, or full generators), 1-based chain index.
    pub fn syzygy_residual(&self, k: usize, part: Part) -> Polynomial {
        let src = match part {
            Part::Sigma => &self.sigma_parts,
            Part::Tail => &self.tails,
            Part::Full => &self.generators,
        };
        let [a0, a1, a2] = self.tables.chain(k).expect("chain in range");
        combine(&a0, &src[k - 1], &a1, &src[k], &a2, &src[k + 1])
    }

    /// Chain scalars and `c` rows rescaled to the display generators: the
    /// relation among primitive forms, again normalized so its x-slot is 1.
    pub fn display_tables(&self) -> CoefficientTables {
        let s = self.display_scales();
        let mut out = CoefficientTables::default();
        for (&(i, j), v) in &self.tables.c {
            out.c.insert((i, j), v * &s[i - 1]);
        }
        for (&(i, s_), v) in &self.tables.d {
            out.d.insert((i, s_), v * &s[i - 1]);
        }
        for k in 1..=self.chain_count() {
            let [a0, a1, a2] = self.tables.chain(k).expect("chain in range");
            let top = &s[k + 1] / &a2;
            out.a.insert((k, k), &a0 * &top / &s[k - 1]);
            out.a.insert((k, k + 1), &a1 * &top / &s[k]);
            out.a.insert((k, k + 2), Rational::one());
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Sigma,
    Tail,
    Full,
}

const X: Monomial = Exponents([1, 0, 0]);
const Y: Monomial = Exponents([0, 1, 0]);
const Z: Monomial = Exponents([0, 0, 1]);

fn combine(
    a0: &Rational,
    f0: &Polynomial,
    a1: &Rational,
    f1: &Polynomial,
    a2: &Rational,
    f2: &Polynomial,
) -> Polynomial {
    let mut out = Polynomial::zero();
    out.add_scaled_shifted(f0, &Z, a0);
    out.add_scaled_shifted(f1, &Y, a1);
    out.add_scaled_shifted(f2, &X, a2);
    out
}

fn sign(e: usize) -> i64 {
    if e.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

fn u(v: usize) -> u32 {
    u32::try_from(v).expect("exponent fits in u32")
}

/// Monomials of `f_k^σ` with their signs, indexed by `j = 1..=m+1`.
pub fn sigma_template(k: usize, m: usize) -> Vec<(Monomial, i64)> {
    let i = k.div_ceil(2);
    let mut out = Vec::with_capacity(m + 1);
    if k % 2 == 1 {
        for j in 1..=i {
            out.push((
                Monomial::new(u(2 * m + 2 - i - j), u(2 * j - 2), u(i - j)),
                sign(j - 1),
            ));
        }
        for j in 1..=m + 1 - i {
            out.push((
                Monomial::new(u(m + 1 - i - j), u(2 * j - 1), u(m - 1 + i - j)),
                sign(j + i - 1),
            ));
        }
    } else {
        for j in 1..=i {
            out.push((
                Monomial::new(u(2 * m + 1 - i - j), u(2 * j - 1), u(i - j)),
                sign(j - 1),
            ));
        }
        for j in 1..=m + 1 - i {
            out.push((
                Monomial::new(u(m + 1 - i - j), u(2 * j - 2), u(m + i - j)),
                sign(j + i - 1),
            ));
        }
    }
    out
}

fn assemble_sigma(k: usize, m: usize, c: &Table) -> Polynomial {
    Polynomial::from_terms(
        sigma_template(k, m)
            .into_iter()
            .enumerate()
            .map(|(idx, (mon, s))| (mon, Rational::from_integer(s.into()) * &c[&(k, idx + 1)])),
    )
}

fn m_of(p: &MohParams) -> usize {
    usize::try_from(p.m).expect("m fits in usize")
}

/// `f_1^σ` and `f_2^σ` from the closed binomial forms, with their `c` rows.
pub fn leading_seed(p: &MohParams) -> (Polynomial, Polynomial, Table) {
    let m = m_of(p);
    let m64 = p.m;
    let mut c = BTreeMap::new();
    c.insert((1, 1), Rational::one());
    c.insert((2, 1), Rational::one());
    for j in 1..=m64 {
        let jj = usize::try_from(j).expect("small");
        let c1 = binomial(m64 + j - 1, j - 1) * binomial(2 * m64, m64 - j);
        let c2 = binomial(m64 + j - 2, j - 1) * binomial(2 * m64 - 1, m64 - j);
        c.insert((1, jj + 1), Rational::from_integer(c1));
        c.insert((2, jj + 1), Rational::from_integer(c2));
    }
    (assemble_sigma(1, m, &c), assemble_sigma(2, m, &c), c)
}

/// The a-coefficients of chain `k` fixed from the `c` rows of `f_k` and
/// `f_{k+1}`, before the coefficients of `f_{k+2}` are known.
pub fn chain_scalars(k: usize, m: usize, c: &Table) -> Result<[Rational; 3], ForgeError> {
    let ck1 = &c[&(k, 1)];
    let ckm = &c[&(k, m + 1)];
    let cn1 = &c[&(k + 1, 1)];
    let cnm = &c[&(k + 1, m + 1)];
    let top = Rational::one();
    if k % 2 == 1 {
        // a_kk c_(k,1) + c_(k+2,1) = 0, then the x-free column
        let a0 = -(&top / ck1);
        let a1 = if cnm.is_zero() {
            Rational::one()
        } else {
            -(&a0 * ckm) / cnm
        };
        Ok([a0, a1, top])
    } else {
        // a c_(k,1) + b c_(k+1,1) + 1 = 0 and a c_(k,m+1) + b c_(k+1,m+1) = 0
        let det = ck1 * cnm - cn1 * ckm;
        if det.is_zero() {
            return Err(ForgeError::ChainDegenerate { chain: k });
        }
        let a0 = -(cnm) / &det;
        let a1 = ckm / &det;
        Ok([a0, a1, top])
    }
}

/// One equation per monomial in the support of the chain relation, in
/// lex-descending order. Unknowns are `c_(k+2, j)`.
pub fn chain_equations(
    k: usize,
    m: usize,
    a: &[Rational; 3],
    fk: &Polynomial,
    fk1: &Polynomial,
) -> Vec<(Monomial, LinearEquation<(usize, usize)>)> {
    let known = combine(
        &a[0],
        fk,
        &a[1],
        fk1,
        &Rational::zero(),
        &Polynomial::zero(),
    );
    let mut unknown: BTreeMap<Monomial, Vec<_>> = BTreeMap::new();
    for (idx, (mon, s)) in sigma_template(k + 2, m).into_iter().enumerate() {
        unknown
            .entry(mon.mul(&X))
            .or_default()
            .push(((k + 2, idx + 1), &a[2] * Rational::from_integer(s.into())));
    }
    let support: BTreeSet<Monomial> = known
        .monomials()
        .copied()
        .chain(unknown.keys().copied())
        .collect();
    support
        .into_iter()
        .rev()
        .map(|mon| {
            let terms = unknown.remove(&mon).unwrap_or_default();
            (mon, LinearEquation::new(terms, known.coeff(&mon)))
        })
        .collect()
}

/// Homogeneous form of chain `k`: columns `a_kk`, `a_(k,k+1)` and
/// `e_j = a_(k,k+2) c_(k+2,j)` for `j = 1..=m+1`, one row per monomial.
pub fn chain_matrix(k: usize, m: usize, fk: &Polynomial, fk1: &Polynomial) -> RationalMatrix {
    let zfk = fk.mul_monomial(&Z);
    let yfk1 = fk1.mul_monomial(&Y);
    let template: Vec<(Monomial, i64)> = sigma_template(k + 2, m)
        .into_iter()
        .map(|(mon, s)| (mon.mul(&X), s))
        .collect();
    let support: BTreeSet<Monomial> = zfk
        .monomials()
        .chain(yfk1.monomials())
        .copied()
        .chain(template.iter().map(|(mon, _)| *mon))
        .collect();
    let rows: Vec<Vec<Rational>> = support
        .iter()
        .rev()
        .map(|mon| {
            let mut row = vec![zfk.coeff(mon), yfk1.coeff(mon)];
            row.extend(template.iter().map(|(t, s)| {
                if t == mon {
                    Rational::from_integer((*s).into())
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();
    RationalMatrix::from_rows(rows).expect("rows share one width")
}

/// Solves chain `k` for the row `c_(k+2, ·)` and the three scalars.
pub fn solve_chain(
    k: usize,
    m: usize,
    c: &Table,
    fk: &Polynomial,
    fk1: &Polynomial,
) -> Result<([Rational; 3], Table), ForgeError> {
    let a = chain_scalars(k, m, c)?;
    let eqs = chain_equations(k, m, &a, fk, fk1);
    let plain: Vec<LinearEquation<(usize, usize)>> = eqs.iter().map(|(_, e)| e.clone()).collect();
    let known = BTreeMap::from([((k + 2, 1), Rational::one())]);
    let sol = solve_triangular_chain(&plain, &known).map_err(|e| match e {
        SolveError::Inconsistent { index, residual } => ForgeError::ChainInconsistent {
            chain: k,
            equation: index,
            monomial: eqs[index].0.to_string(),
            residual: residual.to_string(),
        },
        SolveError::Underdetermined(_) => ForgeError::ChainDegenerate { chain: k },
    })?;
    Ok((a, sol.values))
}

/// All σ-leading forms with the `c` and `a` tables.
pub fn solve_leading_chain(
    p: &MohParams,
) -> Result<(Vec<Polynomial>, CoefficientTables), ForgeError> {
    let m = m_of(p);
    let count = usize::try_from(p.n).expect("small") + 1;
    let (f1, f2, c) = leading_seed(p);
    let mut tables = CoefficientTables {
        c,
        ..Default::default()
    };
    let mut sigma = vec![f1, f2];
    for k in 1..count - 1 {
        let (a, row) = solve_chain(k, m, &tables.c, &sigma[k - 1], &sigma[k])?;
        for (slot, v) in a.into_iter().enumerate() {
            tables.a.insert((k, k + slot), v);
        }
        tables.c.extend(row);
        sigma.push(assemble_sigma(k + 2, m, &tables.c));
    }
    Ok((sigma, tables))
}

fn exponent(numer: i64, denom: i64, offset: i64, what: &str) -> Result<u32, ForgeError> {
    if numer % denom != 0 {
        return Err(ForgeError::NonIntegralExponent { what: what.into() });
    }
    let value = numer / denom + offset;
    u32::try_from(value).map_err(|_| ForgeError::NegativeExponent {
        what: what.into(),
        value,
    })
}

fn i(v: u64) -> i64 {
    i64::try_from(v).expect("fits in i64")
}

/// Walks the z-exponent recursion for one monomial family.
fn tail_family(
    p: &MohParams,
    t: &[u64],
    first_gamma: i64,
    len: usize,
    label: &str,
    top_x: u64,
) -> Result<Vec<Monomial>, ForgeError> {
    let modulus = p.n64() + 2;
    let mut gamma = first_gamma;
    let mut out = Vec::with_capacity(len);
    for s in 1..=len {
        if s > 1 {
            if t[s - 2] + 2 >= modulus {
                gamma += i(t[s - 2]) - i(t[s - 1]);
            } else {
                gamma -= 1;
            }
        }
        let z = u32::try_from(gamma).map_err(|_| ForgeError::NegativeExponent {
            what: format!("{label},{s}"),
            value: gamma,
        })?;
        let x = u32::try_from(top_x + 1 - s as u64).expect("small");
        let y = u32::try_from(t[s - 1]).expect("residue");
        out.push(Monomial::new(x, y, z));
    }
    Ok(out)
}

/// The tail skeletons at level `l`: `m_(n-2l+3, s)` for `s = 1..=l` and
/// `m_(n-2l+2, s)` for `s = 1..=l+1`.
pub fn tail_monomials(p: &MohParams, l: u64) -> Result<(Vec<Monomial>, Vec<Monomial>), ForgeError> {
    if l == 0 || l > p.m {
        return Err(ForgeError::LevelOutOfRange { l, m: p.m });
    }
    let n = i(p.n64());
    let (m, lam) = (i(p.m), i(p.lambda));
    let idx_a = p.n64() + 3 - 2 * l;
    let idx_b = p.n64() + 2 - 2 * l;
    let g1 = exponent(
        n * (m + 1) + lam - (n + 1) * i(p.t_seq[0]) + 1,
        n + 2,
        m - i(l),
        &format!("m({idx_a},1)"),
    )?;
    let g2 = exponent(
        n * m + lam - (n + 1) * i(p.t_prime_seq[0]),
        n + 2,
        m - i(l),
        &format!("m({idx_b},1)"),
    )?;
    let len = usize::try_from(l).expect("small");
    let fam_a = tail_family(
        p,
        &p.t_seq,
        i64::from(g1),
        len,
        &format!("m({idx_a}"),
        l - 1,
    )?;
    let fam_b = tail_family(
        p,
        &p.t_prime_seq,
        i64::from(g2),
        len + 1,
        &format!("m({idx_b}"),
        l,
    )?;
    Ok((fam_a, fam_b))
}

/// Skeleton of `f_k^τ` for `1 <= k <= n+1`.
pub fn tail_skeleton(p: &MohParams, k: usize) -> Result<Vec<Monomial>, ForgeError> {
    let n = usize::try_from(p.n).expect("small");
    let k64 = k as u64;
    if k.is_multiple_of(2) {
        let l = (n + 3 - k) / 2;
        Ok(tail_monomials(p, l as u64)?.0)
    } else {
        let l = (p.n64() + 2 - k64) / 2;
        Ok(tail_monomials(p, l)?.1)
    }
}

/// `f_1^τ` and `f_2^τ` with `d_(1,s) = C(m+s-2, s-1)` and
/// `d_(2,s) = C(m+s-2, s-1)`.
pub fn tail_seed(p: &MohParams) -> Result<(Polynomial, Polynomial, Table), ForgeError> {
    let mut d = BTreeMap::new();
    let mut build = |k: usize| -> Result<Polynomial, ForgeError> {
        let skel = tail_skeleton(p, k)?;
        let mut f = Polynomial::zero();
        for (idx, mon) in skel.into_iter().enumerate() {
            let s = idx as u64 + 1;
            let coeff = Rational::from_integer(binomial(p.m + s - 2, s - 1));
            f.add_term(mon, -coeff.clone());
            d.insert((k, idx + 1), coeff);
        }
        Ok(f)
    };
    let f1 = build(1)?;
    let f2 = build(2)?;
    Ok((f1, f2, d))
}

/// Rewrites every `y^b` with `b >= n+2` using `y^{n+2} = z^{n+1}`, which
/// holds on the curve.
pub fn reduce_by_curve_binomial(f: &Polynomial, n: u32) -> Polynomial {
    let (py, pz) = (n + 2, n + 1);
    Polynomial::from_terms(f.terms().map(|(mon, c)| {
        let q = mon.y() / py;
        (
            Monomial::new(mon.x(), mon.y() - q * py, mon.z() + q * pz),
            c.clone(),
        )
    }))
}

/// The next tail from chain `k` and the `d` row read off its skeleton.
///
/// The x-divisible part of the combination, divided by `-x`, gives
/// `f_{k+2}^τ` after the rewrite `y^{n+2} -> z^{n+1}`; the x-free part must
/// vanish after the same rewrite.
pub fn solve_tail_step(
    p: &MohParams,
    k: usize,
    a: &[Rational; 3],
    tk: &Polynomial,
    tk1: &Polynomial,
) -> Result<(Polynomial, Table), ForgeError> {
    let combo = combine(
        &a[0],
        tk,
        &a[1],
        tk1,
        &Rational::zero(),
        &Polynomial::zero(),
    );
    let x_free = reduce_by_curve_binomial(&combo.filter(|mon| mon.x() == 0), p.n);
    if let Some((mon, _)) = x_free.terms().next() {
        return Err(ForgeError::TailInconsistent {
            chain: k,
            target: k + 2,
            monomial: mon.to_string(),
        });
    }
    let mut raw = Polynomial::zero();
    let inv = -(Rational::one() / &a[2]);
    for (mon, c) in combo.terms().filter(|(mon, _)| mon.x() > 0) {
        raw.add_term(Monomial::new(mon.x() - 1, mon.y(), mon.z()), c * &inv);
    }
    let next = reduce_by_curve_binomial(&raw, p.n);
    let skel = tail_skeleton(p, k + 2)?;
    if let Some(mon) = next.monomials().find(|mon| !skel.contains(mon)) {
        return Err(ForgeError::TailInconsistent {
            chain: k,
            target: k + 2,
            monomial: mon.to_string(),
        });
    }
    let d = skel
        .iter()
        .enumerate()
        .map(|(idx, mon)| ((k + 2, idx + 1), -next.coeff(mon)))
        .collect();
    Ok((next, d))
}

/// Carries the tails through every chain.
pub fn solve_tail_chain(
    p: &MohParams,
    seeds: (Polynomial, Polynomial),
    tables: &mut CoefficientTables,
) -> Result<Vec<Polynomial>, ForgeError> {
    let count = usize::try_from(p.n).expect("small") + 1;
    let mut tails = vec![seeds.0, seeds.1];
    for k in 1..count - 1 {
        let a = tables.chain(k).expect("leading chain solved first");
        let (next, d) = solve_tail_step(p, k, &a, &tails[k - 1], &tails[k])?;
        tables.d.extend(d);
        tails.push(next);
    }
    Ok(tails)
}

/// Validates `(n, λ)` and runs the whole construction.
pub fn build_generators(n: u32, lambda: u64) -> Result<GeneratorSet, ForgeError> {
    let params = validate_and_derive(n, lambda)?;
    build_from_params(params)
}

pub fn build_from_params(params: MohParams) -> Result<GeneratorSet, ForgeError> {
    let (sigma_parts, mut tables) = solve_leading_chain(&params)?;
    let (t1, t2, d) = tail_seed(&params)?;
    tables.d = d;
    let tails = solve_tail_chain(&params, (t1, t2), &mut tables)?;
    let generators: Vec<Polynomial> = sigma_parts.iter().zip(&tails).map(|(s, t)| s + t).collect();
    let grading = SigmaGrading::new(params.n).expect("validated n is odd");
    let base = u64::from(params.n) * u64::from(params.n + 1);
    for (idx, (f, s)) in generators.iter().zip(&sigma_parts).enumerate() {
        let fail = |what: String| ForgeError::SigmaInvariant {
            index: idx + 1,
            what,
        };
        let order = sigma_order(f, &grading).map_err(|e| fail(e.to_string()))?;
        if order != base + idx as u64 {
            return Err(fail(format!(
                "σ-order {order}, expected {}",
                base + idx as u64
            )));
        }
        if &sigma_leading_form(f, &grading).map_err(|e| fail(e.to_string()))? != s {
            return Err(fail(
                "σ-leading form differs from the constructed σ-part".into(),
            ));
        }
    }
    let display = generators
        .iter()
        .map(|f| f.scale(&primitive_scale(f).expect("nonzero")))
        .collect();
    Ok(GeneratorSet {
        params,
        sigma_parts,
        tails,
        generators,
        tables,
        display,
    })
}

/// `ν_l` for `l = 0..=m` and `μ_l` for `l = 0..m`.
pub fn binomial_identity_values(m: u64) -> (Vec<BigInt>, Vec<BigInt>) {
    let nu = (0..=m)
        .map(|l| {
            let sum: BigInt = (0..=m - l)
                .map(|k| binomial(m - 1 + k, k) * binomial(m - k, l))
                .sum();
            binomial(2 * m, m + l) - sum
        })
        .collect();
    let mu = (0..m)
        .map(|l| {
            let sum: BigInt = (0..m - l)
                .map(|k| {
                    let term =
                        binomial(m + k, k) * binomial(2 * m, m - 1 - k) * binomial(m - 1 - k, l);
                    if k % 2 == 0 {
                        -term
                    } else {
                        term
                    }
                })
                .sum();
            binomial(2 * m, l) + sum
        })
        .collect();
    (nu, mu)
}

pub fn check_binomial_identities(m: u64) -> bool {
    let (nu, mu) = binomial_identity_values(m);
    nu.iter().chain(&mu).all(Zero::is_zero)
}

/// Nullspace of the homogeneous chain matrix; the forward solution should
/// span it. Returns the basis vectors scaled so the `e_1` entry is 1 when
/// that entry is nonzero.
pub fn chain_nullspace(set: &GeneratorSet, k: usize) -> Vec<Vec<Rational>> {
    let m = m_of(&set.params);
    let mat = chain_matrix(k, m, &set.sigma_parts[k - 1], &set.sigma_parts[k]);
    nullspace(&mat)
        .into_iter()
        .map(|v| {
            let e1 = v[2].clone();
            if e1.is_zero() {
                v
            } else {
                v.into_iter().map(|x| x / &e1).collect()
            }
        })
        .collect()
}

/// The forward solution of chain `k` in nullspace coordinates.
pub fn chain_solution_vector(set: &GeneratorSet, k: usize) -> Vec<Rational> {
    let m = m_of(&set.params);
    let [a0, a1, a2] = set.tables.chain(k).expect("chain in range");
    let mut v = vec![a0, a1];
    v.extend((1..=m + 1).map(|j| &a2 * &set.tables.c[&(k + 2, j)]));
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};
    use crate::rho::is_in_kernel;
    use proptest::prelude::*;

    fn poly(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    fn params(n: u32, lambda: u64) -> MohParams {
        validate_and_derive(n, lambda).unwrap()
    }

    fn mons(s: &[(u32, u32, u32)]) -> Vec<Monomial> {
        s.iter().map(|&(a, b, c)| Monomial::new(a, b, c)).collect()
    }

    #[test]
    fn seeds() {
        let (f1, f2, _) = leading_seed(&params(3, 27));
        assert_eq!(f1, poly("x^4 - 4*x*y*z + 3*y^3"));
        assert_eq!(f2, poly("x^3*y - 3*x*z^2 + 2*y^2*z"));
        let (f1, f2, _) = leading_seed(&params(1, 3));
        assert_eq!(f1, poly("x^2 - y"));
        assert_eq!(f2, poly("x*y - z"));
    }

    #[test]
    fn templates_are_sigma_homogeneous() {
        for n in [1usize, 3, 5, 7, 9] {
            let m = n.div_ceil(2);
            let g = SigmaGrading::new(n as u32).unwrap();
            for k in 1..=n + 1 {
                let t = sigma_template(k, m);
                assert_eq!(t.len(), m + 1);
                for (mon, _) in t {
                    assert_eq!(g.weight(&mon), (n * n + n + k - 1) as u64);
                }
            }
        }
    }

    #[test]
    fn first_chain_of_the_worked_example() {
        let p = params(3, 27);
        let (sigma, tables) = solve_leading_chain(&p).unwrap();
        assert_eq!(sigma[2].scale(&int(2)), poly("2*x^3*z - 3*x^2*y^2 + y*z^2"));
        assert_eq!(sigma[3], poly("x^2*y*z - 2*x*y^3 + z^3"));
        assert_eq!(tables.chain(1).unwrap(), [int(-1), rat(3, 2), int(1)]);
        let c3: Vec<Rational> = (1..=3).map(|j| tables.c[&(3, j)].clone()).collect();
        assert_eq!(c3, vec![int(1), rat(3, 2), rat(1, 2)]);
        let c4: Vec<Rational> = (1..=3).map(|j| tables.c[&(4, j)].clone()).collect();
        assert_eq!(c4, vec![int(1), int(2), int(1)]);
    }

    #[test]
    fn display_scaling_matches_the_worked_example() {
        let set = build_generators(3, 27).unwrap();
        let t = set.display_tables();
        let row =
            |k: usize| -> Vec<Rational> { (k..=k + 2).map(|s| t.a[&(k, s)].clone()).collect() };
        assert_eq!(row(1), vec![int(-2), int(3), int(1)]);
        assert_eq!(row(2), vec![rat(1, 3), rat(-2, 3), int(1)]);
        let c3: Vec<Rational> = (1..=3).map(|j| t.c[&(3, j)].clone()).collect();
        assert_eq!(c3, vec![int(2), int(3), int(1)]);
        assert_eq!(t.d[&(3, 1)], int(2));
        assert_eq!(t.d[&(3, 2)], int(1));
        assert_eq!(t.d[&(4, 1)], int(1));
    }

    #[test]
    fn tail_skeleton_of_the_worked_example() {
        let p = params(3, 27);
        let (a, b) = tail_monomials(&p, 2).unwrap();
        assert_eq!(b, mons(&[(2, 2, 5), (1, 4, 4), (0, 1, 7)]));
        assert_eq!(a, mons(&[(1, 3, 5), (0, 0, 8)]));
        let (a, b) = tail_monomials(&p, 1).unwrap();
        assert_eq!(b, mons(&[(1, 2, 6), (0, 4, 5)]));
        assert_eq!(a, mons(&[(0, 3, 6)]));
        assert!(tail_monomials(&p, 3).is_err());
        assert!(tail_monomials(&p, 0).is_err());
    }

    #[test]
    fn tail_seeds() {
        let (t1, t2, _) = tail_seed(&params(3, 27)).unwrap();
        assert_eq!(t1, poly("-x^2*y^2*z^5 - 2*x*y^4*z^4 - 3*y*z^7"));
        assert_eq!(t2, poly("-x*y^3*z^5 - 2*z^8"));
        let (t1, _, _) = tail_seed(&params(1, 3)).unwrap();
        assert_eq!(t1, poly("-x*y^2 - y*z"));
    }

    #[test]
    fn worked_example_generators() {
        let set = build_generators(3, 27).unwrap();
        assert_eq!(
            set.display_strings(),
            vec![
                "x^4 - 4*x*y*z + 3*y^3 - x^2*y^2*z^5 - 2*x*y^4*z^4 - 3*y*z^7",
                "x^3*y - 3*x*z^2 + 2*y^2*z - x*y^3*z^5 - 2*z^8",
                "2*x^3*z - 3*x^2*y^2 + y*z^2 - 2*x*y^2*z^6 - y^4*z^5",
                "x^2*y*z - 2*x*y^3 + z^3 - y^3*z^6",
            ]
        );
        for f in &set.generators {
            assert!(is_in_kernel(f, &set.params));
        }
    }

    #[test]
    fn smallest_n1_instance() {
        let set = build_generators(1, 3).unwrap();
        assert_eq!(
            set.generators,
            vec![poly("x^2 - y - x*y^2 - y*z"), poly("x*y - z - z^2")]
        );
        assert!(set.tables.a.is_empty());
        assert_eq!(set.chain_count(), 0);
    }

    #[test]
    fn invalid_parameters_propagate() {
        assert!(matches!(
            build_generators(3, 26),
            Err(ForgeError::Param(ParamError::NotCoprime { .. }))
        ));
    }

    #[test]
    fn sigma_syzygies_are_exact() {
        for (n, lambda) in [(3, 25), (5, 91), (7, 225)] {
            let set = build_generators(n, lambda).unwrap();
            for k in 1..=set.chain_count() {
                assert!(
                    set.syzygy_residual(k, Part::Sigma).is_zero(),
                    "n={n} chain {k}"
                );
            }
        }
    }

    #[test]
    fn nullspace_agrees_with_forward_solve() {
        for (n, lambda) in [(3, 27), (5, 92), (7, 227)] {
            let set = build_generators(n, lambda).unwrap();
            for k in 1..=set.chain_count() {
                let basis = chain_nullspace(&set, k);
                assert_eq!(basis.len(), 1, "n={n} chain {k}");
                assert_eq!(basis[0], chain_solution_vector(&set, k));
            }
        }
    }

    #[test]
    fn binomial_identities_small() {
        assert!(check_binomial_identities(1));
        let (nu, mu) = binomial_identity_values(2);
        assert_eq!(nu.len(), 3);
        assert_eq!(mu.len(), 2);
        assert!(nu.iter().chain(&mu).all(Zero::is_zero));
        assert!(check_binomial_identities(50));
    }

    #[test]
    fn curve_binomial_rewrite() {
        assert_eq!(
            reduce_by_curve_binomial(&poly("y^5*z^5 - z^9"), 3),
            Polynomial::zero()
        );
        assert_eq!(
            reduce_by_curve_binomial(&poly("x*y^11"), 3),
            poly("x*y*z^8")
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn generators_lie_in_the_kernel(k in 0usize..4, idx in 0usize..6) {
            let n = 2 * k as u32 + 1;
            let lambda = crate::params::valid_lambdas(n).nth(idx).unwrap();
            let set = build_generators(n, lambda).unwrap();
            prop_assert_eq!(set.generators.len(), n as usize + 1);
            for f in &set.generators {
                prop_assert!(is_in_kernel(f, &set.params));
            }
        }
    }
}
