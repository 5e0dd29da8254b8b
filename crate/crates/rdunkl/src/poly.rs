//! Exact sparse multivariate polynomial arithmetic over the rationals.
//!
//! Polynomials are stored canonically as a map from monomials to nonzero
//! rational coefficients, ordered graded reverse-lexicographically. This is
//! the carrier for Jack polynomials and Dunkl-operator images; there is no
//! floating-point polynomial arithmetic here.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{rat_to_f64, Rat};

/// Exponent vector of fixed length (the ambient variable count).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn constant(n: usize) -> Self {
        Monomial { exps: vec![0; n] }
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut exps = vec![0; n];
        exps[i] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    fn swapped(&self, i: usize, j: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps.swap(i, j);
        Monomial { exps }
    }
}

/// Graded reverse-lexicographic order: total degree first, ties broken by
/// the rightmost differing exponent (smaller exponent there wins).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial with exact rational coefficients in
/// canonical form: no zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::constant(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, Rat::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::var(nvars, i), Rat::one());
        p
    }

    /// x_lo * x_{lo+1} * ... * x_{hi-1}, e.g. the full product D(x) for
    /// `lo = 0, hi = n`.
    pub fn var_product(nvars: usize, lo: usize, hi: usize) -> Self {
        let mut exps = vec![0; nvars];
        for e in exps.iter_mut().take(hi).skip(lo) {
            *e = 1;
        }
        let mut p = MultiPoly::zero(nvars);
        p.add_term(Monomial::new(exps), Rat::one());
        p
    }

    /// x_0 + x_1 + ... + x_{n-1}.
    pub fn coordinate_sum(nvars: usize) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for i in 0..nvars {
            p.add_term(Monomial::var(nvars, i), Rat::one());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, mono: &Monomial) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `c * mono`, keeping canonical form.
    pub fn add_term(&mut self, mono: Monomial, c: Rat) {
        debug_assert_eq!(mono.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_dims(&self, other: &MultiPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: other.nvars,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_dims(other)?;
        let mut out = MultiPoly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scalar_mul(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> MultiPoly {
        self.scalar_mul(&-Rat::one())
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.nvars);
        for _ in 0..e {
            acc = acc.checked_mul(self).expect("same ring");
        }
        acc
    }

    pub fn eval_rat(&self, point: &[Rat]) -> Result<Rat> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                got: point.len(),
            });
        }
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                if e > 0 {
                    t *= x.pow(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = rat_to_f64(c);
            for (x, &e) in point.iter().zip(m.exps()) {
                t *= x.powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::default();
        for (m, c) in &self.terms {
            let mut t = Complex64::new(rat_to_f64(c), 0.0);
            for (x, &e) in point.iter().zip(m.exps()) {
                t *= x.powi(e as i32);
            }
            acc += t;
        }
        acc
    }

    /// Float image of the terms, for hot numeric loops.
    pub fn float_terms(&self) -> Vec<(Vec<u32>, f64)> {
        self.terms
            .iter()
            .map(|(m, c)| (m.exps().to_vec(), rat_to_f64(c)))
            .collect()
    }

    /// Exchanges the variables `i` and `j` in every monomial.
    pub fn apply_transposition(&self, i: usize, j: usize) -> Result<MultiPoly> {
        if i >= self.nvars || j >= self.nvars {
            return Err(Error::IndexOutOfRange(format!(
                "transposition ({i},{j}) on {} variables",
                self.nvars
            )));
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.swapped(i, j), c.clone());
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, i: usize) -> Result<MultiPoly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange(format!(
                "derivative in variable {i} of {}",
                self.nvars
            )));
        }
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exps()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial::new(exps), c * Rat::from_integer(e.into()));
        }
        Ok(out)
    }

    /// Exact division of `self` by `(x_i - x_j)` via iterated leading-term
    /// elimination in `x_i`. A nonzero remainder means the caller's
    /// divisibility assumption failed and is reported as an internal error.
    pub fn divide_by_var_diff(&self, i: usize, j: usize) -> Result<MultiPoly> {
        if i >= self.nvars || j >= self.nvars || i == j {
            return Err(Error::IndexOutOfRange(format!(
                "divisor x{} - x{} on {} variables",
                i + 1,
                j + 1,
                self.nvars
            )));
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        while !rem.is_zero() {
            // Leading term in x_i, grevlex tie-break for determinism.
            let (mono, coeff) = rem
                .terms
                .iter()
                .max_by(|(ma, _), (mb, _)| ma.exps()[i].cmp(&mb.exps()[i]).then(ma.cmp(mb)))
                .map(|(m, c)| (m.clone(), c.clone()))
                .expect("nonzero remainder has a leading term");
            let e = mono.exps()[i];
            if e == 0 {
                return Err(Error::Internal(format!(
                    "exact division by x{} - x{} left remainder {}",
                    i + 1,
                    j + 1,
                    rem
                )));
            }
            let mut qexps = mono.exps().to_vec();
            qexps[i] -= 1;
            let qmono = Monomial::new(qexps.clone());
            quot.add_term(qmono.clone(), coeff.clone());
            // rem -= coeff * qmono * (x_i - x_j)
            rem.add_term(mono, -coeff.clone());
            let mut jexps = qexps;
            jexps[j] += 1;
            rem.add_term(Monomial::new(jexps), coeff);
        }
        Ok(quot)
    }

    /// (p - sigma_ij p) / (x_i - x_j); the numerator is always divisible.
    pub fn divided_difference(&self, i: usize, j: usize) -> Result<MultiPoly> {
        let swapped = self.apply_transposition(i, j)?;
        let num = self.checked_sub(&swapped)?;
        if num.is_zero() {
            return Ok(MultiPoly::zero(self.nvars));
        }
        num.divide_by_var_diff(i, j)
    }

    /// Sets variables `r..nvars` to zero and reinterprets the result in `r`
    /// variables.
    pub fn restrict_vars(&self, r: usize) -> Result<MultiPoly> {
        if r > self.nvars {
            return Err(Error::IndexOutOfRange(format!(
                "restriction to {r} of {} variables",
                self.nvars
            )));
        }
        let mut out = MultiPoly::zero(r);
        for (m, c) in &self.terms {
            if m.exps()[r..].iter().all(|&e| e == 0) {
                out.add_term(Monomial::new(m.exps()[..r].to_vec()), c.clone());
            }
        }
        Ok(out)
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_component(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops all terms of total degree above `d`.
    pub fn truncate_degree(&self, d: u32) -> MultiPoly {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.total_degree() <= d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::total_degree);
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.nvars.saturating_sub(1) {
            match self.apply_transposition(i, i + 1) {
                Ok(q) if q == *self => {}
                _ => return false,
            }
        }
        true
    }

    /// Expansion of a symmetric polynomial in the monomial symmetric basis:
    /// the coefficient of m_lambda is read off the sorted exponent vector.
    pub fn m_basis_coefficients(&self) -> Result<BTreeMap<Partition, Rat>> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let exps = m.exps();
            if exps.windows(2).all(|w| w[0] >= w[1]) {
                out.insert(Partition::new(exps.to_vec())?, c.clone());
            }
        }
        Ok(out)
    }

    /// Canonical text form: terms joined by ` + `, each `coeff * x1^a1 ...`,
    /// rationals as `p/q`, largest monomial first.
    pub fn to_text(&self) -> String {
        format!("{self}")
    }

    /// Parses the canonical text form back into a polynomial over `nvars`
    /// variables.
    pub fn parse(s: &str, nvars: usize) -> Result<MultiPoly> {
        let s = s.trim();
        let mut out = MultiPoly::zero(nvars);
        if s == "0" || s.is_empty() {
            return Ok(out);
        }
        for term in s.split('+') {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse(format!("empty term in {s:?}")));
            }
            let (coeff_str, vars_str) = match term.split_once('*') {
                Some((c, v)) => (c.trim(), v.trim()),
                None => {
                    if term.starts_with('x') {
                        ("1", term)
                    } else {
                        (term, "")
                    }
                }
            };
            let coeff = crate::scalar::parse_rational(coeff_str)?;
            let mut exps = vec![0u32; nvars];
            if !vars_str.is_empty() {
                for factor in vars_str.split_whitespace() {
                    let rest = factor
                        .strip_prefix('x')
                        .ok_or_else(|| Error::Parse(format!("bad factor {factor:?}")))?;
                    let (idx_s, exp_s) = match rest.split_once('^') {
                        Some((i, e)) => (i, e),
                        None => (rest, "1"),
                    };
                    let idx: usize = idx_s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad variable index in {factor:?}")))?;
                    let exp: u32 = exp_s
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    if idx == 0 || idx > nvars {
                        return Err(Error::Parse(format!(
                            "variable x{idx} outside 1..={nvars}"
                        )));
                    }
                    exps[idx - 1] += exp;
                }
            }
            out.add_term(Monomial::new(exps), coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            let mut sep = " * ";
            for (idx, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    write!(f, "{sep}x{}^{}", idx + 1, e)?;
                    sep = " ";
                }
            }
        }
        Ok(())
    }
}

/// Operation selector for the checked arithmetic entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic over matching variable counts.
pub fn poly_arith(op: PolyOp, p: &MultiPoly, q: &MultiPoly) -> Result<MultiPoly> {
    match op {
        PolyOp::Add => p.checked_add(q),
        PolyOp::Sub => p.checked_sub(q),
        PolyOp::Mul => p.checked_mul(q),
    }
}

/// All distinct permutations of a multiset of exponents.
fn distinct_permutations(values: &[u32]) -> Vec<Vec<u32>> {
    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for &v in values {
        *counts.entry(v).or_insert(0) += 1;
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(values.len());
    fn rec(
        counts: &mut BTreeMap<u32, usize>,
        prefix: &mut Vec<u32>,
        len: usize,
        out: &mut Vec<Vec<u32>>,
    ) {
        if prefix.len() == len {
            out.push(prefix.clone());
            return;
        }
        let keys: Vec<u32> = counts
            .iter()
            .filter(|(_, &c)| c > 0)
            .map(|(&k, _)| k)
            .collect();
        for k in keys {
            *counts.get_mut(&k).unwrap() -= 1;
            prefix.push(k);
            rec(counts, prefix, len, out);
            prefix.pop();
            *counts.get_mut(&k).unwrap() += 1;
        }
    }
    rec(&mut counts, &mut prefix, values.len(), &mut out);
    out
}

/// Monomial symmetric polynomial m_lambda in `n` variables.
pub fn monomial_symmetric(n: usize, lam: &Partition) -> Result<MultiPoly> {
    let exps = lam.to_exponents(n)?;
    let mut p = MultiPoly::zero(n);
    for perm in distinct_permutations(&exps) {
        p.add_term(Monomial::new(perm), Rat::one());
    }
    Ok(p)
}

/// Number of distinct monomials of m_lambda surviving at (1,...,1,0,...,0)
/// with `r` ones: r! / ((r - l)! * prod multiplicities!), exact.
pub fn monomial_symmetric_at_ones(lam: &Partition, r: usize) -> Rat {
    let l = lam.length();
    if l > r {
        return Rat::zero();
    }
    let mut numer = num_bigint::BigInt::one();
    for v in (r - l + 1)..=r {
        numer *= num_bigint::BigInt::from(v);
    }
    let mut denom = num_bigint::BigInt::one();
    let mut run = 1usize;
    for w in lam.parts().windows(2) {
        if w[0] == w[1] {
            run += 1;
            denom *= num_bigint::BigInt::from(run);
        } else {
            run = 1;
        }
    }
    Rat::new(numer, denom)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn cancellation_gives_zero() {
        let p = x(2, 0).checked_add(&x(2, 0).neg()).unwrap();
        assert!(p.is_zero());
        assert_eq!(p.to_text(), "0");
    }

    #[test]
    fn difference_of_squares() {
        let p = x(2, 0).checked_add(&x(2, 1)).unwrap();
        let q = x(2, 0).checked_sub(&x(2, 1)).unwrap();
        let prod = p.checked_mul(&q).unwrap();
        let expect = x(2, 0).pow(2).checked_sub(&x(2, 1).pow(2)).unwrap();
        assert_eq!(prod, expect);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let p = x(2, 0);
        let q = x(3, 0);
        assert!(matches!(
            p.checked_add(&q),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(poly_arith(PolyOp::Mul, &p, &q).is_err());
    }

    #[test]
    fn eval_examples() {
        let one = MultiPoly::one(3);
        assert_eq!(one.eval_rat(&[rat_int(5), rat_int(-1), rat(2, 3)]).unwrap(), Rat::one());
        let p = x(2, 0).checked_mul(&x(2, 1)).unwrap();
        assert_eq!(p.eval_rat(&[rat_int(2), rat_int(3)]).unwrap(), rat_int(6));
        assert_eq!(p.eval_f64(&[2.0, 3.0]), 6.0);
    }

    #[test]
    fn transposition_examples() {
        // x1^2 x2 <-> x1 x2^2
        let p = x(2, 0).pow(2).checked_mul(&x(2, 1)).unwrap();
        let q = p.apply_transposition(0, 1).unwrap();
        let expect = x(2, 0).checked_mul(&x(2, 1).pow(2)).unwrap();
        assert_eq!(q, expect);
        // symmetric polynomial is invariant
        let s = x(2, 0).checked_add(&x(2, 1)).unwrap().pow(3);
        assert_eq!(s.apply_transposition(0, 1).unwrap(), s);
        assert!(s.is_symmetric());
        // out of range
        assert!(p.apply_transposition(0, 2).is_err());
    }

    #[test]
    fn divided_difference_examples() {
        // (x1 - x2)/(x1 - x2) = 1
        let dd = x(2, 0).divided_difference(0, 1).unwrap();
        assert_eq!(dd, MultiPoly::one(2));
        // (x1^2 - x2^2)/(x1 - x2) = x1 + x2
        let dd = x(2, 0).pow(2).divided_difference(0, 1).unwrap();
        assert_eq!(dd, x(2, 0).checked_add(&x(2, 1)).unwrap());
        // symmetric input vanishes
        let s = x(2, 0).checked_mul(&x(2, 1)).unwrap();
        assert!(s.divided_difference(0, 1).unwrap().is_zero());
    }

    #[test]
    fn division_remainder_is_internal_error() {
        // x1 + 1 is not divisible by x1 - x2
        let p = x(2, 0).checked_add(&MultiPoly::one(2)).unwrap();
        assert!(matches!(
            p.divide_by_var_diff(0, 1),
            Err(Error::Internal(_))
        ));
    }

    #[test]
    fn mul_matches_naive_expansion() {
        // Distributive-law oracle on a pseudorandom pair of degree <= 4.
        let mut seed = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            seed
        };
        for _ in 0..20 {
            let n = 3;
            let mut p = MultiPoly::zero(n);
            let mut q = MultiPoly::zero(n);
            for _ in 0..6 {
                let e1 = [next() % 3, next() % 2, next() % 2];
                let e2 = [next() % 2, next() % 3, next() % 2];
                p.add_term(
                    Monomial::new(e1.iter().map(|&v| v as u32).collect()),
                    rat((next() % 11) as i64 - 5, 1 + (next() % 4) as i64),
                );
                q.add_term(
                    Monomial::new(e2.iter().map(|&v| v as u32).collect()),
                    rat((next() % 9) as i64 - 4, 1 + (next() % 3) as i64),
                );
            }
            let fast = p.checked_mul(&q).unwrap();
            // Oracle: accumulate one product term at a time through the
            // public add path instead of the fused multiply loop.
            let mut slow = MultiPoly::zero(n);
            for (m, c) in p.terms() {
                for (mq, cq) in q.terms() {
                    let mut t = MultiPoly::zero(n);
                    t.add_term(m.mul(mq), c * cq);
                    slow = slow.checked_add(&t).unwrap();
                }
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn text_round_trip_examples() {
        let p = x(3, 0)
            .pow(2)
            .scalar_mul(&rat(-2, 3))
            .checked_add(&x(3, 2))
            .unwrap()
            .checked_add(&MultiPoly::constant(3, rat(7, 2)))
            .unwrap();
        let text = p.to_text();
        let back = MultiPoly::parse(&text, 3).unwrap();
        assert_eq!(p, back);
        assert_eq!(MultiPoly::parse("0", 2).unwrap(), MultiPoly::zero(2));
        // the documented shape: coeff * x1^a1 ...
        let simple = x(2, 0).pow(2).checked_mul(&x(2, 1)).unwrap();
        assert_eq!(simple.to_text(), "1 * x1^2 x2^1");
    }

    #[test]
    fn monomial_symmetric_examples() {
        let lam = Partition::new(vec![2, 1]).unwrap();
        let m = monomial_symmetric(3, &lam).unwrap();
        // x^2 y + x^2 z + y^2 x + y^2 z + z^2 x + z^2 y
        assert_eq!(m.num_terms(), 6);
        assert!(m.is_symmetric());
        assert_eq!(
            m.eval_rat(&[Rat::one(), Rat::one(), Rat::one()]).unwrap(),
            rat_int(6)
        );
        assert_eq!(monomial_symmetric_at_ones(&lam, 3), rat_int(6));
        assert_eq!(monomial_symmetric_at_ones(&lam, 1), Rat::zero());
        let ones = Partition::new(vec![1, 1]).unwrap();
        // m_{(1,1)}(1_3) = C(3,2) = 3
        assert_eq!(monomial_symmetric_at_ones(&ones, 3), rat_int(3));
    }

    #[test]
    fn restrict_vars_projects() {
        let p = x(3, 0)
            .checked_mul(&x(3, 2))
            .unwrap()
            .checked_add(&x(3, 0).pow(2))
            .unwrap();
        let q = p.restrict_vars(2).unwrap();
        assert_eq!(q, MultiPoly::var(2, 0).pow(2));
    }

    #[test]
    fn grevlex_display_order_is_stable() {
        let mut p = MultiPoly::zero(2);
        p.add_term(Monomial::new(vec![1, 1]), Rat::one());
        p.add_term(Monomial::new(vec![2, 0]), Rat::one());
        p.add_term(Monomial::new(vec![0, 0]), rat(1, 2));
        assert_eq!(p.to_text(), "1 * x1^2 + 1 * x1^1 x2^1 + 1/2");
    }
}
