//! Jack polynomials C_lambda^alpha in exact rational arithmetic.
//!
//! Construction route: per degree, the monic P-basis is computed as the
//! dominance-triangular eigenbasis of the alpha-deformed Laplace-Beltrami
//! operator
//!
//! ```text
//!   D(alpha) = (alpha/2) sum_i x_i^2 d_i^2
//!            + sum_{i<j} (x_i^2 d_i - x_j^2 d_j) / (x_i - x_j)
//! ```
//!
//! acting on monomial symmetric functions, and the C-basis is fixed by the
//! normalization sum_{|lambda|=m} C_lambda = (x_1 + ... + x_n)^m through an
//! exact triangular solve. That normalization is re-verified for every
//! degree as a construction self-check.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock, RwLock};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gamma::factorial;
use crate::partition::{enumerate_partitions, Partition};
use crate::poly::{monomial_symmetric, monomial_symmetric_at_ones, MultiPoly};
use crate::scalar::{Rat, rat_int};

/// One Jack polynomial and its precomputed views.
#[derive(Debug)]
pub struct JackEntry {
    pub partition: Partition,
    /// P_lambda in the monomial symmetric basis (monic at m_lambda).
    pub p_mcoeffs: BTreeMap<Partition, Rat>,
    /// Scale factor with C_lambda = b_lambda * P_lambda.
    pub b: Rat,
    /// C_lambda in the monomial symmetric basis.
    pub c_mcoeffs: BTreeMap<Partition, Rat>,
    /// C_lambda expanded into monomials.
    pub c_poly: MultiPoly,
    /// C_lambda(1, ..., 1).
    pub c_at_one: Rat,
    /// Float image of the monomial expansion for numeric series loops.
    pub c_float: Vec<(Vec<u32>, f64)>,
}

impl JackEntry {
    /// C_lambda evaluated at (1,...,1,0,...,0) with `r` ones, exact.
    pub fn at_ones(&self, r: usize) -> Rat {
        let mut acc = Rat::zero();
        for (mu, c) in &self.c_mcoeffs {
            acc += c * monomial_symmetric_at_ones(mu, r);
        }
        acc
    }
}

struct DegreeBlock {
    partitions: Vec<Partition>,
    entries: BTreeMap<Partition, Arc<JackEntry>>,
}

struct TableInner {
    blocks: Vec<DegreeBlock>,
}

/// Per-(n, alpha) cache of Jack polynomials up to a growable degree.
///
/// Deepening is single-writer; completed degrees are immutable and may be
/// read concurrently.
pub struct JackTable {
    n: usize,
    alpha: Rat,
    inner: RwLock<TableInner>,
}

impl JackTable {
    pub fn new(n: usize, alpha: Rat, max_degree: u32) -> Result<Arc<JackTable>> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one variable".into()));
        }
        if !alpha.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "Jack parameter alpha must be positive, got {alpha}"
            )));
        }
        let table = Arc::new(JackTable {
            n,
            alpha,
            inner: RwLock::new(TableInner { blocks: Vec::new() }),
        });
        table.ensure_degree(max_degree)?;
        Ok(table)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &Rat {
        &self.alpha
    }

    /// Multiplicity k = 1/alpha.
    pub fn k(&self) -> Rat {
        Rat::one() / &self.alpha
    }

    pub fn max_degree(&self) -> u32 {
        let inner = self.inner.read().expect("jack table lock");
        inner.blocks.len() as u32 - 1
    }

    /// Extends the table so every degree `<= m` is available.
    pub fn ensure_degree(&self, m: u32) -> Result<()> {
        {
            let inner = self.inner.read().expect("jack table lock");
            if inner.blocks.len() > m as usize {
                return Ok(());
            }
        }
        let mut inner = self.inner.write().expect("jack table lock");
        while inner.blocks.len() <= m as usize {
            let d = inner.blocks.len() as u32;
            let block = build_degree_block(self.n, &self.alpha, d)?;
            inner.blocks.push(block);
        }
        Ok(())
    }

    pub fn entry(&self, lam: &Partition) -> Result<Arc<JackEntry>> {
        let inner = self.inner.read().expect("jack table lock");
        let w = lam.weight() as usize;
        if w >= inner.blocks.len() {
            return Err(Error::TableTooShallow {
                partition: lam.to_string(),
                weight: lam.weight(),
                max_degree: inner.blocks.len() as u32 - 1,
            });
        }
        inner.blocks[w]
            .entries
            .get(lam)
            .cloned()
            .ok_or_else(|| Error::InvalidArgument(format!(
                "partition {lam} has more than {} parts",
                self.n
            )))
    }

    /// Entries of one degree in reverse-lexicographic order.
    pub fn entries_of_degree(&self, m: u32) -> Result<Vec<Arc<JackEntry>>> {
        let inner = self.inner.read().expect("jack table lock");
        let block = inner.blocks.get(m as usize).ok_or(Error::TableTooShallow {
            partition: format!("degree {m}"),
            weight: m,
            max_degree: inner.blocks.len() as u32 - 1,
        })?;
        Ok(block
            .partitions
            .iter()
            .map(|p| block.entries[p].clone())
            .collect())
    }

    pub fn partitions_of_degree(&self, m: u32) -> Result<Vec<Partition>> {
        let inner = self.inner.read().expect("jack table lock");
        let block = inner.blocks.get(m as usize).ok_or(Error::TableTooShallow {
            partition: format!("degree {m}"),
            weight: m,
            max_degree: inner.blocks.len() as u32 - 1,
        })?;
        Ok(block.partitions.clone())
    }

    /// C_lambda(1_r), exact; `r <= n`.
    pub fn at_ones(&self, lam: &Partition, r: usize) -> Result<Rat> {
        if r > self.n {
            return Err(Error::IndexOutOfRange(format!(
                "{r} ones in {} variables",
                self.n
            )));
        }
        Ok(self.entry(lam)?.at_ones(r))
    }
}

/// Applies the alpha-deformed Laplace-Beltrami operator to a symmetric
/// polynomial. The pair terms are exact quotients; a division failure means
/// the input was not symmetric.
fn laplace_beltrami(f: &MultiPoly, alpha: &Rat) -> Result<MultiPoly> {
    let n = f.nvars();
    let mut acc = MultiPoly::zero(n);
    let half_alpha = alpha / rat_int(2);
    for i in 0..n {
        let d2 = f.partial_derivative(i)?.partial_derivative(i)?;
        let x2 = MultiPoly::var(n, i).pow(2);
        acc = acc.checked_add(&x2.checked_mul(&d2)?.scalar_mul(&half_alpha))?;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            let xi2 = MultiPoly::var(n, i).pow(2);
            let xj2 = MultiPoly::var(n, j).pow(2);
            let num = xi2
                .checked_mul(&f.partial_derivative(i)?)?
                .checked_sub(&xj2.checked_mul(&f.partial_derivative(j)?)?)?;
            if num.is_zero() {
                continue;
            }
            acc = acc.checked_add(&num.divide_by_var_diff(i, j)?)?;
        }
    }
    Ok(acc)
}

/// Multinomial coefficient m! / prod(lambda_i!), the coefficient of
/// m_lambda in (x_1 + ... + x_n)^m.
fn multinomial(lam: &Partition) -> Rat {
    let mut denom = num_bigint::BigInt::one();
    for &p in lam.parts() {
        denom *= factorial(p);
    }
    Rat::new(factorial(lam.weight()), denom)
}

fn build_degree_block(n: usize, alpha: &Rat, d: u32) -> Result<DegreeBlock> {
    let partitions = enumerate_partitions(d, n);
    let m_polys: BTreeMap<Partition, MultiPoly> = partitions
        .iter()
        .map(|p| Ok((p.clone(), monomial_symmetric(n, p)?)))
        .collect::<Result<_>>()?;

    // Operator matrix in the m-basis: columns indexed by image partition.
    // a[mu][nu] = coefficient of m_nu in D(alpha) m_mu.
    let mut a: HashMap<&Partition, BTreeMap<Partition, Rat>> = HashMap::new();
    for mu in &partitions {
        let image = laplace_beltrami(&m_polys[mu], alpha)?;
        let coeffs = image.m_basis_coefficients()?;
        for nu in coeffs.keys() {
            if !mu.dominates(nu) {
                return Err(Error::Internal(format!(
                    "operator image of m_{mu} leaves the dominance cone at m_{nu}"
                )));
            }
        }
        a.insert(mu, coeffs);
    }
    let eigen: BTreeMap<&Partition, Rat> = partitions
        .iter()
        .map(|p| (p, a[p].get(p).cloned().unwrap_or_else(Rat::zero)))
        .collect();

    // Monic triangular eigenvectors, largest partition first.
    let mut p_coeffs: BTreeMap<Partition, BTreeMap<Partition, Rat>> = BTreeMap::new();
    for (li, lam) in partitions.iter().enumerate() {
        let mut coeffs: BTreeMap<Partition, Rat> = BTreeMap::new();
        coeffs.insert(lam.clone(), Rat::one());
        for nu in partitions.iter().skip(li + 1) {
            let mut numer = Rat::zero();
            for mu in partitions.iter().take(partitions.len()).skip(li) {
                if mu == nu {
                    break;
                }
                if let (Some(c_mu), Some(row)) = (coeffs.get(mu), a.get(mu)) {
                    if let Some(a_mn) = row.get(nu) {
                        numer += c_mu * a_mn;
                    }
                }
            }
            let gap = eigen[lam].clone() - &eigen[nu];
            if gap.is_zero() {
                if !numer.is_zero() {
                    return Err(Error::Internal(format!(
                        "eigenvalue collision between {lam} and {nu} with coupling {numer}"
                    )));
                }
                continue;
            }
            let c = numer / gap;
            if !c.is_zero() {
                coeffs.insert(nu.clone(), c);
            }
        }
        p_coeffs.insert(lam.clone(), coeffs);
    }

    // Expand (sum x_i)^d in the P-basis: triangular back-substitution.
    let mut b_factors: BTreeMap<Partition, Rat> = BTreeMap::new();
    for (li, lam) in partitions.iter().enumerate() {
        let mut b = multinomial(lam);
        for prior in partitions.iter().take(li) {
            if let Some(c) = p_coeffs[prior].get(lam) {
                b -= &b_factors[prior] * c;
            }
        }
        b_factors.insert(lam.clone(), b);
    }

    // Assemble C = b * P and verify the defining normalization exactly.
    let mut entries: BTreeMap<Partition, Arc<JackEntry>> = BTreeMap::new();
    let mut norm_check: BTreeMap<Partition, Rat> = BTreeMap::new();
    for lam in &partitions {
        let b = b_factors[lam].clone();
        let c_mcoeffs: BTreeMap<Partition, Rat> = p_coeffs[lam]
            .iter()
            .map(|(mu, c)| (mu.clone(), c * &b))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut c_poly = MultiPoly::zero(n);
        for (mu, c) in &c_mcoeffs {
            c_poly = c_poly.checked_add(&m_polys[mu].scalar_mul(c))?;
            *norm_check.entry(mu.clone()).or_insert_with(Rat::zero) += c;
        }
        let c_at_one: Rat = c_mcoeffs
            .iter()
            .map(|(mu, c)| c * monomial_symmetric_at_ones(mu, n))
            .sum();
        let c_float = c_poly.float_terms();
        entries.insert(
            lam.clone(),
            Arc::new(JackEntry {
                partition: lam.clone(),
                p_mcoeffs: p_coeffs[lam].clone(),
                b,
                c_mcoeffs,
                c_poly,
                c_at_one,
                c_float,
            }),
        );
    }
    for lam in &partitions {
        let got = norm_check.get(lam).cloned().unwrap_or_else(Rat::zero);
        if got != multinomial(lam) {
            return Err(Error::Internal(format!(
                "normalization failure at degree {d}: sum of C coefficients at m_{lam} is {got}"
            )));
        }
    }

    Ok(DegreeBlock {
        partitions,
        entries,
    })
}

/// Stability of Jack polynomials under dropping trailing variables:
/// restriction of the n-variable C_lambda to the first `r` variables equals
/// the r-variable C_lambda if l(lambda) <= r and vanishes otherwise.
/// Checked exactly.
pub fn stability_check(
    lam: &Partition,
    table_n: &JackTable,
    table_r: &JackTable,
) -> Result<bool> {
    if table_n.alpha() != table_r.alpha() {
        return Err(Error::InvalidArgument(
            "stability check requires matching alpha".into(),
        ));
    }
    let r = table_r.n();
    if r >= table_n.n() {
        return Err(Error::InvalidArgument(
            "stability check requires r < n".into(),
        ));
    }
    let big = table_n.entry(lam)?;
    let restricted = big.c_poly.restrict_vars(r)?;
    if lam.length() > r {
        return Ok(restricted.is_zero());
    }
    let small = table_r.entry(lam)?;
    Ok(restricted == small.c_poly)
}

type CacheKey = (usize, Rat);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<JackTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<JackTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared table for (n, alpha), deepened to at least `min_degree`.
pub fn cached_table(n: usize, alpha: &Rat, min_degree: u32) -> Result<Arc<JackTable>> {
    let key = (n, alpha.clone());
    let existing = {
        let map = cache().lock().expect("jack cache lock");
        map.get(&key).cloned()
    };
    match existing {
        Some(t) => {
            t.ensure_degree(min_degree)?;
            Ok(t)
        }
        None => {
            let t = JackTable::new(n, alpha.clone(), min_degree)?;
            let mut map = cache().lock().expect("jack cache lock");
            Ok(map.entry(key).or_insert(t).clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma::gpochhammer;
    use crate::scalar::rat;
    use num_complex::Complex64;

    #[test]
    fn degree_one_is_coordinate_sum() {
        for n in 1..=4 {
            let t = JackTable::new(n, rat(7, 3), 1).unwrap();
            let lam = Partition::row(1);
            let e = t.entry(&lam).unwrap();
            assert_eq!(e.c_poly, MultiPoly::coordinate_sum(n));
        }
    }

    #[test]
    fn degree_two_closed_form() {
        // C_(2) = m_(2) + 2/(1+alpha) m_(1,1), C_(1,1) = 2 alpha/(1+alpha) m_(1,1)
        for alpha in [rat(1, 2), rat_int(1), rat_int(2), rat(7, 5)] {
            let t = JackTable::new(2, alpha.clone(), 2).unwrap();
            let two = t.entry(&Partition::row(2)).unwrap();
            let pair = t.entry(&Partition::ones(2)).unwrap();
            let m2 = Partition::row(2);
            let m11 = Partition::ones(2);
            let denom = Rat::one() + &alpha;
            assert_eq!(two.c_mcoeffs[&m2], Rat::one());
            assert_eq!(two.c_mcoeffs[&m11], rat_int(2) / &denom);
            assert_eq!(pair.c_mcoeffs[&m11], rat_int(2) * &alpha / &denom);
            assert!(pair.c_mcoeffs.get(&m2).is_none());
        }
    }

    #[test]
    fn normalization_reverified_by_expansion() {
        // Independent route: expand (x1+x2+x3)^4 as a polynomial and compare.
        let t = JackTable::new(3, rat_int(2), 4).unwrap();
        let mut sum = MultiPoly::zero(3);
        for e in t.entries_of_degree(4).unwrap() {
            sum = sum.checked_add(&e.c_poly).unwrap();
        }
        assert_eq!(sum, MultiPoly::coordinate_sum(3).pow(4));
    }

    #[test]
    fn coefficients_nonnegative_small_grid() {
        for alpha in [rat(1, 2), rat_int(1), rat_int(3)] {
            let t = JackTable::new(3, alpha, 5).unwrap();
            for m in 0..=5u32 {
                for e in t.entries_of_degree(m).unwrap() {
                    assert!(
                        e.c_poly.terms().all(|(_, c)| !c.is_negative()),
                        "negative coefficient in C_{} at alpha {}",
                        e.partition,
                        t.alpha()
                    );
                    assert!(e.c_poly.is_homogeneous());
                }
            }
        }
    }

    #[test]
    fn at_ones_examples() {
        // C_(1)(1_r) / C_(1)(1_n) = r/n
        let t = JackTable::new(4, rat(3, 2), 1).unwrap();
        let lam = Partition::row(1);
        for r in 0..=4usize {
            let v = t.at_ones(&lam, r).unwrap();
            assert_eq!(v, rat_int(r as i64));
        }
        // l(lambda) > r gives 0
        let t = JackTable::new(3, rat_int(2), 3).unwrap();
        let lam = Partition::ones(3);
        assert_eq!(t.at_ones(&lam, 2).unwrap(), Rat::zero());
    }

    #[test]
    fn ratio_identity_at_spec_point() {
        // lambda = (2), n = 2, alpha = 2 (k = 1/2): ratio at r = 1 is 3/8.
        let t = JackTable::new(2, rat_int(2), 2).unwrap();
        let lam = Partition::row(2);
        let num = t.at_ones(&lam, 1).unwrap();
        let den = t.at_ones(&lam, 2).unwrap();
        assert_eq!(num / den, rat(3, 8));
        let k = t.k();
        let rhs = gpochhammer(&k, &lam, &k) / gpochhammer(&(k.clone() * rat_int(2)), &lam, &k);
        assert_eq!(rhs, rat(3, 8));
    }

    #[test]
    fn ratio_identity_across_table() {
        // C_lambda(1_r)/C_lambda(1_n) = [kr]_lambda / [kn]_lambda, exactly.
        for alpha in [rat_int(2), rat(1, 2), rat_int(3)] {
            let t = JackTable::new(3, alpha, 4).unwrap();
            let k = t.k();
            for m in 0..=4u32 {
                for e in t.entries_of_degree(m).unwrap() {
                    let c1n = e.at_ones(3);
                    assert!(!c1n.is_zero());
                    for r in 0..=3usize {
                        let lhs = e.at_ones(r) / &c1n;
                        let rhs = gpochhammer(&(&k * rat_int(r as i64)), &e.partition, &k)
                            / gpochhammer(&(&k * rat_int(3)), &e.partition, &k);
                        assert_eq!(lhs, rhs, "lambda={} r={r}", e.partition);
                    }
                }
            }
        }
    }

    #[test]
    fn stability_examples() {
        let alpha = rat(3, 2);
        let tn = JackTable::new(3, alpha.clone(), 5).unwrap();
        let tr = JackTable::new(2, alpha, 5).unwrap();
        // lambda = (1): restriction of the coordinate sum
        assert!(stability_check(&Partition::row(1), &tn, &tr).unwrap());
        // lambda = (1,1,1): too long for two variables, restriction is 0
        assert!(stability_check(&Partition::ones(3), &tn, &tr).unwrap());
        // exhaustive through degree 5
        for m in 0..=5u32 {
            for lam in tn.partitions_of_degree(m).unwrap() {
                assert!(stability_check(&lam, &tn, &tr).unwrap(), "lambda={lam}");
            }
        }
    }

    #[test]
    fn pointwise_bound_and_series_bound() {
        let t = JackTable::new(3, rat_int(2), 5).unwrap();
        let pts = [
            [
                Complex64::new(0.3, -0.8),
                Complex64::new(-1.1, 0.2),
                Complex64::new(0.9, 0.4),
            ],
            [
                Complex64::new(-0.5, 0.0),
                Complex64::new(0.7, -0.3),
                Complex64::new(0.1, 1.2),
            ],
        ];
        for z in &pts {
            let zn = z.iter().map(|c| c.norm()).fold(0.0, f64::max);
            for m in 0..=5u32 {
                let mut series = 0.0;
                for e in t.entries_of_degree(m).unwrap() {
                    let v = e.c_poly.eval_c64(z);
                    let at1 = crate::scalar::rat_to_f64(&e.c_at_one);
                    // |C(z)| <= C(1) ||z||^m, relative slack 1e-12
                    assert!(
                        v.norm() <= at1 * zn.powi(m as i32) * (1.0 + 1e-12),
                        "pointwise bound fails for {} at degree {m}",
                        e.partition
                    );
                    series += v.norm() * v.norm() / at1;
                }
                // sum |C(z) C(w)| / C(1) <= (n ||z|| ||w||)^m with w = z
                assert!(series <= (3.0 * zn * zn).powi(m as i32) * (1.0 + 1e-12));
            }
        }
    }

    #[test]
    fn shallow_table_errors() {
        let t = JackTable::new(2, rat_int(2), 2).unwrap();
        let lam = Partition::row(3);
        assert!(matches!(
            t.entry(&lam),
            Err(Error::TableTooShallow { .. })
        ));
        t.ensure_degree(3).unwrap();
        assert!(t.entry(&lam).is_ok());
    }

    #[test]
    fn cache_returns_shared_table() {
        let a = cached_table(2, &rat(9, 4), 2).unwrap();
        let b = cached_table(2, &rat(9, 4), 4).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert!(a.max_degree() >= 4);
    }
}
