//! Riesz densities, the generalized Wallach classifier with exact sign
//! witnesses, and the discrete Wallach boundary measures with their
//! Laplace-transform verification.
//!
//! The generalized Wallach set is W_k = {0, k, ..., k(n-1)} union
//! (k(n-1), infinity); the classifier decides membership exactly for
//! rational indices and produces the partition (1^{r+1}) with
//! [mu]_{(1^{r+1})}^k < 0 as a witness in every gap.

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{gamma_n, gamma_n_complex, gpochhammer, normalization_constants};
use crate::hyp::binomial_product_truncated;
use crate::jack::JackTable;
use crate::laplace::{
    chamber_integrate, cost_warning, Domain, IdentityReport, Integrand, KernelEval, QuadratureJob,
};
use crate::partition::{enumerate_partitions, Partition};
use crate::poly::MultiPoly;
use crate::scalar::{bigfloat as bf, rat_int, rat_to_f64, ComplexRat, Prec, Rat};

/// Function-regime Riesz density g_mu(x) = D(x)^{mu-mu0-1} / (d_n Gamma_n),
/// defined for Re mu > mu0 = k(n-1) and x strictly positive.
pub struct RieszDensity {
    n: usize,
    mu: ComplexRat,
    mu0: Rat,
    /// 1 / (d_n(k) Gamma_n(mu;k)), precomputed.
    norm: Complex64,
}

impl RieszDensity {
    pub fn new(n: usize, k: &Rat, mu: ComplexRat, prec: Prec) -> Result<RieszDensity> {
        if !k.is_positive() {
            return Err(Error::InvalidArgument(format!(
                "riesz density needs k > 0, got {k}"
            )));
        }
        let mu0 = k * rat_int(n as i64 - 1);
        if mu.re <= mu0 {
            return Err(Error::DistributionOnly(format!(
                "Re mu = {} <= k(n-1) = {mu0}: the Riesz object is a distribution, \
                 not a density",
                mu.re
            )));
        }
        let norm = if mu.is_real() {
            let g = gamma_n(&mu.re, n, k, prec)?;
            let (d, _) = normalization_constants(n, k, prec)?;
            Complex64::new(1.0 / bf::to_f64(&bf::mul(&d, &g, prec)), 0.0)
        } else {
            let g = gamma_n_complex(mu.to_c64(), n, rat_to_f64(k));
            let (d, _) = normalization_constants(n, k, prec)?;
            (g * bf::to_f64(&d)).inv()
        };
        Ok(RieszDensity { n, mu, mu0, norm })
    }

    /// Density value at a strictly positive point, principal-branch power.
    pub fn eval(&self, x: &[f64]) -> Result<Complex64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        if x.iter().any(|&v| v <= 0.0) {
            return Err(Error::Domain(
                "riesz density is defined on the open positive orthant".into(),
            ));
        }
        let ln_d: f64 = x.iter().map(|v| v.ln()).sum();
        let exponent = self.mu.to_c64() - rat_to_f64(&self.mu0) - 1.0;
        Ok(self.norm * (exponent * ln_d).exp())
    }
}

/// Classification outcome for one index mu.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "r")]
pub enum Verdict {
    /// mu real with mu > k(n-1): the absolutely continuous regime.
    PositiveMeasureContinuous,
    /// mu = k r for r in {0, ..., n-1}: boundary-supported measure of rank r.
    PositiveMeasureDiscrete(usize),
    /// Not a positive measure (real gap indices and non-real candidates).
    NotPositiveMeasure,
    /// Cannot even be a complex measure by the necessary condition.
    NotAMeasureCandidate,
}

#[derive(Debug, Clone, Serialize)]
pub struct WallachVerdict {
    pub verdict: Verdict,
    /// Gap witness (1^{r+1}) with a strictly negative Pochhammer value.
    pub witness: Option<Partition>,
    /// [mu]_witness^k, exact.
    #[serde(serialize_with = "crate::scalar::serialize_opt_rat")]
    pub witness_value: Option<Rat>,
    /// Whether mu survives the necessary condition for being a complex
    /// measure: Re mu > mu0, or mu in [0, inf) meeting the pole lattice.
    pub candidate_complex_measure: bool,
    pub notes: String,
}

/// Is real mu on the lattice {0, k, ..., k(n-1)} - N_0 intersected with
/// [0, inf)?
fn on_candidate_lattice(mu: &Rat, n: usize, k: &Rat) -> bool {
    if mu.is_negative() {
        return false;
    }
    for j in 0..n {
        let diff = k * rat_int(j as i64) - mu;
        if diff.is_integer() && !diff.is_negative() {
            return true;
        }
    }
    false
}

/// Discrete Wallach rank when mu = k r exactly, r in {0, ..., n-1}.
fn discrete_rank(mu: &Rat, n: usize, k: &Rat) -> Option<usize> {
    let ratio = mu / k;
    if !ratio.is_integer() || ratio.is_negative() {
        return None;
    }
    let r = ratio.to_integer().to_usize()?;
    (r < n).then_some(r)
}

/// Number of Wallach points strictly below a real non-Wallach mu; the gap
/// witness is (1^{r+1}).
fn gap_rank(mu: &Rat, k: &Rat) -> usize {
    if mu.is_negative() {
        return 0;
    }
    let ratio = mu / k;
    ratio.floor().to_integer().to_usize().map_or(0, |f| f + 1)
}

/// Exact classification of an index against the generalized Wallach set.
pub fn wallach_classify(mu: &ComplexRat, n: usize, k: &Rat) -> Result<WallachVerdict> {
    if !k.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "wallach classification needs k > 0, got {k}"
        )));
    }
    let mu0 = k * rat_int(n as i64 - 1);

    if !mu.is_real() {
        let candidate = mu.re > mu0;
        return Ok(WallachVerdict {
            verdict: if candidate {
                Verdict::NotPositiveMeasure
            } else {
                Verdict::NotAMeasureCandidate
            },
            witness: None,
            witness_value: None,
            candidate_complex_measure: candidate,
            notes: if candidate {
                "non-real index over the continuous regime: a complex measure, never positive"
                    .into()
            } else {
                "non-real index with Re mu <= k(n-1) fails the necessary condition".into()
            },
        });
    }

    let mu = &mu.re;
    if mu > &mu0 {
        return Ok(WallachVerdict {
            verdict: Verdict::PositiveMeasureContinuous,
            witness: None,
            witness_value: None,
            candidate_complex_measure: true,
            notes: format!("mu > mu0 = {mu0}: absolutely continuous positive measure"),
        });
    }
    if let Some(r) = discrete_rank(mu, n, k) {
        return Ok(WallachVerdict {
            verdict: Verdict::PositiveMeasureDiscrete(r),
            witness: None,
            witness_value: None,
            candidate_complex_measure: true,
            notes: if r == 0 {
                "mu = 0: the point mass at the origin".into()
            } else {
                format!("mu = {r}k: boundary measure on the rank-{r} stratum")
            },
        });
    }
    if mu.is_negative() {
        return Ok(WallachVerdict {
            verdict: Verdict::NotAMeasureCandidate,
            witness: None,
            witness_value: None,
            candidate_complex_measure: false,
            notes: "negative real index: cannot be a measure (unbounded Laplace image)".into(),
        });
    }
    // Real, inside a gap (k(r-1), k r).
    let r = gap_rank(mu, k);
    let witness = Partition::ones(r + 1);
    let value = gpochhammer(mu, &witness, k);
    if !value.is_negative() {
        return Err(Error::Internal(format!(
            "gap witness {witness} for mu = {mu} has nonnegative value {value}"
        )));
    }
    let candidate = on_candidate_lattice(mu, n, k);
    Ok(WallachVerdict {
        verdict: Verdict::NotPositiveMeasure,
        witness: Some(witness),
        witness_value: Some(value),
        candidate_complex_measure: candidate,
        notes: if candidate {
            "gap index on the candidate lattice: not positive; complex-measure status \
             undetermined by the theory"
                .into()
        } else {
            "gap index off the candidate lattice: not a measure".into()
        },
    })
}

/// Gap witness only: (1^{r+1}) with [mu]^k < 0 for real mu outside W_k,
/// None on the Wallach set itself.
pub fn sign_witness(mu: &Rat, n: usize, k: &Rat) -> Result<Option<Partition>> {
    if !k.is_positive() {
        return Err(Error::InvalidArgument("sign witness needs k > 0".into()));
    }
    let mu0 = k * rat_int(n as i64 - 1);
    if mu > &mu0 || discrete_rank(mu, n, k).is_some() {
        return Ok(None);
    }
    let r = gap_rank(mu, k);
    Ok(Some(Partition::ones(r + 1)))
}

/// Scans every partition of weight <= max_degree and length <= n for a
/// negative Pochhammer value; None means all nonnegative.
pub fn nonneg_scan(mu: &Rat, n: usize, k: &Rat, max_degree: u32) -> Option<Partition> {
    for m in 0..=max_degree {
        for lam in enumerate_partitions(m, n) {
            if gpochhammer(mu, &lam, k).is_negative() {
                return Some(lam);
            }
        }
    }
    None
}

/// Discrete Wallach measure R_{kr}: the symmetrized product of an
/// r-variable Riesz density with exponent kn and a point mass at zero in
/// the remaining coordinates, supported on the rank-r boundary stratum.
#[derive(Debug, Clone)]
pub struct DiscreteWallachMeasure {
    pub n: usize,
    pub r: usize,
    pub k: Rat,
}

impl DiscreteWallachMeasure {
    pub fn new(n: usize, r: usize, k: Rat) -> Result<Self> {
        if !k.is_positive() {
            return Err(Error::InvalidArgument("need k > 0".into()));
        }
        if r >= n {
            return Err(Error::InvalidArgument(format!(
                "rank r must be in 0..={}, got {r}",
                n - 1
            )));
        }
        Ok(DiscreteWallachMeasure { n, r, k })
    }

    /// Laplace transform at constant spectral argument z = c 1 for the
    /// degenerate rank-0 case: exactly 1 (the point mass at the origin).
    pub fn laplace_at_origin_rank(&self) -> Option<Complex64> {
        (self.r == 0).then(|| Complex64::one())
    }
}

/// Verifies L_k(R_{kr})(z) = D(z)^{-kr} by r-dimensional chamber
/// quadrature of the boundary-stratum integral
/// (1/(d_r Gamma_r(kn;k))) int J((x', 0), -z) D(x')^{k(n-r+1)-1} omega_k dx'.
pub fn discrete_wallach_laplace_check(
    n: usize,
    r: usize,
    k: &Rat,
    z: &[Complex64],
    rel_tol: f64,
    prec: Prec,
) -> Result<IdentityReport> {
    let measure = DiscreteWallachMeasure::new(n, r, k.clone())?;
    if z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: z.len(),
        });
    }
    if z.iter().any(|v| v.re <= 0.0) {
        return Err(Error::Domain("need z in H_n(0)".into()));
    }
    let kr = k * rat_int(r as i64);
    let krf = rat_to_f64(&kr);
    let mut reference = Complex64::one();
    for zj in z {
        reference *= zj.powf(-krf);
    }
    if r == 0 {
        // L_k(delta_0) = 1 exactly; D(z)^0 = 1.
        let trivial = crate::quad::QuadResult {
            value: Complex64::one(),
            error_estimate: 0.0,
            subdivisions: 0,
        };
        return Ok(IdentityReport::new(
            format!("discrete-wallach n={n} r=0 k={k}"),
            measure.laplace_at_origin_rank().expect("rank 0"),
            reference,
            &trivial,
            rel_tol,
        ));
    }
    if let Some(w) = cost_warning(r) {
        return Err(Error::CostCap(w));
    }
    let alpha = rat_to_f64(&(Rat::one() / k));
    let kernel = KernelEval::select(n, r, z, alpha)?;
    let power = rat_to_f64(&(k * rat_int((n - r + 1) as i64) - Rat::one()));
    let job = QuadratureJob {
        dim: r,
        k: rat_to_f64(k),
        domain: Domain::Orthant,
        integrand: Integrand::KernelPower {
            kernel,
            power,
            shift: 0.0,
        },
        rel_tol: rel_tol / 4.0,
        max_cells: if r == 1 { 4_000 } else { 60_000 },
    };
    let quad = chamber_integrate(&job)?;
    let kn = k * rat_int(n as i64);
    let (d_r, _) = normalization_constants(r, k, prec)?;
    let g_r = gamma_n(&kn, r, k, prec)?;
    let norm = 1.0 / bf::to_f64(&bf::mul(&d_r, &g_r, prec));
    Ok(IdentityReport::new(
        format!("discrete-wallach n={n} r={r} k={k}"),
        quad.value * norm,
        reference,
        &quad,
        rel_tol,
    ))
}

/// Exact degree-by-degree form of the same identity: the truncation of
/// D(z + 1)^{-kr} equals sum over lambda of [kr]_lambda C_lambda(-z)/|l|!,
/// which collapses to length <= r because [kr]_lambda vanishes beyond.
#[derive(Debug)]
pub struct SeriesConsistencyReport {
    pub vanishing_ok: bool,
    pub per_degree: Vec<(u32, bool)>,
    pub all_equal: bool,
}

pub fn discrete_wallach_series_check(
    n: usize,
    r: usize,
    table: &JackTable,
    max_degree: u32,
) -> Result<SeriesConsistencyReport> {
    if r >= n || table.n() != n {
        return Err(Error::InvalidArgument(
            "series check needs r < n and a matching table".into(),
        ));
    }
    table.ensure_degree(max_degree)?;
    let k = table.k();
    let a = &k * rat_int(r as i64);

    // Vanishing beyond length r, exactly.
    let mut vanishing_ok = true;
    for m in 0..=max_degree {
        for lam in table.partitions_of_degree(m)? {
            if lam.length() > r && !gpochhammer(&a, &lam, &k).is_zero() {
                vanishing_ok = false;
            }
        }
    }

    // Per-degree identity with the sign of C_lambda(-z) folded in.
    let rhs_full = binomial_product_truncated(&a, n, max_degree)?;
    let mut per_degree = Vec::new();
    let mut all_equal = vanishing_ok;
    for m in 0..=max_degree {
        let m_fact = Rat::from_integer(crate::gamma::factorial(m));
        let sign = if m % 2 == 0 { Rat::one() } else { -Rat::one() };
        let mut lhs = MultiPoly::zero(n);
        for entry in table.entries_of_degree(m)? {
            if entry.partition.length() > r {
                continue;
            }
            let coeff = gpochhammer(&a, &entry.partition, &k) * &sign / &m_fact;
            lhs = lhs.checked_add(&entry.c_poly.scalar_mul(&coeff))?;
        }
        let equal = lhs == rhs_full.homogeneous_component(m);
        all_equal &= equal;
        per_degree.push((m, equal));
    }
    Ok(SeriesConsistencyReport {
        vanishing_ok,
        per_degree,
        all_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p50() -> Prec {
        Prec::from_digits(50)
    }

    fn real(n: i64, d: i64) -> ComplexRat {
        ComplexRat::real(rat(n, d))
    }

    #[test]
    fn density_examples() {
        // n=1, mu=1: the density is the constant 1/Gamma(1) = 1.
        let d = RieszDensity::new(1, &rat(1, 2), real(1, 1), p50()).unwrap();
        assert!((d.eval(&[0.7]).unwrap().re - 1.0).abs() < 1e-12);
        // n=2, k=1/2, mu=2 at x=(1,1): 1/(d_2 Gamma_2(2;1/2)) = 1.
        let d = RieszDensity::new(2, &rat(1, 2), real(2, 1), p50()).unwrap();
        let v = d.eval(&[1.0, 1.0]).unwrap();
        assert!((v.re - 1.0).abs() < 1e-12, "{v}");
        // regime boundary mu = mu0 errors
        assert!(matches!(
            RieszDensity::new(2, &rat(1, 2), real(1, 2), p50()),
            Err(Error::DistributionOnly(_))
        ));
        // boundary x errors
        assert!(d.eval(&[1.0, 0.0]).is_err());
    }

    #[test]
    fn classify_zero_is_delta() {
        let v = wallach_classify(&real(0, 1), 3, &rat(1, 2)).unwrap();
        assert_eq!(v.verdict, Verdict::PositiveMeasureDiscrete(0));
        assert!(v.candidate_complex_measure);
    }

    #[test]
    fn classify_gap_with_witness() {
        // n=3, k=1/2, mu=3/4 in the gap (1/2, 1): witness (1,1,1) with
        // value (3/4)(1/4)(-1/4) < 0.
        let v = wallach_classify(&real(3, 4), 3, &rat(1, 2)).unwrap();
        assert_eq!(v.verdict, Verdict::NotPositiveMeasure);
        assert_eq!(v.witness, Some(Partition::ones(3)));
        assert_eq!(v.witness_value, Some(rat(3, 4) * rat(1, 4) * rat(-1, 4)));
    }

    #[test]
    fn classify_negative_index() {
        // n=2, k=3/4, mu=-1/4: off [0, inf), not a measure at all.
        let v = wallach_classify(&real(-1, 4), 2, &rat(3, 4)).unwrap();
        assert_eq!(v.verdict, Verdict::NotAMeasureCandidate);
        assert!(!v.candidate_complex_measure);
    }

    #[test]
    fn classify_complex_indices() {
        let mu = ComplexRat {
            re: rat(5, 2),
            im: rat(1, 3),
        };
        let v = wallach_classify(&mu, 2, &rat(1, 2)).unwrap();
        assert_eq!(v.verdict, Verdict::NotPositiveMeasure);
        assert!(v.candidate_complex_measure);
        assert!(v.witness.is_none());
        let mu = ComplexRat {
            re: rat(1, 4),
            im: rat(1, 3),
        };
        let v = wallach_classify(&mu, 2, &rat(1, 2)).unwrap();
        assert_eq!(v.verdict, Verdict::NotAMeasureCandidate);
    }

    #[test]
    fn witness_examples() {
        // mu just above mu0: none, and the scan stays clean.
        let k = rat(1, 2);
        let mu = &k * rat_int(1) + Rat::one(); // k(n-1) + 1 for n=2
        assert!(sign_witness(&mu, 2, &k).unwrap().is_none());
        assert!(nonneg_scan(&mu, 2, &k, 6).is_none());
        // mu = k/2: witness (1,1) with value (k/2)(-k/2).
        let half_k = &k / rat_int(2);
        assert_eq!(
            sign_witness(&half_k, 3, &k).unwrap(),
            Some(Partition::ones(2))
        );
        assert_eq!(
            gpochhammer(&half_k, &Partition::ones(2), &k),
            &half_k * (&half_k - &k)
        );
        // mu = kr exactly: boundary, no witness, scan clean.
        for r in 0..3i64 {
            let mu = &k * rat_int(r);
            assert!(sign_witness(&mu, 4, &k).unwrap().is_none());
            assert!(nonneg_scan(&mu, 4, &k, 6).is_none(), "r={r}");
        }
    }

    #[test]
    fn iff_sign_property_on_grid() {
        // mu in W_k iff every Pochhammer value through degree >= n is >= 0.
        let n = 3;
        for k in [rat(1, 3), rat_int(2)] {
            let mu0 = &k * rat_int(n as i64 - 1);
            let step = &k / rat_int(4);
            for i in -4..=((4 * (n + 1)) as i64) {
                let mu = &step * rat_int(i);
                let in_wallach = mu > mu0
                    || (!mu.is_negative() && discrete_rank(&mu, n, &k).is_some());
                let scan_clean = nonneg_scan(&mu, n, &k, n as u32).is_none();
                assert_eq!(in_wallach, scan_clean, "mu={mu} k={k}");
                if !in_wallach && !mu.is_negative() {
                    let w = sign_witness(&mu, n, &k).unwrap().expect("gap witness");
                    assert!(gpochhammer(&mu, &w, &k).is_negative());
                }
            }
        }
    }

    #[test]
    fn discrete_wallach_rank_zero_is_exact() {
        let z = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        let rep =
            discrete_wallach_laplace_check(2, 0, &rat(1, 2), &z, 1e-12, p50()).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.computed_re, 1.0);
        assert_eq!(rep.reference_re, 1.0);
    }

    #[test]
    fn discrete_wallach_quadrature_n2() {
        // n=2, r=1, k=1/2, z=(1,2): integral = (z1 z2)^{-1/2}.
        let z = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        for k in [rat(1, 2), rat_int(1)] {
            let rep = discrete_wallach_laplace_check(2, 1, &k, &z, 1e-4, p50()).unwrap();
            assert!(rep.pass, "k={k}: {rep:?}");
        }
    }

    #[test]
    fn discrete_wallach_quadrature_n3_spec_example() {
        // n=3, r=1, k=1/2, z = 2*1: reference 8^{-1/2}.
        let z = [Complex64::new(2.0, 0.0); 3];
        let rep = discrete_wallach_laplace_check(3, 1, &rat(1, 2), &z, 1e-3, p50()).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!((rep.reference_re - 8.0f64.powf(-0.5)).abs() < 1e-14);
    }

    #[test]
    fn series_identity_small() {
        let table = JackTable::new(2, rat_int(2), 4).unwrap();
        let rep = discrete_wallach_series_check(2, 1, &table, 4).unwrap();
        assert!(rep.vanishing_ok);
        assert!(rep.all_equal, "{:?}", rep.per_degree);
    }
}
