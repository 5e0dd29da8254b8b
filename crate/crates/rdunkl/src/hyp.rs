//! Numeric evaluation of the type-A Bessel kernel J_k^A and exact
//! per-degree verification of the 1F0 binomial formula.
//!
//! `bessel_j` sums the 0F0 Jack expansion literally, certifying the
//! truncation with the exponential majorant sum_{m>M} t^m/m! for
//! t = n ||x||_inf ||z||_inf and deepening the backing table on demand.
//!
//! Two closed kernel routes back the quadrature layer, where arguments are
//! far outside desk-scale series range: a two-variable reduction to 0F1 and
//! a single-row expansion driven by power sums. Both are cross-checked
//! against the series evaluator in the test suite.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gamma::{gpochhammer, pochhammer};
use crate::jack::JackTable;
use crate::poly::MultiPoly;
use crate::scalar::{rat_int, rat_to_f64, Rat};

/// Result of a certified series evaluation.
#[derive(Debug, Clone, Copy)]
pub struct SeriesEval {
    pub value: Complex64,
    pub truncation_degree: u32,
    pub tail_bound: f64,
}

/// Hard cap on the Jack-series degree; beyond this f64 factorials overflow
/// and the table cost is far past desk scale.
pub const MAX_SERIES_DEGREE: u32 = 160;

/// J_k^A(x, z) via the Jack 0F0 expansion, summed through the first degree
/// M whose exponential tail bound drops below `tol` times the partial sum.
///
/// The table fixes n and alpha = 1/k and is deepened as needed.
pub fn bessel_j(
    x: &[f64],
    z: &[Complex64],
    table: &JackTable,
    tol: f64,
    max_degree: u32,
) -> Result<SeriesEval> {
    let n = table.n();
    if x.len() != n || z.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: x.len().max(z.len()),
        });
    }
    let max_degree = max_degree.min(MAX_SERIES_DEGREE);
    let xn = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    let zn = z.iter().fold(0.0f64, |a, v| a.max(v.norm()));
    let t = n as f64 * xn * zn;

    let mut partial = Complex64::zero();
    let mut m_fact = 1.0f64;
    let mut tau = 1.0f64; // t^{m+1} / (m+1)! rolling
    for m in 0..=max_degree {
        table.ensure_degree(m)?;
        if m > 0 {
            m_fact *= f64::from(m);
        }
        let mut degree_sum = Complex64::zero();
        for entry in table.entries_of_degree(m)? {
            let cx = eval_float_terms_real(&entry.c_float, x);
            let cz = eval_float_terms_complex(&entry.c_float, z);
            degree_sum += cx * cz / rat_to_f64(&entry.c_at_one);
        }
        partial += degree_sum / m_fact;
        tau *= t / f64::from(m + 1);
        let tail = if t < f64::from(m + 2) {
            tau / (1.0 - t / f64::from(m + 2))
        } else {
            f64::INFINITY
        };
        if tail <= tol * partial.norm() {
            return Ok(SeriesEval {
                value: partial,
                truncation_degree: m,
                tail_bound: tail,
            });
        }
    }
    let achieved = if t < f64::from(max_degree + 2) {
        tau / (1.0 - t / f64::from(max_degree + 2))
    } else {
        f64::INFINITY
    };
    Err(Error::Truncation {
        degree: max_degree as usize,
        achieved,
        target: tol * partial.norm(),
        value_re: partial.re,
        value_im: partial.im,
    })
}

fn eval_float_terms_real(terms: &[(Vec<u32>, f64)], x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for (exps, c) in terms {
        let mut t = *c;
        for (v, &e) in x.iter().zip(exps) {
            if e > 0 {
                t *= v.powi(e as i32);
            }
        }
        acc += t;
    }
    acc
}

fn eval_float_terms_complex(terms: &[(Vec<u32>, f64)], z: &[Complex64]) -> Complex64 {
    let mut acc = Complex64::zero();
    for (exps, c) in terms {
        let mut t = Complex64::new(*c, 0.0);
        for (v, &e) in z.iter().zip(exps) {
            if e > 0 {
                t *= v.powi(e as i32);
            }
        }
        acc += t;
    }
    acc
}

/// Checks J(x, z + s 1) = e^{s sum x} J(x, z) with two independent series
/// evaluations, within their combined certified tails.
pub fn shift_factorization_check(
    x: &[f64],
    z: &[Complex64],
    s: f64,
    table: &JackTable,
    tol: f64,
    max_degree: u32,
) -> Result<bool> {
    let shifted: Vec<Complex64> = z.iter().map(|v| v + s).collect();
    let lhs = bessel_j(x, &shifted, table, tol, max_degree)?;
    let rhs = bessel_j(x, z, table, tol, max_degree)?;
    let factor = (s * x.iter().sum::<f64>()).exp();
    let combined = lhs.tail_bound
        + factor * rhs.tail_bound
        + 1e-12 * lhs.value.norm().max(factor * rhs.value.norm());
    Ok((lhs.value - factor * rhs.value).norm() <= combined)
}

/// Checks the exponential decay bound |J(-x, z)| <= e^{-s ||x||_1} for
/// x >= 0 and Re z >= s > 0 coordinatewise.
pub fn decay_bound_check(
    x: &[f64],
    z: &[Complex64],
    table: &JackTable,
    tol: f64,
    max_degree: u32,
) -> Result<bool> {
    if x.iter().any(|&v| v < 0.0) {
        return Err(Error::Domain(
            "decay bound needs x in the closed positive orthant".into(),
        ));
    }
    let s = z.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
    if s <= 0.0 {
        return Err(Error::Domain("decay bound needs min Re z > 0".into()));
    }
    let neg_x: Vec<f64> = x.iter().map(|&v| -v).collect();
    let eval = bessel_j(&neg_x, z, table, tol, max_degree)?;
    let bound = (-s * x.iter().sum::<f64>()).exp();
    Ok(eval.value.norm() <= bound * (1.0 + tol) + eval.tail_bound)
}

/// Per-degree exact verification of the binomial formula
/// 1F0(a; z) = prod_i (1 - z_i)^{-a}: for every m <= max_degree the degree-m
/// part of sum_lambda [a]_lambda^k C_lambda / |lambda|! must equal the
/// degree-m Taylor part of the product, monomial by monomial.
#[derive(Debug)]
pub struct BinomialReport {
    pub a: Rat,
    pub per_degree: Vec<(u32, bool)>,
    pub all_equal: bool,
}

pub fn binomial_check(a: &Rat, table: &JackTable, max_degree: u32) -> Result<BinomialReport> {
    table.ensure_degree(max_degree)?;
    let n = table.n();
    let k = table.k();

    // Taylor expansion of prod_i (1 - x_i)^{-a} through total degree
    // max_degree: product of univariate series sum_j (a)_j x_i^j / j!.
    let mut product = MultiPoly::one(n);
    for i in 0..n {
        let mut series = MultiPoly::zero(n);
        let mut coeff = Rat::one();
        for j in 0..=max_degree {
            if j > 0 {
                // (a)_j / j! built incrementally
                coeff = coeff * (a + rat_int(i64::from(j) - 1)) / rat_int(i64::from(j));
            }
            let mut exps = vec![0u32; n];
            exps[i] = j;
            series.add_term(crate::poly::Monomial::new(exps), coeff.clone());
        }
        product = product.checked_mul(&series)?.truncate_degree(max_degree);
    }

    let mut per_degree = Vec::new();
    let mut all_equal = true;
    for m in 0..=max_degree {
        let mut lhs = MultiPoly::zero(n);
        let m_fact = Rat::from_integer(crate::gamma::factorial(m));
        for entry in table.entries_of_degree(m)? {
            let coeff = gpochhammer(a, &entry.partition, &k) / &m_fact;
            lhs = lhs.checked_add(&entry.c_poly.scalar_mul(&coeff))?;
        }
        let rhs = product.homogeneous_component(m);
        let equal = lhs == rhs;
        all_equal &= equal;
        per_degree.push((m, equal));
    }
    Ok(BinomialReport {
        a: a.clone(),
        per_degree,
        all_equal,
    })
}

/// Complex value carried as `mantissa * exp(ln_scale)` so long series with
/// huge dynamic range stay inside f64.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    m: Complex64,
    ln: f64,
}

impl Scaled {
    pub fn zero() -> Self {
        Scaled {
            m: Complex64::zero(),
            ln: 0.0,
        }
    }

    pub fn new(v: Complex64) -> Self {
        let mut s = Scaled { m: v, ln: 0.0 };
        s.renorm();
        s
    }

    fn renorm(&mut self) {
        let n = self.m.norm();
        if n == 0.0 {
            self.ln = 0.0;
            return;
        }
        if !(1e-100..=1e100).contains(&n) {
            let shift = n.ln();
            self.m /= shift.exp();
            self.ln += shift;
        }
    }

    pub fn mul_c(&self, c: Complex64) -> Scaled {
        let mut s = Scaled {
            m: self.m * c,
            ln: self.ln,
        };
        s.renorm();
        s
    }

    pub fn add(&self, other: &Scaled) -> Scaled {
        if other.m.is_zero() {
            return *self;
        }
        if self.m.is_zero() {
            return *other;
        }
        let (hi, lo) = if self.ln >= other.ln {
            (self, other)
        } else {
            (other, self)
        };
        let delta = lo.ln - hi.ln;
        let mut s = if delta < -700.0 {
            *hi
        } else {
            Scaled {
                m: hi.m + lo.m * delta.exp(),
                ln: hi.ln,
            }
        };
        s.renorm();
        s
    }

    pub fn ln_norm(&self) -> f64 {
        if self.m.is_zero() {
            f64::NEG_INFINITY
        } else {
            self.m.norm().ln() + self.ln
        }
    }

    /// Value after multiplying by exp(extra); underflows to zero gracefully.
    pub fn value_with_exp(&self, extra: Complex64) -> Complex64 {
        if self.m.is_zero() {
            return Complex64::zero();
        }
        let total = self.ln + extra.re;
        let phase = Complex64::new(0.0, extra.im).exp();
        if total < -745.0 {
            return Complex64::zero();
        }
        self.m * phase * total.exp()
    }
}

/// 0F1(c; w) as a scaled value, with a geometric tail certificate.
/// Returns NaN mantissa only if 40000 terms do not reach the tolerance,
/// which cannot happen for the argument ranges the kernels produce.
pub(crate) fn hyp0f1_scaled(c: f64, w: Complex64) -> Scaled {
    let mut term = Scaled::new(Complex64::one());
    let mut acc = term;
    for j in 0..40_000u32 {
        let jf = f64::from(j);
        let ratio = w / ((c + jf) * (jf + 1.0));
        term = term.mul_c(ratio);
        acc = acc.add(&term);
        let r = ratio.norm();
        if r < 0.5 {
            // remaining tail <= |term| r / (1 - r)
            let tail_ln = term.ln_norm() + (r / (1.0 - r)).max(1e-300).ln();
            if tail_ln < acc.ln_norm() - 37.0 {
                return acc;
            }
        }
    }
    Scaled::new(Complex64::new(f64::NAN, f64::NAN))
}

/// Closed form for two variables: the A_1 reduction
/// J((x1,x2),(z1,z2)) = e^{(x1+x2)(z1+z2)/2} 0F1(k + 1/2; ((x1-x2)(z1-z2)/4)^2).
///
/// Valid for every argument scale; used by the quadrature layer and
/// cross-checked against the series evaluator in tests.
pub fn bessel_j_two_vars(x: [f64; 2], z: [Complex64; 2], k: f64) -> Complex64 {
    let exponent = (z[0] + z[1]) * ((x[0] + x[1]) / 2.0);
    let w = (z[0] - z[1]) * ((x[0] - x[1]) / 4.0);
    hyp0f1_scaled(k + 0.5, w * w).value_with_exp(exponent)
}

/// Single-row kernel: evaluates J((x, 0, ..., 0), -z) for scalar x >= 0 and
/// fixed z with min Re z > 0.
///
/// Stability kills every partition longer than one row, so
/// J((x,0,...),w) = sum_m x^m C~_(m)(w) / m! with
/// C~_(m)(w) = g_m(w;alpha)/g_m(1_n;alpha) and g_m the alpha-deformed
/// complete homogeneous functions, generated by the power-sum recurrence
/// m g_m = (1/alpha) sum_{j<=m} p_j g_{m-j}. The spectral argument is
/// centered first, so the series parameter is x * spread(z)/2.
pub struct SingleRowKernel {
    center: f64,
    min_re: f64,
    /// Spectral spread radius after centering.
    rho: f64,
    /// Scaled coefficients C~_(m)(c1 - z) / m!.
    coeffs: Vec<Scaled>,
}

impl SingleRowKernel {
    pub fn new(n: usize, z: &[Complex64], alpha: f64) -> Result<SingleRowKernel> {
        if z.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: z.len(),
            });
        }
        let min_re = z.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
        let max_re = z.iter().map(|v| v.re).fold(f64::NEG_INFINITY, f64::max);
        if min_re <= 0.0 {
            return Err(Error::Domain(
                "single-row kernel needs min Re z > 0".into(),
            ));
        }
        let center = (min_re + max_re) / 2.0;
        let w: Vec<Complex64> = z.iter().map(|v| center - v).collect();
        let rho = w.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        if rho == 0.0 {
            // Constant spectral argument: J((x,0,..), -z) = e^{-z1 x}.
            return Ok(SingleRowKernel {
                center,
                min_re,
                rho,
                coeffs: vec![Scaled::new(Complex64::one())],
            });
        }

        // Terms beyond the certified underflow radius x_cap never matter;
        // past m ~ 4 rho x_cap the tail is below every representable value.
        let x_cap = 745.0 / min_re;
        let m_max = ((4.0 * rho * x_cap) as usize + 200).min(60_000);

        // Power sums of the unit-rescaled argument w / rho; |p_j| <= n, so
        // the g-recurrence stays in range and the true scale rho^m moves
        // into the log part of each coefficient (g_m is homogeneous).
        let mut pows: Vec<Complex64> = vec![Complex64::one(); n];
        let wu: Vec<Complex64> = w.iter().map(|v| v / rho).collect();
        let mut p = Vec::with_capacity(m_max + 1);
        p.push(Complex64::zero()); // unused p_0
        for _ in 1..=m_max {
            let mut s = Complex64::zero();
            for (pw, wi) in pows.iter_mut().zip(&wu) {
                *pw *= wi;
                s += *pw;
            }
            p.push(s);
        }

        // m g_m = (1/alpha) sum_j p_j g_{m-j}; denominators use the closed
        // form g_m(1_n) = (n/alpha)_m / m!, carried in log space.
        let beta = n as f64 / alpha;
        let mut g: Vec<Complex64> = Vec::with_capacity(m_max + 1);
        g.push(Complex64::one());
        let mut coeffs = Vec::with_capacity(m_max + 1);
        coeffs.push(Scaled::new(Complex64::one()));
        let ln_rho = rho.ln();
        let mut ln_denom = 0.0f64; // ln(g_m(1_n) * m!) = ln((beta)_m)
        for m in 1..=m_max {
            let mf = m as f64;
            let mut s = Complex64::zero();
            for j in 1..=m {
                s += p[j] * g[m - j];
            }
            let gm = s / (alpha * mf);
            if !gm.is_finite() {
                return Err(Error::Internal(
                    "single-row recurrence left the floating range".into(),
                ));
            }
            g.push(gm);
            ln_denom += (beta + mf - 1.0).ln();
            let mut c = Scaled::new(gm);
            c.ln += mf * ln_rho - ln_denom;
            c.renorm();
            coeffs.push(c);
        }
        Ok(SingleRowKernel {
            center,
            min_re,
            rho,
            coeffs,
        })
    }

    /// J((x, 0, ..., 0), -z) for x >= 0. Returns exact zero once the decay
    /// bound e^{-x min Re z} is below the f64 floor.
    pub fn eval(&self, x: f64) -> Complex64 {
        if self.min_re * x > 745.0 {
            return Complex64::zero();
        }
        let rx = self.rho * x;
        let mut acc = Scaled::zero();
        let mut xp = Scaled::new(Complex64::one());
        let mut ln_tau = 0.0f64; // ln((rx)^m / m!)
        for (m, c) in self.coeffs.iter().enumerate() {
            let mut term = Scaled {
                m: c.m * xp.m,
                ln: c.ln + xp.ln,
            };
            term.renorm();
            acc = acc.add(&term);
            xp = xp.mul_c(Complex64::new(x, 0.0));
            let mf = m as f64;
            // Certified tail: sum_{j>m} (rx)^j/j! <= tau_{m+1}/(1 - rx/(m+2)).
            ln_tau += (rx / (mf + 1.0)).max(1e-300).ln();
            if rx < mf + 2.0 {
                let tail_ln = ln_tau - (1.0 - rx / (mf + 2.0)).ln();
                if tail_ln < acc.ln_norm() - 40.0 || tail_ln < -760.0 {
                    break;
                }
            }
        }
        acc.value_with_exp(Complex64::new(-self.center * x, 0.0))
    }
}

/// 1F0(a; z) partial sums via the Jack expansion, exact in z as a
/// polynomial: sum over |lambda| <= max_degree of [a]_lambda C_lambda/|l|!.
/// Used by the discrete-Wallach series identity.
pub fn one_f_zero_truncated(a: &Rat, table: &JackTable, max_degree: u32) -> Result<MultiPoly> {
    table.ensure_degree(max_degree)?;
    let n = table.n();
    let k = table.k();
    let mut acc = MultiPoly::zero(n);
    for m in 0..=max_degree {
        let m_fact = Rat::from_integer(crate::gamma::factorial(m));
        for entry in table.entries_of_degree(m)? {
            let coeff = gpochhammer(a, &entry.partition, &k) / &m_fact;
            acc = acc.checked_add(&entry.c_poly.scalar_mul(&coeff))?;
        }
    }
    Ok(acc)
}

/// Exact Taylor polynomial of prod_i (1 + x_i)^{-a} through total degree
/// `max_degree` (note the plus sign: the argument is -z).
pub fn binomial_product_truncated(a: &Rat, n: usize, max_degree: u32) -> Result<MultiPoly> {
    let mut product = MultiPoly::one(n);
    for i in 0..n {
        let mut series = MultiPoly::zero(n);
        let mut coeff = Rat::one();
        for j in 0..=max_degree {
            if j > 0 {
                coeff = coeff * (a + rat_int(i64::from(j) - 1)) / rat_int(i64::from(j));
            }
            let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
            let mut exps = vec![0u32; n];
            exps[i] = j;
            series.add_term(crate::poly::Monomial::new(exps), &coeff * sign);
        }
        product = product.checked_mul(&series)?.truncate_degree(max_degree);
    }
    Ok(product)
}

/// Reference single-variable check value: (a)_j / j! as f64.
pub fn pochhammer_over_factorial(a: &Rat, j: u32) -> f64 {
    rat_to_f64(&(pochhammer(a, j) / Rat::from_integer(crate::gamma::factorial(j))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jack::JackTable;
    use crate::scalar::rat;

    fn table(n: usize, alpha: Rat) -> std::sync::Arc<JackTable> {
        JackTable::new(n, alpha, 2).unwrap()
    }

    #[test]
    fn bessel_at_zero_spectral_argument_is_one() {
        let t = table(3, rat_int(2));
        let x = [0.4, -0.2, 1.1];
        let z = [Complex64::zero(); 3];
        let ev = bessel_j(&x, &z, &t, 1e-12, 40).unwrap();
        assert_eq!(ev.value, Complex64::one());
        assert_eq!(ev.truncation_degree, 0);
    }

    #[test]
    fn bessel_at_ones_is_plain_exponential() {
        let t = table(2, rat_int(2));
        let x = [1.0, 1.0];
        let z = [Complex64::new(0.3, 0.2), Complex64::new(-0.5, 0.1)];
        let ev = bessel_j(&x, &z, &t, 1e-12, 60).unwrap();
        let expect = (z[0] + z[1]).exp();
        assert!((ev.value - expect).norm() <= 1e-11 * expect.norm());
    }

    #[test]
    fn bessel_single_variable_is_exp() {
        let t = table(1, rat_int(2));
        for (x, z) in [(0.7, 1.3), (-0.4, 2.0), (1.9, -0.8)] {
            let ev = bessel_j(&[x], &[Complex64::new(z, 0.0)], &t, 1e-12, 80).unwrap();
            assert!((ev.value.re - (x * z).exp()).abs() < 1e-10 * (x * z).exp().abs().max(1.0));
        }
    }

    #[test]
    fn truncation_failure_reports_achieved_bound() {
        let t = table(2, rat_int(2));
        let x = [3.0, 2.0];
        let z = [Complex64::new(4.0, 0.0), Complex64::new(3.0, 0.0)];
        let err = bessel_j(&x, &z, &t, 1e-12, 6);
        match err {
            Err(Error::Truncation { achieved, .. }) => assert!(achieved > 0.0),
            other => panic!("expected truncation failure, got {other:?}"),
        }
    }

    #[test]
    fn shift_factorization_examples() {
        let t = table(2, rat_int(2));
        // z = 0: J(x, s1) = e^{s sum x}
        assert!(shift_factorization_check(
            &[0.9, 0.3],
            &[Complex64::zero(), Complex64::zero()],
            0.6,
            &t,
            1e-10,
            80
        )
        .unwrap());
        // spec fixture: n=2, x=(1,2), z=(0.3,-0.1), s=0.7, k=1/2
        assert!(shift_factorization_check(
            &[1.0, 2.0],
            &[Complex64::new(0.3, 0.0), Complex64::new(-0.1, 0.0)],
            0.7,
            &t,
            1e-10,
            120
        )
        .unwrap());
    }

    #[test]
    fn decay_bound_examples() {
        let t = table(2, rat_int(2));
        // x = 0: |J| = 1 <= 1
        assert!(decay_bound_check(
            &[0.0, 0.0],
            &[Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0)],
            &t,
            1e-10,
            60
        )
        .unwrap());
        // n=2, k=1/2, x=(1,3), z=(2,2): |J(-x,z)| <= e^{-8}
        assert!(decay_bound_check(
            &[1.0, 3.0],
            &[Complex64::new(2.0, 0.0), Complex64::new(2.0, 0.0)],
            &t,
            1e-10,
            140
        )
        .unwrap());
    }

    #[test]
    fn binomial_check_small_grid() {
        // n=2, alpha=2, a=5/3 through degree 6, exact per degree.
        let t = JackTable::new(2, rat_int(2), 6).unwrap();
        let rep = binomial_check(&rat(5, 3), &t, 6).unwrap();
        assert!(rep.all_equal, "{:?}", rep.per_degree);
        // degree 0 and 1 are the trivial cases 1 = 1 and a sum z_i.
        assert!(rep.per_degree[0].1 && rep.per_degree[1].1);
        // negative parameter too
        let rep = binomial_check(&rat(-1, 2), &t, 5).unwrap();
        assert!(rep.all_equal);
    }

    #[test]
    fn closed_two_variable_form_matches_series() {
        for alpha in [rat_int(2), rat(4, 3), rat(1, 2)] {
            let t = table(2, alpha.clone());
            let k = rat_to_f64(&t.k());
            let cases = [
                ([0.7, 0.2], [Complex64::new(1.1, 0.0), Complex64::new(0.4, 0.0)]),
                ([1.5, -0.6], [Complex64::new(0.9, 0.5), Complex64::new(-0.2, -0.3)]),
                ([-1.0, 2.0], [Complex64::new(0.3, 1.0), Complex64::new(1.2, 0.0)]),
            ];
            for (x, z) in cases {
                let series = bessel_j(&x, &z, &t, 1e-13, 140).unwrap();
                let closed = bessel_j_two_vars(x, z, k);
                assert!(
                    (series.value - closed).norm()
                        <= 1e-10 * series.value.norm().max(1.0),
                    "alpha={alpha} x={x:?} z={z:?}: {} vs {closed}",
                    series.value
                );
            }
        }
    }

    #[test]
    fn closed_form_handles_large_arguments() {
        // Far outside series range: just check finiteness and the decay
        // bound |J(-x, z)| <= e^{-min Re z * ||x||_1}.
        let x = [900.0, 4.0];
        let z = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
        let v = bessel_j_two_vars([-x[0], -x[1]], z, 0.75);
        assert!(v.is_finite());
        assert!(v.norm() <= (-(x[0] + x[1])).exp() * 1.0000001);
    }

    #[test]
    fn single_row_kernel_matches_series() {
        for n in [2usize, 3] {
            let alpha = rat_int(2);
            let t = table(n, alpha.clone());
            let z: Vec<Complex64> = (0..n)
                .map(|i| Complex64::new(1.0 + 0.2 * i as f64, 0.05 * i as f64))
                .collect();
            let kern = SingleRowKernel::new(n, &z, rat_to_f64(&alpha)).unwrap();
            for x in [0.0, 0.3, 0.9] {
                let mut full_x = vec![0.0; n];
                full_x[0] = x;
                let neg_z: Vec<Complex64> = z.iter().map(|v| -v).collect();
                let series = bessel_j(&full_x, &neg_z, &t, 1e-13, 140).unwrap();
                let fast = kern.eval(x);
                assert!(
                    (series.value - fast).norm() <= 1e-10 * series.value.norm().max(1e-3),
                    "n={n} x={x}: {} vs {fast}",
                    series.value
                );
            }
        }
    }

    #[test]
    fn single_row_kernel_far_tail_underflows_to_zero() {
        let z = [Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0), Complex64::new(3.0, 0.0)];
        let kern = SingleRowKernel::new(3, &z, 2.0).unwrap();
        assert_eq!(kern.eval(1e4), Complex64::zero());
        let near = kern.eval(30.0);
        assert!(near.is_finite());
        assert!(near.norm() <= (-30.0f64).exp() * 1.0000001);
    }
}
