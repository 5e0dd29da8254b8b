//! Scalar special-function layer: the multivariable Gamma function
//! Gamma_n(mu;k), the generalized Pochhammer symbol [mu]_lambda^k, the
//! Bernstein factor b_k(a) and the Mehta normalization constants.
//!
//! Exact quantities (Pochhammer, Bernstein factor) stay in rational
//! arithmetic. Gamma values are computed to a requested number of
//! significant digits (default 50) with an argument-shifted Stirling series
//! and exact rational Bernoulli numbers.

use std::sync::OnceLock;

use astro_float::BigFloat;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{bigfloat as bf, rat_int, Prec, Rat};

/// Exact factorial.
pub fn factorial(m: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=u64::from(m) {
        acc *= i;
    }
    acc
}

/// Rising factorial (a)_m = a (a+1) ... (a+m-1), exact.
pub fn pochhammer(a: &Rat, m: u32) -> Rat {
    let mut acc = Rat::one();
    let mut term = a.clone();
    for _ in 0..m {
        acc *= term.clone();
        term += Rat::one();
    }
    acc
}

/// Generalized Pochhammer symbol [mu]_lambda^k, exact.
pub fn gpochhammer(mu: &Rat, lam: &Partition, k: &Rat) -> Rat {
    let mut acc = Rat::one();
    for (j, &part) in lam.parts().iter().enumerate() {
        let shifted = mu - k * rat_int(j as i64);
        acc *= pochhammer(&shifted, part);
    }
    acc
}

/// Bernstein factor b_k(a) = prod_{i=1}^n (a + k(i-1)), exact.
pub fn bernstein_factor(a: &Rat, n: usize, k: &Rat) -> Rat {
    let mut acc = Rat::one();
    for i in 0..n {
        acc *= a + k * rat_int(i as i64);
    }
    acc
}

/// Bernoulli numbers B_0..B_max as exact rationals (B_1 = -1/2).
fn bernoulli_table() -> &'static Vec<Rat> {
    static TABLE: OnceLock<Vec<Rat>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let max = 80usize;
        let mut b: Vec<Rat> = Vec::with_capacity(max + 1);
        b.push(Rat::one());
        for m in 1..=max {
            // sum_{j=0}^{m} C(m+1, j) B_j = 0
            let mut acc = Rat::zero();
            let mut binom = BigInt::one(); // C(m+1, 0)
            for (j, bj) in b.iter().enumerate().take(m) {
                acc += Rat::from_integer(binom.clone()) * bj;
                // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            let c = Rat::from_integer(BigInt::from(m + 1));
            b.push(-acc / c);
        }
        b
    })
}

/// Stirling series for ln Gamma(z) at a BigFloat z >= z_min(digits).
fn ln_gamma_stirling(z: &BigFloat, p: Prec) -> BigFloat {
    let half = bf::from_rat(&Rat::new(BigInt::one(), BigInt::from(2)), p);
    let ln_z = bf::ln(z, p);
    let two_pi = bf::mul(&bf::from_f64(2.0, p), &bf::pi(p), p);
    let mut acc = bf::mul(&bf::sub(z, &half, p), &ln_z, p);
    acc = bf::sub(&acc, z, p);
    acc = bf::add(&acc, &bf::mul(&half, &bf::ln(&two_pi, p), p), p);

    let bern = bernoulli_table();
    let z2 = bf::mul(z, z, p);
    let mut zpow = z.clone(); // z^{2n-1}
    let cutoff = -(p.bits() as i64) - 8;
    for n in 1..=40usize {
        let two_n = 2 * n;
        if two_n >= bern.len() {
            break;
        }
        let coeff = &bern[two_n] / rat_int((two_n * (two_n - 1)) as i64);
        let term = bf::div(&bf::from_rat(&coeff, p), &zpow, p);
        acc = bf::add(&acc, &term, p);
        // Terms decay geometrically in the working range; stop once below
        // the precision floor.
        if term.exponent().unwrap_or(0) < cutoff as i32 + acc.exponent().unwrap_or(0) {
            break;
        }
        zpow = bf::mul(&zpow, &z2, p);
    }
    acc
}

/// Is the rational a nonpositive integer (a Gamma pole)?
pub fn is_gamma_pole(x: &Rat) -> bool {
    x.is_integer() && !x.is_positive()
}

/// Gamma(x) for exact rational non-pole x, to the given precision.
pub fn gamma_rat(x: &Rat, p: Prec) -> Result<BigFloat> {
    if is_gamma_pole(x) {
        return Err(Error::Pole {
            arg: x.to_string(),
            index: 1,
            count: 1,
        });
    }
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    if x >= &half {
        Ok(bf::exp(&ln_gamma_shifted(x, p), p))
    } else {
        // Reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x)), with the
        // sine argument reduced exactly on the rational side.
        let one_minus = Rat::one() - x;
        let g = bf::exp(&ln_gamma_shifted(&one_minus, p), p);
        let floor = x.floor();
        let frac = x - &floor; // in [0, 1)
        let pi = bf::pi(p);
        let arg = bf::mul(&pi, &bf::from_rat(&frac, p), p);
        let mut s = bf::sin(&arg, p);
        if floor.to_integer().is_odd() {
            s = bf::neg(&s);
        }
        Ok(bf::div(&pi, &bf::mul(&s, &g, p), p))
    }
}

/// ln Gamma for rational x >= 1/2: shift x upward until the Stirling series
/// is accurate, then remove the shift with exact-argument logarithms.
fn ln_gamma_shifted(x: &Rat, p: Prec) -> BigFloat {
    let z_min = (p.digits() as i64 * 6 / 5).max(40);
    let shift = if x < &rat_int(z_min) {
        let deficit = rat_int(z_min) - x;
        deficit.ceil().to_integer().to_i64().unwrap_or(0).max(0) as u32
    } else {
        0
    };
    let z = bf::from_rat(&(x + rat_int(i64::from(shift))), p);
    let mut acc = ln_gamma_stirling(&z, p);
    // Gamma(x) = Gamma(x + s) / (x (x+1) ... (x+s-1))
    for j in 0..shift {
        let f = bf::from_rat(&(x + rat_int(i64::from(j))), p);
        acc = bf::sub(&acc, &bf::ln(&f, p), p);
    }
    acc
}

/// Multivariable Gamma function Gamma_n(mu;k) = prod_{j=1}^n
/// Gamma(mu - k(j-1)), with exact pole detection.
///
/// The pole set is {0, k, ..., k(n-1)} - N_0.
pub fn gamma_n(mu: &Rat, n: usize, k: &Rat, p: Prec) -> Result<BigFloat> {
    assert!(n >= 1, "gamma_n needs n >= 1");
    let mut args = Vec::with_capacity(n);
    for j in 0..n {
        let a = mu - k * rat_int(j as i64);
        if is_gamma_pole(&a) {
            return Err(Error::Pole {
                arg: a.to_string(),
                index: j + 1,
                count: n,
            });
        }
        args.push(a);
    }
    let mut acc = bf::from_f64(1.0, p);
    for a in &args {
        acc = bf::mul(&acc, &gamma_rat(a, p)?, p);
    }
    Ok(acc)
}

pub fn gamma_n_f64(mu: &Rat, n: usize, k: &Rat, p: Prec) -> Result<f64> {
    Ok(bf::to_f64(&gamma_n(mu, n, k, p)?))
}

/// Normalization constants (d_n(k), c_{k,n}):
/// d_n(k) = prod_{j=1}^n Gamma(1+jk)/Gamma(1+k) and the Mehta constant
/// c_{k,n} = (2 pi)^{n/2} d_n(k).
pub fn normalization_constants(n: usize, k: &Rat, p: Prec) -> Result<(BigFloat, BigFloat)> {
    assert!(n >= 1);
    if k.is_negative() {
        return Err(Error::InvalidArgument(format!(
            "multiplicity k must be nonnegative, got {k}"
        )));
    }
    let g1k = gamma_rat(&(Rat::one() + k), p)?;
    let mut d = bf::from_f64(1.0, p);
    for j in 1..=n {
        let num = gamma_rat(&(Rat::one() + k * rat_int(j as i64)), p)?;
        d = bf::mul(&d, &bf::div(&num, &g1k, p), p);
    }
    let two_pi = bf::mul(&bf::from_f64(2.0, p), &bf::pi(p), p);
    let mut c = bf::powi(&two_pi, n / 2, p);
    if n % 2 == 1 {
        c = bf::mul(&c, &bf::sqrt(&two_pi, p), p);
    }
    c = bf::mul(&c, &d, p);
    Ok((d, c))
}

// Lanczos approximation (g = 7, 9 terms), used only where complex indices
// reach the Gamma function; precision ~1e-13 relative.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Gamma function in double precision.
pub fn gamma_complex(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection formula.
        let pi = std::f64::consts::PI;
        let s = (pi * z).sin();
        return pi / (s * gamma_complex(Complex64::new(1.0, 0.0) - z));
    }
    let z = z - 1.0;
    let mut a = Complex64::new(LANCZOS_COEFFS[0], 0.0);
    let t = z + LANCZOS_G + 0.5;
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += c / (z + i as f64);
    }
    let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
    sqrt_two_pi * t.powc(z + 0.5) * (-t).exp() * a
}

/// Gamma_n at a complex index, double precision.
pub fn gamma_n_complex(mu: Complex64, n: usize, k: f64) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for j in 0..n {
        acc *= gamma_complex(mu - k * j as f64);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn p50() -> Prec {
        Prec::from_digits(50)
    }

    fn assert_rel(a: &BigFloat, b: &BigFloat, tol: f64) {
        assert!(
            bf::rel_close(a, b, tol, p50()),
            "not close: {a} vs {b}"
        );
    }

    #[test]
    fn gamma_at_integers_and_half_integers() {
        let p = p50();
        let one = gamma_rat(&rat_int(1), p).unwrap();
        assert_rel(&one, &bf::from_f64(1.0, p), 1e-45);
        let five = gamma_rat(&rat_int(5), p).unwrap();
        assert_rel(&five, &bf::from_f64(24.0, p), 1e-45);
        let half = gamma_rat(&rat(1, 2), p).unwrap();
        assert_rel(&half, &bf::sqrt(&bf::pi(p), p), 1e-45);
        // Gamma(-1/2) = -2 sqrt(pi) via reflection
        let neg_half = gamma_rat(&rat(-1, 2), p).unwrap();
        let expect = bf::mul(&bf::from_f64(-2.0, p), &bf::sqrt(&bf::pi(p), p), p);
        assert_rel(&neg_half, &expect, 1e-45);
    }

    #[test]
    fn gamma_n_single_factor_is_classical() {
        let p = p50();
        for mu in [rat(7, 3), rat_int(4), rat(1, 5)] {
            let lhs = gamma_n(&mu, 1, &rat(1, 2), p).unwrap();
            let rhs = gamma_rat(&mu, p).unwrap();
            assert_rel(&lhs, &rhs, 1e-45);
        }
    }

    #[test]
    fn gamma_n_example_three_two_half() {
        // Gamma_2(3; 1/2) = Gamma(3) Gamma(5/2) = (3/2) sqrt(pi)
        let p = p50();
        let v = gamma_n(&rat_int(3), 2, &rat(1, 2), p).unwrap();
        let expect = bf::mul(&bf::from_f64(1.5, p), &bf::sqrt(&bf::pi(p), p), p);
        assert_rel(&v, &expect, 1e-45);
        assert!((bf::to_f64(&v) - 2.658_680_776_358_3).abs() < 1e-10);
    }

    #[test]
    fn gamma_n_pole_detection() {
        // mu = 1/2 = k * 1 is in the pole set for k = 1/2, n = 2
        let err = gamma_n(&rat(1, 2), 2, &rat(1, 2), p50());
        assert!(matches!(err, Err(Error::Pole { .. })));
        // mu = -3 hits 0 - N_0
        assert!(gamma_n(&rat_int(-3), 2, &rat(1, 2), p50()).is_err());
        // Just off the pole set is fine
        assert!(gamma_n(&rat(1, 3), 2, &rat(1, 2), p50()).is_ok());
    }

    #[test]
    fn normalization_examples() {
        let p = p50();
        let (d, c) = normalization_constants(1, &rat(2, 3), p).unwrap();
        assert_rel(&d, &bf::from_f64(1.0, p), 1e-45);
        let two_pi = bf::mul(&bf::from_f64(2.0, p), &bf::pi(p), p);
        assert_rel(&c, &bf::sqrt(&two_pi, p), 1e-45);

        // d_2(1) = Gamma(2)Gamma(3)/Gamma(2)^2 = 2, c = 4 pi
        let (d, c) = normalization_constants(2, &rat_int(1), p).unwrap();
        assert_rel(&d, &bf::from_f64(2.0, p), 1e-45);
        assert_rel(&c, &bf::mul(&bf::from_f64(4.0, p), &bf::pi(p), p), 1e-45);

        // d_2(1/2) = Gamma(2)/Gamma(3/2) = 2/sqrt(pi)
        let (d, _) = normalization_constants(2, &rat(1, 2), p).unwrap();
        let expect = bf::div(&bf::from_f64(2.0, p), &bf::sqrt(&bf::pi(p), p), p);
        assert_rel(&d, &expect, 1e-45);
        assert!((bf::to_f64(&d) - 1.128_379_167_095_512_6).abs() < 1e-14);
    }

    #[test]
    fn pochhammer_examples() {
        // [mu]_{(1,1)} = mu (mu - k)
        let mu = rat(7, 5);
        let k = rat(1, 3);
        let lam = Partition::new(vec![1, 1]).unwrap();
        assert_eq!(gpochhammer(&mu, &lam, &k), &mu * (&mu - &k));

        // [3]_{(2)} = (3)_2 = 12 for any k
        let lam2 = Partition::new(vec![2]).unwrap();
        assert_eq!(gpochhammer(&rat_int(3), &lam2, &k), rat_int(12));
        assert_eq!(gpochhammer(&rat_int(3), &lam2, &rat(5, 2)), rat_int(12));

        // [k r]_{(1^{r+1})} = 0
        for r in 1..=4usize {
            let k = rat(2, 7);
            let mu = &k * rat_int(r as i64);
            let lam = Partition::ones(r + 1);
            assert!(gpochhammer(&mu, &lam, &k).is_zero());
        }

        // empty partition gives 1
        assert_eq!(gpochhammer(&mu, &Partition::empty(), &k), Rat::one());
    }

    #[test]
    fn bernstein_examples() {
        let k = rat(1, 2);
        assert_eq!(bernstein_factor(&rat(5, 3), 1, &k), rat(5, 3));
        assert_eq!(bernstein_factor(&rat_int(1), 2, &k), rat(3, 2));
        // a = -k kills the i=2 factor
        for n in 2..=5 {
            assert!(bernstein_factor(&(-k.clone()), n, &k).is_zero());
        }
    }

    #[test]
    fn gamma_n_recursion_matches_bernstein() {
        // Gamma_n(mu+1;k) / Gamma_n(mu;k) = b_k(mu - k(n-1)) at non-pole mu
        let p = p50();
        for (n, k) in [(2usize, rat(1, 2)), (3, rat(1, 3)), (4, rat(5, 2))] {
            // Non-integer samples keep clear of every pole set in the grid.
            for mu in [rat(7, 4), rat(16, 3), rat(13, 5)] {
                let g1 = gamma_n(&(mu.clone() + Rat::one()), n, &k, p).unwrap();
                let g0 = gamma_n(&mu, n, &k, p).unwrap();
                let ratio = bf::div(&g1, &g0, p);
                let b = bernstein_factor(&(mu.clone() - &k * rat_int((n - 1) as i64)), n, &k);
                assert_rel(&ratio, &bf::from_rat(&b, p), 1e-40);
            }
        }
    }

    #[test]
    fn gpochhammer_is_polynomial_of_degree_weight() {
        // Interpolate [mu]_lambda^k through |lambda|+1 points and check a
        // fresh point reproduces the direct value, exactly.
        let k = rat(1, 2);
        for lam in [
            Partition::new(vec![2, 1]).unwrap(),
            Partition::new(vec![3, 1, 1]).unwrap(),
            Partition::new(vec![2, 2]).unwrap(),
        ] {
            let deg = lam.weight() as usize;
            let nodes: Vec<Rat> = (0..=deg as i64).map(|i| rat(i, 3)).collect();
            let values: Vec<Rat> = nodes.iter().map(|x| gpochhammer(x, &lam, &k)).collect();
            let fresh = rat(17, 7);
            // Lagrange interpolation at the fresh point.
            let mut interp = Rat::zero();
            for i in 0..nodes.len() {
                let mut li = Rat::one();
                for j in 0..nodes.len() {
                    if i != j {
                        li *= (&fresh - &nodes[j]) / (&nodes[i] - &nodes[j]);
                    }
                }
                interp += li * &values[i];
            }
            assert_eq!(interp, gpochhammer(&fresh, &lam, &k), "lambda = {lam}");
        }
    }

    #[test]
    fn complex_gamma_consistency() {
        // |Gamma(1+i)|^2 = pi / sinh(pi)
        let z = Complex64::new(1.0, 1.0);
        let product = gamma_complex(z) * gamma_complex(z.conj());
        let expect = std::f64::consts::PI / std::f64::consts::PI.sinh();
        assert!((product.re - expect).abs() < 1e-12);
        assert!(product.im.abs() < 1e-12);
        // Matches the rational path at a real point
        let g = gamma_complex(Complex64::new(2.5, 0.0));
        let r = bf::to_f64(&gamma_rat(&rat(5, 2), p50()).unwrap());
        assert!((g.re - r).abs() < 1e-12);
        assert!(g.im.abs() < 1e-14);
    }
}
