//! Weighted integrals over the positive orthant, the full space and the
//! unit cube against the Dunkl weight omega_k, and the Laplace-transform
//! identity checks built on them (Mehta, Macdonald, Kadell, Laplace of the
//! power density, shift consistency).
//!
//! All target integrands are S_n-invariant, so integration happens over the
//! ordered chamber x_1 > ... > x_n (where omega_k is smooth) times n!.
//! Chambers are parametrized by consecutive gaps, which moves every
//! omega_k singularity to a coordinate hyperplane of the unit box where the
//! adaptive engine bisects toward it.

use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{factorial, gamma_n, gpochhammer, normalization_constants};
use crate::hyp::{bessel_j_two_vars, SingleRowKernel};
use crate::jack::JackTable;
use crate::partition::Partition;
use crate::quad::{integrate_unit_box, QuadOptions, QuadResult};
use crate::scalar::{bigfloat as bf, rat_int, rat_to_f64, Prec, Rat};

/// Dunkl weight omega_k(x) = prod_{i<j} |x_i - x_j|^{2k}.
pub fn weight_omega(x: &[f64], k: f64) -> f64 {
    let mut acc = 1.0;
    for i in 0..x.len() {
        for j in (i + 1)..x.len() {
            acc *= (x[i] - x[j]).abs().powf(2.0 * k);
        }
    }
    acc
}

/// Integration domain of a quadrature job, always reduced to the ordered
/// chamber internally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Domain {
    /// x_1 > ... > x_n > 0.
    Orthant,
    /// 1 > x_1 > ... > x_n > 0.
    UnitCube,
    /// x_1 > ... > x_n, unconstrained signs (Mehta integral).
    FullSpace,
}

/// Kernel evaluator for J(-x, z) inside quadrature integrands, chosen per
/// argument shape. Series tables cannot reach quadrature scale, so each
/// route is a closed or recurrence-generated form, cross-checked against
/// the series evaluator in tests.
pub enum KernelEval {
    /// n = 2 closed form via the rank-one reduction.
    TwoVars { z: [Complex64; 2], k: f64 },
    /// Support on a single coordinate: J((x, 0, ..., 0), -z).
    SingleRow(SingleRowKernel),
    /// Constant spectral argument: J(-x, c1) = e^{-c sum x}.
    ConstantShift { c: Complex64 },
}

impl KernelEval {
    /// Picks an evaluator for J(-x, z) with x ranging over the dimension-r
    /// chamber padded by zeros to length n.
    pub fn select(n: usize, r: usize, z: &[Complex64], alpha: f64) -> Result<KernelEval> {
        if z.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: z.len(),
            });
        }
        let min_re = z.iter().map(|v| v.re).fold(f64::INFINITY, f64::min);
        if min_re <= 0.0 {
            return Err(Error::Domain(
                "kernel integrals need z in the right half space H_n(0)".into(),
            ));
        }
        let spread = z
            .iter()
            .map(|v| (v - z[0]).norm())
            .fold(0.0f64, f64::max);
        if spread == 0.0 {
            return Ok(KernelEval::ConstantShift { c: z[0] });
        }
        if r == 1 {
            return Ok(KernelEval::SingleRow(SingleRowKernel::new(n, z, alpha)?));
        }
        if n == 2 {
            return Ok(KernelEval::TwoVars {
                z: [z[0], z[1]],
                k: 1.0 / alpha,
            });
        }
        Err(Error::CostCap(format!(
            "no desk-scale kernel route for n = {n}, support rank {r} and non-constant z; \
             use a constant z or r = 1"
        )))
    }

    /// J(-x~, z) where x~ is `x` padded with zeros to the ambient length.
    pub fn eval_neg(&self, x: &[f64]) -> Complex64 {
        match self {
            KernelEval::TwoVars { z, k } => bessel_j_two_vars([-x[0], -x[1]], *z, *k),
            KernelEval::SingleRow(kern) => kern.eval(x[0]),
            KernelEval::ConstantShift { c } => {
                let s: f64 = x.iter().sum();
                (-c * s).exp()
            }
        }
    }
}

/// Integrand selector; every variant already includes omega_k.
pub enum Integrand {
    /// e^{-|x|^2/2} omega_k(x) over the full space.
    MehtaGaussian,
    /// C~_lambda(x) e^{-sum x} D(x)^{power} omega_k(x) over the orthant.
    JackExpPower {
        ctilde: Vec<(Vec<u32>, f64)>,
        power: f64,
    },
    /// C~_lambda(y) D(y)^{mu_pow} D(1-y)^{nu_pow} omega_k(y) over the cube.
    KadellBeta {
        ctilde: Vec<(Vec<u32>, f64)>,
        mu_pow: f64,
        nu_pow: f64,
    },
    /// J(-x, z) e^{-shift sum x} D(x)^{power} omega_k(x) over the orthant
    /// (dimension r support inside ambient n for the discrete measures).
    KernelPower {
        kernel: KernelEval,
        power: f64,
        shift: f64,
    },
}

impl Integrand {
    fn eval(&self, x: &[f64], k: f64) -> Complex64 {
        match self {
            Integrand::MehtaGaussian => {
                let q: f64 = x.iter().map(|v| v * v).sum();
                Complex64::new((-0.5 * q).exp() * weight_omega(x, k), 0.0)
            }
            Integrand::JackExpPower { ctilde, power } => {
                let s: f64 = x.iter().sum();
                let d: f64 = x.iter().product();
                let c = eval_terms(ctilde, x);
                Complex64::new(
                    c * (-s).exp() * d.powf(*power) * weight_omega(x, k),
                    0.0,
                )
            }
            Integrand::KadellBeta {
                ctilde,
                mu_pow,
                nu_pow,
            } => {
                let d: f64 = x.iter().product();
                let d1: f64 = x.iter().map(|v| 1.0 - v).product();
                let c = eval_terms(ctilde, x);
                Complex64::new(
                    c * d.powf(*mu_pow) * d1.powf(*nu_pow) * weight_omega(x, k),
                    0.0,
                )
            }
            Integrand::KernelPower {
                kernel,
                power,
                shift,
            } => {
                let s: f64 = x.iter().sum();
                let d: f64 = x.iter().product();
                kernel.eval_neg(x) * (-shift * s).exp() * d.powf(*power) * weight_omega(x, k)
            }
        }
    }
}

fn eval_terms(terms: &[(Vec<u32>, f64)], x: &[f64]) -> f64 {
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

/// A weighted integral over one of the three domains.
pub struct QuadratureJob {
    pub dim: usize,
    pub k: f64,
    pub domain: Domain,
    pub integrand: Integrand,
    pub rel_tol: f64,
    pub max_cells: usize,
}

/// Desk-scale cap: orthant and full-space chamber quadrature beyond three
/// dimensions is rejected unless forced by the caller.
pub const DESK_DIM_CAP: usize = 3;

pub fn cost_warning(dim: usize) -> Option<String> {
    if dim > DESK_DIM_CAP {
        Some(format!(
            "chamber quadrature in dimension {dim} exceeds the desk-scale cap {DESK_DIM_CAP}; \
             expect runtimes far beyond interactive use"
        ))
    } else {
        None
    }
}

/// Integrates the job over the ordered chamber and multiplies by n!.
///
/// Chamber parametrizations (all onto the open unit box):
/// - Orthant: consecutive gaps v_i = x_i - x_{i+1} > 0, each mapped by
///   v = u/(1-u) with Jacobian (1-u)^{-2}.
/// - FullSpace: gaps for the first n-1 axes plus the unconstrained base
///   x_n mapped by w = (u - 1/2)/(u(1-u)).
/// - UnitCube: multiplicative coordinates x_i = s_1 ... s_i.
pub fn chamber_integrate(job: &QuadratureJob) -> Result<QuadResult> {
    let dim = job.dim;
    let opts = QuadOptions {
        rel_tol: job.rel_tol,
        max_cells: job.max_cells,
        ..QuadOptions::default()
    };
    let k = job.k;
    let nfact = rat_to_f64(&Rat::from_integer(factorial(dim as u32)));
    let integrand = &job.integrand;
    let result = match job.domain {
        Domain::Orthant => {
            let f = move |u: &[f64]| {
                let mut x = vec![0.0f64; dim];
                let mut jac = 1.0f64;
                let mut acc = 0.0f64;
                for i in (0..dim).rev() {
                    let ui = u[i];
                    let v = ui / (1.0 - ui);
                    jac *= (1.0 - ui).powi(-2);
                    acc += v;
                    x[i] = acc;
                }
                integrand.eval(&x, k) * jac
            };
            integrate_unit_box(dim, &f, &opts)?
        }
        Domain::FullSpace => {
            let f = move |u: &[f64]| {
                let mut x = vec![0.0f64; dim];
                let mut jac = 1.0f64;
                let ub = u[dim - 1];
                let g = ub * (1.0 - ub);
                let base = (ub - 0.5) / g;
                jac *= (ub * ub - ub + 0.5) / (g * g);
                let mut acc = base;
                x[dim - 1] = base;
                for i in (0..dim - 1).rev() {
                    let ui = u[i];
                    let v = ui / (1.0 - ui);
                    jac *= (1.0 - ui).powi(-2);
                    acc += v;
                    x[i] = acc;
                }
                integrand.eval(&x, k) * jac
            };
            integrate_unit_box(dim, &f, &opts)?
        }
        Domain::UnitCube => {
            let f = move |u: &[f64]| {
                let mut x = vec![0.0f64; dim];
                let mut jac = 1.0f64;
                let mut prod = 1.0f64;
                for i in 0..dim {
                    prod *= u[i];
                    x[i] = prod;
                    // |det| = prod_j s_j^{dim - j - 1} (0-based j)
                    if i < dim - 1 {
                        jac *= u[i].powi((dim - 1 - i) as i32);
                    }
                }
                integrand.eval(&x, k) * jac
            };
            integrate_unit_box(dim, &f, &opts)?
        }
    };

    Ok(QuadResult {
        value: result.value * nfact,
        error_estimate: result.error_estimate * nfact,
        subdivisions: result.subdivisions,
    })
}

/// One numeric identity comparison.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub computed_re: f64,
    pub computed_im: f64,
    pub reference_re: f64,
    pub reference_im: f64,
    pub abs_err: f64,
    pub rel_err: f64,
    pub quad_error: f64,
    pub subdivisions: usize,
    pub tol: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub fn new(
        name: impl Into<String>,
        computed: Complex64,
        reference: Complex64,
        quad: &QuadResult,
        tol: f64,
    ) -> IdentityReport {
        let abs_err = (computed - reference).norm();
        let rel_err = abs_err / reference.norm().max(f64::MIN_POSITIVE);
        IdentityReport {
            name: name.into(),
            computed_re: computed.re,
            computed_im: computed.im,
            reference_re: reference.re,
            reference_im: reference.im,
            abs_err,
            rel_err,
            quad_error: quad.error_estimate,
            subdivisions: quad.subdivisions,
            tol,
            pass: rel_err <= tol,
        }
    }
}

fn default_cells(dim: usize) -> usize {
    match dim {
        1 => 4_000,
        2 => 40_000,
        _ => 120_000,
    }
}

/// Mehta integral: int_{R^n} e^{-|x|^2/2} omega_k = c_{k,n}.
pub fn mehta_check(n: usize, k: &Rat, rel_tol: f64, prec: Prec) -> Result<IdentityReport> {
    if let Some(w) = cost_warning(n) {
        return Err(Error::CostCap(w));
    }
    let job = QuadratureJob {
        dim: n,
        k: rat_to_f64(k),
        domain: Domain::FullSpace,
        integrand: Integrand::MehtaGaussian,
        rel_tol: rel_tol / 4.0,
        max_cells: default_cells(n),
    };
    let quad = chamber_integrate(&job)?;
    let (_, c_kn) = normalization_constants(n, k, prec)?;
    let reference = Complex64::new(bf::to_f64(&c_kn), 0.0);
    Ok(IdentityReport::new(
        format!("mehta n={n} k={k}"),
        quad.value,
        reference,
        &quad,
        rel_tol,
    ))
}

fn mu0(n: usize, k: &Rat) -> Rat {
    k * rat_int(n as i64 - 1)
}

/// Macdonald integral: int C~_lambda e^{-<x,1>} D^{mu-mu0-1} omega_k
/// = d_n(k) Gamma_n(mu;k) [mu]_lambda^k, for Re mu > mu0.
pub fn macdonald_check(
    n: usize,
    k: &Rat,
    mu: &Rat,
    lam: &Partition,
    table: &JackTable,
    rel_tol: f64,
    prec: Prec,
) -> Result<IdentityReport> {
    if let Some(w) = cost_warning(n) {
        return Err(Error::CostCap(w));
    }
    if mu <= &mu0(n, k) {
        return Err(Error::Domain(format!(
            "macdonald integral needs mu > k(n-1), got mu={mu}"
        )));
    }
    table.ensure_degree(lam.weight())?;
    let entry = table.entry(lam)?;
    let ctilde = entry
        .c_poly
        .scalar_mul(&(Rat::one() / &entry.c_at_one))
        .float_terms();
    let power = rat_to_f64(&(mu - mu0(n, k) - Rat::one()));
    let job = QuadratureJob {
        dim: n,
        k: rat_to_f64(k),
        domain: Domain::Orthant,
        integrand: Integrand::JackExpPower { ctilde, power },
        rel_tol: rel_tol / 4.0,
        max_cells: default_cells(n),
    };
    let quad = chamber_integrate(&job)?;
    let (d, _) = normalization_constants(n, k, prec)?;
    let g = gamma_n(mu, n, k, prec)?;
    let reference = bf::to_f64(&bf::mul(&d, &g, prec)) * rat_to_f64(&gpochhammer(mu, lam, k));
    Ok(IdentityReport::new(
        format!("macdonald n={n} k={k} mu={mu} lambda={lam}"),
        quad.value,
        Complex64::new(reference, 0.0),
        &quad,
        rel_tol,
    ))
}

/// Kadell integral over the unit cube:
/// int C~_lambda D(y)^{mu-mu0-1} D(1-y)^{nu-mu0-1} omega_k
/// = d_n Gamma_n(mu) Gamma_n(nu) / Gamma_n(mu+nu) * [mu]_lambda/[mu+nu]_lambda.
pub fn kadell_check(
    n: usize,
    k: &Rat,
    mu: &Rat,
    nu: &Rat,
    lam: &Partition,
    table: &JackTable,
    rel_tol: f64,
    prec: Prec,
) -> Result<IdentityReport> {
    if let Some(w) = cost_warning(n) {
        return Err(Error::CostCap(w));
    }
    let m0 = mu0(n, k);
    if mu <= &m0 || nu <= &m0 {
        return Err(Error::Domain(format!(
            "kadell integral needs mu, nu > k(n-1), got mu={mu}, nu={nu}"
        )));
    }
    table.ensure_degree(lam.weight())?;
    let entry = table.entry(lam)?;
    let ctilde = entry
        .c_poly
        .scalar_mul(&(Rat::one() / &entry.c_at_one))
        .float_terms();
    let job = QuadratureJob {
        dim: n,
        k: rat_to_f64(k),
        domain: Domain::UnitCube,
        integrand: Integrand::KadellBeta {
            ctilde,
            mu_pow: rat_to_f64(&(mu - &m0 - Rat::one())),
            nu_pow: rat_to_f64(&(nu - &m0 - Rat::one())),
        },
        rel_tol: rel_tol / 4.0,
        max_cells: default_cells(n),
    };
    let quad = chamber_integrate(&job)?;
    let (d, _) = normalization_constants(n, k, prec)?;
    let gm = gamma_n(mu, n, k, prec)?;
    let gn = gamma_n(nu, n, k, prec)?;
    let gmn = gamma_n(&(mu + nu), n, k, prec)?;
    let gammas = bf::div(&bf::mul(&bf::mul(&d, &gm, prec), &gn, prec), &gmn, prec);
    let ratio = gpochhammer(mu, lam, k) / gpochhammer(&(mu + nu), lam, k);
    let reference = bf::to_f64(&gammas) * rat_to_f64(&ratio);
    Ok(IdentityReport::new(
        format!("kadell n={n} k={k} mu={mu} nu={nu} lambda={lam}"),
        quad.value,
        Complex64::new(reference, 0.0),
        &quad,
        rel_tol,
    ))
}

/// Laplace transform of the power density:
/// int J(-x, z) D^{mu-mu0-1} omega_k = d_n Gamma_n(mu;k) D(z)^{-mu} on
/// H_n(0), with principal-branch coordinate powers on the right.
pub fn laplace_power_check(
    n: usize,
    k: &Rat,
    mu: &Rat,
    z: &[Complex64],
    rel_tol: f64,
    prec: Prec,
) -> Result<IdentityReport> {
    if let Some(w) = cost_warning(n) {
        return Err(Error::CostCap(w));
    }
    if mu <= &mu0(n, k) {
        return Err(Error::Domain(format!(
            "laplace power needs Re mu > k(n-1), got mu={mu}"
        )));
    }
    let alpha = rat_to_f64(&(Rat::one() / k));
    let kernel = KernelEval::select(n, n, z, alpha)?;
    let power = rat_to_f64(&(mu - mu0(n, k) - Rat::one()));
    let job = QuadratureJob {
        dim: n,
        k: rat_to_f64(k),
        domain: Domain::Orthant,
        integrand: Integrand::KernelPower {
            kernel,
            power,
            shift: 0.0,
        },
        rel_tol: rel_tol / 4.0,
        max_cells: default_cells(n),
    };
    let quad = chamber_integrate(&job)?;
    let (d, _) = normalization_constants(n, k, prec)?;
    let g = gamma_n(mu, n, k, prec)?;
    let muf = rat_to_f64(mu);
    let mut power_part = Complex64::one();
    for zj in z {
        power_part *= zj.powf(-muf);
    }
    let reference = power_part * bf::to_f64(&bf::mul(&d, &g, prec));
    Ok(IdentityReport::new(
        format!("laplace-power n={n} k={k} mu={mu}"),
        quad.value,
        reference,
        &quad,
        rel_tol,
    ))
}

/// Shift property of the Laplace transform on the power-density family:
/// L_k(e^{-<x, s1>} f)(z) = L_k f(z + s1), both sides by quadrature.
pub struct ShiftReport {
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub rel_dev: f64,
    pub agree: bool,
}

pub fn laplace_shift_check(
    n: usize,
    k: &Rat,
    mu: &Rat,
    s: f64,
    z: &[Complex64],
    rel_tol: f64,
) -> Result<ShiftReport> {
    if let Some(w) = cost_warning(n) {
        return Err(Error::CostCap(w));
    }
    if mu <= &mu0(n, k) {
        return Err(Error::Domain("shift check needs Re mu > k(n-1)".into()));
    }
    if s < 0.0 {
        return Err(Error::Domain("shift check needs s >= 0".into()));
    }
    let alpha = rat_to_f64(&(Rat::one() / k));
    let power = rat_to_f64(&(mu - mu0(n, k) - Rat::one()));
    let damped = QuadratureJob {
        dim: n,
        k: rat_to_f64(k),
        domain: Domain::Orthant,
        integrand: Integrand::KernelPower {
            kernel: KernelEval::select(n, n, z, alpha)?,
            power,
            shift: s,
        },
        rel_tol: rel_tol / 4.0,
        max_cells: default_cells(n),
    };
    let shifted_z: Vec<Complex64> = z.iter().map(|v| v + s).collect();
    let shifted = QuadratureJob {
        dim: n,
        k: rat_to_f64(k),
        domain: Domain::Orthant,
        integrand: Integrand::KernelPower {
            kernel: KernelEval::select(n, n, &shifted_z, alpha)?,
            power,
            shift: 0.0,
        },
        rel_tol: rel_tol / 4.0,
        max_cells: default_cells(n),
    };
    let lhs = chamber_integrate(&damped)?;
    let rhs = chamber_integrate(&shifted)?;
    let rel_dev =
        (lhs.value - rhs.value).norm() / lhs.value.norm().max(rhs.value.norm()).max(1e-300);
    Ok(ShiftReport {
        lhs: lhs.value,
        rhs: rhs.value,
        rel_dev,
        agree: rel_dev <= rel_tol,
    })
}
