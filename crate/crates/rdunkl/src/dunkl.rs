//! Exact action of the type-A Dunkl operators on polynomials.
//!
//! T_i(k) = d_i + k sum_{j != i} (1 - sigma_ij)/(x_i - x_j). The divided
//! differences are exact polynomial quotients, so every image stays in the
//! rational ring. The family commutes; composition order is nevertheless
//! fixed (increasing variable index) for determinism, and commutativity is
//! tested rather than assumed.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gamma::{bernstein_factor, factorial, gpochhammer};
use crate::jack::JackTable;
use crate::partition::Partition;
use crate::poly::MultiPoly;
use crate::scalar::{rat_int, Rat};

/// Ambient dimension and exact multiplicity for the operator action.
#[derive(Debug, Clone)]
pub struct DunklContext {
    n: usize,
    k: Rat,
}

impl DunklContext {
    pub fn new(n: usize, k: Rat) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("need at least one variable".into()));
        }
        if k < Rat::zero() {
            return Err(Error::InvalidArgument(format!(
                "multiplicity k must be nonnegative, got {k}"
            )));
        }
        Ok(DunklContext { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> &Rat {
        &self.k
    }

    /// T_i(k) applied to `p` (0-based direction index).
    pub fn apply(&self, i: usize, p: &MultiPoly) -> Result<MultiPoly> {
        if p.nvars() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: p.nvars(),
            });
        }
        if i >= self.n {
            return Err(Error::IndexOutOfRange(format!(
                "direction {i} of {}",
                self.n
            )));
        }
        let mut acc = p.partial_derivative(i)?;
        if !self.k.is_zero() {
            for j in 0..self.n {
                if j == i {
                    continue;
                }
                let dd = p.divided_difference(i, j)?;
                acc = acc.checked_add(&dd.scalar_mul(&self.k))?;
            }
        }
        Ok(acc)
    }

    /// q(T_1, ..., T_n) applied to `p`, monomial by monomial with factors
    /// composed in increasing variable index.
    pub fn operator_substitute(&self, q: &MultiPoly, p: &MultiPoly) -> Result<MultiPoly> {
        if q.nvars() != self.n || p.nvars() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: q.nvars().max(p.nvars()),
            });
        }
        let mut acc = MultiPoly::zero(self.n);
        for (mono, coeff) in q.terms() {
            let mut image = p.clone();
            'mono: for (i, &e) in mono.exps().iter().enumerate() {
                for _ in 0..e {
                    if image.is_zero() {
                        break 'mono;
                    }
                    image = self.apply(i, &image)?;
                }
            }
            acc = acc.checked_add(&image.scalar_mul(coeff))?;
        }
        Ok(acc)
    }

    /// D(T(k)) = T_1 ... T_n applied to `p`.
    pub fn product_operator(&self, p: &MultiPoly) -> Result<MultiPoly> {
        let d = MultiPoly::var_product(self.n, 0, self.n);
        self.operator_substitute(&d, p)
    }
}

/// Outcome of one exact two-sided polynomial comparison.
#[derive(Debug)]
pub struct IdentityCheck {
    pub lhs: MultiPoly,
    pub rhs: MultiPoly,
    pub equal: bool,
}

/// Bernstein identity at a positive integer exponent:
/// D(T(k)) D(x)^a = b_k(a) D(x)^{a-1}, both sides exact polynomials.
pub fn bernstein_check(ctx: &DunklContext, a: u32) -> Result<IdentityCheck> {
    if a == 0 {
        return Err(Error::InvalidArgument(
            "bernstein check needs a >= 1 so both sides are polynomials".into(),
        ));
    }
    let n = ctx.n();
    let d = MultiPoly::var_product(n, 0, n);
    let lhs = ctx.product_operator(&d.pow(a))?;
    let factor = bernstein_factor(&rat_int(i64::from(a)), n, ctx.k());
    let rhs = d.pow(a - 1).scalar_mul(&factor);
    let equal = lhs == rhs;
    Ok(IdentityCheck { lhs, rhs, equal })
}

/// One step of the Bernstein recursion (1-based `i`):
/// T_i(D^{a-1} x_i ... x_n) = (a + k(i-1)) D^{a-1} x_{i+1} ... x_n.
pub fn induction_step_check(ctx: &DunklContext, a: u32, i: usize) -> Result<bool> {
    if a == 0 || i == 0 || i > ctx.n() {
        return Err(Error::InvalidArgument(format!(
            "induction step needs a >= 1 and 1 <= i <= {}, got a={a} i={i}",
            ctx.n()
        )));
    }
    let n = ctx.n();
    let d_pow = MultiPoly::var_product(n, 0, n).pow(a - 1);
    let lhs = ctx.apply(
        i - 1,
        &d_pow.checked_mul(&MultiPoly::var_product(n, i - 1, n))?,
    )?;
    let factor = rat_int(i64::from(a)) + ctx.k() * rat_int(i as i64 - 1);
    let rhs = d_pow
        .checked_mul(&MultiPoly::var_product(n, i, n))?
        .scalar_mul(&factor);
    Ok(lhs == rhs)
}

/// Report of the evaluation pairing against the Pochhammer symbol.
#[derive(Debug)]
pub struct EvalPairingReport {
    pub lambda: Partition,
    /// g_{lambda nu} = (C_lambda / C_lambda(1))(T(k)) C_nu at 0, per nu.
    pub pair_values: BTreeMap<Partition, Rat>,
    /// (mu, lhs, rhs) per sampled mu; lhs = sum_nu [mu]_nu g / |nu|!.
    pub samples: Vec<(Rat, Rat, Rat)>,
    pub all_equal: bool,
}

/// Checks sum_nu [mu]_nu^k g_{lambda nu} / |nu|! = [mu]_lambda^k exactly at
/// every sampled mu. The sum truncates exactly at |nu| = |lambda| because
/// each Dunkl factor lowers degree by one and evaluation is at the origin.
pub fn eval_pairing_check(
    table: &JackTable,
    lam: &Partition,
    mu_samples: &[Rat],
) -> Result<EvalPairingReport> {
    let n = table.n();
    let k = table.k();
    let ctx = DunklContext::new(n, k.clone())?;
    let weight = lam.weight();
    table.ensure_degree(weight)?;
    let lam_entry = table.entry(lam)?;
    let ctilde = lam_entry
        .c_poly
        .scalar_mul(&(Rat::one() / &lam_entry.c_at_one));

    let mut pair_values = BTreeMap::new();
    for nu_entry in table.entries_of_degree(weight)? {
        let image = ctx.operator_substitute(&ctilde, &nu_entry.c_poly)?;
        if let Some(d) = image.degree() {
            if d > 0 {
                return Err(Error::Internal(format!(
                    "pairing image of C_{} under C~_{lam}(T) has positive degree {d}",
                    nu_entry.partition
                )));
            }
        }
        let origin = vec![Rat::zero(); n];
        pair_values.insert(nu_entry.partition.clone(), image.eval_rat(&origin)?);
    }

    let w_fact = Rat::from_integer(factorial(weight));
    let mut samples = Vec::with_capacity(mu_samples.len());
    let mut all_equal = true;
    for mu in mu_samples {
        let mut lhs = Rat::zero();
        for (nu, g) in &pair_values {
            lhs += gpochhammer(mu, nu, &k) * g / &w_fact;
        }
        let rhs = gpochhammer(mu, lam, &k);
        all_equal &= lhs == rhs;
        samples.push((mu.clone(), lhs, rhs));
    }
    Ok(EvalPairingReport {
        lambda: lam.clone(),
        pair_values,
        samples,
        all_equal,
    })
}
