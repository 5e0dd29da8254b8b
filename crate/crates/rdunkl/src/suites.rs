//! Verification suites: every closed-form identity the library implements,
//! re-checked at desk scale and emitted as a machine-readable report.
//!
//! Suites run on fixed default grids (the acceptance fixtures); CLI flags
//! narrow a grid to a single point or override tolerances. Randomized
//! property suites draw from a seeded generator, so a fixed seed
//! reproduces the full report byte for byte.

use num_complex::Complex64;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::dunkl::{bernstein_check, eval_pairing_check, induction_step_check, DunklContext};
use crate::error::Error;
use crate::gamma::gpochhammer;
use crate::hyp::{bessel_j, binomial_check, decay_bound_check, shift_factorization_check};
use crate::jack::{cached_table, stability_check, JackTable};
use crate::laplace::{
    kadell_check, laplace_power_check, laplace_shift_check, macdonald_check, mehta_check,
};
use crate::partition::{partitions_up_to, Partition};
use crate::poly::MultiPoly;
use crate::report::{CaseReport, SuiteReport};
use crate::riesz::{
    discrete_wallach_laplace_check, discrete_wallach_series_check, nonneg_scan, sign_witness,
    wallach_classify, Verdict,
};
use crate::scalar::{rat, rat_int, ComplexRat, Prec, Rat};

/// The named verification suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteId {
    Jack,
    Bernstein,
    EvalPairing,
    Binomial,
    Mehta,
    Macdonald,
    Kadell,
    LaplacePower,
    DiscreteWallach,
    Wallach,
    BesselProperties,
}

impl SuiteId {
    pub const ALL: [SuiteId; 11] = [
        SuiteId::Jack,
        SuiteId::Bernstein,
        SuiteId::EvalPairing,
        SuiteId::Binomial,
        SuiteId::Mehta,
        SuiteId::Macdonald,
        SuiteId::Kadell,
        SuiteId::LaplacePower,
        SuiteId::DiscreteWallach,
        SuiteId::Wallach,
        SuiteId::BesselProperties,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SuiteId::Jack => "jack",
            SuiteId::Bernstein => "bernstein",
            SuiteId::EvalPairing => "eval-pairing",
            SuiteId::Binomial => "binomial",
            SuiteId::Mehta => "mehta",
            SuiteId::Macdonald => "macdonald",
            SuiteId::Kadell => "kadell",
            SuiteId::LaplacePower => "laplace-power",
            SuiteId::DiscreteWallach => "discrete-wallach",
            SuiteId::Wallach => "wallach",
            SuiteId::BesselProperties => "bessel-properties",
        }
    }

    pub fn parse(s: &str) -> Option<SuiteId> {
        SuiteId::ALL.iter().copied().find(|id| id.name() == s)
    }
}

/// Narrowing and overrides shared by every suite.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    pub n: Option<usize>,
    pub k: Option<Rat>,
    pub alpha: Option<Rat>,
    pub mu: Option<Rat>,
    pub nu: Option<Rat>,
    pub a: Option<Rat>,
    pub lambda: Option<Partition>,
    pub z: Option<Vec<ComplexRat>>,
    pub tol: Option<f64>,
    pub max_degree: Option<u32>,
    pub seed: u64,
    pub force: bool,
    pub prec: Prec,
    /// Flags raised while parsing decimal-syntax inputs; surfaced as
    /// report annotations since decimals are routed through exact
    /// rationals of their literal value.
    pub decimal_inputs: Vec<String>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: None,
            k: None,
            alpha: None,
            mu: None,
            nu: None,
            a: None,
            lambda: None,
            z: None,
            tol: None,
            max_degree: None,
            seed: 42,
            force: false,
            prec: Prec::default_env(),
            decimal_inputs: Vec::new(),
        }
    }
}

impl SuiteConfig {
    fn ns(&self, default: &[usize]) -> Vec<usize> {
        match self.n {
            Some(n) => vec![n],
            None => default.to_vec(),
        }
    }

    fn ks(&self, default: &[Rat]) -> Vec<Rat> {
        if let Some(k) = &self.k {
            return vec![k.clone()];
        }
        if let Some(a) = &self.alpha {
            return vec![Rat::one() / a];
        }
        default.to_vec()
    }

    fn tol(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }

    fn annotate(&self, report: &mut SuiteReport) {
        for d in &self.decimal_inputs {
            report
                .warnings
                .push(format!("decimal input {d} parsed as an exact rational"));
        }
    }
}

pub fn run_suite(id: SuiteId, cfg: &SuiteConfig) -> SuiteReport {
    let mut report = match id {
        SuiteId::Jack => jack_suite(cfg),
        SuiteId::Bernstein => bernstein_suite(cfg),
        SuiteId::EvalPairing => eval_pairing_suite(cfg),
        SuiteId::Binomial => binomial_suite(cfg),
        SuiteId::Mehta => mehta_suite(cfg),
        SuiteId::Macdonald => macdonald_suite(cfg),
        SuiteId::Kadell => kadell_suite(cfg),
        SuiteId::LaplacePower => laplace_power_suite(cfg),
        SuiteId::DiscreteWallach => discrete_wallach_suite(cfg),
        SuiteId::Wallach => wallach_suite(cfg),
        SuiteId::BesselProperties => bessel_properties_suite(cfg),
    };
    cfg.annotate(&mut report);
    report
}

/// Runs the given suites sequentially, or each on its own thread when
/// `parallel` is set; report order is fixed either way.
pub fn run_suites(ids: &[SuiteId], cfg: &SuiteConfig, parallel: bool) -> Vec<SuiteReport> {
    if !parallel || ids.len() <= 1 {
        return ids.iter().map(|id| run_suite(*id, cfg)).collect();
    }
    let mut slots: Vec<Option<SuiteReport>> = (0..ids.len()).map(|_| None).collect();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for id in ids {
            let cfg = cfg.clone();
            handles.push(scope.spawn(move || run_suite(*id, &cfg)));
        }
        for (slot, handle) in slots.iter_mut().zip(handles) {
            *slot = Some(handle.join().expect("suite thread"));
        }
    });
    slots.into_iter().map(|s| s.expect("filled slot")).collect()
}

fn table_for(n: usize, alpha: &Rat, degree: u32) -> Result<std::sync::Arc<JackTable>, Error> {
    cached_table(n, alpha, degree)
}

// ---------------------------------------------------------------------
// jack: normalization, nonnegativity, stability and the 1_r ratio.
// ---------------------------------------------------------------------

fn jack_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("jack");
    let max_degree = cfg.max_degree.unwrap_or(6);
    let alphas: Vec<Rat> = if let Some(a) = &cfg.alpha {
        vec![a.clone()]
    } else if let Some(k) = &cfg.k {
        vec![Rat::one() / k]
    } else {
        vec![rat(1, 2), rat_int(1), rat_int(2), rat_int(3)]
    };

    for n in cfg.ns(&[2, 3]) {
        for alpha in &alphas {
            let inputs = json!({ "n": n, "alpha": alpha.to_string(), "max_degree": max_degree });
            let table = match table_for(n, alpha, max_degree) {
                Ok(t) => t,
                Err(e) => {
                    rep.push(CaseReport::error(
                        format!("jack table n={n} alpha={alpha}"),
                        inputs,
                        e.to_string(),
                    ));
                    continue;
                }
            };
            // Normalization: sum_{|lambda|=m} C_lambda = (sum x)^m, exact,
            // re-expanded independently of the construction's own check.
            let mut norm_ok = true;
            let mut nonneg_ok = true;
            for m in 0..=max_degree {
                let mut sum = MultiPoly::zero(n);
                for e in table.entries_of_degree(m).expect("built degree") {
                    sum = sum.checked_add(&e.c_poly).expect("same ring");
                    nonneg_ok &= e.c_poly.terms().all(|(_, c)| !c.is_negative());
                }
                norm_ok &= sum == MultiPoly::coordinate_sum(n).pow(m);
            }
            rep.push(CaseReport::exact(
                format!("normalization n={n} alpha={alpha} m<={max_degree}"),
                inputs.clone(),
                if norm_ok { "sum C = (sum x)^m" } else { "mismatch" },
                "sum C = (sum x)^m",
                norm_ok,
            ));
            rep.push(CaseReport::exact(
                format!("nonnegative-coefficients n={n} alpha={alpha} m<={max_degree}"),
                inputs,
                if nonneg_ok { "all >= 0" } else { "negative found" },
                "all >= 0",
                nonneg_ok,
            ));
        }
    }

    // Stability and the ratio C(1_r)/C(1_n) = [kr]/[kn], n = 3 grid.
    let ratio_degree = cfg.max_degree.unwrap_or(5).min(5);
    for n in cfg.ns(&[3]) {
        if n < 2 {
            continue;
        }
        for k in cfg.ks(&[rat(1, 3), rat(1, 2), rat_int(2)]) {
            let alpha = Rat::one() / &k;
            let inputs = json!({
                "n": n, "k": k.to_string(), "max_weight": ratio_degree
            });
            let table_n = match table_for(n, &alpha, ratio_degree) {
                Ok(t) => t,
                Err(e) => {
                    rep.push(CaseReport::error("stability table", inputs, e.to_string()));
                    continue;
                }
            };
            let mut ok = true;
            let mut detail = String::new();
            for r in 1..n {
                let table_r = match table_for(r, &alpha, ratio_degree) {
                    Ok(t) => t,
                    Err(e) => {
                        ok = false;
                        detail = e.to_string();
                        break;
                    }
                };
                for m in 0..=ratio_degree {
                    for entry in table_n.entries_of_degree(m).expect("built") {
                        let lam = &entry.partition;
                        match stability_check(lam, &table_n, &table_r) {
                            Ok(true) => {}
                            Ok(false) => {
                                ok = false;
                                detail = format!("stability fails at lambda={lam} r={r}");
                            }
                            Err(e) => {
                                ok = false;
                                detail = e.to_string();
                            }
                        }
                        let c1n = entry.at_ones(n);
                        let lhs = entry.at_ones(r) / &c1n;
                        let rhs = gpochhammer(&(&k * rat_int(r as i64)), lam, &k)
                            / gpochhammer(&(&k * rat_int(n as i64)), lam, &k);
                        if lhs != rhs {
                            ok = false;
                            detail = format!("ratio fails at lambda={lam} r={r}");
                        }
                    }
                }
            }
            rep.push(CaseReport::exact(
                format!("stability-ratio n={n} k={k} |lambda|<={ratio_degree}"),
                inputs,
                if ok { "exact".to_string() } else { detail },
                "exact",
                ok,
            ));
        }
    }
    rep
}

// ---------------------------------------------------------------------
// bernstein: D(T(k)) D(x)^a = b_k(a) D(x)^{a-1} plus the recursion step.
// ---------------------------------------------------------------------

fn bernstein_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("bernstein");
    let exponents: Vec<u32> = match &cfg.a {
        Some(a) if a.is_integer() && a.is_positive() => {
            vec![num_traits::ToPrimitive::to_u32(&a.to_integer()).unwrap_or(1)]
        }
        _ => vec![1, 2, 3, 4],
    };
    for n in cfg.ns(&[2, 3, 4]) {
        for k in cfg.ks(&[rat(1, 3), rat(1, 2), rat_int(1), rat(5, 2)]) {
            let inputs = json!({
                "n": n, "k": k.to_string(), "a": exponents.clone()
            });
            let ctx = match DunklContext::new(n, k.clone()) {
                Ok(c) => c,
                Err(e) => {
                    rep.push(CaseReport::error("context", inputs, e.to_string()));
                    continue;
                }
            };
            let mut identity_ok = true;
            let mut induction_ok = true;
            let mut detail = String::new();
            for &a in &exponents {
                match bernstein_check(&ctx, a) {
                    Ok(chk) if chk.equal => {}
                    Ok(_) => {
                        identity_ok = false;
                        detail = format!("identity fails at a={a}");
                    }
                    Err(e) => {
                        identity_ok = false;
                        detail = e.to_string();
                    }
                }
                for i in 1..=n {
                    match induction_step_check(&ctx, a, i) {
                        Ok(true) => {}
                        Ok(false) => {
                            induction_ok = false;
                            detail = format!("induction step fails at a={a} i={i}");
                        }
                        Err(e) => {
                            induction_ok = false;
                            detail = e.to_string();
                        }
                    }
                }
            }
            rep.push(CaseReport::exact(
                format!("bernstein n={n} k={k}"),
                inputs.clone(),
                if identity_ok {
                    "exact".to_string()
                } else {
                    detail.clone()
                },
                "exact",
                identity_ok,
            ));
            rep.push(CaseReport::exact(
                format!("bernstein-induction n={n} k={k}"),
                inputs,
                if induction_ok { "exact".to_string() } else { detail },
                "exact",
                induction_ok,
            ));
        }
    }
    rep
}

// ---------------------------------------------------------------------
// eval-pairing: sum_nu [mu]_nu g_{lambda nu}/|nu|! = [mu]_lambda.
// ---------------------------------------------------------------------

fn eval_pairing_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("eval-pairing");
    let max_weight = cfg.max_degree.unwrap_or(4).min(6);
    let mus: Vec<Rat> = match &cfg.mu {
        Some(m) => vec![m.clone()],
        None => vec![
            rat(1, 3),
            rat_int(2),
            rat(7, 5),
            rat(-1, 2),
            rat(9, 7),
            rat_int(4),
        ],
    };
    for n in cfg.ns(&[2, 3]) {
        for k in cfg.ks(&[rat(1, 2), rat(2, 3)]) {
            let alpha = Rat::one() / &k;
            let inputs = json!({
                "n": n, "k": k.to_string(), "max_weight": max_weight,
                "mu_samples": mus.iter().map(|m| m.to_string()).collect::<Vec<_>>()
            });
            let table = match table_for(n, &alpha, max_weight) {
                Ok(t) => t,
                Err(e) => {
                    rep.push(CaseReport::error("table", inputs, e.to_string()));
                    continue;
                }
            };
            let mut ok = true;
            let mut detail = String::new();
            let lambdas: Vec<Partition> = match &cfg.lambda {
                Some(l) => vec![l.clone()],
                None => partitions_up_to(max_weight, n).into_iter().flatten().collect(),
            };
            for lam in &lambdas {
                match eval_pairing_check(&table, lam, &mus) {
                    Ok(r) if r.all_equal => {}
                    Ok(_) => {
                        ok = false;
                        detail = format!("pairing fails at lambda={lam}");
                    }
                    Err(e) => {
                        ok = false;
                        detail = e.to_string();
                    }
                }
            }
            rep.push(CaseReport::exact(
                format!("eval-pairing n={n} k={k} |lambda|<={max_weight}"),
                inputs,
                if ok { "exact".to_string() } else { detail },
                "exact",
                ok,
            ));
        }
    }
    rep
}

// ---------------------------------------------------------------------
// binomial: Yan's 1F0 formula, exact per degree.
// ---------------------------------------------------------------------

fn binomial_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("binomial");
    let grid: Vec<(usize, Rat, u32)> = {
        let base = vec![(2usize, rat_int(2), 6u32), (3, rat(1, 2), 4)];
        base.into_iter()
            .filter(|(n, _, _)| cfg.n.map_or(true, |want| want == *n))
            .map(|(n, alpha, deg)| {
                let alpha = cfg
                    .alpha
                    .clone()
                    .or_else(|| cfg.k.as_ref().map(|k| Rat::one() / k))
                    .unwrap_or(alpha);
                (n, alpha, cfg.max_degree.unwrap_or(deg))
            })
            .collect()
    };
    let avals: Vec<Rat> = match &cfg.a {
        Some(a) => vec![a.clone()],
        None => vec![rat(5, 3), rat(-1, 2), rat_int(3)],
    };
    for (n, alpha, deg) in grid {
        let table = match table_for(n, &alpha, deg) {
            Ok(t) => t,
            Err(e) => {
                rep.push(CaseReport::error(
                    format!("binomial table n={n}"),
                    json!({ "n": n, "alpha": alpha.to_string() }),
                    e.to_string(),
                ));
                continue;
            }
        };
        for a in &avals {
            let inputs = json!({
                "n": n, "alpha": alpha.to_string(), "a": a.to_string(), "max_degree": deg
            });
            match binomial_check(a, &table, deg) {
                Ok(r) => {
                    let bad: Vec<u32> = r
                        .per_degree
                        .iter()
                        .filter(|(_, ok)| !ok)
                        .map(|(m, _)| *m)
                        .collect();
                    rep.push(CaseReport::exact(
                        format!("binomial n={n} alpha={alpha} a={a} m<={deg}"),
                        inputs,
                        if r.all_equal {
                            "exact per degree".to_string()
                        } else {
                            format!("mismatch at degrees {bad:?}")
                        },
                        "exact per degree",
                        r.all_equal,
                    ));
                }
                Err(e) => rep.push(CaseReport::error(
                    format!("binomial n={n} a={a}"),
                    inputs,
                    e.to_string(),
                )),
            }
        }
    }
    rep
}

// ---------------------------------------------------------------------
// Quadrature-backed suites.
// ---------------------------------------------------------------------

fn mehta_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("mehta");
    let grid: Vec<(usize, Rat, f64)> = vec![
        (2, rat(1, 2), 1e-6),
        (2, rat_int(1), 1e-6),
        (3, rat(1, 2), 1e-3),
    ];
    let selected: Vec<(usize, Rat, f64)> = match (cfg.n, &cfg.k) {
        (None, None) => grid,
        _ => {
            let ns = cfg.ns(&[2, 3]);
            let ks = cfg.ks(&[rat(1, 2), rat_int(1)]);
            ns.into_iter()
                .flat_map(|n| {
                    ks.iter()
                        .map(move |k| (n, k.clone(), if n >= 3 { 1e-3 } else { 1e-6 }))
                        .collect::<Vec<_>>()
                })
                .collect()
        }
    };
    for (n, k, tol) in selected {
        let tol = cfg.tol(tol);
        let inputs = json!({ "n": n, "k": k.to_string(), "tol": tol });
        if n > crate::laplace::DESK_DIM_CAP && !cfg.force {
            rep.skip(format!(
                "mehta n={n}: beyond the desk-scale cap, skipped (use --force to run)"
            ));
            continue;
        }
        match mehta_check(n, &k, tol, cfg.prec) {
            Ok(r) => rep.push(CaseReport::from_identity(inputs, &r)),
            Err(Error::CostCap(w)) => rep.skip(w),
            Err(e) => rep.push(CaseReport::error(
                format!("mehta n={n} k={k}"),
                inputs,
                e.to_string(),
            )),
        }
    }
    rep
}

fn macdonald_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("macdonald");
    let n = cfg.n.unwrap_or(2);
    let k = cfg.ks(&[rat(1, 2)]).remove(0);
    let mu = cfg.mu.clone().unwrap_or_else(|| rat_int(2));
    let tol = cfg.tol(1e-4);
    let lambdas: Vec<Partition> = match &cfg.lambda {
        Some(l) => vec![l.clone()],
        None => vec![
            Partition::empty(),
            Partition::row(1),
            Partition::row(2),
            Partition::ones(2),
        ],
    };
    let alpha = Rat::one() / &k;
    let max_w = lambdas.iter().map(|l| l.weight()).max().unwrap_or(0);
    let table = match table_for(n.max(1), &alpha, max_w) {
        Ok(t) => t,
        Err(e) => {
            rep.push(CaseReport::error("table", json!({ "n": n }), e.to_string()));
            return rep;
        }
    };
    for lam in lambdas {
        let inputs = json!({
            "n": n, "k": k.to_string(), "mu": mu.to_string(),
            "lambda": lam.to_string(), "tol": tol
        });
        if n > crate::laplace::DESK_DIM_CAP && !cfg.force {
            rep.skip(format!("macdonald n={n}: beyond the desk-scale cap"));
            continue;
        }
        match macdonald_check(n, &k, &mu, &lam, &table, tol, cfg.prec) {
            Ok(r) => rep.push(CaseReport::from_identity(inputs, &r)),
            Err(Error::CostCap(w)) => rep.skip(w),
            Err(e) => rep.push(CaseReport::error(
                format!("macdonald lambda={lam}"),
                inputs,
                e.to_string(),
            )),
        }
    }
    rep
}

fn kadell_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("kadell");
    let n = cfg.n.unwrap_or(2);
    let k = cfg.ks(&[rat(1, 2)]).remove(0);
    let mu = cfg.mu.clone().unwrap_or_else(|| rat_int(2));
    let nu = cfg.nu.clone().unwrap_or_else(|| rat_int(2));
    let tol = cfg.tol(1e-4);
    let lam = cfg.lambda.clone().unwrap_or_else(|| Partition::row(1));
    let inputs = json!({
        "n": n, "k": k.to_string(), "mu": mu.to_string(), "nu": nu.to_string(),
        "lambda": lam.to_string(), "tol": tol
    });
    if n > crate::laplace::DESK_DIM_CAP && !cfg.force {
        rep.skip(format!("kadell n={n}: beyond the desk-scale cap"));
        return rep;
    }
    let alpha = Rat::one() / &k;
    match table_for(n, &alpha, lam.weight())
        .map_err(Error::from)
        .and_then(|t| kadell_check(n, &k, &mu, &nu, &lam, &t, tol, cfg.prec))
    {
        Ok(r) => rep.push(CaseReport::from_identity(inputs, &r)),
        Err(Error::CostCap(w)) => rep.skip(w),
        Err(e) => rep.push(CaseReport::error("kadell", inputs, e.to_string())),
    }
    rep
}

fn default_z_pairs() -> Vec<Vec<Complex64>> {
    vec![
        vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)],
        vec![Complex64::new(1.0, 0.5), Complex64::new(2.0, 0.0)],
    ]
}

fn laplace_power_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("laplace-power");
    let n = cfg.n.unwrap_or(2);
    let k = cfg.ks(&[rat(3, 4)]).remove(0);
    let tol = cfg.tol(1e-4);
    let mus: Vec<Rat> = match &cfg.mu {
        Some(m) => vec![m.clone()],
        None => vec![rat(17, 10), rat(5, 2)],
    };
    let zs: Vec<Vec<Complex64>> = match &cfg.z {
        Some(z) => vec![z.iter().map(ComplexRat::to_c64).collect()],
        None => default_z_pairs(),
    };
    if n > crate::laplace::DESK_DIM_CAP && !cfg.force {
        rep.skip(format!("laplace-power n={n}: beyond the desk-scale cap"));
        return rep;
    }
    for mu in &mus {
        for z in &zs {
            let z_str: Vec<String> = z.iter().map(|c| format!("{c}")).collect();
            let inputs = json!({
                "n": n, "k": k.to_string(), "mu": mu.to_string(), "z": z_str, "tol": tol
            });
            match laplace_power_check(n, &k, mu, z, tol, cfg.prec) {
                Ok(r) => rep.push(CaseReport::from_identity(inputs, &r)),
                Err(Error::CostCap(w)) => rep.skip(w),
                Err(e) => rep.push(CaseReport::error(
                    format!("laplace-power mu={mu}"),
                    inputs,
                    e.to_string(),
                )),
            }
        }
    }
    // Shift consistency on the same density family.
    let shift_inputs = json!({ "n": 2, "k": "1/2", "mu": "2", "s": 0.5, "z": ["1", "1"] });
    match laplace_shift_check(
        2,
        &rat(1, 2),
        &rat_int(2),
        0.5,
        &[Complex64::one(), Complex64::one()],
        tol,
    ) {
        Ok(r) => rep.push(CaseReport {
            name: "laplace-shift n=2 k=1/2 mu=2 s=1/2".into(),
            inputs: shift_inputs,
            computed: crate::report::complex_value(r.lhs.re, r.lhs.im),
            reference: crate::report::complex_value(r.rhs.re, r.rhs.im),
            abs_err: Some((r.lhs - r.rhs).norm()),
            rel_err: Some(r.rel_dev),
            pass: r.agree,
        }),
        Err(e) => rep.push(CaseReport::error("laplace-shift", shift_inputs, e.to_string())),
    }
    rep
}

fn discrete_wallach_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("discrete-wallach");
    // Numeric Laplace identities on the boundary strata.
    let z12 = vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)];
    let z3_spread = vec![
        Complex64::new(1.5, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(2.5, 0.0),
    ];
    let z3_const = vec![Complex64::new(2.0, 0.0); 3];
    let numeric: Vec<(usize, usize, Rat, Vec<Complex64>, f64)> = vec![
        (2, 1, rat(1, 2), z12.clone(), 1e-4),
        (2, 1, rat_int(1), z12, 1e-4),
        (3, 1, rat(1, 2), z3_spread, 1e-3),
        (3, 2, rat(1, 2), z3_const, 1e-3),
    ];
    let selected: Vec<_> = numeric
        .into_iter()
        .filter(|(n, _, k, _, _)| {
            cfg.n.map_or(true, |want| want == *n) && cfg.k.as_ref().map_or(true, |kk| kk == k)
        })
        .collect();
    for (n, r, k, z, tol) in selected {
        let tol = cfg.tol(tol);
        let z = match &cfg.z {
            Some(zz) if zz.len() == n => zz.iter().map(ComplexRat::to_c64).collect(),
            _ => z,
        };
        let z_str: Vec<String> = z.iter().map(|c| format!("{c}")).collect();
        let inputs = json!({
            "n": n, "r": r, "k": k.to_string(), "z": z_str, "tol": tol
        });
        match discrete_wallach_laplace_check(n, r, &k, &z, tol, cfg.prec) {
            Ok(rep_id) => rep.push(CaseReport::from_identity(inputs, &rep_id)),
            Err(Error::CostCap(w)) => rep.skip(w),
            Err(e) => rep.push(CaseReport::error(
                format!("discrete-wallach n={n} r={r}"),
                inputs,
                e.to_string(),
            )),
        }
    }
    // Exact length-restricted series identity through degree 5.
    let series_degree = cfg.max_degree.unwrap_or(5);
    for (n, r) in [(2usize, 1usize), (3, 1), (3, 2)] {
        if cfg.n.is_some_and(|want| want != n) {
            continue;
        }
        let k = cfg.ks(&[rat(1, 2)]).remove(0);
        let alpha = Rat::one() / &k;
        let inputs = json!({
            "n": n, "r": r, "k": k.to_string(), "max_degree": series_degree
        });
        match table_for(n, &alpha, series_degree)
            .and_then(|t| discrete_wallach_series_check(n, r, &t, series_degree))
        {
            Ok(s) => {
                rep.push(CaseReport::exact(
                    format!("series-identity n={n} r={r} k={k} m<={series_degree}"),
                    inputs,
                    if s.all_equal {
                        "vanishing + per-degree match".to_string()
                    } else {
                        format!(
                            "vanishing_ok={} per_degree={:?}",
                            s.vanishing_ok, s.per_degree
                        )
                    },
                    "vanishing + per-degree match",
                    s.all_equal,
                ));
            }
            Err(e) => rep.push(CaseReport::error(
                format!("series-identity n={n} r={r}"),
                inputs,
                e.to_string(),
            )),
        }
    }
    rep
}

// ---------------------------------------------------------------------
// wallach: classifier sweep against the theorem.
// ---------------------------------------------------------------------

fn wallach_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("wallach");
    for n in cfg.ns(&[2, 3, 4]) {
        for k in cfg.ks(&[rat(1, 3), rat(1, 2), rat_int(2)]) {
            let step = &k / rat_int(4);
            let lo = -4i64;
            let hi = 4 * (n as i64 + 1);
            let mut points = 0usize;
            let mut failures: Vec<String> = Vec::new();
            for i in lo..=hi {
                let mu = &step * rat_int(i);
                points += 1;
                let verdict = match wallach_classify(&ComplexRat::real(mu.clone()), n, &k) {
                    Ok(v) => v,
                    Err(e) => {
                        failures.push(format!("mu={mu}: {e}"));
                        continue;
                    }
                };
                let mu0 = &k * rat_int(n as i64 - 1);
                let expect_positive = mu > mu0
                    || (!mu.is_negative() && (&mu / &k).is_integer() && mu <= mu0);
                let got_positive = matches!(
                    verdict.verdict,
                    Verdict::PositiveMeasureContinuous | Verdict::PositiveMeasureDiscrete(_)
                );
                if expect_positive != got_positive {
                    failures.push(format!("mu={mu}: verdict {:?}", verdict.verdict));
                    continue;
                }
                if got_positive {
                    // Shanbhag necessary condition: no negative Pochhammer
                    // value anywhere in the scan range.
                    if let Some(bad) = nonneg_scan(&mu, n, &k, n as u32) {
                        failures.push(format!("mu={mu}: negative [mu]_{bad}"));
                    }
                    if verdict.witness.is_some() {
                        failures.push(format!("mu={mu}: unexpected witness"));
                    }
                } else if !mu.is_negative() {
                    // Every gap point must carry a strictly negative witness.
                    match (&verdict.witness, &verdict.witness_value) {
                        (Some(w), Some(v)) if v.is_negative() => {
                            if sign_witness(&mu, n, &k).ok().flatten().as_ref() != Some(w) {
                                failures.push(format!("mu={mu}: witness mismatch"));
                            }
                        }
                        _ => failures.push(format!("mu={mu}: missing witness")),
                    }
                }
            }
            let inputs = json!({
                "n": n, "k": k.to_string(),
                "grid": format!("mu = i*k/4, i in [{lo}, {hi}]"),
                "points": points
            });
            rep.push(CaseReport::exact(
                format!("wallach-sweep n={n} k={k}"),
                inputs,
                if failures.is_empty() {
                    format!("{points} points agree")
                } else {
                    failures.join("; ")
                },
                format!("{points} points agree"),
                failures.is_empty(),
            ));
        }
    }
    rep
}

// ---------------------------------------------------------------------
// bessel-properties: randomized trials with a fixed seed.
// ---------------------------------------------------------------------

struct TrialEnv {
    tables: Vec<(usize, Rat, std::sync::Arc<JackTable>)>,
}

impl TrialEnv {
    fn new() -> Result<TrialEnv, Error> {
        let mut tables = Vec::new();
        for n in [2usize, 3] {
            for alpha in [rat_int(2), rat(4, 5)] {
                tables.push((n, alpha.clone(), cached_table(n, &alpha, 8)?));
            }
        }
        Ok(TrialEnv { tables })
    }

    fn pick(&self, rng: &mut ChaCha8Rng) -> (usize, std::sync::Arc<JackTable>) {
        let idx = rng.gen_range(0..self.tables.len());
        let (n, _, t) = &self.tables[idx];
        (*n, t.clone())
    }
}

fn rand_real(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    rng.gen_range(lo..hi)
}

fn bessel_properties_suite(cfg: &SuiteConfig) -> SuiteReport {
    let mut rep = SuiteReport::new("bessel-properties");
    let trials = 200usize;
    let tol = cfg.tol(1e-10);
    let max_degree = cfg.max_degree.unwrap_or(120);
    let env = match TrialEnv::new() {
        Ok(e) => e,
        Err(e) => {
            rep.push(CaseReport::error("tables", json!({}), e.to_string()));
            return rep;
        }
    };

    let properties: Vec<(&str, Box<dyn Fn(&mut ChaCha8Rng) -> Result<bool, Error>>)> = vec![
        (
            "exp-at-ones",
            Box::new(|rng: &mut ChaCha8Rng| {
                let (n, table) = env.pick(rng);
                let x = vec![1.0; n];
                let z: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rand_real(rng, -1.0, 1.0), rand_real(rng, -1.0, 1.0)))
                    .collect();
                let ev = bessel_j(&x, &z, &table, 1e-12, max_degree)?;
                let expect: Complex64 = z.iter().sum::<Complex64>().exp();
                Ok((ev.value - expect).norm() <= tol * expect.norm() + ev.tail_bound)
            }),
        ),
        (
            "shift-factorization",
            Box::new(|rng: &mut ChaCha8Rng| {
                let (n, table) = env.pick(rng);
                let x: Vec<f64> = (0..n).map(|_| rand_real(rng, -1.0, 1.0)).collect();
                let z: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rand_real(rng, -1.0, 1.0), rand_real(rng, -0.5, 0.5)))
                    .collect();
                let s = rand_real(rng, -0.7, 0.7);
                shift_factorization_check(&x, &z, s, &table, tol, max_degree)
            }),
        ),
        (
            "decay-bound",
            Box::new(|rng: &mut ChaCha8Rng| {
                let (n, table) = env.pick(rng);
                let x: Vec<f64> = (0..n).map(|_| rand_real(rng, 0.0, 1.0)).collect();
                let s = rand_real(rng, 0.2, 0.8);
                let z: Vec<Complex64> = (0..n)
                    .map(|_| {
                        Complex64::new(s + rand_real(rng, 0.0, 0.4), rand_real(rng, -0.3, 0.3))
                    })
                    .collect();
                decay_bound_check(&x, &z, &table, tol, max_degree)
            }),
        ),
        (
            "imaginary-argument-bound",
            Box::new(|rng: &mut ChaCha8Rng| {
                let (n, table) = env.pick(rng);
                let x: Vec<f64> = (0..n).map(|_| rand_real(rng, -1.0, 1.0)).collect();
                let y: Vec<f64> = (0..n).map(|_| rand_real(rng, -1.0, 1.0)).collect();
                // |J(ix, y)| <= 1 with J(ix, y) = J(y, ix) by symmetry.
                let z: Vec<Complex64> = x.iter().map(|&v| Complex64::new(0.0, v)).collect();
                let ev = bessel_j(&y, &z, &table, 1e-12, max_degree)?;
                Ok(ev.value.norm() <= 1.0 + tol + ev.tail_bound)
            }),
        ),
        (
            "permutation-symmetry",
            Box::new(|rng: &mut ChaCha8Rng| {
                let (n, table) = env.pick(rng);
                let x: Vec<f64> = (0..n).map(|_| rand_real(rng, -1.0, 1.0)).collect();
                let z: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rand_real(rng, -1.0, 1.0), rand_real(rng, -1.0, 1.0)))
                    .collect();
                let i = rng.gen_range(0..n);
                let j = (i + 1 + rng.gen_range(0..n - 1)) % n;
                let mut xs = x.clone();
                xs.swap(i, j);
                let a = bessel_j(&x, &z, &table, 1e-12, max_degree)?;
                let b = bessel_j(&xs, &z, &table, 1e-12, max_degree)?;
                let scale = a.value.norm().max(b.value.norm()).max(1.0);
                Ok((a.value - b.value).norm()
                    <= tol * scale + a.tail_bound + b.tail_bound)
            }),
        ),
        (
            "positivity-real-arguments",
            Box::new(|rng: &mut ChaCha8Rng| {
                let (n, table) = env.pick(rng);
                let x: Vec<f64> = (0..n).map(|_| rand_real(rng, -1.0, 1.0)).collect();
                let z: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rand_real(rng, -1.0, 1.0), 0.0))
                    .collect();
                let ev = bessel_j(&x, &z, &table, 1e-12, max_degree)?;
                Ok(ev.value.re > ev.tail_bound && ev.value.im.abs() <= ev.tail_bound + 1e-14)
            }),
        ),
        (
            "scaling-symmetry",
            Box::new(|rng: &mut ChaCha8Rng| {
                let (n, table) = env.pick(rng);
                let x: Vec<f64> = (0..n).map(|_| rand_real(rng, -1.0, 1.0)).collect();
                let z: Vec<Complex64> = (0..n)
                    .map(|_| Complex64::new(rand_real(rng, -1.0, 1.0), rand_real(rng, -0.5, 0.5)))
                    .collect();
                let lam = rand_real(rng, -1.2, 1.2);
                let xs: Vec<f64> = x.iter().map(|&v| lam * v).collect();
                let zs: Vec<Complex64> = z.iter().map(|&v| lam * v).collect();
                let a = bessel_j(&xs, &z, &table, 1e-12, max_degree)?;
                let b = bessel_j(&x, &zs, &table, 1e-12, max_degree)?;
                let scale = a.value.norm().max(b.value.norm()).max(1.0);
                Ok((a.value - b.value).norm()
                    <= tol * scale + a.tail_bound + b.tail_bound)
            }),
        ),
    ];

    for (pi, (name, prop)) in properties.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(pi as u64 * 0x9E37));
        let mut failures = 0usize;
        let mut first_error: Option<String> = None;
        for _ in 0..trials {
            match prop(&mut rng) {
                Ok(true) => {}
                Ok(false) => failures += 1,
                Err(e) => {
                    failures += 1;
                    if first_error.is_none() {
                        first_error = Some(e.to_string());
                    }
                }
            }
        }
        let mut inputs = json!({
            "trials": trials, "tol": tol, "seed": cfg.seed, "n": "2..=3"
        });
        if let Some(err) = first_error {
            inputs["first_error"] = json!(err);
        }
        rep.push(CaseReport::property(*name, inputs, trials, failures));
    }
    rep
}

impl From<Error> for SuiteReport {
    fn from(e: Error) -> Self {
        let mut r = SuiteReport::new("error");
        r.push(CaseReport::error("setup", json!({}), e.to_string()));
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(SuiteId::parse(id.name()), Some(id));
        }
        assert_eq!(SuiteId::parse("nope"), None);
    }

    #[test]
    fn wallach_sweep_passes_smallest_grid() {
        let cfg = SuiteConfig {
            n: Some(2),
            k: Some(rat(1, 2)),
            ..SuiteConfig::default()
        };
        let rep = wallach_suite(&cfg);
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn mehta_suite_single_point() {
        let cfg = SuiteConfig {
            n: Some(2),
            k: Some(rat_int(1)),
            tol: Some(1e-6),
            ..SuiteConfig::default()
        };
        let rep = mehta_suite(&cfg);
        assert!(rep.all_passed(), "{rep:?}");
        assert_eq!(rep.summary.total, 1);
    }

    #[test]
    fn oversize_dimension_is_skipped_without_force() {
        let cfg = SuiteConfig {
            n: Some(5),
            k: Some(rat(1, 2)),
            ..SuiteConfig::default()
        };
        let rep = mehta_suite(&cfg);
        assert_eq!(rep.summary.skipped, 1);
        assert_eq!(rep.summary.failed, 0);
        assert!(!rep.warnings.is_empty());
    }
}
