//! Command-line surface: evaluate objects, run verification suites, emit
//! machine-readable reports.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed, 2 usage
//! error. Rational inputs parse exactly (`1/2` preferred); decimal syntax
//! is parsed to its exact rational value and annotated in the report.

use std::collections::BTreeMap;

use clap::{Parser, Subcommand, ValueEnum};
use num_traits::One;
use serde_json::json;

use crate::error::{Error, Result};
use crate::gamma::{gamma_n, gpochhammer};
use crate::hyp::bessel_j;
use crate::jack::cached_table;
use crate::partition::Partition;
use crate::report::{to_csv, to_text, AggregateReport};
use crate::riesz::{wallach_classify, Verdict};
use crate::scalar::{
    bigfloat as bf, is_decimal_syntax, parse_complex_list, parse_complex_rational,
    parse_rational, Prec, Rat,
};
use crate::suites::{run_suites, SuiteConfig, SuiteId};

#[derive(Parser)]
#[command(
    name = "rdunkl",
    version,
    about = "Type-A rational Dunkl theory: Jack polynomials, Dunkl operators, \
             the Bessel kernel, Riesz densities and the generalized Wallach set",
    after_help = "Default precision is 50 significant digits; override with \
                  the RDUNKL_PREC_DIGITS environment variable or --digits."
)]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Print the Jack polynomial C_lambda^alpha (monomial and m-basis form).
    Jack {
        #[arg(long)]
        n: usize,
        /// Jack parameter alpha as an exact rational.
        #[arg(long, conflicts_with = "k")]
        alpha: Option<String>,
        /// Multiplicity k = 1/alpha, alternative to --alpha.
        #[arg(long)]
        k: Option<String>,
        /// Partition as a comma list, e.g. `2,1`; `0` is the empty partition.
        #[arg(long)]
        lambda: String,
    },
    /// Multivariable Gamma function Gamma_n(mu; k) with exact pole detection.
    GammaN {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: String,
        #[arg(long)]
        mu: String,
        /// Significant digits (default: RDUNKL_PREC_DIGITS or 50).
        #[arg(long)]
        digits: Option<u32>,
    },
    /// Generalized Pochhammer symbol [mu]_lambda^k, exact.
    Pochhammer {
        #[arg(long)]
        mu: String,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        k: String,
    },
    /// Bessel kernel J_k^A(x, z) by certified series truncation.
    Bessel {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: String,
        /// Real coordinates, comma separated.
        #[arg(long)]
        x: String,
        /// Spectral coordinates, comma separated, complex as `a+bi`.
        #[arg(long)]
        z: String,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 120)]
        max_degree: u32,
    },
    /// Classify an index mu against the generalized Wallach set.
    Wallach {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: String,
        /// Index, rational or complex (`a+bi`).
        #[arg(long)]
        mu: String,
    },
    /// Run verification suites and emit a report.
    Verify {
        /// Suite name (jack, bernstein, eval-pairing, binomial, mehta,
        /// macdonald, kadell, laplace-power, discrete-wallach, wallach,
        /// bessel-properties); omit for all.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
        /// Binomial-formula parameter.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        lambda: Option<String>,
        /// Spectral argument list, complex entries as `a+bi`.
        #[arg(long)]
        z: Option<String>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        max_degree: Option<u32>,
        /// Seed for randomized property suites.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Run oversize-dimension quadrature instead of skipping it.
        #[arg(long)]
        force: bool,
        /// Run independent suites on separate threads.
        #[arg(long)]
        parallel: bool,
    },
}

fn parse_partition(s: &str) -> Result<Partition> {
    let s = s.trim();
    if s.is_empty() || s == "0" || s == "()" {
        return Ok(Partition::empty());
    }
    let parts: Vec<u32> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::Parse(format!("bad partition part {p:?}")))
        })
        .collect::<Result<_>>()?;
    Partition::new(parts)
}

fn m_basis_string(coeffs: &BTreeMap<Partition, Rat>) -> String {
    if coeffs.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (lam, c) in coeffs.iter().rev() {
        if !out.is_empty() {
            out.push_str(" + ");
        }
        if !c.is_one() {
            out.push_str(&format!("{c} "));
        }
        let parts: Vec<String> = lam.parts().iter().map(u32::to_string).collect();
        out.push_str(&format!("m[{}]", parts.join(",")));
    }
    out
}

/// Runs a parsed command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            eprintln!(
                "usage: see `rdunkl --help`; report schema: \
                 {{suite, cases: [{{name, inputs, computed, reference, abs_err, rel_err, pass}}], summary}}"
            );
            2
        }
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.cmd {
        Cmd::Jack {
            n,
            alpha,
            k,
            lambda,
        } => {
            let alpha = match (alpha, k) {
                (Some(a), _) => parse_rational(a)?,
                (None, Some(kk)) => Rat::one() / parse_rational(kk)?,
                (None, None) => {
                    return Err(Error::InvalidArgument(
                        "jack needs --alpha or --k".into(),
                    ))
                }
            };
            let lam = parse_partition(lambda)?;
            let table = cached_table(*n, &alpha, lam.weight())?;
            let entry = table.entry(&lam)?;
            let out = json!({
                "n": n,
                "alpha": alpha.to_string(),
                "k": (Rat::one() / &alpha).to_string(),
                "lambda": lam.to_string(),
                "c_at_ones": entry.c_at_one.to_string(),
                "m_basis": m_basis_string(&entry.c_mcoeffs),
                "monomial": entry.c_poly.to_text(),
            });
            emit_value(cli.format, &out);
            Ok(0)
        }
        Cmd::GammaN { n, k, mu, digits } => {
            let kr = parse_rational(k)?;
            let mur = parse_rational(mu)?;
            let prec = digits.map(Prec::from_digits).unwrap_or_default();
            match gamma_n(&mur, *n, &kr, prec) {
                Ok(v) => {
                    let out = json!({
                        "n": n,
                        "k": kr.to_string(),
                        "mu": mur.to_string(),
                        "digits": prec.digits(),
                        "value": bf::to_f64(&v),
                        "value_str": format!("{v}"),
                        "decimal_input": is_decimal_syntax(mu) || is_decimal_syntax(k),
                    });
                    emit_value(cli.format, &out);
                    Ok(0)
                }
                Err(Error::Pole { arg, index, count }) => {
                    let out = json!({
                        "n": n,
                        "k": kr.to_string(),
                        "mu": mur.to_string(),
                        "pole": { "argument": arg, "factor": index, "of": count },
                    });
                    emit_value(cli.format, &out);
                    Ok(1)
                }
                Err(e) => Err(e),
            }
        }
        Cmd::Pochhammer { mu, lambda, k } => {
            let mur = parse_rational(mu)?;
            let kr = parse_rational(k)?;
            let lam = parse_partition(lambda)?;
            let v = gpochhammer(&mur, &lam, &kr);
            let out = json!({
                "mu": mur.to_string(),
                "k": kr.to_string(),
                "lambda": lam.to_string(),
                "value": v.to_string(),
                "value_f64": crate::scalar::rat_to_f64(&v),
            });
            emit_value(cli.format, &out);
            Ok(0)
        }
        Cmd::Bessel {
            n,
            k,
            x,
            z,
            tol,
            max_degree,
        } => {
            let kr = parse_rational(k)?;
            let alpha = Rat::one() / &kr;
            let xs: Vec<f64> = x
                .split(',')
                .map(|v| {
                    parse_rational(v.trim()).map(|r| crate::scalar::rat_to_f64(&r))
                })
                .collect::<Result<_>>()?;
            let zs: Vec<num_complex::Complex64> = parse_complex_list(z)?
                .iter()
                .map(|c| c.to_c64())
                .collect();
            let table = cached_table(*n, &alpha, 1)?;
            let ev = bessel_j(&xs, &zs, &table, *tol, *max_degree)?;
            let out = json!({
                "n": n,
                "k": kr.to_string(),
                "value_re": ev.value.re,
                "value_im": ev.value.im,
                "degree": ev.truncation_degree,
                "tail_bound": ev.tail_bound,
            });
            emit_value(cli.format, &out);
            Ok(0)
        }
        Cmd::Wallach { n, k, mu } => {
            let kr = parse_rational(k)?;
            let mur = parse_complex_rational(mu)?;
            let verdict = wallach_classify(&mur, *n, &kr)?;
            let verdict_str = match &verdict.verdict {
                Verdict::PositiveMeasureContinuous => "positive_measure_continuous".to_string(),
                Verdict::PositiveMeasureDiscrete(r) => {
                    format!("positive_measure_discrete({r})")
                }
                Verdict::NotPositiveMeasure => "not_positive_measure".to_string(),
                Verdict::NotAMeasureCandidate => "not_a_measure_candidate".to_string(),
            };
            let out = json!({
                "n": n,
                "k": kr.to_string(),
                "mu": mu,
                "verdict": verdict_str,
                "witness": verdict.witness.as_ref().map(|w| w.to_string()),
                "pochhammer_value": verdict.witness_value.as_ref().map(|v| v.to_string()),
                "candidate_complex_measure": verdict.candidate_complex_measure,
                "notes": verdict.notes,
                "decimal_input": is_decimal_syntax(mu) || is_decimal_syntax(k),
            });
            emit_value(cli.format, &out);
            Ok(0)
        }
        Cmd::Verify {
            suite,
            n,
            k,
            alpha,
            mu,
            nu,
            a,
            lambda,
            z,
            tol,
            max_degree,
            seed,
            force,
            parallel,
        } => {
            let mut decimal_inputs = Vec::new();
            let mut track = |label: &str, s: &Option<String>| {
                if let Some(v) = s {
                    if is_decimal_syntax(v) {
                        decimal_inputs.push(format!("{label}={v}"));
                    }
                }
            };
            track("k", k);
            track("alpha", alpha);
            track("mu", mu);
            track("nu", nu);
            track("a", a);
            let cfg = SuiteConfig {
                n: *n,
                k: k.as_deref().map(parse_rational).transpose()?,
                alpha: alpha.as_deref().map(parse_rational).transpose()?,
                mu: mu.as_deref().map(parse_rational).transpose()?,
                nu: nu.as_deref().map(parse_rational).transpose()?,
                a: a.as_deref().map(parse_rational).transpose()?,
                lambda: lambda.as_deref().map(parse_partition).transpose()?,
                z: z.as_deref().map(parse_complex_list).transpose()?,
                tol: *tol,
                max_degree: *max_degree,
                seed: *seed,
                force: *force,
                prec: Prec::default_env(),
                decimal_inputs,
            };
            let ids: Vec<SuiteId> = match suite.as_deref() {
                None | Some("all") => SuiteId::ALL.to_vec(),
                Some(name) => {
                    let id = SuiteId::parse(name).ok_or_else(|| {
                        Error::InvalidArgument(format!(
                            "unknown suite {name:?}; known: {}",
                            SuiteId::ALL
                                .iter()
                                .map(|s| s.name())
                                .collect::<Vec<_>>()
                                .join(", ")
                        ))
                    })?;
                    vec![id]
                }
            };
            let suites = run_suites(&ids, &cfg, *parallel);
            let aggregate = AggregateReport::new(suites, cfg.seed);
            match cli.format {
                OutputFormat::Json => {
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&aggregate).expect("serializable report")
                    );
                }
                OutputFormat::Csv => print!("{}", to_csv(&aggregate.suites)),
                OutputFormat::Text => print!("{}", to_text(&aggregate.suites)),
            }
            Ok(if aggregate.all_passed() { 0 } else { 1 })
        }
    }
}

fn emit_value(format: OutputFormat, value: &serde_json::Value) {
    match format {
        OutputFormat::Text => {
            if let Some(obj) = value.as_object() {
                for (key, v) in obj {
                    println!("{key}: {v}");
                }
            } else {
                println!("{value}");
            }
        }
        // Single-value commands emit JSON for both json and csv requests.
        OutputFormat::Json | OutputFormat::Csv => {
            println!(
                "{}",
                serde_json::to_string_pretty(value).expect("serializable value")
            );
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_parsing() {
        assert_eq!(parse_partition("2,1").unwrap(), Partition::new(vec![2, 1]).unwrap());
        assert_eq!(parse_partition("0").unwrap(), Partition::empty());
        assert_eq!(parse_partition("").unwrap(), Partition::empty());
        assert!(parse_partition("1,2").is_err());
        assert!(parse_partition("x").is_err());
    }

    #[test]
    fn m_basis_formatting() {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(Partition::row(2), Rat::one());
        coeffs.insert(Partition::ones(2), crate::scalar::rat(2, 3));
        assert_eq!(m_basis_string(&coeffs), "m[2] + 2/3 m[1,1]");
    }
}
