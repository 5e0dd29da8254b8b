//! Exact rational scalars, the multiplicity parameter, and the
//! arbitrary-precision floating layer used by the Gamma functions.

use std::cell::RefCell;
use std::str::FromStr;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used everywhere the theory is exact.
pub type Rat = BigRational;

/// Serializes a rational as its exact `p/q` string.
pub fn serialize_rat<S: serde::Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn serialize_opt_rat<S: serde::Serializer>(
    r: &Option<Rat>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Multiplicity parameter `k >= 0` on the root system. Exact values drive the
/// symbolic layer, approximate ones the quadrature layer.
#[derive(Debug, Clone, PartialEq)]
pub enum Multiplicity {
    Exact(Rat),
    Approx(f64),
}

impl Multiplicity {
    pub fn as_f64(&self) -> f64 {
        match self {
            Multiplicity::Exact(r) => rat_to_f64(r),
            Multiplicity::Approx(v) => *v,
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            Multiplicity::Exact(r) => Some(r),
            Multiplicity::Approx(_) => None,
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Multiplicity::Exact(r) => !r.is_negative(),
            Multiplicity::Approx(v) => *v >= 0.0,
        }
    }
}

/// Parses `p/q`, plain integers and finite decimals (`1.7` -> `17/10`) into
/// an exact rational. No exponent syntax.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|e| Error::Parse(format!("bad numerator {num:?}: {e}")))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|e| Error::Parse(format!("bad denominator {den:?}: {e}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rat::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let neg = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" {
            "0"
        } else {
            int_part
        };
        let i = BigInt::from_str(int_part)
            .map_err(|e| Error::Parse(format!("bad decimal {s:?}: {e}")))?;
        if frac_part.is_empty() {
            return Ok(Rat::from_integer(i));
        }
        if !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let f = BigInt::from_str(frac_part).map_err(|e| Error::Parse(format!("{e}")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = Rat::new(f, scale);
        let whole = Rat::from_integer(i);
        return Ok(if neg { whole - frac } else { whole + frac });
    }
    let n =
        BigInt::from_str(s).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))?;
    Ok(Rat::from_integer(n))
}

/// Whether a string uses decimal-point syntax (kept for report annotations:
/// decimals are parsed exactly but flagged as float-flavored input).
pub fn is_decimal_syntax(s: &str) -> bool {
    s.contains('.')
}

/// Rational complex number for exact classification of complex indices.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRat {
    pub re: Rat,
    pub im: Rat,
}

impl ComplexRat {
    pub fn real(re: Rat) -> Self {
        ComplexRat {
            re,
            im: Rat::zero(),
        }
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

/// Parses `a`, `bi`, `a+bi`, `a-bi` with rational or decimal components.
pub fn parse_complex_rational(s: &str) -> Result<ComplexRat> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty complex number".into()));
    }
    if !s.ends_with('i') {
        return Ok(ComplexRat::real(parse_rational(&s)?));
    }
    let body = &s[..s.len() - 1];
    // Split at the last '+' or '-' that is not the leading sign; components
    // carry no exponent syntax so this is safe.
    let mut split_at = None;
    for (idx, ch) in body.char_indices().skip(1) {
        if ch == '+' || ch == '-' {
            split_at = Some(idx);
        }
    }
    match split_at {
        Some(idx) => {
            let (re_s, im_s) = body.split_at(idx);
            let im = match im_s {
                "+" => Rat::one(),
                "-" => -Rat::one(),
                _ => parse_rational(im_s)?,
            };
            Ok(ComplexRat {
                re: parse_rational(re_s)?,
                im,
            })
        }
        None => {
            let im = match body {
                "" => Rat::one(),
                "-" => -Rat::one(),
                _ => parse_rational(body)?,
            };
            Ok(ComplexRat {
                re: Rat::zero(),
                im,
            })
        }
    }
}

/// Parses a comma-separated list of complex numbers.
pub fn parse_complex_list(s: &str) -> Result<Vec<ComplexRat>> {
    s.split(',').map(parse_complex_rational).collect()
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rat>> {
    s.split(',').map(parse_rational).collect()
}

pub const DEFAULT_PREC_DIGITS: u32 = 50;
pub const PREC_ENV_VAR: &str = "RDUNKL_PREC_DIGITS";

/// Working precision, stored in bits. Constructed from significant decimal
/// digits plus guard bits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Prec {
    bits: usize,
    digits: u32,
}

impl Prec {
    pub fn from_digits(digits: u32) -> Self {
        let digits = digits.clamp(15, 10_000);
        // log2(10) ~ 3.322, plus guard bits for accumulated rounding.
        let bits = (digits as f64 * 3.322).ceil() as usize + 32;
        Prec { bits, digits }
    }

    /// Default precision: `RDUNKL_PREC_DIGITS` or 50 significant digits.
    pub fn default_env() -> Self {
        let digits = std::env::var(PREC_ENV_VAR)
            .ok()
            .and_then(|v| v.parse::<u32>().ok())
            .unwrap_or(DEFAULT_PREC_DIGITS);
        Prec::from_digits(digits)
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    /// Upper bound on the relative error expected after a short chain of
    /// operations at this precision, used by tests.
    pub fn rel_eps(&self) -> f64 {
        2.0f64.powi(-(self.bits as i32) + 8)
    }
}

impl Default for Prec {
    fn default() -> Self {
        Prec::default_env()
    }
}

thread_local! {
    static CONSTS: RefCell<Consts> =
        RefCell::new(Consts::new().expect("astro-float constants cache"));
}

const RM: RoundingMode = RoundingMode::ToEven;

/// Thin wrappers over `astro_float::BigFloat` fixing the rounding mode and
/// threading the shared constants cache.
pub mod bigfloat {
    use super::*;

    pub fn from_rat(r: &Rat, p: Prec) -> BigFloat {
        let n = from_bigint(r.numer(), p);
        let d = from_bigint(r.denom(), p);
        n.div(&d, p.bits(), RM)
    }

    pub fn from_bigint(i: &BigInt, p: Prec) -> BigFloat {
        if let Some(v) = i.to_i64() {
            BigFloat::from_i64(v, p.bits())
        } else {
            CONSTS.with(|cc| {
                BigFloat::parse(&i.to_string(), Radix::Dec, p.bits(), RM, &mut cc.borrow_mut())
            })
        }
    }

    pub fn from_f64(v: f64, p: Prec) -> BigFloat {
        BigFloat::from_f64(v, p.bits())
    }

    pub fn to_f64(x: &BigFloat) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        if x.is_inf_pos() {
            return f64::INFINITY;
        }
        if x.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        format!("{x}").parse::<f64>().unwrap_or(f64::NAN)
    }

    pub fn pi(p: Prec) -> BigFloat {
        CONSTS.with(|cc| cc.borrow_mut().pi(p.bits(), RM))
    }

    pub fn exp(x: &BigFloat, p: Prec) -> BigFloat {
        CONSTS.with(|cc| x.exp(p.bits(), RM, &mut cc.borrow_mut()))
    }

    pub fn ln(x: &BigFloat, p: Prec) -> BigFloat {
        CONSTS.with(|cc| x.ln(p.bits(), RM, &mut cc.borrow_mut()))
    }

    pub fn sin(x: &BigFloat, p: Prec) -> BigFloat {
        CONSTS.with(|cc| x.sin(p.bits(), RM, &mut cc.borrow_mut()))
    }

    pub fn sqrt(x: &BigFloat, p: Prec) -> BigFloat {
        x.sqrt(p.bits(), RM)
    }

    pub fn add(a: &BigFloat, b: &BigFloat, p: Prec) -> BigFloat {
        a.add(b, p.bits(), RM)
    }

    pub fn sub(a: &BigFloat, b: &BigFloat, p: Prec) -> BigFloat {
        a.sub(b, p.bits(), RM)
    }

    pub fn mul(a: &BigFloat, b: &BigFloat, p: Prec) -> BigFloat {
        a.mul(b, p.bits(), RM)
    }

    pub fn div(a: &BigFloat, b: &BigFloat, p: Prec) -> BigFloat {
        a.div(b, p.bits(), RM)
    }

    pub fn powi(a: &BigFloat, e: usize, p: Prec) -> BigFloat {
        a.powi(e, p.bits(), RM)
    }

    pub fn neg(a: &BigFloat) -> BigFloat {
        a.neg()
    }

    /// |a - b| <= tol * max(|a|, |b|), with tol in absolute relative terms.
    pub fn rel_close(a: &BigFloat, b: &BigFloat, tol: f64, p: Prec) -> bool {
        let diff = to_f64(&sub(a, b, p)).abs();
        let scale = to_f64(a).abs().max(to_f64(b).abs());
        if scale == 0.0 {
            return diff == 0.0;
        }
        diff <= tol * scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_decimals() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("7").unwrap(), rat_int(7));
        assert_eq!(parse_rational("1.7").unwrap(), rat(17, 10));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("0.75").unwrap(), rat(3, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn parses_complex() {
        let z = parse_complex_rational("1+0.5i").unwrap();
        assert_eq!(z.re, rat_int(1));
        assert_eq!(z.im, rat(1, 2));
        let z = parse_complex_rational("-2/3-1/7i").unwrap();
        assert_eq!(z.re, rat(-2, 3));
        assert_eq!(z.im, rat(-1, 7));
        let z = parse_complex_rational("3").unwrap();
        assert!(z.is_real());
        let z = parse_complex_rational("-i").unwrap();
        assert_eq!(z.im, rat_int(-1));
    }

    #[test]
    fn bigfloat_round_trips() {
        let p = Prec::from_digits(50);
        let x = bigfloat::from_rat(&rat(1, 3), p);
        let f = bigfloat::to_f64(&x);
        assert!((f - 1.0 / 3.0).abs() < 1e-15);
        let big = BigInt::from_str("123456789012345678901234567890").unwrap();
        let y = bigfloat::from_bigint(&big, p);
        assert!((bigfloat::to_f64(&y) - 1.2345678901234568e29).abs() / 1e29 < 1e-12);
    }

    #[test]
    fn precision_digits_to_bits() {
        let p = Prec::from_digits(50);
        assert!(p.bits() >= 166);
        assert_eq!(p.digits(), 50);
    }
}
