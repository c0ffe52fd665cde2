//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! `Rational` is `num_rational::BigRational`, which keeps every value in
//! lowest terms with a positive denominator. `CScalar` pairs two of them as
//! the real and imaginary part of an element of `Q(i)`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Builds `p/q` from machine integers. Panics if `q == 0`.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `p`, `p/q` or a decimal-free signed integer ratio.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(t).map_err(|_| bad())?)),
    }
}

/// Canonical `p/q` rendering; integers still carry `/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or_else(|| {
        // Very large numerators or denominators: scale through the log.
        let n = q.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = q.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

/// Exact `x^e` for a signed integer exponent. Panics on `0^e` with `e < 0`.
pub fn rational_pow(x: &Rational, e: i64) -> Rational {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Generalized binomial coefficient `C(e, k)` for rational `e`.
pub fn binomial(e: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k {
        acc = acc * (e - Rational::from_integer(BigInt::from(i))) / Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Rising factorial quotient `α(α+1)…(α+m−1)/m!`, i.e. `C(α+m−1, m)`.
pub fn pochhammer_over_factorial(alpha: &Rational, m: u64) -> Rational {
    let mut acc = Rational::one();
    for i in 0..m {
        acc = acc * (alpha + Rational::from_integer(BigInt::from(i))) / Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Element of the Gaussian rationals `Q(i)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct CScalar {
    pub re: Rational,
    pub im: Rational,
}

impl CScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        CScalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        CScalar {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(v: i64) -> Self {
        Self::real(rat_int(v))
    }

    pub fn from_ratio(p: i64, q: i64) -> Self {
        Self::real(rat(p, q))
    }

    pub fn i() -> Self {
        CScalar {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        CScalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `|q|² = re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        CScalar {
            re: &self.re * k,
            im: &self.im * k,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Domain("division by zero scalar".into()));
        }
        if self.im.is_zero() {
            return Ok(CScalar::real(self.re.recip()));
        }
        let n = self.norm_sqr();
        Ok(CScalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    /// Parses `a`, `a/b`, `a/b+c/d i` or `a/b-c/d i`.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = t.strip_suffix('i') else {
            return Ok(CScalar::real(parse_rational(&t)?));
        };
        // Split at the last sign that is not the leading one.
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match cut {
            Some(k) => {
                let re = parse_rational(&body[..k])?;
                let im_str = &body[k..];
                let im = match im_str {
                    "+" => Rational::one(),
                    "-" => -Rational::one(),
                    other => parse_rational(other.trim_start_matches('+'))?,
                };
                Ok(CScalar { re, im })
            }
            None => {
                let im = match body {
                    "" | "+" => Rational::one(),
                    "-" => -Rational::one(),
                    other => parse_rational(other)?,
                };
                Ok(CScalar {
                    re: Rational::zero(),
                    im,
                })
            }
        }
    }

    /// Canonical `p/q+r/s i` form used in certificates and series files.
    pub fn to_canonical(&self) -> String {
        let sign = if self.im.is_negative() { "-" } else { "+" };
        format!(
            "{}{}{} i",
            format_rational(&self.re),
            sign,
            format_rational(&self.im.abs())
        )
    }
}

impl fmt::Debug for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, self.im.abs())
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Zero for CScalar {
    fn zero() -> Self {
        CScalar::default()
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for CScalar {
    fn one() -> Self {
        CScalar::real(Rational::one())
    }
}

impl From<Rational> for CScalar {
    fn from(r: Rational) -> Self {
        CScalar::real(r)
    }
}

impl<'a> Add<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn add(self, o: &CScalar) -> CScalar {
        CScalar {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
}

impl<'a> Sub<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn sub(self, o: &CScalar) -> CScalar {
        CScalar {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
}

impl<'a> Mul<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    fn mul(self, o: &CScalar) -> CScalar {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => CScalar::real(&self.re * &o.re),
            (true, false) => CScalar {
                re: &self.re * &o.re,
                im: &self.re * &o.im,
            },
            (false, true) => CScalar {
                re: &self.re * &o.re,
                im: &self.im * &o.re,
            },
            (false, false) => CScalar {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl<'a> Div<&'a CScalar> for &'a CScalar {
    type Output = CScalar;
    /// Panics on division by zero; use [`CScalar::inv`] for a checked path.
    fn div(self, o: &CScalar) -> CScalar {
        let inv = o.inv().expect("division by zero scalar");
        self * &inv
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<CScalar> for CScalar {
            type Output = CScalar;
            fn $method(self, o: CScalar) -> CScalar {
                (&self).$method(&o)
            }
        }
        impl<'a> $trait<&'a CScalar> for CScalar {
            type Output = CScalar;
            fn $method(self, o: &CScalar) -> CScalar {
                (&self).$method(o)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl AddAssign<&CScalar> for CScalar {
    fn add_assign(&mut self, o: &CScalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&CScalar> for CScalar {
    fn sub_assign(&mut self, o: &CScalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&CScalar> for CScalar {
    fn mul_assign(&mut self, o: &CScalar) {
        *self = &*self * o;
    }
}
