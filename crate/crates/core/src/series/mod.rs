//! Truncated power-series rings over the Gaussian rationals.
//!
//! Two carriers share one [`GradedOrder`] numbering: [`BiSeries`] for
//! real-analytic germs in `z, z̄` and [`HolSeries`] for holomorphic ones.
//! Every result carries its truncation degree; binary operations truncate
//! to the smaller of their inputs.

mod bi;
mod det;
mod hol;
pub mod text;

pub use bi::BiSeries;
pub use det::det_series;
pub use hol::HolSeries;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{binomial, factorial, CScalar, Rational};

/// Operations shared by the truncated series carriers.
pub trait Truncated: Clone + PartialEq {
    fn one_like(&self) -> Self;
    fn zero_like(&self) -> Self;
    fn constant_term(&self) -> CScalar;
    fn is_zero(&self) -> bool;
    fn mul_ref(&self, o: &Self) -> Self;
    fn add_ref(&self, o: &Self) -> Self;
    fn scale_ref(&self, c: &CScalar) -> Self;
    /// Lowest graded degree at which the two values disagree.
    fn first_difference(&self, o: &Self) -> Option<u32>;
}

impl<A: Truncated, B: Truncated> Truncated for (A, B) {
    fn one_like(&self) -> Self {
        (self.0.one_like(), self.1.one_like())
    }
    fn zero_like(&self) -> Self {
        (self.0.zero_like(), self.1.zero_like())
    }
    fn constant_term(&self) -> CScalar {
        self.0.constant_term()
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero() && self.1.is_zero()
    }
    fn mul_ref(&self, o: &Self) -> Self {
        (self.0.mul_ref(&o.0), self.1.mul_ref(&o.1))
    }
    fn add_ref(&self, o: &Self) -> Self {
        (self.0.add_ref(&o.0), self.1.add_ref(&o.1))
    }
    fn scale_ref(&self, c: &CScalar) -> Self {
        (self.0.scale_ref(c), self.1.scale_ref(c))
    }
    fn first_difference(&self, o: &Self) -> Option<u32> {
        match (self.0.first_difference(&o.0), self.1.first_difference(&o.1)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
}

fn require_zero_constant<S: Truncated>(a: &S, op: &str) -> Result<()> {
    if a.constant_term().is_zero() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{op} needs a zero constant term, found {}",
            a.constant_term()
        )))
    }
}

/// `Σ_k c_k a^k` for a nilpotent `a` (zero constant term). The sum stops
/// once the powers of `a` vanish in the truncation.
fn power_sum<S: Truncated>(a: &S, coeff: impl Fn(u64) -> Rational) -> S {
    let mut acc = a.one_like().scale_ref(&CScalar::real(coeff(0)));
    let mut pow = a.one_like();
    let mut k = 0u64;
    loop {
        k += 1;
        pow = pow.mul_ref(a);
        if pow.is_zero() {
            return acc;
        }
        let c = coeff(k);
        if !c.is_zero() {
            acc = acc.add_ref(&pow.scale_ref(&CScalar::real(c)));
        }
    }
}

/// `exp(a)` as a series; `a` must have zero constant term.
pub fn exp_series<S: Truncated>(a: &S) -> Result<S> {
    require_zero_constant(a, "exp_series")?;
    Ok(power_sum(a, |k| Rational::new(1.into(), factorial(k))))
}

/// `exp(a) − 1`.
pub fn expm1_series<S: Truncated>(a: &S) -> Result<S> {
    require_zero_constant(a, "expm1_series")?;
    Ok(power_sum(a, |k| {
        if k == 0 {
            Rational::zero()
        } else {
            Rational::new(1.into(), factorial(k))
        }
    }))
}

/// `log(1 + a)`; `a` must have zero constant term.
pub fn log1p_series<S: Truncated>(a: &S) -> Result<S> {
    require_zero_constant(a, "log1p_series")?;
    Ok(power_sum(a, |k| {
        if k == 0 {
            Rational::zero()
        } else {
            let s: i64 = if k % 2 == 1 { 1 } else { -1 };
            Rational::new(s.into(), (k as i64).into())
        }
    }))
}

/// `(1 + a)^e` by the generalized binomial series.
pub fn pow1p_series<S: Truncated>(a: &S, e: &Rational) -> Result<S> {
    require_zero_constant(a, "pow1p_series")?;
    Ok(power_sum(a, |k| binomial(e, k)))
}

/// `(1 + a)^e − 1`.
pub fn pow1p_minus_one<S: Truncated>(a: &S, e: &Rational) -> Result<S> {
    require_zero_constant(a, "pow1p_series")?;
    Ok(power_sum(a, |k| if k == 0 { Rational::zero() } else { binomial(e, k) }))
}

/// `s^e` for a series with positive rational constant term `c`:
/// `c^e · (1 + s/c − 1)^e`, requiring `c^e` rational (e.g. `c = 1` or
/// integer `e`).
pub fn pow_series<S: Truncated>(s: &S, e: &Rational) -> Result<S> {
    let c = s.constant_term();
    if !c.is_real() || c.re <= Rational::zero() {
        return Err(Error::Domain(format!(
            "pow_series needs a positive real constant term, got {c}"
        )));
    }
    let inv = CScalar::real(c.re.recip());
    let normalized = s
        .scale_ref(&inv)
        .add_ref(&s.one_like().scale_ref(&CScalar::from_int(-1)));
    let base = pow1p_series(&normalized, e)?;
    let prefactor = if e.is_integer() {
        crate::scalar::rational_pow(&c.re, num_traits::ToPrimitive::to_i64(e.numer()).unwrap_or(0))
    } else if c.re == Rational::from_integer(1.into()) {
        c.re.clone()
    } else {
        return Err(Error::Domain(format!(
            "({})^({e}) is not rational; normalize the constant term first",
            c.re
        )));
    };
    Ok(base.scale_ref(&CScalar::real(prefactor)))
}

/// Iterates `x ↦ map(x)` from `seed` until the value stops changing.
///
/// `map` must raise the number of correct graded degrees by at least one
/// per application, so `degree + 1` applications fix every coefficient and
/// one more confirms it. A value still moving after that is reported as
/// [`Error::Divergence`] at the lowest unstable degree.
pub fn solve_graded_fixed_point<S, F>(map: F, seed: S, degree: u32) -> Result<S>
where
    S: Truncated,
    F: Fn(&S) -> Result<S>,
{
    let mut x = seed;
    for _ in 0..=degree + 1 {
        let next = map(&x)?;
        if next.first_difference(&x).is_none() {
            return Ok(next);
        }
        x = next;
    }
    let last = map(&x)?;
    Err(Error::Divergence {
        degree: last.first_difference(&x).unwrap_or(degree),
    })
}
