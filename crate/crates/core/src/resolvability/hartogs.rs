//! Projective criterion for rotation-invariant Hartogs domains.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::scalar::{CScalar, Rational};
use crate::series::{pow1p_series, HolSeries, Truncated};

use super::{Verdict, Witness};

fn normalized_minus_one(f: &HolSeries) -> Result<HolSeries> {
    let f0 = f.coeff_x(0);
    if f.arity() != 1 {
        return Err(Error::InvalidParameter("F must be univariate".into()));
    }
    if !f0.is_real() || !f0.re.is_positive() {
        return Err(Error::Domain(format!("F(0) = {f0} is not positive")));
    }
    let g = f.scale(&CScalar::real(f0.re.recip()));
    Ok(g.add_ref(&g.one_like().scale(&-CScalar::from_int(1))))
}

/// Signs of the `x^j` coefficients of `(F/F(0))^{-(c+k)}` for
/// `j <= jmax`, `k <= kmax`, scanning `j` in the outer loop.
///
/// The positive factor `F(0)^{-(c+k)}` is dropped: it cannot change signs
/// and keeps every value rational.
pub fn hartogs_criterion(f: &HolSeries, c: &Rational, jmax: u32, kmax: u32) -> Result<Verdict> {
    if f.degree() < jmax {
        return Err(Error::OutOfRange {
            degree: jmax,
            max: f.degree(),
        });
    }
    let g = normalized_minus_one(&f.truncate(jmax))?;
    let powers: Vec<HolSeries> = (0..=kmax)
        .map(|k| pow1p_series(&g, &-(c + Rational::from_integer(k.into()))))
        .collect::<Result<_>>()?;
    for j in 0..=jmax {
        for (k, p) in powers.iter().enumerate() {
            let v = p.coeff_x(j).re;
            if v.is_negative() {
                return Ok(Verdict::CertifiedNotResolvable {
                    degree: j,
                    witness: Witness::Coefficient {
                        j,
                        k: k as u32,
                        value: v,
                    },
                });
            }
        }
    }
    Ok(Verdict::ResolvableUpTo {
        degree: jmax,
        rank: None,
    })
}

/// Origin-jet check that `−(xF'/F)'` is positive, the formal shadow of the
/// requirement that `−xF'/F` be strictly increasing.
pub fn hartogs_metric_check(f: &HolSeries, degree: u32) -> bool {
    let f = f.truncate(degree.max(1));
    let f0 = f.coeff_x(0);
    if f.arity() != 1 || !f0.is_real() || !f0.re.is_positive() {
        return false;
    }
    let Ok(g) = normalized_minus_one(&f) else {
        return false;
    };
    let Ok(inv) = pow1p_series(&g, &-Rational::from_integer(1.into())) else {
        return false;
    };
    // x F'/F, then −d/dx
    let fp = f.derivative().scale(&CScalar::real(f0.re.recip()));
    let ratio = fp.checked_mul(&inv.truncate(fp.degree())).expect("univariate");
    // (x · ratio)' = ratio + x ratio'; constant term is ratio(0)
    let lead = -ratio.coeff_x(0).re;
    lead.is_positive()
}
