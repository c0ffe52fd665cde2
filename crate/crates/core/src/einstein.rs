//! Hessian determinants and Einstein constants in Bochner coordinates.

use num_traits::Zero;

use crate::diastasis::check_bochner_form;
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::scalar::{rat_int, CScalar, Rational};
use crate::series::{det_series, log1p_series, BiSeries, Truncated};

/// `det(∂²d/∂z_α∂z̄_β)`, exact through `degree − 1`.
pub fn hessian_det(d: &BiSeries, degree: u32) -> Result<BiSeries> {
    if degree == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if d.degree() < degree {
        return Err(Error::OutOfRange {
            degree,
            max: d.degree(),
        });
    }
    let d = d.truncate(degree);
    let n = d.arity();
    let m: Vec<Vec<BiSeries>> = (0..n)
        .map(|a| (0..n).map(|b| d.mixed_partial(a, b)).collect())
        .collect();
    det_series(&m)
}

#[derive(Clone, Debug, PartialEq)]
pub enum EinsteinOutcome {
    /// `log det H + (λ/2)·d` vanishes through `degree − 1`.
    Einstein { lambda: Rational, flat: bool, degree: u32 },
    /// First coefficient of `log det H + (λ/2)·d` that does not vanish.
    NotEinstein {
        lambda_guess: Rational,
        m_j: MultiIndex,
        m_k: MultiIndex,
        residual: CScalar,
        degree: u32,
    },
}

impl EinsteinOutcome {
    pub fn lambda(&self) -> Option<&Rational> {
        match self {
            EinsteinOutcome::Einstein { lambda, .. } => Some(lambda),
            EinsteinOutcome::NotEinstein { .. } => None,
        }
    }
}

/// Reads `λ` from the `|z_1|²` coefficient of `log det H` and accepts it
/// only if `det H = e^{−λd/2}` holds through `degree − 1`.
pub fn einstein_estimate(d: &BiSeries, degree: u32) -> Result<EinsteinOutcome> {
    if degree < 2 {
        return Err(Error::InvalidParameter("degree must be at least 2".into()));
    }
    let report = check_bochner_form(&d.truncate(degree));
    if !report.is_bochner {
        let at = report
            .defect
            .map(|(j, k, c)| format!(" (coefficient {c} at {j:?}, {k:?})"))
            .unwrap_or_default();
        return Err(Error::Gauge(format!(
            "input is not in Bochner coordinates{at}; normalize to Σ|z|² + O(|z|⁴) first"
        )));
    }
    let h = hessian_det(d, degree)?;
    let log_det = log1p_series(&(&h - &h.one_like()))?;
    let n = d.arity();
    let e1 = MultiIndex::unit(n, 0);
    let lambda = log_det.coeff_of(&e1, &e1).re * rat_int(-2);
    let half = &lambda / rat_int(2);
    let residual = &log_det + &d.truncate(degree - 1).scale_rational(&half);
    let first = residual.iter().min_by_key(|&(j, k, _)| {
        let o = residual.order();
        (o.degree_of(j).max(o.degree_of(k)), j, k)
    });
    Ok(match first {
        None => EinsteinOutcome::Einstein {
            flat: lambda.is_zero(),
            lambda,
            degree,
        },
        Some((j, k, c)) => {
            let o = residual.order();
            EinsteinOutcome::NotEinstein {
                lambda_guess: lambda,
                m_j: o.index(j).clone(),
                m_k: o.index(k).clone(),
                residual: c.clone(),
                degree: o.degree_of(j).max(o.degree_of(k)),
            }
        }
    })
}
