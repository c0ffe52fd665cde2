//! Diastasis normalization, Bochner form and the b-transform.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::multi_index::MultiIndex;
use crate::scalar::{CScalar, Rational};
use crate::series::{expm1_series, BiSeries};

/// Zeroes the row and column of the constant index.
///
/// Any potential differs from the diastasis of its metric by `h + h̄ + c`;
/// those are exactly the entries removed here.
pub fn normalize_to_diastasis(phi: &BiSeries) -> BiSeries {
    let mut out = BiSeries::zero_in(phi.order(), phi.degree());
    for (j, k, c) in phi.iter() {
        if j != 0 && k != 0 {
            out.set(j, k, c.clone());
        }
    }
    out
}

/// True when no coefficient sits in the constant row or column.
pub fn has_zero_pure_rows(d: &BiSeries) -> bool {
    d.iter().all(|(j, k, _)| j != 0 && k != 0)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BochnerReport {
    pub is_bochner: bool,
    /// First offending coefficient `(m_j, m_k, a_jk)` in graded order.
    pub defect: Option<(MultiIndex, MultiIndex, CScalar)>,
}

/// Checks `D = Σ|z_α|² + ψ` with `ψ` of bidegree at least `(2,2)`.
pub fn check_bochner_form(d: &BiSeries) -> BochnerReport {
    let o = d.order();
    let n = d.arity();
    let expected = |j: usize, k: usize| -> CScalar {
        if o.degree_of(j) == 1 && j == k {
            CScalar::one()
        } else {
            CScalar::zero()
        }
    };
    let mut defect: Option<(usize, usize)> = None;
    let mut note = |j: usize, k: usize| {
        if defect.map_or(true, |cur| (j, k) < cur) {
            defect = Some((j, k));
        }
    };
    for (j, k, c) in d.iter() {
        let (dj, dk) = (o.degree_of(j), o.degree_of(k));
        if (dj <= 1 || dk <= 1) && *c != expected(j, k) {
            note(j, k);
        }
    }
    if d.degree() >= 1 {
        for a in 0..n {
            let j = o.ordinal(&MultiIndex::unit(n, a)).expect("degree 1 in range");
            if d.coeff_ref(j, j).is_none() {
                note(j, j);
            }
        }
    }
    match defect {
        None => BochnerReport {
            is_bochner: true,
            defect: None,
        },
        Some((j, k)) => BochnerReport {
            is_bochner: false,
            defect: Some((o.index(j).clone(), o.index(k).clone(), d.coeff(j, k))),
        },
    }
}

/// Generalized stereographic projection `(e^{bD} − 1)/b`; identity at `b = 0`.
pub fn b_transform(d: &BiSeries, b: &Rational) -> Result<BiSeries> {
    if b.is_zero() {
        return Ok(d.clone());
    }
    let e = expm1_series(&d.scale_rational(b))?;
    Ok(e.scale_rational(&b.recip()))
}

/// Inverse of [`b_transform`]: `(1/b)·log(1 + b·T)`.
pub fn b_transform_inverse(t: &BiSeries, b: &Rational) -> Result<BiSeries> {
    if b.is_zero() {
        return Ok(t.clone());
    }
    let l = crate::series::log1p_series(&t.scale_rational(b))?;
    Ok(l.scale_rational(&b.recip()))
}
