use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multi_index::{GradedOrder, MultiIndex};
use crate::scalar::{CScalar, Rational};

use super::Truncated;

/// Truncated holomorphic series `Σ c_j z^{m_j}`, `|m_j| <= degree`.
#[derive(Clone)]
pub struct HolSeries {
    order: Arc<GradedOrder>,
    degree: u32,
    coeffs: BTreeMap<usize, CScalar>,
}

impl PartialEq for HolSeries {
    fn eq(&self, o: &Self) -> bool {
        self.arity() == o.arity() && self.degree == o.degree && self.coeffs == o.coeffs
    }
}

impl fmt::Debug for HolSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HolSeries(n={}, d={}) {{", self.arity(), self.degree)?;
        for (j, c) in &self.coeffs {
            write!(f, " [{}]={}", self.order.index(*j), c)?;
        }
        write!(f, " }}")
    }
}

impl HolSeries {
    pub fn zero(arity: usize, degree: u32) -> Self {
        Self::zero_in(&GradedOrder::new(arity, degree), degree)
    }

    pub fn zero_in(order: &Arc<GradedOrder>, degree: u32) -> Self {
        assert!(order.max_degree() >= degree);
        HolSeries {
            order: order.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    /// Univariate `Σ c_k x^k`; coefficients past `degree` are dropped.
    pub fn univariate(coeffs: &[Rational], degree: u32) -> Self {
        let mut s = Self::zero(1, degree);
        for (k, c) in coeffs.iter().enumerate().take(degree as usize + 1) {
            s.set(k, CScalar::real(c.clone()));
        }
        s
    }

    /// `z^m` with unit coefficient.
    pub fn monomial(arity: usize, degree: u32, m: &MultiIndex) -> Result<Self> {
        let mut s = Self::zero(arity, degree);
        if m.degree() <= degree {
            let o = s.order.ordinal(m)?;
            s.set(o, CScalar::one());
        }
        Ok(s)
    }

    pub fn arity(&self) -> usize {
        self.order.arity()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> &Arc<GradedOrder> {
        &self.order
    }

    pub fn coeff(&self, j: usize) -> CScalar {
        self.coeffs.get(&j).cloned().unwrap_or_default()
    }

    pub fn coeff_of(&self, m: &MultiIndex) -> CScalar {
        match self.order.ordinal(m) {
            Ok(j) if m.degree() <= self.degree => self.coeff(j),
            _ => CScalar::zero(),
        }
    }

    pub fn set(&mut self, j: usize, c: CScalar) {
        debug_assert!(self.order.degree_of(j) <= self.degree);
        if c.is_zero() {
            self.coeffs.remove(&j);
        } else {
            self.coeffs.insert(j, c);
        }
    }

    pub fn add_at(&mut self, j: usize, c: &CScalar) {
        let v = self.coeff(j) + c;
        self.set(j, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &CScalar)> {
        self.coeffs.iter().map(|(&j, c)| (j, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest ordinal with a nonzero coefficient.
    pub fn leading(&self) -> Option<(usize, &CScalar)> {
        self.coeffs.iter().next().map(|(&j, c)| (j, c))
    }

    pub fn truncate(&self, degree: u32) -> Self {
        let d = degree.min(self.degree);
        let lim = self.order.len_through(d);
        HolSeries {
            order: self.order.clone(),
            degree: d,
            coeffs: self.coeffs.range(..lim).map(|(&j, c)| (j, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &CScalar) -> Self {
        let mut out = HolSeries::zero_in(&self.order, self.degree);
        for (&j, v) in &self.coeffs {
            out.set(j, v * c);
        }
        out
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        if self.arity() != o.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: o.arity(),
            });
        }
        let d = self.degree.min(o.degree);
        let order = if self.order.max_degree() >= d {
            self.order.clone()
        } else {
            o.order.clone()
        };
        let lim = order.len_through(d);
        let mut out = HolSeries::zero_in(&order, d);
        for (&j, c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            if j < lim {
                out.add_at(j, c);
            }
        }
        Ok(out)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.arity() != o.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: o.arity(),
            });
        }
        let d = self.degree.min(o.degree);
        let order = if self.order.max_degree() >= d {
            self.order.clone()
        } else {
            o.order.clone()
        };
        let lim = order.len_through(d);
        let mut acc: BTreeMap<usize, CScalar> = BTreeMap::new();
        for (&a, ca) in self.coeffs.range(..lim) {
            for (&b, cb) in o.coeffs.range(..lim) {
                if let Some(s) = order.add(a, b).filter(|&s| s < lim) {
                    *acc.entry(s).or_default() += &(ca * cb);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(HolSeries {
            order,
            degree: d,
            coeffs: acc,
        })
    }

    /// Multiplies by `z^m`, dropping terms that leave the truncation.
    pub fn shift(&self, m: &MultiIndex, degree: u32) -> Result<Self> {
        let order = if self.order.max_degree() >= degree {
            self.order.clone()
        } else {
            GradedOrder::new(self.arity(), degree)
        };
        let mut out = HolSeries::zero_in(&order, degree);
        for (&j, c) in &self.coeffs {
            let t = self.order.index(j).add(m);
            if t.degree() <= degree {
                out.set(order.ordinal(&t)?, c.clone());
            }
        }
        Ok(out)
    }

    /// Moves variable `a` to axis `axis_map[a]` in arity `new_arity`.
    pub fn embed(&self, new_arity: usize, axis_map: &[usize], order: &Arc<GradedOrder>) -> Result<Self> {
        if axis_map.len() != self.arity() || order.arity() != new_arity {
            return Err(Error::InvalidParameter("bad axis map for embedding".into()));
        }
        let d = self.degree.min(order.max_degree());
        let mut out = HolSeries::zero_in(order, d);
        for (&j, c) in &self.coeffs {
            let m = self.order.index(j);
            if m.degree() > d {
                continue;
            }
            let mut v = vec![0u32; new_arity];
            for (a, &e) in m.0.iter().enumerate() {
                v[axis_map[a]] += e;
            }
            out.add_at(order.ordinal(&MultiIndex(v))?, c);
        }
        Ok(out)
    }

    /// Univariate coefficient of `x^k`.
    pub fn coeff_x(&self, k: u32) -> CScalar {
        if self.arity() != 1 || k > self.degree {
            return CScalar::zero();
        }
        self.coeff(k as usize)
    }

    /// Real parts of the univariate coefficients `c_0..=c_degree`.
    pub fn univariate_coeffs(&self) -> Vec<Rational> {
        (0..=self.degree).map(|k| self.coeff_x(k).re).collect()
    }

    /// Formal derivative of a univariate series (degree drops by one).
    pub fn derivative(&self) -> Self {
        let d = self.degree.saturating_sub(1);
        let mut out = HolSeries::zero_in(&self.order, d);
        for (&j, c) in &self.coeffs {
            if j >= 1 && (j as u32) <= self.degree && self.arity() == 1 {
                out.set(j - 1, c.scale(&Rational::from_integer((j as i64).into())));
            }
        }
        out
    }

    /// Substitutes `x ↦ X` in a univariate series, with `X` a bi-series
    /// with zero constant term. Terms past the truncation of `X` vanish.
    pub fn compose_bi(&self, x: &super::BiSeries) -> Result<super::BiSeries> {
        if self.arity() != 1 {
            return Err(Error::InvalidParameter("composition needs a univariate series".into()));
        }
        if !x.constant_term().is_zero() {
            return Err(Error::Domain("substituted series must have zero constant term".into()));
        }
        // Horner from the top coefficient.
        let mut acc = x.zero_like();
        for k in (0..=self.degree).rev() {
            acc = &acc * x;
            let c = self.coeff_x(k);
            if !c.is_zero() {
                let mut k0 = acc.one_like();
                k0 = k0.scale(&c);
                acc = &acc + &k0;
            }
        }
        Ok(acc)
    }
}

impl Truncated for HolSeries {
    fn one_like(&self) -> Self {
        let mut s = HolSeries::zero_in(&self.order, self.degree);
        s.set(0, CScalar::one());
        s
    }
    fn zero_like(&self) -> Self {
        HolSeries::zero_in(&self.order, self.degree)
    }
    fn constant_term(&self) -> CScalar {
        self.coeff(0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self.checked_mul(o).expect("arity mismatch")
    }
    fn add_ref(&self, o: &Self) -> Self {
        self.checked_add(o).expect("arity mismatch")
    }
    fn scale_ref(&self, c: &CScalar) -> Self {
        self.scale(c)
    }
    fn first_difference(&self, o: &Self) -> Option<u32> {
        let keys: std::collections::BTreeSet<usize> = self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        keys.into_iter()
            .filter(|&j| self.coeff(j) != o.coeff(j))
            .map(|j| self.order.degree_of(j))
            .min()
    }
}
