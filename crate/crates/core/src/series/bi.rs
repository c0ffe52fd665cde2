use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::multi_index::{GradedOrder, MultiIndex};
use crate::scalar::{CScalar, Rational};

use super::hol::HolSeries;
use super::Truncated;

/// Truncated real-analytic germ `Σ a_{jk} z^{m_j} z̄^{m_k}` with
/// `|m_j| <= degree` and `|m_k| <= degree`.
///
/// Keys are ordinal pairs in the [`GradedOrder`] of the series; absent keys
/// are zero and stored values are never zero.
#[derive(Clone)]
pub struct BiSeries {
    order: Arc<GradedOrder>,
    degree: u32,
    coeffs: BTreeMap<(usize, usize), CScalar>,
}

impl PartialEq for BiSeries {
    fn eq(&self, o: &Self) -> bool {
        self.arity() == o.arity() && self.degree == o.degree && self.coeffs == o.coeffs
    }
}

impl fmt::Debug for BiSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiSeries(n={}, d={}) {{", self.arity(), self.degree)?;
        for ((j, k), c) in &self.coeffs {
            write!(f, " [{}|{}]={}", self.order.index(*j), self.order.index(*k), c)?;
        }
        write!(f, " }}")
    }
}

impl BiSeries {
    pub fn zero(arity: usize, degree: u32) -> Self {
        Self::zero_in(&GradedOrder::new(arity, degree), degree)
    }

    /// Zero series sharing an existing order (which must reach `degree`).
    pub fn zero_in(order: &Arc<GradedOrder>, degree: u32) -> Self {
        assert!(
            order.max_degree() >= degree,
            "order of degree {} cannot hold degree {}",
            order.max_degree(),
            degree
        );
        BiSeries {
            order: order.clone(),
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, degree: u32, c: CScalar) -> Self {
        let mut s = Self::zero(arity, degree);
        s.set(0, 0, c);
        s
    }

    /// Builds a series from `(m_j, m_k, coefficient)` triples, summing
    /// repeated keys and dropping terms beyond `degree`.
    pub fn from_terms<I>(arity: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, MultiIndex, CScalar)>,
    {
        let mut s = Self::zero(arity, degree);
        for (mj, mk, c) in terms {
            for m in [&mj, &mk] {
                if m.arity() != arity {
                    return Err(Error::ArityMismatch {
                        left: m.arity(),
                        right: arity,
                    });
                }
            }
            if mj.degree() > degree || mk.degree() > degree {
                continue;
            }
            let j = s.order.ordinal(&mj)?;
            let k = s.order.ordinal(&mk)?;
            s.add_at(j, k, &c);
        }
        Ok(s)
    }

    /// `Σ_j |z_j|²`.
    pub fn norm_sqr(arity: usize, degree: u32) -> Self {
        Self::norm_sqr_of(arity, degree, 0..arity)
    }

    /// `Σ_{j ∈ axes} |z_j|²`.
    pub fn norm_sqr_of(arity: usize, degree: u32, axes: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::zero(arity, degree);
        if degree == 0 {
            return s;
        }
        for a in axes {
            let o = s.order.ordinal(&MultiIndex::unit(arity, a)).unwrap();
            s.set(o, o, CScalar::one());
        }
        s
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

    pub fn coeff(&self, j: usize, k: usize) -> CScalar {
        self.coeffs.get(&(j, k)).cloned().unwrap_or_default()
    }

    pub fn coeff_ref(&self, j: usize, k: usize) -> Option<&CScalar> {
        self.coeffs.get(&(j, k))
    }

    /// Coefficient of `z^{mj} z̄^{mk}`; zero when out of range.
    pub fn coeff_of(&self, mj: &MultiIndex, mk: &MultiIndex) -> CScalar {
        if mj.degree() > self.degree || mk.degree() > self.degree {
            return CScalar::zero();
        }
        match (self.order.ordinal(mj), self.order.ordinal(mk)) {
            (Ok(j), Ok(k)) => self.coeff(j, k),
            _ => CScalar::zero(),
        }
    }

    pub fn set(&mut self, j: usize, k: usize, c: CScalar) {
        debug_assert!(self.order.degree_of(j) <= self.degree);
        debug_assert!(self.order.degree_of(k) <= self.degree);
        if c.is_zero() {
            self.coeffs.remove(&(j, k));
        } else {
            self.coeffs.insert((j, k), c);
        }
    }

    pub fn add_at(&mut self, j: usize, k: usize, c: &CScalar) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry((j, k)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &CScalar)> {
        self.coeffs.iter().map(|(&(j, k), c)| (j, k, c))
    }

    pub fn nnz(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> CScalar {
        self.coeff(0, 0)
    }

    pub fn truncate(&self, degree: u32) -> Self {
        let d = degree.min(self.degree);
        let lim = self.order.len_through(d);
        BiSeries {
            order: self.order.clone(),
            degree: d,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(&(j, k), _)| j < lim && k < lim)
                .map(|(&key, c)| (key, c.clone()))
                .collect(),
        }
    }

    /// `a*_{jk} = conj(a_{kj})`: the conjugate function.
    pub fn adjoint(&self) -> Self {
        BiSeries {
            order: self.order.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(&(j, k), c)| ((k, j), c.conj())).collect(),
        }
    }

    pub fn is_hermitian(&self) -> bool {
        self.first_non_hermitian().is_none()
    }

    pub fn first_non_hermitian(&self) -> Option<(usize, usize)> {
        self.coeffs
            .iter()
            .find(|(&(j, k), c)| self.coeff(k, j) != c.conj())
            .map(|(&key, _)| key)
    }

    pub fn scale(&self, c: &CScalar) -> Self {
        if c.is_zero() {
            return Self::zero_in(&self.order, self.degree);
        }
        BiSeries {
            order: self.order.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(&k, v)| (k, v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, c: &Rational) -> Self {
        self.scale(&CScalar::real(c.clone()))
    }

    fn check_arity(&self, o: &Self) -> Result<()> {
        if self.arity() != o.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: o.arity(),
            });
        }
        Ok(())
    }

    /// Shared order with enough room for `degree`.
    fn common_order(&self, o: &Self, degree: u32) -> Arc<GradedOrder> {
        if self.order.max_degree() >= degree {
            self.order.clone()
        } else if o.order.max_degree() >= degree {
            o.order.clone()
        } else {
            GradedOrder::new(self.arity(), degree)
        }
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_arity(o)?;
        let d = self.degree.min(o.degree);
        let order = self.common_order(o, d);
        let mut out = BiSeries {
            order: order.clone(),
            degree: d,
            coeffs: BTreeMap::new(),
        };
        let lim = order.len_through(d);
        for (&(j, k), c) in self.coeffs.iter().chain(o.coeffs.iter()) {
            if j < lim && k < lim {
                out.add_at(j, k, c);
            }
        }
        Ok(out)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.checked_add(&-o)
    }

    /// Product truncated at `min(d_a, d_b)`.
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check_arity(o)?;
        let d = self.degree.min(o.degree);
        let order = self.common_order(o, d);
        let lim = order.len_through(d);
        let mut acc: BTreeMap<(usize, usize), CScalar> = BTreeMap::new();
        for (&(j1, k1), c1) in &self.coeffs {
            if j1 >= lim || k1 >= lim {
                continue;
            }
            for (&(j2, k2), c2) in &o.coeffs {
                if j2 >= lim || k2 >= lim {
                    continue;
                }
                let (Some(j), Some(k)) = (order.add(j1, j2), order.add(k1, k2)) else {
                    continue;
                };
                if j >= lim || k >= lim {
                    continue;
                }
                let p = c1 * c2;
                match acc.entry((j, k)) {
                    std::collections::btree_map::Entry::Vacant(v) => {
                        v.insert(p);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += &p;
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(BiSeries {
            order,
            degree: d,
            coeffs: acc,
        })
    }

    /// `f · conj(g)` for holomorphic `f`, `g` of the same arity.
    pub fn hol_times_conj(f: &HolSeries, g: &HolSeries) -> Result<Self> {
        if f.arity() != g.arity() {
            return Err(Error::ArityMismatch {
                left: f.arity(),
                right: g.arity(),
            });
        }
        let d = f.degree().min(g.degree());
        let order = if f.order().max_degree() >= d {
            f.order().clone()
        } else {
            g.order().clone()
        };
        let mut out = BiSeries::zero_in(&order, d);
        let lim = order.len_through(d);
        for (j, a) in f.iter() {
            if j >= lim {
                continue;
            }
            for (k, b) in g.iter() {
                if k >= lim {
                    continue;
                }
                out.add_at(j, k, &(a * &b.conj()));
            }
        }
        Ok(out)
    }

    /// The holomorphic part `Σ_j a_{j0} z^{m_j}` (row of the constant column).
    pub fn holomorphic_part(&self) -> HolSeries {
        let mut h = HolSeries::zero_in(&self.order, self.degree);
        for (&(j, k), c) in &self.coeffs {
            if k == 0 {
                h.set(j, c.clone());
            }
        }
        h
    }

    /// Moves every variable `z_a` to axis `axis_map[a]` of a series of
    /// arity `new_arity`.
    pub fn embed(&self, new_arity: usize, axis_map: &[usize]) -> Result<Self> {
        if axis_map.len() != self.arity() || axis_map.iter().any(|&a| a >= new_arity) {
            return Err(Error::InvalidParameter(format!(
                "axis map {axis_map:?} does not send arity {} into {new_arity}",
                self.arity()
            )));
        }
        let order = GradedOrder::new(new_arity, self.degree);
        let map = |m: &MultiIndex| {
            let mut v = vec![0u32; new_arity];
            for (a, &e) in m.0.iter().enumerate() {
                v[axis_map[a]] += e;
            }
            order.ordinal(&MultiIndex(v)).expect("degree is preserved")
        };
        let mut out = BiSeries::zero_in(&order, self.degree);
        for (&(j, k), c) in &self.coeffs {
            out.add_at(map(self.order.index(j)), map(self.order.index(k)), c);
        }
        Ok(out)
    }

    /// Multiplies each coefficient by `w(m_j, m_k)`.
    pub fn reweight(&self, w: impl Fn(&MultiIndex, &MultiIndex) -> CScalar) -> Self {
        let mut out = BiSeries::zero_in(&self.order, self.degree);
        for (&(j, k), c) in &self.coeffs {
            out.set(j, k, c * &w(self.order.index(j), self.order.index(k)));
        }
        out
    }

    /// Formal `∂²/∂z_α ∂z̄_β`, truncated at `degree − 1`.
    pub fn mixed_partial(&self, alpha: usize, beta: usize) -> Self {
        let d = self.degree.saturating_sub(1);
        let mut out = BiSeries::zero_in(&self.order, d);
        let lim = self.order.len_through(d);
        for (&(j, k), c) in &self.coeffs {
            let mj = self.order.index(j);
            let mk = self.order.index(k);
            let (ea, eb) = (mj.0[alpha], mk.0[beta]);
            if ea == 0 || eb == 0 {
                continue;
            }
            let (Some(j2), Some(k2)) = (self.order.lower(j, alpha), self.order.lower(k, beta)) else {
                continue;
            };
            if j2 < lim && k2 < lim {
                out.add_at(j2, k2, &c.scale(&Rational::from_integer((ea * eb).into())));
            }
        }
        out
    }

    /// True when every nonzero coefficient has `|m_j| = |m_k|`.
    pub fn is_circular(&self) -> bool {
        self.coeffs
            .keys()
            .all(|&(j, k)| self.order.degree_of(j) == self.order.degree_of(k))
    }

    /// Coefficient of `x^k` for an arity-1 series read as a function of
    /// `x = |z|²`.
    pub fn diagonal_coeff(&self, k: u32) -> CScalar {
        if self.arity() != 1 || k > self.degree {
            return CScalar::zero();
        }
        self.coeff(k as usize, k as usize)
    }

    /// Arity-1 series `Σ c_k |z|^{2k}`.
    pub fn from_diagonal(coeffs: &[Rational], degree: u32) -> Self {
        let mut s = Self::zero(1, degree);
        for (k, c) in coeffs.iter().enumerate().take(degree as usize + 1) {
            s.set(k, k, CScalar::real(c.clone()));
        }
        s
    }

    /// Lowest `max(|m_j|, |m_k|)` at which `self` and `o` differ.
    pub fn first_difference(&self, o: &Self) -> Option<u32> {
        let mut keys: Vec<(usize, usize)> = self.coeffs.keys().chain(o.coeffs.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        keys.into_iter()
            .filter(|&(j, k)| self.coeff(j, k) != o.coeff(j, k))
            .map(|(j, k)| self.order.degree_of(j).max(self.order.degree_of(k)))
            .min()
    }
}

impl Truncated for BiSeries {
    fn one_like(&self) -> Self {
        let mut s = BiSeries::zero_in(&self.order, self.degree);
        s.set(0, 0, CScalar::one());
        s
    }
    fn zero_like(&self) -> Self {
        BiSeries::zero_in(&self.order, self.degree)
    }
    fn constant_term(&self) -> CScalar {
        self.coeff(0, 0)
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
        BiSeries::first_difference(self, o)
    }
}

impl<'a> Add<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn add(self, o: &BiSeries) -> BiSeries {
        self.checked_add(o).expect("arity mismatch in BiSeries addition")
    }
}

impl<'a> Sub<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn sub(self, o: &BiSeries) -> BiSeries {
        self.checked_sub(o).expect("arity mismatch in BiSeries subtraction")
    }
}

impl<'a> Mul<&'a BiSeries> for &'a BiSeries {
    type Output = BiSeries;
    fn mul(self, o: &BiSeries) -> BiSeries {
        self.checked_mul(o).expect("arity mismatch in BiSeries product")
    }
}

impl Neg for &BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        BiSeries {
            order: self.order.clone(),
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Neg for BiSeries {
    type Output = BiSeries;
    fn neg(self) -> BiSeries {
        -&self
    }
}
