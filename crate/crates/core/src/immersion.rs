//! Explicit truncated immersion maps.

use num_traits::{One, Signed, Zero};

use crate::diastasis::{b_transform, normalize_to_diastasis};
use crate::error::{Error, Result};
use crate::multi_index::{GradedOrder, MultiIndex};
use crate::resolvability::{resolvability_with_factor, PsdVerdict, Verdict};
use crate::scalar::{rational_pow, CScalar, Rational};
use crate::series::{BiSeries, HolSeries};

#[derive(Clone, Debug, PartialEq)]
pub enum Target {
    Flat,
    /// Space form of holomorphic sectional curvature `4b`, `b != 0`.
    Curvature(Rational),
    /// Indefinite Hilbert space with signed components.
    Indefinite,
}

impl Target {
    pub fn for_curvature(b: &Rational) -> Self {
        if b.is_zero() {
            Target::Flat
        } else {
            Target::Curvature(b.clone())
        }
    }

    /// Curvature parameter whose b-transform the map pulls back.
    pub fn b(&self) -> Rational {
        match self {
            Target::Curvature(b) => b.clone(),
            _ => Rational::zero(),
        }
    }
}

/// Component `sign · √radicand · series`.
#[derive(Clone, Debug, PartialEq)]
pub struct Component {
    pub radicand: Rational,
    pub series: HolSeries,
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ImmersionMap {
    pub components: Vec<Component>,
    pub target: Target,
    pub arity: usize,
    pub degree: u32,
}

impl ImmersionMap {
    /// `Σ sign · radicand · |series|²`.
    pub fn pullback(&self) -> BiSeries {
        let order = GradedOrder::new(self.arity, self.degree);
        let mut acc = BiSeries::zero_in(&order, self.degree);
        for c in &self.components {
            let sq = BiSeries::hol_times_conj(&c.series, &c.series).expect("component arity");
            let w = if c.sign < 0 {
                -c.radicand.clone()
            } else {
                c.radicand.clone()
            };
            acc = &acc + &sq.scale_rational(&w);
        }
        acc
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum VerifyOutcome {
    Ok,
    Residual {
        m_j: MultiIndex,
        m_k: MultiIndex,
        expected: CScalar,
        found: CScalar,
    },
}

impl VerifyOutcome {
    pub fn is_ok(&self) -> bool {
        matches!(self, VerifyOutcome::Ok)
    }
}

/// Compares the pullback of `map` against `(e^{bD}−1)/b` through `degree`.
pub fn verify_immersion(map: &ImmersionMap, d: &BiSeries, b: &Rational, degree: u32) -> Result<VerifyOutcome> {
    if map.arity != d.arity() {
        return Err(Error::ArityMismatch {
            left: map.arity,
            right: d.arity(),
        });
    }
    let degree = degree.min(map.degree).min(d.degree());
    let expected = b_transform(&normalize_to_diastasis(&d.truncate(degree)), b)?;
    let found = map.pullback().truncate(degree);
    let mut keys: Vec<(usize, usize)> = expected
        .iter()
        .map(|(j, k, _)| (j, k))
        .chain(found.iter().map(|(j, k, _)| (j, k)))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    let o = expected.order();
    for (j, k) in keys {
        let (e, f) = (expected.coeff(j, k), found.coeff(j, k));
        if e != f {
            return Ok(VerifyOutcome::Residual {
                m_j: o.index(j).clone(),
                m_k: o.index(k).clone(),
                expected: e,
                found: f,
            });
        }
    }
    Ok(VerifyOutcome::Ok)
}

/// Components from the LDL* factor of the b-transformed matrix.
pub fn factor_immersion(d: &BiSeries, b: &Rational, degree: u32) -> Result<ImmersionMap> {
    let (verdict, a, psd) = resolvability_with_factor(d, b, degree)?;
    let PsdVerdict::Psd { factor, .. } = psd else {
        let value = match verdict {
            Verdict::CertifiedNotResolvable { witness, .. } => witness.value().to_string(),
            _ => String::new(),
        };
        return Err(Error::NotResolvable { value });
    };
    let order = GradedOrder::new(d.arity(), degree);
    let components = factor
        .into_iter()
        .map(|t| {
            let mut s = HolSeries::zero_in(&order, degree);
            for (i, c) in t.column {
                let j = order.ordinal(&a.basis()[i]).expect("basis within degree");
                s.set(j, c);
            }
            Component {
                radicand: t.value,
                series: s,
                sign: 1,
            }
        })
        .collect();
    Ok(ImmersionMap {
        components,
        target: Target::for_curvature(b),
        arity: d.arity(),
        degree,
    })
}

/// `r^m = Π r_α^{m_α}`.
fn r_pow(r: &[Rational], m: &MultiIndex, sign: i64) -> Rational {
    r.iter()
        .zip(&m.0)
        .map(|(ra, &e)| rational_pow(ra, sign * e as i64))
        .fold(Rational::one(), |acc, x| acc * x)
}

/// Signed pair construction into the indefinite Hilbert space:
///
/// `f_{±j} = ½(a_jj r^{m_j} ± r^{−m_j}) z^{m_j} + Σ_{k>j} a_kj r^{m_j} z^{m_k}`
///
/// so that `Σ_j |f_j|² − |f_{−j}|² = D`. Works for any Hermitian `d`.
pub fn indefinite_immersion(d: &BiSeries, r: &[Rational], degree: u32) -> Result<ImmersionMap> {
    if r.len() != d.arity() {
        return Err(Error::ArityMismatch {
            left: r.len(),
            right: d.arity(),
        });
    }
    if let Some(bad) = r.iter().find(|x| !x.is_positive()) {
        return Err(Error::InvalidParameter(format!("r must be positive, got {bad}")));
    }
    if degree > d.degree() {
        return Err(Error::OutOfRange {
            degree,
            max: d.degree(),
        });
    }
    let d = normalize_to_diastasis(&d.truncate(degree));
    if let Some((j, k)) = d.first_non_hermitian() {
        return Err(Error::Domain(format!("series is not Hermitian at ordinals ({j}, {k})")));
    }
    let order = GradedOrder::new(d.arity(), degree);
    let lim = order.len_through(degree);
    let half = Rational::new(1.into(), 2.into());
    let mut components = Vec::new();
    for j in 1..lim {
        let mj = order.index(j);
        let rp = r_pow(r, mj, 1);
        let rm = r_pow(r, mj, -1);
        let ajj = d.coeff(j, j).re;
        let mut tail = HolSeries::zero_in(&order, degree);
        for k in j + 1..lim {
            let akj = d.coeff(k, j);
            if !akj.is_zero() {
                tail.set(k, akj.scale(&rp));
            }
        }
        if ajj.is_zero() && tail.is_zero() {
            // the pair would cancel exactly
            continue;
        }
        for (sign, s) in [(1i8, Rational::one()), (-1i8, -Rational::one())] {
            let lead = &half * (&ajj * &rp + s * &rm);
            let mut f = tail.clone();
            f.set(j, CScalar::real(lead));
            if !f.is_zero() {
                components.push(Component {
                    radicand: Rational::one(),
                    series: f,
                    sign,
                });
            }
        }
    }
    Ok(ImmersionMap {
        components,
        target: Target::Indefinite,
        arity: d.arity(),
        degree,
    })
}

/// Diagonal coefficient `s_mm` of `(e^{b' D_b} − 1)/b'` at `|m| = k`,
/// times `m!`.
pub fn space_form_radial(b: &Rational, bt: &Rational, k: u32) -> Rational {
    if k == 0 {
        return Rational::zero();
    }
    let kk = k as i64;
    match (b.is_zero(), bt.is_zero()) {
        (true, true) => {
            if k == 1 {
                Rational::one()
            } else {
                Rational::zero()
            }
        }
        (true, false) => rational_pow(bt, kk - 1),
        (false, true) => {
            let fact: Rational = (1..kk)
                .map(|l| Rational::from_integer(l.into()))
                .fold(Rational::one(), |a, x| a * x);
            fact * rational_pow(&-b.clone(), kk - 1)
        }
        (false, false) => (1..kk)
            .map(|l| bt - b * Rational::from_integer(l.into()))
            .fold(Rational::one(), |a, x| a * x),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SpaceFormOutcome {
    /// `rank == None` is infinite rank.
    Exists { map: ImmersionMap, rank: Option<u64> },
    NonExistence {
        reason: String,
        /// First multi-index with a negative diagonal coefficient, if any
        /// lies within the truncation.
        first_negative: Option<(MultiIndex, Rational)>,
    },
}

fn binom_int(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Closed-form classification of immersions between space forms of
/// curvature parameters `b` (source, dimension `n`) and `bt` (target).
pub fn space_form_immersion(n: usize, b: &Rational, bt: &Rational, degree: u32) -> Result<SpaceFormOutcome> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let order = GradedOrder::new(n, degree);
    let first_negative = || {
        (1..=degree).find_map(|k| {
            let v = space_form_radial(b, bt, k);
            v.is_negative().then(|| {
                let m = order.index(order.degree_range(k).start).clone();
                let mf = Rational::from_integer(m.factorial());
                (m, v / mf)
            })
        })
    };
    if b > bt {
        return Ok(SpaceFormOutcome::NonExistence {
            reason: format!("target curvature {bt} is below source curvature {b}"),
            first_negative: first_negative(),
        });
    }
    let ratio = if b.is_zero() { None } else { Some(bt / b) };
    let finite_k = match &ratio {
        Some(q) if q.is_integer() && q.is_positive() => Some(q.to_integer()),
        None if bt.is_zero() => Some(1.into()),
        _ => None,
    };
    if b.is_positive() && finite_k.is_none() {
        return Ok(SpaceFormOutcome::NonExistence {
            reason: format!("{bt}/{b} is not a positive integer"),
            first_negative: first_negative(),
        });
    }
    let rank = finite_k.map(|k| {
        let k: u64 = k.try_into().expect("small ratio");
        binom_int(n as u64 + k, k) - 1
    });
    let mut components = Vec::new();
    for j in 1..order.len() {
        let m = order.index(j);
        let s = space_form_radial(b, bt, m.degree());
        if s.is_zero() {
            continue;
        }
        let mut f = HolSeries::zero_in(&order, degree);
        f.set(j, CScalar::one());
        components.push(Component {
            radicand: s / Rational::from_integer(m.factorial()),
            series: f,
            sign: 1,
        });
    }
    Ok(SpaceFormOutcome::Exists {
        map: ImmersionMap {
            components,
            target: Target::for_curvature(bt),
            arity: n,
            degree,
        },
        rank,
    })
}
