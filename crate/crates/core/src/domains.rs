//! Wallach-set decisions for scaled Bergman metrics and the Cartan–Hartogs
//! reduction.

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::immersion::{factor_immersion, Component, ImmersionMap, Target};
use crate::models::Cartan;
use crate::multi_index::{GradedOrder, MultiIndex};
use crate::scalar::{pochhammer_over_factorial, rat_int, Rational};
use crate::series::{BiSeries, HolSeries};

/// Rank `r`, invariant `a`, genus `γ` and dimension `d` of a bounded
/// symmetric domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainInvariants {
    pub r: u32,
    pub a: Rational,
    pub genus: u32,
    pub dim: u32,
}

impl DomainInvariants {
    pub fn new(r: u32, a: Rational, genus: u32, dim: u32) -> Result<Self> {
        if r == 0 || genus == 0 || a.is_negative() {
            return Err(Error::InvalidParameter("need r >= 1, a >= 0, genus >= 1".into()));
        }
        Ok(DomainInvariants { r, a, genus, dim })
    }

    /// `CH^d`.
    pub fn ball(d: u32) -> Self {
        DomainInvariants {
            r: 1,
            a: rat_int(2),
            genus: d + 1,
            dim: d,
        }
    }

    /// Reference values for the classical domains. Here `genus` is the
    /// exponent relative to the generic norm, so type III reports `2(n−1)`.
    pub fn classical(t: Cartan) -> Self {
        let dim = t.dim() as u32;
        let (r, a, genus) = match t {
            Cartan::I(m, n) => (m.min(n) as u32, rat_int(2), (m + n) as u32),
            Cartan::II(n) => (n as u32, rat_int(1), (n + 1) as u32),
            Cartan::III(n) => ((n / 2) as u32, rat_int(4), 2 * (n as u32 - 1)),
            Cartan::IV(n) => (2, rat_int(n as i64 - 2), n as u32),
        };
        DomainInvariants { r, a, genus, dim }
    }

    /// Start of the continuous part, `(r−1)a/2`.
    pub fn threshold(&self) -> Rational {
        rat_int(self.r as i64 - 1) * &self.a / rat_int(2)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Discrete(u32),
    Continuous,
    Outside,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        !matches!(self, Membership::Outside)
    }
}

pub fn wallach_membership(inv: &DomainInvariants, eta: &Rational) -> Membership {
    let half_a = &inv.a / rat_int(2);
    for k in 0..inv.r {
        if *eta == rat_int(k as i64) * &half_a {
            return Membership::Discrete(k);
        }
    }
    if *eta > inv.threshold() {
        Membership::Continuous
    } else {
        Membership::Outside
    }
}

/// Whether `c·g_B` is projectively induced: `cγ ∈ W ∖ {0}`.
pub fn bergman_scaling_decision(inv: &DomainInvariants, c: &Rational) -> Result<bool> {
    if !c.is_positive() {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let eta = c * rat_int(inv.genus as i64);
    Ok(!eta.is_zero() && wallach_membership(inv, &eta).is_member())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanHartogsDecision {
    pub holds: bool,
    /// First `m` with `(c+m)μ` outside the Wallach set.
    pub failing_m: Option<u64>,
    /// Last `m` inspected; every larger one lies in the continuous part.
    pub checked_through: u64,
}

/// `(c+m)μ ∈ W ∖ {0}` for every integer `m >= 0`.
pub fn cartan_hartogs_decision(inv: &DomainInvariants, mu: &Rational, c: &Rational) -> Result<CartanHartogsDecision> {
    if !mu.is_positive() || !c.is_positive() {
        return Err(Error::InvalidParameter("mu and c must be positive".into()));
    }
    let t = inv.threshold();
    let mut m = 0u64;
    loop {
        let eta = (c + rat_int(m as i64)) * mu;
        if !wallach_membership(inv, &eta).is_member() {
            return Ok(CartanHartogsDecision {
                holds: false,
                failing_m: Some(m),
                checked_through: m,
            });
        }
        if eta > t {
            return Ok(CartanHartogsDecision {
                holds: true,
                failing_m: None,
                checked_through: m,
            });
        }
        m += 1;
    }
}

/// Base maps `h_k` with `Σ|h_k|² = e^{k D_B} − 1`, obtained by factoring
/// `k·bergman` into projective space.
pub fn factored_base_maps(bergman: &BiSeries, degree: u32) -> impl Fn(&Rational) -> Result<ImmersionMap> + '_ {
    move |k: &Rational| {
        factor_immersion(&bergman.scale_rational(k), &Rational::one(), degree)
            .map_err(|e| Error::MissingBaseMap(format!("scaling {k}: {e}")))
    }
}

/// Immersion of `α·D` into projective space, `D = −log(N^μ − |w|²)`, from
/// base maps for the Bergman scalings `μ(α+m)/γ`.
pub fn ch_immersion(
    base_maps: &dyn Fn(&Rational) -> Result<ImmersionMap>,
    mu: &Rational,
    gamma: u32,
    alpha: &Rational,
    degree: u32,
) -> Result<ImmersionMap> {
    if !alpha.is_positive() || !mu.is_positive() || gamma == 0 {
        return Err(Error::InvalidParameter("alpha, mu and gamma must be positive".into()));
    }
    let mut components = Vec::new();
    let mut arity = None;
    let gamma = rat_int(gamma as i64);
    for m in 0..=degree {
        let p = pochhammer_over_factorial(alpha, m as u64);
        if m >= 1 {
            components.push((m, None, p.clone()));
        }
        if m < degree {
            let k = mu * (alpha + rat_int(m as i64)) / &gamma;
            let base = base_maps(&k)?;
            if base.target != Target::Curvature(Rational::one()) {
                return Err(Error::MissingBaseMap(format!(
                    "scaling {k}: base map is not projective"
                )));
            }
            if base.degree < degree - m {
                return Err(Error::MissingBaseMap(format!(
                    "scaling {k}: base map truncated at {} < {}",
                    base.degree,
                    degree - m
                )));
            }
            match arity {
                None => arity = Some(base.arity),
                Some(a) if a != base.arity => {
                    return Err(Error::ArityMismatch {
                        left: a,
                        right: base.arity,
                    })
                }
                _ => {}
            }
            for c in base.components {
                components.push((m, Some(c), p.clone()));
            }
        }
    }
    let d = arity.ok_or_else(|| Error::InvalidParameter("degree must be positive".into()))?;
    let order = GradedOrder::new(d + 1, degree);
    let axes: Vec<usize> = (0..d).collect();
    let w = |m: u32| {
        let mut e = vec![0u32; d + 1];
        e[d] = m;
        MultiIndex(e)
    };
    let mut out = Vec::new();
    for (m, base, p) in components {
        let (series, radicand, sign) = match base {
            None => (HolSeries::monomial(d + 1, degree, &w(m))?, p, 1),
            Some(c) => (
                c.series.embed(d + 1, &axes, &order)?.shift(&w(m), degree)?,
                p * c.radicand,
                c.sign,
            ),
        };
        if !series.is_zero() {
            out.push(Component { radicand, series, sign });
        }
    }
    Ok(ImmersionMap {
        components: out,
        target: Target::Curvature(Rational::one()),
        arity: d + 1,
        degree,
    })
}
