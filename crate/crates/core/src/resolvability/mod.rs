//! Coefficient matrices of diastases and Calabi-criterion verdicts.

mod hartogs;
mod psd;

pub use hartogs::{hartogs_criterion, hartogs_metric_check};
pub use psd::{psd_certify, psd_certify_diagonal, quadratic_form, LdlTerm, PsdVerdict};

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::diastasis::{b_transform, normalize_to_diastasis};
use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use crate::scalar::{CScalar, Rational};
use crate::series::BiSeries;

/// Hermitian matrix of a diastasis over the non-constant multi-indices.
#[derive(Clone, Debug, PartialEq)]
pub struct HermMatrix {
    basis: Vec<MultiIndex>,
    degrees: Vec<u32>,
    entries: BTreeMap<(usize, usize), CScalar>,
    circular: bool,
}

impl HermMatrix {
    /// Builds a matrix directly; `entries` must be Hermitian.
    pub fn from_entries(
        basis: Vec<MultiIndex>,
        entries: impl IntoIterator<Item = ((usize, usize), CScalar)>,
    ) -> Result<Self> {
        let m = basis.len();
        let entries: BTreeMap<_, _> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        for (&(r, c), v) in &entries {
            if r >= m || c >= m {
                return Err(Error::InvalidParameter(format!(
                    "entry ({r},{c}) outside a {m}x{m} matrix"
                )));
            }
            if entries.get(&(c, r)).cloned().unwrap_or_default() != v.conj() {
                return Err(Error::Domain(format!("matrix is not Hermitian at ({r},{c})")));
            }
        }
        let degrees: Vec<u32> = basis.iter().map(MultiIndex::degree).collect();
        let circular = entries.keys().all(|&(r, c)| degrees[r] == degrees[c]);
        Ok(HermMatrix {
            basis,
            degrees,
            entries,
            circular,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[MultiIndex] {
        &self.basis
    }

    pub fn is_circular(&self) -> bool {
        self.circular
    }

    pub fn entry(&self, r: usize, c: usize) -> Option<&CScalar> {
        self.entries.get(&(r, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CScalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.keys().all(|&(r, c)| r == c)
    }

    /// Copy with the circular flag cleared, forcing a single block.
    pub fn monolithic(&self) -> Self {
        HermMatrix {
            circular: false,
            ..self.clone()
        }
    }

    fn block_key(&self, i: usize) -> u32 {
        if self.circular {
            self.degrees[i]
        } else {
            0
        }
    }

    /// Independent principal blocks: one per degree when circular.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for i in 0..self.dim() {
            out.entry(self.block_key(i)).or_default().push(i);
        }
        out.into_values().collect()
    }
}

/// Matrix of `d` through `degree`, without the constant index.
pub fn build_matrix(d: &BiSeries, degree: u32) -> Result<HermMatrix> {
    if degree > d.degree() {
        return Err(Error::OutOfRange {
            degree,
            max: d.degree(),
        });
    }
    let o = d.order();
    if let Some((j, k, _)) = d.iter().find(|(j, k, _)| *j == 0 || *k == 0) {
        return Err(Error::NotADiastasis {
            row: o.index(j).to_string(),
            col: o.index(k).to_string(),
        });
    }
    if let Some((j, k)) = d.first_non_hermitian() {
        return Err(Error::Domain(format!(
            "series is not Hermitian at ({}; {})",
            o.index(j),
            o.index(k)
        )));
    }
    let lim = o.len_through(degree);
    let basis: Vec<MultiIndex> = (1..lim).map(|j| o.index(j).clone()).collect();
    let entries = d
        .iter()
        .filter(|(j, k, _)| *j < lim && *k < lim)
        .map(|(j, k, c)| ((j - 1, k - 1), c.clone()));
    HermMatrix::from_entries(basis, entries)
}

/// Negative-direction certificate of a verdict.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    /// `w* A w = value < 0` for the coefficient matrix `A`.
    Vector {
        basis: Vec<MultiIndex>,
        components: Vec<CScalar>,
        value: Rational,
    },
    /// Negative coefficient of `x^j` in `(F/F(0))^{-(c+k)}`.
    Coefficient { j: u32, k: u32, value: Rational },
}

impl Witness {
    pub fn value(&self) -> &Rational {
        match self {
            Witness::Vector { value, .. } | Witness::Coefficient { value, .. } => value,
        }
    }

    /// Smallest truncation degree at which the witness is visible.
    pub fn degree(&self) -> u32 {
        match self {
            Witness::Vector { basis, .. } => basis.iter().map(MultiIndex::degree).max().unwrap_or(0),
            Witness::Coefficient { j, .. } => *j,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    /// The matrix truncated at `degree` is PSD; `rank` of that truncation.
    ResolvableUpTo { degree: u32, rank: Option<usize> },
    /// Final: every larger truncation contains the same negative direction.
    CertifiedNotResolvable { degree: u32, witness: Witness },
    /// Closed-form verdict; `rank == None` means infinite rank.
    CertifiedResolvable { rank: Option<u64> },
}

impl Verdict {
    pub fn is_not_resolvable(&self) -> bool {
        matches!(self, Verdict::CertifiedNotResolvable { .. })
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            Verdict::ResolvableUpTo { rank, .. } => *rank,
            Verdict::CertifiedResolvable { rank } => rank.map(|r| r as usize),
            Verdict::CertifiedNotResolvable { .. } => None,
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::CertifiedNotResolvable { witness, .. } => Some(witness),
            _ => None,
        }
    }
}

/// Turns a PSD verdict on `a` into a criterion verdict at `degree`.
pub fn verdict_from_psd(a: &HermMatrix, v: &PsdVerdict, degree: u32) -> Verdict {
    match v {
        PsdVerdict::Psd { rank, .. } => Verdict::ResolvableUpTo {
            degree,
            rank: Some(*rank),
        },
        PsdVerdict::NotPsd { witness, value } => {
            let w = Witness::Vector {
                basis: witness.iter().map(|(i, _)| a.basis()[*i].clone()).collect(),
                components: witness.iter().map(|(_, c)| c.clone()).collect(),
                value: value.clone(),
            };
            Verdict::CertifiedNotResolvable {
                degree: w.degree(),
                witness: w,
            }
        }
    }
}

/// b-resolvability of `d` through `degree`.
///
/// The input is normalized first, so any potential of the metric may be
/// passed.
pub fn resolvability(d: &BiSeries, b: &Rational, degree: u32) -> Result<Verdict> {
    let (verdict, _, _) = resolvability_with_factor(d, b, degree)?;
    Ok(verdict)
}

/// As [`resolvability`], also returning the matrix and its certification.
pub fn resolvability_with_factor(d: &BiSeries, b: &Rational, degree: u32) -> Result<(Verdict, HermMatrix, PsdVerdict)> {
    if degree > d.degree() {
        return Err(Error::OutOfRange {
            degree,
            max: d.degree(),
        });
    }
    let d = normalize_to_diastasis(&d.truncate(degree));
    let t = b_transform(&d, b)?;
    let a = build_matrix(&t, degree)?;
    let v = psd_certify(&a);
    Ok((verdict_from_psd(&a, &v, degree), a, v))
}

/// Re-evaluates a vector witness against `(e^{bD}−1)/b` directly from the
/// series coefficients. Returns the recomputed value when it is negative
/// and equals the recorded one.
pub fn validate_witness(d: &BiSeries, b: &Rational, w: &Witness) -> Result<Rational> {
    let Witness::Vector {
        basis,
        components,
        value,
    } = w
    else {
        return Err(Error::InvalidParameter("not a vector witness".into()));
    };
    if basis.len() != components.len() {
        return Err(Error::InvalidParameter(
            "witness basis and components differ in length".into(),
        ));
    }
    let deg = w.degree();
    if deg > d.degree() {
        return Err(Error::OutOfRange {
            degree: deg,
            max: d.degree(),
        });
    }
    let t = b_transform(&normalize_to_diastasis(&d.truncate(deg)), b)?;
    let mut acc = CScalar::zero();
    for (mr, wr) in basis.iter().zip(components) {
        for (mc, wc) in basis.iter().zip(components) {
            acc += &(&(&wr.conj() * &t.coeff_of(mr, mc)) * wc);
        }
    }
    if !acc.im.is_zero() || !acc.re.is_negative() || &acc.re != value {
        return Err(Error::Domain(format!(
            "witness re-evaluates to {acc}, recorded {value}"
        )));
    }
    Ok(acc.re)
}
