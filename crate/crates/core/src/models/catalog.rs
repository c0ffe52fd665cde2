//! Constructors for the concrete potentials.

use num_traits::{One, Signed, Zero};

use crate::diastasis::normalize_to_diastasis;
use crate::error::{Error, Result};
use crate::multi_index::{GradedOrder, MultiIndex};
use crate::scalar::{rat, rat_int, CScalar, Rational};
use crate::series::{
    det_series, exp_series, expm1_series, log1p_series, pow_series, solve_graded_fixed_point, BiSeries, HolSeries,
    Truncated,
};

/// `Σ|z|²` for `b = 0`, else `(1/b)·log(1 + b Σ|z|²)`.
pub fn space_form_diastasis(n: usize, b: &Rational, degree: u32) -> Result<BiSeries> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let rho = BiSeries::norm_sqr(n, degree);
    if b.is_zero() {
        return Ok(rho);
    }
    Ok(log1p_series(&rho.scale_rational(b))?.scale_rational(&b.recip()))
}

/// `−log(F(|z_0|²) − Σ_{j≥1}|z_j|²)` on `C^n`, normalized.
pub fn hartogs_diastasis(f: &HolSeries, n: usize, degree: u32) -> Result<BiSeries> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    if f.arity() != 1 {
        return Err(Error::InvalidParameter("F must be univariate".into()));
    }
    let f0 = f.coeff_x(0);
    if !f0.is_real() || !f0.re.is_positive() {
        return Err(Error::Domain(format!("F(0) = {f0} is not positive")));
    }
    if f.degree() < degree {
        return Err(Error::OutOfRange {
            degree,
            max: f.degree(),
        });
    }
    let x0 = BiSeries::norm_sqr_of(n, degree, [0]);
    let rho = BiSeries::norm_sqr_of(n, degree, 1..n);
    let fx = f.truncate(degree).compose_bi(&x0)?;
    // (F(x0) − ρ)/F(0) − 1
    let g = &(&fx - &rho).scale_rational(&f0.re.recip()) - &x0.one_like();
    Ok(normalize_to_diastasis(&-log1p_series(&g)?))
}

/// Classical bounded symmetric domains.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cartan {
    /// `m × n` matrices.
    I(usize, usize),
    /// Symmetric `n × n` matrices.
    II(usize),
    /// Antisymmetric `n × n` matrices.
    III(usize),
    /// Lie ball in `C^n`.
    IV(usize),
}

impl Cartan {
    /// Number of complex variables.
    pub fn dim(&self) -> usize {
        match *self {
            Cartan::I(m, n) => m * n,
            Cartan::II(n) => n * (n + 1) / 2,
            Cartan::III(n) => n * n.saturating_sub(1) / 2,
            Cartan::IV(n) => n,
        }
    }

    /// Exponent `γ` with `D = −γ log N`; for type III `N = det(I − ZZ*)`.
    pub fn kernel_exponent(&self) -> u32 {
        match *self {
            Cartan::I(m, n) => (m + n) as u32,
            Cartan::II(n) => (n + 1) as u32,
            Cartan::III(n) => (n - 1) as u32,
            Cartan::IV(n) => n as u32,
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Cartan::I(m, n) => m >= 1 && n >= 1,
            Cartan::II(n) => n >= 1,
            Cartan::III(n) => n >= 2,
            Cartan::IV(n) => n != 2 && n >= 1,
        };
        if ok {
            Ok(())
        } else if *self == Cartan::IV(2) {
            Err(Error::InvalidParameter("Omega4[2] is not irreducible".into()))
        } else {
            Err(Error::InvalidParameter(format!("invalid size for {self:?}")))
        }
    }
}

/// Entry `Z_{ij}` as a signed variable, or zero.
fn matrix_variable(t: Cartan, i: usize, j: usize) -> Option<(usize, i64)> {
    match t {
        Cartan::I(_, n) => Some((i * n + j, 1)),
        Cartan::II(n) => {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            Some((upper_index(n, a, b, true), 1))
        }
        Cartan::III(n) => {
            if i == j {
                None
            } else if i < j {
                Some((upper_index(n, i, j, false), 1))
            } else {
                Some((upper_index(n, j, i, false), -1))
            }
        }
        Cartan::IV(_) => None,
    }
}

/// Position of `(a, b)`, `a <= b` (or `a < b` without the diagonal), in the
/// row-major enumeration of the upper triangle.
fn upper_index(n: usize, a: usize, b: usize, with_diag: bool) -> usize {
    let mut idx = 0;
    for r in 0..a {
        idx += if with_diag { n - r } else { n - r - 1 };
    }
    idx + if with_diag { b - a } else { b - a - 1 }
}

fn matrix_shape(t: Cartan) -> (usize, usize) {
    match t {
        Cartan::I(m, n) => (m, n),
        Cartan::II(n) | Cartan::III(n) => (n, n),
        Cartan::IV(_) => (0, 0),
    }
}

/// Bergman diastasis `−γ log N` of a classical domain and the exponent `γ`.
pub fn cartan_bergman_diastasis(t: Cartan, degree: u32) -> Result<(BiSeries, u32)> {
    t.validate()?;
    let gamma = t.kernel_exponent();
    let nv = t.dim();
    let order = GradedOrder::new(nv, degree);
    let log_n = match t {
        Cartan::IV(n) => {
            // N = 1 + |Σ z_j²|² − 2 Σ|z_j|²
            let mut sigma = HolSeries::zero_in(&order, degree);
            if degree >= 2 {
                for a in 0..n {
                    let mut e = vec![0u32; n];
                    e[a] = 2;
                    sigma.set(order.ordinal(&MultiIndex(e))?, CScalar::one());
                }
            }
            let s2 = BiSeries::hol_times_conj(&sigma, &sigma)?;
            let rho = BiSeries::norm_sqr(n, degree);
            log1p_series(&(&s2 - &rho.scale_rational(&rat_int(2))))?
        }
        _ => {
            let (rows, cols) = matrix_shape(t);
            let var = |i: usize, j: usize| -> HolSeries {
                let mut h = HolSeries::zero_in(&order, degree);
                if let (Some((v, s)), true) = (matrix_variable(t, i, j), degree >= 1) {
                    h.set(order.ordinal(&MultiIndex::unit(nv, v)).unwrap(), CScalar::from_int(s));
                }
                h
            };
            let mut m: Vec<Vec<BiSeries>> = Vec::with_capacity(rows);
            for i in 0..rows {
                let mut row = Vec::with_capacity(rows);
                for k in 0..rows {
                    // (ZZ*)_{ik} = Σ_j Z_ij conj(Z_kj)
                    let mut e = BiSeries::zero_in(&order, degree);
                    for j in 0..cols {
                        e = &e + &BiSeries::hol_times_conj(&var(i, j), &var(k, j))?;
                    }
                    let entry = if i == k { &e.one_like() - &e } else { -e };
                    row.push(entry);
                }
                m.push(row);
            }
            let det = det_series(&m)?;
            log1p_series(&(&det - &det.one_like()))?
        }
    };
    Ok((log_n.scale_rational(&-rat_int(gamma as i64)), gamma))
}

/// `−log(N^μ − |w|²)` with `base = −log N` on `C^d` and `w` the last of
/// `d + 1` variables.
pub fn cartan_hartogs_diastasis(base: &BiSeries, mu: &Rational, degree: u32) -> Result<BiSeries> {
    if !mu.is_positive() {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    let d = base.arity();
    let base = base.truncate(degree).embed(d + 1, &(0..d).collect::<Vec<_>>())?;
    let w = BiSeries::norm_sqr_of(d + 1, degree, [d]);
    let n_mu_minus_one = expm1_series(&base.scale_rational(&-mu.clone()))?;
    Ok(-log1p_series(&(&n_mu_minus_one - &w))?)
}

/// Fock–Bargmann–Hartogs potential `νμ|z|² − log(e^{−μ|z|²} − |w|²)`
/// on `C^{n+m}`, `z` first.
pub fn fbh_diastasis(n: usize, m: usize, mu: &Rational, nu: &Rational, degree: u32) -> Result<BiSeries> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidParameter("n and m must be positive".into()));
    }
    if !mu.is_positive() {
        return Err(Error::InvalidParameter(format!("mu must be positive, got {mu}")));
    }
    if *nu <= -Rational::one() {
        return Err(Error::InvalidParameter(format!("nu must exceed -1, got {nu}")));
    }
    let z = BiSeries::norm_sqr_of(n + m, degree, 0..n);
    let w = BiSeries::norm_sqr_of(n + m, degree, n..n + m);
    let inner = &expm1_series(&z.scale_rational(&-mu.clone()))? - &w;
    let phi = &z.scale_rational(&(nu * mu)) - &log1p_series(&inner)?;
    Ok(normalize_to_diastasis(&phi))
}

/// `Σ (−1)^{j+1} |z|^{2j} / j²`.
pub fn cigar_diastasis(degree: u32) -> BiSeries {
    let c: Vec<Rational> = (0..=degree as i64)
        .map(|j| {
            if j == 0 {
                Rational::zero()
            } else {
                let s = if j % 2 == 1 { 1 } else { -1 };
                rat(s, j * j)
            }
        })
        .collect();
    BiSeries::from_diagonal(&c, degree)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TaubNutMode {
    /// `z_2 = 0`: one variable, `x = |z|²`.
    Slice,
    /// Two variables.
    Full,
}

/// Taub-NUT potential `t + s + m(t² + s²)` with `t, s` solving
/// `x_1 = t e^{2m(t−s)}`, `x_2 = s e^{2m(s−t)}` (`s = 0` on the slice).
pub fn taubnut_potential(m: &Rational, mode: TaubNutMode, degree: u32) -> Result<BiSeries> {
    if m.is_negative() {
        return Err(Error::InvalidParameter(format!("m must be nonnegative, got {m}")));
    }
    let two_m = rat_int(2) * m;
    match mode {
        TaubNutMode::Slice => {
            let x = BiSeries::norm_sqr(1, degree);
            let t = solve_graded_fixed_point(
                |t: &BiSeries| Ok(&x * &exp_series(&t.scale_rational(&-two_m.clone()))?),
                x.zero_like(),
                degree,
            )?;
            Ok(&t + &(&t * &t).scale_rational(m))
        }
        TaubNutMode::Full => {
            let x1 = BiSeries::norm_sqr_of(2, degree, [0]);
            let x2 = BiSeries::norm_sqr_of(2, degree, [1]);
            let (t, s) = solve_graded_fixed_point(
                |(t, s): &(BiSeries, BiSeries)| {
                    let diff = (t - s).scale_rational(&-two_m.clone());
                    Ok((&x1 * &exp_series(&diff)?, &x2 * &exp_series(&-diff)?))
                },
                (x1.zero_like(), x2.zero_like()),
                degree,
            )?;
            let sq = &(&t * &t) + &(&s * &s);
            Ok(&(&t + &s) + &sq.scale_rational(m))
        }
    }
}

/// Calabi's tube metric data: the even profile `y(r)` (a series in `r`
/// of degree `2·degree`) and the diastasis on `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct CalabiTube {
    pub y: HolSeries,
    pub diastasis: BiSeries,
}

/// `y(u)`, `u = r²`, from `y' = r (n ∫₀¹ s^{n−1} e^{y(rs)} ds)^{1/n}`
/// with `y(0) = 0`.
pub fn calabi_profile(n: usize, degree: u32) -> Result<HolSeries> {
    if n == 0 {
        return Err(Error::InvalidParameter("dimension must be positive".into()));
    }
    let nn = rat_int(n as i64);
    let seed = HolSeries::zero(1, degree);
    solve_graded_fixed_point(
        |y: &HolSeries| {
            let e = exp_series(y)?;
            let mut w = e.zero_like();
            for k in 0..=degree {
                // n/(n+2k)
                let f = &nn / (&nn + rat_int(2 * k as i64));
                w.set(k as usize, e.coeff_x(k).scale(&f));
            }
            let g = pow_series(&w, &(Rational::one() / &nn))?;
            let mut out = y.zero_like();
            for k in 0..degree {
                out.set(k as usize + 1, g.coeff_x(k).scale(&rat(1, 2 * k as i64 + 2)));
            }
            Ok(out)
        },
        seed,
        degree,
    )
}

pub fn calabi_tube(n: usize, degree: u32) -> Result<CalabiTube> {
    let yu = calabi_profile(n, degree)?;
    let mut y = HolSeries::zero(1, 2 * degree);
    for k in 0..=degree {
        y.set(2 * k as usize, yu.coeff_x(k));
    }
    // F(z, z̄) = y(|z + z̄|) as a series in S = Σ (z_j + z̄_j)²
    let order = GradedOrder::new(n, degree);
    let mut s = BiSeries::zero_in(&order, degree);
    for a in 0..n {
        let e = MultiIndex::unit(n, a);
        let lin = BiSeries::from_terms(
            n,
            degree,
            [
                (e.clone(), MultiIndex::zero(n), CScalar::one()),
                (MultiIndex::zero(n), e, CScalar::one()),
            ],
        )?;
        s = &s + &(&lin * &lin);
    }
    let f = yu.compose_bi(&s)?;
    Ok(CalabiTube {
        y,
        diastasis: normalize_to_diastasis(&f),
    })
}

/// The circular potential
/// `−3 log(1 − |z₁|² − 2|z₂|² − |z₃|² + |z₁|²|z₃|² + |z₂|⁴ − z₁z₃z̄₂² − z₂²z̄₁z̄₃)`.
pub fn phi_b(degree: u32) -> Result<BiSeries> {
    let m = |v: [u32; 3]| MultiIndex(v.to_vec());
    let c = CScalar::from_int;
    let terms = vec![
        (m([1, 0, 0]), m([1, 0, 0]), c(-1)),
        (m([0, 1, 0]), m([0, 1, 0]), c(-2)),
        (m([0, 0, 1]), m([0, 0, 1]), c(-1)),
        (m([1, 0, 1]), m([1, 0, 1]), c(1)),
        (m([0, 2, 0]), m([0, 2, 0]), c(1)),
        (m([1, 0, 1]), m([0, 2, 0]), c(-1)),
        (m([0, 2, 0]), m([1, 0, 1]), c(-1)),
    ];
    let g = BiSeries::from_terms(3, degree, terms)?;
    Ok(log1p_series(&g)?.scale_rational(&rat_int(-3)))
}
