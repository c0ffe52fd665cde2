//! Bell polynomials and the cigar-metric scan.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::models::cigar_diastasis;
use crate::scalar::{factorial, rat_int, rational_to_f64, Rational};
use crate::series::expm1_series;

/// Partial Bell polynomials `B(n, k)` at a fixed argument, `n <= n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct BellTable {
    n_max: u32,
    // values[n][k]
    values: Vec<Vec<Rational>>,
}

impl BellTable {
    /// Entries missing from `x` are read as zero, so `B(n, k)` is exact
    /// whenever `x.len() >= n − k + 1`.
    pub fn new(x: &[Rational], n_max: u32) -> Self {
        let xi = |i: u32| x.get(i as usize - 1).cloned().unwrap_or_else(Rational::zero);
        let n_max_us = n_max as usize;
        let mut values = vec![vec![Rational::zero(); n_max_us + 1]; n_max_us + 1];
        let mut pascal: Vec<Vec<BigInt>> = vec![vec![BigInt::one()]];
        for r in 1..n_max_us.max(1) {
            let prev = &pascal[r - 1];
            let row = (0..=r)
                .map(|i| {
                    let a = if i > 0 { prev[i - 1].clone() } else { BigInt::zero() };
                    let b = prev.get(i).cloned().unwrap_or_default();
                    a + b
                })
                .collect();
            pascal.push(row);
        }
        values[0][0] = Rational::one();
        for n in 1..=n_max {
            for k in 1..=n {
                let mut acc = Rational::zero();
                for i in 1..=n - k + 1 {
                    let prev = &values[(n - i) as usize][(k - 1) as usize];
                    if prev.is_zero() {
                        continue;
                    }
                    let v = xi(i);
                    if v.is_zero() {
                        continue;
                    }
                    acc += v * prev * &pascal[(n - 1) as usize][(i - 1) as usize];
                }
                values[n as usize][k as usize] = acc;
            }
        }
        BellTable { n_max, values }
    }

    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn get(&self, n: u32, k: u32) -> Option<&Rational> {
        self.values.get(n as usize)?.get(k as usize)
    }

    /// `Y_n = Σ_k B(n, k)` with `Y_0 = 0`.
    pub fn complete(&self, n: u32) -> Option<Rational> {
        if n > self.n_max {
            return None;
        }
        Some((1..=n).map(|k| self.values[n as usize][k as usize].clone()).sum())
    }
}

pub fn bell_partial(n: u32, k: u32, x: &[Rational]) -> Result<Rational> {
    if k < 1 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got n={n}, k={k}")));
    }
    if x.len() < (n - k + 1) as usize {
        return Err(Error::InvalidParameter(format!(
            "B({n},{k}) needs {} arguments, got {}",
            n - k + 1,
            x.len()
        )));
    }
    Ok(BellTable::new(x, n).values[n as usize][k as usize].clone())
}

pub fn bell_complete(n: u32, x: &[Rational]) -> Result<Rational> {
    if x.len() < n as usize {
        return Err(Error::InvalidParameter(format!(
            "Y_{n} needs {n} arguments, got {}",
            x.len()
        )));
    }
    Ok(BellTable::new(x, n).complete(n).expect("within table"))
}

/// `ã_j = −c·j!/j²` for `j = 1..=n`.
pub fn cigar_arguments(c: &Rational, n: u32) -> Vec<Rational> {
    (1..=n as u64)
        .map(|j| -c * Rational::new(factorial(j), BigInt::from(j * j)))
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct CigarNegative {
    pub n: u32,
    /// `Y_n(ã)`.
    pub y: Rational,
    /// Coefficient of `|z|^{2n}` in `e^{cD} − 1`.
    pub coefficient: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CigarScan {
    pub first_negative: Option<CigarNegative>,
    pub n_max: u32,
}

/// Smallest even `n <= n_max` with `Y_n(ã) < 0`. Every coefficient up to
/// that point is computed twice, from the Bell table and from the series
/// exponential, and the two must agree.
pub fn cigar_scan(c: &Rational, n_max: u32) -> Result<CigarScan> {
    if !c.is_positive() {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let table = BellTable::new(&cigar_arguments(c, n_max), n_max);
    let series = expm1_series(&cigar_diastasis(n_max).scale_rational(c))?;
    for n in 1..=n_max {
        let y = table.complete(n).expect("within table");
        let sign = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
        let coefficient = sign * &y / Rational::from_integer(factorial(n as u64));
        let check = series.diagonal_coeff(n);
        if !check.is_real() || check.re != coefficient {
            return Err(Error::Domain(format!(
                "Bell and series paths disagree at n={n}: {coefficient} vs {check}"
            )));
        }
        if n % 2 == 0 && y.is_negative() {
            return Ok(CigarScan {
                first_negative: Some(CigarNegative { n, y, coefficient }),
                n_max,
            });
        }
    }
    Ok(CigarScan {
        first_negative: None,
        n_max,
    })
}

/// Rational bounds on `π²/6` from `N` terms plus an Euler–Maclaurin tail,
/// rounded outward to denominator `10^digits`.
pub fn zeta2_enclosure(terms: u32, digits: u32) -> (Rational, Rational) {
    let n = rat_int(terms.max(1) as i64);
    let partial: Rational = (1..=terms.max(1) as i64)
        .map(|k| Rational::new(BigInt::one(), BigInt::from(k * k)))
        .sum();
    // Σ_{k>N} 1/k² lies between consecutive Euler–Maclaurin truncations.
    let lower_tail = n.recip() - (rat_int(2) * &n * &n).recip() + (rat_int(6) * num_traits::pow(n.clone(), 3)).recip()
        - (rat_int(30) * num_traits::pow(n.clone(), 5)).recip();
    let upper_tail = &lower_tail + (rat_int(42) * num_traits::pow(n, 7)).recip();
    let scale = BigInt::from(10u32).pow(digits);
    let lo = &partial + lower_tail;
    let hi = &partial + upper_tail;
    let down = Rational::new((lo.numer() * &scale).div_floor(lo.denom()), scale.clone());
    let up = Rational::new((hi.numer() * &scale).div_ceil(hi.denom()), scale);
    (down, up)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CigarLimit {
    pub terms: u32,
    pub zeta2: (Rational, Rational),
    /// `Σ_{k<=terms} (−1)^{k+1} (cZ)^k/k!` at both ends of the enclosure.
    pub partial_sums: (Rational, Rational),
    /// Enclosure of `1 − e^{−cπ²/6}`.
    pub bounds: (Rational, Rational),
    pub value: f64,
    pub reference: f64,
}

fn alternating_partial(x: &Rational, terms: u32) -> Rational {
    // Over the common denominator q^T T!: Σ (−1)^{k+1} p^k q^{T−k} T!/k!.
    let (p, q) = (x.numer(), x.denom());
    let mut acc = BigInt::zero();
    let mut pk = BigInt::one();
    let mut tail = BigInt::one(); // T!/k!
    let mut qpow: Vec<BigInt> = vec![BigInt::one()];
    for _ in 0..terms {
        let next = qpow.last().expect("nonempty") * q;
        qpow.push(next);
    }
    let mut falling = vec![BigInt::one(); terms as usize + 1];
    for k in (0..terms as usize).rev() {
        tail *= BigInt::from(k + 1);
        falling[k] = tail.clone();
    }
    for k in 1..=terms as usize {
        pk *= p;
        let t = &pk * &qpow[terms as usize - k] * &falling[k];
        if k % 2 == 1 {
            acc += t;
        } else {
            acc -= t;
        }
    }
    Rational::new(acc, &qpow[terms as usize] * &falling[0])
}

pub fn cigar_limit(c: &Rational, terms: u32) -> Result<CigarLimit> {
    if terms == 0 {
        return Err(Error::InvalidParameter("terms must be positive".into()));
    }
    if !c.is_positive() {
        return Err(Error::InvalidParameter(format!("c must be positive, got {c}")));
    }
    let zeta2 = zeta2_enclosure(200, 24);
    let (xlo, xhi) = (c * &zeta2.0, c * &zeta2.1);
    let slo = alternating_partial(&xlo, terms);
    let shi = alternating_partial(&xhi, terms);
    // |tail| <= x^{T+1}/(T+1)!
    let rem = |x: &Rational| {
        num_traits::pow(x.clone(), terms as usize + 1) / Rational::from_integer(factorial(terms as u64 + 1))
    };
    let lower = &slo - rem(&xlo);
    let upper = &shi + rem(&xhi);
    let value = rational_to_f64(&((&lower + &upper) / rat_int(2)));
    let reference = 1.0 - (-(c.to_f64().unwrap_or(f64::NAN)) * std::f64::consts::PI.powi(2) / 6.0).exp();
    Ok(CigarLimit {
        terms,
        zeta2,
        partial_sums: (slo, shi),
        bounds: (lower, upper),
        value,
        reference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::series::{exp_series, HolSeries};
    use proptest::prelude::*;

    fn binom(n: u32, k: u32) -> Rational {
        Rational::from_integer(factorial(n as u64) / (factorial(k as u64) * factorial((n - k) as u64)))
    }

    /// Direct sum over set partitions of `{1..n}` into `k` blocks.
    fn brute(n: u32, k: u32, x: &[Rational]) -> Rational {
        fn go(i: u32, n: u32, blocks: &mut Vec<u32>, k: u32, x: &[Rational], acc: &mut Rational) {
            if i == n {
                if blocks.len() as u32 == k {
                    *acc += blocks.iter().map(|&s| x[s as usize - 1].clone()).product::<Rational>();
                }
                return;
            }
            for b in 0..blocks.len() {
                blocks[b] += 1;
                go(i + 1, n, blocks, k, x, acc);
                blocks[b] -= 1;
            }
            if (blocks.len() as u32) < k {
                blocks.push(1);
                go(i + 1, n, blocks, k, x, acc);
                blocks.pop();
            }
        }
        let mut acc = Rational::zero();
        go(0, n, &mut Vec::new(), k, x, &mut acc);
        acc
    }

    /// `B(n, k+1)` as the nested binomial sum over `n > α_1 > … > α_k >= 1`.
    fn nested(n: u32, k1: u32, x: &[Rational]) -> Rational {
        let k = k1 - 1;
        let xi = |i: u32| x[i as usize - 1].clone();
        if k == 0 {
            return xi(n);
        }
        fn go(level: u32, k: u32, prev: u32, weight: Rational, x: &dyn Fn(u32) -> Rational, acc: &mut Rational) {
            let lo = k - level + 1;
            for a in lo..prev {
                let w = &weight * binom(prev, a) * x(prev - a);
                if level == k {
                    *acc += w * x(a);
                } else {
                    go(level + 1, k, a, w, x, acc);
                }
            }
        }
        let mut acc = Rational::zero();
        go(1, k, n, Rational::one(), &xi, &mut acc);
        acc / Rational::from_integer(factorial(k as u64 + 1))
    }

    fn xs(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&a| rat_int(a)).collect()
    }

    #[test]
    fn small_values() {
        let x = vec![rat(2, 3), rat(-1, 5), rat(7, 2)];
        assert_eq!(bell_partial(3, 1, &x).unwrap(), x[2]);
        assert_eq!(bell_partial(3, 2, &xs(&[1, 1])).unwrap(), rat_int(3));
        assert_eq!(bell_partial(4, 4, &x[..1]).unwrap(), num_traits::pow(x[0].clone(), 4));
        assert_eq!(bell_complete(1, &x).unwrap(), x[0]);
        assert_eq!(bell_complete(2, &x).unwrap(), &x[0] * &x[0] + &x[1]);
        assert_eq!(bell_complete(0, &[]).unwrap(), Rational::zero());
        let a = vec![rat_int(-1), rat(-1, 2), rat(-2, 3), rat(-3, 2)];
        assert_eq!(bell_complete(4, &a).unwrap(), rat(-1, 12));
        assert_eq!(cigar_arguments(&rat_int(1), 4), a);
        assert!(bell_partial(3, 0, &x).is_err());
        assert!(bell_partial(3, 4, &x).is_err());
        assert!(bell_partial(5, 1, &x).is_err());
    }

    #[test]
    fn brute_force_and_nested_agree() {
        let x = vec![
            rat(1, 2),
            rat(-3, 1),
            rat(2, 7),
            rat(5, 3),
            rat(-1, 4),
            rat(3, 1),
            rat(1, 9),
        ];
        for n in 1..=7 {
            for k in 1..=n {
                let b = bell_partial(n, k, &x).unwrap();
                assert_eq!(b, brute(n, k, &x), "({n},{k})");
                assert_eq!(b, nested(n, k, &x), "({n},{k})");
            }
        }
    }

    #[test]
    fn cigar_scan_unit() {
        let s = cigar_scan(&rat_int(1), 12).unwrap();
        let neg = s.first_negative.unwrap();
        assert_eq!(neg.n, 4);
        assert_eq!(neg.y, rat(-1, 12));
        assert_eq!(neg.coefficient, rat(-1, 288));
        // nothing negative below the horizon
        assert!(cigar_scan(&rat_int(1), 3).unwrap().first_negative.is_none());
    }

    #[test]
    fn small_c_fails_at_degree_two() {
        // x² coefficient of e^{cD} is c(c/2 − 1/4)
        for c in [rat(1, 10), rat(1, 3), rat(49, 100)] {
            let neg = cigar_scan(&c, 12).unwrap().first_negative.unwrap();
            assert_eq!(neg.n, 2);
            assert_eq!(neg.coefficient, &c * (&c / rat_int(2) - rat(1, 4)));
        }
        assert_eq!(cigar_scan(&rat(1, 2), 12).unwrap().first_negative.unwrap().n, 4);
    }

    #[test]
    fn zeta2_brackets_float() {
        let (lo, hi) = zeta2_enclosure(200, 24);
        let z = std::f64::consts::PI.powi(2) / 6.0;
        assert!(rational_to_f64(&lo) <= z && z <= rational_to_f64(&hi));
        assert!(rational_to_f64(&(&hi - &lo)) < 1e-15);
        let (lo5, hi5) = zeta2_enclosure(5, 30);
        assert!(rational_to_f64(&lo5) <= z && z <= rational_to_f64(&hi5));
    }

    #[test]
    fn limit_values() {
        let l = cigar_limit(&rat_int(1), 40).unwrap();
        assert!((l.value - 0.806_974_710_860_1).abs() < 1e-12);
        assert!((l.value - l.reference).abs() < 1e-9);
        assert!(l.bounds.0 <= l.bounds.1);
        // Leibniz: successive partial sums bracket the limit
        let a = cigar_limit(&rat_int(1), 9).unwrap();
        let b = cigar_limit(&rat_int(1), 10).unwrap();
        let lim = l.reference;
        assert!(rational_to_f64(&a.partial_sums.0) > lim && rational_to_f64(&b.partial_sums.1) < lim);
        let big = cigar_limit(&rat_int(20), 200).unwrap();
        assert!(big.value < 1.0 && big.value > 1.0 - 1e-9);
    }

    proptest! {
        #[test]
        fn scaling_identity(
            t in (1i64..9, 1i64..9), r in (-9i64..9, 1i64..9),
            x in prop::collection::vec((-9i64..9, 1i64..9), 7),
        ) {
            let t = rat(t.0, t.1);
            let r = rat(r.0, r.1);
            let x: Vec<Rational> = x.iter().map(|&(p, q)| rat(p, q)).collect();
            let y: Vec<Rational> = x.iter().enumerate()
                .map(|(i, v)| &t * num_traits::pow(r.clone(), i + 1) * v).collect();
            let yr: Vec<Rational> = x.iter().enumerate()
                .map(|(i, v)| num_traits::pow(r.clone(), i + 1) * v).collect();
            let bx = BellTable::new(&x, 7);
            let by = BellTable::new(&y, 7);
            let byr = BellTable::new(&yr, 7);
            for n in 1..=7u32 {
                for k in 1..=n {
                    let expect = num_traits::pow(t.clone(), k as usize) * num_traits::pow(r.clone(), n as usize) * bx.get(n, k).unwrap();
                    prop_assert_eq!(by.get(n, k).unwrap(), &expect);
                }
                prop_assert_eq!(byr.complete(n).unwrap(), num_traits::pow(r.clone(), n as usize) * bx.complete(n).unwrap());
            }
        }

        #[test]
        fn exponential_link(a in prop::collection::vec((-9i64..9, 1i64..9), 7)) {
            let a: Vec<Rational> = a.iter().map(|&(p, q)| rat(p, q)).collect();
            let mut c = vec![Rational::zero()];
            for (j, v) in a.iter().enumerate() {
                c.push(v / Rational::from_integer(factorial(j as u64 + 1)));
            }
            let e = exp_series(&HolSeries::univariate(&c, 7)).unwrap();
            let table = BellTable::new(&a, 7);
            for n in 1..=7u32 {
                let d = e.coeff_x(n).re * Rational::from_integer(factorial(n as u64));
                prop_assert_eq!(d, table.complete(n).unwrap());
            }
        }
    }
}
