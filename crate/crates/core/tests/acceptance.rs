//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails. Every certificate produced along the way is
//! re-checked by the last criterion.

use std::cell::RefCell;
use std::process::ExitCode;

use calabi_core::bell::{cigar_limit, cigar_scan, BellTable};
use calabi_core::diastasis::b_transform;
use calabi_core::domains::{
    bergman_scaling_decision, cartan_hartogs_decision, ch_immersion, factored_base_maps, wallach_membership,
    DomainInvariants, Membership,
};
use calabi_core::einstein::{einstein_estimate, EinsteinOutcome};
use calabi_core::immersion::{factor_immersion, verify_immersion, ImmersionMap};
use calabi_core::models::{
    calabi_tube, cartan_bergman_diastasis, cigar_diastasis, get_model, phi_b, space_form_diastasis, taubnut_potential,
    Cartan, HartogsProfile, ModelSpec, TaubNutMode,
};
use calabi_core::resolvability::{hartogs_criterion, resolvability, validate_witness, Verdict, Witness};
use calabi_core::scalar::{binomial, factorial, rat, rat_int, rational_to_f64};
use calabi_core::series::{exp_series, expm1_series};
use calabi_core::{BiSeries, CScalar, HolSeries, MultiIndex, Rational};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Golden values recorded after the first derivation.
const PHI_B_WITNESS_DEGREE: u32 = 2;
const RHP_WITNESS_J: [(i64, i64, u32); 4] = [(1, 2, 3), (1, 1, 3), (2, 1, 3), (5, 1, 3)];

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

/// Everything emitted by the suite, for the soundness sweep.
#[derive(Default)]
struct Emitted {
    vectors: Vec<(String, BiSeries, Rational, Witness)>,
    coefficients: Vec<(String, HolSeries, Rational, Witness)>,
    maps: Vec<(String, ImmersionMap, BiSeries, Rational, u32)>,
}

thread_local! {
    static EMITTED: RefCell<Emitted> = RefCell::new(Emitted::default());
}

fn analyze(label: &str, d: &BiSeries, b: &Rational, degree: u32) -> Result<Verdict, String> {
    let v = resolvability(d, b, degree).map_err(|e| format!("{label}: {e}"))?;
    if let Verdict::CertifiedNotResolvable { witness, .. } = &v {
        EMITTED.with(|e| {
            e.borrow_mut()
                .vectors
                .push((label.into(), d.clone(), b.clone(), witness.clone()))
        });
    }
    Ok(v)
}

fn hartogs(label: &str, f: &HolSeries, c: &Rational, jmax: u32, kmax: u32) -> Result<Verdict, String> {
    let v = hartogs_criterion(f, c, jmax, kmax).map_err(|e| format!("{label}: {e}"))?;
    if let Verdict::CertifiedNotResolvable { witness, .. } = &v {
        EMITTED.with(|e| {
            e.borrow_mut()
                .coefficients
                .push((label.into(), f.clone(), c.clone(), witness.clone()))
        });
    }
    Ok(v)
}

fn record_map(label: &str, map: &ImmersionMap, d: &BiSeries, b: &Rational, degree: u32) {
    EMITTED.with(|e| {
        e.borrow_mut()
            .maps
            .push((label.into(), map.clone(), d.clone(), b.clone(), degree))
    });
}

fn witness_of(v: &Verdict) -> Option<&Witness> {
    match v {
        Verdict::CertifiedNotResolvable { witness, .. } => Some(witness),
        _ => None,
    }
}

fn fact(n: u32) -> Rational {
    Rational::from_integer(factorial(n as u64))
}

fn multi_factorial(m: &MultiIndex) -> Rational {
    m.0.iter().map(|&e| fact(e)).product()
}

fn random_rational(rng: &mut ChaCha8Rng, lo: i64, hi: i64, qmax: i64) -> Rational {
    rat(rng.gen_range(lo..=hi), rng.gen_range(1..=qmax))
}

fn criterion_1() -> Check {
    let cases = [(1usize, 1u32, 1usize), (1, 2, 2), (1, 3, 3), (2, 1, 2), (2, 2, 5)];
    for (n, k, rank) in cases {
        let degree = 2 * k;
        let fs = space_form_diastasis(n, &rat_int(1), degree).map_err(|e| e.to_string())?;
        let d = fs.scale_rational(&rat_int(k as i64));
        let v = analyze(&format!("{k}·FS, n={n}"), &d, &rat_int(1), degree)?;
        ensure!(
            v == Verdict::ResolvableUpTo {
                degree,
                rank: Some(rank)
            },
            "n={n} k={k}: expected rank {rank}, got {v:?}"
        );
        let map = factor_immersion(&d, &rat_int(1), degree).map_err(|e| e.to_string())?;
        ensure!(map.len() == rank, "n={n} k={k}: map has {} components", map.len());
        record_map(&format!("{k}·FS, n={n}"), &map, &d, &rat_int(1), degree);
    }
    for c in [rat(1, 2), rat(3, 2)] {
        let fs = space_form_diastasis(1, &rat_int(1), 4).map_err(|e| e.to_string())?;
        let v = analyze(&format!("{c}·FS"), &fs.scale_rational(&c), &rat_int(1), 4)?;
        let w = witness_of(&v).ok_or(format!("c={c}: expected a certificate, got {v:?}"))?;
        let j = w.degree();
        ensure!(j <= 4, "c={c}: witness degree {j}");
        // single-variable diagonal entry C(c, j)
        ensure!(
            *w.value() == binomial(&c, j as u64),
            "c={c}: value {} at degree {j}",
            w.value()
        );
        if c == rat(1, 2) {
            ensure!(*w.value() == rat(-1, 8), "c=1/2: value {}", w.value());
        }
    }
    Ok(())
}

fn criterion_2() -> Check {
    let degree = 5;
    for n in 1..=2usize {
        let ch = space_form_diastasis(n, &rat_int(-1), degree).map_err(|e| e.to_string())?;
        let flat = BiSeries::norm_sqr(n, degree);
        let cases: [(&str, &BiSeries, Rational, fn(&MultiIndex) -> Rational); 3] = [
            ("CH into flat", &ch, rat_int(0), |m| {
                fact(m.degree() - 1) / multi_factorial(m)
            }),
            ("CH into CP", &ch, rat_int(1), |m| fact(m.degree()) / multi_factorial(m)),
            ("flat into CP", &flat, rat_int(1), |m| {
                Rational::one() / multi_factorial(m)
            }),
        ];
        for (name, d, b, radicand) in cases {
            let map = factor_immersion(d, &b, degree).map_err(|e| format!("{name}, n={n}: {e}"))?;
            let monomials = map.components.first().map(|c| c.series.order().len_through(degree) - 1);
            ensure!(Some(map.len()) == monomials, "{name}, n={n}: {} components", map.len());
            let mut seen = Vec::new();
            for c in &map.components {
                ensure!(
                    c.sign == 1 && c.series.nnz() == 1,
                    "{name}, n={n}: component is not a monomial"
                );
                let (j, coeff) = c.series.leading().unwrap();
                ensure!(coeff.is_one(), "{name}, n={n}: coefficient {coeff}");
                let m = c.series.order().index(j).clone();
                ensure!(
                    c.radicand == radicand(&m),
                    "{name}, n={n}: radicand {} at {m:?}",
                    c.radicand
                );
                seen.push(m);
            }
            seen.sort();
            seen.dedup();
            ensure!(seen.len() == map.len(), "{name}, n={n}: repeated monomial");
            let ok = verify_immersion(&map, d, &b, degree).map_err(|e| e.to_string())?;
            ensure!(ok.is_ok(), "{name}, n={n}: {ok:?}");
            record_map(&format!("{name}, n={n}"), &map, d, &b, degree);
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let (d, _) = cartan_bergman_diastasis(Cartan::IV(3), 2).map_err(|e| e.to_string())?;
    let v = analyze("Omega4[3]", &d, &rat_int(0), 2)?;
    ensure!(
        matches!(v, Verdict::CertifiedNotResolvable { degree: 2, .. }),
        "expected a degree-2 certificate, got {v:?}"
    );
    let squares: Vec<MultiIndex> = (0..3)
        .map(|i| {
            let mut e = vec![0; 3];
            e[i] = 2;
            MultiIndex(e)
        })
        .collect();
    let w = Witness::Vector {
        basis: squares,
        components: vec![CScalar::one(); 3],
        value: rat_int(-9),
    };
    let value = validate_witness(&d, &rat_int(0), &w).map_err(|e| e.to_string())?;
    ensure!(value == rat_int(-9), "(1,1,1) gives {value}");
    EMITTED.with(|e| {
        e.borrow_mut()
            .vectors
            .push(("Omega4[3] (1,1,1)".into(), d.clone(), rat_int(0), w))
    });
    Ok(())
}

fn criterion_4() -> Check {
    let d = phi_b(3).map_err(|e| e.to_string())?;
    let v = analyze("Phi_B", &d, &rat_int(0), 3)?;
    let w = witness_of(&v).ok_or(format!("expected a certificate, got {v:?}"))?;
    ensure!(w.value().is_negative(), "value {}", w.value());
    ensure!(w.degree() == PHI_B_WITNESS_DEGREE, "witness degree {}", w.degree());
    validate_witness(&d, &rat_int(0), w).map_err(|e| e.to_string())?;
    Ok(())
}

fn criterion_5() -> Check {
    let grid = [rat(1, 3), rat_int(1), rat(5, 2)];
    for p in [rat(1, 2), rat_int(1), rat_int(3)] {
        let f = HartogsProfile::OneMinusPow(p.clone())
            .series(8)
            .map_err(|e| e.to_string())?;
        for c in &grid {
            let v = hartogs(&format!("(1-x)^{p}, c={c}"), &f, c, 8, 8)?;
            ensure!(!v.is_not_resolvable(), "(1-x)^{p} fails at c={c}: {v:?}");
        }
    }

    let f = HartogsProfile::InvPow(rat_int(1))
        .series(8)
        .map_err(|e| e.to_string())?;
    for c in [rat(1, 2), rat_int(1), rat(3, 2), rat_int(2), rat(5, 2), rat_int(3)] {
        let v = hartogs(&format!("1/(x+1), c={c}"), &f, &c, 8, 8)?;
        ensure!(v.is_not_resolvable() != c.is_integer(), "1/(x+1), c={c}: {v:?}");
        if c == rat(3, 2) {
            let ok = matches!(witness_of(&v), Some(Witness::Coefficient { j: 3, k: 0, .. }));
            ensure!(ok, "1/(x+1), c=3/2: witness {v:?}");
        }
    }

    let f = HartogsProfile::RhpCubic.series(25).map_err(|e| e.to_string())?;
    for (p, q, golden) in RHP_WITNESS_J {
        let c = rat(p, q);
        let v = hartogs(&format!("rhp, c={c}"), &f, &c, 25, 25)?;
        match witness_of(&v) {
            Some(Witness::Coefficient { j, .. }) => ensure!(*j == golden, "rhp, c={c}: j={j}"),
            _ => return Err(format!("rhp, c={c}: {v:?}")),
        }
    }

    for c in [1i64, 2] {
        let spec = ModelSpec::new("hartogs-inv-sqrt").with("scale", &c.to_string());
        let d = get_model(&spec, 4).map_err(|e| e.to_string())?;
        for b in [0i64, 1, -1] {
            let v = analyze(&format!("1/sqrt(x+1), c={c}, b={b}"), &d, &rat_int(b), 4)?;
            ensure!(v.is_not_resolvable(), "1/sqrt(x+1), c={c}, b={b}: {v:?}");
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let scan = cigar_scan(&rat_int(1), 12).map_err(|e| e.to_string())?;
    let neg = scan.first_negative.ok_or("no negative coefficient")?;
    ensure!(neg.n == 4, "first negative at n={}", neg.n);
    ensure!(neg.y == rat(-1, 12), "Y_4 = {}", neg.y);
    ensure!(neg.coefficient == rat(-1, 288), "coefficient {}", neg.coefficient);
    let e = expm1_series(&cigar_diastasis(4)).map_err(|e| e.to_string())?;
    ensure!(
        e.diagonal_coeff(4).re == neg.coefficient,
        "series path gives {}",
        e.diagonal_coeff(4)
    );

    let limit = cigar_limit(&rat_int(1), 40).map_err(|e| e.to_string())?;
    let exact = 1.0 - (-std::f64::consts::PI.powi(2) / 6.0).exp();
    ensure!((limit.value - exact).abs() < 1e-9, "limit {} vs {exact}", limit.value);
    let (lo, hi) = (rational_to_f64(&limit.bounds.0), rational_to_f64(&limit.bounds.1));
    ensure!(
        lo <= exact + 1e-15 && exact - 1e-15 <= hi,
        "[{lo}, {hi}] misses {exact}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let x: Vec<Rational> = (0..7).map(|_| random_rational(&mut rng, -9, 9, 9)).collect();
        let t = random_rational(&mut rng, 1, 9, 9);
        let r = random_rational(&mut rng, -9, 9, 9);
        let pw = |v: &Rational, k: u32| num_traits::pow(v.clone(), k as usize);
        let y: Vec<Rational> = x.iter().zip(1..).map(|(v, i)| &t * pw(&r, i) * v).collect();
        let yr: Vec<Rational> = x.iter().zip(1..).map(|(v, i)| pw(&r, i) * v).collect();
        let (bx, by, byr) = (BellTable::new(&x, 7), BellTable::new(&y, 7), BellTable::new(&yr, 7));
        let mut c = vec![Rational::zero()];
        c.extend(x.iter().zip(1..).map(|(v, j)| v / fact(j)));
        let ex = exp_series(&HolSeries::univariate(&c, 7)).map_err(|e| e.to_string())?;
        for n in 1..=7u32 {
            for k in 1..=n {
                let expect = pw(&t, k) * pw(&r, n) * bx.get(n, k).unwrap();
                ensure!(by.get(n, k) == Some(&expect), "scaling fails at B({n},{k})");
            }
            let yn = bx.complete(n).unwrap();
            ensure!(
                byr.complete(n).unwrap() == pw(&r, n) * &yn,
                "complete scaling fails at n={n}"
            );
            ensure!(ex.coeff_x(n).re * fact(n) == yn, "exponential link fails at n={n}");
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut negatives = 0;
    for i in 0..20 {
        let alpha = random_rational(&mut rng, 1, 12, 6);
        let m = random_rational(&mut rng, 0, 12, 6);
        let phi = taubnut_potential(&m, TaubNutMode::Slice, 2).map_err(|e| e.to_string())?;
        let d = phi.scale_rational(&alpha);
        let e = b_transform(&d, &rat_int(1)).map_err(|e| e.to_string())?;
        let expect = &alpha * (&alpha - rat_int(2) * &m) / rat_int(2);
        ensure!(
            e.diagonal_coeff(2).re == expect,
            "alpha={alpha} m={m}: {}",
            e.diagonal_coeff(2)
        );
        if m > &alpha / rat_int(2) {
            negatives += 1;
            let mode = if i % 2 == 0 {
                TaubNutMode::Slice
            } else {
                TaubNutMode::Full
            };
            let d = taubnut_potential(&m, mode, 2)
                .map_err(|e| e.to_string())?
                .scale_rational(&alpha);
            let v = analyze(&format!("Taub-NUT alpha={alpha} m={m}"), &d, &rat_int(1), 2)?;
            ensure!(
                matches!(v, Verdict::CertifiedNotResolvable { degree: 2, .. }),
                "alpha={alpha} m={m}: {v:?}"
            );
        }
    }
    ensure!(negatives > 0, "no draw with m > alpha/2");
    Ok(())
}

fn criterion_8() -> Check {
    for n in 1..=3usize {
        for b in [1i64, -1, 2, -3] {
            let d = space_form_diastasis(n, &rat_int(b), 4).map_err(|e| e.to_string())?;
            let out = einstein_estimate(&d, 4).map_err(|e| e.to_string())?;
            let expect = rat_int(2 * b * (n as i64 + 1));
            ensure!(out.lambda() == Some(&expect), "n={n} b={b}: {out:?}");
        }
    }
    let out = einstein_estimate(&cigar_diastasis(4), 4).map_err(|e| e.to_string())?;
    ensure!(matches!(out, EinsteinOutcome::NotEinstein { .. }), "cigar: {out:?}");
    Ok(())
}

/// Wallach membership straight from the definition.
fn in_wallach(r: u32, a: &Rational, eta: &Rational) -> bool {
    let half = a / rat_int(2);
    (0..r).any(|k| *eta == &half * rat_int(k as i64)) || *eta > &half * rat_int(r as i64 - 1)
}

fn criterion_9() -> Check {
    for d in 1..=4u32 {
        let inv = DomainInvariants::ball(d);
        for c in [rat(1, 1000), rat(1, 3), rat_int(1), rat(7, 2)] {
            let ok = bergman_scaling_decision(&inv, &c).map_err(|e| e.to_string())?;
            ensure!(ok, "ball({d}) rejects c={c}");
        }
    }

    let inv = DomainInvariants::new(2, rat_int(2), 4, 4).map_err(|e| e.to_string())?;
    ensure!(
        wallach_membership(&inv, &rat_int(0)) == Membership::Discrete(0),
        "0 is not the discrete point"
    );
    for (num, den) in [(1, 8), (1, 2), (3, 4), (1, 1), (5, 4), (2, 1), (7, 1)] {
        let eta = rat(num, den);
        let c = &eta / rat_int(4);
        let expect = match eta.cmp(&rat_int(1)) {
            std::cmp::Ordering::Less => Membership::Outside,
            std::cmp::Ordering::Equal => Membership::Discrete(1),
            std::cmp::Ordering::Greater => Membership::Continuous,
        };
        let got = wallach_membership(&inv, &eta);
        ensure!(got == expect, "c·γ={eta}: {got:?}");
        let ok = bergman_scaling_decision(&inv, &c).map_err(|e| e.to_string())?;
        ensure!(ok == expect.is_member(), "c={c}: decision {ok}");
    }

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let r = rng.gen_range(1..=4u32);
        let a = random_rational(&mut rng, 1, 8, 2);
        let inv = DomainInvariants::new(r, a.clone(), 4, 4).map_err(|e| e.to_string())?;
        let mu = random_rational(&mut rng, 1, 12, 4);
        let c = random_rational(&mut rng, 1, 12, 4);
        let out = cartan_hartogs_decision(&inv, &mu, &c).map_err(|e| e.to_string())?;
        // every (c+m)μ beyond this bound is in the continuous part
        let mut expect = true;
        for m in 0..200i64 {
            let eta = (&c + rat_int(m)) * &mu;
            if !in_wallach(r, &a, &eta) || eta.is_zero() {
                expect = false;
                break;
            }
        }
        ensure!(out.holds == expect, "r={r} a={a} mu={mu} c={c}: {out:?}");
    }

    let (disk, _) = cartan_bergman_diastasis(Cartan::I(1, 1), 4).map_err(|e| e.to_string())?;
    let base = factored_base_maps(&disk, 4);
    for alpha in [rat_int(1), rat(3, 2)] {
        let map = ch_immersion(&base, &rat_int(1), 2, &alpha, 4).map_err(|e| e.to_string())?;
        let d = get_model(
            &ModelSpec::new("cartan-hartogs")
                .with("type", "1")
                .with("n", "1")
                .with("m", "1")
                .with("mu", "1")
                .with("scale", &alpha.to_string()),
            4,
        )
        .map_err(|e| e.to_string())?;
        let ok = verify_immersion(&map, &d, &rat_int(1), 4).map_err(|e| e.to_string())?;
        ensure!(ok.is_ok(), "Cartan-Hartogs alpha={alpha}: {ok:?}");
        record_map(&format!("Cartan-Hartogs alpha={alpha}"), &map, &d, &rat_int(1), 4);
    }
    Ok(())
}

/// `y(r)` for `(y'/r)^{n−1} y'' = e^y` by RK4 from a small `r0`.
fn rk4_tube(n: i32, r0: f64, r1: f64, steps: usize) -> f64 {
    let f = |r: f64, y: f64, p: f64| (p, y.exp() * (r / p).powi(n - 1));
    let h = (r1 - r0) / steps as f64;
    let (mut r, mut y, mut p) = (r0, r0 * r0 / 2.0, r0);
    for _ in 0..steps {
        let k1 = f(r, y, p);
        let k2 = f(r + h / 2.0, y + h / 2.0 * k1.0, p + h / 2.0 * k1.1);
        let k3 = f(r + h / 2.0, y + h / 2.0 * k2.0, p + h / 2.0 * k2.1);
        let k4 = f(r + h, y + h * k3.0, p + h * k3.1);
        y += h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
        p += h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
        r += h;
    }
    y
}

fn mul_trunc(a: &[Rational], b: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn criterion_10() -> Check {
    let degree = 6;
    let tube = calabi_tube(2, degree).map_err(|e| e.to_string())?;
    let y: Vec<Rational> = (0..=2 * degree).map(|k| tube.y.coeff_x(k).re).collect();
    ensure!(y[2] == rat(1, 2) && y[4] == rat(1, 32), "jet {} r² + {} r⁴", y[2], y[4]);
    ensure!(y.iter().skip(1).step_by(2).all(Zero::is_zero), "odd terms present");

    // residual (y'/r) y'' − e^y in powers of r
    let len = 2 * degree as usize - 1;
    let dy_over_r: Vec<Rational> = (2..y.len()).map(|k| &y[k] * rat_int(k as i64)).collect();
    let d2y: Vec<Rational> = (2..y.len()).map(|k| &y[k] * rat_int((k * (k - 1)) as i64)).collect();
    let lhs = mul_trunc(&dy_over_r, &d2y, len);
    let ey = exp_series(&HolSeries::univariate(&y, 2 * degree)).map_err(|e| e.to_string())?;
    for (k, l) in lhs.iter().enumerate() {
        let rhs = ey.coeff_x(k as u32).re;
        ensure!(*l == rhs, "residual at r^{k}: {}", l - &rhs);
    }

    let r = 0.03;
    let numeric = rk4_tube(2, 1e-4, r, 3000);
    let jet = r * r / 2.0 + r.powi(4) / 32.0;
    ensure!((numeric - jet).abs() < 1e-10, "RK4 {numeric} vs jet {jet}");
    Ok(())
}

/// `x^j` coefficient of `(F/F(0))^{-(c+k)}` by the power recurrence.
fn power_coefficient(f: &HolSeries, c: &Rational, j: u32, k: u32) -> Rational {
    let f0 = f.coeff_x(0).re;
    let g: Vec<Rational> = (0..=j).map(|i| f.coeff_x(i).re / &f0).collect();
    let a = -(c + rat_int(k as i64));
    let mut p = vec![Rational::one()];
    for n in 1..=j as usize {
        let mut s = Rational::zero();
        for i in 1..=n {
            s += (&a * rat_int(i as i64) - rat_int((n - i) as i64)) * &g[i] * &p[n - i];
        }
        p.push(s / rat_int(n as i64));
    }
    p.pop().unwrap()
}

fn criterion_11() -> Check {
    let emitted = EMITTED.with(|e| std::mem::take(&mut *e.borrow_mut()));
    ensure!(
        !emitted.vectors.is_empty() && !emitted.maps.is_empty(),
        "nothing emitted"
    );
    for (label, d, b, w) in &emitted.vectors {
        let Witness::Vector {
            basis,
            components,
            value,
        } = w
        else {
            return Err(format!("{label}: unexpected witness kind"));
        };
        let t = b_transform(d, b).map_err(|e| e.to_string())?;
        let mut q = CScalar::zero();
        for (mp, wp) in basis.iter().zip(components) {
            for (mq, wq) in basis.iter().zip(components) {
                q += &(wp.conj() * wq.clone() * t.coeff_of(mp, mq));
            }
        }
        ensure!(
            q.is_real() && q.re == *value,
            "{label}: recomputed {q}, claimed {value}"
        );
        ensure!(value.is_negative(), "{label}: value {value} is not negative");
        let v = validate_witness(d, b, w).map_err(|e| format!("{label}: {e}"))?;
        ensure!(v == *value, "{label}: validator gives {v}");
    }
    for (label, f, c, w) in &emitted.coefficients {
        let Witness::Coefficient { j, k, value } = w else {
            return Err(format!("{label}: unexpected witness kind"));
        };
        let v = power_coefficient(f, c, *j, *k);
        ensure!(
            v == *value && v.is_negative(),
            "{label}: recomputed {v}, claimed {value}"
        );
    }
    for (label, map, d, b, degree) in &emitted.maps {
        let ok = verify_immersion(map, d, b, *degree).map_err(|e| e.to_string())?;
        ensure!(ok.is_ok(), "{label}: {ok:?}");
        let mut pull = BiSeries::zero(map.arity, *degree);
        for c in &map.components {
            let sq = BiSeries::hol_times_conj(&c.series, &c.series).map_err(|e| e.to_string())?;
            pull = &pull + &sq.scale_rational(&(&c.radicand * rat_int(c.sign as i64)));
        }
        let t = b_transform(d, b).map_err(|e| e.to_string())?.truncate(*degree);
        ensure!(pull == t, "{label}: pullback differs");
    }
    println!(
        "  swept {} vector witnesses, {} coefficient witnesses, {} immersion maps",
        emitted.vectors.len(),
        emitted.coefficients.len(),
        emitted.maps.len()
    );
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("space-form classification", criterion_1),
        ("hyperbolic and flat embeddings", criterion_2),
        ("Omega4[3] non-resolvability", criterion_3),
        ("circular domain Phi_B", criterion_4),
        ("Hartogs suite", criterion_5),
        ("cigar", criterion_6),
        ("Taub-NUT", criterion_7),
        ("Einstein constants", criterion_8),
        ("Wallach decisions", criterion_9),
        ("Calabi tube", criterion_10),
        ("certificate soundness sweep", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {e}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
