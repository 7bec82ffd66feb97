//! Acceptance run. Each criterion prints one PASS or FAIL line with the
//! measured values; the process exits non-zero if any criterion fails.
//!
//! Expected values come from oracles written here, independently of the
//! library code paths they check.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use hypergeom::asymmetry::{asymmetric_primes, class_d_quadratic_check, find_asymmetric_prime};
use hypergeom::hyperseq::{height_profile, make_sequence, regularize};
use hypergeom::membership::{decide, MembershipConfig, Outcome};
use hypergeom::numtheory::{int, rat, squarefree_part_int, weil_height_exact, Rational};
use hypergeom::padic::{count_roots_mod_p, is_hensel_prime, valuation_at_prime_power};
use hypergeom::parse::parse_poly;
use hypergeom::quadratic::{equidistribution_sample, exists_condition_prime, find_condition_prime, profile_of};
use hypergeom::{RatPoly, Valuation};
use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};
use rand::Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Check);

fn poly(s: &str) -> RatPoly {
    parse_poly(s).expect("literal polynomial")
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut b128 = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b128 % m as u128;
        }
        b128 = b128 * b128 % m as u128;
        e >>= 1;
    }
    b = acc as u64;
    b
}

/// Euler's criterion.
fn is_qr(a: u64, p: u64) -> bool {
    pow_mod(a, (p - 1) / 2, p) == 1
}

fn primes_upto(n: u64) -> Vec<u64> {
    (2..=n)
        .filter(|&k| (2..).take_while(|d| d * d <= k).all(|d| k % d != 0))
        .collect()
}

fn nu_i128(mut x: i128, p: i128) -> i64 {
    assert!(x != 0);
    let mut v = 0;
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    v
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn root_count_regression() -> Check {
    let f = poly("(x^4-10*x^2+1)*x^2");
    let g = poly("(x^2-2)*(x^2-3)*(x^2-6)");
    let fg = &f * &g;
    let (mut checked, mut hensel) = (0, 0);
    for p in primes_upto(10_000).into_iter().filter(|&p| p >= 5) {
        let (a, b) = (
            count_roots_mod_p(&f, p).map_err(|e| e.to_string())?,
            count_roots_mod_p(&g, p).map_err(|e| e.to_string())?,
        );
        let want = if is_qr(2, p) && is_qr(3, p) && is_qr(6, p) {
            6
        } else {
            2
        };
        ensure(a == b && a == want, || {
            format!("p = {p}: m_f = {a}, m_g = {b}, expected {want}")
        })?;
        checked += 1;
        hensel += is_hensel_prime(&fg, p) as usize;
    }
    Ok(format!("{checked} primes agree ({hensel} of them Hensel for f*g)"))
}

fn factorial_valuations() -> Check {
    let s = make_sequence(RatPoly::one(), RatPoly::x(), int(1)).unwrap();
    let series = s.valuation_series(2, 100_000);
    for (n, v) in series.iter().enumerate() {
        let want = n as i64 - (n as u64).count_ones() as i64;
        ensure(*v == Valuation::Finite(want), || format!("n = {n}: {v} vs {want}"))?;
    }
    let at = |n: usize| series[n].finite().unwrap() as f64;
    let slope = (at(100_000) - at(50_000)) / 50_000.0;
    ensure((slope - 1.0).abs() <= 1e-3, || format!("slope {slope}"))?;
    Ok(format!("nu_2 matches n - s_2(n) for n <= 100000; slope {slope:.6}"))
}

fn envelope_soundness() -> Check {
    let mut certs = 0;
    for seq in common::full_corpus() {
        for cert in asymmetric_primes(&seq, 2, 200, 6, |_| true) {
            let series = seq.valuation_series(cert.p, 10_000);
            for n in 1..=10_000u64 {
                let actual = series[n as usize].finite().ok_or("zero term")?.abs() as f64;
                let l = cert.envelope(n);
                ensure(l <= actual, || format!("{seq} p = {}: L({n}) = {l} > {actual}", cert.p))?;
            }
            certs += 1;
        }
    }
    ensure(certs > 0, || "no certificates in the corpus".into())?;
    Ok(format!("{certs} certificates sound on 1..=10000"))
}

fn membership_end_to_end() -> Check {
    let cfg = MembershipConfig::default();
    let fact = make_sequence(RatPoly::one(), RatPoly::x(), int(1)).unwrap();
    let cases = [
        (int(120), Outcome::Yes(5)),
        (int(100), Outcome::No),
        (int(0), Outcome::No),
    ];
    for (t, want) in cases {
        let got = decide(&fact, &t, &cfg).outcome;
        ensure(got == want, || {
            format!("factorial, t = {t}: {got:?}, expected {want:?}")
        })?;
    }
    let mut r = common::rng(4);
    let mut planted = 0;
    for seq in common::full_corpus() {
        for _ in 0..3 {
            let n = r.gen_range(0..=500u64);
            let t = seq.term(n);
            let v = decide(&seq, &t, &cfg);
            let w = v
                .witness()
                .ok_or_else(|| format!("{seq}, planted n = {n}: {:?}", v.outcome))?;
            ensure(seq.term(w) == t, || {
                format!("{seq}: witness {w} for planted {n} has a different term")
            })?;
            planted += 1;
        }
    }
    Ok(format!(
        "factorial verdicts correct; {planted} planted witnesses recovered"
    ))
}

fn regularization_identity() -> Check {
    let seq = make_sequence(poly("x+2"), poly("x+1"), int(1)).unwrap();
    let reg = regularize(&seq).map_err(|e| e.to_string())?;
    for n in 0..=100u64 {
        let u = seq.term(n);
        let expected = rat(2, n as i64 + 2);
        ensure(u == expected, || format!("u_{n} = {u}, expected {expected}"))?;
        let rhs = reg.correction.eval(n) * reg.regular_seq.term(n);
        ensure(u == rhs, || format!("n = {n}: q(n) v_n = {rhs} but u_n = {u}"))?;
    }
    Ok(format!("q(n) = {}; identity exact for n <= 100", reg.correction))
}

fn height_laws() -> Check {
    let geo = make_sequence(RatPoly::one(), RatPoly::constant(int(2)), int(1)).unwrap();
    let mut c = geo.cursor();
    for n in 0..=2000u32 {
        let want = BigInt::from(2).pow(n);
        ensure(c.height_exact() == want, || format!("H(u_{n}) != 2^{n}"))?;
        c.advance();
    }
    let mut r = common::rng(6);
    let mut sample = || -> Rational {
        let mut a = 0i64;
        while a == 0 {
            a = r.gen_range(-10i64.pow(12)..=10i64.pow(12));
        }
        let b = r.gen_range(1..=10i64.pow(12));
        rat(a, b)
    };
    for _ in 0..1000 {
        let (x, y) = (sample(), sample());
        let hx = weil_height_exact(&x);
        ensure(weil_height_exact(&(&x * &y)) <= &hx * weil_height_exact(&y), || {
            format!("subadditivity at {x}, {y}")
        })?;
        for m in [-3i32, -1, 2, 5] {
            let xm = Pow::pow(&x, m);
            ensure(weil_height_exact(&xm) == Pow::pow(&hx, m.unsigned_abs()), || {
                format!("power law at {x}^{m}")
            })?;
        }
        // prod_p p^|nu_p(x)| is |a| * b for x = a/b in lowest terms
        let support = x.numer().abs() * x.denom();
        ensure(&hx * &hx >= support, || format!("valuation bound at {x}"))?;
    }
    Ok("H(2^n) = 2^n for n <= 2000; three laws hold on 1000 random rationals".into())
}

fn class_c_growth() -> Check {
    let seq = make_sequence(poly("x^2-2*x-1"), poly("x^2-3"), int(1)).unwrap();
    let prof = height_profile(&seq, 5000, 1, None).map_err(|e| e.to_string())?;
    let ratios: Vec<(u64, f64)> = prof
        .rows
        .iter()
        .filter(|r| r.n >= 1000)
        .map(|r| (r.n, r.height / r.n as f64))
        .collect();
    let floor = ratios.iter().map(|r| r.1).fold(f64::INFINITY, f64::min);
    ensure(floor >= 0.01, || format!("h(u_n)/n dips to {floor}"))?;
    let half: Vec<f64> = ratios.iter().filter(|r| r.0 >= 3000).map(|r| r.1).collect();
    let (start, end) = (half[0], half.iter().copied().fold(f64::INFINITY, f64::min));
    ensure(end >= 0.9 * start, || {
        format!("running minimum fell from {start} to {end}")
    })?;
    Ok(format!(
        "min h(u_n)/n on [1000, 5000] = {floor:.4}; running minimum on [3000, 5000] {start:.4} -> {end:.4}"
    ))
}

fn condition_primes() -> Check {
    let profile = profile_of(&[2, 3]).map_err(|e| e.to_string())?;
    let two = BigInt::from(2);
    let got = find_condition_prime(&profile, &two, 1000).map_err(|e| e.to_string())?;
    // brute-force scan: smallest odd prime with (2/p) = 1 and (3/p) = -1
    let oracle = primes_upto(1000)
        .into_iter()
        .find(|&p| p > 3 && is_qr(2, p) && !is_qr(3, p));
    let mut r = common::rng(8);
    let squarefree: Vec<i64> = (2..200i64)
        .filter(|&d| squarefree_part_int(&BigInt::from(d)) == BigInt::from(d))
        .collect();
    for _ in 0..100 {
        let d1 = squarefree[r.gen_range(0..squarefree.len())];
        let mut d2 = d1;
        while d2 == d1 {
            d2 = squarefree[r.gen_range(0..squarefree.len())];
        }
        let d3 = squarefree_part_int(&BigInt::from(d1 * d2));
        let prof = profile_of(&[d1, d2, i64::try_from(&d3).unwrap()]).map_err(|e| e.to_string())?;
        let e = exists_condition_prime(&prof, &BigInt::from(d1)).map_err(|e| e.to_string())?;
        ensure(e.is_some(), || format!("no solution for ({d1}, {d2}, {d3})"))?;
    }
    ensure(got == Some(17), || {
        format!("find_condition_prime = {got:?}, expected 17 (scan oracle: {oracle:?})")
    })?;
    Ok("find_condition_prime = 17; 100 random triples solvable".into())
}

fn equidistribution() -> Check {
    let (d, zero, one) = (BigInt::from(2), Rational::zero(), Rational::one());
    let big = equidistribution_sample(&d, 1, 0, &zero, &one, 1_000_000, 10).map_err(|e| e.to_string())?;
    let small = equidistribution_sample(&d, 1, 0, &zero, &one, 10_000, 10).map_err(|e| e.to_string())?;
    for (l, _, freq) in &big.bins {
        ensure((freq - 0.1).abs() <= 0.02, || format!("bin at {l}: frequency {freq}"))?;
    }
    ensure(big.star_discrepancy < small.star_discrepancy, || {
        format!(
            "discrepancy {} at 10^6 vs {} at 10^4",
            big.star_discrepancy, small.star_discrepancy
        )
    })?;
    let (lo, hi) = big
        .bins
        .iter()
        .fold((1.0f64, 0.0f64), |(lo, hi), b| (lo.min(b.2), hi.max(b.2)));
    Ok(format!(
        "{} primes, bins in [{lo:.4}, {hi:.4}], D* {:.5} (10^4: {:.5})",
        big.primes_used, big.star_discrepancy, small.star_discrepancy
    ))
}

fn digit_identity() -> Check {
    let seq = make_sequence(poly("x^2-2"), poly("x^2-3"), int(1)).unwrap();
    let mut lines = Vec::new();
    for s in 1..=3u32 {
        let out = valuation_at_prime_power(&seq, 23, s).map_err(|e| e.to_string())?;
        // oracle: sum of nu(m^2 - 3) - nu(m^2 - 2) with machine integers
        let n = 23i128.pow(s);
        let direct: i64 = (1..=n).map(|m| nu_i128(m * m - 3, 23) - nu_i128(m * m - 2, 23)).sum();
        ensure(out.direct == direct, || {
            format!("s = {s}: library direct {} vs oracle {direct}", out.direct)
        })?;
        // delta runs belong to the roots of f, gamma runs to the roots of g
        let sum_delta: i64 = out.f_runs.iter().map(|&k| k as i64).sum();
        let sum_gamma: i64 = out.g_runs.iter().map(|&k| k as i64).sum();
        let formula = sum_delta - sum_gamma;
        ensure(direct == formula, || {
            format!(
                "s = {s}: direct {direct}, sum(delta) - sum(gamma) = {formula} (runs f {:?}, g {:?}; the opposite sign gives {})",
                out.f_runs,
                out.g_runs,
                -formula
            )
        })?;
        lines.push(format!("s={s}: {direct}"));
    }
    Ok(lines.join(", "))
}

fn asymmetric_prime_search() -> Check {
    let seq = make_sequence(poly("x^2-2"), poly("x^2-3"), int(1)).unwrap();
    let scan = find_asymmetric_prime(&seq, 2, 1000).map_err(|e| e.to_string())?;
    let cert = scan.certificate.ok_or("no certificate")?;
    // Legendre tables: count square roots by enumeration
    let roots = |a: u64, p: u64| (0..p).filter(|x| x * x % p == a % p).count();
    let oracle = primes_upto(1000)
        .into_iter()
        .filter(|&p| p > 3)
        .find(|&p| roots(2, p) != roots(3, p))
        .unwrap();
    ensure(cert.p == oracle && cert.p == 7, || {
        format!("certificate prime {}, oracle {oracle}", cert.p)
    })?;
    let want = (roots(2, 7), roots(3, 7));
    ensure((cert.m_f, cert.m_g) == want && want == (2, 0), || {
        format!("(m_f, m_g) = ({}, {})", cert.m_f, cert.m_g)
    })?;
    let d = class_d_quadratic_check(&seq).map_err(|e| e.to_string())?;
    ensure(d, || "class_d_quadratic_check returned false".into())?;
    Ok(format!(
        "p = 7, (m_f, m_g) = ({}, {}), class D check true",
        cert.m_f, cert.m_g
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("root counts agree on the sextic pair", 10, root_count_regression),
        ("factorial valuations and slope", 5, factorial_valuations),
        ("envelope soundness over the corpus", 60, envelope_soundness),
        ("membership end to end", 30, membership_end_to_end),
        ("regularization identity", 1, regularization_identity),
        ("height laws", 5, height_laws),
        ("class C growth", 120, class_c_growth),
        ("condition-prime machinery", 10, condition_primes),
        ("equidistribution", 60, equidistribution),
        ("digit identity at p = 23", 60, digit_identity),
        ("asymmetric-prime search", 1, asymmetric_prime_search),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let res = res.and_then(|detail| {
            if elapsed > Duration::from_secs(*budget) {
                Err(format!("{detail}; over the {budget} s budget"))
            } else {
                Ok(detail)
            }
        });
        let (tag, detail) = match res {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} criterion {:>2} {name} [{:.2} s]: {detail}",
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
