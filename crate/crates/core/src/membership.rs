//! Deciding whether a target value occurs in a sequence.
//!
//! A `No` is only ever returned with a reason that is a proof: either the
//! sequence provably never vanishes (target zero), or it is eventually zero
//! and the finite nonzero prefix was scanned, or an asymmetry certificate
//! bounds `|nu_p(u_n)|` away from `|nu_p(t)|` beyond some `n0` and every
//! index below `n0` was checked.
//!
//! The scan below `n0` never builds big rationals for rejected indices. Each
//! index is filtered by `nu_p(u_n)`, then by a fingerprint of `u_n` modulo a
//! 61-bit prime (its valuation there and the unit part), and only fingerprint
//! matches are confirmed with exact arithmetic.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::asymmetry::{asymmetric_primes, certificate_at, AsymmetryCertificate};
use crate::error::{Error, Result};
use crate::hyperseq::{make_sequence, HypergeomSeq};
use crate::numtheory::{int_valuation, inv_mod, mod_u64, mul_mod, padic_valuation, Rational};
use crate::poly::RatPoly;

/// Fingerprint modulus, the Mersenne prime `2^61 - 1`.
const FINGERPRINT_PRIME: u64 = (1 << 61) - 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipConfig {
    /// Largest prime examined when looking for asymmetric primes.
    pub prime_cap: u64,
    /// Largest number of indices the exhaustive scan may visit.
    pub max_terms: u64,
    /// How many asymmetric primes to compare when choosing the one with the
    /// smallest search bound.
    pub candidate_primes: usize,
    /// Use this prime instead of searching.
    pub forced_prime: Option<u64>,
    /// Without a certificate, still look for a witness among this many
    /// initial terms before answering `Unsupported`.
    pub fallback_terms: u64,
}

impl Default for MembershipConfig {
    fn default() -> Self {
        MembershipConfig {
            prime_cap: 100_000,
            max_terms: 10_000_000,
            candidate_primes: 16,
            forced_prime: None,
            fallback_terms: 2_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Yes(u64),
    No,
    Unsupported(String),
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Outcome::Yes(n) => write!(f, "Yes({n})"),
            Outcome::No => f.write_str("No"),
            Outcome::Unsupported(r) => write!(f, "Unsupported({r})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipVerdict {
    pub outcome: Outcome,
    pub certificate: Option<AsymmetryCertificate>,
    /// Every index at or beyond this one is excluded by the certificate.
    pub bound_n0: Option<u64>,
    pub terms_checked: u64,
    /// One-line justification.
    pub basis: String,
    pub elapsed: Duration,
}

impl MembershipVerdict {
    fn new(outcome: Outcome, basis: impl Into<String>) -> Self {
        MembershipVerdict {
            outcome,
            certificate: None,
            bound_n0: None,
            terms_checked: 0,
            basis: basis.into(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self.outcome, Outcome::Yes(_))
    }

    pub fn witness(&self) -> Option<u64> {
        match self.outcome {
            Outcome::Yes(n) => Some(n),
            _ => None,
        }
    }

    /// Structured text record, one `key = value` per line.
    pub fn to_text(&self) -> String {
        let mut out = String::from("membership-verdict v1\n");
        let (kind, detail) = match &self.outcome {
            Outcome::Yes(n) => ("yes", format!("witness = {n}\n")),
            Outcome::No => ("no", String::new()),
            Outcome::Unsupported(r) => ("unsupported", format!("reason = {r}\n")),
        };
        out.push_str(&format!("outcome = {kind}\n{detail}"));
        if let Some(n0) = self.bound_n0 {
            out.push_str(&format!("n0 = {n0}\n"));
        }
        if let Some(c) = &self.certificate {
            out.push_str(&format!(
                "p = {}\nm_f = {}\nm_g = {}\nslope = {}\n",
                c.p, c.m_f, c.m_g, c.slope
            ));
        }
        out.push_str(&format!(
            "terms_checked = {}\nbasis = {}\nelapsed_ms = {:.3}\n",
            self.terms_checked,
            self.basis,
            self.elapsed.as_secs_f64() * 1e3
        ));
        out
    }

    pub const CSV_HEADER: &'static str = "outcome,witness,n0,p,m_f,m_g,slope,terms_checked,elapsed_ms";

    pub fn to_csv_row(&self) -> String {
        let (kind, witness) = match &self.outcome {
            Outcome::Yes(n) => ("yes", n.to_string()),
            Outcome::No => ("no", String::new()),
            Outcome::Unsupported(_) => ("unsupported", String::new()),
        };
        let opt = |x: Option<String>| x.unwrap_or_default();
        let c = self.certificate.as_ref();
        format!(
            "{kind},{witness},{},{},{},{},{},{},{:.3}",
            opt(self.bound_n0.map(|n| n.to_string())),
            opt(c.map(|c| c.p.to_string())),
            opt(c.map(|c| c.m_f.to_string())),
            opt(c.map(|c| c.m_g.to_string())),
            opt(c.map(|c| c.slope.to_string())),
            self.terms_checked,
            self.elapsed.as_secs_f64() * 1e3
        )
    }
}

/// A nonzero rational modulo a prime `q`: `q^v * unit`, `unit` a unit mod `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fingerprint {
    v: i64,
    unit: u64,
}

fn split_int(x: &BigInt, q: u64) -> (i64, u64) {
    let v = int_valuation(x, q);
    let unit = if v == 0 {
        mod_u64(x, q)
    } else {
        mod_u64(&(x / BigInt::from(q).pow(v as u32)), q)
    };
    (v as i64, unit)
}

fn fingerprint_of(r: &Rational, q: u64) -> Fingerprint {
    let (vn, un) = split_int(r.numer(), q);
    let (vd, ud) = split_int(r.denom(), q);
    Fingerprint {
        v: vn - vd,
        unit: mul_mod(un, inv_mod(ud, q).unwrap(), q),
    }
}

/// Integer polynomial with coefficients also kept modulo a fixed modulus.
struct ModEval {
    exact: Vec<BigInt>,
    reduced: Vec<u64>,
    modulus: u64,
}

impl ModEval {
    fn new(coeffs: &[BigInt], extra: &BigInt, modulus: u64) -> Self {
        let exact: Vec<BigInt> = coeffs.iter().map(|c| c * extra).collect();
        let reduced = exact.iter().map(|c| mod_u64(c, modulus)).collect();
        ModEval {
            exact,
            reduced,
            modulus,
        }
    }

    fn residue(&self, m: u64) -> u64 {
        let x = m % self.modulus;
        self.reduced
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.modulus) + c) % self.modulus)
    }

    fn exact(&self, m: u64) -> BigInt {
        crate::poly::eval_int_poly(&self.exact, &BigInt::from(m))
    }
}

/// Largest power of `p` not exceeding `2^62`.
fn big_power(p: u64) -> u64 {
    let mut m = p;
    while let Some(next) = m.checked_mul(p).filter(|&x| x <= 1 << 62) {
        m = next;
    }
    m
}

/// `nu_p` of an integer polynomial value, using a residue modulo `p^e` and
/// falling back to exact evaluation when the residue is zero.
fn value_valuation(poly: &ModEval, m: u64, p: u64) -> Option<i64> {
    let r = poly.residue(m);
    if r != 0 {
        let mut v = 0;
        let mut r = r;
        while r.is_multiple_of(p) {
            r /= p;
            v += 1;
        }
        return Some(v);
    }
    let x = poly.exact(m);
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(&x, p) as i64)
}

/// Fingerprint of an integer polynomial value modulo the fingerprint prime.
fn value_fingerprint(poly: &ModEval, m: u64) -> Option<Fingerprint> {
    let r = poly.residue(m);
    if r != 0 {
        return Some(Fingerprint { v: 0, unit: r });
    }
    let x = poly.exact(m);
    if x.is_zero() {
        return None;
    }
    let (v, unit) = split_int(&x, FINGERPRINT_PRIME);
    Some(Fingerprint { v, unit })
}

enum ScanResult {
    Found(u64),
    Absent,
}

/// Checks `u_0, ..., u_{end-1}` against a nonzero `t`.
fn scan_prefix(seq: &HypergeomSeq, t: &Rational, end: u64, filter_prime: Option<u64>) -> (ScanResult, u64) {
    let q = FINGERPRINT_PRIME;
    let (sf, fi, sg, gi) = seq.int_forms();
    // g(m)/f(m) = (G(m) sf) / (F(m) sg)
    let num_q = ModEval::new(gi, sf, q);
    let den_q = ModEval::new(fi, sg, q);
    let target_fp = fingerprint_of(t, q);

    let filter = filter_prime.map(|p| {
        let pe = big_power(p);
        (
            p,
            ModEval::new(gi, sf, pe),
            ModEval::new(fi, sg, pe),
            padic_valuation(t, p).finite().expect("t is nonzero"),
        )
    });
    let mut nu_p = filter_prime.map(|p| padic_valuation(seq.u0(), p).finite().unwrap_or(i64::MAX));

    let mut fp = if seq.u0().is_zero() {
        None
    } else {
        Some(fingerprint_of(seq.u0(), q))
    };
    let mut checked = 0;
    for n in 0..end {
        if n > 0 {
            let Some(cur) = fp else {
                break;
            };
            let Some(gn) = value_fingerprint(&num_q, n) else {
                // u_n and every later term vanish
                break;
            };
            let fd = value_fingerprint(&den_q, n).expect("f has no roots at positive integers");
            fp = Some(Fingerprint {
                v: cur.v + gn.v - fd.v,
                unit: mul_mod(mul_mod(cur.unit, gn.unit, q), inv_mod(fd.unit, q).unwrap(), q),
            });
            if let (Some(v), Some((p, num_p, den_p, _))) = (nu_p.as_mut(), filter.as_ref()) {
                let a = value_valuation(num_p, n, *p).expect("nonzero");
                let b = value_valuation(den_p, n, *p).expect("nonzero");
                *v += a - b;
            }
        }
        checked += 1;
        let Some(cur) = fp else {
            break;
        };
        if let (Some(v), Some(f)) = (nu_p, filter.as_ref()) {
            if v != f.3 {
                continue;
            }
        }
        if cur == target_fp && seq.term(n) == *t {
            return (ScanResult::Found(n), checked);
        }
    }
    (ScanResult::Absent, checked)
}

/// Decides whether `u_n = t` for some `n >= 0`.
pub fn decide(seq: &HypergeomSeq, t: &Rational, config: &MembershipConfig) -> MembershipVerdict {
    let start = Instant::now();
    let mut v = decide_inner(seq, t, config);
    v.elapsed = start.elapsed();
    if let Outcome::Yes(n) = v.outcome {
        assert_eq!(seq.term(n), *t, "witness failed exact re-check");
    }
    v
}

fn decide_inner(seq: &HypergeomSeq, t: &Rational, config: &MembershipConfig) -> MembershipVerdict {
    if t.is_zero() {
        return match seq.first_zero_index() {
            Some(n) => MembershipVerdict::new(Outcome::Yes(n), "the sequence vanishes from this index on"),
            None => MembershipVerdict::new(
                Outcome::No,
                "u0 != 0 and g has no positive integer root, so no term vanishes",
            ),
        };
    }
    if let Some(n_star) = seq.first_zero_index() {
        // eventually zero: only u_0 .. u_{n*-1} can equal t
        if n_star > config.max_terms {
            return MembershipVerdict::new(
                Outcome::Unsupported(format!("nonzero prefix of length {n_star} exceeds max_terms")),
                "degenerate sequence",
            );
        }
        let (res, checked) = scan_prefix(seq, t, n_star, None);
        let mut v = match res {
            ScanResult::Found(n) => MembershipVerdict::new(Outcome::Yes(n), "found in the nonzero prefix"),
            ScanResult::Absent => MembershipVerdict::new(
                Outcome::No,
                format!("u_n = 0 for n >= {n_star} and the prefix was scanned"),
            ),
        };
        v.terms_checked = checked;
        return v;
    }

    let coprime_to_t = |p: u64| mod_u64(t.numer(), p) != 0 && mod_u64(t.denom(), p) != 0;
    let candidates = match config.forced_prime {
        Some(p) => {
            if !coprime_to_t(p) {
                return MembershipVerdict::new(
                    Outcome::Unsupported(format!("forced prime {p} divides the target")),
                    "configuration",
                );
            }
            match certificate_at(seq, p) {
                Ok(c) => vec![c],
                Err(e) => {
                    return MembershipVerdict::new(
                        Outcome::Unsupported(format!("forced prime {p}: {e}")),
                        "configuration",
                    )
                }
            }
        }
        None => asymmetric_primes(seq, 2, config.prime_cap, config.candidate_primes, coprime_to_t),
    };
    if candidates.is_empty() {
        // a witness is still a proof of Yes
        let (res, checked) = scan_prefix(seq, t, config.fallback_terms.min(config.max_terms), None);
        let mut v = match res {
            ScanResult::Found(n) => MembershipVerdict::new(Outcome::Yes(n), "exact match without certificate"),
            ScanResult::Absent => MembershipVerdict::new(
                Outcome::Unsupported(format!(
                    "no asymmetric Hensel prime coprime to u0 and t up to {}; no witness among the first {checked} terms",
                    config.prime_cap
                )),
                "no certificate",
            ),
        };
        v.terms_checked = checked;
        return v;
    }
    // the certificate with the smallest search bound wins
    let (cert, n0) = candidates
        .into_iter()
        .map(|c| {
            let tv = padic_valuation(t, c.p).finite().expect("t is nonzero").abs();
            let n0 = c.threshold_index(tv as f64 + 1e-6);
            (c, n0)
        })
        .min_by_key(|(c, n0)| (*n0, c.p))
        .unwrap();
    let mut v = if n0 > config.max_terms {
        MembershipVerdict::new(
            Outcome::Unsupported(format!("search bound {n0} exceeds max_terms {}", config.max_terms)),
            "bound too large",
        )
    } else {
        let (res, checked) = scan_prefix(seq, t, n0, Some(cert.p));
        let mut v = match res {
            ScanResult::Found(n) => MembershipVerdict::new(Outcome::Yes(n), "exact match"),
            ScanResult::Absent => MembershipVerdict::new(
                Outcome::No,
                format!(
                    "|nu_{}(u_n)| > |nu_{}(t)| for n >= {n0}; all smaller indices checked",
                    cert.p, cert.p
                ),
            ),
        };
        v.terms_checked = checked;
        v
    };
    v.certificate = Some(cert);
    v.bound_n0 = Some(n0);
    v
}

/// Like [`decide`], but starting from raw polynomials; construction errors
/// become `Unsupported` verdicts.
pub fn decide_raw(f: RatPoly, g: RatPoly, u0: Rational, t: &Rational, config: &MembershipConfig) -> MembershipVerdict {
    match make_sequence(f, g, u0) {
        Ok(seq) => decide(&seq, t, config),
        Err(e) => MembershipVerdict::new(Outcome::Unsupported(format!("{}: {e}", e.name())), "invalid sequence"),
    }
}

/// Independent verdicts, computed in parallel, in input order.
pub fn decide_batch(items: &[(HypergeomSeq, Rational)], config: &MembershipConfig) -> Vec<MembershipVerdict> {
    items.par_iter().map(|(s, t)| decide(s, t, config)).collect()
}

/// Parses a verdict record's outcome line; used by round-trip tests and tools.
pub fn parse_outcome(text: &str) -> Result<Outcome> {
    let mut kind = None;
    let mut witness = None;
    let mut reason = None;
    for line in text.lines() {
        if let Some((k, v)) = line.split_once('=') {
            match k.trim() {
                "outcome" => kind = Some(v.trim().to_string()),
                "witness" => witness = v.trim().parse::<u64>().ok(),
                "reason" => reason = Some(v.trim().to_string()),
                _ => {}
            }
        }
    }
    match kind.as_deref() {
        Some("yes") => witness.map(Outcome::Yes).ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "yes without witness".into(),
        }),
        Some("no") => Ok(Outcome::No),
        Some("unsupported") => Ok(Outcome::Unsupported(reason.unwrap_or_default())),
        _ => Err(Error::Parse {
            pos: 0,
            msg: "missing outcome".into(),
        }),
    }
}
