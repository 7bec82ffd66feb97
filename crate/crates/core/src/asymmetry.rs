//! p-symmetry, asymmetric-prime search, the certified divergence envelope,
//! slope fits and the quadratic field-matching criterion.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::hyperseq::HypergeomSeq;
use crate::numtheory::{mod_u64, sieve, squarefree_part, Rational, Valuation};
use crate::padic::{count_roots_mod_p, is_hensel_prime, reduce_mod_p};
use crate::poly::{discriminant_quadratic, RatPoly};

/// Root counts `(m_f, m_g)` of `f` and `g` modulo `p`, requiring `p` to be a
/// Hensel prime for `f * g`.
pub fn root_counts(seq: &HypergeomSeq, p: u64) -> Result<(usize, usize)> {
    let fg = seq.f() * seq.g();
    if !is_hensel_prime(&fg, p) {
        return Err(Error::NotHenselPrime(p));
    }
    Ok((count_roots_mod_p(seq.f(), p)?, count_roots_mod_p(seq.g(), p)?))
}

/// True iff `f` and `g` have the same number of roots modulo `p`.
pub fn is_p_symmetric(seq: &HypergeomSeq, p: u64) -> Result<bool> {
    let (m_f, m_g) = root_counts(seq, p)?;
    Ok(m_f == m_g)
}

/// What happened at each prime of a scan.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    pub p_min: u64,
    pub p_max: u64,
    pub primes_examined: usize,
    /// Primes skipped because they are not Hensel primes for `f * g`.
    pub non_hensel: usize,
    /// Non-Hensel primes where the counts (with multiplicity) still differ;
    /// these carry no certificate.
    pub asymmetric_non_hensel: usize,
    /// Hensel primes skipped because they divide `u_0`.
    pub u0_skipped: usize,
    pub symmetric: usize,
    pub asymmetric: usize,
}

impl ScanSummary {
    fn merge(&mut self, other: &ScanSummary) {
        self.primes_examined += other.primes_examined;
        self.non_hensel += other.non_hensel;
        self.asymmetric_non_hensel += other.asymmetric_non_hensel;
        self.u0_skipped += other.u0_skipped;
        self.symmetric += other.symmetric;
        self.asymmetric += other.asymmetric;
    }
}

impl fmt::Display for ScanSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "primes {}..={}: examined {}, non-Hensel {} ({} with unequal counts), u0-divisors {}, symmetric {}, asymmetric {}",
            self.p_min,
            self.p_max,
            self.primes_examined,
            self.non_hensel,
            self.asymmetric_non_hensel,
            self.u0_skipped,
            self.symmetric,
            self.asymmetric
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PrimeStatus {
    NonHensel { unequal: bool },
    DividesU0,
    Counts(usize, usize),
}

fn classify_prime(f: &RatPoly, g: &RatPoly, fg: &RatPoly, u0: Option<&Rational>, p: u64) -> PrimeStatus {
    if !is_hensel_prime(fg, p) {
        let unequal = match (count_roots_mod_p(f, p), count_roots_mod_p(g, p)) {
            (Ok(a), Ok(b)) => a != b,
            _ => false,
        };
        return PrimeStatus::NonHensel { unequal };
    }
    if let Some(u0) = u0 {
        if mod_u64(u0.numer(), p) == 0 || mod_u64(u0.denom(), p) == 0 {
            return PrimeStatus::DividesU0;
        }
    }
    let m_f = count_roots_mod_p(f, p).expect("Hensel prime reduces");
    let m_g = count_roots_mod_p(g, p).expect("Hensel prime reduces");
    PrimeStatus::Counts(m_f, m_g)
}

/// Per-prime root counts for an arbitrary pair, without sequence validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairScan {
    pub summary: ScanSummary,
    /// `(p, m_f, m_g)` at every Hensel prime in the range.
    pub counts: Vec<(u64, usize, usize)>,
}

impl PairScan {
    /// Smallest Hensel prime with `m_f != m_g`.
    pub fn first_asymmetric(&self) -> Option<(u64, usize, usize)> {
        self.counts.iter().copied().find(|&(_, a, b)| a != b)
    }
}

/// Counts roots of `f` and `g` at every prime in `[p_min, p_max]`; works on
/// pairs that do not define a valid sequence.
pub fn scan_pair(f: &RatPoly, g: &RatPoly, p_min: u64, p_max: u64) -> Result<PairScan> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fg = f * g;
    let primes: Vec<u64> = sieve(p_max).into_iter().filter(|&p| p >= p_min).collect();
    let statuses: Vec<(u64, PrimeStatus)> = primes
        .par_iter()
        .map(|&p| (p, classify_prime(f, g, &fg, None, p)))
        .collect();
    let mut summary = ScanSummary {
        p_min,
        p_max,
        ..Default::default()
    };
    let mut counts = Vec::new();
    for (p, st) in statuses {
        tally(&mut summary, st);
        if let PrimeStatus::Counts(a, b) = st {
            counts.push((p, a, b));
        }
    }
    Ok(PairScan { summary, counts })
}

fn tally(summary: &mut ScanSummary, st: PrimeStatus) {
    summary.primes_examined += 1;
    match st {
        PrimeStatus::NonHensel { unequal } => {
            summary.non_hensel += 1;
            summary.asymmetric_non_hensel += unequal as usize;
        }
        PrimeStatus::DividesU0 => summary.u0_skipped += 1,
        PrimeStatus::Counts(a, b) if a == b => summary.symmetric += 1,
        PrimeStatus::Counts(..) => summary.asymmetric += 1,
    }
}

/// Evidence that `nu_p(u_n)` diverges linearly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetryCertificate {
    pub p: u64,
    pub m_f: usize,
    pub m_g: usize,
    /// `(m_g - m_f) / (p - 1)`.
    pub slope: Rational,
    /// `|m_g - m_f| / (p - 1)`, the linear coefficient of `L(n)`.
    pub a: Rational,
    /// Integer with `|F(m)|, |G(m)| <= B n^d` for `1 <= m <= n`, where `F`, `G`
    /// are `f`, `g` with denominators cleared.
    pub b: BigInt,
    /// `max(deg f, deg g)`.
    pub d: usize,
    pub u0_valuation: i64,
}

/// Result of a prime search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymmetryScan {
    pub certificate: Option<AsymmetryCertificate>,
    pub summary: ScanSummary,
}

fn coefficient_bound(p: &RatPoly) -> BigInt {
    let (_, ints) = p.cleared();
    ints.iter().map(|c| c.abs()).sum::<BigInt>().max(BigInt::one())
}

/// Builds the certificate at `p`, checking every requirement.
pub fn certificate_at(seq: &HypergeomSeq, p: u64) -> Result<AsymmetryCertificate> {
    let (m_f, m_g) = root_counts(seq, p)?;
    if m_f == m_g {
        return Err(Error::InvalidArgument(format!("sequence is {p}-symmetric")));
    }
    let u0v = match crate::numtheory::padic_valuation(seq.u0(), p) {
        Valuation::Finite(0) => 0,
        _ => {
            return Err(Error::InvalidArgument(format!("{p} divides u0 or u0 = 0")));
        }
    };
    let pm1 = BigInt::from(p - 1);
    let diff = m_g as i64 - m_f as i64;
    Ok(AsymmetryCertificate {
        p,
        m_f,
        m_g,
        slope: Rational::new(BigInt::from(diff), pm1.clone()),
        a: Rational::new(BigInt::from(diff.abs()), pm1),
        b: coefficient_bound(seq.f()).max(coefficient_bound(seq.g())),
        d: seq.f().deg().max(seq.g().deg()),
        u0_valuation: u0v,
    })
}

/// Smallest Hensel prime in `[p_min, p_max]`, coprime to `u_0`, at which the
/// sequence is asymmetric. The scan runs in parallel chunks and stops at the
/// first chunk containing a hit.
pub fn find_asymmetric_prime(seq: &HypergeomSeq, p_min: u64, p_max: u64) -> Result<AsymmetryScan> {
    if p_min < 2 {
        return Err(Error::InvalidArgument("p_min must be at least 2".into()));
    }
    let fg = seq.f() * seq.g();
    let primes: Vec<u64> = sieve(p_max).into_iter().filter(|&p| p >= p_min).collect();
    let mut summary = ScanSummary {
        p_min,
        p_max,
        ..Default::default()
    };
    let u0 = (!seq.u0().is_zero()).then(|| seq.u0());
    for chunk in primes.chunks(512) {
        let statuses: Vec<PrimeStatus> = chunk
            .par_iter()
            .map(|&p| {
                if u0.is_none() {
                    PrimeStatus::DividesU0
                } else {
                    classify_prime(seq.f(), seq.g(), &fg, u0, p)
                }
            })
            .collect();
        for (&p, st) in chunk.iter().zip(statuses) {
            let mut one = ScanSummary::default();
            tally(&mut one, st);
            summary.merge(&one);
            if let PrimeStatus::Counts(a, b) = st {
                if a != b {
                    return Ok(AsymmetryScan {
                        certificate: Some(certificate_at(seq, p)?),
                        summary,
                    });
                }
            }
        }
    }
    Ok(AsymmetryScan {
        certificate: None,
        summary,
    })
}

/// Asymmetric Hensel primes coprime to `u_0` in the range, ascending, that
/// also pass `keep`; at most `limit` of them.
pub fn asymmetric_primes<F>(
    seq: &HypergeomSeq,
    p_min: u64,
    p_max: u64,
    limit: usize,
    keep: F,
) -> Vec<AsymmetryCertificate>
where
    F: Fn(u64) -> bool + Sync,
{
    if seq.u0().is_zero() || limit == 0 {
        return Vec::new();
    }
    let fg = seq.f() * seq.g();
    let primes: Vec<u64> = sieve(p_max).into_iter().filter(|&p| p >= p_min.max(2)).collect();
    let mut out = Vec::new();
    for chunk in primes.chunks(512) {
        let hits: Vec<u64> = chunk
            .par_iter()
            .filter(|&&p| {
                keep(p)
                    && matches!(
                        classify_prime(seq.f(), seq.g(), &fg, Some(seq.u0()), p),
                        PrimeStatus::Counts(a, b) if a != b
                    )
            })
            .copied()
            .collect();
        for p in hits {
            out.push(certificate_at(seq, p).expect("classified as asymmetric"));
            if out.len() >= limit {
                return out;
            }
        }
    }
    out
}

impl AsymmetryCertificate {
    /// `m_f + m_g`.
    pub fn log_coefficient(&self) -> usize {
        self.m_f + self.m_g
    }

    /// `L(n) = A n - (m_f + m_g)(log_p(B n^d) + 2) - |nu_p(u_0)|`, a lower
    /// bound for `|nu_p(u_n)|` valid for all `n >= 1`.
    pub fn envelope(&self, n: u64) -> f64 {
        let p = self.p as f64;
        let n = n.max(1) as f64;
        let a = self.a.numer().to_f64().unwrap() / self.a.denom().to_f64().unwrap();
        let log_b = crate::numtheory::log_biguint(self.b.magnitude());
        let log_p_bound = (log_b + self.d as f64 * n.ln()) / p.ln();
        a * n - self.log_coefficient() as f64 * (log_p_bound + 2.0) - self.u0_valuation.abs() as f64
    }

    /// True when `L(n) <= 0`, i.e. the bound says nothing at `n`.
    pub fn is_vacuous_at(&self, n: u64) -> bool {
        self.envelope(n) <= 0.0
    }

    /// Smallest `n0 >= 1` with `L(n) > threshold` for every `n >= n0`.
    ///
    /// `L` is concave, so `{n : L(n) > threshold}` is an interval unbounded
    /// to the right and the predicate is monotone in `n`.
    pub fn threshold_index(&self, threshold: f64) -> u64 {
        if self.envelope(1) > threshold {
            return 1;
        }
        let mut hi = 2u64;
        while self.envelope(hi) <= threshold {
            hi = hi.checked_mul(2).expect("envelope grows linearly");
        }
        let mut lo = hi / 2;
        // envelope(lo) <= threshold < envelope(hi)
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if self.envelope(mid) > threshold {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }

    /// Structured text record, one `key = value` per line.
    pub fn to_text(&self) -> String {
        format!(
            "asymmetry-certificate v1\np = {}\nm_f = {}\nm_g = {}\nslope = {}\nA = {}\nB = {}\nd = {}\nu0_valuation = {}\n",
            self.p, self.m_f, self.m_g, self.slope, self.a, self.b, self.d, self.u0_valuation
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Parse { pos: 0, msg };
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        if lines.next() != Some("asymmetry-certificate v1") {
            return Err(bad("missing certificate header".into()));
        }
        let mut get = std::collections::HashMap::new();
        for l in lines {
            let (k, v) = l.split_once('=').ok_or_else(|| bad(format!("bad line '{l}'")))?;
            get.insert(k.trim().to_string(), v.trim().to_string());
        }
        let field = |k: &str| get.get(k).cloned().ok_or_else(|| bad(format!("missing field {k}")));
        let num = |k: &str| -> Result<i64> { field(k)?.parse().map_err(|_| bad(format!("bad integer in {k}"))) };
        let ratio = |k: &str| crate::parse::parse_rational(&field(k)?);
        Ok(AsymmetryCertificate {
            p: num("p")? as u64,
            m_f: num("m_f")? as usize,
            m_g: num("m_g")? as usize,
            slope: ratio("slope")?,
            a: ratio("A")?,
            b: field("B")?.parse().map_err(|_| bad("bad integer in B".into()))?,
            d: num("d")? as usize,
            u0_valuation: num("u0_valuation")?,
        })
    }
}

impl fmt::Display for AsymmetryCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "p = {}: m_f = {}, m_g = {}, slope {}",
            self.p, self.m_f, self.m_g, self.slope
        )
    }
}

/// The certified envelope of a certificate as a standalone value.
#[derive(Clone, Debug, PartialEq)]
pub struct Envelope {
    pub certificate: AsymmetryCertificate,
}

impl Envelope {
    pub fn eval(&self, n: u64) -> f64 {
        self.certificate.envelope(n)
    }
}

/// Checks the certificate against the sequence and returns its envelope.
pub fn certified_envelope(cert: &AsymmetryCertificate, seq: &HypergeomSeq) -> Result<Envelope> {
    let fresh = certificate_at(seq, cert.p)?;
    if fresh != *cert {
        return Err(Error::InvalidArgument("certificate does not match the sequence".into()));
    }
    Ok(Envelope { certificate: fresh })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlopeFit {
    pub p: u64,
    /// Least-squares slope of `nu_p(u_n)` against `n` over `[n_max/2, n_max]`.
    pub slope: f64,
    /// `max |nu_p(u_n) - slope * n| / ln n` over the same window.
    pub max_log_deviation: f64,
}

/// Fits the growth rate of `nu_p(u_n)`.
pub fn slope_fit(seq: &HypergeomSeq, p: u64, n_max: u64) -> Result<SlopeFit> {
    if n_max < 4 {
        return Err(Error::InvalidArgument("n_max must be at least 4".into()));
    }
    let series = seq.valuation_series(p, n_max);
    let lo = n_max / 2;
    let pts: Vec<(f64, f64)> = (lo..=n_max)
        .map(|n| match series[n as usize] {
            Valuation::Finite(v) => Ok((n as f64, v as f64)),
            Valuation::Infinite => Err(Error::InvalidArgument("sequence vanishes".into())),
        })
        .collect::<Result<_>>()?;
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let slope = sxy / sxx;
    let max_log_deviation = pts
        .iter()
        .filter(|p| p.0 >= 2.0)
        .map(|p| (p.1 - slope * p.0).abs() / p.0.ln())
        .fold(0.0, f64::max);
    Ok(SlopeFit {
        p,
        slope,
        max_log_deviation,
    })
}

/// Square-free discriminant parts attached to the roots of `f` and `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldProfile {
    /// One entry per root: `1` for a rational root, `sf(disc)` (twice) for
    /// the two roots of an irreducible quadratic. Sorted.
    pub f_fields: Vec<BigInt>,
    pub g_fields: Vec<BigInt>,
}

impl FieldProfile {
    /// True when no matching of roots preserves their fields.
    pub fn in_class_d(&self) -> bool {
        self.f_fields != self.g_fields
    }
}

fn root_fields(p: &RatPoly) -> Result<Vec<BigInt>> {
    let fp = factor(p);
    if !fp.is_quadratic_complete() {
        return Err(Error::UnsupportedFactorization(format!(
            "{p} has an irreducible factor of degree above 2"
        )));
    }
    let mut out = Vec::new();
    for fac in &fp.factors {
        let m = fac.multiplicity as usize;
        match fac.poly.deg() {
            1 => out.extend(std::iter::repeat_n(BigInt::one(), m)),
            2 => {
                let d = squarefree_part(&discriminant_quadratic(&fac.poly)?);
                out.extend(std::iter::repeat_n(d, 2 * m));
            }
            _ => unreachable!("quadratic-complete"),
        }
    }
    out.sort();
    Ok(out)
}

/// Field multisets for a quadratic-complete sequence.
pub fn field_profile(seq: &HypergeomSeq) -> Result<FieldProfile> {
    Ok(FieldProfile {
        f_fields: root_fields(seq.f())?,
        g_fields: root_fields(seq.g())?,
    })
}

/// True iff the parameter fields of `f` and `g` cannot be matched root by
/// root. Linear factors count as the field `Q` (part 1).
pub fn class_d_quadratic_check(seq: &HypergeomSeq) -> Result<bool> {
    Ok(field_profile(seq)?.in_class_d())
}

/// Reduction of `f` modulo `p` when it exists; used for reporting.
pub fn reduction_degree(f: &RatPoly, p: u64) -> Option<isize> {
    reduce_mod_p(f, p).ok().map(|m| m.degree())
}
