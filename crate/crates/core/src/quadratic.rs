//! Discriminant profiles, the GF(2) condition-prime test, `rep(r + s sqrt D)`
//! and the equidistribution harness for roots of quadratic congruences.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::hyperseq::HypergeomSeq;
use crate::numtheory::{
    factor_integer, legendre_unchecked, mod_u64, primes_in_progression, rep, sieve, sqrt_mod, squarefree_part,
    squarefree_part_int, Rational,
};
use crate::poly::{discriminant_quadratic, RatPoly};

/// Square-free parts of the discriminants of the irreducible quadratic
/// factors, with their prime-support vectors over GF(2).
///
/// When some part is negative, `-1` is placed first in `prime_support` and
/// treated as one more generator, so `(D/p)` is the product of `(q/p)` over
/// the support elements `q` dividing `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscriminantProfile {
    pub discs: BTreeSet<BigInt>,
    pub prime_support: Vec<BigInt>,
    pub vectors: BTreeMap<BigInt, Vec<u8>>,
}

impl DiscriminantProfile {
    /// Builds a profile from integers, replacing each by its square-free part.
    pub fn from_discs<I: IntoIterator<Item = BigInt>>(discs: I) -> Result<Self> {
        let mut set = BTreeSet::new();
        for d in discs {
            if d.is_zero() {
                return Err(Error::InvalidArgument("zero discriminant".into()));
            }
            set.insert(squarefree_part_int(&d));
        }
        let mut support: BTreeSet<BigInt> = BTreeSet::new();
        let mut negative = false;
        for d in &set {
            negative |= d.is_negative();
            for (q, _) in factor_integer(d.magnitude()) {
                support.insert(BigInt::from(q));
            }
        }
        let mut prime_support: Vec<BigInt> = Vec::new();
        if negative {
            prime_support.push(BigInt::from(-1));
        }
        prime_support.extend(support);
        let vectors = set
            .iter()
            .map(|d| {
                let v = prime_support
                    .iter()
                    .map(|q| {
                        if q.is_negative() {
                            d.is_negative() as u8
                        } else {
                            (d % q).is_zero() as u8
                        }
                    })
                    .collect();
                (d.clone(), v)
            })
            .collect();
        Ok(DiscriminantProfile {
            discs: set,
            prime_support,
            vectors,
        })
    }

    pub fn has_negative(&self) -> bool {
        self.discs.iter().any(|d| d.is_negative())
    }

    /// Non-rational and `D` fits in `{D1, D2, sf(D1 D2)}`.
    pub fn is_class_c(&self) -> bool {
        let d: Vec<&BigInt> = self.discs.iter().collect();
        match d.len() {
            1 | 2 => true,
            3 => (0..3).any(|i| {
                let (a, b) = (d[(i + 1) % 3], d[(i + 2) % 3]);
                squarefree_part_int(&(a * b)) == *d[i]
            }),
            _ => false,
        }
    }
}

impl fmt::Display for DiscriminantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let discs: Vec<String> = self.discs.iter().map(|d| d.to_string()).collect();
        let support: Vec<String> = self.prime_support.iter().map(|d| d.to_string()).collect();
        write!(
            f,
            "discriminants {{{}}} over support [{}]",
            discs.join(", "),
            support.join(", ")
        )
    }
}

fn quadratic_discs(p: &RatPoly, out: &mut Vec<BigInt>) -> Result<()> {
    let fp = factor(p);
    if !fp.is_quadratic_complete() {
        return Err(Error::UnsupportedFactorization(format!(
            "{p} has an irreducible factor of degree above 2"
        )));
    }
    for fac in fp.factors.iter().filter(|f| f.poly.deg() == 2) {
        out.push(squarefree_part(&discriminant_quadratic(&fac.poly)?));
    }
    Ok(())
}

/// Profile of the irreducible quadratic factors of `f * g`.
pub fn discriminant_profile(seq: &HypergeomSeq) -> Result<DiscriminantProfile> {
    let mut discs = Vec::new();
    quadratic_discs(seq.f(), &mut discs)?;
    quadratic_discs(seq.g(), &mut discs)?;
    DiscriminantProfile::from_discs(discs)
}

/// Solves `A e = b` over GF(2); rows are `(coefficients, rhs)`.
fn solve_gf2(rows: &[(Vec<u8>, u8)], r: usize) -> Option<Vec<u8>> {
    if r <= 20 {
        let masks: Vec<(u32, u32)> = rows
            .iter()
            .map(|(v, b)| {
                let m = v.iter().enumerate().fold(0u32, |acc, (j, &x)| acc | ((x as u32) << j));
                (m, *b as u32)
            })
            .collect();
        return (0u32..1 << r)
            .find(|&e| masks.iter().all(|&(m, b)| (m & e).count_ones() & 1 == b))
            .map(|e| (0..r).map(|j| ((e >> j) & 1) as u8).collect());
    }
    // Gaussian elimination with free variables set to zero
    let mut m: Vec<Vec<u8>> = rows
        .iter()
        .map(|(v, b)| {
            let mut row = v.clone();
            row.push(*b);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..r {
        let Some(pr) = (row..m.len()).find(|&i| m[i][col] == 1) else {
            continue;
        };
        m.swap(row, pr);
        for i in 0..m.len() {
            if i != row && m[i][col] == 1 {
                let pivot_row = m[row].clone();
                for (a, b) in m[i].iter_mut().zip(pivot_row) {
                    *a ^= b;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if m[row..].iter().any(|rw| rw[r] == 1) {
        return None;
    }
    let mut e = vec![0u8; r];
    for (i, &col) in pivots.iter().enumerate() {
        e[col] = m[i][r];
    }
    Some(e)
}

fn require_member(profile: &DiscriminantProfile, delta: &BigInt) -> Result<()> {
    if profile.discs.contains(delta) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("{delta} is not in the profile")))
    }
}

/// A vector `e` with `delta . e = 0` and `D' . e = 1` for every other `D'`
/// in the profile; `e_j = 1` stands for `(p_j / p) = -1`.
pub fn exists_condition_prime(profile: &DiscriminantProfile, delta: &BigInt) -> Result<Option<Vec<u8>>> {
    require_member(profile, delta)?;
    let rows: Vec<(Vec<u8>, u8)> = profile
        .vectors
        .iter()
        .map(|(d, v)| (v.clone(), (d != delta) as u8))
        .collect();
    Ok(solve_gf2(&rows, profile.prime_support.len()))
}

/// Smallest odd prime `p <= p_max` not dividing any discriminant with
/// `(delta/p) = 1` and `(D'/p) = -1` for the others. Returns `None` without
/// scanning when the GF(2) system has no solution.
pub fn find_condition_prime(profile: &DiscriminantProfile, delta: &BigInt, p_max: u64) -> Result<Option<u64>> {
    if exists_condition_prime(profile, delta)?.is_none() {
        return Ok(None);
    }
    for p in sieve(p_max).into_iter().skip(1) {
        if profile.discs.iter().any(|d| mod_u64(d, p) == 0) {
            continue;
        }
        let ok = profile.discs.iter().all(|d| {
            let want = if d == delta { 1 } else { -1 };
            legendre_unchecked(d, p) == want
        });
        if ok {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// `rep(r + sign * s * D)` where `D` is the square root of `delta` modulo
/// `p` with `0 <= D < p/2`.
pub fn rep_quadratic(r: &Rational, s: &Rational, delta: &BigInt, p: u64, sign: i8) -> Result<u64> {
    let d = sqrt_mod(delta, p)?;
    let (rr, rs) = (rep(r, p)?, rep(s, p)?);
    let t = crate::numtheory::mul_mod(rs, d, p);
    Ok(if sign >= 0 { (rr + t) % p } else { (rr + p - t) % p })
}

/// Binned distribution of `rep(r +- s sqrt(delta)) / p`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquidistributionReport {
    pub delta: BigInt,
    pub q: u64,
    pub a: u64,
    pub p_limit: u64,
    /// Primes that contributed samples (two each).
    pub primes_used: usize,
    /// Qualifying primes skipped because a denominator of `r` or `s`
    /// vanishes there.
    pub primes_skipped: usize,
    pub samples: usize,
    /// `(left, right, frequency)` for each half-open bin.
    pub bins: Vec<(f64, f64, f64)>,
    pub star_discrepancy: f64,
}

impl EquidistributionReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("bin_left,bin_right,frequency\n");
        for (l, r, f) in &self.bins {
            out.push_str(&format!("{l},{r},{f}\n"));
        }
        out.push_str(&format!(
            "# delta={} q={} a={} p_limit={} primes={} skipped={} samples={} star_discrepancy={}\n",
            self.delta,
            self.q,
            self.a,
            self.p_limit,
            self.primes_used,
            self.primes_skipped,
            self.samples,
            self.star_discrepancy
        ));
        out
    }
}

/// Exact star discrepancy of points in `[0, 1)`; sorts in place.
pub fn star_discrepancy(points: &mut [f64]) -> f64 {
    points.sort_by(|a, b| a.total_cmp(b));
    let n = points.len() as f64;
    points
        .iter()
        .enumerate()
        .map(|(i, &x)| ((i + 1) as f64 / n - x).max(x - i as f64 / n))
        .fold(0.0, f64::max)
}

type Reps = std::result::Result<(u64, u64), ()>;

/// Both representatives at one prime, or `None` when the prime does not
/// qualify. `Err(())` marks a qualifying prime with a bad denominator.
fn reps_at(r: &Rational, s: &Rational, delta: &BigInt, p: u64) -> Option<Reps> {
    if p == 2 || legendre_unchecked(delta, p) != 1 {
        return None;
    }
    Some(
        match (rep_quadratic(r, s, delta, p, 1), rep_quadratic(r, s, delta, p, -1)) {
            (Ok(x), Ok(y)) => Ok((x, y)),
            _ => Err(()),
        },
    )
}

fn check_delta(delta: &BigInt, s: &Rational) -> Result<()> {
    if s.is_zero() {
        return Err(Error::InvalidArgument("s must be nonzero".into()));
    }
    if !delta.is_positive() {
        return Err(Error::InvalidArgument(format!(
            "delta = {delta}: sampling needs a positive discriminant"
        )));
    }
    if squarefree_part_int(delta) != *delta || delta.is_one() {
        return Err(Error::InvalidArgument(format!(
            "delta = {delta} is not a square-free non-square"
        )));
    }
    Ok(())
}

/// Samples over primes `p <= p_limit`, `p = a (mod q)`, `(delta/p) = 1`,
/// pooling both signs.
pub fn equidistribution_sample(
    delta: &BigInt,
    q: u64,
    a: u64,
    r: &Rational,
    s: &Rational,
    p_limit: u64,
    bin_count: usize,
) -> Result<EquidistributionReport> {
    check_delta(delta, s)?;
    if bin_count < 2 {
        return Err(Error::InvalidArgument("need at least two bins".into()));
    }
    if q == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    let primes: Vec<u64> = primes_in_progression(a % q, q, p_limit).collect();
    let results: Vec<(u64, Reps)> = primes
        .par_iter()
        .filter_map(|&p| reps_at(r, s, delta, p).map(|x| (p, x)))
        .collect();
    let mut counts = vec![0u64; bin_count];
    let mut points = Vec::with_capacity(2 * results.len());
    let (mut used, mut skipped) = (0, 0);
    for (p, res) in results {
        match res {
            Ok((x, y)) => {
                used += 1;
                for v in [x, y] {
                    counts[(v as u128 * bin_count as u128 / p as u128) as usize] += 1;
                    points.push(v as f64 / p as f64);
                }
            }
            Err(()) => skipped += 1,
        }
    }
    if points.is_empty() {
        return Err(Error::EmptySampleSet);
    }
    let total = points.len() as f64;
    let bins = counts
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            (
                i as f64 / bin_count as f64,
                (i + 1) as f64 / bin_count as f64,
                c as f64 / total,
            )
        })
        .collect();
    Ok(EquidistributionReport {
        delta: delta.clone(),
        q,
        a: a % q,
        p_limit,
        primes_used: used,
        primes_skipped: skipped,
        samples: points.len(),
        star_discrepancy: star_discrepancy(&mut points),
        bins,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WindowCount {
    /// Qualifying primes in `[N, (1 + window) N)`.
    pub qualifying: u64,
    /// Those with either representative in `[alpha, beta)` after dividing by `p`.
    pub hits: u64,
    /// Representatives in range, counting both signs separately (out of
    /// `2 * qualifying`).
    pub sample_hits: u64,
}

/// Counts primes `N <= p < (1 + window) N` with `p = a (mod q)`,
/// `(delta/p) = 1` and `rep(r +- s sqrt(delta)) / p` in `[alpha, beta)` for
/// at least one sign.
#[allow(clippy::too_many_arguments)]
pub fn window_count(
    delta: &BigInt,
    q: u64,
    a: u64,
    r: &Rational,
    s: &Rational,
    n: u64,
    window: f64,
    alpha: f64,
    beta: f64,
) -> Result<WindowCount> {
    check_delta(delta, s)?;
    if !(0.0 <= alpha && alpha < beta && beta <= 1.0) {
        return Err(Error::InvalidArgument("need 0 <= alpha < beta <= 1".into()));
    }
    if window <= 0.0 {
        return Err(Error::InvalidArgument("window must be positive".into()));
    }
    let hi = ((1.0 + window) * n as f64).ceil() as u64;
    let in_range = |v: u64, p: u64| {
        let x = v as f64 / p as f64;
        alpha <= x && x < beta
    };
    let mut out = WindowCount {
        qualifying: 0,
        hits: 0,
        sample_hits: 0,
    };
    for p in primes_in_progression(a % q, q, hi) {
        if p < n || (p as f64) >= (1.0 + window) * n as f64 {
            continue;
        }
        if let Some(Ok((x, y))) = reps_at(r, s, delta, p) {
            out.qualifying += 1;
            out.hits += (in_range(x, p) || in_range(y, p)) as u64;
            out.sample_hits += in_range(x, p) as u64 + in_range(y, p) as u64;
        }
    }
    Ok(out)
}

/// Membership in class C: non-rational with discriminant parts inside
/// `{D1, D2, sf(D1 D2)}`. Negative parts are accepted.
pub fn class_c_check(seq: &HypergeomSeq) -> Result<bool> {
    Ok(discriminant_profile(seq)?.is_class_c())
}

/// `rep(r +- s sqrt(delta)) / p` for one prime, as floats; used by the demo.
pub fn normalized_reps(delta: &BigInt, r: &Rational, s: &Rational, p: u64) -> Option<(f64, f64)> {
    match reps_at(r, s, delta, p)? {
        Ok((x, y)) => Some((x as f64 / p as f64, y as f64 / p as f64)),
        Err(()) => None,
    }
}

/// Convenience for profiles given as machine integers.
pub fn profile_of(discs: &[i64]) -> Result<DiscriminantProfile> {
    DiscriminantProfile::from_discs(discs.iter().map(|&d| BigInt::from(d)))
}

impl DiscriminantProfile {
    /// Checks an explicit prime against the conditions for `delta`.
    pub fn satisfies(&self, delta: &BigInt, p: u64) -> bool {
        p > 2
            && crate::numtheory::is_prime_u64(p)
            && self.discs.iter().all(|d| {
                let want = if d == delta { 1 } else { -1 };
                legendre_unchecked(d, p) == want
            })
    }

    pub fn support_as_i64(&self) -> Vec<i64> {
        self.prime_support.iter().filter_map(|q| q.to_i64()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperseq::make_sequence;
    use crate::numtheory::{int, rat};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn profile_examples() {
        let s = make_sequence(p(&[-1, -2, 1]), p(&[-3, 0, 1]), int(1)).unwrap();
        let prof = discriminant_profile(&s).unwrap();
        assert_eq!(prof.discs.iter().cloned().collect::<Vec<_>>(), vec![b(2), b(3)]);
        assert_eq!(prof.prime_support, vec![b(2), b(3)]);
        assert_eq!(prof.vectors[&b(2)], vec![1, 0]);
        assert_eq!(prof.vectors[&b(3)], vec![0, 1]);

        let split = make_sequence(p(&[2, 3, 1]), p(&[-3, 2, 1]), int(1)).unwrap();
        assert!(discriminant_profile(&split).unwrap().discs.is_empty());

        let six = profile_of(&[2, 3, 6]).unwrap();
        assert_eq!(six.vectors[&b(6)], vec![1, 1]);
        let neg = profile_of(&[-1, 2, -6]).unwrap();
        assert_eq!(neg.prime_support, vec![b(-1), b(2), b(3)]);
        assert_eq!(neg.vectors[&b(-6)], vec![1, 1, 1]);
    }

    #[test]
    fn gf2_examples() {
        let six = profile_of(&[2, 3, 6]).unwrap();
        assert_eq!(exists_condition_prime(&six, &b(2)).unwrap(), Some(vec![0, 1]));
        let single = profile_of(&[5]).unwrap();
        assert_eq!(exists_condition_prime(&single, &b(5)).unwrap(), Some(vec![0]));
        assert_eq!(exists_condition_prime(&six, &b(6)).unwrap(), Some(vec![1, 1]));
        // 2, 3, 5 all non-residues force (30/p) = -1
        let bad = profile_of(&[2, 3, 5, 30]).unwrap();
        assert_eq!(exists_condition_prime(&bad, &b(30)).unwrap(), None);
        assert!(exists_condition_prime(&six, &b(7)).is_err());
    }

    #[test]
    fn gf2_elimination_matches_exhaustive() {
        // many primes force the elimination branch
        let primes = sieve(120);
        let group = |idx: &[usize]| idx.iter().map(|&i| BigInt::from(primes[i])).product::<BigInt>();
        let discs = vec![
            group(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]),
            group(&[1, 2, 3]),
            group(&[0, 4]),
            group(&[10, 11, 12, 13, 14]),
            group(&[15, 16]),
            group(&[17, 18, 19, 20, 21, 22, 23]),
            group(&[0, 23, 24]),
            group(&[5]),
        ];
        let prof = DiscriminantProfile::from_discs(discs).unwrap();
        assert!(prof.prime_support.len() > 20);
        for d in &prof.discs {
            let rows: Vec<(Vec<u8>, u8)> = prof
                .vectors
                .iter()
                .map(|(dd, v)| (v.clone(), (dd != d) as u8))
                .collect();
            if let Some(e) = exists_condition_prime(&prof, d).unwrap() {
                for (v, want) in rows {
                    let dot = v.iter().zip(&e).map(|(a, b)| a * b).sum::<u8>() % 2;
                    assert_eq!(dot, want);
                }
            }
        }
    }

    #[test]
    fn condition_primes() {
        // (3/7) = -1 because 3^3 = 27 = -1 mod 7, so 7 already qualifies
        let prof = profile_of(&[2, 3]).unwrap();
        assert_eq!(find_condition_prime(&prof, &b(2), 1000).unwrap(), Some(7));
        let two = profile_of(&[2]).unwrap();
        assert_eq!(find_condition_prime(&two, &b(2), 1000).unwrap(), Some(7));
        let bad = profile_of(&[2, 3, 5, 30]).unwrap();
        assert_eq!(find_condition_prime(&bad, &b(30), 1000).unwrap(), None);
        assert!(prof.satisfies(&b(2), 7));
        assert!(!prof.satisfies(&b(2), 5));
    }

    #[test]
    fn condition_prime_equivalence() {
        let profiles = [
            vec![2, 3],
            vec![2, 3, 6],
            vec![5, 7, 35],
            vec![-1, 2, -2],
            vec![3, 5, 7],
            vec![-3, 5, 15],
            vec![10, 15, 6],
            vec![2, 3, 5, 30],
        ];
        for discs in profiles {
            let prof = profile_of(&discs).unwrap();
            for d in prof.discs.clone() {
                let solvable = exists_condition_prime(&prof, &d).unwrap().is_some();
                let found = find_condition_prime(&prof, &d, 100_000).unwrap();
                assert_eq!(solvable, found.is_some(), "{discs:?} at {d}");
                if let Some(q) = found {
                    assert!(prof.satisfies(&d, q));
                }
            }
        }
    }

    #[test]
    fn rep_examples() {
        assert_eq!(rep_quadratic(&int(1), &int(1), &b(2), 7, 1).unwrap(), 4);
        assert_eq!(rep_quadratic(&int(1), &int(1), &b(2), 7, -1).unwrap(), 5);
        assert_eq!(
            rep_quadratic(&rat(2, 3), &int(0), &b(2), 7, 1).unwrap(),
            rep(&rat(2, 3), 7).unwrap()
        );
        assert!(matches!(
            rep_quadratic(&int(1), &int(1), &b(3), 7, 1),
            Err(Error::NonResidue { .. })
        ));
        assert!(matches!(
            rep_quadratic(&rat(1, 7), &int(1), &b(2), 7, 1),
            Err(Error::BadPrime(7))
        ));
    }

    #[test]
    fn rep_is_congruent() {
        let (r, s) = (rat(3, 5), rat(-2, 9));
        for q in sieve(2000).into_iter().skip(3) {
            if q == 5 || legendre_unchecked(&b(2), q) != 1 {
                continue;
            }
            let d = sqrt_mod(&b(2), q).unwrap() as i64;
            for sign in [1i8, -1] {
                let v = rep_quadratic(&r, &s, &b(2), q, sign).unwrap();
                let exact = Rational::from_integer(b(v as i64)) - &r - &s * Rational::from_integer(b(sign as i64 * d));
                assert_eq!(mod_u64(exact.numer(), q), 0);
            }
        }
    }

    #[test]
    fn equidistribution_small() {
        let rep = equidistribution_sample(&b(2), 1, 0, &int(0), &int(1), 20_000, 10).unwrap();
        let total: f64 = rep.bins.iter().map(|b| b.2).sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(rep.samples, 2 * rep.primes_used);
        assert!(rep.bins.iter().all(|b| (b.2 - 0.1).abs() < 0.03));
        assert!(rep.to_csv().starts_with("bin_left,bin_right,frequency\n0,0.1,"));
        assert!(equidistribution_sample(&b(2), 1, 0, &int(0), &int(0), 1000, 10).is_err());
        assert!(matches!(
            equidistribution_sample(&b(2), 8, 3, &int(0), &int(1), 1000, 10),
            Err(Error::EmptySampleSet)
        ));
        let skip = equidistribution_sample(&b(2), 1, 0, &rat(1, 7), &int(1), 1000, 10).unwrap();
        assert_eq!(skip.primes_skipped, 1);
    }

    #[test]
    fn star_discrepancy_exact() {
        let mut pts = vec![0.5];
        assert!((star_discrepancy(&mut pts) - 0.5).abs() < 1e-15);
        let mut pts: Vec<f64> = (0..10).map(|i| (i as f64 + 0.5) / 10.0).collect();
        assert!((star_discrepancy(&mut pts) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn windows() {
        let full = window_count(&b(2), 1, 0, &int(0), &int(1), 100_000, 0.5, 0.0, 1.0).unwrap();
        assert_eq!(full.hits, full.qualifying);
        assert_eq!(full.sample_hits, 2 * full.qualifying);
        let half = window_count(&b(2), 1, 0, &int(0), &int(1), 100_000, 0.5, 0.0, 0.5).unwrap();
        // rep(sD) and rep(-sD) are p-complements, so one lies below 1/2
        assert_eq!(half.hits, half.qualifying);
        assert_eq!(half.sample_hits, full.qualifying);
        let quarter = window_count(&b(2), 1, 0, &int(0), &int(1), 100_000, 0.5, 0.0, 0.25).unwrap();
        let ratio = quarter.hits as f64 / quarter.qualifying as f64;
        assert!((ratio - 0.5).abs() < 0.05, "{ratio}");
        let ratio = quarter.sample_hits as f64 / (2 * quarter.qualifying) as f64;
        assert!((ratio - 0.25).abs() < 0.03, "{ratio}");
    }

    #[test]
    fn class_c_examples() {
        assert!(profile_of(&[2, 3]).unwrap().is_class_c());
        assert!(profile_of(&[2, 3, 6]).unwrap().is_class_c());
        assert!(!profile_of(&[2, 3, 5]).unwrap().is_class_c());
        let s = make_sequence(p(&[-1, -2, 1]), p(&[-3, 0, 1]), int(1)).unwrap();
        assert!(class_c_check(&s).unwrap());
        let rational = make_sequence(p(&[1]), p(&[0, 1]), int(1)).unwrap();
        assert!(!class_c_check(&rational).unwrap());
    }
}
