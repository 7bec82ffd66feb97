//! Polynomials over prime fields, root counting modulo p, Hensel lifting of
//! simple roots, and p-adic digit diagnostics.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::hyperseq::HypergeomSeq;
use crate::numtheory::{inv_mod, is_prime_u64, mod_u64, mul_mod, padic_valuation, rep};
use crate::poly::{eval_int_poly, RatPoly};

/// Digits a lazily extended root may grow to before giving up.
pub const DEFAULT_DIGIT_CAP: usize = 1 << 14;

/// Polynomial over the field with `p` elements, coefficients in `[0, p)`,
/// lowest degree first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl ModPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut out = ModPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        out.trim();
        out
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `-1` for zero.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    fn x(p: u64) -> Self {
        ModPoly::new(p, vec![0, 1])
    }

    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        self.coeffs.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
    }

    pub fn derivative(&self) -> Self {
        let p = self.p;
        ModPoly::new(
            p,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = inv_mod(lc, self.p).expect("nonzero in a field");
                self.scale(inv)
            }
        }
    }

    fn scale(&self, c: u64) -> Self {
        ModPoly::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect())
    }

    pub fn sub(&self, other: &ModPoly) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(other.coeffs.len());
        ModPoly::new(
            p,
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    (a + p - b) % p
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &ModPoly) -> Self {
        if self.is_zero() || other.is_zero() {
            return ModPoly::new(self.p, Vec::new());
        }
        let p = self.p;
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        ModPoly::new(p, out)
    }

    /// Division with remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &ModPoly) -> (ModPoly, ModPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let p = self.p;
        if self.degree() < d.degree() {
            return (ModPoly::new(p, Vec::new()), self.clone());
        }
        let inv = inv_mod(*d.coeffs.last().unwrap(), p).unwrap();
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = mul_mod(rem[i + dd], inv, p);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = (rem[i + j] + p - mul_mod(c, dc, p)) % p;
            }
        }
        rem.truncate(dd);
        (ModPoly::new(p, quot), ModPoly::new(p, rem))
    }

    pub fn rem(&self, d: &ModPoly) -> ModPoly {
        self.div_rem(d).1
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &ModPoly) -> ModPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &ModPoly) -> ModPoly {
        let mut base = self.rem(m);
        let mut acc = ModPoly::new(self.p, vec![1]).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// `gcd(self, x^p - x)`: the product of the distinct linear factors.
    pub fn split_part(&self) -> ModPoly {
        if self.degree() < 1 {
            return ModPoly::new(self.p, vec![1]);
        }
        let x = ModPoly::x(self.p);
        let xp = x.pow_mod(self.p, self);
        self.gcd(&xp.sub(&x))
    }

    /// True when `gcd(self, self')` is constant.
    pub fn is_square_free(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == 0
    }

    /// Distinct roots in `[0, p)`, ascending.
    pub fn roots(&self) -> Vec<u64> {
        let split = self.split_part();
        let mut out = Vec::new();
        if self.p < 64 {
            out = (0..self.p).filter(|&a| split.eval(a) == 0).collect();
        } else {
            equal_degree_roots(&split, &mut out);
            out.sort_unstable();
        }
        out
    }
}

/// Cantor-Zassenhaus splitting of a product of distinct linear factors over
/// an odd prime field. The shift sequence is deterministic.
fn equal_degree_roots(f: &ModPoly, out: &mut Vec<u64>) {
    let p = f.p;
    match f.degree() {
        d if d < 1 => return,
        1 => {
            // x + c  ->  root -c
            let f = f.monic();
            out.push((p - f.coeffs[0]) % p);
            return;
        }
        _ => {}
    }
    let half = (p - 1) / 2;
    for delta in 0..p {
        let shifted = ModPoly::new(p, vec![delta, 1]);
        let w = shifted.pow_mod(half, f).sub(&ModPoly::new(p, vec![1]));
        let g = f.gcd(&w);
        if g.degree() >= 1 && g.degree() < f.degree() {
            let (q, _) = f.div_rem(&g);
            equal_degree_roots(&g, out);
            equal_degree_roots(&q.monic(), out);
            return;
        }
    }
    unreachable!("splitting failed for a product of distinct linear factors");
}

impl fmt::Debug for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModPoly(p={}, {:?})", self.p, self.coeffs)
    }
}

impl fmt::Display for ModPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lifted = RatPoly::from_ints(&self.coeffs.iter().map(|&c| c as i64).collect::<Vec<_>>());
        write!(f, "{lifted} (mod {})", self.p)
    }
}

/// Reduces a rational polynomial coefficientwise modulo `p`.
pub fn reduce_mod_p(f: &RatPoly, p: u64) -> Result<ModPoly> {
    let coeffs = f.coeffs().iter().map(|c| rep(c, p)).collect::<Result<Vec<_>>>()?;
    Ok(ModPoly::new(p, coeffs))
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Number of roots of `f` in the field with `p` elements, counted with
/// multiplicity. At a Hensel prime every root is simple and this is the
/// number of distinct roots.
pub fn count_roots_mod_p(f: &RatPoly, p: u64) -> Result<usize> {
    check_prime(p)?;
    let mut h = reduce_mod_p(f, p)?;
    if h.is_zero() {
        return Err(Error::InvalidArgument(format!("{f} vanishes modulo {p}")));
    }
    let mut total = 0;
    loop {
        let r = h.split_part();
        if r.degree() < 1 {
            return Ok(total);
        }
        total += r.degree() as usize;
        h = h.div_rem(&r).0;
    }
}

/// Number of distinct roots of `f` modulo `p`: `deg gcd(f mod p, x^p - x)`.
pub fn count_distinct_roots_mod_p(f: &RatPoly, p: u64) -> Result<usize> {
    check_prime(p)?;
    let h = reduce_mod_p(f, p)?;
    if h.is_zero() {
        return Err(Error::InvalidArgument(format!("{f} vanishes modulo {p}")));
    }
    Ok(h.split_part().degree().max(0) as usize)
}

/// Distinct roots of `f` modulo `p`, ascending.
pub fn roots_mod_p(f: &RatPoly, p: u64) -> Result<Vec<u64>> {
    check_prime(p)?;
    let h = reduce_mod_p(f, p)?;
    if h.is_zero() {
        return Err(Error::InvalidArgument(format!("{f} vanishes modulo {p}")));
    }
    Ok(h.roots())
}

/// True iff `p` is prime, divides no coefficient denominator and not the
/// leading coefficient, and `f` stays square-free modulo `p`.
pub fn is_hensel_prime(f: &RatPoly, p: u64) -> bool {
    if f.is_zero() || !is_prime_u64(p) {
        return false;
    }
    let Ok(h) = reduce_mod_p(f, p) else {
        return false;
    };
    h.degree() == f.degree() && h.is_square_free()
}

/// A root of an integer polynomial in the p-adic integers, known to
/// `precision` digits. `value < p^precision`, `digits[j]` is the coefficient
/// of `p^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicRoot {
    p: u64,
    precision: usize,
    value: BigInt,
    digits: Vec<u64>,
    source: Vec<BigInt>,
}

impl PadicRoot {
    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn value(&self) -> &BigInt {
        &self.value
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    /// Integer polynomial (lowest degree first) this is a root of.
    pub fn source(&self) -> &[BigInt] {
        &self.source
    }

    /// Truncation to the first `r` digits, as an integer in `[0, p^r)`.
    pub fn truncate_value(&self, r: usize) -> BigInt {
        assert!(r <= self.precision, "truncation beyond precision");
        self.value.mod_floor(&BigInt::from(self.p).pow(r as u32))
    }

    /// Re-lifts to at least `k` digits.
    pub fn extend(&self, k: usize) -> PadicRoot {
        if k <= self.precision {
            return self.clone();
        }
        lift_integer_poly(&self.source, self.p, self.value.clone(), self.precision, k)
            .expect("a lifted simple root keeps lifting")
    }

    /// Least-significant-first digit dump, one digit per token.
    pub fn digit_dump(&self) -> String {
        self.digits.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn modinv_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

fn to_digits(value: &BigInt, p: u64, k: usize) -> Vec<u64> {
    let mut digits = Vec::with_capacity(k);
    let bp = BigInt::from(p);
    let mut v = value.clone();
    for _ in 0..k {
        let (q, r) = v.div_mod_floor(&bp);
        digits.push(r.to_u64().unwrap());
        v = q;
    }
    digits
}

/// Newton iteration with doubling precision, starting from a root known
/// modulo `p^have`.
fn lift_integer_poly(poly: &[BigInt], p: u64, start: BigInt, have: usize, k: usize) -> Result<PadicRoot> {
    let deriv: Vec<BigInt> = poly
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect();
    let bp = BigInt::from(p);
    let mut r = start;
    let mut cur = have.max(1);
    while cur < k {
        let next = (2 * cur).min(k);
        let m = bp.pow(next as u32);
        let fr = eval_int_poly(poly, &r);
        let dr = eval_int_poly(&deriv, &r);
        let inv = modinv_big(&dr, &m).ok_or_else(|| Error::NotSimpleRoot { r: r.clone(), p })?;
        r = (&r - fr * inv).mod_floor(&m);
        cur = next;
    }
    let m = bp.pow(k as u32);
    let value = r.mod_floor(&m);
    debug_assert!(eval_int_poly(poly, &value).mod_floor(&m).is_zero());
    Ok(PadicRoot {
        p,
        precision: k,
        digits: to_digits(&value, p, k),
        value,
        source: poly.to_vec(),
    })
}

/// Lifts the simple root `r0` of `f` modulo `p` to the unique root modulo
/// `p^k` congruent to it.
pub fn hensel_lift(f: &RatPoly, p: u64, r0: &BigInt, k: usize) -> Result<PadicRoot> {
    check_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("precision must be at least 1".into()));
    }
    let fbar = reduce_mod_p(f, p)?;
    let r = mod_u64(r0, p);
    if fbar.eval(r) != 0 {
        return Err(Error::NotARoot { r: r0.clone(), p });
    }
    if fbar.derivative().eval(r) == 0 {
        return Err(Error::NotSimpleRoot { r: r0.clone(), p });
    }
    // the cleared integer polynomial differs from f by a p-unit
    let (_, ints) = f.cleared();
    lift_integer_poly(&ints, p, BigInt::from(r), 1, k)
}

/// Lifts every root of `f` modulo `p` to `k` digits. Requires `p` to be a
/// Hensel prime for `f`.
pub fn lift_all_roots(f: &RatPoly, p: u64, k: usize) -> Result<Vec<PadicRoot>> {
    if !is_hensel_prime(f, p) {
        return Err(Error::NotHenselPrime(p));
    }
    roots_mod_p(f, p)?
        .into_iter()
        .map(|r| hensel_lift(f, p, &BigInt::from(r), k))
        .collect()
}

/// Length of the run of zero digits starting at index `s`, extending the
/// root's precision by doubling up to `cap` digits.
pub fn zero_run_length_with_cap(root: &PadicRoot, s: usize, cap: usize) -> Result<usize> {
    let mut current = std::borrow::Cow::Borrowed(root);
    loop {
        let digits = current.digits();
        let mut run = 0;
        let mut j = s;
        while j < digits.len() && digits[j] == 0 {
            run += 1;
            j += 1;
        }
        if j < digits.len() {
            return Ok(run);
        }
        let have = current.precision();
        if have >= cap {
            return Err(Error::PrecisionExhausted(cap));
        }
        let want = (2 * have).max(s + 2).min(cap);
        current = std::borrow::Cow::Owned(current.extend(want));
    }
}

/// Largest `d` such that digits `s, ..., s + d - 1` are all zero.
pub fn zero_run_length(root: &PadicRoot, s: usize) -> Result<usize> {
    zero_run_length_with_cap(root, s, DEFAULT_DIGIT_CAP)
}

/// Largest `e` with `p^(s+e)` dividing `n* - alpha`, where `n*` is the
/// unique index in `[1, p^s]` congruent to the root `alpha` modulo `p^s`.
/// When the first `s` digits are not all zero this is the zero run at `s`;
/// otherwise `n* = p^s` and the run is read off `p^s - alpha`.
fn excess_at(root: &PadicRoot, s: usize, cap: usize) -> Result<usize> {
    let root = root.extend(s + 1);
    if !root.truncate_value(s).is_zero() {
        return zero_run_length_with_cap(&root, s, cap);
    }
    // p^s - alpha is a root of F(p^s - x), simple since alpha is
    let p = root.prime();
    let ps = BigInt::from(p).pow(s as u32);
    let reflected = reflect_poly(root.source(), &ps);
    let m = BigInt::from(p).pow(root.precision() as u32);
    let start = (&ps - root.value()).mod_floor(&m);
    let image = lift_integer_poly(&reflected, p, start, root.precision(), root.precision())?;
    zero_run_length_with_cap(&image, s, cap)
}

/// Coefficients of `F(c - x)`.
fn reflect_poly(coeffs: &[BigInt], c: &BigInt) -> Vec<BigInt> {
    let lin = RatPoly::new(vec![
        crate::Rational::from_integer(c.clone()),
        crate::Rational::from_integer(BigInt::from(-1)),
    ]);
    let mut acc = RatPoly::zero();
    for a in coeffs.iter().rev() {
        acc = &(&acc * &lin) + &RatPoly::constant(crate::Rational::from_integer(a.clone()));
    }
    (0..coeffs.len()).map(|i| acc.coeff(i).to_integer()).collect()
}

/// Both sides of the prime-power valuation identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerValuation {
    pub p: u64,
    pub s: u32,
    /// `nu_p(u_{p^s})` by summing `nu_p(g(m)) - nu_p(f(m))`.
    pub direct: i64,
    /// The same value assembled from the zero runs of the lifted roots.
    pub digit_formula: i64,
    /// Zero-run excesses for the roots of `f`.
    pub f_runs: Vec<usize>,
    /// Zero-run excesses for the roots of `g`.
    pub g_runs: Vec<usize>,
}

/// `nu_p(u_{p^s})` computed directly and from p-adic digits of the roots of
/// `f` and `g`, for a p-symmetric sequence with `nu_p(u_0) = 0`.
pub fn valuation_at_prime_power(seq: &HypergeomSeq, p: u64, s: u32) -> Result<PrimePowerValuation> {
    let out = valuation_at_prime_power_general(seq, p, s)?;
    let (m_f, m_g) = (out.f_runs.len(), out.g_runs.len());
    if m_f != m_g {
        return Err(Error::NotSymmetric { p, m_f, m_g });
    }
    if padic_valuation(seq.u0(), p) != crate::Valuation::Finite(0) {
        return Err(Error::InvalidArgument(format!(
            "nu_{p}(u0) must be 0; use the general variant"
        )));
    }
    Ok(out)
}

/// General form of the identity: the digit side is
/// `nu_p(u_0) + (m_g - m_f) * (p^(s-1) + ... + 1) + sum(g runs) - sum(f runs)`.
pub fn valuation_at_prime_power_general(seq: &HypergeomSeq, p: u64, s: u32) -> Result<PrimePowerValuation> {
    let fg = seq.f() * seq.g();
    if !is_hensel_prime(&fg, p) {
        return Err(Error::NotHenselPrime(p));
    }
    let u0v = padic_valuation(seq.u0(), p)
        .finite()
        .ok_or_else(|| Error::InvalidArgument("u0 = 0".into()))?;
    let n = p
        .checked_pow(s)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{s} overflows")))?;
    let direct = seq
        .term_valuation(n, p)
        .finite()
        .ok_or_else(|| Error::InvalidArgument("sequence vanishes".into()))?;

    let su = s as usize;
    let runs = |poly: &RatPoly| -> Result<Vec<usize>> {
        lift_all_roots(poly, p, su + 2)?
            .iter()
            .map(|root| excess_at(root, su, DEFAULT_DIGIT_CAP))
            .collect()
    };
    let f_runs = runs(seq.f())?;
    let g_runs = runs(seq.g())?;
    let geometric: i64 = (0..s).map(|j| p.pow(j) as i64).sum();
    let digit_formula =
        u0v + (g_runs.len() as i64 - f_runs.len() as i64) * geometric + g_runs.iter().sum::<usize>() as i64
            - f_runs.iter().sum::<usize>() as i64;
    Ok(PrimePowerValuation {
        p,
        s,
        direct,
        digit_formula,
        f_runs,
        g_runs,
    })
}

/// Empirical frequencies of length-`len` digit patterns.
#[derive(Clone, Debug, PartialEq)]
pub struct DigitFrequency {
    pub p: u64,
    pub pattern_length: usize,
    /// Indexed by the pattern read as a base-p number, first digit least
    /// significant.
    pub counts: Vec<u64>,
    pub windows: u64,
}

impl DigitFrequency {
    pub fn frequency(&self, pattern: &[u64]) -> f64 {
        let idx = pattern
            .iter()
            .rev()
            .fold(0usize, |acc, &d| acc * self.p as usize + d as usize);
        self.counts[idx] as f64 / self.windows.max(1) as f64
    }

    pub fn frequencies(&self) -> Vec<f64> {
        self.counts
            .iter()
            .map(|&c| c as f64 / self.windows.max(1) as f64)
            .collect()
    }
}

/// Counts every window of `pattern_length` consecutive digits.
pub fn digit_frequency(root: &PadicRoot, pattern_length: usize) -> Result<DigitFrequency> {
    let p = root.prime();
    if pattern_length == 0 {
        return Err(Error::InvalidArgument("pattern length must be positive".into()));
    }
    let size = (p as usize)
        .checked_pow(pattern_length as u32)
        .filter(|&n| n <= 1 << 24)
        .ok_or_else(|| Error::InvalidArgument("too many patterns".into()))?;
    let mut counts = vec![0u64; size];
    let digits = root.digits();
    let mut windows = 0;
    for w in digits.windows(pattern_length) {
        let idx = w.iter().rev().fold(0usize, |acc, &d| acc * p as usize + d as usize);
        counts[idx] += 1;
        windows += 1;
    }
    Ok(DigitFrequency {
        p,
        pattern_length,
        counts,
        windows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{rat, sieve};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_p(&p(&[-2, 0, 1]), 7).unwrap().coeffs(), &[5, 0, 1]);
        let half_x = RatPoly::new(vec![rat(0, 1), rat(1, 2)]);
        assert_eq!(reduce_mod_p(&half_x, 5).unwrap().coeffs(), &[0, 3]);
        assert!(matches!(reduce_mod_p(&half_x, 2), Err(Error::BadPrime(2))));
    }

    #[test]
    fn root_count_examples() {
        assert_eq!(count_roots_mod_p(&p(&[-2, 0, 1]), 7).unwrap(), 2);
        assert_eq!(count_roots_mod_p(&p(&[-2, 0, 1]), 5).unwrap(), 0);
        assert_eq!(roots_mod_p(&p(&[-2, 0, 1]), 7).unwrap(), vec![3, 4]);
    }

    #[test]
    fn multiplicity_counts() {
        // x^2 (x - 1) mod 5: roots 0 (twice) and 1
        let f = p(&[0, 0, -1, 1]);
        assert_eq!(count_roots_mod_p(&f, 5).unwrap(), 3);
        assert_eq!(count_distinct_roots_mod_p(&f, 5).unwrap(), 2);
    }

    #[test]
    fn root_count_matches_brute_force() {
        let polys = [
            p(&[1, 0, -10, 0, 1]),
            p(&[6, -5, 1]),
            p(&[-3, 1, 4, 0, 2, 1]),
            p(&[1, 1, 1, 1, 1, 1, 1]),
            p(&[-7, 0, 0, 1]),
        ];
        for prime in sieve(200) {
            for f in &polys {
                let fbar = reduce_mod_p(f, prime).unwrap();
                let brute = (0..prime).filter(|&a| fbar.eval(a) == 0).count();
                assert_eq!(count_distinct_roots_mod_p(f, prime).unwrap(), brute);
                let listed = roots_mod_p(f, prime).unwrap();
                assert_eq!(listed.len(), brute);
                assert!(listed.iter().all(|&r| fbar.eval(r) == 0));
            }
        }
    }

    #[test]
    fn large_prime_roots() {
        // x^2 - 2 modulo a large prime = 7 mod 8
        let prime = 1_000_000_007u64; // = 7 mod 8, so 2 is a residue
        let roots = roots_mod_p(&p(&[-2, 0, 1]), prime).unwrap();
        assert_eq!(roots.len(), 2);
        for r in roots {
            assert_eq!(mul_mod(r, r, prime), 2);
        }
    }

    #[test]
    fn hensel_prime_examples() {
        assert!(is_hensel_prime(&p(&[-2, 0, 1]), 7));
        assert!(!is_hensel_prime(&p(&[-2, 0, 1]), 2));
        for prime in [2, 3, 5, 7, 11] {
            assert!(!is_hensel_prime(&p(&[1, -2, 1]), prime));
        }
        // leading coefficient divisible by p
        assert!(!is_hensel_prime(&p(&[1, 3]), 3));
        assert!(is_hensel_prime(&p(&[1]), 3));
    }

    #[test]
    fn lift_examples() {
        let r = hensel_lift(&p(&[-2, 0, 1]), 7, &BigInt::from(3), 2).unwrap();
        assert_eq!(r.value(), &BigInt::from(10));
        assert_eq!(r.digits(), &[3, 1]);
        let r = hensel_lift(&p(&[-5, 1]), 3, &BigInt::from(2), 4).unwrap();
        assert_eq!(r.value(), &BigInt::from(5));
        assert_eq!(r.digits(), &[2, 1, 0, 0]);
        let r = hensel_lift(&p(&[-2, 0, 1]), 7, &BigInt::from(3), 1).unwrap();
        assert_eq!(r.value(), &BigInt::from(3));
        assert!(matches!(
            hensel_lift(&p(&[-2, 0, 1]), 7, &BigInt::from(2), 3),
            Err(Error::NotARoot { .. })
        ));
        assert!(matches!(
            hensel_lift(&p(&[0, 0, 1]), 7, &BigInt::from(0), 3),
            Err(Error::NotSimpleRoot { .. })
        ));
    }

    #[test]
    fn lift_is_coherent() {
        let f = p(&[-2, 0, 1]);
        for k in 1..30 {
            let short = hensel_lift(&f, 7, &BigInt::from(3), k).unwrap();
            let long = hensel_lift(&f, 7, &BigInt::from(3), 2 * k).unwrap();
            assert_eq!(long.truncate_value(k), *short.value());
            let m = BigInt::from(7).pow(2 * k as u32);
            assert!(eval_int_poly(long.source(), long.value()).mod_floor(&m).is_zero());
        }
    }

    #[test]
    fn lift_with_rational_coefficients() {
        // x^2/3 - 2/3 has the same 7-adic roots as x^2 - 2
        let f = RatPoly::new(vec![rat(-2, 3), rat(0, 1), rat(1, 3)]);
        let r = hensel_lift(&f, 7, &BigInt::from(3), 5).unwrap();
        let g = hensel_lift(&p(&[-2, 0, 1]), 7, &BigInt::from(3), 5).unwrap();
        assert_eq!(r.value(), g.value());
    }

    #[test]
    fn zero_runs() {
        // x - 45 in base 3: 45 = 0 + 0*3 + 2*9 + 1*27
        let r = hensel_lift(&p(&[-45, 1]), 3, &BigInt::from(0), 6).unwrap();
        assert_eq!(r.digits(), &[0, 0, 2, 1, 0, 0]);
        assert_eq!(zero_run_length(&r, 0).unwrap(), 2);
        assert_eq!(zero_run_length(&r, 2).unwrap(), 0);
        // the tail is zero forever
        assert!(matches!(
            zero_run_length_with_cap(&r, 4, 64),
            Err(Error::PrecisionExhausted(64))
        ));
        let sqrt2 = hensel_lift(&p(&[-2, 0, 1]), 7, &BigInt::from(3), 2).unwrap();
        assert_eq!(zero_run_length(&sqrt2, 1).unwrap(), 0);
    }

    #[test]
    fn zero_run_extends_precision() {
        // a root whose digits start with a long zero run: x - 3^20 in base 3
        let big = BigInt::from(3).pow(20u32);
        let f = RatPoly::new(vec![crate::Rational::from_integer(-big), rat(1, 1)]);
        let r = hensel_lift(&f, 3, &BigInt::from(0), 4).unwrap();
        assert_eq!(zero_run_length(&r, 0).unwrap(), 20);
    }

    #[test]
    fn digit_frequencies() {
        let five = hensel_lift(&p(&[-5, 1]), 3, &BigInt::from(2), 1000).unwrap();
        let freq = digit_frequency(&five, 1).unwrap();
        assert!(freq.frequency(&[0]) > 0.99);
        let sqrt2 = hensel_lift(&p(&[-2, 0, 1]), 7, &BigInt::from(3), 2000).unwrap();
        let freq = digit_frequency(&sqrt2, 2).unwrap();
        let total: f64 = freq.frequencies().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(sqrt2.digit_dump().split(' ').count(), 2000);
    }

    #[test]
    fn prime_power_identity_examples() {
        let seq = crate::hyperseq::make_sequence(p(&[-2, 0, 1]), p(&[-3, 0, 1]), rat(1, 1)).unwrap();
        for s in 0..=2 {
            let v = valuation_at_prime_power(&seq, 23, s).unwrap();
            assert_eq!(v.direct, v.digit_formula, "s = {s}");
            assert_eq!(v.f_runs.len(), 2);
        }
        assert!(matches!(
            valuation_at_prime_power(&seq, 5, 1),
            Err(Error::NotSymmetric { p: 5, m_f: 0, m_g: 0 }) | Ok(_)
        ));
    }

    #[test]
    fn prime_power_identity_general() {
        // roots of g include 0, so some n* = p^s cases occur
        let seqs = [
            (p(&[-2, 0, 1]), p(&[0, 1]), rat(1, 1)),
            (p(&[1, 1]), p(&[-7, 0, 1]), rat(3, 5)),
            (p(&[7, 3, 1]), p(&[0, -2, 0, 1]), rat(2, 1)),
            (p(&[1]), p(&[0, 1]), rat(1, 1)),
        ];
        for (f, g, u0) in seqs {
            let seq = crate::hyperseq::make_sequence(f, g, u0).unwrap();
            let fg = seq.f() * seq.g();
            for prime in sieve(40).into_iter().filter(|&q| is_hensel_prime(&fg, q)) {
                for s in 0..=3u32 {
                    if prime.pow(s) > 30_000 {
                        continue;
                    }
                    if crate::numtheory::padic_valuation(seq.u0(), prime).is_infinite() {
                        continue;
                    }
                    let v = valuation_at_prime_power_general(&seq, prime, s).unwrap();
                    assert_eq!(v.direct, v.digit_formula, "{seq} at p = {prime}, s = {s}");
                }
            }
        }
    }
}
