//! Exact integer and rational primitives: primality, primes in arithmetic
//! progressions, Legendre symbols, modular square roots, square-free parts,
//! p-adic valuations and Weil heights of rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Builds `n/d` from machine integers. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, (a % m) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// `x mod p` as a value in `[0, p)`.
pub fn mod_u64(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn miller_rabin_u64(n: u64, a: u64) -> bool {
    let d = (n - 1) >> (n - 1).trailing_zeros();
    let s = (n - 1).trailing_zeros();
    let mut x = pow_mod(a, d, n);
    if x == 1 || x == n - 1 {
        return true;
    }
    for _ in 1..s {
        x = mul_mod(x, x, n);
        if x == n - 1 {
            return true;
        }
    }
    false
}

/// Deterministic primality test for 64-bit integers.
///
/// The first twelve primes form a Miller-Rabin witness set that is exact
/// for every `n < 3.3 * 10^24`, which covers the whole `u64` range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    SMALL_PRIMES.iter().all(|&a| miller_rabin_u64(n, a))
}

fn miller_rabin_big(n: &BigUint, a: &BigUint) -> bool {
    let one = BigUint::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let mut x = a.modpow(&d, n);
    if x == one || x == n1 {
        return true;
    }
    for _ in 1..s {
        x = x.modpow(&BigUint::from(2u32), n);
        if x == n1 {
            return true;
        }
    }
    false
}

/// Primality test. Inputs that fit in 64 bits take the deterministic path;
/// larger inputs run Miller-Rabin against the first 64 primes as witnesses.
pub fn is_prime(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let n = n.magnitude();
    let witnesses = PrimeIterator::new(0, 1, u64::MAX).take(64);
    for a in witnesses {
        let a = BigUint::from(a);
        if (n % &a).is_zero() {
            return false;
        }
        if !miller_rabin_big(n, &a) {
            return false;
        }
    }
    true
}

/// Jacobi symbol `(a/n)` for odd `n`.
pub fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n % 2 == 1);
    a %= n;
    let mut sign = 1i8;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    if n == 1 {
        sign
    } else {
        0
    }
}

/// Legendre symbol `(a/p)` for an odd prime `p`.
pub fn legendre(a: &BigInt, p: u64) -> Result<i8> {
    if p == 2 || !is_prime_u64(p) {
        return Err(Error::NotOddPrime(BigInt::from(p)));
    }
    Ok(jacobi(mod_u64(a, p), p))
}

/// Legendre symbol for an odd prime the caller has already validated.
pub(crate) fn legendre_unchecked(a: &BigInt, p: u64) -> i8 {
    jacobi(mod_u64(a, p), p)
}

/// Square root of `a` modulo the odd prime `p` by Tonelli-Shanks, normalized
/// so that `0 <= D < p/2`.
pub fn sqrt_mod(a: &BigInt, p: u64) -> Result<u64> {
    match legendre(a, p)? {
        1 => {}
        _ => return Err(Error::NonResidue { a: a.clone(), p }),
    }
    let a = mod_u64(a, p);
    let root = tonelli_shanks(a, p);
    Ok(root.min(p - root))
}

fn tonelli_shanks(a: u64, p: u64) -> u64 {
    if p % 4 == 3 {
        return pow_mod(a, (p + 1) / 4, p);
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while jacobi(z, p) != -1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// The representative of `r` modulo `p`: the unique integer in `[0, p)`
/// congruent to `r`.
pub fn rep(r: &Rational, p: u64) -> Result<u64> {
    let den = mod_u64(r.denom(), p);
    let inv = inv_mod(den, p).ok_or(Error::BadPrime(p))?;
    Ok(mul_mod(mod_u64(r.numer(), p), inv, p))
}

// ---------------------------------------------------------------------------
// Factorization (only as deep as square-free parts need)

fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

fn pollard_rho_u64(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1u64.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!()
}

fn pollard_rho_big(n: &BigUint) -> BigUint {
    let two = BigUint::from(2u32);
    if n.is_even() {
        return two;
    }
    let mut c = BigUint::one();
    loop {
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut x = two.clone();
        let mut y = two.clone();
        let mut d = BigUint::one();
        while d.is_one() {
            x = f(&x);
            y = f(&f(&y));
            let diff = if x > y { &x - &y } else { &y - &x };
            d = diff.gcd(n);
        }
        if &d != n {
            return d;
        }
        c += 1u32;
    }
}

fn factor_into(n: BigUint, out: &mut Vec<BigUint>) {
    if n.is_one() {
        return;
    }
    if let Some(small) = n.to_u64() {
        if is_prime_u64(small) {
            out.push(n);
            return;
        }
        let d = pollard_rho_u64(small);
        factor_into(BigUint::from(d), out);
        factor_into(BigUint::from(small / d), out);
        return;
    }
    if is_prime(&BigInt::from(n.clone())) {
        out.push(n);
        return;
    }
    let d = pollard_rho_big(&n);
    let rest = &n / &d;
    factor_into(d, out);
    factor_into(rest, out);
}

/// Prime factorization of a positive integer as sorted `(prime, exponent)`
/// pairs. Trial division strips small primes, Pollard's rho splits the rest.
pub fn factor_integer(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "cannot factor zero");
    let mut n = n.clone();
    let mut primes = Vec::new();
    for p in 2u32..1000 {
        if !is_prime_u64(p as u64) {
            continue;
        }
        let bp = BigUint::from(p);
        while (&n % &bp).is_zero() {
            n /= &bp;
            primes.push(bp.clone());
        }
    }
    factor_into(n, &mut primes);
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Square-free part of an integer, sign included; `1` for zero.
pub fn squarefree_part_int(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::one();
    }
    let mut d = BigInt::one();
    for (p, e) in factor_integer(n.magnitude()) {
        if e % 2 == 1 {
            d *= BigInt::from(p);
        }
    }
    if n.is_negative() {
        -d
    } else {
        d
    }
}

/// Square-free part of a rational: the unique square-free integer `d` with
/// `r = q^2 d` for a rational `q`. The square-free part of zero is `1`.
pub fn squarefree_part(r: &Rational) -> BigInt {
    // a/b = (ab) / b^2
    squarefree_part_int(&(r.numer() * r.denom()))
}

// ---------------------------------------------------------------------------
// Valuations and heights

/// A p-adic valuation: a finite integer, or infinity for zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => write!(f, "inf"),
        }
    }
}

/// Exponent of `p` in a nonzero integer.
pub fn int_valuation(n: &BigInt, p: u64) -> u64 {
    debug_assert!(!n.is_zero());
    if let Some(small) = n.to_i128() {
        let mut m = small.unsigned_abs();
        let p = p as u128;
        let mut v = 0;
        while m % p == 0 {
            m /= p;
            v += 1;
        }
        return v;
    }
    let bp = BigInt::from(p);
    let mut v = 0;
    let mut m = n.clone();
    loop {
        let (q, r) = m.div_rem(&bp);
        if !r.is_zero() {
            return v;
        }
        m = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; infinity for zero.
pub fn padic_valuation(r: &Rational, p: u64) -> Valuation {
    if r.is_zero() {
        return Valuation::Infinite;
    }
    Valuation::Finite(int_valuation(r.numer(), p) as i64 - int_valuation(r.denom(), p) as i64)
}

/// Natural logarithm of a positive big integer.
pub fn log_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top = (n >> shift).to_f64().unwrap();
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact Weil height: `max(|a|, |b|)` for `r = a/b` in lowest terms, so that
/// the height itself is the logarithm of this integer. Zero maps to `1`.
pub fn weil_height_exact(r: &Rational) -> BigInt {
    if r.is_zero() {
        return BigInt::one();
    }
    r.numer().abs().max(r.denom().clone())
}

/// Weil height `max(log|a|, log|b|)` on the natural-log scale; zero has height 0.
pub fn weil_height(r: &Rational) -> f64 {
    log_biguint(weil_height_exact(r).magnitude())
}

// ---------------------------------------------------------------------------
// Primes

/// All primes `<= limit`, by the sieve of Eratosthenes.
pub fn sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Iterator over the primes `p <= limit` with `p = a (mod q)`, increasing.
#[derive(Debug, Clone)]
pub struct PrimeIterator {
    current: Option<u64>,
    modulus: u64,
    residue: u64,
    limit: u64,
}

impl PrimeIterator {
    pub fn new(a: u64, q: u64, limit: u64) -> Self {
        assert!(q >= 1 && a < q, "need q >= 1 and 0 <= a < q");
        let g = a.gcd(&q);
        let current = if g > 1 {
            // every candidate is divisible by g, so only p = g can qualify
            (is_prime_u64(g) && g % q == a && g <= limit).then_some(g)
        } else {
            Some(a)
        };
        PrimeIterator {
            current,
            modulus: if g > 1 { 0 } else { q },
            residue: a,
            limit,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn residue(&self) -> u64 {
        self.residue
    }
}

impl Iterator for PrimeIterator {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.current?;
            if c > self.limit {
                self.current = None;
                return None;
            }
            self.current = if self.modulus == 0 {
                None
            } else {
                c.checked_add(self.modulus)
            };
            if is_prime_u64(c) {
                return Some(c);
            }
        }
    }
}

/// Primes `p <= limit` with `p = a (mod q)`.
pub fn primes_in_progression(a: u64, q: u64, limit: u64) -> PrimeIterator {
    PrimeIterator::new(a, q, limit)
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}
