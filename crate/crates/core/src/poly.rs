//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numtheory::Rational;

/// A polynomial with rational coefficients, `coeffs[i]` multiplying `x^i`.
/// The leading coefficient is nonzero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    /// The monic linear polynomial `x - root`.
    pub fn linear(root: Rational) -> Self {
        Self::new(vec![-root, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    /// Degree as `usize`; zero for the zero polynomial.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_int(&self, x: &BigInt) -> Rational {
        self.eval(&Rational::from_integer(x.clone()))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(i.into()))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = RatPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Division with remainder. Panics on division by zero.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.degree() < d.degree() {
            return (RatPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dl = d.leading().recip();
        let dd = d.deg();
        let mut quot = vec![Rational::zero(); self.deg() - dd + 1];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (RatPoly::new(quot), RatPoly::new(rem))
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn exact_div(&self, d: &RatPoly) -> Option<RatPoly> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// `p(x + d)`, by Horner's scheme.
    pub fn shift(&self, d: &Rational) -> RatPoly {
        let lin = RatPoly::new(vec![d.clone(), Rational::one()]);
        let mut acc = RatPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &RatPoly::constant(c.clone());
        }
        acc
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Splits `self = scale * prim` where `prim` has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive_part(&self) -> (Rational, Vec<BigInt>) {
        if self.is_zero() {
            return (Rational::zero(), Vec::new());
        }
        let l = self.denominator_lcm();
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        let mut content = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        let prim = ints.iter().map(|c| c / &content).collect();
        (Rational::new(content, l), prim)
    }

    /// Coefficients scaled by the denominator lcm, i.e. an integer polynomial
    /// differing from `self` by a positive integer factor.
    pub fn cleared(&self) -> (BigInt, Vec<BigInt>) {
        let l = self.denominator_lcm();
        let ints = self
            .coeffs
            .iter()
            .map(|c| (c * Rational::from_integer(l.clone())).to_integer())
            .collect();
        (l, ints)
    }

    /// Canonical comparison key: degree first, then coefficients from the
    /// leading one down.
    pub fn canonical_cmp(&self, other: &RatPoly) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

/// Evaluates an integer polynomial at an integer point.
pub fn eval_int_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// Evaluates an integer polynomial at a machine integer, staying in `i128`
/// while the intermediate values fit.
pub fn eval_int_poly_small(coeffs: &[BigInt], small: &[i128], x: i64) -> BigInt {
    if small.len() == coeffs.len() {
        let mut acc: i128 = 0;
        let mut ok = true;
        for &c in small.iter().rev() {
            match acc.checked_mul(x as i128).and_then(|v| v.checked_add(c)) {
                Some(v) => acc = v,
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            return BigInt::from(acc);
        }
    }
    eval_int_poly(coeffs, &BigInt::from(x))
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({self})")
    }
}

/// Canonical text form, highest degree first, e.g. `x^2 - 2*x + 1/3`.
/// The output is accepted by the polynomial parser.
impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if i == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, rhs: RatPoly) -> RatPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Monic greatest common divisor over the rationals; `gcd(0, 0)` is zero.
pub fn poly_gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let r = a.div_rem(&b).1;
        // keep coefficient growth in check
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Discriminant `b^2 - 4ac` of a quadratic.
pub fn discriminant_quadratic(p: &RatPoly) -> Result<Rational> {
    if p.degree() != 2 {
        return Err(Error::WrongDegree {
            expected: 2,
            got: p.degree(),
        });
    }
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    Ok(&b * &b - Rational::from_integer(4.into()) * a * c)
}

/// Finds `d` with `h(x) = h2(x + d)` for monic `h`, `h2` of equal degree.
pub fn shift_equivalent(h: &RatPoly, h2: &RatPoly) -> Result<Option<BigInt>> {
    if !h.is_monic() || !h2.is_monic() {
        return Err(Error::NotMonic);
    }
    if h.degree() != h2.degree() {
        return Err(Error::DegreeMismatch(h.deg(), h2.deg()));
    }
    let n = h.deg();
    if n == 0 {
        return Ok(Some(BigInt::zero()));
    }
    // h2(x+d) has x^(n-1) coefficient c2 + n*d
    let d = (h.coeff(n - 1) - h2.coeff(n - 1)) / Rational::from_integer(n.into());
    if !d.is_integer() {
        return Ok(None);
    }
    Ok((h2.shift(&d) == *h).then(|| d.to_integer()))
}

/// Integer-coefficient helper shared by root searches: primitive integer
/// coefficients with the factor `x^k` removed, plus `k`.
fn strip_zero_roots(prim: &[BigInt]) -> (Vec<BigInt>, usize) {
    let k = prim.iter().take_while(|c| c.is_zero()).count();
    (prim[k..].to_vec(), k)
}

/// Positive divisors of a nonzero integer.
pub(crate) fn divisors(n: &BigInt) -> Vec<BigInt> {
    use crate::numtheory::factor_integer;
    let mut divs = vec![BigInt::one()];
    for (p, e) in factor_integer(n.magnitude()) {
        let p = BigInt::from(p);
        let len = divs.len();
        let mut pk = BigInt::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..len {
                divs.push(&divs[i] * &pk);
            }
        }
    }
    divs.sort();
    divs
}

/// Cauchy bound on the absolute value of any root of an integer polynomial.
fn cauchy_bound(coeffs: &[BigInt]) -> BigInt {
    let lead = coeffs.last().unwrap().abs();
    let max = coeffs[..coeffs.len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    BigInt::one() + max / lead + BigInt::one()
}

/// All non-negative integer roots, ascending.
pub fn nonnegative_integer_roots(p: &RatPoly) -> Vec<BigInt> {
    integer_roots(p).into_iter().filter(|r| !r.is_negative()).collect()
}

/// All positive integer roots, ascending.
pub fn positive_integer_roots(p: &RatPoly) -> Vec<BigInt> {
    integer_roots(p).into_iter().filter(|r| r.is_positive()).collect()
}

/// All integer roots, ascending, by scanning divisors of the constant term
/// within the Cauchy bound.
pub fn integer_roots(p: &RatPoly) -> Vec<BigInt> {
    assert!(!p.is_zero(), "integer roots of the zero polynomial");
    let (_, prim) = p.primitive_part();
    let (reduced, k) = strip_zero_roots(&prim);
    let mut roots = Vec::new();
    if k > 0 {
        roots.push(BigInt::zero());
    }
    if reduced.len() > 1 {
        let bound = cauchy_bound(&reduced);
        for d in divisors(&reduced[0]) {
            if d > bound {
                break;
            }
            for cand in [d.clone(), -d] {
                if eval_int_poly(&reduced, &cand).is_zero() {
                    roots.push(cand);
                }
            }
        }
    }
    roots.sort();
    roots
}

/// All rational roots (without multiplicity), by the rational root theorem.
pub fn rational_roots(p: &RatPoly) -> Vec<Rational> {
    assert!(!p.is_zero(), "rational roots of the zero polynomial");
    let (_, prim) = p.primitive_part();
    let (reduced, k) = strip_zero_roots(&prim);
    let mut roots = Vec::new();
    if k > 0 {
        roots.push(Rational::zero());
    }
    if reduced.len() > 1 {
        let lead = reduced.last().unwrap().clone();
        let nums = divisors(&reduced[0]);
        let dens = divisors(&lead);
        let poly = RatPoly::new(reduced.iter().map(|c| Rational::from_integer(c.clone())).collect());
        let bound = Rational::from_integer(cauchy_bound(&reduced));
        for n in &nums {
            for d in &dens {
                if !n.gcd(d).is_one() {
                    continue;
                }
                let r = Rational::new(n.clone(), d.clone());
                if r > bound {
                    continue;
                }
                for cand in [r.clone(), -r] {
                    if poly.eval(&cand).is_zero() {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

/// Quotient of two polynomials in lowest terms with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    numer: RatPoly,
    denom: RatPoly,
}

impl RationalFunction {
    pub fn new(numer: RatPoly, denom: RatPoly) -> Result<Self> {
        if denom.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = poly_gcd(&numer, &denom);
        let numer = numer.exact_div(&g).expect("gcd divides");
        let denom = denom.exact_div(&g).expect("gcd divides");
        let lc = denom.leading();
        Ok(RationalFunction {
            numer: numer.scale(&lc.recip()),
            denom: denom.monic(),
        })
    }

    pub fn numer(&self) -> &RatPoly {
        &self.numer
    }

    pub fn denom(&self) -> &RatPoly {
        &self.denom
    }

    /// `max(deg numer, deg denom)`.
    pub fn degree(&self) -> usize {
        self.numer.deg().max(self.denom.deg())
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &Rational) -> Option<Rational> {
        let d = self.denom.eval(x);
        (!d.is_zero()).then(|| self.numer.eval(x) / d)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom.is_one_poly() {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "({}) / ({})", self.numer, self.denom)
        }
    }
}

impl RatPoly {
    fn is_one_poly(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::{int, rat};

    fn p(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&p(&[-1, 0, 1]), &p(&[-1, 1])), p(&[-1, 1]));
        assert_eq!(poly_gcd(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])), RatPoly::one());
        assert_eq!(poly_gcd(&RatPoly::zero(), &p(&[1, 1])), p(&[1, 1]));
        assert_eq!(poly_gcd(&p(&[2, 2]), &RatPoly::zero()), p(&[1, 1]));
    }

    #[test]
    fn division_reconstructs() {
        let a = p(&[3, -1, 4, 1, -5, 9]);
        let b = p(&[2, 0, 7]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant_quadratic(&p(&[-2, 0, 1])).unwrap(), int(8));
        assert_eq!(discriminant_quadratic(&p(&[-1, -2, 1])).unwrap(), int(8));
        assert_eq!(discriminant_quadratic(&p(&[1, 0, 1])).unwrap(), int(-4));
        assert!(matches!(
            discriminant_quadratic(&p(&[1, 1])),
            Err(Error::WrongDegree { expected: 2, got: 1 })
        ));
    }

    #[test]
    fn shift_examples() {
        assert_eq!(shift_equivalent(&p(&[2, 1]), &p(&[1, 1])).unwrap(), Some(1.into()));
        assert_eq!(shift_equivalent(&p(&[-2, 0, 1]), &p(&[-3, 0, 1])).unwrap(), None);
        let h = p(&[5, -3, 0, 1]);
        assert_eq!(shift_equivalent(&h, &h).unwrap(), Some(0.into()));
        assert!(matches!(
            shift_equivalent(&p(&[1, 2]), &p(&[1, 1])),
            Err(Error::NotMonic)
        ));
        assert!(matches!(
            shift_equivalent(&p(&[1, 1]), &p(&[1, 0, 1])),
            Err(Error::DegreeMismatch(1, 2))
        ));
        // non-integer candidate shift
        assert_eq!(shift_equivalent(&p(&[1, 1]), &p(&[0, 1])).unwrap(), Some(1.into()));
        let half = RatPoly::new(vec![rat(1, 2), int(1)]);
        assert_eq!(shift_equivalent(&half, &p(&[0, 1])).unwrap(), None);
    }

    #[test]
    fn nonnegative_root_examples() {
        assert_eq!(nonnegative_integer_roots(&p(&[-3, 1])), vec![BigInt::from(3)]);
        assert!(nonnegative_integer_roots(&p(&[2, 1])).is_empty());
        assert_eq!(
            nonnegative_integer_roots(&p(&[6, -5, 1])),
            vec![BigInt::from(2), BigInt::from(3)]
        );
        assert_eq!(nonnegative_integer_roots(&p(&[0, 0, 1, 1])), vec![BigInt::zero()]);
        assert!(nonnegative_integer_roots(&p(&[7])).is_empty());
    }

    #[test]
    fn rational_roots_with_denominators() {
        // (2x - 1)(3x + 2)(x - 4)
        let poly = &(&p(&[-1, 2]) * &p(&[2, 3])) * &p(&[-4, 1]);
        assert_eq!(rational_roots(&poly), vec![rat(-2, 3), rat(1, 2), int(4)]);
    }

    #[test]
    fn display_round_trip_shape() {
        let poly = RatPoly::new(vec![rat(1, 3), int(-2), int(0), int(1)]);
        assert_eq!(poly.to_string(), "x^3 - 2*x + 1/3");
        assert_eq!(p(&[0, -1]).to_string(), "-x");
        assert_eq!(RatPoly::zero().to_string(), "0");
    }

    #[test]
    fn shift_matches_evaluation() {
        let h = p(&[1, -4, 0, 2]);
        let s = h.shift(&int(3));
        for x in -5..5 {
            assert_eq!(s.eval(&int(x)), h.eval(&int(x + 3)));
        }
    }

    #[test]
    fn rational_function_reduces() {
        let rf = RationalFunction::new(p(&[-1, 0, 1]), p(&[-2, 2])).unwrap();
        assert_eq!(rf.denom(), &RatPoly::one());
        assert_eq!(rf.numer(), &RatPoly::new(vec![rat(1, 2), rat(1, 2)]));
    }
}
