//! The sequence model: validation, exact terms, incremental valuations,
//! regularization and height profiles.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::factor::factor;
use crate::numtheory::{int_valuation, log_biguint, padic_valuation, weil_height_exact, Rational, Valuation};
use crate::poly::{
    eval_int_poly_small, nonnegative_integer_roots, poly_gcd, positive_integer_roots, shift_equivalent, RatPoly,
    RationalFunction,
};

/// Integer form of a rational polynomial: `p(x) = ints(x) / scale`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct IntForm {
    scale: BigInt,
    ints: Vec<BigInt>,
    small: Vec<i128>,
}

impl IntForm {
    fn new(p: &RatPoly) -> Self {
        let (scale, ints) = p.cleared();
        let small = ints.iter().map_while(|c| c.to_i128()).collect();
        IntForm { scale, ints, small }
    }

    fn eval(&self, m: u64) -> BigInt {
        match i64::try_from(m) {
            Ok(x) => eval_int_poly_small(&self.ints, &self.small, x),
            Err(_) => crate::poly::eval_int_poly(&self.ints, &BigInt::from(m)),
        }
    }
}

/// A validated first-order recurrence `f(n) u_n = g(n) u_{n-1}` with `f`, `g`
/// coprime and `f(n) != 0` for every `n >= 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct HypergeomSeq {
    f: RatPoly,
    g: RatPoly,
    u0: Rational,
    g_positive_roots: Vec<BigInt>,
    cancelled: RatPoly,
    fi: IntForm,
    gi: IntForm,
}

/// Builds the canonical sequence: common factors of `f` and `g` are divided
/// out, and `f` may not vanish at a non-negative integer.
pub fn make_sequence(f: RatPoly, g: RatPoly, u0: Rational) -> Result<HypergeomSeq> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let common = poly_gcd(&f, &g);
    let f = f.exact_div(&common).expect("gcd divides");
    let g = g.exact_div(&common).expect("gcd divides");
    let bad = nonnegative_integer_roots(&f);
    if !bad.is_empty() {
        return Err(Error::InvalidF(bad));
    }
    let g_positive_roots = positive_integer_roots(&g);
    Ok(HypergeomSeq {
        fi: IntForm::new(&f),
        gi: IntForm::new(&g),
        f,
        g,
        u0,
        g_positive_roots,
        cancelled: common,
    })
}

impl HypergeomSeq {
    pub fn f(&self) -> &RatPoly {
        &self.f
    }

    pub fn g(&self) -> &RatPoly {
        &self.g
    }

    pub fn u0(&self) -> &Rational {
        &self.u0
    }

    /// Monic common factor removed during construction.
    pub fn cancelled_factor(&self) -> &RatPoly {
        &self.cancelled
    }

    /// Positive integer roots of `g`; non-empty means `u_n = 0` from the
    /// smallest such root on.
    pub fn g_positive_roots(&self) -> &[BigInt] {
        &self.g_positive_roots
    }

    pub fn is_zero_start(&self) -> bool {
        self.u0.is_zero()
    }

    /// True when the sequence is eventually zero.
    pub fn is_degenerate(&self) -> bool {
        self.is_zero_start() || !self.g_positive_roots.is_empty()
    }

    /// First index at which the sequence is zero, if any.
    pub fn first_zero_index(&self) -> Option<u64> {
        if self.is_zero_start() {
            return Some(0);
        }
        self.g_positive_roots.first().and_then(|r| r.to_u64())
    }

    /// `(num, den)` integers with `g(m) / f(m) = num / den`.
    pub(crate) fn ratio_parts(&self, m: u64) -> (BigInt, BigInt) {
        let num = self.gi.eval(m) * &self.fi.scale;
        let den = self.fi.eval(m) * &self.gi.scale;
        (num, den)
    }

    /// `(scale_f, F, scale_g, G)` with `f = F / scale_f`, `g = G / scale_g`
    /// and `F`, `G` integer coefficient lists.
    pub(crate) fn int_forms(&self) -> (&BigInt, &[BigInt], &BigInt, &[BigInt]) {
        (&self.fi.scale, &self.fi.ints, &self.gi.scale, &self.gi.ints)
    }

    pub fn cursor(&self) -> TermCursor<'_> {
        TermCursor::new(self)
    }

    /// Exact `u_n`.
    pub fn term(&self, n: u64) -> Rational {
        let mut c = self.cursor();
        c.advance_to(n);
        c.value()
    }

    /// `nu_p(u_n)`, summed over the factors without forming `u_n`.
    pub fn term_valuation(&self, n: u64, p: u64) -> Valuation {
        let Valuation::Finite(mut v) = padic_valuation(&self.u0, p) else {
            return Valuation::Infinite;
        };
        let scale_shift = int_valuation(&self.fi.scale, p) as i64 - int_valuation(&self.gi.scale, p) as i64;
        for m in 1..=n {
            let gm = self.gi.eval(m);
            if gm.is_zero() {
                return Valuation::Infinite;
            }
            let fm = self.fi.eval(m);
            v += int_valuation(&gm, p) as i64 - int_valuation(&fm, p) as i64 + scale_shift;
        }
        Valuation::Finite(v)
    }

    /// `nu_p(u_0), ..., nu_p(u_{n_max})` in one pass.
    pub fn valuation_series(&self, p: u64, n_max: u64) -> Vec<Valuation> {
        let mut out = Vec::with_capacity(n_max as usize + 1);
        let mut cur = padic_valuation(&self.u0, p);
        out.push(cur);
        let scale_shift = int_valuation(&self.fi.scale, p) as i64 - int_valuation(&self.gi.scale, p) as i64;
        for m in 1..=n_max {
            if let Valuation::Finite(v) = cur {
                let gm = self.gi.eval(m);
                cur = if gm.is_zero() {
                    Valuation::Infinite
                } else {
                    let fm = self.fi.eval(m);
                    Valuation::Finite(v + int_valuation(&gm, p) as i64 - int_valuation(&fm, p) as i64 + scale_shift)
                };
            }
            out.push(cur);
        }
        out
    }

    pub fn spec_string(&self) -> String {
        format!("f = {}; g = {}; u0 = {}", self.f, self.g, self.u0)
    }
}

impl fmt::Debug for HypergeomSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HypergeomSeq({})", self.spec_string())
    }
}

impl fmt::Display for HypergeomSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.spec_string())
    }
}

/// `gcd(big, small)` without running a full gcd on the big operand.
fn gcd_small(big: &BigInt, small: &BigInt) -> BigInt {
    if small.is_zero() {
        return big.abs();
    }
    let r = big % small;
    small.gcd(&r)
}

/// Streams `u_0, u_1, ...` keeping the running value in lowest terms.
#[derive(Clone, Debug)]
pub struct TermCursor<'a> {
    seq: &'a HypergeomSeq,
    n: u64,
    numer: BigInt,
    denom: BigInt,
    tracked: Vec<(u64, Valuation)>,
}

impl<'a> TermCursor<'a> {
    pub fn new(seq: &'a HypergeomSeq) -> Self {
        TermCursor {
            seq,
            n: 0,
            numer: seq.u0.numer().clone(),
            denom: seq.u0.denom().clone(),
            tracked: Vec::new(),
        }
    }

    /// Starts from a known checkpoint `u_n = value`.
    pub fn resume(seq: &'a HypergeomSeq, n: u64, value: &Rational) -> Self {
        TermCursor {
            seq,
            n,
            numer: value.numer().clone(),
            denom: value.denom().clone(),
            tracked: Vec::new(),
        }
    }

    /// Also maintain `nu_p` of the current term, updated per step.
    pub fn track_prime(&mut self, p: u64) {
        let v = padic_valuation(&self.value(), p);
        self.tracked.push((p, v));
    }

    pub fn index(&self) -> u64 {
        self.n
    }

    pub fn value(&self) -> Rational {
        Rational::new_raw(self.numer.clone(), self.denom.clone())
    }

    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    /// Valuation at a tracked prime.
    pub fn valuation(&self, p: u64) -> Option<Valuation> {
        self.tracked.iter().find(|(q, _)| *q == p).map(|(_, v)| *v)
    }

    /// Exact `h_W` integer `max(|a|, b)` of the current term.
    pub fn height_exact(&self) -> BigInt {
        if self.numer.is_zero() {
            return BigInt::one();
        }
        self.numer.abs().max(self.denom.clone())
    }

    pub fn height(&self) -> f64 {
        log_biguint(self.height_exact().magnitude())
    }

    /// Moves to `u_{n+1}`.
    pub fn advance(&mut self) {
        let m = self.n + 1;
        self.n = m;
        if self.numer.is_zero() {
            return;
        }
        let (mut num, mut den) = self.seq.ratio_parts(m);
        if num.is_zero() {
            self.numer = BigInt::zero();
            self.denom = BigInt::one();
            for (_, v) in &mut self.tracked {
                *v = Valuation::Infinite;
            }
            return;
        }
        for (p, v) in &mut self.tracked {
            if let Valuation::Finite(x) = v {
                *x += int_valuation(&num, *p) as i64 - int_valuation(&den, *p) as i64;
            }
        }
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let g3 = num.gcd(&den);
        if !g3.is_one() {
            num /= &g3;
            den /= &g3;
        }
        let g1 = gcd_small(&self.numer, &den);
        let g2 = gcd_small(&self.denom, &num);
        let a = if g1.is_one() {
            self.numer.clone()
        } else {
            &self.numer / &g1
        };
        let b = if g2.is_one() {
            self.denom.clone()
        } else {
            &self.denom / &g2
        };
        self.numer = a * (num / &g2);
        self.denom = b * (den / &g1);
    }

    pub fn advance_to(&mut self, n: u64) {
        assert!(n >= self.n, "cursor cannot move backwards");
        while self.n < n {
            self.advance();
        }
    }
}

/// Which side of the recurrence a factor came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    F,
    G,
}

/// An irreducible factor `h(x + shift)` of `f` or `g`, counted once per
/// multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMember {
    pub poly: RatPoly,
    pub shift: i64,
    pub side: Side,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftClass {
    pub representative: RatPoly,
    pub members: Vec<ClassMember>,
    /// Number of `g` members minus number of `f` members.
    pub gamma: i64,
}

/// `q(n) = constant * prod(numer_i(n)) / prod(denom_j(n))`, kept factored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub constant: Rational,
    pub numer: Vec<RatPoly>,
    pub denom: Vec<RatPoly>,
}

impl Correction {
    fn one() -> Self {
        Correction {
            constant: Rational::one(),
            numer: Vec::new(),
            denom: Vec::new(),
        }
    }

    pub fn eval(&self, n: u64) -> Rational {
        let x = Rational::from_integer(BigInt::from(n));
        let num = self.numer.iter().fold(self.constant.clone(), |acc, p| acc * p.eval(&x));
        let den = self.denom.iter().fold(Rational::one(), |acc, p| acc * p.eval(&x));
        num / den
    }

    pub fn is_one(&self) -> bool {
        let q = self.as_rational_function();
        q.numer() == &RatPoly::one() && q.denom() == &RatPoly::one()
    }

    /// Expanded form in lowest terms.
    pub fn as_rational_function(&self) -> RationalFunction {
        let num = self
            .numer
            .iter()
            .fold(RatPoly::constant(self.constant.clone()), |acc, p| &acc * p);
        let den = self.denom.iter().fold(RatPoly::one(), |acc, p| &acc * p);
        RationalFunction::new(num, den).expect("nonzero denominator")
    }
}

impl fmt::Display for Correction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_rational_function())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularizationResult {
    pub regular_seq: HypergeomSeq,
    pub correction: Correction,
    pub shift_classes: Vec<ShiftClass>,
}

/// Constant and polynomial factors of `prod_{m=1}^n member(m) /
/// prod_{m=1}^n h(m)` for `member(x) = h(x + d)`.
fn telescope(h: &RatPoly, d: i64) -> (Rational, Vec<RatPoly>, Vec<RatPoly>) {
    let at = |m: i64| h.eval(&Rational::from_integer(BigInt::from(m)));
    let shifted = |k: i64| h.shift(&Rational::from_integer(BigInt::from(k)));
    if d >= 0 {
        // prod_{m=n+1}^{n+d} h(m) / prod_{m=1}^{d} h(m)
        let c = (1..=d).fold(Rational::one(), |acc, m| acc * at(m));
        (c.recip(), (1..=d).map(shifted).collect(), Vec::new())
    } else {
        // prod_{m=1-e}^{0} h(m) / prod_{j=0}^{e-1} h(n-j)
        let e = -d;
        let c = (1 - e..=0).fold(Rational::one(), |acc, m| acc * at(m));
        (c, Vec::new(), (0..e).map(|j| shifted(-j)).collect())
    }
}

/// Rewrites the sequence as `u_n = q(n) * v_n` with `v` regular: no two
/// roots of the new `f * g` differ by a nonzero integer.
pub fn regularize(seq: &HypergeomSeq) -> Result<RegularizationResult> {
    if !seq.g_positive_roots.is_empty() {
        return Err(Error::DegenerateSequence(seq.g_positive_roots.clone()));
    }
    let ff = factor(&seq.f);
    let fg = factor(&seq.g);
    for (name, fp) in [("f", &ff), ("g", &fg)] {
        if !fp.is_certified() {
            return Err(Error::UnsupportedFactorization(format!(
                "{name} has a factor that could not be certified irreducible"
            )));
        }
    }

    // (base polynomial, members as (poly, offset from base, side))
    type RawClass = (RatPoly, Vec<(RatPoly, i64, Side)>);
    let mut raw: Vec<RawClass> = Vec::new();
    let members = ff
        .expanded()
        .map(|p| (p, Side::F))
        .chain(fg.expanded().map(|p| (p, Side::G)));
    'outer: for (poly, side) in members {
        for (base, list) in &mut raw {
            if base.deg() != poly.deg() {
                continue;
            }
            if let Some(d) = shift_equivalent(poly, base)? {
                let d = d
                    .to_i64()
                    .ok_or_else(|| Error::InvalidArgument("shift too large".into()))?;
                list.push((poly.clone(), d, side));
                continue 'outer;
            }
        }
        raw.push((poly.clone(), vec![(poly.clone(), 0, side)]));
    }

    let mut classes = Vec::new();
    let mut f_tilde = RatPoly::one();
    let mut g_tilde = RatPoly::constant(seq.g.leading() / seq.f.leading());
    let mut correction = Correction::one();
    for (base, list) in raw {
        // member(x) = base(x + d); the most negative roots have the largest d
        let top = list.iter().map(|(_, d, _)| *d).max().unwrap();
        let rep = base.shift(&Rational::from_integer(BigInt::from(top)));
        let bad = positive_integer_roots(&rep);
        if !bad.is_empty() {
            return Err(Error::DegenerateSequence(bad));
        }
        let mut gamma = 0i64;
        let mut class_members = Vec::new();
        for (poly, d, side) in list {
            let shift = d - top;
            let (c, num, den) = telescope(&rep, shift);
            match side {
                Side::G => {
                    gamma += 1;
                    correction.constant *= c;
                    correction.numer.extend(num);
                    correction.denom.extend(den);
                }
                Side::F => {
                    gamma -= 1;
                    correction.constant /= c;
                    correction.numer.extend(den);
                    correction.denom.extend(num);
                }
            }
            class_members.push(ClassMember { poly, shift, side });
        }
        if gamma > 0 {
            g_tilde = &g_tilde * &rep.pow(gamma as u32);
        } else if gamma < 0 {
            f_tilde = &f_tilde * &rep.pow((-gamma) as u32);
        }
        classes.push(ShiftClass {
            representative: rep,
            members: class_members,
            gamma,
        });
    }
    let regular_seq = make_sequence(f_tilde, g_tilde, seq.u0.clone())?;
    Ok(RegularizationResult {
        regular_seq,
        correction,
        shift_classes: classes,
    })
}

/// True when no two irreducible factors of `f * g` are related by a nonzero
/// integer shift. Returns `None` if the factorization cannot be certified.
pub fn is_regular(seq: &HypergeomSeq) -> Option<bool> {
    let fp = factor(&(&seq.f * &seq.g));
    if !fp.is_certified() {
        return None;
    }
    let polys: Vec<&RatPoly> = fp.factors.iter().map(|f| &f.poly).collect();
    for (i, a) in polys.iter().enumerate() {
        for b in &polys[i + 1..] {
            if a.deg() == b.deg() && shift_equivalent(a, b).ok()?.is_some() {
                return Some(false);
            }
        }
    }
    Some(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightRow {
    pub n: u64,
    /// `max(|a|, b)` for `u_n = a/b`; the height is its logarithm.
    pub height_exact: BigInt,
    pub height: f64,
    pub valuation: Option<Valuation>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HeightProfile {
    pub rows: Vec<HeightRow>,
    /// Minimum of `h(u_n) / n` over `n_max / 2 <= n <= n_max`, `n >= 1`.
    pub growth_constant: f64,
    pub prime: Option<u64>,
}

impl HeightProfile {
    /// CSV with columns `n,height_float,valuation_p`; the last column is
    /// empty without a prime and `inf` for zero terms.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,height_float,valuation_p\n");
        for r in &self.rows {
            let v = r.valuation.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!("{},{:.12},{}\n", r.n, r.height, v));
        }
        out
    }
}

/// Heights of `u_0, ..., u_{n_max}` sampled every `stride` indices (plus the
/// final index), in a single incremental pass.
pub fn height_profile(seq: &HypergeomSeq, n_max: u64, stride: u64, prime: Option<u64>) -> Result<HeightProfile> {
    if n_max < 1 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    if stride < 1 {
        return Err(Error::InvalidArgument("stride must be positive".into()));
    }
    let mut cursor = seq.cursor();
    if let Some(p) = prime {
        cursor.track_prime(p);
    }
    let mut rows = Vec::new();
    let mut growth = f64::INFINITY;
    let from = (n_max / 2).max(1);
    loop {
        let n = cursor.index();
        if n >= from {
            growth = growth.min(cursor.height() / n as f64);
        }
        if n.is_multiple_of(stride) || n == n_max {
            let height_exact = cursor.height_exact();
            rows.push(HeightRow {
                n,
                height: log_biguint(height_exact.magnitude()),
                height_exact,
                valuation: prime.and_then(|p| cursor.valuation(p)),
            });
        }
        if n == n_max {
            break;
        }
        cursor.advance();
    }
    debug_assert_eq!(
        rows.last().map(|r| r.height_exact.clone()),
        Some(weil_height_exact(&cursor.value()))
    );
    Ok(HeightProfile {
        rows,
        growth_constant: growth,
        prime,
    })
}
