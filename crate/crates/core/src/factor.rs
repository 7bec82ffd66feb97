//! Restricted factorization over the rationals.
//!
//! The pipeline is square-free decomposition, rational-root extraction, and
//! a search for quadratic factors guided by numerically computed complex
//! roots. Every candidate factor is confirmed by exact division, so numeric
//! error can only make the search miss a factor, never report a false one.
//! Any part of degree four or more that survives the search is returned as
//! a single factor that is not certified irreducible.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};

use crate::numtheory::Rational;
use crate::poly::{poly_gcd, rational_roots, RatPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Monic factor.
    pub poly: RatPoly,
    pub multiplicity: u32,
    /// False when the factor is a leftover the pipeline could not split and
    /// could not prove irreducible.
    pub certified: bool,
}

/// `unit * prod(factor^multiplicity)`, factors monic and canonically ordered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredPoly {
    pub unit: Rational,
    pub factors: Vec<Factor>,
}

impl FactoredPoly {
    /// True when every factor is certified irreducible.
    pub fn is_certified(&self) -> bool {
        self.factors.iter().all(|f| f.certified)
    }

    /// True when the factorization is certified and every factor has degree
    /// at most two.
    pub fn is_quadratic_complete(&self) -> bool {
        self.is_certified() && self.factors.iter().all(|f| f.poly.deg() <= 2)
    }

    pub fn max_factor_degree(&self) -> usize {
        self.factors.iter().map(|f| f.poly.deg()).max().unwrap_or(0)
    }

    pub fn reconstruct(&self) -> RatPoly {
        self.factors
            .iter()
            .fold(RatPoly::constant(self.unit.clone()), |acc, f| {
                &acc * &f.poly.pow(f.multiplicity)
            })
    }

    /// Factors repeated according to multiplicity.
    pub fn expanded(&self) -> impl Iterator<Item = &RatPoly> {
        self.factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(&f.poly, f.multiplicity as usize))
    }
}

/// Yun's square-free decomposition of a nonzero polynomial: monic pairwise
/// coprime square-free parts with their multiplicities.
pub fn square_free_decomposition(p: &RatPoly) -> Vec<(RatPoly, u32)> {
    assert!(!p.is_zero(), "square-free decomposition of zero");
    let a = p.monic();
    if a.is_constant() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut c = poly_gcd(&a, &a.derivative());
    let mut w = a.exact_div(&c).expect("gcd divides");
    let mut i = 1;
    while !c.is_constant() {
        let y = poly_gcd(&w, &c);
        let z = w.exact_div(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y).expect("gcd divides");
        w = y;
    }
    if !w.is_constant() {
        out.push((w, i));
    }
    out
}

/// Factors a nonzero polynomial; see the module documentation for scope.
pub fn factor(p: &RatPoly) -> FactoredPoly {
    assert!(!p.is_zero(), "cannot factor the zero polynomial");
    let mut factors = Vec::new();
    for (part, mult) in square_free_decomposition(p) {
        for (poly, certified) in split_square_free(&part) {
            factors.push(Factor {
                poly,
                multiplicity: mult,
                certified,
            });
        }
    }
    factors.sort_by(|a, b| a.poly.canonical_cmp(&b.poly).then(a.multiplicity.cmp(&b.multiplicity)));
    let out = FactoredPoly {
        unit: p.leading(),
        factors,
    };
    debug_assert_eq!(out.reconstruct(), *p);
    out
}

fn split_square_free(s: &RatPoly) -> Vec<(RatPoly, bool)> {
    let mut out = Vec::new();
    let mut rest = s.monic();
    for r in rational_roots(&rest) {
        let lin = RatPoly::linear(r);
        rest = rest.exact_div(&lin).expect("root gives a factor");
        out.push((lin, true));
    }
    // `rest` has no rational roots from here on
    loop {
        match rest.deg() {
            0 => return out,
            2 | 3 => {
                out.push((rest, true));
                return out;
            }
            _ => {}
        }
        match find_quadratic_factor(&rest) {
            Some(q) => {
                rest = rest.exact_div(&q).expect("verified factor");
                out.push((q, true));
            }
            None => {
                out.push((rest, false));
                return out;
            }
        }
    }
}

/// Looks for a monic quadratic factor of a square-free polynomial without
/// rational roots. For a primitive integer polynomial with leading
/// coefficient `a`, any quadratic factor is `x^2 - s x + t` with `a*s` and
/// `a*t` integers, so pairing numeric roots and rounding gives candidates.
fn find_quadratic_factor(p: &RatPoly) -> Option<RatPoly> {
    let (_, prim) = p.primitive_part();
    let a = prim.last()?.clone();
    let coeffs: Vec<f64> = prim.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    if coeffs.iter().any(|c| !c.is_finite()) {
        return None;
    }
    let roots = complex_roots(&coeffs)?;
    let af = a.to_f64()?;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            let s = roots[i] + roots[j];
            let t = roots[i] * roots[j];
            let scale = 1.0 + s.norm() + t.norm();
            if s.im.abs() > 1e-6 * scale || t.im.abs() > 1e-6 * scale {
                continue;
            }
            let (sa, ta) = ((s.re * af).round(), (t.re * af).round());
            if !sa.is_finite() || !ta.is_finite() || sa.abs() > 1e15 || ta.abs() > 1e15 {
                continue;
            }
            let s = Rational::new(BigInt::from(sa as i64), a.clone());
            let t = Rational::new(BigInt::from(ta as i64), a.clone());
            let q = RatPoly::new(vec![t, -s, Rational::one()]);
            if p.div_rem(&q).1.is_zero() {
                return Some(q);
            }
        }
    }
    None
}

/// Complex roots of a real polynomial by the Aberth-Ehrlich iteration.
fn complex_roots(coeffs: &[f64]) -> Option<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| Complex64::new(c / lead, 0.0)).collect();
    let radius = 1.0 + monic[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * (k as f64 + 0.4) / n as f64;
            Complex64::from_polar(0.5 * radius, theta)
        })
        .collect();
    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::zero();
        let mut dp = Complex64::zero();
        for c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (p, dp) = eval(z[k]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let sum: Complex64 = (0..n)
                .filter(|&j| j != k)
                .map(|j| Complex64::one() / (z[k] - z[j]))
                .sum();
            let step = ratio / (Complex64::one() - ratio * sum);
            if step.is_finite() {
                z[k] -= step;
                max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    z.iter().all(|r| r.is_finite()).then_some(z)
}
