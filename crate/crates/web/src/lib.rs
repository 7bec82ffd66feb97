//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic can be tested natively; the exports only convert errors.

use hypergeom::hyperseq::{height_profile, make_sequence, HypergeomSeq};
use hypergeom::parse::{parse_poly, parse_rational};
use hypergeom::quadratic::equidistribution_sample;
use hypergeom::{Rational, Valuation};
use num_bigint::BigInt;
use wasm_bindgen::prelude::*;

/// Largest index the page may request; keeps a click from freezing the tab.
const MAX_TERMS: u64 = 20_000;
const MAX_PRIME_LIMIT: u64 = 2_000_000;

fn sequence(f: &str, g: &str, u0: &str) -> Result<HypergeomSeq, String> {
    let f = parse_poly(f).map_err(|e| format!("f: {e}"))?;
    let g = parse_poly(g).map_err(|e| format!("g: {e}"))?;
    let u0 = parse_rational(u0).map_err(|e| format!("u0: {e}"))?;
    make_sequence(f, g, u0).map_err(|e| e.to_string())
}

fn check_terms(n_max: u64) -> Result<(), String> {
    if n_max == 0 || n_max > MAX_TERMS {
        return Err(format!("n must be between 1 and {MAX_TERMS}"));
    }
    Ok(())
}

/// `h(u_n)` for `n = 0..=n_max`.
pub fn heights(f: &str, g: &str, u0: &str, n_max: u64) -> Result<Vec<f64>, String> {
    check_terms(n_max)?;
    let seq = sequence(f, g, u0)?;
    let prof = height_profile(&seq, n_max, 1, None).map_err(|e| e.to_string())?;
    Ok(prof.rows.iter().map(|r| r.height).collect())
}

/// `nu_p(u_n)` for `n = 0..=n_max`; zero terms come back as `NaN`.
pub fn valuations(f: &str, g: &str, u0: &str, p: u32, n_max: u64) -> Result<Vec<f64>, String> {
    check_terms(n_max)?;
    if !hypergeom::numtheory::is_prime_u64(p as u64) {
        return Err(format!("{p} is not prime"));
    }
    let seq = sequence(f, g, u0)?;
    Ok(seq
        .valuation_series(p as u64, n_max)
        .into_iter()
        .map(|v| match v {
            Valuation::Finite(k) => k as f64,
            Valuation::Infinite => f64::NAN,
        })
        .collect())
}

/// Bin frequencies of `rep(r +- s sqrt(delta)) / p`, followed by the star
/// discrepancy and the number of primes used.
pub fn histogram(delta: i64, r: &str, s: &str, p_limit: u64, bins: usize) -> Result<Vec<f64>, String> {
    if p_limit > MAX_PRIME_LIMIT {
        return Err(format!("prime limit capped at {MAX_PRIME_LIMIT}"));
    }
    let r: Rational = parse_rational(r).map_err(|e| format!("r: {e}"))?;
    let s: Rational = parse_rational(s).map_err(|e| format!("s: {e}"))?;
    let rep = equidistribution_sample(&BigInt::from(delta), 1, 0, &r, &s, p_limit, bins).map_err(|e| e.to_string())?;
    let mut out: Vec<f64> = rep.bins.iter().map(|b| b.2).collect();
    out.push(rep.star_discrepancy);
    out.push(rep.primes_used as f64);
    Ok(out)
}

#[wasm_bindgen]
pub fn height_curve(f: &str, g: &str, u0: &str, n_max: u32) -> Result<Vec<f64>, JsError> {
    heights(f, g, u0, n_max as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn valuation_curve(f: &str, g: &str, u0: &str, p: u32, n_max: u32) -> Result<Vec<f64>, JsError> {
    valuations(f, g, u0, p, n_max as u64).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn equidistribution_histogram(delta: i32, r: &str, s: &str, p_limit: u32, bins: u32) -> Result<Vec<f64>, JsError> {
    histogram(delta as i64, r, s, p_limit as u64, bins as usize).map_err(|e| JsError::new(&e))
}
