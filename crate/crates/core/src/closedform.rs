//! Closed forms for the codimension `C` and the component count `theta`,
//! evaluated in exact rational arithmetic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::kostant::DimensionVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosedFormResult {
    pub n_tilde: usize,
    #[serde(rename = "S")]
    pub s: u64,
    #[serde(rename = "C")]
    pub c: i128,
    pub theta: u128,
}

/// Largest `l` in `1..=n` with `d'_0 + ... + d'_l >= l * d'_l`.
pub fn n_tilde(d_sorted: &DimensionVector) -> Result<usize> {
    if !d_sorted.is_weakly_increasing() {
        return Err(Error::NotIncreasing);
    }
    let d = d_sorted.dims();
    let mut prefix = u128::from(d[0]);
    let mut best = 1;
    for (l, &dl) in d.iter().enumerate().skip(1) {
        prefix += u128::from(dl);
        if prefix >= l as u128 * u128::from(dl) {
            best = l;
        }
    }
    Ok(best)
}

fn floor(x: &BigRational) -> BigRational {
    // inputs are non-negative, so truncation is the floor
    debug_assert!(!x.is_negative());
    BigRational::from_integer(x.numer().div_floor(x.denom()))
}

/// `binomial(n, r)` in `u128`, `None` on overflow.
pub fn binomial(n: u64, r: u64) -> Option<u128> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc * (n - i) is divisible by (i + 1) after the multiplication
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Lower index of the binomial for `theta` as printed: `S - n~ floor(S/n~ + 1/2)`.
/// Negative whenever the fractional part of `S/n~` is at least one half.
pub fn theta_index_literal(n_tilde: usize, s: u64) -> i128 {
    let n = i128::from(n_tilde as u64);
    let s = i128::from(s);
    // floor(S/n + 1/2) = floor((2S + n) / 2n)
    s - n * ((2 * s + n).div_euclid(2 * n))
}

pub fn closed_form(d: &DimensionVector) -> Result<ClosedFormResult> {
    let ds = d.sorted();
    let nt = n_tilde(&ds)?;
    let head = &ds.dims()[..=nt];
    let s: u64 = head.iter().sum();

    let big = |v: u64| BigRational::from_integer(BigInt::from(v));
    let ratio = BigRational::new(BigInt::from(s), BigInt::from(nt as u64));
    let frac = &ratio - floor(&ratio);
    let one = big(1);
    let two = big(2);
    let ntr = big(nt as u64);

    let mut pairs = BigInt::zero();
    for (i, &a) in head.iter().enumerate() {
        for &b in &head[i + 1..] {
            pairs += BigInt::from(a) * BigInt::from(b);
        }
    }

    let c = &ntr / &two * &frac * (&one - &frac) - &ntr * (&ntr - &one) / &two * &ratio * &ratio
        + BigRational::from_integer(pairs);

    if !c.is_integer() {
        return Err(Error::IntegralityViolation(c.to_string()));
    }
    let c = c
        .to_integer()
        .to_i128()
        .ok_or(Error::Overflow("closed-form codimension"))?;
    let theta = binomial(nt as u64, s % nt as u64).ok_or(Error::Overflow("binomial"))?;
    Ok(ClosedFormResult {
        n_tilde: nt,
        s,
        c,
        theta,
    })
}
