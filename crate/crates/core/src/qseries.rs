//! Truncated integer power series in `q` and the alternating sum of inverse
//! Pochhammer products whose leading term is `theta q^C`.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kostant::DimensionVector;

/// Coefficients `c_0, ..., c_N` of a power series known modulo `q^{N+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(0, order)
    }

    /// `q^e`, which is zero when `e` exceeds the order.
    pub fn monomial(e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = BigInt::one();
        }
        s
    }

    pub fn from_coeffs<T: Into<BigInt>>(coeffs: impl IntoIterator<Item = T>) -> Self {
        let coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        assert!(
            !coeffs.is_empty(),
            "a series needs at least one coefficient"
        );
        Self { coeffs }
    }

    /// The truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> &BigInt {
        &self.coeffs[e]
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.resize(order + 1, BigInt::zero());
        if order < self.order() {
            s.coeffs.truncate(order + 1);
        }
        s
    }

    /// Multiplies in place by `1 / (1 - q^k)`: a running sum with stride `k`.
    pub fn div_one_minus_qk(&mut self, k: usize) {
        assert!(k >= 1);
        for i in k..self.coeffs.len() {
            let prev = self.coeffs[i - k].clone();
            self.coeffs[i] += prev;
        }
    }

    /// Multiplies in place by `1 - q^k`.
    pub fn mul_one_minus_qk(&mut self, k: usize) {
        assert!(k >= 1);
        for i in (k..self.coeffs.len()).rev() {
            let prev = self.coeffs[i - k].clone();
            self.coeffs[i] -= prev;
        }
    }

    /// Multiplies in place by `q^e`.
    pub fn shift(&mut self, e: usize) {
        let len = self.coeffs.len();
        if e >= len {
            self.coeffs.iter_mut().for_each(|c| c.set_zero());
            return;
        }
        self.coeffs.rotate_right(e);
        self.coeffs[..e].iter_mut().for_each(|c| c.set_zero());
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Self {
        let order = self.order().min(other.order());
        Self {
            coeffs: (0..=order)
                .map(|i| f(&self.coeffs[i], &other.coeffs[i]))
                .collect(),
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn neg(self) -> TruncatedSeries {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Product truncated at the smaller of the two orders.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = TruncatedSeries::zero(order);
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

/// `1 / (1 - q^k)` up to `q^order`.
pub fn geometric_inverse(k: usize, order: usize) -> TruncatedSeries {
    assert!(k >= 1, "geometric_inverse needs k >= 1");
    let mut s = TruncatedSeries::zero(order);
    for e in (0..=order).step_by(k) {
        s.coeffs[e] = BigInt::one();
    }
    s
}

/// `P_s = 1 / ((1 - q)(1 - q^2) ... (1 - q^s))` up to `q^order`.
pub fn inverse_pochhammer(s: u64, order: usize) -> TruncatedSeries {
    let mut out = TruncatedSeries::one(order);
    // factors beyond the order act as the identity
    for k in 1..=s.min(order as u64) as usize {
        out = &out * &geometric_inverse(k, order);
    }
    out
}

/// `sum_{s=0}^{min d} (-1)^s q^{s(s-1)/2} P_s prod_i P_{d_i - s}` up to `q^order`.
pub fn lr1_series(d: &DimensionVector, order: usize) -> TruncatedSeries {
    let mut total = TruncatedSeries::zero(order);
    for s in 0..=d.min() {
        let shift = s * s.saturating_sub(1) / 2;
        if shift > order as u64 {
            break;
        }
        // exponent of 1/(1 - q^k) in this summand, for k = 1..=order
        let mut term = TruncatedSeries::one(order);
        for k in 1..=order as u64 {
            let mut mult = u64::from(s >= k);
            mult += d.dims().iter().filter(|&&di| di - s >= k).count() as u64;
            for _ in 0..mult {
                term.div_one_minus_qk(k as usize);
            }
        }
        term.shift(shift as usize);
        total = if s % 2 == 0 {
            &total + &term
        } else {
            &total - &term
        };
    }
    total
}

/// Lowest degree with a non-zero coefficient, and that coefficient.
pub fn leading_term(f: &TruncatedSeries) -> Result<(usize, BigInt)> {
    f.coeffs
        .iter()
        .position(|c| !c.is_zero())
        .map(|e| (e, f.coeffs[e].clone()))
        .ok_or(Error::AllZeroUpToN { order: f.order() })
}

/// `(C, theta)` read off the series, widening the window until a non-zero
/// coefficient appears. `start` is the first order tried.
pub fn codim_and_count(d: &DimensionVector, start: usize) -> Result<(usize, BigInt)> {
    // the codimension never exceeds dim Rep_d
    let cap: u64 = d
        .dims()
        .windows(2)
        .map(|w| w[0].saturating_mul(w[1]))
        .fold(0u64, u64::saturating_add);
    let cap = usize::try_from(cap).unwrap_or(usize::MAX);
    let mut order = start.min(cap);
    loop {
        match leading_term(&lr1_series(d, order)) {
            Err(Error::AllZeroUpToN { .. }) if order < cap => {
                order = (order.max(1) * 2).min(cap);
            }
            other => {
                let (c, theta) = other?;
                if theta.is_negative() {
                    return Err(Error::Consistency(format!(
                        "negative leading coefficient {theta} at q^{c}"
                    )));
                }
                return Ok((c, theta));
            }
        }
    }
}
