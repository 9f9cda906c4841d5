//! p-adic valuations of rationals and of binomial coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::{LogValue, Prime, Rational, ValuationError};

/// `v_p(n)` for a nonzero integer.
pub fn int_valuation(n: &BigInt, p: Prime) -> Result<i64, ValuationError> {
    if n.is_zero() {
        return Err(ValuationError::ZeroInput);
    }
    let pb = BigInt::from(p.get());
    let mut n = n.clone();
    let mut k = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return Ok(k);
        }
        n = q;
        k += 1;
    }
}

/// `v_p(x)` for a nonzero rational.
pub fn padic_valuation(x: &Rational, p: Prime) -> Result<i64, ValuationError> {
    Ok(int_valuation(x.numer(), p)? - int_valuation(x.denom(), p)?)
}

/// `|x|_p` as a [`LogValue`]; zero maps to the zero value.
pub fn log_norm(x: &Rational, p: Prime) -> LogValue {
    match padic_valuation(x, p) {
        Ok(v) => LogValue::from_v_int(v),
        Err(_) => LogValue::zero(),
    }
}

/// `v_p(C(n, k))` as the number of carries when adding `k` and `n - k` in base `p`.
pub fn binomial_valuation(n: u64, k: u64, p: Prime) -> Result<u32, ValuationError> {
    if k > n {
        return Err(ValuationError::KOutOfRange { n, k });
    }
    let p = p.get();
    let (mut a, mut b) = (k, n - k);
    let mut carry = 0;
    let mut carries = 0;
    while a > 0 || b > 0 || carry > 0 {
        let s = a % p + b % p + carry;
        carry = u64::from(s >= p);
        carries += carry as u32;
        a /= p;
        b /= p;
    }
    Ok(carries)
}

/// `v_p(C(m, k))` for any integer `m`, using `C(-m', k) = ±C(m' + k - 1, k)`.
/// `None` when the coefficient vanishes (`0 ≤ m < k`).
pub fn generalized_binomial_valuation(m: i64, k: u64, p: Prime) -> Option<u32> {
    if m >= 0 {
        let m = m as u64;
        (k <= m).then(|| binomial_valuation(m, k, p).expect("k within range"))
    } else {
        let top = k + m.unsigned_abs() - 1;
        Some(binomial_valuation(top, k, p).expect("k within range"))
    }
}
