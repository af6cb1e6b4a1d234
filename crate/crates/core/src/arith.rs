//! Overflow-checked integer helpers. Every fallible product or sum in the
//! crate goes through these so that overflow surfaces as [`Error::Overflow`].

use crate::error::{Error, Result};

#[inline]
pub(crate) fn add(a: i64, b: i64) -> Result<i64> {
    a.checked_add(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn sub(a: i64, b: i64) -> Result<i64> {
    a.checked_sub(b).ok_or(Error::Overflow)
}

#[inline]
pub(crate) fn mul(a: i64, b: i64) -> Result<i64> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn pow(base: i64, exp: i64) -> Result<i64> {
    let exp = u32::try_from(exp).map_err(|_| Error::Overflow)?;
    base.checked_pow(exp).ok_or(Error::Overflow)
}

pub(crate) fn sum<I: IntoIterator<Item = i64>>(values: I) -> Result<i64> {
    values.into_iter().try_fold(0i64, add)
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2i64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `n = p^k`, `p` prime, or `None` when `n` is not a
/// prime power.
pub(crate) fn prime_power(n: i64) -> Option<(i64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2i64;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        p = n;
    }
    let (mut rest, mut k) = (n, 0u32);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// `C(n, k)` in `u128`, or `None` on overflow.
pub(crate) fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc.checked_mul(u128::from(n - i))? / u128::from(i + 1);
    }
    Some(acc)
}

/// Calls `f` on every `k in N_0^len` with `sum k <= max_sum`, in
/// lexicographic order.
pub(crate) fn for_each_bounded_composition(len: usize, max_sum: i64, mut f: impl FnMut(&[i64])) {
    if max_sum < 0 {
        return;
    }
    let mut ks = vec![0i64; len];
    loop {
        f(&ks);
        // odometer step: bump the last coordinate that still has room
        let total: i64 = ks.iter().sum();
        let mut pos = len;
        let mut carried = total;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if carried < max_sum {
                ks[pos] += 1;
                break;
            }
            carried -= ks[pos];
            ks[pos] = 0;
        }
    }
}
