//! Exact counting formulas.

use num_bigint::BigUint;

use super::RainbowError;

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of intervals of `[1]^n` between ranks `x` and `y`: `C(n, x) C(n - x, y - x)`.
pub fn trinomial(n: u32, x: u32, y: u32) -> Result<BigUint, RainbowError> {
    if x > y || y > n {
        return Err(RainbowError::ArcOutOfRange { x, y, n });
    }
    Ok(binomial(n, x) * binomial(n - x, y - x))
}

/// `n! / (a! b! c!)`, or `None` unless `a + b + c = n`.
pub fn multinomial3(n: u32, a: u32, b: u32, c: u32) -> Option<BigUint> {
    (a.checked_add(b)?.checked_add(c)? == n).then(|| binomial(n, a) * binomial(n - a, b))
}

/// Size of the largest rainbow on `{0, ..., n}`.
pub fn square_free_complexity_lower(n: u32) -> BigUint {
    if n == 0 {
        return BigUint::default();
    }
    let top = n.saturating_sub(1) / 2;
    let shifted = matches!(n, 2 | 4 | 6);
    (0..=top)
        .map(|i| {
            let inner = if shifted { i + 1 } else { i };
            binomial(n, n - i) * binomial(n - i, inner)
        })
        .sum()
}

/// Complexity of the cyclic group of order `p^n q`.
pub fn cpnq_complexity(n: u32) -> u64 {
    let k = u64::from(n / 2);
    if n.is_multiple_of(2) {
        3 * k + 1
    } else {
        3 * k + 2
    }
}

/// Number of 3-term arithmetic progressions with positive difference in `{0, ..., n}`.
pub fn ap3_count(n: u32) -> u64 {
    let n = u64::from(n);
    (n / 2) * n.div_ceil(2)
}

/// The Gaussian binomial `[n, k]_p`, zero when `k > n`.
pub fn gaussian_binomial(n: u32, k: u32, p: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let p = BigUint::from(p);
    let one = BigUint::from(1u32);
    let mut num = one.clone();
    let mut den = one.clone();
    for i in 0..k {
        num *= p.pow(n - i) - &one;
        den *= p.pow(i + 1) - &one;
    }
    num / den
}

/// Conjectured complexity of `(C_p)^n`, usable only as a lower bound.
pub fn elementary_abelian_lower(n: u32, p: u64) -> BigUint {
    let g = |a, b| gaussian_binomial(a, b, p);
    match n {
        0 => BigUint::from(0u32),
        2 | 4 => (0..n / 2).map(|i| g(n, i) * g(n - i, i + 1)).sum(),
        _ if n % 2 == 1 => (0..=(n - 1) / 2).map(|i| g(n, n - i) * g(n - i, i)).sum(),
        _ => (0..n / 2).map(|i| g(n, n - i) * g(n - i, i)).sum(),
    }
}

/// The Riordan number `γ_n` (1, 0, 1, 1, 3, 6, 15, ...).
pub fn riordan(n: u32) -> BigUint {
    let mut g = [BigUint::from(1u32), BigUint::from(0u32)];
    if n < 2 {
        return g[n as usize].clone();
    }
    for k in 0..n - 1 {
        // γ_{k+2} = (k + 1)(2 γ_{k+1} + 3 γ_k) / (k + 3)
        let next = (k + 1) * (2u32 * &g[1] + 3u32 * &g[0]) / (k + 3);
        g = [std::mem::take(&mut g[1]), next];
    }
    g[1].clone()
}

/// `(Σ C(n; i+1, n-2i-1, i), Σ C(n; i, n-2i, i))` over `0 <= i <= (n-1)/2`.
pub fn riordan_sums(n: u32) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::from(0u32), BigUint::from(1u32));
    }
    let terms = 0..=(n - 1) / 2;
    let lhs = terms.clone().map(|i| binomial(n, i + 1) * binomial(n - i - 1, i)).sum();
    let rhs = terms.map(|i| binomial(n, i) * binomial(n - i, i)).sum();
    (lhs, rhs)
}

/// Serializes a big integer as its decimal string.
pub(crate) fn serialize_decimal<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}
