//! Small combinatorial helpers: factorials, binomials, multinomials.
//!
//! Everything here targets desk-scale arguments (n up to a few tens); exact
//! integer paths are used where the result fits, log-space otherwise.

/// n! as a u128. Exact for n <= 33.
pub fn factorial(n: u32) -> u128 {
    (2..=n as u128).product()
}

/// ln(n!), accurate enough for ratios of factorials at desk scale.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n as u64).map(|k| (k as f64).ln()).sum()
}

/// Binomial coefficient C(n, k) as an exact integer. Returns 0 outside range.
pub fn binomial(n: u32, k: u32) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = acc * (n as u128 - i) / (i + 1);
    }
    acc
}

/// C(n, k) as f64.
pub fn binomial_f64(n: u32, k: u32) -> f64 {
    binomial(n, k) as f64
}

/// Multinomial coefficient n! / (parts[0]! parts[1]! ...), with n = sum of parts.
pub fn multinomial(parts: &[u32]) -> u128 {
    let n: u32 = parts.iter().sum();
    let mut acc: u128 = 1;
    let mut rem = n;
    for &p in parts {
        acc *= binomial(rem, p);
        rem -= p;
    }
    acc
}
