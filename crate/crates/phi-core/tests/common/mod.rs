//! Independent oracles shared by the integration suites. These deliberately
//! avoid the library's own arithmetic helpers.

/// Integer totient by direct gcd counting.
pub fn totient_oracle(n: usize) -> usize {
    (1..=n).filter(|&k| gcd(k, n) == 1).count()
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
