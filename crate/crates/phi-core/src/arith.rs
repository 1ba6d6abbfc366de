//! Small integer helpers shared across the crate.

pub fn gcd(a: usize, b: usize) -> usize {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization as (prime, multiplicity) pairs in ascending prime order.
pub fn factorize(n: usize) -> Vec<(usize, u32)> {
    let mut n = n;
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Some(p)` when n = p^k for a prime p and k >= 1.
pub fn prime_power_base(n: usize) -> Option<usize> {
    let f = factorize(n);
    match f.as_slice() {
        [(p, _)] => Some(*p),
        _ => None,
    }
}

pub fn checked_pow(base: usize, exp: u32) -> Option<usize> {
    base.checked_pow(exp)
}
