//! Modular arithmetic over small moduli.
//!
//! Everything here works at desk scale (moduli below 2^32) with `u64`
//! intermediates, so products never overflow.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm.
pub fn mod_inv(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = ((a % m) as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i64) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors in increasing order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Multiplicative order of `a` modulo `m`, or `None` when `a` is not a unit.
pub fn multiplicative_order(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a % m, m) != 1 {
        return None;
    }
    let phi = totient(m);
    Some(order_dividing(a, m, phi, &prime_factors(phi)))
}

/// Order of the unit `a` modulo `m` given a multiple `n` of that order and
/// the distinct prime factors of `n`.
pub fn order_dividing(a: u64, m: u64, n: u64, factors: &[u64]) -> u64 {
    let mut order = n;
    for &q in factors {
        while order % q == 0 && mod_pow(a, order / q, m) == 1 {
            order /= q;
        }
    }
    order
}

pub fn totient(n: u64) -> u64 {
    prime_factors(n)
        .into_iter()
        .fold(n, |acc, q| acc / q * (q - 1))
}

/// Whether `rho` generates the multiplicative group modulo the prime `p`.
pub fn is_primitive_root(rho: u64, p: u64) -> bool {
    primitive_root_test(rho, p, &prime_factors(p - 1))
}

fn primitive_root_test(rho: u64, p: u64, factors: &[u64]) -> bool {
    let rho = rho % p;
    if rho == 0 {
        return false;
    }
    factors.iter().all(|&q| mod_pow(rho, (p - 1) / q, p) != 1)
}

/// Every primitive root of the prime `p`, ascending.
pub fn primitive_roots(p: u64) -> Vec<u64> {
    if p == 2 {
        return vec![1];
    }
    let factors = prime_factors(p - 1);
    (2..p).filter(|&g| primitive_root_test(g, p, &factors)).collect()
}

pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}
