//! Small numeric helpers shared by the bound evaluators.

use alloc::vec::Vec;
use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Base-2 logarithm of an arbitrary-precision integer, in double precision.
///
/// Returns `0.0` for zero (never needed for group orders).
pub fn log2_big(x: &BigUint) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits();
    if bits <= 64 {
        return libm::log2(x.to_u64().unwrap() as f64);
    }
    let shift = bits - 64;
    let top: BigUint = x >> shift;
    libm::log2(top.to_u64().unwrap() as f64) + shift as f64
}

/// `floor(x)` after nudging by `1e-12`, so a value that is analytically an
/// integer but computed a hair low still floors to that integer.
pub fn nudged_floor(x: f64) -> f64 {
    libm::floor(x + 1e-12)
}

/// `lhs <= rhs` with relative tolerance `1e-9`.
pub fn le_tol(lhs: f64, rhs: f64) -> bool {
    let scale = libm::fmax(1.0, libm::fmax(libm::fabs(lhs), libm::fabs(rhs)));
    lhs <= rhs + 1e-9 * scale
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// Prime factorisation of `x` restricted to primes `<= bound`; returns
/// `(prime, exponent)` pairs and the unfactored cofactor.
pub fn factor_small(x: &BigUint, bound: u64) -> (Vec<(u64, u32)>, BigUint) {
    let mut rest = x.clone();
    let mut out = Vec::new();
    let mut p = 2u64;
    while p <= bound && !rest.is_one() && !rest.is_zero() {
        let mut e = 0;
        loop {
            let (q, r) = num_integer::Integer::div_rem(&rest, &BigUint::from(p));
            if !r.is_zero() {
                break;
            }
            rest = q;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    (out, rest)
}

/// Number of prime factors of a group order counted with multiplicity.
/// Group orders divide `degree!`, so trial division up to the degree suffices.
pub fn big_omega(order: &BigUint, degree: usize) -> usize {
    let (f, rest) = factor_small(order, degree.max(2) as u64);
    debug_assert!(rest.is_one());
    f.iter().map(|&(_, e)| e as usize).sum()
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
