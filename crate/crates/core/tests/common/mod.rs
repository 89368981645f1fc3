//! Exact-rational reference values, computed from closed-form sums rather
//! than the recurrences the library uses.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn rat(x: BigInt) -> BigRational {
    BigRational::from_integer(x)
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// `P_n^{(α,β)}(x) = Σ_s C(n+α, n−s) C(n+β, s) ((x−1)/2)^s ((x+1)/2)^{n−s}`.
pub fn jacobi_exact(n: u64, alpha: u64, beta: u64, x: &BigRational) -> BigRational {
    let two = rat(BigInt::from(2));
    let minus = (x - BigRational::one()) / &two;
    let plus = (x + BigRational::one()) / &two;
    (0..=n)
        .map(|s| {
            rat(binom(n + alpha, n - s) * binom(n + beta, s))
                * pow(&minus, s)
                * pow(&plus, n - s)
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

/// Same sum with every term made non-negative; bounds the rounding error.
pub fn jacobi_abs_sum(n: u64, alpha: u64, beta: u64, x: &BigRational) -> BigRational {
    let two = rat(BigInt::from(2));
    let minus = ((x - BigRational::one()) / &two).abs();
    let plus = ((x + BigRational::one()) / &two).abs();
    (0..=n)
        .map(|s| {
            rat(binom(n + alpha, n - s) * binom(n + beta, s))
                * pow(&minus, s)
                * pow(&plus, n - s)
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

/// `L_k^{(α)}(x) = Σ_j (−1)^j C(k+α, k−j) x^j / j!`.
pub fn laguerre_exact(k: u64, alpha: u64, x: &BigRational) -> BigRational {
    (0..=k)
        .map(|j| {
            let term = rat(binom(k + alpha, k - j)) * pow(x, j) / rat(factorial(j));
            if j % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .fold(BigRational::zero(), |a, b| a + b)
}

pub fn laguerre_abs_sum(k: u64, alpha: u64, x: &BigRational) -> BigRational {
    let ax = x.abs();
    (0..=k)
        .map(|j| rat(binom(k + alpha, k - j)) * pow(&ax, j) / rat(factorial(j)))
        .fold(BigRational::zero(), |a, b| a + b)
}

fn pow(x: &BigRational, e: u64) -> BigRational {
    (0..e).fold(BigRational::one(), |a, _| a * x)
}

/// `x` as an exact rational with denominator `2^20`.
pub fn dyadic(x: f64) -> BigRational {
    let scaled = (x * f64::from(1 << 20)).round() as i64;
    BigRational::new(BigInt::from(scaled), BigInt::from(1i64 << 20))
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// `d(N)` by direct enumeration of `(2k+n) m = N`.
pub fn divisor_sum_brute(n: u32, big_n: u64) -> BigRational {
    let mut acc = BigRational::zero();
    let mut level = u64::from(n);
    while level <= big_n {
        if big_n % level == 0 {
            let m = big_n / level;
            let num = BigUint::from(m).pow(n) * BigUint::from(level).pow(n - 1);
            acc += BigRational::from_integer(BigInt::from(num));
        }
        level += 2;
    }
    acc / BigRational::from_integer(BigInt::from(BigUint::from(big_n).pow(n)))
}

/// Path of the `hcontract` binary built for this test run.
pub fn bin() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_BIN_EXE_hcontract"))
}
