//! The divisor-type sum `d(N)` and bounds for `Q_N`, `Π_N`, `M_N`, `E_{N₁,N₂}`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::{exponent_profile, HeisContext, HeisMode};
use crate::{check_p_range, Error, Result};

/// `d(N) = Σ 1/(2k+n)` over divisors of `N` of the form `2k + n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSum {
    pub n: u32,
    pub big_n: u64,
    pub value: BigRational,
}

impl DivisorSum {
    pub fn to_f64(&self) -> f64 {
        self.value.to_f64().unwrap_or(f64::NAN)
    }
}

fn check_n(big_n: u64) -> Result<()> {
    if big_n == 0 {
        return Err(Error::Domain("N must be a positive integer".into()));
    }
    Ok(())
}

/// Divisors `D ≥ n` of `N` with `D ≡ n (mod 2)`, increasing.
fn levels(ctx: &HeisContext, big_n: u64) -> impl Iterator<Item = u64> {
    let n = u64::from(ctx.n());
    (n..=big_n)
        .step_by(2)
        .filter(move |d| big_n % d == 0)
}

pub fn divisor_sum(ctx: &HeisContext, big_n: u64) -> Result<DivisorSum> {
    check_n(big_n)?;
    let value = levels(ctx, big_n).fold(BigRational::zero(), |acc, d| {
        acc + BigRational::new(BigInt::one(), BigInt::from(d))
    });
    Ok(DivisorSum {
        n: ctx.n(),
        big_n,
        value,
    })
}

/// Modes `(m, k)` with `(2k+n)|m| = N`: increasing `2k + n`, `+m` before `−m`.
pub fn qn_modes(ctx: &HeisContext, big_n: u64) -> Result<Vec<HeisMode>> {
    check_n(big_n)?;
    let n = u64::from(ctx.n());
    let mut out = Vec::new();
    for d in levels(ctx, big_n) {
        let m = (big_n / d) as i64;
        let k = ((d - n) / 2) as u32;
        out.push(HeisMode::new(m, k)?);
        out.push(HeisMode::new(-m, k)?);
    }
    Ok(out)
}

/// `(Σ_{m>0} m^n (2k+n)^{n−1}, N^n d(N))` over the modes of `Q_N`.
pub fn qn_sq_identity(ctx: &HeisContext, big_n: u64) -> Result<(BigRational, BigRational)> {
    let n = ctx.n();
    let lhs = qn_modes(ctx, big_n)?
        .into_iter()
        .filter(|md| md.m() > 0)
        .fold(BigInt::zero(), |acc, md| {
            let m: BigInt = BigInt::from(md.m()).pow(n);
            let level: BigInt = BigInt::from(md.level(ctx)).pow(n - 1);
            acc + m * level
        });
    let d = divisor_sum(ctx, big_n)?.value;
    let rhs = BigRational::from_integer(BigInt::from(big_n).pow(n)) * d;
    Ok((BigRational::from_integer(lhs), rhs))
}

/// `N^{n(1/p−1/2)} d(N)^{ρ(1/p)}`, and `0` when `d(N) = 0` (then `Q_N = 0`).
pub fn qn_norm_bound(ctx: &HeisContext, big_n: u64, p: f64) -> Result<f64> {
    check_p_range(p)?;
    let d = divisor_sum(ctx, big_n)?;
    if d.value.is_zero() {
        return Ok(0.0);
    }
    let prof = exponent_profile(ctx.n())?;
    let nn = big_n as f64;
    Ok(nn.powf(prof.beta_at(p)?) * d.to_f64().powf(prof.rho_at(p)?))
}

pub(crate) fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "form", rename_all = "kebab-case")]
pub enum QnForm {
    Prime { big_n: u64 },
    PrimePower { base: u64, k0: u32 },
    FixedPrime { q0: u64, ell: u32 },
}

/// A closed-form `Q_N` bound `N^exponent`, with whether the stated
/// hypotheses on `n` (and the base) hold.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct QnReduced {
    pub form: QnForm,
    pub exponent: f64,
    pub value: f64,
    pub hypothesis_ok: bool,
}

fn below_tilde(ctx: &HeisContext, p: f64) -> Result<bool> {
    let prof = exponent_profile(ctx.n())?;
    Ok(p < prof.p_tilde().to_f64().unwrap_or(f64::NAN))
}

/// `N` prime: `N^{n(u−½)−½}` for `p < p̃`, `N^{−½(u−½)}` otherwise.
/// Hypothesis: `n > 2` odd.
pub fn qn_prime_bound(ctx: &HeisContext, big_n: u64, p: f64) -> Result<QnReduced> {
    check_p_range(p)?;
    if !is_prime(big_n) {
        return Err(Error::Domain(format!("{big_n} is not prime")));
    }
    let n = f64::from(ctx.n());
    let v = 1.0 / p - 0.5;
    let exponent = if below_tilde(ctx, p)? {
        n * v - 0.5
    } else {
        -0.5 * v
    };
    Ok(QnReduced {
        form: QnForm::Prime { big_n },
        exponent,
        value: (big_n as f64).powf(exponent),
        hypothesis_ok: ctx.n() > 2 && ctx.n() % 2 == 1,
    })
}

/// `N = r^{k₀}`, `r` prime: `N^{n(u−½)−1/(2k₀)}` for `p < p̃`,
/// `N^{(n−(2n+1)/(2k₀))(u−½)}` otherwise. Hypothesis: `n ≥ 2` odd.
pub fn qn_prime_power_bound(ctx: &HeisContext, base: u64, k0: u32, p: f64) -> Result<QnReduced> {
    check_p_range(p)?;
    if !is_prime(base) || k0 == 0 {
        return Err(Error::Domain(format!(
            "need a prime base and k0 ≥ 1, got {base}^{k0}"
        )));
    }
    let n = f64::from(ctx.n());
    let kk = f64::from(k0);
    let v = 1.0 / p - 0.5;
    let exponent = if below_tilde(ctx, p)? {
        n * v - 1.0 / (2.0 * kk)
    } else {
        (n - (2.0 * n + 1.0) / (2.0 * kk)) * v
    };
    let big_n = (base as f64).powi(k0 as i32);
    Ok(QnReduced {
        form: QnForm::PrimePower { base, k0 },
        exponent,
        value: big_n.powf(exponent),
        hypothesis_ok: ctx.n() >= 2 && ctx.n() % 2 == 1,
    })
}

/// `N = q₀^ℓ` for a fixed prime `q₀`: `N^{n(u−½)}`.
/// Hypothesis: `n = 2, q₀ = 2`, or `n > 2` odd with `q₀ > 2`.
pub fn qn_fixed_prime_bound(ctx: &HeisContext, q0: u64, ell: u32, p: f64) -> Result<QnReduced> {
    check_p_range(p)?;
    if !is_prime(q0) {
        return Err(Error::Domain(format!("{q0} is not prime")));
    }
    let n = ctx.n();
    let exponent = f64::from(n) * (1.0 / p - 0.5);
    let big_n = (q0 as f64).powi(ell as i32);
    Ok(QnReduced {
        form: QnForm::FixedPrime { q0, ell },
        exponent,
        value: big_n.powf(exponent),
        hypothesis_ok: (n == 2 && q0 == 2) || (n > 2 && n % 2 == 1 && q0 > 2),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Aggregate {
    /// `Π_N`, the sum of `Q_L` for `L ≤ N`.
    Pi(u64),
    /// `M_N = Π_N / N`.
    M(u64),
    /// `E_{N₁,N₂} = Π_{N₂} − Π_{N₁}`.
    E(u64, u64),
}

/// Bound expressions with unit constant:
/// `N^{(n+1)(u−½)}`, `N^{(n+1)(u−½)−1}`, `(N₂^n (N₂−N₁))^{u−½}`.
pub fn aggregate_bound(ctx: &HeisContext, which: Aggregate, p: f64) -> Result<f64> {
    check_p_range(p)?;
    let n = f64::from(ctx.n());
    let v = 1.0 / p - 0.5;
    match which {
        Aggregate::Pi(big_n) => {
            check_n(big_n)?;
            Ok((big_n as f64).powf((n + 1.0) * v))
        }
        Aggregate::M(big_n) => {
            check_n(big_n)?;
            Ok((big_n as f64).powf((n + 1.0) * v - 1.0))
        }
        Aggregate::E(n1, n2) => {
            if n2 <= n1 {
                return Err(Error::Domain(format!("need N2 > N1, got N1 = {n1}, N2 = {n2}")));
            }
            Ok(((n2 as f64).powf(n) * (n2 - n1) as f64).powf(v))
        }
    }
}

/// `Σ m^n (2k+n)^{n−1}` over `m > 0`, `k ≥ 0` with `(2k+n) m ≤ N`.
pub fn pi_square_sum(ctx: &HeisContext, big_n: u64) -> BigUint {
    let n = ctx.n();
    let mut acc = BigUint::zero();
    let mut d = u64::from(n);
    while d <= big_n {
        let level: BigUint = BigUint::from(d).pow(n - 1);
        let mut ms = BigUint::zero();
        for m in 1..=big_n / d {
            ms += BigUint::from(m).pow(n);
        }
        acc += level * ms;
        d += 2;
    }
    acc
}
