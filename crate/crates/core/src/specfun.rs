//! Jacobi and Laguerre polynomials, the Darboux–Szegő regimes and envelopes,
//! and the Mehler–Heine limit pair.
//!
//! Both polynomial families are evaluated by the forward three-term recurrence
//! in the degree. The recurrence is carried in double-double arithmetic so that
//! cancellation between the two terms does not cost more than a few ulps of the
//! final `f64` result.

use std::f64::consts::PI;
use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::{Error, Result};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct DoubleDouble {
    hi: f64,
    lo: f64,
}

impl DoubleDouble {
    const ONE: Self = Self { hi: 1.0, lo: 0.0 };

    fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        let bb = s - a;
        let err = (a - (s - bb)) + (b - bb);
        Self { hi: s, lo: err }
    }

    fn quick_two_sum(a: f64, b: f64) -> Self {
        let s = a + b;
        Self {
            hi: s,
            lo: b - (s - a),
        }
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = Self::two_sum(self.hi, rhs.hi);
        let t = Self::two_sum(self.lo, rhs.lo);
        let s = Self::quick_two_sum(s.hi, s.lo + t.hi);
        Self::quick_two_sum(s.hi, s.lo + t.lo)
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let p = self.hi * rhs.hi;
        let err = self.hi.mul_add(rhs.hi, -p);
        let err = err + (self.hi * rhs.lo + self.lo * rhs.hi);
        Self::quick_two_sum(p, err)
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Self::from_f64(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Self::from_f64(q2);
        let q3 = r.hi / rhs.hi;
        Self::quick_two_sum(q1, q2) + Self::from_f64(q3)
    }
}

/// Degree and parameters of a Jacobi polynomial `P_ℓ^{(α,β)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    degree: u32,
    alpha: f64,
    beta: f64,
}

impl JacobiParams {
    pub fn new(degree: u32, alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha > -1.0) || !(beta > -1.0) || !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Domain(format!(
                "Jacobi parameters must exceed -1, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self {
            degree,
            alpha,
            beta,
        })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `N_ℓ = ℓ + (α + β + 1) / 2`, the effective frequency in the oscillatory regime.
    pub fn effective_degree(&self) -> f64 {
        f64::from(self.degree) + (self.alpha + self.beta + 1.0) / 2.0
    }
}

/// `P_ℓ^{(α,β)}(x)` by forward recurrence.
pub fn jacobi_eval(params: JacobiParams, x: f64) -> Result<f64> {
    let JacobiParams {
        degree,
        alpha,
        beta,
    } = params;
    if degree == 0 {
        return Ok(1.0);
    }
    let dd = DoubleDouble::from_f64;
    let x = dd(x);
    let a = dd(alpha);
    let b = dd(beta);
    let two = dd(2.0);

    let mut prev = DoubleDouble::ONE;
    // P_1 = (α + 1) + (α + β + 2)(x − 1)/2
    let mut cur = (a + DoubleDouble::ONE) + (a + b + two) * (x - DoubleDouble::ONE) / two;
    let diff_sq = (a - b) * (a + b);
    for n in 1..degree {
        let nn = dd(f64::from(n));
        let s = two * nn + a + b;
        let c1 = (s + DoubleDouble::ONE) * (s + two) * s;
        let c0 = (s + DoubleDouble::ONE) * diff_sq;
        let c2 = two * (nn + a) * (nn + b) * (s + two);
        let denom = two * (nn + DoubleDouble::ONE) * (nn + a + b + DoubleDouble::ONE) * s;
        let next = ((c1 * x + c0) * cur - c2 * prev) / denom;
        if !next.is_finite() || !c1.is_finite() || !denom.is_finite() {
            return Err(Error::Precision(format!(
                "Jacobi recurrence overflowed at degree {} (alpha = {alpha}, beta = {beta})",
                n + 1
            )));
        }
        prev = cur;
        cur = next;
    }
    Ok(cur.to_f64())
}

/// `L_k^{(α)}(x)` by forward recurrence.
pub fn laguerre_eval(k: u32, alpha: f64, x: f64) -> Result<f64> {
    if !(alpha > -1.0) || !alpha.is_finite() {
        return Err(Error::Domain(format!(
            "Laguerre parameter must exceed -1, got {alpha}"
        )));
    }
    if k == 0 {
        return Ok(1.0);
    }
    let dd = DoubleDouble::from_f64;
    let a = dd(alpha);
    let x = dd(x);
    let mut prev = DoubleDouble::ONE;
    let mut cur = DoubleDouble::ONE + a - x;
    for j in 1..k {
        let jj = dd(f64::from(j));
        let next = ((dd(2.0) * jj + DoubleDouble::ONE + a - x) * cur - (jj + a) * prev)
            / (jj + DoubleDouble::ONE);
        if !next.is_finite() {
            return Err(Error::Precision(format!(
                "Laguerre recurrence overflowed at degree {}",
                j + 1
            )));
        }
        prev = cur;
        cur = next;
    }
    Ok(cur.to_f64())
}

/// Zeros of `P_ℓ^{(α,β)}` in `(-1, 1)`, returned as angles `θ = arccos x` in increasing order.
///
/// Found by bracketing sign changes on a uniform θ grid finer than the zero
/// spacing, then bisecting to full precision.
pub fn jacobi_zero_angles(params: JacobiParams) -> Result<Vec<f64>> {
    let degree = params.degree as usize;
    if degree == 0 {
        return Ok(Vec::new());
    }
    let f = |theta: f64| jacobi_eval(params, theta.cos());
    let scale = params.degree as f64 + params.alpha + params.beta + 1.0;
    let samples = (16.0 * scale).ceil() as usize + 64;
    bracket_zeros(f, 0.0, PI, samples, degree)
}

/// Zeros of `L_k^{(α)}` on `(0, ∞)` in increasing order.
pub fn laguerre_zeros(k: u32, alpha: f64) -> Result<Vec<f64>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    // Every zero lies below 4k + 2α + 2.
    let upper = 4.0 * f64::from(k) + 2.0 * alpha.max(0.0) + 2.0;
    let samples = 64 * k as usize + 64;
    // Zeros crowd towards the origin; sample in sqrt(x) to resolve them.
    let g = |y: f64| laguerre_eval(k, alpha, y * y);
    let roots = bracket_zeros(g, 0.0, upper.sqrt(), samples, k as usize)?;
    Ok(roots.into_iter().map(|y| y * y).collect())
}

fn bracket_zeros<F>(f: F, lo: f64, hi: f64, samples: usize, expected: usize) -> Result<Vec<f64>>
where
    F: Fn(f64) -> Result<f64>,
{
    let h = (hi - lo) / samples as f64;
    let mut roots = Vec::with_capacity(expected);
    let mut x0 = lo;
    let mut f0 = f(x0)?;
    for i in 1..=samples {
        let x1 = lo + h * i as f64;
        let f1 = f(x1)?;
        if f0 == 0.0 {
            roots.push(x0);
        } else if f0 * f1 < 0.0 {
            let (mut a, mut b, mut fa) = (x0, x1, f0);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if mid <= a || mid >= b {
                    break;
                }
                let fm = f(mid)?;
                if fm == 0.0 {
                    a = mid;
                    b = mid;
                    break;
                }
                if fa * fm < 0.0 {
                    b = mid;
                } else {
                    a = mid;
                    fa = fm;
                }
            }
            roots.push(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    if roots.len() != expected {
        return Err(Error::Precision(format!(
            "found {} zeros, expected {expected}",
            roots.len()
        )));
    }
    Ok(roots)
}

/// Which of the three Darboux–Szegő ranges an angle falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SzegoTag {
    EdgeLeft,
    Oscillatory,
    EdgeRight,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SzegoRegime {
    pub tag: SzegoTag,
    pub c: f64,
}

/// Classifies `θ` for degree `ℓ`: `θ < c/ℓ` is the left edge, `θ > π − c/ℓ` the right
/// edge, everything else (boundaries included) oscillatory.
pub fn szego_classify(degree: u32, theta: f64, c: f64) -> Result<SzegoRegime> {
    if !(c > 0.0 && c < PI) {
        return Err(Error::Domain(format!("c = {c} is outside (0, pi)")));
    }
    if degree == 0 {
        return Err(Error::Domain("Szegő regimes need degree >= 1".into()));
    }
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::Domain(format!("theta = {theta} is outside [0, pi]")));
    }
    let edge = c / f64::from(degree);
    let tag = if theta < edge {
        SzegoTag::EdgeLeft
    } else if theta > PI - edge {
        SzegoTag::EdgeRight
    } else {
        SzegoTag::Oscillatory
    };
    Ok(SzegoRegime { tag, c })
}

/// `k(θ) = π^{1/2} sin(θ/2)^{−α−1/2} cos(θ/2)^{−β−1/2}`.
pub fn szego_k(params: JacobiParams, theta: f64) -> f64 {
    let half = 0.5 * theta;
    PI.sqrt()
        * half.sin().powf(-params.alpha - 0.5)
        * half.cos().powf(-params.beta - 0.5)
}

/// The oscillatory envelope `ℓ^{-1/2} k(θ) (1 + (ℓ sin θ)^{-1})`.
pub fn oscillatory_envelope(params: JacobiParams, theta: f64) -> Result<f64> {
    if theta <= 0.0 || theta >= PI {
        return Err(Error::SingularEnvelope { theta });
    }
    let l = f64::from(params.degree.max(1));
    Ok(l.powf(-0.5) * szego_k(params, theta) * (1.0 + (l * theta.sin()).recip()))
}

/// Structural Darboux–Szegő envelope for `|P_ℓ^{(α,β)}(cos θ)|`: `ℓ^α`, the
/// oscillatory envelope, or `ℓ^β` depending on the regime.
pub fn szego_envelope(params: JacobiParams, theta: f64, c: f64) -> Result<f64> {
    let regime = szego_classify(params.degree, theta, c)?;
    let l = f64::from(params.degree);
    match regime.tag {
        SzegoTag::EdgeLeft => Ok(l.powf(params.alpha)),
        SzegoTag::EdgeRight => Ok(l.powf(params.beta)),
        SzegoTag::Oscillatory => oscillatory_envelope(params, theta),
    }
}

/// Parameters of one term of the Mehler–Heine limit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MehlerHeinePair {
    big_n: u64,
    j: u32,
    k: u32,
    x: f64,
}

impl MehlerHeinePair {
    pub fn new(big_n: u64, j: u32, k: u32, x: f64) -> Result<Self> {
        if j < k {
            return Err(Error::Domain(format!("need j >= k, got j = {j}, k = {k}")));
        }
        if big_n < u64::from(j) + u64::from(k) + 1 {
            return Err(Error::Domain(format!(
                "need N - j - k >= 1, got N = {big_n}, j = {j}, k = {k}"
            )));
        }
        Ok(Self { big_n, j, k, x })
    }

    pub fn big_n(&self) -> u64 {
        self.big_n
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Both sides of the Mehler–Heine formula:
///
/// `lhs = cos^M(x/√M) · P_k^{(j−k, M)}(cos(2x/√M))` with `M = N − j − k`, and
/// `rhs = L_k^{(j−k)}(x²) e^{−x²/2}`.
pub fn mehler_heine_pair(pair: MehlerHeinePair) -> Result<(f64, f64)> {
    let MehlerHeinePair { big_n, j, k, x } = pair;
    let big_m = (big_n - u64::from(j) - u64::from(k)) as f64;
    let alpha = f64::from(j - k);
    let scaled = x / big_m.sqrt();
    let params = JacobiParams::new(k, alpha, big_m)?;
    let lhs = scaled.cos().powf(big_m) * jacobi_eval(params, (2.0 * scaled).cos())?;
    let rhs = laguerre_eval(k, alpha, x * x)? * (-0.5 * x * x).exp();
    Ok((lhs, rhs))
}

/// `binom(a + k, k)` for real `a`, the endpoint value of both families.
pub fn binomial_real(a: f64, k: u32) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * (a + f64::from(i)) / f64::from(i))
}
