//! Laguerre kernels `Φ^m_k` and norms of the projectors `P_{m,k}`.

use num_complex::Complex64;

use super::{exponent_profile, HeisContext, HeisMode};
use crate::quad;
use crate::specfun::{binomial_real, laguerre_eval, laguerre_zeros};
use crate::{check_p_range, conjugate_exponent, Error, NormBracket, Result};

const REL_TOL: f64 = 1e-13;
const TAIL_TOL: f64 = 1e-14;

/// `Φ(r, t) = C |m|^n e^{imt} L_k^{n−1}(|m| r²) e^{−|m| r²/2}`,
/// with `C` fixed by `Φ(0) = ‖Φ‖₂²`.
#[derive(Debug, Clone, Copy)]
pub struct LaguerreKernel {
    ctx: HeisContext,
    mode: HeisMode,
    scale: f64,
}

impl LaguerreKernel {
    pub fn new(ctx: &HeisContext, mode: HeisMode) -> Result<Self> {
        let unit = Self {
            ctx: *ctx,
            mode,
            scale: 1.0,
        };
        let norm_sq = radial_lp_integral(&unit, 2.0)?;
        let scale = unit.origin_value() / norm_sq;
        Ok(Self { scale, ..unit })
    }

    pub fn mode(&self) -> HeisMode {
        self.mode
    }

    pub fn context(&self) -> &HeisContext {
        &self.ctx
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `1/n!`.
    pub fn analytic_scale(&self) -> f64 {
        (1..=self.ctx.n()).map(f64::from).product::<f64>().recip()
    }

    fn alpha(&self) -> f64 {
        f64::from(self.ctx.n() - 1)
    }

    fn m_abs(&self) -> f64 {
        self.mode.abs_m() as f64
    }

    /// Real radial profile of `Φ`.
    pub fn radial(&self, r: f64) -> f64 {
        let m = self.m_abs();
        let s = m * r * r;
        let decay = (-0.5 * s).exp();
        if decay == 0.0 {
            return 0.0;
        }
        let l = laguerre_eval(self.mode.k(), self.alpha(), s).unwrap_or(f64::NAN);
        self.scale * m.powi(self.ctx.n() as i32) * l * decay
    }

    pub fn eval(&self, r: f64, t: f64) -> Complex64 {
        Complex64::from_polar(1.0, self.mode.m() as f64 * t) * self.radial(r)
    }

    /// `Φ(0) = C |m|^n C(k+n−1, k)`, which is also `sup |Φ|`.
    pub fn origin_value(&self) -> f64 {
        self.scale
            * self.m_abs().powi(self.ctx.n() as i32)
            * binomial_real(self.alpha(), self.mode.k())
    }

    /// Radii where `Φ` vanishes.
    pub fn zero_radii(&self) -> Result<Vec<f64>> {
        let m = self.m_abs();
        Ok(laguerre_zeros(self.mode.k(), self.alpha())?
            .into_iter()
            .map(|s| (s / m).sqrt())
            .collect())
    }
}

/// `∫ |Φ|^p dμ` in the radial variable, truncated where the certified tail
/// bound drops below `1e-14` of the integral.
fn radial_lp_integral(kernel: &LaguerreKernel, p: f64) -> Result<f64> {
    let ctx = kernel.ctx;
    let n = f64::from(ctx.n());
    let k = kernel.mode.k();
    let m = kernel.m_abs();
    let alpha = kernel.alpha();
    let f = |r: f64| kernel.radial(r).abs().powf(p) * ctx.radial_density(r);

    // |L_k^α(s)| ≤ c_L max(1, s)^k with c_L = Σ_j C(k+α, k−j)/j!.
    let mut c_l = 0.0;
    let mut fact = 1.0;
    for j in 0..=k {
        if j > 0 {
            fact *= f64::from(j);
        }
        c_l += binomial_real(alpha + f64::from(j), k - j) / fact;
    }
    // In s = |m| r²: ∫_S^∞ s^a e^{−bs} ds ≤ 2 S^a e^{−bS} / b once S ≥ 2a/b.
    let a = f64::from(k) * p + n - 1.0;
    let b = p / 2.0;
    let log_front = p * (kernel.scale * m.powi(ctx.n() as i32) * c_l).ln() + (n / m.powf(n)).ln();
    let tail = |s: f64| (log_front + (2.0 / b).ln() + a * s.ln() - b * s).exp();

    let zeros = kernel.zero_radii()?;
    let last_zero = zeros.last().map_or(0.0, |z| m * z * z);
    let mut s_max = (2.0 * a / b).max(1.5 * last_zero).max(4.0);
    let mut lo = 0.0;
    let mut total = 0.0;
    let mut cuts: Vec<f64> = zeros.clone();
    for _ in 0..200 {
        let r_max = (s_max / m).sqrt();
        cuts.retain(|&c| c > lo);
        for hi in cuts.iter().copied().filter(|&c| c < r_max).chain(std::iter::once(r_max)) {
            total += quad::adaptive(&f, lo, hi, REL_TOL, 0.0)?;
            lo = hi;
        }
        let bound = tail(s_max);
        if bound <= TAIL_TOL * total {
            return Ok(total);
        }
        s_max *= 1.25;
    }
    Err(Error::Resolution {
        what: format!("Laguerre kernel tail for mode {}", kernel.mode),
        coarse: total,
        refined: total + tail(s_max),
    })
}

/// `‖Φ^m_k‖_p` under the Haar measure; `p = ∞` gives `Φ(0)`.
pub fn phi_lp_norm(ctx: &HeisContext, mode: HeisMode, p: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p = {p} must be at least 1")));
    }
    let kernel = LaguerreKernel::new(ctx, mode)?;
    if p.is_infinite() {
        return Ok(kernel.origin_value());
    }
    Ok(radial_lp_integral(&kernel, p)?.powf(1.0 / p))
}

/// Certified bracket for `‖P_{m,k}‖_{L^p → L^2}`, built as on the sphere.
pub fn pmk_norm_bracket(ctx: &HeisContext, mode: HeisMode, p: f64) -> Result<NormBracket> {
    check_p_range(p)?;
    let two = phi_lp_norm(ctx, mode, 2.0)?;
    let pc = conjugate_exponent(p);
    let direct = two / phi_lp_norm(ctx, mode, p)?;
    let dual = phi_lp_norm(ctx, mode, pc)? / two;
    let lower = direct.max(dual);
    let young = phi_lp_norm(ctx, mode, pc / 2.0)?.sqrt();
    let interp = two.powf(2.0 / p - 1.0);
    Ok(NormBracket::new(p, lower, young.min(interp)))
}

/// `(2k+n)^{α(1/p)} |m|^{β(1/p)}`.
pub fn kochricci_bound(ctx: &HeisContext, mode: HeisMode, p: f64) -> Result<f64> {
    let prof = exponent_profile(ctx.n())?;
    let level = mode.level(ctx) as f64;
    Ok(level.powf(prof.alpha_at(p)?) * (mode.abs_m() as f64).powf(prof.beta_at(p)?))
}
