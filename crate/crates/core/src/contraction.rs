//! Contraction of `S^{2n+1}` onto the reduced Heisenberg group.
//!
//! A function `f` on `h^n` is carried to the sphere by
//! `f_ν(ρ, t) = ν^n f̃(ρ√ν, tν)`, where `f̃` is `f` extended periodically in
//! `t`. As `ν → ∞` the sphere's `L^p` norms and joint projections of `f_ν`,
//! suitably rescaled, converge to those of `f`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::heis::{HeisContext, HeisMode, LaguerreKernel};
use crate::quad;
use crate::sphere::{project_axial, Bidegree, QuadratureGrid, SphereContext};
use crate::{conjugate_exponent, Error, Result};

const REL_TOL: f64 = 1e-13;

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn check_range(name: &str, x: f64, lo: f64, hi: f64) -> Result<()> {
    if !(lo..=hi).contains(&x) {
        return Err(domain(format!("{name} = {x} outside [{lo}, {hi}]")));
    }
    Ok(())
}

/// Point `η(Θ, Φ)` of `S^{2n−1}`:
/// `η_j = e^{iφ_j} sin θ_{n−1} ⋯ sin θ_j · cos θ_{j−1}` (no cosine for `j = 1`).
fn eta(theta: &[f64], phi: &[f64]) -> Result<Vec<Complex64>> {
    let n = phi.len();
    if n == 0 || theta.len() + 1 != n {
        return Err(domain(format!(
            "need n ≥ 1 angles φ and n − 1 angles θ, got {} and {}",
            phi.len(),
            theta.len()
        )));
    }
    for (i, &th) in theta.iter().enumerate() {
        check_range(&format!("theta_{}", i + 1), th, 0.0, FRAC_PI_2)?;
    }
    for (i, &ph) in phi.iter().enumerate() {
        check_range(&format!("phi_{}", i + 1), ph, 0.0, 2.0 * PI)?;
    }
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        // theta is 1-based in the formula: theta[i - 1] = θ_i.
        let mut modulus: f64 = (j..n).map(|i| theta[i - 1].sin()).product();
        if j >= 2 {
            modulus *= theta[j - 2].cos();
        }
        out.push(Complex64::from_polar(modulus, phi[j - 1]));
    }
    Ok(out)
}

/// The sphere chart: `(η sin ρ, e^{it} cos ρ) ∈ S^{2n+1} ⊂ ℂ^{n+1}`.
pub fn sphere_point(theta: &[f64], rho: f64, phi: &[f64], t: f64) -> Result<Vec<Complex64>> {
    check_range("rho", rho, 0.0, FRAC_PI_2)?;
    check_range("t", t, -PI, PI)?;
    let mut out: Vec<Complex64> = eta(theta, phi)?.into_iter().map(|e| e * rho.sin()).collect();
    out.push(Complex64::from_polar(rho.cos(), t));
    Ok(out)
}

/// The Heisenberg chart: `(r η, t) ∈ ℂ^n × 𝕋`.
pub fn heis_point(theta: &[f64], r: f64, phi: &[f64], t: f64) -> Result<(Vec<Complex64>, f64)> {
    if !(r >= 0.0) {
        return Err(domain(format!("r = {r} must be non-negative")));
    }
    check_range("t", t, -PI, PI)?;
    Ok((eta(theta, phi)?.into_iter().map(|e| e * r).collect(), t))
}

/// A compactly supported function of `(|z|, t)` on `h^n`.
pub trait AxialFunction: Sync {
    fn eval(&self, r: f64, t: f64) -> Complex64;

    /// Radius beyond which the function vanishes.
    fn support_radius(&self) -> f64;

    /// Largest `|j|` among the `t`-frequencies present.
    fn max_frequency(&self) -> u64;

    /// Radii where the function is less smooth.
    fn breakpoints(&self) -> Vec<f64> {
        Vec::new()
    }
}

/// `exp(1 − 1/(1 − (r/R)²)) e^{ijt}` for `r < R`, zero outside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialBump {
    pub radius: f64,
    pub frequency: i64,
}

impl RadialBump {
    pub fn new(radius: f64, frequency: i64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(domain(format!("bump radius {radius} must be positive")));
        }
        Ok(Self { radius, frequency })
    }

    pub fn mirrored(&self) -> Self {
        Self {
            radius: self.radius,
            frequency: -self.frequency,
        }
    }

    pub fn profile(&self, r: f64) -> f64 {
        let x = r / self.radius;
        if x >= 1.0 {
            0.0
        } else {
            (1.0 - 1.0 / (1.0 - x * x)).exp()
        }
    }
}

impl AxialFunction for RadialBump {
    fn eval(&self, r: f64, t: f64) -> Complex64 {
        Complex64::from_polar(self.profile(r), self.frequency as f64 * t)
    }

    fn support_radius(&self) -> f64 {
        self.radius
    }

    fn max_frequency(&self) -> u64 {
        self.frequency.unsigned_abs()
    }
}

/// The Laguerre kernel of a mode, cut off at `radius`.
#[derive(Debug, Clone, Copy)]
pub struct LaguerreProfile {
    kernel: LaguerreKernel,
    radius: f64,
}

impl LaguerreProfile {
    pub fn new(ctx: &HeisContext, mode: HeisMode, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(domain(format!("cutoff radius {radius} must be positive")));
        }
        Ok(Self {
            kernel: LaguerreKernel::new(ctx, mode)?,
            radius,
        })
    }
}

impl AxialFunction for LaguerreProfile {
    fn eval(&self, r: f64, t: f64) -> Complex64 {
        if r > self.radius {
            Complex64::new(0.0, 0.0)
        } else {
            self.kernel.eval(r, t)
        }
    }

    fn support_radius(&self) -> f64 {
        self.radius
    }

    fn max_frequency(&self) -> u64 {
        self.kernel.mode().abs_m()
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.kernel.zero_radii().unwrap_or_default()
    }
}

/// `f_ν(ρ, t) = ν^n f̃(ρ√ν, tν)` on the sphere chart.
pub struct ScaledSphereFunction<'a, F: AxialFunction + ?Sized> {
    source: &'a F,
    n: u32,
    nu: u64,
}

impl<F: AxialFunction + ?Sized> std::fmt::Debug for ScaledSphereFunction<'_, F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScaledSphereFunction")
            .field("n", &self.n)
            .field("nu", &self.nu)
            .finish()
    }
}

/// Smallest `ν` with `R/√ν ≤ π/2`.
pub fn min_admissible_nu(radius: f64) -> u64 {
    let mut nu = ((2.0 * radius / PI).powi(2)).ceil().max(1.0) as u64;
    while radius / (nu as f64).sqrt() > FRAC_PI_2 {
        nu += 1;
    }
    nu
}

pub fn scale_function<F: AxialFunction + ?Sized>(
    n: u32,
    f: &F,
    nu: u64,
) -> Result<ScaledSphereFunction<'_, F>> {
    if n == 0 || nu == 0 {
        return Err(domain(format!("need n ≥ 1 and ν ≥ 1, got n = {n}, ν = {nu}")));
    }
    let radius = f.support_radius();
    if radius / (nu as f64).sqrt() > FRAC_PI_2 {
        return Err(Error::ChartOverflow {
            radius,
            nu,
            min_nu: min_admissible_nu(radius),
        });
    }
    Ok(ScaledSphereFunction { source: f, n, nu })
}

fn wrap_angle(t: f64) -> f64 {
    let w = (t + PI).rem_euclid(2.0 * PI) - PI;
    if w >= PI {
        w - 2.0 * PI
    } else {
        w
    }
}

impl<F: AxialFunction + ?Sized> ScaledSphereFunction<'_, F> {
    pub fn nu(&self) -> u64 {
        self.nu
    }

    pub fn eval(&self, rho: f64, t: f64) -> Complex64 {
        let nu = self.nu as f64;
        let amp = nu.powi(self.n as i32);
        self.source.eval(rho * nu.sqrt(), wrap_angle(t * nu)) * amp
    }

    /// `R/√ν`; the function vanishes beyond it.
    pub fn support_rho(&self) -> f64 {
        self.source.support_radius() / (self.nu as f64).sqrt()
    }

    /// Mean over `t ∈ [−π, π]` of `g(f_ν(ρ, t))`.
    ///
    /// `t ↦ tν` wraps `ν` times around the circle, so an `M`-point trapezoid
    /// rule in the wrapped variable is the `νM`-point rule in `t`.
    fn t_mean<G: Fn(Complex64) -> f64>(&self, rho: f64, nodes: usize, g: G) -> f64 {
        let nu = self.nu as f64;
        let amp = nu.powi(self.n as i32);
        let rule = quad::periodic(nodes);
        let r = rho * nu.sqrt();
        rule.iter()
            .map(|(s, w)| w * g(self.source.eval(r, s) * amp))
            .sum::<f64>()
            / (2.0 * PI)
    }
}

fn t_nodes<F: AxialFunction + ?Sized>(f: &F) -> usize {
    4 * f.max_frequency() as usize + 16
}

fn radial_cuts<F: AxialFunction + ?Sized>(f: &F, scale: f64) -> Vec<f64> {
    let mut cuts: Vec<f64> = f.breakpoints().into_iter().map(|b| b * scale).collect();
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    cuts
}

fn adaptive_pieces<G: Fn(f64) -> f64>(g: &G, hi: f64, cuts: &[f64], abs_tol: f64) -> Result<f64> {
    let mut lo = 0.0;
    let mut total = 0.0;
    for c in cuts.iter().copied().filter(|&c| c > 0.0 && c < hi).chain(std::iter::once(hi)) {
        total += quad::adaptive(g, lo, c, REL_TOL, abs_tol)?;
        lo = c;
    }
    Ok(total)
}

/// `‖f‖_{L^p(h^n)}`, `1 ≤ p < ∞`.
pub fn heis_lp_norm<F: AxialFunction + ?Sized>(ctx: &HeisContext, f: &F, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(domain(format!("p = {p} must be finite and at least 1")));
    }
    let m = t_nodes(f);
    let rule = quad::periodic(m);
    let g = |r: f64| {
        let mean = rule.iter().map(|(t, w)| w * f.eval(r, t).norm().powf(p)).sum::<f64>()
            / (2.0 * PI);
        mean * ctx.radial_density(r)
    };
    let integral = adaptive_pieces(&g, f.support_radius(), &radial_cuts(f, 1.0), 0.0)?;
    Ok(integral.powf(1.0 / p))
}

/// `‖f_ν‖_{L^p(S^{2n+1})}`.
pub fn sphere_lp_norm<F: AxialFunction + ?Sized>(
    ctx: &SphereContext,
    f_nu: &ScaledSphereFunction<'_, F>,
    p: f64,
) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(domain(format!("p = {p} must be finite and at least 1")));
    }
    let m = t_nodes(f_nu.source);
    let g = |rho: f64| f_nu.t_mean(rho, m, |z| z.norm().powf(p)) * ctx.radial_density(rho);
    let scale = 1.0 / (f_nu.nu as f64).sqrt();
    let integral = adaptive_pieces(&g, f_nu.support_rho(), &radial_cuts(f_nu.source, scale), 0.0)?;
    Ok(integral.powf(1.0 / p))
}

/// `ν^{−n/p′} ‖f_ν‖_{L^p(S^{2n+1})}`, which stays below `‖f‖_{L^p(h^n)}` and
/// tends to it.
pub fn lemma2_ratio<F: AxialFunction + ?Sized>(
    ctx: &SphereContext,
    f: &F,
    nu: u64,
    p: f64,
) -> Result<f64> {
    let f_nu = scale_function(ctx.n(), f, nu)?;
    let norm = sphere_lp_norm(ctx, &f_nu, p)?;
    let exponent = -f64::from(ctx.n()) / conjugate_exponent(p);
    Ok((nu as f64).powf(exponent) * norm)
}

/// One `ν` of a norm-ratio sweep.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Lemma2Record {
    pub nu: u64,
    pub ratio: f64,
    pub target: f64,
    pub gap: f64,
}

pub fn lemma2_sweep<F: AxialFunction + ?Sized>(
    n: u32,
    f: &F,
    nus: &[u64],
    p: f64,
) -> Result<Vec<Lemma2Record>> {
    let sctx = SphereContext::new(n)?;
    let target = heis_lp_norm(&HeisContext::new(n)?, f, p)?;
    nus.iter()
        .map(|&nu| {
            let ratio = lemma2_ratio(&sctx, f, nu, p)?;
            Ok(Lemma2Record {
                nu,
                ratio,
                target,
                gap: (target - ratio) / target,
            })
        })
        .collect()
}

/// How the sphere degree `N` follows `ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NuSchedule {
    /// `N = |m|ν + 2k`: the bidegree's angular frequency `N − 2k` equals the
    /// frequency `|m|ν` of `f_ν`.
    #[default]
    Shifted,
    /// `N = round(|m|ν)`.
    Rounded,
}

impl NuSchedule {
    pub fn degree(&self, m: i64, k: u32, nu: u64) -> u64 {
        match self {
            NuSchedule::Shifted => m.unsigned_abs() * nu + 2 * u64::from(k),
            NuSchedule::Rounded => m.unsigned_abs() * nu,
        }
    }
}

/// One `ν` of a projection-limit run.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct LimitRecord {
    pub nu: u64,
    pub big_n: u64,
    pub bidegree: Bidegree,
    pub sphere_value: f64,
    pub target: f64,
    pub rel_err: f64,
}

/// `‖P_{m,k} f‖₂ = |⟨f, Φ⟩| / ‖Φ‖₂`.
pub fn limit_target<F: AxialFunction + ?Sized>(
    ctx: &HeisContext,
    f: &F,
    mode: HeisMode,
) -> Result<f64> {
    let kernel = LaguerreKernel::new(ctx, mode)?;
    let m = t_nodes(f) + 2 * mode.abs_m() as usize;
    let rule = quad::periodic(m);
    let freq = mode.m() as f64;
    let coeff = |r: f64| -> Complex64 {
        let mean: Complex64 = rule
            .iter()
            .map(|(t, w)| f.eval(r, t) * Complex64::from_polar(w, -freq * t))
            .sum::<Complex64>()
            / (2.0 * PI);
        mean * kernel.radial(r) * ctx.radial_density(r)
    };
    let mut cuts = radial_cuts(f, 1.0);
    cuts.extend(kernel.zero_radii()?);
    cuts.sort_by(|a, b| a.partial_cmp(b).expect("finite breakpoints"));
    let hi = f.support_radius();
    // The coefficient vanishes identically off the matching frequency, so
    // accuracy is judged against ∫|f||Φ| rather than the result itself.
    let magnitude = |r: f64| {
        let mean = rule.iter().map(|(t, w)| w * f.eval(r, t).norm()).sum::<f64>() / (2.0 * PI);
        mean * kernel.radial(r).abs() * ctx.radial_density(r)
    };
    let scale = adaptive_pieces(&magnitude, hi, &cuts, 0.0)?;
    let abs_tol = REL_TOL * scale;
    let re = adaptive_pieces(&|r| coeff(r).re, hi, &cuts, abs_tol)?;
    let im = adaptive_pieces(&|r| coeff(r).im, hi, &cuts, abs_tol)?;
    Ok(Complex64::new(re, im).norm() / kernel.origin_value().sqrt())
}

/// `ν^{−n/2} ‖π_{bd} f_ν‖₂` for the bidegree matched to `(m, k)` at this `ν`.
pub fn sphere_side<F: AxialFunction + ?Sized>(
    n: u32,
    f: &F,
    m: i64,
    k: u32,
    nu: u64,
    schedule: NuSchedule,
) -> Result<(u64, Bidegree, f64)> {
    if m == 0 {
        return Err(domain("m must be nonzero".into()));
    }
    let sctx = SphereContext::new(n)?;
    let f_nu = scale_function(n, f, nu)?;
    let big_n = schedule.degree(m, k, nu);
    let k64 = u64::from(k);
    if 2 * k64 > big_n {
        return Err(domain(format!("need k ≤ N − k, got k = {k}, N = {big_n}")));
    }
    let other = (big_n - k64) as u32;
    let bd = if m > 0 {
        Bidegree::new(k, other)
    } else {
        Bidegree::new(other, k)
    };
    let freq = f.max_frequency() * nu + u64::from(bd.abs_delta());
    let scale = 1.0 / (nu as f64).sqrt();
    let grid = QuadratureGrid::new(
        &sctx,
        f_nu.support_rho(),
        128 + 16 * k as usize,
        2 * freq as usize + 8,
        radial_cuts(f, scale),
    )?;
    let value = project_axial(&sctx, bd, |rho, t| f_nu.eval(rho, t), &grid)?;
    Ok((big_n, bd, (nu as f64).powf(-f64::from(n) / 2.0) * value))
}

/// Runs the projection limit along a `ν` schedule. For `m < 0` the bidegree is
/// transposed to `(N − k, k)`.
pub fn proposition3_harness<F: AxialFunction + ?Sized>(
    n: u32,
    f: &F,
    m: i64,
    k: u32,
    nus: &[u64],
    schedule: NuSchedule,
) -> Result<Vec<LimitRecord>> {
    let hctx = HeisContext::new(n)?;
    let mode = HeisMode::new(m, k)?;
    let target = limit_target(&hctx, f, mode)?;
    nus.iter()
        .map(|&nu| {
            let (big_n, bidegree, sphere_value) = sphere_side(n, f, m, k, nu, schedule)?;
            let rel_err = if target > 0.0 {
                (sphere_value - target).abs() / target
            } else {
                sphere_value.abs()
            };
            Ok(LimitRecord {
                nu,
                big_n,
                bidegree,
                sphere_value,
                target,
                rel_err,
            })
        })
        .collect()
}

/// Exact inner product of two scaled chart points against its asymptotic form.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct DiagnosticRecord {
    pub nu: u64,
    /// Largest `|⟨x, y⟩ − cos(|z−w|/√ν) e^{iψ}|` over the point set.
    pub max_remainder: f64,
    /// `ν · max_remainder`, which tends to zero.
    pub scaled: f64,
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
}

fn diagnostic_points(n: usize) -> Vec<(Vec<f64>, f64, Vec<f64>, f64)> {
    // Deterministic spread of points with |z| ≤ 1 and |t| ≤ 3.
    (0..12)
        .map(|i| {
            let x = i as f64;
            let theta = (0..n - 1).map(|j| 0.3 + 0.1 * ((x + j as f64) % 10.0)).collect();
            let phi = (0..n).map(|j| (0.7 * x + 1.3 * j as f64) % (2.0 * PI)).collect();
            let r = 0.15 + 0.07 * x;
            let t = -3.0 + 0.5 * x;
            (theta, r, phi, t)
        })
        .collect()
}

/// Checks `⟨Ψ_ν(z,t), Ψ_ν(w,t′)⟩ = cos(|z−w|/√ν) e^{i(t−t′+Im z·w̄)/ν} + o(1/ν)`,
/// where `Ψ_ν(z, t)` is the chart point with `ρ = |z|/√ν` and angle `t/ν`.
pub fn inner_product_diagnostic(n: u32, nus: &[u64]) -> Result<Vec<DiagnosticRecord>> {
    if n == 0 {
        return Err(domain("n must be at least 1".into()));
    }
    let pts = diagnostic_points(n as usize);
    nus.iter()
        .map(|&nu| {
            let s = (nu as f64).sqrt();
            let mut worst: f64 = 0.0;
            let mapped = pts
                .iter()
                .map(|(th, r, ph, t)| {
                    let (z, _) = heis_point(th, *r, ph, *t)?;
                    let x = sphere_point(th, r / s, ph, t / nu as f64)?;
                    Ok((z, *t, x))
                })
                .collect::<Result<Vec<_>>>()?;
            for (i, (z, t, x)) in mapped.iter().enumerate() {
                for (w, tp, y) in mapped.iter().skip(i + 1) {
                    let exact = inner(x, y);
                    let dist = z
                        .iter()
                        .zip(w)
                        .map(|(a, b)| (a - b).norm_sqr())
                        .sum::<f64>()
                        .sqrt();
                    let psi = (t - tp + inner(z, w).im) / nu as f64;
                    let approx = Complex64::from_polar((dist / s).cos(), psi);
                    worst = worst.max((exact - approx).norm());
                }
            }
            Ok(DiagnosticRecord {
                nu,
                max_remainder: worst,
                scaled: worst * nu as f64,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_point_examples() {
        let p = sphere_point(&[0.4], 0.0, &[1.0, 2.0], 0.7).unwrap();
        assert!(p[0].norm() < 1e-16 && p[1].norm() < 1e-16);
        assert!((p[2] - Complex64::from_polar(1.0, 0.7)).norm() < 1e-15);
        let q = sphere_point(&[0.4, 1.1], FRAC_PI_2, &[1.0, 2.0, 3.0], -2.0).unwrap();
        assert!(q[3].norm() < 1e-15);
        let e = eta(&[0.4, 1.1], &[1.0, 2.0, 3.0]).unwrap();
        for (a, b) in q.iter().zip(&e) {
            assert!((a - b).norm() < 1e-15);
        }
        assert!(sphere_point(&[0.4], 2.0, &[1.0, 2.0], 0.0).is_err());
        assert!(sphere_point(&[], 0.5, &[1.0, 2.0], 0.0).is_err());
    }

    #[test]
    fn scaling_examples() {
        let f = RadialBump::new(1.0, 1).unwrap();
        let one = scale_function(1, &f, 1).unwrap();
        assert!((one.eval(0.3, 0.2) - f.eval(0.3, 0.2)).norm() < 1e-15);
        let f16 = scale_function(2, &f, 16).unwrap();
        let want = f.eval(0.1 * 4.0, wrap_angle(3.0 * 16.0)) * 256.0;
        assert!((f16.eval(0.1, 3.0) - want).norm() < 1e-10);
        assert_eq!(f16.eval(0.26, 0.0), Complex64::new(0.0, 0.0));
        let wide = RadialBump::new(8.0, 2).unwrap();
        match scale_function(1, &wide, 16) {
            Err(Error::ChartOverflow { min_nu, .. }) => {
                assert_eq!(min_nu, 26);
                assert!(scale_function(1, &wide, min_nu).is_ok());
                assert!(scale_function(1, &wide, min_nu - 1).is_err());
            }
            other => panic!("expected chart overflow, got {other:?}"),
        }
    }

    #[test]
    fn lemma2_strict_and_converging() {
        let sctx = SphereContext::new(1).unwrap();
        let f = RadialBump::new(1.0, 1).unwrap();
        let target = heis_lp_norm(&HeisContext::new(1).unwrap(), &f, 2.0).unwrap();
        let a = lemma2_ratio(&sctx, &f, 16, 2.0).unwrap();
        let b = lemma2_ratio(&sctx, &f, 64, 2.0).unwrap();
        assert!(a < b && b < target);
        assert!((target - b) * 2.0 <= target - a);
    }

    #[test]
    fn eigenfunction_target_is_its_norm() {
        let hctx = HeisContext::new(1).unwrap();
        let mode = HeisMode::new(1, 1).unwrap();
        let f = LaguerreProfile::new(&hctx, mode, 8.0).unwrap();
        let target = limit_target(&hctx, &f, mode).unwrap();
        let norm = heis_lp_norm(&hctx, &f, 2.0).unwrap();
        assert!((target / norm - 1.0).abs() < 1e-8);
        let other = limit_target(&hctx, &f, HeisMode::new(2, 1).unwrap()).unwrap();
        assert!(other < 1e-10);
    }

    #[test]
    fn rounded_schedule_misses_k_positive() {
        let f = RadialBump::new(1.0, 1).unwrap();
        let (_, _, v) = sphere_side(1, &f, 1, 1, 16, NuSchedule::Rounded).unwrap();
        assert!(v < 1e-10);
        let (_, _, w) = sphere_side(1, &f, 1, 1, 16, NuSchedule::Shifted).unwrap();
        assert!(w > 0.1);
    }

    #[test]
    fn diagnostic_remainder_is_small_o() {
        let recs = inner_product_diagnostic(2, &[16, 64, 256, 1024]).unwrap();
        for w in recs.windows(2) {
            assert!(w[1].scaled < w[0].scaled);
        }
    }
}
