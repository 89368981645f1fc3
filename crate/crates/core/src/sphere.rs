//! Spectral data on the complex sphere `S^{2n+1} ⊂ ℂ^{n+1}`.
//!
//! Functions of `⟨z, pole⟩` are written in the chart where the last coordinate
//! is `e^{it} cos ρ`; for those the normalized surface measure reduces to
//! `(n/π) sin^{2n−1}ρ cos ρ dρ dt` on `[0, π/2] × [−π, π]`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive};

use crate::quad::{self, Rule};
use crate::specfun::{jacobi_eval, jacobi_zero_angles, JacobiParams};
use crate::{check_p_range, conjugate_exponent, Error, NormBracket, Result};

/// Agreement required between a quadrature and its refinement.
pub const REFINE_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphereContext {
    n: u32,
}

impl SphereContext {
    pub fn new(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("sphere dimension n must be at least 1".into()));
        }
        Ok(Self { n })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Density of the reduced measure with respect to `dρ dt`, without the
    /// trigonometric factor: `n/π`.
    pub fn reduction_constant(&self) -> f64 {
        f64::from(self.n) / PI
    }

    /// Radial density `2n sin^{2n−1}ρ cos ρ` (the `t` integral already done).
    pub fn radial_density(&self, rho: f64) -> f64 {
        let n = self.n as i32;
        2.0 * f64::from(self.n) * rho.sin().powi(2 * n - 1) * rho.cos()
    }
}

/// Bidegree `(ℓ, ℓ′)` of the eigenspace `H^{ℓℓ′}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Bidegree {
    pub l: u32,
    pub lp: u32,
}

impl Bidegree {
    pub fn new(l: u32, lp: u32) -> Self {
        Self { l, lp }
    }

    pub fn q(&self) -> u32 {
        self.l.min(self.lp)
    }

    pub fn big_q(&self) -> u32 {
        self.l.max(self.lp)
    }

    /// `ℓ′ − ℓ`, the frequency of the zonal function in the angular variable.
    pub fn delta(&self) -> i64 {
        i64::from(self.lp) - i64::from(self.l)
    }

    pub fn abs_delta(&self) -> u32 {
        self.l.abs_diff(self.lp)
    }
}

impl std::fmt::Display for Bidegree {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.l, self.lp)
    }
}

pub(crate) fn binomial(n: u64, k: u64) -> BigUint {
    let k = k.min(n - k.min(n));
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `dim H^{ℓℓ′} = (ℓ+ℓ′+n)/n · C(ℓ+n−1, ℓ) · C(ℓ′+n−1, ℓ′)`.
///
/// On the rays this is `C(ℓ+n, ℓ)`, the number of monomials of degree `ℓ`
/// in `n + 1` variables.
pub fn dim_h(ctx: &SphereContext, bd: Bidegree) -> BigUint {
    let n = u64::from(ctx.n);
    let (l, lp) = (u64::from(bd.l), u64::from(bd.lp));
    let prod = binomial(l + n - 1, l) * binomial(lp + n - 1, lp) * BigUint::from(l + lp + n);
    prod / BigUint::from(n)
}

pub fn dim_h_f64(ctx: &SphereContext, bd: Bidegree) -> f64 {
    dim_h(ctx, bd).to_f64().unwrap_or(f64::INFINITY)
}

/// `(μ, λ) = (−(ℓ+ℓ′)(ℓ+ℓ′+2n), −2ℓℓ′ − n(ℓ+ℓ′))`.
pub fn joint_eigenvalues(ctx: &SphereContext, bd: Bidegree) -> (i64, i64) {
    let n = i64::from(ctx.n);
    let (l, lp) = (i64::from(bd.l), i64::from(bd.lp));
    let mu = -(l + lp) * (l + lp + 2 * n);
    let lambda = -2 * l * lp - n * (l + lp);
    (mu, lambda)
}

/// Tensor grid for the reduced measure: graded Gauss panels in `ρ`, trapezoid in `t`.
///
/// Radial weights include the density `2n sin^{2n−1}ρ cos ρ` and angular
/// weights are divided by `2π`, so `Σ w_i v_j = 1` on the full chart.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    ctx: SphereContext,
    rho_max: f64,
    breakpoints: Vec<f64>,
    radial_nodes: usize,
    angular_nodes: usize,
    rho: Rule,
    t: Rule,
}

impl QuadratureGrid {
    pub fn new(
        ctx: &SphereContext,
        rho_max: f64,
        radial_nodes: usize,
        angular_nodes: usize,
        breakpoints: Vec<f64>,
    ) -> Result<Self> {
        if !(rho_max > 0.0 && rho_max <= FRAC_PI_2) {
            return Err(Error::Domain(format!("rho_max = {rho_max} outside (0, π/2]")));
        }
        if radial_nodes == 0 || angular_nodes == 0 {
            return Err(Error::Domain("grid node counts must be positive".into()));
        }
        let raw = quad::composite_graded(0.0, rho_max, &breakpoints, radial_nodes);
        let weights = raw
            .iter()
            .map(|(r, w)| w * ctx.radial_density(r))
            .collect();
        let rho = Rule {
            nodes: raw.nodes,
            weights,
        };
        let mut t = quad::periodic(angular_nodes);
        t.weights.iter_mut().for_each(|w| *w /= 2.0 * PI);
        Ok(Self {
            ctx: *ctx,
            rho_max,
            breakpoints,
            radial_nodes,
            angular_nodes,
            rho,
            t,
        })
    }

    /// Grid resolving the zonal kernel of `bd`: `4(q + |Δ|) + 32` radial nodes
    /// with breakpoints at the kernel's zeros, and enough angular nodes to
    /// integrate `|Z|^2` exactly.
    pub fn for_kernel(ctx: &SphereContext, bd: Bidegree) -> Result<Self> {
        Self::for_pair(ctx, bd, bd)
    }

    pub fn for_pair(ctx: &SphereContext, a: Bidegree, b: Bidegree) -> Result<Self> {
        let degree = (a.q() + a.abs_delta()).max(b.q() + b.abs_delta()) as usize;
        let mut breaks = zonal_zeros(ctx, a)?;
        if b != a {
            breaks.extend(zonal_zeros(ctx, b)?);
        }
        let freq = (a.delta().unsigned_abs() + b.delta().unsigned_abs()) as usize;
        Self::new(ctx, FRAC_PI_2, 4 * degree + 32, 2 * freq + 8, breaks)
    }

    /// The same grid with twice as many nodes in each variable.
    pub fn refined(&self) -> Self {
        Self::new(
            &self.ctx,
            self.rho_max,
            2 * self.rho.len(),
            2 * self.angular_nodes,
            self.breakpoints.clone(),
        )
        .expect("refining a valid grid")
    }

    pub fn rho_rule(&self) -> &Rule {
        &self.rho
    }

    pub fn t_rule(&self) -> &Rule {
        &self.t
    }

    pub fn radial_nodes(&self) -> usize {
        self.radial_nodes
    }

    pub fn angular_nodes(&self) -> usize {
        self.angular_nodes
    }

    pub fn rho_max(&self) -> f64 {
        self.rho_max
    }

    /// `∫ f dσ` for `f(ρ, t)`.
    pub fn integrate2<F: Fn(f64, f64) -> Complex64>(&self, f: F) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (r, wr) in self.rho.iter() {
            let mut row = Complex64::new(0.0, 0.0);
            for (t, wt) in self.t.iter() {
                row += f(r, t) * wt;
            }
            acc += row * wr;
        }
        acc
    }

    /// `∫ g(ρ) h(t) dσ` on the same tensor rule, with `g` and `h` each
    /// evaluated once per node.
    pub fn integrate_product<G, H>(&self, g: G, h: H) -> Complex64
    where
        G: Fn(f64) -> Complex64,
        H: Fn(f64) -> Complex64,
    {
        let radial: Complex64 = self.rho.iter().map(|(r, w)| g(r) * w).sum();
        let angular: Complex64 = self.t.iter().map(|(t, w)| h(t) * w).sum();
        radial * angular
    }

    /// `∫ f dσ` for `f` depending on `ρ` only.
    pub fn integrate_radial<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.rho.integrate(f)
    }
}

/// Angles `ρ` in `(0, π/2)` where the zonal function of `bd` vanishes.
fn zonal_zeros(ctx: &SphereContext, bd: Bidegree) -> Result<Vec<f64>> {
    let params = zonal_params(ctx, bd)?;
    Ok(jacobi_zero_angles(params)?
        .into_iter()
        .map(|theta| 0.5 * theta)
        .collect())
}

fn zonal_params(ctx: &SphereContext, bd: Bidegree) -> Result<JacobiParams> {
    JacobiParams::new(bd.q(), f64::from(ctx.n - 1), f64::from(bd.abs_delta()))
}

fn checked<F: Fn(&QuadratureGrid) -> f64>(what: &str, grid: &QuadratureGrid, f: F) -> Result<f64> {
    let coarse = f(grid);
    let refined = f(&grid.refined());
    if quad::relative_gap(coarse, refined) > REFINE_TOL {
        return Err(Error::Resolution {
            what: what.to_string(),
            coarse,
            refined,
        });
    }
    Ok(refined)
}

/// Zonal function of `H^{ℓℓ′}`:
/// `Z(θ, φ) = c · e^{i(ℓ′−ℓ)φ} cos^{|Δ|}θ P_q^{(n−1,|Δ|)}(cos 2θ)`,
/// where `cos θ = |⟨z, pole⟩|` and `c` is fixed by `Z(pole) = ‖Z‖₂²`.
#[derive(Debug, Clone)]
pub struct ZonalKernel {
    ctx: SphereContext,
    bd: Bidegree,
    params: JacobiParams,
    scale: f64,
}

impl ZonalKernel {
    pub fn new(ctx: &SphereContext, bd: Bidegree) -> Result<Self> {
        let grid = QuadratureGrid::for_kernel(ctx, bd)?;
        Self::with_grid(ctx, bd, &grid)
    }

    pub fn with_grid(ctx: &SphereContext, bd: Bidegree, grid: &QuadratureGrid) -> Result<Self> {
        let params = zonal_params(ctx, bd)?;
        let shape = |theta: f64| shape(params, bd.abs_delta(), theta);
        let norm_sq = checked("zonal normalization", grid, |g| {
            g.integrate_radial(|r| shape(r).powi(2))
        })?;
        let at_pole = jacobi_eval(params, 1.0)?;
        Ok(Self {
            ctx: *ctx,
            bd,
            params,
            scale: at_pole / norm_sq,
        })
    }

    pub fn context(&self) -> &SphereContext {
        &self.ctx
    }

    pub fn bidegree(&self) -> Bidegree {
        self.bd
    }

    /// The constant `c` found numerically.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Closed form of `c`: `dim H^{ℓℓ′} / C(q+n−1, q)`.
    pub fn analytic_scale(&self) -> f64 {
        let n = u64::from(self.ctx.n);
        let q = u64::from(self.bd.q());
        dim_h_f64(&self.ctx, self.bd) / binomial(q + n - 1, q).to_f64().unwrap_or(f64::INFINITY)
    }

    /// Real radial profile `c cos^{|Δ|}θ P_q(cos 2θ)`.
    pub fn radial(&self, theta: f64) -> f64 {
        self.scale * shape(self.params, self.bd.abs_delta(), theta)
    }

    pub fn pole_value(&self) -> f64 {
        self.radial(0.0)
    }
}

fn shape(params: JacobiParams, abs_delta: u32, theta: f64) -> f64 {
    let c = theta.cos();
    // Degree-q recurrence at fixed small degree; parameters are validated.
    let p = jacobi_eval(params, (2.0 * theta).cos()).unwrap_or(f64::NAN);
    c.powi(abs_delta as i32) * p
}

pub fn zonal_eval(kernel: &ZonalKernel, theta: f64, phi: f64) -> Complex64 {
    let phase = Complex64::from_polar(1.0, kernel.bd.delta() as f64 * phi);
    phase * kernel.radial(theta)
}

/// `‖Z‖_p` under the probability measure; `p = ∞` gives `Z(pole)`.
pub fn zonal_lp_norm(kernel: &ZonalKernel, p: f64, grid: &QuadratureGrid) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(Error::Domain(format!("p = {p} must be at least 1")));
    }
    if p.is_infinite() {
        return Ok(kernel.pole_value().abs());
    }
    let integral = checked(&format!("zonal L^{p} norm {}", kernel.bd), grid, |g| {
        g.integrate_radial(|r| kernel.radial(r).abs().powf(p))
    })?;
    Ok(integral.powf(1.0 / p))
}

/// `⟨Z^A, Z^B⟩ = ∫ Z^A conj(Z^B) dσ`.
pub fn zonal_inner(
    ctx: &SphereContext,
    a: Bidegree,
    b: Bidegree,
    grid: &QuadratureGrid,
) -> Result<Complex64> {
    let za = ZonalKernel::new(ctx, a)?;
    let zb = ZonalKernel::new(ctx, b)?;
    // Z^A conj(Z^B) = R_A(ρ) R_B(ρ) e^{i(Δ_A − Δ_B)t}.
    let freq = (a.delta() - b.delta()) as f64;
    let f = |g: &QuadratureGrid| {
        g.integrate_product(
            |r| Complex64::from(za.radial(r) * zb.radial(r)),
            |t| Complex64::from_polar(1.0, freq * t),
        )
    };
    let coarse = f(grid);
    let refined = f(&grid.refined());
    // Orthogonal pairs give values at rounding level; compare on the scale of
    // the norms rather than of the result.
    let scale = (za.pole_value() * zb.pole_value()).sqrt();
    if (coarse - refined).norm() > REFINE_TOL * scale {
        return Err(Error::Resolution {
            what: format!("inner product {a} vs {b}"),
            coarse: coarse.norm(),
            refined: refined.norm(),
        });
    }
    Ok(refined)
}

/// `(Z ∗ Z)(pole) / Z(pole)`, with the convolution done as a 2-D quadrature
/// of `Z(θ, −φ) Z(θ, φ)`. Equals one exactly for a reproducing kernel.
pub fn reproducing_ratio(kernel: &ZonalKernel, grid: &QuadratureGrid) -> Result<f64> {
    let delta = kernel.bd.delta() as f64;
    let conv = checked(&format!("reproducing identity {}", kernel.bd), grid, |g| {
        g.integrate_product(
            |r| Complex64::from(kernel.radial(r).powi(2)),
            |t| Complex64::from_polar(1.0, -delta * t) * Complex64::from_polar(1.0, delta * t),
        )
        .re
    })?;
    Ok(conv / kernel.pole_value())
}

/// Certified bracket for `‖π_{ℓℓ′}‖_{L^p → L^2}`.
///
/// Lower: `‖Z‖₂ / ‖Z‖_p` (testing on `Z`) or `‖Z‖_{p′} / ‖Z‖₂` (testing the
/// adjoint `L² → L^{p′}` on `Z`), whichever is larger.
/// Upper: the smaller of `‖Z‖_{p′/2}^{1/2}` (TT* and Young) and
/// `‖Z‖₂^{2/p−1}` (interpolating between `p = 1` and `p = 2`).
pub fn projector_norm_bracket(
    ctx: &SphereContext,
    bd: Bidegree,
    p: f64,
    grid: &QuadratureGrid,
) -> Result<NormBracket> {
    check_p_range(p)?;
    let kernel = ZonalKernel::with_grid(ctx, bd, grid)?;
    let two = zonal_lp_norm(&kernel, 2.0, grid)?;
    let pc = conjugate_exponent(p);
    let direct = two / zonal_lp_norm(&kernel, p, grid)?;
    let dual = zonal_lp_norm(&kernel, pc, grid)? / two;
    let lower = direct.max(dual);
    let young = zonal_lp_norm(&kernel, pc / 2.0, grid)?.sqrt();
    let interp = two.powf(2.0 / p - 1.0);
    Ok(NormBracket::new(p, lower, young.min(interp)))
}

/// `‖π_{ℓℓ′} F‖₂ = |⟨F, Z⟩| / ‖Z‖₂` for `F` a function of `(ρ, t)`.
pub fn project_axial<F>(ctx: &SphereContext, bd: Bidegree, f: F, grid: &QuadratureGrid) -> Result<f64>
where
    F: Fn(f64, f64) -> Complex64,
{
    let kernel = ZonalKernel::new(ctx, bd)?;
    let norm = kernel.pole_value().sqrt();
    let inner = |g: &QuadratureGrid| g.integrate2(|r, t| f(r, t) * zonal_eval(&kernel, r, t).conj());
    let coarse = inner(grid);
    let fine = grid.refined();
    let refined = inner(&fine);
    // Judge the disagreement against ∫|F||Z|, so values that vanish by
    // orthogonality are not held to a relative standard.
    let scale = fine
        .integrate2(|r, t| Complex64::new(f(r, t).norm() * kernel.radial(r).abs(), 0.0))
        .re;
    if (coarse - refined).norm() > REFINE_TOL * scale {
        return Err(Error::Resolution {
            what: format!("projection onto {bd}"),
            coarse: coarse.norm(),
            refined: refined.norm(),
        });
    }
    Ok(refined.norm() / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(n: u32) -> SphereContext {
        SphereContext::new(n).unwrap()
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_h(&ctx(2), Bidegree::new(1, 1)), BigUint::from(8u32));
        assert_eq!(dim_h(&ctx(2), Bidegree::new(3, 0)), BigUint::from(10u32));
        for n in 1..5 {
            assert_eq!(dim_h(&ctx(n), Bidegree::new(0, 0)), BigUint::one());
        }
        // Rays count monomials in n + 1 variables.
        for l in 0..12u64 {
            assert_eq!(dim_h(&ctx(3), Bidegree::new(l as u32, 0)), binomial(l + 3, l));
        }
    }

    #[test]
    fn eigenvalue_examples() {
        assert_eq!(joint_eigenvalues(&ctx(2), Bidegree::new(1, 0)), (-5, -2));
        assert_eq!(joint_eigenvalues(&ctx(3), Bidegree::new(0, 0)), (0, 0));
        assert_eq!(joint_eigenvalues(&ctx(1), Bidegree::new(1, 1)), (-8, -4));
    }

    #[test]
    fn grid_has_unit_mass() {
        for n in 1..=4 {
            let g = QuadratureGrid::new(&ctx(n), FRAC_PI_2, 64, 8, vec![]).unwrap();
            assert!((g.integrate_radial(|_| 1.0) - 1.0).abs() < 1e-12);
            let total = g.integrate2(|_, _| Complex64::new(1.0, 0.0));
            assert!((total.re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn constant_kernel() {
        let k = ZonalKernel::new(&ctx(1), Bidegree::new(0, 0)).unwrap();
        let z = zonal_eval(&k, 0.3, 1.0);
        assert!((z.re - 1.0).abs() < 1e-12 && z.im.abs() < 1e-15);
    }

    #[test]
    fn normalization_matches_dimension() {
        for n in 1..=3 {
            for (l, lp) in [(0, 0), (1, 1), (3, 0), (0, 4), (2, 5), (6, 6)] {
                let k = ZonalKernel::new(&ctx(n), Bidegree::new(l, lp)).unwrap();
                let dim = dim_h_f64(&ctx(n), Bidegree::new(l, lp));
                assert!((k.pole_value() / dim - 1.0).abs() < 1e-10, "n={n} ({l},{lp})");
                assert!((k.scale() / k.analytic_scale() - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn modulus_is_phase_independent() {
        let k = ZonalKernel::new(&ctx(2), Bidegree::new(1, 4)).unwrap();
        let a = zonal_eval(&k, 0.4, 0.1).norm();
        let b = zonal_eval(&k, 0.4, 2.9).norm();
        assert!((a - b).abs() < 1e-12 * a);
    }

    #[test]
    fn orthogonality_examples() {
        let c = ctx(2);
        let a = Bidegree::new(2, 1);
        let b = Bidegree::new(1, 2);
        let g = QuadratureGrid::for_pair(&c, a, b).unwrap();
        assert!(zonal_inner(&c, a, b, &g).unwrap().norm() < 1e-8);
        let a = Bidegree::new(1, 1);
        let b = Bidegree::new(0, 0);
        let g = QuadratureGrid::for_pair(&c, a, b).unwrap();
        assert!(zonal_inner(&c, a, b, &g).unwrap().norm() < 1e-8);
        let g = QuadratureGrid::for_kernel(&c, a).unwrap();
        let self_inner = zonal_inner(&c, a, a, &g).unwrap();
        assert!((self_inner.re - 8.0).abs() < 1e-8);
    }

    #[test]
    fn bracket_at_endpoints() {
        let c = ctx(1);
        let bd = Bidegree::new(3, 2);
        let g = QuadratureGrid::for_kernel(&c, bd).unwrap();
        let two = projector_norm_bracket(&c, bd, 2.0, &g).unwrap();
        assert!((two.lower - 1.0).abs() < 1e-10 && (two.upper - 1.0).abs() < 1e-10);
        let one = projector_norm_bracket(&c, bd, 1.0, &g).unwrap();
        assert!(one.relative_width() <= 1e-10);
        let dim = dim_h_f64(&c, bd);
        assert!((one.upper - dim.sqrt()).abs() < 1e-8);
        let mid = projector_norm_bracket(&c, bd, 1.5, &g).unwrap();
        assert!(mid.lower <= mid.upper && mid.lower >= 1.0);
        assert!(projector_norm_bracket(&c, bd, 2.5, &g).is_err());
    }

    #[test]
    fn projection_examples() {
        let c = ctx(2);
        let bd = Bidegree::new(2, 3);
        let k = ZonalKernel::new(&c, bd).unwrap();
        let g = QuadratureGrid::for_kernel(&c, bd).unwrap();
        let own = project_axial(&c, bd, |r, t| zonal_eval(&k, r, t), &g).unwrap();
        assert!((own - k.pole_value().sqrt()).abs() < 1e-8 * own);
        let other = Bidegree::new(1, 2);
        let g2 = QuadratureGrid::for_pair(&c, bd, other).unwrap();
        let cross = project_axial(&c, other, |r, t| zonal_eval(&k, r, t), &g2).unwrap();
        assert!(cross < 1e-8);
        let g0 = QuadratureGrid::for_kernel(&c, Bidegree::new(0, 0)).unwrap();
        let one = project_axial(&c, Bidegree::new(0, 0), |_, _| Complex64::new(1.0, 0.0), &g0)
            .unwrap();
        assert!((one - 1.0).abs() < 1e-12);
    }

    #[test]
    fn under_resolved_grid_is_reported() {
        let c = ctx(1);
        let bd = Bidegree::new(20, 20);
        let coarse = QuadratureGrid::new(&c, FRAC_PI_2, 16, 8, vec![]).unwrap();
        let k = ZonalKernel::new(&c, bd).unwrap();
        assert!(matches!(
            zonal_lp_norm(&k, 1.0, &coarse),
            Err(Error::Resolution { .. })
        ));
    }
}
