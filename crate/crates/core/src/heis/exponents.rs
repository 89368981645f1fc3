//! The piecewise-affine exponent laws `α`, `β`, `ρ` in `u = 1/p`.

use num_rational::Rational64;
use num_traits::{One, ToPrimitive, Zero};

use crate::{Error, Result};

/// Exponents for the `L^p → L^2` growth of joint spectral projectors on `h^n`.
///
/// Exact rational arithmetic in `u = 1/p`; the `*_at` methods take `p` as a float.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentProfile {
    n: u32,
}

fn r(num: i64, den: i64) -> Rational64 {
    Rational64::new(num, den)
}

pub fn exponent_profile(n: u32) -> Result<ExponentProfile> {
    if n == 0 {
        return Err(Error::Domain("n must be at least 1".into()));
    }
    Ok(ExponentProfile { n })
}

impl ExponentProfile {
    pub fn n(&self) -> u32 {
        self.n
    }

    fn nn(&self) -> i64 {
        i64::from(self.n)
    }

    /// `p̃ = 2(2n+1)/(2n+3)`.
    pub fn p_tilde(&self) -> Rational64 {
        let n = self.nn();
        r(2 * (2 * n + 1), 2 * n + 3)
    }

    /// `1/p̃`.
    pub fn u_tilde(&self) -> Rational64 {
        self.p_tilde().recip()
    }

    fn check_u(&self, u: Rational64) -> Result<()> {
        if u < r(1, 2) || u > Rational64::one() {
            return Err(Error::Domain(format!("u = 1/p = {u} outside [1/2, 1]")));
        }
        Ok(())
    }

    /// `(n(u − ½) − ½, ¼ − u/2)`: the branch for `p < p̃` and for `p ≥ p̃`.
    pub fn alpha_branches(&self, u: Rational64) -> (Rational64, Rational64) {
        let half = r(1, 2);
        (
            Rational64::from(self.nn()) * (u - half) - half,
            r(1, 4) - u / 2,
        )
    }

    /// `(½, (2n+1)(u/2 − ¼))`: the branch for `p < p̃` and for `p ≥ p̃`.
    pub fn rho_branches(&self, u: Rational64) -> (Rational64, Rational64) {
        (
            r(1, 2),
            Rational64::from(2 * self.nn() + 1) * (u / 2 - r(1, 4)),
        )
    }

    pub fn alpha(&self, u: Rational64) -> Result<Rational64> {
        self.check_u(u)?;
        let (low_p, high_p) = self.alpha_branches(u);
        Ok(if u > self.u_tilde() { low_p } else { high_p })
    }

    /// `β(u) = n(u − ½)`.
    pub fn beta(&self, u: Rational64) -> Result<Rational64> {
        self.check_u(u)?;
        Ok(Rational64::from(self.nn()) * (u - r(1, 2)))
    }

    pub fn rho(&self, u: Rational64) -> Result<Rational64> {
        self.check_u(u)?;
        let (low_p, high_p) = self.rho_branches(u);
        Ok(if u > self.u_tilde() { low_p } else { high_p })
    }

    fn p_below_tilde(&self, p: f64) -> bool {
        p < self.p_tilde().to_f64().unwrap_or(f64::NAN)
    }

    fn check_p(p: f64) -> Result<f64> {
        crate::check_p_range(p)?;
        Ok(1.0 / p)
    }

    pub fn alpha_at(&self, p: f64) -> Result<f64> {
        let u = Self::check_p(p)?;
        let n = f64::from(self.n);
        Ok(if self.p_below_tilde(p) {
            n * (u - 0.5) - 0.5
        } else {
            0.25 - u / 2.0
        })
    }

    pub fn beta_at(&self, p: f64) -> Result<f64> {
        let u = Self::check_p(p)?;
        Ok(f64::from(self.n) * (u - 0.5))
    }

    pub fn rho_at(&self, p: f64) -> Result<f64> {
        let u = Self::check_p(p)?;
        Ok(if self.p_below_tilde(p) {
            0.5
        } else {
            f64::from(2 * self.n + 1) * (u / 2.0 - 0.25)
        })
    }

    /// `α` and `ρ` agree across the two branches at `p̃`.
    pub fn is_continuous_at_p_tilde(&self) -> bool {
        let u = self.u_tilde();
        let (a0, a1) = self.alpha_branches(u);
        let (r0, r1) = self.rho_branches(u);
        a0 == a1 && r0 == r1
    }

    /// `−1/(2(2n+1))`, the common value of `α` at `p̃`.
    pub fn alpha_at_p_tilde(&self) -> Rational64 {
        r(-1, 2 * (2 * self.nn() + 1))
    }

    pub fn is_zero_at_two(&self) -> bool {
        let u = r(1, 2);
        self.alpha(u).map(|a| a.is_zero()).unwrap_or(false)
            && self.beta(u).map(|b| b.is_zero()).unwrap_or(false)
            && self.rho(u).map(|x| x.is_zero()).unwrap_or(false)
    }
}
