//! Univariate extreme-value and Pareto distribution utilities.
//!
//! Covers the GEV(μ, σ, γ) family, the generalized Pareto family used as a
//! marginal model, the unit Fréchet quantile, GEV moments and variance in
//! terms of Γ(1 − jγ), and the ARMAX norming constants
//! a_r = (r(1−α))^γ, b_r = {(r(1−α))^γ − 1}/γ.

use crate::error::{Error, Result};
use statrs::function::gamma::gamma as gamma_fn;

/// Shape parameters below this magnitude take the analytic γ = 0 branch,
/// avoiding catastrophic cancellation in (x^γ − 1)/γ.
pub const GAMMA_ZERO_EPS: f64 = 1e-9;

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// GEV location/scale/shape triple.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GevParams {
    pub mu: f64,
    pub sigma: f64,
    pub gamma: f64,
}

impl GevParams {
    pub fn new(mu: f64, sigma: f64, gamma: f64) -> Result<Self> {
        if !mu.is_finite() || !sigma.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidParameter(
                "GEV parameters must be finite".into(),
            ));
        }
        if sigma <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "GEV scale must be positive, got {sigma}"
            )));
        }
        Ok(Self { mu, sigma, gamma })
    }

    /// GEV(0, 1, γ).
    pub fn standard(gamma: f64) -> Self {
        Self {
            mu: 0.0,
            sigma: 1.0,
            gamma,
        }
    }

    /// Distribution function G_{(μ,σ,γ)}(x).
    ///
    /// Returns 0 below the lower support endpoint and 1 above the upper one.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        if !x.is_finite() {
            return Err(Error::Domain(format!("non-finite argument {x}")));
        }
        let z = (x - self.mu) / self.sigma;
        if self.gamma.abs() < GAMMA_ZERO_EPS {
            return Ok((-(-z).exp()).exp());
        }
        let t = 1.0 + self.gamma * z;
        if t <= 0.0 {
            // Below support for γ > 0, above support for γ < 0.
            return Ok(if self.gamma > 0.0 { 0.0 } else { 1.0 });
        }
        Ok((-t.powf(-1.0 / self.gamma)).exp())
    }

    /// Quantile function, the inverse of [`GevParams::cdf`] on (0, 1).
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(q > 0.0 && q < 1.0) {
            return Err(Error::Domain(format!("quantile level {q} not in (0,1)")));
        }
        let l = -q.ln(); // in (0, ∞)
        let z = if self.gamma.abs() < GAMMA_ZERO_EPS {
            -l.ln()
        } else {
            (l.powf(-self.gamma) - 1.0) / self.gamma
        };
        Ok(self.mu + self.sigma * z)
    }
}

/// Block-size norming constants, one (a, b) pair per dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct NormingSequence {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub r: usize,
}

impl NormingSequence {
    pub fn new(a: Vec<f64>, b: Vec<f64>, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("block size r must be >= 1".into()));
        }
        if a.len() != b.len() {
            return Err(Error::DimensionMismatch {
                expected: a.len(),
                got: b.len(),
            });
        }
        if a.iter().any(|&x| !(x > 0.0) || !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "every scaling component must be positive and finite".into(),
            ));
        }
        if b.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "every centering component must be finite".into(),
            ));
        }
        Ok(Self { a, b, r })
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// The identity norming (a = 1, b = 0) in `d` dimensions.
    pub fn identity(r: usize, d: usize) -> Self {
        Self {
            a: vec![1.0; d],
            b: vec![0.0; d],
            r,
        }
    }
}

/// CDF of the Pareto family F_γ: standard exponential for γ = 0, with
/// support truncated to [0, −1/γ] for γ < 0.
pub fn gpd_cdf(x: f64, gamma: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("non-finite argument {x}")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    if gamma.abs() < GAMMA_ZERO_EPS {
        return Ok(-(-x).exp_m1());
    }
    if gamma < 0.0 && x >= -1.0 / gamma {
        return Ok(1.0);
    }
    Ok(1.0 - (1.0 + gamma * x).powf(-1.0 / gamma))
}

/// Generalized inverse F_γ^← of [`gpd_cdf`] on (0, 1).
pub fn gpd_quantile(q: f64, gamma: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("quantile level {q} not in (0,1)")));
    }
    if gamma.abs() < GAMMA_ZERO_EPS {
        return Ok(-(-q).ln_1p());
    }
    Ok(((1.0 - q).powf(-gamma) - 1.0) / gamma)
}

/// Unit Fréchet quantile F_W^←(q) = −1/log q.
pub fn frechet_quantile(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::Domain(format!("quantile level {q} not in (0,1)")));
    }
    Ok(-1.0 / q.ln())
}

/// j-th raw moment of GEV(0, 1, γ), 1 ≤ j ≤ 4, requiring jγ < 1.
///
/// For γ ≠ 0 the moment is the binomial combination of g_i = Γ(1 − iγ):
/// μ_j = γ^{-j} Σ_{i=0}^{j} C(j,i) (−1)^{j−i} g_i. The γ = 0 values follow
/// from the cumulants of the Gumbel distribution.
pub fn gev_moment(j: u32, gamma: f64) -> Result<f64> {
    if !(1..=4).contains(&j) {
        return Err(Error::InvalidParameter(format!(
            "moment order {j} not in 1..4"
        )));
    }
    if (j as f64) * gamma >= 1.0 {
        return Err(Error::NonIntegrable(format!(
            "E|Z|^{j} requires {j}*gamma < 1, got gamma = {gamma}"
        )));
    }
    let pi = std::f64::consts::PI;
    if gamma.abs() < GAMMA_ZERO_EPS {
        let e = EULER_GAMMA;
        let z3 = ZETA_3;
        return Ok(match j {
            1 => e,
            2 => pi * pi / 6.0 + e * e,
            3 => 2.0 * z3 + e * pi * pi / 2.0 + e * e * e,
            _ => {
                3.0 * pi.powi(4) / 20.0 + e * e * pi * pi + 8.0 * e * z3 + e.powi(4)
            }
        });
    }
    let g: Vec<f64> = (0..=j)
        .map(|i| gamma_fn(1.0 - (i as f64) * gamma))
        .collect();
    let binom = [
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [1.0, 1.0, 0.0, 0.0, 0.0],
        [1.0, 2.0, 1.0, 0.0, 0.0],
        [1.0, 3.0, 3.0, 1.0, 0.0],
        [1.0, 4.0, 6.0, 4.0, 1.0],
    ];
    let mut num = 0.0;
    for i in 0..=j as usize {
        let sign = if (j as usize - i) % 2 == 0 { 1.0 } else { -1.0 };
        num += sign * binom[j as usize][i] * g[i];
    }
    Ok(num / gamma.powi(j as i32))
}

/// Apéry's constant ζ(3).
pub const ZETA_3: f64 = 1.202_056_903_159_594_3;

/// Variance τ²(γ) of the GEV(0, 1, γ) distribution, requiring γ < 1/2:
/// {Γ(1−2γ) − Γ(1−γ)²}/γ² for γ ≠ 0 and π²/6 for γ = 0.
pub fn gev_variance_tau2(gamma: f64) -> Result<f64> {
    if gamma >= 0.5 {
        return Err(Error::NonIntegrable(format!(
            "GEV variance requires gamma < 1/2, got {gamma}"
        )));
    }
    if gamma.abs() < GAMMA_ZERO_EPS {
        return Ok(std::f64::consts::PI.powi(2) / 6.0);
    }
    let g1 = gamma_fn(1.0 - gamma);
    let g2 = gamma_fn(1.0 - 2.0 * gamma);
    Ok((g2 - g1 * g1) / (gamma * gamma))
}

/// Norming constants of the marginal-transformed ARMAX(1) model:
/// a_r = (r(1−α))^γ and b_r = {(r(1−α))^γ − 1}/γ, with b_r = log(r(1−α))
/// in the γ = 0 limit.
pub fn armax_norming(r: usize, alpha: f64, gamma: f64) -> Result<NormingSequence> {
    if r == 0 {
        return Err(Error::InvalidParameter("block size r must be >= 1".into()));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::InvalidParameter(format!(
            "alpha must lie in [0,1), got {alpha}"
        )));
    }
    let s = (r as f64) * (1.0 - alpha);
    if s <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "r(1-alpha) must be positive, got {s}"
        )));
    }
    let a = s.powf(gamma);
    let b = if gamma.abs() < GAMMA_ZERO_EPS {
        s.ln()
    } else {
        (a - 1.0) / gamma
    };
    NormingSequence::new(vec![a], vec![b], r)
}
