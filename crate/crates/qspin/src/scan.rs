//! Parameter sweeps for the figure surfaces, critical-temperature root
//! finding for the phase diagram, and the 63Cu temperature estimate.
//!
//! Grid nodes are independent pure evaluations; thermal sweeps fan out over
//! rayon but results are always assembled in grid order, so repeated runs
//! are bit-identical regardless of the worker schedule.

use rayon::prelude::*;
use serde::Serialize;

use crate::entanglement::{closed_form_concurrence, thermal_state, wootters_concurrence};
use crate::error::{Error, Result};
use crate::model::{Mode, ModelParams};

/// Detection threshold separating genuine concurrence from numerical dust.
/// The Wootters output is a max(0, .) hinge, so exact zero is attained and a
/// tiny epsilon suffices.
pub const ONSET_EPS: f64 = 1e-9;

/// Bisection bracket for the critical inverse temperature.
pub const BETA_BRACKET: (f64, f64) = (1e-4, 50.0);

/// Bisection iteration cap.
const BISECT_CAP: usize = 80;

/// Default bisection tolerance on beta.
pub const DEFAULT_BETA_TOL: f64 = 1e-6;

/// An inclusive linearly spaced axis. A single-node axis (count = 1) pins
/// the value at `min`; multi-node axes need min < max.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AxisSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn new(min: f64, max: f64, count: usize) -> Self {
        AxisSpec { min, max, count }
    }

    pub fn fixed(value: f64) -> Self {
        AxisSpec {
            min: value,
            max: value,
            count: 1,
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(Error::InvalidParams {
                reason: format!("{name} axis bounds must be finite"),
            });
        }
        if self.count == 0 {
            return Err(Error::InvalidParams {
                reason: format!("{name} axis needs at least one node"),
            });
        }
        if self.count > 1 && self.min >= self.max {
            return Err(Error::InvalidParams {
                reason: format!("{name} axis needs min < max, got [{}, {}]", self.min, self.max),
            });
        }
        Ok(())
    }

    pub fn value(&self, i: usize) -> f64 {
        if self.count == 1 {
            self.min
        } else {
            self.min + (self.max - self.min) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

/// Sweep domain for the figure surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub alpha: AxisSpec,
    pub beta: AxisSpec,
    pub eta: AxisSpec,
    pub mode: Mode,
}

impl GridSpec {
    pub fn validate(&self) -> Result<()> {
        self.alpha.validate("alpha")?;
        self.beta.validate("beta")?;
        self.eta.validate("eta")?;
        // Every node must be an admissible parameter point.
        ModelParams::new(self.alpha.min, self.eta.min, self.beta.min, self.mode)?;
        ModelParams::new(self.alpha.max, self.eta.max, self.beta.max, self.mode)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PureRow {
    pub alpha: f64,
    pub eta: f64,
    #[serde(rename = "C")]
    pub c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThermalRow {
    pub alpha: f64,
    pub beta: f64,
    pub eta: f64,
    #[serde(rename = "C_T")]
    pub c_t: f64,
}

/// One point of the entangled/separable boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseBoundaryPoint {
    pub alpha: f64,
    pub beta_c: f64,
    pub eta: f64,
}

/// Boundary scan result; alphas with no transition inside the bracket are
/// reported alongside the found points instead of failing the whole scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseBoundary {
    pub points: Vec<PhaseBoundaryPoint>,
    pub no_transition: Vec<f64>,
}

fn thermal_concurrence(alpha: f64, eta: f64, beta: f64, mode: Mode) -> Result<f64> {
    let p = ModelParams::new(alpha, eta, beta, mode)?;
    Ok(wootters_concurrence(&thermal_state(&p)?)?.concurrence)
}

/// Critical inverse temperature at fixed field: bisection on beta for the
/// zero crossing of C_T - ONSET_EPS over BETA_BRACKET.
pub fn critical_beta(alpha: f64, eta: f64, mode: Mode, tol: f64) -> Result<f64> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::InvalidParams {
            reason: format!("bisection tolerance must be positive, got {tol}"),
        });
    }
    let (mut lo, mut hi) = BETA_BRACKET;
    let entangled = |beta: f64| -> Result<bool> {
        Ok(thermal_concurrence(alpha, eta, beta, mode)? > ONSET_EPS)
    };

    if entangled(lo)? {
        return Err(Error::BracketFailure { lo });
    }
    if !entangled(hi)? {
        return Err(Error::NoTransition { lo, hi });
    }
    for _ in 0..BISECT_CAP {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if entangled(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let beta_c = 0.5 * (lo + hi);
    // Monotone entry into the entangled phase just above the crossing.
    if !entangled(beta_c * 1.01)? {
        return Err(Error::NoTransition { lo, hi });
    }
    Ok(beta_c)
}

/// Ground-state concurrence surface, row-major over (alpha, eta).
pub fn sweep_pure(g: &GridSpec) -> Result<Vec<PureRow>> {
    g.validate()?;
    let mut rows = Vec::with_capacity(g.alpha.count * g.eta.count);
    for i in 0..g.alpha.count {
        let alpha = g.alpha.value(i);
        for j in 0..g.eta.count {
            let eta = g.eta.value(j);
            let p = ModelParams::new(alpha, eta, 0.0, g.mode)?;
            rows.push(PureRow {
                alpha,
                eta,
                c: closed_form_concurrence(&p)?,
            });
        }
    }
    Ok(rows)
}

/// Thermal concurrence surface, row-major over (alpha, beta, eta). Node
/// evaluations run in parallel; assembly is in grid order.
pub fn sweep_thermal(g: &GridSpec) -> Result<Vec<ThermalRow>> {
    g.validate()?;
    let (na, nb, ne) = (g.alpha.count, g.beta.count, g.eta.count);
    let rows: Vec<ThermalRow> = (0..na * nb * ne)
        .into_par_iter()
        .map(|flat| {
            let alpha = g.alpha.value(flat / (nb * ne));
            let beta = g.beta.value(flat / ne % nb);
            let eta = g.eta.value(flat % ne);
            let c_t = thermal_concurrence(alpha, eta, beta, g.mode)
                .expect("validated grid node must evaluate");
            ThermalRow {
                alpha,
                beta,
                eta,
                c_t,
            }
        })
        .collect();
    Ok(rows)
}

/// Critical beta for each field value; alphas whose whole bracket stays
/// separable are collected in `no_transition`.
pub fn phase_boundary(alphas: &[f64], eta: f64, mode: Mode, tol: f64) -> Result<PhaseBoundary> {
    if alphas.is_empty() {
        return Err(Error::InvalidParams {
            reason: "alpha list is empty".into(),
        });
    }
    if alphas.iter().any(|&a| !a.is_finite() || a <= 0.0) {
        return Err(Error::InvalidParams {
            reason: "alphas must be positive".into(),
        });
    }
    if alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParams {
            reason: "alphas must be strictly ascending".into(),
        });
    }

    let results: Vec<(f64, Result<f64>)> = alphas
        .par_iter()
        .map(|&alpha| (alpha, critical_beta(alpha, eta, mode, tol)))
        .collect();

    let mut out = PhaseBoundary {
        points: Vec::new(),
        no_transition: Vec::new(),
    };
    for (alpha, r) in results {
        match r {
            Ok(beta_c) => out.points.push(PhaseBoundaryPoint { alpha, beta_c, eta }),
            Err(Error::NoTransition { .. }) => out.no_transition.push(alpha),
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Frequency reading of the quoted coupling constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Convention {
    /// eQq is h times the quoted frequency.
    Cyclic,
    /// eQq is hbar times the quoted frequency (divide the cyclic result
    /// by 2 pi).
    Angular,
}

impl std::str::FromStr for Convention {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "cyclic" => Ok(Convention::Cyclic),
            "angular" => Ok(Convention::Angular),
            other => Err(format!(
                "unknown convention `{other}` (expected cyclic|angular)"
            )),
        }
    }
}

const PLANCK_J_S: f64 = 6.626_070_15e-34;
const BOLTZMANN_J_K: f64 = 1.380_649e-23;

/// Temperature in kelvin at which the normalized inverse temperature `beta`
/// is reached for a spin-3/2 nucleus with quadrupole coupling `eqq_mhz`:
/// T = (h nu / 12) / (k_B beta), with nu = eqq_mhz * 1e6. Informational
/// only; the two conventions differ by exactly 2 pi.
pub fn cu63_temperature(beta: f64, eqq_mhz: f64, convention: Convention) -> Result<f64> {
    if !beta.is_finite() || beta <= 0.0 {
        return Err(Error::InvalidParams {
            reason: format!("beta must be positive, got {beta}"),
        });
    }
    if !eqq_mhz.is_finite() || eqq_mhz <= 0.0 {
        return Err(Error::InvalidParams {
            reason: format!("eqq_mhz must be positive, got {eqq_mhz}"),
        });
    }
    let omega_q_joule = PLANCK_J_S * eqq_mhz * 1e6 / 12.0;
    let t = omega_q_joule / (BOLTZMANN_J_K * beta);
    Ok(match convention {
        Convention::Cyclic => t,
        Convention::Angular => t / std::f64::consts::TAU,
    })
}
