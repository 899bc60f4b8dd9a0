//! The curvature reaction ODE `dR/dt = Q(R)`.
//!
//! Classical RK4 with step-doubling error control. Each accepted state is
//! re-projected onto the curvature symmetries, and a trace of scalar curvature,
//! minimum isotropic curvature and norm is recorded every `monitor_every`
//! accepted steps (plus the initial and final states).

use serde::{Deserialize, Serialize};

use crate::bform::qform;
use crate::error::{CurvError, Result};
use crate::frame::FourFrame;
use crate::search::{min_isotropic, min_isotropic_from, OptimizerConfig};
use crate::tensor::{reproject, CurvatureTensor};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FlowConfig {
    pub t_end: f64,
    pub dt_init: f64,
    /// Relative local error target of the step-doubling controller.
    pub rel_tol: f64,
    pub monitor_every: usize,
    /// Stop once `‖R(t)‖ > blowup_factor · ‖R(0)‖`.
    pub blowup_factor: f64,
    /// Frame search used for the `min_iso` column; `None` leaves it as NaN.
    pub optimizer: Option<OptimizerConfig>,
}

impl Default for FlowConfig {
    fn default() -> Self {
        Self {
            t_end: 0.1,
            dt_init: 1e-3,
            rel_tol: 1e-8,
            monitor_every: 10,
            blowup_factor: 1e3,
            optimizer: Some(OptimizerConfig {
                restarts: 16,
                ..OptimizerConfig::default()
            }),
        }
    }
}

impl FlowConfig {
    /// Default horizon `0.8 / (2(n-1)·‖R₀‖)`, well before the blow-up of the
    /// constant-curvature ray through `R₀`.
    pub fn default_horizon(r0: &CurvatureTensor) -> f64 {
        let c_est = 2.0 * (r0.dim() as f64 - 1.0);
        let norm = r0.norm();
        if norm > 0.0 {
            0.8 / (c_est * norm)
        } else {
            1.0
        }
    }

    pub fn for_tensor(r0: &CurvatureTensor) -> Self {
        Self {
            t_end: Self::default_horizon(r0),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ok = self.t_end > 0.0
            && self.dt_init > 0.0
            && self.rel_tol > 0.0
            && self.monitor_every >= 1
            && self.blowup_factor > 1.0
            && self.t_end.is_finite();
        if !ok {
            return Err(CurvError::InvalidConfig(format!(
                "invalid flow configuration: {self:?}"
            )));
        }
        if let Some(o) = &self.optimizer {
            o.validate()?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Termination {
    TEnd,
    BlowupGuard,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FlowTrace {
    pub times: Vec<f64>,
    pub scalars: Vec<f64>,
    pub min_iso: Vec<f64>,
    pub norm: Vec<f64>,
    pub terminated_by: Termination,
}

impl FlowTrace {
    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// CSV with header `t,scal,min_iso,norm`; numbers use the shortest round-trip form.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,scal,min_iso,norm\n");
        for i in 0..self.len() {
            out.push_str(&format!(
                "{},{},{},{}\n",
                self.times[i], self.scalars[i], self.min_iso[i], self.norm[i]
            ));
        }
        out
    }
}

fn rk4_step(y: &CurvatureTensor, h: f64) -> CurvatureTensor {
    let k1 = qform(y);
    let k2 = qform(&(y + &k1.scaled(h / 2.0)));
    let k3 = qform(&(y + &k2.scaled(h / 2.0)));
    let k4 = qform(&(y + &k3.scaled(h)));
    let incr = &(&(&k1 + &k2.scaled(2.0)) + &k3.scaled(2.0)) + &k4;
    y + &incr.scaled(h / 6.0)
}

/// Fixed-step RK4 (no error control, no re-projection).
pub fn integrate_fixed(r0: &CurvatureTensor, dt: f64, steps: usize) -> CurvatureTensor {
    (0..steps).fold(r0.clone(), |y, _| rk4_step(&y, dt))
}

struct Monitor<'a> {
    cfg: &'a FlowConfig,
    last_frame: Option<FourFrame>,
    trace: FlowTrace,
}

impl Monitor<'_> {
    fn record(&mut self, t: f64, r: &CurvatureTensor) -> Result<()> {
        let min_iso = match &self.cfg.optimizer {
            None => f64::NAN,
            Some(opt) => {
                let res = match &self.last_frame {
                    None => min_isotropic(r, opt)?,
                    Some(f) => {
                        let warm_cfg = opt.clone().with_restarts((opt.restarts / 8).max(1));
                        min_isotropic_from(r, &warm_cfg, std::slice::from_ref(f))?
                    }
                };
                self.last_frame = res.point.frame().cloned();
                res.value
            }
        };
        self.trace.times.push(t);
        self.trace.scalars.push(r.scalar());
        self.trace.min_iso.push(min_iso);
        self.trace.norm.push(r.norm());
        Ok(())
    }
}

/// Integrates `dR/dt = Q(R)` from `r0` up to `cfg.t_end` or until the blow-up guard trips.
pub fn integrate_q_flow(
    r0: &CurvatureTensor,
    cfg: &FlowConfig,
) -> Result<(CurvatureTensor, FlowTrace)> {
    cfg.validate()?;
    let mut mon = Monitor {
        cfg,
        last_frame: None,
        trace: FlowTrace {
            times: vec![],
            scalars: vec![],
            min_iso: vec![],
            norm: vec![],
            terminated_by: Termination::TEnd,
        },
    };
    let norm0 = r0.norm();
    let mut y = r0.clone();
    let mut t = 0.0;
    let mut dt = cfg.dt_init.min(cfg.t_end);
    let mut accepted = 0usize;
    mon.record(t, &y)?;

    while cfg.t_end - t > 1e-14 * cfg.t_end {
        let h = dt.min(cfg.t_end - t);
        let full = rk4_step(&y, h);
        let half = rk4_step(&rk4_step(&y, h / 2.0), h / 2.0);
        let err = (&half - &full).norm() / 15.0;
        let scale = half.norm().max(y.norm());
        let target = cfg.rel_tol * scale;
        if err <= target || scale == 0.0 {
            t = if cfg.t_end - (t + h) <= 1e-14 * cfg.t_end {
                cfg.t_end
            } else {
                t + h
            };
            y = reproject(&half);
            accepted += 1;
            let done = t >= cfg.t_end;
            let blown = norm0 > 0.0 && y.norm() > cfg.blowup_factor * norm0;
            if done || blown || accepted.is_multiple_of(cfg.monitor_every) {
                mon.record(t, &y)?;
            }
            if blown {
                mon.trace.terminated_by = Termination::BlowupGuard;
                break;
            }
            let grow = if err > 0.0 {
                0.9 * (target / err).powf(0.2)
            } else {
                5.0
            };
            dt = h * grow.clamp(0.2, 5.0);
        } else {
            let shrink = 0.9 * (target / err).powf(0.2);
            dt = h * shrink.clamp(0.1, 0.9);
            if dt < 1e-14 * cfg.t_end.max(1e-300) {
                return Err(CurvError::StepUnderflow { t, dt });
            }
        }
    }
    Ok((y, mon.trace))
}

/// Closed-form ray solution: if `Q(R) = c R` then `λ(t) R` solves the flow with
/// `λ(t) = λ₀ / (1 - c λ₀ t)`.
pub fn scalar_blowup_oracle(c: f64, lambda0: f64, t: f64) -> Result<f64> {
    let denom = 1.0 - c * lambda0 * t;
    if denom <= 0.0 {
        return Err(CurvError::PastBlowup {
            t,
            blowup: 1.0 / (c * lambda0),
        });
    }
    Ok(lambda0 / denom)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeReport {
    pub times: Vec<f64>,
    pub margins: Vec<f64>,
    /// `-1e-6 · (1 + ‖R(t)‖)` at each monitored time.
    pub thresholds: Vec<f64>,
    pub terminated_by: Termination,
    pub pass: bool,
}

/// Per-sample cone thresholds `-1e-6 · (1 + ‖R(t)‖)` for a trace.
pub fn cone_thresholds(trace: &FlowTrace) -> Vec<f64> {
    trace.norm.iter().map(|n| -1e-6 * (1.0 + n)).collect()
}

/// Whether every monitored `min_iso` value clears its cone threshold. NaN entries fail.
pub fn trace_stays_in_cone(trace: &FlowTrace) -> bool {
    trace
        .min_iso
        .iter()
        .zip(cone_thresholds(trace))
        .all(|(m, th)| *m >= th)
}

/// Runs the flow from a tensor of nonnegative isotropic curvature and checks
/// that the minimum isotropic curvature stays nonnegative up to `1e-6·(1 + ‖R‖)`.
pub fn cone_preservation_probe(r0: &CurvatureTensor, cfg: &FlowConfig) -> Result<ConeReport> {
    let opt = cfg.optimizer.clone().unwrap_or_default();
    let start = min_isotropic(r0, &opt)?.value;
    if start < -1e-8 {
        return Err(CurvError::OutsideCone { min_iso: start });
    }
    let cfg = FlowConfig {
        optimizer: Some(opt),
        ..cfg.clone()
    };
    let (_, trace) = integrate_q_flow(r0, &cfg)?;
    let thresholds = cone_thresholds(&trace);
    let pass = trace_stays_in_cone(&trace);
    Ok(ConeReport {
        times: trace.times,
        margins: trace.min_iso,
        thresholds,
        terminated_by: trace.terminated_by,
        pass,
    })
}
