use std::fs;
use std::io::Write;
use std::path::Path;

use curvkit::{
    integrate_q_flow, min_isotropic, model_fubini_study, model_r0, model_sj, model_sphere,
    tensor_from_json, tensor_to_json, trace_stays_in_cone, ComplexStructure, CurvatureTensor,
    FlowConfig, OptimizerConfig, QuaternionTriple,
};
use serde::Serialize;

use crate::{CheckArgs, CheckWhat, CliError, FlowArgs, ModelArgs, ModelKind, Outcome, SearchArgs};

pub(crate) fn write_output(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => {
            fs::write(p, contents).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
        }
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(contents.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

pub(crate) fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

pub fn read_tensor_file(path: &Path) -> Result<(CurvatureTensor, Option<String>), CliError> {
    let s =
        fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    tensor_from_json(&s).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

pub fn build_model(
    kind: ModelKind,
    n: usize,
    param: Option<f64>,
) -> Result<(CurvatureTensor, String), CliError> {
    if let Some(p) = param {
        if !p.is_finite() {
            return Err(CliError::Invalid("--param must be finite".into()));
        }
    }
    let out = match kind {
        ModelKind::Sphere => {
            let lambda = param.unwrap_or(1.0);
            (
                model_sphere(n, lambda)?,
                format!("sphere n={n} lambda={lambda}"),
            )
        }
        ModelKind::FubiniStudy => {
            if !n.is_multiple_of(2) || n < 4 {
                return Err(CliError::Invalid(format!(
                    "fubini-study needs even n >= 4, got {n}"
                )));
            }
            let c = param.unwrap_or(4.0);
            (
                model_fubini_study(n / 2, c)?.0,
                format!("fubini-study n={n} c={c}"),
            )
        }
        ModelKind::R0 => {
            if !n.is_multiple_of(4) || n < 8 {
                return Err(CliError::Invalid(format!("r0 needs n = 4m >= 8, got {n}")));
            }
            let scale = param.unwrap_or(1.0);
            let r = model_r0(&QuaternionTriple::standard(n)?)?.scaled(scale);
            (r, format!("r0 n={n} scale={scale}"))
        }
        ModelKind::Sj => {
            let scale = param.unwrap_or(1.0);
            let r = model_sj(&ComplexStructure::standard(n)?)?.scaled(scale);
            (r, format!("sj n={n} scale={scale}"))
        }
    };
    Ok(out)
}

pub fn model(args: &ModelArgs) -> Result<Outcome, CliError> {
    let (r, label) = build_model(args.kind, args.n, args.param)?;
    let mut json = tensor_to_json(&r, Some(&label));
    json.push('\n');
    write_output(args.out.as_deref(), &json)?;
    Ok(Outcome::Success)
}

fn optimizer(search: &SearchArgs) -> Result<OptimizerConfig, CliError> {
    let cfg = OptimizerConfig {
        restarts: search.restarts,
        seed: search.seed,
        ..OptimizerConfig::default()
    };
    cfg.validate()?;
    Ok(cfg)
}

#[derive(Debug, Serialize)]
struct Assertion {
    kind: &'static str,
    tolerance: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct CheckReport {
    command: &'static str,
    what: &'static str,
    n: usize,
    label: Option<String>,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    min_isotropic: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    frame: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    converged: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    restarts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ricci: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scalar: Option<f64>,
    /// `max |Ric - (scal/n) id|`.
    #[serde(skip_serializing_if = "Option::is_none")]
    einstein_defect: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relative_weyl_norm: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    assertion: Option<Assertion>,
}

impl CheckReport {
    fn new(what: &'static str, r: &CurvatureTensor, label: Option<String>, value: f64) -> Self {
        Self {
            command: "check",
            what,
            n: r.dim(),
            label,
            value,
            min_isotropic: None,
            frame: None,
            converged: None,
            restarts: None,
            seed: None,
            ricci: None,
            scalar: None,
            einstein_defect: None,
            relative_weyl_norm: None,
            assertion: None,
        }
    }
}

fn rows(m: &nalgebra::DMatrix<f64>) -> Vec<Vec<f64>> {
    m.row_iter().map(|r| r.iter().copied().collect()).collect()
}

pub fn check(args: &CheckArgs) -> Result<Outcome, CliError> {
    if !(args.tol >= 0.0) {
        return Err(CliError::Invalid("--tol must be nonnegative".into()));
    }
    if args.assert_nonneg && args.what == CheckWhat::Weyl {
        return Err(CliError::Invalid(
            "--assert-nonneg does not apply to --what weyl".into(),
        ));
    }
    let (r, label) = read_tensor_file(&args.input)?;
    let mut report = match args.what {
        CheckWhat::IsoMin | CheckWhat::Pinch => {
            let cfg = optimizer(&args.search)?;
            let res = min_isotropic(&r, &cfg)?;
            let (what, value) = match args.what {
                CheckWhat::IsoMin => ("iso-min", res.value),
                _ => ("pinch", res.value / 4.0),
            };
            let mut rep = CheckReport::new(what, &r, label, value);
            rep.min_isotropic = Some(res.value);
            rep.frame = res.point.frame().map(|f| {
                f.vectors()
                    .iter()
                    .map(|v| v.iter().copied().collect())
                    .collect()
            });
            rep.converged = Some(res.converged);
            rep.restarts = Some(cfg.restarts);
            rep.seed = Some(cfg.seed);
            rep
        }
        CheckWhat::Ricci => {
            let ric = r.ricci();
            let n = r.dim();
            let scal = r.scalar();
            let defect = (&ric - nalgebra::DMatrix::identity(n, n) * (scal / n as f64))
                .abs()
                .max();
            let min_eig = ric.clone().symmetric_eigen().eigenvalues.min();
            let mut rep = CheckReport::new("ricci", &r, label, min_eig);
            rep.ricci = Some(rows(&ric));
            rep.scalar = Some(scal);
            rep.einstein_defect = Some(defect);
            rep
        }
        CheckWhat::Weyl => {
            let w = r.weyl();
            let mut rep = CheckReport::new("weyl", &r, label, w.norm());
            rep.relative_weyl_norm = Some(if r.norm() > 0.0 {
                w.norm() / r.norm()
            } else {
                0.0
            });
            rep
        }
    };
    let mut outcome = Outcome::Success;
    if args.assert_nonneg {
        let pass = report.value >= -args.tol;
        report.assertion = Some(Assertion {
            kind: "nonnegative",
            tolerance: args.tol,
            pass,
        });
        if !pass {
            outcome = Outcome::AssertionFailed;
        }
    }
    write_output(args.out.as_deref(), &to_json(&report))?;
    Ok(outcome)
}

pub fn flow(args: &FlowArgs) -> Result<Outcome, CliError> {
    let (r, _) = read_tensor_file(&args.input)?;
    let optimizer = if args.no_monitor {
        None
    } else {
        Some(optimizer(&args.search)?)
    };
    let cfg = FlowConfig {
        t_end: args
            .t_end
            .unwrap_or_else(|| FlowConfig::default_horizon(&r)),
        dt_init: args.dt,
        rel_tol: args.rel_tol,
        monitor_every: args.monitor_every,
        optimizer,
        ..FlowConfig::default()
    };
    cfg.validate()?;
    if args.assert_cone {
        let start = min_isotropic(&r, cfg.optimizer.as_ref().expect("monitor enabled"))?.value;
        if start < -1e-8 {
            eprintln!("initial tensor is outside the cone: min isotropic curvature {start:e}");
            return Ok(Outcome::AssertionFailed);
        }
    }
    let (_, trace) = integrate_q_flow(&r, &cfg)?;
    write_output(args.out_csv.as_deref(), &trace.to_csv())?;
    if args.assert_cone && !trace_stays_in_cone(&trace) {
        eprintln!("isotropic curvature left the cone along the flow");
        return Ok(Outcome::AssertionFailed);
    }
    Ok(Outcome::Success)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_kind_and_dimension_rules() {
        assert!(build_model(ModelKind::Sphere, 5, Some(-2.0)).is_ok());
        assert!(build_model(ModelKind::Sphere, 5, Some(f64::NAN)).is_err());
        assert!(build_model(ModelKind::FubiniStudy, 6, None).is_ok());
        assert!(build_model(ModelKind::FubiniStudy, 7, None).is_err());
        assert!(build_model(ModelKind::R0, 4, None).is_err());
        assert!(build_model(ModelKind::R0, 12, None).is_ok());
        assert!(build_model(ModelKind::Sj, 5, None).is_err());
    }

    #[test]
    fn labels_record_the_parameter() {
        let (_, label) = build_model(ModelKind::FubiniStudy, 4, Some(2.5)).unwrap();
        assert_eq!(label, "fubini-study n=4 c=2.5");
    }

    #[test]
    fn json_output_ends_with_a_newline() {
        assert!(to_json(&serde_json::json!({"a": 1})).ends_with("}\n"));
    }
}
