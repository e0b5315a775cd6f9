//! Experiment execution: realize shapes, evaluate the exact side, run the
//! estimator, and fold everything into an [`ExperimentResult`].

use super::config::{Config, ConfigError, Experiment, Shape};
use super::report::{EstimateOut, ExperimentResult, Report};
use crate::coefficients::verify_reconstruction;
use crate::mc::{compare, estimate_crofton, estimate_kinematic, estimate_parallel_volume, McSettings};
use crate::symtensor::SymTensor;
use crate::valuations::{
    gen_tcm_expansion, intrinsic_volume, mcmullen_residual, minkowski_tensor, rhs_crofton,
    rhs_kinematic, steiner_volume, ValError,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Valuation(#[from] ValError),
}

pub const DEFAULT_SAMPLES: u64 = 20_000;
pub const DEFAULT_SEED: u64 = 12345;
pub const DEFAULT_ZMAX: f64 = 3.5;
pub const DEFAULT_TOL: f64 = 1e-9;

/// Effective defaults for one run, after CLI overrides.
#[derive(Debug, Clone, Copy)]
pub struct RunDefaults {
    pub seed: u64,
    pub samples: u64,
    pub workers: usize,
}

impl RunDefaults {
    pub fn from_config(cfg: &Config) -> RunDefaults {
        RunDefaults {
            seed: cfg.seed.unwrap_or(DEFAULT_SEED),
            samples: cfg.samples.unwrap_or(DEFAULT_SAMPLES),
            workers: cfg.workers.unwrap_or(0),
        }
    }
}

fn settings(
    samples: &Option<u64>,
    seed: &Option<u64>,
    idx: usize,
    d: &RunDefaults,
) -> McSettings {
    McSettings {
        samples: samples.unwrap_or(d.samples),
        // distinct derived streams per experiment unless pinned explicitly
        seed: seed.unwrap_or_else(|| d.seed.wrapping_add(1000 * idx as u64)),
        workers: d.workers,
    }
}

pub fn run_experiment(
    exp: &Experiment,
    idx: usize,
    d: &RunDefaults,
) -> Result<ExperimentResult, HarnessError> {
    let mut out = ExperimentResult::bare(exp.name(), exp.kind(), false);
    match exp {
        Experiment::Kinematic {
            body,
            other,
            j,
            r,
            s,
            samples,
            seed,
            zmax,
            ..
        } => {
            let k_body = body.realize()?;
            let k_other = other.realize()?;
            let exact = rhs_kinematic(&k_body, &k_other, *j, *r, *s)?;
            let st = settings(samples, seed, idx, d);
            let est = estimate_kinematic(&k_body, &k_other, *j, *r, *s, &st)?;
            let cmp = compare(&est, &exact, zmax.unwrap_or(DEFAULT_ZMAX));
            out.pass = cmp.pass;
            out.exact = Some(exact);
            out.estimate = Some(EstimateOut::from(&est));
            out.max_z = Some(cmp.max_z);
            out.max_abs_dev = Some(cmp.max_abs_dev);
        }
        Experiment::Crofton {
            body,
            k,
            j,
            r,
            s,
            samples,
            seed,
            zmax,
            ..
        } => {
            let k_body = body.realize()?;
            let exact = rhs_crofton(&k_body, *k, *j, *r, *s)?;
            let st = settings(samples, seed, idx, d);
            let est = estimate_crofton(&k_body, *k, *j, *r, *s, &st)?;
            let cmp = compare(&est, &exact, zmax.unwrap_or(DEFAULT_ZMAX));
            out.pass = cmp.pass;
            out.exact = Some(exact);
            out.estimate = Some(EstimateOut::from(&est));
            out.max_z = Some(cmp.max_z);
            out.max_abs_dev = Some(cmp.max_abs_dev);
        }
        Experiment::Mcmullen { body, k, r, s, tol, .. } => {
            let p = body.realize()?;
            let res = mcmullen_residual(&p, *k, *r, *s)?;
            let scale = 1.0 + minkowski_tensor(&p, *k, *r, *s)?.norm_inf();
            let tol = tol.unwrap_or(DEFAULT_TOL);
            out.pass = res.norm_inf() <= tol * scale;
            out.residual = Some(res.norm_inf());
        }
        Experiment::Steiner {
            body,
            eps,
            samples,
            seed,
            zmax,
            ..
        } => {
            let p = body.realize()?;
            let exact_val = steiner_volume(&p, *eps)?;
            let exact = SymTensor::scalar(p.dim(), exact_val);
            let st = settings(samples, seed, idx, d);
            let est = estimate_parallel_volume(&p, *eps, &st)?;
            let cmp = compare(&est, &exact, zmax.unwrap_or(DEFAULT_ZMAX));
            out.pass = cmp.pass;
            out.exact = Some(exact);
            out.estimate = Some(EstimateOut::from(&est));
            out.max_z = Some(cmp.max_z);
            out.max_abs_dev = Some(cmp.max_abs_dev);
        }
        Experiment::Coefficients {
            n_max, s_max, p_max, ..
        } => match verify_reconstruction(*n_max, *s_max, *p_max) {
            Ok(count) => {
                out.pass = true;
                out.checks = Some(count);
            }
            Err(e) => {
                out.pass = false;
                out.detail = Some(e.to_string());
            }
        },
        Experiment::TensorAlgebra { body, tol, .. } => {
            let p = body.realize()?;
            let tol = tol.unwrap_or(DEFAULT_TOL);
            let (pass, checks, detail) = tensor_algebra_checks(&p, tol)?;
            out.pass = pass;
            out.checks = Some(checks);
            out.detail = detail;
        }
    }
    Ok(out)
}

/// Structural identities on a single polytope: Euler characteristic, odd
/// first moments, the metric multiple `Φ_0^{0,2}`, and the expansion of the
/// total generalized tensorial curvature measures.
pub fn tensor_algebra_checks(
    p: &crate::polytope::Polytope,
    tol: f64,
) -> Result<(bool, u64, Option<String>), ValError> {
    let n = p.dim() as i64;
    let mut checks = 0u64;
    let mut failures: Vec<String> = Vec::new();
    // Euler characteristic
    let v0 = intrinsic_volume(p, 0)?;
    checks += 1;
    if (v0 - 1.0).abs() > tol {
        failures.push(format!("V_0 = {v0} ≠ 1"));
    }
    // Φ_j^{0,1} ≡ 0
    for j in 0..n {
        let t = minkowski_tensor(p, j, 0, 1)?;
        checks += 1;
        if t.norm_inf() > tol {
            failures.push(format!("Φ_{j}^{{0,1}} norm {}", t.norm_inf()));
        }
    }
    // Φ_0^{0,2} = (ω_n/(2 n ω_{n+2})) Q
    let t = minkowski_tensor(p, 0, 0, 2)?;
    let c = crate::coefficients::omega_f64(n) / (2.0 * n as f64 * crate::coefficients::omega_f64(n + 2));
    let want = SymTensor::metric(p.dim()).scale(c);
    checks += 1;
    if !t.approx_eq(&want, tol, tol) {
        failures.push("Φ_0^{0,2} is not the metric multiple".to_string());
    }
    // curvature-measure expansion
    for k in 1..n {
        for r in 0..=1 {
            for s in 2..=3 {
                let (lhs, rhs) = gen_tcm_expansion(p, k, r, s)?;
                checks += 1;
                if !lhs.approx_eq(&rhs, tol, tol) {
                    failures.push(format!("gen-tcm expansion k={k} r={r} s={s}"));
                }
            }
        }
    }
    let pass = failures.is_empty();
    let detail = if pass { None } else { Some(failures.join("; ")) };
    Ok((pass, checks, detail))
}

pub fn run_config(cfg: &Config, d: &RunDefaults) -> Result<Report, HarnessError> {
    let mut results = Vec::new();
    for (idx, exp) in cfg.experiments.iter().enumerate() {
        results.push(run_experiment(exp, idx, d)?);
    }
    Ok(Report::new(d.seed, results))
}

/// Built-in validation suites.
pub fn preset_config(preset: &str) -> Option<Config> {
    let quick = preset == "quick";
    let full = preset == "full";
    if !quick && !full {
        return None;
    }
    let sq = || Shape::Preset {
        preset: "unit-square".into(),
    };
    let tri = || Shape::Preset {
        preset: "unit-triangle".into(),
    };
    let cube = || Shape::Preset {
        preset: "unit-cube".into(),
    };
    let tet = || Shape::Preset {
        preset: "unit-tetrahedron".into(),
    };
    let mut experiments = vec![
        Experiment::Coefficients {
            name: Some("coefficient-identities".into()),
            n_max: if full { 5 } else { 4 },
            s_max: if full { 6 } else { 4 },
            p_max: if full { 3 } else { 2 },
        },
        Experiment::TensorAlgebra {
            name: Some("tensor-algebra-square".into()),
            body: sq(),
            tol: None,
        },
        Experiment::TensorAlgebra {
            name: Some("tensor-algebra-cube".into()),
            body: cube(),
            tol: None,
        },
    ];
    for (shape, label, n) in [(sq(), "square", 2i64), (cube(), "cube", 3)] {
        for k in 0..n {
            for (r, s) in [(0, 2), (1, 2), (0, 3)] {
                experiments.push(Experiment::Mcmullen {
                    name: Some(format!("mcmullen-{label}-k{k}-r{r}-s{s}")),
                    body: shape.clone(),
                    k,
                    r,
                    s,
                    tol: None,
                });
            }
        }
    }
    experiments.push(Experiment::Steiner {
        name: Some("steiner-square".into()),
        body: sq(),
        eps: 1.0,
        samples: Some(if full { 200_000 } else { 50_000 }),
        seed: None,
        zmax: None,
    });
    experiments.push(Experiment::Kinematic {
        name: Some("kinematic-squares-euler".into()),
        body: sq(),
        other: sq(),
        j: 0,
        r: 0,
        s: 0,
        samples: Some(if full { 60_000 } else { 15_000 }),
        seed: None,
        zmax: None,
    });
    experiments.push(Experiment::Crofton {
        name: Some("crofton-square-lines".into()),
        body: sq(),
        k: 1,
        j: 0,
        r: 0,
        s: 0,
        samples: Some(if full { 60_000 } else { 15_000 }),
        seed: None,
        zmax: None,
    });
    if full {
        experiments.push(Experiment::Steiner {
            name: Some("steiner-cube".into()),
            body: cube(),
            eps: 0.5,
            samples: Some(200_000),
            seed: None,
            zmax: None,
        });
        experiments.push(Experiment::Kinematic {
            name: Some("kinematic-square-triangle-s2".into()),
            body: sq(),
            other: tri(),
            j: 0,
            r: 0,
            s: 2,
            samples: Some(60_000),
            seed: None,
            zmax: None,
        });
        experiments.push(Experiment::Crofton {
            name: Some("crofton-cube-planes".into()),
            body: cube(),
            k: 2,
            j: 1,
            r: 0,
            s: 0,
            samples: Some(20_000),
            seed: None,
            zmax: None,
        });
        experiments.push(Experiment::Kinematic {
            name: Some("kinematic-cube-tet".into()),
            body: cube(),
            other: tet(),
            j: 2,
            r: 0,
            s: 0,
            samples: Some(20_000),
            seed: None,
            zmax: None,
        });
    }
    Some(Config {
        seed: Some(DEFAULT_SEED),
        samples: None,
        workers: None,
        experiments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_preset_structure() {
        let cfg = preset_config("quick").unwrap();
        assert!(cfg.experiments.len() > 5);
        assert!(preset_config("nope").is_none());
    }

    #[test]
    fn coefficients_experiment_passes() {
        let exp = Experiment::Coefficients {
            name: None,
            n_max: 3,
            s_max: 3,
            p_max: 1,
        };
        let d = RunDefaults {
            seed: 1,
            samples: 10,
            workers: 0,
        };
        let res = run_experiment(&exp, 0, &d).unwrap();
        assert!(res.pass);
        assert!(res.checks.unwrap() > 50);
    }

    #[test]
    fn tensor_algebra_on_tetrahedron() {
        let p = super::super::config::preset_polytope("unit-tetrahedron").unwrap();
        let (pass, checks, detail) = tensor_algebra_checks(&p, 1e-9).unwrap();
        assert!(pass, "{detail:?}");
        assert!(checks >= 8);
    }
}
