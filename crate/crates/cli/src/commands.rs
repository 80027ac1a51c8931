use std::env;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use serde_json::{json, Value};

use rabi_core::closed_form::{self, Region};
use rabi_core::oracle::{self, converged_spectrum, ConvergenceOptions, Hamiltonian, TruncationReport};
use rabi_core::phase;
use rabi_core::validation::{self, Group, ValidationConfig};
use rabi_core::{Error, ModelParams, QuadraticCoefficients, RabiParams};

use crate::args::{Command, Curve, Format, Model, ModelArgs, OutputArgs, SolverArgs};
use crate::output::{Cell, Report};
use crate::range::{self, Values};

pub const TOLERANCE_ENV: &str = "RABI_SPECTRA_TOL";

#[derive(Debug)]
pub enum Failure {
    /// Bad flags or parameters.
    Usage(String),
    /// Parameters in the superradiant phase, or no transition where one is needed.
    Phase(String),
    Solver(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Phase(_) => 2,
            Failure::Solver(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Phase(m) | Failure::Solver(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) => Failure::Usage(e.to_string()),
            Error::SuperradiantRegime { .. } | Error::BoundaryDegenerate | Error::NoRealTransition { .. } => {
                Failure::Phase(e.to_string())
            }
            Error::NotSymmetric { .. } | Error::ConvergenceFailure { .. } => Failure::Solver(e.to_string()),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure::Usage(message.into())
}

/// A finished command: what to print and the exit code to leave with.
pub struct Outcome {
    pub report: Report,
    pub format: Format,
    pub code: u8,
}

pub fn run(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Spectrum { model, levels, output } => spectrum(&model, levels, &output),
        Command::Oracle {
            model,
            solver,
            export_matrix,
            output,
        } => run_oracle(&model, &solver, export_matrix.as_deref(), &output),
        Command::Compare {
            model,
            solver,
            g_over_gc,
            output,
        } => compare(&model, &solver, g_over_gc.as_deref(), &output),
        Command::Phase {
            curve,
            branches,
            grid,
            kappa,
            g_over_gc,
            resolution,
            output,
        } => run_phase(
            curve,
            branches,
            grid,
            kappa.as_deref(),
            g_over_gc.as_deref(),
            resolution,
            &output,
        ),
        Command::Validate { only, inject_error } => validate(&only, inject_error),
    }
}

// -- model resolution ------------------------------------------------------

fn require(value: Option<f64>, flag: &str, model: Model) -> Result<f64, Failure> {
    value.ok_or_else(|| usage(format!("model {} needs --{flag}", model_name(model))))
}

fn model_name(model: Model) -> &'static str {
    match model {
        Model::Mjc => "mjc",
        Model::Sr => "sr",
        Model::Ar => "ar",
        Model::Msr => "msr",
        Model::Quadratic => "quadratic",
    }
}

/// Flags that were given but that the chosen model never reads.
fn unused_flags(m: &ModelArgs) -> Vec<&'static str> {
    let given = [
        ("g", m.g.is_some()),
        ("k", m.k.is_some()),
        ("r", m.r.is_some()),
        ("Omega", m.omega.is_some()),
        ("v", m.v.is_some()),
        ("eps-asym", m.eps_asym.is_some()),
        ("alpha", m.alpha.is_some()),
        ("A", m.a.is_some()),
        ("B", m.b.is_some()),
        ("C", m.c.is_some()),
    ];
    let used: &[&str] = match m.model {
        Model::Mjc => &["r", "Omega", "v"],
        Model::Sr => &["g", "k"],
        Model::Ar => &["g", "k", "eps-asym"],
        Model::Msr => &["g", "k", "alpha"],
        Model::Quadratic => &["A", "B", "C"],
    };
    given
        .iter()
        .filter(|(name, set)| *set && !used.contains(name))
        .map(|(name, _)| *name)
        .collect()
}

/// Rabi parameters with the coupling taken from `g` if given, else `--g`.
fn rabi_params(m: &ModelArgs, g: Option<f64>) -> Result<RabiParams, Failure> {
    let g = match g {
        Some(g) => g,
        None => require(m.g, "g", m.model)?,
    };
    let k = match m.k {
        Some(k) => k,
        None if m.wa > 0.0 => g / (m.hbar * m.wa),
        None => 0.0,
    };
    Ok(RabiParams::new(m.wc, m.wa, g, k)?.with_hbar(m.hbar)?)
}

fn squeezed_params(m: &ModelArgs) -> Result<ModelParams, Failure> {
    let rabi = require(m.omega, "Omega", m.model)?;
    Ok(ModelParams::new(m.wc, m.wa, rabi, m.r.unwrap_or(0.0), m.v.unwrap_or(0.0))?.with_hbar(m.hbar)?)
}

fn quadratic(m: &ModelArgs) -> Result<QuadraticCoefficients, Failure> {
    let a = require(m.a, "A", m.model)?;
    let c = require(m.c, "C", m.model)?;
    Ok(QuadraticCoefficients::new(a, m.b.unwrap_or(0.0), c)?)
}

fn hamiltonian(m: &ModelArgs, g: Option<f64>) -> Result<Hamiltonian, Failure> {
    Ok(match m.model {
        Model::Mjc => Hamiltonian::Mjc(squeezed_params(m)?),
        Model::Sr => Hamiltonian::Sr(rabi_params(m, g)?),
        Model::Ar => Hamiltonian::Ar {
            params: rabi_params(m, g)?,
            eps_asym: require(m.eps_asym, "eps-asym", m.model)?,
        },
        Model::Msr => Hamiltonian::Msr {
            params: rabi_params(m, g)?,
            alpha: require(m.alpha, "alpha", m.model)?,
        },
        Model::Quadratic => Hamiltonian::Quadratic(quadratic(m)?),
    })
}

fn rabi_of(h: &Hamiltonian) -> Option<&RabiParams> {
    match h {
        Hamiltonian::Sr(p) | Hamiltonian::Ar { params: p, .. } | Hamiltonian::Msr { params: p, .. } => Some(p),
        _ => None,
    }
}

fn config_json(h: &Hamiltonian, output: &OutputArgs, extra: Value) -> Value {
    let mut config = json!({
        "hamiltonian": h,
        "format": output.format,
        "reduced": output.reduced,
    });
    if let Some(p) = rabi_of(h) {
        if let Ok(ratio) = p.g_over_gc() {
            config["g_over_gc"] = json!(ratio);
            config["kappa"] = json!(p.kappa());
        }
    }
    if let (Value::Object(c), Value::Object(e)) = (&mut config, extra) {
        c.extend(e);
    }
    config
}

/// Divisor for reported energies.
fn energy_unit(m: &ModelArgs, output: &OutputArgs) -> f64 {
    if output.reduced {
        m.hbar * m.wc
    } else {
        1.0
    }
}

fn warn_unused(report: &mut Report, m: &ModelArgs) {
    for flag in unused_flags(m) {
        report.warn(format!("--{flag} is not used by model {}", model_name(m.model)));
    }
}

fn tolerance(flag: Option<f64>) -> Result<f64, Failure> {
    let tol = match flag {
        Some(t) => t,
        None => match env::var(TOLERANCE_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(format!("{TOLERANCE_ENV} is not a number: {s:?}")))?,
            Err(_) => oracle::convergence::DEFAULT_TOLERANCE,
        },
    };
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(usage(format!("tolerance must be > 0, got {tol}")))
    }
}

fn solver_options(s: &SolverArgs, levels: usize) -> Result<ConvergenceOptions, Failure> {
    if levels == 0 {
        return Err(usage("--levels must be at least 1"));
    }
    let mut opts = ConvergenceOptions::new(levels)
        .with_tol(tolerance(s.tol)?)
        .with_cap(s.n_cap);
    if let Some(n0) = s.n0 {
        opts = opts.with_n0(n0);
    }
    Ok(opts)
}

fn solver_json(opts: &ConvergenceOptions) -> Value {
    json!({"levels": opts.levels, "tol": opts.tol, "n0": opts.n0, "n_cap": opts.n_cap})
}

fn rel_err(got: f64, want: f64) -> f64 {
    let diff = (got - want).abs();
    if want == 0.0 {
        diff
    } else {
        diff / want.abs()
    }
}

// -- spectrum --------------------------------------------------------------

fn spectrum(m: &ModelArgs, levels: usize, output: &OutputArgs) -> Result<Outcome, Failure> {
    if levels == 0 {
        return Err(usage("--levels must be at least 1"));
    }
    if m.model == Model::Ar {
        return Err(usage("model ar has no closed-form spectrum; use `oracle` or `compare`"));
    }
    let m_max = u32::try_from(levels - 1).map_err(|_| usage("--levels is too large"))?;
    let h = hamiltonian(m, None)?;
    let unit = energy_unit(m, output);

    let coefficients = match &h {
        Hamiltonian::Mjc(p) => closed_form::mjc_coefficients(p),
        Hamiltonian::Sr(p) | Hamiltonian::Msr { params: p, .. } => closed_form::sr_coefficients(p),
        Hamiltonian::Quadratic(c) => *c,
        Hamiltonian::Ar { .. } => unreachable!("rejected above"),
    };
    let region = closed_form::classify_coefficients(&coefficients);
    if region == Region::Superradiant {
        return Err(Failure::Phase(format!(
            "region sp: A(A+4C) = {:e} < 0, no normal-phase spectrum",
            coefficients.gap_squared()
        )));
    }
    let gap = closed_form::quasiparticle_gap(&coefficients)?;
    let energies = closed_form::effective_spectrum(&coefficients, m_max)?;

    let mut report = Report::new(
        "spectrum",
        config_json(&h, output, json!({"levels": levels})),
        vec!["m", "n", "k2", "gap", "E"],
    );
    warn_unused(&mut report, m);
    if region == Region::Boundary {
        report.warn("parameters sit on the phase boundary: the gap closes and all levels coincide");
    }
    for (m_index, energy) in (0..=m_max).zip(&energies) {
        let (n, k2) = match &h {
            Hamiltonian::Mjc(p) => {
                let k2 = (p.v * p.r.cosh()).powi(2);
                (
                    Some(closed_form::photon_number_expectation(p.v, p.r, m_index)),
                    Some(k2),
                )
            }
            Hamiltonian::Sr(p) | Hamiltonian::Msr { params: p, .. } => {
                let pn = closed_form::photon_number(p.k, m_index);
                (Some(pn.n), Some(pn.k_squared))
            }
            _ => (None, None),
        };
        report.push(vec![
            Cell::from(m_index),
            Cell::from(n),
            Cell::from(k2),
            Cell::from(gap / unit),
            Cell::from(energy / unit),
        ]);
    }
    report.diag("region", region.code());
    report.diag("A", coefficients.a);
    report.diag("B", coefficients.b);
    report.diag("C", coefficients.c);
    report.diag("units", if output.reduced { "hbar*wc" } else { "absolute" });
    Ok(Outcome {
        report,
        format: output.format,
        code: 0,
    })
}

// -- oracle ----------------------------------------------------------------

fn truncation_json(r: &TruncationReport) -> Value {
    json!({
        "n_initial": r.n_initial,
        "n_final": r.n_final,
        "converged": r.converged,
        "unbounded_below": r.unbounded_below,
        "max_level_drift": r.level_drift.iter().copied().fold(0.0f64, f64::max),
        "ground_history": r.ground_history,
    })
}

fn matrix_dim(h: &Hamiltonian, truncation: usize) -> usize {
    match h {
        Hamiltonian::Quadratic(_) => truncation + 1,
        _ => 2 * (truncation + 1),
    }
}

fn run_oracle(m: &ModelArgs, s: &SolverArgs, export: Option<&Path>, output: &OutputArgs) -> Result<Outcome, Failure> {
    let h = hamiltonian(m, None)?;
    let opts = solver_options(s, s.levels)?;
    let (values, truncation) = converged_spectrum(&h, &opts)?;
    let unit = energy_unit(m, output);

    let mut report = Report::new(
        "oracle",
        config_json(&h, output, json!({"solver": solver_json(&opts)})),
        vec!["index", "E"],
    );
    warn_unused(&mut report, m);
    for (i, e) in values.iter().enumerate() {
        report.push(vec![Cell::from(i), Cell::from(e / unit)]);
    }
    if let Some(path) = export {
        let matrix = h.build(truncation.n_final)?;
        let file = File::create(path).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
        oracle::write_matrix_csv(&matrix, BufWriter::new(file))
            .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    }
    report.diag("model", h.name());
    report.diag("dim", matrix_dim(&h, truncation.n_final));
    if let Value::Object(fields) = truncation_json(&truncation) {
        report.diagnostics.extend(fields);
    }
    let code = if truncation.converged {
        0
    } else if truncation.unbounded_below {
        report.warn("spectrum is unbounded below: the ground level runs away as the truncation grows");
        3
    } else {
        report.warn(format!(
            "levels still drifting at the truncation cap N = {}",
            truncation.n_final
        ));
        3
    };
    Ok(Outcome {
        report,
        format: output.format,
        code,
    })
}

// -- compare ---------------------------------------------------------------

/// For each reference level, the oracle eigenvalue closest to it.
fn nearest(reference: &[f64], candidates: &[f64]) -> Vec<f64> {
    reference
        .iter()
        .map(|r| {
            candidates
                .iter()
                .copied()
                .min_by(|a, b| (a - r).abs().total_cmp(&(b - r).abs()))
                .unwrap_or(f64::NAN)
        })
        .collect()
}

fn closed_form_levels(h: &Hamiltonian, m_max: u32) -> Result<Vec<f64>, Error> {
    let c = match h {
        Hamiltonian::Mjc(p) => closed_form::mjc_coefficients(p),
        Hamiltonian::Sr(p) | Hamiltonian::Msr { params: p, .. } => closed_form::sr_coefficients(p),
        Hamiltonian::Quadratic(c) => *c,
        Hamiltonian::Ar { params, .. } => closed_form::sr_coefficients(params),
    };
    closed_form::effective_spectrum(&c, m_max)
}

fn compare(m: &ModelArgs, s: &SolverArgs, sweep: Option<&str>, output: &OutputArgs) -> Result<Outcome, Failure> {
    let couplings: Vec<Option<f64>> = match sweep {
        None => vec![None],
        Some(_) if matches!(m.model, Model::Mjc | Model::Quadratic) => {
            return Err(usage("--g-over-gc applies to models sr, ar and msr"));
        }
        Some(spec) => {
            let g_c = closed_form::critical_coupling(m.wa, m.wc, m.hbar)?;
            range::parse(spec)
                .map_err(usage)?
                .values(11)
                .into_iter()
                .map(|ratio| Some(ratio * g_c))
                .collect()
        }
    };
    if s.levels == 0 {
        return Err(usage("--levels must be at least 1"));
    }
    let m_max = u32::try_from(s.levels - 1).map_err(|_| usage("--levels is too large"))?;
    let unit = energy_unit(m, output);
    let is_ar = m.model == Model::Ar;

    let first = hamiltonian(m, couplings[0])?;
    let mut extra = json!({"solver": solver_json(&solver_options(s, s.levels)?)});
    if let Some(spec) = sweep {
        extra["g_over_gc_sweep"] = json!(spec);
    }
    let mut report = Report::new(
        "compare",
        config_json(&first, output, extra),
        vec!["g_over_gc", "level", "reference", "oracle", "abs_error", "rel_error"],
    );
    warn_unused(&mut report, m);

    let mut worst = 0.0f64;
    let mut unconverged = Vec::new();
    let mut skipped = Vec::new();
    for g in couplings {
        let h = hamiltonian(m, g)?;
        let ratio = rabi_of(&h).and_then(|p| p.g_over_gc().ok());
        let label = ratio.map_or_else(|| "-".to_string(), |r| format!("{r}"));

        let (reference, candidate) = if is_ar {
            let params = *rabi_of(&h).expect("ar carries Rabi parameters");
            let opts = solver_options(s, s.levels)?;
            let (sym, sym_report) = converged_spectrum(&Hamiltonian::Sr(params), &opts)?;
            let (asym, asym_report) = converged_spectrum(&h, &opts)?;
            if !(sym_report.converged && asym_report.converged) {
                unconverged.push(label.clone());
            }
            (sym, asym)
        } else {
            let closed = match closed_form_levels(&h, m_max) {
                Ok(levels) => levels,
                Err(e @ (Error::SuperradiantRegime { .. } | Error::BoundaryDegenerate)) => {
                    report.warn(format!("g/g_c = {label}: no closed form ({e})"));
                    skipped.push(label);
                    continue;
                }
                Err(e) => return Err(e.into()),
            };
            // spin doubles the spectrum; track enough oracle levels to bracket the ladder
            let opts = solver_options(s, 2 * s.levels + 2)?;
            let (brute, brute_report) = converged_spectrum(&h, &opts)?;
            if !brute_report.converged {
                unconverged.push(label.clone());
            }
            let matched = nearest(&closed, &brute);
            (closed, matched)
        };

        for (i, (r, o)) in reference.iter().zip(&candidate).enumerate() {
            let err = rel_err(*o, *r);
            worst = worst.max(err);
            report.push(vec![
                Cell::from(ratio),
                Cell::from(i),
                Cell::from(r / unit),
                Cell::from(o / unit),
                Cell::from((o - r).abs() / unit),
                Cell::from(err),
            ]);
        }
    }
    report.diag(
        "reference",
        if is_ar { "symmetric-model oracle" } else { "closed form" },
    );
    report.diag("max_rel_error", worst);
    if !unconverged.is_empty() {
        report.warn(format!("oracle did not converge for g/g_c in {unconverged:?}"));
        report.diag("unconverged", json!(unconverged));
    }
    if !skipped.is_empty() {
        report.diag("skipped", json!(skipped));
    }
    Ok(Outcome {
        report,
        format: output.format,
        code: 0,
    })
}

// -- phase -----------------------------------------------------------------

fn values_arg(spec: Option<&str>, flag: &str) -> Result<Values, Failure> {
    let spec = spec.ok_or_else(|| usage(format!("this mode needs --{flag}")))?;
    range::parse(spec).map_err(|e| usage(format!("--{flag}: {e}")))
}

fn push_point(report: &mut Report, p: &phase::PhasePoint) {
    report.push(vec![
        Cell::from(p.kappa),
        Cell::from(p.g_over_gc),
        Cell::from(p.region.code()),
        Cell::from(p.epsilon_gap_sq),
    ]);
}

fn run_phase(
    curve: Option<Curve>,
    branches: bool,
    grid: bool,
    kappa: Option<&str>,
    g_over_gc: Option<&str>,
    resolution: usize,
    output: &OutputArgs,
) -> Result<Outcome, Failure> {
    if resolution < 2 {
        return Err(usage("--resolution must be at least 2"));
    }
    let config = json!({
        "kappa": kappa,
        "g_over_gc": g_over_gc,
        "resolution": resolution,
        "format": output.format,
    });
    let region_headers = vec!["kappa", "g_over_gc", "region", "epsilon_gap_sq"];
    let report = match (curve, branches, grid) {
        (Some(Curve::Boundary), _, _) => {
            let mut report = Report::new("phase", config, vec!["kappa", "g_over_gc"]);
            for k in values_arg(kappa, "kappa")?.values(resolution) {
                report.push(vec![Cell::from(k), Cell::from(phase::boundary_curve(k)?)]);
            }
            report.diag("curve", "boundary");
            report
        }
        (Some(Curve::Asymptotes), _, _) => {
            let mut report = Report::new("phase", config, vec!["kappa", "steep", "flat", "boundary"]);
            for k in values_arg(kappa, "kappa")?.values(resolution) {
                let (steep, flat) = phase::asymptote_lines(k)?;
                report.push(vec![
                    Cell::from(k),
                    Cell::from(steep),
                    Cell::from(flat),
                    Cell::from(phase::boundary_curve(k)?),
                ]);
            }
            report.diag("curve", "asymptotes");
            report
        }
        (None, true, _) => {
            let mut report = Report::new(
                "phase",
                config,
                vec!["g_over_gc", "kappa_minus", "kappa_plus", "product"],
            );
            for g in values_arg(g_over_gc, "g-over-gc")?.values(resolution) {
                let (minus, plus) = phase::bifurcation_branches(g)?;
                report.push(vec![
                    Cell::from(g),
                    Cell::from(minus),
                    Cell::from(plus),
                    Cell::from(minus * plus),
                ]);
            }
            report.diag("curve", "branches");
            report
        }
        (None, false, true) => {
            let kappa_axis = values_arg(kappa, "kappa")?.axis(resolution).map_err(usage)?;
            let g_axis = values_arg(g_over_gc, "g-over-gc")?.axis(resolution).map_err(usage)?;
            let scan = phase::grid_scan(kappa_axis, g_axis)?;
            let mut report = Report::new("phase", config, region_headers);
            for p in &scan.points {
                push_point(&mut report, p);
            }
            report.diag("kappa_points", kappa_axis.points);
            report.diag("g_over_gc_points", g_axis.points);
            report.diag("superradiant_components", scan.superradiant_components());
            report
        }
        _ => {
            let ks = values_arg(kappa, "kappa")?.values(resolution);
            let gs = values_arg(g_over_gc, "g-over-gc")?.values(resolution);
            let mut report = Report::new("phase", config, region_headers);
            for &k in &ks {
                for &g in &gs {
                    push_point(&mut report, &phase::classify_reduced(k, g)?);
                }
            }
            report
        }
    };
    Ok(Outcome {
        report,
        format: output.format,
        code: 0,
    })
}

// -- validate --------------------------------------------------------------

fn validate(only: &[String], inject_error: bool) -> Result<Outcome, Failure> {
    let groups = only
        .iter()
        .map(|name| {
            Group::parse(name).ok_or_else(|| {
                let known: Vec<&str> = Group::ALL.iter().map(|g| g.name()).collect();
                usage(format!("unknown group {name:?}; expected one of {}", known.join(", ")))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let config = ValidationConfig {
        inject_error,
        only: groups,
    };
    let summary = validation::run(&config);

    let mut report = Report::new(
        "validate",
        json!(config),
        vec![
            "name",
            "group",
            "criterion",
            "passed",
            "max_error",
            "tolerance",
            "detail",
        ],
    );
    for c in &summary.checks {
        report.push(vec![
            Cell::from(c.name),
            Cell::from(c.group.name()),
            c.criterion.map_or(Cell::Empty, |n| Cell::from(u32::from(n))),
            Cell::Bool(c.passed),
            Cell::from(c.max_error),
            Cell::from(c.tolerance),
            Cell::Text(c.detail.clone()),
        ]);
    }
    report.diag("passed", summary.passed);
    report.diag("total", summary.total);
    report.diag("failed", summary.failed);
    Ok(Outcome {
        report,
        format: Format::Json,
        code: if summary.passed { 0 } else { 1 },
    })
}
