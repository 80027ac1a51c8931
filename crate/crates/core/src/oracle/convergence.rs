use serde::Serialize;

use super::builders;
use super::eigen::eigenvalues_sym;
use super::matrix::OperatorMatrix;
use crate::error::{domain, Result};
use crate::params::{ModelParams, QuadraticCoefficients, RabiParams};

pub const DEFAULT_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_TRUNCATION_CAP: usize = 2048;

/// Eigensolver deflation threshold used while scanning truncations.
const SOLVER_TOLERANCE: f64 = 1e-14;

/// Any of the Hamiltonians the oracle knows how to build.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "model", rename_all = "lowercase")]
pub enum Hamiltonian {
    Mjc(ModelParams),
    Sr(RabiParams),
    Ar { params: RabiParams, eps_asym: f64 },
    Msr { params: RabiParams, alpha: f64 },
    Quadratic(QuadraticCoefficients),
}

impl Hamiltonian {
    pub fn build(&self, truncation: usize) -> Result<OperatorMatrix> {
        match self {
            Hamiltonian::Mjc(p) => builders::build_h_mjc(p, truncation),
            Hamiltonian::Sr(p) => builders::build_h_sr(p, truncation),
            Hamiltonian::Ar { params, eps_asym } => builders::build_h_ar(params, *eps_asym, truncation),
            Hamiltonian::Msr { params, alpha } => builders::build_h_msr(params, *alpha, truncation),
            Hamiltonian::Quadratic(c) => builders::build_h_quadratic(c, truncation),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Hamiltonian::Mjc(_) => "mjc",
            Hamiltonian::Sr(_) => "sr",
            Hamiltonian::Ar { .. } => "ar",
            Hamiltonian::Msr { .. } => "msr",
            Hamiltonian::Quadratic(_) => "quadratic",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceOptions {
    /// Number of lowest eigenvalues that must settle.
    pub levels: usize,
    /// Relative drift allowed between consecutive truncations.
    pub tol: f64,
    pub n0: usize,
    pub n_cap: usize,
    /// Stop early when the ground level runs away under doubling.
    pub detect_divergence: bool,
}

impl ConvergenceOptions {
    pub fn new(levels: usize) -> Self {
        Self {
            levels,
            tol: DEFAULT_TOLERANCE,
            n0: levels + 10,
            n_cap: DEFAULT_TRUNCATION_CAP,
            detect_divergence: true,
        }
    }

    pub fn with_tol(self, tol: f64) -> Self {
        Self { tol, ..self }
    }

    pub fn with_n0(self, n0: usize) -> Self {
        Self { n0, ..self }
    }

    pub fn with_cap(self, n_cap: usize) -> Self {
        Self { n_cap, ..self }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TruncationReport {
    pub n_initial: usize,
    pub n_final: usize,
    /// Per-level relative change between the last two truncations.
    pub level_drift: Vec<f64>,
    pub converged: bool,
    /// Ground level kept falling faster with every doubling: the spectrum is
    /// unbounded below (superradiant instability of a quadratic form).
    pub unbounded_below: bool,
    /// `(N, lowest eigenvalue)` for every truncation tried.
    pub ground_history: Vec<(usize, f64)>,
}

/// Lowest `opts.levels` eigenvalues of `h`, doubling the truncation from
/// `opts.n0` until they stop moving or `opts.n_cap` is reached.
///
/// Drift is measured relative to `max(|E_i|, E_{levels−1} − E_0)`, so levels
/// sitting near zero are judged against the spread of the requested window.
pub fn converged_spectrum(h: &Hamiltonian, opts: &ConvergenceOptions) -> Result<(Vec<f64>, TruncationReport)> {
    if opts.levels == 0 {
        return Err(domain("need at least one level"));
    }
    if opts.n0 < opts.levels + 10 {
        return Err(domain(format!(
            "initial truncation {} must be at least levels + 10 = {}",
            opts.n0,
            opts.levels + 10
        )));
    }
    if opts.n0 > opts.n_cap {
        return Err(domain(format!(
            "initial truncation {} exceeds the cap {}",
            opts.n0, opts.n_cap
        )));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(domain(format!("tolerance must be > 0, got {}", opts.tol)));
    }

    let mut truncation = opts.n0;
    let mut previous: Option<Vec<f64>> = None;
    let mut report = TruncationReport {
        n_initial: opts.n0,
        n_final: opts.n0,
        level_drift: Vec::new(),
        converged: false,
        unbounded_below: false,
        ground_history: Vec::new(),
    };
    loop {
        let mut values = eigenvalues_sym(&h.build(truncation)?, SOLVER_TOLERANCE)?;
        values.truncate(opts.levels);
        report.n_final = truncation;
        report.ground_history.push((truncation, values[0]));

        if let Some(prev) = &previous {
            let spread = values[values.len() - 1] - values[0];
            report.level_drift = values
                .iter()
                .zip(prev)
                .map(|(new, old)| {
                    let scale = new.abs().max(spread).max(f64::MIN_POSITIVE);
                    (new - old).abs() / scale
                })
                .collect();
            report.converged = report.level_drift.iter().all(|d| *d <= opts.tol);
            if report.converged {
                return Ok((values, report));
            }
            if opts.detect_divergence && runaway(&report.ground_history) {
                report.unbounded_below = true;
                return Ok((values, report));
            }
        }
        if truncation * 2 > opts.n_cap {
            return Ok((values, report));
        }
        previous = Some(values);
        truncation *= 2;
    }
}

/// Three consecutive ground-level drops, each at least 1.5x the one before.
/// Convergent truncation sequences shrink their drops geometrically; an
/// inverted oscillator loses energy roughly linearly in `N`, so its drops
/// double.
fn runaway(history: &[(usize, f64)]) -> bool {
    if history.len() < 4 {
        return false;
    }
    let tail = &history[history.len() - 4..];
    let drops: Vec<f64> = tail.windows(2).map(|w| w[0].1 - w[1].1).collect();
    drops[0] > 0.0 && drops.windows(2).all(|w| w[1] >= 1.5 * w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_options() {
        let h = Hamiltonian::Quadratic(QuadraticCoefficients::new(1.0, 0.0, 0.0).unwrap());
        assert!(converged_spectrum(&h, &ConvergenceOptions::new(0)).is_err());
        assert!(converged_spectrum(&h, &ConvergenceOptions::new(5).with_n0(10)).is_err());
        assert!(converged_spectrum(&h, &ConvergenceOptions::new(5).with_cap(8)).is_err());
        assert!(converged_spectrum(&h, &ConvergenceOptions::new(5).with_tol(0.0)).is_err());
    }

    #[test]
    fn runaway_detection() {
        let linear: Vec<(usize, f64)> = [16, 32, 64, 128].iter().map(|&n| (n, -(n as f64))).collect();
        assert!(runaway(&linear));
        let settling = [(16, -1.0), (32, -1.5), (64, -1.6), (128, -1.61)];
        assert!(!runaway(&settling));
        assert!(!runaway(&linear[..3]));
    }

    #[test]
    fn uncoupled_rabi_converges_on_first_doubling() {
        let h = Hamiltonian::Sr(RabiParams::new(1.0, 0.6, 0.0, 0.0).unwrap());
        let (values, report) = converged_spectrum(&h, &ConvergenceOptions::new(4)).unwrap();
        assert!(report.converged);
        assert_eq!(report.n_final, 2 * report.n_initial);
        assert_eq!(report.ground_history.len(), 2);
        let want = [-0.3, 0.3, 0.7, 1.3];
        for (got, want) in values.iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }
}
