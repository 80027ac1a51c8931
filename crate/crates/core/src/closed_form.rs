//! Closed-form quantities of the squeezed-photon Jaynes-Cummings model and its
//! symmetric Rabi limit.
//!
//! After the spin-decoupling unitary, the spin-down block of the Hamiltonian is
//! the quadratic boson form `A a†a + B + C (a + a†)²`. A Bogoliubov rotation
//! with angle `β = ¼ ln(A/(A+4C))` diagonalizes it to
//!
//! ```text
//! B − A/2 + √(A(A+4C)) (b†b + ½)
//! ```
//!
//! and everything else in this module (critical roots, photon numbers, the
//! analytically continued spectrum `E_m(n)`, its large-`n` expansion, and the
//! energies along the two asymptotes of the phase boundary) follows from that
//! form with the Rabi-limit coefficients `A = ħω_c`, `B = −ħω_a/2 + ħω_c k²`,
//! `C = −2kg + ħω_a k²`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, require_finite, Error, Result};
use crate::params::{ModelParams, QuadraticCoefficients, RabiParams};

/// Relative tolerance on `A(A+4C)` (scaled by `A²`) below which a point is
/// reported as lying on the phase boundary.
pub const PHASE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Normal,
    Boundary,
    Superradiant,
}

impl Region {
    /// Short code used in CSV output.
    pub fn code(self) -> &'static str {
        match self {
            Region::Normal => "np",
            Region::Boundary => "boundary",
            Region::Superradiant => "sp",
        }
    }
}

/// Phase of a quadratic form from the sign of `A(A+4C)`.
pub fn classify_coefficients(c: &QuadraticCoefficients) -> Region {
    let gap_sq = c.gap_squared();
    let tol = PHASE_TOLERANCE * c.a * c.a;
    if gap_sq.abs() <= tol {
        Region::Boundary
    } else if gap_sq > 0.0 {
        Region::Normal
    } else {
        Region::Superradiant
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovSolution {
    pub beta: f64,
    pub epsilon_gap: f64,
}

impl BogoliubovSolution {
    /// `A coshβ sinhβ + C (coshβ + sinhβ)²`, the coefficient left in front of
    /// `bb + b†b†` after the rotation.
    pub fn residual(&self, c: &QuadraticCoefficients) -> f64 {
        let (s, ch) = (self.beta.sinh(), self.beta.cosh());
        c.a * ch * s + c.c * (ch + s) * (ch + s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnergyLevel {
    /// Quasiparticle number.
    pub m: u32,
    /// Photon number `k² + m`, continued to real `k²`.
    pub n: f64,
    pub energy: f64,
}

impl EnergyLevel {
    pub fn k_squared(&self) -> f64 {
        self.n - f64::from(self.m)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalRoots {
    pub k_minus: f64,
    pub k_plus: f64,
    pub g_c: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonNumber {
    pub n: f64,
    pub k_squared: f64,
    /// Whether `k²` is a nonnegative integer, i.e. `n` is a genuine cavity
    /// eigenvalue rather than an analytic continuation.
    pub integer_valid: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

/// `g_c = ħ√(ω_a ω_c)/2`.
pub fn critical_coupling(omega_a: f64, omega_c: f64, hbar: f64) -> Result<f64> {
    for (name, x) in [("omega_a", omega_a), ("omega_c", omega_c), ("hbar", hbar)] {
        require_finite(name, x)?;
    }
    if omega_a < 0.0 || omega_c <= 0.0 || hbar <= 0.0 {
        return Err(domain(format!(
            "critical_coupling needs omega_a >= 0, omega_c > 0, hbar > 0 (got {omega_a}, {omega_c}, {hbar})"
        )));
    }
    Ok(0.5 * hbar * (omega_a * omega_c).sqrt())
}

/// Coefficients of the spin-down projection of the rotated squeezed-photon
/// Jaynes-Cummings Hamiltonian.
pub fn mjc_coefficients(p: &ModelParams) -> QuadraticCoefficients {
    let ModelParams {
        omega_c,
        omega_a,
        rabi,
        r,
        v,
        hbar,
    } = *p;
    let v2 = v * v;
    let squeeze = (-2.0 * r).exp();
    let exchange = hbar * v * (rabi + omega_a * v) * squeeze;
    let cosh_r = r.cosh();
    QuadraticCoefficients {
        a: hbar * omega_c * (1.0 + v2) + exchange,
        b: -0.5 * hbar * omega_a * (1.0 - v2) + 0.5 * exchange + hbar * omega_c * v2 * cosh_r * cosh_r,
        c: -0.5 * hbar * v * rabi * (2.0 * r).cosh() + 0.5 * hbar * omega_a * v2 * (2.0 * r).sinh(),
    }
}

/// Coefficients in the symmetric Rabi limit.
pub fn sr_coefficients(p: &RabiParams) -> QuadraticCoefficients {
    let RabiParams {
        omega_c,
        omega_a,
        g,
        k,
        hbar,
    } = *p;
    QuadraticCoefficients {
        a: hbar * omega_c,
        b: -0.5 * hbar * omega_a + hbar * omega_c * k * k,
        c: -2.0 * k * g + hbar * omega_a * k * k,
    }
}

fn require_positive_a(c: &QuadraticCoefficients) -> Result<()> {
    if c.a > 0.0 && c.a.is_finite() {
        Ok(())
    } else {
        Err(domain(format!("quadratic form needs A > 0, got {}", c.a)))
    }
}

/// Bogoliubov angle removing the `bb + b†b†` terms, with the canonical branch
/// `β = ¼ ln(A/(A+4C))`.
pub fn bogoliubov_angle(c: &QuadraticCoefficients) -> Result<BogoliubovSolution> {
    require_positive_a(c)?;
    match classify_coefficients(c) {
        Region::Boundary => Err(Error::BoundaryDegenerate),
        Region::Superradiant => Err(Error::SuperradiantRegime {
            gap_sq: c.gap_squared(),
        }),
        Region::Normal => Ok(BogoliubovSolution {
            beta: 0.25 * (c.a / (c.a + 4.0 * c.c)).ln(),
            epsilon_gap: c.gap_squared().sqrt(),
        }),
    }
}

/// Quasiparticle gap `√(A(A+4C))`; zero on the boundary.
pub fn quasiparticle_gap(c: &QuadraticCoefficients) -> Result<f64> {
    require_positive_a(c)?;
    match classify_coefficients(c) {
        Region::Normal => Ok(c.gap_squared().sqrt()),
        Region::Boundary => Ok(0.0),
        Region::Superradiant => Err(Error::SuperradiantRegime {
            gap_sq: c.gap_squared(),
        }),
    }
}

/// Levels `B − A/2 + ε (m + ½)` for `m = 0..=m_max`, indexed by `m`.
///
/// On the phase boundary the gap closes and every level collapses onto
/// `B − A/2`.
pub fn effective_spectrum(c: &QuadraticCoefficients, m_max: u32) -> Result<Vec<f64>> {
    let gap = quasiparticle_gap(c)?;
    let offset = c.b - 0.5 * c.a;
    Ok((0..=m_max).map(|m| offset + gap * (f64::from(m) + 0.5)).collect())
}

/// Rabi-limit levels at the unitary parameter `p.k`, tagged with their photon
/// numbers `n = k² + m`.
pub fn rabi_spectrum(p: &RabiParams, m_max: u32) -> Result<Vec<EnergyLevel>> {
    let k2 = p.k * p.k;
    let energies = effective_spectrum(&sr_coefficients(p), m_max)?;
    Ok(energies
        .into_iter()
        .zip(0..)
        .map(|(energy, m)| EnergyLevel {
            m,
            n: k2 + f64::from(m),
            energy,
        })
        .collect())
}

fn require_coupling(p: &RabiParams) -> Result<()> {
    p.require_atom()?;
    if p.g > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("bifurcation needs g > 0, got {}", p.g)))
    }
}

/// Real roots `k_∓` of `ħω_c − 8kg + 4ħω_a k² = 0` at coupling `p.g`
/// (`p.k` is not read).
pub fn critical_k(p: &RabiParams) -> Result<CriticalRoots> {
    require_coupling(p)?;
    let g_c = p.critical_coupling();
    if p.g < g_c {
        return Err(Error::NoRealTransition { g: p.g, g_c });
    }
    let ratio = g_c / p.g;
    let root = (1.0 - ratio * ratio).max(0.0).sqrt();
    let scale = p.g / (p.hbar * p.omega_a);
    let k_plus = scale * (1.0 + root);
    // Vieta instead of scale*(1 - root): no cancellation for g >> g_c.
    let product = (g_c / (p.hbar * p.omega_a)).powi(2);
    Ok(CriticalRoots {
        k_minus: product / k_plus,
        k_plus,
        g_c,
    })
}

/// The gap in factored form `4 g_c √((k − k_+)(k − k_−))`.
pub fn epsilon_gap_factored(p: &RabiParams) -> Result<f64> {
    if p.k < 0.0 {
        return Err(domain(format!("bifurcation needs k >= 0, got {}", p.k)));
    }
    let roots = critical_k(p)?;
    let gap_sq = 16.0 * roots.g_c * roots.g_c * (p.k - roots.k_plus) * (p.k - roots.k_minus);
    let a = p.cavity_quantum();
    if gap_sq.abs() <= PHASE_TOLERANCE * a * a {
        Ok(0.0)
    } else if gap_sq < 0.0 {
        Err(Error::SuperradiantRegime { gap_sq })
    } else {
        Ok(gap_sq.sqrt())
    }
}

/// Level `m` at the particular choice `k = g/(ħω_a)`, valid for `|g| ≤ g_c`.
pub fn normal_phase_energy(p: &RabiParams, m: u32) -> Result<f64> {
    p.require_atom()?;
    let g_c = p.critical_coupling();
    if p.g.abs() > g_c {
        let a = p.cavity_quantum();
        return Err(Error::SuperradiantRegime {
            gap_sq: a * a * (1.0 - (p.g / g_c).powi(2)),
        });
    }
    let RabiParams {
        omega_c,
        omega_a,
        g,
        hbar,
        ..
    } = *p;
    let softening = (1.0 - (g / g_c).powi(2)).max(0.0).sqrt();
    Ok(-0.5 * hbar * omega_a * (1.0 + omega_c / omega_a)
        + omega_c / (hbar * omega_a * omega_a) * g * g
        + hbar * omega_c * softening * (f64::from(m) + 0.5))
}

/// `⟨↓|U† a†a U|↓⟩` in the quasiparticle number state `m`.
pub fn photon_number_expectation(v: f64, r: f64, m: u32) -> f64 {
    let v2 = v * v;
    let cosh_r = r.cosh();
    v2 * cosh_r * cosh_r + (1.0 + v2) * f64::from(m)
}

pub fn photon_number(k: f64, m: u32) -> PhotonNumber {
    let k_squared = k * k;
    let nearest = k_squared.round();
    PhotonNumber {
        n: k_squared + f64::from(m),
        k_squared,
        integer_valid: (k_squared - nearest).abs() <= 1e-9 * nearest.max(1.0),
    }
}

/// `E_m(n)` with `k = √(n − m)` continued to real `n` (`p.k` is not read).
pub fn energy_level(m: u32, n: f64, p: &RabiParams) -> Result<EnergyLevel> {
    require_finite("n", n)?;
    let k2 = n - f64::from(m);
    if k2 < 0.0 {
        return Err(domain(format!(
            "photon number n = {n} is below quasiparticle number m = {m}"
        )));
    }
    energy_level_at_k(m, k2.sqrt(), p)
}

/// `E_m(n)` parameterized by `k ≥ 0` directly, so that small `k²` does not
/// lose digits by passing through `n = m + k²`.
pub fn energy_level_at_k(m: u32, k: f64, p: &RabiParams) -> Result<EnergyLevel> {
    require_finite("k", k)?;
    if k < 0.0 {
        return Err(domain(format!("k must be >= 0, got {k}")));
    }
    let k2 = k * k;
    let quantum = p.cavity_quantum();
    let gap_sq = quantum * (quantum - 8.0 * k * p.g + 4.0 * p.hbar * p.omega_a * k2);
    let gap = if gap_sq.abs() <= PHASE_TOLERANCE * quantum * quantum {
        0.0
    } else if gap_sq < 0.0 {
        return Err(Error::SuperradiantRegime { gap_sq });
    } else {
        gap_sq.sqrt()
    };
    Ok(EnergyLevel {
        m,
        n: k2 + f64::from(m),
        energy: -0.5 * p.hbar * (p.omega_a + p.omega_c) + quantum * k2 + gap * (f64::from(m) + 0.5),
    })
}

/// Large-`n` expansion of `E_m(n)` through order `n⁰`; the remainder is
/// `O(1/√n)`.
pub fn asymptotic_energy(m: u32, n: f64, p: &RabiParams) -> Result<f64> {
    p.require_atom()?;
    if !(n > 0.0 && n.is_finite()) {
        return Err(domain(format!("asymptotic expansion needs n > 0, got {n}")));
    }
    let RabiParams {
        omega_c,
        omega_a,
        g,
        hbar,
        ..
    } = *p;
    let mf = f64::from(m);
    let half = mf + 0.5;
    Ok(
        hbar * omega_c * n + 2.0 * hbar * (omega_a * omega_c).sqrt() * half * n.sqrt()
            - 0.5 * hbar * (omega_a + omega_c)
            - hbar * omega_c * mf
            - 2.0 * g * (omega_c / omega_a).sqrt() * half,
    )
}

/// Photon number `m + k_±²` when `k` sits on a root of the gap.
pub fn photon_number_at_transition(p: &RabiParams, branch: Branch, m: u32) -> Result<f64> {
    let roots = critical_k(p)?;
    let k = match branch {
        Branch::Plus => roots.k_plus,
        Branch::Minus => roots.k_minus,
    };
    Ok(photon_number(k, m).n)
}

/// Unitary parameter on the steep asymptote `g/g_c = κ/2`.
pub fn steep_asymptote_k(p: &RabiParams) -> Result<f64> {
    p.require_atom()?;
    Ok(2.0 * p.g / (p.hbar * p.omega_a))
}

/// Unitary parameter on the flat asymptote `g/g_c = 1/(2κ)`.
pub fn flat_asymptote_k(p: &RabiParams) -> Result<f64> {
    if p.g <= 0.0 {
        return Err(domain(format!("flat asymptote needs g > 0, got {}", p.g)));
    }
    Ok(p.cavity_quantum() / (8.0 * p.g))
}

/// Level `m` along the steep asymptote, where the gap equals `ħω_c`.
pub fn asymptote_energy_steep(m: u32, p: &RabiParams) -> Result<f64> {
    p.require_atom()?;
    let RabiParams {
        omega_c,
        omega_a,
        g,
        hbar,
        ..
    } = *p;
    let reduced = f64::from(m) + 4.0 * g * g / (hbar * hbar * omega_a * omega_a) - omega_a / (2.0 * omega_c);
    Ok(hbar * omega_c * reduced)
}

/// Level `m` along the flat asymptote, where the gap is `ħω_c g_c/(2g)`.
pub fn asymptote_energy_flat(m: u32, p: &RabiParams) -> Result<f64> {
    let k = flat_asymptote_k(p)?;
    let RabiParams {
        omega_c, omega_a, g, ..
    } = *p;
    let g_c = p.critical_coupling();
    let reduced = -0.5 - omega_a / (2.0 * omega_c) + k * k + g_c / (2.0 * g) * (f64::from(m) + 0.5);
    Ok(p.cavity_quantum() * reduced)
}

/// `E/(ħω_c) + ω_a/(2ω_c)`: equals `m + k²` on the steep asymptote.
pub fn steep_asymptote_index(energy: f64, p: &RabiParams) -> f64 {
    energy / p.cavity_quantum() + p.omega_a / (2.0 * p.omega_c)
}

/// `2(g/g_c)[E/(ħω_c) + ω_a/(2ω_c) + ½ − (ħω_c/g)²/64 − g_c/(4g)]`: equals the
/// quasiparticle number `m` on the flat asymptote.
pub fn flat_asymptote_index(energy: f64, p: &RabiParams) -> Result<f64> {
    p.require_atom()?;
    let k = flat_asymptote_k(p)?;
    let g_c = p.critical_coupling();
    let bracket = energy / p.cavity_quantum() + p.omega_a / (2.0 * p.omega_c) + 0.5 - k * k - g_c / (4.0 * p.g);
    Ok(2.0 * p.g / g_c * bracket)
}
