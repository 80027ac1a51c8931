//! Parameter sets for the squeezed-photon Jaynes-Cummings model, its symmetric
//! Rabi limit, and the quadratic boson Hamiltonian both reduce to.

use serde::{Deserialize, Serialize};

use crate::error::{domain, require_finite, require_nonnegative, require_positive, Result};

/// Parameters of the Jaynes-Cummings model whose atom exchanges squeezed photons
/// `B = cosh(r) a + sinh(r) a†` (squeeze phase fixed at zero), together with the
/// parameter `v` of the spin-decoupling unitary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega_c: f64,
    pub omega_a: f64,
    /// Rabi frequency of the atom/squeezed-photon exchange.
    pub rabi: f64,
    pub r: f64,
    pub v: f64,
    pub hbar: f64,
}

impl ModelParams {
    pub fn new(omega_c: f64, omega_a: f64, rabi: f64, r: f64, v: f64) -> Result<Self> {
        Self {
            omega_c,
            omega_a,
            rabi,
            r,
            v,
            hbar: 1.0,
        }
        .validated()
    }

    pub fn with_hbar(self, hbar: f64) -> Result<Self> {
        Self { hbar, ..self }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        require_positive("omega_c", self.omega_c)?;
        require_nonnegative("omega_a", self.omega_a)?;
        require_nonnegative("Omega", self.rabi)?;
        require_nonnegative("r", self.r)?;
        require_finite("v", self.v)?;
        require_positive("hbar", self.hbar)?;
        Ok(self)
    }

    /// Parameters whose spin-down projection approaches the symmetric Rabi
    /// coefficients of `p` as `r` grows: `Ω = 4g e^{-r}/ħ`, `v = 2k e^{-r}`.
    pub fn rabi_limit(p: &RabiParams, r: f64) -> Result<Self> {
        require_nonnegative("r", r)?;
        let decay = (-r).exp();
        if p.g < 0.0 {
            return Err(domain("rabi_limit needs g >= 0 (Omega is a nonnegative frequency)"));
        }
        Self {
            omega_c: p.omega_c,
            omega_a: p.omega_a,
            rabi: 4.0 * p.g * decay / p.hbar,
            r,
            v: 2.0 * p.k * decay,
            hbar: p.hbar,
        }
        .validated()
    }
}

/// Symmetric quantum Rabi model `ħω_c a†a + ħω_a σ_z/2 + g(a+a†)σ_x` together with
/// the unitary parameter `k` of the decoupling transformation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RabiParams {
    pub omega_c: f64,
    pub omega_a: f64,
    /// Coupling strength, in energy units.
    pub g: f64,
    pub k: f64,
    pub hbar: f64,
}

impl RabiParams {
    pub fn new(omega_c: f64, omega_a: f64, g: f64, k: f64) -> Result<Self> {
        Self {
            omega_c,
            omega_a,
            g,
            k,
            hbar: 1.0,
        }
        .validated()
    }

    pub fn with_hbar(self, hbar: f64) -> Result<Self> {
        Self { hbar, ..self }.validated()
    }

    pub fn with_g(self, g: f64) -> Result<Self> {
        Self { g, ..self }.validated()
    }

    pub fn with_k(self, k: f64) -> Result<Self> {
        Self { k, ..self }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        require_positive("omega_c", self.omega_c)?;
        require_nonnegative("omega_a", self.omega_a)?;
        require_finite("g", self.g)?;
        require_finite("k", self.k)?;
        require_positive("hbar", self.hbar)?;
        Ok(self)
    }

    /// `ħω_c`, the natural energy unit of the cavity.
    pub fn cavity_quantum(&self) -> f64 {
        self.hbar * self.omega_c
    }

    pub fn critical_coupling(&self) -> f64 {
        0.5 * self.hbar * (self.omega_a * self.omega_c).sqrt()
    }

    /// Reduced coupling `g/g_c`.
    pub fn g_over_gc(&self) -> Result<f64> {
        self.require_atom()?;
        Ok(self.g / self.critical_coupling())
    }

    /// Reduced unitary parameter `κ = 2k√(ω_a/ω_c)`.
    pub fn kappa(&self) -> f64 {
        2.0 * self.k * (self.omega_a / self.omega_c).sqrt()
    }

    /// Sets `g` and `k` from reduced coordinates `(κ, g/g_c)`.
    pub fn from_reduced(self, kappa: f64, g_over_gc: f64) -> Result<Self> {
        self.require_atom()?;
        let k = kappa / (2.0 * (self.omega_a / self.omega_c).sqrt());
        let g = g_over_gc * self.critical_coupling();
        Self { g, k, ..self }.validated()
    }

    pub(crate) fn require_atom(&self) -> Result<()> {
        if self.omega_a > 0.0 {
            Ok(())
        } else {
            Err(domain("this quantity divides by omega_a, which must be > 0"))
        }
    }
}

/// Coefficients of `A a†a + B + C (a + a†)²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadraticCoefficients {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl QuadraticCoefficients {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        require_finite("A", a)?;
        require_finite("B", b)?;
        require_finite("C", c)?;
        Ok(Self { a, b, c })
    }

    /// `A(A+4C)`, the squared quasiparticle gap. Its sign decides the phase.
    pub fn gap_squared(&self) -> f64 {
        self.a * (self.a + 4.0 * self.c)
    }
}
