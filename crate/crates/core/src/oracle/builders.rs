//! Truncated Fock-space matrices for every Hamiltonian in the crate.
//!
//! All builders take the truncation `N` (highest occupation kept) and produce
//! real symmetric matrices; with zero squeeze phase and a real displacement
//! nothing complex ever appears.

use crate::error::{domain, Result};
use crate::params::{ModelParams, QuadraticCoefficients, RabiParams};

use super::matrix::OperatorMatrix;

const SIGMA_Z: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, -1.0]];
const SIGMA_X: [[f64; 2]; 2] = [[0.0, 1.0], [1.0, 0.0]];
/// `|excited⟩⟨ground|`
const SIGMA_PLUS: [[f64; 2]; 2] = [[0.0, 1.0], [0.0, 0.0]];
const SIGMA_MINUS: [[f64; 2]; 2] = [[0.0, 0.0], [1.0, 0.0]];
const SPIN_IDENTITY: [[f64; 2]; 2] = [[1.0, 0.0], [0.0, 1.0]];

fn require_truncation(n: usize) -> Result<()> {
    if n >= 1 {
        Ok(())
    } else {
        Err(domain("Fock truncation N must be >= 1"))
    }
}

/// `(a, a†)` on `|0⟩..|N⟩`: `a[n−1][n] = √n`.
pub fn ladder_matrices(n: usize) -> Result<(OperatorMatrix, OperatorMatrix)> {
    require_truncation(n)?;
    let mut a = OperatorMatrix::zeros(n, false);
    for occ in 1..=n {
        a[(occ - 1, occ)] = (occ as f64).sqrt();
    }
    let a_dag = a.transpose();
    Ok((a, a_dag))
}

/// `diag(0, 1, .., N)`.
pub fn number_operator(n: usize) -> OperatorMatrix {
    let mut m = OperatorMatrix::zeros(n, false);
    for occ in 0..=n {
        m[(occ, occ)] = occ as f64;
    }
    m
}

/// `a + a†` on the truncated space.
pub fn position_operator(n: usize) -> Result<OperatorMatrix> {
    let (a, a_dag) = ladder_matrices(n)?;
    let mut x = a;
    x.add_scaled(1.0, &a_dag);
    Ok(x)
}

/// `B = cosh(r) a + sinh(r) a†`.
pub fn squeezed_annihilator(n: usize, r: f64) -> Result<OperatorMatrix> {
    crate::error::require_finite("r", r)?;
    let (a, a_dag) = ladder_matrices(n)?;
    let mut b = a.scaled(r.cosh());
    b.add_scaled(r.sinh(), &a_dag);
    Ok(b)
}

/// Parity `σ_z ⊗ (−1)^{a†a}`.
pub fn parity_operator(n: usize) -> OperatorMatrix {
    let mut boson = OperatorMatrix::zeros(n, false);
    for occ in 0..=n {
        boson[(occ, occ)] = if occ % 2 == 0 { 1.0 } else { -1.0 };
    }
    OperatorMatrix::spin_boson(SIGMA_Z, &boson)
}

/// `σ_x ⊗ 1`.
pub fn sigma_x(n: usize) -> OperatorMatrix {
    OperatorMatrix::spin_boson(SIGMA_X, &OperatorMatrix::identity(n, false))
}

/// `1 ⊗ m`.
pub fn boson_only(m: &OperatorMatrix) -> OperatorMatrix {
    OperatorMatrix::spin_boson(SPIN_IDENTITY, m)
}

/// `ħω_c a†a + ħω_a σ_z/2`.
fn bare_spin_boson(omega_c: f64, omega_a: f64, hbar: f64, n: usize) -> OperatorMatrix {
    let mut h = boson_only(&number_operator(n)).scaled(hbar * omega_c);
    h.add_scaled(
        0.5 * hbar * omega_a,
        &OperatorMatrix::spin_boson(SIGMA_Z, &OperatorMatrix::identity(n, false)),
    );
    h
}

/// `ħω_c a†a + ħω_a σ_z/2 + (ħΩ/2)[cosh r (σ₊a + σ₋a†) + sinh r (σ₋a + σ₊a†)]`.
pub fn build_h_mjc(p: &ModelParams, n: usize) -> Result<OperatorMatrix> {
    let (a, a_dag) = ladder_matrices(n)?;
    let mut h = bare_spin_boson(p.omega_c, p.omega_a, p.hbar, n);
    let half_rabi = 0.5 * p.hbar * p.rabi;
    let (ch, sh) = (p.r.cosh(), p.r.sinh());
    h.add_scaled(half_rabi * ch, &OperatorMatrix::spin_boson(SIGMA_PLUS, &a));
    h.add_scaled(half_rabi * ch, &OperatorMatrix::spin_boson(SIGMA_MINUS, &a_dag));
    h.add_scaled(half_rabi * sh, &OperatorMatrix::spin_boson(SIGMA_MINUS, &a));
    h.add_scaled(half_rabi * sh, &OperatorMatrix::spin_boson(SIGMA_PLUS, &a_dag));
    Ok(h)
}

/// `ħω_c a†a + ħω_a σ_z/2 + g(a + a†)σ_x`.
pub fn build_h_sr(p: &RabiParams, n: usize) -> Result<OperatorMatrix> {
    let x = position_operator(n)?;
    let mut h = bare_spin_boson(p.omega_c, p.omega_a, p.hbar, n);
    h.add_scaled(p.g, &OperatorMatrix::spin_boson(SIGMA_X, &x));
    Ok(h)
}

/// Symmetric model plus a static bias `eps_asym σ_x`.
pub fn build_h_ar(p: &RabiParams, eps_asym: f64, n: usize) -> Result<OperatorMatrix> {
    crate::error::require_finite("eps_asym", eps_asym)?;
    let mut h = build_h_sr(p, n)?;
    h.add_scaled(eps_asym, &sigma_x(n));
    Ok(h)
}

/// Symmetric model conjugated by a real displacement:
/// `ħω_c(a†+α)(a+α) + ħω_a σ_z/2 + g(a + a† + 2α)σ_x`.
pub fn build_h_msr(p: &RabiParams, alpha: f64, n: usize) -> Result<OperatorMatrix> {
    crate::error::require_finite("alpha", alpha)?;
    let x = position_operator(n)?;
    let quantum = p.cavity_quantum();
    let mut boson = number_operator(n);
    boson.add_scaled(alpha, &x);
    boson.add_scaled(alpha * alpha, &OperatorMatrix::identity(n, false));
    let mut h = boson_only(&boson).scaled(quantum);
    h.add_scaled(
        0.5 * p.hbar * p.omega_a,
        &OperatorMatrix::spin_boson(SIGMA_Z, &OperatorMatrix::identity(n, false)),
    );
    let mut coupling = x;
    coupling.add_scaled(2.0 * alpha, &OperatorMatrix::identity(n, false));
    h.add_scaled(p.g, &OperatorMatrix::spin_boson(SIGMA_X, &coupling));
    Ok(h)
}

/// `A a†a + B + C (a+a†)²`, with `(a+a†)²` projected onto the truncated space
/// rather than squared after truncation.
pub fn build_h_quadratic(c: &QuadraticCoefficients, n: usize) -> Result<OperatorMatrix> {
    require_truncation(n)?;
    let mut h = OperatorMatrix::zeros(n, false);
    for occ in 0..=n {
        let nf = occ as f64;
        h[(occ, occ)] = c.a * nf + c.b + c.c * (2.0 * nf + 1.0);
        if occ + 2 <= n {
            let hop = c.c * ((nf + 1.0) * (nf + 2.0)).sqrt();
            h[(occ, occ + 2)] = hop;
            h[(occ + 2, occ)] = hop;
        }
    }
    Ok(h)
}
