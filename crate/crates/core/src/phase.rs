//! Normal/superradiant classification in the reduced plane `(κ, g/g_c)` with
//! `κ = 2k√(ω_a/ω_c)`.
//!
//! In reduced variables `A(A+4C)/A² = 1 − 2κ(g/g_c) + κ²`, so the boundary is
//! `g/g_c = (κ²+1)/(2κ)`, which splits exactly into the two asymptotes `κ/2`
//! and `1/(2κ)` and has its minimum `1` at `κ = 1`.

use std::collections::VecDeque;

use serde::Serialize;

use crate::closed_form::{classify_coefficients, sr_coefficients, Region};
use crate::error::{domain, require_finite, Error, Result};
use crate::params::RabiParams;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhasePoint {
    pub kappa: f64,
    pub g_over_gc: f64,
    pub region: Region,
    /// `A(A+4C)`; negative in the superradiant phase.
    pub epsilon_gap_sq: f64,
}

/// Classifies `(p.g, p.k)`. Needs `g > 0`, `k ≥ 0` and an atom (`ω_a > 0`).
pub fn classify(p: &RabiParams) -> Result<PhasePoint> {
    p.require_atom()?;
    if p.g.is_nan() || p.g <= 0.0 || p.k < 0.0 {
        return Err(domain(format!(
            "classification needs g > 0 and k >= 0, got g = {}, k = {}",
            p.g, p.k
        )));
    }
    let c = sr_coefficients(p);
    Ok(PhasePoint {
        kappa: p.kappa(),
        g_over_gc: p.g_over_gc()?,
        region: classify_coefficients(&c),
        epsilon_gap_sq: c.gap_squared(),
    })
}

/// Classifies a point given in reduced coordinates, in units `ħω_c = 1`.
pub fn classify_reduced(kappa: f64, g_over_gc: f64) -> Result<PhasePoint> {
    let p = reference_system().from_reduced(kappa, g_over_gc)?;
    let mut point = classify(&p)?;
    // report the coordinates asked for, not their round trip
    point.kappa = kappa;
    point.g_over_gc = g_over_gc;
    Ok(point)
}

fn reference_system() -> RabiParams {
    RabiParams {
        omega_c: 1.0,
        omega_a: 1.0,
        g: 0.0,
        k: 0.0,
        hbar: 1.0,
    }
}

fn require_kappa(kappa: f64) -> Result<()> {
    require_finite("kappa", kappa)?;
    if kappa > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("kappa must be > 0, got {kappa}")))
    }
}

/// `(κ²+1)/(2κ)`.
pub fn boundary_curve(kappa: f64) -> Result<f64> {
    require_kappa(kappa)?;
    Ok((kappa * kappa + 1.0) / (2.0 * kappa))
}

/// `(κ_−, κ_+)` on the boundary at reduced coupling `g/g_c ≥ 1`.
pub fn bifurcation_branches(g_over_gc: f64) -> Result<(f64, f64)> {
    require_finite("g_over_gc", g_over_gc)?;
    if g_over_gc < 1.0 {
        return Err(Error::NoRealTransition { g: g_over_gc, g_c: 1.0 });
    }
    let root = (1.0 - (g_over_gc * g_over_gc).recip()).max(0.0).sqrt();
    let plus = g_over_gc * (1.0 + root);
    Ok((plus.recip(), plus))
}

/// `(κ/2, 1/(2κ))`.
pub fn asymptote_lines(kappa: f64) -> Result<(f64, f64)> {
    require_kappa(kappa)?;
    Ok((0.5 * kappa, 0.5 / kappa))
}

/// Inclusive `[start, stop]` sampled at `points` evenly spaced values.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Axis {
    pub fn new(start: f64, stop: f64, points: usize) -> Result<Self> {
        require_finite("axis start", start)?;
        require_finite("axis stop", stop)?;
        if points < 2 {
            return Err(domain("grid axes need at least 2 points"));
        }
        if !(start > 0.0 && stop > start) {
            return Err(domain(format!("axis needs 0 < start < stop, got [{start}, {stop}]")));
        }
        Ok(Self { start, stop, points })
    }

    pub fn value(&self, i: usize) -> f64 {
        let t = i as f64 / (self.points - 1) as f64;
        self.start + t * (self.stop - self.start)
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.points).map(|i| self.value(i)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhaseGrid {
    pub kappa: Axis,
    pub g_over_gc: Axis,
    /// Row-major, one row per κ value, `g/g_c` increasing along a row.
    pub points: Vec<PhasePoint>,
}

impl PhaseGrid {
    pub fn at(&self, i_kappa: usize, j_g: usize) -> &PhasePoint {
        &self.points[i_kappa * self.g_over_gc.points + j_g]
    }

    pub fn column(&self, i_kappa: usize) -> &[PhasePoint] {
        let w = self.g_over_gc.points;
        &self.points[i_kappa * w..(i_kappa + 1) * w]
    }

    /// Number of times the region changes along increasing `g/g_c` at fixed κ,
    /// ignoring boundary cells.
    pub fn region_changes(&self, i_kappa: usize) -> usize {
        let regions: Vec<Region> = self
            .column(i_kappa)
            .iter()
            .map(|p| p.region)
            .filter(|r| *r != Region::Boundary)
            .collect();
        regions.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// First `g/g_c` at which the column is no longer normal.
    pub fn onset(&self, i_kappa: usize) -> Option<f64> {
        self.column(i_kappa)
            .iter()
            .find(|p| p.region != Region::Normal)
            .map(|p| p.g_over_gc)
    }

    /// Connected components (4-neighbour) of superradiant cells.
    pub fn superradiant_components(&self) -> usize {
        let (rows, cols) = (self.kappa.points, self.g_over_gc.points);
        let mut seen = vec![false; rows * cols];
        let mut components = 0;
        for start in 0..rows * cols {
            if seen[start] || self.points[start].region != Region::Superradiant {
                continue;
            }
            components += 1;
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(cell) = queue.pop_front() {
                let (i, j) = (cell / cols, cell % cols);
                let mut neighbours = Vec::with_capacity(4);
                if i > 0 {
                    neighbours.push(cell - cols);
                }
                if i + 1 < rows {
                    neighbours.push(cell + cols);
                }
                if j > 0 {
                    neighbours.push(cell - 1);
                }
                if j + 1 < cols {
                    neighbours.push(cell + 1);
                }
                for next in neighbours {
                    if !seen[next] && self.points[next].region == Region::Superradiant {
                        seen[next] = true;
                        queue.push_back(next);
                    }
                }
            }
        }
        components
    }
}

pub fn grid_scan(kappa: Axis, g_over_gc: Axis) -> Result<PhaseGrid> {
    let mut points = Vec::with_capacity(kappa.points * g_over_gc.points);
    for i in 0..kappa.points {
        let k = kappa.value(i);
        for j in 0..g_over_gc.points {
            points.push(classify_reduced(k, g_over_gc.value(j))?);
        }
    }
    Ok(PhaseGrid {
        kappa,
        g_over_gc,
        points,
    })
}
