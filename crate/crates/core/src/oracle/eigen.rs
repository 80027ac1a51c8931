//! Dense real-symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by implicit QL iterations with Wilkinson-style shifts.
//!
//! Follows the classic EISPACK `tred2`/`tql2` pair. The working matrix is
//! stored column-major so that the inner loops of both stages run over
//! contiguous memory.

use serde::Serialize;

use super::matrix::OperatorMatrix;
use crate::error::{Error, Result};

/// Relative asymmetry accepted on input.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenDecomposition {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column-major: eigenvector `j` occupies `eigenvectors[j*dim..(j+1)*dim]`.
    pub eigenvectors: Vec<f64>,
    /// `max_j ‖M x_j − λ_j x_j‖₂ / ‖M‖_F`.
    pub residual_norm: f64,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvector(&self, j: usize) -> &[f64] {
        let n = self.dim();
        &self.eigenvectors[j * n..(j + 1) * n]
    }

    /// `max |⟨x_i, x_j⟩ − δ_ij|`.
    pub fn orthonormality_error(&self) -> f64 {
        let n = self.dim();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let dot: f64 = self
                    .eigenvector(i)
                    .iter()
                    .zip(self.eigenvector(j))
                    .map(|(a, b)| a * b)
                    .sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((dot - target).abs());
            }
        }
        worst
    }

    /// `Q Λ Qᵀ` as a row-major matrix.
    pub fn reconstruct(&self) -> Vec<f64> {
        let n = self.dim();
        let mut out = vec![0.0; n * n];
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let q = self.eigenvector(j);
            for r in 0..n {
                let scale = lambda * q[r];
                for (c, qc) in q.iter().enumerate() {
                    out[r * n + c] += scale * qc;
                }
            }
        }
        out
    }
}

/// Full eigendecomposition. `tol` is the relative off-diagonal size at which a
/// tridiagonal element is deflated (clamped below at machine epsilon).
pub fn eigen_sym(m: &OperatorMatrix, tol: f64) -> Result<EigenDecomposition> {
    check_input(m, tol)?;
    let n = m.dim();
    let mut work = Tridiagonal::reduce(m, true);
    work.ql_implicit(tol, true)?;
    let (eigenvalues, eigenvectors) = work.sorted();

    let norm = m.frobenius();
    let mut residual = 0.0f64;
    for (j, &lambda) in eigenvalues.iter().enumerate() {
        let x = &eigenvectors[j * n..(j + 1) * n];
        let hx = m.mul_vec(x);
        let r: f64 = hx
            .iter()
            .zip(x)
            .map(|(h, xi)| (h - lambda * xi).powi(2))
            .sum::<f64>()
            .sqrt();
        residual = residual.max(r);
    }
    let residual_norm = if norm > 0.0 { residual / norm } else { residual };
    let accepted = tol.max(64.0 * n as f64 * f64::EPSILON);
    if residual_norm > accepted {
        return Err(Error::ConvergenceFailure {
            iterations: 0,
            off_diagonal: residual_norm,
        });
    }
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
        residual_norm,
    })
}

/// Eigenvalues only, ascending. Skips eigenvector accumulation.
pub fn eigenvalues_sym(m: &OperatorMatrix, tol: f64) -> Result<Vec<f64>> {
    check_input(m, tol)?;
    let mut work = Tridiagonal::reduce(m, false);
    work.ql_implicit(tol, false)?;
    let mut values = work.diag;
    values.sort_by(f64::total_cmp);
    Ok(values)
}

fn check_input(m: &OperatorMatrix, tol: f64) -> Result<()> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(crate::error::domain(format!(
            "eigensolver tolerance must be > 0, got {tol}"
        )));
    }
    if m.entries().iter().any(|x| !x.is_finite()) {
        return Err(crate::error::domain("matrix has non-finite entries"));
    }
    if !m.is_symmetric(SYMMETRY_TOLERANCE) {
        return Err(Error::NotSymmetric {
            asymmetry: m.asymmetry(),
        });
    }
    Ok(())
}

struct Tridiagonal {
    n: usize,
    diag: Vec<f64>,
    off: Vec<f64>,
    /// Column-major `n × n`; the accumulated transformation once reduced.
    v: Vec<f64>,
}

impl Tridiagonal {
    /// Householder reduction. Reads the lower triangle of `m`.
    fn reduce(m: &OperatorMatrix, accumulate: bool) -> Self {
        let n = m.dim();
        // column-major copy; m is symmetric so this is just the entries.
        let mut v = m.transpose().entries().to_vec();
        let mut d = vec![0.0; n];
        let mut e = vec![0.0; n];
        let at = |row: usize, col: usize| col * n + row;

        for j in 0..n {
            d[j] = v[at(n - 1, j)];
        }

        for i in (1..n).rev() {
            let scale: f64 = d[..i].iter().map(|x| x.abs()).sum();
            let mut h = 0.0;
            if scale == 0.0 {
                e[i] = d[i - 1];
                for j in 0..i {
                    d[j] = v[at(i - 1, j)];
                    v[at(i, j)] = 0.0;
                    v[at(j, i)] = 0.0;
                }
            } else {
                for x in d[..i].iter_mut() {
                    *x /= scale;
                    h += *x * *x;
                }
                let f = d[i - 1];
                let mut g = h.sqrt();
                if f > 0.0 {
                    g = -g;
                }
                e[i] = scale * g;
                h -= f * g;
                d[i - 1] = f - g;
                e[..i].iter_mut().for_each(|x| *x = 0.0);

                for j in 0..i {
                    let f = d[j];
                    v[at(j, i)] = f;
                    let mut g = e[j] + v[at(j, j)] * f;
                    let col = &v[j * n..j * n + i];
                    for k in (j + 1)..i {
                        g += col[k] * d[k];
                        e[k] += col[k] * f;
                    }
                    e[j] = g;
                }
                let mut f = 0.0;
                for j in 0..i {
                    e[j] /= h;
                    f += e[j] * d[j];
                }
                let hh = f / (h + h);
                for j in 0..i {
                    e[j] -= hh * d[j];
                }
                for j in 0..i {
                    let (f, g) = (d[j], e[j]);
                    let col = &mut v[j * n..j * n + i];
                    for k in j..i {
                        col[k] -= f * e[k] + g * d[k];
                    }
                    d[j] = v[at(i - 1, j)];
                    v[at(i, j)] = 0.0;
                }
            }
            d[i] = h;
        }

        if !accumulate {
            for (j, dj) in d.iter_mut().enumerate() {
                *dj = v[at(j, j)];
            }
            if n > 0 {
                e[0] = 0.0;
            }
            return Self {
                n,
                diag: d,
                off: e,
                v: Vec::new(),
            };
        }

        for i in 0..n.saturating_sub(1) {
            v[at(n - 1, i)] = v[at(i, i)];
            v[at(i, i)] = 1.0;
            let h = d[i + 1];
            if h != 0.0 {
                for k in 0..=i {
                    d[k] = v[at(k, i + 1)] / h;
                }
                for j in 0..=i {
                    let mut g = 0.0;
                    for k in 0..=i {
                        g += v[at(k, i + 1)] * v[at(k, j)];
                    }
                    for k in 0..=i {
                        v[at(k, j)] -= g * d[k];
                    }
                }
            }
            for k in 0..=i {
                v[at(k, i + 1)] = 0.0;
            }
        }
        for j in 0..n {
            d[j] = v[at(n - 1, j)];
            v[at(n - 1, j)] = 0.0;
        }
        if n > 0 {
            v[at(n - 1, n - 1)] = 1.0;
            e[0] = 0.0;
        }
        Self { n, diag: d, off: e, v }
    }

    /// Implicit QL on the tridiagonal form, rotating `v` alongside when
    /// `accumulate` is set.
    fn ql_implicit(&mut self, tol: f64, accumulate: bool) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Ok(());
        }
        let eps = tol.max(f64::EPSILON);
        let (d, e, v) = (&mut self.diag, &mut self.off, &mut self.v);
        for i in 1..n {
            e[i - 1] = e[i];
        }
        e[n - 1] = 0.0;

        let mut shift_total = 0.0;
        let mut tst1 = 0.0f64;
        let mut iterations = 0usize;
        let cap = MAX_SWEEPS_PER_EIGENVALUE * n;
        for l in 0..n {
            tst1 = tst1.max(d[l].abs() + e[l].abs());
            let mut m = l;
            while m < n - 1 && e[m].abs() > eps * tst1 {
                m += 1;
            }
            if m > l {
                loop {
                    iterations += 1;
                    if iterations > cap {
                        let off = e.iter().map(|x| x * x).sum::<f64>().sqrt();
                        return Err(Error::ConvergenceFailure {
                            iterations,
                            off_diagonal: off,
                        });
                    }
                    let g = d[l];
                    let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                    let mut r = p.hypot(1.0);
                    if p < 0.0 {
                        r = -r;
                    }
                    d[l] = e[l] / (p + r);
                    d[l + 1] = e[l] * (p + r);
                    let dl1 = d[l + 1];
                    let h = g - d[l];
                    for x in d[(l + 2)..].iter_mut() {
                        *x -= h;
                    }
                    shift_total += h;

                    p = d[m];
                    let (mut c, mut c2, mut c3) = (1.0, 1.0, 1.0);
                    let el1 = e[l + 1];
                    let (mut s, mut s2) = (0.0, 0.0);
                    for i in (l..m).rev() {
                        c3 = c2;
                        c2 = c;
                        s2 = s;
                        let g = c * e[i];
                        let h = c * p;
                        r = p.hypot(e[i]);
                        e[i + 1] = s * r;
                        s = e[i] / r;
                        c = p / r;
                        p = c * d[i] - s * g;
                        d[i + 1] = h + s * (c * g + s * d[i]);
                        if accumulate {
                            let (left, right) = v.split_at_mut((i + 1) * n);
                            let col_i = &mut left[i * n..];
                            let col_next = &mut right[..n];
                            for (vi, vn) in col_i.iter_mut().zip(col_next.iter_mut()) {
                                let h = *vn;
                                *vn = s * *vi + c * h;
                                *vi = c * *vi - s * h;
                            }
                        }
                    }
                    p = -s * s2 * c3 * el1 * e[l] / dl1;
                    e[l] = s * p;
                    d[l] = c * p;
                    if e[l].abs() <= eps * tst1 {
                        break;
                    }
                }
            }
            d[l] += shift_total;
            e[l] = 0.0;
        }
        Ok(())
    }

    fn sorted(self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| self.diag[a].total_cmp(&self.diag[b]));
        let values = order.iter().map(|&j| self.diag[j]).collect();
        let mut vectors = Vec::with_capacity(n * n);
        for &j in &order {
            vectors.extend_from_slice(&self.v[j * n..(j + 1) * n]);
        }
        (values, vectors)
    }
}
