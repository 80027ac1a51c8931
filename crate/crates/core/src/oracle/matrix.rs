use std::ops::{Index, IndexMut};

use crate::error::{domain, Result};

/// Dense real square matrix on a truncated Fock space `|0⟩..|N⟩`, optionally
/// tensored with a two-level system. With a spin factor the spin index is
/// outermost: rows `0..=N` are the excited state, rows `N+1..` the ground state.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    truncation: usize,
    with_spin: bool,
    entries: Vec<f64>,
}

impl OperatorMatrix {
    pub fn zeros(truncation: usize, with_spin: bool) -> Self {
        let boson = truncation + 1;
        let dim = if with_spin { 2 * boson } else { boson };
        Self {
            dim,
            truncation,
            with_spin,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(truncation: usize, with_spin: bool) -> Self {
        let mut m = Self::zeros(truncation, with_spin);
        for i in 0..m.dim {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Builds a matrix from row-major entries without any physical layout.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(domain("matrix must be square and non-empty"));
        }
        Ok(Self {
            dim,
            truncation: dim - 1,
            with_spin: false,
            entries: rows.concat(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Highest Fock occupation kept.
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn has_spin(&self) -> bool {
        self.with_spin
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn transpose(&self) -> Self {
        let mut t = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn frobenius(&self) -> f64 {
        self.entries.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// `max |M[i][j] − M[j][i]|`.
    pub fn asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    pub fn is_symmetric(&self, rel_tol: f64) -> bool {
        self.asymmetry() <= rel_tol * self.max_abs()
    }

    fn check_same_shape(&self, other: &Self) {
        assert_eq!(self.dim, other.dim, "operator dimensions differ");
    }

    /// `self += factor * other`.
    pub fn add_scaled(&mut self, factor: f64, other: &Self) {
        self.check_same_shape(other);
        for (x, y) in self.entries.iter_mut().zip(&other.entries) {
            *x += factor * y;
        }
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = self.clone();
        out.entries.iter_mut().for_each(|x| *x *= factor);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(-1.0, other);
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        self.check_same_shape(other);
        let n = self.dim;
        let mut out = Self {
            entries: vec![0.0; n * n],
            ..self.clone()
        };
        for i in 0..n {
            for k in 0..n {
                let lhs = self[(i, k)];
                if lhs == 0.0 {
                    continue;
                }
                let rhs = other.row(k);
                let dst = &mut out.entries[i * n..(i + 1) * n];
                for (d, r) in dst.iter_mut().zip(rhs) {
                    *d += lhs * r;
                }
            }
        }
        out
    }

    /// `[self, other]`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.matmul(other).sub(&other.matmul(self))
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `spin ⊗ boson` with the spin index outermost.
    pub fn spin_boson(spin: [[f64; 2]; 2], boson: &Self) -> Self {
        assert!(!boson.with_spin, "boson factor already carries a spin index");
        let b = boson.dim;
        let mut out = Self::zeros(boson.truncation, true);
        for (s, spin_row) in spin.iter().enumerate() {
            for (t, &weight) in spin_row.iter().enumerate() {
                if weight == 0.0 {
                    continue;
                }
                for i in 0..b {
                    for j in 0..b {
                        out[(s * b + i, t * b + j)] = weight * boson[(i, j)];
                    }
                }
            }
        }
        out
    }
}

impl Index<(usize, usize)> for OperatorMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.entries[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for OperatorMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.entries[i * self.dim + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spin_boson_layout() {
        let boson = OperatorMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let m = OperatorMatrix::spin_boson([[0.0, 1.0], [0.0, 0.0]], &boson);
        assert_eq!(m.dim(), 4);
        assert!(m.has_spin());
        assert_eq!(m.row(0), &[0.0, 0.0, 1.0, 2.0]);
        assert_eq!(m.row(1), &[0.0, 0.0, 3.0, 4.0]);
        assert_eq!(m.row(2), &[0.0; 4]);
    }

    #[test]
    fn matmul_and_commutator() {
        let x = OperatorMatrix::from_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let z = OperatorMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let xz = x.matmul(&z);
        assert_eq!(xz.entries(), &[0.0, -1.0, 1.0, 0.0]);
        assert_eq!(x.commutator(&z).entries(), &[0.0, -2.0, 2.0, 0.0]);
        assert_eq!(xz.asymmetry(), 2.0);
        assert!(!xz.is_symmetric(1e-12));
    }

    #[test]
    fn rejects_ragged_rows() {
        assert!(OperatorMatrix::from_rows(&[vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(OperatorMatrix::from_rows(&[]).is_err());
    }
}
