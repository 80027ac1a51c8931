//! Brute-force route to every spectrum in the crate: Hamiltonians written out
//! on a truncated Fock space and diagonalized densely.

pub mod builders;
pub mod convergence;
pub mod eigen;
pub mod matrix;

use std::io::Write;

pub use builders::{
    build_h_ar, build_h_mjc, build_h_msr, build_h_quadratic, build_h_sr, ladder_matrices, parity_operator,
    squeezed_annihilator,
};
pub use convergence::{converged_spectrum, ConvergenceOptions, Hamiltonian, TruncationReport};
pub use eigen::{eigen_sym, eigenvalues_sym, EigenDecomposition};
pub use matrix::OperatorMatrix;

/// Row-major dump, one entry per record: `dim,truncation,row,col,value`.
pub fn write_matrix_csv<W: Write>(m: &OperatorMatrix, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["dim", "truncation", "row", "col", "value"])?;
    for i in 0..m.dim() {
        for (j, value) in m.row(i).iter().enumerate() {
            w.write_record([
                m.dim().to_string(),
                m.truncation().to_string(),
                i.to_string(),
                j.to_string(),
                format!("{value:.16e}"),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

/// `dim,truncation,index,eigenvalue`.
pub fn write_spectrum_csv<W: Write>(eigenvalues: &[f64], dim: usize, truncation: usize, out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["dim", "truncation", "index", "eigenvalue"])?;
    for (i, value) in eigenvalues.iter().enumerate() {
        w.write_record([
            dim.to_string(),
            truncation.to_string(),
            i.to_string(),
            format!("{value:.16e}"),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_csv_layout() {
        let (a, _) = ladder_matrices(1).unwrap();
        let mut buf = Vec::new();
        write_matrix_csv(&a, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "dim,truncation,row,col,value");
        assert_eq!(lines.len(), 5);
        assert_eq!(lines[2], "2,1,0,1,1.0000000000000000e0");
    }

    #[test]
    fn spectrum_csv_parses_back() {
        let values = [-0.5, 0.1 + 0.2, 1.0 / 3.0];
        let mut buf = Vec::new();
        write_spectrum_csv(&values, 3, 2, &mut buf).unwrap();
        let mut rdr = csv::Reader::from_reader(buf.as_slice());
        let parsed: Vec<f64> = rdr.records().map(|r| r.unwrap()[3].parse::<f64>().unwrap()).collect();
        assert_eq!(parsed, values);
    }
}
