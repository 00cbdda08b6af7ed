//! Dense eigensolver oracle and small linear-algebra helpers.

use ndarray::Array2;
use ndarray_linalg::{Eig, Solve};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest matrix dimension the oracle accepts.
pub const EIG_DIM_CAP: usize = 2048;

/// Full eigenvalue multiset of a dense complex matrix in canonical order
/// (descending |λ|, ties by real part, then imaginary part).
///
/// Real-valued inputs are routed through the real LAPACK driver, which is
/// roughly twice as fast on the large Laplacian sections.
pub fn eig(a: &Array2<Complex64>) -> Result<Vec<Complex64>> {
    let (rows, cols) = a.dim();
    if rows != cols {
        return Err(Error::InvalidInput(format!("eig needs a square matrix, got {rows}×{cols}")));
    }
    if rows > EIG_DIM_CAP {
        return Err(Error::InvalidInput(format!(
            "matrix dimension {rows} exceeds the eigensolver cap {EIG_DIM_CAP}"
        )));
    }
    if rows == 0 {
        return Ok(Vec::new());
    }
    let mut values: Vec<Complex64> = if a.iter().all(|c| c.im == 0.0) {
        let real = a.mapv(|c| c.re);
        let (vals, _) = real
            .eig()
            .map_err(|e| Error::EigFailure(e.to_string()))?;
        vals.to_vec()
    } else {
        let (vals, _) = a.eig().map_err(|e| Error::EigFailure(e.to_string()))?;
        vals.to_vec()
    };
    canonical_sort(&mut values);
    Ok(values)
}

/// Descending |λ|, ties broken by real part, then imaginary part.
pub fn canonical_sort(values: &mut [Complex64]) {
    values.sort_by(|x, y| {
        y.norm()
            .partial_cmp(&x.norm())
            .unwrap()
            .then(x.re.partial_cmp(&y.re).unwrap())
            .then(x.im.partial_cmp(&y.im).unwrap())
    });
}

/// Inverse via column-by-column LU solves.
pub fn invert(a: &Array2<Complex64>) -> Result<Array2<Complex64>> {
    let n = a.nrows();
    let mut inv = Array2::zeros((n, n));
    for j in 0..n {
        let mut e = ndarray::Array1::zeros(n);
        e[j] = Complex64::new(1.0, 0.0);
        let col = a
            .solve(&e)
            .map_err(|err| Error::EigFailure(format!("linear solve failed: {err}")))?;
        inv.column_mut(j).assign(&col);
    }
    Ok(inv)
}

/// Induced l¹ operator norm: maximum absolute column sum.
pub fn l1_induced_norm(a: &Array2<Complex64>) -> f64 {
    a.columns()
        .into_iter()
        .map(|col| col.iter().map(|c| c.norm()).sum())
        .fold(0.0, f64::max)
}
