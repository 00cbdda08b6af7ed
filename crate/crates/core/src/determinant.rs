//! Regularized nuclear determinants and the perturbation determinant
//! d(z) = det(𝟙 − K R_Δ(z)).
//!
//! d is evaluated through the rank compression ⟨φ_i, R(z) f_j⟩: the
//! operator K R(z) has rank at most r, so its nonzero spectrum is that of
//! an r×r matrix and the value is independent of any truncation width by
//! construction. The dense (2N+1)-dimensional route stays available in
//! the oracle-backed checks, which keeps the two paths independent.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{canonical_sort, eig};
use crate::operator::{pair, NuclearOperatorRep};
use crate::resolvent::small_root;

/// Eigenvalues with repetition, kept in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct EigenvalueList(Vec<Complex64>);

impl EigenvalueList {
    pub fn new(mut values: Vec<Complex64>) -> Self {
        canonical_sort(&mut values);
        Self(values)
    }

    pub fn values(&self) -> &[Complex64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<Complex64>> for EigenvalueList {
    fn from(values: Vec<Complex64>) -> Self {
        Self::new(values)
    }
}

/// Factors with |λ| below this contribute 1 + O(|λ|²) and are dropped.
const EIGENVALUE_DROP_TOL: f64 = 1e-14;

/// ∏ (1−λ_n) exp(λ_n) over the list, multiplied in canonical order.
pub fn regularized_det(eigs: &EigenvalueList) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for &l in eigs.values() {
        if l.norm() < EIGENVALUE_DROP_TOL {
            continue;
        }
        acc *= (1.0 - l) * l.exp();
    }
    acc
}

/// Σ log|1−λ_n| + Re λ_n; overflow-safe form of log|det|.
pub fn log_abs_regularized_det(eigs: &EigenvalueList) -> f64 {
    eigs.values()
        .iter()
        .filter(|l| l.norm() >= EIGENVALUE_DROP_TOL)
        .map(|l| (1.0 - l).norm().ln() + l.re)
        .sum()
}

/// One evaluation of the perturbation determinant.
#[derive(Debug, Clone, Copy)]
pub struct DetSample {
    pub lambda: Complex64,
    pub value: Complex64,
    pub modulus_log: f64,
}

/// Nonzero spectrum of K R_Δ(z) as the spectrum of the r×r compression
/// with entries ⟨φ_i, R(z) f_j⟩ = Σ_{m,n} φ_i[m] b_{m−n}(z) f_j[n].
fn compression_eigs(z: Complex64, k: &NuclearOperatorRep) -> Result<EigenvalueList> {
    let point = small_root(z)?;
    let r = k.terms.len();
    let mut g: Array2<Complex64> = Array2::zeros((r, r));
    for (i, ti) in k.terms.iter().enumerate() {
        for (j, tj) in k.terms.iter().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for &(m, pm) in &ti.functional {
                for &(n, fn_) in &tj.vector {
                    acc += pm * point.entry(m - n) * fn_;
                }
            }
            g[[i, j]] = acc;
        }
    }
    Ok(EigenvalueList::new(eig(&g)?))
}

/// d(z) = det(𝟙 − K R_Δ(z)) with the d(∞) = 1 normalization.
///
/// The truncation width only validates that K fits the window; the value
/// itself does not depend on it.
pub fn perturbation_determinant(
    z: Complex64,
    k: &NuclearOperatorRep,
    half_width: usize,
) -> Result<DetSample> {
    if let Some((lo, hi)) = k.support() {
        let n = half_width as i64;
        if lo < -n || hi > n {
            return Err(Error::WindowOverflow { lo, hi, n: half_width });
        }
    }
    let eigs = compression_eigs(z, k)?;
    let value = regularized_det(&eigs);
    let modulus_log = log_abs_regularized_det(&eigs);
    Ok(DetSample { lambda: z, value, modulus_log })
}

/// Spectrum of K itself via the dense oracle on its support window.
pub fn operator_eigs(k: &NuclearOperatorRep) -> Result<EigenvalueList> {
    let half_width = match k.support() {
        None => return Ok(EigenvalueList::new(Vec::new())),
        Some((lo, hi)) => lo.unsigned_abs().max(hi.unsigned_abs()) as usize,
    };
    let dense = k.dense(half_width)?;
    Ok(EigenvalueList::new(eig(&dense)?))
}

/// Lemma 2.5(i): returns (|det(𝟙−K)|, exp(½ ‖K‖_N²)); the first never
/// exceeds the second.
pub fn det_upper_bound_check(k: &NuclearOperatorRep) -> Result<(f64, f64)> {
    let det = regularized_det(&operator_eigs(k)?).norm();
    let bound = (0.5 * k.nuclear_norm_bound().powi(2)).exp();
    Ok((det, bound))
}

/// Eq. (absch.nukl): returns (Σ |λ_n(K)|², ‖K‖_N²); sum ≤ bound.
pub fn eigenvalue_sq_sum_check(k: &NuclearOperatorRep) -> Result<(f64, f64)> {
    let sum_sq = operator_eigs(k)?
        .values()
        .iter()
        .map(|l| l.norm_sqr())
        .sum();
    Ok((sum_sq, k.nuclear_norm_bound().powi(2)))
}

/// A − B as a rank-one sum. Terms of B sharing a functional with an
/// existing term fold into its vector, so e.g. diag reps subtract
/// entrywise instead of doubling the rank (and the norm bound).
fn difference_rep(a: &NuclearOperatorRep, b: &NuclearOperatorRep) -> NuclearOperatorRep {
    let mut terms = a.terms.clone();
    for t in &b.terms {
        match terms.iter_mut().find(|u| u.functional == t.functional) {
            Some(u) => {
                for &(i, c) in &t.vector {
                    match u.vector.iter_mut().find(|(j, _)| *j == i) {
                        Some(entry) => entry.1 -= c,
                        None => u.vector.push((i, -c)),
                    }
                }
                u.vector.retain(|(_, c)| c.norm() != 0.0);
            }
            None => terms.push(crate::operator::RankOneTerm {
                functional: t.functional.clone(),
                vector: t.vector.iter().map(|&(i, c)| (i, -c)).collect(),
            }),
        }
    }
    terms.retain(|t| !t.vector.is_empty() && !t.functional.is_empty());
    NuclearOperatorRep::new(terms, a.space)
}

/// Lemma 3.4: returns (|det(𝟙−A) − det(𝟙−B)|, ‖A−B‖_N exp(½(‖A‖_N+‖B‖_N+1)²)).
pub fn det_lipschitz_gap(a: &NuclearOperatorRep, b: &NuclearOperatorRep) -> Result<(f64, f64)> {
    let da = regularized_det(&operator_eigs(a)?);
    let db = regularized_det(&operator_eigs(b)?);
    let gap = (da - db).norm();
    let diff = difference_rep(a, b);
    let na = a.nuclear_norm_bound();
    let nb = b.nuclear_norm_bound();
    let bound = diff.nuclear_norm_bound() * (0.5 * (na + nb + 1.0).powi(2)).exp();
    Ok((gap, bound))
}

/// Hilbert–Schmidt embedding matrix ã with ã_ij =
/// (‖f_i‖^½/‖φ_i‖^½) ⟨φ_i, f_j⟩ (‖φ_j‖^½/‖f_j‖^½); its nonzero spectrum
/// equals that of K. Terms that are the zero operator are dropped first.
pub fn hs_embedding(k: &NuclearOperatorRep) -> Result<Array2<Complex64>> {
    let terms = k.nonzero_terms();
    let r = terms.len();
    let fnorm: Vec<f64> = terms.iter().map(|t| k.space.vector_norm(&t.vector)).collect();
    let pnorm: Vec<f64> = terms
        .iter()
        .map(|t| k.space.functional_norm(&t.functional))
        .collect();
    for (index, (&f, &p)) in fnorm.iter().zip(&pnorm).enumerate() {
        if f == 0.0 || p == 0.0 {
            return Err(Error::ZeroNormTerm { index });
        }
    }
    let mut m = Array2::zeros((r, r));
    for i in 0..r {
        for j in 0..r {
            let left = (fnorm[i] / pnorm[i]).sqrt();
            let right = (pnorm[j] / fnorm[j]).sqrt();
            m[[i, j]] = left * pair(&terms[i].functional, &terms[j].vector) * right;
        }
    }
    Ok(m)
}
