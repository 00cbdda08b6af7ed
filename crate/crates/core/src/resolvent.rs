//! Exact resolvent of the discrete Laplacian and of interval
//! multiplication operators.
//!
//! For z off [−2, 2] the resolvent of Δ is the Toeplitz matrix with
//! entries b_k(z) = w^{|k|+1}/(1−w²), where w is the root of
//! w² − zw + 1 = 0 inside the unit disc. The branch of √(z²−4) is never
//! taken from a principal square root of z²−4; it is always 1/w − w,
//! which keeps the |z ± √(z²−4)| < 2 convention globally.

use num_complex::Complex64;

use crate::conformal::{small_joukowski_root, BAND_TOL};
use crate::error::{Error, Result};
use crate::operator::{BandSpec, MultiplicationModel};

/// A spectral parameter together with its small Joukowski root and the
/// branch value of √(z²−4).
#[derive(Debug, Clone, Copy)]
pub struct ResolventPoint {
    pub z: Complex64,
    pub w: Complex64,
    pub sqrt_branch: Complex64,
}

/// Root of w² − zw + 1 = 0 with |w| < 1, for z off the band [−2, 2].
pub fn small_root(z: Complex64) -> Result<ResolventPoint> {
    let band = BandSpec::laplacian();
    let dist = band.distance(z);
    if dist < BAND_TOL {
        return Err(Error::BandProximity { z, dist });
    }
    let w = small_joukowski_root(z);
    Ok(ResolventPoint { z, w, sqrt_branch: 1.0 / w - w })
}

impl ResolventPoint {
    /// Toeplitz entry b_k(z) = w^{|k|+1}/(1−w²).
    pub fn entry(&self, k: i64) -> Complex64 {
        self.w.powu(k.unsigned_abs() as u32 + 1) / (1.0 - self.w * self.w)
    }

    /// Certified bound for ‖R_Δ(z)‖ on every l^p:
    /// (1/|z²−4|^{1/2}) · (2+2|w|)/(2−2|w|).
    pub fn norm_bound(&self) -> f64 {
        let aw = self.w.norm();
        aw / (self.w * self.w - 1.0).norm() * (1.0 + aw) / (1.0 - aw)
    }
}

/// b_k(z) for z off the band.
pub fn resolvent_entry(z: Complex64, k: i64) -> Result<Complex64> {
    Ok(small_root(z)?.entry(k))
}

/// ‖R_Δ(z)‖ bound for z off the band.
pub fn resolvent_norm_bound(z: Complex64) -> Result<f64> {
    Ok(small_root(z)?.norm_bound())
}

/// Exact resolvent norm of a multiplication operator: 1/dist(λ, [a, b]).
pub fn multiplication_resolvent_norm(lambda: Complex64, model: &MultiplicationModel) -> Result<f64> {
    let band = model.band();
    let dist = band.distance(lambda);
    if dist < BAND_TOL {
        return Err(Error::BandProximity { z: lambda, dist });
    }
    Ok(1.0 / dist)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use ndarray::Array1;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_root_real_examples() {
        let p = small_root(c(3.0, 0.0)).unwrap();
        assert_abs_diff_eq!(p.w.re, (3.0 - 5.0_f64.sqrt()) / 2.0, epsilon = 1e-15);
        // φ(w) = z
        assert_abs_diff_eq!((p.w + 1.0 / p.w).re, 3.0, epsilon = 1e-12);

        let p = small_root(c(2.5, 0.0)).unwrap();
        assert_abs_diff_eq!(p.w.re, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn small_root_imaginary_axis() {
        let p = small_root(c(0.0, 2.5)).unwrap();
        assert_abs_diff_eq!(p.w.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.w.im, -0.3507810593582121, epsilon = 1e-12);
        let back = p.w + 1.0 / p.w;
        assert_abs_diff_eq!(back.im, 2.5, epsilon = 1e-12);
    }

    #[test]
    fn small_root_rejects_band() {
        assert!(small_root(c(0.5, 0.0)).is_err());
        assert!(small_root(c(-2.0, 0.0)).is_err());
        assert!(small_root(c(1.0, 1e-13)).is_err());
    }

    #[test]
    fn entry_at_three() {
        let b0 = resolvent_entry(c(3.0, 0.0), 0).unwrap();
        assert_abs_diff_eq!(b0.re, 1.0 / 5.0_f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(b0.im, 0.0, epsilon = 1e-14);
    }

    #[test]
    fn entry_decays_like_inverse_z_at_infinity() {
        let b0 = resolvent_entry(c(1e6, 0.0), 0).unwrap();
        assert!((b0.re - 1e-6).abs() / 1e-6 < 1e-5);
    }

    #[test]
    fn column_solves_truncated_system() {
        // (zI − Δ)·col ≈ e_0 away from the window edge
        let n: i64 = 50;
        let z = c(3.0, 0.0);
        let p = small_root(z).unwrap();
        let col: Array1<Complex64> = Array1::from_iter((-n..=n).map(|j| p.entry(j)));
        for j in -(n - 2)..=(n - 2) {
            let idx = (j + n) as usize;
            let lap = col[idx - 1] + col[idx + 1];
            let lhs = z * col[idx] - lap;
            let rhs = if j == 0 { 1.0 } else { 0.0 };
            assert!((lhs - rhs).norm() < 1e-8, "residual at j = {j}: {}", (lhs - rhs).norm());
        }
    }

    #[test]
    fn norm_bound_examples() {
        assert_abs_diff_eq!(resolvent_norm_bound(c(3.0, 0.0)).unwrap(), 1.0, epsilon = 1e-13);
        assert_abs_diff_eq!(resolvent_norm_bound(c(2.5, 0.0)).unwrap(), 2.0, epsilon = 1e-13);
    }

    #[test]
    fn multiplication_norm_examples() {
        let m = MultiplicationModel::from_fn(0.0, 1.0, 64, |t| t).unwrap();
        assert_abs_diff_eq!(
            multiplication_resolvent_norm(c(2.0, 0.0), &m).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            multiplication_resolvent_norm(c(-0.5, 0.0), &m).unwrap(),
            2.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            multiplication_resolvent_norm(c(1.0, 1.0), &m).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert!(multiplication_resolvent_norm(c(0.5, 0.0), &m).is_err());
    }

    proptest! {
        #[test]
        fn branch_coherence(re in -8.0f64..8.0, im in -6.0f64..6.0) {
            let z = c(re, im);
            prop_assume!(BandSpec::laplacian().distance(z) > 1e-3);
            let p = small_root(z).unwrap();
            prop_assert!(p.w.norm() < 1.0);
            prop_assert!((z - p.sqrt_branch).norm() < 2.0);
            prop_assert!((p.sqrt_branch * p.sqrt_branch - (z * z - 4.0)).norm()
                < 1e-10 * (z * z - 4.0).norm().max(1.0));
            // defining relations of the point
            prop_assert!((p.w * p.w - z * p.w + 1.0).norm() < 1e-12 * z.norm().max(1.0));
            prop_assert!((p.sqrt_branch - (1.0 / p.w - p.w)).norm() < 1e-12);
        }

        #[test]
        fn real_axis_tightness(z in 2.01f64..10.0) {
            let bound = resolvent_norm_bound(c(z, 0.0)).unwrap();
            let exact = 1.0 / (z - 2.0);
            prop_assert!((bound - exact).abs() <= 1e-12 * exact);
        }

        #[test]
        fn entry_symmetry_and_decay(re in -8.0f64..8.0, im in -6.0f64..6.0, k in 1i64..40) {
            let z = c(re, im);
            prop_assume!(BandSpec::laplacian().distance(z) > 1e-2);
            let p = small_root(z).unwrap();
            prop_assert!((p.entry(k) - p.entry(-k)).norm() < 1e-14);
            let pc = small_root(z.conj()).unwrap();
            prop_assert!((pc.entry(k) - p.entry(k).conj()).norm() < 1e-13);
            // |b_k| = |b_0| |w|^{|k|}, strictly decreasing in |k|
            let expect = p.entry(0).norm() * p.w.norm().powi(k as i32);
            prop_assert!((p.entry(k).norm() - expect).abs() <= 1e-12 * expect.max(1e-300));
            prop_assert!(p.entry(k).norm() < p.entry(k - 1).norm());
        }

        #[test]
        fn absolute_entry_sum_matches_closed_form(re in -8.0f64..8.0, im in -6.0f64..6.0) {
            let z = c(re, im);
            prop_assume!(BandSpec::laplacian().distance(z) > 0.05);
            let p = small_root(z).unwrap();
            let mut sum = p.entry(0).norm();
            let mut k = 1;
            loop {
                let t = p.entry(k).norm();
                sum += 2.0 * t;
                if t < 1e-18 || k > 100_000 { break; }
                k += 1;
            }
            let aw = p.w.norm();
            let closed = p.w.norm() / (p.w * p.w - 1.0).norm() * (1.0 + aw) / (1.0 - aw);
            prop_assert!((sum - closed).abs() <= 1e-10 * closed);
        }
    }
}
