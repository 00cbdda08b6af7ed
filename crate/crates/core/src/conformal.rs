//! The band-to-disc conformal map and the distance comparison bounds.
//!
//! φ(w) = (b−a)/4 · (w + w⁻¹ + 2) + a maps the punctured open unit disc
//! onto the complement of the band [a, b]. General bands are handled by
//! affine conjugation to [−2, 2].

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::operator::BandSpec;

/// Points closer to the band than this are rejected: 1/(1−|w|) amplifies
/// roundoff without bound there.
pub const BAND_TOL: f64 = 1e-9;

fn check_disc(w: Complex64) -> Result<()> {
    if w.norm() == 0.0 || w.norm() >= 1.0 {
        return Err(Error::OutsideDisc { w });
    }
    Ok(())
}

/// φ(w) for 0 < |w| < 1.
pub fn phi(w: Complex64, band: BandSpec) -> Result<Complex64> {
    check_disc(w)?;
    let quarter = 0.25 * band.width();
    Ok(quarter * (w + 1.0 / w + 2.0) + band.a)
}

/// The unique w with 0 < |w| < 1 and φ(w) = z.
///
/// Computed via the affine reduction ζ = (2z − (a+b)) · 2/(b−a) to the
/// [−2, 2] case and the quadratic w² − ζw + 1 = 0; the small root is taken
/// through the numerically stable large root to avoid cancellation.
pub fn phi_inverse(z: Complex64, band: BandSpec) -> Result<Complex64> {
    let dist = band.distance(z);
    if dist < BAND_TOL {
        return Err(Error::BandProximity { z, dist });
    }
    let zeta = (2.0 * z - (band.a + band.b)) * (2.0 / band.width());
    Ok(small_joukowski_root(zeta))
}

/// Small root of w² − ζw + 1 = 0 for ζ off [−2, 2]; |w| < 1 there.
pub(crate) fn small_joukowski_root(zeta: Complex64) -> Complex64 {
    let s = (zeta * zeta - 4.0).sqrt();
    let r1 = 0.5 * (zeta + s);
    let r2 = 0.5 * (zeta - s);
    // roots multiply to 1; invert the large one
    if r1.norm() >= r2.norm() {
        1.0 / r1
    } else {
        1.0 / r2
    }
}

/// The Lemma 4.2 sandwich: lower ≤ dist(φ(w), [a, b]) ≤ upper with the
/// core quantity |w²−1|(1−|w|)/|w| scaled by (b−a)/8 and (b−a)(1+√2)/8.
pub fn band_distance_bounds(w: Complex64, band: BandSpec) -> Result<(f64, f64, f64)> {
    check_disc(w)?;
    let core = (w * w - 1.0).norm() * (1.0 - w.norm()) / w.norm();
    let lower = band.width() / 8.0 * core;
    let upper = band.width() * (1.0 + 2.0_f64.sqrt()) / 8.0 * core;
    let dist = band.distance(phi(w, band)?);
    Ok((lower, dist, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn phi_is_joukowski_on_standard_band() {
        let band = BandSpec::laplacian();
        let w = c(0.5, 0.0);
        assert_abs_diff_eq!(phi(w, band).unwrap().re, 2.5, epsilon = 1e-15);
        assert_abs_diff_eq!(phi(w, band).unwrap().im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn phi_boundary_limits() {
        let band = BandSpec::laplacian();
        let z = phi(c(-1.0 + 1e-8, 0.0), band).unwrap();
        assert_abs_diff_eq!(z.re, -2.0, epsilon = 1e-15);

        let shifted = BandSpec::new(0.0, 4.0).unwrap();
        assert_abs_diff_eq!(phi(c(-1.0 + 1e-8, 0.0), shifted).unwrap().re, 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(phi(c(1.0 - 1e-8, 0.0), shifted).unwrap().re, 4.0, epsilon = 1e-14);
    }

    #[test]
    fn phi_rejects_outside_disc() {
        let band = BandSpec::laplacian();
        assert!(phi(c(0.0, 0.0), band).is_err());
        assert!(phi(c(1.0, 0.5), band).is_err());
    }

    #[test]
    fn inverse_at_three() {
        let w = phi_inverse(c(3.0, 0.0), BandSpec::laplacian()).unwrap();
        assert_abs_diff_eq!(w.re, (3.0 - 5.0_f64.sqrt()) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn inverse_on_shifted_band_via_affine_reduction() {
        let band = BandSpec::new(0.0, 4.0).unwrap();
        let w = phi_inverse(c(-1.0, 0.0), band).unwrap();
        // reduces to ζ = −3 on [−2, 2]
        assert_abs_diff_eq!(w.re, -(3.0 - 5.0_f64.sqrt()) / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn inverse_rejects_band_points() {
        let band = BandSpec::laplacian();
        assert!(phi_inverse(c(0.3, 0.0), band).is_err());
        assert!(phi_inverse(c(2.0, 1e-12), band).is_err());
    }

    #[test]
    fn inverse_vanishes_at_infinity() {
        let w = phi_inverse(c(1e6, 0.0), BandSpec::laplacian()).unwrap();
        assert!(w.norm() < 2e-6);
    }

    #[test]
    fn sandwich_example_at_half() {
        let (lo, dist, hi) = band_distance_bounds(c(0.5, 0.0), BandSpec::laplacian()).unwrap();
        assert_abs_diff_eq!(lo, 0.375, epsilon = 1e-15);
        assert_abs_diff_eq!(dist, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(hi, 0.75 * (1.0 + 2.0_f64.sqrt()) / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn modulus_identity_at_half() {
        // |(w²−1)/w|² = |z²−4|
        let w = c(0.5, 0.0);
        let z = phi(w, BandSpec::laplacian()).unwrap();
        let lhs = ((w * w - 1.0) / w).norm_sqr();
        let rhs = (z * z - 4.0).norm();
        assert_abs_diff_eq!(lhs, 2.25, epsilon = 1e-15);
        assert_abs_diff_eq!(rhs, 2.25, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn round_trip_off_band(re in -6.0f64..6.0, im in -4.0f64..4.0) {
            let band = BandSpec::laplacian();
            let z = c(re, im);
            prop_assume!(band.distance(z) > 1e-3);
            let w = phi_inverse(z, band).unwrap();
            prop_assert!(w.norm() < 1.0);
            let back = phi(w, band).unwrap();
            prop_assert!((back - z).norm() < 1e-12 * z.norm().max(1.0));
        }

        #[test]
        fn conjugation_symmetry(re in -6.0f64..6.0, im in 1e-2f64..4.0) {
            let band = BandSpec::laplacian();
            let z = c(re, im);
            let w = phi_inverse(z, band).unwrap();
            let wbar = phi_inverse(z.conj(), band).unwrap();
            prop_assert!((wbar - w.conj()).norm() < 1e-13);
        }

        #[test]
        fn sandwich_holds_everywhere(r in 1e-3f64..0.999, theta in 0.0f64..std::f64::consts::TAU) {
            let w = Complex64::from_polar(r, theta);
            let (lo, dist, hi) = band_distance_bounds(w, BandSpec::laplacian()).unwrap();
            prop_assert!(lo <= dist * (1.0 + 1e-12));
            prop_assert!(dist <= hi * (1.0 + 1e-12));
        }

        #[test]
        fn modulus_identity_everywhere(r in 1e-3f64..0.999, theta in 0.0f64..std::f64::consts::TAU) {
            let w = Complex64::from_polar(r, theta);
            let z = phi(w, BandSpec::laplacian()).unwrap();
            let lhs = ((w * w - 1.0) / w).norm_sqr();
            let rhs = (z * z - 4.0).norm();
            prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-30));
        }
    }
}
