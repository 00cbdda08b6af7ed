//! Randomized inequality suites.
//!
//! Every suite checks a proved inequality on random inputs; any violation
//! is an implementation bug, so the pass criterion is always zero
//! violations. Constants the theory leaves nonconstructive are replaced
//! by fitted empirical ratios in the reports.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conformal::band_distance_bounds;
use crate::determinant::{det_lipschitz_gap, det_upper_bound_check, eigenvalue_sq_sum_check};
use crate::error::Result;
use crate::exec;
use crate::linalg::{invert, l1_induced_norm};
use crate::operator::{BandSpec, NuclearOperatorRep, RankOneTerm, SpaceTag};
use crate::resolvent::small_root;
use crate::spectral::{discrete_spectrum, h_value, jensen_residual, lieb_thirring_sum};

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: usize,
    pub violations: usize,
    /// Largest observed ratio of the bounded quantity to its bound.
    pub worst_ratio: f64,
    /// First violating sample, serialized for replay.
    pub first_violation: Option<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Debug, Clone)]
pub struct ScalingReport {
    /// Per-operator fitted constants for Σ dist^{3+τ}/|z²−4| ≤ C·‖sK‖²_N.
    pub fitted_sq: Vec<f64>,
    /// Same sums normalized by ‖sK‖_N instead (both normalizations are
    /// reported; the bound direction, not the constant, is the claim).
    pub fitted_lin: Vec<f64>,
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub scaling: ScalingReport,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

fn unit_disc_sample(rng: &mut ChaCha8Rng) -> Complex64 {
    loop {
        let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        if c.norm() <= 1.0 {
            return c;
        }
    }
}

/// Random finite-rank operator with coefficient entries in the unit disc.
pub fn random_operator(rng: &mut ChaCha8Rng, max_rank: usize, width: i64) -> NuclearOperatorRep {
    let rank = rng.gen_range(1..=max_rank);
    fn sparse(rng: &mut ChaCha8Rng, width: i64) -> Vec<(i64, Complex64)> {
        let mut v = Vec::new();
        for i in -width..=width {
            if rng.gen_bool(0.5) {
                v.push((i, unit_disc_sample(rng)));
            }
        }
        if v.is_empty() {
            v.push((0, unit_disc_sample(rng)));
        }
        v
    }
    let mut terms = Vec::with_capacity(rank);
    for _ in 0..rank {
        let functional = sparse(rng, width);
        let vector = sparse(rng, width);
        terms.push(RankOneTerm::new(functional, vector));
    }
    NuclearOperatorRep::new(terms, SpaceTag::LatticeL1)
}

fn ratio_suite(
    name: &'static str,
    outcomes: Vec<(f64, f64, String)>,
) -> SuiteReport {
    let mut violations = 0;
    let mut worst: f64 = 0.0;
    let mut first = None;
    let trials = outcomes.len();
    for (value, bound, sample) in outcomes {
        let ratio = if bound > 0.0 { value / bound } else if value > 0.0 { f64::INFINITY } else { 0.0 };
        worst = worst.max(ratio);
        if value > bound * (1.0 + 1e-12) {
            violations += 1;
            if first.is_none() {
                first = Some(sample);
            }
        }
    }
    SuiteReport { name, trials, violations, worst_ratio: worst, first_violation: first }
}

/// Lemma 2.5(i): |det(𝟙−K)| ≤ exp(½‖K‖²_N) on random rank ≤ 5 operators.
pub fn suite_det_upper_bound(seed: u64, trials: usize) -> Result<SuiteReport> {
    let outcomes = exec::map((0..trials as u64).collect::<Vec<_>>(), |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x9e3779b97f4a7c15));
        let k = random_operator(&mut rng, 5, 4);
        let (det, bound) = det_upper_bound_check(&k)?;
        Ok((det, bound, format!("seed {seed}, trial {i}: {k:?}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ratio_suite("lemma-2.5i-det-upper-bound", outcomes))
}

/// Lemma 3.4: |det(𝟙−A) − det(𝟙−B)| ≤ ‖A−B‖_N exp(½(‖A‖_N+‖B‖_N+1)²).
pub fn suite_det_lipschitz(seed: u64, trials: usize) -> Result<SuiteReport> {
    let outcomes = exec::map((0..trials as u64).collect::<Vec<_>>(), |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0xd1b54a32d192ed03));
        let a = random_operator(&mut rng, 5, 4);
        // every third trial checks the B = 0 specialization
        let b = if i % 3 == 0 {
            NuclearOperatorRep::empty(SpaceTag::LatticeL1)
        } else {
            random_operator(&mut rng, 5, 4)
        };
        let (gap, bound) = det_lipschitz_gap(&a, &b)?;
        Ok((gap, bound, format!("seed {seed}, trial {i}: A={a:?} B={b:?}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ratio_suite("lemma-3.4-det-lipschitz", outcomes))
}

/// Eq. (absch.nukl): Σ|λ_n(K)|² ≤ ‖K‖²_N.
pub fn suite_eigenvalue_sq_sum(seed: u64, trials: usize) -> Result<SuiteReport> {
    let outcomes = exec::map((0..trials as u64).collect::<Vec<_>>(), |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ i.wrapping_mul(0x94d049bb133111eb));
        let k = random_operator(&mut rng, 5, 4);
        let (sum, bound) = eigenvalue_sq_sum_check(&k)?;
        Ok((sum, bound, format!("seed {seed}, trial {i}: {k:?}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ratio_suite("eq-absch-nukl-sq-sum", outcomes))
}

/// Lemma 4.2: ½ q ≤ dist(φ(w), [−2,2]) ≤ (1+√2)/2 q over random disc points.
pub fn suite_distance_sandwich(seed: u64, trials: usize) -> Result<SuiteReport> {
    let band = BandSpec::laplacian();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Complex64> = (0..trials)
        .map(|_| {
            Complex64::from_polar(
                rng.gen_range(1e-3..0.999),
                rng.gen_range(0.0..std::f64::consts::TAU),
            )
        })
        .collect();
    let outcomes = exec::map(points, |w| {
        let (lower, dist, upper) = band_distance_bounds(w, band)?;
        // fold both one-sided checks into a single ratio against 1
        let worst = (lower / dist).max(dist / upper);
        Ok((worst, 1.0, format!("w = {w}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ratio_suite("lemma-4.2-distance-sandwich", outcomes))
}

/// Prop. 4.1: the resolvent norm bound dominates the l¹ induced norm of
/// the explicitly inverted truncation.
pub fn suite_resolvent_bound(seed: u64, trials: usize, half_width: usize) -> Result<SuiteReport> {
    let band = BandSpec::laplacian();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(trials);
    while points.len() < trials {
        let z = Complex64::new(rng.gen_range(-5.0..5.0), rng.gen_range(-4.0..4.0));
        if band.distance(z) > 0.1 {
            points.push(z);
        }
    }
    let lap = crate::operator::build_laplacian(half_width)?;
    let outcomes = exec::map(points, |z| {
        let bound = small_root(z)?.norm_bound();
        let dim = lap.dim();
        let mut m = lap.matrix.mapv(|v| -v);
        for i in 0..dim {
            m[[i, i]] += z;
        }
        let induced = l1_induced_norm(&invert(&m)?);
        Ok((induced, bound, format!("z = {z}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ratio_suite("prop-4.1-resolvent-norm", outcomes))
}

/// Eq. (resolventenabschaetzung):
/// log|h(w)| ≤ 2‖K‖²_N |w|² / ((1−|w|)² |w−1|² |w+1|²) on a w-grid.
pub fn suite_log_det_bound(seed: u64, operators: usize) -> Result<SuiteReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..operators {
        let k = random_operator(&mut rng, 4, 3);
        for ir in 1..=9 {
            for it in 0..16 {
                let w = Complex64::from_polar(
                    ir as f64 / 10.0,
                    std::f64::consts::TAU * it as f64 / 16.0 + 0.013,
                );
                cases.push((k.clone(), w));
            }
        }
    }
    let outcomes = exec::map(cases, |(k, w)| {
        let norm = k.nuclear_norm_bound();
        let bound = 2.0 * norm * norm * w.norm_sqr()
            / ((1.0 - w.norm()).powi(2) * (w - 1.0).norm_sqr() * (w + 1.0).norm_sqr());
        let log_h = h_value(w, &k, 8)?.norm().ln();
        // shift both sides so the nonpositive log values stay comparable
        Ok((log_h.max(0.0), bound, format!("w = {w}, K = {k:?}")))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ratio_suite("eq-resolvent-log-det-bound", outcomes))
}

/// Jensen identity on the polynomial benchmark plus a node-halving decay
/// check (trapezoid on a periodic analytic integrand).
pub fn suite_jensen(_seed: u64) -> Result<SuiteReport> {
    let zero = Complex64::new(0.5, 0.0);
    let res = jensen_residual(|w| Ok(1.0 - 2.0 * w), &[zero], 0.8, 4096)?;
    let coarse = jensen_residual(|w| Ok(1.0 - 2.0 * w), &[zero], 0.8, 32)?;
    let fine = jensen_residual(|w| Ok(1.0 - 2.0 * w), &[zero], 0.8, 64)?;
    let outcomes = vec![
        (res, 1e-10, "polynomial benchmark residual".to_string()),
        (
            fine,
            coarse.max(1e-15) / 10.0,
            "node-halving decay factor".to_string(),
        ),
    ];
    Ok(ratio_suite("eq-8.2-jensen-identity", outcomes))
}

/// Theorem 4.3 scaling study over families s·K, s ∈ [0.1, 2]; returns the
/// fitted constants for both normalizations (‖sK‖²_N and ‖sK‖_N).
pub fn scaling_study(
    seed: u64,
    operators: usize,
    scales: usize,
    half_width: usize,
    delta: f64,
    tau: f64,
) -> Result<ScalingReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ops: Vec<NuclearOperatorRep> =
        (0..operators).map(|_| random_operator(&mut rng, 4, 3)).collect();
    let per_op = exec::map(ops, |k| -> Result<(f64, f64)> {
        let mut fit_sq: f64 = 0.0;
        let mut fit_lin: f64 = 0.0;
        for j in 0..scales {
            let s = 0.1 + 1.9 * j as f64 / (scales.max(2) - 1) as f64;
            let sk = k.scaled(Complex64::new(s, 0.0));
            let spec = discrete_spectrum(&sk, half_width, delta)?;
            let sum = lieb_thirring_sum(&spec, tau);
            let norm = sk.nuclear_norm_bound();
            if norm > 0.0 {
                fit_sq = fit_sq.max(sum / (norm * norm));
                fit_lin = fit_lin.max(sum / norm);
            }
        }
        Ok((fit_sq, fit_lin))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(ScalingReport {
        fitted_sq: per_op.iter().map(|p| p.0).collect(),
        fitted_lin: per_op.iter().map(|p| p.1).collect(),
    })
}

/// Runs every suite with sizes matching the acceptance thresholds.
pub fn run_all(seed: u64) -> Result<VerifyReport> {
    let suites = vec![
        suite_det_upper_bound(seed, 1000)?,
        suite_det_lipschitz(seed, 1000)?,
        suite_eigenvalue_sq_sum(seed, 1000)?,
        suite_distance_sandwich(seed, 10_000)?,
        suite_resolvent_bound(seed, 100, 100)?,
        suite_log_det_bound(seed, 5)?,
        suite_jensen(seed)?,
    ];
    let scaling = scaling_study(seed, 20, 5, 80, 0.05, 0.5)?;
    Ok(VerifyReport { seed, suites, scaling })
}
