//! Discrete-spectrum extraction and the eigenvalue-sum functionals.
//!
//! The finite-section oracle diagonalizes the truncated operator at
//! half-widths N and 2N; only eigenvalues that stay put under the
//! doubling (and keep their distance to the band) are accepted as
//! discrete eigenvalues. Zero counting by the argument principle and the
//! Jensen identity give the independent cross-checks.

use num_complex::Complex64;

use crate::conformal::phi;
use crate::determinant::perturbation_determinant;
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::eig;
use crate::operator::{
    assemble_perturbed, build_laplacian, BandSpec, KernelModel, MultiplicationModel,
    NuclearOperatorRep,
};

/// Movement tolerance between the N and 2N sections.
pub const STABILITY_TOL: f64 = 1e-6;
/// Eigenvalues closer than this are merged into one record.
pub const CLUSTER_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenRecord {
    pub lambda: Complex64,
    pub multiplicity: usize,
    pub band_distance: f64,
    pub stable: bool,
}

#[derive(Debug, Clone)]
pub struct Spectrum {
    pub records: Vec<EigenRecord>,
    pub band: BandSpec,
    pub truncation: usize,
}

impl Spectrum {
    pub fn total_count(&self) -> usize {
        self.records.iter().map(|r| r.multiplicity).sum()
    }
}

fn cluster(mut values: Vec<Complex64>, band: BandSpec) -> Vec<EigenRecord> {
    crate::linalg::canonical_sort(&mut values);
    let mut records: Vec<EigenRecord> = Vec::new();
    for v in values {
        match records
            .iter_mut()
            .find(|r| (r.lambda - v).norm() < CLUSTER_TOL)
        {
            Some(r) => r.multiplicity += 1,
            None => records.push(EigenRecord {
                lambda: v,
                multiplicity: 1,
                band_distance: band.distance(v),
                stable: true,
            }),
        }
    }
    records
}

fn stable_values(coarse: &[Complex64], fine: &[Complex64]) -> Vec<Complex64> {
    fine.iter()
        .copied()
        .filter(|&v| {
            coarse
                .iter()
                .any(|&u| (u - v).norm() < STABILITY_TOL)
        })
        .collect()
}

/// Discrete spectrum of Δ + K by finite sections with doubling.
///
/// Eigenvalues with dist(λ, [−2, 2]) ≤ δ are excluded; the survivors must
/// move less than [`STABILITY_TOL`] when the half-width doubles. An empty
/// result is valid (K = 0 has no discrete spectrum).
pub fn discrete_spectrum(
    k: &NuclearOperatorRep,
    half_width: usize,
    delta: f64,
) -> Result<Spectrum> {
    if delta <= 0.0 {
        return Err(Error::InvalidInput("exclusion radius δ must be positive".into()));
    }
    let band = BandSpec::laplacian();
    let mut sections = exec::map(vec![half_width, 2 * half_width], |n| -> Result<Vec<Complex64>> {
        let z = assemble_perturbed(&build_laplacian(n)?, k)?;
        let vals = eig(&z.matrix)?;
        Ok(vals
            .into_iter()
            .filter(|&v| band.distance(v) > delta)
            .collect())
    });
    let fine = sections.pop().unwrap()?;
    let coarse = sections.pop().unwrap()?;
    let records = cluster(stable_values(&coarse, &fine), band);
    Ok(Spectrum { records, band, truncation: half_width })
}

/// Discrete spectrum of the §5 interval model M(t)· + ∫k(t,s)·ds via the
/// Nyström discretization on Gauss–Legendre nodes, with node doubling.
pub fn interval_spectrum(
    alpha: f64,
    beta: f64,
    nodes: usize,
    symbol: impl Fn(f64) -> f64 + Copy,
    kernel: impl Fn(f64, f64) -> Complex64 + Copy,
    delta: f64,
) -> Result<Spectrum> {
    if delta <= 0.0 {
        return Err(Error::InvalidInput("exclusion radius δ must be positive".into()));
    }
    let model = MultiplicationModel::from_fn(alpha, beta, nodes, symbol)?;
    let band = model.band();
    let section = |n: usize| -> Result<Vec<Complex64>> {
        let m = MultiplicationModel::from_fn(alpha, beta, n, symbol)?;
        let k = KernelModel::from_fn(alpha, beta, n, kernel)?;
        let mut z = ndarray::Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                z[[i, j]] = k.values[[i, j]] * k.weights[j];
            }
            z[[i, i]] += Complex64::new(m.samples[i], 0.0);
        }
        Ok(eig(&z)?
            .into_iter()
            .filter(|&v| band.distance(v) > delta)
            .collect())
    };
    let coarse = section(nodes)?;
    let fine = section(2 * nodes)?;
    let records = cluster(stable_values(&coarse, &fine), band);
    Ok(Spectrum { records, band, truncation: nodes })
}

/// Circular contour in the z-plane.
#[derive(Debug, Clone, Copy)]
pub struct Contour {
    pub center: Complex64,
    pub radius: f64,
    pub nodes: usize,
}

impl Contour {
    pub fn new(center: Complex64, radius: f64, nodes: usize) -> Result<Self> {
        if radius <= 0.0 || nodes < 8 {
            return Err(Error::InvalidInput(
                "contour needs a positive radius and at least 8 nodes".into(),
            ));
        }
        Ok(Self { center, radius, nodes })
    }

    pub fn point(&self, j: usize) -> Complex64 {
        let theta = std::f64::consts::TAU * j as f64 / self.nodes as f64;
        self.center + Complex64::from_polar(self.radius, theta)
    }

    fn min_band_distance(&self, band: BandSpec) -> f64 {
        (0..self.nodes)
            .map(|j| band.distance(self.point(j)))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Winding number of `f` along the contour by phase accumulation.
///
/// Returns the rounded count; the rounding residual must stay below 0.01
/// or the contour is declared too coarse.
pub fn winding_count_fn(
    f: impl Fn(Complex64) -> Result<Complex64> + Sync,
    contour: &Contour,
) -> Result<usize> {
    let values = exec::map((0..contour.nodes).collect::<Vec<_>>(), |j| f(contour.point(j)));
    let values: Vec<Complex64> = values.into_iter().collect::<Result<_>>()?;
    // Phase accumulation sums to an exact multiple of 2π on a closed
    // contour, so the coarseness signal comes from the secant quadrature
    // of ∮ d log f: 2(f_{j+1}−f_j)/(f_{j+1}+f_j) approximates the log
    // ratio only when consecutive samples are close.
    let mut phase_total = 0.0;
    let mut secant_total = 0.0;
    for j in 0..contour.nodes {
        let a = values[j];
        let b = values[(j + 1) % contour.nodes];
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::InvalidInput("contour passes through a zero".into()));
        }
        phase_total += (b / a).arg();
        secant_total += (2.0 * (b - a) / (b + a)).im;
    }
    let winding = (phase_total / std::f64::consts::TAU).round();
    let residual = (secant_total / std::f64::consts::TAU - winding).abs();
    if !(residual < 0.01) {
        return Err(Error::ContourTooCoarse { residual });
    }
    if winding < 0.0 {
        return Err(Error::InvalidInput(format!(
            "negative winding number {winding} for a holomorphic integrand"
        )));
    }
    Ok(winding as usize)
}

/// Number of zeros of d(·) = det(𝟙 − K R_Δ(·)) enclosed by the contour,
/// counted with multiplicity.
pub fn winding_zero_count(
    k: &NuclearOperatorRep,
    contour: &Contour,
    half_width: usize,
) -> Result<usize> {
    let band = BandSpec::laplacian();
    let dist = contour.min_band_distance(band);
    if dist < 1e-6 {
        return Err(Error::BandProximity { z: contour.center, dist });
    }
    winding_count_fn(
        |z| Ok(perturbation_determinant(z, k, half_width)?.value),
        contour,
    )
}

/// h(w) = (d ∘ φ)(w) on the unit disc, with h(0) = d(∞) = 1.
pub fn h_value(w: Complex64, k: &NuclearOperatorRep, half_width: usize) -> Result<Complex64> {
    if w.norm() == 0.0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let z = phi(w, BandSpec::laplacian())?;
    Ok(perturbation_determinant(z, k, half_width)?.value)
}

/// Jensen identity defect: |Σ log(r/|w_k|) − mean of log|h| on |w| = r|.
///
/// The circle mean is the trapezoid rule on `nodes` equispaced angles;
/// `zeros` lists the zeros of h in |w| ≤ r with multiplicity. h(0) must
/// be 1 for the identity to apply.
pub fn jensen_residual(
    h: impl Fn(Complex64) -> Result<Complex64> + Sync,
    zeros: &[Complex64],
    r: f64,
    nodes: usize,
) -> Result<f64> {
    if !(0.0 < r && r < 1.0) {
        return Err(Error::InvalidInput("Jensen radius must lie in (0, 1)".into()));
    }
    let h0 = h(Complex64::new(0.0, 0.0))?;
    if (h0 - 1.0).norm() > 1e-8 {
        return Err(Error::InvalidInput(format!("Jensen identity needs h(0) = 1, got {h0}")));
    }
    for &w in zeros {
        let gap = (w.norm() - r).abs();
        if gap < 1e-6 {
            return Err(Error::ZeroOnCircle { r, dist: gap });
        }
    }
    let lhs: f64 = zeros
        .iter()
        .filter(|w| w.norm() <= r)
        .map(|w| (r / w.norm()).ln())
        .sum();
    let values = exec::map((0..nodes).collect::<Vec<_>>(), |j| {
        let theta = std::f64::consts::TAU * j as f64 / nodes as f64;
        h(Complex64::from_polar(r, theta)).map(|v| v.norm().ln())
    });
    let mut mean = 0.0;
    for v in values {
        mean += v?;
    }
    mean /= nodes as f64;
    Ok((lhs - mean).abs())
}

/// Exponent data for the Borichev–Golinskii–Kupin zero sum.
#[derive(Debug, Clone)]
pub struct BGKParams {
    pub alpha: f64,
    pub betas: Vec<f64>,
    pub xis: Vec<Complex64>,
    pub gamma: f64,
    pub c0: f64,
    pub epsilon: f64,
    pub tau: f64,
}

impl BGKParams {
    pub fn new(
        alpha: f64,
        betas: Vec<f64>,
        xis: Vec<Complex64>,
        gamma: f64,
        c0: f64,
        epsilon: f64,
        tau: f64,
    ) -> Result<Self> {
        if alpha <= 0.0 || tau <= 0.0 || epsilon < 0.0 || gamma < 0.0 || c0 < 0.0 {
            return Err(Error::InvalidInput("BGK exponents out of range".into()));
        }
        if betas.len() != xis.len() {
            return Err(Error::InvalidInput("one β per boundary point ξ required".into()));
        }
        for (i, xi) in xis.iter().enumerate() {
            if (xi.norm() - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidInput(format!("ξ_{i} = {xi} is not unimodular")));
            }
            for xj in &xis[i + 1..] {
                if (xi - xj).norm() < 1e-12 {
                    return Err(Error::InvalidInput("boundary points ξ must be distinct".into()));
                }
            }
        }
        Ok(Self { alpha, betas, xis, gamma, c0, epsilon, tau })
    }

    /// The §4 specialization for the Laplacian: α = 2, β = (2, 2),
    /// ξ = (1, −1), γ = 2 and ε = 1 − τ.
    pub fn laplacian(tau: f64, c0: f64) -> Result<Self> {
        Self::new(
            2.0,
            vec![2.0, 2.0],
            vec![Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0)],
            2.0,
            c0,
            (1.0 - tau).max(0.0),
            tau,
        )
    }
}

fn positive_part(x: f64) -> f64 {
    x.max(0.0)
}

/// Σ over zeros of (1−|w|)^{α+τ+1} / |w|^{(γ−ε)_+} · ∏ |w−ξ_j|^{(β_j−1+τ)_+}.
pub fn bgk_sum(zeros: &[Complex64], p: &BGKParams) -> Result<f64> {
    let modulus_exp = positive_part(p.gamma - p.epsilon);
    let mut total = 0.0;
    for &w in zeros {
        let aw = w.norm();
        if aw >= 1.0 {
            return Err(Error::InvalidInput(format!("zero {w} lies outside the unit disc")));
        }
        if aw == 0.0 && modulus_exp > 0.0 {
            return Err(Error::SingularTerm { exponent: modulus_exp });
        }
        let mut term = (1.0 - aw).powf(p.alpha + p.tau + 1.0);
        if modulus_exp > 0.0 {
            term /= aw.powf(modulus_exp);
        }
        for (beta, xi) in p.betas.iter().zip(&p.xis) {
            term *= (w - xi).norm().powf(positive_part(beta - 1.0 + p.tau));
        }
        total += term;
    }
    Ok(total)
}

/// Σ multiplicity · dist(λ, [a, b])^{3+τ} / (|λ−a| |λ−b|).
pub fn lieb_thirring_sum(spectrum: &Spectrum, tau: f64) -> f64 {
    spectrum
        .records
        .iter()
        .map(|r| {
            let denom = (r.lambda - spectrum.band.a).norm() * (r.lambda - spectrum.band.b).norm();
            r.multiplicity as f64 * r.band_distance.powf(3.0 + tau) / denom
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionKind {
    MLeft,
    MRight,
    NStrip,
}

/// Eigenvalue-counting region for the band [−2, 2].
#[derive(Debug, Clone, Copy)]
pub struct Region {
    pub kind: RegionKind,
    pub r: f64,
    pub big_r: f64,
}

impl Region {
    pub fn new(kind: RegionKind, r: f64, big_r: f64) -> Result<Self> {
        if !(big_r > r && r > 0.0) {
            return Err(Error::InvalidInput("region needs R > r > 0".into()));
        }
        Ok(Self { kind, r, big_r })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        match self.kind {
            RegionKind::MLeft => {
                let d = (z + 2.0).norm();
                z.re < -2.0 && self.r < d && d < self.big_r
            }
            RegionKind::MRight => {
                let d = (z - 2.0).norm();
                z.re > 2.0 && self.r < d && d < self.big_r
            }
            RegionKind::NStrip => {
                let d = z.im.abs();
                (-2.0..=2.0).contains(&z.re) && self.r < d && d < self.big_r
            }
        }
    }

    /// Geometric factor turning the restricted eigenvalue sum into a count
    /// bound: R(R+4)/r^{3+τ} for the M regions, (16+R²)/r^{3+τ} for N.
    pub fn geometric_factor(&self, tau: f64) -> f64 {
        match self.kind {
            RegionKind::MLeft | RegionKind::MRight => {
                self.big_r * (self.big_r + 4.0) / self.r.powf(3.0 + tau)
            }
            RegionKind::NStrip => {
                (16.0 + self.big_r * self.big_r) / self.r.powf(3.0 + tau)
            }
        }
    }
}

/// Counts eigenvalues inside the region and the bound implied by the
/// region-restricted eigenvalue sum; count ≤ bound always holds.
pub fn region_count_bound(spectrum: &Spectrum, region: &Region, tau: f64) -> (usize, f64) {
    let restricted = Spectrum {
        records: spectrum
            .records
            .iter()
            .copied()
            .filter(|r| region.contains(r.lambda))
            .collect(),
        band: spectrum.band,
        truncation: spectrum.truncation,
    };
    let count = restricted.total_count();
    let implied = lieb_thirring_sum(&restricted, tau) * region.geometric_factor(tau);
    (count, implied)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AsymptoticsCase {
    /// λ₀ = −2 approached with Re λ_k ≤ −2.
    IA,
    /// λ₀ = −2 approached with Re λ_k > −2.
    IIA,
    /// interior limit λ₀ ∈ (−2, 2).
    III,
}

/// Case sums for eigenvalue sequences approaching the band: i.a sums
/// |λ+2|^{2+τ}, ii.a sums |Im λ|^{3+τ}/|λ+2|, iii sums |Im λ|^{3+τ}.
/// Entries violating the case predicate fail loudly.
pub fn asymptotics_sums(seq: &[Complex64], tau: f64, case: AsymptoticsCase) -> Result<f64> {
    let band = BandSpec::laplacian();
    let mut total = 0.0;
    for &l in seq {
        if band.distance(l) == 0.0 {
            return Err(Error::Classification { value: l, case: "off-band" });
        }
        total += match case {
            AsymptoticsCase::IA => {
                if l.re > -2.0 {
                    return Err(Error::Classification { value: l, case: "i.a" });
                }
                (l + 2.0).norm().powf(2.0 + tau)
            }
            AsymptoticsCase::IIA => {
                if l.re <= -2.0 {
                    return Err(Error::Classification { value: l, case: "ii.a" });
                }
                l.im.abs().powf(3.0 + tau) / (l + 2.0).norm()
            }
            AsymptoticsCase::III => {
                if !(-2.0..=2.0).contains(&l.re) {
                    return Err(Error::Classification { value: l, case: "iii" });
                }
                l.im.abs().powf(3.0 + tau)
            }
        };
    }
    Ok(total)
}
