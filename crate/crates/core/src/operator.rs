//! Unperturbed model operators and finite-rank nuclear perturbations.
//!
//! A nuclear perturbation is stored as a finite sum of rank-one terms
//! `K = Σ_n ⟨φ_n, ·⟩ f_n` with finitely supported coefficient sequences.
//! The representation carries an upper bound `Σ ‖φ_n‖ ‖f_n‖` for the
//! nuclear norm; the infimum over representations is never needed here.

use ndarray::Array2;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

/// Which sequence/function space the operator acts on. Determines the
/// vector norm and the conjugate dual norm used in the nuclear bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpaceTag {
    LatticeL1,
    LatticeL2,
    LatticeLinf,
    /// Continuous functions on an interval with the sup norm; functionals
    /// given by finitely many point masses carry the total-variation norm.
    IntervalContinuous,
}

impl SpaceTag {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "lattice-l1" => Ok(SpaceTag::LatticeL1),
            "lattice-l2" => Ok(SpaceTag::LatticeL2),
            "lattice-linf" => Ok(SpaceTag::LatticeLinf),
            "interval-continuous" => Ok(SpaceTag::IntervalContinuous),
            other => Err(Error::InvalidInput(format!("unknown space tag `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SpaceTag::LatticeL1 => "lattice-l1",
            SpaceTag::LatticeL2 => "lattice-l2",
            SpaceTag::LatticeLinf => "lattice-linf",
            SpaceTag::IntervalContinuous => "interval-continuous",
        }
    }

    /// Norm of a vector living in the space itself.
    pub fn vector_norm(&self, coeffs: &[(i64, Complex64)]) -> f64 {
        match self {
            SpaceTag::LatticeL1 => l1(coeffs),
            SpaceTag::LatticeL2 => l2(coeffs),
            SpaceTag::LatticeLinf | SpaceTag::IntervalContinuous => linf(coeffs),
        }
    }

    /// Norm of a functional in the dual space (conjugate exponent pairing).
    pub fn functional_norm(&self, coeffs: &[(i64, Complex64)]) -> f64 {
        match self {
            SpaceTag::LatticeL1 => linf(coeffs),
            SpaceTag::LatticeL2 => l2(coeffs),
            SpaceTag::LatticeLinf | SpaceTag::IntervalContinuous => l1(coeffs),
        }
    }
}

fn l1(coeffs: &[(i64, Complex64)]) -> f64 {
    coeffs.iter().map(|(_, c)| c.norm()).sum()
}

fn l2(coeffs: &[(i64, Complex64)]) -> f64 {
    coeffs.iter().map(|(_, c)| c.norm_sqr()).sum::<f64>().sqrt()
}

fn linf(coeffs: &[(i64, Complex64)]) -> f64 {
    coeffs.iter().map(|(_, c)| c.norm()).fold(0.0, f64::max)
}

/// One rank-one term ⟨φ, ·⟩ f with sparse index/value coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneTerm {
    pub functional: Vec<(i64, Complex64)>,
    pub vector: Vec<(i64, Complex64)>,
}

impl RankOneTerm {
    pub fn new(functional: Vec<(i64, Complex64)>, vector: Vec<(i64, Complex64)>) -> Self {
        Self { functional, vector }
    }

    /// c · e_i ⊗ e_j, i.e. ⟨e_j, ·⟩ c e_i.
    pub fn point(i: i64, j: i64, c: Complex64) -> Self {
        Self {
            functional: vec![(j, Complex64::new(1.0, 0.0))],
            vector: vec![(i, c)],
        }
    }
}

/// Finite rank-one sum representation of a nuclear operator.
#[derive(Debug, Clone, PartialEq)]
pub struct NuclearOperatorRep {
    pub terms: Vec<RankOneTerm>,
    pub space: SpaceTag,
}

impl NuclearOperatorRep {
    pub fn new(terms: Vec<RankOneTerm>, space: SpaceTag) -> Self {
        Self { terms, space }
    }

    pub fn empty(space: SpaceTag) -> Self {
        Self { terms: Vec::new(), space }
    }

    /// Rank-one c · e_0 ⊗ e_0 on the l¹ lattice, the §4 benchmark family.
    pub fn point_mass(c: f64) -> Self {
        Self::new(
            vec![RankOneTerm::point(0, 0, Complex64::new(c, 0.0))],
            SpaceTag::LatticeL1,
        )
    }

    pub fn scaled(&self, s: Complex64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| RankOneTerm {
                functional: t.functional.clone(),
                vector: t.vector.iter().map(|&(i, c)| (i, s * c)).collect(),
            })
            .collect();
        Self::new(terms, self.space)
    }

    /// Upper bound Σ ‖φ_n‖_{X*} ‖f_n‖_X for the nuclear norm.
    pub fn nuclear_norm_bound(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| self.space.functional_norm(&t.functional) * self.space.vector_norm(&t.vector))
            .sum()
    }

    /// Smallest index window [lo, hi] containing every coefficient.
    pub fn support(&self) -> Option<(i64, i64)> {
        let mut bounds: Option<(i64, i64)> = None;
        for term in &self.terms {
            for &(i, _) in term.functional.iter().chain(term.vector.iter()) {
                bounds = Some(match bounds {
                    None => (i, i),
                    Some((lo, hi)) => (lo.min(i), hi.max(i)),
                });
            }
        }
        bounds
    }

    fn check_window(&self, half_width: usize) -> Result<()> {
        if let Some((lo, hi)) = self.support() {
            let n = half_width as i64;
            if lo < -n || hi > n {
                return Err(Error::WindowOverflow { lo, hi, n: half_width });
            }
        }
        Ok(())
    }

    /// Dense matrix of K restricted to the window −N..N (dimension 2N+1).
    pub fn dense(&self, half_width: usize) -> Result<Array2<Complex64>> {
        self.check_window(half_width)?;
        let dim = 2 * half_width + 1;
        let off = half_width as i64;
        let mut m = Array2::zeros((dim, dim));
        for term in &self.terms {
            for &(i, fi) in &term.vector {
                for &(j, pj) in &term.functional {
                    m[[(i + off) as usize, (j + off) as usize]] += fi * pj;
                }
            }
        }
        Ok(m)
    }

    /// Drops terms with a vanishing factor; errors are reserved for callers
    /// that need every remaining term nonzero (the embedding construction).
    pub fn nonzero_terms(&self) -> Vec<&RankOneTerm> {
        self.terms
            .iter()
            .filter(|t| {
                self.space.functional_norm(&t.functional) > 0.0
                    && self.space.vector_norm(&t.vector) > 0.0
            })
            .collect()
    }
}

/// Bilinear dual pairing ⟨φ, f⟩ = Σ_k φ_k f_k over the common support.
pub fn pair(functional: &[(i64, Complex64)], vector: &[(i64, Complex64)]) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &(k, p) in functional {
        for &(m, f) in vector {
            if k == m {
                acc += p * f;
            }
        }
    }
    acc
}

/// Essential-spectrum interval [a, b].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandSpec {
    pub a: f64,
    pub b: f64,
}

impl BandSpec {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a < b) {
            return Err(Error::InvalidInput(format!("band requires a < b, got [{a}, {b}]")));
        }
        Ok(Self { a, b })
    }

    /// σ_ess(Δ_p) = [−2, 2].
    pub fn laplacian() -> Self {
        Self { a: -2.0, b: 2.0 }
    }

    pub fn distance(&self, z: Complex64) -> f64 {
        if z.re < self.a {
            (z - Complex64::new(self.a, 0.0)).norm()
        } else if z.re > self.b {
            (z - Complex64::new(self.b, 0.0)).norm()
        } else {
            z.im.abs()
        }
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }
}

/// Finite section of a lattice operator on indices −N..N.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub half_width: usize,
    pub matrix: Array2<Complex64>,
}

impl Truncation {
    pub fn dim(&self) -> usize {
        2 * self.half_width + 1
    }
}

/// Finite section of the discrete Laplacian: zero diagonal, unit
/// sub/super-diagonals, dimension 2N+1.
pub fn build_laplacian(half_width: usize) -> Result<Truncation> {
    if half_width == 0 {
        return Err(Error::InvalidInput("truncation half-width must be ≥ 1".into()));
    }
    let dim = 2 * half_width + 1;
    let mut m = Array2::zeros((dim, dim));
    for i in 0..dim - 1 {
        m[[i, i + 1]] = Complex64::new(1.0, 0.0);
        m[[i + 1, i]] = Complex64::new(1.0, 0.0);
    }
    Ok(Truncation { half_width, matrix: m })
}

/// Z = Z₀ + K on the common window.
pub fn assemble_perturbed(z0: &Truncation, k: &NuclearOperatorRep) -> Result<Truncation> {
    let km = k.dense(z0.half_width)?;
    Ok(Truncation {
        half_width: z0.half_width,
        matrix: &z0.matrix + &km,
    })
}

/// Nuclear norm of an l¹ matrix operator: Σ over rows of the row maximum.
pub fn l1_matrix_nuclear_norm(a: &Array2<Complex64>) -> f64 {
    a.rows()
        .into_iter()
        .map(|row| row.iter().map(|c| c.norm()).fold(0.0, f64::max))
        .sum()
}

/// Multiplication operator (Z₀ f)(t) = M(t) f(t) sampled on Gauss–Legendre
/// nodes of [α, β]; the band is [min M, max M].
#[derive(Debug, Clone)]
pub struct MultiplicationModel {
    pub alpha: f64,
    pub beta: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub samples: Vec<f64>,
    range: (f64, f64),
}

/// Endpoints never coincide with Gauss–Legendre nodes, so the range of the
/// symbol is scanned on a dense uniform grid that includes them.
const RANGE_SCAN_POINTS: usize = 4096;

impl MultiplicationModel {
    pub fn from_fn(alpha: f64, beta: f64, n: usize, symbol: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidInput("node count must be ≥ 4".into()));
        }
        if !(alpha < beta) {
            return Err(Error::InvalidInput("interval requires α < β".into()));
        }
        let (nodes, weights) = gauss_legendre(n, alpha, beta);
        let samples: Vec<f64> = nodes.iter().map(|&t| symbol(t)).collect();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for j in 0..=RANGE_SCAN_POINTS {
            let t = alpha + (beta - alpha) * j as f64 / RANGE_SCAN_POINTS as f64;
            let v = symbol(t);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Ok(Self { alpha, beta, nodes, weights, samples, range: (lo, hi) })
    }

    pub fn band(&self) -> BandSpec {
        BandSpec { a: self.range.0, b: self.range.1 }
    }
}

/// Integral kernel k(t, s) sampled on the tensor Gauss–Legendre grid.
#[derive(Debug, Clone)]
pub struct KernelModel {
    pub alpha: f64,
    pub beta: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Array2<Complex64>,
    /// sup_t |k(t, s_j)| per quadrature node s_j, resolved on a dense
    /// t-grid (the node set alone misses the interval endpoints).
    col_sup: Vec<f64>,
}

const KERNEL_SUP_SCAN_POINTS: usize = 1024;

impl KernelModel {
    pub fn from_fn(
        alpha: f64,
        beta: f64,
        n: usize,
        kernel: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidInput("node count must be ≥ 4".into()));
        }
        if !(alpha < beta) {
            return Err(Error::InvalidInput("interval requires α < β".into()));
        }
        let (nodes, weights) = gauss_legendre(n, alpha, beta);
        let mut values = Array2::zeros((n, n));
        for (i, &t) in nodes.iter().enumerate() {
            for (j, &s) in nodes.iter().enumerate() {
                values[[i, j]] = kernel(t, s);
            }
        }
        let col_sup = nodes
            .iter()
            .map(|&s| {
                (0..=KERNEL_SUP_SCAN_POINTS)
                    .map(|i| {
                        let t = alpha
                            + (beta - alpha) * i as f64 / KERNEL_SUP_SCAN_POINTS as f64;
                        kernel(t, s).norm()
                    })
                    .fold(0.0, f64::max)
            })
            .collect();
        Ok(Self { alpha, beta, nodes, weights, values, col_sup })
    }
}

/// Quadrature approximation of ‖K‖_N = ∫ sup_t |k(t, s)| ds.
pub fn kernel_nuclear_norm(k: &KernelModel) -> Result<f64> {
    if k.nodes.is_empty() {
        return Err(Error::InvalidInput("empty quadrature grid".into()));
    }
    Ok(k
        .weights
        .iter()
        .zip(&k.col_sup)
        .map(|(&w, &m)| w * m)
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn laplacian_small_section() {
        let t = build_laplacian(1).unwrap();
        let expect = [
            [0.0, 1.0, 0.0],
            [1.0, 0.0, 1.0],
            [0.0, 1.0, 0.0],
        ];
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(t.matrix[[i, j]], c(expect[i][j]));
            }
        }
    }

    #[test]
    fn laplacian_rejects_degenerate_window() {
        assert!(build_laplacian(0).is_err());
    }

    #[test]
    fn nuclear_bound_single_point_term() {
        let k = NuclearOperatorRep::point_mass(3.0);
        assert_abs_diff_eq!(k.nuclear_norm_bound(), 3.0, epsilon = 1e-15);
    }

    #[test]
    fn nuclear_bound_empty_rep() {
        assert_eq!(NuclearOperatorRep::empty(SpaceTag::LatticeL1).nuclear_norm_bound(), 0.0);
    }

    #[test]
    fn constant_row_matrix_partial_sums_approach_one() {
        // rows 2^{-k} constant; the l¹ nuclear norm is Σ 2^{-k} = 1
        for width in [8usize, 16, 24] {
            let mut m = Array2::zeros((width, width));
            for k in 0..width {
                let v = c(0.5_f64.powi(k as i32 + 1));
                for j in 0..width {
                    m[[k, j]] = v;
                }
            }
            let norm = l1_matrix_nuclear_norm(&m);
            let expect = 1.0 - 0.5_f64.powi(width as i32);
            assert_abs_diff_eq!(norm, expect, epsilon = 1e-14);
        }
    }

    #[test]
    fn diagonal_matrix_nuclear_norm_is_abs_sum() {
        let d = [0.5, -0.25, 0.125];
        let mut m = Array2::zeros((3, 3));
        for (i, &v) in d.iter().enumerate() {
            m[[i, i]] = c(v);
        }
        assert_abs_diff_eq!(l1_matrix_nuclear_norm(&m), 0.875, epsilon = 1e-15);
        assert_eq!(l1_matrix_nuclear_norm(&Array2::zeros((4, 4))), 0.0);
    }

    #[test]
    fn rank_one_matrix_norm_matches_representation_bound() {
        let u: Vec<(i64, Complex64)> = vec![(-1, c(0.3)), (0, c(-1.2)), (2, c(0.7))];
        let v: Vec<(i64, Complex64)> = vec![(-2, c(0.9)), (1, c(-0.4))];
        let k = NuclearOperatorRep::new(
            vec![RankOneTerm::new(v.clone(), u.clone())],
            SpaceTag::LatticeL1,
        );
        let dense = k.dense(4).unwrap();
        assert_abs_diff_eq!(
            l1_matrix_nuclear_norm(&dense),
            k.nuclear_norm_bound(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn assemble_empty_k_is_identity_on_z0() {
        let z0 = build_laplacian(2).unwrap();
        let z = assemble_perturbed(&z0, &NuclearOperatorRep::empty(SpaceTag::LatticeL1)).unwrap();
        assert_eq!(z.matrix, z0.matrix);
    }

    #[test]
    fn assemble_point_mass_hits_center() {
        let z0 = build_laplacian(1).unwrap();
        let z = assemble_perturbed(&z0, &NuclearOperatorRep::point_mass(3.0)).unwrap();
        assert_eq!(z.matrix[[1, 1]], c(3.0));
        assert_eq!(z.matrix[[0, 1]], c(1.0));
        // real symmetric K keeps the assembled matrix symmetric
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(z.matrix[[i, j]], z.matrix[[j, i]]);
            }
        }
    }

    #[test]
    fn assemble_rejects_window_overflow() {
        let z0 = build_laplacian(1).unwrap();
        let k = NuclearOperatorRep::new(
            vec![RankOneTerm::point(3, 0, c(1.0))],
            SpaceTag::LatticeL1,
        );
        assert!(matches!(
            assemble_perturbed(&z0, &k),
            Err(Error::WindowOverflow { .. })
        ));
    }

    #[test]
    fn kernel_norm_examples() {
        let one = KernelModel::from_fn(0.0, 1.0, 32, |_, _| c(1.0)).unwrap();
        assert_abs_diff_eq!(kernel_nuclear_norm(&one).unwrap(), 1.0, epsilon = 1e-13);

        // k(t,s) = t·s on [0,1]²: max_t |ts| = s, ∫₀¹ s ds = 1/2
        let prod = KernelModel::from_fn(0.0, 1.0, 32, |t, s| c(t * s)).unwrap();
        assert_abs_diff_eq!(kernel_nuclear_norm(&prod).unwrap(), 0.5, epsilon = 1e-12);

        let zero = KernelModel::from_fn(0.0, 1.0, 8, |_, _| c(0.0)).unwrap();
        assert_eq!(kernel_nuclear_norm(&zero).unwrap(), 0.0);
    }

    #[test]
    fn band_distance_cases() {
        let band = BandSpec::laplacian();
        assert_abs_diff_eq!(band.distance(c(3.0)), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(band.distance(Complex64::new(0.0, 0.5)), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(
            band.distance(Complex64::new(-3.0, 1.0)),
            2.0_f64.sqrt(),
            epsilon = 1e-15
        );
    }
}
