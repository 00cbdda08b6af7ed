use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("spectral parameter z = {z} is within {dist:.3e} of the essential band")]
    BandProximity { z: Complex64, dist: f64 },
    #[error("point w = {w} is outside the punctured unit disc")]
    OutsideDisc { w: Complex64 },
    #[error("rank-one term support [{lo}, {hi}] exceeds the truncation window [-{n}, {n}]")]
    WindowOverflow { lo: i64, hi: i64, n: usize },
    #[error("rank-one term {index} has a zero-norm factor")]
    ZeroNormTerm { index: usize },
    #[error("eigensolver failed: {0}")]
    EigFailure(String),
    #[error("winding estimate residual {residual:.3e} exceeds 0.01; raise the contour node count")]
    ContourTooCoarse { residual: f64 },
    #[error("a zero lies within {dist:.3e} of the integration circle |w| = {r}; reposition r")]
    ZeroOnCircle { r: f64, dist: f64 },
    #[error("zero at w = 0 with positive modulus exponent {exponent}")]
    SingularTerm { exponent: f64 },
    #[error("eigenvalue {value} violates the {case} case predicate")]
    Classification { value: Complex64, case: &'static str },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
