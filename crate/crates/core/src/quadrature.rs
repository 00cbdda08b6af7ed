//! Gauss–Legendre quadrature rules.

/// Nodes and weights of the n-point Gauss–Legendre rule on [a, b].
///
/// Roots of P_n are found by Newton iteration from the Chebyshev-style
/// initial guess; weights are 2 / ((1−x²) P_n'(x)²) rescaled to [a, b].
pub fn gauss_legendre(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be positive");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    for i in 0..n {
        nodes[i] = mid + half * nodes[i];
        weights[i] *= half;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn integrates_polynomials_exactly() {
        // n-point rule is exact through degree 2n−1
        let (x, w) = gauss_legendre(5, 0.0, 1.0);
        for deg in 0..10 {
            let quad: f64 = x.iter().zip(&w).map(|(&t, &wi)| wi * t.powi(deg)).sum();
            assert_abs_diff_eq!(quad, 1.0 / (deg as f64 + 1.0), epsilon = 1e-14);
        }
    }

    #[test]
    fn integrates_exp_on_shifted_interval() {
        let (x, w) = gauss_legendre(24, -1.5, 2.0);
        let quad: f64 = x.iter().zip(&w).map(|(&t, &wi)| wi * t.exp()).sum();
        assert_abs_diff_eq!(quad, 2.0_f64.exp() - (-1.5_f64).exp(), epsilon = 1e-12);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 7, 64] {
            let (_, w) = gauss_legendre(n, 0.25, 0.75);
            assert_abs_diff_eq!(w.iter().sum::<f64>(), 0.5, epsilon = 1e-14);
        }
    }
}
