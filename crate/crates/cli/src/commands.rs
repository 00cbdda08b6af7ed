use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use nucdet_core::num_complex::Complex64;
use nucdet_core::conformal::phi_inverse;
use nucdet_core::determinant::perturbation_determinant;
use nucdet_core::exec;
use nucdet_core::operator::{BandSpec, NuclearOperatorRep};
use nucdet_core::spectral::{
    discrete_spectrum, h_value, interval_spectrum, jensen_residual, lieb_thirring_sum, Spectrum,
};
use nucdet_core::verify::run_all;

use crate::opfile;
use crate::Format;

/// Fixed-width scientific notation so reruns are byte-identical.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Loads the operator and checks its declared window against the
/// truncation half-width picked on the command line.
fn load_operator(path: &Path, half_width: usize) -> Result<NuclearOperatorRep> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read operator file {}", path.display()))?;
    let parsed = opfile::parse(&text)
        .with_context(|| format!("malformed operator file {}", path.display()))?;
    if let Some((lo, hi)) = parsed.window {
        let n = half_width as i64;
        if lo < -n || hi > n {
            bail!("declared window [{lo}, {hi}] exceeds the truncation half-width {half_width}");
        }
    }
    Ok(parsed.operator)
}

fn write_out(dir: &Path, name: &str, body: &str) -> Result<()> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let path = dir.join(name);
    std::fs::write(&path, body).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(())
}

fn spectrum_csv(spec: &Spectrum) -> String {
    let mut body = String::from("Re lambda,Im lambda,multiplicity,band_distance,stable\n");
    for r in &spec.records {
        let _ = writeln!(
            body,
            "{},{},{},{},{}",
            num(r.lambda.re),
            num(r.lambda.im),
            r.multiplicity,
            num(r.band_distance),
            r.stable
        );
    }
    body
}

fn spectrum_metadata(spec: &Spectrum, delta: f64, tau: f64, sum: f64) -> String {
    let mut body = String::new();
    let _ = writeln!(body, "truncation {}", spec.truncation);
    let _ = writeln!(body, "delta {}", num(delta));
    let _ = writeln!(body, "tau {}", num(tau));
    let _ = writeln!(body, "band {} {}", num(spec.band.a), num(spec.band.b));
    let _ = writeln!(body, "eigenvalues {}", spec.total_count());
    let _ = writeln!(body, "eigenvalue-sum {}", num(sum));
    body
}

fn spectrum_structured(spec: &Spectrum, delta: f64, tau: f64, sum: f64) -> String {
    let mut body = spectrum_metadata(spec, delta, tau, sum);
    for r in &spec.records {
        let _ = writeln!(
            body,
            "record {} {} multiplicity {} band_distance {} stable {}",
            num(r.lambda.re),
            num(r.lambda.im),
            r.multiplicity,
            num(r.band_distance),
            r.stable
        );
    }
    body
}

fn emit_spectrum(
    spec: &Spectrum,
    delta: f64,
    tau: f64,
    dir: &Path,
    format: Format,
) -> Result<f64> {
    let sum = lieb_thirring_sum(spec, tau);
    match format {
        Format::Csv => {
            write_out(dir, "spectrum.csv", &spectrum_csv(spec))?;
            write_out(dir, "spectrum.txt", &spectrum_metadata(spec, delta, tau, sum))?;
        }
        Format::StructuredText => {
            write_out(dir, "spectrum.txt", &spectrum_structured(spec, delta, tau, sum))?;
        }
    }
    Ok(sum)
}

pub fn spectrum(
    operator: &Path,
    n: usize,
    delta: f64,
    tau: f64,
    dir: &Path,
    format: Format,
) -> Result<ExitCode> {
    let k = load_operator(operator, n)?;
    let spec = discrete_spectrum(&k, n, delta)?;
    let sum = emit_spectrum(&spec, delta, tau, dir, format)?;
    println!("eigenvalues {}", spec.total_count());
    println!("eigenvalue-sum(tau = {tau}) {}", num(sum));
    Ok(ExitCode::SUCCESS)
}

fn parse_axis(spec: &str, what: &str) -> Result<(f64, f64, usize)> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        bail!("{what} must be start:stop:count, got `{spec}`");
    }
    let lo: f64 = parts[0].parse().with_context(|| format!("bad {what} start `{}`", parts[0]))?;
    let hi: f64 = parts[1].parse().with_context(|| format!("bad {what} stop `{}`", parts[1]))?;
    let count: usize = parts[2].parse().with_context(|| format!("bad {what} count `{}`", parts[2]))?;
    if count == 0 {
        bail!("{what} count must be positive");
    }
    Ok((lo, hi, count))
}

fn grid_points(grid: &str) -> Result<Vec<Complex64>> {
    let (re_axis, im_axis) = grid
        .split_once(',')
        .with_context(|| format!("grid must be re0:re1:nre,im0:im1:nim, got `{grid}`"))?;
    let (re0, re1, nre) = parse_axis(re_axis, "real axis")?;
    let (im0, im1, nim) = parse_axis(im_axis, "imaginary axis")?;
    let mut pts = Vec::with_capacity(nre * nim);
    for i in 0..nre {
        let re = if nre == 1 { re0 } else { re0 + (re1 - re0) * i as f64 / (nre - 1) as f64 };
        for j in 0..nim {
            let im = if nim == 1 { im0 } else { im0 + (im1 - im0) * j as f64 / (nim - 1) as f64 };
            pts.push(Complex64::new(re, im));
        }
    }
    Ok(pts)
}

pub fn det_scan(operator: &Path, grid: &str, n: usize, delta: f64, dir: &Path) -> Result<ExitCode> {
    if delta <= 0.0 {
        bail!("exclusion radius delta must be positive");
    }
    let k = load_operator(operator, n)?;
    let pts = grid_points(grid)?;
    let band = BandSpec::laplacian();
    for &z in &pts {
        let d = band.distance(z);
        if d < delta {
            bail!("grid node {z} is {d:.3e} from the band, below delta = {delta}");
        }
    }
    let samples = exec::map(pts, |z| perturbation_determinant(z, &k, n))
        .into_iter()
        .collect::<nucdet_core::Result<Vec<_>>>()?;
    let mut body = String::from("Re z,Im z,Re d,Im d,log|d|\n");
    for s in &samples {
        let _ = writeln!(
            body,
            "{},{},{},{},{}",
            num(s.lambda.re),
            num(s.lambda.im),
            num(s.value.re),
            num(s.value.im),
            num(s.modulus_log)
        );
    }
    write_out(dir, "det_scan.csv", &body)?;
    println!("rows {}", samples.len());
    Ok(ExitCode::SUCCESS)
}

pub fn verify(seed: u64, dir: &Path) -> Result<ExitCode> {
    let report = run_all(seed)?;
    let mut body = String::new();
    let _ = writeln!(body, "seed {seed}");
    for s in &report.suites {
        let _ = writeln!(
            body,
            "suite {} trials {} violations {} worst-ratio {}",
            s.name,
            s.trials,
            s.violations,
            num(s.worst_ratio)
        );
        if let Some(sample) = &s.first_violation {
            let _ = writeln!(body, "first-violation {}", sample.replace('\n', " "));
        }
    }
    for (i, (&sq, &lin)) in report
        .scaling
        .fitted_sq
        .iter()
        .zip(&report.scaling.fitted_lin)
        .enumerate()
    {
        let _ = writeln!(body, "scaling-family {i} fitted-sq {} fitted-lin {}", num(sq), num(lin));
    }
    let passed = report.passed();
    let _ = writeln!(body, "verdict {}", if passed { "pass" } else { "fail" });
    write_out(dir, "verify_report.txt", &body)?;
    print!("{body}");
    Ok(if passed { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[allow(clippy::too_many_arguments)]
pub fn interval(
    n: usize,
    alpha: f64,
    beta: f64,
    kernel_const: f64,
    delta: f64,
    tau: f64,
    dir: &Path,
    format: Format,
) -> Result<ExitCode> {
    let spec = interval_spectrum(
        alpha,
        beta,
        n,
        |t| t,
        |_, _| Complex64::new(kernel_const, 0.0),
        delta,
    )?;
    let sum = emit_spectrum(&spec, delta, tau, dir, format)?;
    println!("eigenvalues {}", spec.total_count());
    println!("eigenvalue-sum(tau = {tau}) {}", num(sum));
    Ok(ExitCode::SUCCESS)
}

pub fn jensen(operator: &Path, contour: &str, n: usize, delta: f64) -> Result<ExitCode> {
    let parts: Vec<&str> = contour.split(',').collect();
    if parts.len() != 4 {
        bail!("contour must be cx,cy,r,nodes, got `{contour}`");
    }
    let cx: f64 = parts[0].parse().with_context(|| format!("bad cx `{}`", parts[0]))?;
    let cy: f64 = parts[1].parse().with_context(|| format!("bad cy `{}`", parts[1]))?;
    let r: f64 = parts[2].parse().with_context(|| format!("bad radius `{}`", parts[2]))?;
    let nodes: usize = parts[3].parse().with_context(|| format!("bad node count `{}`", parts[3]))?;
    if cx != 0.0 || cy != 0.0 {
        bail!("the Jensen circle must be centered at the origin of the disc");
    }
    let k = load_operator(operator, n)?;
    let spec = discrete_spectrum(&k, n, delta)?;
    let band = spec.band;
    let mut zeros = Vec::new();
    for rec in &spec.records {
        let w = phi_inverse(rec.lambda, band)?;
        for _ in 0..rec.multiplicity {
            zeros.push(w);
        }
    }
    let residual = jensen_residual(|w| h_value(w, &k, n), &zeros, r, nodes)?;
    let lhs: f64 = zeros
        .iter()
        .filter(|w| w.norm() <= r)
        .map(|w| (r / w.norm()).ln())
        .sum();
    println!("zeros-inside {}", zeros.iter().filter(|w| w.norm() <= r).count());
    println!("zero-sum {}", num(lhs));
    println!("residual {}", num(residual));
    Ok(ExitCode::SUCCESS)
}
