use std::env;
use std::path::{Path, PathBuf};

/// The LAPACK backend links `-lcblas`, but Debian-family systems ship the
/// CBLAS symbols inside libopenblas/libblas without a separate libcblas.
/// Alias it in OUT_DIR so the system BLAS satisfies the link line.
fn main() {
    if Path::new("/usr/lib/x86_64-linux-gnu/libcblas.so").exists() {
        return;
    }
    let candidates = [
        "/usr/lib/x86_64-linux-gnu/libopenblas.so",
        "/usr/lib/x86_64-linux-gnu/libblas.so",
        "/usr/lib/libopenblas.so",
    ];
    let Some(target) = candidates.iter().find(|p| Path::new(p).exists()) else {
        return;
    };
    let out = PathBuf::from(env::var("OUT_DIR").unwrap());
    let link = out.join("libcblas.so");
    let _ = std::fs::remove_file(&link);
    if std::os::unix::fs::symlink(target, &link).is_ok() {
        println!("cargo:rustc-link-search=native={}", out.display());
    }
}
