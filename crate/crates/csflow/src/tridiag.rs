//! Cyclic tridiagonal solver (Thomas algorithm + Sherman-Morrison correction).
//!
//! Row `i` of the system reads `sub[i]*x[i-1] + diag[i]*x[i] + sup[i]*x[i+1] = rhs[i]`
//! with indices taken mod `n`, so `sub[0]` and `sup[n-1]` are the periodic corner
//! entries.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TridiagError {
    #[error("cyclic tridiagonal system needs n >= 3, got {0}")]
    TooSmall(usize),
    #[error("singular pivot encountered in tridiagonal elimination")]
    SingularPivot,
    #[error("mismatched band lengths")]
    BadShape,
}

/// Plain (non-cyclic) Thomas solve; bands exclude the periodic corners:
/// `sub` couples `x[i]` to `x[i-1]` for `i = 1..n`, `sup` couples `x[i]` to
/// `x[i+1]` for `i = 0..n-1`.
fn solve_plain(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[f64],
    x: &mut [f64],
    scratch: &mut [f64],
) -> Result<(), TridiagError> {
    let n = diag.len();
    let mut beta = diag[0];
    if beta == 0.0 {
        return Err(TridiagError::SingularPivot);
    }
    x[0] = rhs[0] / beta;
    for j in 1..n {
        scratch[j] = sup[j - 1] / beta;
        beta = diag[j] - sub[j] * scratch[j];
        if beta == 0.0 {
            return Err(TridiagError::SingularPivot);
        }
        x[j] = (rhs[j] - sub[j] * x[j - 1]) / beta;
    }
    for j in (0..n - 1).rev() {
        let t = scratch[j + 1] * x[j + 1];
        x[j] -= t;
    }
    Ok(())
}

/// Solves the cyclic system in O(n): one modified Thomas pass for the interior
/// matrix plus a rank-one Sherman-Morrison correction for the periodic corners.
pub fn solve_cyclic(
    sub: &[f64],
    diag: &[f64],
    sup: &[f64],
    rhs: &[f64],
) -> Result<Vec<f64>, TridiagError> {
    let n = diag.len();
    if n < 3 {
        return Err(TridiagError::TooSmall(n));
    }
    if sub.len() != n || sup.len() != n || rhs.len() != n {
        return Err(TridiagError::BadShape);
    }
    let alpha = sub[0]; // A[0][n-1]
    let beta = sup[n - 1]; // A[n-1][0]

    let gamma = -diag[0];
    let mut d = diag.to_vec();
    d[0] = diag[0] - gamma;
    d[n - 1] = diag[n - 1] - alpha * beta / gamma;

    let mut x = vec![0.0; n];
    let mut scratch = vec![0.0; n];
    solve_plain(sub, &d, sup, rhs, &mut x, &mut scratch)?;

    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let mut z = vec![0.0; n];
    solve_plain(sub, &d, sup, &u, &mut z, &mut scratch)?;

    let denom = 1.0 + z[0] + (beta / gamma) * z[n - 1];
    if denom == 0.0 {
        return Err(TridiagError::SingularPivot);
    }
    let factor = (x[0] + (beta / gamma) * x[n - 1]) / denom;
    for i in 0..n {
        x[i] -= factor * z[i];
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn apply_cyclic(sub: &[f64], diag: &[f64], sup: &[f64], x: &[f64]) -> Vec<f64> {
        let n = diag.len();
        (0..n)
            .map(|i| {
                sub[i] * x[(i + n - 1) % n] + diag[i] * x[i] + sup[i] * x[(i + 1) % n]
            })
            .collect()
    }

    #[test]
    fn known_4x4_system() {
        // A = [[2,-1,0,0.5],[-1,2,-1,0],[0,-1,2,-1],[1,0,-1,2]]
        let sub = [0.5, -1.0, -1.0, -1.0];
        let diag = [2.0, 2.0, 2.0, 2.0];
        let sup = [-1.0, -1.0, -1.0, 1.0];
        let x_exact = [1.0, 2.0, 3.0, 4.0];
        let rhs = apply_cyclic(&sub, &diag, &sup, &x_exact);
        let x = solve_cyclic(&sub, &diag, &sup, &rhs).unwrap();
        for (a, b) in x.iter().zip(x_exact.iter()) {
            assert!((a - b).abs() < 1e-12, "got {a}, want {b}");
        }
    }

    #[test]
    fn residual_on_random_band() {
        // deterministic pseudo-random bands, checked by multiplying back
        let n = 257;
        let f = |i: usize, k: u64| {
            let h = i as u64 * 6364136223846793005u64 ^ k;
            ((h >> 33) as f64 / (1u64 << 31) as f64) - 0.5
        };
        let sub: Vec<f64> = (0..n).map(|i| f(i, 1)).collect();
        let sup: Vec<f64> = (0..n).map(|i| f(i, 2)).collect();
        let diag: Vec<f64> = (0..n).map(|i| 4.0 + f(i, 3)).collect();
        let rhs: Vec<f64> = (0..n).map(|i| f(i, 4) * 3.0).collect();
        let x = solve_cyclic(&sub, &diag, &sup, &rhs).unwrap();
        let back = apply_cyclic(&sub, &diag, &sup, &x);
        for (a, b) in back.iter().zip(rhs.iter()) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn rejects_small_systems() {
        let r = solve_cyclic(&[1.0, 1.0], &[2.0, 2.0], &[1.0, 1.0], &[1.0, 1.0]);
        assert!(matches!(r, Err(TridiagError::TooSmall(2))));
    }

    #[test]
    fn diffusion_matrix_solve() {
        // (I - r D2) with periodic wrap, the shape used by the flow stepper
        let n = 64;
        let r = 37.0;
        let sub = vec![-r; n];
        let sup = vec![-r; n];
        let diag = vec![1.0 + 2.0 * r; n];
        let rhs: Vec<f64> = (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * i as f64 / n as f64).sin())
            .collect();
        let x = solve_cyclic(&sub, &diag, &sup, &rhs).unwrap();
        let back = apply_cyclic(&sub, &diag, &sup, &x);
        for (a, b) in back.iter().zip(rhs.iter()) {
            assert!((a - b).abs() < 1e-11);
        }
    }
}
