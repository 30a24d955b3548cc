//! Periodic cubic spline interpolation and arclength-uniform resampling.
//!
//! The interpolant runs each coordinate through a periodic natural cubic
//! spline in the parameter `u` (moments found by one cyclic tridiagonal
//! solve). Segment arclengths come from Gauss-Legendre quadrature on the
//! spline speed; the arclength function is inverted per segment by monotone
//! bisection.

use nalgebra::Vector3;
use std::f64::consts::TAU;

use crate::curve::{CurveError, DiscreteCurve, SPEED_GUARD_REL};
use crate::tridiag;

// 7-point Gauss-Legendre nodes/weights on [0, 1]
const GL_X: [f64; 7] = [
    0.025_446_043_828_620_8,
    0.129_234_407_200_302_8,
    0.297_077_424_311_301_4,
    0.5,
    0.702_922_575_688_698_6,
    0.870_765_592_799_697_2,
    0.974_553_956_171_379_2,
];
const GL_W: [f64; 7] = [
    0.064_742_483_084_434_85,
    0.139_852_695_744_638_33,
    0.190_915_025_252_559_47,
    0.208_979_591_836_734_69,
    0.190_915_025_252_559_47,
    0.139_852_695_744_638_33,
    0.064_742_483_084_434_85,
];

pub(crate) struct PeriodicSpline {
    points: Vec<Vector3<f64>>,
    /// Second derivatives (moments) at the knots.
    moments: Vec<Vector3<f64>>,
    h: f64,
}

impl PeriodicSpline {
    pub(crate) fn interpolate(curve: &DiscreteCurve) -> Self {
        let n = curve.n();
        let h = curve.du();
        let pts = curve.points();

        // periodic C2 conditions: (h/6) M_{i-1} + (2h/3) M_i + (h/6) M_{i+1}
        //                          = (p_{i+1} - 2 p_i + p_{i-1}) / h
        let sub = vec![h / 6.0; n];
        let diag = vec![2.0 * h / 3.0; n];
        let sup = vec![h / 6.0; n];
        let mut moments = vec![Vector3::zeros(); n];
        for axis in 0..3 {
            let rhs: Vec<f64> = (0..n)
                .map(|i| {
                    let pm = pts[(i + n - 1) % n][axis];
                    let p0 = pts[i][axis];
                    let pp = pts[(i + 1) % n][axis];
                    (pp - 2.0 * p0 + pm) / h
                })
                .collect();
            let m = tridiag::solve_cyclic(&sub, &diag, &sup, &rhs)
                .expect("periodic spline system is diagonally dominant");
            for i in 0..n {
                moments[i][axis] = m[i];
            }
        }
        Self {
            points: pts.to_vec(),
            moments,
            h,
        }
    }

    fn locate(&self, u: f64) -> (usize, f64) {
        let n = self.points.len();
        let mut w = u.rem_euclid(TAU);
        if w >= TAU {
            w = 0.0;
        }
        let mut seg = (w / self.h) as usize;
        if seg >= n {
            seg = n - 1;
        }
        let xi = (w - seg as f64 * self.h) / self.h;
        (seg, xi.clamp(0.0, 1.0))
    }

    pub(crate) fn eval(&self, u: f64) -> Vector3<f64> {
        let n = self.points.len();
        let (i, xi) = self.locate(u);
        let (p0, p1) = (self.points[i], self.points[(i + 1) % n]);
        let (m0, m1) = (self.moments[i], self.moments[(i + 1) % n]);
        let a = 1.0 - xi;
        p0 * a
            + p1 * xi
            + (m0 * (a * a * a - a) + m1 * (xi * xi * xi - xi)) * (self.h * self.h / 6.0)
    }

    pub(crate) fn deriv(&self, u: f64) -> Vector3<f64> {
        let n = self.points.len();
        let (i, xi) = self.locate(u);
        let (p0, p1) = (self.points[i], self.points[(i + 1) % n]);
        let (m0, m1) = (self.moments[i], self.moments[(i + 1) % n]);
        let a = 1.0 - xi;
        (p1 - p0) / self.h
            + (m0 * (1.0 - 3.0 * a * a) + m1 * (3.0 * xi * xi - 1.0)) * (self.h / 6.0)
    }

    fn speed(&self, u: f64) -> f64 {
        self.deriv(u).norm()
    }

    /// Arclength of the sub-segment `[u0, u0 + frac*h]` of segment `i`.
    fn partial_arc(&self, seg: usize, frac: f64) -> f64 {
        let u0 = seg as f64 * self.h;
        let w = frac * self.h;
        GL_X.iter()
            .zip(GL_W.iter())
            .map(|(&x, &wt)| wt * self.speed(u0 + x * w))
            .sum::<f64>()
            * w
    }
}

/// Resamples `curve` to `m` nodes equally spaced in the arclength of its
/// periodic cubic spline interpolant. Node zero of the output sits at the
/// spline point `u = 0`.
pub(crate) fn resample_by_arclength(
    curve: &DiscreteCurve,
    m: usize,
) -> Result<DiscreteCurve, CurveError> {
    let n = curve.n();
    let sp = PeriodicSpline::interpolate(curve);

    let seg_arc: Vec<f64> = (0..n).map(|i| sp.partial_arc(i, 1.0)).collect();
    let mut cum = vec![0.0; n + 1];
    for i in 0..n {
        cum[i + 1] = cum[i] + seg_arc[i];
    }
    let total = cum[n];
    let guard = SPEED_GUARD_REL * total;
    if seg_arc.iter().any(|&a| a <= guard * sp.h) {
        return Err(CurveError::Degenerate {
            node: seg_arc
                .iter()
                .position(|&a| a <= guard * sp.h)
                .unwrap_or(0),
            speed: 0.0,
            guard,
        });
    }

    let mut out = Vec::with_capacity(m);
    let mut seg = 0usize;
    for j in 0..m {
        let target = total * j as f64 / m as f64;
        while seg + 1 < n && cum[seg + 1] < target {
            seg += 1;
        }
        // also allow stepping back when a previous iteration overshot
        while seg > 0 && cum[seg] > target {
            seg -= 1;
        }
        let want = target - cum[seg];
        // monotone bisection for frac in [0, 1] with arc(frac) = want
        let (mut lo, mut hi) = (0.0f64, 1.0f64);
        for _ in 0..52 {
            let mid = 0.5 * (lo + hi);
            if sp.partial_arc(seg, mid) < want {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let frac = 0.5 * (lo + hi);
        out.push(sp.eval((seg as f64 + frac) * sp.h));
    }
    DiscreteCurve::new(out)
}
