//! Discrete closed space curves and their Frenet data.
//!
//! A curve is a closed polyline of `N` points sampled at the uniform parameter
//! grid `u_i = 2*pi*i/N`; the point after index `N-1` is index `0` (nothing is
//! stored twice). Derivatives in `u` are periodic central finite differences;
//! arclength derivatives use the chain rule `d/ds = (1/v) d/du` applied to the
//! discrete fields.

use nalgebra::Vector3;
use std::f64::consts::TAU;
use thiserror::Error;

use crate::spline;

/// Minimum node count accepted anywhere in the crate.
pub const MIN_NODES: usize = 16;

/// Relative speed guard: a node with `v <= SPEED_GUARD_REL * L` is treated as a
/// degenerate (non-immersed) sample.
pub const SPEED_GUARD_REL: f64 = 1e-12;

/// Relative torsion guard: torsion is flagged invalid where
/// `kappa <= FRENET_GUARD_REL * (2*pi / L)`.
pub const FRENET_GUARD_REL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("closed curve needs at least {MIN_NODES} nodes, got {0}")]
    TooFewNodes(usize),
    #[error("non-finite coordinate at node {0}")]
    NonFinite(usize),
    #[error("coincident consecutive points at node {0}")]
    CoincidentPoints(usize),
    #[error("degenerate curve: speed {speed:.3e} at node {node} is below guard {guard:.3e}")]
    Degenerate { node: usize, speed: f64, guard: f64 },
    #[error("derivative order must be 1, 2 or 3, got {0}")]
    BadOrder(u32),
    #[error("resampling needs at least {MIN_NODES} output nodes, got {0}")]
    BadResampleCount(usize),
}

/// Closed polyline sample of a space curve on the uniform parameter grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve {
    points: Vec<Vector3<f64>>,
}

impl DiscreteCurve {
    pub fn new(points: Vec<Vector3<f64>>) -> Result<Self, CurveError> {
        if points.len() < MIN_NODES {
            return Err(CurveError::TooFewNodes(points.len()));
        }
        for (i, p) in points.iter().enumerate() {
            if !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) {
                return Err(CurveError::NonFinite(i));
            }
        }
        let n = points.len();
        for i in 0..n {
            if (points[(i + 1) % n] - points[i]).norm() == 0.0 {
                return Err(CurveError::CoincidentPoints(i));
            }
        }
        Ok(Self { points })
    }

    /// Samples `f(u_i)` on the uniform grid `u_i = 2*pi*i/n`.
    pub fn from_fn(n: usize, f: impl Fn(f64) -> Vector3<f64>) -> Result<Self, CurveError> {
        let pts = (0..n).map(|i| f(TAU * i as f64 / n as f64)).collect();
        Self::new(pts)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    /// Parameter spacing `2*pi/N`.
    pub fn du(&self) -> f64 {
        TAU / self.points.len() as f64
    }

    pub fn points(&self) -> &[Vector3<f64>] {
        &self.points
    }

    pub fn point(&self, i: usize) -> Vector3<f64> {
        self.points[i]
    }

    /// Shortest chord between consecutive nodes.
    pub fn min_chord(&self) -> f64 {
        let n = self.points.len();
        (0..n)
            .map(|i| (self.points[(i + 1) % n] - self.points[i]).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Applies a pointwise map and revalidates the result.
    pub fn map_points(
        &self,
        f: impl Fn(Vector3<f64>) -> Vector3<f64>,
    ) -> Result<Self, CurveError> {
        Self::new(self.points.iter().map(|&p| f(p)).collect())
    }
}

// -- periodic finite-difference stencils -------------------------------------
//
// gamma_u uses the 6th-order 7-point stencil, gamma_uu the 4th-order 5-point,
// gamma_uuu the 4th-order 7-point. Torsion needs third derivatives; lower-order
// first-derivative stencils leave a visible O(h^4) bias in the speed field that
// dominates the length quadrature on coarse grids.

const D1_W: [(isize, f64); 6] = [
    (-3, -1.0 / 60.0),
    (-2, 3.0 / 20.0),
    (-1, -3.0 / 4.0),
    (1, 3.0 / 4.0),
    (2, -3.0 / 20.0),
    (3, 1.0 / 60.0),
];
const D2_W: [(isize, f64); 5] = [
    (-2, -1.0 / 12.0),
    (-1, 4.0 / 3.0),
    (0, -5.0 / 2.0),
    (1, 4.0 / 3.0),
    (2, -1.0 / 12.0),
];
const D3_W: [(isize, f64); 6] = [
    (-3, 1.0 / 8.0),
    (-2, -1.0),
    (-1, 13.0 / 8.0),
    (1, -13.0 / 8.0),
    (2, 1.0),
    (3, -1.0 / 8.0),
];

fn stencil_vec(points: &[Vector3<f64>], weights: &[(isize, f64)], scale: f64) -> Vec<Vector3<f64>> {
    let n = points.len() as isize;
    (0..n)
        .map(|i| {
            let mut acc = Vector3::zeros();
            for &(off, w) in weights {
                acc += w * points[(i + off).rem_euclid(n) as usize];
            }
            acc * scale
        })
        .collect()
}

pub(crate) fn stencil_scalar(values: &[f64], weights: &[(isize, f64)], scale: f64) -> Vec<f64> {
    let n = values.len() as isize;
    (0..n)
        .map(|i| {
            let mut acc = 0.0;
            for &(off, w) in weights {
                acc += w * values[(i + off).rem_euclid(n) as usize];
            }
            acc * scale
        })
        .collect()
}

/// First parameter derivative of the point field (6th-order stencil).
pub(crate) fn deriv1(points: &[Vector3<f64>], du: f64) -> Vec<Vector3<f64>> {
    stencil_vec(points, &D1_W, 1.0 / du)
}

/// Second parameter derivative (4th-order 5-point stencil).
pub(crate) fn deriv2(points: &[Vector3<f64>], du: f64) -> Vec<Vector3<f64>> {
    stencil_vec(points, &D2_W, 1.0 / (du * du))
}

fn deriv3(points: &[Vector3<f64>], du: f64) -> Vec<Vector3<f64>> {
    stencil_vec(points, &D3_W, 1.0 / (du * du * du))
}

/// First derivative of a periodic scalar field on the same grid.
pub(crate) fn scalar_deriv1(values: &[f64], du: f64) -> Vec<f64> {
    stencil_scalar(values, &D1_W, 1.0 / du)
}

/// Per-node parameter derivatives `d^k gamma / du^k` for `k` in `{1, 2, 3}`.
pub fn derivatives(curve: &DiscreteCurve, order: u32) -> Result<Vec<Vector3<f64>>, CurveError> {
    let du = curve.du();
    match order {
        1 => Ok(deriv1(curve.points(), du)),
        2 => Ok(deriv2(curve.points(), du)),
        3 => Ok(deriv3(curve.points(), du)),
        other => Err(CurveError::BadOrder(other)),
    }
}

/// Per-node Frenet data of a discrete curve.
///
/// `tau`, `normal` and `binormal` are only meaningful where `tau_valid` is
/// `true`; at guarded nodes (`kappa <= eps_frenet`) they are stored as zero.
#[derive(Debug, Clone)]
pub struct FrenetField {
    pub speed: Vec<f64>,
    pub kappa: Vec<f64>,
    pub tau: Vec<f64>,
    pub tau_valid: Vec<bool>,
    pub kappa_s: Vec<f64>,
    pub kappa_ss: Vec<f64>,
    pub tau_s: Vec<f64>,
    pub tau_ss: Vec<f64>,
    pub tangent: Vec<Vector3<f64>>,
    pub normal: Vec<Vector3<f64>>,
    pub binormal: Vec<Vector3<f64>>,
    /// Curvature guard below which torsion is flagged invalid.
    pub eps_frenet: f64,
    /// Total length by the speed quadrature, cached for convenience.
    pub length: f64,
}

impl FrenetField {
    pub fn n(&self) -> usize {
        self.speed.len()
    }

    pub fn max_kappa(&self) -> f64 {
        self.kappa.iter().copied().fold(0.0, f64::max)
    }

    pub fn min_kappa(&self) -> f64 {
        self.kappa.iter().copied().fold(f64::INFINITY, f64::min)
    }

    /// Minimum of tau over valid nodes; `None` when no node is valid.
    pub fn min_tau(&self) -> Option<f64> {
        self.valid_taus().fold(None, |m, t| {
            Some(m.map_or(t, |m: f64| m.min(t)))
        })
    }

    pub fn max_tau(&self) -> Option<f64> {
        self.valid_taus().fold(None, |m, t| {
            Some(m.map_or(t, |m: f64| m.max(t)))
        })
    }

    pub fn has_invalid_tau(&self) -> bool {
        self.tau_valid.iter().any(|v| !v)
    }

    fn valid_taus(&self) -> impl Iterator<Item = f64> + '_ {
        self.tau
            .iter()
            .zip(self.tau_valid.iter())
            .filter(|(_, &v)| v)
            .map(|(&t, _)| t)
    }
}

/// Computes the full Frenet field: speed, curvature, torsion, frame vectors and
/// first/second arclength derivatives of curvature and torsion.
pub fn frenet(curve: &DiscreteCurve) -> Result<FrenetField, CurveError> {
    let n = curve.n();
    let du = curve.du();
    let g1 = deriv1(curve.points(), du);
    let g2 = deriv2(curve.points(), du);
    let g3 = deriv3(curve.points(), du);

    let speed: Vec<f64> = g1.iter().map(|d| d.norm()).collect();
    let length: f64 = speed.iter().sum::<f64>() * du;
    let eps_speed = SPEED_GUARD_REL * length;
    if let Some((node, &v)) = speed
        .iter()
        .enumerate()
        .find(|(_, &v)| v <= eps_speed)
    {
        return Err(CurveError::Degenerate {
            node,
            speed: v,
            guard: eps_speed,
        });
    }

    let eps_frenet = FRENET_GUARD_REL * TAU / length;

    let mut kappa = vec![0.0; n];
    let mut tau = vec![0.0; n];
    let mut tau_valid = vec![false; n];
    let mut tangent = vec![Vector3::zeros(); n];
    let mut normal = vec![Vector3::zeros(); n];
    let mut binormal = vec![Vector3::zeros(); n];

    for i in 0..n {
        let v = speed[i];
        let cross = g1[i].cross(&g2[i]);
        let cn = cross.norm();
        kappa[i] = cn / (v * v * v);
        tangent[i] = g1[i] / v;
        if kappa[i] > eps_frenet {
            tau[i] = cross.dot(&g3[i]) / (cn * cn);
            tau_valid[i] = true;
            binormal[i] = cross / cn;
            normal[i] = binormal[i].cross(&tangent[i]);
        }
    }

    let over_v = |f: Vec<f64>| -> Vec<f64> {
        f.into_iter().zip(speed.iter()).map(|(x, &v)| x / v).collect()
    };
    let kappa_s = over_v(scalar_deriv1(&kappa, du));
    let kappa_ss = over_v(scalar_deriv1(&kappa_s, du));
    let tau_s = over_v(scalar_deriv1(&tau, du));
    let tau_ss = over_v(scalar_deriv1(&tau_s, du));

    Ok(FrenetField {
        speed,
        kappa,
        tau,
        tau_valid,
        kappa_s,
        kappa_ss,
        tau_s,
        tau_ss,
        tangent,
        normal,
        binormal,
        eps_frenet,
        length,
    })
}

/// Total length by the speed quadrature `L = sum v_i * (2*pi/N)`.
pub fn total_length(curve: &DiscreteCurve) -> f64 {
    let du = curve.du();
    deriv1(curve.points(), du)
        .iter()
        .map(|d| d.norm())
        .sum::<f64>()
        * du
}

/// Resamples the curve to `m` nodes at equal arclength spacing using a
/// periodic cubic spline interpolant of the input nodes.
pub fn resample_uniform(curve: &DiscreteCurve, m: usize) -> Result<DiscreteCurve, CurveError> {
    if m < MIN_NODES {
        return Err(CurveError::BadResampleCount(m));
    }
    spline::resample_by_arclength(curve, m)
}

/// Indices of nodes whose curvature lies below `tol` (the discrete
/// operationalization of an inflection point).
pub fn inflection_points(field: &FrenetField, tol: f64) -> Vec<usize> {
    assert!(tol > 0.0, "inflection tolerance must be positive");
    field
        .kappa
        .iter()
        .enumerate()
        .filter(|(_, &k)| k < tol)
        .map(|(i, _)| i)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle(r: f64, n: usize) -> DiscreteCurve {
        DiscreteCurve::from_fn(n, |u| Vector3::new(r * u.cos(), r * u.sin(), 0.0)).unwrap()
    }

    #[test]
    fn rejects_too_few_nodes() {
        let pts = (0..8)
            .map(|i| Vector3::new(i as f64, 0.0, 0.0))
            .collect::<Vec<_>>();
        assert!(matches!(
            DiscreteCurve::new(pts),
            Err(CurveError::TooFewNodes(8))
        ));
    }

    #[test]
    fn rejects_non_finite() {
        let mut pts: Vec<Vector3<f64>> = (0..32)
            .map(|i| Vector3::new(i as f64, 1.0, 0.0))
            .collect();
        pts[7].y = f64::NAN;
        assert!(matches!(
            DiscreteCurve::new(pts),
            Err(CurveError::NonFinite(7))
        ));
    }

    #[test]
    fn rejects_coincident_neighbors() {
        let mut pts: Vec<Vector3<f64>> = (0..32)
            .map(|i| Vector3::new((i as f64 * 0.1).cos(), (i as f64 * 0.1).sin(), 0.0))
            .collect();
        pts[5] = pts[4];
        assert!(matches!(
            DiscreteCurve::new(pts),
            Err(CurveError::CoincidentPoints(4))
        ));
    }

    #[test]
    fn bad_derivative_order() {
        let c = circle(1.0, 64);
        assert!(matches!(derivatives(&c, 4), Err(CurveError::BadOrder(4))));
        assert!(matches!(derivatives(&c, 0), Err(CurveError::BadOrder(0))));
    }

    #[test]
    fn circle_frenet_values() {
        let c = circle(2.0, 256);
        let f = frenet(&c).unwrap();
        for i in 0..c.n() {
            assert!((f.speed[i] - 2.0).abs() < 1e-6);
            assert!((f.kappa[i] - 0.5).abs() < 1e-6);
            assert!(f.tau_valid[i]);
            assert!(f.tau[i].abs() < 1e-6);
        }
        assert!((f.length - 4.0 * std::f64::consts::PI).abs() < 1e-8);
    }

    #[test]
    fn unit_circle_length_tight() {
        let c = circle(1.0, 256);
        assert!((total_length(&c) - TAU).abs() < 1e-8);
    }

    #[test]
    fn frame_orthonormal_on_nonplanar_curve() {
        let c = DiscreteCurve::from_fn(512, |u| {
            Vector3::new(u.cos(), u.sin(), 0.25 * (2.0 * u).sin())
        })
        .unwrap();
        let f = frenet(&c).unwrap();
        for i in 0..c.n() {
            assert!(f.tau_valid[i]);
            let (t, nv, b) = (f.tangent[i], f.normal[i], f.binormal[i]);
            assert!((t.norm() - 1.0).abs() < 1e-10);
            assert!((nv.norm() - 1.0).abs() < 1e-10);
            assert!((b.norm() - 1.0).abs() < 1e-10);
            assert!(t.dot(&nv).abs() < 1e-10);
            assert!(t.dot(&b).abs() < 1e-10);
            assert!(nv.dot(&b).abs() < 1e-10);
        }
    }

    #[test]
    fn degenerate_speed_detected() {
        // nodes 0..16 cluster within 1e-16 of the origin (distinct but nearly
        // stationary), the rest sweep an arc of size one
        let pts: Vec<Vector3<f64>> = (0..32)
            .map(|i| {
                if i < 16 {
                    Vector3::new(i as f64 * 1e-18, 0.0, 0.0)
                } else {
                    let a = std::f64::consts::PI * (i - 15) as f64 / 17.0;
                    Vector3::new(a.sin(), 1.0 - a.cos(), 0.0)
                }
            })
            .collect();
        let c = DiscreteCurve::new(pts).unwrap();
        assert!(matches!(frenet(&c), Err(CurveError::Degenerate { .. })));
    }

    #[test]
    fn inflection_threshold_boundary() {
        let c = circle(1.0, 64); // kappa = 1 everywhere
        let f = frenet(&c).unwrap();
        assert!(inflection_points(&f, 1e-3).is_empty());
        // min kappa exactly 2*tol => still empty
        assert!(inflection_points(&f, 0.5).is_empty());
        // tol above kappa => every node reported
        assert_eq!(inflection_points(&f, 1.5).len(), 64);
    }

    #[test]
    fn resample_rejects_small_target() {
        let c = circle(1.0, 64);
        assert!(matches!(
            resample_uniform(&c, 8),
            Err(CurveError::BadResampleCount(8))
        ));
    }
}
