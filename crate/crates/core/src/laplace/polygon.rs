use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Relative tolerance for collinearity and on-boundary decisions.
const GEOMETRY_TOL: f64 = 1e-12;

/// Simple counterclockwise polygon with the per-corner lightning parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CornerDomain {
    pub vertices: Vec<Complex64>,
    /// Interior angle of corner `k` is `phi[k]·π`.
    pub phi: Vec<f64>,
    /// Singularity exponents `1/φ_k`.
    pub alpha_k: Vec<f64>,
    /// Covering-sector fractions; equal to `φ_k` for straight sides.
    pub beta_k: Vec<f64>,
    /// Clustering parameters `π√(2−β_k)/√α_k`.
    pub sigma_k: Vec<f64>,
    /// Unit vectors along the exterior angle bisectors.
    pub bisector_dir: Vec<Complex64>,
    /// Outermost pole distance per corner: half the shorter adjacent side.
    pub c_k: Vec<f64>,
}

fn geometry(msg: &str) -> Error {
    Error::Geometry(msg.into())
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Proper or touching intersection of the closed segments `[a, b]` and `[c, d]`.
fn segments_meet(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> bool {
    let orient = |p: Complex64, q: Complex64, r: Complex64| cross(q - p, r - p);
    let on = |p: Complex64, q: Complex64, r: Complex64| {
        r.re >= p.re.min(q.re)
            && r.re <= p.re.max(q.re)
            && r.im >= p.im.min(q.im)
            && r.im <= p.im.max(q.im)
    };
    let (d1, d2) = (orient(c, d, a), orient(c, d, b));
    let (d3, d4) = (orient(a, b, c), orient(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    (d1 == 0.0 && on(c, d, a))
        || (d2 == 0.0 && on(c, d, b))
        || (d3 == 0.0 && on(a, b, c))
        || (d4 == 0.0 && on(a, b, d))
}

/// Validates the polygon and derives angles, exponents and bisectors.
pub fn make_polygon(vertices: &[Complex64]) -> Result<CornerDomain> {
    let m = vertices.len();
    if m < 3 {
        return Err(geometry("a polygon needs at least three vertices"));
    }
    if vertices
        .iter()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(geometry("vertices must be finite"));
    }
    let area2: f64 = (0..m)
        .map(|k| cross(vertices[k], vertices[(k + 1) % m]))
        .sum();
    if !(area2 > 0.0) {
        return Err(geometry("vertices must be listed counterclockwise"));
    }
    let edge = |k: usize| vertices[(k + 1) % m] - vertices[k];
    for k in 0..m {
        let (e_in, e_out) = (edge((k + m - 1) % m), edge(k));
        if e_out.norm() == 0.0 {
            return Err(geometry("repeated vertex"));
        }
        if cross(e_in, e_out).abs() <= GEOMETRY_TOL * e_in.norm() * e_out.norm() {
            return Err(geometry("three consecutive vertices are collinear"));
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            let adjacent = j == i + 1 || (i == 0 && j == m - 1);
            if !adjacent
                && segments_meet(
                    vertices[i],
                    vertices[(i + 1) % m],
                    vertices[j],
                    vertices[(j + 1) % m],
                )
            {
                return Err(geometry("polygon sides intersect"));
            }
        }
    }
    let mut phi = Vec::with_capacity(m);
    let mut bisector_dir = Vec::with_capacity(m);
    let mut c_k = Vec::with_capacity(m);
    for k in 0..m {
        let (e_in, e_out) = (edge((k + m - 1) % m), edge(k));
        // turning angle at a left-hand interior
        let turn = (e_out / e_in).arg();
        let f = 1.0 - turn / PI;
        let b = e_out / e_out.norm();
        // rotating the outgoing side by half the interior angle points inward
        bisector_dir.push(-b * Complex64::from_polar(1.0, 0.5 * f * PI));
        phi.push(f);
        c_k.push(0.5 * e_in.norm().min(e_out.norm()));
    }
    let alpha_k: Vec<f64> = phi.iter().map(|f| 1.0 / f).collect();
    let beta_k = phi.clone();
    let sigma_k = alpha_k
        .iter()
        .zip(&beta_k)
        .map(|(a, b)| PI * (2.0 - b).sqrt() / a.sqrt())
        .collect();
    Ok(CornerDomain {
        vertices: vertices.to_vec(),
        phi,
        alpha_k,
        beta_k,
        sigma_k,
        bisector_dir,
        c_k,
    })
}

impl CornerDomain {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Start and end of side `k`, running from vertex `k` to vertex `k+1`.
    pub fn side(&self, k: usize) -> (Complex64, Complex64) {
        let m = self.len();
        (self.vertices[k % m], self.vertices[(k + 1) % m])
    }

    pub fn perimeter(&self) -> f64 {
        (0..self.len())
            .map(|k| {
                let (a, b) = self.side(k);
                (b - a).norm()
            })
            .sum()
    }

    pub fn centroid(&self) -> Complex64 {
        self.vertices.iter().sum::<Complex64>() / self.len() as f64
    }

    fn diameter(&self) -> f64 {
        let c = self.centroid();
        self.vertices
            .iter()
            .map(|v| (v - c).norm())
            .fold(0.0, f64::max)
    }

    /// Distance from `z` to the boundary.
    pub fn boundary_distance(&self, z: Complex64) -> f64 {
        (0..self.len())
            .map(|k| {
                let (a, b) = self.side(k);
                let d = b - a;
                let t = (((z - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0);
                (z - (a + d * t)).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// True when `z` lies on the boundary up to a relative tolerance.
    pub fn on_boundary(&self, z: Complex64) -> bool {
        self.boundary_distance(z) <= GEOMETRY_TOL * self.diameter()
    }

    /// Open interior by the crossing rule.
    pub fn interior_contains(&self, z: Complex64) -> bool {
        if self.on_boundary(z) {
            return false;
        }
        let mut inside = false;
        for k in 0..self.len() {
            let (a, b) = self.side(k);
            if (a.im > z.im) != (b.im > z.im) {
                let x = a.re + (z.im - a.im) * (b.re - a.re) / (b.im - a.im);
                if x > z.re {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Closed polygon membership.
    pub fn contains(&self, z: Complex64) -> bool {
        self.on_boundary(z) || self.interior_contains(z)
    }
}
