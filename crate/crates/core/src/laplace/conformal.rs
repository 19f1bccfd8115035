use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::polygon::CornerDomain;
use super::solve::{boundary_grid, eval_analytic, solve_laplace, LaplaceSolution};
use crate::error::{domain as invalid, Error, Result};

/// Approximate Riemann map `f̃(z) = z·exp(r_n(z) − i·shift)` onto the unit disk.
#[derive(Debug, Clone)]
pub struct ConformalMap {
    /// Solution of the Dirichlet problem with data `−log|z|`.
    pub solution: LaplaceSolution,
    /// `Im r_n(0)`, removed so that `f̃′(0) > 0`.
    pub normalization_shift: f64,
}

/// Builds the map from a Laplace solve with boundary data `−log|z|`.
pub fn conformal_map(domain: &CornerDomain, n1_per_corner: usize) -> Result<ConformalMap> {
    let zero = Complex64::new(0.0, 0.0);
    if domain.on_boundary(zero) {
        return Err(Error::Geometry("the origin lies on the boundary".into()));
    }
    if !domain.interior_contains(zero) {
        return Err(Error::Geometry("the origin must be interior".into()));
    }
    let solution = solve_laplace(domain, |z| -z.norm().ln(), n1_per_corner)?;
    let normalization_shift = solution.analytic_unchecked(zero).im;
    Ok(ConformalMap {
        solution,
        normalization_shift,
    })
}

impl ConformalMap {
    /// `g̃(z) = r_n(z) − i·shift`, the logarithm of `f̃(z)/z`.
    pub fn log_ratio(&self, z: Complex64) -> Result<Complex64> {
        Ok(eval_analytic(&self.solution, z)? - Complex64::new(0.0, self.normalization_shift))
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(z * self.log_ratio(z)?.exp())
    }

    /// `f̃′(0) = exp(g̃(0))`, real and positive by construction.
    pub fn derivative_at_zero(&self) -> Result<Complex64> {
        Ok(self.log_ratio(Complex64::new(0.0, 0.0))?.exp())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConformalReport {
    /// `max ||f̃| − 1|` over the doubled-density boundary grid.
    pub modulus_deviation: f64,
    /// `max ||f̃| − 1|` over the uniform check points.
    pub uniform_modulus_deviation: f64,
    /// Unwrapped `arg f̃` strictly increases along the check points.
    pub arg_monotone: bool,
    /// Total winding of `arg f̃` over one traversal, in units of `2π`.
    pub winding: f64,
    /// Smallest increment of `arg f̃` between consecutive check points.
    pub min_arg_step: f64,
    /// `f̃(w_k)` for every vertex.
    pub corner_images: Vec<Complex64>,
    /// `arg f̃(w_k)`, unwrapped from the image of vertex 0.
    pub corner_args: Vec<f64>,
    /// Largest deviation of consecutive corner arguments from `2π/m`.
    pub corner_spacing_deviation: f64,
    /// Corners with `φ_k > 1`, where the covering-sector choice `β_k = φ_k` is
    /// used outside its straight-sided justification.
    pub reentrant_corners: Vec<usize>,
}

/// Boundary-correspondence diagnostics: modulus, orientation, injectivity and
/// corner images.
pub fn conformal_checks(map: &ConformalMap, n_boundary: usize) -> Result<ConformalReport> {
    if n_boundary < 16 {
        return Err(invalid("at least 16 boundary check points required"));
    }
    let sol = &map.solution;
    let dom = &sol.domain;
    let m = dom.len();
    let perimeter = dom.perimeter();
    // uniform points per side, vertex first, proportional to side length
    let mut pts = Vec::with_capacity(n_boundary + m);
    for k in 0..m {
        let (a, b) = dom.side(k);
        let share = ((b - a).norm() / perimeter * n_boundary as f64)
            .round()
            .max(1.0) as usize;
        for i in 0..share {
            pts.push(a + (b - a) * (i as f64 / share as f64));
        }
    }
    let mut args = Vec::with_capacity(pts.len() + 1);
    let mut uniform_dev: f64 = 0.0;
    let mut prev: Option<f64> = None;
    for &z in pts.iter().chain(core::iter::once(&pts[0])) {
        let w = map.eval(z)?;
        uniform_dev = uniform_dev.max((w.norm() - 1.0).abs());
        let raw = w.arg();
        let unwrapped = match prev {
            None => raw,
            Some(p) => p + wrap(raw - p),
        };
        args.push(unwrapped);
        prev = Some(unwrapped);
    }
    let steps: Vec<f64> = args.windows(2).map(|w| w[1] - w[0]).collect();
    let min_arg_step = steps.iter().copied().fold(f64::INFINITY, f64::min);
    let winding = (args[args.len() - 1] - args[0]) / (2.0 * PI);
    let modulus_deviation = boundary_grid(dom, &sol.n1, 2)
        .iter()
        .map(|p| map.eval(p.z).map(|w| (w.norm() - 1.0).abs()))
        .try_fold(0.0f64, |acc, e| e.map(|e| acc.max(e)))?;
    let corner_images: Vec<Complex64> = dom
        .vertices
        .iter()
        .map(|&v| map.eval(v))
        .collect::<Result<_>>()?;
    let mut corner_args = Vec::with_capacity(m);
    for w in &corner_images {
        let raw = w.arg();
        corner_args.push(match corner_args.last() {
            None => raw,
            Some(&p) => p + turn(raw - p),
        });
    }
    let gap = 2.0 * PI / m as f64;
    let corner_spacing_deviation = (0..m)
        .map(|k| {
            let next = if k + 1 < m {
                corner_args[k + 1]
            } else {
                corner_args[0] + 2.0 * PI
            };
            (next - corner_args[k] - gap).abs()
        })
        .fold(0.0, f64::max);
    Ok(ConformalReport {
        modulus_deviation,
        uniform_modulus_deviation: uniform_dev,
        arg_monotone: min_arg_step > 0.0,
        winding,
        min_arg_step,
        corner_images,
        corner_args,
        corner_spacing_deviation,
        reentrant_corners: (0..m).filter(|&k| dom.phi[k] > 1.0).collect(),
    })
}

/// Representative of `x` in `[0, 2π)`.
fn turn(x: f64) -> f64 {
    let t = 2.0 * PI;
    let y = x - (x / t).floor() * t;
    if y >= t {
        0.0
    } else {
        y
    }
}

/// Representative of `x` in `(−π, π]`.
fn wrap(x: f64) -> f64 {
    let y = turn(x + PI) - PI;
    if y == -PI {
        PI
    } else {
        y
    }
}
