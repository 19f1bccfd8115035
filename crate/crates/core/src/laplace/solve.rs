use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::polygon::CornerDomain;
use crate::error::{domain as invalid, Error, Result};
use crate::lightning::PolyPart;
use crate::lsq::{build_ortho_basis, ls_solve, LsOptions, RankPolicy};

/// Graded boundary samples per pole spacing at the fit resolution.
pub const BOUNDARY_SAMPLES_PER_POLE: usize = 3;
/// Uniform samples in the interior of each side at the fit resolution.
pub const MID_SIDE_SAMPLES: usize = 10;

/// A boundary sample with its side index and arc-length coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub z: Complex64,
    pub side: usize,
    /// Arc length from vertex 0, counterclockwise.
    pub s: f64,
}

/// Least-squares harmonic solution `u = Re r_n` with `r_n` a lightning sum per
/// corner plus a polynomial.
#[derive(Debug, Clone)]
pub struct LaplaceSolution {
    pub domain: CornerDomain,
    pub n1: Vec<usize>,
    /// `w_k + d_k·C_k·e^{−σ_k j/√N₁ₖ}`, `j = 0..N₁ₖ`, per corner.
    pub corner_poles: Vec<Vec<Complex64>>,
    pub residues: Vec<Vec<Complex64>>,
    pub poly: PolyPart,
    /// Euclidean residual of the boundary least-squares system.
    pub fit_residual: f64,
    /// Max boundary misfit on the fit grid.
    pub boundary_error: f64,
    /// Max boundary misfit on the doubled-density grid.
    pub refined_error: f64,
    pub fit_points: Vec<BoundaryPoint>,
}

/// `ceil(1.3·Σ√N₁ₖ)`.
pub fn default_poly_degree(n1: &[usize]) -> usize {
    let s: f64 = n1.iter().map(|&n| (n as f64).sqrt()).sum();
    (1.3 * s).ceil() as usize
}

/// Poles of every corner, innermost last.
pub fn corner_poles(domain: &CornerDomain, n1: &[usize]) -> Result<Vec<Vec<Complex64>>> {
    if n1.len() != domain.len() {
        return Err(invalid("one pole count per corner required"));
    }
    let mut all = Vec::with_capacity(n1.len());
    for (k, &n) in n1.iter().enumerate() {
        let root = (n as f64).sqrt();
        let poles: Vec<Complex64> = (0..=n)
            .map(|j| {
                let dist = domain.c_k[k] * (-domain.sigma_k[k] * j as f64 / root).exp();
                domain.vertices[k] + domain.bisector_dir[k] * dist
            })
            .collect();
        if poles.iter().any(|&p| domain.contains(p)) {
            return Err(Error::Geometry("a pole falls inside the polygon".into()));
        }
        all.push(poles);
    }
    Ok(all)
}

/// Boundary grid clustered toward the corners; `refine = 2` halves every
/// spacing so the result contains the `refine = 1` grid.
pub fn boundary_grid(domain: &CornerDomain, n1: &[usize], refine: usize) -> Vec<BoundaryPoint> {
    let m = domain.len();
    let refine = refine.max(1);
    let mut out = Vec::new();
    let mut s0 = 0.0;
    for k in 0..m {
        let (a, b) = domain.side(k);
        let len = (b - a).norm();
        let u = (b - a) / len;
        let mut ts: Vec<f64> = (1..=MID_SIDE_SAMPLES * refine + refine - 1)
            .map(|i| len * i as f64 / (MID_SIDE_SAMPLES * refine + refine) as f64)
            .collect();
        for (corner, from_start) in [(k, true), ((k + 1) % m, false)] {
            let root = (n1[corner] as f64).sqrt();
            let sigma = domain.sigma_k[corner];
            let step = sigma / (root * (BOUNDARY_SAMPLES_PER_POLE * refine) as f64);
            let innermost = domain.c_k[corner] * (-sigma * root).exp();
            let floor = 0.1 * innermost;
            let count = ((0.5 * len / floor).ln() / step).floor() as usize;
            for i in 1..=count {
                let d = 0.5 * len * (-step * i as f64).exp();
                ts.push(if from_start { d } else { len - d });
            }
        }
        ts.sort_by(f64::total_cmp);
        ts.dedup();
        out.extend(ts.into_iter().map(|t| BoundaryPoint {
            z: a + u * t,
            side: k,
            s: s0 + t,
        }));
        s0 += len;
    }
    out
}

/// Solves the Dirichlet problem with equal pole counts at every corner.
pub fn solve_laplace<F: Fn(Complex64) -> f64>(
    domain: &CornerDomain,
    boundary_fn: F,
    n1_per_corner: usize,
) -> Result<LaplaceSolution> {
    solve_laplace_per_corner(domain, boundary_fn, &vec![n1_per_corner; domain.len()])
}

/// Solves the Dirichlet problem with the given pole count per corner.
pub fn solve_laplace_per_corner<F: Fn(Complex64) -> f64>(
    domain: &CornerDomain,
    boundary_fn: F,
    n1: &[usize],
) -> Result<LaplaceSolution> {
    if n1.len() != domain.len() {
        return Err(invalid("one pole count per corner required"));
    }
    if n1.iter().any(|&n| n < 4) {
        return Err(invalid("at least four poles per corner required"));
    }
    let poles = corner_poles(domain, n1)?;
    let n2 = default_poly_degree(n1);
    let grid = boundary_grid(domain, n1, 1);
    let samples: Vec<Complex64> = grid.iter().map(|p| p.z).collect();
    let center = domain.centroid();
    let scale = samples
        .iter()
        .map(|z| (z - center).norm())
        .fold(0.0, f64::max);
    let basis = build_ortho_basis(&samples, n2, center, scale, false)?;
    let n_poles: usize = poles.iter().map(Vec::len).sum();
    // Re(a/(z−p)) and Re(b·q) split into real unknowns; Im b₀ has a zero column
    let mut columns: Vec<Vec<f64>> =
        vec![Vec::with_capacity(samples.len()); 2 * n_poles + 2 * n2 + 1];
    for &z in &samples {
        let mut c = 0;
        for &p in poles.iter().flatten() {
            let v = 1.0 / (z - p);
            columns[c].push(v.re);
            columns[c + 1].push(-v.im);
            c += 2;
        }
        for (j, q) in basis.eval_basis(z).into_iter().enumerate() {
            columns[c].push(q.re);
            c += 1;
            if j > 0 {
                columns[c].push(-q.im);
                c += 1;
            }
        }
    }
    let rhs: Vec<f64> = samples.iter().map(|&z| boundary_fn(z)).collect();
    let opts = LsOptions {
        policy: RankPolicy::Truncate,
        rank_tol: None,
    };
    let sol = ls_solve(&columns, &rhs, opts)?;
    let x = &sol.coeffs;
    let mut residues = Vec::with_capacity(poles.len());
    let mut c = 0;
    for ps in &poles {
        residues.push(
            ps.iter()
                .enumerate()
                .map(|(i, _)| Complex64::new(x[c + 2 * i], x[c + 2 * i + 1]))
                .collect(),
        );
        c += 2 * ps.len();
    }
    let mut coeffs = vec![Complex64::new(x[c], 0.0)];
    c += 1;
    for _ in 1..=n2 {
        coeffs.push(Complex64::new(x[c], x[c + 1]));
        c += 2;
    }
    let mut out = LaplaceSolution {
        domain: domain.clone(),
        n1: n1.to_vec(),
        corner_poles: poles,
        residues,
        poly: PolyPart { basis, coeffs },
        fit_residual: sol.residual_norm,
        boundary_error: 0.0,
        refined_error: 0.0,
        fit_points: grid,
    };
    out.boundary_error = max_misfit(&out, &out.fit_points, &boundary_fn);
    let fine = boundary_grid(domain, n1, 2);
    out.refined_error = max_misfit(&out, &fine, &boundary_fn);
    Ok(out)
}

fn max_misfit<F: Fn(Complex64) -> f64>(
    sol: &LaplaceSolution,
    points: &[BoundaryPoint],
    boundary_fn: &F,
) -> f64 {
    points
        .iter()
        .map(|p| (sol.analytic_unchecked(p.z).re - boundary_fn(p.z)).abs())
        .fold(0.0, |acc, e| if e > acc || e.is_nan() { e } else { acc })
}

impl LaplaceSolution {
    pub(crate) fn analytic_unchecked(&self, z: Complex64) -> Complex64 {
        let mut acc = self.poly.eval(z);
        for (ps, rs) in self.corner_poles.iter().zip(&self.residues) {
            for (&p, &a) in ps.iter().zip(rs) {
                acc += a / (z - p);
            }
        }
        acc
    }

    /// Pole count `Σ (N₁ₖ + 1)`.
    pub fn pole_count(&self) -> usize {
        self.corner_poles.iter().map(Vec::len).sum()
    }

    /// Total degree of the rational function.
    pub fn total_degree(&self) -> usize {
        self.pole_count() + self.poly.degree()
    }

    /// `|Re r_n − boundary_fn|` along the doubled-density grid.
    pub fn error_profile<F: Fn(Complex64) -> f64>(&self, boundary_fn: F) -> Vec<(f64, f64)> {
        boundary_grid(&self.domain, &self.n1, 2)
            .iter()
            .map(|p| {
                (
                    p.s,
                    (self.analytic_unchecked(p.z).re - boundary_fn(p.z)).abs(),
                )
            })
            .collect()
    }
}

/// `r_n(z)` for `z` in the closed polygon.
pub fn eval_analytic(sol: &LaplaceSolution, z: Complex64) -> Result<Complex64> {
    if !sol.domain.contains(z) {
        return Err(invalid("evaluation point lies outside the polygon"));
    }
    Ok(sol.analytic_unchecked(z))
}

/// `Re r_n(z)`.
pub fn eval_harmonic(sol: &LaplaceSolution, z: Complex64) -> Result<f64> {
    Ok(eval_analytic(sol, z)?.re)
}

/// Max boundary misfit on the doubled-density grid.
pub fn refine_check<F: Fn(Complex64) -> f64>(sol: &LaplaceSolution, boundary_fn: F) -> f64 {
    let fine = boundary_grid(&sol.domain, &sol.n1, 2);
    max_misfit(sol, &fine, &boundary_fn)
}

#[cfg(test)]
mod tests {
    use super::super::polygon::make_polygon;
    use super::*;

    fn square() -> CornerDomain {
        make_polygon(&[
            Complex64::new(-1.0, -1.0),
            Complex64::new(1.0, -1.0),
            Complex64::new(1.0, 1.0),
            Complex64::new(-1.0, 1.0),
        ])
        .unwrap()
    }

    #[test]
    fn refined_grid_contains_fit_grid() {
        let d = square();
        let n1 = [9; 4];
        let coarse = boundary_grid(&d, &n1, 1);
        let fine = boundary_grid(&d, &n1, 2);
        for p in &coarse {
            assert!(fine.iter().any(|q| (q.z - p.z).norm() < 1e-15));
        }
        assert!(coarse.windows(2).all(|w| w[1].s > w[0].s));
    }

    #[test]
    fn harmonic_polynomial_is_reproduced() {
        let d = square();
        let f = |z: Complex64| (z * z * z).re;
        let sol = solve_laplace(&d, f, 8).unwrap();
        assert!(sol.boundary_error <= 1e-10, "{}", sol.boundary_error);
        let z = Complex64::new(0.2, 0.3);
        assert!((eval_harmonic(&sol, z).unwrap() - f(z)).abs() < 1e-10);
        assert!(eval_harmonic(&sol, Complex64::new(2.0, 0.0)).is_err());
    }

    #[test]
    fn small_pole_count_rejected_or_reported() {
        let d = square();
        assert!(solve_laplace(&d, |z| z.re, 3).is_err());
        let sol = solve_laplace(&d, |z| -z.norm().ln(), 4).unwrap();
        assert!(sol.refined_error.is_finite());
    }
}
