use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use super::poles::{cluster_poles, DiscretizationPlan, PoleSet};
use super::residues::{analytic_residues_pow, analytic_residues_pow_log, residue_at};
use crate::domain::{
    chebyshev_nodes, prototype_eval, PrototypeSpec, SamplePlan, SectorDomain, TargetKind,
};
use crate::error::{domain as invalid, Error, Result};
use crate::lsq::{build_ortho_basis, ls_solve, LsOptions, OrthoBasis, RankPolicy};

/// Relative distance to a pole below which evaluation is refused.
pub const POLE_GUARD: f64 = 1e-14;

/// Boundary samples per pole spacing on each ray of the least-squares set.
pub const SAMPLES_PER_POLE: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpMode {
    /// Quadrature poles beyond `C` kept explicitly; the polynomial only carries
    /// the low-degree remainder of the representation.
    AnalyticTail,
    /// Poles inside `C` only; a least-squares polynomial absorbs everything else.
    LsPoly,
    /// Same poles as `LsPoly`, but residues and polynomial are fitted jointly
    /// by least squares; the residue formulas are not used.
    LsFull,
}

/// Polynomial part: coefficients in an orthonormal basis.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyPart {
    pub basis: OrthoBasis,
    pub coeffs: Vec<Complex64>,
}

impl PolyPart {
    pub fn degree(&self) -> usize {
        self.basis.degree
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.basis.eval(&self.coeffs, z)
    }
}

/// `r(z) = Σ_j a_j/(z − p_j) + tail(z) + P(z)`.
#[derive(Debug, Clone)]
pub struct LightningApproximant {
    pub spec: PrototypeSpec,
    pub domain: SectorDomain,
    pub poles: PoleSet,
    pub residues: Vec<Complex64>,
    pub poly: PolyPart,
    pub mode: LpMode,
    /// Outer poles `|p| > C` (analytic-tail mode only), with their residues.
    pub tail_poles: Vec<f64>,
    pub tail_residues: Vec<Complex64>,
    /// Interpolation nodes used to regularize the tail terms.
    pub tail_nodes: Vec<f64>,
}

impl LightningApproximant {
    /// Reassembles an approximant from stored components.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        spec: PrototypeSpec,
        domain: SectorDomain,
        poles: PoleSet,
        residues: Vec<Complex64>,
        poly: PolyPart,
        mode: LpMode,
        tail_poles: Vec<f64>,
        tail_residues: Vec<Complex64>,
        tail_nodes: Vec<f64>,
    ) -> Result<Self> {
        if residues.len() != poles.len() {
            return Err(invalid("one residue per pole required"));
        }
        if tail_poles.len() != tail_residues.len() {
            return Err(invalid("one residue per tail pole required"));
        }
        if mode != LpMode::AnalyticTail && !tail_poles.is_empty() {
            return Err(invalid("least-squares mode carries no tail poles"));
        }
        if poly.coeffs.len() != poly.basis.degree + 1 {
            return Err(invalid("polynomial coefficient count must be degree + 1"));
        }
        Ok(Self {
            spec,
            domain,
            poles,
            residues,
            poly,
            mode,
            tail_poles,
            tail_residues,
            tail_nodes,
        })
    }

    pub fn n1(&self) -> usize {
        self.poles.n1
    }

    pub fn n2(&self) -> usize {
        self.poly.degree()
    }

    /// Total degree `N₁ + N₂ + 1`.
    pub fn total_degree(&self) -> usize {
        self.n1() + self.n2() + 1
    }

    /// Lightning part `Σ a_j/(z − p_j)` plus tail terms; fails next to a pole.
    pub fn rational_part(&self, z: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, (&p, &a)) in self.poles.poles.iter().zip(&self.residues).enumerate() {
            let d = z - p;
            if d.norm() <= POLE_GUARD * p.abs() {
                return Err(Error::PoleProximity { index: j });
            }
            acc += a / d;
        }
        if !self.tail_poles.is_empty() {
            acc += tail_sum(&self.tail_poles, &self.tail_residues, &self.tail_nodes, z).map_err(
                |i| Error::PoleProximity {
                    index: self.poles.len() + i,
                },
            )?;
        }
        Ok(acc)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.rational_part(z)? + self.poly.eval(z))
    }
}

/// `Σ r_j·z Π(z)/(p_j Π(p_j)(z − p_j))`: residue `r_j` at `p_j`, decaying like
/// the quadrature terms it stands for as `|p_j| → ∞`.
fn tail_sum(
    poles: &[f64],
    res: &[Complex64],
    nodes: &[f64],
    z: Complex64,
) -> core::result::Result<Complex64, usize> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, (&p, &r)) in poles.iter().zip(res).enumerate() {
        let d = z - p;
        if d.norm() <= POLE_GUARD * p.abs() {
            return Err(i);
        }
        let mut ratio = z / (p * d);
        for &s in nodes {
            ratio *= (z - s) / (p - s);
        }
        acc += r * ratio;
    }
    Ok(acc)
}

pub fn eval_approximant(approx: &LightningApproximant, z: Complex64) -> Result<Complex64> {
    approx.eval(z)
}

/// Boundary sample set for the polynomial fit: both rays graded like the poles,
/// extended a few spacings below the innermost pole, the tip, and `2N₂` arc points.
pub fn ls_samples(domain: &SectorDomain, poles: &PoleSet, n2: usize) -> Vec<Complex64> {
    let r = domain.radius();
    let root = (poles.n1 as f64).sqrt();
    let step = poles.sigma / (root * SAMPLES_PER_POLE as f64);
    let inner = poles.poles[poles.n1].abs().min(r);
    // grade from R down to a decade below the innermost pole
    let count = ((r / inner).ln() / step).ceil() as usize + (10f64.ln() / step).ceil() as usize;
    let mut radii: Vec<f64> = (0..=count).map(|k| r * (-step * k as f64).exp()).collect();
    radii.push(0.0);
    let half = domain.half_angle();
    let mut pts = Vec::with_capacity(2 * radii.len() + 2 * n2 + 2);
    for &rad in &radii {
        if half == 0.0 || rad == 0.0 {
            pts.push(Complex64::new(rad, 0.0));
        } else {
            let z = Complex64::from_polar(rad, half);
            pts.push(z);
            pts.push(z.conj());
        }
    }
    if half > 0.0 {
        let m = (2 * n2).max(2);
        for k in 1..m {
            let theta = half * (k as f64 / m as f64);
            let z = Complex64::from_polar(r, theta);
            pts.push(z);
            pts.push(z.conj());
        }
    } else {
        // cover the segment uniformly as well
        for k in 1..(2 * n2).max(2) {
            pts.push(Complex64::new(r * k as f64 / (2 * n2).max(2) as f64, 0.0));
        }
    }
    pts
}

fn basis_frame(points: &[Complex64]) -> (Complex64, f64) {
    let (lo, hi) = points
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), z| {
            (lo.min(z.re), hi.max(z.re))
        });
    let center = Complex64::new(0.5 * (lo + hi), 0.0);
    let scale = points
        .iter()
        .map(|z| (z - center).norm())
        .fold(0.0, f64::max);
    (center, scale)
}

/// Least-squares fit of `targets` in the basis, with real coefficients when
/// `real` is set.
pub(crate) fn fit_poly(
    basis: &OrthoBasis,
    targets: &[Complex64],
    real: bool,
) -> Result<Vec<Complex64>> {
    let rows: Vec<Vec<Complex64>> = basis
        .sample_points
        .iter()
        .map(|&z| basis.eval_basis(z))
        .collect();
    complex_ls(&rows, targets, real, LsOptions::default())
}

/// Solves `min Σ_i |targets_i − Σ_k c_k·rows_i[k]|²` through the stacked real
/// system `[Re; Im]`; with `real` the unknowns `c_k` are restricted to ℝ.
pub(crate) fn complex_ls(
    rows: &[Vec<Complex64>],
    targets: &[Complex64],
    real: bool,
    options: LsOptions,
) -> Result<Vec<Complex64>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for k in 0..n {
        columns.push(rows.iter().flat_map(|v| [v[k].re, v[k].im]).collect());
        if !real {
            // imaginary part of coefficient k multiplies i·column k
            columns.push(rows.iter().flat_map(|v| [-v[k].im, v[k].re]).collect());
        }
    }
    let rhs: Vec<f64> = targets.iter().flat_map(|t| [t.re, t.im]).collect();
    let sol = ls_solve(&columns, &rhs, options)?;
    Ok(if real {
        sol.coeffs.iter().map(|&c| Complex64::new(c, 0.0)).collect()
    } else {
        sol.coeffs
            .chunks(2)
            .map(|c| Complex64::new(c[0], c[1]))
            .collect()
    })
}

/// Builds the lightning-plus-polynomial approximant of `spec` on `domain`.
pub fn build_lp(
    spec: &PrototypeSpec,
    domain: &SectorDomain,
    sigma: f64,
    n1: usize,
    n2: usize,
    mode: LpMode,
    c: f64,
) -> Result<LightningApproximant> {
    let plan = DiscretizationPlan::new(spec, sigma, n1, c)?;
    if n2 < plan.ell {
        return Err(invalid("polynomial degree N2 must be at least ell"));
    }
    if mode == LpMode::AnalyticTail && !spec.g.is_one() {
        return Err(invalid("analytic-tail mode is defined for g = one only"));
    }
    let poles = cluster_poles(c, sigma, n1)?;
    let base = match spec.kind {
        TargetKind::Pow => analytic_residues_pow(&plan, &poles, spec.alpha)?,
        TargetKind::PowLog => analytic_residues_pow_log(&plan, &poles, spec.alpha)?,
    };
    // g(z)·a/(z−p) = g(p)·a/(z−p) + entire
    let residues: Vec<Complex64> = if spec.g.is_one() {
        base
    } else {
        base.iter()
            .zip(&poles.poles)
            .map(|(&a, &p)| a * spec.g.eval(Complex64::new(p, 0.0)))
            .collect()
    };
    let (tail_poles, tail_residues, tail_nodes) = match mode {
        LpMode::LsPoly | LpMode::LsFull => (Vec::new(), Vec::new(), Vec::new()),
        LpMode::AnalyticTail => {
            let tp = plan.tail_poles();
            let tr = tp
                .iter()
                .map(|&p| Complex64::new(residue_at(&plan, spec.kind, p), 0.0))
                .collect();
            (tp, tr, chebyshev_nodes(plan.ell, plan.delta))
        }
    };
    let samples = ls_samples(domain, &poles, n2);
    let (center, scale) = basis_frame(&samples);
    let real = spec.g.has_real_coefficients();
    let basis = build_ortho_basis(&samples, n2, center, scale, real)?;
    let placeholder = PolyPart {
        basis: basis.clone(),
        coeffs: alloc::vec![Complex64::new(0.0, 0.0); n2 + 1],
    };
    let mut approx = LightningApproximant::from_parts(
        *spec,
        *domain,
        poles,
        residues,
        placeholder,
        mode,
        tail_poles,
        tail_residues,
        tail_nodes,
    )?;
    if mode == LpMode::LsFull {
        fit_jointly(&mut approx, &samples, real)?;
        return Ok(approx);
    }
    let mut targets = Vec::with_capacity(samples.len());
    for &z in &samples {
        targets.push(prototype_eval(spec, z)? - approx.rational_part(z)?);
    }
    approx.poly.coeffs = fit_poly(&basis, &targets, real)?;
    Ok(approx)
}

/// Residues and polynomial coefficients from one least-squares system. Pole
/// columns of a tightly clustered set are numerically dependent, so the
/// solve keeps the leading pivoted columns instead of failing.
fn fit_jointly(approx: &mut LightningApproximant, samples: &[Complex64], real: bool) -> Result<()> {
    let n1 = approx.poles.len();
    let mut rows = Vec::with_capacity(samples.len());
    let mut targets = Vec::with_capacity(samples.len());
    for &z in samples {
        let mut row: Vec<Complex64> = approx.poles.poles.iter().map(|&p| 1.0 / (z - p)).collect();
        row.extend(approx.poly.basis.eval_basis(z));
        rows.push(row);
        targets.push(prototype_eval(&approx.spec, z)?);
    }
    let options = LsOptions {
        policy: RankPolicy::Truncate,
        rank_tol: None,
    };
    let coeffs = complex_ls(&rows, &targets, real, options)?;
    approx.residues = coeffs[..n1].to_vec();
    approx.poly.coeffs = coeffs[n1..].to_vec();
    Ok(())
}

/// `max |r(z) − f(z)|` over the plan and the point attaining it.
pub fn sup_error(approx: &LightningApproximant, plan: &SamplePlan) -> Result<(f64, Complex64)> {
    let mut best = (0.0, Complex64::new(0.0, 0.0));
    for &z in &plan.points {
        let e = (approx.eval(z)? - prototype_eval(&approx.spec, z)?).norm();
        if e > best.0 || e.is_nan() {
            best = (e, z);
        }
    }
    Ok(best)
}
