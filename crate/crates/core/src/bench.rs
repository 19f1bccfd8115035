//! Convergence sweeps, root-exponential rate fits and the predictive error
//! budget of the lightning scheme on sectors.

use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};
use core::time::Duration;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::domain::{default_plan, make_sector, PrototypeSpec, SectorDomain};
use crate::error::{domain as invalid, Error, Result};
use crate::lightning::{build_lp, default_n2, sigma_opt, sup_error, LpMode};
use crate::math::linear_fit;

/// Default lower end of the fit window.
pub const ERR_FLOOR: f64 = 1e-11;
/// Default upper end of the fit window.
pub const ERR_CAP: f64 = 1e-2;
/// Relative distance from `σ_opt` still classified as optimal.
pub const REGIME_TOL: f64 = 0.01;
/// Outermost pole magnitude of the benchmark sweeps, relative to the radius.
pub const BENCH_POLE_SCALE: f64 = 2.0;

/// One cell of a convergence sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRecord {
    /// Total degree `N₁ + N₂ + 1`.
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub sigma: f64,
    pub alpha: f64,
    pub beta: f64,
    pub sup_err: f64,
    pub argmax: Complex64,
    /// Filled in by callers that can read a clock; zero otherwise.
    pub wall_time: Duration,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Sub,
    Opt,
    Super,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::Sub => "SUB",
            Regime::Opt => "OPT",
            Regime::Super => "SUPER",
        }
    }
}

/// Least-squares line through `(√N, ln err)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateModel {
    pub slope: f64,
    pub intercept: f64,
    pub regime: Regime,
    pub predicted_slope: f64,
    pub points_used: usize,
}

impl RateModel {
    /// `|slope − predicted| ≤ rel·|predicted|`.
    pub fn within(&self, rel: f64) -> bool {
        (self.slope - self.predicted_slope).abs() <= rel * self.predicted_slope.abs()
    }

    /// `slope / predicted`.
    pub fn ratio(&self) -> f64 {
        self.slope / self.predicted_slope
    }
}

/// Construction choices shared by all cells of a sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSetup {
    pub mode: LpMode,
    /// Outermost pole magnitude `C`; the sector radius is 1.
    pub c: f64,
}

impl Default for SweepSetup {
    fn default() -> Self {
        Self {
            mode: LpMode::LsFull,
            c: BENCH_POLE_SCALE,
        }
    }
}

/// Builds one approximant with `N₂ = ceil(1.3√N₁)` and measures it on the
/// default plan of the unit-radius sector.
pub fn run_cell(
    spec: &PrototypeSpec,
    domain: &SectorDomain,
    sigma: f64,
    n1: usize,
    setup: SweepSetup,
) -> Result<ConvergenceRecord> {
    let n2 = default_n2(n1).max(spec.ell());
    let approx = build_lp(spec, domain, sigma, n1, n2, setup.mode, setup.c)?;
    let (sup_err, argmax) = sup_error(&approx, &default_plan(domain))?;
    Ok(ConvergenceRecord {
        n: n1 + n2 + 1,
        n1,
        n2,
        sigma,
        alpha: spec.alpha,
        beta: domain.beta(),
        sup_err,
        argmax,
        wall_time: Duration::ZERO,
    })
}

/// Sweep over increasing `N₁`, one fresh build per cell. Errors are returned
/// together with the failing `N₁`.
pub fn sweep_prototype(
    spec: &PrototypeSpec,
    beta: f64,
    sigma: f64,
    n1_list: &[usize],
    setup: SweepSetup,
) -> core::result::Result<Vec<ConvergenceRecord>, (usize, Error)> {
    if n1_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err((0, invalid("N1 list must be increasing")));
    }
    let domain = make_sector(beta, 1.0).map_err(|e| (0, e))?;
    n1_list
        .iter()
        .map(|&n1| run_cell(spec, &domain, sigma, n1, setup).map_err(|e| (n1, e)))
        .collect()
}

/// Regime of `σ` relative to `σ_opt(α, β)`.
pub fn classify(alpha: f64, beta: f64, sigma: f64) -> Result<Regime> {
    let opt = sigma_opt(alpha, beta)?;
    Ok(if (sigma / opt - 1.0).abs() <= REGIME_TOL {
        Regime::Opt
    } else if sigma < opt {
        Regime::Sub
    } else {
        Regime::Super
    })
}

/// Predicted `d ln err / d√N` for the regime of `σ`.
pub fn predicted_slope(alpha: f64, beta: f64, sigma: f64) -> Result<(Regime, f64)> {
    let regime = classify(alpha, beta, sigma)?;
    let slope = match regime {
        Regime::Sub => -sigma * alpha,
        Regime::Opt => -PI * ((2.0 - beta) * alpha).sqrt(),
        Regime::Super => -(2.0 - beta) * PI * PI / sigma,
    };
    Ok((regime, slope))
}

/// Ordinary least squares of `ln sup_err` on `√N` over the records whose error
/// lies in `[err_floor, err_cap]`.
pub fn fit_rate(records: &[ConvergenceRecord], err_floor: f64, err_cap: f64) -> Result<RateModel> {
    let first = records.first().ok_or(Error::Fit {
        usable: 0,
        required: 3,
    })?;
    let same = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
    if records.iter().any(|r| {
        !same(r.alpha, first.alpha) || !same(r.beta, first.beta) || !same(r.sigma, first.sigma)
    }) {
        return Err(invalid(
            "records of one fit must share alpha, beta and sigma",
        ));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = records
        .iter()
        .filter(|r| r.sup_err >= err_floor && r.sup_err <= err_cap)
        .map(|r| ((r.n as f64).sqrt(), r.sup_err.ln()))
        .unzip();
    if xs.len() < 3 {
        return Err(Error::Fit {
            usable: xs.len(),
            required: 3,
        });
    }
    let (slope, intercept) = linear_fit(&xs, &ys);
    let (regime, predicted) = predicted_slope(first.alpha, first.beta, first.sigma)?;
    Ok(RateModel {
        slope,
        intercept,
        regime,
        predicted_slope: predicted,
        points_used: xs.len(),
    })
}

/// Number of steps along a sweep where the error grows while both ends stay
/// above `floor`.
pub fn non_monotone_steps(records: &[ConvergenceRecord], floor: f64) -> usize {
    records
        .windows(2)
        .filter(|w| w[0].sup_err >= floor && w[1].sup_err >= floor && w[1].sup_err > w[0].sup_err)
        .count()
}

/// Outcome of comparing clustering parameters at a common `N₁`.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaComparison {
    pub sigma_opt: f64,
    /// One sweep per entry of the σ list, in input order.
    pub table: Vec<(f64, Vec<ConvergenceRecord>)>,
    /// Largest `N₁` whose `σ_opt` error exceeds the floor; `None` when every
    /// `σ_opt` error sits at the floor.
    pub decisive_n1: Option<usize>,
    /// `err(σ_opt) ≤ err(σ)` for every σ at `decisive_n1`; `None` if inconclusive.
    pub optimal_is_best: Option<bool>,
}

/// Sweeps every σ and checks that `σ_opt` gives the smallest error at the
/// largest `N₁` where the optimal error is still resolved.
pub fn compare_sigma(
    spec: &PrototypeSpec,
    beta: f64,
    sigma_list: &[f64],
    n1_list: &[usize],
    setup: SweepSetup,
) -> Result<SigmaComparison> {
    let opt = sigma_opt(spec.alpha, beta)?;
    let opt_index = sigma_list
        .iter()
        .position(|&s| (s - opt).abs() <= 1e-12 * opt)
        .ok_or_else(|| invalid("sigma list must contain sigma_opt"))?;
    let mut table = Vec::with_capacity(sigma_list.len());
    for &s in sigma_list {
        let recs = sweep_prototype(spec, beta, s, n1_list, setup).map_err(|(_, e)| e)?;
        table.push((s, recs));
    }
    Ok(compare_table(opt, opt_index, table, ERR_FLOOR))
}

/// The ordering decision of [`compare_sigma`] on precomputed sweeps sharing
/// one `N₁` list.
pub fn compare_table(
    sigma_opt: f64,
    opt_index: usize,
    table: Vec<(f64, Vec<ConvergenceRecord>)>,
    floor: f64,
) -> SigmaComparison {
    let decisive = table[opt_index]
        .1
        .iter()
        .enumerate()
        .rev()
        .find(|(_, r)| r.sup_err > floor)
        .map(|(i, r)| (i, r.n1));
    let optimal_is_best = decisive.map(|(i, _)| {
        let best = table[opt_index].1[i].sup_err;
        table.iter().all(|(_, recs)| best <= recs[i].sup_err)
    });
    SigmaComparison {
        sigma_opt,
        table,
        decisive_n1: decisive.map(|(_, n)| n),
        optimal_is_best,
    }
}

/// The two competing exponential terms and the prefactor skeleton of the
/// sup-norm error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorBudget {
    /// `e^{−ασ√N₁}`.
    pub truncation: f64,
    /// `1/(e^{(2−β)π²√N₁/σ} − 1)`.
    pub quadrature: f64,
    /// `(√2+2)/(√2−1)` for β > 0, `√2/(√2−1)` on the segment.
    pub g_const: f64,
    /// `𝒢^α·max(1, C^α)/ϰ(β)`.
    pub prefactor: f64,
}

impl ErrorBudget {
    /// `prefactor·(truncation + quadrature)`, without any O(1) constant.
    pub fn envelope(&self) -> f64 {
        self.prefactor * (self.truncation + self.quadrature)
    }
}

pub fn lp_error_budget(
    alpha: f64,
    beta: f64,
    sigma: f64,
    n1: usize,
    c: f64,
) -> Result<ErrorBudget> {
    if !(alpha > 0.0) || !(sigma > 0.0) || !(c > 0.0) || n1 == 0 {
        return Err(invalid("budget needs alpha, sigma, C > 0 and N1 >= 1"));
    }
    let domain = make_sector(beta, 1.0)?;
    let root = (n1 as f64).sqrt();
    let g_const = if beta > 0.0 {
        (SQRT_2 + 2.0) / (SQRT_2 - 1.0)
    } else {
        SQRT_2 / (SQRT_2 - 1.0)
    };
    Ok(ErrorBudget {
        truncation: (-alpha * sigma * root).exp(),
        quadrature: 1.0 / ((2.0 - beta) * PI * PI * root / sigma).exp_m1(),
        g_const,
        prefactor: g_const.powf(alpha) * c.powf(alpha).max(1.0) / domain.kappa_beta(),
    })
}

/// Largest `sup_err / envelope` over the records: the single constant that
/// makes the budget dominate them.
pub fn calibrate_budget(records: &[ConvergenceRecord], c: f64) -> Result<f64> {
    let mut k: f64 = 0.0;
    for r in records {
        let b = lp_error_budget(r.alpha, r.beta, r.sigma, r.n1, c)?;
        k = k.max(r.sup_err / b.envelope());
    }
    Ok(k)
}
