//! Sector geometry, prototype targets and sampling plans.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{domain, Error, Result};
use crate::math::principal_pow;

/// Chebyshev shift used for the interpolation nodes of the integral
/// representations, `(√2 - 1)/2`.
pub const DEFAULT_DELTA: f64 = 0.207_106_781_186_547_5;

/// Default number of geometric radii in a sup-norm sample plan.
pub const DEFAULT_RADIAL: usize = 60;
/// Default number of angles (boundary rays included) in a sup-norm sample plan.
pub const DEFAULT_ANGULAR: usize = 21;

/// The sector `{x e^{iθπ/2} : 0 ≤ x ≤ radius, |θ| ≤ β}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectorDomain {
    beta: f64,
    radius: f64,
    kappa_beta: f64,
}

impl SectorDomain {
    pub fn new(beta: f64, radius: f64) -> Result<Self> {
        if !(0.0..2.0).contains(&beta) || !beta.is_finite() {
            return Err(domain("sector fraction beta must lie in [0, 2)"));
        }
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(domain("sector radius must be positive"));
        }
        Ok(Self {
            beta,
            radius,
            kappa_beta: kappa(beta),
        })
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    /// Tip-distance constant: 1 for `β < 1`, `sin(βπ/2)` otherwise.
    pub fn kappa_beta(&self) -> f64 {
        self.kappa_beta
    }

    /// Half opening angle `βπ/2`.
    pub fn half_angle(&self) -> f64 {
        0.5 * self.beta * PI
    }

    /// Closed-sector membership with a relative tolerance on the radius and angle.
    pub fn contains(&self, z: Complex64) -> bool {
        let r = z.norm();
        if r == 0.0 {
            return true;
        }
        r <= self.radius * (1.0 + 1e-12) && z.arg().abs() <= self.half_angle() + 1e-12
    }
}

/// `make_sector` in function form.
pub fn make_sector(beta: f64, radius: f64) -> Result<SectorDomain> {
    SectorDomain::new(beta, radius)
}

fn kappa(beta: f64) -> f64 {
    if beta < 1.0 {
        1.0
    } else {
        (0.5 * beta * PI).sin()
    }
}

/// Which branch-singular prototype is approximated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TargetKind {
    /// `z^α`
    Pow,
    /// `z^α log z`
    PowLog,
}

/// Entire multiplier `g` in `g(z) z^α`.
#[derive(Debug, Clone, Copy)]
pub enum Multiplier {
    One,
    Cos,
    Exp,
    /// `sin(z^5)`
    SinZ5,
    /// Caller-supplied evaluator. It must be analytic on a neighborhood of the
    /// sector; `real` declares real Maclaurin coefficients.
    Custom {
        eval: fn(Complex64) -> Complex64,
        real: bool,
    },
}

impl Multiplier {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            Multiplier::One => Complex64::new(1.0, 0.0),
            Multiplier::Cos => z.cos(),
            Multiplier::Exp => z.exp(),
            Multiplier::SinZ5 => {
                let z2 = z * z;
                (z2 * z2 * z).sin()
            }
            Multiplier::Custom { eval, .. } => eval(z),
        }
    }

    pub fn has_real_coefficients(&self) -> bool {
        match self {
            Multiplier::Custom { real, .. } => *real,
            _ => true,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Multiplier::One)
    }

    /// Catalog name, `None` for custom evaluators.
    pub fn name(&self) -> Option<&'static str> {
        match self {
            Multiplier::One => Some("one"),
            Multiplier::Cos => Some("cos"),
            Multiplier::Exp => Some("exp"),
            Multiplier::SinZ5 => Some("sin_z5"),
            Multiplier::Custom { .. } => None,
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "one" => Some(Multiplier::One),
            "cos" => Some(Multiplier::Cos),
            "exp" => Some(Multiplier::Exp),
            "sin_z5" => Some(Multiplier::SinZ5),
            _ => None,
        }
    }
}

/// Target function `g(z) z^α` or `g(z) z^α log z`.
#[derive(Debug, Clone, Copy)]
pub struct PrototypeSpec {
    pub kind: TargetKind,
    pub alpha: f64,
    pub g: Multiplier,
}

impl PrototypeSpec {
    pub fn new(kind: TargetKind, alpha: f64, g: Multiplier) -> Result<Self> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(domain("exponent alpha must be positive"));
        }
        Ok(Self { kind, alpha, g })
    }

    pub fn pow(alpha: f64) -> Result<Self> {
        Self::new(TargetKind::Pow, alpha, Multiplier::One)
    }

    pub fn pow_log(alpha: f64) -> Result<Self> {
        Self::new(TargetKind::PowLog, alpha, Multiplier::One)
    }

    /// Interpolation order used by the construction: `⌊α⌋` for `z^α`,
    /// `⌈α⌉` for `z^α log z`.
    pub fn ell(&self) -> usize {
        match self.kind {
            TargetKind::Pow => self.alpha.floor() as usize,
            TargetKind::PowLog => self.alpha.ceil() as usize,
        }
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        prototype_eval(self, z)
    }
}

/// Evaluates the prototype on the slit plane with the principal branch.
pub fn prototype_eval(spec: &PrototypeSpec, z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re < 0.0 {
        return Err(Error::BranchCut { re: z.re });
    }
    let zero = Complex64::new(0.0, 0.0);
    if z == zero {
        return Ok(zero);
    }
    let base = principal_pow(z, spec.alpha);
    let core = match spec.kind {
        TargetKind::Pow => base,
        TargetKind::PowLog => base * z.ln(),
    };
    Ok(if spec.g.is_one() {
        core
    } else {
        spec.g.eval(z) * core
    })
}

/// Origin of a sample point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleTag {
    RayPlus,
    RayMinus,
    Arc,
    Interior,
    Tip,
}

/// Points used to estimate sup norms over a sector.
#[derive(Debug, Clone)]
pub struct SamplePlan {
    pub points: Vec<Complex64>,
    pub tags: Vec<SampleTag>,
    /// Radius index of each point (`n_radial` for the tip); index 0 is the arc.
    pub shells: Vec<usize>,
}

impl SamplePlan {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Geometric radii `radius·10^{-16 i/(n_radial-1)}` crossed with equispaced
/// angles spanning both boundary rays, plus the tip `z = 0`.
pub fn sample_sector(
    domain: &SectorDomain,
    n_radial: usize,
    n_angular: usize,
) -> Result<SamplePlan> {
    if n_radial < 2 || n_angular < 1 {
        return Err(crate::error::domain(
            "sample plan needs n_radial >= 2 and n_angular >= 1",
        ));
    }
    let angles: Vec<f64> = if domain.beta() == 0.0 {
        alloc::vec![0.0]
    } else {
        if n_angular < 2 {
            return Err(crate::error::domain(
                "a sector with beta > 0 needs n_angular >= 2 to include both rays",
            ));
        }
        let half = domain.half_angle();
        (0..n_angular)
            .map(|j| -half + 2.0 * half * j as f64 / (n_angular - 1) as f64)
            .collect()
    };
    let mut plan = SamplePlan {
        points: Vec::with_capacity(n_radial * angles.len() + 1),
        tags: Vec::new(),
        shells: Vec::new(),
    };
    let last = angles.len() - 1;
    for i in 0..n_radial {
        let r = domain.radius() * 10f64.powf(-16.0 * i as f64 / (n_radial - 1) as f64);
        for (j, &theta) in angles.iter().enumerate() {
            let tag = if i == 0 {
                SampleTag::Arc
            } else if j == last {
                SampleTag::RayPlus
            } else if j == 0 {
                SampleTag::RayMinus
            } else {
                SampleTag::Interior
            };
            let z = if theta == 0.0 {
                Complex64::new(r, 0.0)
            } else {
                Complex64::from_polar(r, theta)
            };
            plan.points.push(z);
            plan.tags.push(tag);
            plan.shells.push(i);
        }
    }
    plan.points.push(Complex64::new(0.0, 0.0));
    plan.tags.push(SampleTag::Tip);
    plan.shells.push(n_radial);
    Ok(plan)
}

/// Default sup-norm plan for a sector.
pub fn default_plan(domain: &SectorDomain) -> SamplePlan {
    sample_sector(domain, DEFAULT_RADIAL, DEFAULT_ANGULAR)
        .expect("default plan parameters are valid")
}

/// Roots of the shifted Chebyshev polynomial `T_ℓ(2s - 2δ - 1)`, increasing.
pub fn chebyshev_nodes(ell: usize, delta: f64) -> Vec<f64> {
    (1..=ell)
        .map(|k| {
            let arg = (2 * ell - 2 * k + 1) as f64 * PI / (2 * ell) as f64;
            delta + 0.5 * (1.0 + arg.cos())
        })
        .collect()
}

/// Lagrange interpolating polynomial through `(nodes[k], values[k])`, evaluated at `z`.
pub fn lagrange_eval(nodes: &[f64], values: &[Complex64], z: Complex64) -> Result<Complex64> {
    if nodes.len() != values.len() {
        return Err(domain("lagrange_eval needs as many values as nodes"));
    }
    for (i, a) in nodes.iter().enumerate() {
        if nodes[..i].contains(a) {
            return Err(domain("lagrange_eval nodes must be distinct"));
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for (l, (&sl, &vl)) in nodes.iter().zip(values).enumerate() {
        let mut basis = Complex64::new(1.0, 0.0);
        for (k, &sk) in nodes.iter().enumerate() {
            if k != l {
                basis *= (z - sk) / (sl - sk);
            }
        }
        acc += vl * basis;
    }
    Ok(acc)
}
