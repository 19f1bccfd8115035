//! Versioned JSON document for a built approximant.

use lightning_core::domain::{make_sector, Multiplier, PrototypeSpec, TargetKind};
use lightning_core::lightning::{LightningApproximant, LpMode, PoleSet, PolyPart};
use lightning_core::lsq::OrthoBasis;
use lightning_core::Complex64;
use serde::{Deserialize, Serialize};

use crate::FormatError;

pub const FORMAT: &str = "lightning-lp/1";

/// `[re, im]`.
pub type Pair = [f64; 2];

fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

fn unpair(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ApproxDoc {
    pub format: String,
    pub kind: String,
    pub alpha: f64,
    pub g: String,
    pub beta: f64,
    pub radius: f64,
    pub mode: String,
    pub c: f64,
    pub sigma: f64,
    pub n1: usize,
    pub n2: usize,
    pub poles: Vec<f64>,
    pub residues: Vec<Pair>,
    pub poly: PolyDoc,
    pub tail_poles: Vec<f64>,
    pub tail_residues: Vec<Pair>,
    pub tail_nodes: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDoc {
    pub degree: usize,
    pub center: Pair,
    pub scale: f64,
    /// Row-major `(degree+1) × degree` recurrence table.
    pub hessenberg: Vec<Vec<Pair>>,
    /// Coefficients in the orthonormal basis; these drive evaluation.
    pub coeffs: Vec<Pair>,
    /// Same polynomial in powers of `z`, for external use only.
    pub monomial: Vec<Pair>,
    pub sample_points: Vec<Pair>,
}

pub fn kind_name(kind: TargetKind) -> &'static str {
    match kind {
        TargetKind::Pow => "pow",
        TargetKind::PowLog => "pow_log",
    }
}

pub fn parse_kind(s: &str) -> Option<TargetKind> {
    match s {
        "pow" => Some(TargetKind::Pow),
        "pow_log" => Some(TargetKind::PowLog),
        _ => None,
    }
}

pub fn mode_name(mode: LpMode) -> &'static str {
    match mode {
        LpMode::AnalyticTail => "analytic_tail",
        LpMode::LsPoly => "ls_poly",
        LpMode::LsFull => "ls_full",
    }
}

pub fn parse_mode(s: &str) -> Option<LpMode> {
    match s {
        "analytic_tail" => Some(LpMode::AnalyticTail),
        "ls_poly" => Some(LpMode::LsPoly),
        "ls_full" => Some(LpMode::LsFull),
        _ => None,
    }
}

impl ApproxDoc {
    pub fn from_approximant(a: &LightningApproximant) -> Result<Self, FormatError> {
        let g = a
            .spec
            .g
            .name()
            .ok_or_else(|| FormatError::new("custom multipliers cannot be serialized"))?;
        let b = &a.poly.basis;
        Ok(Self {
            format: FORMAT.into(),
            kind: kind_name(a.spec.kind).into(),
            alpha: a.spec.alpha,
            g: g.into(),
            beta: a.domain.beta(),
            radius: a.domain.radius(),
            mode: mode_name(a.mode).into(),
            c: a.poles.c,
            sigma: a.poles.sigma,
            n1: a.poles.n1,
            n2: b.degree,
            poles: a.poles.poles.clone(),
            residues: a.residues.iter().copied().map(pair).collect(),
            poly: PolyDoc {
                degree: b.degree,
                center: pair(b.center),
                scale: b.scale,
                hessenberg: b
                    .hessenberg
                    .iter()
                    .map(|row| row.iter().copied().map(pair).collect())
                    .collect(),
                coeffs: a.poly.coeffs.iter().copied().map(pair).collect(),
                monomial: b
                    .monomial_coefficients(&a.poly.coeffs)
                    .into_iter()
                    .map(pair)
                    .collect(),
                sample_points: b.sample_points.iter().copied().map(pair).collect(),
            },
            tail_poles: a.tail_poles.clone(),
            tail_residues: a.tail_residues.iter().copied().map(pair).collect(),
            tail_nodes: a.tail_nodes.clone(),
        })
    }

    /// Rebuilds the approximant; the stored poles are used verbatim.
    pub fn to_approximant(&self) -> Result<LightningApproximant, FormatError> {
        if self.format != FORMAT {
            return Err(FormatError::new(format!(
                "unsupported format {:?}, expected {FORMAT:?}",
                self.format
            )));
        }
        let kind = parse_kind(&self.kind)
            .ok_or_else(|| FormatError::new(format!("unknown kind {:?}", self.kind)))?;
        let g = Multiplier::from_name(&self.g)
            .ok_or_else(|| FormatError::new(format!("unknown multiplier {:?}", self.g)))?;
        let mode = parse_mode(&self.mode)
            .ok_or_else(|| FormatError::new(format!("unknown mode {:?}", self.mode)))?;
        let spec = PrototypeSpec::new(kind, self.alpha, g)?;
        let domain = make_sector(self.beta, self.radius)?;
        if self.poles.len() != self.n1 + 1 {
            return Err(FormatError::new("pole count must be n1 + 1"));
        }
        let p = &self.poly;
        if p.degree != self.n2
            || p.hessenberg.len() != p.degree + 1
            || p.hessenberg.iter().any(|r| r.len() != p.degree)
        {
            return Err(FormatError::new("polynomial record has inconsistent shape"));
        }
        let basis = OrthoBasis {
            degree: p.degree,
            hessenberg: p
                .hessenberg
                .iter()
                .map(|row| row.iter().map(unpair).collect())
                .collect(),
            sample_points: p.sample_points.iter().map(unpair).collect(),
            center: unpair(&p.center),
            scale: p.scale,
        };
        let poles = PoleSet {
            c: self.c,
            sigma: self.sigma,
            n1: self.n1,
            poles: self.poles.clone(),
        };
        let poly = PolyPart {
            basis,
            coeffs: p.coeffs.iter().map(unpair).collect(),
        };
        Ok(LightningApproximant::from_parts(
            spec,
            domain,
            poles,
            self.residues.iter().map(unpair).collect(),
            poly,
            mode,
            self.tail_poles.clone(),
            self.tail_residues.iter().map(unpair).collect(),
            self.tail_nodes.clone(),
        )?)
    }

    pub fn to_json(&self) -> Result<String, FormatError> {
        serde_json::to_string_pretty(self).map_err(|e| FormatError::new(e.to_string()))
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        serde_json::from_str(text).map_err(|e| FormatError::new(e.to_string()))
    }
}
