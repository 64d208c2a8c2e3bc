//! Full analysis of a model and its versioned JSON report.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{MixedPoly, Mono};
use crate::classify::{detect_exotic, match_table_row, nonlinear_rotations, split_components, ClassificationRow, ExoticInfo, TableMatch};
use crate::error::{Error, Result};
use crate::tangency::{compute_symmetry_algebra_with, GradedAlgebra};
use crate::weights::{brute_force_weights, infer_multitype_weights};

pub const SCHEMA_VERSION: u32 = 1;

/// Rank of the Hermitian matrix of z_i conj(z_j) coefficients.
pub fn levi_rank_at_origin(p: &MixedPoly) -> u8 {
    let h = |i: usize, j: usize| {
        let mut m = Mono::ONE;
        if i == 0 { m.a1 = 1 } else { m.a2 = 1 }
        if j == 0 { m.b1 = 1 } else { m.b2 = 1 }
        p.coeff(&m)
    };
    let det = &(&h(0, 0) * &h(1, 1)) - &(&h(0, 1) * &h(1, 0));
    if !det.is_zero() {
        2
    } else if (0..2).any(|i| (0..2).any(|j| !h(i, j).is_zero())) {
        1
    } else {
        0
    }
}

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Drop the pluriharmonic part of the input instead of rejecting it.
    pub strip_pluriharmonic: bool,
    /// Reject weights with larger denominators and cross-check the inferred
    /// weights against a brute-force search up to this bound.
    pub max_denominator: Option<i64>,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub poly: MixedPoly,
    pub algebra: GradedAlgebra,
    pub row: ClassificationRow,
    pub exotic: Option<ExoticInfo>,
    pub table_row: Option<TableMatch>,
    pub levi_rank: u8,
    pub notes: Vec<String>,
}

pub fn analyze(p: &MixedPoly) -> Result<Analysis> {
    analyze_with(p, &AnalyzeOptions::default())
}

pub fn analyze_with(p: &MixedPoly, opts: &AnalyzeOptions) -> Result<Analysis> {
    let mut notes = Vec::new();
    let mut poly = p.clone();
    if opts.strip_pluriharmonic {
        let ph = p.pluriharmonic_part();
        if !ph.is_zero() {
            notes.push(format!("removed pluriharmonic part {ph}"));
            poly = p.mixed_part();
        }
    }
    let w = infer_multitype_weights(&poly)?;
    if let Some(d) = opts.max_denominator {
        let den = w.mu1.denom().max(w.mu2.denom()).clone();
        if den > d.into() {
            return Err(Error::InvalidParams(format!("weights {w} have a denominator above {d}")));
        }
        if brute_force_weights(&poly, d).as_ref() != Some(&w) {
            return Err(Error::InternalInconsistency(format!("brute-force weight search disagrees with {w}")));
        }
    }
    let levi_rank = levi_rank_at_origin(&poly);
    if levi_rank == 2 {
        notes.push("Levi form is nondegenerate at the origin".into());
    }
    let algebra = compute_symmetry_algebra_with(&poly, &w);
    if !algebra.holo_nondegenerate() {
        notes.push("holomorphically degenerate: only components of weight at most 1 are listed".into());
    }
    let row = split_components(&algebra, &poly)?;
    for y in nonlinear_rotations(&algebra) {
        notes.push(format!("nonlinear rotation {y}"));
    }
    let exotic = detect_exotic(&algebra)?;
    if let Some(ex) = &exotic {
        let kind = match &ex.monomial_diagonal {
            Some(md) => format!("monomial-diagonal, annihilates {}", md.annihilated()),
            None => "not monomial-diagonal".to_string(),
        };
        notes.push(format!("exotic symmetry of weight {}: {} ({kind})", ex.weight, ex.field));
    }
    let table_row = match_table_row(&row);
    Ok(Analysis { poly, algebra, row, exotic, table_row, levi_rank, notes })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReportWeights {
    pub mu1: String,
    pub mu2: String,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ReportComponent {
    pub weight: String,
    pub dim: usize,
    pub rigid_dim: usize,
    pub basis: Vec<String>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub schema_version: u32,
    pub input: String,
    pub weights: ReportWeights,
    pub levi_rank_origin: u8,
    pub holo_nondegenerate: bool,
    pub components: Vec<ReportComponent>,
    pub classification: ClassificationRow,
    pub table_row: Option<String>,
    pub notes: Vec<String>,
}

impl Analysis {
    pub fn report(&self) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            input: self.poly.to_string(),
            weights: ReportWeights { mu1: self.algebra.weights.mu1.to_string(), mu2: self.algebra.weights.mu2.to_string() },
            levi_rank_origin: self.levi_rank,
            holo_nondegenerate: self.algebra.holo_nondegenerate(),
            components: self
                .algebra
                .components
                .iter()
                .map(|c| ReportComponent {
                    weight: c.weight.to_string(),
                    dim: c.dim(),
                    rigid_dim: c.rigid_dim(),
                    basis: c.basis.iter().map(|x| x.to_string()).collect(),
                })
                .collect(),
            classification: self.row.clone(),
            table_row: self.table_row.map(|t| t.to_string()),
            notes: self.notes.clone(),
        }
    }

    /// Plain-text summary.
    pub fn render_text(&self) -> String {
        let r = &self.row;
        let mut s = String::new();
        let _ = writeln!(s, "model: Im w = {}", self.poly);
        let _ = writeln!(s, "weights: {}", self.algebra.weights);
        let _ = writeln!(s, "Levi rank at origin: {}", self.levi_rank);
        let _ = writeln!(s, "holomorphically nondegenerate: {}", self.algebra.holo_nondegenerate());
        for c in &self.algebra.components {
            let _ = writeln!(s, "weight {}: dim {}, rigid {}", c.weight, c.dim(), c.rigid_dim());
            for x in &c.basis {
                let _ = writeln!(s, "  {x}");
            }
        }
        let _ = writeln!(
            s,
            "dim g = {} (g_t {}, g_0 {} [re {}, im {}, nil {}], g_c {}, g_n {}, g_1 {})",
            r.dim_g, r.dim_gt, r.dim_g0, r.dim_g0_re, r.dim_g0_im, r.dim_g0_nil, r.dim_gc, r.dim_gn, r.dim_g1
        );
        let _ = writeln!(s, "table row: {}", self.table_row.map_or("none".to_string(), |t| t.to_string()));
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        s
    }
}
