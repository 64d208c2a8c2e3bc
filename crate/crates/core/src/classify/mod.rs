//! Labels the graded components of a symmetry algebra, detects rotations and
//! exotic symmetries, and matches dimension profiles against the known table.

mod rotations;
pub mod upoly;

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use rotations::{
    detect_balanced, detect_imag_rotations, detect_real_rotations, has_nilpotent_rotation, rat_sqrt, rotation_split,
    split_linear, DiagField, Mat2, RotationSplit,
};

use crate::algebra::{HoloField, MixedPoly, Rat};
use crate::chains::MonomialDiagonal;
use crate::error::{Error, Result};
use crate::tangency::GradedAlgebra;

/// Dimensions of the graded pieces of a symmetry algebra.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRow {
    pub dim_g: usize,
    pub dim_gt: usize,
    /// Full weight-zero dimension, Euler field included.
    pub dim_g0: usize,
    pub dim_g0_re: usize,
    pub dim_g0_im: usize,
    /// 1 if some rotation has a nonzero nilpotent linear part, else 0.
    pub dim_g0_nil: usize,
    pub dim_gc: usize,
    pub dim_gn: usize,
    pub dim_g1: usize,
    pub has_euler: bool,
    pub two_jet_determined: bool,
}

fn in_open_unit(nu: &Rat) -> bool {
    *nu > Rat::zero() && *nu < Rat::one()
}

/// Rigid weight-zero fields of the algebra.
pub fn rigid_rotations(alg: &GradedAlgebra) -> Vec<HoloField> {
    alg.component(&Rat::zero()).map(|c| c.rigid_basis.clone()).unwrap_or_default()
}

/// Rigid weight-zero basis fields that are not linear in z.
pub fn nonlinear_rotations(alg: &GradedAlgebra) -> Vec<HoloField> {
    rigid_rotations(alg).into_iter().filter(|y| !y.is_linear()).collect()
}

/// Dimension profile of `alg`, the symmetry algebra of `p`.
pub fn split_components(alg: &GradedAlgebra, p: &MixedPoly) -> Result<ClassificationRow> {
    let mut row = ClassificationRow::default();
    let zero = Rat::zero();
    for c in &alg.components {
        let nu = &c.weight;
        if *nu == -Rat::one() {
        } else if *nu < zero {
            row.dim_gt += c.dim();
        } else if *nu == zero {
            row.dim_g0 += c.dim();
            row.has_euler = c.basis.iter().any(|x| x.g.terms().any(|(m, _)| m.cw == 1 && m.a1 == 0 && m.a2 == 0));
        } else if in_open_unit(nu) {
            row.dim_gc += c.rigid_dim();
            row.dim_gn += c.dim() - c.rigid_dim();
        } else if nu.is_one() {
            row.dim_g1 += c.dim();
        }
    }
    row.dim_g = alg.dim();
    row.dim_g0_re = detect_real_rotations(p).len();
    row.dim_g0_im = detect_imag_rotations(p).len();
    row.dim_g0_nil = usize::from(has_nilpotent_rotation(&rigid_rotations(alg)));
    row.two_jet_determined = row.dim_gc == 0;
    if alg.holo_nondegenerate() {
        if row.dim_g0_nil > 0 && row.dim_gc > 0 {
            return Err(Error::InternalInconsistency("a nilpotent rotation coexists with an exotic symmetry".into()));
        }
        if row.dim_gc > 1 {
            return Err(Error::InternalInconsistency(format!("dim g_c = {} exceeds 1", row.dim_gc)));
        }
    }
    Ok(row)
}

/// The exotic symmetry of a model and whether it is monomial-diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExoticInfo {
    pub field: HoloField,
    pub weight: Rat,
    pub monomial_diagonal: Option<MonomialDiagonal>,
}

/// Generator of g_c, if the algebra has one.
pub fn detect_exotic(alg: &GradedAlgebra) -> Result<Option<ExoticInfo>> {
    let rigid: Vec<(&Rat, &HoloField)> = alg
        .components
        .iter()
        .filter(|c| in_open_unit(&c.weight))
        .flat_map(|c| c.rigid_basis.iter().map(move |x| (&c.weight, x)))
        .collect();
    match rigid.as_slice() {
        [] => Ok(None),
        [(nu, x)] => Ok(Some(ExoticInfo {
            field: (*x).clone(),
            weight: (*nu).clone(),
            monomial_diagonal: MonomialDiagonal::from_field(x).ok(),
        })),
        more => Err(Error::InternalInconsistency(format!("dim g_c = {} exceeds 1", more.len()))),
    }
}

/// Rows of the classification table plus the extra reference models.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableMatch {
    Row(u8),
    NineDim,
    QuadricM,
    SolitaryExotic,
}

impl fmt::Display for TableMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableMatch::Row(n) => write!(f, "T{n}"),
            TableMatch::NineDim => write!(f, "GN9"),
            TableMatch::QuadricM => write!(f, "QUADRIC_M"),
            TableMatch::SolitaryExotic => write!(f, "SOLITARY_EXOTIC"),
        }
    }
}

/// (g, g_t, g0re, g0im, g1) of the table rows; all of them have dim g_c = 1.
pub const TABLE_PROFILES: [(usize, usize, usize, usize, usize); 9] = [
    (10, 2, 1, 1, 1),
    (7, 1, 1, 1, 1),
    (6, 0, 1, 1, 1),
    (6, 2, 0, 1, 0),
    (5, 2, 0, 0, 0),
    (5, 1, 1, 0, 0),
    (4, 0, 1, 0, 0),
    (4, 0, 0, 1, 0),
    (4, 1, 0, 0, 0),
];

pub fn match_table_row(row: &ClassificationRow) -> Option<TableMatch> {
    let key = (row.dim_g, row.dim_gt, row.dim_g0_re, row.dim_g0_im, row.dim_g1);
    if row.dim_gc == 1 {
        if let Some(i) = TABLE_PROFILES.iter().position(|t| *t == key) {
            return Some(TableMatch::Row(i as u8 + 1));
        }
        return (key == (3, 0, 0, 0, 0)).then_some(TableMatch::SolitaryExotic);
    }
    if row.dim_gc == 0 {
        if key == (9, 2, 0, 2, 1) {
            return Some(TableMatch::NineDim);
        }
        if key == (7, 0, 0, 2, 1) && row.dim_g0 == 5 {
            return Some(TableMatch::QuadricM);
        }
    }
    None
}
