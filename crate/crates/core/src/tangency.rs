//! Tangency of holomorphic vector fields to Im w = P and the graded
//! symmetry algebra computed weight by weight.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{GaussRat, HoloField, HoloVar, MixedPoly, Mono, Rat};
use crate::error::Result;
use crate::linalg::{integer_row, rref_dense, Echelon};
use crate::weights::{admissible_field_weights, enumerate_holo_monomials, infer_multitype_weights, Weight};

/// Im g - 2 Re(f1 P_z1 + f2 P_z2) restricted to w = u + iP. The field is an
/// infinitesimal CR automorphism exactly when this vanishes.
pub fn tangency_residual(x: &HoloField, p: &MixedPoly) -> MixedPoly {
    let g = x.g.substitute_w(p);
    let f1 = x.f1.substitute_w(p);
    let f2 = x.f2.substitute_w(p);
    let h = &(&f1 * &p.wirtinger(HoloVar::Z1)) + &(&f2 * &p.wirtinger(HoloVar::Z2));
    &g.im() - &h.re().scale_rat(&Rat::from_integer(2.into()))
}

/// g - 2i(f1 P_z1 + f2 P_z2) restricted to w = u + iP. Vanishes exactly when
/// the holomorphic field itself is tangent (holomorphic degeneracy).
pub fn complex_tangency_residual(x: &HoloField, p: &MixedPoly) -> MixedPoly {
    let g = x.g.substitute_w(p);
    let f1 = x.f1.substitute_w(p);
    let f2 = x.f2.substitute_w(p);
    let h = &(&f1 * &p.wirtinger(HoloVar::Z1)) + &(&f2 * &p.wirtinger(HoloVar::Z2));
    &g - &h.scale(&GaussRat::imag(Rat::from_integer(2.into())))
}

pub fn is_symmetry(x: &HoloField, p: &MixedPoly) -> bool {
    tangency_residual(x, p).is_zero()
}

pub fn lie_bracket(x: &HoloField, y: &HoloField) -> HoloField {
    x.bracket(y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Slot {
    G,
    F1,
    F2,
}

/// Monomial ansatz for a weighted homogeneous field of a fixed weight.
/// Real unknowns are (re, im) of each coefficient: column 2k and 2k + 1.
#[derive(Clone, Debug)]
pub struct Ansatz {
    slots: Vec<(Slot, Mono)>,
}

impl Ansatz {
    pub fn new(w: &Weight, nu: &Rat, allow_w: bool) -> Self {
        let one = Rat::one();
        let mut slots = Vec::new();
        for (slot, shift) in [(Slot::G, &one), (Slot::F1, &w.mu1), (Slot::F2, &w.mu2)] {
            for m in enumerate_holo_monomials(&(nu + shift), w, allow_w) {
                slots.push((slot, m));
            }
        }
        Ansatz { slots }
    }

    pub fn ncols(&self) -> usize {
        2 * self.slots.len()
    }

    /// Columns belonging to coefficients of monomials containing w.
    pub fn w_columns(&self) -> Vec<usize> {
        self.slots
            .iter()
            .enumerate()
            .filter(|(_, (_, m))| m.cw > 0)
            .flat_map(|(k, _)| [2 * k, 2 * k + 1])
            .collect()
    }

    pub fn field(&self, v: &[Rat]) -> HoloField {
        let mut parts: [Vec<(Mono, GaussRat)>; 3] = Default::default();
        for (k, (slot, m)) in self.slots.iter().enumerate() {
            let c = GaussRat::new(v[2 * k].clone(), v[2 * k + 1].clone());
            let idx = match slot {
                Slot::G => 0,
                Slot::F1 => 1,
                Slot::F2 => 2,
            };
            parts[idx].push((*m, c));
        }
        let [g, f1, f2] = parts;
        HoloField {
            f1: MixedPoly::from_terms(f1),
            f2: MixedPoly::from_terms(f2),
            g: MixedPoly::from_terms(g),
        }
    }

    /// Coordinates of a field expressed in this ansatz, if it fits.
    pub fn coords(&self, x: &HoloField) -> Option<Vec<Rat>> {
        let mut v = vec![Rat::zero(); self.ncols()];
        let mut used = 0;
        for (k, (slot, m)) in self.slots.iter().enumerate() {
            let p = match slot {
                Slot::G => &x.g,
                Slot::F1 => &x.f1,
                Slot::F2 => &x.f2,
            };
            let c = p.coeff(m);
            if !c.is_zero() {
                used += 1;
            }
            v[2 * k] = c.re;
            v[2 * k + 1] = c.im;
        }
        (used == x.f1.len() + x.f2.len() + x.g.len()).then_some(v)
    }
}

/// Precomputed products (u + iP)^c, (u + iP)^c P_z1 and (u + iP)^c P_z2.
struct Substitutions {
    pow: Vec<MixedPoly>,
    pz1: Vec<MixedPoly>,
    pz2: Vec<MixedPoly>,
}

impl Substitutions {
    fn new(p: &MixedPoly, max_c: u32) -> Self {
        let hol = &MixedPoly::u() + &p.scale(&GaussRat::i());
        let (d1, d2) = (p.wirtinger(HoloVar::Z1), p.wirtinger(HoloVar::Z2));
        let mut pow = vec![MixedPoly::one()];
        for _ in 0..max_c {
            let next = pow.last().unwrap() * &hol;
            pow.push(next);
        }
        let pz1 = pow.iter().map(|q| q * &d1).collect();
        let pz2 = pow.iter().map(|q| q * &d2).collect();
        Substitutions { pow, pz1, pz2 }
    }

    /// Substituted value of the slot monomial times the relevant derivative.
    fn slot_value(&self, slot: Slot, m: &Mono) -> MixedPoly {
        let table = match slot {
            Slot::G => &self.pow,
            Slot::F1 => &self.pz1,
            Slot::F2 => &self.pz2,
        };
        table[m.cw as usize].mul_mono(&Mono { cw: 0, ..*m }, &GaussRat::one())
    }
}

/// Equations of one residual column: monomial M (with M <= conj M) and
/// real/imaginary part of its coefficient.
type RowKey = (Mono, bool);

fn add_column(rows: &mut BTreeMap<RowKey, Vec<(usize, Rat)>>, col: usize, residual: &MixedPoly, complex: bool) {
    for (m, c) in residual.terms() {
        if !complex && *m > m.conj() {
            continue;
        }
        if !c.re.is_zero() {
            rows.entry((*m, false)).or_default().push((col, c.re.clone()));
        }
        if !c.im.is_zero() {
            rows.entry((*m, true)).or_default().push((col, c.im.clone()));
        }
    }
}

/// Kernel of the tangency equations on the ansatz; returns RREF coordinates.
fn solve_ansatz(ans: &Ansatz, subs: &Substitutions, complex: bool) -> Vec<Vec<Rat>> {
    let two = Rat::from_integer(2.into());
    let mut rows: BTreeMap<RowKey, Vec<(usize, Rat)>> = BTreeMap::new();
    for (k, (slot, m)) in ans.slots.iter().enumerate() {
        let y = subs.slot_value(*slot, m);
        let (re_col, im_col) = (2 * k, 2 * k + 1);
        if complex {
            // Coefficient a: contributes a*y for g, -2i*a*y for f.
            let base = match slot {
                Slot::G => y,
                _ => y.scale(&GaussRat::imag(-two.clone())),
            };
            add_column(&mut rows, re_col, &base, true);
            add_column(&mut rows, im_col, &base.scale(&GaussRat::i()), true);
        } else {
            let (yr, yi) = (y.re(), y.im());
            match slot {
                // Im(a y) = x Im y + x' Re y
                Slot::G => {
                    add_column(&mut rows, re_col, &yi, false);
                    add_column(&mut rows, im_col, &yr, false);
                }
                // -2 Re(a y) = -2 x Re y + 2 x' Im y
                _ => {
                    add_column(&mut rows, re_col, &yr.scale_rat(&-two.clone()), false);
                    add_column(&mut rows, im_col, &yi.scale_rat(&two), false);
                }
            }
        }
    }
    let mut ech = Echelon::new(ans.ncols());
    for (_, entries) in rows {
        ech.push(integer_row(entries));
        if ech.is_full() {
            break;
        }
    }
    ech.kernel()
}

/// Subspace of `basis` (RREF rows) with all `cols` coordinates zero.
fn restrict_zero(basis: &[Vec<Rat>], cols: &[usize]) -> Vec<Vec<Rat>> {
    if basis.is_empty() {
        return Vec::new();
    }
    if cols.is_empty() {
        return basis.to_vec();
    }
    let mut ech = Echelon::new(basis.len());
    for &c in cols {
        ech.push(integer_row(basis.iter().enumerate().map(|(i, v)| (i, v[c].clone()))));
    }
    let combos = ech.kernel();
    let n = basis[0].len();
    let vecs = combos
        .into_iter()
        .map(|x| {
            let mut out = vec![Rat::zero(); n];
            for (xi, b) in x.iter().zip(basis) {
                if !xi.is_zero() {
                    for (o, y) in out.iter_mut().zip(b) {
                        *o += xi * y;
                    }
                }
            }
            out
        })
        .collect();
    rref_dense(vecs)
}

/// Multiplication by i on ansatz coordinates.
fn times_i(v: &[Rat]) -> Vec<Rat> {
    let mut out = v.to_vec();
    for k in 0..v.len() / 2 {
        out[2 * k] = -v[2 * k + 1].clone();
        out[2 * k + 1] = v[2 * k].clone();
    }
    out
}

/// Real dimension of S intersected with iS.
fn complex_part_dim(basis: &[Vec<Rat>]) -> usize {
    if basis.is_empty() {
        return 0;
    }
    let rotated: Vec<Vec<Rat>> = basis.iter().map(|v| times_i(v)).collect();
    crate::linalg::intersect(basis, &rotated).len()
}

/// Symmetries of one weight.
#[derive(Clone, Debug)]
pub struct WeightComponent {
    pub weight: Rat,
    pub basis: Vec<HoloField>,
    pub rigid_basis: Vec<HoloField>,
    /// Real dimension of the part closed under multiplication by i.
    pub complex_dim: usize,
}

impl WeightComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rigid_dim(&self) -> usize {
        self.rigid_basis.len()
    }
}

/// Real basis of each nonzero graded component of the symmetry algebra.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub weights: Weight,
    pub components: Vec<WeightComponent>,
}

impl GradedAlgebra {
    pub fn dim(&self) -> usize {
        self.components.iter().map(|c| c.dim()).sum()
    }

    pub fn component(&self, nu: &Rat) -> Option<&WeightComponent> {
        self.components.iter().find(|c| c.weight == *nu)
    }

    pub fn dim_at(&self, nu: &Rat) -> usize {
        self.component(nu).map_or(0, |c| c.dim())
    }

    /// True unless a nonzero holomorphic field is tangent to the model.
    pub fn holo_nondegenerate(&self) -> bool {
        self.components.iter().all(|c| c.complex_dim == 0)
    }

    pub fn all_fields(&self) -> impl Iterator<Item = (&Rat, &HoloField)> {
        self.components.iter().flat_map(|c| c.basis.iter().map(move |x| (&c.weight, x)))
    }
}

/// Solves the tangency equations at weight `nu`.
pub fn solve_weight(p: &MixedPoly, w: &Weight, nu: &Rat) -> WeightComponent {
    let subs = Substitutions::new(p, max_w_power(nu));
    solve_weight_with(w, nu, &subs)
}

fn max_w_power(nu: &Rat) -> u32 {
    (nu + Rat::one()).floor().to_integer().try_into().unwrap_or(0)
}

fn solve_weight_with(w: &Weight, nu: &Rat, subs: &Substitutions) -> WeightComponent {
    let ans = Ansatz::new(w, nu, true);
    let kernel = solve_ansatz(&ans, subs, false);
    let rigid = restrict_zero(&kernel, &ans.w_columns());
    WeightComponent {
        weight: nu.clone(),
        basis: kernel.iter().map(|v| ans.field(v)).collect(),
        rigid_basis: rigid.iter().map(|v| ans.field(v)).collect(),
        complex_dim: complex_part_dim(&kernel),
    }
}

/// Rigid symmetries of weight `nu`, solved directly on the w-free ansatz.
pub fn solve_weight_rigid(p: &MixedPoly, w: &Weight, nu: &Rat) -> Vec<HoloField> {
    let subs = Substitutions::new(p, 0);
    let ans = Ansatz::new(w, nu, false);
    solve_ansatz(&ans, &subs, false).iter().map(|v| ans.field(v)).collect()
}

/// Holomorphic fields of weight `nu` tangent to the model as complex fields.
pub fn solve_weight_holomorphic(p: &MixedPoly, w: &Weight, nu: &Rat) -> Vec<HoloField> {
    let subs = Substitutions::new(p, max_w_power(nu));
    let ans = Ansatz::new(w, nu, true);
    solve_ansatz(&ans, &subs, true).iter().map(|v| ans.field(v)).collect()
}

/// Weights carrying a nonzero holomorphically tangent field, searched
/// directly over the admissible weights in [-1, 1].
pub fn holomorphic_degeneracy(p: &MixedPoly, w: &Weight) -> Vec<(Rat, Vec<HoloField>)> {
    admissible_field_weights(w, &Rat::one())
        .weights
        .iter()
        .filter_map(|nu| {
            let sol = solve_weight_holomorphic(p, w, nu);
            (!sol.is_empty()).then(|| (nu.clone(), sol))
        })
        .collect()
}

fn thread_pool() -> rayon::ThreadPool {
    let n = std::env::var("CRSYM_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
}

/// Symmetry algebra for the given grading weights.
pub fn compute_symmetry_algebra_with(p: &MixedPoly, w: &Weight) -> GradedAlgebra {
    let nus = admissible_field_weights(w, &Rat::one()).weights;
    let subs = Substitutions::new(p, 2);
    let components: Vec<WeightComponent> = thread_pool().install(|| {
        nus.par_iter()
            .map(|nu| solve_weight_with(w, nu, &subs))
            .collect::<Vec<_>>()
            .into_iter()
            .filter(|c| c.dim() > 0)
            .collect()
    });
    GradedAlgebra { weights: w.clone(), components }
}

/// Infers the multitype weights of `p` and computes its symmetry algebra.
pub fn compute_symmetry_algebra(p: &MixedPoly) -> Result<GradedAlgebra> {
    let w = infer_multitype_weights(p)?;
    Ok(compute_symmetry_algebra_with(p, &w))
}
