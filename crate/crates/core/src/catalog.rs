//! Generators for the model families of the classification table and the
//! extra reference models, their expected profiles, and the sweep harness.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{GaussRat, MixedPoly, Mono, Rat};
use crate::chains::{chain_sum, ChainPair};
use crate::classify::ClassificationRow;
use crate::error::{Error, Result};
use crate::parse::{parse_model, parse_polynomial};
use crate::report::{analyze, Analysis};
use crate::tangency::holomorphic_degeneracy;
use crate::weights::infer_multitype_weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    GN10,
    GN9,
    QuadricM,
    ExS5,
    ExTh2,
}

impl RowId {
    pub const ALL: [RowId; 14] = [
        RowId::T1,
        RowId::T2,
        RowId::T3,
        RowId::T4,
        RowId::T5,
        RowId::T6,
        RowId::T7,
        RowId::T8,
        RowId::T9,
        RowId::GN10,
        RowId::GN9,
        RowId::QuadricM,
        RowId::ExS5,
        RowId::ExTh2,
    ];

    fn name(&self) -> &'static str {
        match self {
            RowId::T1 => "T1",
            RowId::T2 => "T2",
            RowId::T3 => "T3",
            RowId::T4 => "T4",
            RowId::T5 => "T5",
            RowId::T6 => "T6",
            RowId::T7 => "T7",
            RowId::T8 => "T8",
            RowId::T9 => "T9",
            RowId::GN10 => "GN10",
            RowId::GN9 => "GN9",
            RowId::QuadricM => "QUADRIC_M",
            RowId::ExS5 => "EX_S5",
            RowId::ExTh2 => "EX_TH2",
        }
    }

    /// Integer parameters and their defaults.
    pub fn defaults(&self) -> &'static [(&'static str, i64)] {
        match self {
            RowId::T1 | RowId::GN10 | RowId::T4 | RowId::T6 | RowId::T9 => &[("alpha", 2)],
            RowId::T5 => &[("alpha", 4)],
            RowId::T2 => &[("k", 1), ("m", 2)],
            RowId::T3 => &[("k", 1), ("l", 1), ("alpha", 1), ("beta", 2), ("m", 1)],
            RowId::T7 => &[("p", 3), ("q", 1), ("alpha", 2), ("beta", 1), ("m", 1), ("C", 3)],
            RowId::T8 => &[("p", 1), ("q", 1), ("alpha", 1), ("beta", 3), ("K1", 2), ("m1", 0), ("K2", 3), ("m2", 1)],
            RowId::GN9 => &[("l", 2), ("sign", 1)],
            RowId::QuadricM => &[("m", 2)],
            RowId::ExS5 | RowId::ExTh2 => &[],
        }
    }

    /// Families with a free perturbation term Q(z2, conj z2).
    pub fn is_perturbed(&self) -> bool {
        matches!(self, RowId::T5 | RowId::T9)
    }
}

impl fmt::Display for RowId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RowId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        RowId::ALL.into_iter().find(|r| r.name() == t).ok_or_else(|| Error::InvalidParams(format!("unknown row id {s}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParamValue {
    Int(i64),
    Gauss(GaussRat),
    Poly(MixedPoly),
}

impl fmt::Display for ParamValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Gauss(c) => write!(f, "{c}"),
            ParamValue::Poly(p) => write!(f, "{p}"),
        }
    }
}

/// A family member: row identifier plus explicit parameters (the rest default).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelSpec {
    pub row: RowId,
    pub params: BTreeMap<String, ParamValue>,
}

impl ModelSpec {
    pub fn new(row: RowId) -> Self {
        ModelSpec { row, params: BTreeMap::new() }
    }

    pub fn with(mut self, key: &str, v: i64) -> Self {
        self.params.insert(key.to_string(), ParamValue::Int(v));
        self
    }

    pub fn with_poly(mut self, key: &str, p: MixedPoly) -> Self {
        self.params.insert(key.to_string(), ParamValue::Poly(p));
        self
    }

    /// Parses "k=1,m=2,Q=Re(z2^2*Z2)".
    pub fn parse(row: RowId, text: &str) -> Result<Self> {
        let mut spec = ModelSpec::new(row);
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::InvalidParams(format!("expected key=value, got {item}")))?;
            let (k, v) = (k.trim(), v.trim());
            let value = if k == "Q" {
                ParamValue::Poly(parse_polynomial(v)?)
            } else if let Ok(n) = v.parse::<i64>() {
                ParamValue::Int(n)
            } else {
                let c = parse_polynomial(v)?;
                if c.terms().any(|(m, _)| !m.is_one()) {
                    return Err(Error::InvalidParams(format!("parameter {k} must be a number")));
                }
                ParamValue::Gauss(c.coeff(&Mono::ONE))
            };
            spec.params.insert(k.to_string(), value);
        }
        for k in spec.params.keys() {
            let known = row.defaults().iter().any(|(n, _)| n == k)
                || (k == "Q" && row.is_perturbed())
                || (k == "tau" && row == RowId::T7)
                || ((k == "r1" || k == "r2") && row == RowId::T8);
            if !known {
                return Err(Error::InvalidParams(format!("{row} has no parameter {k}")));
            }
        }
        Ok(spec)
    }

    pub fn int(&self, key: &str) -> Result<i64> {
        match self.params.get(key) {
            Some(ParamValue::Int(n)) => Ok(*n),
            Some(other) => Err(Error::InvalidParams(format!("{key} = {other} is not an integer"))),
            None => self
                .row
                .defaults()
                .iter()
                .find(|(n, _)| *n == key)
                .map(|(_, v)| *v)
                .ok_or_else(|| Error::InvalidParams(format!("{} has no parameter {key}", self.row))),
        }
    }

    fn gauss(&self, key: &str) -> Result<GaussRat> {
        match self.params.get(key) {
            None => Ok(GaussRat::one()),
            Some(ParamValue::Int(n)) => Ok(GaussRat::from_int(*n)),
            Some(ParamValue::Gauss(c)) => Ok(c.clone()),
            Some(ParamValue::Poly(_)) => Err(Error::InvalidParams(format!("{key} must be a number"))),
        }
    }

    fn perturbation(&self) -> Option<&MixedPoly> {
        match self.params.get("Q") {
            Some(ParamValue::Poly(p)) => Some(p),
            _ => None,
        }
    }

    /// Canonical "key=value" rendering of the explicit parameters.
    pub fn params_string(&self) -> String {
        self.params.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(",")
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParams(msg.to_string()))
    }
}

fn z(a1: i64, a2: i64) -> MixedPoly {
    MixedPoly::mono(Mono::z(a1 as u32, a2 as u32))
}

fn abs_sq(a1: i64, a2: i64) -> MixedPoly {
    MixedPoly::mono(Mono::zz(a1 as u32, a2 as u32, a1 as u32, a2 as u32))
}

/// Re(conj(z1) z2^a).
fn re_zb1_z2(a: i64) -> MixedPoly {
    MixedPoly::mono(Mono::zz(0, a as u32, 1, 0)).re()
}

/// Re(z1^alpha z2^beta) with alpha or beta = -1 folded into |z1|^2 or |z2|^2.
fn re_t(alpha: i64, beta: i64) -> MixedPoly {
    debug_assert!(alpha + beta >= 0);
    match (alpha, beta) {
        (-1, b) => MixedPoly::mono(Mono::zz(0, b as u32, 1, 0)).re(),
        (a, -1) => MixedPoly::mono(Mono::zz(a as u32, 0, 0, 1)).re(),
        (a, b) => z(a, b).re(),
    }
}

/// |z1|^(2 e1) |z2|^(2 e2) (Re T)^m, accounting for the boundary forms of T.
fn monomial_term(e1: i64, e2: i64, alpha: i64, beta: i64, m: i64) -> Option<MixedPoly> {
    let (e1, e2) = (e1 - if alpha == -1 { m } else { 0 }, e2 - if beta == -1 { m } else { 0 });
    (e1 >= 0 && e2 >= 0).then(|| &abs_sq(e1, e2) * &re_t(alpha, beta).pow(m as u32))
}

/// Perturbation candidates Re(z2^a conj(z2)^b), a > b >= min_b, a + b = d,
/// followed by the corresponding imaginary parts.
pub fn perturbation_candidates(d: i64, min_b: i64) -> Vec<MixedPoly> {
    let monos: Vec<MixedPoly> = (min_b.max(1)..d).filter(|b| d - b > *b).map(|b| MixedPoly::mono(Mono::zz(0, (d - b) as u32, 0, b as u32))).collect();
    monos.iter().map(|m| m.re()).chain(monos.iter().map(|m| m.im())).collect()
}

/// Degree in z2 of the perturbation of a perturbed family, and the least
/// conj(z2) degree of a candidate. For T5 a term z2^alpha conj(z2) is removed
/// by z1 -> z1 + c z2, so candidates start at conj(z2)^2.
fn perturbation_shape(spec: &ModelSpec) -> Result<(i64, i64)> {
    let alpha = spec.int("alpha")?;
    Ok(if spec.row == RowId::T5 { (alpha + 1, 2) } else { (2 * alpha + 1, 1) })
}

fn check_perturbation(q: &MixedPoly, d: i64) -> Result<()> {
    require(q.check_real(), "Q must be real")?;
    for (m, _) in q.terms() {
        require(m.a1 == 0 && m.b1 == 0 && !m.has_w() && m.cu == 0, "Q must depend on z2 only")?;
        require((m.a2 + m.b2) as i64 == d, &format!("Q must have degree {d} in z2 to keep the model homogeneous"))?;
        require(m.a2 > 0 && m.b2 > 0, "Q must not contain pluriharmonic terms")?;
    }
    require(!q.is_zero(), "Q must be nonzero")?;
    require(q.terms().any(|(m, _)| m.a2 != m.b2), "Q must not be circular")
}

pub fn build_model_unchecked(spec: &ModelSpec) -> Result<MixedPoly> {
    let i = |k: &str| spec.int(k);
    Ok(match spec.row {
        RowId::T1 | RowId::GN10 => {
            let a = i("alpha")?;
            require(a >= 2, "alpha >= 2")?;
            re_zb1_z2(a)
        }
        RowId::T2 => {
            let (k, m) = (i("k")?, i("m")?);
            require(k >= 1 && m >= 1, "k, m >= 1")?;
            &abs_sq(k, 0) * &z(0, 1).re().pow(m as u32)
        }
        RowId::T3 => {
            let (k, l, a, b, m) = (i("k")?, i("l")?, i("alpha")?, i("beta")?, i("m")?);
            require(k >= 0 && l >= 0 && m >= 1, "k, l >= 0 and m >= 1")?;
            require(a >= -1 && b >= -1 && a + b >= 1, "alpha, beta >= -1 and alpha + beta >= 1")?;
            monomial_term(k, l, a, b, m).ok_or_else(|| Error::InvalidParams("negative exponent".into()))?
        }
        RowId::T4 => {
            let a = i("alpha")?;
            require(a >= 2, "alpha >= 2")?;
            &re_zb1_z2(2 * a - 1) + &abs_sq(0, a)
        }
        RowId::T5 | RowId::T9 => {
            let a = i("alpha")?;
            let base = if spec.row == RowId::T5 {
                require(a >= 4, "alpha >= 4")?;
                re_zb1_z2(a)
            } else {
                require(a >= 2, "alpha >= 2")?;
                &z(0, a).re() * &re_zb1_z2(a)
            };
            let (d, min_b) = perturbation_shape(spec)?;
            let q = match spec.perturbation() {
                Some(q) => q.clone(),
                None => perturbation_candidates(d, min_b).into_iter().next().ok_or_else(|| Error::InvalidParams("no perturbation of that degree".into()))?,
            };
            check_perturbation(&q, d)?;
            &base + &q
        }
        RowId::T6 => {
            let a = i("alpha")?;
            require(a >= 2, "alpha >= 2")?;
            &z(0, a).re() * &re_zb1_z2(a)
        }
        RowId::T7 => {
            let (p, q, a, b, m, c) = (i("p")?, i("q")?, i("alpha")?, i("beta")?, i("m")?, i("C")?);
            require(p >= 0 && q >= 0 && num_integer::gcd(p, q) == 1, "p, q coprime and nonnegative")?;
            require(a >= -1 && b >= -1 && m >= 1 && c >= 1, "alpha, beta >= -1 and m, C >= 1")?;
            require((a != -1 || p == 0) && (b != -1 || q == 0), "alpha = -1 needs p = 0 and beta = -1 needs q = 0")?;
            require(p * b - q * a != 0, "p beta - q alpha != 0")?;
            let tau = spec.gauss("tau")?;
            let mut out = MixedPoly::zero();
            let mut has_n = false;
            for k in 0..=c / 2 {
                let n = c - 2 * k;
                if let Some(t) = monomial_term(k * p - m * a, k * q - m * b, a, b, m) {
                    let qn = MixedPoly::term(Mono::z((n * p) as u32, (n * q) as u32), tau.clone()).re();
                    out = &out + &(&qn * &t);
                    has_n |= n > 0;
                }
            }
            require(!out.is_zero(), "no solution of 2K + N = C gives nonnegative exponents")?;
            require(has_n, "some N must be positive")?;
            out
        }
        RowId::T8 => {
            let (p, q, a, b) = (i("p")?, i("q")?, i("alpha")?, i("beta")?);
            require(p >= 0 && q >= 0 && num_integer::gcd(p, q) == 1, "p, q coprime and nonnegative")?;
            require(a >= -1 && b >= -1 && p * b - q * a != 0, "alpha, beta >= -1 and p beta - q alpha != 0")?;
            require((a != -1 || p == 0) && (b != -1 || q == 0), "alpha = -1 needs p = 0 and beta = -1 needs q = 0")?;
            let mut out = MixedPoly::zero();
            for (kk, mk, rk) in [("K1", "m1", "r1"), ("K2", "m2", "r2")] {
                let (k, m) = (i(kk)?, i(mk)?);
                require(k >= 1 && m >= 0, "K >= 1 and m >= 0")?;
                let r = spec.gauss(rk)?;
                require(r.is_real() && !r.is_zero(), "coefficients must be real and nonzero")?;
                let e1 = k * p - m * a;
                let e2 = k * q - m * b;
                let t = if m == 0 { (e1 >= 0 && e2 >= 0).then(|| abs_sq(e1, e2)) } else { monomial_term(e1, e2, a, b, m) };
                let t = t.ok_or_else(|| Error::InvalidParams("negative exponent".into()))?;
                out = &out + &t.scale_rat(&r.re);
            }
            out
        }
        RowId::GN9 => {
            let (l, s) = (i("l")?, i("sign")?);
            require(l >= 2 && (s == 1 || s == -1), "l >= 2 and sign = +-1")?;
            &abs_sq(1, 0) + &abs_sq(0, l).scale_rat(&Rat::from_integer(s.into()))
        }
        RowId::QuadricM => {
            let m = i("m")?;
            require(m >= 2, "m >= 2")?;
            (&abs_sq(1, 0) + &abs_sq(0, 1)).pow(m as u32)
        }
        RowId::ExS5 => parse_model("8*(z1*Z1)^3*Re(z1^5*Z2)^2 + 4*(z1*Z1)^4*Re(z1^9)")?,
        RowId::ExTh2 => {
            let (p, q) = th2_chain();
            (&p * &q.conj()).re()
        }
    })
}

/// The pair (P, Q) with X(P) = i Q and X(Q) = 0 for the non-monomial exotic field.
pub fn th2_chain() -> (MixedPoly, MixedPoly) {
    (parse_polynomial("i*z1^2*z2^3*(z1-z2)").unwrap(), parse_polynomial("3*z1^3*z2^5*(z1-z2)").unwrap())
}

/// The exotic field of the non-monomial example.
pub fn th2_field() -> crate::algebra::HoloField {
    crate::parse::parse_field("z1*z2^2*(5*z1-6*z2)*d1 - z2^3*(4*z1-3*z2)*d2").unwrap()
}

/// The chains of the solitary monomial example and its exotic field.
pub fn s5_pair() -> (crate::algebra::HoloField, ChainPair) {
    let u: Vec<MixedPoly> = ["z1^4 + z2^2*z1^3", "2*z2*z1^8", "2*z1^13"].iter().map(|s| parse_polynomial(s).unwrap()).collect();
    (crate::parse::parse_field("i*z1^5*d2").unwrap(), ChainPair::new(u.clone(), u))
}

/// Builds the model and checks it has finite multitype and is
/// holomorphically nondegenerate.
pub fn build_model(spec: &ModelSpec) -> Result<MixedPoly> {
    let p = build_model_unchecked(spec)?;
    let w = infer_multitype_weights(&p)?;
    if !holomorphic_degeneracy(&p, &w).is_empty() {
        return Err(Error::DegenerateInstance(format!("{} {}: {p}", spec.row, spec.params_string())));
    }
    Ok(p)
}

fn profile(g: usize, gt: usize, re: usize, im: usize, g1: usize, gc: usize, gn: usize) -> ClassificationRow {
    ClassificationRow {
        dim_g: g,
        dim_gt: gt,
        dim_g0: g - 1 - gt - gc - gn - g1,
        dim_g0_re: re,
        dim_g0_im: im,
        dim_g0_nil: 0,
        dim_gc: gc,
        dim_gn: gn,
        dim_g1: g1,
        has_euler: true,
        two_jet_determined: gc == 0,
    }
}

/// Claimed dimensions for the family.
pub fn expected_profile(spec: &ModelSpec) -> Result<ClassificationRow> {
    build_model_unchecked(spec)?;
    Ok(match spec.row {
        RowId::T1 | RowId::GN10 => profile(10, 2, 1, 1, 1, 1, 2),
        RowId::T2 => profile(7, 1, 1, 1, 1, 1, 0),
        RowId::T3 => profile(6, 0, 1, 1, 1, 1, 0),
        RowId::T4 => profile(6, 2, 0, 1, 0, 1, 0),
        RowId::T5 => profile(5, 2, 0, 0, 0, 1, 0),
        RowId::T6 => profile(5, 1, 1, 0, 0, 1, 0),
        RowId::T7 => profile(4, 0, 1, 0, 0, 1, 0),
        RowId::T8 => profile(4, 0, 0, 1, 0, 1, 0),
        RowId::T9 => profile(4, 1, 0, 0, 0, 1, 0),
        RowId::GN9 => profile(9, 2, 0, 2, 1, 0, 2),
        RowId::QuadricM => profile(7, 0, 0, 2, 1, 0, 0),
        RowId::ExS5 | RowId::ExTh2 => profile(3, 0, 0, 0, 0, 1, 0),
    })
}

/// Fields compared between expected and computed profiles.
fn profile_key(r: &ClassificationRow) -> [usize; 8] {
    [r.dim_g, r.dim_gt, r.dim_g0, r.dim_g0_re, r.dim_g0_im, r.dim_gc, r.dim_gn, r.dim_g1]
}

pub fn profiles_match(expected: &ClassificationRow, actual: &ClassificationRow) -> bool {
    profile_key(expected) == profile_key(actual)
}

/// Outcome of one sweep instance.
#[derive(Clone, Debug, Serialize)]
pub struct SweepLine {
    pub row: String,
    pub params: String,
    pub model: Option<String>,
    pub weights: Option<[String; 2]>,
    pub expected: Option<ClassificationRow>,
    pub actual: Option<ClassificationRow>,
    pub pass: bool,
    /// Perturbations tried, in order, for the perturbed families.
    pub tried: Vec<String>,
    pub error: Option<String>,
}

/// Builds, analyzes and compares one instance.
pub fn check_instance(spec: &ModelSpec) -> (SweepLine, Option<Analysis>) {
    let mut line = SweepLine {
        row: spec.row.to_string(),
        params: spec.params_string(),
        model: None,
        weights: None,
        expected: None,
        actual: None,
        pass: false,
        tried: Vec::new(),
        error: None,
    };
    let expected = match expected_profile(spec) {
        Ok(e) => e,
        Err(e) => {
            line.error = Some(e.to_string());
            return (line, None);
        }
    };
    line.expected = Some(expected.clone());
    let candidates: Vec<ModelSpec> = if spec.row.is_perturbed() && spec.perturbation().is_none() {
        let (d, min_b) = perturbation_shape(spec).unwrap_or((0, 1));
        perturbation_candidates(d, min_b).into_iter().map(|q| spec.clone().with_poly("Q", q)).collect()
    } else {
        vec![spec.clone()]
    };
    let mut last = None;
    for cand in &candidates {
        if let Some(q) = cand.perturbation() {
            line.tried.push(q.to_string());
        }
        let result = build_model(cand).and_then(|p| analyze(&p));
        match result {
            Ok(a) => {
                line.model = Some(a.poly.to_string());
                line.weights = Some([a.algebra.weights.mu1.to_string(), a.algebra.weights.mu2.to_string()]);
                line.actual = Some(a.row.clone());
                line.pass = profiles_match(&expected, &a.row);
                line.error = None;
                let pass = line.pass;
                last = Some(a);
                if pass {
                    break;
                }
            }
            Err(e) => line.error = Some(e.to_string()),
        }
    }
    (line, last)
}

/// Runs every instance of the grid in parallel; lines keep grid order.
pub fn sweep_table(grid: &[ModelSpec]) -> Vec<SweepLine> {
    grid.par_iter().map(|s| check_instance(s).0).collect()
}

/// Parses a grid: one family per line, `ROW name=a..b name=x,y,z ...`, with
/// `#` comments; every combination of the listed values is an instance.
pub fn parse_grid(text: &str) -> Result<Vec<ModelSpec>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let row: RowId = parts.next().unwrap_or_default().trim_end_matches(':').parse()?;
        let mut specs = vec![ModelSpec::new(row)];
        for item in parts {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::InvalidParams(format!("expected name=values, got {item}")))?;
            let values = parse_range(v)?;
            specs = specs.into_iter().flat_map(|s| values.iter().map(move |x| s.clone().with(k, *x))).collect();
        }
        for s in &specs {
            ModelSpec::parse(row, &s.params_string())?;
        }
        out.extend(specs);
    }
    Ok(out)
}

fn parse_range(v: &str) -> Result<Vec<i64>> {
    let bad = || Error::InvalidParams(format!("bad value list {v}"));
    if let Some((a, b)) = v.split_once("..") {
        let (a, b): (i64, i64) = (a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?);
        if b < a || b - a > 64 {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    v.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

pub const DEFAULT_GRID: &str = "\
T1 alpha=2..3
T2 k=1..2 m=2..3
T3 k=1 l=1 alpha=1 beta=2 m=1
T3 k=0 l=1 alpha=2 beta=1 m=1
T4 alpha=2..3
T5 alpha=4..5
T6 alpha=2..3
T7
T7 p=1 q=1 alpha=1 beta=0 m=1 C=4
T8
T8 p=1 q=2 alpha=0 beta=3 K1=2 m1=0 K2=3 m2=2
T9 alpha=2..3
GN10 alpha=2
GN9 l=2..3 sign=1,-1
QUADRIC_M m=2..3
EX_S5
EX_TH2
";

pub fn default_grid() -> Vec<ModelSpec> {
    parse_grid(DEFAULT_GRID).expect("default grid parses")
}

/// Chain sum of the solitary monomial example.
pub fn s5_chain_sum() -> MixedPoly {
    chain_sum(&s5_pair().1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_models() {
        assert_eq!(build_model_unchecked(&ModelSpec::new(RowId::T1)).unwrap(), parse_model("Re(Z1*z2^2)").unwrap());
        assert_eq!(build_model_unchecked(&ModelSpec::new(RowId::T4)).unwrap(), parse_model("Re(Z1*z2^3) + z2^2*Z2^2").unwrap());
        assert_eq!(build_model_unchecked(&ModelSpec::new(RowId::T7)).unwrap(), parse_model("Re(z1^3*z2)*z1*Z1*Re(z1^2*z2)").unwrap());
        let (p, q) = th2_chain();
        assert_eq!(build_model_unchecked(&ModelSpec::new(RowId::ExTh2)).unwrap(), (&p * &q.conj()).re());
        assert_eq!(build_model_unchecked(&ModelSpec::new(RowId::ExS5)).unwrap(), s5_chain_sum());
        assert_eq!(
            build_model_unchecked(&ModelSpec::new(RowId::T3)).unwrap(),
            parse_model("z1*Z1*z2*Z2*Re(z1*z2^2)").unwrap()
        );
    }

    #[test]
    fn params_parse_and_validate() {
        let s = ModelSpec::parse(RowId::T2, "k=2,m=3").unwrap();
        assert_eq!((s.int("k").unwrap(), s.int("m").unwrap()), (2, 3));
        assert!(ModelSpec::parse(RowId::T2, "alpha=2").is_err());
        assert!(build_model_unchecked(&ModelSpec::new(RowId::T1).with("alpha", 1)).is_err());
        let s = ModelSpec::parse(RowId::T5, "alpha=4,Q=Re(z2^3*Z2^2)").unwrap();
        assert!(build_model_unchecked(&s).is_ok());
        let s = ModelSpec::parse(RowId::T5, "Q=z2^2*Z2^2").unwrap();
        assert!(build_model_unchecked(&s).is_err());
        assert_eq!("quadric_m".parse::<RowId>().unwrap(), RowId::QuadricM);
    }

    #[test]
    fn grid_expansion() {
        let g = parse_grid("T2 k=1..2 m=2,3\n# comment\nEX_S5\n").unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[1].params_string(), "k=1,m=3");
        assert!(parse_grid("T2 z=1").is_err());
    }

    #[test]
    fn candidates_are_noncircular() {
        let c = perturbation_candidates(5, 1);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|q| check_perturbation(q, 5).is_ok()));
        assert_eq!(perturbation_candidates(5, 2).len(), 2);
        assert!(perturbation_candidates(3, 2).is_empty());
    }
}
