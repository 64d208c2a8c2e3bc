//! Weighted degrees, multitype weights in given coordinates and the
//! enumeration of weights carried by homogeneous vector field ansaetze.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{rat, rat_int, MixedPoly, Mono, Rat};
use crate::error::{Error, Result};

/// Weights (mu1, mu2) of z1, z2; w always has weight 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Weight {
    pub mu1: Rat,
    pub mu2: Rat,
}

impl Weight {
    /// A Catlin weight: 0 < mu2 <= mu1 <= 1/2.
    pub fn new(mu1: Rat, mu2: Rat) -> Result<Self> {
        let w = Weight { mu1, mu2 };
        if w.is_catlin() {
            Ok(w)
        } else {
            Err(Error::NoFiniteMultitype(format!("({}, {}) violates 0 < mu2 <= mu1 <= 1/2", w.mu1, w.mu2)))
        }
    }

    /// Any positive grading weight; used where the ordering is irrelevant.
    pub fn grading(mu1: Rat, mu2: Rat) -> Self {
        assert!(mu1.is_positive() && mu2.is_positive(), "grading weights must be positive");
        Weight { mu1, mu2 }
    }

    pub fn is_catlin(&self) -> bool {
        self.mu2.is_positive() && self.mu2 <= self.mu1 && self.mu1 <= rat(1, 2)
    }

    pub fn degree(&self, m: &Mono) -> Rat {
        mono_degree(m, &self.mu1, &self.mu2)
    }

    /// True if every monomial of `p` has weighted degree exactly `d`.
    pub fn is_homogeneous(&self, p: &MixedPoly, d: &Rat) -> bool {
        p.terms().all(|(m, _)| self.degree(m) == *d)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.mu1, self.mu2)
    }
}

pub fn mono_degree(m: &Mono, mu1: &Rat, mu2: &Rat) -> Rat {
    mu1 * rat_int((m.a1 + m.b1) as i64) + mu2 * rat_int((m.a2 + m.b2) as i64) + rat_int((m.cw + m.cwb + m.cu) as i64)
}

pub fn weighted_degree(m: &Mono, w: &Weight) -> Rat {
    w.degree(m)
}

/// Distinct rows (a1 + b1, a2 + b2) of the support of a w-free polynomial.
fn support_rows(p: &MixedPoly) -> Vec<(i64, i64)> {
    let rows: BTreeSet<(i64, i64)> = p.terms().map(|(m, _)| ((m.a1 + m.b1) as i64, (m.a2 + m.b2) as i64)).collect();
    rows.into_iter().collect()
}

pub(crate) fn validate_model(p: &MixedPoly) -> Result<()> {
    if p.is_zero() {
        return Err(Error::DegenerateInput("P = 0".into()));
    }
    if p.has_w() {
        return Err(Error::DegenerateInput("model polynomial must not contain w or u".into()));
    }
    if !p.check_real() {
        return Err(Error::NonRealModel);
    }
    let ph = p.pluriharmonic_part();
    if !ph.is_zero() {
        return Err(Error::PluriharmonicInput(ph.to_string()));
    }
    Ok(())
}

/// Solutions (l1, l2) of c1 l1 + c2 l2 = 1 over all support rows, as either a
/// unique point or the single row when all rows coincide.
enum RowSystem {
    Unique(Rat, Rat),
    Line(i64, i64),
}

fn solve_rows(rows: &[(i64, i64)]) -> Result<RowSystem> {
    let (c1, c2) = rows[0];
    if let Some(&(d1, d2)) = rows.iter().find(|(d1, d2)| c1 * d2 - c2 * d1 != 0) {
        let det = rat_int(c1 * d2 - c2 * d1);
        let l1 = rat_int(d2 - c2) / &det;
        let l2 = rat_int(c1 - d1) / &det;
        for &(e1, e2) in rows {
            if &l1 * rat_int(e1) + &l2 * rat_int(e2) != Rat::one() {
                return Err(Error::NotHomogeneous(format!("row ({e1}, {e2}) has degree != 1 at ({l1}, {l2})")));
            }
        }
        return Ok(RowSystem::Unique(l1, l2));
    }
    if rows.len() > 1 {
        return Err(Error::NotHomogeneous("proportional but distinct degree rows".into()));
    }
    Ok(RowSystem::Line(c1, c2))
}

/// Lexicographically least Catlin weight in the given coordinates for which
/// every monomial of `p` has weighted degree exactly 1.
pub fn infer_multitype_weights(p: &MixedPoly) -> Result<Weight> {
    validate_model(p)?;
    match solve_rows(&support_rows(p))? {
        RowSystem::Unique(l1, l2) => {
            if !l1.is_positive() || !l2.is_positive() {
                return Err(Error::NoFiniteMultitype(format!("homogeneity forces ({l1}, {l2})")));
            }
            Weight::new(l1, l2)
        }
        RowSystem::Line(c1, c2) => {
            if c1 == 0 || c2 == 0 {
                return Err(Error::NoFiniteMultitype("P does not depend on one of the variables".into()));
            }
            let l = rat(1, c1 + c2);
            Weight::new(l.clone(), l)
        }
    }
}

/// Some positive weight making `p` homogeneous of degree 1, without the
/// Catlin ordering constraints. Used to grade degenerate inputs.
pub fn homogeneity_weight(p: &MixedPoly) -> Result<Weight> {
    validate_model(p)?;
    match solve_rows(&support_rows(p))? {
        RowSystem::Unique(l1, l2) => {
            if !l1.is_positive() || !l2.is_positive() {
                return Err(Error::NoFiniteMultitype(format!("homogeneity forces ({l1}, {l2})")));
            }
            Ok(Weight::grading(l1, l2))
        }
        RowSystem::Line(c1, c2) => {
            let l = rat(1, c1 + c2);
            Ok(Weight::grading(l.clone(), l))
        }
    }
}

/// Brute-force oracle: the lexicographically least Catlin weight with
/// denominators at most `max_den` making every monomial of `p` degree 1.
pub fn brute_force_weights(p: &MixedPoly, max_den: i64) -> Option<Weight> {
    let rows = support_rows(p);
    let mut fracs: Vec<(i64, i64)> = Vec::new();
    for d in 1..=max_den {
        for n in 1..=d / 2 {
            if n.gcd(&d) == 1 {
                fracs.push((n, d));
            }
        }
    }
    fracs.sort_by(|a, b| (a.0 * b.1).cmp(&(b.0 * a.1)));
    for &(n1, d1) in &fracs {
        for &(n2, d2) in &fracs {
            if n2 * d1 > n1 * d2 {
                break;
            }
            if rows.iter().all(|&(c1, c2)| c1 * n1 * d2 + c2 * n2 * d1 == d1 * d2) {
                return Some(Weight { mu1: rat(n1, d1), mu2: rat(n2, d2) });
            }
        }
    }
    None
}

/// Sorted finite set of weights in [-1, cap] at which a nonzero weighted
/// homogeneous holomorphic field ansatz exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldWeightSet {
    pub weights: Vec<Rat>,
}

/// Weighted degrees of all holomorphic monomials z1^c1 z2^c2 w^c3 up to `max`.
fn holo_degrees(w: &Weight, max: &Rat) -> BTreeSet<Rat> {
    let mut out = BTreeSet::new();
    let mut c3 = Rat::zero();
    while &c3 <= max {
        let mut d1 = c3.clone();
        while &d1 <= max {
            let mut d = d1.clone();
            while &d <= max {
                out.insert(d.clone());
                d += &w.mu2;
            }
            d1 += &w.mu1;
        }
        c3 += Rat::one();
    }
    out
}

pub fn admissible_field_weights(w: &Weight, cap: &Rat) -> FieldWeightSet {
    let one = Rat::one();
    let lo = -one.clone();
    let mut set = BTreeSet::new();
    for d in holo_degrees(w, &(cap + &one)) {
        for shift in [&w.mu1, &w.mu2, &one] {
            let nu = &d - shift;
            if nu >= lo && &nu <= cap {
                set.insert(nu);
            }
        }
    }
    FieldWeightSet { weights: set.into_iter().collect() }
}

/// All holomorphic monomials z1^c1 z2^c2 w^c3 of weighted degree `target`,
/// with c3 = 0 unless `allow_w`, in canonical order.
pub fn enumerate_holo_monomials(target: &Rat, w: &Weight, allow_w: bool) -> Vec<Mono> {
    let mut out = Vec::new();
    if target.is_negative() {
        return out;
    }
    let max_c3 = if allow_w { target.floor().to_integer() } else { 0.into() };
    let mut c3 = 0u32;
    while num_bigint::BigInt::from(c3) <= max_c3 {
        let rem = target - rat_int(c3 as i64);
        let mut c1 = 0u32;
        loop {
            let rem2 = &rem - &w.mu1 * rat_int(c1 as i64);
            if rem2.is_negative() {
                break;
            }
            let c2 = &rem2 / &w.mu2;
            if c2.is_integer() {
                let c2: u32 = c2.to_integer().try_into().expect("exponent overflow");
                out.push(Mono::holo(c1, c2, c3));
            }
            c1 += 1;
        }
        c3 += 1;
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaussRat;

    type Term = ((u32, u32, u32, u32), i64);

    fn poly(terms: &[Term]) -> MixedPoly {
        MixedPoly::from_terms(terms.iter().map(|&((a1, a2, b1, b2), c)| (Mono::zz(a1, a2, b1, b2), GaussRat::from_int(c))))
    }

    #[test]
    fn degree_examples() {
        let w = Weight::new(rat(1, 3), rat(1, 3)).unwrap();
        assert_eq!(w.degree(&Mono::zz(0, 2, 1, 0)), rat_int(1));
        let w = Weight::new(rat(1, 2), rat(1, 4)).unwrap();
        assert_eq!(w.degree(&Mono::zz(1, 0, 1, 0)), rat_int(1));
        let w = Weight::new(rat(1, 17), rat(1, 34)).unwrap();
        assert_eq!(w.degree(&Mono::zz(13, 0, 3, 2)), rat_int(1));
    }

    #[test]
    fn infer_examples() {
        // Re(Z1 z2^2)
        let p = poly(&[((0, 2, 1, 0), 1), ((1, 0, 0, 2), 1)]);
        assert_eq!(infer_multitype_weights(&p).unwrap(), Weight::new(rat(1, 3), rat(1, 3)).unwrap());
        let p = poly(&[((1, 0, 1, 0), 1), ((0, 2, 0, 2), 1)]);
        assert_eq!(infer_multitype_weights(&p).unwrap(), Weight::new(rat(1, 2), rat(1, 4)).unwrap());
    }

    #[test]
    fn infer_errors() {
        let p = poly(&[((1, 0, 1, 0), 1)]);
        assert!(matches!(infer_multitype_weights(&p), Err(Error::NoFiniteMultitype(_))));
        let p = poly(&[((1, 0, 1, 0), 1), ((2, 0, 0, 0), 1), ((0, 0, 2, 0), 1)]);
        assert!(matches!(infer_multitype_weights(&p), Err(Error::PluriharmonicInput(_))));
        let p = poly(&[((1, 0, 1, 0), 1), ((2, 0, 2, 0), 1)]);
        assert!(matches!(infer_multitype_weights(&p), Err(Error::NotHomogeneous(_))));
        let p = poly(&[((1, 0, 1, 0), 1), ((1, 1, 1, 1), 1), ((2, 0, 2, 0), 1)]);
        assert!(infer_multitype_weights(&p).is_err());
    }

    #[test]
    fn admissible_examples() {
        let w = Weight::new(rat(1, 2), rat(1, 2)).unwrap();
        let got = admissible_field_weights(&w, &rat_int(1)).weights;
        assert_eq!(got, vec![rat(-1, 1), rat(-1, 2), rat(0, 1), rat(1, 2), rat(1, 1)]);
        let w = Weight::new(rat(1, 3), rat(1, 3)).unwrap();
        let got = admissible_field_weights(&w, &rat_int(1)).weights;
        let expect: Vec<Rat> = (-3..=3).map(|k| rat(k, 3)).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn admissible_contains_basic_weights() {
        for (a, b) in [(1, 2), (1, 3), (1, 17)] {
            let w = Weight::new(rat(a, b), rat(1, 2 * b)).unwrap();
            let got = admissible_field_weights(&w, &rat_int(1)).weights;
            for v in [rat_int(-1), -w.mu1.clone(), -w.mu2.clone(), rat_int(0), rat_int(1)] {
                assert!(got.contains(&v), "{v} missing for {w}");
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let w = Weight::new(rat(1, 2), rat(1, 4)).unwrap();
        let got = enumerate_holo_monomials(&rat_int(1), &w, true);
        let mut expect = vec![Mono::z(2, 0), Mono::z(1, 2), Mono::z(0, 4), Mono::holo(0, 0, 1)];
        expect.sort();
        assert_eq!(got, expect);
        assert_eq!(enumerate_holo_monomials(&rat_int(0), &w, true), vec![Mono::ONE]);
        let w = Weight::new(rat(1, 3), rat(1, 3)).unwrap();
        let mut expect = vec![Mono::z(1, 0), Mono::z(0, 1)];
        expect.sort();
        assert_eq!(enumerate_holo_monomials(&rat(1, 3), &w, false), expect);
    }

    #[test]
    fn brute_force_agrees_on_examples() {
        let p = poly(&[((0, 2, 1, 0), 1), ((1, 0, 0, 2), 1)]);
        assert_eq!(brute_force_weights(&p, 12), Some(infer_multitype_weights(&p).unwrap()));
        let p = poly(&[((1, 0, 1, 0), 1), ((0, 2, 0, 2), 1)]);
        assert_eq!(brute_force_weights(&p, 64), Some(infer_multitype_weights(&p).unwrap()));
    }
}
