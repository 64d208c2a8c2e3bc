use std::fmt;

use num_traits::Zero;

use super::mono::Mono;
use super::poly::{join_terms, render_term, HoloVar, MixedPoly};
use super::scalar::{GaussRat, Rat};
use crate::error::{Error, Result};

/// Holomorphic vector field f1 d/dz1 + f2 d/dz2 + g d/dw with polynomial
/// coefficients in z1, z2, w.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HoloField {
    pub f1: MixedPoly,
    pub f2: MixedPoly,
    pub g: MixedPoly,
}

impl HoloField {
    pub fn new(f1: MixedPoly, f2: MixedPoly, g: MixedPoly) -> Result<Self> {
        for p in [&f1, &f2, &g] {
            if !p.is_holomorphic() {
                return Err(Error::AntiholomorphicCoefficient(p.to_string()));
            }
        }
        Ok(HoloField { f1, f2, g })
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// d/dw.
    pub fn dw() -> Self {
        HoloField { g: MixedPoly::one(), ..Self::zero() }
    }

    /// w d/dw + mu1 z1 d/dz1 + mu2 z2 d/dz2.
    pub fn euler(mu1: &Rat, mu2: &Rat) -> Self {
        HoloField {
            f1: MixedPoly::z1().scale_rat(mu1),
            f2: MixedPoly::z2().scale_rat(mu2),
            g: MixedPoly::w(),
        }
    }

    /// lam1 z1 d/dz1 + lam2 z2 d/dz2.
    pub fn diagonal(lam1: &GaussRat, lam2: &GaussRat) -> Self {
        HoloField {
            f1: MixedPoly::z1().scale(lam1),
            f2: MixedPoly::z2().scale(lam2),
            g: MixedPoly::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.f1.is_zero() && self.f2.is_zero() && self.g.is_zero()
    }

    /// Coefficients independent of w.
    pub fn is_rigid(&self) -> bool {
        [&self.f1, &self.f2, &self.g].iter().all(|p| p.terms().all(|(m, _)| m.cw == 0))
    }

    pub fn components(&self) -> [&MixedPoly; 3] {
        [&self.f1, &self.f2, &self.g]
    }

    /// Applies the field as a derivation in the holomorphic variables.
    pub fn apply(&self, p: &MixedPoly) -> MixedPoly {
        let a = &self.f1 * &p.wirtinger(HoloVar::Z1);
        let b = &self.f2 * &p.wirtinger(HoloVar::Z2);
        let c = &self.g * &p.wirtinger(HoloVar::W);
        &(&a + &b) + &c
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        HoloField { f1: self.f1.scale(c), f2: self.f2.scale(c), g: self.g.scale(c) }
    }

    pub fn add(&self, o: &Self) -> Self {
        HoloField { f1: &self.f1 + &o.f1, f2: &self.f2 + &o.f2, g: &self.g + &o.g }
    }

    pub fn sub(&self, o: &Self) -> Self {
        HoloField { f1: &self.f1 - &o.f1, f2: &self.f2 - &o.f2, g: &self.g - &o.g }
    }

    /// Commutator [self, other].
    pub fn bracket(&self, o: &Self) -> Self {
        HoloField {
            f1: &self.apply(&o.f1) - &o.apply(&self.f1),
            f2: &self.apply(&o.f2) - &o.apply(&self.f2),
            g: &self.apply(&o.g) - &o.apply(&self.g),
        }
    }

    /// Weighted degree of the field if it is weighted homogeneous:
    /// deg(f1) - mu1 = deg(f2) - mu2 = deg(g) - 1.
    pub fn weight(&self, mu1: &Rat, mu2: &Rat) -> Option<Rat> {
        let one = Rat::from_integer(1.into());
        let mut found: Option<Rat> = None;
        for (p, shift) in [(&self.f1, mu1), (&self.f2, mu2), (&self.g, &one)] {
            for (m, _) in p.terms() {
                let d = crate::weights::mono_degree(m, mu1, mu2) - shift;
                match &found {
                    None => found = Some(d),
                    Some(f) if *f != d => return None,
                    _ => {}
                }
            }
        }
        found
    }

    /// Linear part of (f1, f2) as the matrix [[a11, a12], [a21, a22]] with
    /// f_i = a_i1 z1 + a_i2 z2 + (other terms).
    pub fn linear_part(&self) -> [[GaussRat; 2]; 2] {
        let c = |p: &MixedPoly, m: Mono| p.coeff(&m);
        [
            [c(&self.f1, Mono::z(1, 0)), c(&self.f1, Mono::z(0, 1))],
            [c(&self.f2, Mono::z(1, 0)), c(&self.f2, Mono::z(0, 1))],
        ]
    }

    /// True if f1, f2 are linear in z and g vanishes.
    pub fn is_linear(&self) -> bool {
        self.g.is_zero()
            && [&self.f1, &self.f2]
                .iter()
                .all(|p| p.terms().all(|(m, _)| m.cw == 0 && m.a1 + m.a2 == 1))
    }

    pub fn from_linear(mat: &[[GaussRat; 2]; 2]) -> Self {
        let lin = |a: &GaussRat, b: &GaussRat| {
            MixedPoly::from_terms([(Mono::z(1, 0), a.clone()), (Mono::z(0, 1), b.clone())])
        };
        HoloField {
            f1: lin(&mat[0][0], &mat[0][1]),
            f2: lin(&mat[1][0], &mat[1][1]),
            g: MixedPoly::zero(),
        }
    }

    /// Returns c with self = c * other, if such a scalar exists.
    pub fn ratio_to(&self, other: &Self) -> Option<GaussRat> {
        let lead = other
            .components()
            .iter()
            .enumerate()
            .find_map(|(k, p)| p.leading().map(|(m, c)| (k, *m, c.clone())))?;
        let (k, m, c) = lead;
        let mine = self.components()[k].coeff(&m);
        let r = &mine / &c;
        if r.is_zero() {
            return None;
        }
        if other.scale(&r) == *self {
            Some(r)
        } else {
            None
        }
    }
}

impl fmt::Display for HoloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (p, dir) in [(&self.f1, "d1"), (&self.f2, "d2"), (&self.g, "dw")] {
            for (m, c) in p.terms() {
                terms.push(render_term(c, m, Some(dir)));
            }
        }
        write!(f, "{}", join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::{rat, rat_int};

    #[test]
    fn bracket_dw_euler() {
        let e = HoloField { g: MixedPoly::w(), ..HoloField::zero() };
        assert_eq!(HoloField::dw().bracket(&e), HoloField::dw());
    }

    #[test]
    fn bracket_with_diagonal_scales_monomials() {
        // [Y, z1^g z2^b d1] = (l1 (g - 1) + l2 b) z1^g z2^b d1
        let (l1, l2) = (rat(2, 3), rat(-5, 7));
        let y = HoloField::diagonal(&GaussRat::real(l1.clone()), &GaussRat::real(l2.clone()));
        for (g, b) in [(0u32, 3u32), (2, 1), (4, 0)] {
            let x = HoloField { f1: MixedPoly::mono(Mono::z(g, b)), ..HoloField::zero() };
            let k = &l1 * rat_int(g as i64 - 1) + &l2 * rat_int(b as i64);
            assert_eq!(y.bracket(&x), x.scale(&GaussRat::real(k)));
        }
    }

    #[test]
    fn bracket_against_termwise_expansion() {
        // [z1 d2, i z2^2 d1] = i (2 z1 z2 d1 ... ) computed by hand:
        // X = z1 d2, Y = i z2^2 d1.
        // X(Y.f1) = z1 * 2i z2 = 2i z1 z2 ; Y(X.f1) = 0  -> f1 = 2i z1 z2
        // X(Y.f2) = 0 ; Y(X.f2) = i z2^2 * 1 -> f2 = -i z2^2
        let x = HoloField { f2: MixedPoly::z1(), ..HoloField::zero() };
        let y = HoloField { f1: MixedPoly::term(Mono::z(0, 2), GaussRat::i()), ..HoloField::zero() };
        let expect = HoloField {
            f1: MixedPoly::term(Mono::z(1, 1), GaussRat::imag(rat_int(2))),
            f2: MixedPoly::term(Mono::z(0, 2), -GaussRat::i()),
            g: MixedPoly::zero(),
        };
        assert_eq!(x.bracket(&y), expect);
        assert_eq!(y.bracket(&x), expect.scale(&GaussRat::from_int(-1)));
    }

    #[test]
    fn rendering_and_weight() {
        let e = HoloField::euler(&rat(1, 3), &rat(1, 3));
        assert_eq!(e.to_string(), "1/3*z1*d1 + 1/3*z2*d2 + w*dw");
        assert_eq!(e.weight(&rat(1, 3), &rat(1, 3)), Some(rat_int(0)));
        assert_eq!(HoloField::dw().weight(&rat(1, 3), &rat(1, 3)), Some(rat_int(-1)));
        assert!(!e.is_rigid());
    }

    #[test]
    fn rejects_antiholomorphic() {
        assert!(HoloField::new(MixedPoly::zb1(), MixedPoly::zero(), MixedPoly::zero()).is_err());
    }
}
