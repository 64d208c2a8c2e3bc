use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mono::Mono;
use super::scalar::{GaussRat, Rat};
use crate::error::{Error, Result};

/// Holomorphic variable for Wirtinger derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoloVar {
    Z1,
    Z2,
    W,
}

/// Sparse polynomial in z1, z2, their conjugates, w, w-bar and u with
/// Gaussian-rational coefficients. Zero coefficients are never stored.
///
/// `real` caches whether the polynomial is known to be real valued. It is
/// conservative: `false` means "not known to be real".
#[derive(Clone, Debug)]
pub struct MixedPoly {
    terms: BTreeMap<Mono, GaussRat>,
    real: bool,
}

impl PartialEq for MixedPoly {
    fn eq(&self, o: &Self) -> bool {
        self.terms == o.terms
    }
}

impl Eq for MixedPoly {}

impl Default for MixedPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl MixedPoly {
    pub fn zero() -> Self {
        MixedPoly { terms: BTreeMap::new(), real: true }
    }

    pub fn one() -> Self {
        Self::constant(GaussRat::one())
    }

    pub fn constant(c: GaussRat) -> Self {
        Self::term(Mono::ONE, c)
    }

    pub fn term(m: Mono, c: GaussRat) -> Self {
        let real = c.is_real() && m == m.conj();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MixedPoly { terms, real }
    }

    pub fn mono(m: Mono) -> Self {
        Self::term(m, GaussRat::one())
    }

    pub fn z1() -> Self {
        Self::mono(Mono::z(1, 0))
    }
    pub fn z2() -> Self {
        Self::mono(Mono::z(0, 1))
    }
    pub fn zb1() -> Self {
        Self::mono(Mono::zz(0, 0, 1, 0))
    }
    pub fn zb2() -> Self {
        Self::mono(Mono::zz(0, 0, 0, 1))
    }
    pub fn w() -> Self {
        Self::mono(Mono::holo(0, 0, 1))
    }
    pub fn u() -> Self {
        Self::mono(Mono { cu: 1, ..Mono::ONE })
    }

    /// Builds from arbitrary terms, summing duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Mono, GaussRat)>>(it: I) -> Self {
        let mut p = MixedPoly { terms: BTreeMap::new(), real: false };
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p.real = p.check_real();
        p
    }

    /// Accepts `p` only if it is real valued.
    pub fn real_from(p: MixedPoly) -> Result<Self> {
        if p.check_real() {
            Ok(MixedPoly { real: true, ..p })
        } else {
            Err(Error::NonRealModel)
        }
    }

    fn add_term(&mut self, m: Mono, c: &GaussRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Mono) -> GaussRat {
        self.terms.get(m).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn reality_flag(&self) -> bool {
        self.real
    }

    /// Exact reality test: every (a,b) term is matched by a conjugate (b,a) term.
    pub fn check_real(&self) -> bool {
        self.terms
            .iter()
            .all(|(m, c)| self.terms.get(&m.conj()).is_some_and(|d| *d == c.conj()))
    }

    pub fn is_holomorphic(&self) -> bool {
        self.terms.keys().all(Mono::is_holomorphic)
    }

    pub fn has_w(&self) -> bool {
        self.terms.keys().any(Mono::has_w)
    }

    pub fn leading(&self) -> Option<(&Mono, &GaussRat)> {
        self.terms.iter().next()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MixedPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
            real: self.real && c.is_real(),
        }
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        self.scale(&GaussRat::real(r.clone()))
    }

    pub fn mul_mono(&self, m: &Mono, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MixedPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
            real: false,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Swaps holomorphic and antiholomorphic exponents and conjugates coefficients.
    pub fn conj(&self) -> Self {
        MixedPoly {
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
            real: self.real,
        }
    }

    /// (p + conj p) / 2.
    pub fn re(&self) -> Self {
        let half = GaussRat::real(Rat::new(1.into(), 2.into()));
        let mut s = (self + &self.conj()).scale(&half);
        s.real = true;
        s
    }

    /// (p - conj p) / 2i.
    pub fn im(&self) -> Self {
        let k = GaussRat::imag(Rat::new((-1).into(), 2.into()));
        let mut s = (self - &self.conj()).scale(&k);
        s.real = true;
        s
    }

    /// Formal partial derivative with respect to a holomorphic variable.
    pub fn wirtinger(&self, var: HoloVar) -> Self {
        let mut out = MixedPoly { terms: BTreeMap::new(), real: false };
        for (m, c) in &self.terms {
            let e = match var {
                HoloVar::Z1 => m.a1,
                HoloVar::Z2 => m.a2,
                HoloVar::W => m.cw,
            };
            if e == 0 {
                continue;
            }
            let mut d = *m;
            match var {
                HoloVar::Z1 => d.a1 -= 1,
                HoloVar::Z2 => d.a2 -= 1,
                HoloVar::W => d.cw -= 1,
            }
            out.add_term(d, &c.scale(&Rat::from_integer(e.into())));
        }
        out
    }

    /// Sum of the terms that are purely holomorphic or purely antiholomorphic.
    pub fn pluriharmonic_part(&self) -> Self {
        MixedPoly {
            terms: self.terms.iter().filter(|(m, _)| !m.is_mixed()).map(|(m, c)| (*m, c.clone())).collect(),
            real: self.real,
        }
    }

    pub fn mixed_part(&self) -> Self {
        MixedPoly {
            terms: self.terms.iter().filter(|(m, _)| m.is_mixed()).map(|(m, c)| (*m, c.clone())).collect(),
            real: self.real,
        }
    }

    /// A real polynomial is pluriharmonic iff it has no mixed monomial.
    pub fn is_pluriharmonic(&self) -> Result<bool> {
        if !self.check_real() {
            return Err(Error::NonRealModel);
        }
        Ok(self.terms.keys().all(|m| !m.is_mixed()))
    }

    /// Restricts to the hypersurface Im w = P: w := u + iP, w-bar := u - iP.
    pub fn substitute_w(&self, p: &MixedPoly) -> Self {
        if !self.has_w() {
            return self.clone();
        }
        let ip = p.scale(&GaussRat::i());
        let hol = &Self::u() + &ip;
        let anti = &Self::u() - &ip;
        let mut hol_pows = vec![Self::one()];
        let mut anti_pows = vec![Self::one()];
        let mut out = MixedPoly { terms: BTreeMap::new(), real: false };
        for (m, c) in &self.terms {
            while hol_pows.len() <= m.cw as usize {
                let next = hol_pows.last().unwrap() * &hol;
                hol_pows.push(next);
            }
            while anti_pows.len() <= m.cwb as usize {
                let next = anti_pows.last().unwrap() * &anti;
                anti_pows.push(next);
            }
            let base = Mono { cw: 0, cwb: 0, ..*m };
            let sub = &hol_pows[m.cw as usize] * &anti_pows[m.cwb as usize];
            for (k, v) in &sub.terms {
                out.add_term(k.mul(&base), &(v * c));
            }
        }
        out.real = self.real;
        out
    }

    /// Sum of the two sides; the result is real when both inputs are.
    fn combine(&self, o: &Self, sign: bool) -> Self {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            if sign {
                out.add_term(*m, c);
            } else {
                out.add_term(*m, &-c);
            }
        }
        out.real = self.real && o.real;
        out
    }
}

impl Add for &MixedPoly {
    type Output = MixedPoly;
    fn add(self, o: &MixedPoly) -> MixedPoly {
        self.combine(o, true)
    }
}

impl Sub for &MixedPoly {
    type Output = MixedPoly;
    fn sub(self, o: &MixedPoly) -> MixedPoly {
        self.combine(o, false)
    }
}

impl Mul for &MixedPoly {
    type Output = MixedPoly;
    fn mul(self, o: &MixedPoly) -> MixedPoly {
        let mut out = MixedPoly { terms: BTreeMap::new(), real: false };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out.real = self.real && o.real;
        out
    }
}

impl Neg for &MixedPoly {
    type Output = MixedPoly;
    fn neg(self) -> MixedPoly {
        self.scale(&GaussRat::from_int(-1))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<MixedPoly> for MixedPoly {
            type Output = MixedPoly;
            fn $m(self, o: MixedPoly) -> MixedPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Renders one term `c*m*suffix` in canonical form.
pub(crate) fn render_term(c: &GaussRat, m: &Mono, suffix: Option<&str>) -> String {
    let mut factors = Vec::new();
    if !m.is_one() {
        factors.push(m.to_string());
    }
    if let Some(s) = suffix {
        factors.push(s.to_string());
    }
    if factors.is_empty() {
        return c.to_string();
    }
    let body = factors.join("*");
    let minus_one = GaussRat::from_int(-1);
    if c.is_one() {
        body
    } else if *c == minus_one {
        format!("-{body}")
    } else if c.is_real() || c.is_imag() {
        format!("{c}*{body}")
    } else {
        format!("({c})*{body}")
    }
}

pub(crate) fn join_terms(terms: Vec<String>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, t) in terms.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}

impl fmt::Display for MixedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms.iter().map(|(m, c)| render_term(c, m, None)).collect();
        write!(f, "{}", join_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::rat;

    fn re_zb1_z2sq() -> MixedPoly {
        (&MixedPoly::zb1() * &MixedPoly::z2().pow(2)).re()
    }

    #[test]
    fn additive_identity_and_scaling() {
        let p = &(&MixedPoly::z1() * &MixedPoly::zb2()) + &(&MixedPoly::zb1() * &MixedPoly::z2());
        assert_eq!(&p + &MixedPoly::zero(), p);
        let half = p.scale_rat(&rat(1, 2));
        assert_eq!(&half * &MixedPoly::constant(GaussRat::from_int(2)), p);
    }

    #[test]
    fn exponents_add() {
        let a = MixedPoly::mono(Mono::z(1, 2));
        let b = MixedPoly::mono(Mono::zz(0, 0, 2, 2));
        assert_eq!(&a * &b, MixedPoly::mono(Mono::zz(1, 2, 2, 2)));
    }

    #[test]
    fn conjugation() {
        let p = MixedPoly::term(Mono::zz(1, 0, 0, 1), GaussRat::i());
        assert_eq!(p.conj(), MixedPoly::term(Mono::zz(0, 1, 1, 0), -GaussRat::i()));
        let q = re_zb1_z2sq();
        assert!(q.reality_flag());
        assert_eq!(q.conj(), q);
        assert_eq!(MixedPoly::mono(Mono::z(2, 3)).conj(), MixedPoly::mono(Mono::zz(0, 0, 2, 3)));
    }

    #[test]
    fn wirtinger_examples() {
        let p = re_zb1_z2sq();
        assert_eq!(p.wirtinger(HoloVar::Z1), MixedPoly::term(Mono::zz(0, 0, 0, 2), GaussRat::real(rat(1, 2))));
        let q = MixedPoly::mono(Mono::zz(2, 0, 2, 0));
        assert_eq!(q.wirtinger(HoloVar::Z1), MixedPoly::term(Mono::zz(1, 0, 2, 0), GaussRat::from_int(2)));
        // i z1^2 z2^3 (z1 - z2) = i (z1^3 z2^3 - z1^2 z2^4)
        let pp = MixedPoly::from_terms([(Mono::z(3, 3), GaussRat::i()), (Mono::z(2, 4), -GaussRat::i())]);
        let expect = MixedPoly::from_terms([(Mono::z(3, 2), GaussRat::imag(rat(3, 1))), (Mono::z(2, 3), GaussRat::imag(rat(-4, 1)))]);
        assert_eq!(pp.wirtinger(HoloVar::Z2), expect);
    }

    #[test]
    fn pluriharmonic_checks() {
        assert!(MixedPoly::z2().pow(2).re().is_pluriharmonic().unwrap());
        assert!(!MixedPoly::mono(Mono::zz(1, 0, 1, 0)).is_pluriharmonic().unwrap());
        assert!(!re_zb1_z2sq().is_pluriharmonic().unwrap());
        assert_eq!(MixedPoly::z1().is_pluriharmonic(), Err(Error::NonRealModel));
    }

    #[test]
    fn substitution() {
        let p = MixedPoly::mono(Mono::zz(1, 0, 1, 0));
        let expect = &MixedPoly::u() + &p.scale(&GaussRat::i());
        assert_eq!(MixedPoly::w().substitute_w(&p), expect);
        assert_eq!(MixedPoly::w().pow(2).substitute_w(&MixedPoly::zero()), MixedPoly::u().pow(2));
        let q = re_zb1_z2sq();
        let iw = MixedPoly::w().scale(&GaussRat::i());
        let expect = &MixedPoly::u().scale(&GaussRat::i()) - &q;
        assert_eq!(iw.substitute_w(&q), expect);
    }

    #[test]
    fn rendering() {
        assert_eq!(re_zb1_z2sq().to_string(), "1/2*z2^2*Z1 + 1/2*z1*Z2^2");
        let p = MixedPoly::from_terms([
            (Mono::ONE, GaussRat::new(rat(1, 2), rat(-1, 3))),
            (Mono::z(1, 0), GaussRat::new(rat(-1, 1), rat(1, 1))),
            (Mono::z(0, 1), GaussRat::from_int(-2)),
        ]);
        assert_eq!(p.to_string(), "1/2-1/3*i - 2*z2 + (-1+i)*z1");
    }
}
