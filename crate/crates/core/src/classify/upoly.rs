//! Dense univariate polynomials over the rationals with Sturm sequences,
//! used to sample every sign-constant arc of a determinant pencil.

use num_traits::{One, Signed, Zero};

use crate::algebra::Rat;

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(pub Vec<Rat>);

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        self.0.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(k, c)| c * Rat::from_integer(k.into())).collect())
    }

    fn lead(&self) -> &Rat {
        self.0.last().expect("zero polynomial")
    }

    /// Quotient and remainder of division by a nonzero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![Rat::zero(); self.0.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / d.lead();
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a
    }

    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.clone();
        }
        self.div_rem(&g).0
    }

    /// Bound B with every real root in (-B, B).
    pub fn root_bound(&self) -> Rat {
        let lead = self.lead().abs();
        let m = self.0.iter().map(|c| c.abs() / &lead).fold(Rat::zero(), |a, b| if b > a { b } else { a });
        m + Rat::one() + Rat::one()
    }

    /// Interpolating polynomial through (x_k, y_k) with distinct x_k.
    pub fn interpolate(points: &[(Rat, Rat)]) -> Self {
        let mut acc = UPoly::new(vec![]);
        for (j, (xj, yj)) in points.iter().enumerate() {
            let mut basis = vec![Rat::one()];
            let mut denom = Rat::one();
            for (k, (xk, _)) in points.iter().enumerate() {
                if k == j {
                    continue;
                }
                let mut next = vec![Rat::zero(); basis.len() + 1];
                for (i, c) in basis.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * xk;
                }
                basis = next;
                denom *= xj - xk;
            }
            let f = yj / &denom;
            let mut sum = acc.0.clone();
            sum.resize(sum.len().max(basis.len()), Rat::zero());
            for (i, c) in basis.iter().enumerate() {
                sum[i] += c * &f;
            }
            acc = UPoly::new(sum);
        }
        acc
    }
}

struct Sturm(Vec<UPoly>);

impl Sturm {
    fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].div_rem(&seq[n - 1]).1;
            seq.push(UPoly::new(r.0.into_iter().map(|c| -c).collect()));
        }
        seq.pop();
        Sturm(seq)
    }

    fn variations(&self, x: &Rat) -> usize {
        let signs: Vec<bool> = self.0.iter().map(|p| p.eval(x)).filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct roots in (a, b].
    fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations(a) - self.variations(b)
    }
}

/// Points x_0 < ... < x_n, none a root of `p`, such that every open interval
/// between consecutive real roots (and both unbounded ones) contains one.
pub fn arc_samples(p: &UPoly) -> Vec<Rat> {
    if p.degree().is_none_or(|d| d == 0) {
        return vec![Rat::zero()];
    }
    let sf = p.squarefree();
    let sturm = Sturm::new(&sf);
    let b = sf.root_bound();
    let mut out = vec![-b.clone()];
    split(&sf, &sturm, -b.clone(), b.clone(), &mut out);
    out.push(b);
    out
}

fn split(p: &UPoly, s: &Sturm, a: Rat, b: Rat, out: &mut Vec<Rat>) {
    if s.count(&a, &b) <= 1 {
        return;
    }
    let two = Rat::from_integer(2.into());
    let mut m = (&a + &b) / &two;
    while p.eval(&m).is_zero() {
        m = (&a + &m) / &two;
    }
    split(p, s, a, m.clone(), out);
    out.push(m.clone());
    split(p, s, m, b, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|x| rat_int(*x)).collect())
    }

    #[test]
    fn division_and_gcd() {
        let p = up(&[-1, 0, 1]); // x^2 - 1
        let q = up(&[1, 1]);
        let (d, r) = p.div_rem(&q);
        assert_eq!(d, up(&[-1, 1]));
        assert!(r.is_zero());
        let sq = up(&[1, 2, 1]); // (x+1)^2
        assert_eq!(sq.squarefree().degree(), Some(1));
    }

    #[test]
    fn samples_separate_roots() {
        // roots -1, 0, 1/2, 1/2 (double), 3
        let p = UPoly::new(
            [(-1, 1), (0, 1), (1, 2), (1, 2), (3, 1)]
                .iter()
                .fold(UPoly::new(vec![rat_int(1)]), |acc, &(n, d)| {
                    let lin = UPoly::new(vec![-rat(n, d), rat_int(1)]);
                    let mut c = vec![Rat::zero(); acc.0.len() + 1];
                    for (i, a) in acc.0.iter().enumerate() {
                        for (j, b) in lin.0.iter().enumerate() {
                            c[i + j] += a * b;
                        }
                    }
                    UPoly::new(c)
                })
                .0,
        );
        let s = arc_samples(&p);
        let roots = [rat_int(-1), rat_int(0), rat(1, 2), rat_int(3)];
        for x in &s {
            assert!(!p.eval(x).is_zero());
        }
        for w in roots.windows(2) {
            assert!(s.iter().any(|x| *x > w[0] && *x < w[1]), "no sample in ({}, {})", w[0], w[1]);
        }
        assert!(s.iter().any(|x| *x < roots[0]) && s.iter().any(|x| *x > roots[3]));
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = up(&[3, -2, 0, 5]);
        let pts: Vec<(Rat, Rat)> = (0..4).map(|k| (rat_int(k), p.eval(&rat_int(k)))).collect();
        assert_eq!(UPoly::interpolate(&pts), p);
    }
}
