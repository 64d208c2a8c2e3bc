//! Diagonal rotation detectors, the complex reproducing field, the Jordan
//! split of linear rotations and the nilpotent-rotation test.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::upoly::{arc_samples, UPoly};
use crate::algebra::{GaussRat, HoloField, MixedPoly, Rat};
use crate::error::{Error, Result};
use crate::linalg::{integer_row, rref_dense, Echelon};
use crate::tangency::is_symmetry;

/// Diagonal linear field lam1 z1 d/dz1 + lam2 z2 d/dz2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagField {
    pub lam1: GaussRat,
    pub lam2: GaussRat,
}

impl DiagField {
    pub fn field(&self) -> HoloField {
        HoloField::diagonal(&self.lam1, &self.lam2)
    }

    pub fn is_real(&self) -> bool {
        self.lam1.is_real() && self.lam2.is_real()
    }

    pub fn is_imag(&self) -> bool {
        self.lam1.is_imag() && self.lam2.is_imag()
    }
}

/// Primitive integer vector proportional to `v`, first nonzero entry positive.
fn primitive(v: &[Rat]) -> Vec<Rat> {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rat::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = ints.iter().find(|x| !x.is_zero()).map_or(BigInt::one(), |x| if x.is_negative() { -BigInt::one() } else { BigInt::one() });
    ints.into_iter().map(|x| Rat::from_integer(x * &sign / &g)).collect()
}

/// Integer kernel basis of the rows (two columns), as primitive vectors.
fn kernel2(rows: impl Iterator<Item = (i64, i64)>) -> Vec<[Rat; 2]> {
    let mut e = Echelon::new(2);
    for (a, b) in rows {
        e.push(integer_row([(0, Rat::from_integer(a.into())), (1, Rat::from_integer(b.into()))]));
    }
    e.kernel()
        .iter()
        .map(|v| {
            let p = primitive(v);
            [p[0].clone(), p[1].clone()]
        })
        .collect()
}

/// Real diagonal rotations: lam1 (a1 + b1) + lam2 (a2 + b2) = 0 on every monomial.
pub fn detect_real_rotations(p: &MixedPoly) -> Vec<DiagField> {
    kernel2(p.terms().map(|(m, _)| ((m.a1 + m.b1) as i64, (m.a2 + m.b2) as i64)))
        .into_iter()
        .map(|[a, b]| DiagField { lam1: GaussRat::real(a), lam2: GaussRat::real(b) })
        .collect()
}

/// Imaginary diagonal rotations i(lam1 z1 d1 + lam2 z2 d2):
/// lam1 (a1 - b1) + lam2 (a2 - b2) = 0 on every monomial.
pub fn detect_imag_rotations(p: &MixedPoly) -> Vec<DiagField> {
    kernel2(p.terms().map(|(m, _)| (m.a1 as i64 - m.b1 as i64, m.a2 as i64 - m.b2 as i64)))
        .into_iter()
        .map(|[a, b]| DiagField { lam1: GaussRat::imag(a), lam2: GaussRat::imag(b) })
        .collect()
}

/// Real (lam1, lam2) with lam1 a1 + lam2 a2 = lam1 b1 + lam2 b2 = 1 on every
/// monomial: the diagonal complex reproducing field, if one exists.
pub fn detect_balanced(p: &MixedPoly) -> Option<DiagField> {
    let one = Rat::one();
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for (m, _) in p.terms() {
        for (x, y) in [(m.a1, m.a2), (m.b1, m.b2)] {
            rows.push(vec![Rat::from_integer(x.into()), Rat::from_integer(y.into()), one.clone()]);
        }
    }
    let red = rref_dense(rows);
    let mut sol = [Rat::zero(), Rat::zero()];
    for row in &red {
        let lead = row.iter().position(|x| !x.is_zero())?;
        if lead == 2 {
            return None;
        }
        sol[lead] = row[2].clone();
    }
    let [a, b] = sol;
    Some(DiagField { lam1: GaussRat::real(a), lam2: GaussRat::real(b) })
}

pub type Mat2 = [[GaussRat; 2]; 2];

fn mat_scale(m: &Mat2, c: &GaussRat) -> Mat2 {
    [[&m[0][0] * c, &m[0][1] * c], [&m[1][0] * c, &m[1][1] * c]]
}

fn mat_add(a: &Mat2, b: &Mat2) -> Mat2 {
    [[&a[0][0] + &b[0][0], &a[0][1] + &b[0][1]], [&a[1][0] + &b[1][0], &a[1][1] + &b[1][1]]]
}

fn mat_sub(a: &Mat2, b: &Mat2) -> Mat2 {
    mat_add(a, &mat_scale(b, &GaussRat::from_int(-1)))
}

fn scalar_mat(c: &GaussRat) -> Mat2 {
    [[c.clone(), GaussRat::zero()], [GaussRat::zero(), c.clone()]]
}

fn is_zero_mat(m: &Mat2) -> bool {
    m.iter().flatten().all(|x| x.is_zero())
}

/// Exact square root of a nonnegative rational, if it is rational.
pub fn rat_sqrt(x: &Rat) -> Option<Rat> {
    if x.is_negative() {
        return None;
    }
    let n = x.numer().sqrt();
    let d = x.denom().sqrt();
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rat::new(n, d))
}

/// Real-semisimple, imaginary-semisimple and nilpotent parts of a 2x2
/// complex matrix (Jordan decomposition with eigenvalues split into real and
/// imaginary parts).
pub fn split_linear(m: &Mat2) -> Result<[Mat2; 3]> {
    let half = Rat::new(1.into(), 2.into());
    let c = (&m[0][0] + &m[1][1]).scale(&half);
    let d = mat_sub(m, &scalar_mat(&c));
    // delta = -det(D); eigenvalues of D are +-sqrt(delta)
    let delta = -(&(&d[0][0] * &d[1][1]) - &(&d[0][1] * &d[1][0]));
    let re_c = GaussRat::real(c.re.clone());
    let zero = scalar_mat(&GaussRat::zero());
    let (s_re, nil) = if delta.is_zero() {
        (scalar_mat(&re_c), d.clone())
    } else if delta.is_real() && delta.re.is_positive() {
        (mat_sub(m, &scalar_mat(&GaussRat::imag(c.im.clone()))), zero)
    } else if delta.is_real() {
        (scalar_mat(&re_c), zero)
    } else {
        let abs = rat_sqrt(&delta.norm_sqr()).ok_or_else(|| Error::IrrationalSplit(format!("|delta| = sqrt({})", delta.norm_sqr())))?;
        let f = (&GaussRat::one() + &delta.conj().scale(&(Rat::one() / &abs))).scale(&half);
        (mat_add(&scalar_mat(&re_c), &mat_scale(&d, &f)), zero)
    };
    let s_im = mat_sub(&mat_sub(m, &s_re), &nil);
    Ok([s_re, s_im, nil])
}

/// Parts of a rotation; each is present only if nonzero and a symmetry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSplit {
    pub re: Option<HoloField>,
    pub im: Option<HoloField>,
    pub nil: Option<HoloField>,
}

pub fn rotation_split(y: &HoloField, p: &MixedPoly) -> Result<RotationSplit> {
    if !y.is_linear() {
        return Err(Error::NonlinearRotation(y.to_string()));
    }
    let parts = split_linear(&y.linear_part())?;
    let keep = |m: &Mat2| {
        if is_zero_mat(m) {
            return None;
        }
        let f = HoloField::from_linear(m);
        is_symmetry(&f, p).then_some(f)
    };
    Ok(RotationSplit { re: keep(&parts[0]), im: keep(&parts[1]), nil: keep(&parts[2]) })
}

/// Real coordinates of a matrix: (re, im) of each entry.
fn mat_coords(m: &Mat2) -> Vec<Rat> {
    m.iter().flatten().flat_map(|x| [x.re.clone(), x.im.clone()]).collect()
}

fn mat_from_coords(v: &[Rat]) -> Mat2 {
    let g = |k: usize| GaussRat::new(v[2 * k].clone(), v[2 * k + 1].clone());
    [[g(0), g(1)], [g(2), g(3)]]
}

/// Polarized determinant on traceless matrices: B(N, N) = det N.
fn det_form(a: &Mat2, b: &Mat2) -> GaussRat {
    let half = Rat::new(1.into(), 2.into());
    let t = &(&a[0][0] * &b[0][0]) + &(&(&a[0][1] * &b[1][0]) + &(&a[1][0] * &b[0][1])).scale(&half);
    -t
}

fn det_rat(mut m: Vec<Vec<Rat>>) -> Rat {
    let n = m.len();
    let mut det = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        let piv = m[c][c].clone();
        det *= &piv;
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &piv;
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
    }
    det
}

/// Positive definiteness via pivots of symmetric elimination.
fn is_pos_def(mut m: Vec<Vec<Rat>>) -> bool {
    let n = m.len();
    for c in 0..n {
        if !m[c][c].is_positive() {
            return false;
        }
        let piv = m[c][c].clone();
        for r in c + 1..n {
            if !m[r][c].is_zero() {
                let f = &m[r][c] / &piv;
                let pivot_row = m[c].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(c) {
                    *x -= &f * y;
                }
            }
        }
    }
    true
}

fn combo(a: &[Vec<Rat>], b: &[Vec<Rat>], x: &Rat, sign: &Rat) -> Vec<Vec<Rat>> {
    a.iter().zip(b).map(|(ra, rb)| ra.iter().zip(rb).map(|(u, v)| sign * (u + x * v)).collect()).collect()
}

/// Whether two real quadratic forms on R^r (r >= 1) share a nonzero real zero.
fn common_real_zero(q1: &[Vec<Rat>], q2: &[Vec<Rat>]) -> bool {
    let r = q1.len();
    match r {
        0 => false,
        1 => q1[0][0].is_zero() && q2[0][0].is_zero(),
        2 => {
            let form = |q: &[Vec<Rat>]| [q[0][0].clone(), &q[0][1] * Rat::from_integer(2.into()), q[1][1].clone()];
            let (f1, f2) = (form(q1), form(q2));
            let nz = |f: &[Rat; 3]| f.iter().any(|x| !x.is_zero());
            let disc_ok = |f: &[Rat; 3]| !(&f[1] * &f[1] - Rat::from_integer(4.into()) * &f[0] * &f[2]).is_negative();
            match (nz(&f1), nz(&f2)) {
                (false, false) => true,
                (true, false) => disc_ok(&f1),
                (false, true) => disc_ok(&f2),
                (true, true) => {
                    let cross = |i: usize, j: usize| &f1[i] * &f2[j] - &f2[i] * &f1[j];
                    let proportional = cross(0, 1).is_zero() && cross(0, 2).is_zero() && cross(1, 2).is_zero();
                    if proportional {
                        return disc_ok(&f1);
                    }
                    // Resultant of two binary quadratics; a common factor is then linear and rational.
                    (&cross(0, 2) * &cross(0, 2) - &cross(0, 1) * &cross(1, 2)).is_zero()
                }
            }
        }
        _ => {
            // For r >= 3 two forms have no common nonzero zero exactly when some
            // combination is definite. Definiteness is constant on each arc
            // between zeros of det(q1 + x q2), so one sample per arc suffices.
            let pts: Vec<(Rat, Rat)> = (0..=r as i64)
                .map(|k| {
                    let x = Rat::from_integer(k.into());
                    let v = det_rat(combo(q1, q2, &x, &Rat::one()));
                    (x, v)
                })
                .collect();
            let d = UPoly::interpolate(&pts);
            if d.is_zero() {
                return true;
            }
            let one = Rat::one();
            let mut samples = arc_samples(&d);
            samples.push(Rat::zero());
            let definite = samples.iter().any(|x| [one.clone(), -one.clone()].iter().any(|s| is_pos_def(combo(q1, q2, x, s))))
                || [one.clone(), -one.clone()].iter().any(|s| is_pos_def(combo(&vec![vec![Rat::zero(); r]; r], q2, &one, s)));
            !definite
        }
    }
}

/// True if some real combination of the linear parts of the given rigid
/// weight-zero fields is nilpotent and nonzero.
pub fn has_nilpotent_rotation(rotations: &[HoloField]) -> bool {
    let mats: Vec<Mat2> = rotations.iter().map(|y| y.linear_part()).collect();
    if mats.is_empty() {
        return false;
    }
    // Traceless combinations: sum t_k tr(M_k) = 0 (two real equations).
    let mut ech = Echelon::new(mats.len());
    for part in 0..2 {
        ech.push(integer_row(mats.iter().enumerate().map(|(k, m)| {
            let t = &m[0][0] + &m[1][1];
            (k, if part == 0 { t.re } else { t.im })
        })));
    }
    let traceless: Vec<Vec<Rat>> = ech
        .kernel()
        .iter()
        .map(|t| {
            let mut acc = scalar_mat(&GaussRat::zero());
            for (tk, m) in t.iter().zip(&mats) {
                acc = mat_add(&acc, &mat_scale(m, &GaussRat::real(tk.clone())));
            }
            mat_coords(&acc)
        })
        .collect();
    let basis: Vec<Mat2> = if traceless.is_empty() { Vec::new() } else { rref_dense(traceless) }.iter().map(|v| mat_from_coords(v)).collect();
    let r = basis.len();
    let mut q1 = vec![vec![Rat::zero(); r]; r];
    let mut q2 = vec![vec![Rat::zero(); r]; r];
    for i in 0..r {
        for j in 0..r {
            let b = det_form(&basis[i], &basis[j]);
            q1[i][j] = b.re;
            q2[i][j] = b.im;
        }
    }
    common_real_zero(&q1, &q2)
}
