//! X-pairs of chains: verification, pure pairs and their chain sums,
//! normalization of constants and decomposition into monomial pairs.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{factorial, GaussRat, HoloField, MixedPoly, Mono, Rat};
use crate::error::{Error, Result};

/// Longest chain accepted by default.
pub const DEFAULT_MAX_CHAIN_LEN: usize = 16;

/// Two chains U_0..U_m and V_0..V_m with the constants A_j, B_j of
/// X(U_j) = A_j U_{j+1}, X(V_j) = B_j V_{j+1} (empty until verified).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPair {
    pub u: Vec<MixedPoly>,
    pub v: Vec<MixedPoly>,
    pub a: Vec<GaussRat>,
    pub b: Vec<GaussRat>,
}

impl ChainPair {
    pub fn new(u: Vec<MixedPoly>, v: Vec<MixedPoly>) -> Self {
        ChainPair { u, v, a: Vec::new(), b: Vec::new() }
    }

    /// m, where the chains have length m + 1.
    pub fn m(&self) -> usize {
        self.u.len().saturating_sub(1)
    }
}

/// X = theta z1^alpha z2^beta (q z1 d/dz1 - p z2 d/dz2), with the boundary
/// cases alpha = -1 (p = 0) and beta = -1 (q = 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialDiagonal {
    pub theta: GaussRat,
    pub alpha: i64,
    pub beta: i64,
    pub p: u32,
    pub q: u32,
}

fn single_term(p: &MixedPoly) -> Option<(Mono, GaussRat)> {
    if p.len() != 1 {
        return None;
    }
    let (m, c) = p.leading()?;
    (m.cw == 0).then(|| (*m, c.clone()))
}

impl MonomialDiagonal {
    pub fn from_field(x: &HoloField) -> Result<Self> {
        if !x.g.is_zero() {
            return Err(Error::NotMonomialDiagonal);
        }
        let t1 = if x.f1.is_zero() { None } else { Some(single_term(&x.f1).ok_or(Error::NotMonomialDiagonal)?) };
        let t2 = if x.f2.is_zero() { None } else { Some(single_term(&x.f2).ok_or(Error::NotMonomialDiagonal)?) };
        match (t1, t2) {
            (Some((m1, a)), Some((m2, b))) => {
                let (alpha, beta) = (m1.a1 as i64 - 1, m1.a2 as i64);
                if (m2.a1 as i64, m2.a2 as i64 - 1) != (alpha, beta) {
                    return Err(Error::NotMonomialDiagonal);
                }
                // a / b = -q / p with p, q > 0 coprime
                let r = &a / &b;
                if !r.is_real() || !r.re.is_negative() {
                    return Err(Error::NotMonomialDiagonal);
                }
                let ratio = -r.re;
                let q: u32 = ratio.numer().try_into().map_err(|_| Error::NotMonomialDiagonal)?;
                let p: u32 = ratio.denom().try_into().map_err(|_| Error::NotMonomialDiagonal)?;
                let theta = a.scale(&Rat::new(1.into(), q.into()));
                Ok(MonomialDiagonal { theta, alpha, beta, p, q })
            }
            (Some((m1, a)), None) => Ok(MonomialDiagonal { theta: a, alpha: m1.a1 as i64 - 1, beta: m1.a2 as i64, p: 0, q: 1 }),
            (None, Some((m2, b))) => Ok(MonomialDiagonal { theta: -b, alpha: m2.a1 as i64, beta: m2.a2 as i64 - 1, p: 1, q: 0 }),
            (None, None) => Err(Error::NotMonomialDiagonal),
        }
    }

    pub fn field(&self) -> HoloField {
        let mut out = HoloField::zero();
        if self.q > 0 {
            let m = Mono::z((self.alpha + 1) as u32, self.beta as u32);
            out.f1 = MixedPoly::term(m, self.theta.scale(&Rat::from_integer(self.q.into())));
        }
        if self.p > 0 {
            let m = Mono::z(self.alpha as u32, (self.beta + 1) as u32);
            out.f2 = MixedPoly::term(m, self.theta.scale(&Rat::from_integer((-(self.p as i64)).into())));
        }
        out
    }

    /// theta (p beta - q alpha): X(Q^S / T^l) = l kappa Q^S / T^(l-1).
    pub fn kappa(&self) -> GaussRat {
        self.theta.scale(&Rat::from_integer((self.p as i64 * self.beta - self.q as i64 * self.alpha).into()))
    }

    /// Q = z1^p z2^q.
    pub fn annihilated(&self) -> Mono {
        Mono::z(self.p, self.q)
    }

    /// (S, l) with z1^s z2^t = Q^S / T^l, solved over the rationals.
    fn level(&self, s: u32, t: u32) -> Option<(Rat, Rat)> {
        let (p, q, a, b) = (self.p as i64, self.q as i64, self.alpha, self.beta);
        let det = q * a - p * b;
        if det == 0 {
            return None;
        }
        let (s, t) = (s as i64, t as i64);
        // s = S p - l a, t = S q - l b
        let big_s = Rat::new((b * s - a * t).into(), (p * b - q * a).into());
        let l = Rat::new((p * t - q * s).into(), det.into());
        Some((big_s, l))
    }
}

/// Minimal monomial annihilated by a monomial-diagonal field.
pub fn minimal_annihilated_monomial(x: &HoloField) -> Result<Mono> {
    Ok(MonomialDiagonal::from_field(x)?.annihilated())
}

/// c with a = c * b for polynomials, if it exists (b nonzero).
fn poly_ratio(a: &MixedPoly, b: &MixedPoly) -> Option<GaussRat> {
    let (m, c) = b.leading()?;
    let r = &a.coeff(m) / c;
    (b.scale(&r) == *a).then_some(r)
}

fn chain_constants(x: &HoloField, chain: &[MixedPoly], name: &str) -> Result<Vec<GaussRat>> {
    let mut out = Vec::new();
    for (j, w) in chain.windows(2).enumerate() {
        let img = x.apply(&w[0]);
        if w[1].is_zero() {
            return Err(Error::ChainRelation(format!("{name}_{} is zero", j + 1)));
        }
        match poly_ratio(&img, &w[1]) {
            Some(c) if !c.is_zero() => out.push(c),
            _ => return Err(Error::ChainRelation(format!("X({name}_{j}) is not a nonzero multiple of {name}_{}", j + 1))),
        }
    }
    let last = chain.last().ok_or_else(|| Error::ChainRelation(format!("empty chain {name}")))?;
    if !x.apply(last).is_zero() {
        return Err(Error::ChainRelation(format!("X({name}_{}) != 0", chain.len() - 1)));
    }
    Ok(out)
}

/// Checks every relation of an X-pair and returns the pair with its
/// constants filled in.
pub fn verify_xpair(x: &HoloField, pair: &ChainPair) -> Result<ChainPair> {
    if pair.u.len() != pair.v.len() || pair.u.is_empty() {
        return Err(Error::ChainRelation("chains must be nonempty and of equal length".into()));
    }
    if pair.u.len() > DEFAULT_MAX_CHAIN_LEN {
        return Err(Error::InvalidParams(format!("chain longer than {DEFAULT_MAX_CHAIN_LEN}")));
    }
    for p in pair.u.iter().chain(&pair.v) {
        if !p.is_holomorphic() || p.has_w() {
            return Err(Error::ChainRelation(format!("chain entry {p} is not a holomorphic polynomial in z")));
        }
    }
    let a = chain_constants(x, &pair.u, "U")?;
    let b = chain_constants(x, &pair.v, "V")?;
    let m = a.len();
    for j in 0..m {
        if a[j] != -b[m - j - 1].conj() {
            return Err(Error::ChainRelation(format!("A_{j} = {} but -conj(B_{}) = {}", a[j], m - j - 1, -b[m - j - 1].conj())));
        }
    }
    Ok(ChainPair { u: pair.u.clone(), v: pair.v.clone(), a, b })
}

/// Re(sum_j U_j conj(V_{m-j})).
pub fn chain_sum(pair: &ChainPair) -> MixedPoly {
    let m = pair.m();
    let mut acc = MixedPoly::zero();
    for j in 0..=m {
        acc = &acc + &(&pair.u[j] * &pair.v[m - j].conj());
    }
    acc.re()
}

/// Parameters of a pure X-pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurePairParams {
    pub p: u32,
    pub q: u32,
    pub alpha: i64,
    pub beta: i64,
    pub k: u32,
    pub n: u32,
    pub m: u32,
    pub tau: GaussRat,
}

impl PurePairParams {
    pub fn new(p: u32, q: u32, alpha: i64, beta: i64, k: u32, n: u32, m: u32) -> Self {
        PurePairParams { p, q, alpha, beta, k, n, m, tau: GaussRat::one() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |s: &str| Err(Error::InvalidParams(s.to_string()));
        let (p, q, k, m) = (self.p as i64, self.q as i64, self.k as i64, self.m as i64);
        if p.gcd(&q) != 1 {
            return bad("p and q must be coprime");
        }
        if self.alpha < -1 || self.beta < -1 {
            return bad("alpha and beta must be >= -1");
        }
        if (self.alpha == -1 && p != 0) || (self.beta == -1 && q != 0) {
            return bad("alpha = -1 requires p = 0 and beta = -1 requires q = 0");
        }
        if k < 1 {
            return bad("K must be positive");
        }
        if k * p <= m * self.alpha || k * q <= m * self.beta {
            return bad("need K p > m alpha and K q > m beta");
        }
        if p * self.beta - q * self.alpha == 0 {
            return bad("p beta - q alpha = 0 gives a holomorphically degenerate model");
        }
        if self.m as usize + 1 > DEFAULT_MAX_CHAIN_LEN {
            return bad("chain too long");
        }
        if self.tau.is_zero() {
            return bad("tau must be nonzero");
        }
        Ok(())
    }

    /// The monomial exotic field i z1^alpha z2^beta (q z1 d1 - p z2 d2).
    pub fn field(&self) -> HoloField {
        MonomialDiagonal { theta: GaussRat::i(), alpha: self.alpha, beta: self.beta, p: self.p, q: self.q }.field()
    }
}

fn mono_z(a: i64, b: i64) -> Mono {
    Mono::z(a as u32, b as u32)
}

/// U_{m-j} = Q^K / (j! T^j), V_{m-j} = tau U_{m-j} Q^N.
pub fn pure_pair(params: &PurePairParams) -> Result<ChainPair> {
    params.validate()?;
    let (p, q, k, n, m) = (params.p as i64, params.q as i64, params.k as i64, params.n as i64, params.m as usize);
    let mut u = vec![MixedPoly::zero(); m + 1];
    let mut v = vec![MixedPoly::zero(); m + 1];
    for j in 0..=m {
        let c = GaussRat::real(Rat::new(1.into(), factorial(j as u32)));
        let e1 = k * p - j as i64 * params.alpha;
        let e2 = k * q - j as i64 * params.beta;
        u[m - j] = MixedPoly::term(mono_z(e1, e2), c.clone());
        v[m - j] = MixedPoly::term(mono_z(e1 + n * p, e2 + n * q), &c * &params.tau);
    }
    let kappa = GaussRat::imag(Rat::from_integer((p * params.beta - q * params.alpha).into()));
    Ok(ChainPair { u, v, a: vec![kappa.clone(); m], b: vec![kappa; m] })
}

fn abs_sq(a1: u32, a2: u32) -> MixedPoly {
    MixedPoly::mono(Mono::zz(a1, a2, a1, a2))
}

/// (2^m / m!) Re(tau Q^N) |z1|^(2(Kp - m alpha)) |z2|^(2(Kq - m beta)) (Re T)^m,
/// with T multiplied by |z1|^2 (or |z2|^2) in the boundary cases.
pub fn pure_chain_sum_closed_form(params: &PurePairParams) -> Result<MixedPoly> {
    params.validate()?;
    let (p, q, k, n, m) = (params.p as i64, params.q as i64, params.k as i64, params.n, params.m as i64);
    let (mut e1, mut e2) = (k * p - m * params.alpha, k * q - m * params.beta);
    let t = if params.alpha == -1 {
        e1 -= m;
        MixedPoly::mono(Mono::zz(0, params.beta as u32, 1, 0))
    } else if params.beta == -1 {
        e2 -= m;
        MixedPoly::mono(Mono::zz(params.alpha as u32, 0, 0, 1))
    } else {
        MixedPoly::mono(mono_z(params.alpha, params.beta))
    };
    let c = Rat::new(num_bigint::BigInt::from(2).pow(m as u32), factorial(m as u32));
    let qn = MixedPoly::term(Mono::z(params.p * n, params.q * n), params.tau.clone()).re();
    let out = &(&qn * &abs_sq(e1 as u32, e2 as u32)) * &t.re().pow(m as u32);
    Ok(out.scale_rat(&c))
}

/// Rescales a verified pair so that all constants equal one imaginary
/// number c, then divides V by conj(tau) so the chain sum is unchanged.
/// c is kappa for a monomial-diagonal X with imaginary kappa, i otherwise.
pub fn normalize_chains(x: &HoloField, pair: &ChainPair) -> Result<ChainPair> {
    let pair = verify_xpair(x, pair)?;
    let c = match MonomialDiagonal::from_field(x) {
        Ok(md) if md.kappa().is_imag() && !md.kappa().is_zero() => md.kappa(),
        _ => GaussRat::i(),
    };
    let m = pair.m();
    let mut cs = vec![GaussRat::one()];
    let mut ds = vec![GaussRat::one()];
    for j in 0..m {
        cs.push(&(&cs[j] * &pair.a[j]) / &c);
        ds.push(&(&ds[j] * &pair.b[j]) / &c);
    }
    let tau = &cs[0] * &ds[m].conj();
    for j in 0..=m {
        if &cs[j] * &ds[m - j].conj() != tau {
            return Err(Error::ChainRelation("c_j conj(d_(m-j)) is not constant".into()));
        }
    }
    let fold = tau.conj().inv().expect("tau is nonzero");
    let u: Vec<MixedPoly> = pair.u.iter().zip(&cs).map(|(p, c)| p.scale(c)).collect();
    let v: Vec<MixedPoly> = pair.v.iter().zip(&ds).map(|(p, d)| p.scale(&(d * &fold))).collect();
    let out = ChainPair { u, v, a: vec![c.clone(); m], b: vec![c; m] };
    debug_assert_eq!(chain_sum(&out), chain_sum(&pair));
    Ok(out)
}

/// Family of monomials ending at index k with root Q^S: entries j = 0..=k.
type Families = BTreeMap<(usize, Rat), Vec<MixedPoly>>;

fn families(md: &MonomialDiagonal, chain: &[MixedPoly]) -> Result<Families> {
    let mut out: Families = BTreeMap::new();
    for (j, poly) in chain.iter().enumerate() {
        for (mono, c) in poly.terms() {
            let (s, l) = md.level(mono.a1, mono.a2).ok_or(Error::NotMonomialDiagonal)?;
            if !l.is_integer() || l.is_negative() {
                return Err(Error::ChainRelation(format!("monomial {mono} is not Q^S / T^l with integer l >= 0")));
            }
            let k = j + l.to_integer().try_into().unwrap_or(usize::MAX);
            if k >= chain.len() {
                return Err(Error::ChainRelation(format!("monomial {mono} of entry {j} never reaches the kernel of X")));
            }
            let fam = out.entry((k, s)).or_insert_with(|| vec![MixedPoly::zero(); k + 1]);
            fam[j] = &fam[j] + &MixedPoly::term(*mono, c.clone());
        }
    }
    Ok(out)
}

/// Splits an X-pair for a monomial-diagonal X into monomial X-pairs whose
/// chain sums add up to the original chain sum.
pub fn decompose_xpair(x: &HoloField, pair: &ChainPair) -> Result<Vec<ChainPair>> {
    let md = MonomialDiagonal::from_field(x)?;
    let norm = normalize_chains(x, pair)?;
    let m = norm.m();
    let fu = families(&md, &norm.u)?;
    let fv = families(&md, &norm.v)?;
    let mut out = Vec::new();
    for (ku, au) in &fu {
        for (lv, bv) in &fv {
            let (k, l) = (ku.0, lv.0);
            if k + l < m {
                continue;
            }
            let mt = k + l - m;
            let u = (0..=mt).map(|i| au[i + m - l].clone()).collect();
            let v = (0..=mt).map(|i| bv[i + m - k].clone()).collect();
            out.push(verify_xpair(x, &ChainPair::new(u, v))?);
        }
    }
    let total = out.iter().fold(MixedPoly::zero(), |acc, t| &acc + &chain_sum(t));
    if total != chain_sum(&norm) {
        return Err(Error::InternalInconsistency("decomposition does not reproduce the chain sum".into()));
    }
    Ok(out)
}
