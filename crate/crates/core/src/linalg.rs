//! Exact linear algebra: an incremental fraction-free sparse echelon form
//! over the integers for the symmetry equations, plus small dense rational
//! helpers for post-processing subspaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::Rat;

/// Sparse integer row, sorted by column, no zero entries.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Clears denominators and removes the content of a rational row.
pub fn integer_row(entries: impl IntoIterator<Item = (usize, Rat)>) -> SparseRow {
    let mut map: BTreeMap<usize, Rat> = BTreeMap::new();
    for (c, v) in entries {
        let e = map.entry(c).or_insert_with(Rat::zero);
        *e += v;
    }
    map.retain(|_, v| !v.is_zero());
    let lcm = map.values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut row: SparseRow = map.into_iter().map(|(c, v)| (c, (v * Rat::from_integer(lcm.clone())).to_integer())).collect();
    primitive(&mut row);
    row
}

fn primitive(row: &mut SparseRow) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v /= &g;
        }
    }
    if let Some((_, v)) = row.first() {
        if v.is_negative() {
            for (_, v) in row.iter_mut() {
                *v = -&*v;
            }
        }
    }
}

/// a * x - b * y for sparse rows.
fn combine(a: &BigInt, x: &SparseRow, b: &BigInt, y: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let v = a * &x[i].1 - b * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Eliminates column `col` of `row` using `piv` (whose leading column is `col`).
fn eliminate(row: &SparseRow, piv: &SparseRow, col: usize) -> SparseRow {
    let Ok(k) = row.binary_search_by_key(&col, |(c, _)| *c) else {
        return row.clone();
    };
    let c = &row[k].1;
    let p = &piv[0].1;
    let g = c.gcd(p);
    let mut out = combine(&(p / &g), row, &(c / &g), piv);
    primitive(&mut out);
    out
}

/// Row echelon form built one row at a time. Pivot columns are unique.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` to a form whose leading column is not a pivot.
    fn reduce_lead(&self, mut row: SparseRow) -> SparseRow {
        while let Some(&(c, _)) = row.first() {
            match self.pivots.get(&c) {
                Some(p) => row = eliminate(&row, p, c),
                None => break,
            }
        }
        row
    }

    /// Adds a row; returns true if it increased the rank.
    pub fn push(&mut self, row: SparseRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.ncols));
        let row = self.reduce_lead(row);
        match row.first() {
            Some(&(c, _)) => {
                self.pivots.insert(c, row);
                true
            }
            None => false,
        }
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ncols
    }

    /// Reduced row echelon form over the rationals with leading entries 1.
    pub fn rref(&self) -> Vec<(usize, Vec<(usize, Rat)>)> {
        let mut reduced: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (&c, row) in self.pivots.iter().rev() {
            let mut r = row.clone();
            let later: Vec<usize> = r.iter().skip(1).map(|(k, _)| *k).filter(|k| reduced.contains_key(k)).collect();
            for k in later {
                r = eliminate(&r, &reduced[&k], k);
            }
            reduced.insert(c, r);
        }
        reduced
            .into_iter()
            .map(|(c, r)| {
                let lead = Rat::from_integer(r[0].1.clone());
                (c, r.into_iter().map(|(k, v)| (k, Rat::from_integer(v) / &lead)).collect())
            })
            .collect()
    }

    /// Basis of the solution space of all pushed rows, in reduced row
    /// echelon form (canonical for the subspace).
    pub fn kernel(&self) -> Vec<Vec<Rat>> {
        let rref = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rat::zero(); self.ncols];
            v[f] = Rat::one();
            for (p, row) in &rref {
                if let Some((_, a)) = row.iter().find(|(k, _)| *k == f) {
                    v[*p] = -a.clone();
                }
            }
            basis.push(v);
        }
        rref_dense(basis)
    }
}

/// Reduced row echelon form of dense rational rows, zero rows dropped.
pub fn rref_dense(mut rows: Vec<Vec<Rat>>) -> Vec<Vec<Rat>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][c].clone();
        for v in rows[r].iter_mut() {
            *v /= &lead;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

pub fn rank_dense(rows: &[Vec<Rat>]) -> usize {
    rref_dense(rows.to_vec()).len()
}

/// Coordinates c with sum c_i basis_i = v, if v lies in the span.
pub fn solve_in_span(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    let n = basis.len();
    let m = v.len();
    // Columns are basis vectors; augmented with v.
    let rows: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            let mut r: Vec<Rat> = basis.iter().map(|b| b[i].clone()).collect();
            r.push(v[i].clone());
            r
        })
        .collect();
    let red = rref_dense(rows);
    let mut coeffs = vec![Rat::zero(); n];
    for row in &red {
        let lead = row.iter().position(|x| !x.is_zero())?;
        if lead == n {
            return None;
        }
        coeffs[lead] = row[n].clone();
    }
    Some(coeffs)
}

/// Basis (RREF) of the intersection of two subspaces given by spanning rows.
pub fn intersect(a: &[Vec<Rat>], b: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let m = a[0].len();
    // Solve sum x_i a_i - sum y_j b_j = 0.
    let k = a.len() + b.len();
    let mut ech = Echelon::new(k);
    for i in 0..m {
        let entries = a
            .iter()
            .enumerate()
            .map(|(j, v)| (j, v[i].clone()))
            .chain(b.iter().enumerate().map(|(j, v)| (a.len() + j, -v[i].clone())));
        ech.push(integer_row(entries));
    }
    let vecs: Vec<Vec<Rat>> = ech
        .kernel()
        .into_iter()
        .map(|x| {
            let mut out = vec![Rat::zero(); m];
            for (j, v) in a.iter().enumerate() {
                if !x[j].is_zero() {
                    for (o, y) in out.iter_mut().zip(v) {
                        *o += &x[j] * y;
                    }
                }
            }
            out
        })
        .collect();
    rref_dense(vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{rat, rat_int};
    use proptest::prelude::*;

    fn dense_mul(rows: &[Vec<i64>], v: &[Rat]) -> Vec<Rat> {
        rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| rat_int(*a) * b).sum()).collect()
    }

    fn echelon_of(rows: &[Vec<i64>], n: usize) -> Echelon {
        let mut e = Echelon::new(n);
        for r in rows {
            e.push(integer_row(r.iter().enumerate().map(|(c, v)| (c, rat_int(*v)))));
        }
        e
    }

    #[test]
    fn kernel_small() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let k = echelon_of(&rows, 3).kernel();
        assert_eq!(k.len(), 2);
        assert_eq!(k[0], vec![rat_int(1), rat_int(0), rat(-1, 3)]);
        assert_eq!(k[1], vec![rat_int(0), rat_int(1), rat(-2, 3)]);
        for v in &k {
            assert!(dense_mul(&rows, v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn intersect_planes() {
        let a = vec![vec![rat_int(1), rat_int(0), rat_int(0)], vec![rat_int(0), rat_int(1), rat_int(0)]];
        let b = vec![vec![rat_int(0), rat_int(1), rat_int(0)], vec![rat_int(0), rat_int(0), rat_int(1)]];
        assert_eq!(intersect(&a, &b), vec![vec![rat_int(0), rat_int(1), rat_int(0)]]);
    }

    #[test]
    fn span_membership() {
        let basis = vec![vec![rat_int(1), rat_int(1)], vec![rat_int(1), rat_int(-1)]];
        assert_eq!(solve_in_span(&basis, &[rat_int(3), rat_int(1)]), Some(vec![rat_int(2), rat_int(1)]));
        let basis = vec![vec![rat_int(1), rat_int(1)]];
        assert_eq!(solve_in_span(&basis, &[rat_int(3), rat_int(1)]), None);
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated_and_has_right_dimension(
            rows in prop::collection::vec(prop::collection::vec(-4i64..5, 6), 0..7)
        ) {
            let e = echelon_of(&rows, 6);
            let k = e.kernel();
            for v in &k {
                prop_assert!(dense_mul(&rows, v).iter().all(|x| x.is_zero()));
            }
            let dense: Vec<Vec<Rat>> = rows.iter().map(|r| r.iter().map(|x| rat_int(*x)).collect()).collect();
            let rank = if dense.is_empty() { 0 } else { rank_dense(&dense) };
            prop_assert_eq!(e.rank(), rank);
            prop_assert_eq!(k.len(), 6 - rank);
            prop_assert_eq!(rank_dense(&k), k.len());
        }
    }
}
