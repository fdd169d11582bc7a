//! Sparse exact linear algebra over Q(ζ_N).

use std::collections::BTreeMap;

use crate::scalars::CycScalar;

/// Sparse vector with strictly increasing indices and nonzero entries.
pub type SparseVec = Vec<(usize, CycScalar)>;

pub type Row = BTreeMap<usize, CycScalar>;

pub fn to_row(v: &[(usize, CycScalar)]) -> Row {
    let mut r = Row::new();
    for (i, c) in v {
        if !c.is_zero() {
            r.insert(*i, c.clone());
        }
    }
    r
}

pub fn from_row(r: &Row) -> SparseVec {
    r.iter().map(|(k, v)| (*k, v.clone())).collect()
}

/// `dst += c * src`, dropping cancelled entries.
pub fn axpy(dst: &mut Row, c: &CycScalar, src: &Row) {
    for (k, v) in src {
        let t = c * v;
        match dst.get_mut(k) {
            Some(e) => {
                *e += &t;
                if e.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                if !t.is_zero() {
                    dst.insert(*k, t);
                }
            }
        }
    }
}

/// Incremental row echelon form. Every stored row has leading coefficient 1.
#[derive(Clone, Debug)]
pub struct Echelon {
    level: u32,
    rows: Vec<Row>,
    pivot_of: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new(level: u32) -> Self {
        Echelon { level, rows: Vec::new(), pivot_of: BTreeMap::new() }
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.pivot_of.keys().copied().collect()
    }

    /// Residual of `v` after clearing every pivot column.
    pub fn reduce(&self, mut v: Row) -> Row {
        let mut cursor = 0usize;
        loop {
            let next = v.range(cursor..).find(|(k, _)| self.pivot_of.contains_key(k)).map(|(k, c)| (*k, c.clone()));
            let Some((col, coef)) = next else { break };
            let row = &self.rows[self.pivot_of[&col]];
            axpy(&mut v, &-&coef, row);
            cursor = col + 1;
        }
        v
    }

    pub fn contains(&self, v: Row) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the span; returns its new pivot column when independent.
    pub fn insert(&mut self, v: Row) -> Option<usize> {
        let r = self.reduce(v);
        let (&col, lead) = r.iter().next()?;
        let inv = lead.inv().expect("nonzero leading entry");
        let mut row = Row::new();
        for (k, c) in &r {
            row.insert(*k, c * &inv);
        }
        self.pivot_of.insert(col, self.rows.len());
        self.rows.push(row);
        Some(col)
    }

    /// Fully reduced row echelon basis, ordered by pivot column.
    pub fn rref(&self) -> Vec<Row> {
        let mut done: BTreeMap<usize, Row> = BTreeMap::new();
        for (&col, &idx) in self.pivot_of.iter().rev() {
            let mut row = self.rows[idx].clone();
            let later: Vec<(usize, CycScalar)> =
                row.range(col + 1..).filter(|(k, _)| done.contains_key(k)).map(|(k, c)| (*k, c.clone())).collect();
            for (k, c) in later {
                axpy(&mut row, &-&c, &done[&k]);
            }
            done.insert(col, row);
        }
        done.into_values().collect()
    }
}

/// Canonical basis (fully reduced echelon form) of the span of `vectors`.
pub fn span_basis(level: u32, vectors: impl IntoIterator<Item = Row>) -> Vec<Row> {
    let mut e = Echelon::new(level);
    for v in vectors {
        e.insert(v);
    }
    e.rref()
}

pub fn rank(level: u32, rows: impl IntoIterator<Item = Row>) -> usize {
    let mut e = Echelon::new(level);
    for v in rows {
        e.insert(v);
    }
    e.rank()
}

/// Basis of {x : M x = 0} for the matrix given by its rows over `ncols` columns.
pub fn nullspace(level: u32, rows: impl IntoIterator<Item = Row>, ncols: usize) -> Vec<Row> {
    let rref = span_basis(level, rows);
    let pivots: Vec<usize> = rref.iter().map(|r| *r.keys().next().unwrap()).collect();
    let is_pivot: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut out = Vec::new();
    for f in (0..ncols).filter(|c| !is_pivot.contains(c)) {
        let mut x = Row::new();
        x.insert(f, CycScalar::one(level));
        for (r, &p) in rref.iter().zip(pivots.iter()) {
            if let Some(c) = r.get(&f) {
                x.insert(p, -c);
            }
        }
        out.push(x);
    }
    out
}

/// Coordinates of `v` relative to a fully reduced echelon basis, if `v` lies in the span.
pub fn rref_coordinates(rref: &[Row], v: &Row) -> Option<Vec<CycScalar>> {
    let level = v.values().next().map(|c| c.level());
    let mut coords = Vec::with_capacity(rref.len());
    let mut acc = v.clone();
    for r in rref {
        let p = *r.keys().next().unwrap();
        let c = v.get(&p).cloned().unwrap_or_else(|| CycScalar::zero(level.unwrap_or_else(|| r[&p].level())));
        if !c.is_zero() {
            axpy(&mut acc, &-&c, r);
        }
        coords.push(c);
    }
    if acc.is_empty() {
        Some(coords)
    } else {
        None
    }
}

/// A solution x of Σ x_m·columns[m] = b, if one exists. Columns must live below `offset`.
pub fn solve(level: u32, columns: &[Row], b: &Row, offset: usize) -> Option<Row> {
    let mut e = Echelon::new(level);
    for (m, c) in columns.iter().enumerate() {
        let mut v = c.clone();
        v.insert(offset + m, CycScalar::one(level));
        e.insert(v);
    }
    let r = e.reduce(b.clone());
    if r.range(..offset).next().is_some() {
        return None;
    }
    Some(r.range(offset..).map(|(k, c)| (k - offset, -c)).collect())
}

/// Inverse of a dense square matrix, or `None` when singular.
pub fn dense_inverse(level: u32, m: &[Vec<CycScalar>]) -> Option<Vec<Vec<CycScalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<CycScalar>> = m.to_vec();
    let mut inv: Vec<Vec<CycScalar>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { CycScalar::one(level) } else { CycScalar::zero(level) }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let s = a[col][col].inv().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &s;
            inv[col][j] = &inv[col][j] * &s;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    if !a[col][j].is_zero() {
                        let t = &f * &a[col][j];
                        a[r][j] -= &t;
                    }
                    if !inv[col][j].is_zero() {
                        let t = &f * &inv[col][j];
                        inv[r][j] -= &t;
                    }
                }
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(level: u32, v: &[(usize, i64)]) -> Row {
        to_row(&v.iter().map(|&(k, c)| (k, CycScalar::from_int(level, c))).collect::<Vec<_>>())
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(1);
        assert_eq!(e.insert(r(1, &[(0, 1), (1, 1)])), Some(0));
        assert_eq!(e.insert(r(1, &[(1, 1), (2, 1)])), Some(1));
        assert_eq!(e.insert(r(1, &[(0, 1), (2, -1)])), None);
        assert!(e.contains(r(1, &[(0, 2), (1, 3), (2, 1)])));
        assert!(!e.contains(r(1, &[(2, 1)])));
        let rref = e.rref();
        assert_eq!(rref.len(), 2);
        assert_eq!(rref[0], r(1, &[(0, 1), (2, -1)]));
        let c = rref_coordinates(&rref, &r(1, &[(0, 2), (1, 3), (2, 1)])).unwrap();
        assert_eq!(c, vec![CycScalar::from_int(1, 2), CycScalar::from_int(1, 3)]);
    }

    #[test]
    fn nullspace_basic() {
        let ns = nullspace(1, vec![r(1, &[(0, 1), (1, 1)]), r(1, &[(1, 1), (2, 1)])], 3);
        assert_eq!(ns, vec![r(1, &[(0, 1), (1, -1), (2, 1)])]);
    }

    #[test]
    fn solve_system() {
        let cols = vec![r(1, &[(0, 1), (1, 1)]), r(1, &[(1, 1)]), r(1, &[(0, 2), (1, 3)])];
        let b = r(1, &[(0, 3), (1, 5)]);
        let x = solve(1, &cols, &b, 2).unwrap();
        let mut acc = Row::new();
        for (m, c) in &x {
            axpy(&mut acc, c, &cols[*m]);
        }
        assert_eq!(acc, b);
        assert!(solve(1, &[r(1, &[(0, 1)])], &r(1, &[(1, 1)]), 2).is_none());
    }

    #[test]
    fn inverse_matrix() {
        let l = 4;
        let i = CycScalar::root(4, 1);
        let m = vec![vec![CycScalar::one(l), i.clone()], vec![i.clone(), CycScalar::one(l)]];
        let inv = dense_inverse(l, &m).unwrap();
        let half = CycScalar::from_ratio(l, 1, 2);
        assert_eq!(inv[0][0], half);
        assert_eq!(inv[0][1], -&(&half * &i));
        let sing = vec![vec![CycScalar::one(l), i.clone()], vec![i.clone(), CycScalar::from_int(l, -1)]];
        assert!(dense_inverse(l, &sing).is_none());
    }
}
