//! Finite-dimensional associative algebras given by structure constants,
//! sparse elements of tensor powers, linear maps, and radical filtrations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{QhError, Result};
use crate::linalg::{self, axpy, Echelon, Row, SparseVec};
use crate::scalars::CycScalar;

/// An associative unital algebra with basis e_0, …, e_{dim-1}.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureAlgebra {
    pub dim: usize,
    pub level: u32,
    mult: Vec<SparseVec>,
    pub unit: SparseVec,
    pub grading: Option<Vec<u32>>,
    /// Extra multigrading (one weight vector per basis element), used to split cochain complexes.
    pub weights: Option<Vec<Vec<i32>>>,
    /// Basis indices generating the algebra; enables generator-based checks.
    pub generators: Option<Vec<usize>>,
    pub labels: Option<Vec<String>>,
}

/// A sparse element of A^{⊗arity}, keyed by the flat index i₁·dim^{k−1}+…+i_k.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element {
    pub dim: usize,
    pub arity: usize,
    pub level: u32,
    pub terms: BTreeMap<u64, CycScalar>,
}

/// A linear map (source algebra)^{⊗s} → (target algebra)^{⊗t}, stored by columns.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearMap {
    pub source_dim: usize,
    pub source_arity: usize,
    pub target_dim: usize,
    pub target_arity: usize,
    pub columns: Vec<Element>,
}

pub fn digits(mut key: u64, dim: usize, arity: usize) -> Vec<usize> {
    let mut d = vec![0usize; arity];
    for s in (0..arity).rev() {
        d[s] = (key % dim as u64) as usize;
        key /= dim as u64;
    }
    d
}

pub fn flat(ds: &[usize], dim: usize) -> u64 {
    ds.iter().fold(0u64, |acc, &d| acc * dim as u64 + d as u64)
}

fn add_term(map: &mut BTreeMap<u64, CycScalar>, key: u64, c: CycScalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&key) {
        Some(e) => {
            *e += &c;
            if e.is_zero() {
                map.remove(&key);
            }
        }
        None => {
            map.insert(key, c);
        }
    }
}

impl Element {
    pub fn zero(dim: usize, arity: usize, level: u32) -> Self {
        Element { dim, arity, level, terms: BTreeMap::new() }
    }

    pub fn basis(dim: usize, level: u32, i: usize) -> Self {
        Self::basis_tuple(dim, level, &[i])
    }

    pub fn basis_tuple(dim: usize, level: u32, idx: &[usize]) -> Self {
        let mut e = Self::zero(dim, idx.len(), level);
        e.terms.insert(flat(idx, dim), CycScalar::one(level));
        e
    }

    pub fn scalar(level: u32, c: CycScalar) -> Self {
        let mut e = Self::zero(1, 0, level);
        add_term(&mut e.terms, 0, c);
        e
    }

    pub fn from_sparse(dim: usize, level: u32, v: &[(usize, CycScalar)]) -> Self {
        let mut e = Self::zero(dim, 1, level);
        for (i, c) in v {
            add_term(&mut e.terms, *i as u64, c.clone());
        }
        e
    }

    pub fn to_row(&self) -> Row {
        self.terms.iter().map(|(k, c)| (*k as usize, c.clone())).collect()
    }

    pub fn from_row(dim: usize, arity: usize, level: u32, r: &Row) -> Self {
        let mut e = Self::zero(dim, arity, level);
        for (k, c) in r {
            add_term(&mut e.terms, *k as u64, c.clone());
        }
        e
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, key: u64) -> CycScalar {
        self.terms.get(&key).cloned().unwrap_or_else(|| CycScalar::zero(self.level))
    }

    pub fn coeff_at(&self, idx: &[usize]) -> CycScalar {
        self.coeff(flat(idx, self.dim))
    }

    /// Scalar value of an arity-0 element.
    pub fn scalar_value(&self) -> CycScalar {
        self.coeff(0)
    }

    pub fn iter_tuples(&self) -> impl Iterator<Item = (Vec<usize>, &CycScalar)> {
        self.terms.iter().map(move |(k, c)| (digits(*k, self.dim, self.arity), c))
    }

    fn check_shape(&self, o: &Element) {
        assert!(self.dim == o.dim && self.arity == o.arity, "element shape mismatch");
    }

    pub fn add(&self, o: &Element) -> Element {
        self.check_shape(o);
        let mut r = self.clone();
        for (k, c) in &o.terms {
            add_term(&mut r.terms, *k, c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Element) -> Element {
        self.check_shape(o);
        let mut r = self.clone();
        for (k, c) in &o.terms {
            add_term(&mut r.terms, *k, -c);
        }
        r
    }

    pub fn scale(&self, c: &CycScalar) -> Element {
        let mut r = Element::zero(self.dim, self.arity, self.level);
        if c.is_zero() {
            return r;
        }
        for (k, v) in &self.terms {
            r.terms.insert(*k, v * c);
        }
        r
    }

    pub fn neg(&self) -> Element {
        self.scale(&CycScalar::from_int(self.level, -1))
    }

    /// u ⊗ v.
    pub fn tensor(&self, o: &Element) -> Element {
        assert_eq!(self.level, o.level, "level mismatch");
        let dim = if self.arity == 0 { o.dim } else { self.dim };
        assert!(self.arity == 0 || o.arity == 0 || self.dim == o.dim, "dim mismatch");
        let shift = (dim as u64).pow(o.arity as u32);
        let mut r = Element::zero(dim, self.arity + o.arity, self.level);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                r.terms.insert(ka * shift + kb, ca * cb);
            }
        }
        r
    }

    /// Raise every scalar to level `m`.
    pub fn lift(&self, m: u32) -> Result<Element> {
        let mut r = Element::zero(self.dim, self.arity, m);
        for (k, c) in &self.terms {
            r.terms.insert(*k, c.lift(m)?);
        }
        Ok(r)
    }
}

/// Checked tensor product of elements.
pub fn tensor_elem(u: &Element, v: &Element) -> Result<Element> {
    if u.level != v.level {
        return Err(QhError::LevelMismatch(u.level, v.level));
    }
    if u.arity > 0 && v.arity > 0 && u.dim != v.dim {
        return Err(QhError::DimensionMismatch(format!("{} vs {}", u.dim, v.dim)));
    }
    Ok(u.tensor(v))
}

impl StructureAlgebra {
    /// Build from a dense table of products: `table[i*dim + j]` is e_i·e_j.
    pub fn new(dim: usize, level: u32, table: Vec<SparseVec>, unit: SparseVec) -> Result<Self> {
        if table.len() != dim * dim {
            return Err(QhError::DimensionMismatch(format!("table has {} entries, expected {}", table.len(), dim * dim)));
        }
        for v in table.iter().chain(std::iter::once(&unit)) {
            for (k, c) in v {
                if *k >= dim {
                    return Err(QhError::DimensionMismatch(format!("basis index {k} out of range")));
                }
                if c.level() != level {
                    return Err(QhError::LevelMismatch(c.level(), level));
                }
            }
        }
        let clean = |v: SparseVec| -> SparseVec { linalg::from_row(&linalg::to_row(&v)) };
        Ok(StructureAlgebra {
            dim,
            level,
            mult: table.into_iter().map(clean).collect(),
            unit: clean(unit),
            grading: None,
            weights: None,
            generators: None,
            labels: None,
        })
    }

    pub fn with_grading(mut self, g: Vec<u32>) -> Self {
        self.grading = Some(g);
        self
    }

    pub fn with_labels(mut self, l: Vec<String>) -> Self {
        self.labels = Some(l);
        self
    }

    pub fn with_generators(mut self, g: Vec<usize>) -> Self {
        self.generators = Some(g);
        self
    }

    pub fn with_weights(mut self, w: Vec<Vec<i32>>) -> Self {
        self.weights = Some(w);
        self
    }

    pub fn product(&self, i: usize, j: usize) -> &SparseVec {
        &self.mult[i * self.dim + j]
    }

    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(l) => l[i].clone(),
            None => format!("e{i}"),
        }
    }

    pub fn zero(&self, arity: usize) -> Element {
        Element::zero(self.dim, arity, self.level)
    }

    pub fn basis(&self, i: usize) -> Element {
        Element::basis(self.dim, self.level, i)
    }

    pub fn scalar(&self, c: i64) -> CycScalar {
        CycScalar::from_int(self.level, c)
    }

    /// The unit as an element of A.
    pub fn one(&self) -> Element {
        Element::from_sparse(self.dim, self.level, &self.unit)
    }

    /// 1⊗…⊗1 in A^{⊗k}.
    pub fn one_k(&self, k: usize) -> Element {
        let mut e = Element::scalar(self.level, CycScalar::one(self.level));
        let one = self.one();
        for _ in 0..k {
            e = e.tensor(&one);
        }
        e
    }

    pub fn elem(&self, v: &[(usize, CycScalar)]) -> Element {
        Element::from_sparse(self.dim, self.level, v)
    }

    /// Componentwise product in A^{⊗k}; errors on shape mismatch.
    pub fn multiply(&self, u: &Element, v: &Element) -> Result<Element> {
        if u.arity != v.arity {
            return Err(QhError::ArityMismatch(u.arity, v.arity));
        }
        if (u.arity > 0 && (u.dim != self.dim || v.dim != self.dim)) || u.level != self.level || v.level != self.level {
            return Err(QhError::DimensionMismatch("element does not belong to this algebra".into()));
        }
        Ok(self.mul(u, v))
    }

    /// Componentwise product in A^{⊗k} (panics on shape mismatch).
    pub fn mul(&self, u: &Element, v: &Element) -> Element {
        assert_eq!(u.arity, v.arity, "arity mismatch");
        let k = u.arity;
        let mut out = BTreeMap::new();
        if k == 0 {
            let mut r = Element::zero(1, 0, self.level);
            add_term(&mut r.terms, 0, &u.scalar_value() * &v.scalar_value());
            return r;
        }
        let vd: Vec<(Vec<usize>, &CycScalar)> = v.terms.iter().map(|(kk, c)| (digits(*kk, self.dim, k), c)).collect();
        let mut cur: Vec<(u64, CycScalar)> = Vec::new();
        let mut next: Vec<(u64, CycScalar)> = Vec::new();
        for (ka, ca) in &u.terms {
            let da = digits(*ka, self.dim, k);
            for (db, cb) in &vd {
                cur.clear();
                cur.push((0, ca * cb));
                for s in 0..k {
                    let prod = &self.mult[da[s] * self.dim + db[s]];
                    if prod.is_empty() {
                        cur.clear();
                        break;
                    }
                    next.clear();
                    for (key, coef) in &cur {
                        for (m, mc) in prod {
                            let c = if mc.is_one() { coef.clone() } else { coef * mc };
                            next.push((key * self.dim as u64 + *m as u64, c));
                        }
                    }
                    std::mem::swap(&mut cur, &mut next);
                }
                for (key, c) in cur.drain(..) {
                    add_term(&mut out, key, c);
                }
            }
        }
        Element { dim: self.dim, arity: k, level: self.level, terms: out }
    }

    /// Product of several elements, left to right.
    pub fn mul_all(&self, xs: &[&Element]) -> Element {
        let mut acc = xs[0].clone();
        for x in &xs[1..] {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn pow(&self, u: &Element, e: usize) -> Element {
        let mut acc = self.one_k(u.arity);
        for _ in 0..e {
            acc = self.mul(&acc, u);
        }
        acc
    }

    /// Inverse in A^{⊗k} via the minimal polynomial of u.
    pub fn invert(&self, u: &Element) -> Result<Element> {
        let k = u.arity;
        let one = self.one_k(k);
        if u.is_zero() {
            return Err(QhError::NotInvertible);
        }
        // Krylov sequence 1, u, u², … with tag columns recording the combination.
        let tag_base = (self.dim as u64).pow(k as u32) as usize;
        let mut ech = Echelon::new(self.level);
        let mut powers = vec![one.clone()];
        let limit = tag_base + 1;
        for m in 0..=limit {
            if m > 0 {
                let p = self.mul(&powers[m - 1], u);
                powers.push(p);
            }
            let mut row = powers[m].to_row();
            row.insert(tag_base + m, CycScalar::one(self.level));
            let red = ech.reduce(row);
            let lead = *red.keys().next().expect("tag column survives");
            if lead >= tag_base {
                // Σ c_j u^j = 0 with c_m ≠ 0.
                let c0 = red.get(&tag_base).cloned();
                let Some(c0) = c0.filter(|c| !c.is_zero()) else {
                    return Err(QhError::NotInvertible);
                };
                let f = (-&c0).inv()?;
                let mut inv = self.zero(k);
                for (col, c) in red.range(tag_base + 1..) {
                    let j = col - tag_base;
                    inv = inv.add(&powers[j - 1].scale(&(c * &f)));
                }
                debug_assert_eq!(self.mul(&inv, u), one);
                return Ok(inv);
            }
            ech.insert(red);
        }
        Err(QhError::NotInvertible)
    }

    /// Check associativity on all basis triples; returns the first failing triple.
    pub fn check_associativity(&self) -> std::result::Result<(), [usize; 3]> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = Element::from_sparse(self.dim, self.level, self.product(i, j));
                for k in 0..self.dim {
                    let left = self.mul(&ij, &self.basis(k));
                    let jk = Element::from_sparse(self.dim, self.level, self.product(j, k));
                    let right = self.mul(&self.basis(i), &jk);
                    if left != right {
                        return Err([i, j, k]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn check_unit(&self) -> std::result::Result<(), usize> {
        let one = self.one();
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.mul(&one, &e) != e || self.mul(&e, &one) != e {
                return Err(i);
            }
        }
        Ok(())
    }

    /// True when products of homogeneous basis elements stay homogeneous of the summed degree.
    pub fn respects_grading(&self) -> bool {
        let Some(g) = &self.grading else { return true };
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.product(i, j).iter().any(|(k, _)| g[*k] != g[i] + g[j]) {
                    return false;
                }
            }
        }
        self.unit.iter().all(|(k, _)| g[*k] == 0)
    }

    pub fn respects_weights(&self) -> bool {
        let Some(w) = &self.weights else { return true };
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, _) in self.product(i, j) {
                    if w[*k].iter().zip(w[i].iter().zip(w[j].iter())).any(|(a, (b, c))| *a != b + c) {
                        return false;
                    }
                }
            }
        }
        self.unit.iter().all(|(k, _)| w[*k].iter().all(|x| *x == 0))
    }

    /// Left multiplication by u as a matrix acting on coordinate vectors.
    pub fn left_mult_trace(&self, u: &Element) -> CycScalar {
        let mut t = CycScalar::zero(self.level);
        for (k, c) in &u.terms {
            t += &(c * &self.basis_left_trace(*k as usize));
        }
        t
    }

    fn basis_left_trace(&self, i: usize) -> CycScalar {
        let mut t = CycScalar::zero(self.level);
        for m in 0..self.dim {
            for (k, c) in self.product(i, m) {
                if *k == m {
                    t += c;
                }
            }
        }
        t
    }

    /// Basis (fully reduced) of the Jacobson radical, via the trace form.
    pub fn jacobson_radical(&self) -> Vec<Element> {
        let traces: Vec<CycScalar> = (0..self.dim).map(|i| self.basis_left_trace(i)).collect();
        let rows = (0..self.dim).map(|j| {
            let mut r = Row::new();
            for i in 0..self.dim {
                let mut t = CycScalar::zero(self.level);
                for (k, c) in self.product(i, j) {
                    t += &(c * &traces[*k]);
                }
                if !t.is_zero() {
                    r.insert(i, t);
                }
            }
            r
        });
        let ns: Vec<Element> = linalg::nullspace(self.level, rows, self.dim)
            .into_iter()
            .map(|r| Element::from_row(self.dim, 1, self.level, &r))
            .collect();
        self.canonical_basis(&ns)
    }

    /// Fully reduced echelon basis of the span of `vs`.
    pub fn canonical_basis(&self, vs: &[Element]) -> Vec<Element> {
        linalg::span_basis(self.level, vs.iter().map(|v| v.to_row()))
            .into_iter()
            .map(|r| Element::from_row(self.dim, 1, self.level, &r))
            .collect()
    }

    /// Span of all products x·y, x ∈ xs, y ∈ ys.
    pub fn product_space(&self, xs: &[Element], ys: &[Element]) -> Vec<Element> {
        let mut e = Echelon::new(self.level);
        for x in xs {
            for y in ys {
                e.insert(self.mul(x, y).to_row());
                if e.rank() == self.dim {
                    break;
                }
            }
        }
        e.rref().into_iter().map(|r| Element::from_row(self.dim, 1, self.level, &r)).collect()
    }

    /// J⁰ = A ⊇ J ⊇ J² ⊇ … ending with the zero space.
    pub fn radical_filtration(&self) -> Vec<Vec<Element>> {
        let full: Vec<Element> = (0..self.dim).map(|i| self.basis(i)).collect();
        let j = self.jacobson_radical();
        let mut out = vec![full];
        let mut cur = j.clone();
        loop {
            let done = cur.is_empty();
            out.push(cur.clone());
            if done || out.len() > self.dim + 1 {
                break;
            }
            cur = self.product_space(&j, &cur);
        }
        out
    }

    /// Is the span of `basis` a two-sided ideal?
    pub fn is_ideal(&self, basis: &[Element]) -> bool {
        let mut e = Echelon::new(self.level);
        for b in basis {
            e.insert(b.to_row());
        }
        for b in basis {
            for i in 0..self.dim {
                let ei = self.basis(i);
                if !e.contains(self.mul(&ei, b).to_row()) || !e.contains(self.mul(b, &ei).to_row()) {
                    return false;
                }
            }
        }
        true
    }

    /// A / span(ideal), on the complement spanned by non-pivot basis vectors.
    pub fn quotient(&self, ideal: &[Element]) -> StructureAlgebra {
        let rref = linalg::span_basis(self.level, ideal.iter().map(|b| b.to_row()));
        let pivots: std::collections::BTreeSet<usize> = rref.iter().map(|r| *r.keys().next().unwrap()).collect();
        let keep: Vec<usize> = (0..self.dim).filter(|i| !pivots.contains(i)).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(a, b)| (*b, a)).collect();
        let project = |v: &SparseVec| -> SparseVec {
            let mut r = linalg::to_row(v);
            for row in &rref {
                let p = *row.keys().next().unwrap();
                if let Some(c) = r.get(&p).cloned() {
                    axpy(&mut r, &-&c, row);
                }
            }
            r.into_iter().map(|(k, c)| (pos[&k], c)).collect()
        };
        let mut table = Vec::with_capacity(keep.len() * keep.len());
        for &i in &keep {
            for &j in &keep {
                table.push(project(self.product(i, j)));
            }
        }
        StructureAlgebra::new(keep.len(), self.level, table, project(&self.unit)).expect("quotient table")
    }

    /// Associated graded algebra for the radical filtration, together with the
    /// representatives in A of its basis vectors.
    pub fn associated_graded(&self) -> (StructureAlgebra, Vec<Element>) {
        let filt = self.radical_filtration();
        let mut reps: Vec<Element> = Vec::new();
        let mut degree: Vec<u32> = Vec::new();
        for k in 0..filt.len() - 1 {
            let lower = linalg::span_basis(self.level, filt[k + 1].iter().map(|b| b.to_row()));
            let lower_piv: std::collections::BTreeSet<usize> = lower.iter().map(|r| *r.keys().next().unwrap()).collect();
            let upper = linalg::span_basis(self.level, filt[k].iter().map(|b| b.to_row()));
            for row in upper {
                let p = *row.keys().next().unwrap();
                if lower_piv.contains(&p) {
                    continue;
                }
                let mut r = row.clone();
                for l in &lower {
                    let lp = *l.keys().next().unwrap();
                    if let Some(c) = r.get(&lp).cloned() {
                        axpy(&mut r, &-&c, l);
                    }
                }
                reps.push(Element::from_row(self.dim, 1, self.level, &r));
                degree.push(k as u32);
            }
        }
        let n = reps.len();
        debug_assert_eq!(n, self.dim);
        let mat: Vec<Vec<CycScalar>> =
            (0..n).map(|row| (0..n).map(|col| reps[col].coeff(row as u64)).collect()).collect();
        let inv = linalg::dense_inverse(self.level, &mat).expect("adapted basis is a basis");
        let coords = |v: &Element| -> Vec<CycScalar> {
            (0..n)
                .map(|a| {
                    let mut s = CycScalar::zero(self.level);
                    for (k, c) in &v.terms {
                        let m = &inv[a][*k as usize];
                        if !m.is_zero() {
                            s += &(m * c);
                        }
                    }
                    s
                })
                .collect()
        };
        let mut table = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let want = degree[a] + degree[b];
                let c = coords(&self.mul(&reps[a], &reps[b]));
                table.push(
                    c.into_iter()
                        .enumerate()
                        .filter(|(m, x)| degree[*m] == want && !x.is_zero())
                        .collect::<SparseVec>(),
                );
            }
        }
        let u = coords(&self.one());
        let unit: SparseVec = u.into_iter().enumerate().filter(|(m, x)| degree[*m] == 0 && !x.is_zero()).collect();
        let gr = StructureAlgebra::new(n, self.level, table, unit).expect("graded table").with_grading(degree);
        (gr, reps)
    }

    /// Materialized A^{⊗k} (small cases only).
    pub fn tensor_power(&self, k: usize) -> Result<StructureAlgebra> {
        let d = self.dim.checked_pow(k as u32).filter(|d| *d <= 4096).ok_or_else(|| {
            QhError::TooLarge(format!("dim {}^{k} exceeds the materialization limit", self.dim))
        })?;
        let mut table = Vec::with_capacity(d * d);
        for i in 0..d {
            let ei = Element::basis_tuple(self.dim, self.level, &digits(i as u64, self.dim, k));
            for j in 0..d {
                let ej = Element::basis_tuple(self.dim, self.level, &digits(j as u64, self.dim, k));
                let p = self.mul(&ei, &ej);
                table.push(p.terms.into_iter().map(|(kk, c)| (kk as usize, c)).collect());
            }
        }
        let unit = self.one_k(k).terms.into_iter().map(|(kk, c)| (kk as usize, c)).collect();
        StructureAlgebra::new(d, self.level, table, unit)
    }

    /// Raise all structure constants to level `m`.
    pub fn lift(&self, m: u32) -> Result<StructureAlgebra> {
        let lv = |v: &SparseVec| -> Result<SparseVec> { v.iter().map(|(k, c)| Ok((*k, c.lift(m)?))).collect() };
        let mut out = self.clone();
        out.level = m;
        out.mult = self.mult.iter().map(lv).collect::<Result<_>>()?;
        out.unit = lv(&self.unit)?;
        Ok(out)
    }

    /// Does the given set of elements generate A as an algebra?
    pub fn generates(&self, gens: &[Element]) -> bool {
        let mut e = Echelon::new(self.level);
        let mut frontier = vec![self.one()];
        e.insert(self.one().to_row());
        while let Some(v) = frontier.pop() {
            for g in gens {
                let w = self.mul(g, &v);
                if e.insert(w.to_row()).is_some() {
                    frontier.push(w);
                }
            }
        }
        e.rank() == self.dim
    }

    /// Generator set usable for reduced multiplicativity checks, verified to generate A.
    pub fn checked_generators(&self) -> Option<Vec<usize>> {
        let g = self.generators.clone()?;
        let els: Vec<Element> = g.iter().map(|&i| self.basis(i)).collect();
        self.generates(&els).then_some(g)
    }
}

impl LinearMap {
    pub fn identity(dim: usize, level: u32) -> Self {
        LinearMap {
            source_dim: dim,
            source_arity: 1,
            target_dim: dim,
            target_arity: 1,
            columns: (0..dim).map(|i| Element::basis(dim, level, i)).collect(),
        }
    }

    /// Map A → A given by images of basis vectors.
    pub fn from_columns(source_dim: usize, target_dim: usize, target_arity: usize, columns: Vec<Element>) -> Self {
        LinearMap { source_dim, source_arity: 1, target_dim, target_arity, columns }
    }

    pub fn level(&self) -> u32 {
        self.columns.first().map(|c| c.level).unwrap_or(1)
    }

    pub fn apply(&self, u: &Element) -> Result<Element> {
        if u.arity != self.source_arity || (u.arity > 0 && u.dim != self.source_dim) {
            return Err(QhError::DimensionMismatch("map source does not match element".into()));
        }
        Ok(self.apply_unchecked(u))
    }

    fn apply_unchecked(&self, u: &Element) -> Element {
        let td = if self.target_arity == 0 { 1 } else { self.target_dim };
        let mut out = Element::zero(td, self.target_arity, u.level);
        for (k, c) in &u.terms {
            for (kk, cc) in &self.columns[*k as usize].terms {
                add_term(&mut out.terms, *kk, c * cc);
            }
        }
        out
    }

    /// self ∘ other.
    pub fn compose(&self, other: &LinearMap) -> LinearMap {
        assert_eq!(other.target_arity, 1);
        assert_eq!(self.source_arity, 1);
        let columns = other.columns.iter().map(|c| self.apply_unchecked(c)).collect();
        LinearMap {
            source_dim: other.source_dim,
            source_arity: other.source_arity,
            target_dim: self.target_dim,
            target_arity: self.target_arity,
            columns,
        }
    }

    pub fn power(&self, k: usize) -> LinearMap {
        let mut acc = LinearMap::identity(self.source_dim, self.level());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Inverse of a square map A → A.
    pub fn inverse(&self) -> Result<LinearMap> {
        let n = self.source_dim;
        if self.source_arity != 1 || self.target_arity != 1 || self.target_dim != n {
            return Err(QhError::DimensionMismatch("inverse needs a square map".into()));
        }
        let level = self.level();
        let m: Vec<Vec<CycScalar>> =
            (0..n).map(|r| (0..n).map(|c| self.columns[c].coeff(r as u64)).collect()).collect();
        let inv = linalg::dense_inverse(level, &m).ok_or(QhError::NotInvertible)?;
        let columns = (0..n)
            .map(|c| {
                let v: SparseVec = (0..n).filter(|r| !inv[*r][c].is_zero()).map(|r| (r, inv[r][c].clone())).collect();
                Element::from_sparse(n, level, &v)
            })
            .collect();
        Ok(LinearMap::from_columns(n, n, 1, columns))
    }

    pub fn rank(&self) -> usize {
        linalg::rank(self.level(), self.columns.iter().map(|c| c.to_row()))
    }
}

/// Apply maps slotwise: slot s of u is replaced by `maps[s]` (or kept when `None`).
/// All maps must have source arity 1 and share the same target dimension.
pub fn apply_tensor(maps: &[Option<&LinearMap>], u: &Element) -> Element {
    assert_eq!(maps.len(), u.arity, "one map per slot");
    let target_dim = maps.iter().flatten().filter(|m| m.target_arity > 0).map(|m| m.target_dim).next().unwrap_or(u.dim);
    for m in maps.iter().flatten() {
        assert_eq!(m.source_dim, u.dim);
        assert_eq!(m.source_arity, 1);
        assert!(m.target_arity == 0 || m.target_dim == target_dim, "slot maps need equal target dims");
    }
    if maps.iter().any(|m| m.is_none()) {
        assert_eq!(target_dim, u.dim, "identity slots need equal dims");
    }
    let out_arity: usize = maps.iter().map(|m| m.map_or(1, |m| m.target_arity)).sum();
    let target_dim = if out_arity == 0 { 1 } else { target_dim };
    let td = target_dim as u64;
    let mut out = Element::zero(target_dim, out_arity, u.level);
    let mut cur: Vec<(u64, CycScalar)> = Vec::new();
    let mut next: Vec<(u64, CycScalar)> = Vec::new();
    for (k, c) in &u.terms {
        let ds = digits(*k, u.dim, u.arity);
        cur.clear();
        cur.push((0, c.clone()));
        for (s, m) in maps.iter().enumerate() {
            next.clear();
            match m {
                None => {
                    for (key, coef) in &cur {
                        next.push((key * td + ds[s] as u64, coef.clone()));
                    }
                }
                Some(m) => {
                    let img = &m.columns[ds[s]];
                    let shift = td.pow(m.target_arity as u32);
                    for (key, coef) in &cur {
                        for (ik, ic) in &img.terms {
                            let v = if ic.is_one() { coef.clone() } else { coef * ic };
                            next.push((key * shift + ik, v));
                        }
                    }
                }
            }
            std::mem::swap(&mut cur, &mut next);
            if cur.is_empty() {
                break;
            }
        }
        for (key, v) in cur.drain(..) {
            add_term(&mut out.terms, key, v);
        }
    }
    out
}

/// Apply `map` to slot `slot` of u, identity elsewhere.
pub fn apply_slot(map: &LinearMap, u: &Element, slot: usize) -> Element {
    let maps: Vec<Option<&LinearMap>> = (0..u.arity).map(|s| (s == slot).then_some(map)).collect();
    apply_tensor(&maps, u)
}

/// Checked linear map application.
pub fn apply(map: &LinearMap, u: &Element) -> Result<Element> {
    map.apply(u)
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitJson {
    Index(usize),
    Sparse(Vec<(usize, CycScalar)>),
}

#[derive(Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub level: u32,
    pub unit: UnitJson,
    pub mult: Vec<(usize, usize, usize, CycScalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grading: Option<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<i32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl StructureAlgebra {
    pub fn to_json(&self) -> AlgebraJson {
        let unit = match self.unit.as_slice() {
            [(i, c)] if c.is_one() => UnitJson::Index(*i),
            _ => UnitJson::Sparse(self.unit.clone()),
        };
        let mut mult = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for (k, c) in self.product(i, j) {
                    mult.push((i, j, *k, c.clone()));
                }
            }
        }
        AlgebraJson {
            dim: self.dim,
            level: self.level,
            unit,
            mult,
            grading: self.grading.clone(),
            weights: self.weights.clone(),
            generators: self.generators.clone(),
            labels: self.labels.clone(),
        }
    }

    pub fn from_json(j: AlgebraJson) -> Result<Self> {
        let unit = match j.unit {
            UnitJson::Index(i) => vec![(i, CycScalar::one(j.level))],
            UnitJson::Sparse(v) => v,
        };
        let mut table = vec![Vec::new(); j.dim * j.dim];
        for (i, jj, k, c) in j.mult {
            if i >= j.dim || jj >= j.dim {
                return Err(QhError::DimensionMismatch(format!("entry ({i},{jj}) out of range")));
            }
            table[i * j.dim + jj].push((k, c));
        }
        let mut table_sorted = Vec::with_capacity(table.len());
        for v in table {
            let mut acc: BTreeMap<usize, CycScalar> = BTreeMap::new();
            for (k, c) in v {
                if c.level() != j.level {
                    return Err(QhError::LevelMismatch(c.level(), j.level));
                }
                match acc.get_mut(&k) {
                    Some(e) => *e += &c,
                    None => {
                        acc.insert(k, c);
                    }
                }
            }
            table_sorted.push(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        let mut a = StructureAlgebra::new(j.dim, j.level, table_sorted, unit)?;
        for v in [&j.grading].into_iter().flatten() {
            if v.len() != j.dim {
                return Err(QhError::DimensionMismatch("grading length".into()));
            }
        }
        a.grading = j.grading;
        a.weights = j.weights;
        a.generators = j.generators;
        a.labels = j.labels;
        Ok(a)
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    /// C[x]/(x^n) with basis 1, x, …, x^{n-1}.
    pub fn truncated_poly(n: usize) -> StructureAlgebra {
        let mut t = Vec::new();
        for i in 0..n {
            for j in 0..n {
                t.push(if i + j < n { vec![(i + j, CycScalar::one(1))] } else { vec![] });
            }
        }
        StructureAlgebra::new(n, 1, t, vec![(0, CycScalar::one(1))]).unwrap().with_grading((0..n as u32).collect())
    }

    /// C[Z_n] with basis a^i.
    pub fn group_algebra(n: usize) -> StructureAlgebra {
        let mut t = Vec::new();
        for i in 0..n {
            for j in 0..n {
                t.push(vec![((i + j) % n, CycScalar::one(1))]);
            }
        }
        StructureAlgebra::new(n, 1, t, vec![(0, CycScalar::one(1))]).unwrap()
    }

    /// C[x]/(x² − 1) written in basis 1, x.
    fn x2_minus_1() -> StructureAlgebra {
        group_algebra(2)
    }

    #[test]
    fn multiply_group_algebra() {
        let a = group_algebra(2);
        let x = a.basis(1);
        assert_eq!(a.mul(&x, &x), a.one());
        let xx = x.tensor(&x);
        assert_eq!(a.mul(&xx, &xx), a.one_k(2));
        assert_eq!(a.multiply(&x, &xx), Err(QhError::ArityMismatch(1, 2)));
    }

    #[test]
    fn inversion() {
        let a = group_algebra(3);
        let one3 = a.one_k(3);
        assert_eq!(a.invert(&one3).unwrap(), one3);
        let p = truncated_poly(3);
        assert_eq!(p.invert(&p.basis(1)), Err(QhError::NotInvertible));
        let u = p.one().add(&p.basis(1));
        let inv = p.invert(&u).unwrap();
        assert_eq!(p.mul(&u, &inv), p.one());
        assert_eq!(inv.coeff(2), CycScalar::one(1));
    }

    #[test]
    fn radicals() {
        assert!(group_algebra(2).jacobson_radical().is_empty());
        let p2 = truncated_poly(2);
        assert_eq!(p2.jacobson_radical(), vec![p2.basis(1)]);
        let p3 = truncated_poly(3);
        let dims: Vec<usize> = p3.radical_filtration().iter().map(|v| v.len()).collect();
        assert_eq!(dims, vec![3, 2, 1, 0]);
        let dims: Vec<usize> = group_algebra(3).radical_filtration().iter().map(|v| v.len()).collect();
        assert_eq!(dims, vec![3, 0]);
    }

    #[test]
    fn graded_and_quotient() {
        let p2 = truncated_poly(2);
        let (gr, reps) = p2.associated_graded();
        assert_eq!(gr.dim, 2);
        assert_eq!(reps, vec![p2.basis(0), p2.basis(1)]);
        assert!(gr.check_associativity().is_ok());
        assert!(gr.respects_grading());
        let s = x2_minus_1();
        let (gr, _) = s.associated_graded();
        assert!(gr.jacobson_radical().is_empty());
        let p3 = truncated_poly(3);
        let j = p3.jacobson_radical();
        assert!(p3.is_ideal(&j));
        assert!(p3.quotient(&j).jacobson_radical().is_empty());
    }

    #[test]
    fn tensor_powers_and_maps() {
        let a = group_algebra(2);
        let a2 = a.tensor_power(2).unwrap();
        assert_eq!(a2.dim, 4);
        assert!(a2.check_associativity().is_ok());
        let id = LinearMap::identity(2, 1);
        let u = a.basis(1).add(&a.one());
        assert_eq!(id.apply(&u).unwrap(), u);
        let uu = u.tensor(&a.basis(1));
        assert_eq!(apply_slot(&id, &uu, 1), uu);
        assert_eq!(apply_tensor(&[Some(&id), None], &uu), uu);
    }

    #[test]
    fn json_roundtrip() {
        let p = truncated_poly(3);
        let j = serde_json::to_string(&p.to_json()).unwrap();
        let back = StructureAlgebra::from_json(serde_json::from_str(&j).unwrap()).unwrap();
        assert_eq!(back, p);
    }
}
