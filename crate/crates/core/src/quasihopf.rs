//! Quasi-Hopf data: axiom verification, twisting, duals, sub-objects and isomorphisms.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{apply_slot, apply_tensor, digits, AlgebraJson, Element, LinearMap, StructureAlgebra};
use crate::error::{QhError, Result};
use crate::linalg::{self, Echelon};
use crate::scalars::CycScalar;

#[derive(Clone, Debug, PartialEq)]
pub struct QuasiHopfDatum {
    pub alg: StructureAlgebra,
    pub delta: LinearMap,
    pub counit: LinearMap,
    pub phi: Element,
    pub phi_inv: Element,
    pub antipode: LinearMap,
    pub alpha: Element,
    pub beta: Element,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub results: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomResult> {
        self.results.iter().find(|r| r.axiom == axiom)
    }

    pub fn failures(&self) -> Vec<&AxiomResult> {
        self.results.iter().filter(|r| !r.pass).collect()
    }
}

fn outcome(axiom: &str, witness: Option<Vec<usize>>) -> AxiomResult {
    AxiomResult { axiom: axiom.to_string(), pass: witness.is_none(), witness }
}

/// Names of the checks performed by [`verify_axioms`], in report order.
pub const AXIOMS: [&str; 9] = [
    "a_algebra_maps",
    "b_counit",
    "c_quasi_coassociativity",
    "d_pentagon",
    "e_phi_counit",
    "f_antipode_alpha_beta",
    "g_antipode_phi",
    "h_antipode_anti_hom",
    "phi_invertible",
];

impl QuasiHopfDatum {
    pub fn dim(&self) -> usize {
        self.alg.dim
    }

    pub fn level(&self) -> u32 {
        self.alg.level
    }

    pub fn delta_of(&self, u: &Element) -> Element {
        self.delta.apply(u).expect("element of A")
    }

    pub fn eps(&self, u: &Element) -> CycScalar {
        self.counit.apply(u).expect("element of A").scalar_value()
    }

    pub fn s(&self, u: &Element) -> Element {
        self.antipode.apply(u).expect("element of A")
    }

    pub fn is_hopf(&self) -> bool {
        self.phi == self.alg.one_k(3)
    }

    /// Hopf datum from Δ, ε, S with Φ = 1 and α = β = 1.
    pub fn hopf(alg: StructureAlgebra, delta: LinearMap, counit: LinearMap, antipode: LinearMap) -> Self {
        let one3 = alg.one_k(3);
        let one = alg.one();
        QuasiHopfDatum { phi: one3.clone(), phi_inv: one3, alpha: one.clone(), beta: one, alg, delta, counit, antipode }
    }

    /// Multiplicativity checks run over (generator, basis) pairs when a verified generating set is known.
    fn left_factors(&self) -> Vec<usize> {
        self.alg.checked_generators().unwrap_or_else(|| (0..self.dim()).collect())
    }

    /// Raise all scalars to level `m`.
    pub fn lift(&self, m: u32) -> Result<Self> {
        let lm = |l: &LinearMap| -> Result<LinearMap> {
            let mut out = l.clone();
            out.columns = l.columns.iter().map(|c| c.lift(m)).collect::<Result<_>>()?;
            Ok(out)
        };
        Ok(QuasiHopfDatum {
            alg: self.alg.lift(m)?,
            delta: lm(&self.delta)?,
            counit: lm(&self.counit)?,
            phi: self.phi.lift(m)?,
            phi_inv: self.phi_inv.lift(m)?,
            antipode: lm(&self.antipode)?,
            alpha: self.alpha.lift(m)?,
            beta: self.beta.lift(m)?,
        })
    }
}

/// Exact check of every quasi-Hopf axiom.
pub fn verify_axioms(q: &QuasiHopfDatum) -> AxiomReport {
    let a = &q.alg;
    let n = a.dim;
    let one = a.one();
    let one2 = a.one_k(2);
    let one3 = a.one_k(3);
    let deltas: Vec<Element> = q.delta.columns.clone();
    let eps: Vec<CycScalar> = q.counit.columns.iter().map(|c| c.scalar_value()).collect();
    let gens = q.left_factors();
    let mut results = Vec::new();

    // (a) Δ and ε are unital algebra maps.
    let w = (|| {
        if q.delta_of(&one) != one2 || !q.eps(&one).is_one() {
            return Some(vec![]);
        }
        for &i in &gens {
            for j in 0..n {
                let prod = a.mul(&a.basis(i), &a.basis(j));
                if q.delta_of(&prod) != a.mul(&deltas[i], &deltas[j]) || q.eps(&prod) != &eps[i] * &eps[j] {
                    return Some(vec![i, j]);
                }
            }
        }
        None
    })();
    results.push(outcome(AXIOMS[0], w));

    // (b) counit.
    let w = (0..n).find(|&h| {
        let d = &deltas[h];
        let e = a.basis(h);
        apply_slot(&q.counit, d, 0) != e || apply_slot(&q.counit, d, 1) != e
    });
    results.push(outcome(AXIOMS[1], w.map(|h| vec![h])));

    // (c) Φ·(Δ⊗id)Δ(h) = (id⊗Δ)Δ(h)·Φ.
    let w = (0..n).find(|&h| {
        let left = apply_slot(&q.delta, &deltas[h], 0);
        let right = apply_slot(&q.delta, &deltas[h], 1);
        a.mul(&q.phi, &left) != a.mul(&right, &q.phi)
    });
    results.push(outcome(AXIOMS[2], w.map(|h| vec![h])));

    // (d) pentagon.
    let lhs = a.mul(&apply_slot(&q.delta, &q.phi, 2), &apply_slot(&q.delta, &q.phi, 0));
    let one_phi = one.tensor(&q.phi);
    let phi_one = q.phi.tensor(&one);
    let rhs = a.mul_all(&[&one_phi, &apply_slot(&q.delta, &q.phi, 1), &phi_one]);
    results.push(outcome(AXIOMS[3], (lhs != rhs).then(Vec::new)));

    // (e) (id⊗ε⊗id)(Φ) = 1⊗1.
    results.push(outcome(AXIOMS[4], (apply_slot(&q.counit, &q.phi, 1) != one2).then(Vec::new)));

    // (f) Σ S(h₁)αh₂ = ε(h)α, Σ h₁βS(h₂) = ε(h)β.
    let s_alpha: Vec<Element> = (0..n).map(|i| a.mul(&q.antipode.columns[i], &q.alpha)).collect();
    let beta_s: Vec<Element> = (0..n).map(|i| a.mul(&q.beta, &q.antipode.columns[i])).collect();
    let w = (0..n).find(|&h| {
        let mut l = a.zero(1);
        let mut r = a.zero(1);
        for (ij, c) in deltas[h].iter_tuples() {
            l = l.add(&a.mul(&s_alpha[ij[0]], &a.basis(ij[1])).scale(c));
            r = r.add(&a.mul(&a.basis(ij[0]), &beta_s[ij[1]]).scale(c));
        }
        l != q.alpha.scale(&eps[h]) || r != q.beta.scale(&eps[h])
    });
    results.push(outcome(AXIOMS[5], w.map(|h| vec![h])));

    // (g) Σ X¹βS(X²)αX³ = 1, Σ S(x¹)αx²βS(x³) = 1.
    let mut g1 = a.zero(1);
    let mut mid_cache: BTreeMap<usize, Element> = BTreeMap::new();
    for (t, c) in q.phi.iter_tuples() {
        let mid = mid_cache
            .entry(t[1])
            .or_insert_with(|| a.mul_all(&[&q.beta, &q.antipode.columns[t[1]], &q.alpha]))
            .clone();
        g1 = g1.add(&a.mul_all(&[&a.basis(t[0]), &mid, &a.basis(t[2])]).scale(c));
    }
    let mut g2 = a.zero(1);
    for (t, c) in q.phi_inv.iter_tuples() {
        let x = a.mul_all(&[&s_alpha[t[0]], &a.basis(t[1]), &beta_s[t[2]]]);
        g2 = g2.add(&x.scale(c));
    }
    results.push(outcome(AXIOMS[6], (g1 != one || g2 != one).then(Vec::new)));

    // (h) S is an anti-homomorphism.
    let w = (|| {
        if q.s(&one) != one {
            return Some(vec![]);
        }
        for &i in &gens {
            for j in 0..n {
                let prod = a.mul(&a.basis(i), &a.basis(j));
                if q.s(&prod) != a.mul(&q.antipode.columns[j], &q.antipode.columns[i]) {
                    return Some(vec![i, j]);
                }
            }
        }
        None
    })();
    results.push(outcome(AXIOMS[7], w));

    let inv_ok = a.mul(&q.phi, &q.phi_inv) == one3 && a.mul(&q.phi_inv, &q.phi) == one3;
    results.push(outcome(AXIOMS[8], (!inv_ok).then(Vec::new)));
    AxiomReport { results }
}

/// Drinfeld twist by an invertible counital J.
pub fn twist(q: &QuasiHopfDatum, j: &Element) -> Result<QuasiHopfDatum> {
    let a = &q.alg;
    if j.arity != 2 || j.dim != a.dim {
        return Err(QhError::DimensionMismatch("twist must lie in A⊗A".into()));
    }
    let one = a.one();
    if apply_slot(&q.counit, j, 0) != one || apply_slot(&q.counit, j, 1) != one {
        return Err(QhError::CounitConditionFailed);
    }
    let jinv = a.invert(j)?;
    let columns: Vec<Element> = q.delta.columns.iter().map(|d| a.mul_all(&[j, d, &jinv])).collect();
    let delta = LinearMap { columns, ..q.delta.clone() };
    let one_j = one.tensor(j);
    let j_one = j.tensor(&one);
    let one_jinv = one.tensor(&jinv);
    let jinv_one = jinv.tensor(&one);
    let id_d_j = apply_slot(&q.delta, j, 1);
    let d_id_j = apply_slot(&q.delta, j, 0);
    let id_d_jinv = apply_slot(&q.delta, &jinv, 1);
    let d_id_jinv = apply_slot(&q.delta, &jinv, 0);
    let phi = a.mul_all(&[&one_j, &id_d_j, &q.phi, &d_id_jinv, &jinv_one]);
    let phi_inv = a.mul_all(&[&j_one, &d_id_j, &q.phi_inv, &id_d_jinv, &one_jinv]);
    let mut alpha = a.zero(1);
    for (t, c) in jinv.iter_tuples() {
        alpha = alpha.add(&a.mul_all(&[&q.antipode.columns[t[0]], &q.alpha, &a.basis(t[1])]).scale(c));
    }
    let mut beta = a.zero(1);
    for (t, c) in j.iter_tuples() {
        beta = beta.add(&a.mul_all(&[&a.basis(t[0]), &q.beta, &q.antipode.columns[t[1]]]).scale(c));
    }
    Ok(QuasiHopfDatum {
        alg: q.alg.clone(),
        delta,
        counit: q.counit.clone(),
        phi,
        phi_inv,
        antipode: q.antipode.clone(),
        alpha,
        beta,
    })
}

/// Gauge the antipode data by an invertible u: (S, α, β) ↦ (uS(·)u⁻¹, uα, βu⁻¹).
pub fn gauge_antipode(q: &QuasiHopfDatum, u: &Element) -> Result<QuasiHopfDatum> {
    let a = &q.alg;
    let uinv = a.invert(u)?;
    let columns = q.antipode.columns.iter().map(|c| a.mul_all(&[u, c, &uinv])).collect();
    let mut out = q.clone();
    out.antipode = LinearMap { columns, ..q.antipode.clone() };
    out.alpha = a.mul(u, &q.alpha);
    out.beta = a.mul(&q.beta, &uinv);
    Ok(out)
}

/// For Φ = 1 data, gauge to α = β = 1.
pub fn normalize_hopf(q: &QuasiHopfDatum) -> Result<QuasiHopfDatum> {
    if !q.is_hopf() {
        return Err(QhError::PreconditionFailed("associator is not trivial".into()));
    }
    let a = &q.alg;
    if q.alpha == a.one() && q.beta == a.one() {
        return Ok(q.clone());
    }
    let u = a.invert(&q.alpha)?;
    gauge_antipode(q, &u)
}

pub fn antipode_power(q: &QuasiHopfDatum, k: usize) -> LinearMap {
    q.antipode.power(k)
}

/// Does f(z) = b z b⁻¹ hold for every basis z?
pub fn is_inner(alg: &StructureAlgebra, f: &LinearMap, b: &Element) -> Result<bool> {
    let binv = alg.invert(b)?;
    Ok((0..alg.dim).all(|z| f.columns[z] == alg.mul_all(&[b, &alg.basis(z), &binv])))
}

/// Ad(b) as a linear map.
pub fn adjoint(alg: &StructureAlgebra, b: &Element) -> Result<LinearMap> {
    let binv = alg.invert(b)?;
    let columns = (0..alg.dim).map(|z| alg.mul_all(&[b, &alg.basis(z), &binv])).collect();
    Ok(LinearMap::from_columns(alg.dim, alg.dim, 1, columns))
}

fn check_coassociative(q: &QuasiHopfDatum) -> Result<()> {
    for d in &q.delta.columns {
        if apply_slot(&q.delta, d, 0) != apply_slot(&q.delta, d, 1) {
            return Err(QhError::NotCoassociative);
        }
    }
    Ok(())
}

/// The algebra A* dual to the coalgebra (Δ, ε).
pub fn dual_algebra(q: &QuasiHopfDatum) -> Result<StructureAlgebra> {
    if !q.is_hopf() {
        return Err(QhError::NotCoassociative);
    }
    check_coassociative(q)?;
    let n = q.dim();
    let mut table = vec![Vec::new(); n * n];
    for (k, d) in q.delta.columns.iter().enumerate() {
        for (t, c) in d.iter_tuples() {
            table[t[0] * n + t[1]].push((k, c.clone()));
        }
    }
    let unit: Vec<(usize, CycScalar)> = q
        .counit
        .columns
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.scalar_value().is_zero())
        .map(|(k, c)| (k, c.scalar_value()))
        .collect();
    let mut d = StructureAlgebra::new(n, q.level(), table, unit)?;
    d.grading = q.alg.grading.clone();
    d.weights = q.alg.weights.clone();
    d.labels = q.alg.labels.as_ref().map(|l| l.iter().map(|s| format!("({s})*")).collect());
    Ok(d)
}

/// The full dual Hopf datum of a Hopf datum (Φ = 1), normalized first to α = β = 1.
pub fn dual_datum(q: &QuasiHopfDatum) -> Result<QuasiHopfDatum> {
    let q = normalize_hopf(q)?;
    let alg = dual_algebra(&q)?;
    let n = q.dim();
    let level = q.level();
    let a = &q.alg;
    let delta_cols: Vec<Element> = (0..n)
        .map(|k| {
            let mut e = Element::zero(n, 2, level);
            for i in 0..n {
                for j in 0..n {
                    for (m, c) in a.product(i, j) {
                        if *m == k {
                            e = e.add(&Element::basis_tuple(n, level, &[i, j]).scale(c));
                        }
                    }
                }
            }
            e
        })
        .collect();
    let counit_cols: Vec<Element> = (0..n)
        .map(|k| {
            let c = a.unit.iter().find(|(m, _)| *m == k).map(|(_, c)| c.clone()).unwrap_or_else(|| CycScalar::zero(level));
            Element::scalar(level, c)
        })
        .collect();
    let s_cols: Vec<Element> = (0..n)
        .map(|k| {
            let v: Vec<(usize, CycScalar)> = (0..n).map(|i| (i, q.antipode.columns[i].coeff(k as u64))).collect();
            Element::from_sparse(n, level, &v)
        })
        .collect();
    let delta = LinearMap::from_columns(n, n, 2, delta_cols);
    let counit = LinearMap::from_columns(n, 1, 0, counit_cols);
    let antipode = LinearMap::from_columns(n, n, 1, s_cols);
    Ok(QuasiHopfDatum::hopf(alg, delta, counit, antipode))
}

/// Coordinates relative to a subspace basis: projection P onto span(basis) along
/// the non-pivot coordinate vectors, and the coordinate map span(basis) → F^s.
pub struct Subspace {
    pub basis: Vec<Element>,
    pub projector: LinearMap,
    pub coords: LinearMap,
}

impl Subspace {
    pub fn new(alg: &StructureAlgebra, basis: &[Element]) -> Result<Self> {
        let n = alg.dim;
        let level = alg.level;
        let rref = linalg::span_basis(level, basis.iter().map(|b| b.to_row()));
        if rref.len() != basis.len() {
            return Err(QhError::PreconditionFailed("basis is linearly dependent".into()));
        }
        let s = basis.len();
        let pivots: Vec<usize> = rref.iter().map(|r| *r.keys().next().unwrap()).collect();
        let mut proj_cols = vec![Element::zero(n, 1, level); n];
        for (r, &p) in rref.iter().zip(pivots.iter()) {
            proj_cols[p] = Element::from_row(n, 1, level, r);
        }
        let m: Vec<Vec<CycScalar>> = pivots.iter().map(|&p| basis.iter().map(|b| b.coeff(p as u64)).collect()).collect();
        let minv = linalg::dense_inverse(level, &m).ok_or(QhError::NotBijective)?;
        let mut coord_cols = vec![Element::zero(s, 1, level); n];
        for (idx, &p) in pivots.iter().enumerate() {
            let v: Vec<(usize, CycScalar)> = (0..s).map(|a| (a, minv[a][idx].clone())).collect();
            coord_cols[p] = Element::from_sparse(s, level, &v);
        }
        Ok(Subspace {
            basis: basis.to_vec(),
            projector: LinearMap::from_columns(n, n, 1, proj_cols),
            coords: LinearMap::from_columns(n, s, 1, coord_cols),
        })
    }

    /// Is X ∈ span^{⊗k}?
    pub fn contains(&self, x: &Element) -> bool {
        let maps: Vec<Option<&LinearMap>> = vec![Some(&self.projector); x.arity];
        apply_tensor(&maps, x) == *x
    }

    pub fn to_coords(&self, x: &Element) -> Element {
        let maps: Vec<Option<&LinearMap>> = vec![Some(&self.coords); x.arity];
        apply_tensor(&maps, x)
    }
}

/// Check that span(basis) is a quasi-Hopf subalgebra; errors carry the failing witness.
pub fn check_sub_quasihopf(q: &QuasiHopfDatum, basis: &[Element]) -> Result<Subspace> {
    let a = &q.alg;
    let sub = Subspace::new(a, basis)?;
    let fail = |what: &str, w: Vec<usize>| Err(QhError::NotClosed { what: what.into(), witness: w });
    if !sub.contains(&a.one()) {
        return fail("unit", vec![]);
    }
    for (i, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            if !sub.contains(&a.mul(x, y)) {
                return fail("multiplication", vec![i, j]);
            }
        }
    }
    for (i, x) in basis.iter().enumerate() {
        if !sub.contains(&q.delta_of(x)) {
            return fail("coproduct", vec![i]);
        }
        if !sub.contains(&q.s(x)) {
            return fail("antipode", vec![i]);
        }
    }
    for (name, e) in [("alpha", &q.alpha), ("beta", &q.beta), ("associator", &q.phi), ("associator inverse", &q.phi_inv)] {
        if !sub.contains(e) {
            return fail(name, vec![]);
        }
    }
    Ok(sub)
}

pub fn verify_sub_quasihopf(q: &QuasiHopfDatum, basis: &[Element]) -> bool {
    check_sub_quasihopf(q, basis).is_ok()
}

/// The quasi-Hopf datum induced on a quasi-Hopf subalgebra, in the given basis.
pub fn restrict(q: &QuasiHopfDatum, basis: &[Element]) -> Result<QuasiHopfDatum> {
    let sub = check_sub_quasihopf(q, basis)?;
    let a = &q.alg;
    let s = basis.len();
    let level = a.level;
    let mut table = Vec::with_capacity(s * s);
    for x in basis {
        for y in basis {
            let c = sub.to_coords(&a.mul(x, y));
            table.push(c.terms.into_iter().map(|(k, v)| (k as usize, v)).collect());
        }
    }
    let unit = sub.to_coords(&a.one()).terms.into_iter().map(|(k, v)| (k as usize, v)).collect();
    let alg = StructureAlgebra::new(s, level, table, unit)?;
    let delta = LinearMap::from_columns(s, s, 2, basis.iter().map(|x| sub.to_coords(&q.delta_of(x))).collect());
    let counit = LinearMap::from_columns(s, 1, 0, basis.iter().map(|x| Element::scalar(level, q.eps(x))).collect());
    let antipode = LinearMap::from_columns(s, s, 1, basis.iter().map(|x| sub.to_coords(&q.s(x))).collect());
    Ok(QuasiHopfDatum {
        alg,
        delta,
        counit,
        phi: sub.to_coords(&q.phi),
        phi_inv: sub.to_coords(&q.phi_inv),
        antipode,
        alpha: sub.to_coords(&q.alpha),
        beta: sub.to_coords(&q.beta),
    })
}

/// Extend a generator assignment to a linear map Q₁ → Q₂ by multiplicativity.
pub fn extend_gen_map(
    a1: &StructureAlgebra,
    a2: &StructureAlgebra,
    gen_map: &[(Element, Element)],
) -> Result<LinearMap> {
    let n = a1.dim;
    let mut ech = Echelon::new(a1.level);
    let mut words: Vec<(Element, Element)> = Vec::new();
    let start = (a1.one(), a2.one());
    ech.insert(start.0.to_row());
    words.push(start);
    let mut frontier = vec![0usize];
    while let Some(idx) = frontier.pop() {
        for (g1, g2) in gen_map {
            let w1 = a1.mul(g1, &words[idx].0);
            if ech.insert(w1.to_row()).is_some() {
                let w2 = a2.mul(g2, &words[idx].1);
                words.push((w1, w2));
                frontier.push(words.len() - 1);
            }
        }
        if ech.rank() == n {
            break;
        }
    }
    if ech.rank() < n {
        return Err(QhError::NotBijective);
    }
    let m: Vec<Vec<CycScalar>> = (0..n).map(|r| (0..n).map(|c| words[c].0.coeff(r as u64)).collect()).collect();
    let minv = linalg::dense_inverse(a1.level, &m).ok_or(QhError::NotBijective)?;
    let columns = (0..n)
        .map(|e| {
            let mut img = a2.zero(1);
            for (w, row) in words.iter().zip(minv.iter()) {
                let c = &row[e];
                if !c.is_zero() {
                    img = img.add(&w.1.scale(c));
                }
            }
            img
        })
        .collect();
    Ok(LinearMap::from_columns(n, a2.dim, 1, columns))
}

/// Check that `phi` is an isomorphism of quasi-Hopf data; returns the first failing property.
pub fn check_iso_map(q1: &QuasiHopfDatum, q2: &QuasiHopfDatum, phi: &LinearMap) -> std::result::Result<(), String> {
    let (a1, a2) = (&q1.alg, &q2.alg);
    if a1.dim != a2.dim || phi.rank() != a1.dim {
        return Err("not bijective".into());
    }
    if phi.apply(&a1.one()).unwrap() != a2.one() {
        return Err("unit".into());
    }
    let left = q1.left_factors();
    for &i in &left {
        for j in 0..a1.dim {
            let p = phi.apply(&a1.mul(&a1.basis(i), &a1.basis(j))).unwrap();
            if p != a2.mul(&phi.columns[i], &phi.columns[j]) {
                return Err(format!("multiplication at ({i},{j})"));
            }
        }
    }
    for h in 0..a1.dim {
        let img = &phi.columns[h];
        let lhs = apply_tensor(&[Some(phi), Some(phi)], &q1.delta.columns[h]);
        if lhs != q2.delta_of(img) {
            return Err(format!("coproduct at {h}"));
        }
        if q1.counit.columns[h].scalar_value() != q2.eps(img) {
            return Err(format!("counit at {h}"));
        }
        if phi.apply(&q1.antipode.columns[h]).unwrap() != q2.s(img) {
            return Err(format!("antipode at {h}"));
        }
    }
    if phi.apply(&q1.alpha).unwrap() != q2.alpha || phi.apply(&q1.beta).unwrap() != q2.beta {
        return Err("distinguished elements".into());
    }
    if apply_tensor(&[Some(phi), Some(phi), Some(phi)], &q1.phi) != q2.phi {
        return Err("associator".into());
    }
    Ok(())
}

/// Does the generator assignment extend to an isomorphism Q₁ ≅ Q₂?
pub fn verify_iso(q1: &QuasiHopfDatum, q2: &QuasiHopfDatum, gen_map: &[(Element, Element)]) -> Result<bool> {
    let phi = extend_gen_map(&q1.alg, &q2.alg, gen_map)?;
    Ok(check_iso_map(q1, q2, &phi).is_ok())
}

/// Sum over the terms of an arity-2 element.
pub fn sum_pairs(alg: &StructureAlgebra, x: &Element, mut f: impl FnMut(usize, usize) -> Element) -> Element {
    let mut acc = alg.zero(1);
    for (k, c) in &x.terms {
        let t = digits(*k, x.dim, 2);
        acc = acc.add(&f(t[0], t[1]).scale(c));
    }
    acc
}

#[derive(Serialize, Deserialize)]
pub struct DatumJson {
    pub schema_version: u32,
    pub algebra: AlgebraJson,
    pub delta: Vec<(usize, usize, usize, CycScalar)>,
    pub counit: Vec<(usize, CycScalar)>,
    pub antipode: Vec<(usize, usize, CycScalar)>,
    pub phi: Vec<(usize, usize, usize, CycScalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi_inv: Option<Vec<(usize, usize, usize, CycScalar)>>,
    pub alpha: Vec<(usize, CycScalar)>,
    pub beta: Vec<(usize, CycScalar)>,
}

pub const SCHEMA_VERSION: u32 = 1;

fn triples(e: &Element) -> Vec<(usize, usize, usize, CycScalar)> {
    e.iter_tuples().map(|(t, c)| (t[0], t[1], t[2], c.clone())).collect()
}

fn singles(e: &Element) -> Vec<(usize, CycScalar)> {
    e.iter_tuples().map(|(t, c)| (t[0], c.clone())).collect()
}

impl QuasiHopfDatum {
    pub fn to_json(&self) -> DatumJson {
        let mut delta = Vec::new();
        for (h, d) in self.delta.columns.iter().enumerate() {
            for (t, c) in d.iter_tuples() {
                delta.push((h, t[0], t[1], c.clone()));
            }
        }
        let counit = self
            .counit
            .columns
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.scalar_value().is_zero())
            .map(|(h, c)| (h, c.scalar_value()))
            .collect();
        let mut antipode = Vec::new();
        for (h, s) in self.antipode.columns.iter().enumerate() {
            for (t, c) in s.iter_tuples() {
                antipode.push((h, t[0], c.clone()));
            }
        }
        DatumJson {
            schema_version: SCHEMA_VERSION,
            algebra: self.alg.to_json(),
            delta,
            counit,
            antipode,
            phi: triples(&self.phi),
            phi_inv: Some(triples(&self.phi_inv)),
            alpha: singles(&self.alpha),
            beta: singles(&self.beta),
        }
    }

    pub fn from_json(j: DatumJson) -> Result<Self> {
        let alg = StructureAlgebra::from_json(j.algebra)?;
        let n = alg.dim;
        let level = alg.level;
        let check = |i: usize| -> Result<usize> {
            if i < n {
                Ok(i)
            } else {
                Err(QhError::DimensionMismatch(format!("index {i} out of range")))
            }
        };
        let mut dcols = vec![Element::zero(n, 2, level); n];
        for (h, i, k, c) in j.delta {
            let e = Element::basis_tuple(n, level, &[check(i)?, check(k)?]).scale(&c);
            dcols[check(h)?] = dcols[h].add(&e);
        }
        let mut ecols = vec![Element::scalar(level, CycScalar::zero(level)); n];
        for (h, c) in j.counit {
            ecols[check(h)?] = Element::scalar(level, c);
        }
        let mut scols = vec![Element::zero(n, 1, level); n];
        for (h, i, c) in j.antipode {
            let e = Element::basis(n, level, check(i)?).scale(&c);
            scols[check(h)?] = scols[h].add(&e);
        }
        let tens = |v: Vec<(usize, usize, usize, CycScalar)>| -> Result<Element> {
            let mut e = Element::zero(n, 3, level);
            for (x, y, z, c) in v {
                e = e.add(&Element::basis_tuple(n, level, &[check(x)?, check(y)?, check(z)?]).scale(&c));
            }
            Ok(e)
        };
        let vecs = |v: Vec<(usize, CycScalar)>| -> Result<Element> {
            let mut e = Element::zero(n, 1, level);
            for (x, c) in v {
                e = e.add(&Element::basis(n, level, check(x)?).scale(&c));
            }
            Ok(e)
        };
        let phi = tens(j.phi)?;
        let phi_inv = match j.phi_inv {
            Some(v) => tens(v)?,
            None => alg.invert(&phi)?,
        };
        Ok(QuasiHopfDatum {
            delta: LinearMap::from_columns(n, n, 2, dcols),
            counit: LinearMap::from_columns(n, 1, 0, ecols),
            antipode: LinearMap::from_columns(n, n, 1, scols),
            phi,
            phi_inv,
            alpha: vecs(j.alpha)?,
            beta: vecs(j.beta)?,
            alg,
        })
    }
}
