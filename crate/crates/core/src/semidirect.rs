//! Semidirect products C[g]⋉H modulo gⁿ = a, untwisting to Hopf algebras, and gauge
//! moves on pairs (η, J).

use serde::Serialize;

use crate::algebra::{apply_slot, apply_tensor, digits, flat, Element, LinearMap, StructureAlgebra};
use crate::error::{QhError, Result};
use crate::groupcoh::{self, ExpCochain};
use crate::linalg::{self, Echelon, Row};
use crate::quasihopf::{
    check_sub_quasihopf, gauge_antipode, normalize_hopf, twist, verify_iso, QuasiHopfDatum, Subspace,
};
use crate::scalars::CycScalar;

#[derive(Clone, Debug)]
pub struct SemidirectInput {
    pub h: QuasiHopfDatum,
    /// Algebra automorphism of H.
    pub g: LinearMap,
    pub k: Element,
    pub n: usize,
    pub a: Element,
}

impl SemidirectInput {
    /// g = S², K = 1, with the given inner element.
    pub fn antipode_square(h: QuasiHopfDatum, n: usize, a: Element) -> Self {
        let g = h.antipode.power(2);
        let k = h.alg.one_k(2);
        SemidirectInput { h, g, k, n, a }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatReport {
    pub automorphism: bool,
    pub k_counital: bool,
    pub k_invertible: bool,
    /// First basis element violating g^{⊗2}Δ(h) = KΔ(g(h))K⁻¹.
    pub delta_witness: Option<usize>,
    pub delta_condition: bool,
    pub phi_condition: bool,
}

impl CompatReport {
    pub fn pass(&self) -> bool {
        self.automorphism && self.k_counital && self.k_invertible && self.delta_condition && self.phi_condition
    }
}

fn map_power(f: &LinearMap, e: usize) -> LinearMap {
    f.power(e)
}

fn is_automorphism(alg: &StructureAlgebra, g: &LinearMap) -> bool {
    if g.apply(&alg.one()).ok().as_ref() != Some(&alg.one()) || g.rank() != alg.dim {
        return false;
    }
    let left = alg.checked_generators().unwrap_or_else(|| (0..alg.dim).collect());
    left.iter().all(|&i| {
        (0..alg.dim).all(|j| g.apply(&alg.mul(&alg.basis(i), &alg.basis(j))).unwrap() == alg.mul(&g.columns[i], &g.columns[j]))
    })
}

/// Conditions Δ_g(h) = KΔ(h)K⁻¹ and g^{⊗3}(Φ) = Φ^K, plus counitality of K.
pub fn check_compat(inp: &SemidirectInput) -> CompatReport {
    let h = &inp.h;
    let alg = &h.alg;
    let automorphism = is_automorphism(alg, &inp.g);
    let one = alg.one();
    let k_counital = apply_slot(&h.counit, &inp.k, 0) == one && apply_slot(&h.counit, &inp.k, 1) == one;
    let kinv = alg.invert(&inp.k).ok();
    let k_invertible = kinv.is_some();
    let (mut delta_witness, mut phi_condition) = (Some(0), false);
    if let (Some(kinv), true) = (&kinv, automorphism) {
        let g2 = [Some(&inp.g), Some(&inp.g)];
        delta_witness = (0..alg.dim).find(|&b| {
            let lhs = apply_tensor(&g2, &h.delta.columns[b]);
            let rhs = alg.mul_all(&[&inp.k, &h.delta_of(&inp.g.columns[b]), kinv]);
            lhs != rhs
        });
        if k_counital {
            if let Ok(tw) = twist(h, &inp.k) {
                phi_condition = apply_tensor(&[Some(&inp.g), Some(&inp.g), Some(&inp.g)], &h.phi) == tw.phi;
            }
        }
    }
    CompatReport {
        automorphism,
        k_counital,
        k_invertible,
        delta_condition: delta_witness.is_none(),
        delta_witness,
        phi_condition,
    }
}

/// gⁿ = Ad(a) (else `POWER_NOT_INNER`), then (g^{n−1})^{⊗2}(K)⋯g^{⊗2}(K)K = (a⊗a)Δ(a)⁻¹.
pub fn check_power_condition(inp: &SemidirectInput) -> Result<bool> {
    let alg = &inp.h.alg;
    let ainv = alg.invert(&inp.a)?;
    let gn = map_power(&inp.g, inp.n);
    let inner = (0..alg.dim).all(|z| gn.columns[z] == alg.mul_all(&[&inp.a, &alg.basis(z), &ainv]));
    if !inner {
        return Err(QhError::PowerNotInner);
    }
    let mut prod = alg.one_k(2);
    for e in 0..inp.n {
        let ge = map_power(&inp.g, e);
        prod = alg.mul(&apply_tensor(&[Some(&ge), Some(&ge)], &inp.k), &prod);
    }
    let da_inv = alg.invert(&inp.h.delta_of(&inp.a))?;
    Ok(prod == alg.mul(&inp.a.tensor(&inp.a), &da_inv))
}

/// Index bookkeeping for C[g]⋉H with basis g^i·e_j, i < n.
struct Layout {
    d: usize,
    n: usize,
}

impl Layout {
    fn dim(&self) -> usize {
        self.n * self.d
    }

    /// Re-index an element of H^{⊗k} into the g⁰ part of H̃^{⊗k}.
    fn embed(&self, x: &Element) -> Element {
        let big = self.dim();
        let terms = x.terms.iter().map(|(k, c)| (flat(&digits(*k, self.d, x.arity), big), c.clone())).collect();
        Element { dim: big, arity: x.arity, level: x.level, terms }
    }

    /// g^i·u for u ∈ H.
    fn shift(&self, i: usize, u: &Element) -> Element {
        let terms = u.terms.iter().map(|(k, c)| (*k + (i * self.d) as u64, c.clone())).collect();
        Element { dim: self.dim(), arity: 1, level: u.level, terms }
    }
}

/// The algebra C[g]⋉H with gⁿ folded to a.
fn semidirect_algebra(h: &StructureAlgebra, g: &LinearMap, n: usize, a: &Element) -> Result<StructureAlgebra> {
    let d = h.dim;
    let lay = Layout { d, n };
    let ginv = g.inverse()?;
    let ginv_pows: Vec<LinearMap> = (0..n).map(|j| map_power(&ginv, j)).collect();
    let mut table = Vec::with_capacity(lay.dim() * lay.dim());
    for i1 in 0..n {
        for j1 in 0..d {
            for i2 in 0..n {
                let u = &ginv_pows[i2].columns[j1];
                for j2 in 0..d {
                    let mut prod = h.mul(u, &h.basis(j2));
                    let mut s = i1 + i2;
                    if s >= n {
                        prod = h.mul(a, &prod);
                        s -= n;
                    }
                    table.push(lay.shift(s, &prod).terms.into_iter().map(|(k, c)| (k as usize, c)).collect());
                }
            }
        }
    }
    let unit = h.unit.clone();
    let mut out = StructureAlgebra::new(lay.dim(), h.level, table, unit)?;
    if let Some(gr) = &h.grading {
        out = out.with_grading((0..n).flat_map(|_| gr.iter().copied()).collect());
    }
    if let Some(w) = &h.weights {
        out = out.with_weights((0..n).flat_map(|_| w.iter().cloned()).collect());
    }
    let labels: Vec<String> = (0..n)
        .flat_map(|i| {
            (0..d).map(move |j| {
                let l = h.label(j);
                match (i, l.as_str()) {
                    (0, _) => l,
                    (_, "1") => if i == 1 { "g".into() } else { format!("g^{i}") },
                    _ => if i == 1 { format!("g{l}") } else { format!("g^{i}{l}") },
                }
            })
        })
        .collect();
    out = out.with_labels(labels);
    if let ([(u, c)], Some(gens)) = (h.unit.as_slice(), &h.generators) {
        if c.is_one() {
            let mut all = vec![d + u];
            all.extend(gens.iter().copied());
            out = out.with_generators(all);
        }
    }
    Ok(out)
}

/// The grouplike-type element g = g¹·1 of the semidirect product.
pub fn g_element(ht: &StructureAlgebra, h_dim: usize, h_unit: &[(usize, CycScalar)]) -> Element {
    let terms = h_unit.iter().map(|(u, c)| ((h_dim + u) as u64, c.clone())).collect();
    Element { dim: ht.dim, arity: 1, level: ht.level, terms }
}

fn semidirect_datum(inp: &SemidirectInput, n: usize, a: &Element) -> Result<(QuasiHopfDatum, Element)> {
    let h = &inp.h;
    let d = h.dim();
    let lay = Layout { d, n };
    let alg = semidirect_algebra(&h.alg, &inp.g, n, a)?;
    let g = g_element(&alg, d, &h.alg.unit);
    let kinv = lay.embed(&h.alg.invert(&inp.k)?);
    let dg = alg.mul(&kinv, &g.tensor(&g));
    let mut dg_pows = vec![alg.one_k(2)];
    for i in 1..n {
        dg_pows.push(alg.mul(&dg_pows[i - 1], &dg));
    }
    let mut delta_cols = Vec::with_capacity(alg.dim);
    let mut eps_cols = Vec::with_capacity(alg.dim);
    for dp in &dg_pows {
        for j in 0..d {
            delta_cols.push(alg.mul(dp, &lay.embed(&h.delta.columns[j])));
            eps_cols.push(h.counit.columns[j].clone());
        }
    }
    let delta = LinearMap::from_columns(alg.dim, alg.dim, 2, delta_cols);
    let counit = LinearMap::from_columns(alg.dim, 1, 0, eps_cols);
    let alpha = lay.embed(&h.alpha);
    let beta = lay.embed(&h.beta);
    let s_h: Vec<Element> = h.antipode.columns.iter().map(|c| lay.embed(c)).collect();
    let sg = solve_antipode_of_g(&alg, &dg, &s_h, &alpha, &beta, d)?;
    let mut sg_pows = vec![alg.one()];
    for i in 1..n {
        sg_pows.push(alg.mul(&sg_pows[i - 1], &sg));
    }
    let mut s_cols = Vec::with_capacity(alg.dim);
    for sp in &sg_pows {
        for sh in &s_h {
            s_cols.push(alg.mul(sh, sp));
        }
    }
    let antipode = LinearMap::from_columns(alg.dim, alg.dim, 1, s_cols);
    Ok((
        QuasiHopfDatum {
            phi: lay.embed(&h.phi),
            phi_inv: lay.embed(&h.phi_inv),
            alg,
            delta,
            counit,
            antipode,
            alpha,
            beta,
        },
        g,
    ))
}

/// Solve the antipode axioms on g for S(g), given Δ(g) supported on g¹·H ⊗ g¹·H.
fn solve_antipode_of_g(
    alg: &StructureAlgebra,
    dg: &Element,
    s_h: &[Element],
    alpha: &Element,
    beta: &Element,
    d: usize,
) -> Result<Element> {
    let dim = alg.dim;
    let mut terms: Vec<(usize, usize, CycScalar)> = Vec::new();
    for (t, c) in dg.iter_tuples() {
        if t[0] / d != 1 || t[1] / d != 1 {
            return Err(QhError::PreconditionFailed("Δ(g) is not supported on g·H ⊗ g·H".into()));
        }
        terms.push((t[0], t[1], c.clone()));
    }
    // S(g·v) = S(v)S(g), where e_{d+j} = g·e_j.
    let columns: Vec<Row> = (0..dim)
        .map(|m| {
            let s = alg.basis(m);
            let mut l = alg.zero(1);
            let mut r = alg.zero(1);
            for (p, q, c) in &terms {
                let sp = alg.mul(&s_h[p - d], &s);
                l = l.add(&alg.mul_all(&[&sp, alpha, &alg.basis(*q)]).scale(c));
                let sq = alg.mul(&s_h[q - d], &s);
                r = r.add(&alg.mul_all(&[&alg.basis(*p), beta, &sq]).scale(c));
            }
            let mut row = l.to_row();
            row.extend(r.to_row().into_iter().map(|(k, v)| (k + dim, v)));
            row
        })
        .collect();
    let mut b = alpha.to_row();
    b.extend(beta.to_row().into_iter().map(|(k, v)| (k + dim, v)));
    let sol = linalg::solve(alg.level, &columns, &b, 2 * dim)
        .ok_or_else(|| QhError::PreconditionFailed("no antipode value for g satisfies the axioms".into()))?;
    Ok(Element::from_row(dim, 1, alg.level, &sol))
}

/// H̃ = (C[g,g⁻¹]⋉H)/⟨gⁿ − a⟩ with Δ(g) = K⁻¹(g⊗g). Returns the datum and the element g.
pub fn build_semidirect(inp: &SemidirectInput) -> Result<(QuasiHopfDatum, Element)> {
    let rep = check_compat(inp);
    if !rep.pass() {
        return Err(QhError::PreconditionFailed(format!("compatibility conditions fail: {rep:?}")));
    }
    if !check_power_condition(inp)? {
        return Err(QhError::PreconditionFailed("power condition fails".into()));
    }
    if inp.g.apply(&inp.a)? != inp.a {
        return Err(QhError::PreconditionFailed("g does not fix a".into()));
    }
    semidirect_datum(inp, inp.n, &inp.a)
}

/// Φ·(Δ⊗id)Δ(g) = (id⊗Δ)Δ(g)·Φ for the adjoined generator.
pub fn lemma31_check(ht: &QuasiHopfDatum, g: &Element) -> bool {
    let dg = ht.delta_of(g);
    let l = apply_slot(&ht.delta, &dg, 0);
    let r = apply_slot(&ht.delta, &dg, 1);
    ht.alg.mul(&ht.phi, &l) == ht.alg.mul(&r, &ht.phi)
}

/// Two-sided ideal generated by `xs`.
pub fn ideal_closure(alg: &StructureAlgebra, xs: &[Element]) -> Vec<Element> {
    let gens: Vec<Element> = match alg.checked_generators() {
        Some(g) => g.iter().map(|&i| alg.basis(i)).collect(),
        None => (0..alg.dim).map(|i| alg.basis(i)).collect(),
    };
    let mut ech = Echelon::new(alg.level);
    let mut basis = Vec::new();
    let mut queue: Vec<Element> = xs.to_vec();
    while let Some(v) = queue.pop() {
        if ech.insert(v.to_row()).is_none() {
            continue;
        }
        for g in &gens {
            queue.push(alg.mul(g, &v));
            queue.push(alg.mul(&v, g));
        }
        basis.push(v);
    }
    basis
}

/// In the finite cover C[Z_L]⋉H (L = n·ord(a)), Δ(gⁿ − a) ∈ I⊗B + B⊗I for I = ⟨gⁿ − a⟩.
pub fn lemma32_check(inp: &SemidirectInput) -> Result<bool> {
    let h = &inp.h;
    let ord = groupcoh::element_order(&h.alg, &inp.a, 4096)
        .ok_or_else(|| QhError::PreconditionFailed("a has no finite order".into()))?;
    let l = inp.n * ord;
    let (b, g) = semidirect_datum(inp, l, &h.alg.one())?;
    let lay = Layout { d: h.dim(), n: l };
    let x = b.alg.pow(&g, inp.n).sub(&lay.embed(&inp.a));
    let ideal = ideal_closure(&b.alg, &[x.clone()]);
    let ech = {
        let mut e = Echelon::new(b.alg.level);
        for v in &ideal {
            e.insert(v.to_row());
        }
        e
    };
    let residue_cols: Vec<Element> =
        (0..b.alg.dim).map(|i| Element::from_row(b.alg.dim, 1, b.alg.level, &ech.reduce(b.alg.basis(i).to_row()))).collect();
    let residue = LinearMap::from_columns(b.alg.dim, b.alg.dim, 1, residue_cols);
    Ok(apply_tensor(&[Some(&residue), Some(&residue)], &b.delta_of(&x)).is_zero())
}

#[derive(Clone, Debug)]
pub struct Untwisted {
    /// H₀^J equals H̃ after the antipode gauge by `gauge`.
    pub j: Element,
    pub h0: QuasiHopfDatum,
    pub gauge: Element,
    pub cochain: ExpCochain,
    pub associator_cocycle: ExpCochain,
}

/// Trivialize the associator of H̃ (supported on the cyclic group of g) by a twist.
pub fn untwist_to_hopf(ht: &QuasiHopfDatum, g: &Element) -> Result<Untwisted> {
    let alg = &ht.alg;
    let order = groupcoh::element_order(alg, g, 4096)
        .ok_or_else(|| QhError::PreconditionFailed("g has no finite order".into()))?;
    if ht.delta_of(g) != g.tensor(g) {
        return Err(QhError::PreconditionFailed("g is not grouplike".into()));
    }
    let root = CycScalar::root(order as u32, 1).lift(alg.level)?;
    let m = alg.level as u64;
    let omega = groupcoh::tensor_to_cochain(&ht.phi, alg, g, order, &root, m)?;
    let c = groupcoh::solve_coboundary(&omega)?
        .ok_or_else(|| QhError::SolverFailed("associator class is nontrivial on ⟨g⟩".into()))?;
    let j = groupcoh::cochain_to_tensor(&c, alg, g, &root)?;
    let jinv = alg.invert(&j)?;
    let raw = twist(ht, &jinv)?;
    if !raw.is_hopf() {
        return Err(QhError::SolverFailed("twisted associator is not trivial".into()));
    }
    let gauge = raw.alpha.clone();
    let h0 = normalize_hopf(&raw)?;
    Ok(Untwisted { j, h0, gauge, cochain: c, associator_cocycle: omega })
}

/// Elements y with Δ(y) = y⊗r + l⊗y and c·y = λ·y·c.
pub fn skew_primitives(q: &QuasiHopfDatum, l: &Element, r: &Element, c: &Element, lambda: &CycScalar) -> Vec<Element> {
    let alg = &q.alg;
    let dim = alg.dim;
    let d2 = dim * dim;
    let mut rows: std::collections::BTreeMap<usize, Row> = std::collections::BTreeMap::new();
    for m in 0..dim {
        let y = alg.basis(m);
        let eq1 = q.delta.columns[m].sub(&y.tensor(r)).sub(&l.tensor(&y));
        let eq2 = alg.mul(c, &y).sub(&alg.mul(&y, c).scale(lambda));
        for (k, v) in eq1.terms.iter().map(|(k, v)| (*k as usize, v)).chain(eq2.terms.iter().map(|(k, v)| (*k as usize + d2, v))) {
            rows.entry(k).or_default().insert(m, v.clone());
        }
    }
    linalg::nullspace(alg.level, rows.into_values(), dim)
        .into_iter()
        .map(|r| Element::from_row(dim, 1, alg.level, &r))
        .collect()
}

/// A skew-primitive generator of a pointed target: basis index, and the exponents
/// (l, r) with Δ(x) = x⊗g^r + g^l⊗x.
#[derive(Clone, Copy, Debug)]
pub struct SkewGen {
    pub index: usize,
    pub l: usize,
    pub r: usize,
}

/// Search for an isomorphism target → h0 sending the target grouplike to a power of g.
pub fn match_pointed(
    target: &QuasiHopfDatum,
    grouplike: usize,
    skews: &[SkewGen],
    h0: &QuasiHopfDatum,
    g: &Element,
) -> Result<Option<Vec<(Element, Element)>>> {
    let ta = &target.alg;
    let gt = ta.basis(grouplike);
    let order = groupcoh::element_order(ta, &gt, 4096).ok_or(QhError::NotBijective)?;
    let mut lambdas = Vec::new();
    for s in skews {
        let x = ta.basis(s.index);
        let lhs = ta.mul(&gt, &x);
        let rhs = ta.mul(&x, &gt);
        let (k, c) = rhs.terms.iter().next().ok_or(QhError::NotBijective)?;
        let lam = &lhs.coeff(*k) * &c.inv()?;
        if lhs != rhs.scale(&lam) {
            return Err(QhError::PreconditionFailed("generator is not a g-eigenvector".into()));
        }
        lambdas.push(lam);
    }
    for k in (1..order).filter(|k| num_integer::gcd(*k, order) == 1) {
        let gk = h0.alg.pow(g, k);
        let mut map = vec![(gt.clone(), gk.clone())];
        let mut ok = true;
        for (s, lam) in skews.iter().zip(&lambdas) {
            let ys = skew_primitives(h0, &h0.alg.pow(&gk, s.l), &h0.alg.pow(&gk, s.r), &gk, &lam.lift(h0.level())?);
            match ys.into_iter().next() {
                Some(y) => map.push((ta.basis(s.index), y)),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && verify_iso(target, h0, &map)? {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// The A(q)-copy span{g^{ni}x^j} = H-part inside H̃, as basis elements.
pub fn embedded_h_basis(ht: &QuasiHopfDatum, h_dim: usize) -> Vec<Element> {
    (0..h_dim).map(|j| ht.alg.basis(j)).collect()
}

#[derive(Clone, Debug)]
pub enum GaugeMove {
    /// (η, J) ↦ (η∘ξ, J) for an automorphism ξ of A₀.
    Reparam(LinearMap),
    /// (η, J) ↦ (Ad(h)∘η, (h⊗h)JΔ(h)⁻¹).
    Conjugate(Element),
    /// (η, J) ↦ (η, TJ) with T in η(A₀)^{⊗2}.
    Retwist(Element),
}

impl GaugeMove {
    pub fn kind(&self) -> u8 {
        match self {
            GaugeMove::Reparam(_) => 1,
            GaugeMove::Conjugate(_) => 2,
            GaugeMove::Retwist(_) => 3,
        }
    }
}

/// A pair (η: A₀ → H₀, J) together with the antipode gauge u under which η(A₀) is a
/// quasi-Hopf subalgebra of H₀^J.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugedPair {
    pub eta: LinearMap,
    pub j: Element,
    pub u: Element,
}

/// The datum H₀^J with antipode gauged by u.
pub fn pair_ambient(ambient: &QuasiHopfDatum, pair: &GaugedPair) -> Result<QuasiHopfDatum> {
    gauge_antipode(&twist(ambient, &pair.j)?, &pair.u)
}

/// Membership in E: η injective and η(A₀) a quasi-Hopf subalgebra of the gauged H₀^J.
pub fn check_in_e(ambient: &QuasiHopfDatum, pair: &GaugedPair) -> Result<Subspace> {
    if pair.eta.rank() != pair.eta.source_dim {
        return Err(QhError::NotInE("η is not injective".into()));
    }
    let amb = pair_ambient(ambient, pair).map_err(|e| QhError::NotInE(e.to_string()))?;
    check_sub_quasihopf(&amb, &pair.eta.columns).map_err(|e| QhError::NotInE(e.to_string()))
}

pub fn gauge_apply(pair: &GaugedPair, mv: &GaugeMove, ambient: &QuasiHopfDatum) -> Result<GaugedPair> {
    let sub = check_in_e(ambient, pair)?;
    let alg = &ambient.alg;
    let out = match mv {
        GaugeMove::Reparam(xi) => {
            if xi.rank() != xi.source_dim || xi.source_dim != pair.eta.source_dim {
                return Err(QhError::PreconditionFailed("ξ is not invertible on A₀".into()));
            }
            GaugedPair { eta: pair.eta.compose(xi), ..pair.clone() }
        }
        GaugeMove::Conjugate(h) => {
            let hinv = alg.invert(h)?;
            let dh_inv = alg.invert(&ambient.delta_of(h))?;
            let cols = pair.eta.columns.iter().map(|c| alg.mul_all(&[h, c, &hinv])).collect();
            GaugedPair {
                eta: LinearMap::from_columns(pair.eta.source_dim, alg.dim, 1, cols),
                j: alg.mul_all(&[&h.tensor(h), &pair.j, &dh_inv]),
                u: alg.mul_all(&[h, &pair.u, &ambient.s(h)]),
            }
        }
        GaugeMove::Retwist(t) => {
            if !sub.contains(t) {
                return Err(QhError::PreconditionFailed("T is not in η(A₀)⊗η(A₀)".into()));
            }
            GaugedPair { j: alg.mul(t, &pair.j), ..pair.clone() }
        }
    };
    check_in_e(ambient, &out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{build_aq, build_taft};
    use crate::quasihopf::verify_axioms;

    fn aq_input() -> SemidirectInput {
        let q = build_aq(2, 1).unwrap();
        let a = q.alg.basis(4);
        SemidirectInput::antipode_square(q, 2, a)
    }

    #[test]
    fn compat_and_power() {
        let inp = aq_input();
        assert!(check_compat(&inp).pass());
        assert!(check_power_condition(&inp).unwrap());
        let id = SemidirectInput { g: LinearMap::identity(8, 4), n: 1, a: inp.h.alg.one(), ..inp.clone() };
        assert!(check_compat(&id).pass());
        let mut bad = inp.clone();
        bad.a = bad.h.alg.mul(&bad.a, &bad.h.alg.one().add(&bad.h.alg.basis(1)));
        assert!(!matches!(check_power_condition(&bad), Ok(true)));
    }

    #[test]
    fn semidirect_aq2() {
        let inp = aq_input();
        let (ht, g) = build_semidirect(&inp).unwrap();
        assert_eq!(ht.dim(), 16);
        let rep = verify_axioms(&ht);
        assert!(rep.all_pass(), "{:?}", rep.failures());
        assert!(lemma31_check(&ht, &g));
        assert!(lemma32_check(&inp).unwrap());
        let un = untwist_to_hopf(&ht, &g).unwrap();
        assert!(verify_axioms(&un.h0).all_pass());
        let taft = build_taft(4, 1).unwrap();
        let m = match_pointed(&taft, 4, &[SkewGen { index: 1, l: 0, r: 1 }], &un.h0, &g).unwrap();
        assert!(m.is_some());
    }

    #[test]
    fn gauge_moves() {
        let inp = aq_input();
        let (ht, g) = build_semidirect(&inp).unwrap();
        let un = untwist_to_hopf(&ht, &g).unwrap();
        let h0 = &un.h0;
        let eta = LinearMap::from_columns(8, 16, 1, embedded_h_basis(&ht, 8));
        let pair = GaugedPair { eta, j: un.j.clone(), u: un.gauge.clone() };
        assert_eq!(pair_ambient(h0, &pair).unwrap(), ht);
        check_in_e(h0, &pair).unwrap();
        let same = gauge_apply(&pair, &GaugeMove::Conjugate(h0.alg.one()), h0).unwrap();
        assert_eq!(same, pair);
        let h = h0.alg.one().add(&h0.alg.basis(1));
        let moved = gauge_apply(&pair, &GaugeMove::Conjugate(h.clone()), h0).unwrap();
        let back = gauge_apply(&moved, &GaugeMove::Conjugate(h0.alg.invert(&h).unwrap()), h0).unwrap();
        assert_eq!(back, pair);
    }
}

#[cfg(test)]
mod big_tests {
    use super::*;
    use crate::catalog::{build_aq, build_book64, build_h32, build_taft};
    use crate::quasihopf::verify_axioms;

    #[test]
    fn h32_to_book64() {
        let q = build_h32().unwrap();
        let a = q.alg.basis(16);
        let inp = SemidirectInput::antipode_square(q, 2, a);
        let (ht, g) = build_semidirect(&inp).unwrap();
        assert!(verify_axioms(&ht).all_pass());
        let un = untwist_to_hopf(&ht, &g).unwrap();
        let book = build_book64().unwrap();
        let skews = [SkewGen { index: 4, l: 0, r: 1 }, SkewGen { index: 1, l: 3, r: 0 }];
        let m = match_pointed(&book, 16, &skews, &un.h0, &g).unwrap();
        assert!(m.is_some());
    }

    #[test]
    fn aq3_to_taft81() {
        let q = build_aq(3, 1).unwrap();
        let a = q.alg.basis(9);
        let inp = SemidirectInput::antipode_square(q, 3, a);
        let (ht, g) = build_semidirect(&inp).unwrap();
        assert!(verify_axioms(&ht).all_pass());
        let un = untwist_to_hopf(&ht, &g).unwrap();
        let taft = build_taft(9, 1).unwrap();
        let m = match_pointed(&taft, 9, &[SkewGen { index: 1, l: 0, r: 1 }], &un.h0, &g).unwrap();
        assert!(m.is_some());
    }
}
