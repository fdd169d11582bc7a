//! Constructors for the quasi-Hopf algebras used throughout the crate.
//!
//! Every algebra here has a PBW-style basis of monomials g₁^{e₁}⋯g_k^{e_k} whose
//! products are single scaled monomials, so structure constants come from a rule
//! on exponent vectors. Δ, ε and S are given on generators and extended.

use std::collections::BTreeMap;

use crate::algebra::{Element, LinearMap, StructureAlgebra};
use crate::error::{QhError, Result};
use crate::groupcoh::{self, ExpCochain};
use crate::quasihopf::{dual_datum, QuasiHopfDatum};
use crate::scalars::CycScalar;

type Rule<'a> = dyn Fn(&[usize], &[usize]) -> Option<(CycScalar, Vec<usize>)> + 'a;

fn monomial_index(e: &[usize], bounds: &[usize]) -> usize {
    e.iter().zip(bounds).fold(0, |acc, (x, b)| acc * b + x)
}

fn monomial_exponents(mut idx: usize, bounds: &[usize]) -> Vec<usize> {
    let mut e = vec![0; bounds.len()];
    for s in (0..bounds.len()).rev() {
        e[s] = idx % bounds[s];
        idx /= bounds[s];
    }
    e
}

fn monomial_label(e: &[usize], names: &[&str]) -> String {
    let parts: Vec<String> = e
        .iter()
        .zip(names)
        .filter(|(x, _)| **x > 0)
        .map(|(x, n)| if *x == 1 { n.to_string() } else { format!("{n}^{x}") })
        .collect();
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("")
    }
}

/// Algebra on monomials with exponent bounds, multiplied by `rule`.
fn monomial_algebra(level: u32, bounds: &[usize], names: &[&str], degrees: &[u32], rule: &Rule) -> Result<StructureAlgebra> {
    let dim: usize = bounds.iter().product();
    let exps: Vec<Vec<usize>> = (0..dim).map(|i| monomial_exponents(i, bounds)).collect();
    let mut table = Vec::with_capacity(dim * dim);
    for l in &exps {
        for r in &exps {
            table.push(match rule(l, r) {
                Some((c, e)) if !c.is_zero() => vec![(monomial_index(&e, bounds), c)],
                _ => vec![],
            });
        }
    }
    let grading = exps.iter().map(|e| e.iter().zip(degrees).map(|(x, d)| *x as u32 * d).sum()).collect();
    let weights: Vec<Vec<i32>> =
        exps.iter().map(|e| e.iter().zip(degrees).filter(|(_, d)| **d > 0).map(|(x, _)| *x as i32).collect()).collect();
    let generators = (0..bounds.len())
        .map(|g| {
            let mut e = vec![0; bounds.len()];
            e[g] = 1;
            monomial_index(&e, bounds)
        })
        .collect();
    Ok(StructureAlgebra::new(dim, level, table, vec![(0, CycScalar::one(level))])?
        .with_grading(grading)
        .with_weights(weights)
        .with_generators(generators)
        .with_labels(exps.iter().map(|e| monomial_label(e, names)).collect()))
}

/// Extend Δ, ε multiplicatively and S anti-multiplicatively from generator images.
fn extend_structure(
    alg: &StructureAlgebra,
    bounds: &[usize],
    delta: &[Element],
    eps: &[CycScalar],
    s: &[Element],
) -> (LinearMap, LinearMap, LinearMap) {
    let dim = alg.dim;
    let level = alg.level;
    let mut d_cols: Vec<Element> = Vec::with_capacity(dim);
    let mut e_cols: Vec<CycScalar> = Vec::with_capacity(dim);
    let mut s_cols: Vec<Element> = Vec::with_capacity(dim);
    for idx in 0..dim {
        let e = monomial_exponents(idx, bounds);
        match e.iter().rposition(|&x| x > 0) {
            None => {
                d_cols.push(alg.one_k(2));
                e_cols.push(CycScalar::one(level));
                s_cols.push(alg.one());
            }
            Some(g) => {
                let mut prev = e.clone();
                prev[g] -= 1;
                let p = monomial_index(&prev, bounds);
                d_cols.push(alg.mul(&d_cols[p], &delta[g]));
                e_cols.push(&e_cols[p] * &eps[g]);
                s_cols.push(alg.mul(&s[g], &s_cols[p]));
            }
        }
    }
    let counit = LinearMap::from_columns(dim, 1, 0, e_cols.into_iter().map(|c| Element::scalar(level, c)).collect());
    (
        LinearMap::from_columns(dim, dim, 2, d_cols),
        counit,
        LinearMap::from_columns(dim, dim, 1, s_cols),
    )
}

fn check_primitive(n: u64, r: i64) -> Result<()> {
    if num_integer::gcd(r.rem_euclid(n as i64) as u64, n) != 1 {
        return Err(QhError::NotPrimitive(format!("ζ_{n}^{r} is not a primitive {n}-th root of unity")));
    }
    Ok(())
}

/// Idempotents 1_i = (1/n) Σ_j root^{−ij} g^j with g·1_i = root^i·1_i.
pub fn idempotents(alg: &StructureAlgebra, g: &Element, n: usize, root: &CycScalar) -> Result<Vec<Element>> {
    groupcoh::grouplike_idempotents(alg, g, n, root)
}

/// A(q) with q = ζ_{n²}^r: basis a^i x^j, ax = q^n xa, a^n = 1, x^{n²} = 0.
pub fn build_aq(n: usize, r: i64) -> Result<QuasiHopfDatum> {
    if n < 2 {
        return Err(QhError::BadParameter("n must be at least 2".into()));
    }
    let nn = n * n;
    check_primitive(nn as u64, r)?;
    let level = nn as u32;
    let q = CycScalar::root(level, r);
    let bounds = [n, nn];
    let rule = |l: &[usize], rt: &[usize]| -> Option<(CycScalar, Vec<usize>)> {
        if l[1] + rt[1] >= nn {
            return None;
        }
        let c = q.pow(-((n * l[1] * rt[0]) as i64)).ok()?;
        Some((c, vec![(l[0] + rt[0]) % n, l[1] + rt[1]]))
    };
    let alg = monomial_algebra(level, &bounds, &["a", "x"], &[0, 1], &rule)?;
    let a = alg.basis(1 * nn);
    let x = alg.basis(1);
    let a_inv = alg.basis((n - 1) * nn);
    let qn = q.pow(n as i64)?;
    let ones = idempotents(&alg, &a, n, &qn)?;
    let mut sum_qy = alg.zero(1);
    let mut sum_qnz = alg.zero(1);
    for (y, e) in ones.iter().enumerate() {
        sum_qy = sum_qy.add(&e.scale(&q.pow(y as i64)?));
        sum_qnz = sum_qnz.add(&e.scale(&q.pow(n as i64 - y as i64)?));
    }
    let one = alg.one();
    let e0x = alg.mul(&ones[0], &x);
    let dx = x
        .tensor(&sum_qy)
        .add(&one.tensor(&alg.mul(&one.sub(&ones[0]), &x)))
        .add(&a_inv.tensor(&e0x));
    let sx = alg.mul(&x, &sum_qnz).neg();
    let (delta, counit, antipode) = extend_structure(
        &alg,
        &bounds,
        &[a.tensor(&a), dx],
        &[CycScalar::one(level), CycScalar::zero(level)],
        &[a_inv, sx],
    );
    let omega = groupcoh::assoc_cocycle_aq(n, r)?;
    let neg = ExpCochain::from_fn(n, 3, omega.m, |t| -(omega.get(t) as i64));
    let phi = groupcoh::cochain_to_tensor(&omega, &alg, &a, &qn)?;
    let phi_inv = groupcoh::cochain_to_tensor(&neg, &alg, &a, &qn)?;
    Ok(QuasiHopfDatum { alpha: a, beta: one, phi, phi_inv, delta, counit, antipode, alg })
}

/// The 32-dimensional quasi-Hopf algebra on a, x, y with ax = −xa, ay = −ya, xy + iyx = 0.
pub fn build_h32() -> Result<QuasiHopfDatum> {
    let level = 4;
    let i = CycScalar::root(level, 1);
    let bounds = [2, 4, 4];
    let rule = |l: &[usize], r: &[usize]| -> Option<(CycScalar, Vec<usize>)> {
        if l[1] + r[1] >= 4 || l[2] + r[2] >= 4 {
            return None;
        }
        let e = 2 * (l[1] + l[2]) * r[0] + l[2] * r[1];
        Some((i.pow(e as i64).ok()?, vec![(l[0] + r[0]) % 2, l[1] + r[1], l[2] + r[2]]))
    };
    let alg = monomial_algebra(level, &bounds, &["a", "x", "y"], &[0, 1, 1], &rule)?;
    let a = alg.basis(16);
    let x = alg.basis(4);
    let y = alg.basis(1);
    let one = alg.one();
    let half = CycScalar::from_ratio(level, 1, 2);
    let pp = one.add(&a).scale(&half);
    let pm = one.sub(&a).scale(&half);
    let dx = x
        .tensor(&pp.add(&pm.scale(&i)))
        .add(&one.tensor(&alg.mul(&pp, &x)))
        .add(&a.tensor(&alg.mul(&pm, &x)));
    let dy = y
        .tensor(&pp.sub(&pm.scale(&i)))
        .add(&one.tensor(&alg.mul(&pp, &y)))
        .add(&a.tensor(&alg.mul(&pm, &y)));
    let sx = alg.mul(&x, &pp.add(&pm.scale(&i))).neg();
    let sy = alg.mul(&y, &pp.sub(&pm.scale(&i))).neg();
    let (delta, counit, antipode) = extend_structure(
        &alg,
        &bounds,
        &[a.tensor(&a), dx, dy],
        &[CycScalar::one(level), CycScalar::zero(level), CycScalar::zero(level)],
        &[a.clone(), sx, sy],
    );
    let phi = alg.one_k(3).sub(&pm.tensor(&pm).tensor(&pm).scale(&CycScalar::from_int(level, 2)));
    Ok(QuasiHopfDatum { alpha: a, beta: one, phi_inv: phi.clone(), phi, delta, counit, antipode, alg })
}

/// Taft algebra: g^N = 1, x^N = 0, gx = q xg, Δ(x) = x⊗g + 1⊗x, q = ζ_N^r.
pub fn build_taft(n: usize, r: i64) -> Result<QuasiHopfDatum> {
    if n < 2 {
        return Err(QhError::BadParameter("N must be at least 2".into()));
    }
    check_primitive(n as u64, r)?;
    let level = n as u32;
    let q = CycScalar::root(level, r);
    let bounds = [n, n];
    let rule = |l: &[usize], rt: &[usize]| -> Option<(CycScalar, Vec<usize>)> {
        if l[1] + rt[1] >= n {
            return None;
        }
        Some((q.pow(-((l[1] * rt[0]) as i64)).ok()?, vec![(l[0] + rt[0]) % n, l[1] + rt[1]]))
    };
    let alg = monomial_algebra(level, &bounds, &["g", "x"], &[0, 1], &rule)?;
    let g = alg.basis(n);
    let x = alg.basis(1);
    let g_inv = alg.basis((n - 1) * n);
    let one = alg.one();
    let (delta, counit, antipode) = extend_structure(
        &alg,
        &bounds,
        &[g.tensor(&g), x.tensor(&g).add(&one.tensor(&x))],
        &[CycScalar::one(level), CycScalar::zero(level)],
        &[g_inv.clone(), alg.mul(&x, &g_inv).neg()],
    );
    Ok(QuasiHopfDatum::hopf(alg, delta, counit, antipode))
}

/// Book algebra: a^p = 1, x^p = y^p = 0, xy = yx, ax = q xa, ay = q^m ya,
/// Δ(x) = x⊗a + 1⊗x, Δ(y) = y⊗1 + a^m⊗y, q = ζ_p^r.
pub fn build_book(p: usize, r: i64, m: i64) -> Result<QuasiHopfDatum> {
    if p < 2 {
        return Err(QhError::BadParameter("p must be at least 2".into()));
    }
    check_primitive(p as u64, r)?;
    let mm = m.rem_euclid(p as i64) as usize;
    if mm == 0 || num_integer::gcd(mm, p) != 1 {
        return Err(QhError::BadParameter(format!("m = {m} must be a unit mod {p}")));
    }
    let level = p as u32;
    let q = CycScalar::root(level, r);
    let bounds = [p, p, p];
    let rule = |l: &[usize], rt: &[usize]| -> Option<(CycScalar, Vec<usize>)> {
        if l[1] + rt[1] >= p || l[2] + rt[2] >= p {
            return None;
        }
        let e = (l[1] + mm * l[2]) * rt[0];
        Some((q.pow(-(e as i64)).ok()?, vec![(l[0] + rt[0]) % p, l[1] + rt[1], l[2] + rt[2]]))
    };
    let alg = monomial_algebra(level, &bounds, &["a", "x", "y"], &[0, 1, 1], &rule)?;
    let a = alg.basis(p * p);
    let x = alg.basis(p);
    let y = alg.basis(1);
    let am = alg.basis(mm * p * p);
    let a_inv = alg.basis((p - 1) * p * p);
    let a_minv = alg.basis(((p - mm) % p) * p * p);
    let one = alg.one();
    let (delta, counit, antipode) = extend_structure(
        &alg,
        &bounds,
        &[a.tensor(&a), x.tensor(&a).add(&one.tensor(&x)), y.tensor(&one).add(&am.tensor(&y))],
        &[CycScalar::one(level), CycScalar::zero(level), CycScalar::zero(level)],
        &[a_inv.clone(), alg.mul(&x, &a_inv).neg(), alg.mul(&a_minv, &y).neg()],
    );
    Ok(QuasiHopfDatum::hopf(alg, delta, counit, antipode))
}

/// The 64-dimensional book algebra with gx₊g⁻¹ = ix₊, gx₋g⁻¹ = −ix₋.
pub fn build_book64() -> Result<QuasiHopfDatum> {
    build_book(4, 1, 3)
}

/// C[Z_N] with associator Σ ζ_M^{ω(i,j,k)} e_i⊗e_j⊗e_k over the idempotents g·e_i = ζ_N^i e_i.
pub fn build_cyclic_cocycle(n: usize, omega: &ExpCochain) -> Result<QuasiHopfDatum> {
    if omega.n != n || omega.k != 3 {
        return Err(QhError::BadParameter("expected a 3-cochain on Z_N".into()));
    }
    if !omega.is_cocycle() {
        return Err(QhError::NotACocycle);
    }
    let level = num_integer::lcm(n as u64, omega.m) as u32;
    let table = (0..n * n).map(|t| vec![((t / n + t % n) % n, CycScalar::one(level))]).collect();
    let names: Vec<String> = (0..n).map(|i| monomial_label(&[i], &["a"])).collect();
    let alg = StructureAlgebra::new(n, level, table, vec![(0, CycScalar::one(level))])?
        .with_grading(vec![0; n])
        .with_generators(if n > 1 { vec![1] } else { vec![] })
        .with_labels(names);
    let g = alg.basis(1 % n);
    let root = CycScalar::root(n as u32, 1).lift(level)?;
    let delta = LinearMap::from_columns(n, n, 2, (0..n).map(|i| alg.basis(i).tensor(&alg.basis(i))).collect());
    let counit = LinearMap::from_columns(n, 1, 0, (0..n).map(|_| Element::scalar(level, CycScalar::one(level))).collect());
    let antipode = LinearMap::from_columns(n, n, 1, (0..n).map(|i| alg.basis((n - i) % n)).collect());
    let neg = ExpCochain::from_fn(n, 3, omega.m, |t| -(omega.get(t) as i64));
    let phi = groupcoh::cochain_to_tensor(omega, &alg, &g, &root)?;
    let phi_inv = groupcoh::cochain_to_tensor(&neg, &alg, &g, &root)?;
    let e = idempotents(&alg, &g, n, &root)?;
    let mut beta = alg.zero(1);
    for (s, es) in e.iter().enumerate() {
        let v = omega.get(&[s, (n - s) % n, s]) as i64;
        beta = beta.add(&es.scale(&CycScalar::root(omega.m as u32, -v).lift(level)?));
    }
    Ok(QuasiHopfDatum { alpha: alg.one(), beta, phi, phi_inv, delta, counit, antipode, alg })
}

/// Instance specs for `list`.
pub fn instance_specs() -> Vec<&'static str> {
    vec![
        "Aq:n=2,r=1",
        "Aq:n=2,r=3",
        "Aq:n=3,r=1",
        "H32",
        "taft:N=2,r=1",
        "taft:N=3,r=1",
        "taft:N=4,r=1",
        "book:p=3,r=1,m=1",
        "book:p=3,r=1,m=2",
        "book64",
        "cyclic:N=2,s=0",
        "cyclic:N=2,s=1",
        "cyclic:N=3,s=1",
        "dual:taft:N=4,r=1",
    ]
}

fn parse_params(s: &str) -> Result<BTreeMap<String, i64>> {
    let mut out = BTreeMap::new();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| QhError::Parse(format!("expected key=value, got {part:?}")))?;
        let v: i64 = v.trim().parse().map_err(|_| QhError::Parse(format!("bad integer {v:?}")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn param(p: &BTreeMap<String, i64>, k: &str, default: Option<i64>) -> Result<i64> {
    p.get(k).copied().or(default).ok_or_else(|| QhError::Parse(format!("missing parameter {k}")))
}

fn positive(v: i64, k: &str) -> Result<usize> {
    usize::try_from(v).map_err(|_| QhError::BadParameter(format!("{k} must be nonnegative")))
}

/// Build a datum from a spec such as `Aq:n=2,r=1`, `taft:N=4,r=1` or `dual:book64`.
pub fn build_instance(spec: &str) -> Result<QuasiHopfDatum> {
    let spec = spec.trim();
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    if name == "dual" {
        return dual_datum(&build_instance(rest)?);
    }
    let p = parse_params(rest)?;
    match name {
        "Aq" => build_aq(positive(param(&p, "n", None)?, "n")?, param(&p, "r", Some(1))?),
        "H32" => build_h32(),
        "taft" => build_taft(positive(param(&p, "N", None)?, "N")?, param(&p, "r", Some(1))?),
        "book" => build_book(positive(param(&p, "p", None)?, "p")?, param(&p, "r", Some(1))?, param(&p, "m", Some(1))?),
        "book64" => build_book64(),
        "cyclic" => {
            let n = positive(param(&p, "N", None)?, "N")?;
            if n == 0 {
                return Err(QhError::BadParameter("N must be positive".into()));
            }
            build_cyclic_cocycle(n, &groupcoh::cyclic_class(n, param(&p, "s", Some(1))?))
        }
        _ => Err(QhError::Parse(format!("unknown instance {name:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quasihopf::{antipode_power, is_inner, restrict, verify_axioms, verify_iso, verify_sub_quasihopf, Subspace};

    fn assert_verifies(q: &QuasiHopfDatum) {
        let rep = verify_axioms(q);
        assert!(rep.all_pass(), "{:?}", rep.failures());
        assert!(q.alg.check_associativity().is_ok());
    }

    #[test]
    fn aq2_relations_and_axioms() {
        let q = build_aq(2, 1).unwrap();
        assert_eq!(q.dim(), 8);
        let a = q.alg.basis(4);
        let x = q.alg.basis(1);
        let z4 = CycScalar::root(4, 1);
        assert_eq!(q.alg.mul(&a, &x), q.alg.mul(&x, &a).scale(&z4.pow(2).unwrap()));
        let e = idempotents(&q.alg, &a, 2, &CycScalar::from_int(4, -1)).unwrap();
        assert_eq!(e[0].add(&e[1]), q.alg.one());
        assert_eq!(q.alg.mul(&e[0], &e[1]), q.alg.zero(1));
        assert_eq!(q.alg.mul(&e[1], &e[1]), e[1]);
        assert_verifies(&q);
        assert!(is_inner(&q.alg, &antipode_power(&q, 4), &a).unwrap());
    }

    #[test]
    fn aq3_and_antipode_squares() {
        let q = build_aq(3, 1).unwrap();
        assert_eq!(q.dim(), 27);
        assert_verifies(&q);
        let x = q.alg.basis(1);
        let z9 = CycScalar::root(9, 1);
        assert_eq!(antipode_power(&q, 2).apply(&x).unwrap(), x.scale(&z9.pow(4).unwrap()));
        assert!(is_inner(&q.alg, &antipode_power(&q, 6), &q.alg.basis(9)).unwrap());
        assert_verifies(&build_aq(2, 3).unwrap());
        let h = build_h32().unwrap();
        let i = CycScalar::root(4, 1);
        let s2 = antipode_power(&h, 2);
        assert_eq!(s2.apply(&h.alg.basis(4)).unwrap(), h.alg.basis(4).scale(&i));
        assert_eq!(s2.apply(&h.alg.basis(1)).unwrap(), h.alg.basis(1).scale(&-&i));
        assert!(is_inner(&h.alg, &antipode_power(&h, 4), &h.alg.basis(16)).unwrap());
    }

    #[test]
    fn trivial_associator_breaks_aq() {
        let mut q = build_aq(2, 1).unwrap();
        q.phi = q.alg.one_k(3);
        q.phi_inv = q.phi.clone();
        let rep = verify_axioms(&q);
        assert!(!rep.get("c_quasi_coassociativity").unwrap().pass);
    }

    #[test]
    fn h32_axioms() {
        let q = build_h32().unwrap();
        assert_eq!(q.dim(), 32);
        let (x, y) = (q.alg.basis(4), q.alg.basis(1));
        let i = CycScalar::root(4, 1);
        assert!(q.alg.mul(&x, &y).add(&q.alg.mul(&y, &x).scale(&i)).is_zero());
        assert_eq!(q.alg.mul(&q.phi, &q.phi), q.alg.one_k(3));
        assert_verifies(&q);
    }

    fn h32_sub(h: &QuasiHopfDatum, gen: usize) -> (Vec<Element>, QuasiHopfDatum) {
        let basis: Vec<Element> = (0..8)
            .map(|t| h.alg.mul(&h.alg.pow(&h.alg.basis(16), t / 4), &h.alg.pow(&h.alg.basis(gen), t % 4)))
            .collect();
        let sub = restrict(h, &basis).unwrap();
        (basis, sub)
    }

    #[test]
    fn h32_sub_algebras() {
        let h = build_h32().unwrap();
        for (gen, r) in [(4, 3), (1, 1)] {
            let (basis, sub) = h32_sub(&h, gen);
            assert!(verify_axioms(&sub).all_pass());
            let coords = Subspace::new(&h.alg, &basis).unwrap();
            let a = coords.to_coords(&h.alg.basis(16));
            let ax = coords.to_coords(&h.alg.mul(&h.alg.basis(16), &h.alg.basis(gen)));
            let x = coords.to_coords(&h.alg.basis(gen));
            let aq = build_aq(2, r).unwrap();
            let (ga, gx) = (aq.alg.basis(4), aq.alg.basis(1));
            assert!(verify_iso(&aq, &sub, &[(ga.clone(), a.clone()), (gx.clone(), ax)]).unwrap());
            assert!(!verify_iso(&aq, &sub, &[(ga, a), (gx, x)]).unwrap());
        }
        let one_x = [h.alg.one(), h.alg.basis(4)];
        assert!(!verify_sub_quasihopf(&h, &one_x));
    }

    #[test]
    fn hopf_families() {
        for n in 2..=4 {
            let t = build_taft(n, 1).unwrap();
            assert_eq!(t.dim(), n * n);
            assert_verifies(&t);
        }
        let b = build_book(3, 1, 1).unwrap();
        let (x, y) = (b.alg.basis(3), b.alg.basis(1));
        assert_eq!(b.alg.mul(&x, &y), b.alg.mul(&y, &x));
        assert_verifies(&b);
        assert_verifies(&build_book(3, 1, 2).unwrap());
        assert!(matches!(build_book(3, 1, 0), Err(QhError::BadParameter(_))));
        assert!(matches!(build_taft(4, 2), Err(QhError::NotPrimitive(_))));
    }

    #[test]
    fn cyclic_cocycles() {
        let triv = build_instance("cyclic:N=2,s=0").unwrap();
        assert!(triv.is_hopf());
        assert_verifies(&triv);
        let h2 = build_instance("cyclic:N=2,s=1").unwrap();
        assert!(!h2.is_hopf());
        assert_verifies(&h2);
        assert_verifies(&build_instance("cyclic:N=3,s=1").unwrap());
        assert_verifies(&build_instance("cyclic:N=3,s=2").unwrap());
        let bad = ExpCochain::from_fn(2, 3, 4, |t| if t == [1, 1, 1] { 3 } else { 0 });
        assert!(!bad.is_cocycle());
        assert_eq!(build_cyclic_cocycle(2, &bad), Err(QhError::NotACocycle));
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(build_instance("taft:N=3").unwrap().dim(), 9);
        assert!(matches!(build_instance("nope"), Err(QhError::Parse(_))));
        assert!(matches!(build_instance("Aq:n=x"), Err(QhError::Parse(_))));
        assert!(matches!(build_instance("Aq:n=2,r=2"), Err(QhError::NotPrimitive(_))));
    }
}

