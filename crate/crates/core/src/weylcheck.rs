//! Rank ≤ 2 root systems, Weyl groups, the weights γ_w and their Z_p exponents, and the
//! p = 3 quantum exterior algebra invariant counts.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{QhError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RootType {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
}

pub const ALL_TYPES: [RootType; 5] = [RootType::A1, RootType::A1xA1, RootType::A2, RootType::B2, RootType::G2];

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            RootType::A1 => "A1",
            RootType::A1xA1 => "A1xA1",
            RootType::A2 => "A2",
            RootType::B2 => "B2",
            RootType::G2 => "G2",
        };
        f.write_str(s)
    }
}

impl FromStr for RootType {
    type Err = QhError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('×', "X").as_str() {
            "A1" => Ok(RootType::A1),
            "A1XA1" => Ok(RootType::A1xA1),
            "A2" => Ok(RootType::A2),
            "B2" => Ok(RootType::B2),
            "G2" => Ok(RootType::G2),
            _ => Err(QhError::Parse(format!("unknown root type {s:?}"))),
        }
    }
}

/// Simple roots are given through their Gram matrix; all vectors are in simple-root coordinates.
/// In B₂ and G₂ the second simple root is the short one.
#[derive(Clone, Debug, Serialize)]
pub struct RootSystemDatum {
    pub kind: RootType,
    pub rank: usize,
    pub gram: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    /// 2ρ, to stay integral.
    pub two_rho: Vec<i64>,
}

impl RootSystemDatum {
    pub fn new(kind: RootType) -> Self {
        let gram = match kind {
            RootType::A1 => vec![vec![2]],
            RootType::A1xA1 => vec![vec![2, 0], vec![0, 2]],
            RootType::A2 => vec![vec![2, -1], vec![-1, 2]],
            RootType::B2 => vec![vec![2, -1], vec![-1, 1]],
            RootType::G2 => vec![vec![6, -3], vec![-3, 2]],
        };
        let rank = gram.len();
        let mut d = RootSystemDatum { kind, rank, gram, positive_roots: vec![], two_rho: vec![0; rank] };
        let mut roots: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut queue: VecDeque<Vec<i64>> = (0..rank).map(|i| unit(rank, i)).collect();
        while let Some(r) = queue.pop_front() {
            if !roots.insert(r.clone()) {
                continue;
            }
            for i in 0..rank {
                let s = d.reflect(i, &r);
                if !roots.contains(&s) {
                    queue.push_back(s);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = roots.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
        pos.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        d.two_rho = (0..rank).map(|i| pos.iter().map(|r| r[i]).sum()).collect();
        d.positive_roots = pos;
        d
    }

    pub fn form(&self, u: &[i64], v: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += u[i] * self.gram[i][j] * v[j];
            }
        }
        s
    }

    pub fn reflect(&self, i: usize, v: &[i64]) -> Vec<i64> {
        let c = 2 * self.form(v, &unit(self.rank, i)) / self.gram[i][i];
        let mut out = v.to_vec();
        out[i] -= c;
        out
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.positive_roots.iter().any(|r| r == v || r.iter().zip(v).all(|(a, b)| *a == -b))
    }

    /// Reflections permute the root set.
    pub fn check_closure(&self) -> bool {
        (0..self.rank).all(|i| {
            self.positive_roots.iter().all(|r| {
                let s = self.reflect(i, r);
                self.is_root(&s)
            })
        })
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn is_negative(v: &[i64]) -> bool {
    v.iter().all(|&c| c <= 0) && v.iter().any(|&c| c < 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    /// Reduced word in the simple reflections, 1-based (1 ↦ s₁).
    pub word: Vec<usize>,
    /// Action on simple-root coordinates; column j is w(α_j).
    pub matrix: Vec<Vec<i64>>,
    pub length: usize,
}

impl WeylElement {
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let n = v.len();
        (0..n).map(|i| (0..n).map(|j| self.matrix[i][j] * v[j]).sum()).collect()
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".into()
        } else {
            self.word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join("")
        }
    }

    fn inverse_matrix(&self, rs: &RootSystemDatum) -> Vec<Vec<i64>> {
        let mut m: Vec<Vec<i64>> = (0..rs.rank).map(|i| unit(rs.rank, i)).collect();
        for &i in &self.word {
            m = m.iter().map(|c| rs.reflect(i - 1, c)).collect();
        }
        transpose(&m)
    }
}

fn transpose(cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = cols.len();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

/// All elements of W by breadth-first search on words, so words are reduced.
pub fn weyl_group(rs: &RootSystemDatum) -> Vec<WeylElement> {
    let n = rs.rank;
    let id: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut queue: VecDeque<(Vec<usize>, Vec<Vec<i64>>)> = VecDeque::from([(vec![], id)]);
    while let Some((word, cols)) = queue.pop_front() {
        if !seen.insert(cols.clone()) {
            continue;
        }
        for i in 0..n {
            // w·s_i: columns are w(s_i(α_j)).
            let ncols: Vec<Vec<i64>> = (0..n)
                .map(|j| {
                    let s = rs.reflect(i, &unit(n, j));
                    (0..n).map(|r| (0..n).map(|c| cols[c][r] * s[c]).sum()).collect()
                })
                .collect();
            if !seen.contains(&ncols) {
                let mut w = word.clone();
                w.push(i + 1);
                queue.push_back((w, ncols));
            }
        }
        let matrix = transpose(&cols);
        let el = WeylElement { word, matrix, length: 0 };
        let length = rs.positive_roots.iter().filter(|r| is_negative(&el.apply(r))).count();
        out.push(WeylElement { length, ..el });
    }
    out
}

/// γ_w = ρ − w(ρ).
pub fn gamma(rs: &RootSystemDatum, w: &WeylElement) -> Vec<i64> {
    let wr = w.apply(&rs.two_rho);
    rs.two_rho.iter().zip(&wr).map(|(a, b)| (a - b) / 2).collect()
}

/// γ_w as the sum of positive roots made negative by w⁻¹.
pub fn gamma_by_roots(rs: &RootSystemDatum, w: &WeylElement) -> Vec<i64> {
    let inv = WeylElement { matrix: w.inverse_matrix(rs), ..w.clone() };
    let mut g = vec![0; rs.rank];
    for r in rs.positive_roots.iter().filter(|r| is_negative(&inv.apply(r))) {
        for (a, b) in g.iter_mut().zip(r) {
            *a += b;
        }
    }
    g
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseParams {
    pub kind: RootType,
    pub p: u64,
    pub d: u64,
    pub b: u64,
    pub f: Option<u64>,
}

impl CaseParams {
    pub fn new(kind: RootType, p: u64, d: u64) -> Self {
        CaseParams { kind, p, d: d % p, b: (2 * p - 1 - d % p) % p, f: None }
    }
}

/// (m + n·d) mod p for γ_w = mα₁ + nα₂ (rank one: m mod p).
pub fn lambda_exponent(rs: &RootSystemDatum, w: &WeylElement, params: &CaseParams) -> u64 {
    exponent_of(&gamma(rs, w), params)
}

fn exponent_of(g: &[i64], params: &CaseParams) -> u64 {
    let p = params.p as i64;
    let m = g[0];
    let n = g.get(1).copied().unwrap_or(0);
    (m + n * params.d as i64).rem_euclid(p) as u64
}

fn congruence(kind: RootType, p: u64, d: u64) -> bool {
    let d = d as u128;
    let p128 = p as u128;
    match kind {
        RootType::A1 | RootType::A1xA1 => true,
        RootType::A2 => (p == 3 || p % 3 == 1) && (d * d + d + 1) % p128 == 0,
        RootType::B2 => p % 4 == 1 && (2 * d * d + 2 * d + 1) % p128 == 0,
        RootType::G2 => p % 3 == 1 && (3 * d * d + 3 * d + 1) % p128 == 0,
    }
}

fn side_facts(kind: RootType, p: u64, d: u64) -> bool {
    let nz = |x: u64| x % p != 0;
    match kind {
        RootType::A1 | RootType::A1xA1 => true,
        RootType::A2 => nz(d + 1),
        RootType::B2 => nz(d + 1) && nz(2 * d + 1),
        RootType::G2 => nz(d + 1) && nz(3 * d + 1),
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && primal_check::miller_rabin(p)
}

/// All nonzero d ∈ Z_p solving the case congruence (every nonzero d for A₁ and A₁×A₁).
pub fn valid_params(kind: RootType, p: u64) -> Result<Vec<u64>> {
    if !is_prime(p) {
        return Err(QhError::BadParameter(format!("{p} is not prime")));
    }
    let ds: Vec<u64> = (1..p).filter(|&d| congruence(kind, p, d)).collect();
    if let Some(d) = ds.iter().find(|&&d| !side_facts(kind, p, d)) {
        return Err(QhError::PreconditionFailed(format!("{kind} p={p} d={d} violates d+1 ≠ 0 type conditions")));
    }
    Ok(ds)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylRow {
    pub word: String,
    pub length: usize,
    pub gamma: Vec<i64>,
    pub exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub kind: RootType,
    pub p: u64,
    pub d: u64,
    pub simple_exponents: Vec<u64>,
    pub length3: Vec<WeylRow>,
    pub note: Option<String>,
    pub pass: bool,
}

/// λ_s ≠ 1 for the simple reflections and λ_w ≠ 1 for every w of length 3.
pub fn verify_vanishing(kind: RootType, p: u64, d: u64) -> Result<VanishingReport> {
    if !valid_params(kind, p)?.contains(&(d % p)) {
        return Err(QhError::BadCase(format!("d={d} is not a valid parameter for {kind}, p={p}")));
    }
    let rs = RootSystemDatum::new(kind);
    let params = CaseParams::new(kind, p, d);
    let w = weyl_group(&rs);
    let simple_exponents: Vec<u64> = w.iter().filter(|e| e.length == 1).map(|e| lambda_exponent(&rs, e, &params)).collect();
    let length3: Vec<WeylRow> = w
        .iter()
        .filter(|e| e.length == 3)
        .map(|e| WeylRow { word: e.word_string(), length: 3, gamma: gamma(&rs, e), exponent: lambda_exponent(&rs, e, &params) })
        .collect();
    let pass = simple_exponents.iter().chain(length3.iter().map(|r| &r.exponent)).all(|&x| x != 0);
    let note = length3.is_empty().then(|| "no length-3 elements".to_string());
    Ok(VanishingReport { kind, p, d: d % p, simple_exponents, length3, note, pass })
}

/// Every valid (p, d) with p < pmax.
pub fn sweep(kind: RootType, pmax: u64) -> Result<Vec<VanishingReport>> {
    let mut out = Vec::new();
    for p in (2..pmax).filter(|&p| is_prime(p)) {
        for d in valid_params(kind, p)? {
            out.push(verify_vanishing(kind, p, d)?);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum P3Case {
    A2,
    A2xA1,
    A2xA2,
}

impl FromStr for P3Case {
    type Err = QhError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace('×', "X").as_str() {
            "A2" => Ok(P3Case::A2),
            "A2XA1" => Ok(P3Case::A2xA1),
            "A2XA2" => Ok(P3Case::A2xA2),
            _ => Err(QhError::BadCase(format!("unknown p = 3 case {s:?}"))),
        }
    }
}

/// A positive root of the p = 3 system with its Z₃-weight.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EpsGen {
    pub name: String,
    pub weight: i64,
}

/// Generators ε_α of Λ_q. An A₂ root mα₁ + nα₂ (d = 1) has weight −(m + n); a root attached
/// to generators conjugated by q^f has weight −f per simple root.
pub fn eps_generators(case: P3Case, f: Option<u64>) -> Result<Vec<EpsGen>> {
    let f = match (case, f) {
        (P3Case::A2, _) => 0,
        (_, Some(f @ (1 | 2))) => f as i64,
        _ => return Err(QhError::BadCase("f must be 1 or 2".into())),
    };
    let g = |name: &str, weight: i64| EpsGen { name: name.into(), weight };
    let mut out = vec![g("α1", -1), g("α2", -1), g("α1+α2", -2)];
    match case {
        P3Case::A2 => {}
        P3Case::A2xA1 => out.push(g("β", -f)),
        P3Case::A2xA2 => out.extend([g("β1", -f), g("β2", -f), g("β1+β2", -2 * f)]),
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct P3Report {
    pub case: P3Case,
    pub f: Option<u64>,
    pub dimension: usize,
    pub basis: Vec<String>,
}

/// Square-free degree-3 monomials of Λ_q whose Z₃-weight vanishes.
pub fn p3_invariants(case: P3Case, f: Option<u64>) -> Result<P3Report> {
    let gens = eps_generators(case, f)?;
    let n = gens.len();
    let mut basis = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if (gens[i].weight + gens[j].weight + gens[k].weight).rem_euclid(3) == 0 {
                    basis.push(format!("ε[{}]ε[{}]ε[{}]", gens[i].name, gens[j].name, gens[k].name));
                }
            }
        }
    }
    Ok(P3Report { case, f: if case == P3Case::A2 { None } else { f }, dimension: basis.len(), basis })
}

/// −(α₁ + α₂) is not congruent mod 3 to any w(ρ) − ρ over the Weyl group of the case.
pub fn spectral_kill_check(case: P3Case) -> bool {
    let a2 = RootSystemDatum::new(RootType::A2);
    let mut factors: Vec<Vec<Vec<i64>>> = vec![weyl_group(&a2).iter().map(|w| gamma(&a2, w)).collect()];
    match case {
        P3Case::A2 => {}
        P3Case::A2xA1 => {
            let a1 = RootSystemDatum::new(RootType::A1);
            factors.push(weyl_group(&a1).iter().map(|w| gamma(&a1, w)).collect());
        }
        P3Case::A2xA2 => factors.push(factors[0].clone()),
    }
    let mut weights: Vec<Vec<i64>> = vec![vec![]];
    for fac in &factors {
        weights = weights
            .iter()
            .flat_map(|w| fac.iter().map(move |g| w.iter().copied().chain(g.iter().map(|c| (-c).rem_euclid(3))).collect::<Vec<i64>>()))
            .collect();
    }
    let total: usize = factors.iter().map(|f| f[0].len()).sum();
    let mut target = vec![0; total];
    target[0] = 2;
    target[1] = 2;
    !weights.contains(&target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lengths(kind: RootType) -> Vec<usize> {
        let rs = RootSystemDatum::new(kind);
        let w = weyl_group(&rs);
        let maxl = w.iter().map(|e| e.length).max().unwrap();
        (0..=maxl).map(|l| w.iter().filter(|e| e.length == l).count()).collect()
    }

    #[test]
    fn root_systems() {
        let counts = [(RootType::A1, 1), (RootType::A1xA1, 2), (RootType::A2, 3), (RootType::B2, 4), (RootType::G2, 6)];
        for (k, n) in counts {
            let rs = RootSystemDatum::new(k);
            assert_eq!(rs.positive_roots.len(), n, "{k}");
            assert!(rs.check_closure());
        }
        let b2 = RootSystemDatum::new(RootType::B2);
        assert!(b2.form(&[0, 1], &[0, 1]) < b2.form(&[1, 0], &[1, 0]));
        let g2 = RootSystemDatum::new(RootType::G2);
        assert!(g2.positive_roots.contains(&vec![1, 3]) && g2.positive_roots.contains(&vec![2, 3]));
    }

    #[test]
    fn group_orders_and_poincare() {
        assert_eq!(lengths(RootType::A1), vec![1, 1]);
        assert_eq!(lengths(RootType::A1xA1), vec![1, 2, 1]);
        assert_eq!(lengths(RootType::A2), vec![1, 2, 2, 1]);
        assert_eq!(lengths(RootType::B2), vec![1, 2, 2, 2, 1]);
        assert_eq!(lengths(RootType::G2), vec![1, 2, 2, 2, 2, 2, 1]);
    }

    #[test]
    fn gamma_tables() {
        let table = |k| {
            let rs = RootSystemDatum::new(k);
            let mut g: Vec<Vec<i64>> = weyl_group(&rs).iter().filter(|w| w.length == 3).map(|w| gamma(&rs, w)).collect();
            g.sort();
            g
        };
        assert_eq!(table(RootType::A2), vec![vec![2, 2]]);
        assert_eq!(table(RootType::B2), vec![vec![2, 4], vec![3, 3]]);
        assert_eq!(table(RootType::G2), vec![vec![2, 6], vec![4, 4]]);
        assert!(table(RootType::A1xA1).is_empty());
        for k in ALL_TYPES {
            let rs = RootSystemDatum::new(k);
            for w in weyl_group(&rs) {
                assert_eq!(gamma(&rs, &w), gamma_by_roots(&rs, &w), "{k} {}", w.word_string());
            }
        }
    }

    #[test]
    fn exponents() {
        let rs = RootSystemDatum::new(RootType::A2);
        let w3 = weyl_group(&rs).into_iter().find(|w| w.length == 3).unwrap();
        assert_eq!(lambda_exponent(&rs, &w3, &CaseParams::new(RootType::A2, 3, 1)), 1);
        let b2 = RootSystemDatum::new(RootType::B2);
        for w in weyl_group(&b2).iter().filter(|w| w.length == 3) {
            assert_eq!(lambda_exponent(&b2, w, &CaseParams::new(RootType::B2, 5, 1)), 1);
        }
        let s1 = weyl_group(&b2).into_iter().find(|w| w.word == vec![1]).unwrap();
        assert_eq!(lambda_exponent(&b2, &s1, &CaseParams::new(RootType::B2, 13, 7)), 1);
    }

    #[test]
    fn params() {
        assert_eq!(valid_params(RootType::A2, 3).unwrap(), vec![1]);
        assert!(valid_params(RootType::B2, 5).unwrap().contains(&1));
        assert!(valid_params(RootType::G2, 7).unwrap().contains(&1));
        assert!(valid_params(RootType::B2, 7).unwrap().is_empty());
        assert!(valid_params(RootType::A2, 8).is_err());
        assert_eq!(CaseParams::new(RootType::A2, 7, 2).b, 4);
    }

    #[test]
    fn vanishing() {
        let r = verify_vanishing(RootType::A2, 7, 2).unwrap();
        assert!(r.pass);
        assert_eq!(r.length3[0].exponent, 6);
        assert!(verify_vanishing(RootType::B2, 5, 1).unwrap().pass);
        let r = verify_vanishing(RootType::A1xA1, 5, 2).unwrap();
        assert!(r.pass && r.length3.is_empty());
        assert!(matches!(verify_vanishing(RootType::A2, 7, 3), Err(QhError::BadCase(_))));
        for k in ALL_TYPES {
            assert!(sweep(k, 200).unwrap().iter().all(|r| r.pass), "{k}");
        }
    }

    #[test]
    fn p3_counts() {
        assert_eq!(p3_invariants(P3Case::A2, None).unwrap().dimension, 0);
        let r = p3_invariants(P3Case::A2xA2, Some(1)).unwrap();
        assert_eq!(r.dimension, 4);
        let want = ["ε[α1]ε[α2]ε[β1]", "ε[α1]ε[α2]ε[β2]", "ε[α1]ε[β1]ε[β2]", "ε[α2]ε[β1]ε[β2]"];
        assert_eq!(r.basis, want);
        assert!(p3_invariants(P3Case::A2xA1, Some(3)).is_err());
        for c in [P3Case::A2, P3Case::A2xA1, P3Case::A2xA2] {
            assert!(spectral_kill_check(c), "{c:?}");
        }
    }
}
