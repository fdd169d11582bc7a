//! Cochains on cyclic groups with values in Z_M (exponents of ζ_M): differentials,
//! inflation, coboundary solving via Smith normal form, and conversion to tensors.

use serde::{Deserialize, Serialize};

use crate::algebra::{Element, StructureAlgebra};
use crate::error::{QhError, Result};
use crate::quasihopf::Subspace;
use crate::scalars::CycScalar;

/// A function Z_N^k → Z_M, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpCochain {
    #[serde(rename = "N")]
    pub n: usize,
    pub k: usize,
    #[serde(rename = "M")]
    pub m: u64,
    pub values: Vec<u64>,
}

fn tuple_of(mut idx: usize, n: usize, k: usize) -> Vec<usize> {
    let mut t = vec![0; k];
    for s in (0..k).rev() {
        t[s] = idx % n;
        idx /= n;
    }
    t
}

fn index_of(t: &[usize], n: usize) -> usize {
    t.iter().fold(0, |acc, &x| acc * n + x)
}

impl ExpCochain {
    pub fn zero(n: usize, k: usize, m: u64) -> Self {
        ExpCochain { n, k, m, values: vec![0; n.pow(k as u32)] }
    }

    pub fn from_fn(n: usize, k: usize, m: u64, f: impl Fn(&[usize]) -> i64) -> Self {
        let values = (0..n.pow(k as u32)).map(|i| f(&tuple_of(i, n, k)).rem_euclid(m as i64) as u64).collect();
        ExpCochain { n, k, m, values }
    }

    pub fn get(&self, t: &[usize]) -> u64 {
        let t: Vec<usize> = t.iter().map(|x| x % self.n).collect();
        self.values[index_of(&t, self.n)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_normalized(&self) -> bool {
        (0..self.values.len()).all(|i| {
            let t = tuple_of(i, self.n, self.k);
            !t.contains(&0) || self.values[i] == 0
        })
    }

    pub fn tuples(&self) -> impl Iterator<Item = (Vec<usize>, u64)> + '_ {
        self.values.iter().enumerate().map(move |(i, &v)| (tuple_of(i, self.n, self.k), v))
    }

    pub fn add(&self, o: &ExpCochain) -> ExpCochain {
        assert!(self.n == o.n && self.k == o.k && self.m == o.m);
        let values = self.values.iter().zip(&o.values).map(|(a, b)| (a + b) % self.m).collect();
        ExpCochain { values, ..self.clone() }
    }

    pub fn is_cocycle(&self) -> bool {
        differential(self).is_zero()
    }
}

/// (dc)(g₁,…,g_{k+1}) = c(g₂,…) + Σ(−1)^i c(…, g_i+g_{i+1}, …) + (−1)^{k+1} c(g₁,…,g_k).
pub fn differential(c: &ExpCochain) -> ExpCochain {
    let (n, k, m) = (c.n, c.k, c.m as i64);
    ExpCochain::from_fn(n, k + 1, c.m, |g| {
        let mut acc = c.get(&g[1..]) as i64;
        for i in 1..=k {
            let mut t: Vec<usize> = Vec::with_capacity(k);
            t.extend_from_slice(&g[..i - 1]);
            t.push((g[i - 1] + g[i]) % n);
            t.extend_from_slice(&g[i + 1..]);
            let v = c.get(&t) as i64;
            acc += if i % 2 == 1 { -v } else { v };
        }
        let last = c.get(&g[..k]) as i64;
        acc += if (k + 1) % 2 == 1 { -last } else { last };
        acc.rem_euclid(m)
    })
}

/// Exponent cocycle of the associator of A(q), q = ζ_{n²}^r, relative to the
/// labeling a·1_i = q^{ni}·1_i: ω(i,j,k) = −r·n·i·[j+k ≥ n] mod n².
pub fn assoc_cocycle_aq(n: usize, r: i64) -> Result<ExpCochain> {
    let nn = (n * n) as i64;
    if n < 2 || num_integer::gcd(r.rem_euclid(nn), nn) != 1 {
        return Err(QhError::NotPrimitive(format!("r = {r} is not coprime to {nn}")));
    }
    Ok(ExpCochain::from_fn(n, 3, nn as u64, |t| {
        let carry = if t[1] + t[2] >= n { 1 } else { 0 };
        -r * n as i64 * t[0] as i64 * carry
    }))
}

/// The standard 3-cocycle class s on Z_N with values in Z_N: ω(i,j,k) = s·i·[j+k ≥ N].
pub fn cyclic_class(n: usize, s: i64) -> ExpCochain {
    ExpCochain::from_fn(n, 3, n as u64, |t| if t[1] + t[2] >= n { s * t[0] as i64 } else { 0 })
}

/// Pull back along Z_{N'} → Z_N.
pub fn inflate(c: &ExpCochain, n2: usize) -> Result<ExpCochain> {
    if n2 % c.n != 0 {
        return Err(QhError::NotDivisible(c.n as u64, n2 as u64));
    }
    Ok(ExpCochain::from_fn(n2, c.k, c.m, |t| {
        let r: Vec<usize> = t.iter().map(|x| x % c.n).collect();
        c.get(&r) as i64
    }))
}

/// Diagonalize an integer matrix: returns (diagonal, U·b, V) with U·A·V diagonal.
fn diagonalize(mut a: Vec<Vec<i128>>, mut b: Vec<i128>, cols: usize) -> Option<(Vec<i128>, Vec<i128>, Vec<Vec<i128>>)> {
    let rows = a.len();
    let mut v: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| (i == j) as i128).collect()).collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero pivot in the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        b.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(p);
                    for j in t..cols {
                        a[i][j] = a[i][j].checked_sub(q.checked_mul(a[t][j])?)?;
                    }
                    b[i] = b[i].checked_sub(q.checked_mul(b[t])?)?;
                    if a[i][t] != 0 {
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(p);
                    for row in a.iter_mut().skip(t) {
                        row[j] = row[j].checked_sub(q.checked_mul(row[t])?)?;
                    }
                    for row in v.iter_mut() {
                        row[j] = row[j].checked_sub(q.checked_mul(row[t])?)?;
                    }
                    if a[t][j] != 0 {
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            if best.0 != t {
                a.swap(t, best.0);
                b.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                for row in v.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }
    Some((diag, b, v))
}

fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = egcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Normalized 2-cochain c with dc = ω, or `None` when ω is not a coboundary.
pub fn solve_coboundary(omega: &ExpCochain) -> Result<Option<ExpCochain>> {
    if omega.k != 3 {
        return Err(QhError::BadParameter("solver expects a 3-cocycle".into()));
    }
    if !omega.is_cocycle() {
        return Err(QhError::NotACocycle);
    }
    let n = omega.n;
    let m = omega.m as i128;
    let var = |a: usize, b: usize| -> Option<usize> { (a != 0 && b != 0).then(|| (a - 1) * (n - 1) + (b - 1)) };
    let nv = (n - 1) * (n - 1);
    if nv == 0 {
        return Ok(omega.is_zero().then(|| ExpCochain::zero(n, 2, omega.m)));
    }
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..n.pow(3) {
        let g = tuple_of(i, n, 3);
        let mut row = vec![0i128; nv];
        let terms = [
            (g[1], g[2], 1),
            ((g[0] + g[1]) % n, g[2], -1),
            (g[0], (g[1] + g[2]) % n, 1),
            (g[0], g[1], -1),
        ];
        for (a, b, s) in terms {
            if let Some(v) = var(a, b) {
                row[v] += s;
            }
        }
        rows.push(row);
        rhs.push(omega.get(&g) as i128);
    }
    let (diag, ub, v) = diagonalize(rows, rhs, nv).ok_or_else(|| QhError::SolverFailed("integer overflow".into()))?;
    let mut z = vec![0i128; nv];
    for (i, &b) in ub.iter().enumerate() {
        let b = b.rem_euclid(m);
        if i < diag.len() {
            let (g, x, _) = egcd(diag[i].rem_euclid(m), m);
            if b % g != 0 {
                return Ok(None);
            }
            // d·z ≡ b (mod m) with d·x ≡ g.
            z[i] = ((b / g) * x).rem_euclid(m);
        } else if b != 0 {
            return Ok(None);
        }
    }
    let mut c = ExpCochain::zero(n, 2, omega.m);
    for a in 1..n {
        for b in 1..n {
            let col = var(a, b).unwrap();
            let mut s: i128 = 0;
            for (j, zj) in z.iter().enumerate() {
                s = (s + v[col][j].rem_euclid(m) * zj) % m;
            }
            c.values[a * n + b] = s.rem_euclid(m) as u64;
        }
    }
    if differential(&c) != *omega {
        return Err(QhError::SolverFailed("back-substitution does not reproduce ω".into()));
    }
    Ok(Some(c))
}

/// Multiplicative order of an element (if finite and at most `bound`).
pub fn element_order(alg: &StructureAlgebra, g: &Element, bound: usize) -> Option<usize> {
    let one = alg.one();
    let mut p = g.clone();
    for k in 1..=bound {
        if p == one {
            return Some(k);
        }
        p = alg.mul(&p, g);
    }
    None
}

/// Idempotents e_s = (1/N) Σ_j root^{−sj} g^j with g·e_s = root^s·e_s.
pub fn grouplike_idempotents(alg: &StructureAlgebra, g: &Element, n: usize, root: &CycScalar) -> Result<Vec<Element>> {
    if element_order(alg, g, n) != Some(n) {
        return Err(QhError::OrderMismatch(format!("grouplike does not have order {n}")));
    }
    let level = alg.level;
    let root = root.lift(level)?;
    if root.pow(n as i64)? != CycScalar::one(level) {
        return Err(QhError::OrderMismatch("labeling root is not an N-th root of unity".into()));
    }
    let inv_n = CycScalar::from_ratio(level, 1, n as i64);
    let powers: Vec<Element> = (0..n).map(|j| alg.pow(g, j)).collect();
    (0..n)
        .map(|s| {
            let mut e = alg.zero(1);
            for (j, p) in powers.iter().enumerate() {
                e = e.add(&p.scale(&(&root.pow(-((s * j) as i64))? * &inv_n)));
            }
            Ok(e)
        })
        .collect()
}

/// Σ ζ_M^{c(i₁,…,i_k)} e_{i₁}⊗…⊗e_{i_k} over the idempotents of the grouplike.
pub fn cochain_to_tensor(c: &ExpCochain, alg: &StructureAlgebra, g: &Element, root: &CycScalar) -> Result<Element> {
    if alg.level % c.m as u32 != 0 {
        return Err(QhError::NotDivisible(c.m, alg.level as u64));
    }
    let idem = grouplike_idempotents(alg, g, c.n, root)?;
    let level = alg.level;
    let mut out = Element::zero(alg.dim, c.k, level);
    let mut by_value: std::collections::BTreeMap<u64, Element> = std::collections::BTreeMap::new();
    for (t, v) in c.tuples() {
        let mut x = Element::scalar(level, CycScalar::one(level));
        for &i in &t {
            x = x.tensor(&idem[i]);
        }
        let slot = by_value.entry(v).or_insert_with(|| Element::zero(alg.dim, c.k, level));
        *slot = slot.add(&x);
    }
    for (v, x) in by_value {
        let z = CycScalar::root(c.m as u32, v as i64).lift(level)?;
        out = out.add(&x.scale(&z));
    }
    Ok(out)
}

/// Inverse of [`cochain_to_tensor`]: read off exponents of an element of C[g]^{⊗k}.
pub fn tensor_to_cochain(
    x: &Element,
    alg: &StructureAlgebra,
    g: &Element,
    n: usize,
    root: &CycScalar,
    m: u64,
) -> Result<ExpCochain> {
    if element_order(alg, g, n) != Some(n) {
        return Err(QhError::OrderMismatch(format!("grouplike does not have order {n}")));
    }
    let level = alg.level;
    let powers: Vec<Element> = (0..n).map(|j| alg.pow(g, j)).collect();
    let sub = Subspace::new(alg, &powers)?;
    if !sub.contains(x) {
        return Err(QhError::PreconditionFailed("element is not supported on the grouplike".into()));
    }
    let coords = sub.to_coords(x);
    let root = root.lift(level)?;
    let rpow: Vec<CycScalar> = (0..n).map(|e| root.pow(e as i64)).collect::<Result<_>>()?;
    let zm: Vec<CycScalar> = (0..m).map(|e| CycScalar::root(m as u32, e as i64).lift(level)).collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(n.pow(x.arity as u32));
    for idx in 0..n.pow(x.arity as u32) {
        let t = tuple_of(idx, n, x.arity);
        let mut val = CycScalar::zero(level);
        for (js, c) in coords.iter_tuples() {
            let e: usize = t.iter().zip(js.iter()).map(|(a, b)| a * b).sum::<usize>() % n;
            val += &(c * &rpow[e]);
        }
        let e = zm.iter().position(|z| *z == val).ok_or_else(|| {
            QhError::PreconditionFailed(format!("coefficient {val} at {t:?} is not a power of ζ_{m}"))
        })?;
        values.push(e as u64);
    }
    Ok(ExpCochain { n, k: x.arity, m, values })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differential_basics() {
        let z = ExpCochain::zero(3, 2, 9);
        assert!(differential(&z).is_zero());
        let c = ExpCochain::from_fn(4, 1, 4, |t| (t[0] * t[0]) as i64);
        let dc = differential(&c);
        for i in 0..4 {
            for j in 0..4 {
                let want = (c.get(&[j]) as i64 - c.get(&[(i + j) % 4]) as i64 + c.get(&[i]) as i64).rem_euclid(4);
                assert_eq!(dc.get(&[i, j]) as i64, want);
            }
        }
        assert!(differential(&dc).is_zero());
    }

    #[test]
    fn aq_cocycle_values() {
        let w = assoc_cocycle_aq(2, 1).unwrap();
        assert_eq!(w.get(&[1, 1, 1]), 2);
        assert_eq!(w.get(&[1, 1, 0]), 0);
        for j in 0..2 {
            for k in 0..2 {
                assert_eq!(w.get(&[0, j, k]), 0);
            }
        }
        assert!(w.is_cocycle());
        assert!(assoc_cocycle_aq(3, 1).unwrap().is_cocycle());
        assert!(assoc_cocycle_aq(2, 2).is_err());
    }

    #[test]
    fn inflation_commutes_with_d() {
        let w = assoc_cocycle_aq(2, 1).unwrap();
        let a = differential(&inflate(&w, 4).unwrap());
        let b = inflate(&differential(&w), 4).unwrap();
        assert_eq!(a, b);
        let iw = inflate(&w, 4).unwrap();
        for j in 0..4 {
            for k in 0..4 {
                assert_eq!(iw.get(&[2, j, k]), 0);
            }
        }
        assert!(inflate(&w, 5).is_err());
    }

    #[test]
    fn solver() {
        let w = assoc_cocycle_aq(2, 1).unwrap();
        assert_eq!(solve_coboundary(&w).unwrap(), None);
        let iw = inflate(&w, 4).unwrap();
        let c = solve_coboundary(&iw).unwrap().unwrap();
        assert!(c.is_normalized());
        assert_eq!(differential(&c), iw);
        let z = ExpCochain::zero(3, 3, 9);
        assert!(solve_coboundary(&z).unwrap().unwrap().is_zero());
        let bad = ExpCochain::from_fn(2, 3, 4, |t| t[0] as i64);
        assert_eq!(solve_coboundary(&bad), Err(QhError::NotACocycle));
    }

    #[test]
    fn exhaustive_nontriviality_on_z2() {
        // Every normalized 2-cochain on Z₂ mod 4 is determined by c(1,1).
        let w = assoc_cocycle_aq(2, 1).unwrap();
        for v in 0..4 {
            let c = ExpCochain::from_fn(2, 2, 4, |t| if t == [1, 1] { v } else { 0 });
            assert_ne!(differential(&c), w);
        }
    }
}
