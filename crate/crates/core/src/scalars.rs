//! Exact arithmetic in cyclotomic fields Q(ζ_N).
//!
//! A [`CycScalar`] stores an integer polynomial in ζ_N of degree below φ(N)
//! together with a positive common denominator, reduced modulo the N-th
//! cyclotomic polynomial. Small values live in machine words; anything that
//! overflows transparently moves to big integers.

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::rc::Rc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{QhError, Result};

type Coeffs = SmallVec<[i64; 8]>;

thread_local! {
    static CYCLO: RefCell<HashMap<u32, Rc<[i64]>>> = RefCell::new(HashMap::new());
}

/// Coefficients of Φ_N, lowest degree first (monic, length φ(N) + 1).
pub fn cyclotomic_poly(n: u32) -> Rc<[i64]> {
    assert!(n >= 1, "cyclotomic level must be positive");
    if let Some(p) = CYCLO.with(|c| c.borrow().get(&n).cloned()) {
        return p;
    }
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            let q = cyclotomic_poly(d);
            p = exact_div_monic(&p, &q);
        }
    }
    let rc: Rc<[i64]> = p.into();
    CYCLO.with(|c| c.borrow_mut().insert(n, rc.clone()));
    rc
}

fn exact_div_monic(p: &[i64], q: &[i64]) -> Vec<i64> {
    let dq = q.len() - 1;
    let mut r = p.to_vec();
    let mut out = vec![0i64; p.len() - dq];
    for k in (0..out.len()).rev() {
        let c = r[k + dq];
        out[k] = c;
        if c != 0 {
            for (t, &qt) in q.iter().enumerate() {
                r[k + t] -= c * qt;
            }
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    out
}

/// Euler totient of `n` (degree of Φ_n).
pub fn phi_degree(n: u32) -> usize {
    cyclotomic_poly(n).len() - 1
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small { num: Coeffs, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An element of Q(ζ_N) in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycScalar {
    level: u32,
    repr: Repr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
    Inv,
}

/// ζ_N^k in canonical form.
pub fn make_root(n: u32, k: i64) -> CycScalar {
    CycScalar::root(n, k)
}

/// Checked field operation on two scalars of the same level.
pub fn arith(op: ArithOp, a: &CycScalar, b: Option<&CycScalar>) -> Result<CycScalar> {
    let need = |b: Option<&CycScalar>| -> Result<CycScalar> {
        let b = b.ok_or_else(|| QhError::BadParameter("binary op needs two operands".into()))?;
        if a.level != b.level {
            return Err(QhError::LevelMismatch(a.level, b.level));
        }
        Ok(b.clone())
    };
    match op {
        ArithOp::Add => Ok(a + &need(b)?),
        ArithOp::Mul => Ok(a * &need(b)?),
        ArithOp::Neg => Ok(-a),
        ArithOp::Inv => a.inv(),
    }
}

/// Image of `a` under ζ_N ↦ ζ_M^{M/N}.
pub fn lift_level(a: &CycScalar, m: u32) -> Result<CycScalar> {
    a.lift(m)
}

fn fits(v: i128) -> bool {
    v >= -(i64::MAX as i128) && v <= i64::MAX as i128
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl CycScalar {
    pub fn zero(level: u32) -> Self {
        let d = phi_degree(level);
        CycScalar { level, repr: Repr::Small { num: SmallVec::from_elem(0, d), den: 1 } }
    }

    pub fn one(level: u32) -> Self {
        Self::from_int(level, 1)
    }

    pub fn from_int(level: u32, v: i64) -> Self {
        Self::from_ratio(level, v, 1)
    }

    pub fn from_ratio(level: u32, num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let d = phi_degree(level);
        let mut c = vec![0i128; d];
        c[0] = num as i128;
        Self::from_i128(level, c, den as i128).expect("small rational")
    }

    pub fn from_bigratio(level: u32, num: BigInt, den: BigInt) -> Self {
        let d = phi_degree(level);
        let mut c = vec![BigInt::zero(); d];
        c[0] = num;
        Self::from_big(level, c, den)
    }

    /// Build from rational coefficients of 1, ζ, ζ², … (any length; reduced mod Φ_N).
    pub fn from_rationals(level: u32, coeffs: &[BigRational]) -> Self {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let num: Vec<BigInt> = coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        let reduced = reduce_big(num, &cyclotomic_poly(level));
        Self::from_big(level, reduced, den)
    }

    pub fn root(level: u32, k: i64) -> Self {
        let n = level as i64;
        let k = k.rem_euclid(n) as usize;
        let phi = cyclotomic_poly(level);
        let d = phi.len() - 1;
        let mut p = vec![0i128; (k + 1).max(d)];
        p[k] = 1;
        let p = reduce_i128(p, &phi).expect("root reduction fits");
        Self::from_i128(level, p, 1).expect("root fits")
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num.iter().all(|x| x.is_zero()),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small { num, den } => *den == 1 && num[0] == 1 && num[1..].iter().all(|&x| x == 0),
            Repr::Big { .. } => false,
        }
    }

    /// True when the value lies in Q.
    pub fn is_rational(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&x| x == 0),
            Repr::Big { num, .. } => num[1..].iter().all(|x| x.is_zero()),
        }
    }

    fn from_i128(level: u32, mut num: Vec<i128>, mut den: i128) -> Option<Self> {
        if den < 0 {
            den = -den;
            for x in num.iter_mut() {
                *x = -*x;
            }
        }
        let mut g = den;
        for &x in &num {
            if g == 1 {
                break;
            }
            g = gcd_i128(g, x);
        }
        if num.iter().all(|&x| x == 0) {
            den = 1;
        } else if g > 1 {
            den /= g;
            for x in num.iter_mut() {
                *x /= g;
            }
        }
        if fits(den) && num.iter().all(|&x| fits(x)) {
            Some(CycScalar {
                level,
                repr: Repr::Small { num: num.iter().map(|&x| x as i64).collect(), den: den as i64 },
            })
        } else {
            Some(Self::from_big(level, num.into_iter().map(BigInt::from).collect(), BigInt::from(den)))
        }
    }

    fn from_big(level: u32, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -&*x;
            }
        }
        if num.iter().all(|x| x.is_zero()) {
            return Self::zero(level);
        }
        let mut g = den.clone();
        for x in &num {
            if g.is_one() {
                break;
            }
            g = g.gcd(x);
        }
        if !g.is_one() {
            den = &den / &g;
            for x in num.iter_mut() {
                *x = &*x / &g;
            }
        }
        let small = den.to_i64().filter(|d| *d != i64::MIN).and_then(|d| {
            let mut c = Coeffs::with_capacity(num.len());
            for x in &num {
                c.push(x.to_i64().filter(|v| *v != i64::MIN)?);
            }
            Some((c, d))
        });
        match small {
            Some((num, den)) => CycScalar { level, repr: Repr::Small { num, den } },
            None => CycScalar { level, repr: Repr::Big { num, den } },
        }
    }

    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match &self.repr {
            Repr::Small { num, den } => (num.iter().map(|&x| BigInt::from(x)).collect(), BigInt::from(*den)),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }

    fn check_level(&self, other: &Self) {
        assert_eq!(self.level, other.level, "cyclotomic level mismatch");
    }

    fn add_impl(&self, other: &Self, sign: i128) -> Self {
        self.check_level(other);
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &other.repr) {
            let (da, db) = (*da as i128, *db as i128);
            let out: Vec<i128> = if da == db {
                a.iter().zip(b.iter()).map(|(&x, &y)| x as i128 + sign * y as i128).collect()
            } else {
                a.iter().zip(b.iter()).map(|(&x, &y)| x as i128 * db + sign * y as i128 * da).collect()
            };
            let den = if da == db { da } else { da * db };
            return Self::from_i128(self.level, out, den).unwrap();
        }
        let (a, da) = self.to_big();
        let (b, db) = other.to_big();
        let s = BigInt::from(sign as i64);
        let out = a.iter().zip(b.iter()).map(|(x, y)| x * &db + &s * y * &da).collect();
        Self::from_big(self.level, out, da * db)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        self.check_level(other);
        if let (Repr::Small { num: a, den: da }, Repr::Small { num: b, den: db }) = (&self.repr, &other.repr) {
            if let Some(r) = mul_small(self.level, a, *da, b, *db) {
                return r;
            }
        }
        let (a, da) = self.to_big();
        let (b, db) = other.to_big();
        let d = a.len();
        let mut prod = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let red = reduce_big(prod, &cyclotomic_poly(self.level));
        Self::from_big(self.level, red, da * db)
    }

    /// Multiplicative inverse, via extended Euclid against Φ_N.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(QhError::DivisionByZero);
        }
        let (num, den) = self.to_big();
        if self.is_rational() {
            let mut c = vec![BigInt::zero(); num.len()];
            c[0] = den;
            return Ok(Self::from_big(self.level, c, num[0].clone()));
        }
        let phi = cyclotomic_poly(self.level);
        let to_q = |v: &[BigInt]| -> Vec<BigRational> { v.iter().map(|x| BigRational::from_integer(x.clone())).collect() };
        let mut r0 = to_q(&phi.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let mut r1 = trim(to_q(&num));
        let mut s0: Vec<BigRational> = vec![];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
        }
        // r0 is a nonzero constant since Φ_N is irreducible.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].clone();
        let scale = BigRational::from_integer(den) / c;
        let coeffs: Vec<BigRational> = s0.iter().map(|x| x * &scale).collect();
        Ok(Self::from_rationals(self.level, &coeffs))
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(self.level);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn lift(&self, m: u32) -> Result<Self> {
        if m % self.level != 0 {
            return Err(QhError::NotDivisible(self.level as u64, m as u64));
        }
        if m == self.level {
            return Ok(self.clone());
        }
        let step = (m / self.level) as usize;
        let phi = cyclotomic_poly(m);
        let (num, den) = self.to_big();
        let mut p = vec![BigInt::zero(); (num.len() - 1) * step + 1];
        for (i, c) in num.into_iter().enumerate() {
            p[i * step] = c;
        }
        if p.len() < phi.len() - 1 {
            p.resize(phi.len() - 1, BigInt::zero());
        }
        Ok(Self::from_big(m, reduce_big(p, &phi), den))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self * &Self::from_int(self.level, k)
    }

    /// Rational coefficients of 1, ζ, …, ζ^{φ(N)-1}, each in lowest terms.
    pub fn coeffs(&self) -> Vec<BigRational> {
        let (num, den) = self.to_big();
        num.into_iter().map(|x| BigRational::new(x, den.clone())).collect()
    }

    /// Rational value when the scalar lies in Q.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coeffs().swap_remove(0))
        } else {
            None
        }
    }

    /// Image in F_p under ζ_N ↦ `zeta_powers[1]`; `zeta_powers[i]` must hold w^i.
    /// Returns `None` when the denominator vanishes mod p.
    pub fn reduce_mod_p(&self, p: u64, zeta_powers: &[u64]) -> Option<u64> {
        let pm = p as u128;
        match &self.repr {
            Repr::Small { num, den } => {
                let mut acc: u128 = 0;
                for (i, &c) in num.iter().enumerate() {
                    if c != 0 {
                        let cm = (c as i128).rem_euclid(p as i128) as u128;
                        acc = (acc + cm * zeta_powers[i] as u128) % pm;
                    }
                }
                let d = (*den as u128) % pm;
                if d == 0 {
                    return None;
                }
                Some((acc * modinv(d as u64, p) as u128 % pm) as u64)
            }
            Repr::Big { num, den } => {
                let bp = BigInt::from(p);
                let mut acc: u128 = 0;
                for (i, c) in num.iter().enumerate() {
                    let cm = c.mod_floor(&bp).to_u64().unwrap() as u128;
                    acc = (acc + cm * zeta_powers[i] as u128) % pm;
                }
                let d = den.mod_floor(&bp).to_u64().unwrap();
                if d == 0 {
                    return None;
                }
                Some((acc * modinv(d, p) as u128 % pm) as u64)
            }
        }
    }
}

fn mul_small(level: u32, a: &[i64], da: i64, b: &[i64], db: i64) -> Option<CycScalar> {
    let d = a.len();
    let den = da as i128 * db as i128;
    let a_rat = a[1..].iter().all(|&x| x == 0);
    let b_rat = b[1..].iter().all(|&x| x == 0);
    if a_rat || b_rat {
        let (s, v) = if a_rat { (a[0] as i128, b) } else { (b[0] as i128, a) };
        let out: Vec<i128> = v.iter().map(|&x| x as i128 * s).collect();
        return CycScalar::from_i128(level, out, den);
    }
    let mut prod = vec![0i128; 2 * d - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if y != 0 {
                prod[i + j] = prod[i + j].checked_add(x as i128 * y as i128)?;
            }
        }
    }
    let red = reduce_i128(prod, &cyclotomic_poly(level))?;
    CycScalar::from_i128(level, red, den)
}

fn reduce_i128(mut p: Vec<i128>, phi: &[i64]) -> Option<Vec<i128>> {
    let d = phi.len() - 1;
    for k in (d..p.len()).rev() {
        let c = p[k];
        if c != 0 {
            for (t, &f) in phi[..d].iter().enumerate() {
                if f != 0 {
                    let v = c.checked_mul(f as i128)?;
                    p[k - d + t] = p[k - d + t].checked_sub(v)?;
                }
            }
            p[k] = 0;
        }
    }
    p.truncate(d);
    p.resize(d, 0);
    Some(p)
}

fn reduce_big(mut p: Vec<BigInt>, phi: &[i64]) -> Vec<BigInt> {
    let d = phi.len() - 1;
    for k in (d..p.len()).rev() {
        if !p[k].is_zero() {
            let c = std::mem::take(&mut p[k]);
            for (t, &f) in phi[..d].iter().enumerate() {
                if f != 0 {
                    p[k - d + t] -= &c * f;
                }
            }
        }
    }
    p.truncate(d);
    p.resize(d, BigInt::zero());
    p
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let z = BigRational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (vec![], r);
    }
    let mut q = vec![BigRational::zero(); r.len() - db];
    let lead = b[db].clone();
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = &r[r.len() - 1] / &lead;
        for (t, bt) in b.iter().enumerate() {
            r[k + t] -= &c * bt;
        }
        q[k] = c;
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

/// Inverse of `a` modulo prime `p`.
pub fn modinv(a: u64, p: u64) -> u64 {
    modpow(a % p, p - 2, p)
}

pub fn modpow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % p as u128) as u64;
        }
        b = (b as u128 * b as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

impl Add<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: &CycScalar) -> CycScalar {
        self.add_impl(rhs, 1)
    }
}

impl Sub<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: &CycScalar) -> CycScalar {
        self.add_impl(rhs, -1)
    }
}

impl Mul<&CycScalar> for &CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: &CycScalar) -> CycScalar {
        self.mul_impl(rhs)
    }
}

impl Neg for &CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        let repr = match &self.repr {
            Repr::Small { num, den } => Repr::Small { num: num.iter().map(|&x| -x).collect(), den: *den },
            Repr::Big { num, den } => Repr::Big { num: num.iter().map(|x| -x).collect(), den: den.clone() },
        };
        CycScalar { level: self.level, repr }
    }
}

impl Neg for CycScalar {
    type Output = CycScalar;
    fn neg(self) -> CycScalar {
        -&self
    }
}

impl Add for CycScalar {
    type Output = CycScalar;
    fn add(self, rhs: CycScalar) -> CycScalar {
        &self + &rhs
    }
}

impl Sub for CycScalar {
    type Output = CycScalar;
    fn sub(self, rhs: CycScalar) -> CycScalar {
        &self - &rhs
    }
}

impl Mul for CycScalar {
    type Output = CycScalar;
    fn mul(self, rhs: CycScalar) -> CycScalar {
        &self * &rhs
    }
}

impl AddAssign<&CycScalar> for CycScalar {
    fn add_assign(&mut self, rhs: &CycScalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycScalar> for CycScalar {
    fn sub_assign(&mut self, rhs: &CycScalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycScalar> for CycScalar {
    fn mul_assign(&mut self, rhs: &CycScalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            match (i, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "z{}", pow_suffix(i))?,
                _ => write!(f, "{a}*z{}", pow_suffix(i))?,
            }
        }
        Ok(())
    }
}

fn pow_suffix(i: usize) -> String {
    if i == 1 {
        String::new()
    } else {
        format!("^{i}")
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]@{}", self, self.level)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum IntRepr {
    Num(i64),
    Str(String),
}

fn int_out(x: &BigInt) -> IntRepr {
    match x.to_i64() {
        Some(v) => IntRepr::Num(v),
        None => IntRepr::Str(x.to_string()),
    }
}

fn int_in(x: IntRepr) -> std::result::Result<BigInt, String> {
    match x {
        IntRepr::Num(v) => Ok(BigInt::from(v)),
        IntRepr::Str(s) => s.parse().map_err(|_| format!("bad integer {s:?}")),
    }
}

#[derive(Serialize, Deserialize)]
struct ScalarJson {
    level: u32,
    coeffs: Vec<(IntRepr, IntRepr)>,
}

impl Serialize for CycScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let coeffs = self.coeffs().iter().map(|c| (int_out(c.numer()), int_out(c.denom()))).collect();
        ScalarJson { level: self.level, coeffs }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = ScalarJson::deserialize(d)?;
        if j.level == 0 {
            return Err(D::Error::custom("level must be positive"));
        }
        let mut coeffs = Vec::with_capacity(j.coeffs.len());
        for (n, m) in j.coeffs {
            let n = int_in(n).map_err(D::Error::custom)?;
            let m = int_in(m).map_err(D::Error::custom)?;
            if m.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            coeffs.push(BigRational::new(n, m));
        }
        if coeffs.is_empty() {
            coeffs.push(BigRational::zero());
        }
        Ok(CycScalar::from_rationals(j.level, &coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u32, k: i64) -> CycScalar {
        make_root(n, k)
    }

    #[test]
    fn cyclotomic_polys() {
        assert_eq!(&*cyclotomic_poly(1), &[-1, 1]);
        assert_eq!(&*cyclotomic_poly(4), &[1, 0, 1]);
        assert_eq!(&*cyclotomic_poly(9), &[1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(&*cyclotomic_poly(12), &[1, 0, -1, 0, 1]);
        assert_eq!(phi_degree(16), 8);
    }

    #[test]
    fn roots() {
        assert!(z(1, 0).is_one());
        assert_eq!(z(4, 2), CycScalar::from_int(4, -1));
        assert_eq!(&z(3, 1) + &z(3, 2), CycScalar::from_int(3, -1));
        assert_eq!(&z(4, 1) * &z(4, 1), CycScalar::from_int(4, -1));
        assert!((&z(9, 1) * &z(9, 8)).is_one());
        assert_eq!(z(6, -1), z(6, 5));
    }

    #[test]
    fn inverse() {
        let a = &CycScalar::one(4) - &z(4, 1);
        let want = &(&CycScalar::one(4) + &z(4, 1)) * &CycScalar::from_ratio(4, 1, 2);
        assert_eq!(a.inv().unwrap(), want);
        assert_eq!(CycScalar::zero(5).inv(), Err(QhError::DivisionByZero));
        let b = &(&z(9, 1) + &z(9, 4).mul_int(3)) - &CycScalar::from_ratio(9, 2, 7);
        assert!((&b * &b.inv().unwrap()).is_one());
    }

    #[test]
    fn lifting() {
        assert_eq!(CycScalar::from_int(2, -1).lift(4).unwrap(), z(4, 2));
        assert!(CycScalar::one(1).lift(12).unwrap().is_one());
        assert_eq!(z(3, 1).lift(9).unwrap(), z(9, 3));
        assert_eq!(z(3, 1).lift(4), Err(QhError::NotDivisible(3, 4)));
    }

    #[test]
    fn arith_errors() {
        assert!(matches!(arith(ArithOp::Add, &z(3, 1), Some(&z(4, 1))), Err(QhError::LevelMismatch(3, 4))));
        assert_eq!(arith(ArithOp::Neg, &z(4, 1), None).unwrap(), z(4, 3));
    }

    #[test]
    fn big_fallback() {
        let mut x = CycScalar::from_ratio(7, 3, 2);
        x = &x + &z(7, 2);
        let mut acc = CycScalar::one(7);
        for _ in 0..60 {
            acc = &acc * &x;
        }
        let back = acc.pow(-1).unwrap();
        assert!((&back * &acc).is_one());
        let y = x.pow(60).unwrap();
        assert_eq!(y, acc);
    }

    #[test]
    fn json_roundtrip() {
        let a = &CycScalar::from_ratio(9, -3, 4) + &z(9, 5);
        let s = serde_json::to_string(&a).unwrap();
        let b: CycScalar = serde_json::from_str(&s).unwrap();
        assert_eq!(a, b);
        let c: CycScalar = serde_json::from_str(r#"{"level":4,"coeffs":[[0,1],[1,1],[0,1]]}"#).unwrap();
        assert_eq!(c, z(4, 3).neg());
    }

    #[test]
    fn mod_p_reduction() {
        // 13 ≡ 1 mod 4; 5 has order 4 mod 13.
        let p = 13;
        let w = 5u64;
        let pw = [1, w];
        assert_eq!(z(4, 1).reduce_mod_p(p, &pw), Some(5));
        assert_eq!(z(4, 2).reduce_mod_p(p, &pw), Some(12));
        assert_eq!(CycScalar::from_ratio(4, 1, 2).reduce_mod_p(p, &pw), Some(7));
    }
}
