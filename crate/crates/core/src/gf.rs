//! Finite fields `F_{p^k}` presented as `F_p[x]/(modulus)`.
//!
//! The modulus is always the least monic irreducible polynomial of degree
//! `k`, where polynomials (and field elements) are ordered by their integer
//! encoding `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`. Fields are interned, so
//! two calls to [`make_field`] with the same `(p, k)` share one [`Field`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported characteristic; products of two residues must fit in a `u64`.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;

/// A field element: coefficients of a polynomial in the field generator,
/// ascending degree, each in `[0, p)`.
///
/// Elements carry no reference to their field; all arithmetic goes through
/// the owning [`Field`]. The derived ordering is the integer-encoding order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Fe(Vec<u64>);

impl Fe {
    pub fn coeffs(&self) -> &[u64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            write!(f, "{}", self.0[0])
        } else {
            write!(f, "{:?}", self.0)
        }
    }
}

/// Serializable description of a field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u64,
    pub k: usize,
    /// Monic modulus, ascending coefficients (length `k + 1`).
    pub modulus: Vec<u64>,
}

struct FieldInner {
    spec: FieldSpec,
    order: u128,
    generator: OnceLock<Fe>,
}

/// Shared handle to an explicit finite field.
#[derive(Clone)]
pub struct Field(Arc<FieldInner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.p(), self.k())
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_char(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) || p >= MAX_CHARACTERISTIC {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

fn registry() -> &'static Mutex<HashMap<(u64, usize), Field>> {
    static FIELDS: OnceLock<Mutex<HashMap<(u64, usize), Field>>> = OnceLock::new();
    FIELDS.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The canonical field `F_{p^k}`.
pub fn make_field(p: u64, k: usize) -> Result<Field> {
    check_char(p)?;
    if k == 0 {
        return Err(Error::ZeroDegree);
    }
    let order = checked_pow(p, k).ok_or(Error::FieldTooLarge { p, k })?;
    if order >= 1 << 126 {
        return Err(Error::FieldTooLarge { p, k });
    }
    if let Some(f) = registry().lock().unwrap().get(&(p, k)) {
        return Ok(f.clone());
    }
    let modulus = least_irreducible(p, k);
    let field = Field(Arc::new(FieldInner {
        spec: FieldSpec { p, k, modulus },
        order,
        generator: OnceLock::new(),
    }));
    let mut reg = registry().lock().unwrap();
    Ok(reg.entry((p, k)).or_insert(field).clone())
}

/// Rebuilds a field from its serialized description, rejecting anything
/// that is not the canonical choice.
pub fn field_from_spec(spec: &FieldSpec) -> Result<Field> {
    let f = make_field(spec.p, spec.k)?;
    if f.spec() != spec {
        return Err(Error::Parse(format!(
            "modulus {:?} is not the canonical modulus for GF({}^{})",
            spec.modulus, spec.p, spec.k
        )));
    }
    Ok(f)
}

fn checked_pow(p: u64, k: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}

/// Least `D >= 1` with `p^D = 1 (mod n)`.
pub fn ord_mod(p: u64, n: u64) -> Result<u64> {
    if n == 0 || num_integer::gcd(p, n) != 1 {
        return Err(Error::NotCoprime { p, n });
    }
    if n == 1 {
        return Ok(1);
    }
    let base = p % n;
    let mut acc = base;
    let mut d = 1;
    while acc != 1 {
        acc = ((acc as u128 * base as u128) % n as u128) as u64;
        d += 1;
    }
    Ok(d)
}

// ---------------------------------------------------------------------------
// Irreducibility over F_p, on raw coefficient vectors. Only used to pick the
// modulus, so it cannot rely on `Field`.

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn raw_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y % p) % p;
        }
    }
    raw_rem(&mut prod, m, p);
    prod
}

// `m` is monic.
fn raw_rem(a: &mut Vec<u64>, m: &[u64], p: u64) {
    trim(a);
    let dm = m.len() - 1;
    while a.len() > dm {
        let top = a.len() - 1;
        let c = a[top];
        if c != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let idx = top - dm + i;
                a[idx] = (a[idx] + (p - c) * mc % p) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

fn raw_gcd_is_one(a: &[u64], b: &[u64], p: u64) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let lead = *b.last().unwrap();
        let inv = mod_pow(lead, p - 2, p);
        let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        raw_rem(&mut a, &monic, p);
        std::mem::swap(&mut a, &mut b);
    }
    a.len() == 1
}

fn raw_x_pow_p_iter(m: &[u64], p: u64, times: usize) -> Vec<u64> {
    // x^(p^times) mod m
    let mut h = vec![0, 1];
    raw_rem(&mut h, m, p);
    for _ in 0..times {
        let mut acc = vec![1u64];
        let mut base = h.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = raw_mulmod(&acc, &base, m, p);
            }
            base = raw_mulmod(&base, &base, m, p);
            e >>= 1;
        }
        h = acc;
    }
    h
}

/// Rabin's irreducibility test for a monic `m` of degree `k` over `F_p`.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    if m[0] == 0 {
        return false;
    }
    let mut x_mod = vec![0, 1];
    raw_rem(&mut x_mod, m, p);
    let full = raw_x_pow_p_iter(m, p, k);
    if full != x_mod {
        return false;
    }
    for r in prime_divisors(k as u128) {
        let h = raw_x_pow_p_iter(m, p, k / r as usize);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if !raw_gcd_is_one(m, &diff, p) {
            return false;
        }
    }
    true
}

fn least_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    let mut c = vec![0u64; k];
    loop {
        let mut m = c.clone();
        m.push(1);
        if is_irreducible(&m, p) {
            return m;
        }
        // increment in the integer encoding (c_0 least significant)
        for digit in c.iter_mut() {
            *digit += 1;
            if *digit < p {
                break;
            }
            *digit = 0;
        }
    }
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Distinct prime divisors by trial division.
pub(crate) fn prime_divisors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(mut n: usize) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Distinct prime factors of `p^k - 1`, found cyclotomic factor by
/// cyclotomic factor: every prime dividing `Phi_d(p)` either divides `d` or
/// is `1 mod d`.
fn prime_factors_of_group_order(p: u64, k: usize) -> Vec<u128> {
    let mut primes: Vec<u128> = Vec::new();
    for d in divisors(k) {
        let mut num: u128 = 1;
        let mut den: u128 = 1;
        for e in divisors(d) {
            let term = checked_pow(p, e).unwrap() - 1;
            match mobius(d / e) {
                1 => num *= term,
                -1 => den *= term,
                _ => {}
            }
        }
        let mut phi = num / den;
        for r in prime_divisors(d as u128) {
            while phi.is_multiple_of(r) {
                primes.push(r);
                phi /= r;
            }
        }
        if phi.is_multiple_of(2) {
            primes.push(2);
            while phi.is_multiple_of(2) {
                phi /= 2;
            }
        }
        let step = d as u128;
        let mut c = step + 1;
        while c * c <= phi {
            if c > 2 && phi.is_multiple_of(c) {
                primes.push(c);
                while phi.is_multiple_of(c) {
                    phi /= c;
                }
            }
            c += step;
        }
        if phi > 1 {
            primes.push(phi);
        }
    }
    primes.sort_unstable();
    primes.dedup();
    primes
}

impl Field {
    pub fn p(&self) -> u64 {
        self.0.spec.p
    }

    pub fn k(&self) -> usize {
        self.0.spec.k
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.spec.modulus
    }

    /// `p^k`.
    pub fn order(&self) -> u128 {
        self.0.order
    }

    pub fn zero(&self) -> Fe {
        Fe(vec![0; self.k()])
    }

    pub fn one(&self) -> Fe {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> Fe {
        let mut c = vec![0; self.k()];
        c[0] = v % self.p();
        Fe(c)
    }

    pub fn from_int(&self, v: i64) -> Fe {
        self.from_u64(v.rem_euclid(self.p() as i64) as u64)
    }

    /// The field generator `x` (the class of the indeterminate).
    pub fn gen(&self) -> Fe {
        if self.k() == 1 {
            // x = -modulus[0] in the prime field
            let m0 = self.modulus()[0];
            return self.from_u64((self.p() - m0) % self.p());
        }
        let mut c = vec![0; self.k()];
        c[1] = 1;
        Fe(c)
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<Fe> {
        if coeffs.len() > self.k() {
            let mut v: Vec<u64> = coeffs.iter().map(|c| c % self.p()).collect();
            raw_rem(&mut v, self.modulus(), self.p());
            v.resize(self.k(), 0);
            return Ok(Fe(v));
        }
        let mut v: Vec<u64> = coeffs.iter().map(|c| c % self.p()).collect();
        v.resize(self.k(), 0);
        Ok(Fe(v))
    }

    /// Strict variant used by deserialization: exact length, all digits `< p`.
    pub fn element_from_digits(&self, digits: &[u64]) -> Result<Fe> {
        if digits.len() != self.k() || digits.iter().any(|&c| c >= self.p()) {
            return Err(Error::Parse(format!(
                "{digits:?} is not an element of GF({}^{})",
                self.p(),
                self.k()
            )));
        }
        Ok(Fe(digits.to_vec()))
    }

    /// Value in `[0, p)` if `x` lies in the prime field.
    pub fn as_prime(&self, x: &Fe) -> Option<u64> {
        if x.0[1..].iter().all(|&c| c == 0) {
            Some(x.0[0])
        } else {
            None
        }
    }

    pub fn index_of(&self, x: &Fe) -> u128 {
        x.0.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p() as u128 + c as u128)
    }

    pub fn element(&self, mut index: u128) -> Fe {
        let p = self.p() as u128;
        let mut c = vec![0; self.k()];
        for slot in c.iter_mut() {
            *slot = (index % p) as u64;
            index /= p;
        }
        Fe(c)
    }

    /// All elements in increasing order. Only sensible for small fields.
    pub fn elements(&self) -> impl Iterator<Item = Fe> + '_ {
        (0..self.order()).map(move |i| self.element(i))
    }

    pub fn add(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p();
        Fe(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + y) % p).collect())
    }

    pub fn sub(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p();
        Fe(a.0.iter().zip(&b.0).map(|(&x, &y)| (x + p - y) % p).collect())
    }

    pub fn neg(&self, a: &Fe) -> Fe {
        let p = self.p();
        Fe(a.0.iter().map(|&x| (p - x) % p).collect())
    }

    pub fn scale(&self, a: &Fe, s: u64) -> Fe {
        let p = self.p();
        let s = s % p;
        Fe(a.0.iter().map(|&x| x * s % p).collect())
    }

    pub fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let p = self.p();
        if self.k() == 1 {
            return Fe(vec![a.0[0] * b.0[0] % p]);
        }
        let mut v = raw_mulmod(&a.0, &b.0, self.modulus(), p);
        v.resize(self.k(), 0);
        Fe(v)
    }

    pub fn square(&self, a: &Fe) -> Fe {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Fe, mut e: u128) -> Fe {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        acc
    }

    /// `a^e` for a signed exponent; `None` if `a = 0` and `e < 0`.
    pub fn pow_signed(&self, a: &Fe, e: i64) -> Option<Fe> {
        if e >= 0 {
            Some(self.pow(a, e as u128))
        } else {
            self.inv(a).map(|i| self.pow(&i, e.unsigned_abs() as u128))
        }
    }

    pub fn inv(&self, a: &Fe) -> Option<Fe> {
        if a.is_zero() {
            return None;
        }
        if self.k() == 1 {
            return Some(Fe(vec![mod_pow(a.0[0], self.p() - 2, self.p())]));
        }
        Some(self.pow(a, self.order() - 2))
    }

    pub fn div(&self, a: &Fe, b: &Fe) -> Option<Fe> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, x: &Fe) -> Fe {
        if self.k() == 1 {
            return x.clone();
        }
        self.pow(x, self.p() as u128)
    }

    /// The unique `y` with `y^p = x`, computed as `x^(p^(k-1))`.
    pub fn pth_root(&self, x: &Fe) -> Fe {
        let mut y = x.clone();
        for _ in 1..self.k() {
            y = self.frobenius(&y);
        }
        y
    }

    /// Whether `x^(p^d) = x`.
    pub fn in_subfield(&self, x: &Fe, d: usize) -> bool {
        let mut y = x.clone();
        for _ in 0..d {
            y = self.frobenius(&y);
        }
        &y == x
    }

    /// `sum_{i<d} x^(p^i)` for `x` in the degree-`d` subfield; lands in `F_p`.
    pub fn trace_to_prime(&self, x: &Fe, d: usize) -> Result<Fe> {
        if d == 0 || !self.k().is_multiple_of(d) || !self.in_subfield(x, d) {
            return Err(Error::NotInSubfield { d });
        }
        let mut acc = self.zero();
        let mut y = x.clone();
        for _ in 0..d {
            acc = self.add(&acc, &y);
            y = self.frobenius(&y);
        }
        Ok(acc)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: &Fe) -> u128 {
        let mut n = self.order() - 1;
        for r in prime_factors_of_group_order(self.p(), self.k()) {
            while n.is_multiple_of(r) && self.pow(x, n / r) == self.one() {
                n /= r;
            }
        }
        n
    }

    /// The least primitive element in the integer-encoding order.
    pub fn generator(&self) -> &Fe {
        self.0.generator.get_or_init(|| {
            let n = self.order() - 1;
            let primes = prime_factors_of_group_order(self.p(), self.k());
            let one = self.one();
            (1..self.order())
                .map(|i| self.element(i))
                .find(|x| primes.iter().all(|&r| self.pow(x, n / r) != one))
                .expect("finite fields have primitive elements")
        })
    }

    /// `generator^((p^k - 1) / n)`, a fixed primitive `n`-th root of unity.
    pub fn root_of_unity(&self, n: u64) -> Result<Fe> {
        let group = self.order() - 1;
        if n == 0 || !group.is_multiple_of(n as u128) {
            return Err(Error::OrderNotDividing { order: n });
        }
        Ok(self.pow(self.generator(), group / n as u128))
    }
}

/// Convenience wrappers mirroring the free-function style of the CLI.
pub fn pth_root(field: &Field, x: &Fe) -> Fe {
    field.pth_root(x)
}

pub fn trace_to_prime(field: &Field, x: &Fe, d: usize) -> Result<Fe> {
    field.trace_to_prime(x, d)
}

pub fn root_of_unity(field: &Field, n: u64) -> Result<Fe> {
    field.root_of_unity(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
    }

    #[test]
    fn small_moduli_match_exhaustive_scan() {
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn modulus_is_least_irreducible_by_brute_force() {
        // An irreducible of degree 2 or 3 has no roots in F_p.
        for &(p, k) in &[(3u64, 2usize), (3, 3), (5, 2), (5, 3), (7, 2), (7, 3)] {
            let m = make_field(p, k).unwrap().modulus().to_vec();
            let no_root = |c: &[u64]| {
                (0..p).all(|x| c.iter().rev().fold(0, |acc, &ci| (acc * x + ci) % p) != 0)
            };
            let total = p.pow(k as u32);
            let first = (0..total)
                .map(|mut i| {
                    let mut c: Vec<u64> = (0..k)
                        .map(|_| {
                            let d = i % p;
                            i /= p;
                            d
                        })
                        .collect();
                    c.push(1);
                    c
                })
                .find(|c| no_root(c))
                .unwrap();
            assert_eq!(m, first, "p={p} k={k}");
        }
    }

    #[test]
    fn rejects_bad_characteristic() {
        assert_eq!(make_field(2, 1).unwrap_err(), Error::EvenPrime);
        assert_eq!(make_field(9, 1).unwrap_err(), Error::NotPrime(9));
        assert_eq!(make_field(3, 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn make_field_is_pure() {
        let a = make_field(7, 3).unwrap();
        let b = make_field(7, 3).unwrap();
        assert_eq!(a.modulus(), b.modulus());
    }

    #[test]
    fn ord_mod_examples() {
        assert_eq!(ord_mod(7, 1).unwrap(), 1);
        assert_eq!(ord_mod(5, 24).unwrap(), 2);
        assert_eq!(ord_mod(3, 10).unwrap(), 4);
        assert!(ord_mod(3, 6).is_err());
    }

    #[test]
    fn pth_root_examples() {
        let f3 = make_field(3, 1).unwrap();
        for x in f3.elements() {
            assert_eq!(f3.pth_root(&x), x);
        }
        let f9 = make_field(3, 2).unwrap();
        let g = f9.generator().clone();
        assert_eq!(f9.pth_root(&g), f9.pow(&g, 3));
        assert_eq!(f9.pth_root(&f9.zero()), f9.zero());
    }

    #[test]
    fn trace_examples() {
        let f9 = make_field(3, 2).unwrap();
        assert_eq!(f9.trace_to_prime(&f9.one(), 2).unwrap(), f9.from_u64(2));
        assert_eq!(f9.trace_to_prime(&f9.zero(), 2).unwrap(), f9.zero());
        let g2 = f9.pow(f9.generator(), 2);
        let direct = f9.add(&g2, &f9.pow(&g2, 3));
        let t = f9.trace_to_prime(&g2, 2).unwrap();
        assert_eq!(t, direct);
        assert!(f9.as_prime(&t).is_some());
        // g is not in F_3, so its degree-1 trace is refused
        assert!(f9.trace_to_prime(f9.generator(), 1).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let f3 = make_field(3, 1).unwrap();
        assert_eq!(f3.root_of_unity(2).unwrap(), f3.from_u64(2));
        assert_eq!(f3.root_of_unity(1).unwrap(), f3.one());
        let f9 = make_field(3, 2).unwrap();
        let z = f9.root_of_unity(8).unwrap();
        assert_eq!(f9.pow(&z, 8), f9.one());
        assert_ne!(f9.pow(&z, 4), f9.one());
        // x + 1 in F_3[x]/(x^2+1) is the least element of order 8
        assert_eq!(f9.generator().coeffs(), &[1, 1]);
        assert!(f9.root_of_unity(5).is_err());
    }

    #[test]
    fn generator_has_full_order() {
        for &(p, k) in &[(3u64, 4usize), (5, 3), (7, 2), (3, 5), (13, 2)] {
            let f = make_field(p, k).unwrap();
            let g = f.generator().clone();
            assert_eq!(f.multiplicative_order(&g), f.order() - 1);
        }
    }

    #[test]
    fn inverse_and_ordering() {
        let f = make_field(5, 3).unwrap();
        for x in f.elements().skip(1).step_by(7) {
            assert_eq!(f.mul(&x, &f.inv(&x).unwrap()), f.one());
        }
        let els: Vec<Fe> = f.elements().take(40).collect();
        assert!(els.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(f.index_of(&f.element(123)), 123);
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn field_and_pair() -> impl Strategy<Value = (Field, Fe, Fe)> {
            prop_oneof![Just((3u64, 3usize)), Just((5, 2)), Just((7, 1)), Just((3, 4))]
                .prop_flat_map(|(p, k)| {
                    let f = make_field(p, k).unwrap();
                    let n = f.order();
                    (Just(f), 0..n, 0..n)
                })
                .prop_map(|(f, a, b)| {
                    let x = f.element(a);
                    let y = f.element(b);
                    (f, x, y)
                })
        }

        proptest! {
            #[test]
            fn frobenius_is_additive((f, x, y) in field_and_pair()) {
                let lhs = f.frobenius(&f.add(&x, &y));
                let rhs = f.add(&f.frobenius(&x), &f.frobenius(&y));
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn pth_root_inverts_frobenius((f, x, _y) in field_and_pair()) {
                prop_assert_eq!(f.frobenius(&f.pth_root(&x)), x.clone());
                prop_assert_eq!(f.pth_root(&f.frobenius(&x)), x);
            }

            #[test]
            fn trace_lands_in_prime_field((f, x, _y) in field_and_pair()) {
                let t = f.trace_to_prime(&x, f.k()).unwrap();
                prop_assert_eq!(f.frobenius(&t), t.clone());
                prop_assert!(f.as_prime(&t).is_some());
            }
        }
    }
}
