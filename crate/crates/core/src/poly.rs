//! Dense univariate polynomials over a [`Field`], with factorization and
//! root finding.
//!
//! Factoring is squarefree decomposition, then distinct-degree splitting,
//! then Cantor–Zassenhaus equal-degree splitting driven by a fixed-seed
//! ChaCha stream, so every run produces the same factors in the same order.

use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{make_field, Fe, Field};

const SPLIT_SEED: u64 = 0x5eed_cafe_f00d_0001;

/// Degree of a polynomial: `None` stands for the zero polynomial.
pub type Degree = Option<usize>;

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c:?}")?,
                1 => write!(f, "{c:?}*t")?,
                _ => write!(f, "{c:?}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Fe>) -> Self {
        let mut p = Poly {
            field: field.clone(),
            coeffs,
        };
        p.normalize();
        p
    }

    /// From small integers, ascending degree.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_int(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Fe) -> Self {
        Self::new(field, vec![c])
    }

    /// `t`.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Fe, deg: usize) -> Self {
        let mut v = vec![field.zero(); deg + 1];
        v[deg] = c;
        Self::new(field, v)
    }

    /// `t - a`.
    pub fn linear(field: &Field, a: &Fe) -> Self {
        Self::new(field, vec![field.neg(a), field.one()])
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Fe::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of `t^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Degree {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Fe> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == self.field.one())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.add(&self.coeff(i), &other.coeff(i)))
            .collect();
        Poly::new(f, v)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let v = (0..n)
            .map(|i| f.sub(&self.coeff(i), &other.coeff(i)))
            .collect();
        Poly::new(f, v)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|c| self.field.neg(c)).collect(),
        )
    }

    pub fn scale(&self, s: &Fe) -> Poly {
        Poly::new(
            &self.field,
            self.coeffs.iter().map(|c| self.field.mul(c, s)).collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Poly::new(f, v)
    }

    /// Multiply by `t^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![self.field.zero(); n];
        v.extend(self.coeffs.iter().cloned());
        Poly::new(&self.field, v)
    }

    /// Quotient and remainder; `None` when dividing by zero.
    pub fn div_rem(&self, d: &Poly) -> Option<(Poly, Poly)> {
        let f = &self.field;
        let dd = d.degree()?;
        let lead_inv = f.inv(d.leading()?)?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![f.zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = f.mul(&rem[i], &lead_inv);
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = f.sub(&rem[idx], &f.mul(&c, dc));
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Some((Poly::new(f, quot), Poly::new(f, rem)))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).expect("division by zero polynomial").1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d).expect("division by zero polynomial");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&self.field.inv(l).unwrap()),
        }
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(f), Poly::zero(f));
        let (mut t0, mut t1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).unwrap();
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.leading() {
            None => (r0, s0, t0),
            Some(l) => {
                let li = f.inv(l).unwrap();
                (r0.scale(&li), s0.scale(&li), t0.scale(&li))
            }
        }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| f.scale(c, i as u64))
            .collect();
        Poly::new(f, v)
    }

    pub fn eval(&self, x: &Fe) -> Fe {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: &BigUint, m: &Poly) -> Poly {
        let mut acc = Poly::one(&self.field).rem(m);
        let base = self.rem(m);
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m);
            if e.bit(i) {
                acc = acc.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Applies a coefficient map, e.g. a field embedding.
    pub fn map_coeffs(&self, target: &Field, mut map: impl FnMut(&Fe) -> Fe) -> Poly {
        Poly::new(target, self.coeffs.iter().map(&mut map).collect())
    }

    /// `g` with `g(t)^p = self(t)`, or `None` if some exponent is not a multiple of `p`.
    pub fn pth_root(&self) -> Option<Poly> {
        let f = &self.field;
        let p = f.p() as usize;
        let mut v = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                v.push(f.pth_root(c));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(Poly::new(f, v))
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Monic factors with multiplicities, `self = lc * prod(f_i^e_i)`.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let c = f.gcd(&f.derivative());
        let mut w = f.exact_div(&c);
        let mut c = c;
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let z = w.exact_div(&y);
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.exact_div(&w);
        }
        if !c.is_one() {
            let root = c.pth_root().expect("remaining factor is a p-th power");
            let p = self.field.p() as usize;
            for (g, e) in root.squarefree_decomposition() {
                out.push((g, e * p));
            }
        }
        out.sort_by_key(|(g, e)| (*e, g.degree()));
        out
    }

    /// For a monic squarefree polynomial: `(d, product of all degree-d irreducible factors)`.
    pub fn distinct_degree_factorization(&self) -> Vec<(usize, Poly)> {
        let f = &self.field;
        let q = BigUint::from(f.order());
        let x = Poly::x(f);
        let mut g = self.monic();
        let mut h = x.rem(&g);
        let mut out = Vec::new();
        let mut d = 0;
        while g.degree().unwrap_or(0) >= 2 * (d + 1) {
            d += 1;
            h = h.pow_mod(&q, &g);
            let factor = g.gcd(&h.sub(&x));
            if !factor.is_one() {
                g = g.exact_div(&factor);
                h = h.rem(&g);
                out.push((d, factor));
            }
        }
        if let Some(dg) = g.degree() {
            if dg > 0 {
                out.push((dg, g));
            }
        }
        out
    }

    /// Splits a monic squarefree product of degree-`d` irreducibles (odd characteristic).
    pub fn equal_degree_factorization(&self, d: usize) -> Vec<Poly> {
        let f = &self.field;
        let n = self.degree().expect("nonzero polynomial");
        if n == d {
            return vec![self.monic()];
        }
        let exp = (BigUint::from(f.order()).pow(d as u32) - BigUint::one()) >> 1;
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ (n as u64) << 8 ^ d as u64);
        let mut pending = vec![self.monic()];
        let mut done = Vec::new();
        while let Some(g) = pending.pop() {
            let gd = g.degree().unwrap();
            if gd == d {
                done.push(g);
                continue;
            }
            loop {
                let a = Poly::new(
                    f,
                    (0..gd)
                        .map(|_| f.element(rng.gen_range(0..f.order())))
                        .collect(),
                );
                if a.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let direct = g.gcd(&a);
                let split = if !direct.is_one() && direct.degree() != g.degree() {
                    direct
                } else {
                    let b = a.pow_mod(&exp, &g).sub(&Poly::one(f));
                    g.gcd(&b)
                };
                let sd = split.degree().unwrap_or(0);
                if sd > 0 && sd < gd {
                    let other = g.exact_div(&split);
                    pending.push(split);
                    pending.push(other);
                    break;
                }
            }
        }
        done.sort_by(|a, b| a.coeffs.iter().rev().cmp(b.coeffs.iter().rev()));
        done
    }

    /// Monic irreducible factors with multiplicity, deterministic order.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        let mut out = Vec::new();
        for (sf, e) in self.squarefree_decomposition() {
            for (d, block) in sf.distinct_degree_factorization() {
                for g in block.equal_degree_factorization(d) {
                    out.push((g, e));
                }
            }
        }
        out.sort_by(|(a, ea), (b, eb)| {
            (a.degree(), a.coeffs.iter().rev().collect::<Vec<_>>(), ea)
                .cmp(&(b.degree(), b.coeffs.iter().rev().collect::<Vec<_>>(), eb))
        });
        out
    }

    /// Roots in this field with multiplicity, ascending.
    pub fn roots(&self) -> Vec<Fe> {
        let mut roots = Vec::new();
        for (sf, e) in self.squarefree_decomposition() {
            for (d, block) in sf.distinct_degree_factorization() {
                if d != 1 {
                    continue;
                }
                for lin in block.equal_degree_factorization(1) {
                    let r = self.field.neg(&lin.coeffs[0]);
                    roots.extend(std::iter::repeat_n(r, e));
                }
            }
        }
        roots.sort();
        roots
    }
}

/// An explicit embedding `F_{p^a} -> F_{p^b}`, `a | b`, sending the generator
/// of the source to the least root of its modulus in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of `1, x, ..., x^(a-1)`.
    basis: Vec<Fe>,
}

impl Embedding {
    pub fn new(source: &Field, target: &Field) -> Result<Self> {
        if source.p() != target.p() || !target.k().is_multiple_of(source.k()) {
            return Err(Error::NoEmbedding {
                from: source.k(),
                to: target.k(),
            });
        }
        let image = if source.k() == 1 {
            target.zero()
        } else {
            let m = Poly::new(
                target,
                source
                    .modulus()
                    .iter()
                    .map(|&c| target.from_u64(c))
                    .collect(),
            );
            m.roots()
                .into_iter()
                .next()
                .expect("modulus splits in an extension of divisible degree")
        };
        let mut basis = Vec::with_capacity(source.k());
        let mut acc = target.one();
        for _ in 0..source.k() {
            basis.push(acc.clone());
            acc = target.mul(&acc, &image);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis,
        })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn map(&self, x: &Fe) -> Fe {
        let t = &self.target;
        x.coeffs()
            .iter()
            .zip(&self.basis)
            .fold(t.zero(), |acc, (&c, b)| t.add(&acc, &t.scale(b, c)))
    }

    pub fn map_poly(&self, f: &Poly) -> Poly {
        f.map_coeffs(&self.target, |c| self.map(c))
    }

    /// Inverse image, if `y` lies in the image.
    pub fn preimage(&self, y: &Fe) -> Option<Fe> {
        let p = self.target.p();
        let a = self.source.k();
        let b = self.target.k();
        // Solve sum_i c_i basis_i = y over F_p: b equations, a unknowns.
        let mut rows: Vec<Vec<u64>> = (0..b)
            .map(|r| {
                let mut row: Vec<u64> = self.basis.iter().map(|e| e.coeffs()[r]).collect();
                row.push(y.coeffs()[r]);
                row
            })
            .collect();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..a {
            let Some(pr) = (r..b).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, pr);
            let inv = crate::gf::mod_pow(rows[r][c], p - 2, p);
            for v in rows[r].iter_mut() {
                *v = *v * inv % p;
            }
            for i in 0..b {
                if i != r && rows[i][c] != 0 {
                    let factor = rows[i][c];
                    for j in 0..=a {
                        rows[i][j] = (rows[i][j] + (p - factor) * rows[r][j] % p) % p;
                    }
                }
            }
            pivot_cols.push(c);
            r += 1;
        }
        if rows[r..].iter().any(|row| row[a] != 0) {
            return None;
        }
        let mut c = vec![0u64; a];
        for (i, &col) in pivot_cols.iter().enumerate() {
            c[col] = rows[i][a];
        }
        self.source.from_coeffs(&c).ok()
    }
}

/// Where the roots of a polynomial live.
#[derive(Clone, Debug)]
pub struct SplitRoots {
    /// Absolute degree over `F_p` of the splitting field.
    pub degree: usize,
    pub field: Field,
    pub embedding: Embedding,
    /// Roots with multiplicity, ascending in the splitting field.
    pub roots: Vec<Fe>,
}

/// Splitting field of `f` (absolute degree `k * lcm(irreducible factor
/// degrees)` for `f` over `F_{p^k}`) and all roots of `f` embedded in it.
pub fn roots_in_splitting_field(f: &Poly) -> Result<SplitRoots> {
    roots_in_splitting_field_capped(f, usize::MAX)
}

pub fn roots_in_splitting_field_capped(f: &Poly, cap: usize) -> Result<SplitRoots> {
    let base = f.field();
    let mut rel = 1usize;
    for (g, _) in f.factor() {
        rel = num_integer::lcm(rel, g.degree().unwrap());
    }
    let degree = base.k() * rel;
    if degree > cap {
        return Err(Error::ExtensionCapExceeded {
            needed: degree,
            cap,
        });
    }
    let field = make_field(base.p(), degree)?;
    let embedding = Embedding::new(base, &field)?;
    let roots = embedding.map_poly(f).roots();
    Ok(SplitRoots {
        degree,
        field,
        embedding,
        roots,
    })
}

/// One representative (the least element) per orbit of `mu_m` acting by
/// multiplication, ascending.
pub fn mu_m_orbit_reps(roots: &[Fe], m: u64, field: &Field) -> Result<Vec<Fe>> {
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    if roots.iter().any(Fe::is_zero) {
        return Err(Error::ZeroRoot);
    }
    let mut sorted = roots.to_vec();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::RepeatedRoot);
    }
    let zeta = field.root_of_unity(m)?;
    let mut mu = Vec::with_capacity(m as usize);
    let mut z = field.one();
    for _ in 0..m {
        mu.push(z.clone());
        z = field.mul(&z, &zeta);
    }
    let mut seen = std::collections::HashSet::new();
    let mut reps = Vec::new();
    for r in &sorted {
        if seen.contains(r) {
            continue;
        }
        let orbit: Vec<Fe> = mu.iter().map(|z| field.mul(z, r)).collect();
        for o in &orbit {
            if sorted.binary_search(o).is_err() {
                return Err(Error::NotOrbitClosed);
            }
            seen.insert(o.clone());
        }
        reps.push(orbit.into_iter().min().unwrap());
    }
    reps.sort();
    Ok(reps)
}

/// `(e_0, ..., e_n)` for the given values, `e_0 = 1`.
pub fn elementary_symmetric(field: &Field, values: &[Fe]) -> Vec<Fe> {
    let mut e = vec![field.one()];
    for v in values {
        e.push(field.zero());
        for s in (1..e.len()).rev() {
            e[s] = field.add(&e[s], &field.mul(&e[s - 1], v));
        }
    }
    e
}

/// `prod (t - v)` rebuilt from elementary symmetric values.
pub fn poly_from_elementary(field: &Field, e: &[Fe]) -> Poly {
    let n = e.len() - 1;
    let coeffs = (0..=n)
        .map(|i| {
            let s = n - i;
            if s.is_multiple_of(2) {
                e[s].clone()
            } else {
                field.neg(&e[s])
            }
        })
        .collect();
    Poly::new(field, coeffs)
}

/// Parses ascending comma-separated coefficients such as `1,0,0,0,0,0,1,0,1`.
///
/// Over `F_p` each entry is any integer, reduced mod `p`. Over `F_{p^k}`
/// with `k > 1` an entry is an element index in `[0, p^k)`, read in base
/// `p` with the constant digit least significant (so `p` means `x`).
pub fn parse_coefficients(field: &Field, input: &str) -> Result<Poly> {
    let mut coeffs = Vec::new();
    for raw in input.split(',') {
        let tok = raw.trim();
        if tok.is_empty() {
            return Err(Error::Parse(format!("empty coefficient in {input:?}")));
        }
        let v: i128 = tok
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
        if field.k() == 1 {
            coeffs.push(field.from_int((v % field.p() as i128) as i64));
        } else {
            if v < 0 || v as u128 >= field.order() {
                return Err(Error::Parse(format!(
                    "element index {v} outside [0, {})",
                    field.order()
                )));
            }
            coeffs.push(field.element(v as u128));
        }
    }
    Ok(Poly::new(field, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> Field {
        make_field(3, 1).unwrap()
    }

    #[test]
    fn parse_coefficient_lists() {
        let f = f3();
        assert_eq!(
            parse_coefficients(&f, "1,0,0,0,0,0,1,0,1").unwrap(),
            Poly::from_ints(&f, &[1, 0, 0, 0, 0, 0, 1, 0, 1])
        );
        assert_eq!(parse_coefficients(&f, "-1, 4").unwrap(), Poly::from_ints(&f, &[2, 1]));
        let f9 = make_field(3, 2).unwrap();
        let g = parse_coefficients(&f9, "3,1").unwrap();
        assert_eq!(g.coeff(0), f9.gen());
        assert!(parse_coefficients(&f9, "9").is_err());
        assert!(parse_coefficients(&f, "1,,2").is_err());
        assert!(parse_coefficients(&f, "x").is_err());
    }

    #[test]
    fn degree_of_zero_is_sentinel() {
        assert_eq!(Poly::zero(&f3()).degree(), None);
        assert_eq!(Poly::one(&f3()).degree(), Some(0));
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = make_field(5, 1).unwrap();
        let a = Poly::from_ints(&f, &[1, 2, 3, 4, 1]);
        let b = Poly::from_ints(&f, &[2, 0, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn roots_of_t2_minus_1() {
        let f = f3();
        let sr = roots_in_splitting_field(&Poly::from_ints(&f, &[-1, 0, 1])).unwrap();
        assert_eq!(sr.degree, 1);
        assert_eq!(sr.roots, vec![f.from_u64(1), f.from_u64(2)]);
        let sr = roots_in_splitting_field(&Poly::from_ints(&f, &[2, 0, 1])).unwrap();
        assert_eq!(sr.roots, vec![f.from_u64(1), f.from_u64(2)]);
    }

    #[test]
    fn f8_roots_by_exhaustive_evaluation() {
        let f = f3();
        let f8 = Poly::from_ints(&f, &[1, 0, 0, 0, 0, 0, 1, 0, 1]);
        let sr = roots_in_splitting_field(&f8).unwrap();
        assert_eq!(sr.roots.len(), 8);
        let big = &sr.field;
        let lifted = sr.embedding.map_poly(&f8);
        // oracle: evaluate at every element of the splitting field
        let mut brute: Vec<Fe> = big.elements().filter(|x| lifted.eval(x).is_zero()).collect();
        brute.sort();
        assert_eq!(brute, sr.roots);
        for r in &sr.roots {
            assert!(sr.roots.contains(&big.neg(r)));
        }
        let reps = mu_m_orbit_reps(&sr.roots, 2, big).unwrap();
        assert_eq!(reps.len(), 4);
    }

    #[test]
    fn orbit_reps_small_cases() {
        let f = f3();
        let reps = mu_m_orbit_reps(&[f.from_u64(1), f.from_u64(2)], 2, &f).unwrap();
        assert_eq!(reps, vec![f.from_u64(1)]);
        assert!(mu_m_orbit_reps(&[], 2, &f).unwrap().is_empty());
        assert_eq!(
            mu_m_orbit_reps(&[f.from_u64(1)], 2, &f).unwrap_err(),
            Error::NotOrbitClosed
        );
        assert_eq!(
            mu_m_orbit_reps(&[f.zero()], 2, &f).unwrap_err(),
            Error::ZeroRoot
        );
        assert_eq!(
            mu_m_orbit_reps(&[f.one(), f.one()], 2, &f).unwrap_err(),
            Error::RepeatedRoot
        );
    }

    #[test]
    fn elementary_symmetric_of_empty_is_one() {
        let f = f3();
        assert_eq!(elementary_symmetric(&f, &[]), vec![f.one()]);
    }

    #[test]
    fn squarefree_decomposition_in_char_p() {
        let f = f3();
        // (t+1)^3 (t+2)^2 t  -- the cube has zero derivative
        let a = Poly::from_ints(&f, &[1, 1]).pow(3);
        let b = Poly::from_ints(&f, &[2, 1]).pow(2);
        let g = a.mul(&b).mul(&Poly::x(&f));
        let dec = g.squarefree_decomposition();
        let rebuilt = dec
            .iter()
            .fold(Poly::one(&f), |acc, (h, e)| acc.mul(&h.pow(*e as u64)));
        assert_eq!(rebuilt, g);
        let mults: Vec<usize> = dec.iter().map(|(_, e)| *e).collect();
        assert_eq!(mults, vec![1, 2, 3]);
        assert!(!g.is_squarefree());
    }

    #[test]
    fn factor_product_reproduces_input() {
        let f = make_field(5, 1).unwrap();
        let g = Poly::from_ints(&f, &[3, 1, 4, 1, 0, 2, 1, 1]);
        let facs = g.factor();
        let prod = facs
            .iter()
            .fold(Poly::one(&f), |acc, (h, e)| acc.mul(&h.pow(*e as u64)));
        assert_eq!(prod.scale(g.leading().unwrap()), g);
        for (h, _) in &facs {
            assert!(h.is_monic());
        }
    }

    #[test]
    fn embedding_roundtrip() {
        let small = make_field(3, 2).unwrap();
        let big = make_field(3, 4).unwrap();
        let emb = Embedding::new(&small, &big).unwrap();
        for x in small.elements() {
            for y in small.elements().step_by(3) {
                assert_eq!(
                    emb.map(&small.mul(&x, &y)),
                    big.mul(&emb.map(&x), &emb.map(&y))
                );
            }
            assert_eq!(emb.preimage(&emb.map(&x)), Some(x));
        }
        assert!(emb.preimage(big.generator()).is_none());
        assert!(Embedding::new(&big, &small).is_err());
    }

    #[test]
    fn roots_over_extension_base() {
        let f9 = make_field(3, 2).unwrap();
        // t^2 - g has roots in F_81 only
        let g = f9.generator().clone();
        let poly = Poly::new(&f9, vec![f9.neg(&g), f9.zero(), f9.one()]);
        let sr = roots_in_splitting_field(&poly).unwrap();
        assert_eq!(sr.degree, 4);
        assert_eq!(sr.roots.len(), 2);
        let lifted = sr.embedding.map_poly(&poly);
        for r in &sr.roots {
            assert!(lifted.eval(r).is_zero());
        }
    }

    mod props {
        use super::super::*;
        use proptest::prelude::*;

        fn poly_strategy() -> impl Strategy<Value = Poly> {
            (prop_oneof![Just(3u64), Just(5), Just(7)], prop::collection::vec(0i64..7, 1..9))
                .prop_map(|(p, c)| Poly::from_ints(&make_field(p, 1).unwrap(), &c))
                .prop_filter("nonzero", |f| f.degree().unwrap_or(0) > 0)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn roots_rebuild_split_polynomials(f in poly_strategy()) {
                let sr = roots_in_splitting_field(&f).unwrap();
                let big = &sr.field;
                prop_assert_eq!(sr.roots.len(), f.degree().unwrap());
                let lc = sr.embedding.map(f.leading().unwrap());
                let rebuilt = sr.roots.iter().fold(Poly::constant(big, lc), |acc, r| {
                    acc.mul(&Poly::linear(big, r))
                });
                prop_assert_eq!(rebuilt, sr.embedding.map_poly(&f));
            }

            #[test]
            fn squarefree_iff_distinct_roots(f in poly_strategy()) {
                let sr = roots_in_splitting_field(&f).unwrap();
                let distinct = sr.roots.windows(2).all(|w| w[0] != w[1]);
                prop_assert_eq!(f.is_squarefree(), distinct);
            }
        }
    }
}
