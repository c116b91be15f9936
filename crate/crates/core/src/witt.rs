//! Truncated `p`-typical Witt vectors over `F_q[t^-1]`, the isogeny
//! `F - 1`, reduction to standard form, and the resulting ramification
//! breaks.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{make_field, Fe, Field};
use crate::laurent::LaurentPoly;
use crate::poly::Embedding;

/// Default truncation cap; the addition polynomials grow quickly.
pub const DEFAULT_MAX_LEVEL: usize = 3;

/// Default cap on the extension degree that constant elimination may use.
pub const DEFAULT_EXTENSION_CAP: usize = 16;

/// Exponent vector over `X_0..X_{n-1}, Y_0..Y_{n-1}`.
type Monomial = Vec<u32>;
type IntPoly = BTreeMap<Monomial, BigInt>;

fn int_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = IntPoly::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Monomial = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(BigInt::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn int_pow(a: &IntPoly, e: u64, vars: usize) -> IntPoly {
    let mut acc = IntPoly::new();
    acc.insert(vec![0; vars], BigInt::one());
    let mut base = a.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = int_mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = int_mul(&base, &base);
        }
    }
    acc
}

fn int_add_scaled(acc: &mut IntPoly, b: &IntPoly, s: &BigInt) {
    for (m, c) in b {
        *acc.entry(m.clone()).or_insert_with(BigInt::zero) += c * s;
    }
    acc.retain(|_, c| !c.is_zero());
}

fn var_power(vars: usize, var: usize, e: u32) -> IntPoly {
    let mut m = vec![0; vars];
    m[var] = e;
    IntPoly::from([(m, BigInt::one())])
}

/// The addition polynomials `S_0..S_{n-1}` reduced mod `p`, as sparse
/// `(exponents, coefficient)` lists.
#[derive(Debug)]
pub struct SumPolys {
    pub p: u64,
    pub n: usize,
    pub polys: Vec<Vec<(Monomial, u64)>>,
}

fn compute_sum_polys(p: u64, n: usize) -> SumPolys {
    let vars = 2 * n;
    let pb = BigInt::from(p);
    let mut integral: Vec<IntPoly> = Vec::with_capacity(n);
    for i in 0..n {
        // w_i(X) + w_i(Y)
        let mut acc = IntPoly::new();
        for j in 0..=i {
            let e = p.pow((i - j) as u32) as u32;
            let scale = Pow::pow(&pb, j as u32);
            int_add_scaled(&mut acc, &var_power(vars, j, e), &scale);
            int_add_scaled(&mut acc, &var_power(vars, n + j, e), &scale);
        }
        for (j, s) in integral.iter().enumerate() {
            let e = p.pow((i - j) as u32);
            let scale = -Pow::pow(&pb, j as u32);
            int_add_scaled(&mut acc, &int_pow(s, e, vars), &scale);
        }
        let denom = Pow::pow(&pb, i as u32);
        for c in acc.values_mut() {
            let (q, r) = c.div_rem(&denom);
            assert!(r.is_zero(), "Witt addition polynomial is not integral");
            *c = q;
        }
        integral.push(acc);
    }
    let polys = integral
        .iter()
        .map(|s| {
            s.iter()
                .filter_map(|(m, c)| {
                    let r = c.mod_floor(&pb).to_u64().unwrap();
                    (r != 0).then(|| (m.clone(), r))
                })
                .collect()
        })
        .collect();
    SumPolys { p, n, polys }
}

type SumCache = Mutex<HashMap<(u64, usize), Arc<SumPolys>>>;

fn sum_cache() -> &'static SumCache {
    static CACHE: OnceLock<SumCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `S_0..S_{n-1}` for `W_n` over `F_p`, computed once per `(p, n)`.
pub fn witt_sum_polys(p: u64, n: usize) -> Result<Arc<SumPolys>> {
    witt_sum_polys_up_to(p, n, DEFAULT_MAX_LEVEL)
}

pub fn witt_sum_polys_up_to(p: u64, n: usize, max: usize) -> Result<Arc<SumPolys>> {
    crate::gf::check_char(p)?;
    if n == 0 || n > max {
        return Err(Error::LevelTooHigh { n, max });
    }
    if let Some(s) = sum_cache().lock().unwrap().get(&(p, n)) {
        return Ok(s.clone());
    }
    // computed outside the lock; a racing duplicate is harmless
    let s = Arc::new(compute_sum_polys(p, n));
    Ok(sum_cache()
        .lock()
        .unwrap()
        .entry((p, n))
        .or_insert(s)
        .clone())
}

/// `(f_1, ..., f_n)` in `W_n(F_q((t)))`, entries Laurent polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector {
    field: Field,
    entries: Vec<LaurentPoly>,
}

impl WittVector {
    pub fn new(field: &Field, entries: Vec<LaurentPoly>) -> Result<Self> {
        Self::with_max_level(field, entries, DEFAULT_MAX_LEVEL)
    }

    pub fn with_max_level(field: &Field, entries: Vec<LaurentPoly>, max: usize) -> Result<Self> {
        if entries.is_empty() || entries.len() > max {
            return Err(Error::LevelTooHigh {
                n: entries.len(),
                max,
            });
        }
        if entries.iter().any(|e| e.field() != field) {
            return Err(Error::SpecMismatch);
        }
        Ok(WittVector {
            field: field.clone(),
            entries,
        })
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        WittVector {
            field: field.clone(),
            entries: vec![LaurentPoly::zero(field); n],
        }
    }

    /// `h` in slot `i` (0-based), zero elsewhere.
    pub fn single(field: &Field, n: usize, i: usize, h: LaurentPoly) -> Self {
        let mut v = Self::zero(field, n);
        v.entries[i] = h;
        v
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[LaurentPoly] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    fn map_field(&self, emb: &Embedding) -> Self {
        let target = emb.target();
        WittVector {
            field: target.clone(),
            entries: self
                .entries
                .iter()
                .map(|e| e.map_coeffs(target, |c| emb.map(c)))
                .collect(),
        }
    }

    pub fn to_record(&self) -> Vec<LaurentRecord> {
        self.entries.iter().map(LaurentRecord::from).collect()
    }
}

/// Wire form of a Laurent polynomial: lowest exponent and ascending
/// coefficient arrays.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LaurentRecord {
    pub low: i64,
    pub coeffs: Vec<Vec<u64>>,
    pub text: String,
}

impl From<&LaurentPoly> for LaurentRecord {
    fn from(l: &LaurentPoly) -> Self {
        LaurentRecord {
            low: l.low(),
            coeffs: l.coeffs().iter().map(|c| c.coeffs().to_vec()).collect(),
            text: l.to_string(),
        }
    }
}

fn check_compatible(v: &WittVector, w: &WittVector) -> Result<()> {
    if v.field != w.field || v.len() != w.len() {
        return Err(Error::SpecMismatch);
    }
    Ok(())
}

/// `v + w` via the addition polynomials.
pub fn witt_add(v: &WittVector, w: &WittVector) -> Result<WittVector> {
    check_compatible(v, w)?;
    let n = v.len();
    let field = &v.field;
    let sums = witt_sum_polys_up_to(field.p(), n, n.max(DEFAULT_MAX_LEVEL))?;
    let vars: Vec<&LaurentPoly> = v.entries.iter().chain(&w.entries).collect();
    let mut powers: HashMap<(usize, u32), LaurentPoly> = HashMap::new();
    let mut entries = Vec::with_capacity(n);
    for poly in &sums.polys {
        let mut acc = LaurentPoly::zero(field);
        'mono: for (mono, c) in poly {
            let mut term: Option<LaurentPoly> = None;
            for (var, &e) in mono.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if vars[var].is_zero() {
                    continue 'mono;
                }
                let pw = powers
                    .entry((var, e))
                    .or_insert_with(|| vars[var].pow(e as u64));
                term = Some(match term {
                    None => pw.clone(),
                    Some(t) => t.mul(pw),
                });
            }
            let term = term.unwrap_or_else(|| LaurentPoly::monomial(field, field.one(), 0));
            acc = acc.add(&term.scale(&field.from_u64(*c)));
        }
        entries.push(acc);
    }
    Ok(WittVector {
        field: field.clone(),
        entries,
    })
}

/// Coordinatewise negation, valid because `p` is odd.
pub fn witt_neg(v: &WittVector) -> WittVector {
    WittVector {
        field: v.field.clone(),
        entries: v.entries.iter().map(LaurentPoly::neg).collect(),
    }
}

pub fn witt_sub(v: &WittVector, w: &WittVector) -> Result<WittVector> {
    witt_add(v, &witt_neg(w))
}

/// Frobenius: every entry raised to the `p`-th power.
pub fn witt_frobenius(v: &WittVector) -> WittVector {
    WittVector {
        field: v.field.clone(),
        entries: v.entries.iter().map(LaurentPoly::frobenius).collect(),
    }
}

/// `F(v) - v`.
pub fn wp(v: &WittVector) -> WittVector {
    witt_add(&witt_frobenius(v), &witt_neg(v)).expect("same field and level")
}

/// Entries are polynomials in `t^-1` without constant term, and every
/// exponent is prime to `p`.
pub fn is_standard_form(v: &WittVector) -> bool {
    let p = v.field.p() as i64;
    v.entries
        .iter()
        .all(|e| e.terms().all(|(x, _)| x < 0 && x % p != 0))
}

#[derive(Clone, Debug)]
pub struct StandardForm {
    pub vector: WittVector,
    /// Degree of the field extension that constant elimination needed.
    pub extension_degree: usize,
    /// `vector = input + wp(correction)`, over the extended field.
    pub correction: WittVector,
}

pub fn standard_form(v: &WittVector) -> Result<StandardForm> {
    standard_form_capped(v, DEFAULT_EXTENSION_CAP)
}

/// Removes, slot by slot, terms `a t^(-pk)` by subtracting `wp(a^(1/p) t^-k)`
/// and constants `c` by subtracting `wp(y)` with `y^p - y = c`.
pub fn standard_form_capped(v: &WittVector, cap: usize) -> Result<StandardForm> {
    if v.entries.iter().any(|e| e.high().is_some_and(|h| h > 0)) {
        return Err(Error::PositivePowers);
    }
    let n = v.len();
    let base_k = v.field.k();
    let p = v.field.p() as i64;
    let mut cur = v.clone();
    let mut g = WittVector::zero(&v.field, n);
    for i in 0..n {
        loop {
            let field = cur.field.clone();
            let entry = &cur.entries[i];
            let worst = entry.terms().find(|&(e, _)| e < 0 && e % p == 0);
            let h = if let Some((e, a)) = worst {
                let b = field.pth_root(a);
                LaurentPoly::monomial(&field, b, e / p)
            } else {
                let c = entry.coeff(0);
                if c.is_zero() {
                    break;
                }
                let y = match artin_schreier_root(&field, &c) {
                    Some(y) => y,
                    None => {
                        let needed = field.k() * field.p() as usize;
                        if needed > cap * base_k {
                            return Err(Error::ExtensionCapExceeded {
                                needed: needed / base_k,
                                cap,
                            });
                        }
                        let big = make_field(field.p(), needed)?;
                        let emb = Embedding::new(&field, &big)?;
                        cur = cur.map_field(&emb);
                        g = g.map_field(&emb);
                        continue;
                    }
                };
                LaurentPoly::monomial(&field, y, 0)
            };
            let hv = WittVector::single(&field, n, i, h);
            cur = witt_sub(&cur, &wp(&hv))?;
            g = witt_sub(&g, &hv)?;
        }
    }
    let extension_degree = cur.field.k() / base_k;
    Ok(StandardForm {
        vector: cur,
        extension_degree,
        correction: g,
    })
}

/// Some `y` in `field` with `y^p - y = c`, if one exists.
pub fn artin_schreier_root(field: &Field, c: &Fe) -> Option<Fe> {
    let k = field.k();
    let p = field.p();
    // columns: images of the power basis under y -> y^p - y
    let cols: Vec<Vec<u64>> = (0..k)
        .map(|j| {
            let mut basis = vec![0; k];
            basis[j] = 1;
            let b = field.from_coeffs(&basis).unwrap();
            field.sub(&field.frobenius(&b), &b).coeffs().to_vec()
        })
        .collect();
    let rows: Vec<Vec<u64>> = (0..k)
        .map(|r| {
            let mut row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
            row.push(c.coeffs()[r]);
            row
        })
        .collect();
    let sol = solve_mod_p(rows, k, p)?;
    let y = field.from_coeffs(&sol).unwrap();
    debug_assert_eq!(field.sub(&field.frobenius(&y), &y), *c);
    Some(y)
}

/// Some solution of an augmented system over `F_p`, free variables zero.
fn solve_mod_p(mut rows: Vec<Vec<u64>>, cols: usize, p: u64) -> Option<Vec<u64>> {
    let inv = |a: u64| crate::gf::mod_pow(a, p - 2, p);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let iv = inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = *x * iv % p;
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..=cols {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if rows[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut sol = vec![0; cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = rows[i][cols];
    }
    Some(sol)
}

/// Upper ramification breaks `(u_1, ..., u_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct JumpProfile {
    pub breaks: Vec<u64>,
}

impl JumpProfile {
    /// Checks `p ∤ u_1`, `u_i >= p u_(i-1)`, and `p | u_i => u_i = p u_(i-1)`.
    pub fn new(breaks: Vec<u64>, p: u64) -> Result<Self> {
        if let Some(&u1) = breaks.first() {
            if u1 == 0 || u1 % p == 0 {
                return Err(Error::InvalidProfile(format!("u_1 = {u1} must be prime to p")));
            }
        }
        for w in breaks.windows(2) {
            if w[1] < p * w[0] {
                return Err(Error::InvalidProfile(format!("{} < p * {}", w[1], w[0])));
            }
            if w[1] % p == 0 && w[1] != p * w[0] {
                return Err(Error::InvalidProfile(format!(
                    "{} is divisible by p but differs from p * {}",
                    w[1], w[0]
                )));
            }
        }
        Ok(JumpProfile { breaks })
    }

    pub fn len(&self) -> usize {
        self.breaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.breaks.is_empty()
    }
}

/// `u_i = max_j p^(i-j) deg_{t^-1}(f_j)`.
pub fn upper_breaks(v: &WittVector) -> Result<JumpProfile> {
    if !is_standard_form(v) || v.entries[0].is_zero() {
        return Err(Error::NotStandardForm);
    }
    let p = v.field.p();
    let mut breaks: Vec<u64> = Vec::with_capacity(v.len());
    for (i, e) in v.entries.iter().enumerate() {
        let own = e.degree_in_inverse().unwrap_or(0) as u64;
        let inherited = if i == 0 { 0 } else { p * breaks[i - 1] };
        breaks.push(own.max(inherited));
    }
    JumpProfile::new(breaks, p)
}

/// The common class mod `m` of all `t^-1`-degrees of terms.
pub fn gamma_congruence(v: &WittVector, m: u64) -> Result<u64> {
    if !is_standard_form(v) {
        return Err(Error::NotStandardForm);
    }
    let mut class = None;
    for e in &v.entries {
        for (x, _) in e.terms() {
            let c = (-x) as u64 % m;
            match class {
                None => class = Some(c),
                Some(k) if k != c => return Err(Error::MixedClasses { m }),
                _ => {}
            }
        }
    }
    class.ok_or(Error::NotStandardForm)
}

pub fn kgb_vanishes(j: &JumpProfile, m: u64) -> bool {
    j.breaks.first().is_some_and(|&u| (u + 1) % m == 0)
}

/// Replaces each `u_i` by the unique integer congruent to it mod `mp`
/// in `[p u_(i-1), p u_(i-1) + mp)`, with `u_0 = 0`.
pub fn reduce_jumps(jumps: &[u64], p: u64, m: u64) -> Result<Vec<u64>> {
    crate::gf::check_char(p)?;
    if m == 0 || !(p - 1).is_multiple_of(m) {
        return Err(Error::MNotDividing { p, m });
    }
    let Some(&u1) = jumps.first() else {
        return Ok(Vec::new());
    };
    if u1 % p == 0 {
        return Err(Error::InvalidProfile(format!("u_1 = {u1} must be prime to p")));
    }
    for (i, &u) in jumps.iter().enumerate() {
        if (u + 1) % m != 0 {
            return Err(Error::InvalidProfile(format!("{u} is not -1 mod {m}")));
        }
        if i > 0 && u < p * jumps[i - 1] {
            return Err(Error::InvalidProfile(format!("{u} < p * {}", jumps[i - 1])));
        }
    }
    let mp = m * p;
    let mut out: Vec<u64> = Vec::with_capacity(jumps.len());
    for &u in jumps {
        let lo = out.last().map_or(0, |&prev| p * prev);
        out.push(lo + (u + mp - lo % mp) % mp);
    }
    Ok(out)
}

/// `sum_i (u_i + 1)(p^i - p^(i-1))`, the exponent of the different.
pub fn different_degree(j: &JumpProfile, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    j.breaks
        .iter()
        .enumerate()
        .map(|(i, &u)| {
            let hi: BigInt = Pow::pow(&pb, i as u32 + 1);
            let lo: BigInt = Pow::pow(&pb, i as u32);
            BigInt::from(u + 1) * (hi - lo)
        })
        .sum()
}
