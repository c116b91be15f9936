//! Laurent polynomials `sum_{i=low}^{high} c_i t^i` and rational functions.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{Fe, Field};
use crate::poly::Poly;

/// Canonical: first and last stored coefficients are nonzero; the zero
/// polynomial has no coefficients and `low = 0`.
#[derive(Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    field: Field,
    low: i64,
    coeffs: Vec<Fe>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .terms()
            .rev()
            .map(|(e, c)| format!("{c:?}*t^{e}"))
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl LaurentPoly {
    pub fn new(field: &Field, low: i64, coeffs: Vec<Fe>) -> Self {
        let mut l = LaurentPoly {
            field: field.clone(),
            low,
            coeffs,
        };
        l.normalize();
        l
    }

    pub fn zero(field: &Field) -> Self {
        LaurentPoly {
            field: field.clone(),
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn monomial(field: &Field, c: Fe, exp: i64) -> Self {
        Self::new(field, exp, vec![c])
    }

    /// From `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms(field: &Field, terms: impl IntoIterator<Item = (i64, Fe)>) -> Self {
        let terms: Vec<(i64, Fe)> = terms.into_iter().collect();
        if terms.is_empty() {
            return Self::zero(field);
        }
        let low = terms.iter().map(|t| t.0).min().unwrap();
        let high = terms.iter().map(|t| t.0).max().unwrap();
        let mut v = vec![field.zero(); (high - low + 1) as usize];
        for (e, c) in terms {
            let i = (e - low) as usize;
            v[i] = field.add(&v[i], &c);
        }
        Self::new(field, low, v)
    }

    pub fn from_poly(p: &Poly) -> Self {
        Self::new(p.field(), 0, p.coeffs().to_vec())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(Fe::is_zero) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.low += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest exponent, `None` for zero.
    pub fn high(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Fe {
        let i = e - self.low;
        if i < 0 {
            return self.field.zero();
        }
        self.coeffs
            .get(i as usize)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Nonzero terms `(exponent, coefficient)`, ascending exponent.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Fe)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let f = &self.field;
        let low = self.low.min(other.low);
        let high = self.high().unwrap().max(other.high().unwrap());
        let v = (low..=high)
            .map(|e| f.add(&self.coeff(e), &other.coeff(e)))
            .collect();
        Self::new(f, low, v)
    }

    pub fn neg(&self) -> Self {
        let f = &self.field;
        Self::new(f, self.low, self.coeffs.iter().map(|c| f.neg(c)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Fe) -> Self {
        let f = &self.field;
        Self::new(
            f,
            self.low,
            self.coeffs.iter().map(|c| f.mul(c, s)).collect(),
        )
    }

    pub fn shift(&self, n: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::new(&self.field, self.low + n, self.coeffs.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.field);
        }
        let f = &self.field;
        let mut v = vec![f.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                v[i + j] = f.add(&v[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, self.low + other.low, v)
    }

    /// `self^p`: in characteristic `p` this raises coefficients to the
    /// `p`-th power and multiplies exponents by `p`.
    pub fn frobenius(&self) -> Self {
        let f = &self.field;
        let p = f.p() as i64;
        Self::from_terms(f, self.terms().map(|(e, c)| (e * p, f.frobenius(c))))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let f = &self.field;
        let p = f.p();
        let mut acc = Self::monomial(f, f.one(), 0);
        let mut base = self.clone();
        // peel off p-adic digits so that most of the work is Frobenius
        while e > 0 {
            let digit = e % p;
            for _ in 0..digit {
                acc = acc.mul(&base);
            }
            e /= p;
            if e > 0 {
                base = base.frobenius();
            }
        }
        acc
    }

    pub fn map_coeffs(&self, target: &Field, mut map: impl FnMut(&Fe) -> Fe) -> Self {
        Self::new(target, self.low, self.coeffs.iter().map(&mut map).collect())
    }

    /// As an ordinary polynomial, if there are no negative exponents.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero(&self.field));
        }
        if self.low < 0 {
            return None;
        }
        let mut v = vec![self.field.zero(); self.low as usize];
        v.extend(self.coeffs.iter().cloned());
        Some(Poly::new(&self.field, v))
    }

    /// Degree in `t^{-1}`: `-low` when only non-positive powers occur.
    pub fn degree_in_inverse(&self) -> Option<i64> {
        (!self.is_zero()).then_some(-self.low)
    }
}

impl fmt::Display for LaurentPoly {
    /// Prime-field coefficients print as integers, others as digit lists.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms().rev() {
            let coeff = match self.field.as_prime(c) {
                Some(v) => v.to_string(),
                None => format!("{:?}", c.coeffs()),
            };
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (coeff.as_str(), e) {
                (_, 0) => write!(f, "{coeff}")?,
                ("1", 1) => write!(f, "t")?,
                ("1", _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{coeff}*t")?,
                _ => write!(f, "{coeff}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Parses a signed sum of monomials such as `2*t^-5+t^-1-3` or `-t^-2`.
///
/// Each term is `[sign] [int] [*] t [^ [sign] int]` or a bare integer;
/// coefficients are integers reduced into the prime field.
pub fn parse_laurent(field: &Field, input: &str) -> Result<LaurentPoly> {
    let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty Laurent polynomial".into()));
    }
    if s == "0" {
        return Ok(LaurentPoly::zero(field));
    }
    let bad = |msg: &str| Error::Parse(format!("{msg} in {input:?}"));
    let bytes = s.as_bytes();
    let mut terms = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = 1i64;
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -1;
            }
            i += 1;
        } else if i > 0 {
            return Err(bad("expected + or -"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coeff: i64 = if i > start {
            s[start..i].parse().map_err(|_| bad("coefficient out of range"))?
        } else {
            1
        };
        let mut exp = 0i64;
        let has_coeff = i > start;
        if i < bytes.len() && bytes[i] == b'*' {
            if !has_coeff {
                return Err(bad("dangling *"));
            }
            i += 1;
            if i >= bytes.len() || bytes[i] != b't' {
                return Err(bad("expected t after *"));
            }
        }
        if i < bytes.len() && bytes[i] == b't' {
            i += 1;
            exp = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let es = i;
                if i < bytes.len() && (bytes[i] == b'-' || bytes[i] == b'+') {
                    i += 1;
                }
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i == ds {
                    return Err(bad("missing exponent"));
                }
                exp = s[es..i].parse().map_err(|_| bad("exponent out of range"))?;
            }
        } else if !has_coeff {
            return Err(bad("empty term"));
        }
        terms.push((exp, field.from_int(sign * (coeff % field.p() as i64))));
    }
    Ok(LaurentPoly::from_terms(field, terms))
}

/// `numerator / denominator` with monic denominator and coprime parts.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        let lead = den.leading().cloned().ok_or(Error::SingularSystem)?;
        let f = num.field().clone();
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_zero() || g.is_one() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        let li = f.inv(den.leading().unwrap_or(&lead)).unwrap();
        num = num.scale(&li);
        den = den.scale(&li);
        if num.is_zero() {
            den = Poly::one(&f);
        }
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let f = p.field().clone();
        RationalFunction {
            num: p,
            den: Poly::one(&f),
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(Poly::zero(field))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        Self::new(num, self.den.mul(&other.den)).unwrap()
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den)).unwrap()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Self::new(self.den.clone(), self.num.clone()).ok()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}
