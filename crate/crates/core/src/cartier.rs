//! Differential forms `h(t) dt` with Laurent `h`, and the Cartier operator.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{check_char, Fe, Field};
use crate::laurent::LaurentPoly;
use crate::poly::Poly;

/// The form `h(t) dt`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentForm {
    pub h: LaurentPoly,
}

impl LaurentForm {
    pub fn new(h: LaurentPoly) -> Self {
        LaurentForm { h }
    }

    pub fn zero(field: &Field) -> Self {
        LaurentForm::new(LaurentPoly::zero(field))
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        LaurentForm::new(self.h.add(&other.h))
    }

    pub fn sub(&self, other: &Self) -> Self {
        LaurentForm::new(self.h.sub(&other.h))
    }

    /// Multiply by a function.
    pub fn mul_fn(&self, g: &LaurentPoly) -> Self {
        LaurentForm::new(self.h.mul(g))
    }
}

/// `C(sum a_i t^i dt) = sum_{i = -1 mod p} a_i^(1/p) t^((i+1)/p - 1) dt`.
pub fn cartier(w: &LaurentForm) -> LaurentForm {
    let f = w.h.field();
    let p = f.p() as i64;
    let h = LaurentPoly::from_terms(
        f,
        w.h.terms()
            .filter(|(e, _)| (e + 1).rem_euclid(p) == 0)
            .map(|(e, c)| ((e + 1).div_euclid(p) - 1, f.pth_root(c))),
    );
    LaurentForm::new(h)
}

/// Exact forms are those with no exponent `= -1 (mod p)`.
pub fn is_exact(w: &LaurentForm) -> bool {
    let p = w.h.field().p() as i64;
    w.h.terms().all(|(e, _)| (e + 1).rem_euclid(p) != 0)
}

/// `(p, m, u~, N_1)` with `m > 1`, `m | p - 1`, `u~ = -1 (mod m)`, `m | N_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quadruple {
    pub p: u64,
    pub m: u64,
    pub u_tilde: u64,
    pub n1: u64,
}

impl Quadruple {
    pub fn new(p: u64, m: u64, u_tilde: u64, n1: u64) -> Result<Self> {
        check_char(p)?;
        if m <= 1 || !(p - 1).is_multiple_of(m) {
            return Err(Error::MNotDividing { p, m });
        }
        if u_tilde == 0 || !(u_tilde + 1).is_multiple_of(m) {
            return Err(Error::InvalidQuadruple(format!(
                "u~ = {u_tilde} is not a positive integer congruent to -1 mod {m}"
            )));
        }
        if !n1.is_multiple_of(m) {
            return Err(Error::InvalidQuadruple(format!(
                "N1 = {n1} is not divisible by m = {m}"
            )));
        }
        Ok(Quadruple {
            p,
            m,
            u_tilde,
            n1,
        })
    }

    /// Re-checks the invariants of a deserialized value.
    pub fn validate(&self) -> Result<Self> {
        Self::new(self.p, self.m, self.u_tilde, self.n1)
    }

    /// `v_p(u~)`.
    pub fn nu(&self) -> u32 {
        let mut v = 0;
        let mut x = self.u_tilde;
        while x.is_multiple_of(self.p) {
            x /= self.p;
            v += 1;
        }
        v
    }

    /// Prime-to-`p` part of `u~`.
    pub fn u(&self) -> u64 {
        self.u_tilde / self.p.pow(self.nu())
    }

    /// Number of orbit representatives, `N_1 / m`.
    pub fn orbit_count(&self) -> usize {
        (self.n1 / self.m) as usize
    }

    /// The exponents `q` in `[1, N_1 + u~ - 1]` with `q = -1 (mod m)` and `p ∤ q`, ascending.
    pub fn q_range(&self) -> Vec<u64> {
        let top = (self.n1 + self.u_tilde).saturating_sub(1);
        (1..=top)
            .filter(|q| (q + 1) % self.m == 0 && q % self.p != 0)
            .collect()
    }
}

/// Checks that `f` is in `k[t^m]`, has degree `N_1`, and `f(0) != 0`.
pub fn check_shape(q: &Quadruple, f: &Poly) -> Result<()> {
    if f.field().p() != q.p {
        return Err(Error::FieldMismatch);
    }
    for (i, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() && !(i as u64).is_multiple_of(q.m) {
            return Err(Error::BadSupport { exponent: i });
        }
    }
    if f.degree() != Some(q.n1 as usize) {
        return Err(Error::WrongDegree {
            expected: q.n1 as usize,
            actual: f.degree(),
        });
    }
    if f.coeff(0).is_zero() {
        return Err(Error::VanishesAtZero);
    }
    Ok(())
}

/// Whether `omega = dt / (f t^(u~+1))` satisfies `C(omega) = omega + u t^(-u~-1) dt`.
///
/// Multiplying through by `f` (using `C(f^p eta) = f C(eta)`), this is the
/// polynomial identity `C(f^(p-1) t^(-u~-1) dt) = (1 + u f) t^(-u~-1) dt`.
pub fn ddc_check(q: &Quadruple, f: &Poly) -> Result<bool> {
    check_shape(q, f)?;
    let field = f.field();
    let shift = -(q.u_tilde as i64) - 1;
    let fl = LaurentPoly::from_poly(f);
    let lhs = cartier(&LaurentForm::new(fl.pow(q.p - 1).shift(shift)));
    let u = field.from_u64(q.u());
    let rhs = LaurentPoly::monomial(field, field.one(), 0)
        .add(&fl.scale(&u))
        .shift(shift);
    Ok(lhs.h == rhs)
}

/// The logarithmic derivative of `prod_j (1 - x_j t^-1)^(a_j)`, expanded in
/// `t^-1` through `t^-(M+1) dt`. The coefficient of `t^(-q-1) dt` is
/// `sum_j a_j x_j^q` for `1 <= q <= M`.
pub fn dlog_truncated(field: &Field, factors: &[(Fe, i64)], order: usize) -> Result<LaurentForm> {
    if factors.iter().any(|(x, _)| x.is_zero()) {
        return Err(Error::ZeroRoot);
    }
    let mut terms = Vec::with_capacity(order);
    let mut powers: Vec<Fe> = factors.iter().map(|(x, _)| x.clone()).collect();
    for q in 1..=order {
        let c = factors
            .iter()
            .zip(&powers)
            .fold(field.zero(), |acc, ((_, a), xq)| {
                field.add(&acc, &field.mul(&field.from_int(*a), xq))
            });
        terms.push((-(q as i64) - 1, c));
        for (pw, (x, _)) in powers.iter_mut().zip(factors) {
            *pw = field.mul(pw, x);
        }
    }
    Ok(LaurentForm::new(LaurentPoly::from_terms(field, terms)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::make_field;

    fn mono(f: &Field, c: u64, e: i64) -> LaurentForm {
        LaurentForm::new(LaurentPoly::monomial(f, f.from_u64(c), e))
    }

    #[test]
    fn cartier_examples() {
        for p in [3u64, 5, 7] {
            let f = make_field(p, 1).unwrap();
            assert_eq!(cartier(&mono(&f, 1, p as i64 - 1)), mono(&f, 1, 0));
            assert_eq!(cartier(&mono(&f, 1, -1)), mono(&f, 1, -1));
        }
        let f3 = make_field(3, 1).unwrap();
        assert!(cartier(&mono(&f3, 1, 1)).is_zero());
    }

    #[test]
    fn exactness_examples() {
        let f3 = make_field(3, 1).unwrap();
        assert!(is_exact(&mono(&f3, 1, 0)));
        assert!(!is_exact(&mono(&f3, 1, -1)));
        // -4 = -1 mod 3, so t^-4 dt is not exact.
        assert!(!is_exact(&mono(&f3, 1, -4)));
        // Antiderivative check: d(c t^-3) = -3c t^-4 dt vanishes in characteristic 3,
        // so t^-4 dt has no antiderivative among monomials.
        let c = f3.from_u64(1);
        assert!(f3.scale(&c, 3).is_zero());
    }

    #[test]
    fn quadruple_validation() {
        assert!(Quadruple::new(3, 2, 5, 8).is_ok());
        assert!(Quadruple::new(3, 4, 3, 8).is_err());
        assert!(Quadruple::new(3, 2, 2, 8).is_err());
        assert!(Quadruple::new(3, 2, 5, 7).is_err());
        assert!(Quadruple::new(2, 1, 1, 0).is_err());
        let q = Quadruple::new(3, 2, 15, 0).unwrap();
        assert_eq!((q.u(), q.nu()), (5, 1));
        assert_eq!(Quadruple::new(3, 2, 5, 8).unwrap().q_range(), vec![1, 5, 7, 11]);
    }

    #[test]
    fn ddc_known_witnesses() {
        let f3 = make_field(3, 1).unwrap();
        let f8 = Poly::from_ints(&f3, &[1, 0, 0, 0, 0, 0, 1, 0, 1]);
        let f10 = Poly::from_ints(&f3, &[1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 2]);
        assert!(ddc_check(&Quadruple::new(3, 2, 5, 8).unwrap(), &f8).unwrap());
        assert!(ddc_check(&Quadruple::new(3, 2, 5, 10).unwrap(), &f10).unwrap());
    }

    #[test]
    fn ddc_constant_brute_force() {
        let f3 = make_field(3, 1).unwrap();
        let q = Quadruple::new(3, 2, 1, 0).unwrap();
        assert!(ddc_check(&q, &Poly::from_ints(&f3, &[2])).unwrap());
        assert!(!ddc_check(&q, &Poly::from_ints(&f3, &[1])).unwrap());
    }

    #[test]
    fn ddc_shape_errors() {
        let f3 = make_field(3, 1).unwrap();
        let q = Quadruple::new(3, 2, 1, 2).unwrap();
        assert_eq!(
            ddc_check(&q, &Poly::from_ints(&f3, &[1, 1, 1])).unwrap_err(),
            Error::BadSupport { exponent: 1 }
        );
        assert!(matches!(
            ddc_check(&q, &Poly::from_ints(&f3, &[1, 0, 1, 0, 1])).unwrap_err(),
            Error::WrongDegree { .. }
        ));
        assert_eq!(
            ddc_check(&q, &Poly::from_ints(&f3, &[0, 0, 1])).unwrap_err(),
            Error::VanishesAtZero
        );
    }

    #[test]
    fn dlog_geometric_series() {
        let f3 = make_field(3, 1).unwrap();
        let w = dlog_truncated(&f3, &[(f3.one(), 1)], 3).unwrap();
        let expected = LaurentPoly::from_terms(
            &f3,
            [(-2, f3.one()), (-3, f3.one()), (-4, f3.one())],
        );
        assert_eq!(w.h, expected);
        assert!(dlog_truncated(&f3, &[], 5).unwrap().is_zero());
        assert_eq!(
            dlog_truncated(&f3, &[(f3.zero(), 1)], 2).unwrap_err(),
            Error::ZeroRoot
        );
    }

    #[test]
    fn dlog_matches_series_of_rational_derivative() {
        // d(1 - x/t)/(1 - x/t) = x t^-2 / (1 - x/t) dt; check by multiplying
        // the truncation back by (1 - x/t) and comparing with x t^-2.
        let f5 = make_field(5, 1).unwrap();
        let x = f5.from_u64(3);
        let order = 8;
        let w = dlog_truncated(&f5, &[(x.clone(), 1)], order).unwrap();
        let one_minus = LaurentPoly::from_terms(&f5, [(0, f5.one()), (-1, f5.neg(&x))]);
        let prod = w.h.mul(&one_minus);
        for e in -(order as i64) - 1..=0 {
            let expect = if e == -2 { x.clone() } else { f5.zero() };
            assert_eq!(prod.coeff(e), expect, "exponent {e}");
        }
    }
}
