//! The power-sum form of the criterion: residues at the roots of `f`, the
//! power-sum system they must satisfy, the Jacobian ("isolation") matrix,
//! reconstruction of `f` from residue data, and self-verifying certificates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cartier::{check_shape, ddc_check, Quadruple};
use crate::error::{Error, Result};
use crate::gf::{field_from_spec, make_field, Fe, Field, FieldSpec};
use crate::laurent::RationalFunction;
use crate::poly::{elementary_symmetric, mu_m_orbit_reps, roots_in_splitting_field_capped, Embedding, Poly};

/// Default cap on the absolute degree of any splitting field we build.
pub const DEFAULT_DEGREE_CAP: usize = 16;

/// Orbit representatives `x_j` in a splitting field together with their
/// residues `a_j` in `F_p^*`.
#[derive(Clone, Debug)]
pub struct ResidueData {
    pub quadruple: Quadruple,
    /// Field holding the coefficients of `f`.
    pub base: Field,
    /// Field holding the representatives.
    pub splitting: Field,
    pub embedding: Embedding,
    pub reps: Vec<Fe>,
    pub residues: Vec<u64>,
}

impl ResidueData {
    /// Assembles residue data, checking the structural invariants.
    pub fn new(
        quadruple: Quadruple,
        base: &Field,
        splitting: &Field,
        reps: Vec<Fe>,
        residues: Vec<u64>,
    ) -> Result<Self> {
        if reps.len() != quadruple.orbit_count() || residues.len() != reps.len() {
            return Err(Error::InvalidConstruction(format!(
                "expected {} representatives and residues, got {} and {}",
                quadruple.orbit_count(),
                reps.len(),
                residues.len()
            )));
        }
        if residues.iter().any(|&a| a == 0 || a >= quadruple.p) {
            return Err(Error::InvalidConstruction(
                "residues must be nonzero elements of F_p".into(),
            ));
        }
        let embedding = Embedding::new(base, splitting)?;
        Ok(ResidueData {
            quadruple,
            base: base.clone(),
            splitting: splitting.clone(),
            embedding,
            reps,
            residues,
        })
    }

    pub fn splitting_degree(&self) -> usize {
        self.splitting.k()
    }

    fn residue_elements(&self) -> Vec<Fe> {
        self.residues
            .iter()
            .map(|&a| self.splitting.from_u64(a))
            .collect()
    }
}

/// Residues of `dt / (f t^(u~+1))` at one root per `mu_m`-orbit.
///
/// The residue at a simple root `x` is `1 / (x^(u~+1) f'(x))`.
pub fn residue_data(q: &Quadruple, f: &Poly) -> Result<ResidueData> {
    residue_data_capped(q, f, DEFAULT_DEGREE_CAP)
}

pub fn residue_data_capped(q: &Quadruple, f: &Poly, cap: usize) -> Result<ResidueData> {
    check_shape(q, f)?;
    if !f.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let split = roots_in_splitting_field_capped(f, cap)?;
    let big = &split.field;
    let reps = mu_m_orbit_reps(&split.roots, q.m, big)?;
    let df = split.embedding.map_poly(&f.derivative());
    let mut residues = Vec::with_capacity(reps.len());
    for x in &reps {
        let denom = big.mul(&big.pow(x, q.u_tilde as u128 + 1), &df.eval(x));
        let a = big.inv(&denom).ok_or(Error::NotSquarefree)?;
        residues.push(big.as_prime(&a).ok_or(Error::ResidueNotPrimeField)?);
    }
    Ok(ResidueData {
        quadruple: *q,
        base: f.field().clone(),
        splitting: split.field.clone(),
        embedding: split.embedding,
        reps,
        residues,
    })
}

/// `u / m` as an element of `F_p`.
pub fn u_over_m(q: &Quadruple) -> u64 {
    let p = q.p;
    let m_inv = crate::gf::mod_pow(q.m % p, p - 2, p);
    (q.u() % p) * m_inv % p
}

/// `(q, sum_j a_j x_j^q)` over the criterion's `q`-range.
pub fn power_sums(rd: &ResidueData) -> Vec<(u64, Fe)> {
    let f = &rd.splitting;
    let a = rd.residue_elements();
    rd.quadruple
        .q_range()
        .into_iter()
        .map(|q| {
            let s = rd
                .reps
                .iter()
                .zip(&a)
                .fold(f.zero(), |acc, (x, aj)| {
                    f.add(&acc, &f.mul(aj, &f.pow(x, q as u128)))
                });
            (q, s)
        })
        .collect()
}

/// Whether `sum_j a_j x_j^q` equals `u/m` at `q = u` and vanishes at every other `q`.
pub fn power_sum_check(rd: &ResidueData) -> bool {
    let q = &rd.quadruple;
    let f = &rd.splitting;
    let target = f.from_u64(u_over_m(q));
    power_sums(rd).into_iter().all(|(exp, s)| {
        if exp == q.u() {
            s == target
        } else {
            s.is_zero()
        }
    })
}

/// Determinant by fraction-free (Bareiss) elimination over a field.
pub fn determinant(field: &Field, matrix: &[Vec<Fe>]) -> Fe {
    let n = matrix.len();
    if n == 0 {
        return field.one();
    }
    let mut a: Vec<Vec<Fe>> = matrix.to_vec();
    let mut prev = field.one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return field.zero(),
            }
        }
        let prev_inv = field.inv(&prev).expect("Bareiss pivots are nonzero");
        for i in k + 1..n {
            for j in k + 1..n {
                let v = field.sub(
                    &field.mul(&a[k][k], &a[i][j]),
                    &field.mul(&a[i][k], &a[k][j]),
                );
                a[i][j] = field.mul(&v, &prev_inv);
            }
            a[i][k] = field.zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        field.neg(&d)
    } else {
        d
    }
}

/// Solves the square system `a x = b` by Gauss-Jordan elimination.
pub fn solve(field: &Field, a: &[Vec<Fe>], b: &[Fe]) -> Result<Vec<Fe>> {
    let n = a.len();
    if b.len() != n || a.iter().any(|r| r.len() != n) {
        return Err(Error::SingularSystem);
    }
    let mut rows: Vec<Vec<Fe>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut r = r.clone();
            r.push(v.clone());
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&i| !rows[i][col].is_zero())
            .ok_or(Error::SingularSystem)?;
        rows.swap(col, piv);
        let inv = field.inv(&rows[col][col]).unwrap();
        rows[col] = rows[col].iter().map(|x| field.mul(x, &inv)).collect();
        for i in 0..n {
            if i != col && !rows[i][col].is_zero() {
                let c = rows[i][col].clone();
                for j in col..=n {
                    let v = field.sub(&rows[i][j], &field.mul(&c, &rows[col][j]));
                    rows[i][j] = v;
                }
            }
        }
    }
    Ok(rows.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// The Jacobian `(q a_j x_j^(q-1))` with its determinant.
#[derive(Clone, Debug)]
pub struct Isolation {
    /// Rows follow the ascending `q`-range, columns the representatives.
    pub matrix: Vec<Vec<Fe>>,
    /// Zero when the matrix is not square.
    pub det: Fe,
    pub isolated: bool,
}

pub fn isolation_check(rd: &ResidueData) -> Isolation {
    let f = &rd.splitting;
    let a = rd.residue_elements();
    let qs = rd.quadruple.q_range();
    let matrix: Vec<Vec<Fe>> = qs
        .iter()
        .map(|&q| {
            rd.reps
                .iter()
                .zip(&a)
                .map(|(x, aj)| f.mul(&f.scale(aj, q), &f.pow(x, q as u128 - 1)))
                .collect()
        })
        .collect();
    let cols = rd.reps.len();
    if cols == 0 && qs.is_empty() {
        return Isolation {
            matrix,
            det: f.one(),
            isolated: true,
        };
    }
    if qs.len() != cols {
        return Isolation {
            matrix,
            det: f.zero(),
            isolated: false,
        };
    }
    let det = determinant(f, &matrix);
    let isolated = !det.is_zero();
    Isolation {
        matrix,
        det,
        isolated,
    }
}

/// `(x_j^(q-1))`, the isolation matrix with the nonzero row and column
/// scalings divided out.
pub fn reduced_isolation_matrix(rd: &ResidueData) -> Vec<Vec<Fe>> {
    let f = &rd.splitting;
    rd.quadruple
        .q_range()
        .iter()
        .map(|&q| rd.reps.iter().map(|x| f.pow(x, q as u128 - 1)).collect())
        .collect()
}

/// Index pairs of identical rows.
pub fn equal_rows(matrix: &[Vec<Fe>]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..matrix.len() {
        for j in i + 1..matrix.len() {
            if matrix[i] == matrix[j] {
                out.push((i, j));
            }
        }
    }
    out
}

/// Elementary symmetric functions of the `m`-th powers of the
/// representatives, i.e. the coefficients of `prod_j (t - x_j^m)`.
pub fn orbit_power_symmetric(rd: &ResidueData) -> Vec<Fe> {
    let f = &rd.splitting;
    let powers: Vec<Fe> = rd.reps.iter().map(|x| f.pow(x, rd.quadruple.m as u128)).collect();
    elementary_symmetric(f, &powers)
}

/// Recovers `f` from residue data; see [`reconstruct_f_with_lift`].
pub fn reconstruct_f(rd: &ResidueData) -> Result<Poly> {
    reconstruct_f_with_lift(rd, 0)
}

/// Builds `eta = dg/g - u sum_{s<=nu} t^(-u p^s - 1) dt` for
/// `g = prod_j prod_l (1 - zeta^-l x_j / t)^(e_jl)`, where `e_jl` is the
/// integer lift `r + lift_shift * p` of `zeta^-l a_j` with `r` in `[0, p)`,
/// and returns the `f` with `eta = dt / (f t^(u~+1))`.
pub fn reconstruct_f_with_lift(rd: &ResidueData, lift_shift: i64) -> Result<Poly> {
    let q = &rd.quadruple;
    let big = &rd.splitting;
    let p = q.p;
    let zeta = big.root_of_unity(q.m)?;
    let zeta_inv = big.inv(&zeta).unwrap();

    let mut centers = Vec::new();
    let mut exps = Vec::new();
    for (x, &a) in rd.reps.iter().zip(&rd.residues) {
        let mut z = zeta_inv.clone();
        for _ in 1..=q.m {
            let scalar = big.as_prime(&z).expect("m-th roots of unity lie in F_p");
            let lift = (scalar * a % p) as i64 + lift_shift * p as i64;
            centers.push(big.mul(&z, x));
            exps.push(big.from_int(lift));
            z = big.mul(&z, &zeta_inv);
        }
    }

    // sum_c e_c / (t - c)
    let den = centers
        .iter()
        .fold(Poly::one(big), |acc, c| acc.mul(&Poly::linear(big, c)));
    let mut num = Poly::zero(big);
    for (i, e) in exps.iter().enumerate() {
        let mut term = Poly::constant(big, e.clone());
        for (j, c) in centers.iter().enumerate() {
            if i != j {
                term = term.mul(&Poly::linear(big, c));
            }
        }
        num = num.add(&term);
    }
    let mut eta = RationalFunction::new(num, den)?;
    let total = exps.iter().fold(big.zero(), |acc, e| big.add(&acc, e));
    eta = eta.sub(&RationalFunction::new(Poly::constant(big, total), Poly::x(big))?);
    let u = big.from_u64(q.u());
    let mut up = q.u();
    for _ in 0..=q.nu() {
        let pole = Poly::monomial(big, big.one(), up as usize + 1);
        eta = eta.sub(&RationalFunction::new(Poly::constant(big, u.clone()), pole)?);
        up *= p;
    }

    let scaled = eta.mul(&RationalFunction::from_poly(Poly::monomial(
        big,
        big.one(),
        q.u_tilde as usize + 1,
    )));
    let recip = scaled
        .inv()
        .ok_or_else(|| Error::ReconstructionMismatch("eta vanishes identically".into()))?;
    if !recip.denominator().is_one() {
        return Err(Error::ReconstructionMismatch(
            "eta is not of the form dt / (f t^(u~+1))".into(),
        ));
    }
    let f_big = recip.numerator();
    let coeffs = f_big
        .coeffs()
        .iter()
        .map(|c| rd.embedding.preimage(c))
        .collect::<Option<Vec<Fe>>>()
        .ok_or_else(|| {
            Error::ReconstructionMismatch("coefficients do not lie in the base field".into())
        })?;
    let f = Poly::new(&rd.base, coeffs);
    check_shape(q, &f).map_err(|e| Error::ReconstructionMismatch(e.to_string()))?;
    if !ddc_check(q, &f)? {
        return Err(Error::ReconstructionMismatch(
            "reconstructed polynomial fails the Cartier identity".into(),
        ));
    }
    Ok(f)
}

/// Outcome of running the whole pipeline on one polynomial.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub quadruple: Quadruple,
    pub field: Field,
    pub f: Poly,
    pub residue_data: Option<ResidueData>,
    pub ddc_ok: bool,
    pub power_sum_ok: bool,
    pub isolation_det: Option<Fe>,
    pub isolated: bool,
    /// Why residue extraction failed, if it did.
    pub failure: Option<String>,
}

impl Certificate {
    /// The criterion holds (and, if `require_isolated`, isolatedly).
    pub fn passes(&self, require_isolated: bool) -> bool {
        self.ddc_ok && self.power_sum_ok && (!require_isolated || self.isolated)
    }

    pub fn to_record(&self) -> CertificateRecord {
        let rd = self.residue_data.as_ref();
        CertificateRecord {
            quadruple: self.quadruple,
            field: self.field.spec().clone(),
            f: self.f.coeffs().iter().map(|c| c.coeffs().to_vec()).collect(),
            splitting_degree: rd.map(|r| r.splitting_degree()),
            reps: rd
                .map(|r| r.reps.iter().map(|x| x.coeffs().to_vec()).collect())
                .unwrap_or_default(),
            residues: rd.map(|r| r.residues.clone()).unwrap_or_default(),
            flags: Flags {
                ddc: self.ddc_ok,
                power_sum: self.power_sum_ok,
                isolated: self.isolated,
            },
            isolation_det: self.isolation_det.as_ref().map(|d| d.coeffs().to_vec()),
            failure: self.failure.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub ddc: bool,
    pub power_sum: bool,
    pub isolated: bool,
}

/// Wire form of a [`Certificate`]; field order is the JSON key order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRecord {
    pub quadruple: Quadruple,
    pub field: FieldSpec,
    pub f: Vec<Vec<u64>>,
    pub splitting_degree: Option<usize>,
    pub reps: Vec<Vec<u64>>,
    pub residues: Vec<u64>,
    pub flags: Flags,
    pub isolation_det: Option<Vec<u64>>,
    pub failure: Option<String>,
}

impl CertificateRecord {
    /// Re-derives every field from the quadruple, field and `f` alone and
    /// compares; then re-checks the stored residue data directly.
    pub fn verify(&self) -> Result<bool> {
        let q = self.quadruple.validate()?;
        let field = field_from_spec(&self.field)?;
        let coeffs = self
            .f
            .iter()
            .map(|c| field.element_from_digits(c))
            .collect::<Result<Vec<_>>>()?;
        let f = Poly::new(&field, coeffs);
        let fresh = certify(&q, &f)?;
        if fresh.to_record() != *self {
            return Ok(false);
        }
        let Some(d) = self.splitting_degree else {
            return Ok(true);
        };
        let big = make_field(q.p, d)?;
        let reps = self
            .reps
            .iter()
            .map(|x| big.element_from_digits(x))
            .collect::<Result<Vec<_>>>()?;
        let rd = ResidueData::new(q, &field, &big, reps, self.residues.clone())?;
        let iso = isolation_check(&rd);
        Ok(power_sum_check(&rd) == self.flags.power_sum
            && iso.isolated == self.flags.isolated
            && self.isolation_det.as_deref() == Some(iso.det.coeffs()))
    }
}

/// Runs the Cartier check, residue extraction, power sums and isolation.
/// Only shape violations are errors; criterion failures become flags.
pub fn certify(q: &Quadruple, f: &Poly) -> Result<Certificate> {
    certify_capped(q, f, DEFAULT_DEGREE_CAP)
}

pub fn certify_capped(q: &Quadruple, f: &Poly, cap: usize) -> Result<Certificate> {
    let ddc_ok = ddc_check(q, f)?;
    let (residue_data, failure) = match residue_data_capped(q, f, cap) {
        Ok(rd) => (Some(rd), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let power_sum_ok = residue_data.as_ref().is_some_and(power_sum_check);
    let iso = residue_data.as_ref().map(isolation_check);
    Ok(Certificate {
        quadruple: *q,
        field: f.field().clone(),
        f: f.clone(),
        ddc_ok,
        power_sum_ok,
        isolation_det: iso.as_ref().map(|i| i.det.clone()),
        isolated: iso.is_some_and(|i| i.isolated),
        residue_data,
        failure,
    })
}

/// Certificate for data that did not come from a search (e.g. a closed-form
/// construction): reconstructs `f`, then certifies it.
pub fn certify_residue_data(rd: &ResidueData) -> Result<Certificate> {
    let f = reconstruct_f(rd)?;
    certify(&rd.quadruple, &f)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Integer determinant by Bareiss elimination (all divisions exact).
pub fn integer_determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = matrix.to_vec();
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[k][k] * &a[i][j] - &a[i][k] * &a[k][j];
                let (quot, rem) = v.div_rem(&prev);
                debug_assert!(rem.is_zero());
                a[i][j] = quot;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// For strictly descending `b`: the determinant of `(binom(q - 1, j - 1))`
/// with rows `q` taken from `b` in ascending order, and the closed form
/// `prod_{i<j} (b_i - b_j) / (1! 2! ... (n-1)!)`.
pub fn binomial_det(b: &[u64]) -> Result<(BigInt, BigInt)> {
    if b.windows(2).any(|w| w[0] <= w[1]) || b.contains(&0) {
        return Err(Error::NotDescending);
    }
    let n = b.len();
    let rows: Vec<Vec<BigInt>> = b
        .iter()
        .rev()
        .map(|&q| (0..n as u64).map(|j| binomial(q - 1, j)).collect())
        .collect();
    let direct = integer_determinant(&rows);
    let mut num = BigInt::one();
    for i in 0..n {
        for j in i + 1..n {
            num *= BigInt::from(b[i]) - BigInt::from(b[j]);
        }
    }
    let mut den = BigInt::one();
    let mut fact = BigInt::one();
    for k in 1..n as u64 {
        fact *= BigInt::from(k);
        den *= &fact;
    }
    let (formula, rem) = num.div_rem(&den);
    assert!(rem.is_zero(), "closed form must be integral");
    Ok((direct, formula))
}
