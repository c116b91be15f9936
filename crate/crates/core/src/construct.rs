//! Closed-form families of solutions to the power-sum system, plus the
//! four known witnesses for the dihedral group of order 18.

use crate::cartier::Quadruple;
use crate::criterion::{
    certify, certify_residue_data, isolation_check, solve, u_over_m, Certificate, ResidueData,
    DEFAULT_DEGREE_CAP,
};
use crate::error::{Error, Result};
use crate::gf::{make_field, ord_mod, Fe};
use crate::poly::{mu_m_orbit_reps, Poly};

/// Representatives `1, 2, ..., n1/2` in `F_p` for the quadruple
/// `(p, 2, 1, n1)`, `n1` in `{p - 1, p - 3}`, with residues solving the
/// power-sum system.
pub fn construct_small(p: u64, n1: u64) -> Result<ResidueData> {
    let field = make_field(p, 1)?;
    if n1 != p - 1 && n1 + 3 != p {
        return Err(Error::InvalidConstruction(format!(
            "N1 must be p - 1 or p - 3, got {n1}"
        )));
    }
    let q = Quadruple::new(p, 2, 1, n1)?;
    let reps: Vec<Fe> = (1..=n1 / 2).map(|j| field.from_u64(j)).collect();
    let qs = q.q_range();
    let matrix: Vec<Vec<Fe>> = qs
        .iter()
        .map(|&e| reps.iter().map(|x| field.pow(x, e as u128)).collect())
        .collect();
    let rhs: Vec<Fe> = qs
        .iter()
        .map(|&e| {
            if e == q.u() {
                field.from_u64(u_over_m(&q))
            } else {
                field.zero()
            }
        })
        .collect();
    let a = solve(&field, &matrix, &rhs)?;
    let residues = a
        .iter()
        .map(|x| field.as_prime(x).unwrap())
        .collect::<Vec<_>>();
    if residues.contains(&0) {
        return Err(Error::InvalidConstruction("a residue vanished".into()));
    }
    let rd = ResidueData::new(q, &field, &field, reps, residues)?;
    if !isolation_check(&rd).isolated {
        return Err(Error::InvalidConstruction("small family is not isolated".into()));
    }
    Ok(rd)
}

/// Extension degree used by [`construct_trace`]: the roots of unity of
/// order `u (p^(nu+1) - 1)` and the trace subfield must both fit.
pub fn trace_degree(p: u64, m: u64, u_tilde: u64) -> Result<usize> {
    let q = Quadruple::new(p, m, u_tilde, (p - 1) * u_tilde)?;
    let nu = q.nu() as usize;
    let n = q.u() * (p.pow(nu as u32 + 1) - 1);
    let d = ord_mod(p, n)? as usize;
    Ok(num_integer::lcm(d, nu + 1))
}

pub fn construct_trace(p: u64, m: u64, u_tilde: u64) -> Result<ResidueData> {
    construct_trace_capped(p, m, u_tilde, DEFAULT_DEGREE_CAP)
}

/// Roots of unity of order `u (p^(nu+1) - 1)` whose `-u`-th powers have
/// nonzero trace down to `F_p` from `F_{p^(nu+1)}`, one per `mu_m`-orbit,
/// with residues `-Tr(x^-u)`. Targets `(p, m, u~, (p - 1) u~)`.
pub fn construct_trace_capped(p: u64, m: u64, u_tilde: u64, cap: usize) -> Result<ResidueData> {
    if m < 2 {
        return Err(Error::InvalidConstruction("m must exceed 1".into()));
    }
    let q = Quadruple::new(p, m, u_tilde, (p - 1) * u_tilde)?;
    let d = trace_degree(p, m, u_tilde)?;
    if d > cap {
        return Err(Error::ExtensionCapExceeded { needed: d, cap });
    }
    let big = make_field(p, d)?;
    let base = make_field(p, 1)?;
    let nu = q.nu();
    let u = q.u();
    let n = u * (p.pow(nu + 1) - 1);
    let zeta = big.root_of_unity(n)?;

    let mut roots = Vec::new();
    let mut traces = Vec::new();
    let mut removed = 0u64;
    let mut x = big.one();
    for _ in 0..n {
        let xu = big.inv(&big.pow(&x, u as u128)).unwrap();
        let tr = big.trace_to_prime(&xu, nu as usize + 1)?;
        if tr.is_zero() {
            removed += 1;
        } else {
            roots.push(x.clone());
            traces.push((x.clone(), tr));
        }
        x = big.mul(&x, &zeta);
    }
    let expected = u * (p.pow(nu) - 1);
    if removed != expected {
        return Err(Error::InvalidConstruction(format!(
            "trace-zero set has {removed} elements, expected {expected}"
        )));
    }
    let reps = mu_m_orbit_reps(&roots, m, &big)?;
    let residues = reps
        .iter()
        .map(|r| {
            let tr = &traces.iter().find(|(x, _)| x == r).unwrap().1;
            big.as_prime(&big.neg(tr)).unwrap()
        })
        .collect();
    ResidueData::new(q, &base, &big, reps, residues)
}

/// `f_8 = t^8 + t^6 + 1` over `F_3`.
pub fn f8() -> Poly {
    Poly::from_ints(&make_field(3, 1).unwrap(), &[1, 0, 0, 0, 0, 0, 1, 0, 1])
}

/// `f_10 = 2 t^10 + t^8 + t^6 + 1` over `F_3`.
pub fn f10() -> Poly {
    Poly::from_ints(&make_field(3, 1).unwrap(), &[1, 0, 0, 0, 0, 0, 1, 0, 1, 0, 2])
}

/// Certificates for `(3,2,1,2)`, `(3,2,1,0)`, `(3,2,5,8)` and `(3,2,5,10)`,
/// each verified before returning.
pub fn d9_witnesses() -> Result<Vec<Certificate>> {
    let certs = vec![
        certify_residue_data(&construct_small(3, 2)?)?,
        certify_residue_data(&construct_small(3, 0)?)?,
        certify(&Quadruple::new(3, 2, 5, 8)?, &f8())?,
        certify(&Quadruple::new(3, 2, 5, 10)?, &f10())?,
    ];
    for c in &certs {
        if !c.passes(true) || !c.to_record().verify()? {
            return Err(Error::InvalidConstruction(format!(
                "witness for {:?} failed verification",
                c.quadruple
            )));
        }
    }
    Ok(certs)
}

/// A row order of `(x_j^(q-1))` in which every column is a geometric
/// progression with ratio `x_j^(mp)`, if there is one.
pub fn geometric_row_order(rd: &ResidueData) -> Option<Vec<usize>> {
    let f = &rd.splitting;
    let a = crate::criterion::reduced_isolation_matrix(rd);
    let ratio: Vec<Fe> = rd
        .reps
        .iter()
        .map(|x| f.pow(x, (rd.quadruple.m * rd.quadruple.p) as u128))
        .collect();
    let next_row = |row: &Vec<Fe>| -> Vec<Fe> {
        row.iter().zip(&ratio).map(|(v, r)| f.mul(v, r)).collect()
    };
    'start: for s in 0..a.len() {
        let mut order = vec![s];
        let mut cur = a[s].clone();
        while order.len() < a.len() {
            let want = next_row(&cur);
            match (0..a.len()).find(|i| !order.contains(i) && a[*i] == want) {
                Some(i) => {
                    order.push(i);
                    cur = want;
                }
                None => continue 'start,
            }
        }
        return Some(order);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::{equal_rows, power_sum_check, reconstruct_f, reduced_isolation_matrix};

    #[test]
    fn small_examples() {
        let rd = construct_small(3, 2).unwrap();
        assert_eq!(rd.reps, vec![rd.splitting.one()]);
        assert_eq!(rd.residues, vec![2]);
        assert!(construct_small(7, 0).is_err());
        let empty = construct_small(3, 0).unwrap();
        assert!(empty.reps.is_empty());

        let rd5 = construct_small(5, 4).unwrap();
        assert_eq!(rd5.reps.len(), 2);
        assert!(power_sum_check(&rd5));
        let c = certify_residue_data(&rd5).unwrap();
        assert!(c.passes(true));
    }

    #[test]
    fn small_family_is_isolated() {
        for p in [3u64, 5, 7, 11, 13] {
            for n1 in [p - 1, p - 3] {
                let rd = construct_small(p, n1).unwrap();
                assert!(power_sum_check(&rd), "p={p} n1={n1}");
                assert!(isolation_check(&rd).isolated, "p={p} n1={n1}");
            }
        }
    }

    #[test]
    fn trace_examples() {
        let rd = construct_trace(3, 2, 1).unwrap();
        assert_eq!(rd.residues, vec![2]);
        assert_eq!(rd.reps, vec![rd.splitting.one()]);

        let rd = construct_trace(5, 2, 1).unwrap();
        let f = &rd.splitting;
        assert_eq!(rd.reps, vec![f.one(), f.from_u64(2)]);
        assert_eq!(rd.residues, vec![4, 2]);
        assert!(power_sum_check(&rd));

        let rd = construct_trace(3, 2, 5).unwrap();
        assert_eq!(rd.splitting_degree(), 4);
        assert_eq!(rd.reps.len(), 5);
        assert!(power_sum_check(&rd));
        assert!(!isolation_check(&rd).isolated);
        assert!(!equal_rows(&reduced_isolation_matrix(&rd)).is_empty());
        let f = reconstruct_f(&rd).unwrap();
        assert_eq!(f.degree(), Some(10));
    }

    #[test]
    fn trace_isolation_dichotomy() {
        let mut checked = 0;
        for p in [3u64, 5, 7, 11, 13] {
            for m in (2..p).filter(|m| (p - 1) % m == 0) {
                for u_tilde in (1..=3 * p).filter(|ut| (ut + 1) % m == 0) {
                    if trace_degree(p, m, u_tilde).unwrap() > 8 {
                        continue;
                    }
                    let rd = construct_trace(p, m, u_tilde).unwrap();
                    assert!(power_sum_check(&rd), "({p},{m},{u_tilde})");
                    let q = rd.quadruple;
                    let special = u_tilde == (m - 1) * p.pow(q.nu());
                    let iso = isolation_check(&rd);
                    assert_eq!(iso.isolated, special, "({p},{m},{u_tilde})");
                    let reduced = reduced_isolation_matrix(&rd);
                    if special {
                        assert!(geometric_row_order(&rd).is_some(), "({p},{m},{u_tilde})");
                    } else {
                        assert!(!equal_rows(&reduced).is_empty(), "({p},{m},{u_tilde})");
                    }
                    checked += 1;
                }
            }
        }
        assert!(checked > 10);
    }

    #[test]
    fn d9_all_pass() {
        let certs = d9_witnesses().unwrap();
        assert_eq!(certs.len(), 4);
        assert_eq!(certs[2].f, f8());
        assert_eq!(certs[0].f, Poly::from_ints(&make_field(3, 1).unwrap(), &[2, 0, 1]));
        assert_eq!(certs[1].f, Poly::from_ints(&make_field(3, 1).unwrap(), &[2]));
        let empty = isolation_check(certs[1].residue_data.as_ref().unwrap());
        assert!(empty.matrix.is_empty() && empty.isolated);
    }
}
