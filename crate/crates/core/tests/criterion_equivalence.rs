//! The Cartier identity agrees with the power-sum system on every
//! shape-valid polynomial of small quadruples.

use ddcrit::cartier::{ddc_check, Quadruple};
use ddcrit::criterion::{
    determinant, isolation_check, power_sum_check, power_sums, reconstruct_f, reduced_isolation_matrix,
    residue_data_capped,
};
use ddcrit::gf::{make_field, Field};
use ddcrit::poly::Poly;

/// All `c_0 + c_1 t^m + ... + c_d t^(dm)` with `c_0, c_d` nonzero.
fn all_shaped(q: &Quadruple, f: &Field) -> Vec<Poly> {
    let d = (q.n1 / q.m) as usize;
    let elems: Vec<_> = f.elements().collect();
    let mut out = vec![vec![]];
    for i in 0..=d {
        let mut next = Vec::new();
        for prefix in &out {
            for e in &elems {
                if (i == 0 || i == d) && e.is_zero() {
                    continue;
                }
                let mut v: Vec<_> = prefix.clone();
                v.push(e.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|cs| {
            let mut coeffs = vec![f.zero(); d * q.m as usize + 1];
            for (i, c) in cs.into_iter().enumerate() {
                coeffs[i * q.m as usize] = c;
            }
            Poly::new(f, coeffs)
        })
        .collect()
}

fn check_quadruple(q: Quadruple, k: usize) -> (usize, usize) {
    let f = make_field(q.p, k).unwrap();
    let mut passing = 0;
    let candidates = all_shaped(&q, &f);
    for c in &candidates {
        let ddc = ddc_check(&q, c).unwrap();
        let pipeline = c.is_squarefree()
            && match residue_data_capped(&q, c, 64) {
                // the power sums fix f only up to the scalar that
                // reconstruction pins down (visible when N_1 = 0)
                Ok(rd) => power_sum_check(&rd) && reconstruct_f(&rd).as_ref() == Ok(c),
                Err(ddcrit::Error::ResidueNotPrimeField) => false,
                Err(e) => panic!("unexpected {e:?} for {c:?}"),
            };
        assert_eq!(ddc, pipeline, "{q:?} {c:?}");
        if ddc {
            passing += 1;
            let rd = residue_data_capped(&q, c, 64).unwrap();
            assert_eq!(&reconstruct_f(&rd).unwrap(), c);
            // raising to the p-th power maps the q-equation to the pq-equation
            let big = &rd.splitting;
            for (e, s) in power_sums(&rd) {
                let direct = rd.reps.iter().zip(&rd.residues).fold(big.zero(), |acc, (x, a)| {
                    big.add(&acc, &big.mul(&big.from_u64(*a), &big.pow(x, (e * q.p) as u128)))
                });
                assert_eq!(direct, big.pow(&s, q.p as u128));
            }
            // nonzero row and column scalings do not change invertibility
            let iso = isolation_check(&rd);
            let reduced = reduced_isolation_matrix(&rd);
            if reduced.len() == rd.reps.len() {
                assert_eq!(iso.isolated, !determinant(big, &reduced).is_zero());
            }
        }
    }
    (candidates.len(), passing)
}

#[test]
fn exhaustive_over_f3() {
    assert_eq!(check_quadruple(Quadruple::new(3, 2, 1, 2).unwrap(), 1), (4, 1));
    assert_eq!(check_quadruple(Quadruple::new(3, 2, 1, 0).unwrap(), 1), (2, 1));
    let (n, hits) = check_quadruple(Quadruple::new(3, 2, 5, 8).unwrap(), 1);
    assert_eq!(n, 108);
    assert!(hits >= 1);
    let (n, _) = check_quadruple(Quadruple::new(3, 2, 5, 10).unwrap(), 1);
    assert_eq!(n, 324);
}

#[test]
fn exhaustive_over_f5_and_f9() {
    check_quadruple(Quadruple::new(5, 2, 1, 4).unwrap(), 1);
    check_quadruple(Quadruple::new(5, 2, 1, 2).unwrap(), 1);
    check_quadruple(Quadruple::new(5, 2, 3, 8).unwrap(), 1);
    check_quadruple(Quadruple::new(5, 4, 3, 8).unwrap(), 1);
    check_quadruple(Quadruple::new(3, 2, 1, 2).unwrap(), 2);
    check_quadruple(Quadruple::new(3, 2, 3, 4).unwrap(), 2);
}
