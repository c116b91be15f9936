//! Exhaustive search for polynomials satisfying the criterion.
//!
//! Candidates `f = sum_{i=0}^{d} c_i t^(im)` (`d = N_1/m`, `c_0, c_d != 0`)
//! are numbered in mixed radix with `c_0` as the least significant digit;
//! each digit is an element index in the field's deterministic order. The
//! least passing index wins regardless of the thread schedule.

use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;

use crate::cartier::{ddc_check, Quadruple};
use crate::construct::{construct_small, construct_trace_capped, trace_degree};
use crate::criterion::{certify_residue_data, Certificate, CertificateRecord, DEFAULT_DEGREE_CAP};
use crate::error::{Error, Result};
use crate::gf::{make_field, Field};
use crate::planner::quadruples_for_group;
use crate::poly::Poly;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub require_isolated: bool,
    /// Largest field degree `k` accepted for the coefficient field.
    pub field_degree_cap: usize,
    /// Cap on splitting and construction fields.
    pub splitting_degree_cap: usize,
    pub max_candidates: Option<u128>,
    pub time_limit: Option<Duration>,
    /// Candidates per parallel batch; budgets are checked between batches.
    pub chunk_size: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            require_isolated: false,
            field_degree_cap: 8,
            splitting_degree_cap: DEFAULT_DEGREE_CAP,
            max_candidates: None,
            time_limit: None,
            chunk_size: 4096,
        }
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Found(Box<Certificate>),
    /// Every candidate over the field was rejected. This says nothing about
    /// larger fields.
    NotFound,
    /// The budget ran out first.
    Aborted(String),
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub quadruple: Quadruple,
    pub field_degree: usize,
    pub outcome: Outcome,
    /// Brute-force candidates examined (0 when a closed form was used).
    pub examined: u128,
    pub total: u128,
    pub source: &'static str,
}

impl SearchReport {
    pub fn found(&self) -> bool {
        matches!(self.outcome, Outcome::Found(_))
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match &self.outcome {
            Outcome::Found(c) => Some(c),
            _ => None,
        }
    }

    pub fn to_record(&self) -> SearchRecord {
        let (status, certificate, note) = match &self.outcome {
            Outcome::Found(c) => ("found", Some(c.to_record()), None),
            Outcome::NotFound => (
                "not_found",
                None,
                Some("search space exhausted; larger fields are not ruled out".to_string()),
            ),
            Outcome::Aborted(why) => ("aborted", None, Some(why.clone())),
        };
        SearchRecord {
            quadruple: self.quadruple,
            field_degree: self.field_degree,
            status,
            source: self.source,
            examined: self.examined.to_string(),
            total: self.total.to_string(),
            certificate,
            note,
        }
    }
}

/// One JSON-lines record. Counts are strings since they may exceed 2^64.
#[derive(Clone, Debug, Serialize)]
pub struct SearchRecord {
    pub quadruple: Quadruple,
    pub field_degree: usize,
    pub status: &'static str,
    pub source: &'static str,
    pub examined: String,
    pub total: String,
    pub certificate: Option<CertificateRecord>,
    pub note: Option<String>,
}

/// Number of candidates for `q` over a field with `order` elements.
pub fn candidate_count(q: &Quadruple, order: u128) -> Option<u128> {
    let d = (q.n1 / q.m) as u32;
    if d == 0 {
        return Some(order - 1);
    }
    (order - 1)
        .checked_mul(order - 1)?
        .checked_mul(order.checked_pow(d - 1)?)
}

/// The candidate with the given index.
pub fn candidate(q: &Quadruple, field: &Field, mut index: u128) -> Poly {
    let d = (q.n1 / q.m) as usize;
    let order = field.order();
    let m = q.m as usize;
    let mut coeffs = vec![field.zero(); d * m + 1];
    for i in 0..=d {
        let nonzero = i == 0 || i == d;
        let radix = if nonzero { order - 1 } else { order };
        let digit = index % radix;
        index /= radix;
        coeffs[i * m] = field.element(if nonzero { digit + 1 } else { digit });
    }
    Poly::new(field, coeffs)
}

fn passes(q: &Quadruple, f: &Poly, cfg: &SearchConfig) -> Option<Certificate> {
    // the Cartier identity is cheap and necessary; certify only survivors
    if !ddc_check(q, f).ok()? {
        return None;
    }
    let c = crate::criterion::certify_capped(q, f, cfg.splitting_degree_cap).ok()?;
    c.passes(cfg.require_isolated).then_some(c)
}

/// First passing candidate over `F_{p^k}` in index order.
pub fn brute_search(q: &Quadruple, k: usize, cfg: &SearchConfig) -> Result<SearchReport> {
    if k == 0 || k > cfg.field_degree_cap {
        return Err(Error::ExtensionCapExceeded {
            needed: k,
            cap: cfg.field_degree_cap,
        });
    }
    let field = make_field(q.p, k)?;
    let total = candidate_count(q, field.order())
        .ok_or(Error::FieldTooLarge { p: q.p, k })?;
    let start = Instant::now();
    let mut examined: u128 = 0;
    let report = |outcome, examined| SearchReport {
        quadruple: *q,
        field_degree: k,
        outcome,
        examined,
        total,
        source: "brute",
    };
    while examined < total {
        if let Some(limit) = cfg.max_candidates {
            if examined >= limit {
                return Ok(report(
                    Outcome::Aborted(format!("candidate budget of {limit} exhausted")),
                    examined,
                ));
            }
        }
        if let Some(limit) = cfg.time_limit {
            if start.elapsed() >= limit {
                return Ok(report(
                    Outcome::Aborted(format!("time budget of {limit:?} exhausted")),
                    examined,
                ));
            }
        }
        let mut len = (total - examined).min(cfg.chunk_size.max(1) as u128);
        if let Some(limit) = cfg.max_candidates {
            len = len.min(limit - examined);
        }
        let base = examined;
        let hit = (0..len as u64)
            .into_par_iter()
            .map(|i| base + i as u128)
            .find_map_first(|idx| passes(q, &candidate(q, &field, idx), cfg).map(|c| (idx, c)));
        if let Some((idx, c)) = hit {
            return Ok(report(Outcome::Found(Box::new(c)), idx + 1));
        }
        examined += len;
    }
    Ok(report(Outcome::NotFound, examined))
}

fn fast_path(q: &Quadruple, cfg: &SearchConfig) -> Option<(Certificate, &'static str)> {
    let try_cert = |rd| -> Option<Certificate> {
        let c = certify_residue_data(&rd).ok()?;
        c.passes(cfg.require_isolated).then_some(c)
    };
    if q.m == 2 && q.u_tilde == 1 && (q.n1 + 1 == q.p || q.n1 + 3 == q.p) {
        if let Some(c) = construct_small(q.p, q.n1).ok().and_then(try_cert) {
            return Some((c, "construct_small"));
        }
    }
    let isolated_shape = q.u_tilde == (q.m - 1) * q.p.pow(q.nu());
    if q.n1 == (q.p - 1) * q.u_tilde && (isolated_shape || !cfg.require_isolated) {
        let fits = trace_degree(q.p, q.m, q.u_tilde)
            .is_ok_and(|d| d <= cfg.splitting_degree_cap);
        if fits {
            if let Some(c) = construct_trace_capped(q.p, q.m, q.u_tilde, cfg.splitting_degree_cap)
                .ok()
                .and_then(try_cert)
            {
                return Some((c, "construct_trace"));
            }
        }
    }
    None
}

#[derive(Clone, Debug)]
pub struct GroupReport {
    pub p: u64,
    pub m: u64,
    pub n: u32,
    pub reports: Vec<SearchReport>,
}

impl GroupReport {
    /// Every quadruple of the group has a witness.
    pub fn complete(&self) -> bool {
        self.reports.iter().all(SearchReport::found)
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            p: self.p,
            m: self.m,
            n: self.n,
            quadruples: self.reports.len(),
            found: self.reports.iter().filter(|r| r.found()).count(),
            complete: self.complete(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub p: u64,
    pub m: u64,
    pub n: u32,
    pub quadruples: usize,
    pub found: usize,
    pub complete: bool,
}

/// Closed forms first, then brute force over `F_{p^k}`, for every quadruple
/// of the group `Z/p^n ⋊ Z/m`.
pub fn search_group(p: u64, m: u64, n: u32, k: usize, cfg: &SearchConfig) -> Result<GroupReport> {
    let mut reports = Vec::new();
    for q in quadruples_for_group(p, m, n)? {
        if let Some((c, source)) = fast_path(&q, cfg) {
            reports.push(SearchReport {
                quadruple: q,
                field_degree: c.field.k(),
                outcome: Outcome::Found(Box::new(c)),
                examined: 0,
                total: 0,
                source,
            });
            continue;
        }
        reports.push(brute_search(&q, k, cfg)?);
    }
    Ok(GroupReport { p, m, n, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::criterion::certify;

    fn f3() -> Field {
        make_field(3, 1).unwrap()
    }

    #[test]
    fn enumeration_covers_the_shape() {
        let q = Quadruple::new(3, 2, 1, 2).unwrap();
        let f = f3();
        assert_eq!(candidate_count(&q, 3), Some(4));
        let all: Vec<Poly> = (0..4).map(|i| candidate(&q, &f, i)).collect();
        assert_eq!(all[0], Poly::from_ints(&f, &[1, 0, 1]));
        assert_eq!(all[1], Poly::from_ints(&f, &[2, 0, 1]));
        assert_eq!(all[3], Poly::from_ints(&f, &[2, 0, 2]));
        let q0 = Quadruple::new(3, 2, 1, 0).unwrap();
        assert_eq!(candidate_count(&q0, 3), Some(2));
        assert_eq!(candidate(&q0, &f, 1), Poly::from_ints(&f, &[2]));
    }

    #[test]
    fn small_searches() {
        let cfg = SearchConfig::default();
        let r = brute_search(&Quadruple::new(3, 2, 1, 2).unwrap(), 1, &cfg).unwrap();
        assert_eq!(r.certificate().unwrap().f, Poly::from_ints(&f3(), &[2, 0, 1]));
        let r = brute_search(&Quadruple::new(3, 2, 1, 0).unwrap(), 1, &cfg).unwrap();
        assert_eq!(r.certificate().unwrap().f, Poly::from_ints(&f3(), &[2]));
    }

    #[test]
    fn unique_witness_for_t2() {
        // exhaustive oracle: exactly one of the four candidates passes
        let q = Quadruple::new(3, 2, 1, 2).unwrap();
        let f = f3();
        let passing: Vec<Poly> = (0..4)
            .map(|i| candidate(&q, &f, i))
            .filter(|c| certify(&q, c).unwrap().passes(false))
            .collect();
        assert_eq!(passing, vec![Poly::from_ints(&f, &[2, 0, 1])]);
    }

    #[test]
    fn budget_aborts_cleanly() {
        let cfg = SearchConfig {
            max_candidates: Some(3),
            chunk_size: 2,
            ..SearchConfig::default()
        };
        // the first three candidates for (3,2,5,8) over F_3 all fail
        let r = brute_search(&Quadruple::new(3, 2, 5, 8).unwrap(), 1, &cfg).unwrap();
        assert!(matches!(r.outcome, Outcome::Aborted(_)), "{:?}", r.outcome);
        assert_eq!(r.examined, 3);
        assert_eq!(r.total, 108);
        assert_eq!(
            brute_search(&Quadruple::new(3, 2, 1, 2).unwrap(), 9, &SearchConfig::default())
                .unwrap_err(),
            Error::ExtensionCapExceeded { needed: 9, cap: 8 }
        );
    }

    #[test]
    fn result_is_independent_of_thread_count() {
        let q = Quadruple::new(3, 2, 5, 8).unwrap();
        let cfg = SearchConfig {
            require_isolated: true,
            chunk_size: 7,
            ..SearchConfig::default()
        };
        let run = |threads| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap()
                .install(|| brute_search(&q, 1, &cfg).unwrap())
        };
        let a = run(1);
        let b = run(4);
        let ca = a.certificate().unwrap().to_record();
        assert_eq!(ca, b.certificate().unwrap().to_record());
        assert!(ca.verify().unwrap());
        // the winner is the least passing index
        let field = f3();
        let first = (0..108)
            .find(|&i| certify(&q, &candidate(&q, &field, i)).unwrap().passes(true))
            .unwrap();
        assert_eq!(a.certificate().unwrap().f, candidate(&q, &field, first));
    }

    #[test]
    fn d9_group_complete() {
        let cfg = SearchConfig {
            require_isolated: true,
            ..SearchConfig::default()
        };
        let g = search_group(3, 2, 2, 1, &cfg).unwrap();
        assert_eq!(g.reports.len(), 4);
        assert!(g.complete());
    }
}
