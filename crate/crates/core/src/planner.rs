//! From a group `Z/p^n ⋊ Z/m` and its jump profiles to the quadruples that
//! must satisfy the criterion, plus the radii bookkeeping for one step.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::cartier::Quadruple;
use crate::error::{Error, Result};
use crate::witt::JumpProfile;

fn check_group(p: u64, m: u64) -> Result<()> {
    crate::gf::check_char(p)?;
    if m < 2 || !(p - 1).is_multiple_of(m) {
        return Err(Error::MNotDividing { p, m });
    }
    Ok(())
}

/// The quadruple attached to consecutive breaks `u_prev < u_next`:
/// `N_1 = (p-1) u_prev` if `u_next = p u_prev`, else `(p-1) u_prev - m`.
pub fn quadruple_for_step(p: u64, m: u64, u_prev: u64, u_next: u64) -> Result<Quadruple> {
    check_group(p, m)?;
    for u in [u_prev, u_next] {
        if (u + 1) % m != 0 {
            return Err(Error::BadCongruence(u));
        }
    }
    let lo = p * u_prev;
    let hi = lo + m * p;
    if u_next < lo || u_next >= hi {
        return Err(Error::EssentialRamification { u_next, lo, hi });
    }
    let n1 = if u_next == lo {
        (p - 1) * u_prev
    } else {
        (p - 1) * u_prev - m
    };
    Quadruple::new(p, m, u_prev, n1)
}

/// Every `(p, m, u~, (p-1)u~)` and `(p, m, u~, (p-1)u~ - m)` with
/// `u~ = -1 mod m`, `p^(n-1) ∤ u~` and `u~ < m (p^(n-1) + ... + p)`.
/// Sorted by `u~`, then by `N_1` descending.
pub fn quadruples_for_group(p: u64, m: u64, n: u32) -> Result<Vec<Quadruple>> {
    check_group(p, m)?;
    if n <= 1 {
        return Ok(Vec::new());
    }
    let bound: u64 = m * (1..n).map(|i| p.pow(i)).sum::<u64>();
    let top = p.pow(n - 1);
    let mut out = Vec::new();
    for ut in (m - 1..bound).step_by(m as usize) {
        if ut % top == 0 {
            continue;
        }
        out.push(Quadruple::new(p, m, ut, (p - 1) * ut)?);
        out.push(Quadruple::new(p, m, ut, (p - 1) * ut - m)?);
    }
    out.dedup();
    Ok(out)
}

/// Jump profiles of length `n` with `u_1 = -1 mod m` and no essential
/// ramification, in lexicographic order.
pub fn profiles_for_group(p: u64, m: u64, n: u32) -> Result<Vec<JumpProfile>> {
    check_group(p, m)?;
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u64>> = vec![Vec::new()];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n as usize {
            out.push(JumpProfile::new(prefix, p)?);
            continue;
        }
        let lo = prefix.last().map_or(0, |&u| p * u);
        let hi = lo + m * p;
        let mut next: Vec<Vec<u64>> = (lo..hi)
            .filter(|&u| u > 0 && (u + 1) % m == 0 && (u % p != 0 || (u == lo && lo > 0)))
            .map(|u| {
                let mut v = prefix.clone();
                v.push(u);
                v
            })
            .collect();
        next.reverse();
        stack.extend(next);
    }
    Ok(out)
}

fn ratio(a: i128, b: i128) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Pair {
        num: i128,
        den: i128,
    }
    let pair = Pair {
        num: r.numer().to_i128().ok_or_else(|| serde::ser::Error::custom("overflow"))?,
        den: r.denom().to_i128().ok_or_else(|| serde::ser::Error::custom("overflow"))?,
    };
    pair.serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadiiReport {
    #[serde(serialize_with = "ser_rational")]
    pub r_crit: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub r_hub: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub r_n: BigRational,
    pub n2: u64,
    #[serde(serialize_with = "ser_rational")]
    pub delta_hub: BigRational,
}

/// `r_crit = 1/((p-1) u_prev)`, `r_n = 1/((p-1) u_next)`,
/// `N_2 = u_next - u_prev - N_1`, `r_hub = 1/N_2 - N_1/((p-1) u_prev N_2)`
/// (zero when `N_2 = 0`) and `delta_hub = p/(p-1) - (N_1 + u_prev)(r_crit - r_hub)`.
pub fn lifting_radii(p: u64, m: u64, u_prev: u64, u_next: u64, n1: u64) -> Result<RadiiReport> {
    let q = quadruple_for_step(p, m, u_prev, u_next)?;
    if q.n1 != n1 {
        return Err(Error::InvalidQuadruple(format!(
            "N1 = {n1} does not match the step's N1 = {}",
            q.n1
        )));
    }
    let (p, up, un, n1) = (p as i128, u_prev as i128, u_next as i128, n1 as i128);
    let n2 = un - up - n1;
    let r_crit = ratio(1, (p - 1) * up);
    let r_n = ratio(1, (p - 1) * un);
    let r_hub = if n2 == 0 {
        BigRational::zero()
    } else {
        ratio(1, n2) - ratio(n1, (p - 1) * up * n2)
    };
    let delta_hub = ratio(p, p - 1) - ratio(n1 + up, 1) * (&r_crit - &r_hub);
    Ok(RadiiReport {
        r_crit,
        r_hub,
        r_n,
        n2: n2 as u64,
        delta_hub,
    })
}

/// One step `(u_prev, u_next)` of some profile with its quadruple and radii.
#[derive(Clone, Debug, Serialize)]
pub struct StepPlan {
    pub u_prev: u64,
    pub u_next: u64,
    pub quadruple: Quadruple,
    pub radii: RadiiReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupPlan {
    pub p: u64,
    pub m: u64,
    pub n: u32,
    pub quadruples: Vec<Quadruple>,
    pub profiles: Vec<JumpProfile>,
    pub steps: Vec<StepPlan>,
}

/// Quadruples, profiles, and the distinct steps occurring in the profiles.
pub fn plan_group(p: u64, m: u64, n: u32) -> Result<GroupPlan> {
    let quadruples = quadruples_for_group(p, m, n)?;
    let profiles = profiles_for_group(p, m, n)?;
    let mut pairs: Vec<(u64, u64)> = profiles
        .iter()
        .flat_map(|j| j.breaks.windows(2).map(|w| (w[0], w[1])).collect::<Vec<_>>())
        .collect();
    pairs.sort_unstable();
    pairs.dedup();
    let steps = pairs
        .into_iter()
        .map(|(a, b)| {
            let quadruple = quadruple_for_step(p, m, a, b)?;
            let radii = lifting_radii(p, m, a, b, quadruple.n1)?;
            Ok(StepPlan {
                u_prev: a,
                u_next: b,
                quadruple,
                radii,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GroupPlan {
        p,
        m,
        n,
        quadruples,
        profiles,
        steps,
    })
}
