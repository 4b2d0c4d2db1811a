//! Seeded census over random direct and wreath nestings of small cyclic
//! groups of prime order.

use std::collections::BTreeSet;

use fitheight_core::constructors::{cyc, dir, wr, GroupExpr};
use fitheight_core::Error;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cache::{Cache, Key};
use crate::eval::{self, Limits};
use crate::report::{CensusJson, CensusRecord, SlackJson, SCHEMA_VERSION};

pub const LEAF_PRIMES: [u32; 4] = [2, 3, 5, 7];
pub const DEFAULT_MAX_ORDER: u64 = 1_000_000;
const MAX_DEPTH: u32 = 3;

fn leaf_primes(e: &GroupExpr, out: &mut BTreeSet<u32>) {
    match e {
        GroupExpr::Cyc(n) => {
            out.insert(*n as u32);
        }
        GroupExpr::Dir(a, b) | GroupExpr::Wr(a, b) => {
            leaf_primes(a, out);
            leaf_primes(b, out);
        }
        _ => unreachable!("census expressions only nest C, D and W"),
    }
}

fn random_tree<R: Rng>(rng: &mut R, depth: u32) -> GroupExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return cyc(*LEAF_PRIMES.choose(rng).expect("non-empty") as u64);
    }
    let a = random_tree(rng, depth - 1);
    let b = random_tree(rng, depth - 1);
    if rng.gen_bool(0.5) {
        dir(a, b)
    } else {
        wr(a, b)
    }
}

/// `|G|` when it is at most `max`, computed without ever exceeding `max`.
pub fn order_at_most(e: &GroupExpr, max: u64) -> Option<u64> {
    let o = match e {
        GroupExpr::Cyc(n) => *n,
        GroupExpr::Dir(a, b) => order_at_most(a, max)?.checked_mul(order_at_most(b, max)?)?,
        GroupExpr::Wr(a, b) => {
            let (oa, ob) = (order_at_most(a, max)?, order_at_most(b, max)?);
            oa.checked_pow(u32::try_from(ob).ok()?)?.checked_mul(ob)?
        }
        _ => return e.predicted_order()?.try_into().ok().filter(|&o| o <= max),
    };
    (o <= max).then_some(o)
}

/// One scenario: an expression and σ; the census also runs the complement.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Draw {
    pub expr: GroupExpr,
    pub sigma: Vec<u32>,
    pub sigma_prime: Vec<u32>,
}

/// `count` distinct expressions of order at most `max_order` with at least
/// two prime divisors, each with a random non-empty proper σ.
pub fn draw(seed: u64, count: usize, max_order: u64) -> Result<Vec<Draw>, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::InvalidParameter(format!(
                "could not draw {count} distinct expressions of order at most {max_order}"
            )));
        }
        let e = random_tree(&mut rng, MAX_DEPTH);
        if order_at_most(&e, max_order).is_none() {
            continue;
        }
        let mut primes = BTreeSet::new();
        leaf_primes(&e, &mut primes);
        if primes.len() < 2 || !seen.insert(e.to_string()) {
            continue;
        }
        let primes: Vec<u32> = primes.into_iter().collect();
        let (sigma, sigma_prime) = loop {
            let (s, t): (Vec<u32>, Vec<u32>) = primes.iter().partition(|_| rng.gen_bool(0.5));
            if !s.is_empty() && !t.is_empty() {
                break (s, t);
            }
        };
        out.push(Draw { expr: e, sigma, sigma_prime });
    }
    Ok(out)
}

fn evaluate(d: &Draw, limits: &Limits, cache: Option<&Cache>) -> Result<Vec<CensusRecord>, Error> {
    let expr = d.expr.to_string();
    let mut out = Vec::new();
    let mut built = None;
    for sigma in [&d.sigma, &d.sigma_prime] {
        let key = Key { expr: expr.clone(), sigma: sigma.clone(), engine_version: fitheight_core::VERSION.to_string() };
        if let Some(r) = cache.and_then(|c| c.get(&key)) {
            out.push(r.clone());
            continue;
        }
        if built.is_none() {
            built = Some(eval::construct(&d.expr, &Limits { max_order: None, ..limits.clone() })?);
        }
        let r = eval::record(built.as_ref().expect("built above"), sigma, limits)?;
        if let Some(c) = cache {
            if let Err(e) = c.append(&r) {
                eprintln!("warning: cache write failed: {e}");
            }
        }
        out.push(r);
    }
    Ok(out)
}

/// Runs every draw on the rayon pool. Records come back in draw order.
pub fn run(seed: u64, count: usize, limits: &Limits, cache: Option<&Cache>) -> Result<CensusJson, Error> {
    let max_order = limits.max_order.unwrap_or(DEFAULT_MAX_ORDER);
    let draws = draw(seed, count, max_order)?;
    let per_draw: Vec<Vec<CensusRecord>> =
        draws.par_iter().map(|d| evaluate(d, limits, cache)).collect::<Result<_, _>>()?;
    let records: Vec<CensusRecord> = per_draw.into_iter().flatten().collect();
    Ok(summarise(seed, count, max_order, records))
}

pub fn summarise(seed: u64, count: usize, max_order: u64, records: Vec<CensusRecord>) -> CensusJson {
    let mut summary: Vec<SlackJson> = Vec::new();
    for r in &records {
        for row in &r.bounds.rows {
            let s = match summary.iter_mut().find(|s| s.name == row.name) {
                Some(s) => s,
                None => {
                    summary.push(SlackJson { name: row.name.clone(), applicable: 0, min_slack: None, tight: 0 });
                    summary.last_mut().expect("pushed")
                }
            };
            if row.applicable {
                s.applicable += 1;
                s.min_slack = Some(s.min_slack.map_or(row.slack, |m| m.min(row.slack)));
                if row.slack == 0 {
                    s.tight += 1;
                }
            }
        }
    }
    CensusJson {
        schema_version: SCHEMA_VERSION,
        engine_version: fitheight_core::VERSION.to_string(),
        seed,
        count,
        max_order,
        scenarios: records.len(),
        violations: records.iter().map(|r| r.bounds.violations).sum(),
        counting_failures: records.iter().filter(|r| r.counting_lemma == Some(false)).count(),
        uncertified_towers: records.iter().filter(|r| r.tower_certified == Some(false)).count(),
        summary,
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn draws_are_seeded_and_within_limits() {
        let a = draw(7, 30, 5000).unwrap();
        assert_eq!(a, draw(7, 30, 5000).unwrap());
        assert_ne!(a, draw(8, 30, 5000).unwrap());
        for d in &a {
            assert!(d.expr.predicted_order().unwrap() <= BigUint::from(5000u32));
            assert!(order_at_most(&d.expr, 5000).is_some());
            let mut all: Vec<u32> = d.sigma.iter().chain(&d.sigma_prime).copied().collect();
            all.sort_unstable();
            let mut primes = BTreeSet::new();
            leaf_primes(&d.expr, &mut primes);
            assert_eq!(all, primes.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn capped_order_matches_prediction() {
        let e = wr(dir(cyc(2), cyc(3)), cyc(5));
        assert_eq!(order_at_most(&e, 40_000), Some(6u64.pow(5) * 5));
        assert_eq!(order_at_most(&e, 38_879), None);
        assert_eq!(order_at_most(&wr(cyc(7), wr(cyc(7), cyc(7))), u64::MAX), None);
    }

    #[test]
    fn impossible_limit_is_an_error() {
        assert!(draw(1, 5, 5).is_err());
    }
}
