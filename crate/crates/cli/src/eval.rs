//! Builds groups and turns engine results into report structs.

use fitheight_core::bounds::{check_all, scenario};
use fitheight_core::constructors::{build, BuildConfig, GroupExpr, SylowBasis};
use fitheight_core::invariants::{
    delta, derived_length, derived_report, fitting_height, fitting_subgroup, is_nilpotent, lower_central_report,
    lower_nilpotent_report, minimal_normal_subgroup, pi_length, pi_series, upper_fitting_series,
};
use fitheight_core::pc::{PcGroup, Subgroup, DEFAULT_COSET_BUDGET};
use fitheight_core::towers::{counting_lemma, search_max, stats, SearchLimits, SearchMode};
use fitheight_core::Error;
use num_bigint::BigUint;

use crate::report::{BoundsJson, CensusRecord, InvariantsJson, PrimeJson, SeriesJson, TowersJson, SCHEMA_VERSION};

/// Orders up to this size get an exact tower search in census records.
pub const EXACT_TOWER_ORDER: u64 = 100_000;

#[derive(Clone, Debug, Default)]
pub struct Limits {
    /// Coset budget for orbit computations; `None` keeps the engine defaults.
    pub budget: Option<usize>,
    pub max_order: Option<u64>,
}

impl Limits {
    pub fn cosets(&self) -> usize {
        self.budget.unwrap_or(DEFAULT_COSET_BUDGET)
    }

    fn search(&self) -> SearchLimits {
        let mut l = SearchLimits::default();
        if let Some(b) = self.budget {
            l.cosets = b;
        }
        l
    }
}

pub struct Built {
    pub expr: String,
    pub g: PcGroup,
    pub basis: SylowBasis,
}

impl Built {
    pub fn order(&self) -> String {
        self.g.order().to_string()
    }
}

/// Refuses expressions over `max_order` before constructing anything.
pub fn construct(e: &GroupExpr, limits: &Limits) -> Result<Built, Error> {
    if let Some(max) = limits.max_order {
        let ok = e.predicted_order().is_some_and(|o| o <= BigUint::from(max));
        if !ok {
            return Err(Error::BudgetExceeded {
                what: "group order",
                size: e.predicted_order().map_or_else(|| "more than 2^(2^24)".into(), |o| o.to_string()),
                limit: max.to_string(),
            });
        }
    }
    let (g, basis) = build(e, &BuildConfig::default())?;
    Ok(Built { expr: e.to_string(), g, basis })
}

pub fn invariants(b: &Built, sigma: Option<&[u32]>, limits: &Limits) -> Result<InvariantsJson, Error> {
    let (g, basis, cosets) = (&b.g, &b.basis, limits.cosets());
    let whole = Subgroup::whole(g);
    let mut prime_lengths = Vec::new();
    for (p, s) in basis.iter() {
        prime_lengths.push(PrimeJson {
            prime: p,
            length: pi_length(g, basis, &[p], cosets)?,
            sylow_derived_length: derived_length(g, s),
        });
    }
    let mut series = vec![
        derived_report(g, &whole),
        lower_central_report(g, &whole),
        lower_nilpotent_report(g, &whole),
        upper_fitting_series(g, basis, cosets)?,
    ];
    let pi = match sigma {
        Some(s) => {
            let r = pi_series(g, basis, s, cosets)?;
            let len = r.length;
            series.push(r);
            Some(len)
        }
        None => None,
    };
    let minimal =
        if g.is_trivial() { None } else { Some(minimal_normal_subgroup(g, basis, cosets)?.order().to_string()) };
    Ok(InvariantsJson {
        schema_version: SCHEMA_VERSION,
        engine_version: fitheight_core::VERSION.to_string(),
        expr: b.expr.clone(),
        order: b.order(),
        generators: g.len(),
        primes: g.primes(),
        fitting_height: fitting_height(g, &whole),
        derived_length: derived_length(g, &whole),
        delta: delta(g, basis, &whole)?,
        nilpotent: is_nilpotent(g, &whole),
        fitting_order: fitting_subgroup(g, basis, cosets)?.order().to_string(),
        minimal_normal_order: minimal,
        prime_lengths,
        sigma: sigma.map(|s| s.to_vec()),
        pi_length: pi,
        series: series.iter().map(SeriesJson::from).collect(),
    })
}

pub fn bounds(b: &Built, sigma: &[u32], limits: &Limits) -> Result<BoundsJson, Error> {
    let f = scenario(&b.g, &b.basis, sigma)?;
    let r = check_all(&b.g, &b.basis, &f, limits.cosets())?;
    Ok(BoundsJson::new(b.expr.clone(), b.order(), f.is_proper(), &r))
}

pub fn towers(b: &Built, mode: SearchMode, sigma: Option<&[u32]>, limits: &Limits) -> Result<TowersJson, Error> {
    let s = search_max(&b.g, &b.basis, mode, &limits.search())?;
    let name = match mode {
        SearchMode::Exact => "exact",
        SearchMode::Budgeted => "budgeted",
    };
    let mut out = TowersJson::new(b.expr.clone(), b.order(), name, &s);
    if let Some(sigma) = sigma {
        let st = stats(&b.g, &s.tower, sigma);
        out.sigma = Some(st.sigma);
        out.nu = Some(st.nu);
        out.beta = Some(st.beta);
    }
    Ok(out)
}

/// Bounds for one orientation, plus an exact tower and the counting lemma
/// for groups small enough to search.
pub fn record(b: &Built, sigma: &[u32], limits: &Limits) -> Result<CensusRecord, Error> {
    let bounds = bounds(b, sigma, limits)?;
    let (mut tower_length, mut tower_certified, mut counting) = (None, None, None);
    if b.g.order() <= &BigUint::from(EXACT_TOWER_ORDER) {
        match search_max(&b.g, &b.basis, SearchMode::Exact, &limits.search()) {
            Ok(s) => {
                let c = counting_lemma(&b.g, &b.basis, &s.tower, sigma, limits.cosets())?;
                tower_length = Some(s.tower.len());
                tower_certified = Some(s.certified);
                counting = Some(c.holds);
            }
            Err(Error::BudgetExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(CensusRecord {
        expr: b.expr.clone(),
        order: b.order(),
        sigma: sigma.to_vec(),
        engine_version: fitheight_core::VERSION.to_string(),
        bounds,
        tower_length,
        tower_certified,
        counting_lemma: counting,
    })
}

impl CensusRecord {
    /// The record breaks a proved statement: a bound, the counting lemma, or the
    /// tower characterisation of h(G).
    pub fn failed(&self) -> bool {
        self.bounds.violations > 0 || self.counting_lemma == Some(false) || self.tower_certified == Some(false)
    }
}
