//! Towers: sequences `P_1, …, P_h` of non-trivial prime-power subgroups
//! where each `P_i` normalises every later entry, adjacent primes differ,
//! and every section `P̄_i = P_i / C_{P_i}(P̄_{i+1})` (with `P̄_h = P_h`) is
//! non-trivial. Indices in this module are 0-based.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::constructors::{hall, SylowBasis};
use crate::error::{Error, Result};
use crate::invariants::{fitting_height, lower_nilpotent_series, pi_length};
use crate::pc::{
    intersect_normal, normalizer, quotient, section_kernel, sylow_subgroup, PcGroup, Projection, Subgroup,
};

/// First violated tower condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TowerFailure {
    /// Entry is trivial or not a group of order a power of its prime.
    NotPrimePower { index: usize },
    /// Entry `i` does not normalise the later entry `j`.
    NotNormalizing { i: usize, j: usize },
    /// The section at `index` is trivial.
    TrivialSection { index: usize },
    /// Entries `index` and `index + 1` have the same prime.
    RepeatedPrime { index: usize },
}

impl TowerFailure {
    /// Number (1 to 4) of the violated condition, in the order listed in
    /// the module docs: prime-power, normalising, sections, primes.
    pub fn condition(&self) -> u8 {
        match self {
            TowerFailure::NotPrimePower { .. } => 1,
            TowerFailure::NotNormalizing { .. } => 2,
            TowerFailure::TrivialSection { .. } => 3,
            TowerFailure::RepeatedPrime { .. } => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    entries: Vec<(u32, Subgroup)>,
    bars: Vec<BigUint>,
    kernels: Vec<Subgroup>,
    validated: bool,
}

impl Tower {
    pub fn new(entries: Vec<(u32, Subgroup)>) -> Self {
        Tower { entries, bars: Vec::new(), kernels: Vec::new(), validated: false }
    }

    pub fn empty() -> Self {
        Tower { entries: Vec::new(), bars: Vec::new(), kernels: Vec::new(), validated: true }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u32, Subgroup)] {
        &self.entries
    }

    pub fn primes(&self) -> Vec<u32> {
        self.entries.iter().map(|(p, _)| *p).collect()
    }

    /// `|P̄_i|`, filled in by a successful validation.
    pub fn bars(&self) -> &[BigUint] {
        &self.bars
    }

    /// `C_{P_i}(P̄_{i+1})` (trivial for the last entry), filled in by a
    /// successful validation.
    pub fn kernels(&self) -> &[Subgroup] {
        &self.kernels
    }

    pub fn is_validated(&self) -> bool {
        self.validated
    }

    /// Checks the four conditions in order and, on success, records the
    /// section orders.
    pub fn validate(&mut self, g: &PcGroup, budget: usize) -> Result<Option<TowerFailure>> {
        self.validated = false;
        self.bars.clear();
        self.kernels.clear();
        let h = self.entries.len();
        for (i, (p, s)) in self.entries.iter().enumerate() {
            s.same_group(g)?;
            if s.is_trivial() || s.primes(g) != [*p] {
                return Ok(Some(TowerFailure::NotPrimePower { index: i }));
            }
        }
        for i in 0..h {
            for j in i + 1..h {
                if !self.entries[j].1.is_normalized_by(g, self.entries[i].1.igs()) {
                    return Ok(Some(TowerFailure::NotNormalizing { i, j }));
                }
            }
        }
        let mut kernels = vec![Subgroup::trivial(g); h];
        let mut bars = vec![BigUint::from(0u32); h];
        for i in (0..h).rev() {
            let p = &self.entries[i].1;
            if i + 1 < h {
                kernels[i] = section_kernel(g, p, &self.entries[i + 1].1, &kernels[i + 1], budget)?;
            }
            bars[i] = p.order() / kernels[i].order();
            if bars[i] < BigUint::from(2u32) {
                return Ok(Some(TowerFailure::TrivialSection { index: i }));
            }
        }
        for i in 0..h.saturating_sub(1) {
            if self.entries[i].0 == self.entries[i + 1].0 {
                return Ok(Some(TowerFailure::RepeatedPrime { index: i }));
            }
        }
        self.bars = bars;
        self.kernels = kernels;
        self.validated = true;
        Ok(None)
    }

    /// `T_j = P_{h-1} ⋯ P_j` for every `j`.
    pub fn tails(&self, g: &PcGroup) -> Vec<Subgroup> {
        let mut out = vec![Subgroup::trivial(g); self.entries.len()];
        let mut cur = Subgroup::trivial(g);
        for j in (0..self.entries.len()).rev() {
            cur = cur.join(g, &self.entries[j].1);
            out[j] = cur.clone();
        }
        out
    }
}

/// σ-statistics of a tower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockStats {
    pub sigma: Vec<u32>,
    /// Number of entries whose prime lies in σ.
    pub nu: usize,
    /// Number of maximal runs of such entries.
    pub beta: usize,
    /// The runs, as inclusive index ranges.
    pub blocks: Vec<(usize, usize)>,
    /// `|T_j|` for every `j`.
    pub tail_orders: Vec<BigUint>,
}

pub fn stats(g: &PcGroup, t: &Tower, sigma: &[u32]) -> BlockStats {
    let primes = t.primes();
    let mut blocks = Vec::new();
    let mut start = None;
    for (i, p) in primes.iter().enumerate() {
        match (sigma.contains(p), start) {
            (true, None) => start = Some(i),
            (false, Some(s)) => {
                blocks.push((s, i - 1));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        blocks.push((s, primes.len() - 1));
    }
    BlockStats {
        sigma: sigma.to_vec(),
        nu: blocks.iter().map(|(a, b)| b - a + 1).sum(),
        beta: blocks.len(),
        blocks,
        tail_orders: t.tails(g).iter().map(|s| s.order().clone()).collect(),
    }
}

/// Outcome of deleting a run of entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deletion {
    Tower(Tower),
    /// The entries flanking the deleted run share this prime.
    FlankingPrimes(u32),
}

/// Removes entries `j..=j+s`. Either the rest is a tower, or the removed run
/// is interior and flanked by equal primes; anything else is an error.
pub fn delete(g: &PcGroup, t: &Tower, j: usize, s: usize, budget: usize) -> Result<Deletion> {
    let end = j + s;
    if end >= t.len() {
        return Err(Error::IndexOutOfRange { index: end, len: t.len() });
    }
    if j > 0 && end + 1 < t.len() && t.entries[j - 1].0 == t.entries[end + 1].0 {
        return Ok(Deletion::FlankingPrimes(t.entries[j - 1].0));
    }
    let mut entries = t.entries[..j].to_vec();
    entries.extend_from_slice(&t.entries[end + 1..]);
    let mut out = Tower::new(entries);
    if let Some(f) = out.validate(g, budget)? {
        return Err(Error::Invariant(format!("deletion left a non-tower: {f:?}")));
    }
    Ok(Deletion::Tower(out))
}

/// Image of `(P_0, …, P_{h-2})` in `G/N`.
#[derive(Clone, Debug)]
pub struct ProjectedTower {
    pub projection: Projection,
    pub tower: Tower,
}

/// Projects all but the last entry into `G/N`, after checking
/// `P_j ∩ N ≤ C_{P_j}(P_{h-1})` for every `j < h-1`.
pub fn project_mod(g: &PcGroup, t: &Tower, n: &Subgroup, budget: usize) -> Result<ProjectedTower> {
    let proj = quotient(g, n)?;
    let h = t.len();
    if h == 0 {
        return Ok(ProjectedTower { projection: proj, tower: Tower::empty() });
    }
    let top = &t.entries[h - 1].1;
    let trivial = Subgroup::trivial(g);
    for (j, (_, p)) in t.entries[..h - 1].iter().enumerate() {
        let meet = intersect_normal(g, p, n, budget)?;
        if meet.is_trivial() {
            continue;
        }
        let c = section_kernel(g, p, top, &trivial, budget)?;
        if !meet.is_subgroup_of(g, &c) {
            return Err(Error::Precondition(format!("entry {j} meets N outside its centralizer of the last entry")));
        }
    }
    let entries = t.entries[..h - 1].iter().map(|(p, s)| (*p, proj.image_subgroup(s))).collect();
    let mut tower = Tower::new(entries);
    if let Some(f) = tower.validate(proj.target(), budget)? {
        return Err(Error::Invariant(format!("projected family is not a tower: {f:?}")));
    }
    Ok(ProjectedTower { projection: proj, tower })
}

/// Search mode for [`search_max`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchMode {
    /// Refuses groups above the order limit; aims for a tower of length h(G).
    Exact,
    /// Any size; stops after the node budget.
    Budgeted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_order: BigUint,
    pub max_nodes: usize,
    pub cosets: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { max_order: BigUint::from(100_000u32), max_nodes: 100_000, cosets: 100_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerSearch {
    pub tower: Tower,
    /// h(G), which no tower exceeds.
    pub upper_bound: usize,
    /// The tower reaches the upper bound.
    pub certified: bool,
    pub nodes: usize,
    /// Branches abandoned because a coset computation ran out of budget.
    pub skipped: usize,
}

struct Search<'a> {
    g: &'a PcGroup,
    limits: &'a SearchLimits,
    layers: Vec<Subgroup>,
    nodes: usize,
    skipped: usize,
    best: Vec<(u32, Subgroup, Subgroup)>,
}

/// Longest tower found by depth-first search from the last entry down.
///
/// The entry below a partial tail is a Sylow subgroup of a term of the lower
/// nilpotent series of `K`, or of `K ∩ R^j(G)`, where `K` is the
/// intersection of the normalisers of the tail. Branches where `h(K)` is
/// below the number of entries still missing are cut. Candidates are tried
/// by decreasing multiplicity of their prime in `|K|`, then ascending prime
/// and ascending layer.
pub fn search_max(g: &PcGroup, basis: &SylowBasis, mode: SearchMode, limits: &SearchLimits) -> Result<TowerSearch> {
    let _ = basis;
    if mode == SearchMode::Exact && g.order() > &limits.max_order {
        return Err(Error::budget("exact tower search order", g.order(), &limits.max_order));
    }
    let whole = Subgroup::whole(g);
    let h = fitting_height(g, &whole);
    let mut s = Search { g, limits, layers: lower_nilpotent_series(g, &whole), nodes: 0, skipped: 0, best: Vec::new() };
    let mut tail = Vec::new();
    s.dfs(&whole, &mut tail, h)?;
    let entries: Vec<(u32, Subgroup)> = s.best.iter().rev().map(|(p, x, _)| (*p, x.clone())).collect();
    let mut tower = Tower::new(entries);
    if let Some(f) = tower.validate(g, limits.cosets)? {
        return Err(Error::Invariant(format!("search produced an invalid tower: {f:?}")));
    }
    let certified = tower.len() == h;
    Ok(TowerSearch { tower, upper_bound: h, certified, nodes: s.nodes, skipped: s.skipped })
}

impl Search<'_> {
    /// Turns an exhausted coset budget into a skipped branch.
    fn skip_budget<T>(&mut self, r: Result<T>) -> Result<Option<T>> {
        match r {
            Ok(x) => Ok(Some(x)),
            Err(Error::BudgetExceeded { .. }) => {
                self.skipped += 1;
                Ok(None)
            }
            Err(e) => Err(e),
        }
    }

    /// `tail` holds `(prime, P, kernel)` from the last entry downwards.
    fn dfs(&mut self, k: &Subgroup, tail: &mut Vec<(u32, Subgroup, Subgroup)>, need: usize) -> Result<bool> {
        if tail.len() > self.best.len() {
            self.best = tail.clone();
        }
        if need == 0 {
            return Ok(true);
        }
        if self.nodes >= self.limits.max_nodes {
            return Ok(false);
        }
        self.nodes += 1;
        let g = self.g;
        if fitting_height(g, k) < need {
            return Ok(false);
        }
        let prev = tail.last().map(|(p, _, _)| *p);
        let mut primes: Vec<(usize, u32)> =
            k.primes(g).into_iter().filter(|&q| Some(q) != prev).map(|q| (k.prime_exponent(g, q), q)).collect();
        primes.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let cosets = self.limits.cosets;
        let mut pools: Vec<Subgroup> = lower_nilpotent_series(g, k);
        pools.pop();
        let layers = self.layers.clone();
        for r in &layers[1..layers.len() - 1] {
            if let Some(m) = self.skip_budget(intersect_normal(g, k, r, cosets))? {
                if !m.is_trivial() {
                    pools.push(m);
                }
            }
        }
        for (_, q) in primes {
            let mut tried: Vec<Subgroup> = Vec::new();
            for m in &pools {
                if m.prime_exponent(g, q) == 0 {
                    continue;
                }
                let Some(cand) = self.skip_budget(sylow_subgroup(g, m, q, cosets))? else {
                    continue;
                };
                if tried.contains(&cand) {
                    continue;
                }
                tried.push(cand.clone());
                let kernel = match tail.last() {
                    None => Subgroup::trivial(g),
                    Some((_, above, above_kernel)) => {
                        match self.skip_budget(section_kernel(g, &cand, above, above_kernel, cosets))? {
                            Some(c) => c,
                            None => continue,
                        }
                    }
                };
                if kernel.order() == cand.order() {
                    continue;
                }
                let Some(next_k) = self.skip_budget(normalizer(g, k, &cand, cosets))? else {
                    continue;
                };
                tail.push((q, cand, kernel));
                if self.dfs(&next_k, tail, need - 1)? {
                    return Ok(true);
                }
                tail.pop();
            }
        }
        Ok(false)
    }
}

/// Both inequalities of the counting lemma for one tower and one σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountingCheck {
    pub nu: usize,
    pub beta: usize,
    /// h of a Hall σ-subgroup.
    pub hall_height: usize,
    pub pi_length: usize,
    pub holds: bool,
}

/// `h(G_σ) ≥ ν − β + 1` (when ν > 0) and `ℓ_σ(G) ≥ β`.
pub fn counting_lemma(
    g: &PcGroup,
    basis: &SylowBasis,
    t: &Tower,
    sigma: &[u32],
    budget: usize,
) -> Result<CountingCheck> {
    let st = stats(g, t, sigma);
    let a = hall(g, basis, sigma)?;
    let hall_height = fitting_height(g, &a);
    let ell = pi_length(g, basis, sigma, budget)?;
    let first = st.nu == 0 || hall_height + st.beta > st.nu;
    Ok(CountingCheck { nu: st.nu, beta: st.beta, hall_height, pi_length: ell, holds: first && ell >= st.beta })
}

/// `C_{P_j}(P_{h-1}) ≤ C_{P_j}(P̄_{j+1})` for every `j < h-1`. The tower
/// must be validated.
pub fn monotone_kernels(g: &PcGroup, t: &Tower, budget: usize) -> Result<bool> {
    if !t.is_validated() {
        return Err(Error::Precondition("tower is not validated".into()));
    }
    let h = t.len();
    if h < 2 {
        return Ok(true);
    }
    let top = &t.entries[h - 1].1;
    let trivial = Subgroup::trivial(g);
    for j in 0..h - 1 {
        let c = section_kernel(g, &t.entries[j].1, top, &trivial, budget)?;
        if !c.is_subgroup_of(g, &t.kernels[j]) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Whether every `T_j` is normal in `T_0`.
pub fn tails_normal(g: &PcGroup, t: &Tower) -> bool {
    let tails = t.tails(g);
    match tails.first() {
        None => true,
        Some(t0) => tails.iter().all(|tj| tj.is_normalized_by(g, t0.igs())),
    }
}
