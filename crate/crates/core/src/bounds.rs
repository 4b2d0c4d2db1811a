//! Coprime factorisations `G = AB` with `A` a Hall σ-subgroup and `B` a Hall
//! σ′-subgroup, and the Fitting-height inequalities they satisfy. Both sides
//! of every inequality are computed from scratch.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::constructors::{hall, SylowBasis};
use crate::error::{Error, Result};
use crate::invariants::{delta, derived_length, fitting_height, is_nilpotent, lower_nilpotent_series, pi_length};
use crate::pc::{product_coprime, PcGroup, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorisation {
    /// σ ∩ π(G), sorted.
    pub sigma: Vec<u32>,
    /// π(G) \ σ.
    pub sigma_prime: Vec<u32>,
    pub a: Subgroup,
    pub b: Subgroup,
    pub b_odd: bool,
    pub b_nilpotent: bool,
    pub a_proper: bool,
    pub b_proper: bool,
}

impl Factorisation {
    /// Both factors proper, hence both non-trivial.
    pub fn is_proper(&self) -> bool {
        self.a_proper && self.b_proper
    }
}

/// `A = Hall_σ`, `B = Hall_σ′` from the basis, checked to permute.
pub fn scenario(g: &PcGroup, basis: &SylowBasis, sigma: &[u32]) -> Result<Factorisation> {
    let primes = g.primes();
    let mut sigma: Vec<u32> = sigma.iter().copied().filter(|p| primes.contains(p)).collect();
    sigma.sort_unstable();
    sigma.dedup();
    let sigma_prime: Vec<u32> = primes.iter().copied().filter(|p| !sigma.contains(p)).collect();
    let a = hall(g, basis, &sigma)?;
    let b = hall(g, basis, &sigma_prime)?;
    let prod = product_coprime(g, &a, &b)?;
    if !prod.permutable || &(a.order() * b.order()) != g.order() {
        return Err(Error::Invariant("Hall subgroups do not factorise G".into()));
    }
    let b_odd = b.prime_exponent(g, 2) == 0;
    let b_nilpotent = is_nilpotent(g, &b);
    Ok(Factorisation {
        a_proper: a.order() != g.order(),
        b_proper: b.order() != g.order(),
        sigma,
        sigma_prime,
        a,
        b,
        b_odd,
        b_nilpotent,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaLayer {
    /// 1-based position in the lower nilpotent series.
    pub index: usize,
    /// Primes dividing `|R^{i-1}(H) : R^i(H)|`.
    pub primes: Vec<u32>,
    /// Largest `ℓ_p(G)` over those primes.
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaBreakdown {
    pub layers: Vec<LambdaLayer>,
    pub total: usize,
}

/// Λ_G(H) with its per-layer maxima.
pub fn lambda(g: &PcGroup, basis: &SylowBasis, h: &Subgroup, budget: usize) -> Result<LambdaBreakdown> {
    let mut cache = BTreeMap::new();
    lambda_cached(g, basis, h, budget, &mut cache)
}

fn lambda_cached(
    g: &PcGroup,
    basis: &SylowBasis,
    h: &Subgroup,
    budget: usize,
    lengths: &mut BTreeMap<u32, usize>,
) -> Result<LambdaBreakdown> {
    let series = lower_nilpotent_series(g, h);
    let mut layers = Vec::new();
    for (i, w) in series.windows(2).enumerate() {
        let primes: Vec<u32> =
            w[0].primes(g).into_iter().filter(|&p| w[0].prime_exponent(g, p) > w[1].prime_exponent(g, p)).collect();
        let mut value = 0;
        for &p in &primes {
            value = value.max(prime_length(g, basis, p, budget, lengths)?);
        }
        layers.push(LambdaLayer { index: i + 1, primes, value });
    }
    let total = layers.iter().map(|l| l.value).sum();
    Ok(LambdaBreakdown { layers, total })
}

fn prime_length(
    g: &PcGroup,
    basis: &SylowBasis,
    p: u32,
    budget: usize,
    lengths: &mut BTreeMap<u32, usize>,
) -> Result<usize> {
    if let Some(&l) = lengths.get(&p) {
        return Ok(l);
    }
    let l = pi_length(g, basis, &[p], budget)?;
    lengths.insert(p, l);
    Ok(l)
}

/// One inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRow {
    pub name: String,
    pub applicable: bool,
    /// Rows that are not asserted are recorded only.
    pub asserted: bool,
    pub lhs: i64,
    pub rhs: i64,
    pub slack: i64,
}

impl BoundRow {
    fn new(name: impl Into<String>, applicable: bool, lhs: i64, rhs: i64) -> Self {
        BoundRow { name: name.into(), applicable, asserted: true, lhs, rhs, slack: rhs - lhs }
    }

    pub fn violated(&self) -> bool {
        self.applicable && self.asserted && self.slack < 0
    }
}

/// `ℓ_p(G)` next to `d(G_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeRow {
    pub prime: u32,
    pub length: usize,
    pub sylow_derived_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub sigma: Vec<u32>,
    pub sigma_prime: Vec<u32>,
    pub order_a: String,
    pub order_b: String,
    pub b_odd: bool,
    pub b_nilpotent: bool,
    pub h_g: usize,
    pub h_a: usize,
    pub h_b: usize,
    pub d_a: usize,
    pub d_b: usize,
    pub delta_a: usize,
    pub delta_b: usize,
    pub ell_sigma: usize,
    pub ell_sigma_prime: usize,
    pub lambda_a: LambdaBreakdown,
    pub lambda_b: LambdaBreakdown,
    pub primes: Vec<PrimeRow>,
    pub rows: Vec<BoundRow>,
}

impl BoundReport {
    pub fn row(&self, name: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    pub fn violations(&self) -> Vec<&BoundRow> {
        self.rows.iter().filter(|r| r.violated()).collect()
    }
}

/// Row names, in report order.
pub mod rows {
    /// `h(G) ≤ h(A)+h(B)+2d(B)−1`, for `|B|` odd.
    pub const ODD_B: &str = "odd_b";
    /// `h(G) ≤ h(A)+2d(B)`, for `B` nilpotent.
    pub const NILPOTENT_B: &str = "nilpotent_b";
    /// `h(G) ≤ h(A)+(2δ(B)+1)h(B)−1`.
    pub const MIXED: &str = "mixed";
    /// `h(G) ≤ h(A)δ(A)+h(B)δ(B)`.
    pub const DELTA_PRODUCT: &str = "delta_product";
    /// `h(G) ≤ h(A)+2Σ_{p∈π(B)} d(B_p)`.
    pub const SYLOW_SUM: &str = "sylow_sum";
    /// `h(G) ≤ h(A)+2|π(B)|δ(B)`.
    pub const SYLOW_COUNT: &str = "sylow_count";
    /// `h(G) ≤ h(A)+h(B)+ℓ_σ(G)+ℓ_σ′(G)−2`.
    pub const LENGTH_SUM: &str = "length_sum";
    /// `h(G) ≤ h(A)+h(B)+2min(ℓ_σ(G),ℓ_σ′(G))−1`.
    pub const LENGTH_MIN: &str = "length_min";
    /// `ℓ_σ(G) ≤ δ(A)h(A)`.
    pub const LENGTH_A: &str = "length_a";
    /// `ℓ_σ′(G) ≤ δ(B)h(B)`.
    pub const LENGTH_B: &str = "length_b";
    /// `ℓ_σ′(G) ≤ ℓ_σ(G)+1`.
    pub const SWAP_A: &str = "swap_a";
    /// `ℓ_σ(G) ≤ ℓ_σ′(G)+1`.
    pub const SWAP_B: &str = "swap_b";
    /// `h(G) ≤ Λ_G(A)+Λ_G(B)`.
    pub const LAMBDA: &str = "lambda";
    /// `Λ_G(A) ≤ δ(A)h(A)`.
    pub const LAMBDA_A: &str = "lambda_a";
    /// `Λ_G(B) ≤ δ(B)h(B)`.
    pub const LAMBDA_B: &str = "lambda_b";
    /// `h(A)δ(A)+h(B)δ(B) ≤ (δ(A)+1)h(A)+(δ(B)+1)h(B)−2`.
    pub const DELTA_VS_WEAKER: &str = "delta_vs_weaker";
    /// `ℓ_p(G) ≤ d(G_p)` for every prime, as one row.
    pub const PRIME_LENGTHS: &str = "prime_lengths";
    /// `h(G) ≤ h(A)+h(B)+2d(B)−1` without the parity hypothesis. Recorded,
    /// never asserted.
    pub const ODD_B_UNCONDITIONAL: &str = "odd_b_unconditional";
}

/// Evaluates every inequality for the factorisation.
pub fn check_all(g: &PcGroup, basis: &SylowBasis, f: &Factorisation, budget: usize) -> Result<BoundReport> {
    let (a, b) = (&f.a, &f.b);
    let h_g = fitting_height(g, &Subgroup::whole(g));
    let (h_a, h_b) = (fitting_height(g, a), fitting_height(g, b));
    let (d_a, d_b) = (derived_length(g, a), derived_length(g, b));
    let (delta_a, delta_b) = (delta(g, basis, a)?, delta(g, basis, b)?);
    let ell_sigma = pi_length(g, basis, &f.sigma, budget)?;
    let ell_sigma_prime = pi_length(g, basis, &f.sigma_prime, budget)?;
    let mut lengths = BTreeMap::new();
    let mut primes = Vec::new();
    for p in g.primes() {
        let s = basis.get(p).ok_or_else(|| Error::Precondition(format!("basis has no member at {p}")))?;
        primes.push(PrimeRow {
            prime: p,
            length: prime_length(g, basis, p, budget, &mut lengths)?,
            sylow_derived_length: derived_length(g, s),
        });
    }
    let lambda_a = lambda_cached(g, basis, a, budget, &mut lengths)?;
    let lambda_b = lambda_cached(g, basis, b, budget, &mut lengths)?;

    let sum_d_bp: usize =
        primes.iter().filter(|r| f.sigma_prime.contains(&r.prime)).map(|r| r.sylow_derived_length).sum();
    let pi_b = f.sigma_prime.len();
    let proper = f.is_proper();
    let [h, ha, hb, _, db, dla, dlb, ls, lsp] =
        [h_g, h_a, h_b, d_a, d_b, delta_a, delta_b, ell_sigma, ell_sigma_prime].map(|x| x as i64);
    let (lam_a, lam_b) = (lambda_a.total as i64, lambda_b.total as i64);
    let prime_slack = primes.iter().map(|r| r.sylow_derived_length as i64 - r.length as i64).min().unwrap_or(0);

    let mut out = vec![
        BoundRow::new(rows::ODD_B, proper && f.b_odd, h, ha + hb + 2 * db - 1),
        BoundRow::new(rows::NILPOTENT_B, proper && f.b_nilpotent, h, ha + 2 * db),
        BoundRow::new(rows::MIXED, proper, h, ha + (2 * dlb + 1) * hb - 1),
        BoundRow::new(rows::DELTA_PRODUCT, proper, h, ha * dla + hb * dlb),
        BoundRow::new(rows::SYLOW_SUM, proper, h, ha + 2 * sum_d_bp as i64),
        BoundRow::new(rows::SYLOW_COUNT, proper, h, ha + 2 * pi_b as i64 * dlb),
        BoundRow::new(rows::LENGTH_SUM, proper, h, ha + hb + ls + lsp - 2),
        BoundRow::new(rows::LENGTH_MIN, proper, h, ha + hb + 2 * ls.min(lsp) - 1),
        BoundRow::new(rows::LENGTH_A, !a.is_trivial(), ls, dla * ha),
        BoundRow::new(rows::LENGTH_B, !b.is_trivial(), lsp, dlb * hb),
        BoundRow::new(rows::SWAP_A, proper, lsp, ls + 1),
        BoundRow::new(rows::SWAP_B, proper, ls, lsp + 1),
        BoundRow::new(rows::LAMBDA, proper, h, lam_a + lam_b),
        BoundRow::new(rows::LAMBDA_A, !a.is_trivial(), lam_a, dla * ha),
        BoundRow::new(rows::LAMBDA_B, !b.is_trivial(), lam_b, dlb * hb),
        BoundRow::new(rows::DELTA_VS_WEAKER, proper, ha * dla + hb * dlb, (dla + 1) * ha + (dlb + 1) * hb - 2),
        BoundRow::new(rows::PRIME_LENGTHS, !g.is_trivial(), 0, prime_slack),
    ];
    let mut conj = BoundRow::new(rows::ODD_B_UNCONDITIONAL, proper, h, ha + hb + 2 * db - 1);
    conj.asserted = false;
    out.push(conj);

    Ok(BoundReport {
        sigma: f.sigma.clone(),
        sigma_prime: f.sigma_prime.clone(),
        order_a: format!("{}", a.order()),
        order_b: format!("{}", b.order()),
        b_odd: f.b_odd,
        b_nilpotent: f.b_nilpotent,
        h_g,
        h_a,
        h_b,
        d_a,
        d_b,
        delta_a,
        delta_b,
        ell_sigma,
        ell_sigma_prime,
        lambda_a,
        lambda_b,
        primes,
        rows: out,
    })
}
