//! Quick in-binary run of the property checks over a fixed group list.

use fitheight_core::bounds::{check_all, scenario};
use fitheight_core::invariants::lower_nilpotent_series;
use fitheight_core::pc::{quotient, Element, PcGroup, Subgroup};
use fitheight_core::towers::{counting_lemma, search_max, SearchLimits, SearchMode};
use fitheight_core::Error;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eval::{self, Limits, EXACT_TOWER_ORDER};
use crate::parse::parse;
use crate::report::{CheckJson, SelftestJson, SCHEMA_VERSION};

pub const GROUPS: [&str; 10] = [
    "C(6)",
    "C(30)",
    "W(C(2),C(3))",
    "W(C(3),C(2))",
    "D(C(2),W(C(3),C(2)))",
    "W(C(2),W(C(2),C(3)))",
    "W(C(5),W(C(2),C(3)))",
    "D(W(C(2),C(5)),W(C(7),C(3)))",
    "Ex2(2,3,1)",
    "Ex2(3,2,1)",
];

const TRIPLES: usize = 1000;
const SAMPLES: usize = 200;

fn random_element<R: Rng>(rng: &mut R, g: &PcGroup) -> Element {
    let e: Vec<u32> = g.relative_orders().iter().map(|&r| rng.gen_range(0..r)).collect();
    g.element(e).expect("exponents below relative orders")
}

fn associativity<R: Rng>(rng: &mut R, g: &PcGroup) -> Result<bool, Error> {
    for _ in 0..TRIPLES {
        let (x, y, z) = (random_element(rng, g), random_element(rng, g), random_element(rng, g));
        let left = g.product(&g.product(&x, &y)?, &z)?;
        let right = g.product(&x, &g.product(&y, &z)?)?;
        if left != right {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Projections onto `G/N` for the lower nilpotent terms `N` multiply and
/// kill exactly `N` on sampled elements.
fn quotients<R: Rng>(rng: &mut R, g: &PcGroup) -> Result<bool, Error> {
    for n in lower_nilpotent_series(g, &Subgroup::whole(g)) {
        let proj = quotient(g, &n)?;
        let q = proj.target();
        for _ in 0..SAMPLES {
            let (x, y) = (random_element(rng, g), random_element(rng, g));
            if proj.image(&g.product(&x, &y)?) != q.product(&proj.image(&x), &proj.image(&y))? {
                return Ok(false);
            }
            if proj.image(&x).is_identity() != n.contains(g, &x) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn proper_subsets(primes: &[u32]) -> Vec<Vec<u32>> {
    (1..(1u32 << primes.len()) - 1)
        .map(|m| primes.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect())
        .collect()
}

pub fn run(seed: u64, limits: &Limits) -> Result<SelftestJson, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for text in GROUPS {
        let e = parse(text).expect("built-in expressions parse");
        let b = eval::construct(&e, &Limits { max_order: None, ..limits.clone() })?;
        let g = &b.g;
        let mut push = |name: &str, passed: bool, detail: String| {
            checks.push(CheckJson { group: b.expr.clone(), check: name.to_string(), passed, detail });
        };
        push("associativity", associativity(&mut rng, g)?, format!("{TRIPLES} triples"));
        push("quotients", quotients(&mut rng, g)?, format!("{SAMPLES} pairs per term"));
        let subsets = proper_subsets(&g.primes());
        let mut violated = Vec::new();
        for s in &subsets {
            let f = scenario(g, &b.basis, s)?;
            let r = check_all(g, &b.basis, &f, limits.cosets())?;
            violated.extend(r.violations().iter().map(|row| format!("{}@{s:?}", row.name)));
        }
        push(
            "bounds",
            violated.is_empty(),
            if violated.is_empty() { format!("{} orientations", subsets.len()) } else { violated.join(" ") },
        );
        if g.order() <= &BigUint::from(EXACT_TOWER_ORDER) {
            let t = search_max(g, &b.basis, SearchMode::Exact, &SearchLimits::default())?;
            push("tower", t.certified, format!("length {} of {}", t.tower.len(), t.upper_bound));
            let mut ok = true;
            for s in &subsets {
                ok &= counting_lemma(g, &b.basis, &t.tower, s, limits.cosets())?.holds;
            }
            push("counting_lemma", ok, format!("{} orientations", subsets.len()));
        }
    }
    let failures = checks.iter().filter(|c| !c.passed).count();
    Ok(SelftestJson {
        schema_version: SCHEMA_VERSION,
        engine_version: fitheight_core::VERSION.to_string(),
        seed,
        checks,
        failures,
    })
}
