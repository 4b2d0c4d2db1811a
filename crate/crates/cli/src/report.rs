//! Serialisable reports and their JSON, markdown and CSV renderings.
//! Orders are decimal strings since they overflow 64 bits.

use fitheight_core::bounds::{BoundReport, LambdaBreakdown};
use fitheight_core::invariants::SeriesReport;
use fitheight_core::towers::TowerSearch;
use schemars::JsonSchema;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SeriesJson {
    /// One of derived, lower-central, lower-nilpotent, upper-fitting, pi-series.
    pub kind: String,
    /// Number of steps; the terms list has one more entry.
    pub length: usize,
    /// Orders of the terms in series order, as decimal strings.
    pub orders: Vec<String>,
}

impl From<&SeriesReport> for SeriesJson {
    fn from(s: &SeriesReport) -> Self {
        SeriesJson {
            kind: s.kind.name().to_string(),
            length: s.length,
            orders: s.terms.iter().map(|t| t.order().to_string()).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct PrimeJson {
    pub prime: u32,
    /// p-length of the group.
    pub length: usize,
    /// Derived length of the Sylow p-subgroup.
    pub sylow_derived_length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct InvariantsJson {
    /// Version of this report layout.
    pub schema_version: u32,
    /// Version of the engine that produced the numbers.
    pub engine_version: String,
    /// Canonical expression.
    pub expr: String,
    /// |G| as a decimal string.
    pub order: String,
    /// Length of the pc presentation.
    pub generators: usize,
    /// Prime divisors of |G|, ascending.
    pub primes: Vec<u32>,
    /// h(G).
    pub fitting_height: usize,
    /// d(G).
    pub derived_length: usize,
    /// Largest derived length of a Sylow subgroup.
    pub delta: usize,
    pub nilpotent: bool,
    /// |F(G)|.
    pub fitting_order: String,
    /// Order of a minimal normal subgroup; null for the trivial group.
    pub minimal_normal_order: Option<String>,
    pub prime_lengths: Vec<PrimeJson>,
    /// Prime set given with --sigma.
    pub sigma: Option<Vec<u32>>,
    /// sigma-length, when --sigma was given.
    pub pi_length: Option<usize>,
    pub series: Vec<SeriesJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct LayerJson {
    /// Position of the layer in the lower nilpotent series, from the top.
    pub index: usize,
    /// Primes of the layer.
    pub primes: Vec<u32>,
    /// Contribution of the layer.
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct LambdaJson {
    pub layers: Vec<LayerJson>,
    /// Sum of the layer values.
    pub total: usize,
}

impl From<&LambdaBreakdown> for LambdaJson {
    fn from(l: &LambdaBreakdown) -> Self {
        LambdaJson {
            layers: l
                .layers
                .iter()
                .map(|x| LayerJson { index: x.index, primes: x.primes.clone(), value: x.value })
                .collect(),
            total: l.total,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct RowJson {
    /// Stable row name.
    pub name: String,
    /// The hypotheses of the inequality hold.
    pub applicable: bool,
    /// False for rows that are recorded but not claimed.
    pub asserted: bool,
    /// Left side of the inequality lhs <= rhs.
    pub lhs: i64,
    /// Right side of the inequality.
    pub rhs: i64,
    /// rhs - lhs; negative means the inequality fails.
    pub slack: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct BoundsJson {
    /// Version of this report layout.
    pub schema_version: u32,
    /// Version of the engine that produced the numbers.
    pub engine_version: String,
    /// Canonical expression.
    pub expr: String,
    /// |G| as a decimal string.
    pub order: String,
    /// sigma intersected with the primes of G.
    pub sigma: Vec<u32>,
    /// The remaining primes of G.
    pub sigma_prime: Vec<u32>,
    /// |A| for A a Hall sigma-subgroup.
    pub order_a: String,
    /// |B| for B a Hall sigma'-subgroup.
    pub order_b: String,
    /// A and B are both proper subgroups.
    pub proper: bool,
    /// |B| is odd.
    pub b_odd: bool,
    /// B is nilpotent.
    pub b_nilpotent: bool,
    /// Fitting height of G.
    pub h_g: usize,
    /// Fitting height of A.
    pub h_a: usize,
    /// Fitting height of B.
    pub h_b: usize,
    /// Derived length of A.
    pub d_a: usize,
    /// Derived length of B.
    pub d_b: usize,
    /// Largest derived length of a Sylow subgroup of A.
    pub delta_a: usize,
    /// Largest derived length of a Sylow subgroup of B.
    pub delta_b: usize,
    /// sigma-length of G.
    pub ell_sigma: usize,
    /// sigma'-length of G.
    pub ell_sigma_prime: usize,
    /// Lambda of A in G, with the contribution of each layer.
    pub lambda_a: LambdaJson,
    pub lambda_b: LambdaJson,
    /// p-length next to the Sylow derived length, for each prime.
    pub primes: Vec<PrimeJson>,
    /// Bound rows in fixed order.
    pub rows: Vec<RowJson>,
    /// Applicable asserted rows with negative slack.
    pub violations: usize,
}

impl BoundsJson {
    pub fn new(expr: String, order: String, proper: bool, r: &BoundReport) -> Self {
        BoundsJson {
            schema_version: SCHEMA_VERSION,
            engine_version: fitheight_core::VERSION.to_string(),
            expr,
            order,
            sigma: r.sigma.clone(),
            sigma_prime: r.sigma_prime.clone(),
            order_a: r.order_a.clone(),
            order_b: r.order_b.clone(),
            proper,
            b_odd: r.b_odd,
            b_nilpotent: r.b_nilpotent,
            h_g: r.h_g,
            h_a: r.h_a,
            h_b: r.h_b,
            d_a: r.d_a,
            d_b: r.d_b,
            delta_a: r.delta_a,
            delta_b: r.delta_b,
            ell_sigma: r.ell_sigma,
            ell_sigma_prime: r.ell_sigma_prime,
            lambda_a: (&r.lambda_a).into(),
            lambda_b: (&r.lambda_b).into(),
            primes: r
                .primes
                .iter()
                .map(|p| PrimeJson { prime: p.prime, length: p.length, sylow_derived_length: p.sylow_derived_length })
                .collect(),
            rows: r
                .rows
                .iter()
                .map(|x| RowJson {
                    name: x.name.clone(),
                    applicable: x.applicable,
                    asserted: x.asserted,
                    lhs: x.lhs,
                    rhs: x.rhs,
                    slack: x.slack,
                })
                .collect(),
            violations: r.violations().len(),
        }
    }

    pub fn row(&self, name: &str) -> Option<&RowJson> {
        self.rows.iter().find(|r| r.name == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct EntryJson {
    pub prime: u32,
    /// Order of the tower entry.
    pub order: String,
    /// Order of the entry modulo its kernel.
    pub bar: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct TowersJson {
    /// Version of this report layout.
    pub schema_version: u32,
    /// Version of the engine that produced the numbers.
    pub engine_version: String,
    pub expr: String,
    pub order: String,
    /// exact or budgeted.
    pub mode: String,
    pub length: usize,
    /// h(G); no tower is longer.
    pub upper_bound: usize,
    /// The tower reaches the upper bound.
    pub certified: bool,
    /// Search nodes expanded.
    pub nodes: usize,
    /// Branches dropped for exceeding the coset budget.
    pub skipped: usize,
    /// From the bottom entry up.
    pub entries: Vec<EntryJson>,
    pub sigma: Option<Vec<u32>>,
    /// Number of entries at sigma-primes.
    pub nu: Option<usize>,
    /// Number of maximal runs of sigma-entries.
    pub beta: Option<usize>,
}

impl TowersJson {
    pub fn new(expr: String, order: String, mode: &str, s: &TowerSearch) -> Self {
        let t = &s.tower;
        TowersJson {
            schema_version: SCHEMA_VERSION,
            engine_version: fitheight_core::VERSION.to_string(),
            expr,
            order,
            mode: mode.to_string(),
            length: t.len(),
            upper_bound: s.upper_bound,
            certified: s.certified,
            nodes: s.nodes,
            skipped: s.skipped,
            entries: t
                .entries()
                .iter()
                .zip(t.bars())
                .map(|((p, sub), bar)| EntryJson { prime: *p, order: sub.order().to_string(), bar: bar.to_string() })
                .collect(),
            sigma: None,
            nu: None,
            beta: None,
        }
    }
}

/// One census scenario.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CensusRecord {
    pub expr: String,
    pub order: String,
    /// The sigma of this orientation, as drawn.
    pub sigma: Vec<u32>,
    /// Version of the engine that produced the numbers.
    pub engine_version: String,
    pub bounds: BoundsJson,
    /// Exact tower search result, for groups small enough to search.
    pub tower_length: Option<usize>,
    pub tower_certified: Option<bool>,
    /// Both counting inequalities hold for the tower and sigma.
    pub counting_lemma: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SlackJson {
    pub name: String,
    /// Scenarios where the row applies.
    pub applicable: usize,
    pub min_slack: Option<i64>,
    /// Scenarios with slack 0.
    pub tight: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CensusJson {
    /// Version of this report layout.
    pub schema_version: u32,
    /// Version of the engine that produced the numbers.
    pub engine_version: String,
    pub seed: u64,
    /// Expressions drawn.
    pub count: usize,
    pub max_order: u64,
    /// Records; two per expression.
    pub scenarios: usize,
    pub violations: usize,
    pub counting_failures: usize,
    pub uncertified_towers: usize,
    /// Per bound row, in row order.
    pub summary: Vec<SlackJson>,
    pub records: Vec<CensusRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct CheckJson {
    pub group: String,
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, JsonSchema)]
pub struct SelftestJson {
    /// Version of this report layout.
    pub schema_version: u32,
    /// Version of the engine that produced the numbers.
    pub engine_version: String,
    pub seed: u64,
    pub checks: Vec<CheckJson>,
    pub failures: usize,
}

/// JSON Schema documents for every report, keyed by file name.
pub fn schemas() -> Vec<(&'static str, String)> {
    let doc = |s: schemars::schema::RootSchema| {
        let mut t = serde_json::to_string_pretty(&s).expect("schemas serialise");
        t.push('\n');
        t
    };
    vec![
        ("invariants.schema.json", doc(schemars::schema_for!(InvariantsJson))),
        ("bounds.schema.json", doc(schemars::schema_for!(BoundsJson))),
        ("towers.schema.json", doc(schemars::schema_for!(TowersJson))),
        ("census.schema.json", doc(schemars::schema_for!(CensusJson))),
        ("selftest.schema.json", doc(schemars::schema_for!(SelftestJson))),
    ]
}

pub fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialise");
    s.push('\n');
    s
}

/// Fixed-width markdown table; every column is padded to its widest cell.
pub fn md_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut width: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, c) in width.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> =
            cells.iter().zip(&width).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("| {} |\n", padded.join(" | "))
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    out.push_str(&format!("|{}|\n", width.iter().map(|&w| "-".repeat(w + 2)).collect::<Vec<_>>().join("|")));
    for r in rows {
        out.push_str(&line(r.clone()));
    }
    out
}

fn primes_str(ps: &[u32]) -> String {
    ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
}

pub fn invariants_md(r: &InvariantsJson) -> String {
    let mut out = format!("# {}\n\n", r.expr);
    let mut rows = vec![
        vec!["order".into(), r.order.clone()],
        vec!["generators".into(), r.generators.to_string()],
        vec!["primes".into(), primes_str(&r.primes)],
        vec!["h".into(), r.fitting_height.to_string()],
        vec!["d".into(), r.derived_length.to_string()],
        vec!["delta".into(), r.delta.to_string()],
        vec!["nilpotent".into(), r.nilpotent.to_string()],
        vec!["|F(G)|".into(), r.fitting_order.clone()],
        vec!["|minimal normal|".into(), r.minimal_normal_order.clone().unwrap_or_else(|| "-".into())],
    ];
    for p in &r.prime_lengths {
        rows.push(vec![format!("l_{}", p.prime), p.length.to_string()]);
    }
    if let (Some(s), Some(l)) = (&r.sigma, r.pi_length) {
        rows.push(vec![format!("l_{{{}}}", primes_str(s)), l.to_string()]);
    }
    out.push_str(&md_table(&["invariant", "value"], &rows));
    out.push('\n');
    let rows: Vec<Vec<String>> =
        r.series.iter().map(|s| vec![s.kind.clone(), s.length.to_string(), s.orders.join(" ")]).collect();
    out.push_str(&md_table(&["series", "length", "orders"], &rows));
    out
}

pub fn bounds_md(r: &BoundsJson) -> String {
    let mut out = format!("# {} with sigma = {{{}}}\n\n", r.expr, primes_str(&r.sigma));
    let scalars = vec![
        vec!["|G|".into(), r.order.clone()],
        vec!["|A|".into(), r.order_a.clone()],
        vec!["|B|".into(), r.order_b.clone()],
        vec!["h(G)".into(), r.h_g.to_string()],
        vec!["h(A)".into(), r.h_a.to_string()],
        vec!["h(B)".into(), r.h_b.to_string()],
        vec!["d(A)".into(), r.d_a.to_string()],
        vec!["d(B)".into(), r.d_b.to_string()],
        vec!["delta(A)".into(), r.delta_a.to_string()],
        vec!["delta(B)".into(), r.delta_b.to_string()],
        vec!["l_sigma".into(), r.ell_sigma.to_string()],
        vec!["l_sigma'".into(), r.ell_sigma_prime.to_string()],
        vec!["Lambda(A)".into(), r.lambda_a.total.to_string()],
        vec!["Lambda(B)".into(), r.lambda_b.total.to_string()],
    ];
    out.push_str(&md_table(&["quantity", "value"], &scalars));
    out.push('\n');
    let rows: Vec<Vec<String>> = r
        .rows
        .iter()
        .map(|x| {
            let status = match (x.applicable, x.asserted, x.slack < 0) {
                (false, _, _) => "n/a",
                (true, false, _) => "recorded",
                (true, true, false) => "ok",
                (true, true, true) => "VIOLATED",
            };
            vec![x.name.clone(), x.lhs.to_string(), x.rhs.to_string(), x.slack.to_string(), status.into()]
        })
        .collect();
    out.push_str(&md_table(&["bound", "lhs", "rhs", "slack", "status"], &rows));
    out
}

pub fn towers_md(r: &TowersJson) -> String {
    let mut out = format!(
        "# {} ({} search)\n\nlength {} of at most {}, {}\n\n",
        r.expr,
        r.mode,
        r.length,
        r.upper_bound,
        if r.certified { "certified" } else { "not certified" }
    );
    let rows: Vec<Vec<String>> = r
        .entries
        .iter()
        .enumerate()
        .map(|(i, e)| vec![(i + 1).to_string(), e.prime.to_string(), e.order.clone(), e.bar.clone()])
        .collect();
    out.push_str(&md_table(&["entry", "prime", "order", "section order"], &rows));
    if let (Some(s), Some(nu), Some(beta)) = (&r.sigma, r.nu, r.beta) {
        out.push_str(&format!("\nsigma = {{{}}}: nu = {nu}, beta = {beta}\n", primes_str(s)));
    }
    out
}

pub fn census_summary_md(c: &CensusJson) -> String {
    let mut out = format!(
        "# census seed {} ({} expressions, {} scenarios, max order {})\n\nviolations {}, counting-lemma failures {}, uncertified towers {}\n\n",
        c.seed, c.count, c.scenarios, c.max_order, c.violations, c.counting_failures, c.uncertified_towers
    );
    let rows: Vec<Vec<String>> = c
        .summary
        .iter()
        .map(|s| {
            vec![
                s.name.clone(),
                s.applicable.to_string(),
                s.min_slack.map_or("-".into(), |m| m.to_string()),
                s.tight.to_string(),
            ]
        })
        .collect();
    out.push_str(&md_table(&["bound", "applicable", "min slack", "tight"], &rows));
    out
}

pub fn selftest_md(r: &SelftestJson) -> String {
    let mut out = format!("# selftest seed {}: {} of {} checks failed\n\n", r.seed, r.failures, r.checks.len());
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            vec![
                c.group.clone(),
                c.check.clone(),
                if c.passed { "pass".into() } else { "FAIL".into() },
                c.detail.clone(),
            ]
        })
        .collect();
    out.push_str(&md_table(&["group", "check", "result", "detail"], &rows));
    out
}

/// One line per scenario and bound.
pub fn census_csv(c: &CensusJson) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = ["expr", "order", "sigma", "bound", "applicable", "asserted", "lhs", "rhs", "slack"];
    w.write_record(header).expect("in-memory write");
    for r in &c.records {
        for x in &r.bounds.rows {
            w.serialize((
                &r.expr,
                &r.order,
                primes_str(&r.sigma),
                &x.name,
                x.applicable,
                x.asserted,
                x.lhs,
                x.rhs,
                x.slack,
            ))
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_columns_align() {
        let t = md_table(&["a", "long header"], &[vec!["wide cell".into(), "x".into()]]);
        let widths: Vec<usize> = t.lines().map(|l| l.chars().count()).collect();
        assert!(widths.windows(2).all(|w| w[0] == w[1]), "{t}");
        assert!(t.starts_with("| a         | long header |\n"));
    }
}
