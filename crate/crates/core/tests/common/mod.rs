#![allow(dead_code)]

use fitheight_core::constructors::{build, cyc, dir, wr, BuildConfig, GroupExpr, SylowBasis};
use fitheight_core::{PcGroup, Subgroup};
use fitheight_oracle::{self as oracle, Set, Spec, Table};

pub const BUDGET: usize = fitheight_core::pc::DEFAULT_COSET_BUDGET;

pub fn built(e: &GroupExpr) -> (PcGroup, SylowBasis) {
    build(e, &BuildConfig::default()).unwrap()
}

/// The same group for the brute-force side.
pub fn spec(e: &GroupExpr) -> Spec {
    match e.expand().unwrap() {
        GroupExpr::Cyc(n) => oracle::cyc(n),
        GroupExpr::Dir(a, b) => oracle::dir(spec(&a), spec(&b)),
        GroupExpr::Wr(a, b) => oracle::wr(spec(&a), spec(&b)),
        _ => unreachable!(),
    }
}

/// Every group of order at most 5000 that the equivalence tests cover.
pub fn suite() -> Vec<GroupExpr> {
    vec![
        cyc(1),
        cyc(2),
        cyc(6),
        cyc(12),
        cyc(30),
        dir(cyc(2), cyc(3)),
        wr(cyc(2), cyc(2)),
        wr(cyc(2), cyc(3)),
        wr(cyc(3), cyc(2)),
        wr(cyc(3), cyc(3)),
        wr(cyc(4), cyc(3)),
        wr(cyc(6), cyc(2)),
        wr(cyc(2), cyc(5)),
        wr(cyc(5), cyc(2)),
        wr(cyc(2), cyc(6)),
        wr(cyc(3), cyc(4)),
        wr(cyc(2), cyc(7)),
        wr(cyc(7), cyc(3)),
        wr(cyc(5), cyc(4)),
        wr(dir(cyc(2), cyc(3)), cyc(2)),
        dir(wr(cyc(2), cyc(3)), cyc(5)),
        dir(wr(cyc(3), cyc(2)), wr(cyc(2), cyc(3))),
        wr(wr(cyc(3), cyc(2)), cyc(2)),
        wr(cyc(2), wr(cyc(2), cyc(2))),
        GroupExpr::Ex2 { p: 2, q: 3, n: 1 },
        GroupExpr::Ex2 { p: 3, q: 2, n: 0 },
    ]
}

/// Brute-force table plus the map from engine elements to table indices.
pub struct Pair {
    pub expr: GroupExpr,
    pub g: PcGroup,
    pub basis: SylowBasis,
    pub t: Table,
}

impl Pair {
    pub fn new(expr: &GroupExpr) -> Pair {
        let (g, basis) = built(expr);
        let t = Table::from_spec(&spec(expr), 5000).unwrap();
        Pair { expr: expr.clone(), g, basis, t }
    }

    pub fn index(&self, x: &fitheight_core::Element) -> usize {
        self.t.element(x.exponents())
    }

    pub fn set(&self, s: &Subgroup) -> Set {
        let gens: Vec<usize> = s.igs().iter().map(|x| self.index(x)).collect();
        self.t.subgroup(&gens)
    }
}

/// Non-empty subsets of `primes`.
pub fn subsets(primes: &[u32]) -> Vec<Vec<u32>> {
    (1..1u32 << primes.len())
        .map(|m| primes.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &p)| p).collect())
        .collect()
}

/// Random nesting of direct and wreath products over small cyclic groups,
/// with order between 2 and `max_order`.
pub fn random_expr<R: rand::Rng>(rng: &mut R, max_order: u64) -> GroupExpr {
    fn go<R: rand::Rng>(rng: &mut R, depth: u32) -> GroupExpr {
        if depth == 0 || rng.gen_bool(0.35) {
            let n = [2, 3, 5, 7, 2, 3, 4, 6][rng.gen_range(0..8)];
            return cyc(n);
        }
        let (a, b) = (go(rng, depth - 1), go(rng, depth - 1));
        if rng.gen_bool(0.5) {
            dir(a, b)
        } else {
            wr(a, b)
        }
    }
    loop {
        let e = go(rng, 3);
        if let Some(n) = e.predicted_order() {
            if n >= 2u32.into() && n <= max_order.into() {
                return e;
            }
        }
    }
}

/// Uniformly random element.
pub fn random_element<R: rand::Rng>(rng: &mut R, g: &PcGroup) -> fitheight_core::Element {
    let e: Vec<u32> = g.relative_orders().iter().map(|&r| rng.gen_range(0..r)).collect();
    g.element(e).unwrap()
}
