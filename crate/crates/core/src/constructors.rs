//! Cyclic groups, direct products and regular wreath products, each built
//! together with a Sylow basis, plus the two iterated-wreath families.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::pc::{product_coprime, Element, IgsBuilder, PcGroup, Projection, Subgroup};
use crate::primes::{is_prime, prime_chain};

/// Group expression. The canonical text form is produced by `Display`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GroupExpr {
    /// Cyclic group of order `n`.
    Cyc(u64),
    /// Direct product.
    Dir(Box<GroupExpr>, Box<GroupExpr>),
    /// Regular wreath product `A wr B`.
    Wr(Box<GroupExpr>, Box<GroupExpr>),
    /// `C_t wr H_n` from the first iterated-wreath family.
    Ex1 { p: u32, q: u32, r: u32, t: u32, n: u32 },
    /// `G_{2n}` from the second iterated-wreath family.
    Ex2 { p: u32, q: u32, n: u32 },
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyc(n) => write!(f, "C({n})"),
            GroupExpr::Dir(a, b) => write!(f, "D({a},{b})"),
            GroupExpr::Wr(a, b) => write!(f, "W({a},{b})"),
            GroupExpr::Ex1 { p, q, r, t, n } => write!(f, "Ex1({p},{q},{r},{t},{n})"),
            GroupExpr::Ex2 { p, q, n } => write!(f, "Ex2({p},{q},{n})"),
        }
    }
}

pub fn cyc(n: u64) -> GroupExpr {
    GroupExpr::Cyc(n)
}

pub fn dir(a: GroupExpr, b: GroupExpr) -> GroupExpr {
    GroupExpr::Dir(Box::new(a), Box::new(b))
}

pub fn wr(a: GroupExpr, b: GroupExpr) -> GroupExpr {
    GroupExpr::Wr(Box::new(a), Box::new(b))
}

fn check_distinct_primes(ps: &[u32]) -> Result<()> {
    for (i, &p) in ps.iter().enumerate() {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if ps[..i].contains(&p) {
            return Err(Error::InvalidParameter(format!("primes must be distinct, {p} repeats")));
        }
    }
    Ok(())
}

/// `C_t wr H_n` where `H_0 = C_p wr C_q`,
/// `H_{2i+1} = (H_{2i} wr C_r) wr (C_q wr C_p)` and
/// `H_{2i} = (H_{2i-1} wr C_r) wr (C_p wr C_q)`.
pub fn example1(p: u32, q: u32, r: u32, t: u32, n: u32) -> Result<GroupExpr> {
    check_distinct_primes(&[p, q, r, t])?;
    let c = |x: u32| cyc(x as u64);
    let mut h = wr(c(p), c(q));
    for i in 1..=n {
        let top = if i % 2 == 1 { wr(c(q), c(p)) } else { wr(c(p), c(q)) };
        h = wr(wr(h, c(r)), top);
    }
    Ok(wr(c(t), h))
}

/// `G_{2n}` where `G_0 = C_p`, `G_{2i+1} = G_{2i} wr C_q` and
/// `G_{2i} = G_{2i-1} wr C_p`.
pub fn example2(p: u32, q: u32, n: u32) -> Result<GroupExpr> {
    check_distinct_primes(&[p, q])?;
    let mut g = cyc(p as u64);
    for i in 1..=2 * n {
        let top = if i % 2 == 1 { q } else { p };
        g = wr(g, cyc(top as u64));
    }
    Ok(g)
}

impl GroupExpr {
    /// Checks parameters: `n ≥ 1` for cyclic factors, distinct primes for
    /// the example families.
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupExpr::Cyc(0) => Err(Error::InvalidParameter("C(0) is not a group".into())),
            GroupExpr::Cyc(_) => Ok(()),
            GroupExpr::Dir(a, b) | GroupExpr::Wr(a, b) => {
                a.validate()?;
                b.validate()
            }
            GroupExpr::Ex1 { p, q, r, t, .. } => check_distinct_primes(&[*p, *q, *r, *t]),
            GroupExpr::Ex2 { p, q, .. } => check_distinct_primes(&[*p, *q]),
        }
    }

    /// Replaces the example families by their wreath-product definitions.
    pub fn expand(&self) -> Result<GroupExpr> {
        Ok(match self {
            GroupExpr::Cyc(n) => GroupExpr::Cyc(*n),
            GroupExpr::Dir(a, b) => dir(a.expand()?, b.expand()?),
            GroupExpr::Wr(a, b) => wr(a.expand()?, b.expand()?),
            GroupExpr::Ex1 { p, q, r, t, n } => example1(*p, *q, *r, *t, *n)?,
            GroupExpr::Ex2 { p, q, n } => example2(*p, *q, *n)?,
        })
    }

    /// Order of the group, or `None` when it has more than `2^24` bits.
    pub fn predicted_order(&self) -> Option<BigUint> {
        const MAX_BITS: u64 = 1 << 24;
        let out = match self {
            GroupExpr::Cyc(n) => BigUint::from(*n),
            GroupExpr::Dir(a, b) => a.predicted_order()? * b.predicted_order()?,
            GroupExpr::Wr(a, b) => {
                let oa = a.predicted_order()?;
                let ob = b.predicted_order()?;
                let m = ob.to_u32()?;
                if oa.bits().checked_mul(m as u64)? > MAX_BITS {
                    return None;
                }
                oa.pow(m) * ob
            }
            GroupExpr::Ex1 { .. } | GroupExpr::Ex2 { .. } => return self.expand().ok()?.predicted_order(),
        };
        (out.bits() <= MAX_BITS).then_some(out)
    }

    /// Number of pc generators of the built presentation (saturating).
    pub fn predicted_generators(&self) -> u64 {
        match self {
            GroupExpr::Cyc(n) => prime_chain(*n).len() as u64,
            GroupExpr::Dir(a, b) => a.predicted_generators().saturating_add(b.predicted_generators()),
            GroupExpr::Wr(a, b) => {
                let m = b.predicted_order().and_then(|o| o.to_u64()).unwrap_or(u64::MAX);
                a.predicted_generators().saturating_mul(m).saturating_add(b.predicted_generators())
            }
            GroupExpr::Ex1 { .. } | GroupExpr::Ex2 { .. } => match self.expand() {
                Ok(e) => e.predicted_generators(),
                Err(_) => u64::MAX,
            },
        }
    }
}

/// Feasibility limits for [`build`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildConfig {
    pub max_generators: u64,
}

impl Default for BuildConfig {
    fn default() -> Self {
        BuildConfig { max_generators: 10_000 }
    }
}

/// Pairwise permutable Sylow subgroups, one per prime dividing the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowBasis {
    members: BTreeMap<u32, Subgroup>,
}

impl SylowBasis {
    pub fn new(members: BTreeMap<u32, Subgroup>) -> Self {
        SylowBasis { members }
    }

    pub fn get(&self, p: u32) -> Option<&Subgroup> {
        self.members.get(&p)
    }

    pub fn primes(&self) -> Vec<u32> {
        self.members.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &Subgroup)> {
        self.members.iter().map(|(&p, s)| (p, s))
    }

    /// Checks the defining properties: primes are exactly π(G), each member
    /// has the full p-part of |G|, members permute pairwise.
    pub fn verify(&self, g: &PcGroup) -> Result<()> {
        if self.primes() != g.primes() {
            return Err(Error::Invariant(format!(
                "basis primes {:?} differ from π(G) = {:?}",
                self.primes(),
                g.primes()
            )));
        }
        for (&p, s) in &self.members {
            s.same_group(g)?;
            let k = g.relative_orders().iter().filter(|&&r| r == p).count();
            if s.depths().len() != k || s.primes(g) != [p] {
                return Err(Error::Invariant(format!("basis member at {p} is not a Sylow subgroup")));
            }
        }
        for (&p, a) in &self.members {
            for (&q, b) in self.members.range(p + 1..) {
                if !product_coprime(g, a, b)?.permutable {
                    return Err(Error::Invariant(format!("basis members at {p} and {q} do not permute")));
                }
            }
        }
        Ok(())
    }

    /// Images in `G/N`; primes whose member becomes trivial are dropped.
    pub fn project(&self, proj: &Projection) -> SylowBasis {
        let members =
            self.members.iter().map(|(&p, s)| (p, proj.image_subgroup(s))).filter(|(_, s)| !s.is_trivial()).collect();
        SylowBasis { members }
    }
}

/// Hall σ-subgroup as the product of the basis members at `σ ∩ π(G)`.
/// Trusts that the members permute; [`SylowBasis::verify`] checks that.
pub fn hall(g: &PcGroup, basis: &SylowBasis, sigma: &[u32]) -> Result<Subgroup> {
    let mut gens = Vec::new();
    let mut order = BigUint::one();
    for (p, s) in basis.iter() {
        if sigma.contains(&p) {
            s.same_group(g)?;
            gens.extend(s.igs().iter().cloned());
            order *= s.order();
        }
    }
    let h = IgsBuilder::induced_with_order(g, gens, &order);
    if h.order() != &order {
        return Err(Error::Invariant("Sylow basis members do not permute".into()));
    }
    Ok(h)
}

/// Builds the presentation and a Sylow basis.
pub fn build(expr: &GroupExpr, cfg: &BuildConfig) -> Result<(PcGroup, SylowBasis)> {
    expr.validate()?;
    let gens = expr.predicted_generators();
    if gens > cfg.max_generators {
        return Err(Error::budget("pc generators", gens, cfg.max_generators));
    }
    build_rec(&expr.expand()?)
}

fn build_rec(expr: &GroupExpr) -> Result<(PcGroup, SylowBasis)> {
    match expr {
        GroupExpr::Cyc(n) => cyclic(*n),
        GroupExpr::Dir(a, b) => {
            let (ga, ba) = build_rec(a)?;
            let (gb, bb) = build_rec(b)?;
            direct(&ga, &ba, &gb, &bb)
        }
        GroupExpr::Wr(a, b) => {
            let (ga, ba) = build_rec(a)?;
            let (gb, bb) = build_rec(b)?;
            wreath(&ga, &ba, &gb, &bb)
        }
        GroupExpr::Ex1 { .. } | GroupExpr::Ex2 { .. } => build_rec(&expr.expand()?),
    }
}

type Relations = (Vec<u32>, Vec<Vec<(usize, u32)>>, Vec<(usize, usize, Vec<(usize, u32)>)>);

fn relations_of(g: &PcGroup) -> Relations {
    let word = |x: &Element| -> Vec<(usize, u32)> {
        x.exponents().iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i, e)).collect()
    };
    let (powers, conj) = g.relations();
    (
        g.relative_orders().to_vec(),
        powers.iter().map(word).collect(),
        conj.iter().map(|(i, j, w)| (*i, *j, word(w))).collect(),
    )
}

fn remap(w: &[(usize, u32)], map: &[usize]) -> Vec<(usize, u32)> {
    w.iter().map(|&(g, e)| (map[g], e)).collect()
}

fn embed(x: &Element, map: &[usize], len: usize) -> Element {
    let mut e = vec![0u32; len];
    for (l, &v) in x.exponents().iter().enumerate() {
        e[map[l]] = v;
    }
    Element::from_vec(e)
}

/// Basis of a group from, per prime, images of subgroups of the factors.
fn assemble_basis(g: &PcGroup, parts: BTreeMap<u32, Vec<Element>>) -> SylowBasis {
    let members = parts
        .into_iter()
        .map(|(p, gens)| {
            let k = g.relative_orders().iter().filter(|&&r| r == p).count();
            let order = BigUint::from(p).pow(k as u32);
            (p, IgsBuilder::induced_with_order(g, gens, &order))
        })
        .collect();
    SylowBasis { members }
}

/// `C_n` as a chain `g_i^{p_i} = g_{i+1}` over the prime factors of `n` in
/// ascending order.
pub fn cyclic(n: u64) -> Result<(PcGroup, SylowBasis)> {
    if n == 0 {
        return Err(Error::InvalidParameter("C(0) is not a group".into()));
    }
    let chain = prime_chain(n);
    let len = chain.len();
    let mut rel_orders = Vec::with_capacity(len);
    for &p in &chain {
        rel_orders.push(u32::try_from(p).map_err(|_| Error::InvalidParameter(format!("prime {p} too large")))?);
    }
    let powers = (0..len).map(|i| if i + 1 < len { vec![(i + 1, 1)] } else { vec![] }).collect();
    let g = PcGroup::from_relations(rel_orders, powers, vec![])?;
    let mut parts = BTreeMap::new();
    if len > 0 {
        let x = g.generator(0);
        for p in g.primes() {
            parts.insert(p, vec![g.sigma_part(&x, &[p])]);
        }
    }
    let basis = assemble_basis(&g, parts);
    Ok((g, basis))
}

/// `A × B`, generators of `A` first.
pub fn direct(a: &PcGroup, ba: &SylowBasis, b: &PcGroup, bb: &SylowBasis) -> Result<(PcGroup, SylowBasis)> {
    let (ra, pa, ca) = relations_of(a);
    let (rb, pb, cb) = relations_of(b);
    let na = a.len();
    let map_a: Vec<usize> = (0..na).collect();
    let map_b: Vec<usize> = (na..na + b.len()).collect();
    let mut rel_orders = ra;
    rel_orders.extend(rb);
    let mut powers = pa;
    powers.extend(pb.iter().map(|w| remap(w, &map_b)));
    let mut conj = ca;
    conj.extend(cb.iter().map(|(i, j, w)| (i + na, j + na, remap(w, &map_b))));
    let g = PcGroup::from_relations(rel_orders, powers, conj)?;
    let len = g.len();
    let mut parts: BTreeMap<u32, Vec<Element>> = BTreeMap::new();
    for (p, s) in ba.iter() {
        parts.entry(p).or_default().extend(s.igs().iter().map(|x| embed(x, &map_a, len)));
    }
    for (p, s) in bb.iter() {
        parts.entry(p).or_default().extend(s.igs().iter().map(|x| embed(x, &map_b, len)));
    }
    let basis = assemble_basis(&g, parts);
    Ok((g, basis))
}

/// Regular wreath product `A wr B = A^{|B|} ⋊ B`.
///
/// Generators: first the pcgs of `B` (the top group), then the base
/// generator `a_{l,c}` at index `|pcgs(B)| + l·|B| + c`, where `l` runs over
/// the pcgs of `A` and `c` indexes the elements of `B` in lexicographic
/// order of their exponent vectors. The top acts by right multiplication on
/// coordinates: `a_{l,c}^{t} = a_{l,c·t}`.
pub fn wreath(a: &PcGroup, ba: &SylowBasis, b: &PcGroup, bb: &SylowBasis) -> Result<(PcGroup, SylowBasis)> {
    let m = b.order().to_usize().ok_or_else(|| Error::budget("wreath coordinates", b.order(), usize::MAX))?;
    let nb = b.len();
    let na = a.len();
    let rb_orders = b.relative_orders();
    // mixed-radix weights for the lexicographic enumeration of B
    let mut weight = vec![1usize; nb];
    for i in (0..nb.saturating_sub(1)).rev() {
        weight[i] = weight[i + 1] * rb_orders[i + 1] as usize;
    }
    let index_of = |x: &Element| -> usize { x.exponents().iter().zip(&weight).map(|(&e, &w)| e as usize * w).sum() };
    let element_at = |mut c: usize| -> Element {
        let mut e = vec![0u32; nb];
        for i in 0..nb {
            e[i] = (c / weight[i]) as u32;
            c %= weight[i];
        }
        Element::from_vec(e)
    };
    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(nb);
    for k in 0..nb {
        let t = b.generator(k);
        perms.push((0..m).map(|c| index_of(&b.product(&element_at(c), &t).unwrap())).collect());
    }

    let (ra, pa, ca) = relations_of(a);
    let (rb, pb, cb) = relations_of(b);
    let base = |l: usize, c: usize| nb + l * m + c;
    let coord_map = |c: usize| -> Vec<usize> { (0..na).map(|l| base(l, c)).collect() };

    let mut rel_orders = rb;
    for &r in &ra {
        rel_orders.extend(core::iter::repeat_n(r, m));
    }
    let mut powers = pb;
    let mut conj = cb;
    for w in &pa[..na] {
        for c in 0..m {
            powers.push(remap(w, &coord_map(c)));
        }
    }
    for (k, perm) in perms.iter().enumerate() {
        for l in 0..na {
            for (c, &d) in perm.iter().enumerate() {
                if c != d {
                    conj.push((k, base(l, c), vec![(base(l, d), 1)]));
                }
            }
        }
    }
    for c in 0..m {
        let map = coord_map(c);
        for (i, j, w) in &ca {
            conj.push((map[*i], map[*j], remap(w, &map)));
        }
    }
    let g = PcGroup::from_relations(rel_orders, powers, conj)?;
    let len = g.len();
    let top_map: Vec<usize> = (0..nb).collect();
    let mut parts: BTreeMap<u32, Vec<Element>> = BTreeMap::new();
    for (p, s) in ba.iter() {
        let entry = parts.entry(p).or_default();
        for c in 0..m {
            let map = coord_map(c);
            entry.extend(s.igs().iter().map(|x| embed(x, &map, len)));
        }
    }
    for (p, s) in bb.iter() {
        parts.entry(p).or_default().extend(s.igs().iter().map(|x| embed(x, &top_map, len)));
    }
    let basis = assemble_basis(&g, parts);
    Ok((g, basis))
}

#[cfg(test)]
mod tests {
    use super::*;

    use alloc::string::ToString;

    fn order_of(e: &GroupExpr) -> BigUint {
        build(e, &BuildConfig::default()).unwrap().0.order().clone()
    }

    #[test]
    fn cyclic_six() {
        let (g, basis) = cyclic(6).unwrap();
        assert_eq!(g.relative_orders(), &[2, 3]);
        assert_eq!(basis.primes(), [2, 3]);
        basis.verify(&g).unwrap();
        let (g1, b1) = cyclic(1).unwrap();
        assert!(g1.is_trivial());
        assert!(b1.primes().is_empty());
    }

    #[test]
    fn wreath_orders() {
        let e = wr(cyc(2), cyc(3));
        assert_eq!(order_of(&e), BigUint::from(24u32));
        assert_eq!(e.predicted_order(), Some(BigUint::from(24u32)));
        assert_eq!(e.predicted_generators(), 4);
        let (g, basis) = build(&e, &BuildConfig::default()).unwrap();
        basis.verify(&g).unwrap();
        assert_eq!(basis.get(2).unwrap().order(), &BigUint::from(8u32));
        assert_eq!(basis.get(3).unwrap().order(), &BigUint::from(3u32));
    }

    #[test]
    fn example_expressions() {
        assert_eq!(example2(2, 3, 0).unwrap(), cyc(2));
        assert_eq!(example2(2, 3, 1).unwrap(), wr(wr(cyc(2), cyc(3)), cyc(2)));
        assert_eq!(example1(2, 3, 5, 7, 0).unwrap(), wr(cyc(7), wr(cyc(2), cyc(3))));
        assert!(example2(2, 2, 1).is_err());
        assert!(example1(2, 3, 5, 6, 1).is_err());
        let e = GroupExpr::Ex2 { p: 2, q: 3, n: 1 };
        assert_eq!(e.to_string(), "Ex2(2,3,1)");
        assert_eq!(e.predicted_order(), Some(BigUint::from(1152u32)));
    }

    #[test]
    fn example1_beyond_budget_fails_fast() {
        let e = GroupExpr::Ex1 { p: 2, q: 3, r: 5, t: 7, n: 1 };
        assert!(e.predicted_order().is_none());
        let err = build(&e, &BuildConfig::default()).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn hall_subgroups() {
        let e = GroupExpr::Ex2 { p: 2, q: 3, n: 1 };
        let (g, basis) = build(&e, &BuildConfig::default()).unwrap();
        assert_eq!(g.order(), &BigUint::from(1152u32));
        basis.verify(&g).unwrap();
        assert!(hall(&g, &basis, &[]).unwrap().is_trivial());
        assert_eq!(hall(&g, &basis, &[3]).unwrap().order(), &BigUint::from(9u32));
        assert_eq!(hall(&g, &basis, &[2, 3]).unwrap(), Subgroup::whole(&g));
    }
}
