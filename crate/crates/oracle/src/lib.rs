//! Brute-force reference implementation for small groups.
//!
//! Groups are built as permutation groups straight from their definition
//! (cyclic, direct, regular wreath), enumerated into a Cayley table, and
//! every invariant is computed by exhausting elements. Nothing here uses
//! polycyclic machinery; the only shared convention is the order of the
//! generating sequence, so exponent vectors can be mapped across.
//!
//! Conventions: permutations act on the right, `x^y = y⁻¹xy`,
//! `[x,y] = x⁻¹y⁻¹xy`.

use std::collections::HashMap;

pub type Perm = Vec<u32>;

/// Group description, mirroring the engine's expressions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Spec {
    Cyc(u64),
    Dir(Box<Spec>, Box<Spec>),
    Wr(Box<Spec>, Box<Spec>),
}

pub fn cyc(n: u64) -> Spec {
    Spec::Cyc(n)
}

pub fn dir(a: Spec, b: Spec) -> Spec {
    Spec::Dir(Box::new(a), Box::new(b))
}

pub fn wr(a: Spec, b: Spec) -> Spec {
    Spec::Wr(Box::new(a), Box::new(b))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn compose(x: &[u32], y: &[u32]) -> Perm {
    x.iter().map(|&i| y[i as usize]).collect()
}

fn identity(n: usize) -> Perm {
    (0..n as u32).collect()
}

fn perm_pow(x: &[u32], k: u64) -> Perm {
    let mut out = identity(x.len());
    for _ in 0..k {
        out = compose(&out, x);
    }
    out
}

/// Faithful permutation representation with a generating sequence in the
/// engine's order, and the relative order attached to each generator.
#[derive(Clone, Debug)]
pub struct PermRep {
    pub degree: usize,
    pub gens: Vec<Perm>,
    pub rel_orders: Vec<u32>,
}

impl PermRep {
    /// `Π gens[i]^{e_i}`.
    pub fn element(&self, exps: &[u32]) -> Perm {
        let mut out = identity(self.degree);
        for (g, &e) in self.gens.iter().zip(exps) {
            out = compose(&out, &perm_pow(g, e as u64));
        }
        out
    }

    /// All elements, indexed by the lexicographic rank of their exponent
    /// vectors.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![identity(self.degree)];
        for (g, &r) in self.gens.iter().zip(&self.rel_orders).rev() {
            let mut next = Vec::with_capacity(out.len() * r as usize);
            let mut gp = identity(self.degree);
            for _ in 0..r {
                for y in &out {
                    next.push(compose(&gp, y));
                }
                gp = compose(&gp, g);
            }
            out = next;
        }
        out
    }
}

pub fn perm_rep(spec: &Spec) -> PermRep {
    match spec {
        Spec::Cyc(n) => {
            let n = *n as usize;
            if n == 1 {
                return PermRep { degree: 1, gens: vec![], rel_orders: vec![] };
            }
            let cycle: Perm = (0..n as u32).map(|i| (i + 1) % n as u32).collect();
            let mut gens = Vec::new();
            let mut rel_orders = Vec::new();
            let mut step = 1u64;
            for p in prime_factors(n as u64) {
                gens.push(perm_pow(&cycle, step));
                rel_orders.push(p as u32);
                step *= p;
            }
            PermRep { degree: n, gens, rel_orders }
        }
        Spec::Dir(a, b) => {
            let ra = perm_rep(a);
            let rb = perm_rep(b);
            let degree = ra.degree + rb.degree;
            let shift = ra.degree as u32;
            let mut gens = Vec::new();
            for g in &ra.gens {
                let mut p = identity(degree);
                p[..ra.degree].copy_from_slice(g);
                gens.push(p);
            }
            for g in &rb.gens {
                let mut p = identity(degree);
                for (i, &x) in g.iter().enumerate() {
                    p[ra.degree + i] = x + shift;
                }
                gens.push(p);
            }
            let mut rel_orders = ra.rel_orders.clone();
            rel_orders.extend(&rb.rel_orders);
            PermRep { degree, gens, rel_orders }
        }
        Spec::Wr(a, b) => {
            let ra = perm_rep(a);
            let rb = perm_rep(b);
            let elems = rb.elements();
            let m = elems.len();
            let index: HashMap<&Perm, usize> = elems.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let da = ra.degree;
            // point (ω, c) ↦ ω·m + c
            let degree = da * m;
            let mut gens = Vec::new();
            for t in &rb.gens {
                let mut p = identity(degree);
                for c in 0..m {
                    let ct = index[&compose(&elems[c], t)];
                    for w in 0..da {
                        p[w * m + c] = (w * m + ct) as u32;
                    }
                }
                gens.push(p);
            }
            for g in &ra.gens {
                for c in 0..m {
                    let mut p = identity(degree);
                    for w in 0..da {
                        p[w * m + c] = g[w] * m as u32 + c as u32;
                    }
                    gens.push(p);
                }
            }
            let mut rel_orders = rb.rel_orders.clone();
            for &r in &ra.rel_orders {
                rel_orders.extend(std::iter::repeat_n(r, m));
            }
            PermRep { degree, gens, rel_orders }
        }
    }
}

/// Set of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Set {
    bits: Vec<u64>,
}

impl Set {
    fn empty(n: usize) -> Self {
        Set { bits: vec![0; n.div_ceil(64)] }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    fn insert(&mut self, i: usize) -> bool {
        let had = self.contains(i);
        self.bits[i / 64] |= 1 << (i % 64);
        !had
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits
            .iter()
            .enumerate()
            .flat_map(|(k, &w)| (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| k * 64 + b))
    }

    pub fn is_subset(&self, other: &Set) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Cayley table of a finite group; element 0 is the identity.
pub struct Table {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
    perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
    gens: Vec<usize>,
    rel_orders: Vec<u32>,
}

impl Table {
    /// Enumerates the group; `None` when it has more than `max_order`
    /// elements (at most 65535).
    pub fn new(rep: &PermRep, max_order: usize) -> Option<Table> {
        let max_order = max_order.min(u16::MAX as usize);
        let id = identity(rep.degree);
        let mut perms = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0usize);
        let mut i = 0;
        while i < perms.len() {
            for g in &rep.gens {
                let q = compose(&perms[i], g);
                if !index.contains_key(&q) {
                    if perms.len() == max_order {
                        return None;
                    }
                    index.insert(q.clone(), perms.len());
                    perms.push(q);
                }
            }
            i += 1;
        }
        let n = perms.len();
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = index[&compose(&perms[a], &perms[b])] as u16;
            }
        }
        let inv = (0..n).map(|a| (0..n).find(|&b| mul[a * n + b] == 0).unwrap() as u16).collect();
        let gens = rep.gens.iter().map(|g| index[g]).collect();
        Some(Table { n, mul, inv, perms, index, gens, rel_orders: rep.rel_orders.clone() })
    }

    pub fn from_spec(spec: &Spec, max_order: usize) -> Option<Table> {
        Table::new(&perm_rep(spec), max_order)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// `a^b = b⁻¹ab`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(b), a), b)
    }

    /// `[a,b] = a⁻¹b⁻¹ab`.
    pub fn comm(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Index of `Π g_i^{e_i}` over the generating sequence.
    pub fn element(&self, exps: &[u32]) -> usize {
        let mut x = 0;
        for (&g, &e) in self.gens.iter().zip(exps) {
            for _ in 0..e {
                x = self.mul(x, g);
            }
        }
        x
    }

    /// Exponent vector of every element, by enumerating all vectors; `None`
    /// if the generating sequence does not give unique normal forms.
    pub fn exponent_vectors(&self) -> Option<Vec<Vec<u32>>> {
        let mut out: Vec<Option<Vec<u32>>> = vec![None; self.n];
        let mut e = vec![0u32; self.rel_orders.len()];
        loop {
            let x = self.element(&e);
            if out[x].is_some() {
                return None;
            }
            out[x] = Some(e.clone());
            // odometer, last position fastest
            let mut k = e.len();
            loop {
                if k == 0 {
                    return out.into_iter().collect();
                }
                k -= 1;
                e[k] += 1;
                if e[k] < self.rel_orders[k] {
                    break;
                }
                e[k] = 0;
            }
        }
    }

    pub fn perm(&self, a: usize) -> &Perm {
        &self.perms[a]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn whole(&self) -> Set {
        let mut s = Set::empty(self.n);
        for i in 0..self.n {
            s.insert(i);
        }
        s
    }

    pub fn trivial(&self) -> Set {
        let mut s = Set::empty(self.n);
        s.insert(0);
        s
    }

    /// `⟨gens⟩`.
    pub fn subgroup(&self, gens: &[usize]) -> Set {
        self.closure(gens, &[])
    }

    /// Smallest subgroup containing `gens` and invariant under conjugation
    /// by `by`.
    pub fn closure(&self, gens: &[usize], by: &[usize]) -> Set {
        let mut s = self.trivial();
        let mut elems = vec![0usize];
        let mut xs: Vec<usize> = Vec::new();
        let mut queue: Vec<usize> = gens.to_vec();
        while let Some(x) = queue.pop() {
            if s.contains(x) {
                continue;
            }
            xs.push(x);
            for &b in by {
                queue.push(self.conj(x, b));
            }
            // old elements were closed under the old generators; extend by x,
            // and close every new element under all generators
            let mut frontier: Vec<usize> = elems.iter().map(|&e| self.mul(e, x)).collect();
            while let Some(y) = frontier.pop() {
                if !s.insert(y) {
                    continue;
                }
                elems.push(y);
                for &z in &xs {
                    frontier.push(self.mul(y, z));
                }
            }
        }
        s
    }

    pub fn normal_closure(&self, gens: &[usize]) -> Set {
        self.closure(gens, &self.gens)
    }

    pub fn is_normal(&self, h: &Set) -> bool {
        h.iter().all(|x| self.gens.iter().all(|&g| h.contains(self.conj(x, g))))
    }

    /// `[H,K]`, generated by all commutators.
    pub fn commutator(&self, h: &Set, k: &Set) -> Set {
        let mut gens = Vec::new();
        for x in h.iter() {
            for y in k.iter() {
                gens.push(self.comm(x, y));
            }
        }
        gens.sort_unstable();
        gens.dedup();
        self.subgroup(&gens)
    }

    pub fn derived_length(&self, h: &Set) -> usize {
        let mut cur = h.clone();
        let mut d = 0;
        while cur.len() > 1 {
            cur = self.commutator(&cur, &cur);
            d += 1;
        }
        d
    }

    /// Nilpotency by the lower central series.
    pub fn is_nilpotent(&self, h: &Set) -> bool {
        let mut cur = h.clone();
        loop {
            if cur.len() == 1 {
                return true;
            }
            let next = self.commutator(&cur, h);
            if next == cur {
                return false;
            }
            cur = next;
        }
    }

    fn is_sigma_number(n: usize, sigma: &[u32]) -> bool {
        prime_factors(n as u64).iter().all(|&p| sigma.contains(&(p as u32)))
    }

    /// Largest normal subgroup `M ⊇ N` with `M/N` a σ-group, for `N` normal.
    pub fn o_sigma_mod(&self, n: &Set, sigma: &[u32]) -> Set {
        let mut cur = n.clone();
        for x in 0..self.n {
            if cur.contains(x) {
                continue;
            }
            let mut gens: Vec<usize> = n.iter().collect();
            gens.push(x);
            let m = self.normal_closure(&gens);
            if Self::is_sigma_number(m.len() / n.len(), sigma) {
                let mut all: Vec<usize> = cur.iter().collect();
                all.extend(m.iter());
                cur = self.normal_closure(&all);
            }
        }
        cur
    }

    pub fn o_sigma(&self, sigma: &[u32]) -> Set {
        self.o_sigma_mod(&self.trivial(), sigma)
    }

    pub fn primes(&self) -> Vec<u32> {
        let mut ps: Vec<u32> = prime_factors(self.n as u64).into_iter().map(|p| p as u32).collect();
        ps.dedup();
        ps
    }

    /// Preimage of `F(G/N)`.
    pub fn fitting_mod(&self, n: &Set) -> Set {
        let mut gens: Vec<usize> = n.iter().collect();
        for p in self.primes() {
            gens.extend(self.o_sigma_mod(n, &[p]).iter());
        }
        self.normal_closure(&gens)
    }

    pub fn fitting(&self) -> Set {
        self.fitting_mod(&self.trivial())
    }

    /// Length of the upper Fitting series.
    pub fn fitting_height(&self) -> usize {
        let mut cur = self.trivial();
        let mut h = 0;
        while cur.len() < self.n {
            cur = self.fitting_mod(&cur);
            h += 1;
        }
        h
    }

    /// Number of σ-steps in the upper σ′σ-series.
    pub fn pi_length(&self, sigma: &[u32]) -> usize {
        let co: Vec<u32> = self.primes().into_iter().filter(|p| !sigma.contains(p)).collect();
        let mut cur = self.trivial();
        let mut ell = 0;
        loop {
            let n = self.o_sigma_mod(&cur, &co);
            if n.len() == self.n {
                return ell;
            }
            let p = self.o_sigma_mod(&n, sigma);
            ell += 1;
            if p.len() == self.n {
                return ell;
            }
            cur = p;
        }
    }

    pub fn minimal_normal_subgroups(&self) -> Vec<Set> {
        let mut closures: Vec<Set> = Vec::new();
        for x in 1..self.n {
            let c = self.normal_closure(&[x]);
            if !closures.contains(&c) {
                closures.push(c);
            }
        }
        closures.iter().filter(|c| !closures.iter().any(|d| d != *c && d.is_subset(c))).cloned().collect()
    }

    pub fn is_minimal_normal(&self, h: &Set) -> bool {
        h.len() > 1 && self.is_normal(h) && h.iter().filter(|&x| x != 0).all(|x| &self.normal_closure(&[x]) == h)
    }

    /// `{g ∈ P : [g,x] ∈ R for all x ∈ Q}`.
    pub fn section_centralizer(&self, p: &Set, q: &Set, r: &Set) -> Set {
        let elems: Vec<usize> = p.iter().filter(|&g| q.iter().all(|x| r.contains(self.comm(g, x)))).collect();
        self.subgroup(&elems)
    }

    /// Checks the tower conditions; returns the bar orders on success.
    pub fn tower_bars(&self, tower: &[(u32, Set)]) -> Option<Vec<usize>> {
        let h = tower.len();
        for (i, (p, s)) in tower.iter().enumerate() {
            if s.len() == 1 || !Self::is_sigma_number(s.len(), &[*p]) {
                return None;
            }
            if i + 1 < h && tower[i + 1].0 == *p {
                return None;
            }
            for (_, t) in &tower[i..] {
                if !t.iter().all(|x| s.iter().all(|g| t.contains(self.conj(x, g)))) {
                    return None;
                }
            }
        }
        let mut bars = vec![0; h];
        let mut r = self.trivial();
        for i in (0..h).rev() {
            let c =
                if i + 1 == h { self.trivial() } else { self.section_centralizer(&tower[i].1, &tower[i + 1].1, &r) };
            bars[i] = tower[i].1.len() / c.len();
            if bars[i] < 2 {
                return None;
            }
            r = c;
        }
        Some(bars)
    }

    /// All subgroups of prime-power order (for tiny groups).
    pub fn p_subgroups(&self) -> Vec<(u32, Set)> {
        let mut out = Vec::new();
        for p in self.primes() {
            let elems: Vec<usize> =
                (1..self.n).filter(|&x| Self::is_sigma_number(self.element_order(x), &[p])).collect();
            let mut seen: Vec<Set> = vec![self.trivial()];
            let mut i = 0;
            while i < seen.len() {
                let cur = seen[i].clone();
                for &x in &elems {
                    if cur.contains(x) {
                        continue;
                    }
                    let mut gens: Vec<usize> = cur.iter().collect();
                    gens.push(x);
                    let s = self.subgroup(&gens);
                    if Self::is_sigma_number(s.len(), &[p]) && !seen.contains(&s) {
                        seen.push(s);
                    }
                }
                i += 1;
            }
            out.extend(seen.into_iter().skip(1).map(|s| (p, s)));
        }
        out
    }

    /// Longest tower, by exhaustive search over prime-power subgroups.
    pub fn max_tower_length(&self) -> usize {
        let subs = self.p_subgroups();
        let mut best = 0;
        let mut stack: Vec<Vec<usize>> = (0..subs.len()).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let tower: Vec<(u32, Set)> = chain.iter().map(|&i| subs[i].clone()).collect();
            if self.tower_bars(&tower).is_none() {
                continue;
            }
            best = best.max(chain.len());
            // extend at the front: every new entry must normalise the rest
            for (j, (q, s)) in subs.iter().enumerate() {
                if *q != tower[0].0
                    && tower.iter().all(|(_, t)| t.iter().all(|x| s.iter().all(|g| t.contains(self.conj(x, g)))))
                {
                    let mut next = vec![j];
                    next.extend(&chain);
                    stack.push(next);
                }
            }
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wreath_c2_c3() {
        let t = Table::from_spec(&wr(cyc(2), cyc(3)), 5000).unwrap();
        assert_eq!(t.order(), 24);
        assert!(t.exponent_vectors().is_some());
        let g = t.whole();
        assert_eq!(t.derived_length(&g), 2);
        assert_eq!(t.fitting_height(), 2);
        assert_eq!(t.fitting().len(), 8);
        assert_eq!(t.o_sigma(&[3]).len(), 1);
        assert_eq!(t.pi_length(&[2]), 1);
        let mins: Vec<usize> = t.minimal_normal_subgroups().iter().map(Set::len).collect();
        assert_eq!(mins.len(), 2);
        assert!(mins.contains(&2) && mins.contains(&4));
        assert_eq!(t.max_tower_length(), 2);
    }

    #[test]
    fn cyclic_and_direct() {
        let t = Table::from_spec(&dir(cyc(6), cyc(5)), 5000).unwrap();
        assert_eq!(t.order(), 30);
        assert_eq!(t.fitting_height(), 1);
        assert_eq!(t.derived_length(&t.whole()), 1);
        assert_eq!(t.max_tower_length(), 1);
        let t = Table::from_spec(&cyc(1), 10).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.fitting_height(), 0);
    }

    #[test]
    fn wreath_c3_c2() {
        let t = Table::from_spec(&wr(cyc(3), cyc(2)), 5000).unwrap();
        assert_eq!(t.order(), 18);
        assert_eq!(t.fitting().len(), 9);
        let g = t.whole();
        let mut r = g.clone();
        loop {
            let next = t.commutator(&r, &g);
            if next == r {
                break;
            }
            r = next;
        }
        assert_eq!(r.len(), 3);
    }
}
