use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use super::{Element, PcGroup};
use crate::error::{Error, Result};
use crate::primes::inv_mod;

/// Subgroup of a [`PcGroup`] held as its canonical induced pcgs: leading
/// depths strictly increase, every leading exponent is 1 and every entry has
/// exponent 0 at the leading depths of the other entries. Two subgroups of the
/// same group are equal iff their sequences are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    group: u64,
    igs: Vec<Element>,
    depths: Vec<usize>,
    order: BigUint,
}

impl Subgroup {
    pub fn trivial(g: &PcGroup) -> Self {
        Subgroup { group: g.id(), igs: Vec::new(), depths: Vec::new(), order: BigUint::one() }
    }

    pub fn whole(g: &PcGroup) -> Self {
        Subgroup { group: g.id(), igs: g.generators(), depths: (0..g.len()).collect(), order: g.order().clone() }
    }

    /// `⟨gens⟩` with its canonical induced pcgs.
    pub fn generated(g: &PcGroup, gens: &[Element]) -> Result<Self> {
        for x in gens {
            g.check(x)?;
        }
        let mut b = IgsBuilder::new(g);
        b.close(gens.to_vec(), &[]);
        Ok(b.finish())
    }

    pub fn igs(&self) -> &[Element] {
        &self.igs
    }

    pub fn depths(&self) -> &[usize] {
        &self.depths
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.igs.is_empty()
    }

    /// Distinct primes dividing the order, ascending.
    pub fn primes(&self, g: &PcGroup) -> Vec<u32> {
        let mut ps: Vec<u32> = self.depths.iter().map(|&d| g.rel_orders[d]).collect();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Multiplicity of `p` in the order.
    pub fn prime_exponent(&self, g: &PcGroup, p: u32) -> usize {
        self.depths.iter().filter(|&&d| g.rel_orders[d] == p).count()
    }

    pub(crate) fn same_group(&self, g: &PcGroup) -> Result<()> {
        if self.group == g.id() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    pub(crate) fn check_pair(&self, other: &Subgroup) -> Result<()> {
        if self.group == other.group {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// Sifts `x` through the sequence; the residue is the identity iff `x ∈ H`.
    pub(crate) fn sift(&self, g: &PcGroup, x: &Element) -> Element {
        let mut x = x.clone();
        let mut pos = 0;
        while let Some(d) = x.depth() {
            while pos < self.depths.len() && self.depths[pos] < d {
                pos += 1;
            }
            if pos == self.depths.len() || self.depths[pos] != d {
                break;
            }
            let a = g.rel_orders[d] - x.0[d];
            g.mul_pow_assign(&mut x, &self.igs[pos], a);
        }
        x
    }

    /// Membership by sifting.
    pub fn contains(&self, g: &PcGroup, x: &Element) -> bool {
        self.sift(g, x).is_identity()
    }

    pub fn membership(&self, g: &PcGroup, x: &Element) -> Result<bool> {
        self.same_group(g)?;
        g.check(x)?;
        Ok(self.contains(g, x))
    }

    /// Exponents of `x ∈ H` relative to the induced sequence, or `None` if
    /// `x ∉ H`.
    pub(crate) fn coordinates(&self, g: &PcGroup, x: &Element) -> Option<Vec<u32>> {
        let mut x = x.clone();
        let mut coords = vec![0u32; self.igs.len()];
        let mut pos = 0;
        while let Some(d) = x.depth() {
            while pos < self.depths.len() && self.depths[pos] < d {
                pos += 1;
            }
            if pos == self.depths.len() || self.depths[pos] != d {
                return None;
            }
            coords[pos] = x.0[d];
            let a = g.rel_orders[d] - x.0[d];
            g.mul_pow_assign(&mut x, &self.igs[pos], a);
        }
        Some(coords)
    }

    /// Canonical representative of the coset `xH`: zero exponents at the
    /// leading depths of `H`.
    pub(crate) fn coset_rep(&self, g: &PcGroup, x: &Element) -> Element {
        let mut x = x.clone();
        for (pos, &d) in self.depths.iter().enumerate() {
            let e = x.0[d];
            if e != 0 {
                g.mul_pow_assign(&mut x, &self.igs[pos], g.rel_orders[d] - e);
            }
        }
        x
    }

    pub fn is_subgroup_of(&self, g: &PcGroup, other: &Subgroup) -> bool {
        self.order <= other.order && self.igs.iter().all(|x| other.contains(g, x))
    }

    /// Whether every element of `by` normalises this subgroup.
    pub fn is_normalized_by(&self, g: &PcGroup, by: &[Element]) -> bool {
        by.iter().all(|y| {
            let y_inv = g.inv(y);
            self.igs.iter().all(|x| self.contains(g, &g.conj_with(x, y, &y_inv)))
        })
    }

    pub fn is_normal(&self, g: &PcGroup) -> bool {
        self.is_normalized_by(g, &g.generators())
    }

    /// Smallest normal subgroup of the ambient group containing this one.
    pub fn normal_closure(&self, g: &PcGroup) -> Subgroup {
        self.normal_closure_under(g, &g.generators())
    }

    /// Smallest subgroup containing this one and normalised by `by`.
    pub fn normal_closure_under(&self, g: &PcGroup, by: &[Element]) -> Subgroup {
        let mut b = IgsBuilder::new(g);
        b.close(self.igs.clone(), by);
        b.finish()
    }

    /// `[H, K]`: the normal closure in `⟨H, K⟩` of the commutators of the
    /// generators.
    pub fn commutator(&self, g: &PcGroup, other: &Subgroup) -> Result<Subgroup> {
        self.check_pair(other)?;
        Ok(self.commutator_unchecked(g, other))
    }

    pub(crate) fn commutator_unchecked(&self, g: &PcGroup, other: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        for x in &self.igs {
            for y in &other.igs {
                let c = g.comm(x, y);
                if !c.is_identity() {
                    gens.push(c);
                }
            }
        }
        let mut by = self.igs.clone();
        by.extend(other.igs.iter().cloned());
        let mut b = IgsBuilder::new(g);
        b.close(gens, &by);
        b.finish()
    }

    /// `⟨H, K⟩`.
    pub fn join(&self, g: &PcGroup, other: &Subgroup) -> Subgroup {
        let mut gens = self.igs.clone();
        gens.extend(other.igs.iter().cloned());
        let mut b = IgsBuilder::new(g);
        b.close(gens, &[]);
        b.finish()
    }

    /// Conjugate subgroup `H^y`.
    pub fn conjugate(&self, g: &PcGroup, y: &Element) -> Subgroup {
        let y_inv = g.inv(y);
        let gens: Vec<Element> = self.igs.iter().map(|x| g.conj_with(x, y, &y_inv)).collect();
        IgsBuilder::induced_with_order(g, gens, &self.order)
    }

    /// All elements, in normal-form order of their coordinates. Intended for
    /// small subgroups (tests, enumeration checks).
    pub fn elements(&self, g: &PcGroup) -> Vec<Element> {
        let mut out = vec![g.identity()];
        for (x, &d) in self.igs.iter().zip(&self.depths).rev() {
            let r = g.rel_orders[d];
            let mut next = Vec::with_capacity(out.len() * r as usize);
            let mut xp = g.identity();
            for _ in 0..r {
                for y in &out {
                    next.push(g.mul(&xp, y));
                }
                xp = g.mul(&xp, x);
            }
            out = next;
        }
        out
    }
}

/// Result of [`product_coprime`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimeProduct {
    pub subgroup: Subgroup,
    /// `|⟨H,K⟩| = |H|·|K|`, i.e. `HK = KH`.
    pub permutable: bool,
}

/// `⟨H, K⟩` for subgroups of coprime order, reporting whether `HK` is
/// already a subgroup.
pub fn product_coprime(g: &PcGroup, h: &Subgroup, k: &Subgroup) -> Result<CoprimeProduct> {
    h.check_pair(k)?;
    h.same_group(g)?;
    let hp = h.primes(g);
    if k.primes(g).iter().any(|p| hp.contains(p)) {
        return Err(Error::NotCoprime);
    }
    let expected = h.order() * k.order();
    let mut gens = h.igs.clone();
    gens.extend(k.igs.iter().cloned());
    // the order hint is what is being tested, so no fast path here
    let mut b = IgsBuilder::new(g);
    b.close(gens, &[]);
    let subgroup = b.finish();
    let permutable = subgroup.order == expected;
    Ok(CoprimeProduct { subgroup, permutable })
}

/// Sift table used to build induced pcgs.
pub(crate) struct IgsBuilder<'a> {
    g: &'a PcGroup,
    table: Vec<Option<Element>>,
}

impl<'a> IgsBuilder<'a> {
    pub(crate) fn new(g: &'a PcGroup) -> Self {
        IgsBuilder { g, table: vec![None; g.len()] }
    }

    fn sift(&self, mut x: Element) -> Element {
        while let Some(d) = x.depth() {
            match &self.table[d] {
                Some(t) => {
                    let a = self.g.rel_orders[d] - x.0[d];
                    self.g.mul_pow_assign(&mut x, t, a);
                }
                None => break,
            }
        }
        x
    }

    /// Sifts `x` and, if it survives, stores a power of it with leading
    /// exponent 1. Returns the stored element, and the sifted element when
    /// that power may generate less than it does.
    fn insert(&mut self, x: Element) -> Option<(Element, Option<Element>)> {
        let y = self.sift(x);
        let d = y.depth()?;
        let r = self.g.rel_orders[d];
        let lead = y.0[d];
        if lead == 1 {
            self.table[d] = Some(y.clone());
            return Some((y, None));
        }
        let z = self.g.pow(&y, inv_mod(lead, r) as u64);
        self.table[d] = Some(z.clone());
        Some((z, Some(y)))
    }

    /// Closes the table under powers and commutators, and under conjugation
    /// by `by`, after adding `queue`.
    pub(crate) fn close(&mut self, mut queue: Vec<Element>, by: &[Element]) {
        queue.reverse();
        while let Some(x) = queue.pop() {
            let Some((y, rest)) = self.insert(x) else { continue };
            // sifting the original through the new entry recovers whatever
            // the normalising power dropped
            queue.extend(rest);
            let d = y.depth().unwrap();
            let r = self.g.rel_orders[d];
            for (e, t) in self.table.iter().enumerate() {
                if e == d {
                    continue;
                }
                if let Some(t) = t {
                    let c = self.g.comm(&y, t);
                    if !c.is_identity() {
                        queue.push(c);
                    }
                }
            }
            for b in by {
                let c = self.g.comm(&y, b);
                if !c.is_identity() {
                    queue.push(c);
                }
            }
            let p = self.g.pow(&y, r as u64);
            if !p.is_identity() {
                queue.push(p);
            }
        }
    }

    pub(crate) fn order(&self) -> BigUint {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_some())
            .fold(BigUint::one(), |acc, (d, _)| acc * BigUint::from(self.g.rel_orders[d]))
    }

    /// Induced pcgs of `⟨gens⟩` when `|⟨gens⟩|` is known to divide
    /// `expected`: if sifting alone reaches that order, closure is skipped.
    pub(crate) fn induced_with_order(g: &PcGroup, gens: Vec<Element>, expected: &BigUint) -> Subgroup {
        let mut b = IgsBuilder::new(g);
        for x in &gens {
            b.insert(x.clone());
        }
        if &b.order() == expected {
            return b.finish();
        }
        let mut b = IgsBuilder::new(g);
        b.close(gens, &[]);
        b.finish()
    }

    /// Canonicalises the table into a [`Subgroup`].
    pub(crate) fn finish(self) -> Subgroup {
        let g = self.g;
        let depths: Vec<usize> = self.table.iter().enumerate().filter_map(|(d, t)| t.as_ref().map(|_| d)).collect();
        let mut igs: Vec<Element> = self.table.into_iter().flatten().collect();
        // reduce from the bottom so every entry used for clearing is final
        for i in (0..igs.len()).rev() {
            let mut x = igs[i].clone();
            for j in i + 1..igs.len() {
                let e = x.0[depths[j]];
                if e != 0 {
                    g.mul_pow_assign(&mut x, &igs[j], g.rel_orders[depths[j]] - e);
                }
            }
            igs[i] = x;
        }
        let order = depths.iter().fold(BigUint::one(), |acc, &d| acc * BigUint::from(g.rel_orders[d]));
        Subgroup { group: g.id(), igs, depths, order }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PcGroup {
        PcGroup::from_relations(vec![2, 3], vec![vec![], vec![]], vec![(0, 1, vec![(1, 2)])]).unwrap()
    }

    #[test]
    fn normalising_power_keeps_the_whole_cyclic_group() {
        // C3 × C6 with g1^2 = g2: y = g0^2 g1 has order 6, but y^2 has
        // leading exponent 1 and order 3
        let g = PcGroup::from_relations(vec![3, 2, 3], vec![vec![], vec![(2, 1)], vec![]], vec![]).unwrap();
        let y = g.element(vec![2, 1, 0]).unwrap();
        let h = Subgroup::generated(&g, core::slice::from_ref(&y)).unwrap();
        assert_eq!(h.order(), &BigUint::from(6u32));
        assert!(h.contains(&g, &y));
    }

    #[test]
    fn trivial_and_whole() {
        let g = s3();
        let t = Subgroup::generated(&g, &[]).unwrap();
        assert!(t.is_trivial());
        assert_eq!(t.order(), &BigUint::one());
        assert!(t.contains(&g, &g.identity()));
        let w = Subgroup::generated(&g, &g.generators()).unwrap();
        assert_eq!(w, Subgroup::whole(&g));
        assert_eq!(w.order(), &BigUint::from(6u32));
    }

    #[test]
    fn canonical_form_reduces_above_leading() {
        let g = s3();
        // ⟨g0·g1⟩ is a subgroup of order 2; its canonical generator keeps
        // the g1 exponent since depth 1 is not a leading depth.
        let x = g.mul(&g.generator(0), &g.generator(1));
        let h = Subgroup::generated(&g, core::slice::from_ref(&x)).unwrap();
        assert_eq!(h.order(), &BigUint::from(2u32));
        assert_eq!(h.igs()[0], x);
        assert!(!h.is_normal(&g));
        assert_eq!(h.normal_closure(&g), Subgroup::whole(&g));
        // the derived subgroup of S3 is C3
        let w = Subgroup::whole(&g);
        let d = w.commutator(&g, &w).unwrap();
        assert_eq!(d.depths(), &[1]);
        assert!(d.is_normal(&g));
    }

    #[test]
    fn coprime_products() {
        let g = s3();
        let a = Subgroup::generated(&g, &[g.generator(0)]).unwrap();
        let b = Subgroup::generated(&g, &[g.generator(1)]).unwrap();
        let p = product_coprime(&g, &a, &b).unwrap();
        assert!(p.permutable);
        assert_eq!(p.subgroup, Subgroup::whole(&g));
        assert_eq!(product_coprime(&g, &a, &a), Err(Error::NotCoprime));
        let t = Subgroup::trivial(&g);
        let p = product_coprime(&g, &t, &b).unwrap();
        assert!(p.permutable);
        assert_eq!(p.subgroup, b);
    }
}
