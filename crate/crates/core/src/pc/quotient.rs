use alloc::vec::Vec;

use super::{Element, IgsBuilder, PcGroup, Subgroup, Word};
use crate::error::{Error, Result};

/// Natural projection `G → G/N`.
///
/// The quotient keeps the generators of `G` whose index is not a leading
/// depth of `N`, in their original order. Each coset has a unique
/// representative with zero exponents at the depths of `N`; its remaining
/// exponents are the image.
#[derive(Clone, Debug)]
pub struct Projection {
    source: PcGroup,
    target: PcGroup,
    kernel: Subgroup,
    kept: Vec<usize>,
}

/// `G/N` for a normal subgroup `N`, with the projection.
pub fn quotient(g: &PcGroup, n: &Subgroup) -> Result<Projection> {
    n.same_group(g)?;
    if !n.is_normal(g) {
        return Err(Error::NotNormal("quotient kernel"));
    }
    Ok(quotient_unchecked(g, n))
}

pub(crate) fn quotient_unchecked(g: &PcGroup, n: &Subgroup) -> Projection {
    let len = g.len();
    let mut in_kernel = alloc::vec![false; len];
    for &d in n.depths() {
        in_kernel[d] = true;
    }
    let kept: Vec<usize> = (0..len).filter(|&i| !in_kernel[i]).collect();
    let mut pos = alloc::vec![usize::MAX; len];
    for (k, &i) in kept.iter().enumerate() {
        pos[i] = k;
    }
    let project = |x: &Element| -> Word {
        let rep = n.coset_rep(g, x);
        kept.iter().enumerate().filter(|(_, &i)| rep.0[i] != 0).map(|(k, &i)| (k as u32, rep.0[i])).collect()
    };
    let rel_orders: Vec<u32> = kept.iter().map(|&i| g.rel_orders[i]).collect();
    let powers: Vec<Word> = kept.iter().map(|&i| project(&g.power_relation(i))).collect();
    let mut conj: Vec<Vec<(u32, Word)>> = alloc::vec![Vec::new(); kept.len()];
    for (a, &i) in kept.iter().enumerate() {
        for (j, w) in &g.conj[i] {
            let j = *j as usize;
            if in_kernel[j] {
                continue;
            }
            let mut e = g.identity();
            for &(x, y) in w.iter() {
                e.0[x as usize] = y;
            }
            let w = project(&e);
            let b = pos[j] as u32;
            if !(w.len() == 1 && w[0] == (b, 1)) {
                conj[a].push((b, w));
            }
        }
    }
    let target = PcGroup::assemble(rel_orders, powers, conj);
    Projection { source: g.clone(), target, kernel: n.clone(), kept }
}

impl Projection {
    pub fn source(&self) -> &PcGroup {
        &self.source
    }

    /// The quotient group `G/N`.
    pub fn target(&self) -> &PcGroup {
        &self.target
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    /// Indices of the generators of `G` that survive in the quotient.
    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    /// Canonical representative of `xN`.
    pub fn reduce(&self, x: &Element) -> Element {
        self.kernel.coset_rep(&self.source, x)
    }

    pub fn image(&self, x: &Element) -> Element {
        let rep = self.reduce(x);
        Element::from_vec(self.kept.iter().map(|&i| rep.0[i]).collect())
    }

    /// The coset representative of a quotient element.
    pub fn lift(&self, y: &Element) -> Element {
        let mut e = self.source.identity();
        for (k, &i) in self.kept.iter().enumerate() {
            e.0[i] = y.0[k];
        }
        e
    }

    /// `HN/N`.
    pub fn image_subgroup(&self, h: &Subgroup) -> Subgroup {
        let gens: Vec<Element> = h.igs().iter().map(|x| self.image(x)).filter(|y| !y.is_identity()).collect();
        let mut b = IgsBuilder::new(&self.target);
        b.close(gens, &[]);
        b.finish()
    }

    /// Full preimage of a subgroup of the quotient.
    pub fn preimage(&self, k: &Subgroup) -> Subgroup {
        let mut gens: Vec<Element> = k.igs().iter().map(|y| self.lift(y)).collect();
        gens.extend(self.kernel.igs().iter().cloned());
        let order = k.order() * self.kernel.order();
        IgsBuilder::induced_with_order(&self.source, gens, &order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use num_bigint::BigUint;

    /// S3 × C2 with g0 inverting g1, g2 central.
    fn s3xc2() -> PcGroup {
        PcGroup::from_relations(vec![2, 3, 2], vec![vec![], vec![], vec![]], vec![(0, 1, vec![(1, 2)])]).unwrap()
    }

    #[test]
    fn quotient_by_derived_subgroup() {
        let g = s3xc2();
        let w = Subgroup::whole(&g);
        let d = w.commutator(&g, &w).unwrap();
        let p = quotient(&g, &d).unwrap();
        assert_eq!(p.target().order(), &BigUint::from(4u32));
        assert_eq!(p.kept(), &[0, 2]);
        for x in Subgroup::whole(&g).elements(&g) {
            for y in [g.generator(0), g.generator(1), g.generator(2)] {
                let lhs = p.image(&g.mul(&x, &y));
                let rhs = p.target().mul(&p.image(&x), &p.image(&y));
                assert_eq!(lhs, rhs);
            }
            assert_eq!(p.image(&x).is_identity(), d.contains(&g, &x));
        }
        let t = Subgroup::trivial(p.target());
        assert_eq!(p.preimage(&t), d);
        assert_eq!(p.preimage(&Subgroup::whole(p.target())), w);
    }

    #[test]
    fn rejects_non_normal_kernel() {
        let g = s3xc2();
        let h = Subgroup::generated(&g, &[g.generator(0)]).unwrap();
        assert!(matches!(quotient(&g, &h), Err(Error::NotNormal(_))));
    }
}
