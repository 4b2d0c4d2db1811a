use alloc::vec::Vec;
use core::hash::Hash;

use hashbrown::HashMap;
use num_bigint::BigUint;

use super::{Element, IgsBuilder, PcGroup, Subgroup};
use crate::error::{Error, Result};

/// Default cap on the number of points an orbit may reach.
pub const DEFAULT_COSET_BUDGET: usize = 1_000_000;

/// Stabilizer of `point` in `acting` for a right action, via the induced
/// pcgs of `acting` processed from the deepest entry upwards.
///
/// Returns the orbit length and the stabilizer. Fails once the orbit would
/// exceed `budget` points.
pub(crate) fn orbit_stabilizer<P, F>(
    g: &PcGroup,
    acting: &Subgroup,
    point: P,
    act: F,
    budget: usize,
) -> Result<(usize, Subgroup)>
where
    P: Clone + Eq + Hash,
    F: Fn(&P, &Element) -> P,
{
    let gens = acting.igs();
    let mut points: Vec<P> = alloc::vec![point.clone()];
    // Schreier vector: (parent point, generator) for every non-root point
    let mut parent: Vec<(usize, usize)> = alloc::vec![(usize::MAX, usize::MAX)];
    let mut index: HashMap<P, usize> = HashMap::new();
    index.insert(point.clone(), 0);
    let mut stab = Vec::new();

    for (gi, x) in gens.iter().enumerate().rev() {
        let img = act(&point, x);
        if let Some(&k) = index.get(&img) {
            let t = transversal(g, gens, &parent, k);
            let mut s = x.clone();
            g.mul_assign(&mut s, &g.inv(&t));
            if !s.is_identity() {
                stab.push(s);
            }
            continue;
        }
        let r = g.rel_orders[acting.depths()[gi]] as usize;
        let m = points.len();
        if m.saturating_mul(r) > budget {
            return Err(Error::budget("orbit", m.saturating_mul(r), budget));
        }
        points.reserve(m * (r - 1));
        for block in 1..r {
            let base = (block - 1) * m;
            for k in 0..m {
                let q = act(&points[base + k], x);
                index.insert(q.clone(), points.len());
                points.push(q);
                parent.push((base + k, gi));
            }
        }
    }
    let orbit = points.len();
    let order = acting.order() / BigUint::from(orbit);
    Ok((orbit, IgsBuilder::induced_with_order(g, stab, &order)))
}

fn transversal(g: &PcGroup, gens: &[Element], parent: &[(usize, usize)], mut k: usize) -> Element {
    let mut path = Vec::new();
    while k != 0 {
        let (p, gi) = parent[k];
        path.push(gi);
        k = p;
    }
    let mut t = g.identity();
    for &gi in path.iter().rev() {
        g.mul_assign(&mut t, &gens[gi]);
    }
    t
}

/// `C_P(Q/R)`: elements of `P` acting trivially by conjugation on the
/// section `Q/R`.
///
/// Requires `R ⊴ Q` and `P` normalising both. Computed as the pointwise
/// stabilizer of the cosets `xR`, `x` running over the induced pcgs of `Q`.
pub fn section_kernel(g: &PcGroup, p: &Subgroup, q: &Subgroup, r: &Subgroup, budget: usize) -> Result<Subgroup> {
    p.same_group(g)?;
    q.same_group(g)?;
    r.same_group(g)?;
    if !r.is_subgroup_of(g, q) || !r.is_normalized_by(g, q.igs()) {
        return Err(Error::Precondition("R must be a normal subgroup of Q".into()));
    }
    if !q.is_normalized_by(g, p.igs()) || !r.is_normalized_by(g, p.igs()) {
        return Err(Error::Precondition("P must normalise Q and R".into()));
    }
    section_kernel_unchecked(g, p, q, r, budget)
}

pub(crate) fn section_kernel_unchecked(
    g: &PcGroup,
    p: &Subgroup,
    q: &Subgroup,
    r: &Subgroup,
    budget: usize,
) -> Result<Subgroup> {
    let mut c = p.clone();
    for x in q.igs() {
        if c.is_trivial() {
            break;
        }
        let pt = r.coset_rep(g, x);
        if pt.is_identity() {
            continue;
        }
        let (_, s) = orbit_stabilizer(g, &c, pt, |y, h| r.coset_rep(g, &g.conj(y, h)), budget)?;
        c = s;
    }
    Ok(c)
}

/// `N_K(S)`, with `K` acting on subgroups by conjugation.
pub fn normalizer(g: &PcGroup, k: &Subgroup, s: &Subgroup, budget: usize) -> Result<Subgroup> {
    k.same_group(g)?;
    s.same_group(g)?;
    if s.is_normalized_by(g, k.igs()) {
        return Ok(k.clone());
    }
    let (_, n) = orbit_stabilizer(
        g,
        k,
        s.igs().to_vec(),
        |igs, h| {
            let h_inv = g.inv(h);
            let gens = igs.iter().map(|x| g.conj_with(x, h, &h_inv)).collect();
            IgsBuilder::induced_with_order(g, gens, s.order()).igs().to_vec()
        },
        budget,
    )?;
    Ok(n)
}

/// `P ∩ N` for `N` normalised by `P`: the stabilizer of the trivial coset
/// of `N` under right multiplication.
pub fn intersect_normal(g: &PcGroup, p: &Subgroup, n: &Subgroup, budget: usize) -> Result<Subgroup> {
    p.same_group(g)?;
    n.same_group(g)?;
    if !n.is_normalized_by(g, p.igs()) {
        return Err(Error::Precondition("P must normalise N".into()));
    }
    if p.is_subgroup_of(g, n) {
        return Ok(p.clone());
    }
    let (_, s) = orbit_stabilizer(g, p, g.identity(), |y, h| n.coset_rep(g, &g.mul(y, h)), budget)?;
    Ok(s)
}

/// A Sylow `q`-subgroup of `M`, grown inside successive normalizers.
pub fn sylow_subgroup(g: &PcGroup, m: &Subgroup, q: u32, budget: usize) -> Result<Subgroup> {
    m.same_group(g)?;
    let target = m.prime_exponent(g, q);
    if target == 0 {
        return Ok(Subgroup::trivial(g));
    }
    if m.primes(g) == [q] {
        return Ok(m.clone());
    }
    if crate::invariants::is_nilpotent(g, m) {
        // the q-parts of a generating set generate the unique Sylow q-subgroup
        let gens: alloc::vec::Vec<_> = m.igs().iter().map(|x| g.sigma_part(x, &[q])).collect();
        return Subgroup::generated(g, &gens);
    }
    let mut s = Subgroup::trivial(g);
    while s.prime_exponent(g, q) < target {
        let n = normalizer(g, m, &s, budget)?;
        let next = n
            .igs()
            .iter()
            .zip(n.depths())
            .find(|(_, &d)| g.rel_orders[d] == q && !s.depths().contains(&d))
            .map(|(x, _)| g.sigma_part(x, &[q]));
        let Some(y) = next else {
            return Err(Error::Invariant("Sylow growth stalled".into()));
        };
        let mut gens = s.igs().to_vec();
        gens.push(y);
        let mut b = IgsBuilder::new(g);
        b.close(gens, &[]);
        s = b.finish();
    }
    Ok(s)
}
