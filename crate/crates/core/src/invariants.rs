//! Series and numeric invariants: derived length, nilpotent residual,
//! Fitting height, O_σ, the Fitting subgroup, π-length and δ.
//!
//! Functions that take a [`SylowBasis`] need it for the ambient group; it is
//! carried through the quotients they form.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::constructors::SylowBasis;
use crate::error::{Error, Result};
use crate::fp::{self, Space, Vector};
use crate::pc::{quotient, section_kernel, Element, IgsBuilder, PcGroup, Subgroup};

/// Which series a [`SeriesReport`] holds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    Derived,
    LowerCentral,
    LowerNilpotent,
    UpperFitting,
    PiSeries,
}

impl SeriesKind {
    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Derived => "derived",
            SeriesKind::LowerCentral => "lower-central",
            SeriesKind::LowerNilpotent => "lower-nilpotent",
            SeriesKind::UpperFitting => "upper-fitting",
            SeriesKind::PiSeries => "pi-series",
        }
    }
}

/// A chain of subgroups, strictly monotone. Descending series start at the
/// group, upper series start at 1; the π-series lists the distinct terms of
/// `1 = P_0 ≤ N_0 ≤ P_1 ≤ …` as preimages in the group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesReport {
    pub kind: SeriesKind,
    pub terms: Vec<Subgroup>,
    pub length: usize,
}

pub fn derived_series(g: &PcGroup, h: &Subgroup) -> Vec<Subgroup> {
    let mut out = vec![h.clone()];
    let mut cur = h.clone();
    while !cur.is_trivial() {
        let next = cur.commutator_unchecked(g, &cur);
        if next.order() == cur.order() {
            // a perfect non-trivial subgroup cannot occur in a soluble group
            break;
        }
        out.push(next.clone());
        cur = next;
    }
    out
}

/// Least `d` with the `d`-th derived subgroup trivial.
pub fn derived_length(g: &PcGroup, h: &Subgroup) -> usize {
    derived_series(g, h).len() - 1
}

/// `H = γ_1 ≥ γ_2 ≥ …` up to the first repeated term.
pub fn lower_central_series(g: &PcGroup, h: &Subgroup) -> Vec<Subgroup> {
    let mut out = vec![h.clone()];
    let mut cur = h.clone();
    while !cur.is_trivial() {
        let next = cur.commutator_unchecked(g, h);
        if next.order() == cur.order() {
            break;
        }
        out.push(next.clone());
        cur = next;
    }
    out
}

/// Smallest normal subgroup of `H` with nilpotent quotient.
pub fn nilpotent_residual(g: &PcGroup, h: &Subgroup) -> Subgroup {
    if h.primes(g).len() <= 1 {
        return Subgroup::trivial(g);
    }
    lower_central_series(g, h).pop().unwrap()
}

pub fn is_nilpotent(g: &PcGroup, h: &Subgroup) -> bool {
    nilpotent_residual(g, h).is_trivial()
}

/// `R^0 = H`, `R^{i+1} = R(R^i)`, down to 1.
pub fn lower_nilpotent_series(g: &PcGroup, h: &Subgroup) -> Vec<Subgroup> {
    let mut out = vec![h.clone()];
    let mut cur = h.clone();
    while !cur.is_trivial() {
        cur = nilpotent_residual(g, &cur);
        out.push(cur.clone());
    }
    out
}

/// Fitting height as the length of the lower nilpotent series.
pub fn fitting_height(g: &PcGroup, h: &Subgroup) -> usize {
    lower_nilpotent_series(g, h).len() - 1
}

pub fn derived_report(g: &PcGroup, h: &Subgroup) -> SeriesReport {
    let terms = derived_series(g, h);
    SeriesReport { kind: SeriesKind::Derived, length: terms.len() - 1, terms }
}

pub fn lower_central_report(g: &PcGroup, h: &Subgroup) -> SeriesReport {
    let terms = lower_central_series(g, h);
    SeriesReport { kind: SeriesKind::LowerCentral, length: terms.len() - 1, terms }
}

pub fn lower_nilpotent_report(g: &PcGroup, h: &Subgroup) -> SeriesReport {
    let terms = lower_nilpotent_series(g, h);
    SeriesReport { kind: SeriesKind::LowerNilpotent, length: terms.len() - 1, terms }
}

fn p_part_order(g: &PcGroup, h: &Subgroup, sigma: &[u32]) -> BigUint {
    h.depths()
        .iter()
        .map(|&d| g.relative_orders()[d])
        .filter(|r| sigma.contains(r))
        .fold(BigUint::one(), |acc, r| acc * BigUint::from(r))
}

/// Subgroup generated by the σ-parts of the induced pcgs of `h`; equals the
/// set of σ-elements when `h` has a normal Hall σ-subgroup.
fn sigma_torsion(g: &PcGroup, h: &Subgroup, sigma: &[u32]) -> Subgroup {
    let gens: Vec<Element> = h.igs().iter().map(|x| g.sigma_part(x, sigma)).filter(|y| !y.is_identity()).collect();
    IgsBuilder::induced_with_order(g, gens, &p_part_order(g, h, sigma))
}

/// A minimal normal subgroup, chosen deterministically.
///
/// Takes the last non-trivial derived term, its Sylow subgroup at the
/// smallest prime `p`, the last non-trivial term of the p-th power series of
/// that (an elementary abelian normal subgroup `E`), and then descends
/// through `G`-submodules of `E`. Every non-zero submodule has a non-zero
/// vector fixed by the Sylow `p`-subgroup from `basis`; when those fixed
/// vectors span a line its spin is the unique minimal submodule, otherwise
/// fixed vectors are spun in lexicographic order until one gives a proper
/// submodule or none does.
pub fn minimal_normal_subgroup(g: &PcGroup, basis: &SylowBasis, budget: usize) -> Result<Subgroup> {
    if g.is_trivial() {
        return Err(Error::TrivialGroup);
    }
    let l = derived_series(g, &Subgroup::whole(g)).into_iter().rev().nth(1).unwrap();
    let p = l.primes(g)[0];
    let lp = sigma_torsion(g, &l, &[p]);
    let mut e = lp;
    loop {
        let powers: Vec<Element> = e.igs().iter().map(|x| g.pow(x, p as u64)).filter(|y| !y.is_identity()).collect();
        if powers.is_empty() {
            break;
        }
        let mut b = IgsBuilder::new(g);
        b.close(powers, &[]);
        e = b.finish();
    }
    let k = e.igs().len();
    let matrix = |y: &Element| -> Vec<Vector> {
        let y_inv = g.inv(y);
        e.igs().iter().map(|x| e.coordinates(g, &g.conj_with(x, y, &y_inv)).expect("E is normal")).collect()
    };
    let g_mats: Vec<Vec<Vector>> = g.generators().iter().map(matrix).collect();
    let s_mats: Vec<Vec<Vector>> = match basis.get(p) {
        Some(s) => s.igs().iter().map(matrix).collect(),
        None => Vec::new(),
    };
    let mut v = Space::new(p, k);
    for i in 0..k {
        let mut row = vec![0; k];
        row[i] = 1;
        v.insert(&row);
    }
    'descend: loop {
        let f = fp::fixed_space(p, &v, &s_mats);
        let fb = f.basis().to_vec();
        if fb.len() == 1 {
            v = fp::spin(p, k, &fb, &g_mats);
            break;
        }
        let points = (BigUint::from(p).pow(fb.len() as u32) - 1u32) / BigUint::from(p - 1);
        let mut coeffs = vec![0u32; fb.len()];
        let mut seen = BigUint::from(0u32);
        while next_projective_point(&mut coeffs, p) {
            seen += 1u32;
            if seen > BigUint::from(budget) {
                return Err(Error::budget("submodule search", points, budget));
            }
            let mut vec = vec![0u32; k];
            for (c, b) in coeffs.iter().zip(&fb) {
                for (x, &y) in vec.iter_mut().zip(b) {
                    *x = ((*x as u64 + *c as u64 * y as u64) % p as u64) as u32;
                }
            }
            let w = fp::spin(p, k, &[vec], &g_mats);
            if w.rank() < v.rank() {
                v = w;
                continue 'descend;
            }
        }
        break;
    }
    let gens: Vec<Element> = v
        .basis()
        .iter()
        .map(|row| {
            let mut x = g.identity();
            for (c, y) in row.iter().zip(e.igs()) {
                if *c != 0 {
                    g.mul_pow_assign(&mut x, y, *c);
                }
            }
            x
        })
        .collect();
    let order = BigUint::from(p).pow(v.rank() as u32);
    Ok(IgsBuilder::induced_with_order(g, gens, &order))
}

/// Advances to the next vector whose first non-zero entry is 1, in
/// lexicographic order starting from all zeros. Returns `false` when done.
fn next_projective_point(c: &mut [u32], p: u32) -> bool {
    let n = c.len();
    if c.iter().all(|&x| x == 0) {
        if n == 0 {
            return false;
        }
        c[n - 1] = 1;
        return true;
    }
    let lead = c.iter().position(|&x| x != 0).unwrap();
    // increment the tail after the leading 1
    for i in (lead + 1..n).rev() {
        if c[i] + 1 < p {
            c[i] += 1;
            return true;
        }
        c[i] = 0;
    }
    if lead == 0 {
        return false;
    }
    c[lead] = 0;
    c[lead - 1] = 1;
    true
}

/// Largest normal σ-subgroup.
///
/// Recursion through a minimal normal `p`-subgroup `N`: with `H/N = O_σ(G/N)`
/// the answer is `H` when `p ∈ σ`; otherwise it is the σ-torsion of
/// `C_H(N) = N × O_σ(C_H(N))`.
pub fn o_pi(g: &PcGroup, basis: &SylowBasis, sigma: &[u32], budget: usize) -> Result<Subgroup> {
    let primes = g.primes();
    if primes.iter().all(|p| sigma.contains(p)) {
        return Ok(Subgroup::whole(g));
    }
    if !primes.iter().any(|p| sigma.contains(p)) {
        return Ok(Subgroup::trivial(g));
    }
    let n = minimal_normal_subgroup(g, basis, budget)?;
    let p = n.primes(g)[0];
    let proj = quotient(g, &n)?;
    let qb = basis.project(&proj);
    let k = o_pi(proj.target(), &qb, sigma, budget)?;
    let h = proj.preimage(&k);
    if sigma.contains(&p) {
        return Ok(h);
    }
    let c = section_kernel(g, &h, &n, &Subgroup::trivial(g), budget)?;
    Ok(sigma_torsion(g, &c, sigma))
}

/// `F(G)` as the product of the `O_p(G)`.
pub fn fitting_subgroup(g: &PcGroup, basis: &SylowBasis, budget: usize) -> Result<Subgroup> {
    let mut gens = Vec::new();
    let mut order = BigUint::one();
    for p in g.primes() {
        let o = o_pi(g, basis, &[p], budget)?;
        order *= o.order();
        gens.extend(o.igs().iter().cloned());
    }
    let f = IgsBuilder::induced_with_order(g, gens, &order);
    if f.order() != &order {
        return Err(Error::Invariant("p-cores do not form a direct product".into()));
    }
    Ok(f)
}

/// `1 = F_0 < F_1 < … < F_h = G` with `F_{i+1}/F_i = F(G/F_i)`.
pub fn upper_fitting_series(g: &PcGroup, basis: &SylowBasis, budget: usize) -> Result<SeriesReport> {
    let whole = Subgroup::whole(g);
    let mut cur = Subgroup::trivial(g);
    let mut terms = vec![cur.clone()];
    while cur.order() != whole.order() {
        let proj = quotient(g, &cur)?;
        let qb = basis.project(&proj);
        let f = fitting_subgroup(proj.target(), &qb, budget)?;
        cur = proj.preimage(&f);
        terms.push(cur.clone());
    }
    Ok(SeriesReport { kind: SeriesKind::UpperFitting, length: terms.len() - 1, terms })
}

/// Preimage of `O_σ(G/N)` for normal `N`.
fn o_pi_mod(g: &PcGroup, basis: &SylowBasis, n: &Subgroup, sigma: &[u32], budget: usize) -> Result<Subgroup> {
    if n.is_trivial() {
        return o_pi(g, basis, sigma, budget);
    }
    let proj = quotient(g, n)?;
    let qb = basis.project(&proj);
    let k = o_pi(proj.target(), &qb, sigma, budget)?;
    Ok(proj.preimage(&k))
}

/// Upper σ′σ-series; `length` is the π-length ℓ_σ(G).
pub fn pi_series(g: &PcGroup, basis: &SylowBasis, sigma: &[u32], budget: usize) -> Result<SeriesReport> {
    let co: Vec<u32> = g.primes().into_iter().filter(|p| !sigma.contains(p)).collect();
    let full = g.order().clone();
    let mut cur = Subgroup::trivial(g);
    let mut terms = vec![cur.clone()];
    let mut length = 0;
    while cur.order() != &full {
        let n = o_pi_mod(g, basis, &cur, &co, budget)?;
        if n.order() != cur.order() {
            terms.push(n.clone());
        }
        if n.order() == &full {
            break;
        }
        let p = o_pi_mod(g, basis, &n, sigma, budget)?;
        if p.order() == n.order() {
            return Err(Error::Invariant(format!("π-series stalled for σ = {sigma:?}")));
        }
        length += 1;
        terms.push(p.clone());
        cur = p;
    }
    Ok(SeriesReport { kind: SeriesKind::PiSeries, terms, length })
}

pub fn pi_length(g: &PcGroup, basis: &SylowBasis, sigma: &[u32], budget: usize) -> Result<usize> {
    Ok(pi_series(g, basis, sigma, budget)?.length)
}

/// δ(H): the largest derived length of a Sylow subgroup of `H`, read off
/// the basis members at the primes of `H` (which must lie in `H`).
pub fn delta(g: &PcGroup, basis: &SylowBasis, h: &Subgroup) -> Result<usize> {
    let mut best = 0;
    for p in h.primes(g) {
        let s = basis.get(p).ok_or_else(|| Error::Precondition(format!("basis has no member at {p}")))?;
        if !s.is_subgroup_of(g, h) {
            return Err(Error::Precondition(format!("basis member at {p} is not contained in H")));
        }
        best = best.max(derived_length(g, s));
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{build, cyc, wr, BuildConfig, GroupExpr};
    use crate::pc::DEFAULT_COSET_BUDGET;

    fn built(e: &GroupExpr) -> (PcGroup, SylowBasis) {
        build(e, &BuildConfig::default()).unwrap()
    }

    #[test]
    fn projective_points() {
        let mut c = vec![0u32; 2];
        let mut seen = Vec::new();
        while next_projective_point(&mut c, 3) {
            seen.push(c.clone());
        }
        assert_eq!(seen, [vec![0, 1], vec![1, 0], vec![1, 1], vec![1, 2]]);
    }

    #[test]
    fn c6() {
        let (g, basis) = built(&cyc(6));
        let w = Subgroup::whole(&g);
        assert_eq!(derived_length(&g, &w), 1);
        assert_eq!(fitting_height(&g, &w), 1);
        assert!(is_nilpotent(&g, &w));
        assert_eq!(pi_length(&g, &basis, &[2], DEFAULT_COSET_BUDGET).unwrap(), 1);
        assert_eq!(pi_length(&g, &basis, &[5], DEFAULT_COSET_BUDGET).unwrap(), 0);
        assert_eq!(delta(&g, &basis, &w).unwrap(), 1);
        let n = minimal_normal_subgroup(&g, &basis, DEFAULT_COSET_BUDGET).unwrap();
        assert_eq!(n.igs().len(), 1);
    }

    #[test]
    fn wreath_c2_c3() {
        let (g, basis) = built(&wr(cyc(2), cyc(3)));
        let w = Subgroup::whole(&g);
        assert_eq!(derived_length(&g, &w), 2);
        assert_eq!(fitting_height(&g, &w), 2);
        assert_eq!(nilpotent_residual(&g, &w).order(), &BigUint::from(4u32));
        let b = DEFAULT_COSET_BUDGET;
        assert_eq!(o_pi(&g, &basis, &[2], b).unwrap().order(), &BigUint::from(8u32));
        assert!(o_pi(&g, &basis, &[3], b).unwrap().is_trivial());
        assert_eq!(fitting_subgroup(&g, &basis, b).unwrap().order(), &BigUint::from(8u32));
        assert_eq!(upper_fitting_series(&g, &basis, b).unwrap().length, 2);
        assert_eq!(pi_length(&g, &basis, &[2], b).unwrap(), 1);
        let n = minimal_normal_subgroup(&g, &basis, b).unwrap();
        assert!(n.is_normal(&g));
    }
}
