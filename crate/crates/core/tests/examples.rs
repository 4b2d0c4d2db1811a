//! Worked examples for each module. Expected values come from the
//! brute-force oracle, from the group definitions, or from the published
//! computations for the second iterated-wreath family.

mod common;

use common::{built, Pair, BUDGET};
use fitheight_core::constructors::{cyc, dir, example1, example2, hall, wr, GroupExpr};
use fitheight_core::invariants::*;
use fitheight_core::pc::{product_coprime, quotient, section_kernel};
use fitheight_core::towers::*;
use fitheight_core::{PcGroup, Subgroup};
use num_bigint::BigUint;

fn sub(g: &PcGroup, gens: &[Vec<u32>]) -> Subgroup {
    let els: Vec<_> = gens.iter().map(|e| g.element(e.clone()).unwrap()).collect();
    Subgroup::generated(g, &els).unwrap()
}

fn big(n: u64) -> BigUint {
    n.into()
}

/// W(C2,C3): g0 is the top C3, g1..g3 the base coordinates.
fn a4_wreath() -> Pair {
    Pair::new(&wr(cyc(2), cyc(3)))
}

#[test]
fn collection_in_small_groups() {
    let (g, _) = built(&cyc(6));
    let w = g.normal_form(&[(1, 1), (0, 1)]).unwrap();
    assert_eq!(w.exponents(), &[1, 1]);
    assert!(g.normal_form(&[]).unwrap().is_identity());
    let c = g.commutator(&g.generator(0), &g.generator(1)).unwrap();
    assert!(c.is_identity());

    let p = Pair::new(&wr(cyc(3), cyc(2)));
    let (top, base) = (p.g.generator(0), p.g.generator(1));
    let x = p.g.product(&p.g.product(&top, &base).unwrap(), &top).unwrap();
    let (ti, bi) = (p.index(&top), p.index(&base));
    assert_eq!(p.index(&x), p.t.mul(p.t.mul(ti, bi), ti));
    let c = p.g.commutator(&base, &top).unwrap();
    assert_eq!(p.index(&c), p.t.comm(bi, ti));
    assert!(p.g.product(&x, &p.g.inverse(&x).unwrap()).unwrap().is_identity());
}

#[test]
fn subgroups_of_the_wreath_a4() {
    let p = a4_wreath();
    let g = &p.g;
    assert!(Subgroup::generated(g, &[]).unwrap().is_trivial());
    assert_eq!(Subgroup::generated(g, &g.generators()).unwrap().order(), g.order());
    let v0 = sub(g, &[vec![0, 1, 1, 0], vec![0, 0, 1, 1]]);
    assert_eq!(v0.order(), &big(4));
    assert_eq!(p.set(&v0).len(), 4);
    assert!(!v0.contains(g, &g.element(vec![0, 1, 1, 1]).unwrap()));
    assert!(Subgroup::trivial(g).contains(g, &g.identity()));

    let top = sub(g, &[vec![1, 0, 0, 0]]);
    let nc = top.normal_closure(g);
    assert_eq!(nc.order(), &big(12));
    assert_eq!(p.set(&nc), p.t.normal_closure(&[p.index(&g.generator(0))]));
    let base = sub(g, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    assert!(base.is_normal(g));
    let w = Subgroup::whole(g);
    assert_eq!(w.normal_closure(g), w);

    let dg = w.commutator(g, &w).unwrap();
    assert_eq!(dg, v0);
    assert!(base.commutator(g, &base).unwrap().is_trivial());
}

#[test]
fn quotients_of_the_wreath_a4() {
    let p = a4_wreath();
    let g = &p.g;
    let base = sub(g, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    assert_eq!(quotient(g, &base).unwrap().target().order(), &big(3));
    let v0 = sub(g, &[vec![0, 1, 1, 0], vec![0, 0, 1, 1]]);
    let q = quotient(g, &v0).unwrap();
    assert_eq!(q.target().order(), &big(6));
    let qw = Subgroup::whole(q.target());
    assert_eq!(derived_length(q.target(), &qw), 1);
    let id = quotient(g, &Subgroup::trivial(g)).unwrap();
    assert_eq!(id.target().order(), g.order());
}

#[test]
fn section_kernels() {
    let p = a4_wreath();
    let g = &p.g;
    let top = sub(g, &[vec![1, 0, 0, 0]]);
    let base = sub(g, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    let one = Subgroup::trivial(g);
    let c = section_kernel(g, &top, &base, &one, BUDGET).unwrap();
    assert_eq!(p.set(&c), p.t.section_centralizer(&p.set(&top), &p.set(&base), &p.t.trivial()));
    assert!(c.is_trivial());
    assert_eq!(section_kernel(g, &top, &base, &base, BUDGET).unwrap(), top);

    let (g, basis) = built(&dir(cyc(2), cyc(3)));
    let (c2, c3) = (basis.get(2).unwrap(), basis.get(3).unwrap());
    assert_eq!(&section_kernel(&g, c2, c3, &Subgroup::trivial(&g), BUDGET).unwrap(), c2);
}

#[test]
fn coprime_products() {
    let (g, basis) = built(&wr(cyc(2), cyc(3)));
    let t = Subgroup::trivial(&g);
    let s3 = basis.get(3).unwrap();
    let r = product_coprime(&g, &t, s3).unwrap();
    assert!(r.permutable);
    assert_eq!(&r.subgroup, s3);
    // a top C3 and a C2 outside V: ⟨C3, g1⟩ is all of G, of order 24 > 6
    let c2 = sub(&g, &[vec![0, 1, 0, 0]]);
    let r = product_coprime(&g, s3, &c2).unwrap();
    assert!(!r.permutable);
    assert_eq!(r.subgroup.order(), &big(24));
}

#[test]
fn constructors_and_halls() {
    let (g, basis) = built(&cyc(6));
    assert_eq!(g.order(), &big(6));
    assert_eq!(basis.primes(), [2, 3]);
    let (g, basis) = built(&wr(cyc(2), cyc(3)));
    assert_eq!(g.order(), &big(24));
    assert_eq!((basis.get(2).unwrap().order(), basis.get(3).unwrap().order()), (&big(8), &big(3)));
    let (g, basis) = built(&GroupExpr::Ex2 { p: 2, q: 3, n: 1 });
    assert_eq!(g.order(), &big(1152));
    assert!(hall(&g, &basis, &[]).unwrap().is_trivial());
    assert_eq!(hall(&g, &basis, &[2, 3]).unwrap(), Subgroup::whole(&g));
    assert_eq!(hall(&g, &basis, &[3]).unwrap().order(), &big(9));

    assert_eq!(example2(2, 3, 0).unwrap(), cyc(2));
    assert_eq!(example2(2, 3, 1).unwrap(), wr(wr(cyc(2), cyc(3)), cyc(2)));
    assert_eq!(example1(2, 3, 5, 7, 0).unwrap(), wr(cyc(7), wr(cyc(2), cyc(3))));
}

#[test]
fn derived_and_nilpotent_series() {
    let (g, _) = built(&cyc(6));
    let w = Subgroup::whole(&g);
    assert_eq!(derived_length(&g, &w), 1);
    assert!(nilpotent_residual(&g, &w).is_trivial());
    assert_eq!(fitting_height(&g, &w), 1);

    let p = a4_wreath();
    let w = Subgroup::whole(&p.g);
    assert_eq!(derived_length(&p.g, &w), p.t.derived_length(&p.t.whole()));
    let r = nilpotent_residual(&p.g, &w);
    assert_eq!(r.order(), &big(4));
    assert_eq!(fitting_height(&p.g, &w), p.t.fitting_height());

    let p = Pair::new(&wr(cyc(3), cyc(2)));
    let r = nilpotent_residual(&p.g, &Subgroup::whole(&p.g));
    assert_eq!(r.order(), &big(3));
    assert!(r.primes(&p.g) == [3]);

    let (g, basis) = built(&GroupExpr::Ex2 { p: 2, q: 3, n: 1 });
    assert_eq!(derived_length(&g, basis.get(3).unwrap()), 1);
    assert_eq!(fitting_height(&g, &Subgroup::whole(&g)), 3);
}

#[test]
fn cores_lengths_and_minimal_normals() {
    let p = a4_wreath();
    let g = &p.g;
    let o2 = o_pi(g, &p.basis, &[2], BUDGET).unwrap();
    assert_eq!(o2.order(), &big(8));
    assert!(o_pi(g, &p.basis, &[3], BUDGET).unwrap().is_trivial());
    assert_eq!(o_pi(g, &p.basis, &[2, 3], BUDGET).unwrap(), Subgroup::whole(g));
    assert_eq!(fitting_subgroup(g, &p.basis, BUDGET).unwrap(), o2);
    assert_eq!(pi_length(g, &p.basis, &[2], BUDGET).unwrap(), 1);
    let m = minimal_normal_subgroup(g, &p.basis, BUDGET).unwrap();
    assert!(p.t.minimal_normal_subgroups().contains(&p.set(&m)));

    let p = Pair::new(&wr(cyc(3), cyc(2)));
    let f = fitting_subgroup(&p.g, &p.basis, BUDGET).unwrap();
    assert_eq!(p.set(&f), p.t.fitting());
    assert_eq!(f.order(), &big(9));

    let (g, basis) = built(&cyc(6));
    assert_eq!(pi_length(&g, &basis, &[2], BUDGET).unwrap(), 1);
    assert_eq!(pi_length(&g, &basis, &[5], BUDGET).unwrap(), 0);
    assert_eq!(fitting_subgroup(&g, &basis, BUDGET).unwrap(), Subgroup::whole(&g));
    let m = minimal_normal_subgroup(&g, &basis, BUDGET).unwrap();
    assert!(m.order() == &big(2) || m.order() == &big(3));

    let p = Pair::new(&GroupExpr::Ex2 { p: 2, q: 3, n: 1 });
    let g = &p.g;
    assert_eq!(pi_length(g, &p.basis, &[2], BUDGET).unwrap(), p.t.pi_length(&[2]));
    let m = minimal_normal_subgroup(g, &p.basis, BUDGET).unwrap();
    assert_eq!(m.primes(g), [2]);
    assert!(m.commutator(g, &m).unwrap().is_trivial());
    assert!(m.igs().iter().all(|x| g.power(x, 2).unwrap().is_identity()));
    // inside the base G_1 × G_1 of the outer wreath
    assert!(m.depths().iter().all(|&d| d >= 1));
    assert!(p.t.is_minimal_normal(&p.set(&m)));

    let s2 = p.basis.get(2).unwrap();
    assert_eq!(delta(g, &p.basis, s2).unwrap(), p.t.derived_length(&p.set(s2)));
    let whole = Subgroup::whole(g);
    let d3 = p.t.derived_length(&p.set(p.basis.get(3).unwrap()));
    assert_eq!(d3, 1);
    assert_eq!(delta(g, &p.basis, &whole).unwrap(), p.t.derived_length(&p.set(s2)).max(d3));
    let (g, basis) = built(&cyc(6));
    assert_eq!(delta(&g, &basis, &Subgroup::whole(&g)).unwrap(), 1);
}

#[test]
fn tower_validation_examples() {
    let p = Pair::new(&wr(cyc(3), cyc(2)));
    let g = &p.g;
    let top = sub(g, &[vec![1, 0, 0]]);
    let base = sub(g, &[vec![0, 1, 0], vec![0, 0, 1]]);
    let mut t = Tower::new(vec![(2, top.clone()), (3, base.clone())]);
    assert_eq!(t.validate(g, BUDGET).unwrap(), None);
    assert_eq!(t.bars(), &[big(2), big(9)]);
    let oracle = p.t.tower_bars(&[(2, p.set(&top)), (3, p.set(&base))]).unwrap();
    assert_eq!(oracle, [2, 9]);

    let (g, basis) = built(&cyc(6));
    let (c2, c3) = (basis.get(2).unwrap().clone(), basis.get(3).unwrap().clone());
    let mut t = Tower::new(vec![(2, c2.clone()), (3, c3.clone())]);
    assert_eq!(t.validate(&g, BUDGET).unwrap(), Some(TowerFailure::TrivialSection { index: 0 }));
    let mut t = Tower::new(vec![(3, c3)]);
    assert_eq!(t.validate(&g, BUDGET).unwrap(), None);
    assert_eq!(t.len(), 1);
}

/// A tower with primes (2, 3, 2) in S3 × S3 ≅ W(C3,C2)-free setting: the
/// wreath W(C2, W(C3, C2))'s base is too big, so use Ex2(2,3,1).
fn two_three_two() -> (PcGroup, Tower) {
    let (g, basis) = built(&GroupExpr::Ex2 { p: 2, q: 3, n: 1 });
    let s = search_max(&g, &basis, SearchMode::Exact, &SearchLimits::default()).unwrap();
    assert_eq!(s.tower.primes(), [2, 3, 2]);
    (g, s.tower)
}

#[test]
fn tower_statistics_and_deletion() {
    let (g, t) = two_three_two();
    let s = stats(&g, &t, &[2]);
    assert_eq!((s.nu, s.beta), (2, 2));
    let s = stats(&g, &t, &[3]);
    assert_eq!((s.nu, s.beta), (1, 1));
    let s = stats(&g, &t, &[5]);
    assert_eq!((s.nu, s.beta), (0, 0));
    assert!(tails_normal(&g, &t));

    assert_eq!(delete(&g, &t, 1, 0, BUDGET).unwrap(), Deletion::FlankingPrimes(2));
    match delete(&g, &t, 2, 0, BUDGET).unwrap() {
        Deletion::Tower(d) => assert_eq!(d.primes(), [2, 3]),
        other => panic!("{other:?}"),
    }
    match delete(&g, &t, 0, 2, BUDGET).unwrap() {
        Deletion::Tower(d) => assert!(d.is_empty() && d.is_validated()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn projection_examples() {
    let (g, t) = two_three_two();
    let one = Subgroup::trivial(&g);
    let pr = project_mod(&g, &t, &one, BUDGET).unwrap();
    assert_eq!(pr.tower.primes(), [2, 3]);

    let p = a4_wreath();
    let g = &p.g;
    let top = sub(g, &[vec![1, 0, 0, 0]]);
    let v = sub(g, &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]);
    let mut t = Tower::new(vec![(3, top), (2, v)]);
    assert_eq!(t.validate(g, BUDGET).unwrap(), None);
    let diag = sub(g, &[vec![0, 1, 1, 1]]);
    let pr = project_mod(g, &t, &diag, BUDGET).unwrap();
    assert_eq!(pr.projection.target().order(), &big(12));
    assert_eq!(pr.tower.primes(), [3]);
    assert!(pr.tower.is_validated());
}

#[test]
fn exact_search_examples() {
    for (e, h) in [(cyc(6), 1), (wr(cyc(2), cyc(3)), 2), (GroupExpr::Ex2 { p: 2, q: 3, n: 1 }, 3)] {
        let (g, basis) = built(&e);
        let s = search_max(&g, &basis, SearchMode::Exact, &SearchLimits::default()).unwrap();
        assert_eq!((s.tower.len(), s.upper_bound), (h, h), "{e}");
        assert!(s.certified && s.tower.is_validated());
    }
    let p = a4_wreath();
    assert_eq!(p.t.max_tower_length(), 2);
}
