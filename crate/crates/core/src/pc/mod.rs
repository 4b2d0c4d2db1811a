//! Consistent polycyclic presentations with prime relative orders.
//!
//! A presentation on generators `g_0, …, g_{n-1}` carries a prime relative
//! order `r_i` per generator, a power relation `g_i^{r_i} = w_i` and conjugate
//! relations `g_j^{g_i} = c_ij` (`i < j`), where every right-hand side is a
//! normal word in generators of index strictly greater than `i`. Elements are
//! exponent vectors; products are brought to normal form by collection from
//! the left.
//!
//! Conventions used everywhere in the crate: `x^y = y⁻¹xy` and
//! `[x, y] = x⁻¹y⁻¹xy`.

mod orbit;
mod quotient;
mod subgroup;

pub use orbit::{intersect_normal, normalizer, section_kernel, sylow_subgroup, DEFAULT_COSET_BUDGET};
pub use quotient::{quotient, Projection};
pub(crate) use subgroup::IgsBuilder;
pub use subgroup::{product_coprime, CoprimeProduct, Subgroup};

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::sync::atomic::{AtomicU64, Ordering};

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::primes::is_prime;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

/// Normal word: syllables `(generator, exponent)` with strictly increasing
/// generators and exponents in `1..r`.
pub(crate) type Word = Box<[(u32, u32)]>;

/// Element of a [`PcGroup`] in normal form, stored as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(Vec<u32>);

impl Element {
    pub fn identity(len: usize) -> Self {
        Element(vec![0; len])
    }

    pub(crate) fn from_vec(v: Vec<u32>) -> Self {
        Element(v)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Index of the first non-zero exponent, `None` for the identity.
    pub fn depth(&self) -> Option<usize> {
        self.0.iter().position(|&e| e != 0)
    }

    pub fn leading_exponent(&self) -> Option<u32> {
        self.depth().map(|d| self.0[d])
    }

    pub(crate) fn syllables(&self) -> impl DoubleEndedIterator<Item = (u32, u32)> + '_ {
        self.0.iter().enumerate().filter(|(_, &e)| e != 0).map(|(i, &e)| (i as u32, e))
    }
}

/// A consistent polycyclic presentation.
#[derive(Clone, Debug)]
pub struct PcGroup {
    id: u64,
    rel_orders: Vec<u32>,
    powers: Vec<Word>,
    /// Non-trivial conjugates only: `conj[i]` lists `(j, g_j^{g_i})` sorted by `j`.
    conj: Vec<Vec<(u32, Word)>>,
    order: BigUint,
}

impl PartialEq for PcGroup {
    fn eq(&self, other: &Self) -> bool {
        self.rel_orders == other.rel_orders && self.powers == other.powers && self.conj == other.conj
    }
}

impl Eq for PcGroup {}

fn check_word(word: &[(usize, u32)], after: usize, rel_orders: &[u32], what: &str) -> Result<Word> {
    let mut prev: Option<usize> = None;
    let mut out = Vec::with_capacity(word.len());
    for &(g, e) in word {
        if g >= rel_orders.len() {
            return Err(Error::IndexOutOfRange { index: g, len: rel_orders.len() });
        }
        if g <= after || prev.is_some_and(|p| g <= p) {
            return Err(Error::InvalidPresentation(format!(
                "{what}: generator {g} out of order (must exceed {after} and increase)"
            )));
        }
        if e == 0 || e >= rel_orders[g] {
            return Err(Error::InvalidPresentation(format!(
                "{what}: exponent {e} of generator {g} outside 1..{}",
                rel_orders[g]
            )));
        }
        prev = Some(g);
        out.push((g as u32, e));
    }
    Ok(out.into_boxed_slice())
}

impl PcGroup {
    /// Builds a presentation from explicit relations.
    ///
    /// `powers[i]` is the normal word for `g_i^{r_i}`; `conj` lists
    /// `(i, j, word)` for `g_j^{g_i}` with `i < j`. Omitted conjugates are
    /// trivial (the generators commute). Words are `(generator, exponent)`
    /// pairs with strictly increasing generators, all beyond `i`.
    ///
    /// Consistency is the caller's responsibility; only constructors in this
    /// crate and [`quotient`] produce presentations that are consistent by
    /// construction.
    #[allow(clippy::type_complexity)]
    pub fn from_relations(
        rel_orders: Vec<u32>,
        powers: Vec<Vec<(usize, u32)>>,
        conj: Vec<(usize, usize, Vec<(usize, u32)>)>,
    ) -> Result<Self> {
        let n = rel_orders.len();
        for &r in &rel_orders {
            if !is_prime(r as u64) {
                return Err(Error::NotPrime(r as u64));
            }
        }
        if powers.len() != n {
            return Err(Error::InvalidPresentation(format!("{} power relations for {n} generators", powers.len())));
        }
        let powers = powers
            .iter()
            .enumerate()
            .map(|(i, w)| check_word(w, i, &rel_orders, "power relation"))
            .collect::<Result<Vec<_>>>()?;
        let mut rows: Vec<Vec<(u32, Word)>> = vec![Vec::new(); n];
        for (i, j, w) in conj {
            if i >= n || j >= n {
                return Err(Error::IndexOutOfRange { index: i.max(j), len: n });
            }
            if i >= j {
                return Err(Error::InvalidPresentation(format!("conjugate relation ({i},{j}) must have i < j")));
            }
            let w = check_word(&w, i, &rel_orders, "conjugate relation")?;
            if w.len() == 1 && w[0] == (j as u32, 1) {
                continue;
            }
            rows[i].push((j as u32, w));
        }
        for row in &mut rows {
            row.sort_by_key(|(j, _)| *j);
            if row.windows(2).any(|w| w[0].0 == w[1].0) {
                return Err(Error::InvalidPresentation("duplicate conjugate relation".into()));
            }
        }
        Ok(Self::assemble(rel_orders, powers, rows))
    }

    pub(crate) fn assemble(rel_orders: Vec<u32>, powers: Vec<Word>, conj: Vec<Vec<(u32, Word)>>) -> Self {
        let order = rel_orders.iter().fold(BigUint::one(), |acc, &r| acc * BigUint::from(r));
        PcGroup { id: NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed), rel_orders, powers, conj, order }
    }

    /// The trivial group (no generators).
    pub fn trivial() -> Self {
        Self::assemble(Vec::new(), Vec::new(), Vec::new())
    }

    pub(crate) fn id(&self) -> u64 {
        self.id
    }

    pub fn len(&self) -> usize {
        self.rel_orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rel_orders.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.rel_orders.is_empty()
    }

    pub fn relative_orders(&self) -> &[u32] {
        &self.rel_orders
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    /// π(G): the distinct primes dividing |G|, ascending.
    pub fn primes(&self) -> Vec<u32> {
        let mut ps = self.rel_orders.clone();
        ps.sort_unstable();
        ps.dedup();
        ps
    }

    /// Power relation `g_i^{r_i}` as an element.
    pub fn power_relation(&self, i: usize) -> Element {
        self.word_element(&self.powers[i])
    }

    /// Conjugate relation `g_j^{g_i}` for `i < j`.
    pub fn conjugate_relation(&self, i: usize, j: usize) -> Element {
        match self.conj[i].binary_search_by_key(&(j as u32), |(k, _)| *k) {
            Ok(pos) => self.word_element(&self.conj[i][pos].1),
            Err(_) => self.generator(j),
        }
    }

    fn word_element(&self, w: &[(u32, u32)]) -> Element {
        let mut e = vec![0; self.len()];
        for &(g, x) in w {
            e[g as usize] = x;
        }
        Element(e)
    }

    pub fn identity(&self) -> Element {
        Element::identity(self.len())
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.identity();
        e.0[i] = 1;
        e
    }

    pub fn generators(&self) -> Vec<Element> {
        (0..self.len()).map(|i| self.generator(i)).collect()
    }

    /// Validates an exponent vector against the relative orders.
    pub fn element(&self, exponents: Vec<u32>) -> Result<Element> {
        if exponents.len() != self.len() {
            return Err(Error::AmbientMismatch);
        }
        for (i, (&e, &r)) in exponents.iter().zip(&self.rel_orders).enumerate() {
            if e >= r {
                return Err(Error::InvalidParameter(format!("exponent {e} at position {i} is not below {r}")));
            }
        }
        Ok(Element(exponents))
    }

    fn check(&self, x: &Element) -> Result<()> {
        if x.len() == self.len() {
            Ok(())
        } else {
            Err(Error::AmbientMismatch)
        }
    }

    /// Collects an arbitrary word `(generator, exponent)` into normal form.
    /// Negative exponents stand for powers of the inverse generator.
    pub fn normal_form(&self, word: &[(usize, i64)]) -> Result<Element> {
        let mut x = self.identity();
        for &(g, e) in word {
            if g >= self.len() {
                return Err(Error::IndexOutOfRange { index: g, len: self.len() });
            }
            let base = if e < 0 { self.inv(&self.generator(g)) } else { self.generator(g) };
            let y = self.pow(&base, e.unsigned_abs());
            x = self.mul(&x, &y);
        }
        Ok(x)
    }

    pub fn product(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn inverse(&self, x: &Element) -> Result<Element> {
        self.check(x)?;
        Ok(self.inv(x))
    }

    pub fn power(&self, x: &Element, k: u64) -> Result<Element> {
        self.check(x)?;
        Ok(self.pow(x, k))
    }

    /// `x^y = y⁻¹xy`.
    pub fn conjugate(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.conj(x, y))
    }

    /// `[x, y] = x⁻¹y⁻¹xy`.
    pub fn commutator(&self, x: &Element, y: &Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.comm(x, y))
    }

    // Unchecked arithmetic used inside the crate.

    pub(crate) fn mul(&self, x: &Element, y: &Element) -> Element {
        let mut e = x.clone();
        self.mul_assign(&mut e, y);
        e
    }

    pub(crate) fn mul_assign(&self, x: &mut Element, y: &Element) {
        let mut stack: Vec<(u32, u32)> = y.syllables().rev().collect();
        self.collect(&mut x.0, &mut stack);
    }

    /// `x ← x · y^k`.
    pub(crate) fn mul_pow_assign(&self, x: &mut Element, y: &Element, k: u32) {
        let mut stack = Vec::new();
        for _ in 0..k {
            stack.extend(y.syllables().rev());
        }
        self.collect(&mut x.0, &mut stack);
    }

    pub(crate) fn inv(&self, x: &Element) -> Element {
        let n = self.len();
        let mut z = x.0.clone();
        let mut y = vec![0u32; n];
        let mut stack = Vec::new();
        for i in 0..n {
            if z[i] != 0 {
                let a = self.rel_orders[i] - z[i];
                y[i] = a;
                stack.push((i as u32, a));
                self.collect(&mut z, &mut stack);
            }
        }
        debug_assert!(z.iter().all(|&e| e == 0));
        Element(y)
    }

    pub(crate) fn pow(&self, x: &Element, mut k: u64) -> Element {
        let mut result = self.identity();
        let mut base = x.clone();
        while k > 0 {
            if k & 1 == 1 {
                self.mul_assign(&mut result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub(crate) fn conj(&self, x: &Element, y: &Element) -> Element {
        let mut e = self.inv(y);
        self.mul_assign(&mut e, x);
        self.mul_assign(&mut e, y);
        e
    }

    /// Conjugate with a precomputed inverse of the conjugating element.
    pub(crate) fn conj_with(&self, x: &Element, y: &Element, y_inv: &Element) -> Element {
        let mut e = y_inv.clone();
        self.mul_assign(&mut e, x);
        self.mul_assign(&mut e, y);
        e
    }

    pub(crate) fn comm(&self, x: &Element, y: &Element) -> Element {
        let mut e = self.inv(&self.mul(y, x));
        self.mul_assign(&mut e, x);
        self.mul_assign(&mut e, y);
        e
    }

    /// Order of `x` as the multiset of primes read off along its power chain.
    pub fn element_order_factors(&self, x: &Element) -> Vec<u32> {
        let mut out = Vec::new();
        let mut y = x.clone();
        while let Some(d) = y.depth() {
            let r = self.rel_orders[d];
            out.push(r);
            y = self.pow(&y, r as u64);
        }
        out
    }

    pub fn element_order(&self, x: &Element) -> BigUint {
        self.element_order_factors(x).into_iter().fold(BigUint::one(), |acc, r| acc * BigUint::from(r))
    }

    /// The `σ`-part of `x`, i.e. `x^m` with `m` the `σ′`-part of its order;
    /// it generates the same subgroup as the `σ`-component of `x`.
    pub(crate) fn sigma_part(&self, x: &Element, sigma: &[u32]) -> Element {
        let mut y = x.clone();
        for r in self.element_order_factors(x) {
            if !sigma.contains(&r) {
                y = self.pow(&y, r as u64);
            }
        }
        y
    }

    /// Collection from the left: `e ← e · (stack read from the top down)`.
    fn collect(&self, e: &mut [u32], stack: &mut Vec<(u32, u32)>) {
        let n = e.len();
        while let Some((k, a)) = stack.pop() {
            let k = k as usize;
            if a == 0 {
                continue;
            }
            let row = &self.conj[k];
            let r = self.rel_orders[k];

            // first occupied tail slot whose generator does not commute with g_k
            let mut first_nc = None;
            let mut ri = 0;
            #[allow(clippy::needless_range_loop)]
            for j in k + 1..n {
                if e[j] == 0 {
                    continue;
                }
                while ri < row.len() && (row[ri].0 as usize) < j {
                    ri += 1;
                }
                if ri == row.len() {
                    break;
                }
                if row[ri].0 as usize == j {
                    first_nc = Some((j, ri));
                    break;
                }
            }

            match first_nc {
                None => {
                    let s = e[k] + a;
                    if s < r {
                        e[k] = s;
                        continue;
                    }
                    e[k] = s % r;
                    for j in (k + 1..n).rev() {
                        if e[j] != 0 {
                            stack.push((j as u32, e[j]));
                            e[j] = 0;
                        }
                    }
                    for _ in 0..s / r {
                        stack.extend(self.powers[k].iter().rev().copied());
                    }
                }
                Some((j0, ri0)) => {
                    if a > 1 {
                        stack.push((k as u32, a - 1));
                    }
                    let mut rj = row.len();
                    for j in (j0..n).rev() {
                        let f = e[j];
                        if f == 0 {
                            continue;
                        }
                        e[j] = 0;
                        while rj > ri0 && row[rj - 1].0 as usize > j {
                            rj -= 1;
                        }
                        if rj > ri0 && row[rj - 1].0 as usize == j {
                            let w = &row[rj - 1].1;
                            for _ in 0..f {
                                stack.extend(w.iter().rev().copied());
                            }
                        } else {
                            stack.push((j as u32, f));
                        }
                    }
                    let s = e[k] + 1;
                    if s < r {
                        e[k] = s;
                    } else {
                        e[k] = 0;
                        for j in (k + 1..j0).rev() {
                            if e[j] != 0 {
                                stack.push((j as u32, e[j]));
                                e[j] = 0;
                            }
                        }
                        stack.extend(self.powers[k].iter().rev().copied());
                    }
                }
            }
        }
    }

    /// Relations of the presentation as plain data: power words and the
    /// non-trivial conjugate relations.
    pub fn relations(&self) -> (Vec<Element>, Vec<(usize, usize, Element)>) {
        let powers = self.powers.iter().map(|w| self.word_element(w)).collect();
        let mut conj = Vec::new();
        for (i, row) in self.conj.iter().enumerate() {
            for (j, w) in row {
                conj.push((i, *j as usize, self.word_element(w)));
            }
        }
        (powers, conj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// C6 as g0 (order 2), g1 (order 3), trivial relations.
    fn c6() -> PcGroup {
        PcGroup::from_relations(vec![2, 3], vec![vec![], vec![]], vec![]).unwrap()
    }

    /// S3 = C3 ⋊ C2: g0 of order 2 inverting g1 of order 3.
    fn s3() -> PcGroup {
        PcGroup::from_relations(vec![2, 3], vec![vec![], vec![]], vec![(0, 1, vec![(1, 2)])]).unwrap()
    }

    #[test]
    fn abelian_normal_form() {
        let g = c6();
        assert_eq!(g.normal_form(&[(1, 1), (0, 1)]).unwrap().exponents(), &[1, 1]);
        assert!(g.normal_form(&[]).unwrap().is_identity());
        assert!(matches!(g.normal_form(&[(2, 1)]), Err(Error::IndexOutOfRange { index: 2, len: 2 })));
    }

    #[test]
    fn s3_arithmetic() {
        let g = s3();
        let a = g.generator(0);
        let b = g.generator(1);
        // b·a = a·b^2
        assert_eq!(g.mul(&b, &a).exponents(), &[1, 2]);
        assert_eq!(g.conj(&b, &a).exponents(), &[0, 2]);
        // [a,b] = (b⁻¹)^a · b = b^2
        assert_eq!(g.comm(&a, &b).exponents(), &[0, 2]);
        for x in [a.clone(), b.clone(), g.mul(&a, &b)] {
            assert!(g.mul(&x, &g.inv(&x)).is_identity());
        }
        assert_eq!(g.element_order(&a), BigUint::from(2u32));
        assert_eq!(g.element_order(&b), BigUint::from(3u32));
    }

    #[test]
    fn rejects_bad_presentations() {
        assert!(matches!(PcGroup::from_relations(vec![4], vec![vec![]], vec![]), Err(Error::NotPrime(4))));
        assert!(PcGroup::from_relations(vec![2, 3], vec![vec![(0, 1)], vec![]], vec![]).is_err());
        assert!(PcGroup::from_relations(vec![2, 3], vec![vec![], vec![]], vec![(1, 0, vec![])]).is_err());
    }

    #[test]
    fn mixed_ambient_rejected() {
        let g = c6();
        let x = Element::identity(3);
        assert_eq!(g.product(&x, &g.identity()), Err(Error::AmbientMismatch));
    }

    #[test]
    fn cyclic_chain_power() {
        // C4 = <g0>, g0^2 = g1
        let g = PcGroup::from_relations(vec![2, 2], vec![vec![(1, 1)], vec![]], vec![]).unwrap();
        let x = g.generator(0);
        assert_eq!(g.pow(&x, 2).exponents(), &[0, 1]);
        assert!(g.pow(&x, 4).is_identity());
        assert_eq!(g.inv(&x).exponents(), &[1, 1]);
        assert_eq!(g.element_order_factors(&x), [2, 2]);
    }
}
