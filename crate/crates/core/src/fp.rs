//! Row-vector linear algebra over a prime field, just enough for spinning
//! submodules of elementary abelian sections.

use alloc::vec;
use alloc::vec::Vec;

use crate::primes::inv_mod;

pub(crate) type Vector = Vec<u32>;

/// A subspace kept in reduced row echelon form.
#[derive(Clone, Debug)]
pub(crate) struct Space {
    p: u32,
    dim: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Space {
    pub(crate) fn new(p: u32, dim: usize) -> Self {
        Space { p, dim, rows: Vec::new(), pivots: Vec::new() }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn basis(&self) -> &[Vector] {
        &self.rows
    }

    fn reduce(&self, v: &mut [u32]) {
        let p = self.p as u64;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                let f = (p - f as u64) % p;
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = ((*x as u64 + f * y as u64) % p) as u32;
                }
            }
        }
    }

    #[cfg(test)]
    pub(crate) fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(c) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let p = self.p as u64;
        let inv = inv_mod(w[c], self.p) as u64;
        for x in w.iter_mut() {
            *x = ((*x as u64 * inv) % p) as u32;
        }
        for row in self.rows.iter_mut() {
            let f = row[c];
            if f != 0 {
                let f = (p - f as u64) % p;
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = ((*x as u64 + f * y as u64) % p) as u32;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(at, w);
        self.pivots.insert(at, c);
        true
    }
}

/// `v · M`.
pub(crate) fn apply(p: u32, v: &[u32], m: &[Vector]) -> Vector {
    let p = p as u64;
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = vec![0u64; cols];
    for (&a, row) in v.iter().zip(m) {
        if a != 0 {
            for (o, &b) in out.iter_mut().zip(row) {
                *o = (*o + a as u64 * b as u64) % p;
            }
        }
    }
    out.into_iter().map(|x| x as u32).collect()
}

/// Smallest subspace containing `seeds` and invariant under every matrix.
pub(crate) fn spin(p: u32, dim: usize, seeds: &[Vector], mats: &[Vec<Vector>]) -> Space {
    let mut space = Space::new(p, dim);
    let mut queue: Vec<Vector> = seeds.to_vec();
    while let Some(v) = queue.pop() {
        if space.insert(&v) {
            for m in mats {
                queue.push(apply(p, &v, m));
            }
        }
    }
    space
}

/// Vectors of `within` fixed by every matrix.
pub(crate) fn fixed_space(p: u32, within: &Space, mats: &[Vec<Vector>]) -> Space {
    let basis = within.basis();
    let k = basis.len();
    // x ↦ x·B·(M − I) for each M, stacked horizontally; solve x·C = 0
    let mut columns: Vec<Vector> = Vec::new();
    for m in mats {
        let diffs: Vec<Vector> = basis
            .iter()
            .map(|b| {
                let img = apply(p, b, m);
                img.iter().zip(b).map(|(&x, &y)| (x + p - y) % p).collect()
            })
            .collect();
        for c in 0..within.dim {
            columns.push(diffs.iter().map(|row| row[c]).collect());
        }
    }
    let null = nullspace(p, k, &columns);
    let mut out = Space::new(p, within.dim);
    for x in null {
        out.insert(&apply(p, &x, basis));
    }
    out
}

/// Basis of `{x ∈ F_p^k : ⟨x, c⟩ = 0 for every c}`.
fn nullspace(p: u32, k: usize, constraints: &[Vector]) -> Vec<Vector> {
    let mut eq = Space::new(p, k);
    for c in constraints {
        eq.insert(c);
    }
    let pivots = eq.pivots.clone();
    let pp = p as u64;
    let mut out = Vec::new();
    for free in (0..k).filter(|c| !pivots.contains(c)) {
        let mut x = vec![0u32; k];
        x[free] = 1;
        for (row, &c) in eq.rows.iter().zip(&pivots) {
            x[c] = ((pp - row[free] as u64) % pp) as u32;
        }
        out.push(x);
    }
    out
}
