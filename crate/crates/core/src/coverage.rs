//! Dense bitsets over point ranks and the secant sweeps built on them.

use rayon::prelude::*;

use crate::gf2e::Elem;
use crate::projgeom::{Point, Space};

/// Which points of PG(N,q) lie on some secant of a point set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageSet {
    bits: Vec<u64>,
    len: u64,
}

impl CoverageSet {
    pub fn new(len: u64) -> Self {
        CoverageSet {
            bits: vec![0; len.div_ceil(64) as usize],
            len,
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Marks `rank`; returns true if it was not marked before.
    #[inline]
    pub fn mark(&mut self, rank: u64) -> bool {
        debug_assert!(rank < self.len);
        let (w, b) = ((rank / 64) as usize, rank % 64);
        let fresh = self.bits[w] & (1 << b) == 0;
        self.bits[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, rank: u64) -> bool {
        rank < self.len && self.bits[(rank / 64) as usize] & (1 << (rank % 64)) != 0
    }

    pub fn count(&self) -> u64 {
        self.bits.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.len
    }

    pub fn union_with(&mut self, other: &CoverageSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }

    /// Ranks not marked, ascending.
    pub fn unmarked(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(move |&r| !self.contains(r))
    }

    pub fn marked(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(move |&r| self.contains(r))
    }
}

/// Marks every point of every line through two points of `pts` (the points
/// themselves included). Pairs are split across rayon workers; the merge is a
/// bitwise OR, so the result does not depend on the worker count.
pub fn secant_coverage(space: &Space, pts: &[Point]) -> CoverageSet {
    let total = space.num_points();
    let coords: Vec<&[Elem]> = pts.iter().map(|p| p.coords()).collect();
    let mut cov = (0..pts.len())
        .into_par_iter()
        .fold(
            || (CoverageSet::new(total), Vec::new()),
            |(mut cov, mut buf), i| {
                for j in i + 1..pts.len() {
                    space.for_each_interior(coords[i], coords[j], &mut buf, |_, r| {
                        cov.mark(r);
                    });
                }
                (cov, buf)
            },
        )
        .map(|(c, _)| c)
        .reduce(|| CoverageSet::new(total), |mut a, b| {
            a.union_with(&b);
            a
        });
    if pts.len() >= 2 {
        for p in pts {
            cov.mark(p.rank());
        }
    }
    cov
}

/// True iff no three points of `pts` are collinear and no point repeats.
/// Works from a sorted rank list, so it needs no bitset over the space.
pub fn no_three_collinear(space: &Space, pts: &[Point]) -> bool {
    let mut ranks: Vec<u64> = pts.iter().map(|p| p.rank()).collect();
    ranks.sort_unstable();
    if ranks.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    let coords: Vec<&[Elem]> = pts.iter().map(|p| p.coords()).collect();
    (0..pts.len()).into_par_iter().all(|i| {
        let mut buf = Vec::new();
        let mut ok = true;
        for j in i + 1..pts.len() {
            space.for_each_interior(coords[i], coords[j], &mut buf, |_, r| {
                if ranks.binary_search(&r).is_ok() {
                    ok = false;
                }
            });
            if !ok {
                break;
            }
        }
        ok
    })
}
