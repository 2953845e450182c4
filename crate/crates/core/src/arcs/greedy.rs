//! Seeded randomized greedy completion of plane arcs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::PlaneArc;
use crate::error::{Error, Result};
use crate::gf2e::Elem;
use crate::projgeom::{Point, Space};

/// Largest `q` for which the incidence table is built.
pub const MAX_GREEDY_Q: usize = 256;

/// Point-line incidence of PG(2,q). Lines are indexed by the rank of their
/// dual coordinates, so `through[r]` lists both the points on line `r` and
/// the lines through point `r`.
#[derive(Clone, Debug)]
pub struct PlaneIncidence {
    plane: Space,
    q1: usize,
    table: Vec<u32>,
}

impl PlaneIncidence {
    pub fn new(plane: &Space) -> Result<Self> {
        let q = plane.q();
        if q > MAX_GREEDY_Q {
            return Err(Error::TooLarge(format!("incidence table for q = {q}")));
        }
        let n = plane.num_points() as usize;
        let q1 = q + 1;
        let rows: Vec<Vec<u32>> = (0..n as u64)
            .into_par_iter()
            .map(|r| {
                let u = plane.unrank(r).expect("rank in range");
                let (a, b) = null_basis(plane, u.coords());
                plane
                    .line_through(&a, &b)
                    .expect("distinct points")
                    .iter()
                    .map(|p| p.rank() as u32)
                    .collect()
            })
            .collect();
        let mut table = Vec::with_capacity(n * q1);
        for row in rows {
            table.extend(row);
        }
        Ok(PlaneIncidence {
            plane: plane.clone(),
            q1,
            table,
        })
    }

    pub fn plane(&self) -> &Space {
        &self.plane
    }

    #[inline]
    pub fn through(&self, r: u32) -> &[u32] {
        let s = r as usize * self.q1;
        &self.table[s..s + self.q1]
    }

    /// Rank of the line joining two distinct points.
    #[inline]
    pub fn join(&self, a: &[Elem], b: &[Elem]) -> u32 {
        let f = self.plane.field();
        let c = [
            f.mul(a[1], b[2]) + f.mul(a[2], b[1]),
            f.mul(a[2], b[0]) + f.mul(a[0], b[2]),
            f.mul(a[0], b[1]) + f.mul(a[1], b[0]),
        ];
        self.plane.rank_of_vector(&c).expect("distinct points") as u32
    }
}

/// Two distinct points on the line with dual coordinates `u`.
fn null_basis(plane: &Space, u: &[Elem]) -> (Point, Point) {
    let (o, z) = (Elem::ONE, Elem::ZERO);
    let lead = u.iter().position(|c| !c.is_zero()).expect("normalized");
    // u[lead] = 1; solve for the lead coordinate
    let v = match lead {
        0 => ([u[1], o, z], [u[2], z, o]),
        1 => ([o, z, z], [z, u[2], o]),
        _ => ([o, z, z], [z, o, z]),
    };
    (
        plane.normalize(&v.0).expect("nonzero"),
        plane.normalize(&v.1).expect("nonzero"),
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreedyStrategy {
    /// Add a uniformly random uncovered point.
    Uniform,
    /// After a random prefix, add a point covering the most new points;
    /// ties are broken at random.
    MaxGain,
}

#[derive(Clone, Debug)]
pub struct GreedyConfig {
    pub iterations: usize,
    pub strategy: GreedyStrategy,
    /// Points placed uniformly at random before the max-gain phase.
    pub prefix: usize,
    /// Stop once an arc of at most this size is found.
    pub target: Option<usize>,
    /// Restarts run in parallel per batch.
    pub batch: usize,
}

impl Default for GreedyConfig {
    fn default() -> Self {
        GreedyConfig {
            iterations: 100,
            strategy: GreedyStrategy::MaxGain,
            prefix: 2,
            target: None,
            batch: 64,
        }
    }
}

impl GreedyConfig {
    pub fn with_iterations(mut self, n: usize) -> Self {
        self.iterations = n;
        self
    }

    pub fn with_strategy(mut self, s: GreedyStrategy) -> Self {
        self.strategy = s;
        self
    }

    pub fn with_prefix(mut self, n: usize) -> Self {
        self.prefix = n;
        self
    }

    pub fn with_target(mut self, t: usize) -> Self {
        self.target = Some(t);
        self
    }

    /// Budgets that reach the smallest known complete arcs, of sizes
    /// 6, 6, 9, 14, 22 for q = 4, 8, 16, 32, 64. Other `q` get the default
    /// budget and no target.
    pub fn for_q(q: usize) -> Self {
        let base = GreedyConfig::default();
        match q {
            4 | 8 => base.with_iterations(256).with_target(6),
            16 => base.with_iterations(4096).with_prefix(7).with_target(9),
            32 => base.with_iterations(8192).with_target(14),
            64 => base.with_iterations(8192).with_target(22),
            _ => base,
        }
    }
}

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    pub arc: PlaneArc,
    /// Restart index that produced `arc`.
    pub restart: usize,
    pub restarts_run: usize,
    /// Size of the arc found by each restart, in restart order.
    pub sizes: Vec<usize>,
}

struct State<'a> {
    inc: &'a PlaneIncidence,
    covered: Vec<bool>,
    uncov: Vec<u32>,
    arc: Vec<u32>,
    arc_pts: Vec<Point>,
    n_uncovered: usize,
}

impl<'a> State<'a> {
    fn new(inc: &'a PlaneIncidence) -> Self {
        let n = inc.plane.num_points() as usize;
        State {
            inc,
            covered: vec![false; n],
            uncov: vec![inc.q1 as u32; n],
            arc: Vec::new(),
            arc_pts: Vec::new(),
            n_uncovered: n,
        }
    }

    fn cover(&mut self, r: u32) {
        if !self.covered[r as usize] {
            self.covered[r as usize] = true;
            self.n_uncovered -= 1;
            for &l in self.inc.through(r) {
                self.uncov[l as usize] -= 1;
            }
        }
    }

    fn coords(&self, r: u32) -> Point {
        self.inc.plane.unrank(r as u64).expect("rank in range")
    }

    /// Adds an uncovered point.
    fn add(&mut self, r: u32) {
        debug_assert!(!self.covered[r as usize]);
        let p = self.coords(r);
        let lines: Vec<u32> = self
            .arc_pts
            .iter()
            .map(|a| self.inc.join(p.coords(), a.coords()))
            .collect();
        self.arc.push(r);
        self.arc_pts.push(p);
        if self.arc.len() == 1 {
            return;
        }
        for i in 0..self.arc.len() {
            self.cover(self.arc[i]);
        }
        for l in lines {
            for &x in self.inc.through(l) {
                self.cover(x);
            }
        }
    }

    fn uncovered(&self) -> Vec<u32> {
        (0..self.covered.len() as u32)
            .filter(|&r| !self.covered[r as usize] && !self.arc.contains(&r))
            .collect()
    }

    /// Number of new covered points if `r` were added.
    fn gain(&self, r: u32) -> usize {
        let p = self.coords(r);
        let mut g = 1;
        for a in &self.arc_pts {
            let l = self.inc.join(p.coords(), a.coords());
            g += self.uncov[l as usize] as usize - 1;
        }
        g
    }

    fn done(&self) -> bool {
        self.arc.len() >= 2 && self.n_uncovered == 0
    }
}

fn run_once(inc: &PlaneIncidence, seed_pts: &[u32], cfg: &GreedyConfig, rng: &mut ChaCha8Rng) -> Vec<u32> {
    let mut st = State::new(inc);
    for &r in seed_pts {
        st.add(r);
    }
    while !st.done() {
        let cand = st.uncovered();
        debug_assert!(!cand.is_empty());
        let uniform = cfg.strategy == GreedyStrategy::Uniform || st.arc.len() < cfg.prefix;
        let next = if uniform {
            cand[rng.gen_range(0..cand.len())]
        } else {
            let gains: Vec<usize> = cand.iter().map(|&r| st.gain(r)).collect();
            let best = *gains.iter().max().expect("nonempty");
            let ties: Vec<u32> = cand
                .iter()
                .zip(&gains)
                .filter(|(_, &g)| g == best)
                .map(|(&r, _)| r)
                .collect();
            *ties.choose(rng).expect("nonempty")
        };
        st.add(next);
    }
    st.arc
}

fn restart_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

/// Completes `seed_arc` by greedy point additions, repeated over
/// `cfg.iterations` restarts; returns the smallest complete arc found
/// (earliest restart on ties). Deterministic in `rng_seed`, independent of
/// the worker count.
pub fn greedy_complete(seed_arc: &PlaneArc, rng_seed: u64, cfg: &GreedyConfig) -> Result<GreedyOutcome> {
    let inc = PlaneIncidence::new(seed_arc.plane())?;
    greedy_with(&inc, seed_arc, rng_seed, cfg)
}

/// `greedy_complete` reusing a prebuilt incidence table.
pub fn greedy_with(inc: &PlaneIncidence, seed_arc: &PlaneArc, rng_seed: u64, cfg: &GreedyConfig) -> Result<GreedyOutcome> {
    if inc.plane() != seed_arc.plane() {
        return Err(Error::DimensionMismatch("incidence table built for another plane".into()));
    }
    let seed_pts: Vec<u32> = seed_arc.points().iter().map(|p| p.rank() as u32).collect();
    let iterations = cfg.iterations.max(1);
    let batch = cfg.batch.max(1);
    let mut sizes = Vec::new();
    let mut best: Option<(usize, Vec<u32>)> = None;
    let mut start = 0;
    while start < iterations {
        let end = (start + batch).min(iterations);
        let found: Vec<Vec<u32>> = (start..end)
            .into_par_iter()
            .map(|i| run_once(inc, &seed_pts, cfg, &mut restart_rng(rng_seed, i)))
            .collect();
        for (off, arc) in found.into_iter().enumerate() {
            sizes.push(arc.len());
            if best.as_ref().is_none_or(|(_, b)| arc.len() < b.len()) {
                best = Some((start + off, arc));
            }
        }
        start = end;
        if let (Some(t), Some((_, b))) = (cfg.target, &best) {
            if b.len() <= t {
                break;
            }
        }
    }
    let (restart, ranks) = best.expect("at least one restart");
    let plane = seed_arc.plane().clone();
    let pts = ranks
        .iter()
        .map(|&r| plane.unrank(r as u64))
        .collect::<Result<Vec<_>>>()?;
    let arc = PlaneArc::new(plane, pts)?;
    debug_assert!(arc.is_complete());
    Ok(GreedyOutcome {
        arc,
        restart,
        restarts_run: sizes.len(),
        sizes,
    })
}

/// `greedy_complete` from the empty arc.
pub fn greedy_search(plane: &Space, rng_seed: u64, cfg: &GreedyConfig) -> Result<GreedyOutcome> {
    greedy_complete(&PlaneArc::empty(plane.clone()), rng_seed, cfg)
}
