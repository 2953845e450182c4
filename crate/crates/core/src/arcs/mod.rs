//! Plane arcs: predicates, secant coverage, sum-point statistics, the
//! normalizing projectivities, named arc families and a seeded greedy
//! completer.
//!
//! Throughout, `l_inf` is the line `X_0 = 0` and all points are handled in
//! normalized form. For a point `Q` off the arc lying on the secant through
//! `P1, P2`, we have `Q ~ P1 + lambda P2` for a unique nonzero `lambda`;
//! `Q` is a sum-point when `lambda = 1` on every secant through it.

mod families;
mod greedy;
mod normalize;
mod params;
mod prepare;
mod sumpoint;

use std::collections::{BTreeMap, BTreeSet};

use crate::coverage::{no_three_collinear, secant_coverage, CoverageSet};
use crate::error::{Error, Result};
use crate::gf2e::{Elem, FieldCtx};
use crate::projgeom::{Point, Projectivity, Space};

pub use families::{construct_abatangelo, construct_kw, construct_kw_prime, construct_kw_with, KwParameter};
pub use greedy::{greedy_complete, greedy_search, greedy_with, GreedyConfig, GreedyOutcome, GreedyStrategy, PlaneIncidence};
pub use normalize::{normalize_arc, NormalizeTarget};
pub use params::choose_m1_m2;
pub use prepare::{prepare_arc, SUM_POINT_ATTEMPTS};
pub(crate) use normalize::misses_s1_parabolas;
pub(crate) use params::admissible_pair;
pub use sumpoint::{conjecture_scan, random_secant_projectivity, seek_single_sum_point, ConjectureReport, SumPointSearch};

/// An arc of PG(2,q): distinct points, no three collinear, kept in rank
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlaneArc {
    plane: Space,
    points: Vec<Point>,
}

impl PlaneArc {
    pub fn new(plane: Space, mut points: Vec<Point>) -> Result<Self> {
        if plane.dim() != 2 {
            return Err(Error::DimensionMismatch("arcs live in PG(2,q)".into()));
        }
        if points.iter().any(|p| p.coords().len() != 3) {
            return Err(Error::DimensionMismatch("arc points need 3 coordinates".into()));
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        if !is_arc(&plane, &points) {
            return Err(Error::NotAnArc);
        }
        Ok(PlaneArc { plane, points })
    }

    pub fn empty(plane: Space) -> Self {
        PlaneArc {
            plane,
            points: Vec::new(),
        }
    }

    pub fn from_ints(plane: Space, pts: &[[u64; 3]]) -> Result<Self> {
        let points = pts
            .iter()
            .map(|c| plane.point_from_ints(c))
            .collect::<Result<Vec<_>>>()?;
        PlaneArc::new(plane, points)
    }

    pub fn plane(&self) -> &Space {
        &self.plane
    }

    pub fn field(&self) -> &FieldCtx {
        self.plane.field()
    }

    pub fn q(&self) -> usize {
        self.plane.q()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.points.binary_search(p).is_ok()
    }

    pub fn affine_points(&self) -> Vec<Point> {
        self.points.iter().filter(|p| Space::is_affine(p)).cloned().collect()
    }

    pub fn points_at_infinity(&self) -> Vec<Point> {
        self.points.iter().filter(|p| !Space::is_affine(p)).cloned().collect()
    }

    pub fn is_affine(&self) -> bool {
        self.points.iter().all(Space::is_affine)
    }

    /// Image under a projectivity. With `integral_mode`, every image must
    /// already be normalized.
    pub fn map(&self, psi: &Projectivity, integral_mode: bool) -> Result<PlaneArc> {
        let pts = self
            .points
            .iter()
            .map(|p| psi.apply(&self.plane, p, integral_mode))
            .collect::<Result<Vec<_>>>()?;
        PlaneArc::new(self.plane.clone(), pts)
    }

    /// FNV-1a over the sorted ranks; identifies the arc in provenance tags.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in (self.q() as u64).to_le_bytes() {
            h = (h ^ b as u64).wrapping_mul(0x100_0000_01b3);
        }
        for p in &self.points {
            for b in p.rank().to_le_bytes() {
                h = (h ^ b as u64).wrapping_mul(0x100_0000_01b3);
            }
        }
        h
    }

    /// A copy with one more point; errors if the result is not an arc.
    pub fn with_point(&self, p: Point) -> Result<PlaneArc> {
        let mut pts = self.points.clone();
        pts.push(p);
        PlaneArc::new(self.plane.clone(), pts)
    }

    pub fn secant_coverage(&self) -> CoverageSet {
        secant_coverage(&self.plane, &self.points)
    }

    pub fn is_complete(&self) -> bool {
        self.len() >= 2 && self.secant_coverage().is_full()
    }

    pub fn profile(&self) -> ArcProfile {
        profile(self)
    }
}

/// True iff no three of the given plane points are collinear.
pub fn is_arc(plane: &Space, points: &[Point]) -> bool {
    no_three_collinear(plane, points)
}

/// Sum-point and slope statistics of an arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArcProfile {
    pub k: usize,
    pub sum_points: Vec<Point>,
    pub beta: usize,
    /// Secants through the unique sum-point; `None` unless `beta == 1`.
    pub p: Option<usize>,
    /// `m` such that `(0,1,m)` lies on a secant.
    pub cov_infty: BTreeSet<Elem>,
    pub s_infty: BTreeSet<Elem>,
    /// Nonempty `S_m` sets keyed by `m`.
    pub s_m: BTreeMap<Elem, BTreeSet<Elem>>,
    /// The affine part covers every point off `l_inf`.
    pub affinely_complete: bool,
    pub complete: bool,
    /// Points on no secant (and not on the arc). These are never counted as
    /// sum-points.
    pub uncovered: Vec<Point>,
}

impl ArcProfile {
    pub fn s_m(&self, m: Elem) -> BTreeSet<Elem> {
        self.s_m.get(&m).cloned().unwrap_or_default()
    }

    pub fn only_sum_point(&self) -> Option<&Point> {
        match self.sum_points.as_slice() {
            [p] => Some(p),
            _ => None,
        }
    }
}

/// Computes every `ArcProfile` field by sweeping all secants.
pub fn profile(arc: &PlaneArc) -> ArcProfile {
    let plane = arc.plane();
    let f = arc.field();
    let n = plane.num_points();
    let pts = arc.points();
    let k = pts.len();

    let mut covered = CoverageSet::new(n);
    let mut unequal = CoverageSet::new(n);
    let mut secants = vec![0u32; n as usize];
    let mut buf = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            plane.for_each_interior(pts[i].coords(), pts[j].coords(), &mut buf, |lambda, r| {
                covered.mark(r);
                secants[r as usize] += 1;
                if lambda != Elem::ONE {
                    unequal.mark(r);
                }
            });
        }
    }
    if k >= 2 {
        for p in pts {
            covered.mark(p.rank());
        }
    }

    let sum_points: Vec<Point> = covered
        .marked()
        .filter(|&r| !unequal.contains(r))
        .filter(|&r| !pts.iter().any(|p| p.rank() == r))
        .map(|r| plane.unrank(r).expect("rank in range"))
        .collect();
    let beta = sum_points.len();
    let p = (beta == 1).then(|| secants[sum_points[0].rank() as usize] as usize);

    let uncovered: Vec<Point> = covered
        .unmarked()
        .map(|r| plane.unrank(r).expect("rank in range"))
        .collect();
    let complete = k >= 2 && uncovered.is_empty();

    let cov_infty = f
        .elements()
        .filter(|&m| covered.contains(plane.rank_normalized(&[Elem::ZERO, Elem::ONE, m])))
        .collect();

    let mut s_infty = BTreeSet::new();
    let mut s_m: BTreeMap<Elem, BTreeSet<Elem>> = BTreeMap::new();
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (pts[i].coords(), pts[j].coords());
            if x[0] != y[0] {
                continue;
            }
            if x[1] == y[1] {
                s_infty.insert(x[2] + y[2]);
            } else {
                let d1 = x[1] + y[1];
                let m = f.mul(x[2] + y[2], f.inv_nonzero(d1));
                s_m.entry(m).or_default().insert(d1);
            }
        }
    }

    let affine = arc.affine_points();
    let affinely_complete = if affine.len() < 2 {
        false
    } else {
        let cov = secant_coverage(plane, &affine);
        // points off l_inf occupy the rank block of leading index 0
        let affine_block = (f.q() * f.q()) as u64;
        (0..affine_block).all(|r| cov.contains(r))
    };

    ArcProfile {
        k,
        sum_points,
        beta,
        p,
        cov_infty,
        s_infty,
        s_m,
        affinely_complete,
        complete,
        uncovered,
    }
}
