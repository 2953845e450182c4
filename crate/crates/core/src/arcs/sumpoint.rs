//! Searching the projective class of an arc for an image with a single
//! sum-point.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::greedy::{greedy_with, GreedyConfig, GreedyStrategy, PlaneIncidence};
use super::PlaneArc;
use crate::error::{Error, Result};
use crate::gf2e::{Elem, FieldCtx};
use crate::projgeom::{Projectivity, Space};

/// A random projectivity whose first row is the dual of a random secant of
/// `arc`, so the image meets `l_inf` in two points.
pub fn random_secant_projectivity<R: Rng>(arc: &PlaneArc, rng: &mut R) -> Result<Projectivity> {
    if arc.len() < 2 {
        return Err(Error::BadParameters("an arc with a secant needs two points".into()));
    }
    let f = arc.field();
    let pair: Vec<_> = arc.points().choose_multiple(rng, 2).collect();
    let (a, b) = (pair[0].coords(), pair[1].coords());
    let u = [
        f.mul(a[1], b[2]) + f.mul(a[2], b[1]),
        f.mul(a[2], b[0]) + f.mul(a[0], b[2]),
        f.mul(a[0], b[1]) + f.mul(a[1], b[0]),
    ];
    let q = f.q() as u16;
    let mut row = || [0; 3].map(|_: u8| Elem(rng.gen_range(0..q)));
    loop {
        if let Ok(p) = Projectivity::new(f, [u, row(), row()]) {
            return Ok(p);
        }
    }
}

#[derive(Clone, Debug)]
pub struct SumPointSearch {
    /// Image of the input with exactly one sum-point.
    pub arc: PlaneArc,
    pub projectivity: Projectivity,
    pub p: usize,
    /// Projectivities tried, the identity included.
    pub attempts: usize,
}

/// Tries the identity and then up to `attempts` random secant
/// projectivities, keeping the first image with `beta = 1` and the smallest
/// `p`. Stops early at `p = 1`.
pub fn seek_single_sum_point<R: Rng>(arc: &PlaneArc, rng: &mut R, attempts: usize) -> Result<SumPointSearch> {
    let mut best: Option<SumPointSearch> = None;
    let consider = |img: PlaneArc, psi: Projectivity, tried: usize, best: &mut Option<SumPointSearch>| {
        let prof = img.profile();
        if let Some(p) = prof.p {
            if best.as_ref().is_none_or(|b| p < b.p) {
                *best = Some(SumPointSearch {
                    arc: img,
                    projectivity: psi,
                    p,
                    attempts: tried,
                });
            }
        }
    };
    consider(arc.clone(), Projectivity::identity(), 1, &mut best);
    for i in 0..attempts {
        if best.as_ref().is_some_and(|b| b.p == 1) {
            break;
        }
        let psi = random_secant_projectivity(arc, rng)?;
        let img = arc.map(&psi, false)?;
        consider(img, psi, i + 2, &mut best);
    }
    best.ok_or_else(|| Error::SearchExhausted(format!("no image with one sum-point after {attempts} projectivities")))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConjectureReport {
    pub q: usize,
    pub trials: usize,
    /// Arcs that already had a single sum-point.
    pub immediate: usize,
    /// Arcs with a single sum-point image found after some projectivity.
    pub after_search: usize,
    pub failures: usize,
    /// Sizes of the arcs that failed.
    pub failed_sizes: Vec<usize>,
}

impl ConjectureReport {
    pub fn successes(&self) -> usize {
        self.immediate + self.after_search
    }
}

/// For `trials` random complete arcs of PG(2,q), looks for a projectively
/// equivalent arc with exactly one sum-point.
pub fn conjecture_scan(field: std::sync::Arc<FieldCtx>, trials: usize, rng_seed: u64, attempts: usize) -> Result<ConjectureReport> {
    if field.q() > 16 {
        return Err(Error::TooLarge(format!("conjecture scan for q = {} (limit 16)", field.q())));
    }
    let plane = Space::plane(field.clone());
    let inc = PlaneIncidence::new(&plane)?;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let cfg = GreedyConfig::default()
        .with_iterations(1)
        .with_strategy(GreedyStrategy::Uniform);
    let mut report = ConjectureReport {
        q: field.q(),
        trials,
        ..Default::default()
    };
    for _ in 0..trials {
        let arc = greedy_with(&inc, &PlaneArc::empty(plane.clone()), rng.gen(), &cfg)?.arc;
        if arc.profile().beta == 1 {
            report.immediate += 1;
            continue;
        }
        match seek_single_sum_point(&arc, &mut rng, attempts) {
            Ok(_) => report.after_search += 1,
            Err(_) => {
                report.failures += 1;
                report.failed_sizes.push(arc.len());
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arcs::greedy_search;
    use std::sync::Arc;

    fn plane(h: u32) -> Space {
        Space::plane(Arc::new(FieldCtx::new(h).unwrap()))
    }

    #[test]
    fn secant_projectivity_puts_two_points_at_infinity() {
        let p = plane(4);
        let arc = greedy_search(&p, 5, &GreedyConfig::default().with_iterations(5)).unwrap().arc;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let psi = random_secant_projectivity(&arc, &mut rng).unwrap();
            let img = arc.map(&psi, false).unwrap();
            assert_eq!(img.points_at_infinity().len(), 2);
            assert!(img.is_complete());
        }
    }

    #[test]
    fn found_image_has_one_sum_point() {
        for h in [3, 4] {
            let p = plane(h);
            let arc = greedy_search(&p, 9, &GreedyConfig::default().with_iterations(20)).unwrap().arc;
            let mut rng = ChaCha8Rng::seed_from_u64(2);
            let s = seek_single_sum_point(&arc, &mut rng, 500).unwrap();
            let prof = s.arc.profile();
            assert_eq!(prof.beta, 1);
            assert_eq!(prof.p, Some(s.p));
            assert_eq!(arc.map(&s.projectivity, false).unwrap(), s.arc);
        }
    }

    #[test]
    fn single_sum_point_arc_needs_no_search() {
        let f = Arc::new(FieldCtx::new(6).unwrap());
        let arc = crate::arcs::construct_abatangelo(f, false).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = seek_single_sum_point(&arc, &mut rng, 0).unwrap();
        assert_eq!(s.attempts, 1);
        assert_eq!(s.projectivity, Projectivity::identity());
    }

    #[test]
    fn scan_counts_add_up() {
        let f = Arc::new(FieldCtx::new(3).unwrap());
        let r = conjecture_scan(f.clone(), 10, 4, 200).unwrap();
        assert_eq!(r.successes() + r.failures, 10);
        assert_eq!(r, conjecture_scan(f, 10, 4, 200).unwrap());
        assert!(conjecture_scan(Arc::new(FieldCtx::new(5).unwrap()), 1, 0, 1).is_err());
    }
}
