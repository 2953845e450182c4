//! Cap and completeness checks, exhaustive and sampled.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Cap;
use crate::coverage::secant_coverage;
use crate::error::{Error, Result};
use crate::gf2e::Elem;
use crate::projgeom::{Point, Space};

/// Hard limit on `|PG(N,q)|` for exhaustive completeness checks.
pub const EXHAUSTIVE_LIMIT: u64 = 10_000_000;
/// `Auto` verification is exhaustive up to this many points.
pub const DEFAULT_EXHAUSTIVE_LIMIT: u64 = 1_000_000;
/// Random triples drawn by sampled cap checks.
pub const SAMPLED_TRIPLES: usize = 1_000_000;

const CHUNK: usize = 10_000;

/// Projects every point of `pts` other than `p` from `p` and returns the
/// rank of each image, `None` for `p` itself. Two points are collinear with
/// `p` iff their images agree.
fn project_from(space: &Space, pts: &[Point], p: &Point) -> Vec<Option<u64>> {
    let f = space.field();
    let lead = p.lead();
    let pc = p.coords();
    let mut buf = vec![Elem::ZERO; pc.len()];
    pts.iter()
        .map(|a| {
            let c = a.coords()[lead];
            for (b, (&x, &y)) in buf.iter_mut().zip(a.coords().iter().zip(pc)) {
                *b = x + f.mul(c, y);
            }
            space.rank_of_vector(&buf)
        })
        .collect()
}

/// Number of 2-subsets of `pts` collinear with `p`; `p` itself is skipped.
pub fn secants_through_external(space: &Space, pts: &[Point], p: &Point) -> usize {
    let mut classes: HashMap<u64, usize> = HashMap::new();
    for r in project_from(space, pts, p).into_iter().flatten() {
        *classes.entry(r).or_default() += 1;
    }
    classes.values().map(|&c| c * (c - 1) / 2).sum()
}

/// Exact cap test: no repeated point and, from every point, the other
/// points project to distinct images.
pub fn verify_cap(cap: &Cap) -> bool {
    let space = cap.space();
    let pts = cap.points();
    if pts.windows(2).any(|w| w[0] == w[1]) {
        return false;
    }
    pts.par_iter().enumerate().all(|(i, p)| {
        let mut img: Vec<u64> = project_from(space, &pts[i + 1..], p).into_iter().flatten().collect();
        img.sort_unstable();
        img.windows(2).all(|w| w[0] != w[1])
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Completeness {
    pub complete: bool,
    /// Points off every secant, the cap's own points excluded.
    pub uncovered: Vec<Point>,
}

/// Marks every point on a secant of `pts` over the whole space.
pub fn verify_complete_points(space: &Space, pts: &[Point]) -> Result<Completeness> {
    if space.num_points() > EXHAUSTIVE_LIMIT {
        return Err(Error::TooLarge(format!(
            "exhaustive completeness over {} points (limit {EXHAUSTIVE_LIMIT})",
            space.num_points()
        )));
    }
    let mut cov = secant_coverage(space, pts);
    for p in pts {
        cov.mark(p.rank());
    }
    let uncovered = cov.unmarked().map(|r| space.unrank(r)).collect::<Result<Vec<_>>>()?;
    Ok(Completeness {
        complete: uncovered.is_empty(),
        uncovered,
    })
}

pub fn verify_complete(cap: &Cap) -> Result<Completeness> {
    verify_complete_points(cap.space(), cap.points())
}

/// Checks `samples` random triples for collinearity; false means a
/// collinear triple was found.
pub fn sampled_cap_check(cap: &Cap, samples: usize, seed: u64) -> Result<bool> {
    let n = cap.len();
    if n < 3 {
        return Ok(true);
    }
    let space = cap.space();
    let pts = cap.points();
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks).into_par_iter().try_fold(
        || true,
        |ok, c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let todo = CHUNK.min(samples - c * CHUNK);
            let mut ok = ok;
            for _ in 0..todo {
                let i = rng.gen_range(0..n);
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                let mut k = rng.gen_range(0..n);
                while k == i || k == j {
                    k = rng.gen_range(0..n);
                }
                if space.collinear(&pts[i], &pts[j], &pts[k])? {
                    ok = false;
                }
            }
            Ok(ok)
        },
    )
    .try_reduce(|| true, |a, b| Ok(a && b))
}

/// Draws `samples` random points of the space and returns those off the cap
/// that lie on no secant.
pub fn sampled_completeness(cap: &Cap, samples: usize, seed: u64) -> Result<Vec<Point>> {
    let space = cap.space();
    let total = space.num_points();
    let chunks = samples.div_ceil(CHUNK);
    let mut found: Vec<Point> = (0..chunks)
        .into_par_iter()
        .map(|c| -> Result<Vec<Point>> {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let todo = CHUNK.min(samples - c * CHUNK);
            let mut out = Vec::new();
            for _ in 0..todo {
                let p = space.unrank(rng.gen_range(0..total))?;
                if cap.contains(&p) {
                    continue;
                }
                let mut img: Vec<u64> = project_from(space, cap.points(), &p).into_iter().flatten().collect();
                img.sort_unstable();
                if img.windows(2).all(|w| w[0] != w[1]) {
                    out.push(p);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    found.sort();
    found.dedup();
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyLevel {
    None,
    Sampled,
    Exhaustive,
    /// Exhaustive up to `DEFAULT_EXHAUSTIVE_LIMIT` points, sampled above.
    Auto,
}

impl VerifyLevel {
    pub fn name(self) -> &'static str {
        match self {
            VerifyLevel::None => "none",
            VerifyLevel::Sampled => "sampled",
            VerifyLevel::Exhaustive => "exhaustive",
            VerifyLevel::Auto => "auto",
        }
    }
}

impl fmt::Display for VerifyLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VerifyLevel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [VerifyLevel::None, VerifyLevel::Sampled, VerifyLevel::Exhaustive, VerifyLevel::Auto]
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown verification level {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    /// The level actually applied (`auto` is resolved).
    pub level: VerifyLevel,
    pub dim: usize,
    pub q: usize,
    pub points: usize,
    pub space_points: u64,
    pub provenance: String,
    pub is_cap: Option<bool>,
    pub complete: Option<bool>,
    /// Exhaustive: all uncovered points. Sampled: uncovered points hit.
    pub uncovered: Option<usize>,
    pub triples_sampled: usize,
    pub points_sampled: usize,
}

impl VerifyReport {
    /// True unless a check ran and failed.
    pub fn passed(&self) -> bool {
        self.is_cap != Some(false) && self.complete != Some(false)
    }
}

/// Point samples for sampled completeness, scaled so the work stays near
/// `10^8` projections.
fn point_samples(n: usize) -> usize {
    (100_000_000 / n.max(1)).clamp(1_000, 1_000_000)
}

pub fn verify_report(cap: &Cap, level: VerifyLevel, seed: u64) -> Result<VerifyReport> {
    let total = cap.space().num_points();
    let level = match level {
        VerifyLevel::Auto if total <= DEFAULT_EXHAUSTIVE_LIMIT => VerifyLevel::Exhaustive,
        VerifyLevel::Auto => VerifyLevel::Sampled,
        l => l,
    };
    let mut r = VerifyReport {
        level,
        dim: cap.dim(),
        q: cap.q(),
        points: cap.len(),
        space_points: total,
        provenance: cap.provenance().to_string(),
        is_cap: None,
        complete: None,
        uncovered: None,
        triples_sampled: 0,
        points_sampled: 0,
    };
    match level {
        VerifyLevel::None | VerifyLevel::Auto => {}
        VerifyLevel::Exhaustive => {
            let c = verify_complete(cap)?;
            r.is_cap = Some(verify_cap(cap));
            r.complete = Some(c.complete);
            r.uncovered = Some(c.uncovered.len());
        }
        VerifyLevel::Sampled => {
            r.triples_sampled = SAMPLED_TRIPLES;
            r.points_sampled = point_samples(cap.len());
            r.is_cap = Some(sampled_cap_check(cap, r.triples_sampled, seed)?);
            let un = sampled_completeness(cap, r.points_sampled, seed ^ 0x5eed)?;
            r.complete = Some(un.is_empty());
            r.uncovered = Some(un.len());
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::{parabola_cap, Provenance, ProvenanceTag};
    use crate::gf2e::FieldCtx;
    use std::sync::Arc;

    fn space(n: usize, h: u32) -> Space {
        Space::new(n, Arc::new(FieldCtx::new(h).unwrap())).unwrap()
    }

    fn brute_cap(space: &Space, pts: &[Point]) -> bool {
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if space.collinear(&pts[i], &pts[j], &pts[k]).unwrap() {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn affine(space: &Space, raw: &[Vec<Elem>]) -> Vec<Point> {
        raw.iter()
            .map(|v| {
                let mut c = vec![Elem::ONE];
                c.extend_from_slice(v);
                space.normalize(&c).unwrap()
            })
            .collect()
    }

    #[test]
    fn verify_cap_matches_triple_oracle() {
        let s = space(3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let n = rng.gen_range(3..9);
            let mut pts: Vec<Point> = (0..n).map(|_| s.unrank(rng.gen_range(0..s.num_points())).unwrap()).collect();
            pts.sort();
            pts.dedup();
            let cap = Cap::imported(s.clone(), pts.clone()).unwrap();
            assert_eq!(verify_cap(&cap), brute_cap(&s, &pts));
        }
    }

    #[test]
    fn gi1_parabola_counts() {
        for h in [3, 4] {
            let f = FieldCtx::new(h).unwrap();
            let s = space(2, h);
            let pts = affine(&s, &parabola_cap(&f, 1));
            for p in s.points().filter(|p| Space::is_affine(p) && !pts.contains(p)) {
                assert_eq!(secants_through_external(&s, &pts, &p), (f.q() - 2) / 2);
            }
        }
    }

    #[test]
    fn two_points_are_incomplete() {
        let s = space(2, 3);
        let pts = vec![s.unrank(0).unwrap(), s.unrank(1).unwrap()];
        let c = verify_complete_points(&s, &pts).unwrap();
        assert!(!c.complete);
        assert_eq!(c.uncovered.len() as u64, s.num_points() - s.q() as u64 - 1);
    }

    #[test]
    fn exhaustive_limit_is_enforced() {
        let s = space(7, 4);
        assert!(matches!(verify_complete_points(&s, &[]), Err(Error::TooLarge(_))));
    }

    #[test]
    fn sampled_checks_catch_collinear_triples_and_holes() {
        let s = space(2, 3);
        let line = s.line_through(&s.unrank(0).unwrap(), &s.unrank(1).unwrap()).unwrap();
        let cap = Cap::imported(s.clone(), line[..3].to_vec()).unwrap();
        assert!(!sampled_cap_check(&cap, 200, 1).unwrap());
        let un = sampled_completeness(&cap, 2_000, 1).unwrap();
        assert!(!un.is_empty());
        let r = verify_report(&cap, VerifyLevel::Sampled, 3).unwrap();
        assert_eq!(r.is_cap, Some(false));
        assert!(!r.passed());
    }

    #[test]
    fn report_levels() {
        let s = space(2, 3);
        let f = FieldCtx::new(3).unwrap();
        let mut pts = affine(&s, &parabola_cap(&f, 1));
        pts.push(s.point_from_ints(&[0, 0, 1]).unwrap());
        pts.push(s.point_from_ints(&[0, 1, 0]).unwrap());
        let cap = Cap::new(s, pts, Provenance::new(ProvenanceTag::Imported)).unwrap();
        let r = verify_report(&cap, VerifyLevel::Auto, 0).unwrap();
        assert_eq!(r.level, VerifyLevel::Exhaustive);
        assert_eq!((r.is_cap, r.complete, r.uncovered), (Some(true), Some(true), Some(0)));
        let r = verify_report(&cap, VerifyLevel::Sampled, 0).unwrap();
        assert!(r.passed());
        assert_eq!(verify_report(&cap, VerifyLevel::None, 0).unwrap().is_cap, None);
        for l in ["none", "sampled", "exhaustive", "auto"] {
            assert_eq!(l.parse::<VerifyLevel>().unwrap().name(), l);
        }
    }
}
