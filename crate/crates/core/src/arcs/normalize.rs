//! Projectivities that move an arc into the normal forms the cap
//! constructions expect.

use std::fmt;
use std::str::FromStr;

use super::{profile, ArcProfile, PlaneArc};
use crate::error::{Error, Result};
use crate::gf2e::{Elem, FieldCtx};
use crate::projgeom::{Point, Projectivity, Space};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalizeTarget {
    /// Only sum-point `(0,0,1)`.
    SumPoint001,
    /// Arc meets `l_inf` in `(0,0,1),(0,1,0)`; only sum-point `(0,1,1)`.
    SumPoint011,
    /// Only sum-point `(0,0,1)` and `1` not in `S_inf`.
    SinfNoOne,
    /// The `SumPoint011` form, and the arc misses `{(1,a,A a^2) : A in S_1}`.
    LaScala,
    /// Affine, `1` not in `S_inf`, and `Y_2 != Y_1^2` on every point.
    Star,
}

impl NormalizeTarget {
    pub const ALL: [NormalizeTarget; 5] = [
        NormalizeTarget::SumPoint001,
        NormalizeTarget::SumPoint011,
        NormalizeTarget::SinfNoOne,
        NormalizeTarget::LaScala,
        NormalizeTarget::Star,
    ];
}

impl fmt::Display for NormalizeTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NormalizeTarget::SumPoint001 => "sumpoint-001",
            NormalizeTarget::SumPoint011 => "sumpoint-011",
            NormalizeTarget::SinfNoOne => "sinf-no-one",
            NormalizeTarget::LaScala => "lascala",
            NormalizeTarget::Star => "star",
        };
        f.write_str(s)
    }
}

impl FromStr for NormalizeTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NormalizeTarget::ALL
            .into_iter()
            .find(|t| t.to_string() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::Parse(format!("unknown normalize target {s:?}")))
    }
}

fn matrix(f: &FieldCtx, rows: [[Elem; 3]; 3]) -> Projectivity {
    Projectivity::new(f, rows).expect("construction yields an invertible matrix")
}

fn require_single_sum_point(prof: &ArcProfile) -> Result<()> {
    if !prof.complete {
        return Err(Error::HypothesisViolated("arc is not complete".into()));
    }
    if prof.beta != 1 {
        return Err(Error::HypothesisViolated(format!(
            "arc has {} sum-points, expected exactly 1",
            prof.beta
        )));
    }
    Ok(())
}

/// The two points on `l_inf`, `(0,X_1,f)` first with `X_1 in {0,1}`; the
/// point `(0,0,1)` comes first when present.
fn infinity_pair(arc: &PlaneArc) -> Result<(Point, Point)> {
    let inf = arc.points_at_infinity();
    match inf.as_slice() {
        [a, b] => {
            if b.coords()[1].is_zero() {
                Ok((b.clone(), a.clone()))
            } else {
                Ok((a.clone(), b.clone()))
            }
        }
        _ => Err(Error::HypothesisViolated(format!(
            "l_inf meets the arc in {} points, expected 2",
            inf.len()
        ))),
    }
}

fn to_sum_point_001(arc: &PlaneArc) -> Result<Projectivity> {
    let f = arc.field();
    let (first, second) = infinity_pair(arc)?;
    if first.coords()[1] == Elem::ONE {
        return Ok(Projectivity::identity());
    }
    // first = (0,0,1), second = (0,1,g): psi(x,y,z) = (x, (g+1)y + z, gy + z)
    let g = second.coords()[2];
    let (o, z) = (Elem::ONE, Elem::ZERO);
    Ok(matrix(f, [[o, z, z], [z, g + o, o], [z, g, o]]))
}

fn to_sum_point_011(arc: &PlaneArc) -> Result<Projectivity> {
    let f = arc.field();
    let (first, second) = infinity_pair(arc)?;
    let (o, z) = (Elem::ONE, Elem::ZERO);
    let g = second.coords()[2];
    if first.coords()[1].is_zero() {
        // psi(x,y,z) = (x, y, z + gy)
        return Ok(matrix(f, [[o, z, z], [z, o, z], [z, g, o]]));
    }
    // first = (0,1,f0), second = (0,1,g):
    // psi(x,y,z) = (x, (f0 y + z)/(f0+g), (g y + z)/(f0+g))
    let f0 = first.coords()[2];
    let inv = f.inv_nonzero(f0 + g);
    Ok(matrix(
        f,
        [[o, z, z], [z, f.mul(f0, inv), inv], [z, f.mul(g, inv), inv]],
    ))
}

fn scale_z(f: &FieldCtx, w: Elem) -> Projectivity {
    let (o, z) = (Elem::ONE, Elem::ZERO);
    matrix(f, [[o, z, z], [z, o, z], [z, z, f.inv_nonzero(w)]])
}

/// Smallest nonzero `w` outside the `S_inf` values, so that `z -> z/w`
/// removes 1 from `S_inf`.
fn first_w_outside_s_infty(f: &FieldCtx, prof: &ArcProfile) -> Result<Elem> {
    f.nonzero()
        .find(|w| !prof.s_infty.contains(w))
        .ok_or_else(|| Error::SearchExhausted("every nonzero w lies in S_inf".into()))
}

/// Smallest nonzero `w` such that `phi_w(x,y,z) = (x, wx + y, z)` moves the
/// affine part off `{(1,a,A a^2) : A in S_1}`.
fn first_lascala_shift(arc: &PlaneArc, s1: &[Elem]) -> Option<Elem> {
    let f = arc.field();
    let affine = arc.affine_points();
    f.nonzero().find(|&w| {
        affine.iter().all(|p| {
            let (b, c) = (p.coords()[1], p.coords()[2]);
            let y = f.square(w + b);
            s1.iter().all(|&a| f.mul(a, y) != c)
        })
    })
}

/// True iff no point of the arc lies on `{(1,a,A a^2) : A in S_1, a in F_q}`.
pub(crate) fn misses_s1_parabolas(arc: &PlaneArc, prof: &ArcProfile) -> bool {
    let f = arc.field();
    let s1: Vec<Elem> = prof.s_m(Elem::ONE).into_iter().collect();
    arc.affine_points().iter().all(|p| {
        let (a, c) = (p.coords()[1], p.coords()[2]);
        s1.iter().all(|&big_a| f.mul(big_a, f.square(a)) != c)
    })
}

/// The line (as a dual vector) of smallest rank missing every arc point.
fn first_external_line(arc: &PlaneArc) -> Option<[Elem; 3]> {
    let plane = arc.plane();
    let f = arc.field();
    plane.points().find_map(|l| {
        let u = l.coords();
        let misses = arc.points().iter().all(|p| {
            let c = p.coords();
            !(f.mul(u[0], c[0]) + f.mul(u[1], c[1]) + f.mul(u[2], c[2])).is_zero()
        });
        misses.then(|| [u[0], u[1], u[2]])
    })
}

/// A projectivity sending the line `u` to `l_inf`: first row `u`, completed
/// by the first pair of unit rows that keeps the matrix invertible.
fn line_to_infinity(f: &FieldCtx, u: [Elem; 3]) -> Projectivity {
    let unit = |i: usize| {
        let mut r = [Elem::ZERO; 3];
        r[i] = Elem::ONE;
        r
    };
    for (a, b) in [(1, 2), (0, 2), (0, 1)] {
        if let Ok(p) = Projectivity::new(f, [u, unit(a), unit(b)]) {
            return p;
        }
    }
    unreachable!("a nonzero row extends to a basis with two unit vectors")
}

fn verify(arc: &PlaneArc, target: NormalizeTarget, before: &ArcProfile) -> Result<()> {
    let prof = profile(arc);
    let plane = arc.plane();
    let pt = |v: [u64; 3]| plane.point_from_ints(&v).expect("valid point");
    let fail = |what: &str| Err(Error::SearchExhausted(format!("{target}: {what}")));
    let preserved = prof.beta == before.beta && prof.p == before.p;
    match target {
        NormalizeTarget::SumPoint001 => {
            if prof.only_sum_point() != Some(&pt([0, 0, 1])) || !preserved {
                return fail("only sum-point is not (0,0,1)");
            }
        }
        NormalizeTarget::SinfNoOne => {
            if prof.only_sum_point() != Some(&pt([0, 0, 1])) || !preserved {
                return fail("only sum-point is not (0,0,1)");
            }
            if prof.s_infty.contains(&Elem::ONE) {
                return fail("1 remains in S_inf");
            }
        }
        NormalizeTarget::SumPoint011 | NormalizeTarget::LaScala => {
            if prof.only_sum_point() != Some(&pt([0, 1, 1])) || !preserved {
                return fail("only sum-point is not (0,1,1)");
            }
            if arc.points_at_infinity() != vec![pt([0, 1, 0]), pt([0, 0, 1])] {
                return fail("arc does not meet l_inf in (0,0,1),(0,1,0)");
            }
            if target == NormalizeTarget::LaScala && !misses_s1_parabolas(arc, &prof) {
                return fail("arc meets a parabola (1,a,A a^2), A in S_1");
            }
        }
        NormalizeTarget::Star => {
            let f = arc.field();
            if !arc.is_affine() || prof.s_infty.contains(&Elem::ONE) {
                return fail("arc is not affine with 1 outside S_inf");
            }
            if arc
                .points()
                .iter()
                .any(|p| p.coords()[2] == f.square(p.coords()[1]))
            {
                return fail("a point satisfies Y_2 = Y_1^2");
            }
            if prof.complete != before.complete {
                return fail("completeness changed");
            }
        }
    }
    Ok(())
}

/// Moves `arc` into the requested normal form.
///
/// For the four sum-point targets the returned matrix is integral for the
/// input, so sum-points, `beta` and `p` are carried over. `Star` only
/// promises projective equivalence; its first step sends an external line
/// to `l_inf`, which is generally not integral.
pub fn normalize_arc(arc: &PlaneArc, target: NormalizeTarget) -> Result<(Projectivity, PlaneArc)> {
    let f = arc.field();
    let q = arc.q();
    let k = arc.len();
    let before = profile(arc);
    let psi = match target {
        NormalizeTarget::SumPoint001 => {
            require_single_sum_point(&before)?;
            to_sum_point_001(arc)?
        }
        NormalizeTarget::SumPoint011 => {
            require_single_sum_point(&before)?;
            to_sum_point_011(arc)?
        }
        NormalizeTarget::SinfNoOne => {
            require_single_sum_point(&before)?;
            let first = to_sum_point_001(arc)?;
            let mid = arc.map(&first, true)?;
            let w = first_w_outside_s_infty(f, &profile(&mid))?;
            scale_z(f, w).compose(f, &first)
        }
        NormalizeTarget::LaScala => {
            require_single_sum_point(&before)?;
            let p = before.p.expect("beta = 1");
            if (k - 2) * p >= q - 1 {
                return Err(Error::HypothesisViolated(format!(
                    "(k-2)p = {} is not below q-1 = {}",
                    (k - 2) * p,
                    q - 1
                )));
            }
            let first = to_sum_point_011(arc)?;
            let mid = arc.map(&first, true)?;
            let s1: Vec<Elem> = profile(&mid).s_m(Elem::ONE).into_iter().collect();
            let w = first_lascala_shift(&mid, &s1)
                .ok_or_else(|| Error::SearchExhausted("no admissible shift w".into()))?;
            let (o, z) = (Elem::ONE, Elem::ZERO);
            matrix(f, [[o, z, z], [w, o, z], [z, z, o]]).compose(f, &first)
        }
        NormalizeTarget::Star => {
            if !before.complete {
                return Err(Error::HypothesisViolated("arc is not complete".into()));
            }
            if k + 5 >= q {
                return Err(Error::HypothesisViolated(format!("k = {k} is not below q-5")));
            }
            star_projectivity(arc)?
        }
    };
    let integral = target != NormalizeTarget::Star;
    let image = arc.map(&psi, integral)?;
    verify(&image, target, &before)?;
    Ok((psi, image))
}

fn star_projectivity(arc: &PlaneArc) -> Result<Projectivity> {
    let f = arc.field();
    let (o, z) = (Elem::ONE, Elem::ZERO);
    // affine image
    let mut psi = if arc.is_affine() {
        Projectivity::identity()
    } else {
        let u = first_external_line(arc)
            .ok_or_else(|| Error::SearchExhausted("arc has no external line".into()))?;
        line_to_infinity(f, u)
    };
    let mut cur = arc.map(&psi, false)?;

    // The scaling step below cannot move (1,0,0); translate it away first.
    // z -> z + u x keeps S_inf unchanged.
    let origin = cur.plane().point_from_ints(&[1, 0, 0])?;
    if cur.contains(&origin) {
        let taken: Vec<Elem> = cur
            .points()
            .iter()
            .filter(|p| p.coords()[1].is_zero())
            .map(|p| p.coords()[2])
            .collect();
        let shift = f
            .nonzero()
            .find(|u| !taken.contains(u))
            .ok_or_else(|| Error::SearchExhausted("no translation clears (1,0,0)".into()))?;
        let t = matrix(f, [[o, z, z], [z, o, z], [shift, z, o]]);
        psi = t.compose(f, &psi);
        cur = arc.map(&psi, false)?;
    }

    let w = first_w_outside_s_infty(f, &profile(&cur))?;
    psi = scale_z(f, w).compose(f, &psi);
    cur = arc.map(&psi, false)?;

    // (x,y,z) -> (x, v y, z) with b != (v a)^2 on every (1,a,b)
    let v = f
        .nonzero()
        .find(|&v| {
            cur.points().iter().all(|p| {
                let (a, b) = (p.coords()[1], p.coords()[2]);
                b != f.square(f.mul(v, a))
            })
        })
        .ok_or_else(|| Error::SearchExhausted("no scaling separates the arc from Y_2 = Y_1^2".into()))?;
    Ok(matrix(f, [[o, z, z], [z, v, z], [z, z, o]]).compose(f, &psi))
}

#[allow(dead_code)]
pub(crate) fn is_point(plane: &Space, p: &Point, v: [u64; 3]) -> bool {
    plane.point_from_ints(&v).map(|x| &x == p).unwrap_or(false)
}
