//! The cap constructions: products with the parabola caps `P^j`, the
//! recursive caps `K^(2s+1)_{m1,m2}`, and the five arc-to-cap builders.

use std::sync::Arc;

use super::{sizes, verify, Cap, Provenance, ProvenanceTag};
use crate::arcs::{admissible_pair, choose_m1_m2, misses_s1_parabolas, ArcProfile, PlaneArc};
use crate::error::{Error, Result};
use crate::gf2e::{Elem, FieldCtx};
use crate::projgeom::{Embedding, Point, Space};

/// Builders check completeness exhaustively up to this many points.
pub const BUILD_VERIFY_LIMIT: u64 = 2_000_000;

/// `P^j = {(a_1, a_1^2, ..., a_j, a_j^2)}` in AG(2j,q), tuples in
/// lexicographic order (the zero tuple first). `P^0` is the single empty
/// vector.
pub fn parabola_cap(f: &FieldCtx, j: usize) -> Vec<Vec<Elem>> {
    let q = f.q();
    let total = q.pow(j as u32);
    (0..total)
        .map(|mut idx| {
            let mut a = vec![Elem::ZERO; j];
            for t in (0..j).rev() {
                a[t] = Elem((idx % q) as u16);
                idx /= q;
            }
            a.iter().flat_map(|&x| [x, f.square(x)]).collect()
        })
        .collect()
}

/// All concatenations `(P, Q)` of normalized points `P` with affine points
/// `Q`.
pub fn product_points(target: &Space, c1: &[Point], c2: &[Vec<Elem>]) -> Result<Vec<Point>> {
    let mut out = Vec::with_capacity(c1.len() * c2.len());
    for p in c1 {
        for v in c2 {
            if p.coords().len() + v.len() != target.dim() + 1 {
                return Err(Error::DimensionMismatch(format!(
                    "product of PG({}) and AG({}) is not PG({})",
                    p.dim(),
                    v.len(),
                    target.dim()
                )));
            }
            let mut c = p.coords().to_vec();
            c.extend_from_slice(v);
            out.push(target.normalize(&c)?);
        }
    }
    Ok(out)
}

pub fn product_cap(target: &Space, c1: &[Point], c2: &[Vec<Elem>]) -> Result<Cap> {
    Cap::new(target.clone(), product_points(target, c1, c2)?, Provenance::new(ProvenanceTag::Product))
}

/// Coordinates of `K^(2s+1)_{m1,m2}`; the point `U = (1,0,...,0)` comes
/// last.
pub fn k_m1m2_points(f: &FieldCtx, s: usize, m1: Elem, m2: Elem) -> Vec<Vec<Elem>> {
    let (o, z) = (Elem::ONE, Elem::ZERO);
    if s == 0 {
        return vec![vec![z, o], vec![o, z]];
    }
    let par = parabola_cap(f, s);
    let nonzero = &par[1..];
    let mut out = Vec::new();
    for v in nonzero {
        for m in [m1, m2] {
            let mut c = vec![o, m];
            c.extend_from_slice(v);
            out.push(c);
        }
    }
    for v in nonzero {
        let mut c = vec![z, o];
        c.extend_from_slice(v);
        out.push(c);
    }
    let mut inner = k_m1m2_points(f, s - 1, m1, m2);
    let u = inner.pop().expect("U is last");
    inner.insert(0, u);
    for b in inner {
        let mut c = vec![z, z];
        c.extend(b);
        out.push(c);
    }
    let mut u = vec![z; 2 * s + 2];
    u[0] = o;
    out.push(u);
    out
}

fn check_pair(f: &FieldCtx, m1: Elem, m2: Elem) -> Result<()> {
    if f.q() <= 4 {
        return Err(Error::BadParameters(format!("q = {} must exceed 4", f.q())));
    }
    if !admissible_pair(f, m1, m2) {
        return Err(Error::BadParameters(format!(
            "(m1, m2) = ({m1}, {m2}) needs m_i not in {{0,1}}, m1 != m2, (m1+m2)^3 != 1"
        )));
    }
    Ok(())
}

fn size_of(value: Option<i128>) -> Result<usize> {
    value
        .and_then(|v| usize::try_from(v).ok())
        .ok_or_else(|| Error::TooLarge("cap size overflows".into()))
}

/// Size and cap checks shared by all builders; completeness too when
/// `complete` is set and the space is small enough.
fn finish(cap: Cap, expected: usize, complete: bool) -> Result<Cap> {
    if cap.len() != expected {
        return Err(Error::VerificationFailed(format!(
            "{} has {} points, size formula gives {expected}",
            cap.provenance().tag.name(),
            cap.len()
        )));
    }
    if !verify::verify_cap(&cap) {
        return Err(Error::VerificationFailed(format!(
            "{} is not a cap",
            cap.provenance().tag.name()
        )));
    }
    if complete && cap.space().num_points() <= BUILD_VERIFY_LIMIT {
        let c = verify::verify_complete(&cap)?;
        if !c.complete {
            return Err(Error::VerificationFailed(format!(
                "{} leaves {} points uncovered, first {}",
                cap.provenance().tag.name(),
                c.uncovered.len(),
                c.uncovered[0]
            )));
        }
    }
    Ok(cap)
}

fn k_cap(field: &Arc<FieldCtx>, s: usize, m1: Elem, m2: Elem, star: bool) -> Result<Cap> {
    check_pair(field, m1, m2)?;
    let space = Space::new(2 * s + 1, field.clone())?;
    let mut raw = k_m1m2_points(field, s, m1, m2);
    if star {
        raw.pop();
    }
    let pts = raw.iter().map(|c| space.normalize(c)).collect::<Result<Vec<_>>>()?;
    let tag = if star { ProvenanceTag::K2Star } else { ProvenanceTag::KM1M2 };
    let mut prov = Provenance::new(tag);
    prov.s = Some(s);
    prov.m1 = Some(m1);
    prov.m2 = Some(m2);
    let expected = size_of(sizes::k_m1m2_size(s as i64, field.q() as i128))? - star as usize;
    let cap = finish(Cap::new(space, pts, prov)?, expected, false)?;
    if cap.space().num_points() <= BUILD_VERIFY_LIMIT {
        let un = verify::verify_complete(&cap)?.uncovered;
        let on_u_line = |p: &Point| p.coords()[0] == Elem::ONE && p.coords()[2..].iter().all(|c| c.is_zero());
        if let Some(p) = un.iter().find(|p| !on_u_line(p)) {
            return Err(Error::VerificationFailed(format!("{} leaves {p} uncovered", tag.name())));
        }
    }
    Ok(cap)
}

/// `K^(2s+1)_{m1,m2}` in PG(2s+1,q), `s >= 1`.
pub fn k_m1m2_cap(field: &Arc<FieldCtx>, s: usize, m1: Elem, m2: Elem) -> Result<Cap> {
    if s == 0 {
        return Err(Error::BadParameters("s must be at least 1".into()));
    }
    k_cap(field, s, m1, m2, false)
}

/// `K^(2s+1)_{m1,m2}` without `U = (1,0,...,0)`.
pub fn k2_star(field: &Arc<FieldCtx>, s: usize, m1: Elem, m2: Elem) -> Result<Cap> {
    if s == 0 {
        return Err(Error::BadParameters("s must be at least 1".into()));
    }
    k_cap(field, s, m1, m2, true)
}

fn violated(what: impl Into<String>) -> Error {
    Error::HypothesisViolated(what.into())
}

fn require(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(violated(what))
    }
}

fn require_small_arc(arc: &PlaneArc) -> Result<()> {
    require(arc.len() + 5 < arc.q(), "k < q - 5")
}

fn require_q_above_8(arc: &PlaneArc) -> Result<()> {
    require(arc.q() > 8, "q > 8")
}

fn sum_point_is(arc: &PlaneArc, prof: &ArcProfile, v: [u64; 3]) -> Result<bool> {
    let p = arc.plane().point_from_ints(&v)?;
    Ok(prof.only_sum_point() == Some(&p))
}

/// Affinely complete affine arc, `(0,0,1)` covered, `1` not in `S_inf`,
/// `k < q - 5`, `q > 8`.
pub fn check_case1(arc: &PlaneArc) -> Result<ArcProfile> {
    require_q_above_8(arc)?;
    require_small_arc(arc)?;
    require(arc.is_affine(), "arc is affine")?;
    let prof = arc.profile();
    require(prof.affinely_complete, "arc is affinely complete")?;
    let top = arc.plane().point_from_ints(&[0, 0, 1])?;
    require(!prof.uncovered.contains(&top), "(0,0,1) is covered")?;
    require(!prof.s_infty.contains(&Elem::ONE), "1 not in S_inf")?;
    Ok(prof)
}

/// Complete, only sum-point `(0,0,1)`, `1` not in `S_inf`, `k < q - 5`,
/// `q > 8`.
pub fn check_case2(arc: &PlaneArc) -> Result<ArcProfile> {
    require_q_above_8(arc)?;
    require_small_arc(arc)?;
    let prof = arc.profile();
    require(prof.complete, "arc is complete")?;
    require(prof.beta == 1, "exactly one sum-point")?;
    require(sum_point_is(arc, &prof, [0, 0, 1])?, "the sum-point is (0,0,1)")?;
    require(!prof.s_infty.contains(&Elem::ONE), "1 not in S_inf")?;
    Ok(prof)
}

/// Complete, one sum-point, arc meets `l_inf` in `(0,0,1),(0,1,0)`,
/// `(k-2)p < q-1`, and no arc point of the form `(1,a,A a^2)`, `A in S_1`.
pub fn check_case3(arc: &PlaneArc) -> Result<ArcProfile> {
    let prof = arc.profile();
    require(prof.complete, "arc is complete")?;
    require(prof.beta == 1, "exactly one sum-point")?;
    let plane = arc.plane();
    let inf = vec![plane.point_from_ints(&[0, 1, 0])?, plane.point_from_ints(&[0, 0, 1])?];
    require(arc.points_at_infinity() == inf, "arc meets l_inf in (0,0,1),(0,1,0)")?;
    let p = prof.p.expect("beta = 1");
    require((arc.len() - 2) * p < arc.q() - 1, "(k-2)p < q-1")?;
    require(misses_s1_parabolas(arc, &prof), "arc misses (1,a,A a^2) for A in S_1")?;
    Ok(prof)
}

/// Complete affine arc with `k < q - 5`, `1` not in `S_inf` and
/// `Y_2 != Y_1^2` on every point.
pub fn check_star(arc: &PlaneArc) -> Result<ArcProfile> {
    require_small_arc(arc)?;
    require(arc.is_affine(), "arc is affine")?;
    let f = arc.field();
    require(
        arc.points().iter().all(|p| p.coords()[2] != f.square(p.coords()[1])),
        "Y_2 != Y_1^2 on every point",
    )?;
    let prof = arc.profile();
    require(prof.complete, "arc is complete")?;
    require(!prof.s_infty.contains(&Elem::ONE), "1 not in S_inf")?;
    Ok(prof)
}

fn embed_all(space: &Space, raw: &[Vec<Elem>], zeros: usize) -> Result<Vec<Point>> {
    raw.iter()
        .map(|c| {
            let mut v = vec![Elem::ZERO; zeros];
            v.extend_from_slice(c);
            space.normalize(&v)
        })
        .collect()
}

fn arc_provenance(tag: ProvenanceTag, arc: &PlaneArc, s: usize) -> Provenance {
    let mut p = Provenance::new(tag);
    p.s = Some(s);
    p.k = Some(arc.len());
    p.arc_hash = Some(arc.fingerprint());
    p
}

fn require_s(s: usize) -> Result<()> {
    if s == 0 {
        Err(Error::BadParameters("s must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `(K:P^s) + K_2(m1,m2)` in PG(2s+2,q), plus up to two points
/// `(0,1,m0,0,...,0)` for slopes `m0` outside `Cov_inf(K)`.
pub fn build_even_case1(arc: &PlaneArc, s: usize) -> Result<Cap> {
    require_s(s)?;
    let prof = check_case1(arc)?;
    let field = arc.plane().field_arc().clone();
    let space = Space::new(2 * s + 2, field.clone())?;
    let (m1, m2) = choose_m1_m2(arc)?;
    let mut pts = product_points(&space, arc.points(), &parabola_cap(&field, s))?;
    let mut k2 = k_m1m2_points(&field, s, m1, m2);
    k2.pop();
    pts.extend(embed_all(&space, &k2, 1)?);
    let ext: Vec<Elem> = field.elements().filter(|m| !prof.cov_infty.contains(m)).take(2).collect();
    for &m0 in &ext {
        let mut v = vec![Elem::ZERO; 2 * s + 3];
        v[1] = Elem::ONE;
        v[2] = m0;
        pts.push(space.normalize(&v)?);
    }
    let tag = if ext.is_empty() { ProvenanceTag::Teo1 } else { ProvenanceTag::Teo1Extended };
    let mut prov = arc_provenance(tag, arc, s);
    prov.m1 = Some(m1);
    prov.m2 = Some(m2);
    prov.extension = ext.clone();
    let expected = size_of(sizes::teo1_size(arc.len() as i128, field.q() as i128, 2 * s as i64 + 2))? + ext.len();
    finish(Cap::new(space, pts, prov)?, expected, true)
}

/// `(K:P^s) + K^(2s-1)_{m1,m2} + {(0,0,1,a_1,a_1^2,...,a_s,a_s^2) : a != 0}`
/// in PG(2s+2,q), the middle block in `X_0 = X_1 = X_2 = 0`. The point
/// `(0,0,1,0,...,0)` lies on a secant of `(K:P^s)` and is left out; the
/// image `(0,0,0,1,0,...,0)` of `U` takes its place. For `s = 1` the middle
/// block is `(0,0,0,1,0),(0,0,0,0,1)`.
pub fn build_even_case2(arc: &PlaneArc, s: usize) -> Result<Cap> {
    require_s(s)?;
    check_case2(arc)?;
    let field = arc.plane().field_arc().clone();
    let space = Space::new(2 * s + 2, field.clone())?;
    let (m1, m2) = choose_m1_m2(arc)?;
    let par = parabola_cap(&field, s);
    let mut pts = product_points(&space, arc.points(), &par)?;
    pts.extend(embed_all(&space, &k_m1m2_points(&field, s - 1, m1, m2), 3)?);
    let top: Vec<Vec<Elem>> = par[1..]
        .iter()
        .map(|v| {
            let mut c = vec![Elem::ONE];
            c.extend_from_slice(v);
            c
        })
        .collect();
    pts.extend(embed_all(&space, &top, 2)?);
    let mut prov = arc_provenance(ProvenanceTag::Teo2, arc, s);
    prov.m1 = Some(m1);
    prov.m2 = Some(m2);
    let expected = size_of(sizes::teo2_size(arc.len() as i128, field.q() as i128, 2 * s as i64 + 2))?;
    finish(Cap::new(space, pts, prov)?, expected, true)
}

/// `(K:P^s) + Phi_0(K) + Phi_1((K:P^1)) + ... + Phi_(s-1)((K:P^(s-1)))` in
/// PG(2s+2,q).
pub fn build_even_case3(arc: &PlaneArc, s: usize) -> Result<Cap> {
    require_s(s)?;
    check_case3(arc)?;
    let field = arc.plane().field_arc().clone();
    let space = Space::new(2 * s + 2, field.clone())?;
    let mut pts = product_points(&space, arc.points(), &parabola_cap(&field, s))?;
    for j in 0..s {
        let src = Space::new(2 * j + 2, field.clone())?;
        for p in product_points(&src, arc.points(), &parabola_cap(&field, j))? {
            pts.push(space.embed(&p, &Embedding::Phi { j })?);
        }
    }
    let prov = arc_provenance(ProvenanceTag::Teo3, arc, s);
    let expected = size_of(sizes::teo3_size(arc.len() as i128, field.q() as i128, 2 * s as i64 + 2))?;
    finish(Cap::new(space, pts, prov)?, expected, true)
}

/// Embeds `inner` (in PG(2s+2,q)) in `X_0 = 0` of PG(2s+3,q) and adds
/// `(K_0:P^(s+1))` with `K_0 = {(1,1),(1,0)}`.
fn odd_from(inner: &Cap, s: usize) -> Result<Vec<Point>> {
    let field = inner.space().field_arc().clone();
    let space = Space::new(2 * s + 3, field.clone())?;
    let line = Space::new(1, field.clone())?;
    let k0 = [line.point_from_ints(&[1, 1])?, line.point_from_ints(&[1, 0])?];
    let mut pts = product_points(&space, &k0, &parabola_cap(&field, s + 1))?;
    for p in inner.points() {
        pts.push(space.embed(p, &Embedding::PrefixZeros(1))?);
    }
    Ok(pts)
}

/// `(K_0:P^(s+1))` plus the case-1 cap of PG(2s+2,q) in `X_0 = 0` of
/// PG(2s+3,q).
pub fn build_odd_case1(arc: &PlaneArc, s: usize) -> Result<Cap> {
    require_s(s)?;
    require_q_above_8(arc)?;
    check_star(arc)?;
    let inner = build_even_case1(arc, s)?;
    if !inner.provenance().extension.is_empty() {
        return Err(violated("complete affine arc covers l_inf"));
    }
    let pts = odd_from(&inner, s)?;
    let space = Space::new(2 * s + 3, arc.plane().field_arc().clone())?;
    let mut prov = arc_provenance(ProvenanceTag::Teodd1, arc, s);
    prov.m1 = inner.provenance().m1;
    prov.m2 = inner.provenance().m2;
    let expected = size_of(sizes::teodd1_size(arc.len() as i128, arc.q() as i128, 2 * s as i64 + 3))?;
    finish(Cap::new(space, pts, prov)?, expected, true)
}

/// `(K_0:P^(s+1))` plus the case-3 cap of PG(2s+2,q) in `X_0 = 0` of
/// PG(2s+3,q).
pub fn build_odd_case3(arc: &PlaneArc, s: usize) -> Result<Cap> {
    require_s(s)?;
    let inner = build_even_case3(arc, s)?;
    let pts = odd_from(&inner, s)?;
    let space = Space::new(2 * s + 3, arc.plane().field_arc().clone())?;
    let prov = arc_provenance(ProvenanceTag::Teodd2, arc, s);
    let expected = size_of(sizes::teodd2_size(arc.len() as i128, arc.q() as i128, 2 * s as i64 + 3))?;
    finish(Cap::new(space, pts, prov)?, expected, true)
}
