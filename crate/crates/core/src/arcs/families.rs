//! Explicit arc families over even square and even-degree fields.

use std::sync::Arc;

use super::PlaneArc;
use crate::error::{Error, Result};
use crate::gf2e::{Elem, FieldCtx};
use crate::projgeom::{Point, Space};

/// How the Artin-Schreier parameter `d` of `K_w` is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KwParameter {
    /// First `d` of the half field, in encoding order, whose root `w` of
    /// `w^2 + w + d = 0` lies outside the half field.
    FirstValid,
    /// `d = gamma^((q-1)/3)` with `gamma` the pinned primitive element.
    CubeRoot,
}

fn square_root_degree(f: &FieldCtx) -> Result<(u32, u64)> {
    let h = f.h();
    if !h.is_multiple_of(2) || h < 4 {
        return Err(Error::PreconditionViolated(format!(
            "q = {} is not an even square >= 16",
            f.q()
        )));
    }
    Ok((h / 2, 1u64 << (h / 2)))
}

fn point(plane: &Space, c: [Elem; 3]) -> Point {
    plane.normalize(&c).expect("nonzero vector")
}

fn build_kw(plane: Space, w: Elem, fourth: impl Fn(Elem) -> [Elem; 3]) -> Result<PlaneArc> {
    let f = plane.field();
    let (d, r) = square_root_degree(f)?;
    let o = Elem::ONE;
    let wr1 = f.pow(w, r - 1);
    let mut pts = Vec::new();
    for alpha in f.nonzero().filter(|&a| f.in_subfield(a, d)) {
        let ia = f.inv_nonzero(alpha);
        let wa = f.mul(w, alpha);
        pts.push(point(&plane, [o, ia, alpha]));
        pts.push(point(&plane, [o, f.inv_nonzero(wa), wa]));
        pts.push(point(&plane, [o, f.mul(wr1, ia), alpha]));
        pts.push(point(&plane, fourth(alpha)));
    }
    let expect = 4 * (r as usize - 1);
    let arc = PlaneArc::new(plane, pts)?;
    debug_assert_eq!(arc.len(), expect);
    Ok(arc)
}

/// The `(4 sqrt(q) - 4)`-arc
/// `{(1,1/a,a), (1,1/(wa),wa), (1,w^(r-1)/a,a), (1,1/(wa),w^r a) : a in F_r^*}`
/// with `r = sqrt(q)` and `w` a root of `w^2 + w + d` outside `F_r`.
pub fn construct_kw_with(field: Arc<FieldCtx>, param: KwParameter) -> Result<PlaneArc> {
    let f = &*field;
    let (d, r) = square_root_degree(f)?;
    let d_val = match param {
        KwParameter::FirstValid => f
            .elements()
            .filter(|&x| f.in_subfield(x, d))
            .find(|&x| matches!(f.solve_artin_schreier(x), Some(w) if !f.in_subfield(w, d))),
        KwParameter::CubeRoot => {
            let c = f.exp(((f.q() - 1) / 3) as i64);
            (f.in_subfield(c, d)).then_some(c)
        }
    };
    let w = d_val
        .and_then(|x| f.solve_artin_schreier(x))
        .filter(|&w| !f.in_subfield(w, d))
        .ok_or_else(|| Error::NoValidW(format!("no admissible d for q = {}", f.q())))?;
    let wr = f.pow(w, r);
    let plane = Space::plane(field.clone());
    let fw = field.clone();
    build_kw(plane, w, move |alpha| {
        let wa = fw.mul(w, alpha);
        [Elem::ONE, fw.inv_nonzero(wa), fw.mul(wr, alpha)]
    })
}

pub fn construct_kw(field: Arc<FieldCtx>) -> Result<PlaneArc> {
    construct_kw_with(field, KwParameter::FirstValid)
}

/// `K_w` with `w = gamma^((q-1)/3)` and every `(1,1/(wa),w^r a)` replaced by
/// `(1,1/(w^2 a),w^(2r) a)`. Defined for `q = 4^(2h+1)`; completeness is
/// checked for `q = 64` and `q = 1024`.
pub fn construct_kw_prime(field: Arc<FieldCtx>) -> Result<PlaneArc> {
    let f = &*field;
    let h = f.h();
    if h % 4 != 2 || h < 6 {
        return Err(Error::PreconditionViolated(format!(
            "q = {} is not of the form 4^(2h+1) with h >= 1",
            f.q()
        )));
    }
    let (_, r) = square_root_degree(f)?;
    let w = f.exp(((f.q() - 1) / 3) as i64);
    debug_assert_eq!(f.square(w) + w + Elem::ONE, Elem::ZERO);
    let w2 = f.square(w);
    let w2r = f.pow(w2, r);
    let plane = Space::plane(field.clone());
    let fw = field.clone();
    let arc = build_kw(plane, w, move |alpha| {
        [Elem::ONE, fw.inv_nonzero(fw.mul(w2, alpha)), fw.mul(w2r, alpha)]
    })?;
    if matches!(f.q(), 64 | 1024) && !arc.is_complete() {
        return Err(Error::PreconditionViolated(format!(
            "modified K_w is not complete for q = {}",
            f.q()
        )));
    }
    Ok(arc)
}

/// The complete `(q+8)/3`-arc `C_3 + {(0,1,1/g), (0,1,1/g^2), (1,0,0)}` with
/// `C_3 = {(1,g^(3r),g^(-3r))}` and `g` the smallest primitive element of
/// trace 1. Without `unchecked`, requires `h >= 6` even and verifies
/// completeness, a single sum-point `(0,0,1)` and `p = 1`.
pub fn construct_abatangelo(field: Arc<FieldCtx>, unchecked: bool) -> Result<PlaneArc> {
    let f = &*field;
    let h = f.h();
    if !h.is_multiple_of(2) || (h < 6 && !unchecked) || h < 4 {
        return Err(Error::PreconditionViolated(format!(
            "q = 2^{h} needs h >= 6 even (h = 4 only when unchecked)"
        )));
    }
    let g = f.find_primitive_with_trace_one()?;
    let lg = f.log(g)? as i64;
    let plane = Space::plane(field.clone());
    let (o, z) = (Elem::ONE, Elem::ZERO);
    let mut pts: Vec<Point> = (0..=(f.q() as i64 - 4) / 3)
        .map(|r| point(&plane, [o, f.exp(3 * r * lg), f.exp(-3 * r * lg)]))
        .collect();
    pts.push(point(&plane, [z, o, f.exp(-lg)]));
    pts.push(point(&plane, [z, o, f.exp(-2 * lg)]));
    pts.push(point(&plane, [o, z, z]));
    let arc = PlaneArc::new(plane, pts)?;
    if !unchecked {
        let prof = arc.profile();
        let sp = arc.plane().point_from_ints(&[0, 0, 1])?;
        if !prof.complete || prof.p != Some(1) || prof.only_sum_point() != Some(&sp) {
            return Err(Error::PreconditionViolated(format!(
                "arc fails its expected profile: complete={}, beta={}, p={:?}",
                prof.complete, prof.beta, prof.p
            )));
        }
    }
    Ok(arc)
}
