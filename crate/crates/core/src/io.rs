//! Text formats for arcs and caps.
//!
//! Arc file: `arc q=<q> n=<n> modulus=<hex>` then one `c0,c1,c2` per line.
//! Cap file: `cap N=<N> q=<q> n=<n> provenance=<tag;params> modulus=<hex>`
//! then one `c0,...,cN` per line. Blank lines and `#` comments are skipped.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::arcs::PlaneArc;
use crate::caps::{Cap, Provenance};
use crate::error::{Error, Result};
use crate::gf2e::FieldCtx;
use crate::projgeom::{parse_coord_list, Point, Space};

fn coords_line(p: &Point) -> String {
    let cs: Vec<String> = p.coords().iter().map(|c| c.0.to_string()).collect();
    cs.join(",")
}

pub fn format_arc(arc: &PlaneArc) -> String {
    let f = arc.field();
    let mut s = format!("arc q={} n={} modulus={:#x}\n", f.q(), arc.len(), f.modulus());
    for p in arc.points() {
        let _ = writeln!(s, "{}", coords_line(p));
    }
    s
}

pub fn format_cap(cap: &Cap) -> String {
    let f = cap.space().field();
    let mut s = format!(
        "cap N={} q={} n={} provenance={} modulus={:#x}\n",
        cap.dim(),
        f.q(),
        cap.len(),
        cap.provenance(),
        f.modulus()
    );
    for p in cap.points() {
        let _ = writeln!(s, "{}", coords_line(p));
    }
    s
}

fn content_lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// Splits `kind key=value ...`, checking the leading word.
fn header<'a>(line: Option<&'a str>, kind: &str) -> Result<HashMap<&'a str, &'a str>> {
    let line = line.ok_or_else(|| Error::Parse(format!("empty {kind} file")))?;
    let mut words = line.split_whitespace();
    if words.next() != Some(kind) {
        return Err(Error::Parse(format!("expected a `{kind} ...` header, got {line:?}")));
    }
    words
        .map(|w| w.split_once('=').ok_or_else(|| Error::Parse(format!("header field {w:?} is not key=value"))))
        .collect()
}

fn field<'a>(h: &HashMap<&str, &'a str>, key: &str) -> Result<&'a str> {
    h.get(key).copied().ok_or_else(|| Error::Parse(format!("header lacks {key}=")))
}

fn number(h: &HashMap<&str, &str>, key: &str) -> Result<usize> {
    field(h, key)?.parse().map_err(|_| Error::Parse(format!("bad {key} value")))
}

fn field_ctx(h: &HashMap<&str, &str>) -> Result<Arc<FieldCtx>> {
    let q = number(h, "q")?;
    if !q.is_power_of_two() || q < 4 {
        return Err(Error::Parse(format!("q = {q} is not a supported power of 2")));
    }
    let deg = q.trailing_zeros();
    let ctx = match h.get("modulus") {
        Some(m) => {
            let hex = m.trim_start_matches("0x");
            let modulus = u32::from_str_radix(hex, 16).map_err(|_| Error::Parse(format!("bad modulus {m:?}")))?;
            FieldCtx::with_modulus(deg, modulus)?
        }
        None => FieldCtx::new(deg)?,
    };
    Ok(Arc::new(ctx))
}

fn points<'a>(space: &Space, lines: impl Iterator<Item = &'a str>) -> Result<Vec<Point>> {
    lines.map(|l| space.point_from_ints(&parse_coord_list(l)?)).collect()
}

fn check_count(h: &HashMap<&str, &str>, got: usize) -> Result<()> {
    let n = number(h, "n")?;
    if n != got {
        return Err(Error::Parse(format!("header says n={n}, file lists {got} points")));
    }
    Ok(())
}

pub fn parse_arc(text: &str) -> Result<PlaneArc> {
    let mut lines = content_lines(text);
    let h = header(lines.next(), "arc")?;
    let plane = Space::plane(field_ctx(&h)?);
    let pts = points(&plane, lines)?;
    check_count(&h, pts.len())?;
    PlaneArc::new(plane, pts)
}

pub fn parse_cap(text: &str) -> Result<Cap> {
    let mut lines = content_lines(text);
    let h = header(lines.next(), "cap")?;
    let space = Space::new(number(&h, "N")?, field_ctx(&h)?)?;
    let prov: Provenance = match h.get("provenance") {
        Some(p) => p.parse()?,
        None => Provenance::new(crate::caps::ProvenanceTag::Imported),
    };
    let pts = points(&space, lines)?;
    check_count(&h, pts.len())?;
    Cap::new(space, pts, prov)
}

pub fn read_arc(path: &Path) -> Result<PlaneArc> {
    parse_arc(&std::fs::read_to_string(path)?)
}

pub fn read_cap(path: &Path) -> Result<Cap> {
    parse_cap(&std::fs::read_to_string(path)?)
}

pub fn write_arc(path: &Path, arc: &PlaneArc) -> Result<()> {
    Ok(std::fs::write(path, format_arc(arc))?)
}

pub fn write_cap(path: &Path, cap: &Cap) -> Result<()> {
    Ok(std::fs::write(path, format_cap(cap))?)
}
