//! Caps of PG(N,q): the product constructions lifting plane arcs to every
//! dimension, exhaustive and sampled verification, and the bound formulas.

mod bounds;
mod build;
pub mod sizes;
mod verify;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2e::Elem;
use crate::projgeom::{Point, Space};

pub use bounds::{bounds_report, table1_row, ArcSizes, BoundsRow, TABLE1_EXPONENTS};
pub use build::{
    build_even_case1, build_even_case2, build_even_case3, build_odd_case1, build_odd_case3,
    check_case1, check_case2, check_case3, check_star, k2_star, k_m1m2_cap, k_m1m2_points,
    parabola_cap, product_cap, product_points, BUILD_VERIFY_LIMIT,
};
pub use verify::{
    sampled_cap_check, sampled_completeness, secants_through_external, verify_cap, verify_complete,
    verify_complete_points, verify_report, Completeness, VerifyLevel, VerifyReport,
    DEFAULT_EXHAUSTIVE_LIMIT, EXHAUSTIVE_LIMIT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ProvenanceTag {
    Product,
    KM1M2,
    K2Star,
    Teo1,
    Teo1Extended,
    Teo2,
    Teo3,
    Teodd1,
    Teodd2,
    Imported,
}

impl ProvenanceTag {
    pub const ALL: [ProvenanceTag; 10] = [
        ProvenanceTag::Product,
        ProvenanceTag::KM1M2,
        ProvenanceTag::K2Star,
        ProvenanceTag::Teo1,
        ProvenanceTag::Teo1Extended,
        ProvenanceTag::Teo2,
        ProvenanceTag::Teo3,
        ProvenanceTag::Teodd1,
        ProvenanceTag::Teodd2,
        ProvenanceTag::Imported,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ProvenanceTag::Product => "PRODUCT",
            ProvenanceTag::KM1M2 => "K_M1M2",
            ProvenanceTag::K2Star => "K2_STAR",
            ProvenanceTag::Teo1 => "TEO1",
            ProvenanceTag::Teo1Extended => "TEO1_EXTENDED",
            ProvenanceTag::Teo2 => "TEO2",
            ProvenanceTag::Teo3 => "TEO3",
            ProvenanceTag::Teodd1 => "TEODD1",
            ProvenanceTag::Teodd2 => "TEODD2",
            ProvenanceTag::Imported => "IMPORTED",
        }
    }
}

/// How a cap was built, serialized as `TAG;key=value;...`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub tag: ProvenanceTag,
    pub s: Option<usize>,
    pub k: Option<usize>,
    pub m1: Option<Elem>,
    pub m2: Option<Elem>,
    pub arc_hash: Option<u64>,
    /// Slopes `m0` of the extension points `(0,1,m0,0,...,0)`.
    pub extension: Vec<Elem>,
}

impl Provenance {
    pub fn new(tag: ProvenanceTag) -> Self {
        Provenance {
            tag,
            s: None,
            k: None,
            m1: None,
            m2: None,
            arc_hash: None,
            extension: Vec::new(),
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag.name())?;
        if let Some(s) = self.s {
            write!(f, ";s={s}")?;
        }
        if let Some(k) = self.k {
            write!(f, ";k={k}")?;
        }
        if let Some(m) = self.m1 {
            write!(f, ";m1={}", m.0)?;
        }
        if let Some(m) = self.m2 {
            write!(f, ";m2={}", m.0)?;
        }
        if let Some(h) = self.arc_hash {
            write!(f, ";arc={h:016x}")?;
        }
        if !self.extension.is_empty() {
            let e: Vec<String> = self.extension.iter().map(|m| m.0.to_string()).collect();
            write!(f, ";ext={}", e.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("provenance {s:?}: {what}"));
        let mut parts = s.split(';');
        let head = parts.next().unwrap_or_default();
        let tag = ProvenanceTag::ALL
            .into_iter()
            .find(|t| t.name() == head)
            .ok_or_else(|| bad("unknown tag"))?;
        let mut p = Provenance::new(tag);
        let elem = |v: &str| v.parse::<u16>().map(Elem).map_err(|_| bad("bad field element"));
        for kv in parts {
            let (key, val) = kv.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match key {
                "s" => p.s = Some(val.parse().map_err(|_| bad("bad s"))?),
                "k" => p.k = Some(val.parse().map_err(|_| bad("bad k"))?),
                "m1" => p.m1 = Some(elem(val)?),
                "m2" => p.m2 = Some(elem(val)?),
                "arc" => p.arc_hash = Some(u64::from_str_radix(val, 16).map_err(|_| bad("bad arc hash"))?),
                "ext" => p.extension = val.split(',').map(elem).collect::<Result<_>>()?,
                _ => return Err(bad("unknown key")),
            }
        }
        Ok(p)
    }
}

/// A point set of PG(N,q) in rank order, tagged with its construction.
/// Construction does not check the cap property; see `verify_cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cap {
    space: Space,
    points: Vec<Point>,
    provenance: Provenance,
}

impl Cap {
    pub fn new(space: Space, mut points: Vec<Point>, provenance: Provenance) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| p.coords().len() != space.dim() + 1) {
            return Err(Error::DimensionMismatch(format!("point {p} is not in PG({})", space.dim())));
        }
        points.sort();
        if points.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePoint);
        }
        Ok(Cap {
            space,
            points,
            provenance,
        })
    }

    pub fn imported(space: Space, points: Vec<Point>) -> Result<Self> {
        Cap::new(space, points, Provenance::new(ProvenanceTag::Imported))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn q(&self) -> usize {
        self.space.q()
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

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn with_provenance(mut self, provenance: Provenance) -> Self {
        self.provenance = provenance;
        self
    }

    /// The cap minus the listed points.
    pub fn without(&self, drop: &[Point]) -> Cap {
        Cap {
            space: self.space.clone(),
            points: self.points.iter().filter(|p| !drop.contains(p)).cloned().collect(),
            provenance: self.provenance.clone(),
        }
    }
}
