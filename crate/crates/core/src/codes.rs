//! Caps as parity-check matrices: a complete `n`-cap of PG(N,q) with
//! `n > N+1` is the column set of an `[n, n-N-1, 4]_q` code of covering
//! radius 2.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Cap;
use crate::coverage::{no_three_collinear, CoverageSet};
use crate::error::{Error, Result};
use crate::gf2e::{Elem, FieldCtx};
use crate::projgeom::{Point, Space};

/// Largest syndrome space `q^r` scanned by `covering_radius_is_2`.
pub const SYNDROME_LIMIT: u64 = 10_000_000;

/// A linear code given by the columns of its parity-check matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearCodeSpec {
    space: Space,
    columns: Vec<Vec<Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParams {
    pub q: usize,
    pub n: usize,
    pub k: usize,
    pub r: usize,
}

impl LinearCodeSpec {
    /// Columns of length `r = N+1` over the field of `space`; needs
    /// `n > r`.
    pub fn from_columns(space: Space, columns: Vec<Vec<Elem>>) -> Result<Self> {
        let r = space.dim() + 1;
        if let Some(c) = columns.iter().find(|c| c.len() != r) {
            return Err(Error::DimensionMismatch(format!("column of length {} in a code with r = {r}", c.len())));
        }
        if columns.len() <= r {
            return Err(Error::TooSmall { n: columns.len(), r });
        }
        Ok(LinearCodeSpec { space, columns })
    }

    pub fn field(&self) -> &FieldCtx {
        self.space.field()
    }

    pub fn q(&self) -> usize {
        self.space.q()
    }

    pub fn n(&self) -> usize {
        self.columns.len()
    }

    /// Redundancy `r = N+1`.
    pub fn r(&self) -> usize {
        self.space.dim() + 1
    }

    pub fn columns(&self) -> &[Vec<Elem>] {
        &self.columns
    }

    pub fn params(&self) -> CodeParams {
        CodeParams {
            q: self.q(),
            n: self.n(),
            k: self.n() - self.r(),
            r: self.r(),
        }
    }

    /// Header `columns q=<q> n=<n> r=<r>`, then one column per line.
    pub fn to_columns_text(&self) -> String {
        let mut s = format!("columns q={} n={} r={}\n", self.q(), self.n(), self.r());
        for c in &self.columns {
            let row: Vec<String> = c.iter().map(|e| e.0.to_string()).collect();
            let _ = writeln!(s, "{}", row.join(","));
        }
        s
    }
}

/// Parity-check columns from the cap's points.
pub fn cap_to_code(cap: &Cap) -> Result<LinearCodeSpec> {
    let cols = cap.points().iter().map(|p| p.coords().to_vec()).collect();
    LinearCodeSpec::from_columns(cap.space().clone(), cols)
}

/// True iff every three columns are linearly independent.
pub fn min_distance_at_least_4(spec: &LinearCodeSpec) -> bool {
    let mut pts: Vec<Point> = Vec::with_capacity(spec.n());
    for c in &spec.columns {
        match spec.space.normalize(c) {
            Ok(p) => pts.push(p),
            Err(_) => return false,
        }
    }
    no_three_collinear(&spec.space, &pts)
}

fn syndrome_index(q: u64, v: &[Elem]) -> u64 {
    v.iter().fold(0, |acc, e| acc * q + e.0 as u64)
}

/// True iff every nonzero syndrome is `lambda c_i` or
/// `lambda c_i + mu c_j`.
pub fn covering_radius_is_2(spec: &LinearCodeSpec) -> Result<bool> {
    let f = spec.field();
    let q = f.q() as u64;
    let total = (q as u128).pow(spec.r() as u32);
    if total > SYNDROME_LIMIT as u128 {
        return Err(Error::TooLarge(format!("{total} syndromes (limit {SYNDROME_LIMIT})")));
    }
    let total = total as u64;
    let cols = &spec.columns;
    let r = spec.r();
    let scaled: Vec<Vec<Vec<Elem>>> = cols
        .iter()
        .map(|c| f.nonzero().map(|l| c.iter().map(|&x| f.mul(l, x)).collect()).collect())
        .collect();
    let marks = (0..cols.len())
        .into_par_iter()
        .fold(
            || (CoverageSet::new(total), vec![Elem::ZERO; r]),
            |(mut set, mut buf), i| {
                for a in &scaled[i] {
                    set.mark(syndrome_index(q, a));
                    for sj in &scaled[i + 1..] {
                        for b in sj {
                            for (t, (&x, &y)) in buf.iter_mut().zip(a.iter().zip(b)) {
                                *t = x + y;
                            }
                            set.mark(syndrome_index(q, &buf));
                        }
                    }
                }
                (set, buf)
            },
        )
        .map(|(s, _)| s)
        .reduce(|| CoverageSet::new(total), |mut a, b| {
            a.union_with(&b);
            a
        });
    Ok(marks.count() + (!marks.contains(0)) as u64 == total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::{k2_star, Provenance, ProvenanceTag};
    use crate::projgeom::matrix_rank;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn space(n: usize, h: u32) -> Space {
        Space::new(n, Arc::new(FieldCtx::new(h).unwrap())).unwrap()
    }

    fn brute_d4(spec: &LinearCodeSpec) -> bool {
        let c = spec.columns();
        let f = spec.field();
        for i in 0..c.len() {
            if matrix_rank(f, &[c[i].clone()]) < 1 {
                return false;
            }
            for j in i + 1..c.len() {
                if matrix_rank(f, &[c[i].clone(), c[j].clone()]) < 2 {
                    return false;
                }
                for k in j + 1..c.len() {
                    if matrix_rank(f, &[c[i].clone(), c[j].clone(), c[k].clone()]) < 3 {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every nonzero vector of `F_q^r` as a combination of at most two
    /// columns, by exhaustive search over coefficients.
    fn brute_cr2(spec: &LinearCodeSpec) -> bool {
        let f = spec.field();
        let q = f.q() as u64;
        let r = spec.r();
        let mut reach = vec![false; q.pow(r as u32) as usize];
        let c = spec.columns();
        for i in 0..c.len() {
            for l in f.nonzero() {
                let a: Vec<Elem> = c[i].iter().map(|&x| f.mul(l, x)).collect();
                reach[syndrome_index(q, &a) as usize] = true;
                for (j, cj) in c.iter().enumerate() {
                    if j == i {
                        continue;
                    }
                    for m in f.nonzero() {
                        let v: Vec<Elem> = a.iter().zip(cj).map(|(&x, &y)| x + f.mul(m, y)).collect();
                        reach[syndrome_index(q, &v) as usize] = true;
                    }
                }
            }
        }
        reach[1..].iter().all(|&b| b)
    }

    fn hyperoval(s: &Space) -> Vec<Point> {
        let f = s.field();
        let mut pts: Vec<Point> = f
            .elements()
            .map(|a| s.normalize(&[Elem::ONE, a, f.square(a)]).unwrap())
            .collect();
        pts.push(s.point_from_ints(&[0, 0, 1]).unwrap());
        pts.push(s.point_from_ints(&[0, 1, 0]).unwrap());
        pts
    }

    #[test]
    fn hyperoval_code_is_quasi_perfect() {
        let s = space(2, 2);
        let cap = Cap::imported(s, hyperoval(&space(2, 2))).unwrap();
        let code = cap_to_code(&cap).unwrap();
        assert_eq!(code.params(), CodeParams { q: 4, n: 6, k: 3, r: 3 });
        assert!(min_distance_at_least_4(&code));
        assert!(covering_radius_is_2(&code).unwrap());
        assert!(brute_cr2(&code));
    }

    #[test]
    fn too_small_and_too_large() {
        let s = space(2, 3);
        let pts = vec![s.unrank(0).unwrap(), s.unrank(1).unwrap(), s.unrank(5).unwrap()];
        let cap = Cap::imported(s, pts).unwrap();
        assert!(matches!(cap_to_code(&cap), Err(Error::TooSmall { n: 3, r: 3 })));
        let big = space(7, 3);
        let cols: Vec<Vec<Elem>> = (0..9).map(|r| big.unrank(r).unwrap().coords().to_vec()).collect();
        let spec = LinearCodeSpec::from_columns(big, cols).unwrap();
        assert!(matches!(covering_radius_is_2(&spec), Err(Error::TooLarge(_))));
    }

    #[test]
    fn repeated_or_secant_column_breaks_d4() {
        let s = space(2, 3);
        let pts = hyperoval(&s);
        let mut cols: Vec<Vec<Elem>> = pts.iter().map(|p| p.coords().to_vec()).collect();
        let base = LinearCodeSpec::from_columns(s.clone(), cols.clone()).unwrap();
        assert!(min_distance_at_least_4(&base));
        let f = s.field();
        let twice: Vec<Elem> = cols[0].iter().map(|&x| f.mul(Elem(3), x)).collect();
        cols.push(twice);
        let rep = LinearCodeSpec::from_columns(s.clone(), cols.clone()).unwrap();
        assert!(!min_distance_at_least_4(&rep));
        cols.pop();
        let on_secant: Vec<Elem> = cols[0].iter().zip(&cols[1]).map(|(&a, &b)| a + b).collect();
        cols.push(on_secant);
        let sec = LinearCodeSpec::from_columns(s, cols).unwrap();
        assert!(!min_distance_at_least_4(&sec));
        assert!(!brute_d4(&sec));
    }

    #[test]
    fn incomplete_cap_has_larger_radius() {
        let f = Arc::new(FieldCtx::new(3).unwrap());
        let cap = k2_star(&f, 1, Elem(2), Elem(4)).unwrap();
        let code = cap_to_code(&cap).unwrap();
        assert!(min_distance_at_least_4(&code));
        assert!(!covering_radius_is_2(&code).unwrap());
    }

    #[test]
    fn columns_text() {
        let s = space(2, 2);
        let cap = Cap::new(s, hyperoval(&space(2, 2)), Provenance::new(ProvenanceTag::Imported)).unwrap();
        let t = cap_to_code(&cap).unwrap().to_columns_text();
        let mut lines = t.lines();
        assert_eq!(lines.next(), Some("columns q=4 n=6 r=3"));
        assert_eq!(lines.next(), Some("1,0,0"));
        assert_eq!(t.lines().count(), 7);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn fast_checks_match_brute_force(ranks in proptest::collection::btree_set(0u64..73, 4..9)) {
            let s = space(2, 3);
            let cols: Vec<Vec<Elem>> = ranks.iter().map(|&r| s.unrank(r).unwrap().coords().to_vec()).collect();
            let spec = LinearCodeSpec::from_columns(s, cols).unwrap();
            prop_assert_eq!(min_distance_at_least_4(&spec), brute_d4(&spec));
            prop_assert_eq!(covering_radius_is_2(&spec).unwrap(), brute_cr2(&spec));
        }
    }
}
