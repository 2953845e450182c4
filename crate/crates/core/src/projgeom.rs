//! Points, lines and dense ranks in PG(N,q); the named subspaces and
//! embeddings used by the cap constructions; 3x3 plane projectivities.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2e::{Elem, FieldCtx};

/// A projective point in normalized form (first nonzero coordinate is 1),
/// together with its dense rank in its ambient space.
#[derive(Clone, Debug)]
pub struct Point {
    coords: Vec<Elem>,
    rank: u64,
}

impl Point {
    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn rank(&self) -> u64 {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the leading 1.
    pub fn lead(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("normalized point")
    }

    pub fn to_ints(&self) -> Vec<u64> {
        self.coords.iter().map(|c| c.0 as u64).collect()
    }
}

impl PartialEq for Point {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for Point {}

impl Hash for Point {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Point {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.coords.len(), self.rank, &self.coords).cmp(&(other.coords.len(), other.rank, &other.coords))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// The projective space PG(N,q).
///
/// Ranks are laid out in blocks by the position `i` of the leading 1: block
/// `i` holds `q^(N-i)` points, and inside a block the trailing coordinates
/// are read as a base-`q` number (most significant first). Since `q = 2^h`
/// the trailing part is a plain bit concatenation.
#[derive(Clone, Debug)]
pub struct Space {
    n: usize,
    field: Arc<FieldCtx>,
    offsets: Vec<u64>,
    total: u64,
}

impl PartialEq for Space {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && *self.field == *other.field
    }
}

impl Eq for Space {}

impl Space {
    pub fn new(n: usize, field: Arc<FieldCtx>) -> Result<Self> {
        let h = field.h() as usize;
        if n == 0 || h * (n + 1) > 62 {
            return Err(Error::BadParameters(format!(
                "PG({n},{}) is outside the addressable range",
                field.q()
            )));
        }
        let q = field.q() as u64;
        let mut offsets = Vec::with_capacity(n + 1);
        let mut acc = 0u64;
        for i in 0..=n {
            offsets.push(acc);
            acc += q.pow((n - i) as u32);
        }
        Ok(Space {
            n,
            field,
            offsets,
            total: acc,
        })
    }

    pub fn plane(field: Arc<FieldCtx>) -> Self {
        Space::new(2, field).expect("plane is always addressable")
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FieldCtx> {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.field.q()
    }

    /// `(q^(N+1) - 1) / (q - 1)`.
    #[inline]
    pub fn num_points(&self) -> u64 {
        self.total
    }

    /// Another space over the same field.
    pub fn with_dim(&self, n: usize) -> Result<Space> {
        Space::new(n, self.field.clone())
    }

    /// Rank of an already-normalized coordinate vector.
    #[inline]
    pub fn rank_normalized(&self, coords: &[Elem]) -> u64 {
        let h = self.field.h();
        let lead = coords.iter().position(|c| !c.is_zero()).expect("nonzero vector");
        debug_assert_eq!(coords[lead], Elem::ONE);
        let mut tail = 0u64;
        for c in &coords[lead + 1..] {
            tail = (tail << h) | c.0 as u64;
        }
        self.offsets[lead] + tail
    }

    /// Rank of the projective point spanned by an arbitrary nonzero vector.
    #[inline]
    pub fn rank_of_vector(&self, v: &[Elem]) -> Option<u64> {
        let f = &*self.field;
        let h = f.h();
        let lead = v.iter().position(|c| !c.is_zero())?;
        let inv = f.inv_nonzero(v[lead]);
        let mut tail = 0u64;
        for &c in &v[lead + 1..] {
            tail = (tail << h) | f.mul(c, inv).0 as u64;
        }
        Some(self.offsets[lead] + tail)
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "expected {} coordinates, got {len}",
                self.n + 1
            )));
        }
        Ok(())
    }

    /// Scales so that the first nonzero coordinate is 1.
    pub fn normalize(&self, raw: &[Elem]) -> Result<Point> {
        self.check_len(raw.len())?;
        let lead = raw.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        let inv = self.field.inv_nonzero(raw[lead]);
        let coords: Vec<Elem> = raw.iter().map(|&c| self.field.mul(c, inv)).collect();
        let rank = self.rank_normalized(&coords);
        Ok(Point { coords, rank })
    }

    pub fn point_from_ints(&self, raw: &[u64]) -> Result<Point> {
        let v = raw
            .iter()
            .map(|&c| self.field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        self.normalize(&v)
    }

    pub fn unrank(&self, rank: u64) -> Result<Point> {
        if rank >= self.total {
            return Err(Error::BadParameters(format!("rank {rank} out of range")));
        }
        let lead = self.offsets.iter().rposition(|&o| o <= rank).expect("offset 0");
        let mut tail = rank - self.offsets[lead];
        let h = self.field.h();
        let mask = (self.q() - 1) as u64;
        let mut coords = vec![Elem::ZERO; self.n + 1];
        coords[lead] = Elem::ONE;
        for c in coords[lead + 1..].iter_mut().rev() {
            *c = Elem((tail & mask) as u16);
            tail >>= h;
        }
        Ok(Point { coords, rank })
    }

    /// Every point of the space exactly once, in rank order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.total).map(move |r| self.unrank(r).expect("rank in range"))
    }

    /// Points satisfying `X_0 = 0` are excluded; the rest form AG(N,q).
    pub fn is_affine(p: &Point) -> bool {
        !p.coords[0].is_zero()
    }

    /// True iff the three points span a line. Errors on repeated points.
    pub fn collinear(&self, p1: &Point, p2: &Point, p3: &Point) -> Result<bool> {
        if p1 == p2 || p1 == p3 || p2 == p3 {
            return Err(Error::DuplicatePoint);
        }
        let rows = [p1.coords.clone(), p2.coords.clone(), p3.coords.clone()];
        Ok(matrix_rank(&self.field, &rows) == 2)
    }

    /// The `q + 1` points of the line through two distinct points: `p1`,
    /// `p2`, then `p1 + lambda p2` for nonzero `lambda` in encoding order.
    pub fn line_through(&self, p1: &Point, p2: &Point) -> Result<Vec<Point>> {
        if p1 == p2 {
            return Err(Error::DuplicatePoint);
        }
        self.check_len(p1.coords.len())?;
        self.check_len(p2.coords.len())?;
        let mut out = Vec::with_capacity(self.q() + 1);
        out.push(p1.clone());
        out.push(p2.clone());
        let mut buf = vec![Elem::ZERO; self.n + 1];
        for lambda in self.field.nonzero() {
            for (b, (&a, &c)) in buf.iter_mut().zip(p1.coords.iter().zip(&p2.coords)) {
                *b = a + self.field.mul(lambda, c);
            }
            out.push(self.normalize(&buf)?);
        }
        Ok(out)
    }

    /// Calls `f(lambda, rank)` for the `q - 1` points `p1 + lambda p2` of
    /// the line through two distinct normalized points, without allocating
    /// points.
    #[inline]
    pub fn for_each_interior(&self, p1: &[Elem], p2: &[Elem], buf: &mut Vec<Elem>, mut f: impl FnMut(Elem, u64)) {
        let field = &*self.field;
        buf.clear();
        buf.resize(p1.len(), Elem::ZERO);
        for lambda in field.nonzero() {
            for (b, (&a, &c)) in buf.iter_mut().zip(p1.iter().zip(p2)) {
                *b = a + field.mul(lambda, c);
            }
            let r = self.rank_of_vector(buf).expect("distinct points span a line");
            f(lambda, r);
        }
    }

    pub fn embed(&self, p: &Point, map: &Embedding) -> Result<Point> {
        let target = self;
        match *map {
            Embedding::PrefixZeros(k) => {
                if p.coords.len() + k != target.n + 1 {
                    return Err(Error::DimensionMismatch(format!(
                        "cannot prefix {k} zeros to a point of PG({}) inside PG({})",
                        p.dim(),
                        target.n
                    )));
                }
                let mut v = vec![Elem::ZERO; k];
                v.extend_from_slice(&p.coords);
                target.normalize(&v)
            }
            Embedding::Phi { j } => {
                // (Y_0, .., Y_{2j+2}) -> (0, .., 0, Y_0, Y_0, Y_1, .., Y_{2j+2})
                if p.coords.len() != 2 * j + 3 || target.n + 1 < 2 * j + 4 {
                    return Err(Error::DimensionMismatch(format!(
                        "Phi_{j} needs a point of PG({}) and ambient dimension >= {}",
                        2 * j + 2,
                        2 * j + 3
                    )));
                }
                let zeros = target.n + 1 - (2 * j + 4);
                let mut v = vec![Elem::ZERO; zeros];
                v.push(p.coords[0]);
                v.extend_from_slice(&p.coords);
                target.normalize(&v)
            }
        }
    }

    /// Point text format `N q : c0,c1,...,cN`.
    pub fn format_point(&self, p: &Point) -> String {
        let cs: Vec<String> = p.coords.iter().map(|c| c.0.to_string()).collect();
        format!("{} {} : {}", self.n, self.q(), cs.join(","))
    }

    pub fn parse_point(&self, s: &str) -> Result<Point> {
        let (head, body) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("missing ':' in point {s:?}")))?;
        let mut it = head.split_whitespace();
        let n: usize = parse_num(it.next(), "N")?;
        let q: usize = parse_num(it.next(), "q")?;
        if n != self.n || q != self.q() {
            return Err(Error::DimensionMismatch(format!(
                "point is in PG({n},{q}), expected PG({},{})",
                self.n,
                self.q()
            )));
        }
        self.point_from_ints(&parse_coord_list(body)?)
    }
}

fn parse_num<T: std::str::FromStr>(s: Option<&str>, what: &str) -> Result<T> {
    s.and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::Parse(format!("bad or missing {what}")))
}

/// Parses `c0,c1,...` into integers.
pub fn parse_coord_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|c| {
            c.trim()
                .parse::<u64>()
                .map_err(|_| Error::Parse(format!("bad coordinate {c:?}")))
        })
        .collect()
}

/// Rank of a matrix over the field (Gaussian elimination on a copy).
pub fn matrix_rank(field: &FieldCtx, rows: &[Vec<Elem>]) -> usize {
    let mut m: Vec<Vec<Elem>> = rows.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv_nonzero(m[rank][col]);
        for c in m[rank].iter_mut() {
            *c = field.mul(*c, inv);
        }
        let pivot = m[rank].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let factor = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x += field.mul(factor, y);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Coordinate maps between spaces used by the constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Embedding {
    /// Natural embedding onto `X_0 = .. = X_{k-1} = 0`.
    PrefixZeros(usize),
    /// `Phi_j : PG(2j+2,q) -> V_{2j+2}`, duplicating `Y_0` after a zero prefix.
    Phi { j: usize },
}

/// The named subspaces. Coordinates are 0-indexed throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subspace {
    /// `X_0 = .. = X_i = 0`.
    H(usize),
    /// `X_0 = 0` (the hyperplane written `X_1 = 0` with 1-indexed coordinates).
    L1,
    /// `X_0 = X_1 = 0`.
    L2,
    /// Inside PG(2s+2,q): `X_0 = .. = X_{2s-2j-2} = 0`, `X_{2s-2j-1} = X_{2s-2j}`.
    V { j: usize, s: usize },
}

impl Subspace {
    pub fn contains(&self, p: &Point) -> bool {
        let c = p.coords();
        match *self {
            Subspace::H(i) => c.iter().take(i + 1).all(|x| x.is_zero()),
            Subspace::L1 => c[0].is_zero(),
            Subspace::L2 => c[0].is_zero() && c[1].is_zero(),
            Subspace::V { j, s } => {
                if c.len() != 2 * s + 3 || j > s {
                    return false;
                }
                let first = 2 * s - 2 * j - 1;
                c[..first].iter().all(|x| x.is_zero()) && c[first] == c[first + 1]
            }
        }
    }
}

/// An invertible 3x3 matrix acting on PG(2,q) column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Projectivity {
    m: [[Elem; 3]; 3],
}

impl Projectivity {
    pub fn new(field: &FieldCtx, m: [[Elem; 3]; 3]) -> Result<Self> {
        let p = Projectivity { m };
        if p.det(field).is_zero() {
            return Err(Error::BadParameters("singular projectivity".into()));
        }
        Ok(p)
    }

    pub fn identity() -> Self {
        let (o, z) = (Elem::ONE, Elem::ZERO);
        Projectivity {
            m: [[o, z, z], [z, o, z], [z, z, o]],
        }
    }

    pub fn matrix(&self) -> &[[Elem; 3]; 3] {
        &self.m
    }

    pub fn det(&self, f: &FieldCtx) -> Elem {
        let m = &self.m;
        let t = |a: Elem, b: Elem, c: Elem| f.mul(a, f.mul(b, c));
        // characteristic 2: all signs are +
        t(m[0][0], m[1][1], m[2][2])
            + t(m[0][1], m[1][2], m[2][0])
            + t(m[0][2], m[1][0], m[2][1])
            + t(m[0][2], m[1][1], m[2][0])
            + t(m[0][0], m[1][2], m[2][1])
            + t(m[0][1], m[1][0], m[2][2])
    }

    /// `self` after `first`: the matrix product `self * first`.
    pub fn compose(&self, f: &FieldCtx, first: &Projectivity) -> Projectivity {
        let mut out = [[Elem::ZERO; 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                for k in 0..3 {
                    *cell += f.mul(self.m[i][k], first.m[k][j]);
                }
            }
        }
        Projectivity { m: out }
    }

    /// `A * v` without normalizing.
    pub fn apply_raw(&self, f: &FieldCtx, v: &[Elem]) -> [Elem; 3] {
        let mut out = [Elem::ZERO; 3];
        for (i, o) in out.iter_mut().enumerate() {
            for (&a, &x) in self.m[i].iter().zip(v) {
                *o += f.mul(a, x);
            }
        }
        out
    }

    /// `normalize(A * p)`. In integral mode the raw image must already be
    /// normalized.
    pub fn apply(&self, plane: &Space, p: &Point, integral_mode: bool) -> Result<Point> {
        if plane.dim() != 2 || p.coords.len() != 3 {
            return Err(Error::DimensionMismatch("projectivities act on PG(2,q)".into()));
        }
        let raw = self.apply_raw(plane.field(), &p.coords);
        if integral_mode {
            let lead = raw.iter().position(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
            if raw[lead] != Elem::ONE {
                return Err(Error::IntegralityViolated(format!(
                    "image of {p} has leading coefficient {}",
                    raw[lead]
                )));
            }
        }
        plane.normalize(&raw)
    }

    /// True iff the matrix maps every normalized point of `pts` to a
    /// normalized vector.
    pub fn is_integral_for(&self, plane: &Space, pts: &[Point]) -> bool {
        pts.iter().all(|p| self.apply(plane, p, true).is_ok())
    }
}

impl fmt::Display for Projectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| format!("[{},{},{}]", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn space(n: usize, h: u32) -> Space {
        Space::new(n, Arc::new(FieldCtx::new(h).unwrap())).unwrap()
    }

    fn e(v: u16) -> Elem {
        Elem(v)
    }

    #[test]
    fn point_counts() {
        assert_eq!(space(1, 3).points().count(), 9);
        assert_eq!(space(4, 3).num_points(), 4681);
        assert_eq!(space(4, 3).points().count(), 4681);
        assert_eq!(space(2, 4).points().count(), 273);
        for h in 2..=4 {
            for n in 1..=3 {
                let s = space(n, h);
                let q = 1u64 << h;
                assert_eq!(s.num_points(), (q.pow(n as u32 + 1) - 1) / (q - 1));
            }
        }
    }

    #[test]
    fn rank_is_a_bijection_in_order() {
        let s = space(3, 3);
        let mut seen = vec![false; s.num_points() as usize];
        for (i, p) in s.points().enumerate() {
            assert_eq!(p.rank(), i as u64);
            assert_eq!(s.rank_normalized(p.coords()), i as u64);
            assert!(!seen[i]);
            seen[i] = true;
            assert_eq!(p.coords()[p.lead()], Elem::ONE);
        }
    }

    #[test]
    fn normalize_examples() {
        let s = space(2, 3);
        let f = s.field();
        let (c, d) = (e(3), e(6));
        let p = s.normalize(&[e(0), c, d]).unwrap();
        assert_eq!(p.coords(), &[e(0), e(1), f.div(d, c).unwrap()]);
        let again = s.normalize(p.coords()).unwrap();
        assert_eq!(again, p);
        assert_eq!(again.rank(), p.rank());
        assert!(matches!(s.normalize(&[e(0); 3]), Err(Error::ZeroVector)));
        assert!(matches!(s.normalize(&[e(1); 2]), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn rank_invariant_under_scaling() {
        let s = space(4, 4);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let v: Vec<Elem> = (0..5).map(|_| e(rng.gen_range(0..16))).collect();
            if v.iter().all(|c| c.is_zero()) {
                continue;
            }
            let lambda = e(rng.gen_range(1..16));
            let w: Vec<Elem> = v.iter().map(|&c| s.field().mul(c, lambda)).collect();
            assert_eq!(s.normalize(&v).unwrap().rank(), s.normalize(&w).unwrap().rank());
            assert_eq!(s.rank_of_vector(&w), Some(s.normalize(&v).unwrap().rank()));
        }
    }

    #[test]
    fn collinearity_examples() {
        let s = space(2, 3);
        let p = |v: [u64; 3]| s.point_from_ints(&v).unwrap();
        assert!(s.collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([1, 1, 0])).unwrap());
        assert!(!s.collinear(&p([1, 0, 0]), &p([0, 1, 0]), &p([0, 0, 1])).unwrap());
        assert!(matches!(
            s.collinear(&p([1, 0, 0]), &p([1, 0, 0]), &p([0, 0, 1])),
            Err(Error::DuplicatePoint)
        ));
        let f = s.field();
        let (p1, p2) = (p([1, 2, 3]), p([0, 1, 5]));
        let (a, b) = (e(3), e(7));
        let v: Vec<Elem> = p1
            .coords()
            .iter()
            .zip(p2.coords())
            .map(|(&x, &y)| f.mul(a, x) + f.mul(b, y))
            .collect();
        assert!(s.collinear(&p1, &p2, &s.normalize(&v).unwrap()).unwrap());
    }

    #[test]
    fn lines_have_q_plus_one_collinear_points() {
        let s = space(3, 3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let a = s.unrank(rng.gen_range(0..s.num_points())).unwrap();
            let b = s.unrank(rng.gen_range(0..s.num_points())).unwrap();
            if a == b {
                continue;
            }
            let line = s.line_through(&a, &b).unwrap();
            assert_eq!(line.len(), 9);
            let set: std::collections::HashSet<_> = line.iter().map(|p| p.rank()).collect();
            assert_eq!(set.len(), 9);
            assert!(set.contains(&a.rank()) && set.contains(&b.rank()));
            for x in &line[2..] {
                assert!(s.collinear(&line[0], &line[1], x).unwrap());
            }
            let back: std::collections::HashSet<_> =
                s.line_through(&b, &a).unwrap().iter().map(|p| p.rank()).collect();
            assert_eq!(set, back);
            let mut buf = Vec::new();
            let mut interior = Vec::new();
            s.for_each_interior(a.coords(), b.coords(), &mut buf, |_, r| interior.push(r));
            let inner: Vec<u64> = line[2..].iter().map(|p| p.rank()).collect();
            assert_eq!(interior, inner);
        }
        let a = s.unrank(3).unwrap();
        assert!(matches!(s.line_through(&a, &a), Err(Error::DuplicatePoint)));
    }

    #[test]
    fn embeddings() {
        let line = space(1, 3);
        let plane = space(2, 3);
        let p = line.point_from_ints(&[1, 0]).unwrap();
        let img = plane.embed(&p, &Embedding::PrefixZeros(1)).unwrap();
        assert_eq!(img.to_ints(), vec![0, 1, 0]);
        assert!(Subspace::H(0).contains(&img));

        // Phi_0 into PG(6,q) (s = 2): (Y0,Y1,Y2) -> (0,0,0,Y0,Y0,Y1,Y2)
        let pg6 = space(6, 3);
        let y = plane.point_from_ints(&[1, 5, 6]).unwrap();
        let img = pg6.embed(&y, &Embedding::Phi { j: 0 }).unwrap();
        assert_eq!(img.to_ints(), vec![0, 0, 0, 1, 1, 5, 6]);
        assert!(Subspace::V { j: 0, s: 2 }.contains(&img));
        // Phi_1 of a PG(4,q) point into PG(6,q)
        let pg4 = space(4, 3);
        let y = pg4.point_from_ints(&[0, 1, 2, 3, 4]).unwrap();
        let img = pg6.embed(&y, &Embedding::Phi { j: 1 }).unwrap();
        assert_eq!(img.to_ints(), vec![0, 0, 0, 1, 2, 3, 4]);
        assert!(Subspace::V { j: 1, s: 2 }.contains(&img));
        assert!(!Subspace::V { j: 0, s: 2 }.contains(&img));
        assert!(pg6.embed(&y, &Embedding::PrefixZeros(1)).is_err());
    }

    #[test]
    fn subspace_membership() {
        let s = space(3, 2);
        let p = s.point_from_ints(&[0, 0, 1, 2]).unwrap();
        assert!(Subspace::H(1).contains(&p));
        assert!(!Subspace::H(2).contains(&p));
        assert!(Subspace::L1.contains(&p) && Subspace::L2.contains(&p));
    }

    #[test]
    fn projectivity_application() {
        let plane = space(2, 3);
        let f = plane.field();
        let id = Projectivity::identity();
        for p in plane.points() {
            assert_eq!(id.apply(&plane, &p, true).unwrap(), p);
        }
        // phi_w(x,y,z) = (x, wx + y, z)
        let w = e(5);
        let (o, z) = (Elem::ONE, Elem::ZERO);
        let phi = Projectivity::new(f, [[o, z, z], [w, o, z], [z, z, o]]).unwrap();
        let a = e(3);
        let b = e(6);
        let p = plane.point_from_ints(&[1, a.0 as u64, b.0 as u64]).unwrap();
        let img = phi.apply(&plane, &p, true).unwrap();
        assert_eq!(img.coords(), &[o, w + a, b]);

        let scale = Projectivity::new(f, [[e(2), z, z], [z, o, z], [z, z, o]]).unwrap();
        assert!(matches!(scale.apply(&plane, &p, true), Err(Error::IntegralityViolated(_))));
        assert!(scale.apply(&plane, &p, false).is_ok());
        assert!(Projectivity::new(f, [[o, o, z], [o, o, z], [z, z, o]]).is_err());
        let c = phi.compose(f, &phi);
        // phi_w twice is the identity in characteristic 2
        assert_eq!(c, id);
    }

    #[test]
    fn point_text_format() {
        let s = space(3, 3);
        let p = s.point_from_ints(&[0, 1, 7, 2]).unwrap();
        let t = s.format_point(&p);
        assert_eq!(t, "3 8 : 0,1,7,2");
        assert_eq!(s.parse_point(&t).unwrap(), p);
        assert!(s.parse_point("2 8 : 0,1,7").is_err());
        assert!(s.parse_point("3 8 : 0,1,9,2").is_err());
    }
}
