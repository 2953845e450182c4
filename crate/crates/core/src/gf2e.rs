//! Table-driven arithmetic in GF(2^h), 2 <= h <= 10.
//!
//! Elements are encoded as integers whose bit `i` is the coefficient of `x^i`
//! in the polynomial basis. The modulus for each `h` is pinned in
//! `data/gf2_moduli.txt`, so encodings are stable across builds and files.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::Serialize;

use crate::error::{Error, Result};

const MODULI_TABLE: &str = include_str!("../data/gf2_moduli.txt");

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 10;

/// A field element in its polynomial-basis encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Elem(pub u16);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn value(self) -> u16 {
        self.0
    }
}

impl Add for Elem {
    type Output = Elem;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Elem) -> Elem {
        Elem(self.0 ^ rhs.0)
    }
}

impl AddAssign for Elem {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Elem) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parses the shipped modulus table into `(h, modulus)` rows.
pub fn pinned_moduli() -> Vec<(u32, u32)> {
    MODULI_TABLE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            let mut it = l.split_whitespace();
            let h: u32 = it.next().and_then(|s| s.parse().ok()).expect("modulus table: h");
            let m = it.next().expect("modulus table: polynomial");
            let m = u32::from_str_radix(m.trim_start_matches("0x"), 16).expect("modulus table: hex");
            (h, m)
        })
        .collect()
}

/// Version tag of the shipped modulus table.
pub fn moduli_table_version() -> u32 {
    MODULI_TABLE
        .lines()
        .find_map(|l| l.trim().strip_prefix("# format-version "))
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(0)
}

pub fn pinned_modulus(h: u32) -> Result<u32> {
    pinned_moduli()
        .into_iter()
        .find(|&(d, _)| d == h)
        .map(|(_, m)| m)
        .ok_or(Error::UnsupportedDegree(h))
}

/// Arithmetic context for GF(2^h). Immutable after construction.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    h: u32,
    q: usize,
    modulus: u32,
    /// `log[a]` for `a != 0`; `log[0]` is unused.
    log: Vec<u16>,
    /// `exp[i] = x^i`, stored twice over so `log a + log b` needs no reduction.
    exp: Vec<u16>,
    trace: Vec<u8>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Field of size `2^h` with the pinned modulus.
    pub fn new(h: u32) -> Result<Self> {
        Self::with_modulus(h, pinned_modulus(h)?)
    }

    /// Field of size `q` (a power of two in the supported range).
    pub fn with_order(q: usize) -> Result<Self> {
        if !q.is_power_of_two() {
            return Err(Error::BadParameters(format!("q={q} is not a power of two")));
        }
        Self::new(q.trailing_zeros())
    }

    pub fn with_modulus(h: u32, modulus: u32) -> Result<Self> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&h) {
            return Err(Error::UnsupportedDegree(h));
        }
        if modulus >> h != 1 {
            return Err(Error::NotPrimitive { h, modulus });
        }
        let q = 1usize << h;
        let order = q - 1;
        let mut log = vec![0u16; q];
        let mut exp = vec![0u16; 2 * order];
        let mut seen = vec![false; q];
        let mut cur: u32 = 1;
        for i in 0..order {
            if seen[cur as usize] {
                return Err(Error::NotPrimitive { h, modulus });
            }
            seen[cur as usize] = true;
            exp[i] = cur as u16;
            exp[i + order] = cur as u16;
            log[cur as usize] = i as u16;
            cur <<= 1;
            if cur & (1 << h) != 0 {
                cur ^= modulus;
            }
        }
        if cur != 1 {
            return Err(Error::NotPrimitive { h, modulus });
        }
        let mut ctx = FieldCtx {
            h,
            q,
            modulus,
            log,
            exp,
            trace: Vec::new(),
        };
        let trace = (0..q)
            .map(|a| {
                let mut t = Elem(a as u16);
                let mut acc = t;
                for _ in 1..h {
                    t = ctx.square(t);
                    acc += t;
                }
                debug_assert!(acc.0 <= 1);
                acc.0 as u8
            })
            .collect();
        ctx.trace = trace;
        Ok(ctx)
    }

    #[inline]
    pub fn h(&self) -> u32 {
        self.h
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The class of `x`, which generates the multiplicative group.
    pub fn primitive(&self) -> Elem {
        Elem(self.exp[1])
    }

    pub fn elem(&self, v: u64) -> Result<Elem> {
        if (v as usize) < self.q && v < u16::MAX as u64 {
            Ok(Elem(v as u16))
        } else {
            Err(Error::BadCoordinate { value: v, q: self.q })
        }
    }

    /// All elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.q).map(|v| Elem(v as u16))
    }

    /// Nonzero elements in increasing encoding order.
    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.q).map(|v| Elem(v as u16))
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a + b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize])
    }

    #[inline]
    pub fn square(&self, a: Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_nonzero(a))
    }

    /// Inverse of a known-nonzero element.
    #[inline]
    pub fn inv_nonzero(&self, a: Elem) -> Elem {
        debug_assert!(!a.is_zero());
        let order = self.q - 1;
        let l = self.log[a.0 as usize] as usize;
        Elem(self.exp[(order - l) % order])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[((l * (n % order)) % order) as usize])
    }

    /// `x^i` for any integer exponent (negative allowed).
    pub fn exp(&self, i: i64) -> Elem {
        let order = (self.q - 1) as i64;
        Elem(self.exp[i.rem_euclid(order) as usize])
    }

    pub fn log(&self, a: Elem) -> Result<u32> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.log[a.0 as usize] as u32)
    }

    /// The unique square root; squaring is the Frobenius automorphism.
    pub fn sqrt(&self, a: Elem) -> Elem {
        if a.is_zero() {
            return a;
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize] as usize;
        // 2 is invertible mod the odd group order.
        let half = if l.is_multiple_of(2) { l / 2 } else { (l + order) / 2 };
        Elem(self.exp[half])
    }

    #[inline]
    pub fn trace(&self, a: Elem) -> u8 {
        self.trace[a.0 as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u64> {
        let l = self.log(a)? as u64;
        let n = (self.q - 1) as u64;
        Ok(n / gcd(l, n))
    }

    pub fn is_primitive_element(&self, a: Elem) -> bool {
        matches!(self.order(a), Ok(o) if o == (self.q - 1) as u64)
    }

    /// True iff `a` lies in the subfield GF(2^d) (`d` must divide `h`).
    pub fn in_subfield(&self, a: Elem, d: u32) -> bool {
        self.pow(a, 1u64 << d) == a
    }

    /// Smallest root `w` of `w^2 + w = d`, or `None` when `trace(d) = 1`.
    ///
    /// The map `w -> w^2 + w` is GF(2)-linear; the system is solved by
    /// elimination over its `h x h` bit matrix.
    pub fn solve_artin_schreier(&self, d: Elem) -> Option<Elem> {
        if self.trace(d) == 1 {
            return None;
        }
        let h = self.h as usize;
        // Row j of the augmented system: bit j of L(x^i) over i, then bit j of d.
        let cols: Vec<u16> = (0..h)
            .map(|i| {
                let b = Elem(1 << i);
                (self.square(b) + b).0
            })
            .collect();
        let mut rows: Vec<(u32, u8)> = (0..h)
            .map(|j| {
                let mut r = 0u32;
                for (i, c) in cols.iter().enumerate() {
                    if (c >> j) & 1 == 1 {
                        r |= 1 << i;
                    }
                }
                (r, ((d.0 >> j) & 1) as u8)
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..h {
            let Some(p) = (row..h).find(|&r| (rows[r].0 >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(row, p);
            for r in 0..h {
                if r != row && (rows[r].0 >> col) & 1 == 1 {
                    rows[r].0 ^= rows[row].0;
                    rows[r].1 ^= rows[row].1;
                }
            }
            pivots.push(col);
            row += 1;
        }
        if rows[row..].iter().any(|&(_, rhs)| rhs == 1) {
            return None;
        }
        // Free variables set to zero.
        let mut w = 0u16;
        for (r, &col) in pivots.iter().enumerate() {
            if rows[r].1 == 1 {
                w |= 1 << col;
            }
        }
        let w = Elem(w);
        debug_assert_eq!(self.square(w) + w, d);
        Some(w.min(w + Elem::ONE))
    }

    /// Smallest-encoded primitive element of absolute trace 1.
    pub fn find_primitive_with_trace_one(&self) -> Result<Elem> {
        self.nonzero()
            .find(|&a| self.trace(a) == 1 && self.is_primitive_element(a))
            .ok_or_else(|| Error::NotFound("primitive element with trace 1".into()))
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(h: u32) -> FieldCtx {
        FieldCtx::new(h).unwrap()
    }

    #[test]
    fn every_pinned_modulus_is_primitive() {
        let rows = pinned_moduli();
        assert_eq!(rows.len(), 9);
        for (h, _) in rows {
            let f = gf(h);
            assert_eq!(f.q(), 1 << h);
            assert_eq!(f.pow(f.primitive(), (f.q() - 1) as u64), Elem::ONE);
        }
        assert_eq!(moduli_table_version(), 1);
    }

    #[test]
    fn rejects_reducible_modulus() {
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(matches!(
            FieldCtx::with_modulus(4, 0b10101),
            Err(Error::NotPrimitive { .. })
        ));
        // x^4 + x^3 + x^2 + x + 1 is irreducible but x has order 5.
        assert!(FieldCtx::with_modulus(4, 0b11111).is_err());
        assert!(matches!(FieldCtx::new(11), Err(Error::UnsupportedDegree(11))));
    }

    #[test]
    fn addition_is_xor() {
        let f = gf(3);
        assert_eq!(f.add(Elem(3), Elem(5)), Elem(6));
        for a in f.elements() {
            assert_eq!(a + a, Elem::ZERO);
            assert_eq!(a + Elem::ZERO, a);
        }
    }

    #[test]
    fn inverse_and_division() {
        for h in 2..=10 {
            let f = gf(h);
            for a in f.nonzero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            }
            assert!(matches!(f.inv(Elem::ZERO), Err(Error::DivisionByZero)));
        }
    }

    #[test]
    fn log_antilog_roundtrip() {
        for h in 2..=10 {
            let f = gf(h);
            for a in f.nonzero() {
                assert_eq!(f.exp(f.log(a).unwrap() as i64), a);
            }
            assert_eq!(f.exp(-1), f.inv(f.primitive()).unwrap());
        }
    }

    #[test]
    fn sqrt_inverts_squaring() {
        for h in 2..=10 {
            let f = gf(h);
            assert_eq!(f.sqrt(Elem::ONE), Elem::ONE);
            let mut hit = vec![false; f.q()];
            for a in f.elements() {
                assert_eq!(f.sqrt(f.square(a)), a);
                assert_eq!(f.square(f.sqrt(a)), a);
                hit[f.square(a).0 as usize] = true;
            }
            assert!(hit.iter().all(|&b| b));
        }
    }

    #[test]
    fn trace_is_balanced_and_linear() {
        for h in 2..=10 {
            let f = gf(h);
            assert_eq!(f.trace(Elem::ZERO), 0);
            // brute-force count against the closed form 2^(h-1)
            let zeros = f.elements().filter(|&a| f.trace(a) == 0).count();
            assert_eq!(zeros, 1 << (h - 1));
            for a in f.elements().step_by(7) {
                for b in f.elements().step_by(5) {
                    assert_eq!(f.trace(a) ^ f.trace(b), f.trace(a + b));
                }
            }
        }
    }

    #[test]
    fn artin_schreier_matches_brute_force() {
        for h in 2..=10 {
            let f = gf(h);
            let mut roots: Vec<Vec<Elem>> = vec![Vec::new(); f.q()];
            for w in f.elements() {
                roots[(f.square(w) + w).0 as usize].push(w);
            }
            for d in f.elements() {
                let got = f.solve_artin_schreier(d);
                let brute = &roots[d.0 as usize];
                match got {
                    None => {
                        assert!(brute.is_empty());
                        assert_eq!(f.trace(d), 1);
                    }
                    Some(w) => {
                        assert_eq!(f.mul(w, w) + w + d, Elem::ZERO);
                        assert_eq!(brute.len(), 2);
                        assert_eq!(w, brute[0]);
                        assert!(brute.contains(&(w + Elem::ONE)));
                    }
                }
            }
            let zero_roots = f.solve_artin_schreier(Elem::ZERO).unwrap();
            assert_eq!(zero_roots, Elem::ZERO);
            let solvable = f.elements().filter(|&d| f.solve_artin_schreier(d).is_some()).count();
            assert_eq!(solvable, 1 << (h - 1));
        }
    }

    #[test]
    fn primitive_with_trace_one_is_minimal() {
        for h in 2..=10 {
            let f = gf(h);
            let g = f.find_primitive_with_trace_one().unwrap();
            assert_eq!(f.trace(g), 1);
            // order by repeated multiplication
            let mut acc = g;
            let mut ord = 1u64;
            while acc != Elem::ONE {
                acc = f.mul(acc, g);
                ord += 1;
            }
            assert_eq!(ord, (f.q() - 1) as u64);
            // exhaustive scan oracle
            let first = f
                .nonzero()
                .find(|&a| {
                    let mut seen = std::collections::HashSet::new();
                    let mut x = a;
                    for _ in 0..f.q() - 1 {
                        seen.insert(x);
                        x = f.mul(x, a);
                    }
                    seen.len() == f.q() - 1 && f.trace(a) == 1
                })
                .unwrap();
            assert_eq!(g, first);
        }
    }

    #[test]
    fn subfield_membership() {
        let f = gf(6);
        let sub8 = f.elements().filter(|&a| f.in_subfield(a, 3)).count();
        assert_eq!(sub8, 8);
        let sub4 = f.elements().filter(|&a| f.in_subfield(a, 2)).count();
        assert_eq!(sub4, 4);
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(h in 2u32..=10, a in 0u16..1024, b in 0u16..1024, c in 0u16..1024) {
            let f = gf(h);
            let m = (f.q() - 1) as u16;
            let (a, b, c) = (Elem(a & m), Elem(b & m), Elem(c & m));
            proptest::prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            proptest::prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
            proptest::prop_assert_eq!(f.mul(a, b), f.mul(b, a));
            proptest::prop_assert_eq!(f.pow(a, 2), f.square(a));
        }
    }
}
