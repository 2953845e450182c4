//! Upper bounds on the smallest complete cap of PG(N,q) from the sizes of
//! small plane arcs.

use serde::Serialize;

use super::sizes;
use crate::error::{Error, Result};

/// Exponents `h` of the tabulated `q = 2^h`.
pub const TABLE1_EXPONENTS: std::ops::RangeInclusive<u32> = 3..=18;

/// Sizes of the smallest known plane arcs for one `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ArcSizes {
    /// Affinely complete arcs.
    pub t_affine: i128,
    /// Complete arcs.
    pub t: i128,
    /// Complete arcs with one sum-point and `(k-2)p < q-1`.
    pub t_star: i128,
    /// `p` of the arc counted by `t_star`.
    pub p: Option<i128>,
}

impl ArcSizes {
    /// All three sizes equal to `k`.
    pub fn uniform(k: i128, p: Option<i128>) -> Self {
        ArcSizes {
            t_affine: k,
            t: k,
            t_star: k,
            p,
        }
    }
}

/// Tabulated arc sizes for `q = 2^h`, `3 <= h <= 18`.
pub fn table1_row(h: u32) -> Option<ArcSizes> {
    let row = |a, t, s, p| ArcSizes {
        t_affine: a,
        t,
        t_star: s,
        p: Some(p),
    };
    Some(match h {
        3 => row(6, 6, 6, 1),
        4 => row(9, 9, 9, 1),
        5 => row(14, 14, 14, 1),
        6 => row(22, 22, 22, 1),
        7 => row(32, 34, 34, 1),
        8 => row(55, 55, 55, 2),
        9 => row(86, 86, 86, 3),
        10 => row(124, 124, 124, 1),
        11 => row(201, 201, 201, 4),
        12 => row(307, 307, 307, 5),
        13 => row(461, 461, 461, 6),
        14 => row(665, 665, 665, 11),
        15 => row(1 << 10, (1 << 10) + 2, (1 << 10) + 2, 1),
        16 => row(((1 << 16) + 8) / 3, ((1 << 16) + 8) / 3, ((1 << 16) + 8) / 3, 1),
        17 => row(1 << 16, (1 << 16) + 2, (1 << 16) + 2, 1),
        18 => row(3066, 3066, (1 << 17) + 2, 1),
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub n: i64,
    pub q: i128,
    pub sizes: ArcSizes,
    pub s_nq: Option<i128>,
    /// `q^(N/2) + s_{N,q}` (N even), `3 q^((N-1)/2) + s_{N,q}` (N odd).
    pub previous: Option<i128>,
    pub new1: Option<i128>,
    pub new1_affine: Option<i128>,
    pub new2: Option<i128>,
    pub new3: Option<i128>,
    pub new4: Option<i128>,
    pub new5: Option<i128>,
    /// Smallest of the bounds that apply.
    pub best: Option<i128>,
}

/// Evaluates every bound that applies to PG(N,q) for the given arc sizes.
pub fn bounds_report(n: i64, q: i128, sizes: &ArcSizes) -> Result<BoundsRow> {
    if n < 4 {
        return Err(Error::BadParameters(format!("N = {n} must be at least 4")));
    }
    if q < 4 || q.count_ones() != 1 {
        return Err(Error::BadParameters(format!("q = {q} must be a power of 2, at least 4")));
    }
    let big = q > 8;
    let even = n % 2 == 0;
    let gate = |ok: bool, v: Option<i128>| if ok { v } else { None };
    let s_nq = sizes::s_nq(n, q);
    let previous = if even {
        q.checked_pow((n / 2) as u32).zip(s_nq).and_then(|(a, b)| a.checked_add(b))
    } else {
        q.checked_pow(((n - 1) / 2) as u32)
            .and_then(|a| a.checked_mul(3))
            .zip(s_nq)
            .and_then(|(a, b)| a.checked_add(b))
    };
    let mut row = BoundsRow {
        n,
        q,
        sizes: *sizes,
        s_nq,
        previous,
        new1: None,
        new1_affine: None,
        new2: None,
        new3: None,
        new4: None,
        new5: None,
        best: None,
    };
    if even {
        row.new1 = gate(big, sizes::teo1_size(sizes.t, q, n));
        row.new1_affine = gate(big, sizes::teo1_size(sizes.t_affine, q, n).and_then(|v| v.checked_add(2)));
        row.new2 = gate(big, sizes::teo2_size(sizes.t_star, q, n));
        row.new3 = sizes::teo3_size(sizes.t_star, q, n);
    } else {
        row.new4 = gate(big, sizes::teodd1_size(sizes.t, q, n));
        row.new5 = sizes::teodd2_size(sizes.t_star, q, n);
    }
    row.best = [row.previous, row.new1, row.new1_affine, row.new2, row.new3, row.new4, row.new5]
        .into_iter()
        .flatten()
        .min();
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tab(h: u32) -> ArcSizes {
        table1_row(h).unwrap()
    }

    #[test]
    fn table_checks_hold() {
        for h in TABLE1_EXPONENTS {
            let r = tab(h);
            let q = 1i128 << h;
            assert!(r.t_affine <= r.t && r.t <= r.t_star);
            assert!((r.t_star - 2) * r.p.unwrap() < q - 1, "h = {h}");
        }
        assert_eq!(tab(16).t, 21848);
        assert!(table1_row(2).is_none() && table1_row(19).is_none());
    }

    #[test]
    fn known_bounds() {
        let r = bounds_report(4, 8, &tab(3)).unwrap();
        assert_eq!(r.new3, Some(54));
        assert_eq!(r.new1, None);
        assert_eq!(r.s_nq, Some(3 * 8 + 2));
        assert_eq!(bounds_report(6, 16, &tab(4)).unwrap().new3, Some(2457));
        let q = 256;
        assert_eq!(bounds_report(5, q, &tab(8)).unwrap().new5, Some(2 * q * q + 55 * q + 55));
        let q = 128;
        let r = bounds_report(4, q, &tab(7)).unwrap();
        assert_eq!(r.new3, Some(34 * q + 34));
        assert_eq!(r.best, Some(34 * q + 34));
        assert_eq!(r.previous, Some(q * q + 3 * q + 2));
        assert_eq!(r.new1_affine, Some(35 * q + 1));
    }

    #[test]
    fn bad_parameters() {
        assert!(bounds_report(3, 16, &tab(4)).is_err());
        assert!(bounds_report(4, 12, &tab(4)).is_err());
    }
}
