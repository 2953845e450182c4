//! Closed-form cap sizes, in checked integer arithmetic. `None` means the
//! value overflows `i128` or the dimension does not fit the construction.

fn pow(q: i128, e: i64) -> Option<i128> {
    if e < 0 {
        return None;
    }
    q.checked_pow(u32::try_from(e).ok()?)
}

/// `q^top + q^(top-1) + ... + q`; empty (zero) when `top < 1`.
pub fn tail(q: i128, top: i64) -> Option<i128> {
    (1..=top).try_fold(0i128, |acc, e| acc.checked_add(pow(q, e)?))
}

/// `q^top + ... + q + 1`.
pub fn tail_with_one(q: i128, top: i64) -> Option<i128> {
    tail(q, top)?.checked_add(1)
}

/// `3(q^t + ... + q) + 2` with `t = floor((N-2)/2)`.
pub fn s_nq(n: i64, q: i128) -> Option<i128> {
    tail(q, (n - 2).div_euclid(2))?.checked_mul(3)?.checked_add(2)
}

/// `|K^(2s+1)_{m1,m2}| = 3(q^s + ... + q) - 2s + 2`.
pub fn k_m1m2_size(s: i64, q: i128) -> Option<i128> {
    tail(q, s)?.checked_mul(3)?.checked_add(2 - 2 * s as i128)
}

fn even_dim(m: i64) -> Option<i64> {
    (m >= 4 && m % 2 == 0).then_some(m)
}

fn odd_dim(m: i64) -> Option<i64> {
    (m >= 5 && m % 2 == 1).then_some(m)
}

fn lin(coef: i128, q: i128, e: i64) -> Option<i128> {
    coef.checked_mul(pow(q, e)?)
}

/// `(k+3) q^((M-2)/2) + 3(q^((M-4)/2) + ... + q) - M + 3`, `M` even.
pub fn teo1_size(k: i128, q: i128, m: i64) -> Option<i128> {
    let m = even_dim(m)?;
    lin(k + 3, q, (m - 2) / 2)?
        .checked_add(tail(q, (m - 4) / 2)?.checked_mul(3)?)?
        .checked_add(3 - m as i128)
}

/// `(k+1) q^((M-2)/2) + 3(q^((M-4)/2) + ... + q) - M + 5`, `M` even.
pub fn teo2_size(k: i128, q: i128, m: i64) -> Option<i128> {
    let m = even_dim(m)?;
    lin(k + 1, q, (m - 2) / 2)?
        .checked_add(tail(q, (m - 4) / 2)?.checked_mul(3)?)?
        .checked_add(5 - m as i128)
}

/// `k (q^((M-2)/2) + ... + q + 1)`, `M` even.
pub fn teo3_size(k: i128, q: i128, m: i64) -> Option<i128> {
    let m = even_dim(m)?;
    k.checked_mul(tail_with_one(q, (m - 2) / 2)?)
}

/// `2 q^((M-1)/2) + (k+3) q^((M-3)/2) + 3(q^((M-5)/2) + ... + q) - M + 4`,
/// `M` odd.
pub fn teodd1_size(k: i128, q: i128, m: i64) -> Option<i128> {
    let m = odd_dim(m)?;
    lin(2, q, (m - 1) / 2)?
        .checked_add(lin(k + 3, q, (m - 3) / 2)?)?
        .checked_add(tail(q, (m - 5) / 2)?.checked_mul(3)?)?
        .checked_add(4 - m as i128)
}

/// `2 q^((M-1)/2) + k (q^((M-3)/2) + ... + q + 1)`, `M` odd.
pub fn teodd2_size(k: i128, q: i128, m: i64) -> Option<i128> {
    let m = odd_dim(m)?;
    lin(2, q, (m - 1) / 2)?.checked_add(k.checked_mul(tail_with_one(q, (m - 3) / 2)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn known_values() {
        assert_eq!(tail(8, 0), Some(0));
        assert_eq!(tail(8, 2), Some(72));
        assert_eq!(s_nq(4, 8), Some(26));
        assert_eq!(s_nq(5, 8), Some(26));
        assert_eq!(k_m1m2_size(1, 8), Some(24));
        assert_eq!(k_m1m2_size(2, 8), Some(214));
        assert_eq!(teo3_size(6, 8, 4), Some(54));
        assert_eq!(teo3_size(6, 8, 6), Some(438));
        assert_eq!(teo3_size(9, 16, 4), Some(153));
        assert_eq!(teo3_size(9, 16, 6), Some(2457));
        assert_eq!(teodd2_size(6, 8, 5), Some(182));
        assert_eq!(teodd2_size(9, 16, 5), Some(665));
        assert_eq!(teo1_size(6, 8, 6), Some(597));
        assert_eq!(teo2_size(9, 16, 4), Some(161));
        assert_eq!(teodd1_size(9, 16, 5), Some(703));
        let q = 128;
        assert_eq!(teodd2_size(34, q, 5), Some(2 * q * q + 34 * q + 34));
        assert_eq!(teo3_size(34, q, 3), None);
        assert_eq!(teodd1_size(1, 1 << 20, 41), None);
    }

    proptest! {
        #[test]
        fn k_m1m2_recursion(s in 1i64..6, h in 2u32..8) {
            let q = 1i128 << h;
            // |K^(2s+1)| = 2(q^s - 1) + (q^s - 1) + |K^(2s-1)| + 1
            let prev = if s == 1 { 2 } else { k_m1m2_size(s - 1, q).unwrap() };
            prop_assert_eq!(k_m1m2_size(s, q).unwrap(), 3 * (q.pow(s as u32) - 1) + prev + 1);
        }

        #[test]
        fn teo1_is_product_plus_k2_star(s in 1i64..5, h in 2u32..8, k in 3i128..40) {
            let q = 1i128 << h;
            let expect = k * q.pow(s as u32) + k_m1m2_size(s, q).unwrap() - 1;
            prop_assert_eq!(teo1_size(k, q, 2 * s + 2).unwrap(), expect);
        }

        #[test]
        fn teo2_parts(s in 1i64..5, h in 2u32..8, k in 3i128..40) {
            let q = 1i128 << h;
            let lower = if s == 1 { 2 } else { k_m1m2_size(s - 1, q).unwrap() };
            let expect = k * q.pow(s as u32) + q.pow(s as u32) - 1 + lower;
            prop_assert_eq!(teo2_size(k, q, 2 * s + 2).unwrap(), expect);
        }

        #[test]
        fn odd_sizes_add_the_k0_block(s in 1i64..5, h in 2u32..8, k in 3i128..40) {
            let q = 1i128 << h;
            let block = 2 * q.pow(s as u32 + 1);
            prop_assert_eq!(teodd1_size(k, q, 2 * s + 3).unwrap(), block + teo1_size(k, q, 2 * s + 2).unwrap());
            prop_assert_eq!(teodd2_size(k, q, 2 * s + 3).unwrap(), block + teo3_size(k, q, 2 * s + 2).unwrap());
        }
    }
}
