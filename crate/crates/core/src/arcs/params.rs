use super::{profile, PlaneArc};
use crate::error::{Error, Result};
use crate::gf2e::{Elem, FieldCtx};

/// True iff `(m1, m2)` meets every constraint on the slope pair: both
/// nonzero and different from 1, distinct, `(m1 + m2)^3 != 1`.
pub(crate) fn admissible_pair(f: &FieldCtx, m1: Elem, m2: Elem) -> bool {
    let ok = |m: Elem| !m.is_zero() && m != Elem::ONE;
    ok(m1) && ok(m2) && m1 != m2 && f.pow(m1 + m2, 3) != Elem::ONE
}

/// Lexicographically smallest `(m1, m2)` with `admissible_pair` and
/// `1 not in S_m1(K) + S_m2(K)`.
pub fn choose_m1_m2(arc: &PlaneArc) -> Result<(Elem, Elem)> {
    let f = arc.field();
    let (k, q) = (arc.len(), arc.q());
    if k + 5 >= q {
        return Err(Error::HypothesisViolated(format!("k = {k} is not below q-5 = {}", q as i64 - 5)));
    }
    let prof = profile(arc);
    let free: Vec<Elem> = f
        .nonzero()
        .filter(|&m| m != Elem::ONE && !prof.s_m(m).contains(&Elem::ONE))
        .collect();
    for (i, &m1) in free.iter().enumerate() {
        for &m2 in &free[i + 1..] {
            if admissible_pair(f, m1, m2) {
                return Ok((m1, m2));
            }
        }
    }
    Err(Error::NotFound("no admissible slope pair (m1, m2)".into()))
}
