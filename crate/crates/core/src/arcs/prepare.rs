//! Greedy search followed by normalization: complete arcs ready for the
//! cap builders.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::greedy::{greedy_search, GreedyConfig};
use super::normalize::{normalize_arc, NormalizeTarget};
use super::sumpoint::seek_single_sum_point;
use super::PlaneArc;
use crate::error::{Error, Result};
use crate::projgeom::Space;

/// Random projectivities tried per arc when looking for one sum-point.
pub const SUM_POINT_ATTEMPTS: usize = 2000;

/// Runs the greedy search with seeds `seed, seed+1, ...` (at most `tries`
/// of them) until an arc can be moved into `target` form. For `LaScala`
/// the result also satisfies `(k-2)p < q-1`.
pub fn prepare_arc(plane: &Space, target: NormalizeTarget, seed: u64, cfg: &GreedyConfig, tries: usize) -> Result<PlaneArc> {
    for t in 0..tries as u64 {
        let arc = greedy_search(plane, seed.wrapping_add(t), cfg)?.arc;
        let arc = if target == NormalizeTarget::Star {
            arc
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(t));
            match seek_single_sum_point(&arc, &mut rng, SUM_POINT_ATTEMPTS) {
                Ok(found) => found.arc,
                Err(Error::SearchExhausted(_)) => continue,
                Err(e) => return Err(e),
            }
        };
        match normalize_arc(&arc, target) {
            Ok((_, out)) => {
                if target == NormalizeTarget::LaScala {
                    let p = out.profile().p.unwrap_or(usize::MAX);
                    if (out.len() - 2).saturating_mul(p) >= out.q() - 1 {
                        continue;
                    }
                }
                return Ok(out);
            }
            Err(Error::HypothesisViolated(_)) | Err(Error::SearchExhausted(_)) | Err(Error::NotFound(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::SearchExhausted(format!(
        "no greedy arc of PG(2,{}) reached the {target} form in {tries} tries",
        plane.q()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2e::FieldCtx;
    use std::sync::Arc;

    #[test]
    fn prepared_arcs_have_the_target_form() {
        let plane = Space::plane(Arc::new(FieldCtx::new(3).unwrap()));
        let cfg = GreedyConfig::for_q(8);
        let a = prepare_arc(&plane, NormalizeTarget::LaScala, 1, &cfg, 20).unwrap();
        let prof = a.profile();
        assert_eq!(a.len(), 6);
        assert!(prof.complete && prof.beta == 1);
        assert!((a.len() - 2) * prof.p.unwrap() < 7);
        assert_eq!(a, prepare_arc(&plane, NormalizeTarget::LaScala, 1, &cfg, 20).unwrap());
    }
}
