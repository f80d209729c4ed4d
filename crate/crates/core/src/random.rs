//! Random closed surfaces from uniform fixed-point-free dart pairings.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::surface::{GluedSurface, NO_DART};

pub const DEFAULT_RETRY_LIMIT: usize = 10_000;

/// Samples a uniform pairing of the `3T` darts, resampling until the result
/// is connected. Deterministic in `seed`.
pub fn random_surface(face_count: usize, seed: u64, retry_limit: usize) -> Result<GluedSurface> {
    if face_count < 2 || !face_count.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("T must be even and at least 2, got {face_count}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut darts: Vec<u32> = (0..3 * face_count as u32).collect();
    for _ in 0..retry_limit {
        darts.shuffle(&mut rng);
        let mut partner = vec![NO_DART; darts.len()];
        for pair in darts.chunks_exact(2) {
            partner[pair[0] as usize] = pair[1];
            partner[pair[1] as usize] = pair[0];
        }
        let s = GluedSurface::from_raw(partner);
        if s.is_connected() {
            return Ok(s.with_provenance(format!("random T={face_count} seed={seed}")));
        }
    }
    Err(Error::RetryLimit(retry_limit))
}
