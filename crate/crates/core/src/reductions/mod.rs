//! Hardness-reduction instance generators, cover-problem oracles and random
//! instances.

mod cover_format;
mod setcover;
mod x3c;

pub use cover_format::{parse_cover, serialize_cover, CoverInstance};
pub use setcover::{brute_force_set_cover, setcover_to_tpg, SetCoverInstance, SetCoverReduction};
pub use x3c::{
    brute_force_exact_cover, case1c_deviation, x3c_to_tpg, ExactCoverInstance, X3cReduction,
};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::AvailabilityMatrix;

/// `n × m` matrix with entries drawn uniformly from `0..=a_max`, row-major,
/// from a ChaCha8 stream seeded with `seed`.
pub fn random_instance(n: usize, m: usize, a_max: u64, seed: u64) -> Result<AvailabilityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cells = n.checked_mul(m).ok_or_else(|| {
        Error::InvalidParameters(format!("{n} x {m} matrix is too large"))
    })?;
    let data = (0..cells).map(|_| rng.gen_range(0..=a_max)).collect();
    AvailabilityMatrix::new(n, m, data)
}

/// `C(n, k)`, saturating at `u128::MAX`.
pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| {
        acc.saturating_mul((n - i) as u128) / (i as u128 + 1)
    })
}
