//! Seeded random schedule tables.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::id::ActivityId;
use crate::schedule::{ScheduleRow, ScheduleTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeneratorError {
    #[error("node count must be at least 1")]
    NoNodes,
    #[error("density {0} is outside [0, 1]")]
    Density(f64),
}

/// Ordered-pair random dag on activities `a_1 … a_n`: each pair `i < j`
/// becomes the precedence `a_i ≺ a_j` with probability `density`. Durations
/// are uniform in `0..=9`. The table is a pure function of the arguments.
pub fn generate_random_table(nodes: usize, density: f64, seed: u64) -> Result<ScheduleTable, GeneratorError> {
    if nodes == 0 {
        return Err(GeneratorError::NoNodes);
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(GeneratorError::Density(density));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<ActivityId> =
        (1..=nodes).map(|i| ActivityId::new(format!("a_{i}")).expect("generated codes are valid")).collect();
    let mut preds: Vec<Vec<ActivityId>> = vec![Vec::new(); nodes];
    for (i, id) in ids.iter().enumerate() {
        for later in preds.iter_mut().skip(i + 1) {
            if rng.gen_bool(density) {
                later.push(id.clone());
            }
        }
    }
    let rows = ids
        .into_iter()
        .zip(preds)
        .map(|(code, predecessors)| ScheduleRow { code, duration: rng.gen_range(0..=9), predecessors })
        .collect();
    Ok(ScheduleTable::new(rows).expect("generated tables are well formed"))
}
