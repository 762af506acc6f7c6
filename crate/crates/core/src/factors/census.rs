use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::address::OdometerAddress;
use crate::factors::desub::constant_length_rule;
use crate::words::{SubshiftSystem, Word};

/// Name recorded in reports that sample addresses.
pub const SAMPLER: &str = "ChaCha8Rng::seed_from_u64";

/// Centered windows realizable by points with a given odometer address.
#[derive(Clone, Debug, Serialize)]
pub struct FiberCensus {
    pub address: OdometerAddress,
    pub level: usize,
    pub resolution: usize,
    /// Sorted centered `(2L+1)`-windows at the final level.
    pub windows: Vec<Word>,
    pub cardinality: usize,
    /// Classes of windows under the flip `0 ↔ 1`.
    pub quotient_cardinality: usize,
    /// The last two levels agree.
    pub stabilized: bool,
    /// Cardinality at levels `0..=level`.
    pub history: Vec<usize>,
}

/// Windows `[-L, L]` of all points whose address agrees with `a` up to its level.
///
/// The points with level-`j` address `a_j` are exactly `S^{a_j} σ^j(y)`, so the windows are
/// slices of `σ^j(u)` for admissible `u` spanning the blocks that `[a_j - L, a_j + L]` meets.
pub fn fiber_census(sys: &SubshiftSystem, a: &OdometerAddress, resolution: usize) -> Result<FiberCensus> {
    let (_, ell) = constant_length_rule(sys)?;
    if a.base() as usize != ell {
        return Err(Error::Domain(format!(
            "address base {} does not match block length {ell}",
            a.base()
        )));
    }
    let mut history = Vec::with_capacity(a.level() + 1);
    let mut windows = BTreeSet::new();
    for j in 0..=a.level() {
        windows = windows_at_level(sys, &a.truncate(j), resolution)?;
        if let Some(&prev) = history.last() {
            if windows.len() > prev {
                return Err(Error::Integrity(format!(
                    "census grew from {prev} to {} at level {j}",
                    windows.len()
                )));
            }
        }
        history.push(windows.len());
    }
    let stabilized = history.len() >= 2 && history[history.len() - 1] == history[history.len() - 2];
    let quotient_cardinality = if sys.is_binary() {
        windows
            .iter()
            .filter(|w| {
                let f = w.flipped();
                !windows.contains(&f) || **w <= f
            })
            .count()
    } else {
        windows.len()
    };
    Ok(FiberCensus {
        address: a.clone(),
        level: a.level(),
        resolution,
        cardinality: windows.len(),
        windows: windows.into_iter().collect(),
        quotient_cardinality,
        stabilized,
        history,
    })
}

fn windows_at_level(sys: &SubshiftSystem, a: &OdometerAddress, radius: usize) -> Result<BTreeSet<Word>> {
    let (sub, _) = constant_length_rule(sys)?;
    let block = a.modulus() as i128;
    let lo = a.value() as i128 - radius as i128;
    let hi = a.value() as i128 + radius as i128;
    let b_lo = lo.div_euclid(block);
    let b_hi = hi.div_euclid(block);
    let span = (b_hi - b_lo + 1) as usize;
    let off = (lo - b_lo * block) as u128;
    let lang = sys.language(span)?;
    let mut out = BTreeSet::new();
    for u in lang.words() {
        let w: Vec<u8> = (0..=2 * radius as u128)
            .map(|t| {
                let pos = off + t;
                let letter = u.symbols()[(pos / block as u128) as usize];
                sub.power_symbol(letter, a.level() as u32, pos % block as u128)
            })
            .collect();
        out.insert(Word::from_raw(w));
    }
    Ok(out)
}

/// `count` uniformly random level-`level` addresses from a seeded generator.
pub fn sample_addresses(base: u8, level: usize, count: usize, seed: u64) -> Result<Vec<OdometerAddress>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| OdometerAddress::new(base, (0..level).map(|_| rng.gen_range(0..base)).collect()))
        .collect()
}
