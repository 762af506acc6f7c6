use std::collections::HashMap;

use serde_json::{json, Value};

use crate::codes::SlidingBlockCode;
use crate::error::{Error, Result};
use crate::report::{decimal6, rational};
use crate::words::{SubshiftSystem, Word};

/// Occurrence counts of every admissible length-`n` word along `steps` consecutive
/// positions of a generated orbit prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrequencyTable {
    pub system: String,
    pub length: usize,
    pub steps: usize,
    /// Sorted by word; words that never occur carry count 0.
    pub counts: Vec<(Word, u64)>,
}

impl FrequencyTable {
    pub fn count(&self, w: &Word) -> u64 {
        self.counts
            .binary_search_by(|(x, _)| x.cmp(w))
            .map(|i| self.counts[i].1)
            .unwrap_or(0)
    }

    pub fn frequency(&self, w: &Word) -> f64 {
        self.count(w) as f64 / self.steps as f64
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|(_, c)| c).sum()
    }

    /// Largest count difference between `w` in `self` and `map(w)` in `other`.
    pub fn max_deviation(&self, other: &FrequencyTable, map: impl Fn(&Word) -> Word) -> u64 {
        self.counts
            .iter()
            .map(|(w, c)| c.abs_diff(other.count(&map(w))))
            .max()
            .unwrap_or(0)
    }

    /// `word<TAB>count<TAB>frequency` lines, sorted by word.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (w, c) in &self.counts {
            out.push_str(&format!("{w}\t{c}\t{}\n", decimal6(*c as f64 / self.steps as f64)));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let table: serde_json::Map<String, Value> = self
            .counts
            .iter()
            .map(|(w, c)| {
                let f = *c as f64 / self.steps as f64;
                (
                    w.to_string(),
                    json!({"count": c, "rational": rational(*c, self.steps as u64), "frequency": decimal6(f)}),
                )
            })
            .collect();
        json!({"system": self.system, "length": self.length, "steps": self.steps, "frequencies": table})
    }
}

fn tabulate(sys: &SubshiftSystem, n: usize, steps: usize, text: &[u8]) -> Result<FrequencyTable> {
    let lang = sys.language(n)?;
    let mut seen: HashMap<&[u8], u64> = HashMap::new();
    for w in text.windows(n).take(steps) {
        *seen.entry(w).or_insert(0) += 1;
    }
    if let Some(w) = seen.keys().find(|w| !lang.contains_slice(w)) {
        return Err(Error::Integrity(format!("inadmissible word {w:?} counted in {}", sys.name())));
    }
    let counts = lang
        .words()
        .iter()
        .map(|w| (w.clone(), seen.get(w.symbols()).copied().unwrap_or(0)))
        .collect();
    Ok(FrequencyTable { system: sys.name().to_string(), length: n, steps, counts })
}

fn prefix_for(sys: &SubshiftSystem, len: usize) -> Result<std::sync::Arc<[u8]>> {
    let prefix = sys.generated_prefix()?;
    if prefix.len() < len {
        return Err(Error::Resource(format!(
            "{} symbols requested from a generated prefix of {}",
            len,
            prefix.len()
        )));
    }
    Ok(prefix)
}

/// Word frequencies over the windows starting at positions `0..steps` of the generated prefix.
pub fn word_frequencies(sys: &SubshiftSystem, n: usize, steps: usize) -> Result<FrequencyTable> {
    if n == 0 || steps == 0 {
        return Err(Error::Domain("word length and steps must be positive".into()));
    }
    let prefix = prefix_for(sys, steps + n - 1)?;
    tabulate(sys, n, steps, &prefix[..steps + n - 1])
}

/// Frequencies of the image orbit under `code`: the prefix is read `2r` symbols longer so
/// that the image carries exactly `steps` windows.
pub fn pushforward_frequencies(code: &SlidingBlockCode, n: usize, steps: usize) -> Result<FrequencyTable> {
    if n == 0 || steps == 0 {
        return Err(Error::Domain("word length and steps must be positive".into()));
    }
    let sys = code.system();
    let len = steps + n - 1 + 2 * code.radius();
    let prefix = prefix_for(sys, len)?;
    let image = code.apply_slice(&prefix[..len])?;
    tabulate(sys, n, steps, &image)
}
