use std::collections::HashSet;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::factors::desub;
use crate::words::index::FactorIndex;
use crate::words::substitution::Substitution;
use crate::words::word::{Word, MAX_ALPHABET};

/// Length of the cached one-sided fixed points (each seed).
pub const PREFIX_CAP: usize = 1 << 22;
/// Largest `n` for which `language(n)` may be materialized.
pub const LANGUAGE_CAP: usize = 1024;
/// Longest word whose admissibility is decided exactly.
pub const MAX_CHECKED_LEN: usize = 1 << 17;

const DIRECT_LEN: usize = 64;
const INDEX_TIERS: [usize; 2] = [1 << 12, MAX_CHECKED_LEN];
const FULL_SHIFT_PREFIX: usize = 1 << 16;
const FULL_SHIFT_SEED: u64 = 0x5eed_f011;

/// Built-in system names.
pub const BUILTIN_SYSTEMS: [&str; 4] = ["morse", "fibonacci", "period-doubling", "full-shift"];

#[derive(Clone, Debug)]
pub enum SystemKind {
    /// The two-sided subshift generated by a primitive substitution.
    Substitutive { substitution: Substitution, seed: u8 },
    /// All sequences over the alphabet.
    FullShift,
}

/// The admissible words of one length, sorted lexicographically.
#[derive(Debug)]
pub struct Language {
    length: usize,
    words: Vec<Word>,
}

impl Language {
    fn from_words(length: usize, mut words: Vec<Word>) -> Self {
        words.sort();
        words.dedup();
        Language { length, words }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.contains_slice(w.symbols())
    }

    pub(crate) fn contains_slice(&self, w: &[u8]) -> bool {
        self.words
            .binary_search_by(|probe| probe.symbols().cmp(w))
            .is_ok()
    }
}

/// A subshift presented by its factor language, with caches built on first use.
///
/// Each cache slot is written once and then only read.
pub struct SubshiftSystem {
    name: String,
    alphabet: u8,
    kind: SystemKind,
    languages: Vec<OnceLock<Result<Arc<Language>>>>,
    fixed_points: Vec<OnceLock<Result<Arc<[u8]>>>>,
    noise: OnceLock<Arc<[u8]>>,
    indexes: [OnceLock<Result<Arc<FactorIndex>>>; 2],
    recognizability: OnceLock<Result<usize>>,
}

impl std::fmt::Debug for SubshiftSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SubshiftSystem")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet)
            .field("kind", &self.kind)
            .finish()
    }
}

impl SubshiftSystem {
    fn with_kind(name: &str, alphabet: u8, kind: SystemKind) -> Self {
        SubshiftSystem {
            name: name.to_string(),
            alphabet,
            kind,
            languages: (0..=LANGUAGE_CAP).map(|_| OnceLock::new()).collect(),
            fixed_points: (0..MAX_ALPHABET).map(|_| OnceLock::new()).collect(),
            noise: OnceLock::new(),
            indexes: [OnceLock::new(), OnceLock::new()],
            recognizability: OnceLock::new(),
        }
    }

    /// A substitution subshift; the substitution must be primitive and `seed` prolongable.
    pub fn substitutive(name: &str, substitution: Substitution, seed: u8) -> Result<Self> {
        if !substitution.is_primitive() {
            return Err(Error::Construction(format!("substitution of {name} is not primitive")));
        }
        if !substitution.is_prolongable(seed) {
            return Err(Error::Construction(format!(
                "seed {seed} is not prolongable for {name}"
            )));
        }
        let alphabet = substitution.alphabet_size();
        Ok(Self::with_kind(name, alphabet, SystemKind::Substitutive { substitution, seed }))
    }

    pub fn full_shift(name: &str, alphabet: u8) -> Result<Self> {
        if alphabet == 0 || alphabet > MAX_ALPHABET {
            return Err(Error::Domain(format!("alphabet size {alphabet} out of range")));
        }
        Ok(Self::with_kind(name, alphabet, SystemKind::FullShift))
    }

    /// Looks up a built-in system. Instances are shared process-wide so caches are reused.
    pub fn builtin(name: &str) -> Result<Arc<SubshiftSystem>> {
        static REGISTRY: OnceLock<[OnceLock<Arc<SubshiftSystem>>; 4]> = OnceLock::new();
        let slots = REGISTRY.get_or_init(Default::default);
        let pos = BUILTIN_SYSTEMS
            .iter()
            .position(|&n| n == name)
            .ok_or_else(|| {
                Error::Domain(format!(
                    "unknown system {name:?}; expected one of {}",
                    BUILTIN_SYSTEMS.join(", ")
                ))
            })?;
        let sys = slots[pos].get_or_init(|| {
            let built = match name {
                "morse" => Substitution::from_rules(&["01", "10"])
                    .and_then(|s| Self::substitutive(name, s, 0)),
                "fibonacci" => Substitution::from_rules(&["01", "0"])
                    .and_then(|s| Self::substitutive(name, s, 0)),
                "period-doubling" => Substitution::from_rules(&["01", "00"])
                    .and_then(|s| Self::substitutive(name, s, 0)),
                _ => Self::full_shift(name, 2),
            };
            Arc::new(built.expect("built-in systems are well formed"))
        });
        Ok(Arc::clone(sys))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet_size(&self) -> u8 {
        self.alphabet
    }

    pub fn kind(&self) -> &SystemKind {
        &self.kind
    }

    pub fn substitution(&self) -> Option<&Substitution> {
        match &self.kind {
            SystemKind::Substitutive { substitution, .. } => Some(substitution),
            SystemKind::FullShift => None,
        }
    }

    pub fn seed(&self) -> Option<u8> {
        match &self.kind {
            SystemKind::Substitutive { seed, .. } => Some(*seed),
            SystemKind::FullShift => None,
        }
    }

    /// The constant image length, for constant-length substitutive systems.
    pub fn constant_length(&self) -> Option<usize> {
        self.substitution().and_then(|s| s.constant_length())
    }

    pub fn is_binary(&self) -> bool {
        self.alphabet == 2
    }

    /// Checks that every symbol of `w` belongs to the alphabet.
    pub fn check_alphabet(&self, w: &[u8]) -> Result<()> {
        match w.iter().find(|&&s| s >= self.alphabet) {
            Some(s) => Err(Error::Domain(format!(
                "symbol {s} outside the alphabet of {} (size {})",
                self.name, self.alphabet
            ))),
            None => Ok(()),
        }
    }

    /// The one-sided fixed point of the substitution from `seed`, [`PREFIX_CAP`] symbols long.
    pub fn fixed_point(&self, seed: u8) -> Result<Arc<[u8]>> {
        let sub = self.substitution().ok_or_else(|| {
            Error::Construction(format!("{} has no substitution", self.name))
        })?;
        if seed >= self.alphabet {
            return Err(Error::Domain(format!("seed {seed} outside alphabet")));
        }
        self.fixed_points[seed as usize]
            .get_or_init(|| {
                let mut raw = sub.fixed_point_raw(seed, PREFIX_CAP)?;
                raw.truncate(PREFIX_CAP);
                Ok(raw.into())
            })
            .clone()
    }

    /// The word the language is read from: the fixed point of the system seed,
    /// or a deterministic pseudo-random word for the full shift.
    pub fn generated_prefix(&self) -> Result<Arc<[u8]>> {
        match &self.kind {
            SystemKind::Substitutive { seed, .. } => self.fixed_point(*seed),
            SystemKind::FullShift => Ok(self
                .noise
                .get_or_init(|| {
                    let mut rng = ChaCha8Rng::seed_from_u64(FULL_SHIFT_SEED);
                    (0..FULL_SHIFT_PREFIX)
                        .map(|_| rng.gen_range(0..self.alphabet))
                        .collect::<Vec<u8>>()
                        .into()
                })
                .clone()),
        }
    }

    /// Prefix length from which all length-`n` factors are collected.
    ///
    /// At least `max(4096, 8n)`; raised to `|σ^k(v)|` where `v` is the shortest fixed-point
    /// prefix holding every 2-factor and `k` is minimal with `min_c |σ^k(c)| ≥ n`. Every
    /// length-`n` factor sits inside some `σ^k(ab)` with `ab` a 2-factor, so this is exact.
    pub fn generation_length(&self, n: usize) -> Result<usize> {
        let base = 4096usize.max(8 * n);
        let SystemKind::Substitutive { substitution, seed } = &self.kind else {
            return Ok(base);
        };
        let pairs = substitution.two_factors();
        let probe = substitution.fixed_point_raw(*seed, 1 << 12)?;
        let mut missing: HashSet<[u8; 2]> = pairs.into_iter().collect();
        let mut v_len = 0;
        for (i, p) in probe.windows(2).enumerate() {
            missing.remove(&[p[0], p[1]]);
            if missing.is_empty() {
                v_len = i + 2;
                break;
            }
        }
        if !missing.is_empty() {
            return Err(Error::Integrity(format!(
                "{}: 2-factors missing from the fixed point prefix",
                self.name
            )));
        }
        let alphabet = substitution.alphabet_size();
        let mut k = 0u32;
        while (0..alphabet).map(|c| substitution.image_len(c, k)).min().unwrap_or(0) < n as u128 {
            k += 1;
        }
        let bound: u128 = probe[..v_len]
            .iter()
            .fold(0u128, |acc, &c| acc.saturating_add(substitution.image_len(c, k)));
        let needed = (base as u128).max(bound);
        if needed > PREFIX_CAP as u128 {
            return Err(Error::Resource(format!(
                "{}: length-{n} factors need a prefix of {needed} symbols (cap {PREFIX_CAP})",
                self.name
            )));
        }
        Ok(needed as usize)
    }

    /// The admissible words of length `n`, cached. Factor closure against `n - 1` and
    /// extendability of `n - 1` into `n` are asserted on every build.
    pub fn language(&self, n: usize) -> Result<Arc<Language>> {
        if n > LANGUAGE_CAP {
            return Err(Error::Resource(format!(
                "language length {n} exceeds the cap {LANGUAGE_CAP}"
            )));
        }
        self.languages[n].get_or_init(|| self.build_language(n)).clone()
    }

    fn build_language(&self, n: usize) -> Result<Arc<Language>> {
        if n == 0 {
            return Ok(Arc::new(Language::from_words(0, vec![Word::empty()])));
        }
        let words = match &self.kind {
            SystemKind::FullShift => {
                let count = (self.alphabet as u128).checked_pow(n as u32);
                if count.is_none_or(|c| c > 1 << 20) {
                    return Err(Error::Resource(format!(
                        "full-shift language of length {n} is too large"
                    )));
                }
                all_words(self.alphabet, n)
            }
            SystemKind::Substitutive { .. } => {
                let len = self.generation_length(n)?;
                let prefix = self.generated_prefix()?;
                let set: HashSet<&[u8]> = prefix[..len].windows(n).collect();
                set.into_iter().map(|w| Word::from_raw(w.to_vec())).collect()
            }
        };
        let lang = Language::from_words(n, words);
        if n >= 2 {
            let shorter = self.language(n - 1)?;
            check_closure(&self.name, &shorter, &lang)?;
        }
        Ok(Arc::new(lang))
    }

    /// The complexity function `p(n)`.
    pub fn complexity(&self, n: usize) -> Result<usize> {
        Ok(self.language(n)?.len())
    }

    pub fn is_admissible(&self, w: &Word) -> Result<bool> {
        self.admissible(w.symbols())
    }

    /// Exact membership in the language, for words up to [`MAX_CHECKED_LEN`].
    pub fn admissible(&self, w: &[u8]) -> Result<bool> {
        if w.is_empty() {
            return Ok(true);
        }
        if w.iter().any(|&s| s >= self.alphabet) {
            return Ok(false);
        }
        if matches!(self.kind, SystemKind::FullShift) {
            return Ok(true);
        }
        if w.len() <= DIRECT_LEN {
            return Ok(self.language(w.len())?.contains_slice(w));
        }
        let tier = INDEX_TIERS
            .iter()
            .position(|&t| w.len() <= t)
            .ok_or_else(|| {
                Error::Resource(format!(
                    "cannot decide admissibility of a word of length {} (cap {MAX_CHECKED_LEN})",
                    w.len()
                ))
            })?;
        Ok(self.index(tier)?.contains(w))
    }

    fn index(&self, tier: usize) -> Result<Arc<FactorIndex>> {
        self.indexes[tier]
            .get_or_init(|| {
                let len = self.generation_length(INDEX_TIERS[tier])?;
                let prefix = self.generated_prefix()?;
                let idx = FactorIndex::build(&prefix[..len], self.alphabet);
                debug_assert_eq!(idx.text_len(), len);
                Ok(Arc::new(idx))
            })
            .clone()
    }

    /// Smallest window length whose parse into substitution blocks always has a unique
    /// phase. Computed once; only defined for constant-length systems.
    pub fn recognizability_length(&self) -> Result<usize> {
        self.recognizability
            .get_or_init(|| desub::recognizability_search(self))
            .clone()
    }
}

fn all_words(alphabet: u8, n: usize) -> Vec<Word> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w: Vec<u8>| {
                (0..alphabet).map(move |s| {
                    let mut v = w.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out.into_iter().map(Word::from_raw).collect()
}

fn check_closure(name: &str, shorter: &Language, longer: &Language) -> Result<()> {
    let n = longer.length();
    let mut extended: HashSet<&[u8]> = HashSet::new();
    for w in longer.words() {
        let s = w.symbols();
        for sub in [&s[..n - 1], &s[1..]] {
            if !shorter.contains_slice(sub) {
                return Err(Error::Integrity(format!(
                    "{name}: factor closure fails, {w} has inadmissible factor of length {}",
                    n - 1
                )));
            }
            extended.insert(sub);
        }
    }
    if let Some(stuck) = shorter.words().iter().find(|w| !extended.contains(w.symbols())) {
        return Err(Error::Integrity(format!(
            "{name}: {stuck} does not extend to an admissible word of length {n}"
        )));
    }
    Ok(())
}
