use crate::error::{Error, Result};
use crate::words::word::{Word, MAX_ALPHABET};

/// A non-erasing substitution over the alphabet `0..size`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    images: Vec<Word>,
    primitive: bool,
    constant_length: Option<usize>,
}

impl Substitution {
    /// Builds a substitution whose alphabet is `0..images.len()`.
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let size = images.len();
        if size == 0 || size > MAX_ALPHABET as usize {
            return Err(Error::Domain(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {size}"
            )));
        }
        for (c, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(Error::Domain(format!("image of {c} is empty")));
            }
            if img.symbols().iter().any(|&s| s as usize >= size) {
                return Err(Error::Domain(format!("image of {c} leaves the alphabet")));
            }
        }
        let primitive = is_primitive(&images);
        let first = images[0].len();
        let constant_length = images.iter().all(|w| w.len() == first).then_some(first);
        Ok(Substitution { images, primitive, constant_length })
    }

    /// Convenience constructor from digit strings, e.g. `["01", "10"]`.
    pub fn from_rules(rules: &[&str]) -> Result<Self> {
        let images = rules
            .iter()
            .map(|r| r.parse::<Word>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(images)
    }

    pub fn alphabet_size(&self) -> u8 {
        self.images.len() as u8
    }

    pub fn image(&self, c: u8) -> &Word {
        &self.images[c as usize]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn is_primitive(&self) -> bool {
        self.primitive
    }

    pub fn constant_length(&self) -> Option<usize> {
        self.constant_length
    }

    /// True when distinct letters have distinct images.
    pub fn is_injective(&self) -> bool {
        let mut seen = self.images.clone();
        seen.sort();
        seen.dedup();
        seen.len() == self.images.len()
    }

    pub fn substitute(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &s in w.symbols() {
            if s >= self.alphabet_size() {
                return Err(Error::Domain(format!(
                    "symbol {s} outside alphabet of size {}",
                    self.alphabet_size()
                )));
            }
            out.extend_from_slice(self.images[s as usize].symbols());
        }
        Ok(Word::from_raw(out))
    }

    /// `rule(seed)` starts with `seed` and the iterates grow.
    pub fn is_prolongable(&self, seed: u8) -> bool {
        seed < self.alphabet_size() && {
            let img = self.image(seed);
            img.symbols()[0] == seed && img.len() >= 2
        }
    }

    /// The first `n` symbols of the one-sided fixed point started from `seed`.
    pub fn fixed_point_prefix(&self, seed: u8, n: usize) -> Result<Word> {
        if n == 0 {
            return Err(Error::Domain("fixed point prefix length must be at least 1".into()));
        }
        let mut w = self.fixed_point_raw(seed, n)?;
        w.truncate(n);
        Ok(Word::from_raw(w))
    }

    /// Iterates the substitution from `seed` until at least `n` symbols exist.
    pub(crate) fn fixed_point_raw(&self, seed: u8, n: usize) -> Result<Vec<u8>> {
        if !self.is_prolongable(seed) {
            return Err(Error::Construction(format!(
                "seed {seed} is not prolongable (its image must start with it and grow)"
            )));
        }
        let mut cur = vec![seed];
        while cur.len() < n {
            let mut next = Vec::with_capacity(cur.len() * 2);
            for &s in &cur {
                next.extend_from_slice(self.images[s as usize].symbols());
                if next.len() >= n {
                    break;
                }
            }
            if next.len() <= cur.len() {
                return Err(Error::Construction(format!("iterates of seed {seed} do not grow")));
            }
            cur = next;
        }
        Ok(cur)
    }

    /// Length of the `k`-th iterate image of `c`, saturating.
    pub fn image_len(&self, c: u8, k: u32) -> u128 {
        let mut lens: Vec<u128> = vec![1; self.images.len()];
        for _ in 0..k {
            lens = self
                .images
                .iter()
                .map(|img| {
                    img.symbols()
                        .iter()
                        .fold(0u128, |acc, &s| acc.saturating_add(lens[s as usize]))
                })
                .collect();
        }
        lens[c as usize]
    }

    /// Symbol at `pos` of the `k`-th iterate image of `c`, for constant-length rules.
    pub fn power_symbol(&self, c: u8, k: u32, pos: u128) -> u8 {
        let ell = self.constant_length.expect("power_symbol needs a constant-length rule") as u128;
        let mut place = ell.pow(k);
        debug_assert!(pos < place);
        let mut cur = c;
        let mut rest = pos;
        for _ in 0..k {
            place /= ell;
            let digit = (rest / place) as usize;
            rest %= place;
            cur = self.images[cur as usize].symbols()[digit];
        }
        cur
    }

    /// All length-2 factors of the language generated by the substitution.
    pub fn two_factors(&self) -> Vec<[u8; 2]> {
        let mut set = std::collections::BTreeSet::new();
        for img in &self.images {
            for p in img.symbols().windows(2) {
                set.insert([p[0], p[1]]);
            }
        }
        loop {
            let mut grown = set.clone();
            for &[a, b] in &set {
                let la = self.image(a).symbols();
                let fb = self.image(b).symbols();
                grown.insert([la[la.len() - 1], fb[0]]);
            }
            if grown.len() == set.len() {
                break;
            }
            set = grown;
        }
        set.into_iter().collect()
    }
}

// Wielandt: a primitive n×n matrix has a strictly positive power of exponent ≤ (n-1)^2 + 1.
fn is_primitive(images: &[Word]) -> bool {
    let n = images.len();
    let mut base = vec![vec![false; n]; n];
    for (c, img) in images.iter().enumerate() {
        for &s in img.symbols() {
            base[c][s as usize] = true;
        }
    }
    let mut power = base.clone();
    let bound = (n - 1) * (n - 1) + 1;
    for _ in 0..bound {
        if power.iter().all(|row| row.iter().all(|&b| b)) {
            return true;
        }
        let mut next = vec![vec![false; n]; n];
        for i in 0..n {
            for k in 0..n {
                if power[i][k] {
                    for j in 0..n {
                        next[i][j] |= base[k][j];
                    }
                }
            }
        }
        power = next;
    }
    power.iter().all(|row| row.iter().all(|&b| b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn substitute_examples() {
        let tm = Substitution::from_rules(&["01", "10"]).unwrap();
        assert_eq!(tm.substitute(&w("0")).unwrap(), w("01"));
        assert_eq!(tm.substitute(&w("01")).unwrap(), w("0110"));
        assert_eq!(tm.substitute(&Word::empty()).unwrap(), Word::empty());
        assert!(matches!(tm.substitute(&w("012")), Err(Error::Domain(_))));
    }

    #[test]
    fn fixed_point_prefixes() {
        let tm = Substitution::from_rules(&["01", "10"]).unwrap();
        let pd = Substitution::from_rules(&["01", "00"]).unwrap();
        let fib = Substitution::from_rules(&["01", "0"]).unwrap();
        assert_eq!(tm.fixed_point_prefix(0, 8).unwrap(), w("01101001"));
        assert_eq!(pd.fixed_point_prefix(0, 8).unwrap(), w("01000101"));
        assert_eq!(fib.fixed_point_prefix(0, 8).unwrap(), w("01001010"));
        assert!(matches!(fib.fixed_point_prefix(1, 8), Err(Error::Construction(_))));
        assert!(matches!(pd.fixed_point_prefix(1, 8), Err(Error::Construction(_))));
        assert!(tm.fixed_point_prefix(0, 0).is_err());
    }

    #[test]
    fn fixed_point_is_prefix_stable() {
        let tm = Substitution::from_rules(&["01", "10"]).unwrap();
        let p = tm.fixed_point_prefix(0, 64).unwrap();
        let image = tm.substitute(&p).unwrap();
        assert_eq!(image.slice(0..64), p);
    }

    #[test]
    fn flags() {
        let tm = Substitution::from_rules(&["01", "10"]).unwrap();
        let fib = Substitution::from_rules(&["01", "0"]).unwrap();
        let id = Substitution::from_rules(&["0", "1"]).unwrap();
        let triangular = Substitution::from_rules(&["01", "1"]).unwrap();
        assert!(tm.is_primitive() && fib.is_primitive());
        assert!(!id.is_primitive() && !triangular.is_primitive());
        assert_eq!(tm.constant_length(), Some(2));
        assert_eq!(fib.constant_length(), None);
        assert!(tm.is_injective());
    }

    #[test]
    fn power_symbol_matches_iteration() {
        let tm = Substitution::from_rules(&["01", "10"]).unwrap();
        let mut it = w("1");
        for _ in 0..6 {
            it = tm.substitute(&it).unwrap();
        }
        for (i, &s) in it.symbols().iter().enumerate() {
            assert_eq!(tm.power_symbol(1, 6, i as u128), s);
        }
        assert_eq!(tm.image_len(0, 6), 64);
    }

    #[test]
    fn two_factor_closure() {
        let tm = Substitution::from_rules(&["01", "10"]).unwrap();
        assert_eq!(tm.two_factors(), vec![[0, 0], [0, 1], [1, 0], [1, 1]]);
        let fib = Substitution::from_rules(&["01", "0"]).unwrap();
        assert_eq!(fib.two_factors(), vec![[0, 0], [0, 1], [1, 0]]);
    }
}
