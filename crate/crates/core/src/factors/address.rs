use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::factors::desub::{constant_length_rule, desubstitute};
use crate::points::Point;
use crate::words::{Substitution, Word};

/// A level-`k` point of the `base`-adic odometer, digits least significant first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OdometerAddress {
    base: u8,
    digits: Vec<u8>,
}

impl OdometerAddress {
    pub fn new(base: u8, digits: Vec<u8>) -> Result<Self> {
        if base < 2 {
            return Err(Error::Domain(format!("odometer base {base} must be at least 2")));
        }
        if digits.len() > 64 {
            return Err(Error::Resource(format!("{} odometer levels exceed the cap 64", digits.len())));
        }
        if let Some(d) = digits.iter().find(|&&d| d >= base) {
            return Err(Error::Domain(format!("digit {d} is not below base {base}")));
        }
        Ok(OdometerAddress { base, digits })
    }

    pub fn zero(base: u8, level: usize) -> Result<Self> {
        Self::new(base, vec![0; level])
    }

    /// The residue of `m` modulo `base^level`.
    pub fn from_integer(base: u8, level: usize, m: i128) -> Result<Self> {
        Self::zero(base, level)?.add(m)
    }

    /// Parses LSB-first digits, e.g. `"100"` is the integer 1 at level 3.
    pub fn parse(base: u8, s: &str) -> Result<Self> {
        let w: Word = s.parse()?;
        Self::new(base, w.into_symbols())
    }

    pub fn base(&self) -> u8 {
        self.base
    }

    pub fn level(&self) -> usize {
        self.digits.len()
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn modulus(&self) -> u128 {
        (self.base as u128).pow(self.level() as u32)
    }

    pub fn value(&self) -> u128 {
        self.digits
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * self.base as u128 + d as u128)
    }

    pub fn truncate(&self, level: usize) -> OdometerAddress {
        OdometerAddress { base: self.base, digits: self.digits[..level.min(self.level())].to_vec() }
    }

    /// Adds `m` with carry, wrapping at `base^level`.
    pub fn add(&self, m: i128) -> Result<OdometerAddress> {
        let modulus = self.modulus() as i128;
        let v = (self.value() as i128 + m.rem_euclid(modulus)).rem_euclid(modulus) as u128;
        let mut digits = Vec::with_capacity(self.level());
        let mut rest = v;
        for _ in 0..self.level() {
            digits.push((rest % self.base as u128) as u8);
            rest /= self.base as u128;
        }
        Ok(OdometerAddress { base: self.base, digits })
    }

    pub fn successor(&self) -> OdometerAddress {
        let mut digits = self.digits.clone();
        for d in digits.iter_mut() {
            if *d + 1 < self.base {
                *d += 1;
                return OdometerAddress { base: self.base, digits };
            }
            *d = 0;
        }
        OdometerAddress { base: self.base, digits }
    }

    /// `(self - other) mod base^level`; both addresses must share base and level.
    pub fn difference(&self, other: &OdometerAddress) -> Result<u128> {
        if self.base != other.base || self.level() != other.level() {
            return Err(Error::Domain("addresses of different odometers".into()));
        }
        let m = self.modulus();
        Ok((self.value() + m - other.value()) % m)
    }
}

impl fmt::Display for OdometerAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.digits {
            write!(f, "{}", (b'0' + d) as char)?;
        }
        Ok(())
    }
}

impl fmt::Debug for OdometerAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OdometerAddress({self})")
    }
}

impl Serialize for OdometerAddress {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The cyclic group `Z/base^level` with the add-one map, the level-`k` odometer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Odometer {
    pub base: u8,
    pub level: usize,
}

impl Odometer {
    pub fn size(&self) -> u128 {
        (self.base as u128).pow(self.level as u32)
    }

    pub fn step(&self, n: u128) -> u128 {
        (n + 1) % self.size()
    }
}

struct LevelReader<'a> {
    point: &'a Point,
    sub: &'a Substitution,
    ell: i64,
    marker: Option<(usize, Vec<Option<u8>>)>,
}

impl LevelReader<'_> {
    // Symbol at index m of the level-j desubstituted sequence, given offsets digits[..j].
    fn symbol(&self, digits: &[u8], j: usize, m: i64) -> Result<u8> {
        if j == 0 {
            return self.point.symbol(m);
        }
        let start = self.ell * m - digits[j - 1] as i64;
        if let Some((col, decode)) = &self.marker {
            let s = self.symbol(digits, j - 1, start + *col as i64)?;
            return decode[s as usize].ok_or_else(|| {
                Error::Integrity(format!("level {j}: symbol {s} is no block marker"))
            });
        }
        let block = (0..self.ell)
            .map(|t| self.symbol(digits, j - 1, start + t))
            .collect::<Result<Vec<u8>>>()?;
        (0..self.sub.alphabet_size())
            .find(|&c| self.sub.image(c).symbols() == block.as_slice())
            .ok_or_else(|| Error::Integrity(format!("level {j}: block {block:?} has no letter")))
    }
}

// A block position at which distinct letters have distinct image symbols.
fn marker_column(sub: &Substitution, ell: usize) -> Option<(usize, Vec<Option<u8>>)> {
    (0..ell).find_map(|col| {
        let mut decode = vec![None; sub.alphabet_size() as usize];
        for c in 0..sub.alphabet_size() {
            let s = sub.image(c).symbols()[col] as usize;
            if decode[s].is_some() {
                return None;
            }
            decode[s] = Some(c);
        }
        Some((col, decode))
    })
}

/// The level-`k` odometer address of `p`: digit `j` is the offset, inside its block, of
/// coordinate 0 of the level-`j` desubstitution of `p`.
///
/// Each level reads one recognizability-length window, so only `O(k · R)` coordinates
/// of `p` are touched, at distance up to about `ℓ^k · R / 2`.
pub fn address(p: &Point, k: usize) -> Result<OdometerAddress> {
    let sys = p.system();
    let (sub, ell) = constant_length_rule(sys)?;
    let r = sys.recognizability_length()?;
    let reader = LevelReader { point: p, sub, ell: ell as i64, marker: marker_column(sub, ell) };
    let h = (r / 2) as i64;
    let mut digits = Vec::with_capacity(k);
    for j in 0..k {
        let window = (-h..r as i64 - h)
            .map(|m| reader.symbol(&digits, j, m))
            .collect::<Result<Vec<u8>>>()?;
        let parse = desubstitute(sys, &Word::from_raw(window)).map_err(|e| match e {
            Error::Ambiguity(msg) => Error::Ambiguity(format!("level {j}: {msg}")),
            Error::Inadmissible(msg) => Error::Inadmissible(format!("level {j}: {msg}")),
            other => other,
        })?;
        digits.push(((parse.offset as i64 + h).rem_euclid(ell as i64)) as u8);
    }
    OdometerAddress::new(ell as u8, digits)
}
