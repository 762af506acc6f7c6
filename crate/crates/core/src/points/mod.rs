//! Bi-infinite points of a subshift, evaluated lazily coordinate by coordinate.
//!
//! A [`Point`] is a small constructor tree over four node kinds:
//!
//! * splices of two one-sided fixed points (`left` read backwards on the negative axis),
//! * shifts `p ↦ S^k p` with `(S^k p)(n) = p(n + k)`,
//! * the symbol flip `0 ↔ 1`,
//! * block towers: the `K`-fold substitution image of a short core word, positioned by
//!   an odometer address. These are partial points, determined on one finite interval.
//!
//! Windows returned by [`Point::window`] are verified against the system language.

mod syntax;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::{flip_symbol, SubshiftSystem, Word, MAX_CHECKED_LEN, PREFIX_CAP};

pub use syntax::parse_point;

/// Largest coordinate magnitude a window query may reach.
pub const HORIZON_CAP: i64 = 1 << 20;
/// Deepest block tower accepted by [`point_from_address`].
pub const MAX_TOWER_LEVELS: usize = 48;

/// One half of a splice: the fixed point of `seed`, optionally flipped.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct OneSidedSpec {
    pub seed: u8,
    pub flip: bool,
}

impl OneSidedSpec {
    pub fn fixed(seed: u8) -> Self {
        OneSidedSpec { seed, flip: false }
    }

    pub fn flipped(self) -> Self {
        OneSidedSpec { flip: !self.flip, ..self }
    }
}

impl fmt::Display for OneSidedSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.flip {
            write!(f, "flip(fix{})", self.seed)
        } else {
            write!(f, "fix{}", self.seed)
        }
    }
}

#[derive(Debug)]
enum Node {
    Splice { left: OneSidedSpec, right: OneSidedSpec, left_seq: Arc<[u8]>, right_seq: Arc<[u8]> },
    Shifted { base: Point, k: i64 },
    Flipped { base: Point },
    Tower { digits: Vec<u8>, core: Word, core_index: usize, origin: i128, block: u128 },
}

/// A point of a subshift. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Point {
    sys: Arc<SubshiftSystem>,
    node: Arc<Node>,
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Point({} in {})", self.spec(), self.sys.name())
    }
}

impl Point {
    /// `p(n) = right(n)` for `n ≥ 0` and `p(n) = left(-1-n)` for `n < 0`.
    pub fn splice(sys: &Arc<SubshiftSystem>, left: OneSidedSpec, right: OneSidedSpec) -> Result<Point> {
        if (left.flip || right.flip) && !sys.is_binary() {
            return Err(Error::Domain(format!("flip needs a binary alphabet, {} has {}", sys.name(), sys.alphabet_size())));
        }
        let left_seq = sys.fixed_point(left.seed)?;
        let right_seq = sys.fixed_point(right.seed)?;
        Ok(Point {
            sys: Arc::clone(sys),
            node: Arc::new(Node::Splice { left, right, left_seq, right_seq }),
        })
    }

    /// The four splices of the fixed point of `seed` and its flip, labelled by their specs:
    /// `Q̆Q`, `Q̆′Q′`, `Q̆′Q`, `Q̆Q′` in that order.
    pub fn seam_fiber(sys: &Arc<SubshiftSystem>, seed: u8) -> Result<Vec<Point>> {
        let q = OneSidedSpec::fixed(seed);
        [(q, q), (q.flipped(), q.flipped()), (q.flipped(), q), (q, q.flipped())]
            .into_iter()
            .map(|(l, r)| Point::splice(sys, l, r))
            .collect()
    }

    /// A block tower: `σ^K(core)` placed so that coordinate 0 sits at offset
    /// `Σ d_j ℓ^j` inside block number `core_index` of the core.
    pub fn block_tower(sys: &Arc<SubshiftSystem>, digits: &[u8], core: Word, core_index: usize) -> Result<Point> {
        let sub = sys.substitution().ok_or_else(|| {
            Error::Domain(format!("{} is not a substitution subshift", sys.name()))
        })?;
        let ell = sub.constant_length().ok_or_else(|| {
            Error::Domain(format!("{} is not constant-length", sys.name()))
        })?;
        if digits.len() > MAX_TOWER_LEVELS {
            return Err(Error::Resource(format!(
                "{} address digits exceed the tower cap {MAX_TOWER_LEVELS}",
                digits.len()
            )));
        }
        if let Some(d) = digits.iter().find(|&&d| d as usize >= ell) {
            return Err(Error::Domain(format!("address digit {d} is not below {ell}")));
        }
        if core.is_empty() || core_index >= core.len() {
            return Err(Error::Domain("tower core index outside the core word".into()));
        }
        if !sys.is_admissible(&core)? {
            return Err(Error::Inadmissible(format!("tower core {core} is not admissible")));
        }
        let block = (ell as u128).pow(digits.len() as u32);
        let mut offset: u128 = 0;
        for &d in digits.iter().rev() {
            offset = offset * ell as u128 + d as u128;
        }
        let origin = offset as i128 + (core_index as u128 * block) as i128;
        Ok(Point {
            sys: Arc::clone(sys),
            node: Arc::new(Node::Tower { digits: digits.to_vec(), core, core_index, origin, block }),
        })
    }

    pub fn system(&self) -> &Arc<SubshiftSystem> {
        &self.sys
    }

    pub fn shifted(&self, k: i64) -> Point {
        Point {
            sys: Arc::clone(&self.sys),
            node: Arc::new(Node::Shifted { base: self.clone(), k }),
        }
    }

    pub fn flipped(&self) -> Result<Point> {
        if !self.sys.is_binary() {
            return Err(Error::Domain(format!("flip needs a binary alphabet, {} is not binary", self.sys.name())));
        }
        Ok(Point {
            sys: Arc::clone(&self.sys),
            node: Arc::new(Node::Flipped { base: self.clone() }),
        })
    }

    /// Canonical spec string in the point mini-syntax.
    pub fn spec(&self) -> String {
        match &*self.node {
            Node::Splice { left, right, .. } => format!("splice(rev({left}),{right})"),
            Node::Shifted { base, k } => format!("shift({},{k})", base.spec()),
            Node::Flipped { base } => format!("flip({})", base.spec()),
            Node::Tower { digits, core, core_index, .. } => {
                let d: String = digits.iter().map(|d| (b'0' + d) as char).collect();
                if core.len() == 1 {
                    format!("addr({d},{core})")
                } else {
                    format!("tower({d},{core},{core_index})")
                }
            }
        }
    }

    /// The interval of coordinates where the point is defined, if it is partial.
    pub fn determined_range(&self) -> Option<(i128, i128)> {
        match &*self.node {
            Node::Splice { .. } => None,
            Node::Shifted { base, k } => base
                .determined_range()
                .map(|(lo, hi)| (lo - *k as i128, hi - *k as i128)),
            Node::Flipped { base } => base.determined_range(),
            Node::Tower { core, origin, block, .. } => {
                Some((-origin, core.len() as i128 * *block as i128 - origin - 1))
            }
        }
    }

    fn eval(&self, n: i128) -> Result<u8> {
        match &*self.node {
            Node::Splice { left, right, left_seq, right_seq } => {
                let (spec, seq, idx) = if n >= 0 {
                    (right, right_seq, n)
                } else {
                    (left, left_seq, -1 - n)
                };
                if idx >= PREFIX_CAP as i128 {
                    return Err(Error::Resource(format!(
                        "coordinate {n} lies beyond the cached fixed point"
                    )));
                }
                let s = seq[idx as usize];
                Ok(if spec.flip { flip_symbol(s) } else { s })
            }
            Node::Shifted { base, k } => base.eval(n + *k as i128),
            Node::Flipped { base } => base.eval(n).map(flip_symbol),
            Node::Tower { digits, core, origin, block, .. } => {
                let pos = n + origin;
                if pos < 0 || pos >= core.len() as i128 * *block as i128 {
                    let (lo, hi) = self.determined_range().expect("towers are partial");
                    return Err(Error::Undetermined(format!(
                        "coordinate {n} outside the determined range [{lo}, {hi}] of {}; extend the address digits",
                        self.spec()
                    )));
                }
                let pos = pos as u128;
                let letter = core.symbols()[(pos / block) as usize];
                let sub = self.sys.substitution().expect("towers are substitutive");
                Ok(sub.power_symbol(letter, digits.len() as u32, pos % block))
            }
        }
    }

    /// The symbol at coordinate `n`.
    pub fn symbol(&self, n: i64) -> Result<u8> {
        check_horizon(n)?;
        self.eval(n as i128)
    }

    /// Symbols at coordinates `lo..=hi`, without the admissibility check.
    pub(crate) fn raw_window(&self, lo: i64, hi: i64) -> Result<Vec<u8>> {
        if lo > hi {
            return Err(Error::Domain(format!("empty window [{lo}, {hi}]")));
        }
        check_horizon(lo)?;
        check_horizon(hi)?;
        (lo..=hi).map(|n| self.eval(n as i128)).collect()
    }

    /// Symbols `p(lo), …, p(hi)`, verified admissible.
    ///
    /// Windows longer than [`MAX_CHECKED_LEN`] are verified on overlapping chunks of that
    /// length, which certifies every subword up to half the chunk length.
    pub fn window(&self, lo: i64, hi: i64) -> Result<Word> {
        let raw = self.raw_window(lo, hi)?;
        let ok = if raw.len() <= MAX_CHECKED_LEN {
            self.sys.admissible(&raw)?
        } else {
            let step = MAX_CHECKED_LEN / 2;
            let mut start = 0;
            let mut ok = true;
            while ok {
                let end = (start + MAX_CHECKED_LEN).min(raw.len());
                ok = self.sys.admissible(&raw[start..end])?;
                if end == raw.len() {
                    break;
                }
                start += step;
            }
            ok
        };
        if !ok {
            return Err(Error::Integrity(format!(
                "window [{lo}, {hi}] of {} is not admissible in {}",
                self.spec(),
                self.sys.name()
            )));
        }
        Ok(Word::from_raw(raw))
    }

    /// The centered window `p(n - radius ..= n + radius)`.
    pub fn centered(&self, n: i64, radius: usize) -> Result<Word> {
        self.window(n - radius as i64, n + radius as i64)
    }
}

fn check_horizon(n: i64) -> Result<()> {
    if n.abs() > HORIZON_CAP {
        return Err(Error::Resource(format!(
            "coordinate {n} exceeds the horizon cap {HORIZON_CAP}"
        )));
    }
    Ok(())
}

/// A point whose level-`j` block offset is `digits[j]` and whose level-`K` block is the
/// image of `sheet`, `K = digits.len()`.
pub fn point_from_address(sys: &Arc<SubshiftSystem>, digits: &[u8], sheet: u8) -> Result<Point> {
    if sheet >= sys.alphabet_size() {
        return Err(Error::Domain(format!("sheet {sheet} outside the alphabet")));
    }
    Point::block_tower(sys, digits, Word::from_raw(vec![sheet]), 0)
}

/// `digits` repeated: alternating addresses are `repeat_digits(&[0, 1], 11)`.
pub fn repeat_digits(pattern: &[u8], times: usize) -> Vec<u8> {
    pattern.iter().copied().cycle().take(pattern.len() * times).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn morse() -> Arc<SubshiftSystem> {
        SubshiftSystem::builtin("morse").unwrap()
    }

    fn mu() -> Point {
        Point::seam_fiber(&morse(), 0).unwrap().remove(0)
    }

    #[test]
    fn window_examples() {
        let mu = mu();
        assert_eq!(mu.window(0, 7).unwrap().to_string(), "01101001");
        assert_eq!(mu.flipped().unwrap().window(0, 7).unwrap().to_string(), "10010110");
        assert_eq!(mu.shifted(3).window(0, 4).unwrap(), mu.window(3, 7).unwrap());
        assert_eq!(mu.window(-4, 3).unwrap().to_string(), "01100110");
    }

    #[test]
    fn seam_fiber_halves() {
        let fiber = Point::seam_fiber(&morse(), 0).unwrap();
        let (mu, mu_p, nu, nu_p) = (&fiber[0], &fiber[1], &fiber[2], &fiber[3]);
        assert_eq!(nu.spec(), "splice(rev(flip(fix0)),fix0)");
        assert_eq!(mu.window(0, 4095).unwrap(), nu.window(0, 4095).unwrap());
        assert_eq!(nu.window(-4096, -1).unwrap(), mu_p.window(-4096, -1).unwrap());
        assert_eq!(mu.window(-4096, -1).unwrap(), nu_p.window(-4096, -1).unwrap());
        // flipping the splice of Q̆ and Q gives the splice of the flipped halves
        assert_eq!(mu.flipped().unwrap().window(-4096, 4096).unwrap(), mu_p.window(-4096, 4096).unwrap());
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(fiber[i].window(-4, 4).unwrap(), fiber[j].window(-4, 4).unwrap());
            }
        }
    }

    #[test]
    fn address_points_reproduce_the_seam() {
        let sys = morse();
        let zeros = point_from_address(&sys, &[0; 10], 0).unwrap();
        let ones_sheet = point_from_address(&sys, &[0; 10], 1).unwrap();
        let fiber = Point::seam_fiber(&sys, 0).unwrap();
        assert_eq!(zeros.determined_range(), Some((0, 1023)));
        assert_eq!(zeros.window(0, 1023).unwrap(), fiber[0].window(0, 1023).unwrap());
        assert_eq!(ones_sheet.window(0, 1023).unwrap(), fiber[1].window(0, 1023).unwrap());
        assert!(matches!(zeros.window(-1, 3), Err(Error::Undetermined(_))));
        assert!(matches!(zeros.symbol(1024), Err(Error::Undetermined(_))));
    }

    #[test]
    fn alternating_address_point() {
        let sys = morse();
        let p = point_from_address(&sys, &repeat_digits(&[0, 1], 5), 0).unwrap();
        // offset = 2 + 8 + 32 + 128 + 512
        assert_eq!(p.determined_range(), Some((-682, 1023 - 682)));
        let fixed = sys.fixed_point(0).unwrap();
        assert_eq!(p.window(-682, 341).unwrap().symbols(), &fixed[..1024]);
    }

    #[test]
    fn address_extension_is_consistent() {
        let sys = morse();
        let mut digits = vec![1, 0, 1, 1];
        let short = point_from_address(&sys, &digits, 0).unwrap();
        let (lo, hi) = short.determined_range().unwrap();
        let expected = short.window(lo as i64, hi as i64).unwrap();
        // extension keeps coordinate 0 in the sheet-0 part of the larger block
        digits.extend([0, 0, 0]);
        let long = point_from_address(&sys, &digits, 0).unwrap();
        assert_eq!(long.window(lo as i64, hi as i64).unwrap(), expected);
    }

    #[test]
    fn caps_and_domain_errors() {
        let mu = mu();
        assert!(matches!(mu.window(0, HORIZON_CAP + 1), Err(Error::Resource(_))));
        assert!(matches!(mu.window(3, 2), Err(Error::Domain(_))));
        let pd = SubshiftSystem::builtin("period-doubling").unwrap();
        assert!(point_from_address(&pd, &[2], 0).is_err());
        let fib = SubshiftSystem::builtin("fibonacci").unwrap();
        assert!(matches!(point_from_address(&fib, &[0], 0), Err(Error::Domain(_))));
    }

    #[test]
    fn inadmissible_window_is_an_integrity_error() {
        let pd = SubshiftSystem::builtin("period-doubling").unwrap();
        let p = point_from_address(&pd, &[0; 8], 0).unwrap();
        // period-doubling is not closed under the flip
        let err = p.flipped().unwrap().window(0, 200).unwrap_err();
        assert!(matches!(err, Error::Integrity(_)), "{err}");
    }

    proptest! {
        #[test]
        fn shift_composition(a in -500i64..500, b in -500i64..500, lo in -200i64..200) {
            let mu = mu();
            prop_assert_eq!(
                mu.shifted(a).shifted(b).window(lo, lo + 40).unwrap(),
                mu.shifted(a + b).window(lo, lo + 40).unwrap()
            );
        }

        #[test]
        fn double_flip_is_identity(k in -300i64..300) {
            let p = mu().shifted(k);
            let ff = p.flipped().unwrap().flipped().unwrap();
            prop_assert_eq!(ff.window(-64, 64).unwrap(), p.window(-64, 64).unwrap());
        }

        #[test]
        fn tower_windows_are_admissible(digits in proptest::collection::vec(0u8..2, 6..12), sheet in 0u8..2) {
            let sys = morse();
            let p = point_from_address(&sys, &digits, sheet).unwrap();
            let (lo, hi) = p.determined_range().unwrap();
            prop_assert!(p.window(lo as i64, hi as i64).is_ok());
        }
    }
}
