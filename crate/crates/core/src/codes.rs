//! Sliding block codes on a subshift: local rules over the admissible `(2r+1)`-blocks.
//!
//! A code of radius `r` sends `x` to `y` with `y(i) = rule(x[i-r..=i+r])`, so it commutes
//! with the shift by construction. Endomorphisms are found by a depth-first search over
//! the admissible block set; automorphisms by searching for an inverse rule.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::words::{flip_symbol, Language, SubshiftSystem, Word, MAX_CHECKED_LEN};

/// Default length of the generated test prefix.
pub const CHECK_LEN: usize = 4096;
/// Search nodes allowed before enumeration gives up.
pub const NODE_CAP: u64 = 50_000_000;
/// Each test word carries this many image positions.
const TEST_SPAN: usize = 8;
const UNSET: u8 = u8::MAX;

/// The code `S^k ∘ κ^ε`, reading `y(i) = x(i + k)` (flipped when `ε = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NormalForm {
    pub k: i64,
    pub epsilon: u8,
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.k, self.epsilon) {
            (0, 0) => write!(f, "id"),
            (0, _) => write!(f, "κ"),
            (k, 0) => write!(f, "S^{k}"),
            (k, _) => write!(f, "S^{k}κ"),
        }
    }
}

/// A radius-`r` rule, total on the admissible `(2r+1)`-blocks of its system.
#[derive(Clone)]
pub struct SlidingBlockCode {
    sys: Arc<SubshiftSystem>,
    radius: usize,
    blocks: Arc<Language>,
    outputs: Vec<u8>,
}

impl fmt::Debug for SlidingBlockCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let table: String = self.outputs.iter().map(|&s| (b'0' + s) as char).collect();
        write!(f, "SlidingBlockCode({}, r={}, {table})", self.sys.name(), self.radius)
    }
}

impl PartialEq for SlidingBlockCode {
    /// Equal rules after padding both codes to the larger radius.
    fn eq(&self, other: &Self) -> bool {
        if self.sys.name() != other.sys.name() {
            return false;
        }
        let r = self.radius.max(other.radius);
        match (self.pad(r), other.pad(r)) {
            (Ok(a), Ok(b)) => a.outputs == b.outputs,
            _ => false,
        }
    }
}

impl SlidingBlockCode {
    /// Builds the code whose output on each admissible block is `rule(block)`.
    pub fn from_rule(sys: &Arc<SubshiftSystem>, radius: usize, rule: impl Fn(&[u8]) -> u8) -> Result<Self> {
        let blocks = sys.language(2 * radius + 1)?;
        let outputs: Vec<u8> = blocks.words().iter().map(|b| rule(b.symbols())).collect();
        Self::from_table(sys, radius, outputs)
    }

    /// Outputs listed in the sorted order of the admissible blocks.
    pub fn from_table(sys: &Arc<SubshiftSystem>, radius: usize, outputs: Vec<u8>) -> Result<Self> {
        let blocks = sys.language(2 * radius + 1)?;
        if outputs.len() != blocks.len() {
            return Err(Error::Domain(format!(
                "{} outputs for {} admissible blocks",
                outputs.len(),
                blocks.len()
            )));
        }
        sys.check_alphabet(&outputs)?;
        Ok(SlidingBlockCode { sys: Arc::clone(sys), radius, blocks, outputs })
    }

    pub fn identity(sys: &Arc<SubshiftSystem>) -> Result<Self> {
        Self::normal(sys, NormalForm { k: 0, epsilon: 0 })
    }

    pub fn shift(sys: &Arc<SubshiftSystem>, k: i64) -> Result<Self> {
        Self::normal(sys, NormalForm { k, epsilon: 0 })
    }

    pub fn flip(sys: &Arc<SubshiftSystem>) -> Result<Self> {
        Self::normal(sys, NormalForm { k: 0, epsilon: 1 })
    }

    /// The synthesized table of `S^k ∘ κ^ε` at radius `|k|`.
    pub fn normal(sys: &Arc<SubshiftSystem>, form: NormalForm) -> Result<Self> {
        if form.epsilon > 1 {
            return Err(Error::Domain(format!("flip parity {} is not 0 or 1", form.epsilon)));
        }
        if form.epsilon == 1 && !sys.is_binary() {
            return Err(Error::Domain(format!("{} has no symbol flip", sys.name())));
        }
        let r = form.k.unsigned_abs() as usize;
        let at = (r as i64 + form.k) as usize;
        Self::from_rule(sys, r, |b| if form.epsilon == 1 { flip_symbol(b[at]) } else { b[at] })
    }

    pub fn system(&self) -> &Arc<SubshiftSystem> {
        &self.sys
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn blocks(&self) -> &[Word] {
        self.blocks.words()
    }

    pub fn outputs(&self) -> &[u8] {
        &self.outputs
    }

    /// The output on `block`, or `None` when the block is not admissible.
    pub fn rule(&self, block: &[u8]) -> Option<u8> {
        self.blocks
            .words()
            .binary_search_by(|w| w.symbols().cmp(block))
            .ok()
            .map(|i| self.outputs[i])
    }

    /// Applies the rule at every position; the result is `2r` symbols shorter.
    pub fn apply_slice(&self, w: &[u8]) -> Result<Vec<u8>> {
        let width = 2 * self.radius + 1;
        if w.len() < width {
            return Err(Error::Domain(format!(
                "word of length {} is shorter than the code window {width}",
                w.len()
            )));
        }
        w.windows(width)
            .map(|b| {
                self.rule(b).ok_or_else(|| {
                    Error::Domain(format!("block {} is not admissible in {}", render(b), self.sys.name()))
                })
            })
            .collect()
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.apply_slice(w.symbols()).map(Word::from_raw)
    }

    /// The same map written at a radius `radius ≥ r`.
    pub fn pad(&self, radius: usize) -> Result<Self> {
        if radius < self.radius {
            return Err(Error::Domain(format!("cannot pad radius {} down to {radius}", self.radius)));
        }
        let d = radius - self.radius;
        let width = 2 * self.radius + 1;
        Self::from_rule(&self.sys, radius, |b| {
            self.rule(&b[d..d + width]).expect("inner block of an admissible block is admissible")
        })
    }

    /// The smallest radius writing the same map.
    pub fn minimized(&self) -> Self {
        for r in 0..self.radius {
            let d = self.radius - r;
            let mut inner: HashMap<&[u8], u8> = HashMap::new();
            let consistent = self.blocks.words().iter().zip(&self.outputs).all(|(b, &o)| {
                let core = &b.symbols()[d..d + 2 * r + 1];
                *inner.entry(core).or_insert(o) == o
            });
            if !consistent {
                continue;
            }
            let Ok(lang) = self.sys.language(2 * r + 1) else { continue };
            let table: Option<Vec<u8>> = lang.words().iter().map(|b| inner.get(b.symbols()).copied()).collect();
            if let Some(table) = table {
                if let Ok(code) = Self::from_table(&self.sys, r, table) {
                    return code;
                }
            }
        }
        self.clone()
    }

    /// The normal form `(k, ε)` if the rule is `S^k ∘ κ^ε` with `|k| ≤ r`.
    pub fn normal_form(&self) -> Option<NormalForm> {
        let r = self.radius as i64;
        let parities: &[u8] = if self.sys.is_binary() { &[0, 1] } else { &[0] };
        for k in -r..=r {
            for &epsilon in parities {
                let at = (r + k) as usize;
                let hit = self.blocks.words().iter().zip(&self.outputs).all(|(b, &o)| {
                    let s = b.symbols()[at];
                    o == if epsilon == 1 { flip_symbol(s) } else { s }
                });
                if hit {
                    return Some(NormalForm { k, epsilon });
                }
            }
        }
        None
    }

    pub fn is_identity(&self) -> bool {
        self.minimized().normal_form() == Some(NormalForm { k: 0, epsilon: 0 })
    }

    /// `{"blocks": [[block, output], ...], "radius": r}` with blocks in sorted order.
    pub fn to_json(&self) -> Value {
        let blocks: Vec<Value> = self
            .blocks
            .words()
            .iter()
            .zip(&self.outputs)
            .map(|(b, &o)| json!([b.to_string(), o]))
            .collect();
        json!({"radius": self.radius, "blocks": blocks})
    }

    pub fn from_json(sys: &Arc<SubshiftSystem>, v: &Value) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("code JSON: {m}"));
        let radius = v["radius"].as_u64().ok_or_else(|| bad("missing radius"))? as usize;
        let rows = v["blocks"].as_array().ok_or_else(|| bad("missing blocks"))?;
        let mut table: HashMap<Word, u8> = HashMap::new();
        for row in rows {
            let block: Word = row[0].as_str().ok_or_else(|| bad("block is not a string"))?.parse()?;
            let out = row[1].as_u64().filter(|&o| o < 10).ok_or_else(|| bad("output is not a digit"))?;
            table.insert(block, out as u8);
        }
        let lang = sys.language(2 * radius + 1)?;
        if table.len() != lang.len() {
            return Err(bad("block list does not match the admissible blocks"));
        }
        let outputs = lang
            .words()
            .iter()
            .map(|b| table.get(b).copied().ok_or_else(|| bad(&format!("no output for block {b}"))))
            .collect::<Result<Vec<u8>>>()?;
        Self::from_table(sys, radius, outputs)
    }
}

fn render(b: &[u8]) -> String {
    b.iter().map(|&s| (b'0' + s) as char).collect()
}

/// `apply_code(c, w)`: the image word, `2r` symbols shorter than `w`.
pub fn apply_code(c: &SlidingBlockCode, w: &Word) -> Result<Word> {
    c.apply(w)
}

/// `c1 ∘ c2` at radius at most `r1 + r2`, minimized.
pub fn compose(c1: &SlidingBlockCode, c2: &SlidingBlockCode) -> Result<SlidingBlockCode> {
    if c1.sys.name() != c2.sys.name() {
        return Err(Error::Domain("codes of different systems".into()));
    }
    let radius = c1.radius + c2.radius;
    let lang = c1.sys.language(2 * radius + 1)?;
    let outputs = lang
        .words()
        .iter()
        .map(|b| {
            let mid = c2.apply_slice(b.symbols())?;
            c1.rule(&mid).ok_or_else(|| {
                Error::Domain(format!("image block {} is not admissible", render(&mid)))
            })
        })
        .collect::<Result<Vec<u8>>>()?;
    Ok(SlidingBlockCode::from_table(&c1.sys, radius, outputs)?.minimized())
}

fn test_prefix(sys: &SubshiftSystem, check_len: usize, width: usize) -> Result<Arc<[u8]>> {
    if check_len < width {
        return Err(Error::Domain(format!("check length {check_len} is shorter than the window {width}")));
    }
    if check_len > MAX_CHECKED_LEN {
        return Err(Error::Resource(format!("check length {check_len} exceeds {MAX_CHECKED_LEN}")));
    }
    let prefix = sys.generated_prefix()?;
    if prefix.len() < check_len {
        return Err(Error::Resource(format!("generated prefix shorter than {check_len}")));
    }
    Ok(prefix)
}

/// True when every admissible word of length `2r + 8` and the first `check_len` symbols of
/// the generated prefix have admissible images.
pub fn verify_endomorphism(c: &SlidingBlockCode, check_len: usize) -> Result<bool> {
    let width = 2 * c.radius + 1;
    let prefix = test_prefix(&c.sys, check_len, width)?;
    let tests = c.sys.language(width + TEST_SPAN - 1)?;
    for t in tests.words() {
        if !c.sys.admissible(&c.apply_slice(t.symbols())?)? {
            return Ok(false);
        }
    }
    c.sys.admissible(&c.apply_slice(&prefix[..check_len])?)
}

/// Outcome of an endomorphism search.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub radius: usize,
    /// Codes certified up to this test length.
    pub check_len: usize,
    pub codes: Vec<SlidingBlockCode>,
    pub nodes: u64,
}

/// All radius-`r` endomorphisms passing the finite test corpus, in canonical order.
pub fn enumerate_endomorphisms(sys: &Arc<SubshiftSystem>, radius: usize, check_len: usize) -> Result<Vec<SlidingBlockCode>> {
    enumerate_with_cap(sys, radius, check_len, NODE_CAP).map(|e| e.codes)
}

struct Search<'a> {
    alphabet: u8,
    order: Vec<usize>,
    tests: Vec<[usize; TEST_SPAN]>,
    occurrences: Vec<Vec<(usize, usize)>>,
    assign: Vec<u8>,
    images: Vec<Arc<Language>>,
    nodes: u64,
    cap: u64,
    found: Vec<Vec<u8>>,
    leaf: &'a dyn Fn(&[u8]) -> Result<bool>,
}

impl Search<'_> {
    fn run(&mut self, depth: usize) -> Result<()> {
        if depth == self.order.len() {
            if (self.leaf)(&self.assign)? {
                self.found.push(self.assign.clone());
            }
            return Ok(());
        }
        let b = self.order[depth];
        for s in 0..self.alphabet {
            self.nodes += 1;
            if self.nodes > self.cap {
                return Err(Error::Resource(format!(
                    "search stopped at the node cap {}: depth {depth} of {}, {} codes found so far",
                    self.cap,
                    self.order.len(),
                    self.found.len()
                )));
            }
            self.assign[b] = s;
            if self.consistent(b) {
                self.run(depth + 1)?;
            }
        }
        self.assign[b] = UNSET;
        Ok(())
    }

    // The image of the maximal assigned run through each occurrence of `b` must be admissible.
    fn consistent(&self, b: usize) -> bool {
        let mut buf = [0u8; TEST_SPAN];
        self.occurrences[b].iter().all(|&(t, p)| {
            let row = &self.tests[t];
            let mut lo = p;
            while lo > 0 && self.assign[row[lo - 1]] != UNSET {
                lo -= 1;
            }
            let mut hi = p + 1;
            while hi < TEST_SPAN && self.assign[row[hi]] != UNSET {
                hi += 1;
            }
            for (i, &blk) in row[lo..hi].iter().enumerate() {
                buf[i] = self.assign[blk];
            }
            self.images[hi - lo].contains_slice(&buf[..hi - lo])
        })
    }
}

/// [`enumerate_endomorphisms`] with an explicit node budget and search statistics.
pub fn enumerate_with_cap(sys: &Arc<SubshiftSystem>, radius: usize, check_len: usize, cap: u64) -> Result<Enumeration> {
    let width = 2 * radius + 1;
    let prefix = test_prefix(sys, check_len, width)?;
    let blocks = sys.language(width)?;
    let index = |b: &[u8]| {
        blocks
            .words()
            .binary_search_by(|w| w.symbols().cmp(b))
            .map_err(|_| Error::Integrity(format!("block {} missing from the language", render(b))))
    };

    // blocks in order of first appearance, so early test words fill up first
    let mut order = Vec::with_capacity(blocks.len());
    let mut placed = vec![false; blocks.len()];
    for b in prefix[..check_len].windows(width) {
        let i = index(b)?;
        if !placed[i] {
            placed[i] = true;
            order.push(i);
        }
    }
    order.extend((0..blocks.len()).filter(|&i| !placed[i]));

    let test_words = sys.language(width + TEST_SPAN - 1)?;
    let mut tests = Vec::with_capacity(test_words.len());
    let mut occurrences = vec![Vec::new(); blocks.len()];
    for (t, w) in test_words.words().iter().enumerate() {
        let mut row = [0usize; TEST_SPAN];
        for (p, slot) in row.iter_mut().enumerate() {
            *slot = index(&w.symbols()[p..p + width])?;
            occurrences[*slot].push((t, p));
        }
        tests.push(row);
    }
    let images = (0..=TEST_SPAN).map(|n| sys.language(n)).collect::<Result<Vec<_>>>()?;

    let checked = &prefix[..check_len];
    let leaf = |table: &[u8]| -> Result<bool> {
        let code = SlidingBlockCode::from_table(sys, radius, table.to_vec())?;
        sys.admissible(&code.apply_slice(checked)?)
    };
    let mut search = Search {
        alphabet: sys.alphabet_size(),
        order,
        tests,
        occurrences,
        assign: vec![UNSET; blocks.len()],
        images,
        nodes: 0,
        cap,
        found: Vec::new(),
        leaf: &leaf,
    };
    search.run(0)?;
    let mut tables = search.found;
    tables.sort();
    let codes = tables
        .into_iter()
        .map(|t| SlidingBlockCode::from_table(sys, radius, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(Enumeration { radius, check_len, codes, nodes: search.nodes })
}

/// A two-sided inverse of radius at most `max_radius`, if one exists.
///
/// At radius `r′` the candidate sends `c(u)` to the center of `u` over all admissible `u` of
/// length `2(r + r′) + 1`; it must be single-valued, total, and compose to the identity
/// on both sides.
pub fn invert(c: &SlidingBlockCode, max_radius: usize) -> Result<Option<SlidingBlockCode>> {
    for rr in 0..=max_radius {
        let span = c.radius + rr;
        let words = c.sys.language(2 * span + 1)?;
        let mut map: HashMap<Vec<u8>, u8> = HashMap::new();
        let mut consistent = true;
        for u in words.words() {
            let Ok(img) = c.apply_slice(u.symbols()) else {
                return Ok(None);
            };
            let center = u.symbols()[span];
            if *map.entry(img).or_insert(center) != center {
                consistent = false;
                break;
            }
        }
        if !consistent {
            continue;
        }
        let lang = c.sys.language(2 * rr + 1)?;
        let Some(table) = lang.words().iter().map(|b| map.get(b.symbols()).copied()).collect::<Option<Vec<u8>>>()
        else {
            continue;
        };
        let d = SlidingBlockCode::from_table(&c.sys, rr, table)?;
        let left = compose(&d, c).map(|e| e.is_identity()).unwrap_or(false);
        let right = compose(c, &d).map(|e| e.is_identity()).unwrap_or(false);
        if left && right {
            return Ok(Some(d.minimized()));
        }
    }
    Ok(None)
}

/// Group-shape report for a list of automorphism codes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupShape {
    pub shape: String,
    /// Normal forms in list order; `None` for unrecognized codes.
    pub forms: Vec<Option<NormalForm>>,
    pub extra: usize,
}

pub fn classify_aut_group(codes: &[SlidingBlockCode]) -> GroupShape {
    let forms: Vec<Option<NormalForm>> = codes.iter().map(|c| c.normal_form()).collect();
    let extra = forms.iter().filter(|f| f.is_none()).count();
    let shape = if codes.is_empty() {
        "trivial".to_string()
    } else if extra > 0 {
        format!("unrecognized: {extra} extra codes")
    } else if forms.iter().flatten().any(|f| f.epsilon == 1) {
        "Z ⊕ Z/2".to_string()
    } else {
        "Z".to_string()
    };
    GroupShape { shape, forms, extra }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sys(name: &str) -> Arc<SubshiftSystem> {
        SubshiftSystem::builtin(name).unwrap()
    }

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn nf(k: i64, epsilon: u8) -> NormalForm {
        NormalForm { k, epsilon }
    }

    #[test]
    fn apply_examples() {
        let m = sys("morse");
        let id = SlidingBlockCode::identity(&m).unwrap();
        assert_eq!(apply_code(&id, &w("0110")).unwrap(), w("0110"));
        let kappa = SlidingBlockCode::flip(&m).unwrap();
        assert_eq!(apply_code(&kappa, &w("0110")).unwrap(), w("1001"));
        let s1 = SlidingBlockCode::shift(&m, 1).unwrap();
        // blocks 011, 110, 101 read off their right symbols
        assert_eq!(apply_code(&s1, &w("01101")).unwrap(), w("101"));
        assert!(matches!(apply_code(&s1, &w("01")), Err(Error::Domain(_))));
        assert!(matches!(apply_code(&s1, &w("0001")), Err(Error::Domain(_))));
    }

    #[test]
    fn composition_examples() {
        let m = sys("morse");
        let kappa = SlidingBlockCode::flip(&m).unwrap();
        let s1 = SlidingBlockCode::shift(&m, 1).unwrap();
        assert!(compose(&kappa, &kappa).unwrap().is_identity());
        assert_eq!(compose(&s1, &kappa).unwrap().normal_form(), Some(nf(1, 1)));
        let s2 = compose(&s1, &s1).unwrap();
        assert_eq!(s2.radius(), 2);
        assert_eq!(s2.normal_form(), Some(nf(2, 0)));
        // oracle: read two to the right on every admissible 5-block
        for b in m.language(5).unwrap().words() {
            assert_eq!(s2.rule(b.symbols()), Some(b.symbols()[4]));
        }
    }

    #[test]
    fn padding_and_equality() {
        let m = sys("morse");
        let kappa = SlidingBlockCode::flip(&m).unwrap();
        let padded = kappa.pad(3).unwrap();
        assert_eq!(padded.radius(), 3);
        assert_eq!(padded, kappa);
        assert_eq!(padded.minimized().radius(), 0);
        assert_ne!(kappa, SlidingBlockCode::identity(&m).unwrap());
    }

    #[test]
    fn morse_radius_zero_and_one() {
        let m = sys("morse");
        let r0 = enumerate_endomorphisms(&m, 0, CHECK_LEN).unwrap();
        assert_eq!(r0.len(), 2);
        let r1 = enumerate_endomorphisms(&m, 1, CHECK_LEN).unwrap();
        let mut forms: Vec<_> = r1.iter().map(|c| c.normal_form().unwrap()).collect();
        forms.sort();
        let mut expected: Vec<_> = (-1..=1).flat_map(|k| [nf(k, 0), nf(k, 1)]).collect();
        expected.sort();
        assert_eq!(forms, expected);
    }

    #[test]
    fn fibonacci_has_only_shifts() {
        let f = sys("fibonacci");
        for r in 0..=2 {
            let codes = enumerate_endomorphisms(&f, r, CHECK_LEN).unwrap();
            assert_eq!(codes.len(), 2 * r + 1);
            assert_eq!(classify_aut_group(&codes).shape, "Z");
        }
    }

    #[test]
    fn enumeration_is_canonical() {
        let m = sys("morse");
        let codes = enumerate_endomorphisms(&m, 2, CHECK_LEN).unwrap();
        assert!(codes.windows(2).all(|p| p[0].outputs() < p[1].outputs()));
        assert_eq!(classify_aut_group(&codes).shape, "Z ⊕ Z/2");
    }

    #[test]
    fn node_cap_reports_progress() {
        let m = sys("morse");
        let err = enumerate_with_cap(&m, 2, CHECK_LEN, 5).unwrap_err();
        assert!(matches!(err, Error::Resource(ref msg) if msg.contains("codes found so far")));
    }

    #[test]
    fn inverses() {
        let m = sys("morse");
        let kappa = SlidingBlockCode::flip(&m).unwrap();
        assert_eq!(invert(&kappa, 0).unwrap().unwrap(), kappa);
        let s2 = SlidingBlockCode::shift(&m, 2).unwrap();
        assert_eq!(invert(&s2, 2).unwrap().unwrap().normal_form(), Some(nf(-2, 0)));
        assert!(invert(&s2, 1).unwrap().is_none());
    }

    #[test]
    fn full_shift_has_non_invertible_codes() {
        let full = sys("full-shift");
        let zero = SlidingBlockCode::from_rule(&full, 1, |_| 0).unwrap();
        assert!(verify_endomorphism(&zero, CHECK_LEN).unwrap());
        assert!(invert(&zero, 2).unwrap().is_none());
        let morse = sys("morse");
        let zero = SlidingBlockCode::from_rule(&morse, 1, |_| 0).unwrap();
        assert!(!verify_endomorphism(&zero, CHECK_LEN).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let m = sys("morse");
        let c = SlidingBlockCode::normal(&m, nf(-1, 1)).unwrap();
        let v = c.to_json();
        assert_eq!(v["radius"], 1);
        assert_eq!(v["blocks"][0], json!(["001", 1]));
        assert_eq!(SlidingBlockCode::from_json(&m, &v).unwrap(), c);
        assert!(SlidingBlockCode::from_json(&m, &json!({"radius": 0, "blocks": [["0", 1]]})).is_err());
    }

    #[test]
    fn group_shapes() {
        assert_eq!(classify_aut_group(&[]).shape, "trivial");
        let full = sys("full-shift");
        let zero = SlidingBlockCode::from_rule(&full, 1, |_| 0).unwrap();
        assert_eq!(classify_aut_group(&[zero]).shape, "unrecognized: 1 extra codes");
    }

    proptest! {
        #[test]
        fn codes_commute_with_sliding(start in 0usize..3000, len in 10usize..200, pick in 0usize..10) {
            let m = sys("morse");
            let codes = enumerate_endomorphisms(&m, 2, CHECK_LEN).unwrap();
            let c = &codes[pick];
            let prefix = m.generated_prefix().unwrap();
            let word = &prefix[start..start + len];
            let whole = c.apply_slice(word).unwrap();
            let tail = c.apply_slice(&word[1..]).unwrap();
            prop_assert_eq!(&whole[1..], &tail[..]);
        }

        #[test]
        fn composition_matches_sequential_application(a in 0usize..6, b in 0usize..6, start in 0usize..3000) {
            let m = sys("morse");
            let codes = enumerate_endomorphisms(&m, 1, CHECK_LEN).unwrap();
            let (c1, c2) = (&codes[a], &codes[b]);
            let c = compose(c1, c2).unwrap();
            let prefix = m.generated_prefix().unwrap();
            let word = &prefix[start..start + 64];
            let seq = c1.apply_slice(&c2.apply_slice(word).unwrap()).unwrap();
            let direct = c.pad(c1.radius() + c2.radius()).unwrap().apply_slice(word).unwrap();
            prop_assert_eq!(seq, direct);
        }
    }
}
