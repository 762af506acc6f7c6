//! Finite approximations of joint orbit closures and the automorphism experiments built
//! on them: the two-case dichotomy, semi-regularity reports, coalescence, and the
//! odometer translation witness.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::codes::{
    classify_aut_group, enumerate_endomorphisms, invert, verify_endomorphism, GroupShape, NormalForm,
    SlidingBlockCode, CHECK_LEN,
};
use crate::error::{Error, Result};
use crate::factors::{address, fiber_census, word_frequencies, OdometerAddress, SAMPLER};
use crate::pairs::{distal_certificate, DistalCertificate};
use crate::points::{point_from_address, repeat_digits, Point, HORIZON_CAP};
use crate::words::{SubshiftSystem, Word};

const CHUNK: usize = 4096;

type FirstSeen<'a> = HashMap<(&'a [u8], &'a [u8]), u64>;

/// Pairs of centered windows seen at common times along the orbit of `(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointLanguage {
    pub resolution: usize,
    pub steps: usize,
    /// Each observed pair with the first time it was seen.
    pairs: BTreeMap<(Word, Word), u64>,
    /// First window → center symbols of the second window seen with it.
    outputs: BTreeMap<Word, BTreeSet<u8>>,
}

impl JointLanguage {
    fn from_pairs(resolution: usize, steps: usize, pairs: BTreeMap<(Word, Word), u64>) -> Self {
        let mut outputs: BTreeMap<Word, BTreeSet<u8>> = BTreeMap::new();
        for (a, b) in pairs.keys() {
            outputs.entry(a.clone()).or_default().insert(b.symbols()[resolution]);
        }
        JointLanguage { resolution, steps, pairs, outputs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Word, &Word, u64)> {
        self.pairs.iter().map(|((a, b), &t)| (a, b, t))
    }

    pub fn first_time(&self, a: &Word, b: &Word) -> Option<u64> {
        self.pairs.get(&(a.clone(), b.clone())).copied()
    }

    pub fn output_map(&self) -> &BTreeMap<Word, BTreeSet<u8>> {
        &self.outputs
    }

    /// Every first window determines the second center symbol.
    pub fn is_single_valued(&self) -> bool {
        self.outputs.values().all(|s| s.len() == 1)
    }

    /// Both windows cut down to resolution `L - 1`.
    pub fn project(&self) -> Result<JointLanguage> {
        if self.resolution == 0 {
            return Err(Error::Domain("cannot project below resolution 0".into()));
        }
        let w = 2 * self.resolution - 1;
        let mut pairs: BTreeMap<(Word, Word), u64> = BTreeMap::new();
        for ((a, b), &t) in &self.pairs {
            let key = (a.slice(1..1 + w), b.slice(1..1 + w));
            let e = pairs.entry(key).or_insert(t);
            *e = (*e).min(t);
        }
        Ok(Self::from_pairs(self.resolution - 1, self.steps, pairs))
    }
}

fn same_system(p: &Point, q: &Point) -> Result<()> {
    if p.system().name() != q.system().name() {
        return Err(Error::Domain("points of different systems".into()));
    }
    Ok(())
}

/// `{(window_L(S^n p), window_L(S^n q)) : 0 ≤ n ≤ T}` with first-occurrence times.
pub fn joint_language(p: &Point, q: &Point, resolution: usize, steps: usize) -> Result<JointLanguage> {
    same_system(p, q)?;
    if (steps + resolution) as i64 > HORIZON_CAP {
        return Err(Error::Resource(format!("steps {steps} exceed the horizon cap {HORIZON_CAP}")));
    }
    let lo = -(resolution as i64);
    let hi = (steps + resolution) as i64;
    let a = p.window(lo, hi)?.into_symbols();
    let b = q.window(lo, hi)?.into_symbols();
    let width = 2 * resolution + 1;
    let starts: Vec<usize> = (0..=steps).step_by(CHUNK).collect();
    let partial: Vec<FirstSeen> = starts
        .par_iter()
        .map(|&s| {
            let mut seen = HashMap::new();
            for n in s..(s + CHUNK).min(steps + 1) {
                seen.entry((&a[n..n + width], &b[n..n + width])).or_insert(n as u64);
            }
            seen
        })
        .collect();
    let mut pairs: BTreeMap<(Word, Word), u64> = BTreeMap::new();
    for chunk in partial {
        for ((x, y), t) in chunk {
            let e = pairs.entry((Word::from_raw(x.to_vec()), Word::from_raw(y.to_vec()))).or_insert(t);
            *e = (*e).min(t);
        }
    }
    Ok(JointLanguage::from_pairs(resolution, steps, pairs))
}

/// Whether `(a, b)` was observed; `false` only means "not seen within `(L, T)`".
pub fn member_pair(w: &JointLanguage, a: &Word, b: &Word) -> Result<bool> {
    let width = 2 * w.resolution + 1;
    if a.len() != width || b.len() != width {
        return Err(Error::Domain(format!(
            "pair of lengths ({}, {}) queried at resolution {}",
            a.len(),
            b.len(),
            w.resolution
        )));
    }
    Ok(w.first_time(a, b).is_some())
}

/// Address differences of all observed pairs, per level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquicontinuityReport {
    pub levels: usize,
    pub times_checked: usize,
    /// `address(S^n p) - address(S^n q) mod 2^k` for `k = 1..=levels`, if constant.
    pub differences: Vec<Option<u128>>,
    pub constant: bool,
}

/// Checks that `address(S^n p, k) - address(S^n q, k)` does not depend on `n`, at the first
/// occurrence time of every pair in `w` and at `samples` evenly spaced times.
pub fn equicontinuity_check(p: &Point, q: &Point, w: &JointLanguage, levels: usize, samples: usize) -> Result<EquicontinuityReport> {
    let mut times: BTreeSet<u64> = w.pairs().map(|(_, _, t)| t).collect();
    let stride = (w.steps / samples.max(1)).max(1);
    times.extend((0..=w.steps).step_by(stride).map(|t| t as u64));
    let times: Vec<u64> = times.into_iter().collect();
    let diffs: Vec<OdometerAddress> = times
        .par_iter()
        .map(|&t| {
            let a = address(&p.shifted(t as i64), levels)?;
            let b = address(&q.shifted(t as i64), levels)?;
            let m = a.modulus() as i128;
            OdometerAddress::from_integer(a.base(), levels, a.difference(&b)? as i128 % m)
        })
        .collect::<Result<Vec<_>>>()?;
    let differences: Vec<Option<u128>> = (1..=levels)
        .map(|k| {
            let first = diffs[0].truncate(k).value();
            diffs.iter().all(|d| d.truncate(k).value() == first).then_some(first)
        })
        .collect();
    let constant = differences.iter().all(Option::is_some);
    Ok(EquicontinuityReport { levels, times_checked: times.len(), differences, constant })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DichotomyParams {
    pub resolution: usize,
    pub steps: usize,
    pub radius_budget: usize,
    pub check_len: usize,
}

impl Default for DichotomyParams {
    fn default() -> Self {
        DichotomyParams { resolution: 32, steps: 1 << 16, radius_budget: 8, check_len: CHECK_LEN }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DichotomyCase {
    #[serde(rename = "Case1-evidence")]
    Case1Evidence,
    #[serde(rename = "Case2")]
    Case2,
    #[serde(rename = "inconclusive")]
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct DichotomyVerdict {
    pub case: DichotomyCase,
    pub resolution: usize,
    pub steps: usize,
    pub fitted_radius: Option<usize>,
    pub code: Option<SlidingBlockCode>,
    pub normal_form: Option<NormalForm>,
    /// First time `(x0, κ x)` was observed, for Case 1.
    pub membership_witness: Option<u64>,
    /// The output map of the joint language is single-valued.
    pub claim_holds: bool,
    pub note: String,
}

impl DichotomyVerdict {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.case,
            "L": self.resolution,
            "T": self.steps,
            "fitted_radius": self.fitted_radius,
            "code": self.code.as_ref().map(SlidingBlockCode::to_json),
            "normal_form": self.normal_form.map(|f| f.to_string()),
            "membership_witness": self.membership_witness,
            "claim_holds": self.claim_holds,
            "note": self.note,
        })
    }
}

/// Runs the dichotomy for `(x0, x)`; `cert` must be a granted certificate for `x0`.
///
/// Case 1 is the observation of `(x0, κx)` in the joint language. Otherwise the output
/// map must be single-valued; the smallest radius at which the center output is a
/// function of the first window gives a code, which must pass endomorphism and
/// inverse checks.
pub fn dichotomy_with_certificate(
    x0: &Point,
    x: &Point,
    cert: &DistalCertificate,
    params: &DichotomyParams,
) -> Result<DichotomyVerdict> {
    if cert.point != x0.spec() {
        return Err(Error::Precondition(format!("certificate is for {}, not {}", cert.point, x0.spec())));
    }
    if !cert.granted() {
        return Err(Error::Precondition(format!("{} has no distal certificate: {}", x0.spec(), cert.reason)));
    }
    same_system(x0, x)?;
    let sys = x0.system();
    let l = params.resolution;
    let w = joint_language(x0, x, l, params.steps)?;
    let mut verdict = DichotomyVerdict {
        case: DichotomyCase::Inconclusive,
        resolution: l,
        steps: params.steps,
        fitted_radius: None,
        code: None,
        normal_form: None,
        membership_witness: None,
        claim_holds: w.is_single_valued(),
        note: String::new(),
    };
    if sys.is_binary() {
        let a = x0.centered(0, l)?;
        let b = x.flipped()?.centered(0, l)?;
        if let Some(t) = w.first_time(&a, &b) {
            verdict.case = DichotomyCase::Case1Evidence;
            verdict.membership_witness = Some(t);
            verdict.note = format!("(x0, κx) observed at time {t}");
            return Ok(verdict);
        }
    }
    if !verdict.claim_holds {
        verdict.note = "output map is not single-valued".into();
        return Ok(verdict);
    }
    for r in 0..=params.radius_budget.min(l) {
        let mut rule: HashMap<&[u8], u8> = HashMap::new();
        let single = w.output_map().iter().all(|(a, outs)| {
            let o = *outs.iter().next().expect("nonempty output set");
            *rule.entry(&a.symbols()[l - r..=l + r]).or_insert(o) == o
        });
        if !single {
            continue;
        }
        verdict.fitted_radius = Some(r);
        let lang = sys.language(2 * r + 1)?;
        let Some(table) = lang.words().iter().map(|b| rule.get(b.symbols()).copied()).collect::<Option<Vec<u8>>>()
        else {
            verdict.note = format!("radius-{r} rule is not total on the admissible blocks");
            return Ok(verdict);
        };
        let code = SlidingBlockCode::from_table(sys, r, table)?;
        if !verify_endomorphism(&code, params.check_len)? {
            verdict.note = format!("radius-{r} rule fails the endomorphism check");
            return Ok(verdict);
        }
        if invert(&code, params.radius_budget)?.is_none() {
            verdict.note = format!("radius-{r} rule has no inverse within radius {}", params.radius_budget);
            return Ok(verdict);
        }
        verdict.case = DichotomyCase::Case2;
        verdict.normal_form = code.normal_form();
        verdict.note = "extracted automorphism".into();
        verdict.code = Some(code);
        return Ok(verdict);
    }
    verdict.note = format!("no rule of radius ≤ {} fits", params.radius_budget);
    Ok(verdict)
}

/// [`dichotomy_with_certificate`] after certifying `x0` at horizon `2^16` and level 12.
pub fn dichotomy(x0: &Point, x: &Point, params: &DichotomyParams) -> Result<DichotomyVerdict> {
    let cert = distal_certificate(x0, 1 << 16, params.resolution, 12)?;
    dichotomy_with_certificate(x0, x, &cert, params)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SrParams {
    pub dichotomy: DichotomyParams,
    /// Candidates `S^k x0` and `κ S^k x0` for `|k| ≤ shift_range`.
    pub shift_range: i64,
    pub horizon: usize,
    pub certificate_level: usize,
    /// Radius of the realized-group enumeration.
    pub aut_radius: usize,
}

impl Default for SrParams {
    fn default() -> Self {
        SrParams {
            dichotomy: DichotomyParams::default(),
            shift_range: 8,
            horizon: 1 << 16,
            certificate_level: 12,
            aut_radius: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrRecord {
    pub candidate: String,
    pub verdict: String,
    pub normal_form: Option<String>,
    pub fitted_radius: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrReport {
    pub system: String,
    pub realized_group: GroupShape,
    pub aut_radius: usize,
    pub base_point: Option<String>,
    pub records: Vec<SrRecord>,
    pub statement: String,
    pub summary: String,
}

/// The alternating-address point used as `x0`; 22 digits keep every query of the default
/// experiments inside its determined range.
pub fn alternating_point(sys: &Arc<SubshiftSystem>) -> Result<Point> {
    point_from_address(sys, &repeat_digits(&[0, 1], 11), 0)
}

/// The default dichotomy candidates `S^k x0`, `κ S^k x0` for `|k| ≤ range`.
pub fn shift_flip_candidates(x0: &Point, range: i64) -> Result<Vec<Point>> {
    let mut out = Vec::new();
    for k in -range..=range {
        out.push(x0.shifted(k));
    }
    for k in -range..=range {
        out.push(x0.shifted(k).flipped()?);
    }
    Ok(out)
}

fn realized_group(sys: &Arc<SubshiftSystem>, params: &SrParams) -> Result<GroupShape> {
    let codes = enumerate_endomorphisms(sys, params.aut_radius, params.dichotomy.check_len)?;
    let mut autos = Vec::new();
    for c in codes {
        if invert(&c, 2 * params.aut_radius)?.is_some() {
            autos.push(c);
        }
    }
    Ok(classify_aut_group(&autos))
}

/// Semi-regularity evidence for a minimal substitution system.
///
/// Systems whose flip is an automorphism get the dichotomy over `candidates` (default:
/// [`shift_flip_candidates`] of [`alternating_point`]). Other constant-length systems are
/// compared against their odometer factor, Fibonacci against its rotation factor: a
/// translation of the factor commuting with the dynamics but realized by no automorphism.
pub fn sr_report(sys: &Arc<SubshiftSystem>, candidates: Option<Vec<Point>>, params: &SrParams) -> Result<SrReport> {
    if sys.substitution().is_none() {
        return Err(Error::Domain(format!("{} is not a minimal substitution system", sys.name())));
    }
    let group = realized_group(sys, params)?;
    let flip_is_automorphism = sys.is_binary()
        && verify_endomorphism(&SlidingBlockCode::flip(sys)?, params.dichotomy.check_len)?;
    let mut report = SrReport {
        system: sys.name().to_string(),
        realized_group: group,
        aut_radius: params.aut_radius,
        base_point: None,
        records: Vec::new(),
        statement: String::new(),
        summary: String::new(),
    };
    if flip_is_automorphism && sys.constant_length().is_some() {
        let x0 = alternating_point(sys)?;
        let cert = distal_certificate(&x0, params.horizon, params.dichotomy.resolution, params.certificate_level)?;
        let candidates = match candidates {
            Some(c) => c,
            None => shift_flip_candidates(&x0, params.shift_range)?,
        };
        let verdicts = candidates
            .par_iter()
            .map(|x| dichotomy_with_certificate(&x0, x, &cert, &params.dichotomy))
            .collect::<Result<Vec<_>>>()?;
        let mut conclusive = true;
        for (x, v) in candidates.iter().zip(&verdicts) {
            conclusive &= v.case != DichotomyCase::Inconclusive;
            report.records.push(SrRecord {
                candidate: x.spec(),
                verdict: serde_json::to_value(v.case).expect("case serializes").as_str().unwrap_or("").to_string(),
                normal_form: v.normal_form.map(|f| f.to_string()),
                fitted_radius: v.fitted_radius,
                detail: v.note.clone(),
            });
        }
        report.base_point = Some(x0.spec());
        report.statement = "every tested virtual candidate either shows Case-1 evidence or yields a realized automorphism".into();
        report.summary = if conclusive { "SR (evidence)" } else { "inconclusive" }.into();
        return Ok(report);
    }
    if sys.constant_length().is_some() {
        let base = sys.constant_length().expect("constant length") as u8;
        let digits = repeat_digits(&[0, 1], 8);
        let a = OdometerAddress::new(base, digits.clone())?;
        let census = fiber_census(sys, &a, 16)?;
        report.records.push(SrRecord {
            candidate: format!("fiber over address {a}"),
            verdict: format!("cardinality {}", census.cardinality),
            normal_form: None,
            fitted_radius: None,
            detail: format!("stabilized: {}, history {:?}", census.stabilized, census.history),
        });
        let only_shifts = report.realized_group.forms.iter().all(|f| matches!(f, Some(nf) if nf.epsilon == 0));
        report.records.push(SrRecord {
            candidate: "odometer translation by the 2-adic integer ...0101".into(),
            verdict: if only_shifts { "unrealized" } else { "undetermined" }.into(),
            normal_form: None,
            fitted_radius: None,
            detail: "realized automorphisms are shifts, inducing integer translations; the address is not eventually constant".into(),
        });
        report.statement = "the odometer factor carries translations that no automorphism realizes".into();
        report.summary = if only_shifts && census.cardinality == 1 && census.stabilized {
            "not SR (evidence)"
        } else {
            "inconclusive"
        }
        .into();
        return Ok(report);
    }
    // rotation factor: shifts act by multiples of the letter frequency
    let freq = word_frequencies(sys, 1, 100_000)?;
    let alpha = freq.frequency(&Word::from_raw(vec![1]));
    let beta = 0.5;
    let nearest = (-(params.aut_radius as i64)..=params.aut_radius as i64)
        .map(|k| {
            let d = (k as f64 * alpha - beta).rem_euclid(1.0);
            d.min(1.0 - d)
        })
        .fold(f64::INFINITY, f64::min);
    let only_shifts = report.realized_group.shape == "Z";
    report.records.push(SrRecord {
        candidate: "rotation by 1/2".into(),
        verdict: if only_shifts { "unrealized" } else { "undetermined" }.into(),
        normal_form: None,
        fitted_radius: None,
        detail: format!(
            "shifts rotate by multiples of α ≈ {alpha:.6}; nearest realized rotation within radius {} misses 1/2 by {nearest:.6}",
            params.aut_radius
        ),
    });
    report.statement = "the rotation factor carries rotations that no automorphism realizes".into();
    report.summary = if only_shifts { "not SR (evidence)" } else { "inconclusive" }.into();
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoalescenceReport {
    pub system: String,
    pub radius: usize,
    pub check_len: usize,
    pub endomorphisms: usize,
    pub invertible: usize,
    /// Codes with no inverse of radius `≤ 2r`, as code JSON.
    pub flagged: Vec<Value>,
}

/// Flags every radius-`r` endomorphism without an inverse of radius `≤ 2r`.
pub fn coalescence_check(sys: &Arc<SubshiftSystem>, radius: usize, check_len: usize) -> Result<CoalescenceReport> {
    let codes = enumerate_endomorphisms(sys, radius, check_len)?;
    let inverses = codes
        .par_iter()
        .map(|c| invert(c, 2 * radius).map(|i| i.is_some()))
        .collect::<Result<Vec<bool>>>()?;
    let flagged: Vec<Value> = codes
        .iter()
        .zip(&inverses)
        .filter(|(_, &ok)| !ok)
        .map(|(c, _)| c.to_json())
        .collect();
    Ok(CoalescenceReport {
        system: sys.name().to_string(),
        radius,
        check_len,
        endomorphisms: codes.len(),
        invertible: codes.len() - flagged.len(),
        flagged,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OdometerWitness {
    pub level: usize,
    pub size: u64,
    /// Maps commuting with add-one, as values `f(0)`.
    pub translations: u64,
    pub non_translations_rejected: usize,
    pub sampled_translations: usize,
    pub generator: String,
    pub seed: u64,
    pub summary: String,
}

/// For `Z/2^k` with `n ↦ n + 1`: a bijection commuting with add-one satisfies
/// `f(n) = f(0) + n`, so it is a translation. Each of the `2^k` translations is checked to
/// commute, and random permutations are checked to commute only when they are translations.
pub fn odometer_sr_witness(level: usize, samples: usize, seed: u64) -> Result<OdometerWitness> {
    if level > 20 {
        return Err(Error::Domain(format!("odometer level {level} exceeds 20")));
    }
    let size = 1u64 << level;
    let commutes = |f: &dyn Fn(u64) -> u64, n: u64| f((n + 1) % size) == (f(n) + 1) % size;
    // exhaustive commutation check while it stays small, otherwise on a fixed probe set
    let probes: Vec<u64> = if size <= 1 << 10 {
        (0..size).collect()
    } else {
        (0..1024).map(|i| i * (size / 1024)).collect()
    };
    let translations = (0..size)
        .into_par_iter()
        .filter(|&t| probes.iter().all(|&n| commutes(&|m| (m + t) % size, n)))
        .count() as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rejected = 0;
    let mut sampled_translations = 0;
    let sample_size = size.min(1 << 12) as usize;
    for _ in 0..samples {
        let mut perm: Vec<u64> = (0..sample_size as u64).collect();
        perm.shuffle(&mut rng);
        let m = sample_size as u64;
        let f = |n: u64| perm[(n % m) as usize];
        let is_translation = (0..m).all(|n| f(n) == (f(0) + n) % m);
        let commuting = (0..m).all(|n| f((n + 1) % m) == (f(n) + 1) % m);
        if commuting != is_translation {
            return Err(Error::Integrity("a commuting bijection is not a translation".into()));
        }
        if is_translation {
            sampled_translations += 1;
        } else {
            rejected += 1;
        }
    }
    let summary = if translations == size { "SR (finite-level witness)" } else { "inconclusive" };
    Ok(OdometerWitness {
        level,
        size,
        translations,
        non_translations_rejected: rejected,
        sampled_translations,
        generator: SAMPLER.into(),
        seed,
        summary: summary.into(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinEntry {
    pub i: usize,
    pub j: usize,
    pub distinct_pairs: usize,
    pub single_valued: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub coordinates: Vec<String>,
    #[serde(rename = "L")]
    pub resolution: usize,
    #[serde(rename = "T")]
    pub steps: usize,
    pub pairs: Vec<JoinEntry>,
}

/// The orbit closure of a finite tuple of points, seen through all coordinate pairs.
pub fn finite_join(points: &[Point], resolution: usize, steps: usize) -> Result<JoinReport> {
    let mut pairs = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let w = joint_language(&points[i], &points[j], resolution, steps)?;
            pairs.push(JoinEntry { i, j, distinct_pairs: w.len(), single_valued: w.is_single_valued() });
        }
    }
    Ok(JoinReport {
        coordinates: points.iter().map(Point::spec).collect(),
        resolution,
        steps,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn morse() -> Arc<SubshiftSystem> {
        SubshiftSystem::builtin("morse").unwrap()
    }

    fn mu() -> Point {
        Point::seam_fiber(&morse(), 0).unwrap().remove(0)
    }

    #[test]
    fn diagonal_join() {
        let mu = mu();
        let w = joint_language(&mu, &mu, 8, 4000).unwrap();
        assert!(w.pairs().all(|(a, b, _)| a == b));
        assert!(w.output_map().iter().all(|(a, o)| o.len() == 1 && o.contains(&a.symbols()[8])));
        let a = mu.centered(100, 8).unwrap();
        assert!(member_pair(&w, &a, &a).unwrap());
    }

    #[test]
    fn shift_and_flip_graphs() {
        let mu = mu();
        let w = joint_language(&mu, &mu.shifted(2), 8, 4000).unwrap();
        assert!(w.output_map().iter().all(|(a, o)| o.iter().eq([a.symbols()[10]].iter())));
        let a = mu.centered(0, 8).unwrap();
        let b = mu.shifted(2).centered(0, 8).unwrap();
        assert!(member_pair(&w, &a, &b).unwrap());
        assert!(!member_pair(&w, &a, &b.flipped()).unwrap());
        assert!(member_pair(&w, &a, &b.slice(0..3)).is_err());
        let w = joint_language(&mu, &mu.flipped().unwrap(), 8, 4000).unwrap();
        assert!(w.pairs().all(|(a, b, _)| *b == a.flipped()));
    }

    #[test]
    fn projection_is_closed() {
        let mu = mu();
        let w = joint_language(&mu, &mu.shifted(3), 6, 3000).unwrap();
        let lower = joint_language(&mu, &mu.shifted(3), 5, 3000).unwrap();
        assert_eq!(w.project().unwrap().pairs().map(|(a, b, _)| (a.clone(), b.clone())).collect::<Vec<_>>(),
            lower.pairs().map(|(a, b, _)| (a.clone(), b.clone())).collect::<Vec<_>>());
        assert!(w.len() <= 3001);
    }

    #[test]
    fn dichotomy_requires_certificate() {
        let sys = morse();
        let f = Point::seam_fiber(&sys, 0).unwrap();
        let params = DichotomyParams { steps: 2048, ..Default::default() };
        assert!(matches!(dichotomy(&f[0], &f[2], &params), Err(Error::Precondition(_))));
    }

    #[test]
    fn dichotomy_extracts_shift_and_flip() {
        let sys = morse();
        let x0 = alternating_point(&sys).unwrap();
        let cert = distal_certificate(&x0, 1 << 12, 32, 12).unwrap();
        let params = DichotomyParams { steps: 1 << 13, ..Default::default() };
        let v = dichotomy_with_certificate(&x0, &x0.shifted(2), &cert, &params).unwrap();
        assert_eq!(v.case, DichotomyCase::Case2);
        assert_eq!(v.code.unwrap(), SlidingBlockCode::shift(&sys, 2).unwrap());
        let v = dichotomy_with_certificate(&x0, &x0.flipped().unwrap(), &cert, &params).unwrap();
        assert_eq!(v.normal_form, Some(NormalForm { k: 0, epsilon: 1 }));
        assert_eq!(v.fitted_radius, Some(0));
    }

    #[test]
    fn equicontinuity_on_a_shift_graph() {
        let sys = morse();
        let x0 = alternating_point(&sys).unwrap();
        let x = x0.shifted(-3);
        let w = joint_language(&x0, &x, 16, 2048).unwrap();
        let rep = equicontinuity_check(&x0, &x, &w, 8, 16).unwrap();
        assert!(rep.constant);
        assert_eq!(rep.differences[7], Some(3));
    }

    #[test]
    fn coalescence() {
        let m = coalescence_check(&morse(), 1, CHECK_LEN).unwrap();
        assert!(m.flagged.is_empty());
        assert_eq!(m.endomorphisms, 6);
        let full = coalescence_check(&SubshiftSystem::builtin("full-shift").unwrap(), 1, CHECK_LEN).unwrap();
        assert_eq!(full.endomorphisms, 256);
        assert!(!full.flagged.is_empty());
        assert!(full.flagged.contains(&json!({"radius": 1, "blocks": (0..8).map(|b| json!([format!("{:03b}", b), 0])).collect::<Vec<_>>()})));
    }

    #[test]
    fn odometer_witness_counts() {
        for (k, n) in [(0, 1), (1, 2), (3, 8), (10, 1024)] {
            let w = odometer_sr_witness(k, 16, 1).unwrap();
            assert_eq!(w.translations, n);
            assert_eq!(w.summary, "SR (finite-level witness)");
        }
        let w = odometer_sr_witness(3, 64, 1).unwrap();
        assert!(w.non_translations_rejected > 0);
        assert!(odometer_sr_witness(21, 1, 0).is_err());
    }

    #[test]
    fn join_of_three_points() {
        let mu = mu();
        let pts = vec![mu.clone(), mu.shifted(1), mu.flipped().unwrap()];
        let rep = finite_join(&pts, 4, 1000).unwrap();
        assert_eq!(rep.pairs.len(), 3);
        assert!(rep.pairs.iter().all(|e| e.single_valued));
    }
}
