//! Finite-horizon classification of point pairs.
//!
//! Two points are compared on the centered windows `[n - L, n + L]` for `|n| ≤ H`.
//! Asymptotic and proximal verdicts carry a witness time; distal verdicts carry the
//! minimum number of disagreements over the horizon. No verdict claims more than the
//! observed horizon supports.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factors::{address, fiber_census, OdometerAddress};
use crate::points::{Point, HORIZON_CAP};

pub const DEFAULT_HORIZON: usize = 1 << 16;
pub const DEFAULT_RESOLUTION: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    PositivelyAsymptotic,
    NegativelyAsymptotic,
    DoublyAsymptotic,
    ProximalWithinHorizon,
    DistalUpToHorizon,
}

impl Verdict {
    pub fn is_asymptotic(self) -> bool {
        matches!(self, Verdict::PositivelyAsymptotic | Verdict::NegativelyAsymptotic | Verdict::DoublyAsymptotic)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::PositivelyAsymptotic => "positively-asymptotic",
            Verdict::NegativelyAsymptotic => "negatively-asymptotic",
            Verdict::DoublyAsymptotic => "doubly-asymptotic",
            Verdict::ProximalWithinHorizon => "proximal-within-horizon",
            Verdict::DistalUpToHorizon => "distal-up-to-horizon",
        })
    }
}

/// A pair verdict with its evidence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairClassification {
    pub verdict: Verdict,
    #[serde(rename = "H")]
    pub horizon: usize,
    #[serde(rename = "L")]
    pub resolution: usize,
    /// Asymptotic: the time from which (or up to which) all windows agree.
    /// Proximal: a time of full window agreement, smallest `|n|` first.
    pub witness_n: Option<i64>,
    /// Distal: minimum disagreement count over the horizon.
    pub separation: Option<usize>,
}

fn check_params(horizon: usize, resolution: usize) -> Result<()> {
    if horizon as i64 + resolution as i64 > HORIZON_CAP {
        return Err(Error::Resource(format!(
            "horizon {horizon} plus resolution {resolution} exceeds the cap {HORIZON_CAP}"
        )));
    }
    Ok(())
}

fn same_system(p: &Point, q: &Point) -> Result<()> {
    if p.system().name() != q.system().name() {
        return Err(Error::Domain(format!(
            "points of different systems: {} and {}",
            p.system().name(),
            q.system().name()
        )));
    }
    Ok(())
}

/// The window `[-H-L, H+L]` of `p`.
fn span(p: &Point, horizon: usize, resolution: usize) -> Result<Vec<u8>> {
    let e = (horizon + resolution) as i64;
    Ok(p.window(-e, e)?.into_symbols())
}

/// Classifies from the two spans returned by [`span`].
fn classify_spans(a: &[u8], b: &[u8], horizon: usize, resolution: usize) -> PairClassification {
    let h = horizon as i64;
    let l = resolution as i64;
    let base = -(h + l);
    let diff: Vec<i64> = a
        .iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(i, _)| base + i as i64)
        .collect();
    let result = |verdict, witness_n, separation| PairClassification {
        verdict,
        horizon,
        resolution,
        witness_n,
        separation,
    };
    let (Some(&first), Some(&last)) = (diff.first(), diff.last()) else {
        return result(Verdict::DoublyAsymptotic, Some(0), None);
    };
    let n0 = last + l + 1;
    let n1 = first - l - 1;
    let positive = n0 <= h / 2;
    let negative = n1 >= -(h / 2);
    match (positive, negative) {
        (true, true) => return result(Verdict::DoublyAsymptotic, Some(n0), None),
        (true, false) => return result(Verdict::PositivelyAsymptotic, Some(n0), None),
        (false, true) => return result(Verdict::NegativelyAsymptotic, Some(n1), None),
        _ => {}
    }
    // prefix sums of disagreements over the span
    let mut acc = vec![0usize; a.len() + 1];
    for (i, (x, y)) in a.iter().zip(b).enumerate() {
        acc[i + 1] = acc[i] + usize::from(x != y);
    }
    let count = |n: i64| {
        let lo = (n - l - base) as usize;
        let hi = (n + l - base) as usize + 1;
        acc[hi] - acc[lo]
    };
    let mut best = usize::MAX;
    for m in 0..=h {
        for n in if m == 0 { vec![0] } else { vec![m, -m] } {
            let c = count(n);
            if c == 0 {
                return result(Verdict::ProximalWithinHorizon, Some(n), None);
            }
            best = best.min(c);
        }
    }
    result(Verdict::DistalUpToHorizon, None, Some(best))
}

/// Classifies `(p, q)` at horizon `H` and resolution `L`.
pub fn classify_pair(p: &Point, q: &Point, horizon: usize, resolution: usize) -> Result<PairClassification> {
    same_system(p, q)?;
    check_params(horizon, resolution)?;
    let a = span(p, horizon, resolution)?;
    let b = span(q, horizon, resolution)?;
    Ok(classify_spans(&a, &b, horizon, resolution))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl std::str::FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "forward" => Ok(Direction::Forward),
            "backward" => Ok(Direction::Backward),
            other => Err(Error::Parse(format!("direction {other:?} is not forward or backward"))),
        }
    }
}

/// A partition of a fiber into classes of points asymptotic in one direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CollapsePattern {
    pub direction: Direction,
    /// Indices into the fiber; classes sorted by their least element.
    pub classes: Vec<Vec<usize>>,
    /// The same classes as point specs.
    pub labels: Vec<Vec<String>>,
}

/// Merges fiber points whose pair is asymptotic in `direction` (union-find).
pub fn asymptotic_collapse(fiber: &[Point], direction: Direction, horizon: usize, resolution: usize) -> Result<CollapsePattern> {
    check_params(horizon, resolution)?;
    if let Some(p) = fiber.first() {
        for q in &fiber[1..] {
            same_system(p, q)?;
        }
    }
    let spans = fiber.iter().map(|p| span(p, horizon, resolution)).collect::<Result<Vec<_>>>()?;
    let mut parent: Vec<usize> = (0..fiber.len()).collect();
    fn root(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for i in 0..fiber.len() {
        for j in i + 1..fiber.len() {
            let v = classify_spans(&spans[i], &spans[j], horizon, resolution).verdict;
            let merge = match direction {
                Direction::Forward => matches!(v, Verdict::PositivelyAsymptotic | Verdict::DoublyAsymptotic),
                Direction::Backward => matches!(v, Verdict::NegativelyAsymptotic | Verdict::DoublyAsymptotic),
            };
            if merge {
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..fiber.len() {
        let r = root(&mut parent, i);
        match classes.iter_mut().find(|c| c[0] == r) {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    let labels = classes.iter().map(|c| c.iter().map(|&i| fiber[i].spec()).collect()).collect();
    Ok(CollapsePattern { direction, classes, labels })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateStatus {
    Granted,
    Denied,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub point: String,
    pub verdict: Verdict,
}

/// Finite-scale evidence that a point is proximal only to itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistalCertificate {
    pub point: String,
    pub status: CertificateStatus,
    #[serde(rename = "H")]
    pub horizon: usize,
    #[serde(rename = "L")]
    pub resolution: usize,
    pub level: usize,
    pub address: Option<OdometerAddress>,
    pub census_cardinality: Option<usize>,
    /// Level of the block tower the co-fiber candidates are read from.
    pub candidate_level: Option<usize>,
    pub candidates: Vec<Candidate>,
    pub reason: String,
}

impl DistalCertificate {
    pub fn granted(&self) -> bool {
        self.status == CertificateStatus::Granted
    }
}

/// Checks every point of `p`'s odometer fiber against `p` at horizon `H`.
///
/// The fiber census at level `k` fixes the centered windows; the co-fiber candidates are
/// the block towers over the level-`K` address of `p`, with `K ≥ k` the least level whose
/// blocks cover `2(H+L)+1` coordinates, so that `[-H-L, H+L]` meets at most two blocks.
pub fn distal_certificate(p: &Point, horizon: usize, resolution: usize, level: usize) -> Result<DistalCertificate> {
    check_params(horizon, resolution)?;
    let sys = p.system();
    let mut cert = DistalCertificate {
        point: p.spec(),
        status: CertificateStatus::Inconclusive,
        horizon,
        resolution,
        level,
        address: None,
        census_cardinality: None,
        candidate_level: None,
        candidates: Vec::new(),
        reason: String::new(),
    };
    let a = address(p, level)?;
    let census = fiber_census(sys, &a, resolution)?;
    cert.address = Some(a.clone());
    cert.census_cardinality = Some(census.cardinality);
    if !census.stabilized {
        cert.reason = format!("census not stabilized at level {level}: history {:?}", census.history);
        return Ok(cert);
    }
    let ell = a.base() as u128;
    let reach = (horizon + resolution) as i128;
    let mut top = level;
    while ell.pow(top as u32) < 2 * reach as u128 + 1 {
        top += 1;
    }
    let full = address(p, top)?;
    cert.candidate_level = Some(top);
    let block = full.modulus() as i128;
    let offset = full.value() as i128;
    let b_lo = (offset - reach).div_euclid(block);
    let b_hi = (offset + reach).div_euclid(block);
    let span_len = (b_hi - b_lo + 1) as usize;
    let core_index = (-b_lo) as usize;
    let own = span(p, horizon, resolution)?;
    let mut all_distal = true;
    for u in sys.language(span_len)?.words() {
        let q = Point::block_tower(sys, full.digits(), u.clone(), core_index)?;
        let window = q.centered(0, resolution)?;
        if census.windows.binary_search(&window).is_err() {
            return Err(Error::Integrity(format!(
                "candidate {} has a center window outside the fiber census",
                q.spec()
            )));
        }
        let theirs = span(&q, horizon, resolution)?;
        if theirs == own {
            continue;
        }
        let c = classify_spans(&own, &theirs, horizon, resolution);
        all_distal &= c.verdict == Verdict::DistalUpToHorizon;
        cert.candidates.push(Candidate { point: q.spec(), verdict: c.verdict });
    }
    if all_distal {
        cert.status = CertificateStatus::Granted;
        cert.reason = format!("all {} co-fiber candidates are distal up to H={horizon}", cert.candidates.len());
    } else {
        cert.status = CertificateStatus::Denied;
        cert.reason = "a co-fiber candidate is not distal".into();
    }
    Ok(cert)
}

/// A point of the level-`k` odometer itself: every fiber is a singleton, so the
/// certificate holds without inspection.
pub fn odometer_certificate(z: &OdometerAddress, horizon: usize) -> DistalCertificate {
    DistalCertificate {
        point: format!("odometer({z})"),
        status: CertificateStatus::Granted,
        horizon,
        resolution: 0,
        level: z.level(),
        address: Some(z.clone()),
        census_cardinality: Some(1),
        candidate_level: None,
        candidates: Vec::new(),
        reason: "equicontinuous system: every fiber is a singleton".into(),
    }
}
