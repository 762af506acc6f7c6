//! Acceptance criteria 1-10. Runs as a plain binary so the per-criterion lines are always
//! printed; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use minflow::codes::{classify_aut_group, enumerate_endomorphisms, invert, NormalForm, SlidingBlockCode, CHECK_LEN};
use minflow::factors::{address, fiber_census, sample_addresses, word_frequencies, OdometerAddress};
use minflow::joins::{
    alternating_point, coalescence_check, dichotomy_with_certificate, equicontinuity_check, joint_language,
    odometer_sr_witness, shift_flip_candidates, sr_report, DichotomyCase, DichotomyParams, SrParams,
};
use minflow::pairs::{asymptotic_collapse, classify_pair, distal_certificate, Direction, Verdict};
use minflow::points::Point;
use minflow::words::{SubshiftSystem, Word};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const H: usize = 1 << 16;
const L_PAIRS: usize = 64;
const L_JOIN: usize = 32;
const T_JOIN: usize = 1 << 16;

fn sys(name: &str) -> Arc<SubshiftSystem> {
    SubshiftSystem::builtin(name).expect("builtin system")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure(start.elapsed() < limit, format!("runtime {:.1?} over the target {limit:?}", start.elapsed()))
}

fn forms_up_to(r: i64, flips: bool) -> BTreeSet<NormalForm> {
    (-r..=r)
        .flat_map(|k| {
            let eps: &[u8] = if flips { &[0, 1] } else { &[0] };
            eps.iter().map(move |&epsilon| NormalForm { k, epsilon })
        })
        .collect()
}

fn c1_morse_automorphisms() -> Outcome {
    let start = Instant::now();
    let m = sys("morse");
    let mut counts = Vec::new();
    for r in 0..=3usize {
        let codes = enumerate_endomorphisms(&m, r, CHECK_LEN).map_err(|e| e.to_string())?;
        let mut autos = Vec::new();
        for c in codes {
            if invert(&c, 2 * r).map_err(|e| e.to_string())?.is_some() {
                autos.push(c);
            }
        }
        ensure(autos.len() == 2 * (2 * r + 1), format!("r={r}: {} automorphisms, expected {}", autos.len(), 2 * (2 * r + 1)))?;
        let forms: BTreeSet<NormalForm> = autos.iter().filter_map(|c| c.normal_form()).collect();
        ensure(forms == forms_up_to(r as i64, true), format!("r={r}: normal forms {forms:?}"))?;
        ensure(classify_aut_group(&autos).shape == "Z ⊕ Z/2", "group shape")?;
        counts.push(autos.len());
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("counts {counts:?} at r=0..3, all of the form S^k κ^ε, {:.1?}", start.elapsed()))
}

fn c2_morse_coalescence() -> Outcome {
    let m = sys("morse");
    let mut seen = Vec::new();
    for r in 0..=2 {
        let rep = coalescence_check(&m, r, CHECK_LEN).map_err(|e| e.to_string())?;
        ensure(rep.flagged.is_empty(), format!("r={r}: {} flagged codes", rep.flagged.len()))?;
        seen.push(rep.endomorphisms);
    }
    Ok(format!("endomorphisms {seen:?} at r=0..2, zero flagged"))
}

fn c3_sturmian_triviality() -> Outcome {
    let f = sys("fibonacci");
    let mut counts = Vec::new();
    for r in 0..=3usize {
        let codes = enumerate_endomorphisms(&f, r, CHECK_LEN).map_err(|e| e.to_string())?;
        ensure(codes.len() == 2 * r + 1, format!("r={r}: {} codes", codes.len()))?;
        let forms: BTreeSet<NormalForm> = codes.iter().filter_map(|c| c.normal_form()).collect();
        ensure(forms == forms_up_to(r as i64, false), format!("r={r}: forms {forms:?}"))?;
        counts.push(codes.len());
    }
    let report = sr_report(&f, None, &SrParams::default()).map_err(|e| e.to_string())?;
    ensure(report.summary == "not SR (evidence)", format!("summary {:?}", report.summary))?;
    Ok(format!("counts {counts:?} at r=0..3, all shifts; report: {}", report.summary))
}

fn c4_asymptotic_pairs() -> Outcome {
    let m = sys("morse");
    let fiber = Point::seam_fiber(&m, 0).map_err(|e| e.to_string())?;
    let (mu, mu1, nu) = (&fiber[0], &fiber[1], &fiber[2]);
    let a = classify_pair(mu, nu, H, L_PAIRS).map_err(|e| e.to_string())?;
    let b = classify_pair(nu, mu1, H, L_PAIRS).map_err(|e| e.to_string())?;
    ensure(a.verdict == Verdict::PositivelyAsymptotic && a.witness_n.is_some(), format!("(μ, ν): {a:?}"))?;
    ensure(b.verdict == Verdict::NegativelyAsymptotic && b.witness_n.is_some(), format!("(ν, μ′): {b:?}"))?;
    Ok(format!(
        "(μ, ν) {} from n={}, (ν, μ′) {} up to n={}",
        a.verdict,
        a.witness_n.unwrap_or_default(),
        b.verdict,
        b.witness_n.unwrap_or_default()
    ))
}

fn c5_collapse_patterns() -> Outcome {
    let m = sys("morse");
    let fiber = Point::seam_fiber(&m, 0).map_err(|e| e.to_string())?;
    let fwd = asymptotic_collapse(&fiber, Direction::Forward, H, L_PAIRS).map_err(|e| e.to_string())?;
    let bwd = asymptotic_collapse(&fiber, Direction::Backward, H, L_PAIRS).map_err(|e| e.to_string())?;
    for p in [&fwd, &bwd] {
        ensure(p.classes.len() == 2 && p.classes.iter().all(|c| c.len() == 2), format!("{:?} is not 2+2", p.classes))?;
    }
    ensure(fwd.classes != bwd.classes, "forward and backward partitions coincide")?;
    Ok(format!("forward {:?}, backward {:?}", fwd.classes, bwd.classes))
}

fn eventually_constant(a: &OdometerAddress, tail: usize) -> bool {
    let d = a.digits();
    d[d.len() - tail..].iter().all(|&x| x == d[d.len() - 1])
}

fn c6_odometer_factor() -> Outcome {
    let start = Instant::now();
    let m = sys("morse");
    let fiber = Point::seam_fiber(&m, 0).map_err(|e| e.to_string())?;
    let x0 = alternating_point(&m).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x0d0_e7e5);
    let bases = [
        (&fiber[0], address(&fiber[0], 16).map_err(|e| e.to_string())?),
        (&x0, address(&x0, 16).map_err(|e| e.to_string())?),
    ];
    for i in 0..10_000 {
        let (p, base) = &bases[i % 2];
        let k = rng.gen_range(0..=16usize);
        let shift = rng.gen_range(-(1i64 << 19)..(1i64 << 19));
        let got = address(&p.shifted(shift), k).map_err(|e| e.to_string())?;
        let want = base.truncate(k).add(shift as i128).map_err(|e| e.to_string())?;
        ensure(got == want, format!("shift {shift} at k={k}: {got} != {want}"))?;
    }
    let seam = fiber_census(&m, &OdometerAddress::zero(2, 16).map_err(|e| e.to_string())?, 16).map_err(|e| e.to_string())?;
    ensure(seam.stabilized && seam.cardinality == 4 && seam.quotient_cardinality == 2, format!("seam census {seam:?}"))?;
    let mut tested = 0;
    for a in sample_addresses(2, 24, 200, 42).map_err(|e| e.to_string())? {
        if eventually_constant(&a, 6) {
            continue;
        }
        let c = fiber_census(&m, &a, 16).map_err(|e| e.to_string())?;
        ensure(c.stabilized && c.quotient_cardinality == 1, format!("address {a}: {:?}", c.history))?;
        tested += 1;
        if tested == 20 {
            break;
        }
    }
    ensure(tested == 20, "fewer than 20 sampled addresses")?;
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "10^4 equivariance checks exact; seam census 4 (quotient 2); 20 sampled addresses quotient 1; {:.1?}",
        start.elapsed()
    ))
}

fn c7_c8_dichotomy() -> (Outcome, Outcome) {
    let start = Instant::now();
    let m = sys("morse");
    let run = || -> Result<(Vec<String>, Vec<String>), String> {
        let x0 = alternating_point(&m).map_err(|e| e.to_string())?;
        let cert = distal_certificate(&x0, H, L_JOIN, 12).map_err(|e| e.to_string())?;
        ensure(cert.granted(), format!("x0 certificate: {}", cert.reason))?;
        let params = DichotomyParams { resolution: L_JOIN, steps: T_JOIN, ..Default::default() };
        let candidates = shift_flip_candidates(&x0, 8).map_err(|e| e.to_string())?;
        let mut bad7 = Vec::new();
        let mut bad8 = Vec::new();
        for (i, x) in candidates.iter().enumerate() {
            let k = i as i64 % 17 - 8;
            let epsilon = u8::from(i >= 17);
            let v = dichotomy_with_certificate(&x0, x, &cert, &params).map_err(|e| e.to_string())?;
            let want = SlidingBlockCode::normal(&m, NormalForm { k, epsilon }).map_err(|e| e.to_string())?;
            if v.case != DichotomyCase::Case2 || v.code.as_ref() != Some(&want) {
                bad7.push(format!("{}: {:?} {}", x.spec(), v.case, v.note));
            }
            let w = joint_language(&x0, x, L_JOIN, T_JOIN).map_err(|e| e.to_string())?;
            let eq = equicontinuity_check(&x0, x, &w, 12, 64).map_err(|e| e.to_string())?;
            if !eq.constant {
                bad8.push(format!("{}: {:?}", x.spec(), eq.differences));
            }
        }
        Ok((bad7, bad8))
    };
    match run() {
        Err(e) => (Err(e.clone()), Err(e)),
        Ok((bad7, bad8)) => {
            let elapsed = start.elapsed();
            let c7 = if !bad7.is_empty() {
                Err(bad7.join("; "))
            } else if elapsed >= Duration::from_secs(300) {
                Err(format!("runtime {elapsed:.1?} over 5 min"))
            } else {
                Ok(format!("34 candidates, all Case2 with code S^k κ^ε as expected; {elapsed:.1?} including criterion 8"))
            };
            let c8 = if bad8.is_empty() {
                Ok("address difference constant mod 2^k for k ≤ 12 in all 34 joint languages".into())
            } else {
                Err(bad8.join("; "))
            };
            (c7, c8)
        }
    }
}

fn c9_measure_invariance() -> Outcome {
    let m = sys("morse");
    let steps = 1 << 18;
    let t = word_frequencies(&m, 2, steps).map_err(|e| e.to_string())?;
    let dev = t.max_deviation(&t, Word::flipped);
    ensure(dev <= 2, format!("flip deviation {dev} counts over {steps} steps"))?;
    for k in 0..=18 {
        let t1 = word_frequencies(&m, 1, 1 << k).map_err(|e| e.to_string())?;
        let zero: Word = "0".parse().map_err(|e: minflow::Error| e.to_string())?;
        if k > 0 {
            ensure(2 * t1.count(&zero) == 1 << k, format!("freq(0) on 2^{k} is {}/{}", t1.count(&zero), 1 << k))?;
        }
    }
    Ok(format!("max |count(w) - count(κw)| = {dev} ≤ 2 at steps 2^18; freq(0) = 1/2 exactly on 2^1..2^18"))
}

fn c10_odometer_witness() -> Outcome {
    let mut seen = Vec::new();
    for k in 0..=10 {
        let w = odometer_sr_witness(k, 32, 7).map_err(|e| e.to_string())?;
        ensure(w.translations == 1 << k, format!("k={k}: {} translations", w.translations))?;
        ensure(w.summary == "SR (finite-level witness)", format!("k={k}: {}", w.summary))?;
        seen.push(w.translations);
    }
    Ok(format!("translations {seen:?} for k=0..10"))
}

fn main() -> ExitCode {
    let (c7, c8) = c7_c8_dichotomy();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "Morse automorphism census", c1_morse_automorphisms()),
        (2, "Morse coalescence", c2_morse_coalescence()),
        (3, "Sturmian triviality", c3_sturmian_triviality()),
        (4, "asymptotic pairs", c4_asymptotic_pairs()),
        (5, "collapse patterns", c5_collapse_patterns()),
        (6, "odometer factor", c6_odometer_factor()),
        (7, "dichotomy experiment", c7),
        (8, "equicontinuity pruning", c8),
        (9, "measure invariance", c9_measure_invariance()),
        (10, "odometer SR witness", c10_odometer_witness()),
    ];
    let mut failed = 0;
    for (n, name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("criterion {n:>2} [{name}]: PASS - {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} [{name}]: FAIL - {why}");
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
