//! Parsing words of a constant-length substitution subshift into substitution blocks.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::words::{SubshiftSystem, Substitution, Word};

/// Recognizability lengths above this abort system analysis.
pub const MAX_RECOGNIZABILITY: usize = 64;

/// The unique parse of a word into substitution blocks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Desubstitution {
    /// Position of the first symbol of the word inside its block.
    pub offset: usize,
    /// Number of symbols before the first complete block.
    pub lead: usize,
    /// Letters of the blocks lying entirely inside the word.
    pub preimage: Word,
}

pub(crate) fn constant_length_rule(sys: &SubshiftSystem) -> Result<(&Substitution, usize)> {
    let sub = sys
        .substitution()
        .ok_or_else(|| Error::Domain(format!("{} is not a substitution subshift", sys.name())))?;
    let ell = sub.constant_length().ok_or_else(|| {
        Error::Domain(format!("{} is not generated by a constant-length substitution", sys.name()))
    })?;
    if !sub.is_injective() {
        return Err(Error::Domain(format!("{}: substitution is not injective", sys.name())));
    }
    Ok((sub, ell))
}

/// All phases `d` for which `w` is a factor of `σ(u)` starting at offset `d`, with `u` admissible.
pub fn valid_phases(sys: &SubshiftSystem, w: &[u8]) -> Result<Vec<usize>> {
    let (sub, ell) = constant_length_rule(sys)?;
    sys.check_alphabet(w)?;
    let mut phases = Vec::new();
    for d in 0..ell {
        if phase_admits(sys, sub, ell, w, d)? {
            phases.push(d);
        }
    }
    Ok(phases)
}

fn phase_admits(
    sys: &SubshiftSystem,
    sub: &Substitution,
    ell: usize,
    w: &[u8],
    d: usize,
) -> Result<bool> {
    let n = w.len();
    let blocks = (n + d).div_ceil(ell);
    let mut choices: Vec<Vec<u8>> = Vec::with_capacity(blocks);
    for b in 0..blocks {
        let start = (b * ell) as isize - d as isize;
        let cands: Vec<u8> = (0..sub.alphabet_size())
            .filter(|&c| {
                let img = sub.image(c).symbols();
                (0..ell).all(|t| {
                    let pos = start + t as isize;
                    pos < 0 || pos >= n as isize || img[t] == w[pos as usize]
                })
            })
            .collect();
        if cands.is_empty() {
            return Ok(false);
        }
        choices.push(cands);
    }
    // Interior blocks are pinned by injectivity; only the two boundary blocks branch.
    let mut stack: Vec<Vec<u8>> = vec![Vec::with_capacity(blocks)];
    for cands in &choices {
        let mut next = Vec::with_capacity(stack.len() * cands.len());
        for prefix in &stack {
            for &c in cands {
                let mut p = prefix.clone();
                p.push(c);
                if sys.admissible(&p)? {
                    next.push(p);
                }
            }
        }
        if next.is_empty() {
            return Ok(false);
        }
        stack = next;
    }
    Ok(true)
}

/// Parses `w` into substitution blocks; the phase must be unique.
pub fn desubstitute(sys: &SubshiftSystem, w: &Word) -> Result<Desubstitution> {
    let (sub, ell) = constant_length_rule(sys)?;
    let phases = valid_phases(sys, w.symbols())?;
    let offset = match phases.as_slice() {
        [] => {
            return Err(Error::Inadmissible(format!("{w} has no parse in {}", sys.name())));
        }
        [d] => *d,
        many => {
            return Err(Error::Ambiguity(format!(
                "{w} parses at phases {many:?} in {}",
                sys.name()
            )));
        }
    };
    let lead = (ell - offset) % ell;
    let s = w.symbols();
    let mut letters = Vec::new();
    let mut pos = lead;
    while pos + ell <= s.len() {
        let block = &s[pos..pos + ell];
        let c = (0..sub.alphabet_size())
            .find(|&c| sub.image(c).symbols() == block)
            .ok_or_else(|| Error::Integrity(format!("block {block:?} of {w} has no letter")))?;
        letters.push(c);
        pos += ell;
    }
    Ok(Desubstitution { offset, lead, preimage: Word::from_raw(letters) })
}

pub(crate) fn recognizability_search(sys: &SubshiftSystem) -> Result<usize> {
    constant_length_rule(sys)?;
    for n in 1..=MAX_RECOGNIZABILITY {
        let lang = sys.language(n)?;
        let mut unique = true;
        for w in lang.words() {
            if valid_phases(sys, w.symbols())?.len() != 1 {
                unique = false;
                break;
            }
        }
        if unique {
            return Ok(n);
        }
    }
    Err(Error::Integrity(format!(
        "{}: no recognizability length up to {MAX_RECOGNIZABILITY}",
        sys.name()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    /// Independent oracle: try every phase and every preimage word over the alphabet.
    fn brute_phases(sys: &SubshiftSystem, word: &[u8]) -> Vec<usize> {
        let sub = sys.substitution().unwrap();
        let ell = sub.constant_length().unwrap();
        let mut out = vec![];
        for d in 0..ell {
            let m = (word.len() + d).div_ceil(ell);
            let found = (0..2u32.pow(m as u32)).any(|bits| {
                let u: Vec<u8> = (0..m).map(|i| ((bits >> i) & 1) as u8).collect();
                if !sys.admissible(&u).unwrap() {
                    return false;
                }
                let img = sub.substitute(&Word::new(u).unwrap()).unwrap();
                img.symbols()[d..d + word.len()] == *word
            });
            if found {
                out.push(d);
            }
        }
        out
    }

    #[test]
    fn morse_examples() {
        let sys = SubshiftSystem::builtin("morse").unwrap();
        let parse = desubstitute(&sys, &w("01101001")).unwrap();
        assert_eq!(parse.offset, 0);
        assert_eq!(parse.preimage, w("0110"));
        // same fixed point read from position 1
        let parse = desubstitute(&sys, &w("1101001")).unwrap();
        assert_eq!(parse.offset, 1);
        assert_eq!(parse.lead, 1);
        assert_eq!(parse.preimage, w("110"));
        assert!(matches!(desubstitute(&sys, &w("010")), Err(Error::Ambiguity(_))));
        assert!(matches!(desubstitute(&sys, &w("000")), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn period_doubling_example() {
        let sys = SubshiftSystem::builtin("period-doubling").unwrap();
        assert_eq!(brute_phases(&sys, w("01000101").symbols()), vec![0]);
        let parse = desubstitute(&sys, &w("01000101")).unwrap();
        assert_eq!(parse.offset, 0);
        // 01|00|01|01 with 0 -> 01, 1 -> 00
        assert_eq!(parse.preimage, w("0100"));
    }

    #[test]
    fn phases_match_brute_force() {
        for name in ["morse", "period-doubling"] {
            let sys = SubshiftSystem::builtin(name).unwrap();
            for n in 1..=9 {
                for word in sys.language(n).unwrap().words() {
                    assert_eq!(
                        valid_phases(&sys, word.symbols()).unwrap(),
                        brute_phases(&sys, word.symbols()),
                        "{name} {word}"
                    );
                }
            }
        }
    }

    #[test]
    fn recognizability_constants() {
        for name in ["morse", "period-doubling"] {
            let sys = SubshiftSystem::builtin(name).unwrap();
            let r = sys.recognizability_length().unwrap();
            assert!(r <= MAX_RECOGNIZABILITY);
            // minimality: some word one shorter is ambiguous
            let ambiguous = sys.language(r - 1).unwrap().words().iter().any(|word| {
                brute_phases(&sys, word.symbols()).len() > 1
            });
            assert!(ambiguous, "{name}: R = {r} is not minimal");
        }
        let fib = SubshiftSystem::builtin("fibonacci").unwrap();
        assert!(matches!(fib.recognizability_length(), Err(Error::Domain(_))));
    }
}
