//! Point spec mini-syntax.
//!
//! ```text
//! point    := "splice(" left "," onesided ")"
//!           | "shift(" point "," integer ")"
//!           | "flip(" point ")"
//!           | "fix(" digit ")" | "fix" digit          -- splice(rev(fixd),fixd)
//!           | "addr(" digits "," digit ")"            -- address digits, sheet
//!           | "tower(" digits "," word "," integer ")"
//! left     := "rev(" onesided ")"
//! onesided := "fix(" digit ")" | "fix" digit | "flip(" onesided ")"
//! digits   := (digit+ ("^" integer)?)+                -- "01^3" is "010101"
//! ```
//!
//! Whitespace is ignored.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::points::{point_from_address, OneSidedSpec, Point};
use crate::words::{SubshiftSystem, Word};

struct Cursor<'a> {
    src: &'a str,
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, chars: src.chars().filter(|c| !c.is_whitespace()).collect(), pos: 0 }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {} in point spec {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        let n = s.chars().count();
        if self.chars.len() >= self.pos + n && self.chars[self.pos..self.pos + n].iter().copied().eq(s.chars()) {
            self.pos += n;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        if self.eat(s) {
            Ok(())
        } else {
            Err(self.err(&format!("expected {s:?}")))
        }
    }

    fn digit(&mut self) -> Result<u8> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                self.pos += 1;
                Ok(c as u8 - b'0')
            }
            _ => Err(self.err("expected a digit")),
        }
    }

    fn digit_run(&mut self) -> Vec<u8> {
        let mut out = Vec::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            out.push(c as u8 - b'0');
            self.pos += 1;
        }
        out
    }

    fn integer(&mut self) -> Result<i64> {
        let neg = self.eat("-");
        if !neg {
            self.eat("+");
        }
        let digits = self.digit_run();
        if digits.is_empty() {
            return Err(self.err("expected an integer"));
        }
        let mut v: i64 = 0;
        for d in digits {
            v = v
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as i64))
                .ok_or_else(|| self.err("integer overflow"))?;
        }
        Ok(if neg { -v } else { v })
    }

    fn digit_string(&mut self) -> Result<Vec<u8>> {
        let mut out = Vec::new();
        loop {
            let run = self.digit_run();
            if run.is_empty() {
                break;
            }
            if self.eat("^") {
                let times = self.integer()?;
                if !(0..=4096).contains(&times) {
                    return Err(self.err("repetition count out of range"));
                }
                for _ in 0..times {
                    out.extend_from_slice(&run);
                }
            } else {
                out.extend(run);
            }
        }
        Ok(out)
    }

    fn fix(&mut self) -> Result<Option<u8>> {
        if !self.eat("fix") {
            return Ok(None);
        }
        if self.eat("(") {
            let d = self.digit()?;
            self.expect(")")?;
            Ok(Some(d))
        } else {
            self.digit().map(Some)
        }
    }

    fn one_sided(&mut self) -> Result<OneSidedSpec> {
        if let Some(seed) = self.fix()? {
            return Ok(OneSidedSpec::fixed(seed));
        }
        if self.eat("flip(") {
            let inner = self.one_sided()?;
            self.expect(")")?;
            return Ok(inner.flipped());
        }
        Err(self.err("expected a one-sided spec (fixD or flip(...))"))
    }

    fn point(&mut self, sys: &Arc<SubshiftSystem>) -> Result<Point> {
        if self.eat("splice(") {
            self.expect("rev(")?;
            let left = self.one_sided()?;
            self.expect(")")?;
            self.expect(",")?;
            let right = self.one_sided()?;
            self.expect(")")?;
            return Point::splice(sys, left, right);
        }
        if self.eat("shift(") {
            let base = self.point(sys)?;
            self.expect(",")?;
            let k = self.integer()?;
            self.expect(")")?;
            return Ok(base.shifted(k));
        }
        if self.eat("flip(") {
            let base = self.point(sys)?;
            self.expect(")")?;
            return base.flipped();
        }
        if self.eat("addr(") {
            let digits = self.digit_string()?;
            self.expect(",")?;
            let sheet = self.digit()?;
            self.expect(")")?;
            return point_from_address(sys, &digits, sheet);
        }
        if self.eat("tower(") {
            let digits = self.digit_string()?;
            self.expect(",")?;
            let core = Word::new(self.digit_run())?;
            self.expect(",")?;
            let idx = self.integer()?;
            self.expect(")")?;
            let idx = usize::try_from(idx).map_err(|_| self.err("negative core index"))?;
            return Point::block_tower(sys, &digits, core, idx);
        }
        if let Some(seed) = self.fix()? {
            let q = OneSidedSpec::fixed(seed);
            return Point::splice(sys, q, q);
        }
        Err(self.err("expected splice, shift, flip, fix, addr or tower"))
    }
}

/// Parses a point spec for `sys`.
pub fn parse_point(sys: &Arc<SubshiftSystem>, spec: &str) -> Result<Point> {
    let mut cur = Cursor::new(spec);
    let p = cur.point(sys)?;
    if cur.pos != cur.chars.len() {
        return Err(cur.err("trailing input"));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_form() {
        let sys = SubshiftSystem::builtin("morse").unwrap();
        for (src, canonical) in [
            ("fix(0)", "splice(rev(fix0),fix0)"),
            ("splice(rev(fix0),fix0)", "splice(rev(fix0),fix0)"),
            ("splice(rev(flip(fix0)), fix0)", "splice(rev(flip(fix0)),fix0)"),
            ("shift(fix0,-3)", "shift(splice(rev(fix0),fix0),-3)"),
            ("flip(shift(fix(0),2))", "flip(shift(splice(rev(fix0),fix0),2))"),
            ("addr(01^3,1)", "addr(010101,1)"),
            ("tower(000,01,1)", "tower(000,01,1)"),
        ] {
            let p = parse_point(&sys, src).unwrap();
            assert_eq!(p.spec(), canonical);
            assert_eq!(parse_point(&sys, &p.spec()).unwrap().spec(), canonical);
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        let sys = SubshiftSystem::builtin("morse").unwrap();
        for bad in ["", "fix", "splice(fix0,fix0)", "shift(fix0)", "addr(012,0)", "fix0)", "mu"] {
            assert!(parse_point(&sys, bad).is_err(), "{bad}");
        }
        let fib = SubshiftSystem::builtin("fibonacci").unwrap();
        assert!(matches!(parse_point(&fib, "fix1"), Err(Error::Construction(_))));
    }
}
