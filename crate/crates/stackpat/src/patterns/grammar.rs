//! Text grammar for patterns.
//!
//! ```text
//! pattern := WORD
//!          | "bv(" WORD ";S={" ints "};T={" ints "})"
//!          | "mesh(" WORD (";" "(" int "," int ")" ("," ...)*)? ")"
//!          | "cmesh(" WORD (";" "(" int "," ("gap"|"at") ":" int ")" ...)? ")"
//!          | "barred(" WORD ";pos={" ints "})"
//!          | "path(" (U|D|H|H2)* ")"
//!          | "@" NAME
//! ```
//!
//! WORD is either compact digits or space-separated integers.

use std::collections::BTreeSet;

use super::{Pattern, PatternError, Row, Step};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PatternError> {
        Err(PatternError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek() == Some(b' ') {
            self.pos += 1;
        }
    }

    fn eat(&mut self, lit: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), PatternError> {
        if self.eat(lit) {
            Ok(())
        } else {
            self.err(format!("expected `{lit}`"))
        }
    }

    fn int(&mut self) -> Result<usize, PatternError> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    /// Letters up to the next `;`, `)` or end of input.
    fn word(&mut self) -> Result<Vec<u32>, PatternError> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c == b';' || c == b')' {
                break;
            }
            if !(c.is_ascii_digit() || c == b' ') {
                return self.err(format!("unexpected `{}` in word", c as char));
            }
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let tokens: Vec<&str> = text.split_whitespace().collect();
        let letters: Vec<u32> = match tokens.as_slice() {
            [] => {
                self.pos = start;
                return self.err("empty pattern body");
            }
            [one] => one.bytes().map(|b| u32::from(b - b'0')).collect(),
            many => many
                .iter()
                .map(|t| t.parse::<u32>())
                .collect::<Result<_, _>>()
                .or_else(|_| {
                    self.pos = start;
                    self.err("letter too large")
                })?,
        };
        if letters.contains(&0) {
            self.pos = start;
            return self.err("letters must be positive");
        }
        Ok(letters)
    }

    /// `{a,b,...}` possibly empty.
    fn int_set(&mut self) -> Result<BTreeSet<usize>, PatternError> {
        self.expect("{")?;
        let mut out = BTreeSet::new();
        if self.eat("}") {
            return Ok(out);
        }
        loop {
            out.insert(self.int()?);
            if self.eat("}") {
                return Ok(out);
            }
            self.expect(",")?;
        }
    }

    fn end(&mut self) -> Result<(), PatternError> {
        self.skip_ws();
        if self.pos != self.src.len() {
            return self.err("trailing input");
        }
        Ok(())
    }

    fn pattern(&mut self) -> Result<Pattern, PatternError> {
        self.skip_ws();
        let p = if self.eat("@") {
            let start = self.pos;
            while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            Pattern::named(name).ok_or_else(|| PatternError::UnknownName(name.to_string()))?
        } else if self.eat("bv(") {
            let body = self.word()?;
            self.expect(";")?;
            self.expect("S=")?;
            let s = self.int_set()?;
            self.expect(";")?;
            self.expect("T=")?;
            let t = self.int_set()?;
            self.expect(")")?;
            Pattern::Bivincular { body, s, t }
        } else if self.eat("mesh(") {
            let body = self.word()?;
            let mut boxes = BTreeSet::new();
            if self.eat(";") {
                loop {
                    self.expect("(")?;
                    let c = self.int()?;
                    self.expect(",")?;
                    let r = self.int()?;
                    self.expect(")")?;
                    boxes.insert((c, r));
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect(")")?;
            Pattern::Mesh { body, boxes }
        } else if self.eat("cmesh(") {
            let body = self.word()?;
            let mut regions = BTreeSet::new();
            if self.eat(";") {
                loop {
                    self.expect("(")?;
                    let c = self.int()?;
                    self.expect(",")?;
                    let row = if self.eat("gap:") {
                        Row::Gap(self.int()?)
                    } else if self.eat("at:") {
                        let at = self.pos;
                        let j = self.int()?;
                        if j == 0 {
                            return Err(PatternError::Syntax { pos: at, msg: "level rows start at 1".into() });
                        }
                        Row::At(j)
                    } else {
                        return self.err("expected `gap:` or `at:`");
                    };
                    self.expect(")")?;
                    regions.insert((c, row));
                    if !self.eat(",") {
                        break;
                    }
                }
            }
            self.expect(")")?;
            Pattern::CayleyMesh { body, regions }
        } else if self.eat("barred(") {
            let body = self.word()?;
            self.expect(";")?;
            self.expect("pos=")?;
            let bars = self.int_set()?;
            self.expect(")")?;
            Pattern::Barred { body, bars }
        } else if self.eat("path(") {
            let mut steps = Vec::new();
            loop {
                self.skip_ws();
                match self.peek() {
                    Some(b'U') => steps.push(Step::U),
                    Some(b'D') => steps.push(Step::D),
                    Some(b'H') => {
                        if self.src.get(self.pos + 1) == Some(&b'2') {
                            self.pos += 1;
                            steps.push(Step::H2);
                        } else {
                            steps.push(Step::H);
                        }
                    }
                    Some(b')') => break,
                    _ => return self.err("expected a step U, D, H or H2"),
                }
                self.pos += 1;
            }
            self.expect(")")?;
            Pattern::PathConsec(steps)
        } else {
            Pattern::Classical(self.word()?)
        };
        p.validate()?;
        Ok(p)
    }
}

pub fn parse_pattern(text: &str) -> Result<Pattern, PatternError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let pat = p.pattern()?;
    p.end()?;
    Ok(pat)
}

/// Splits on commas outside any brackets, reporting each piece's offset.
pub fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &text[start..]));
    out
}

/// Parses a comma-separated pattern list such as `132,@mu`.
pub fn parse_pattern_list(text: &str) -> Result<Vec<Pattern>, PatternError> {
    split_top_level(text)
        .into_iter()
        .map(|(off, piece)| {
            parse_pattern(piece).map_err(|e| match e {
                PatternError::Syntax { pos, msg } => PatternError::Syntax { pos: pos + off, msg },
                other => other,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_examples() {
        assert_eq!(parse_pattern("mesh(132;(0,2),(2,0),(2,1))").unwrap(), Pattern::named("mu").unwrap());
        assert_eq!(parse_pattern("231").unwrap(), Pattern::Classical(vec![2, 3, 1]));
        assert_eq!(parse_pattern("bv(132;S={0,2};T={})").unwrap(), Pattern::named("xi").unwrap());
    }

    #[test]
    fn named_round_trip() {
        for n in ["xi", "mu", "f", "zeta", "a", "b"] {
            let p = Pattern::named(n).unwrap();
            assert_eq!(parse_pattern(&p.to_string()).unwrap(), p, "{p}");
            assert_eq!(parse_pattern(&format!("@{n}")).unwrap(), p);
        }
    }

    #[test]
    fn spaced_word_and_path() {
        assert_eq!(parse_pattern("1 10 2 3 4 5 6 7 8 9").unwrap().body().unwrap()[1], 10);
        assert_eq!(
            parse_pattern("path(UH2D)").unwrap(),
            Pattern::PathConsec(vec![Step::U, Step::H2, Step::D])
        );
    }

    #[test]
    fn errors_carry_position() {
        match parse_pattern("mesh(132;(0,2)x") {
            Err(PatternError::Syntax { pos, .. }) => assert_eq!(pos, 14),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pattern("mesh(132;(9,0))"), Err(PatternError::OutOfRange { .. })));
        assert!(matches!(parse_pattern("barred(123;pos={1,2,3})"), Err(PatternError::DegenerateBars)));
        assert!(matches!(parse_pattern("barred(123;pos={})"), Err(PatternError::DegenerateBars)));
        assert!(matches!(parse_pattern("13"), Err(PatternError::BodyNotCayley(_))));
        assert!(matches!(parse_pattern("@nope"), Err(PatternError::UnknownName(_))));
    }

    #[test]
    fn list_splits_at_depth_zero() {
        let v = parse_pattern_list("132,mesh(132;(0,2),(2,0)),@xi").unwrap();
        assert_eq!(v.len(), 3);
        match parse_pattern_list("132,1x") {
            Err(PatternError::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
    }
}
