//! Word grammar:
//!
//! ```text
//! word   := item*
//! item   := atom ('^' signed-int)*
//! atom   := letter | '[' word ',' word ']' | '(' word ')'
//! letter := [a-z] | [A-Z] | 'g' digits | 'G' digits
//! ```
//!
//! Whitespace is ignored. Upper case is the inverse. `g12` / `G12` name
//! generator 12 and exist for ranks above 26.

use super::{check_rank, Letter, ReducedWord, WordError};

/// Parsed words longer than this are rejected (guards `x^1000000000`).
const MAX_PARSED_LEN: usize = 1 << 24;

pub fn parse_word(text: &str, rank: usize) -> Result<ReducedWord, WordError> {
    check_rank(rank)?;
    let mut p = Parser { src: text.as_bytes(), pos: 0, rank };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected character"));
    }
    Ok(w)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    rank: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> WordError {
        let found = match self.src.get(self.pos) {
            Some(&c) => alloc::format!("{message} '{}'", c as char),
            None => alloc::format!("{message} (end of input)"),
        };
        WordError::Syntax { position: self.pos, message: found }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected '{}', found", c as char)))
        }
    }

    fn word(&mut self) -> Result<ReducedWord, WordError> {
        let mut acc = ReducedWord::identity(self.rank);
        while let Some(c) = self.peek() {
            if matches!(c, b',' | b']' | b')') {
                break;
            }
            let item = self.item()?;
            acc = acc.mul_unchecked(&item);
            check_len(acc.len())?;
        }
        Ok(acc)
    }

    fn item(&mut self) -> Result<ReducedWord, WordError> {
        let mut w = self.atom()?;
        while self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.signed_int()?;
            let core_len = w.cyclically_reduce().core.len() as u128;
            check_len((core_len * n.unsigned_abs() as u128).min(u128::from(u64::MAX)) as usize)?;
            w = w.pow(n);
        }
        Ok(w)
    }

    fn atom(&mut self) -> Result<ReducedWord, WordError> {
        match self.peek() {
            Some(b'[') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b',')?;
                let v = self.word()?;
                self.expect(b']')?;
                Ok(super::commutator_unchecked(&u, &v))
            }
            Some(b'(') => {
                self.pos += 1;
                let u = self.word()?;
                self.expect(b')')?;
                Ok(u)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                self.pos += 1;
                let inverse = c.is_ascii_uppercase();
                let index = if matches!(c, b'g' | b'G') && self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.digits()?
                } else {
                    (c.to_ascii_lowercase() - b'a') as usize + 1
                };
                if index == 0 || index > self.rank {
                    return Err(WordError::GeneratorOutOfRange { index, rank: self.rank, position: at });
                }
                Ok(ReducedWord::from_reduced_unchecked(self.rank, alloc::vec![Letter::new(index, inverse)]))
            }
            _ => Err(self.error("expected a letter, '[' or '(', found")),
        }
    }

    fn digits(&mut self) -> Result<usize, WordError> {
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let s = core::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse::<usize>().map_err(|_| {
            self.pos = start;
            self.error("integer out of range at")
        })
    }

    fn signed_int(&mut self) -> Result<i64, WordError> {
        let neg = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.skip_ws();
        if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            return Err(self.error("expected an integer exponent, found"));
        }
        let start = self.pos;
        let n = self.digits()? as i64;
        if n > i32::MAX as i64 {
            self.pos = start;
            return Err(self.error("exponent too large at"));
        }
        Ok(if neg { -n } else { n })
    }
}

fn check_len(n: usize) -> Result<(), WordError> {
    if n > MAX_PARSED_LEN {
        Err(WordError::TooLong(n))
    } else {
        Ok(())
    }
}
