use alloc::vec;

use super::{CyclicWord, Letter, ReducedWord, WordError};
use crate::Rational;

/// Maximum number of pairwise disjoint occurrences of `pattern` in `text`.
///
/// All occurrences have the same length, so the scan that always takes the
/// occurrence with the earliest right endpoint is optimal (exchange argument
/// for interval scheduling).
pub fn greedy_count(pattern: &[Letter], text: &[Letter]) -> usize {
    let m = pattern.len();
    if m == 0 || m > text.len() {
        return 0;
    }
    let (mut i, mut count) = (0, 0);
    while i + m <= text.len() {
        if text[i..i + m] == *pattern {
            count += 1;
            i += m;
        } else {
            i += 1;
        }
    }
    count
}

/// Number of disjoint copies of `w` in the reduced word `a`.
pub fn count_disjoint_copies(w: &ReducedWord, a: &ReducedWord) -> Result<usize, WordError> {
    if w.len() < 2 {
        return Err(WordError::PatternTooShort(w.len()));
    }
    Ok(greedy_count(w.letters(), a.letters()))
}

/// `lim_n count_disjoint_copies(w, a^n) / n` for a cyclic word `a`.
///
/// The greedy scan on the bi-infinite periodic word `a a a ...` is a
/// deterministic walk whose next step depends only on the scan position
/// modulo `|a|`; the first repeated residue closes a cycle, and copies per
/// period along that cycle is the limit. On a finite power the scan agrees
/// with the infinite one except for at most one copy at the end.
pub fn count_disjoint_copies_cyclic(w: &ReducedWord, a: &CyclicWord) -> Result<Rational, WordError> {
    if w.len() < 2 {
        return Err(WordError::PatternTooShort(w.len()));
    }
    if a.is_empty() {
        return Err(WordError::EmptyCyclicWord);
    }
    let text = a.letters();
    let period = text.len();
    let pattern = w.letters();
    let mut seen: alloc::vec::Vec<Option<(usize, i64)>> = vec![None; period];
    let (mut pos, mut count) = (0usize, 0i64);
    loop {
        let r = pos % period;
        if let Some((p0, c0)) = seen[r] {
            let periods = ((pos - p0) / period) as i64;
            return Ok(Rational::new(count - c0, periods));
        }
        seen[r] = Some((pos, count));
        if pattern.iter().enumerate().all(|(i, x)| text[(pos + i) % period] == *x) {
            count += 1;
            pos += pattern.len();
        } else {
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s, 4).unwrap()
    }

    #[test]
    fn linear_examples() {
        assert_eq!(count_disjoint_copies(&w("ab"), &w("abab")), Ok(2));
        assert_eq!(count_disjoint_copies(&w("ab"), &w("ba")), Ok(0));
        assert_eq!(count_disjoint_copies(&w("aa"), &w("aaa")), Ok(1));
        assert_eq!(count_disjoint_copies(&w("aa"), &w("aaaa")), Ok(2));
        assert_eq!(count_disjoint_copies(&w("ab"), &w("")), Ok(0));
        assert_eq!(count_disjoint_copies(&w("a"), &w("aaa")), Err(WordError::PatternTooShort(1)));
    }

    #[test]
    fn cyclic_examples() {
        let one = Rational::from_integer(1);
        assert_eq!(count_disjoint_copies_cyclic(&w("abAB"), &w("abAB").cyclic_word()), Ok(one));
        assert_eq!(count_disjoint_copies_cyclic(&w("ba"), &w("ab").cyclic_word()), Ok(one));
        assert_eq!(count_disjoint_copies_cyclic(&w("ab"), &w("cd").cyclic_word()), Ok(Rational::from_integer(0)));
        assert_eq!(
            count_disjoint_copies_cyclic(&w("ab"), &ReducedWord::identity(4).cyclic_word()),
            Err(WordError::EmptyCyclicWord)
        );
    }

    #[test]
    fn cyclic_count_can_be_fractional() {
        // (ab)^n holds floor(n/2) disjoint copies of abab; successive
        // differences alternate 0, 1 forever.
        assert_eq!(count_disjoint_copies_cyclic(&w("abab"), &w("ab").cyclic_word()), Ok(Rational::new(1, 2)));
        assert_eq!(count_disjoint_copies_cyclic(&w("aa"), &w("a").cyclic_word()), Ok(Rational::new(1, 2)));
        assert_eq!(count_disjoint_copies_cyclic(&w("aaa"), &w("aa").cyclic_word()), Ok(Rational::new(2, 3)));
    }
}
