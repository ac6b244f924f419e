use alloc::vec::Vec;

use super::{Letter, ReducedWord};

/// Number of reduced words of length at most `max_len` in rank `rank`.
pub fn reduced_word_count(rank: usize, max_len: usize) -> u128 {
    let mut total = 1u128;
    let mut level = 1u128;
    for l in 1..=max_len {
        level = if l == 1 { 2 * rank as u128 } else { level.saturating_mul(2 * rank as u128 - 1) };
        total = total.saturating_add(level);
    }
    total
}

/// All reduced words of length `<= max_len`, in shortlex order
/// (length first, then `a < A < b < B < ...`).
pub fn all_reduced_words(rank: usize, max_len: usize) -> Vec<ReducedWord> {
    let letters: Vec<Letter> = (0..2 * rank as u16).map(Letter::from_code).collect();
    let mut out = Vec::new();
    let mut level: Vec<Vec<Letter>> = alloc::vec![Vec::new()];
    for len in 0..=max_len {
        if len > 0 {
            let mut next = Vec::with_capacity(level.len() * (2 * rank).saturating_sub(1).max(1));
            for w in &level {
                for &x in &letters {
                    if w.last() != Some(&x.inverse()) {
                        let mut v = w.clone();
                        v.push(x);
                        next.push(v);
                    }
                }
            }
            level = next;
        }
        out.extend(level.iter().map(|l| ReducedWord::from_reduced_unchecked(rank, l.clone())));
    }
    out
}
