//! Reduced words in the free group `F_r` on generators `a, b, c, ...`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

mod count;
mod enumerate;
mod parse;

pub use count::{count_disjoint_copies, count_disjoint_copies_cyclic, greedy_count};
pub use enumerate::{all_reduced_words, reduced_word_count};
pub use parse::parse_word;

/// Largest supported rank; letter codes must fit in a `u16`.
pub const MAX_RANK: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum WordError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("generator {index} at byte {position} is outside rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize, position: usize },
    #[error("rank must be between 1 and {MAX_RANK}, got {0}")]
    InvalidRank(usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("pattern word must have length at least 2, got {0}")]
    PatternTooShort(usize),
    #[error("cyclic word is empty")]
    EmptyCyclicWord,
    #[error("word length {0} exceeds the supported maximum")]
    TooLong(usize),
}

/// A generator or its inverse.
///
/// Encoded as `2 * (generator - 1) + inverse`, so `a < A < b < B < ...` and
/// inversion flips the low bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u16);

impl Letter {
    /// `generator` is 1-based.
    pub fn new(generator: usize, inverse: bool) -> Self {
        debug_assert!(generator >= 1 && generator <= MAX_RANK);
        Letter(((generator - 1) * 2 + inverse as usize) as u16)
    }

    pub fn from_code(code: u16) -> Self {
        Letter(code)
    }

    pub fn code(self) -> u16 {
        self.0
    }

    pub fn generator(self) -> usize {
        (self.0 as usize >> 1) + 1
    }

    pub fn is_inverse(self) -> bool {
        self.0 & 1 == 1
    }

    pub fn sign(self) -> i64 {
        if self.is_inverse() {
            -1
        } else {
            1
        }
    }

    pub fn inverse(self) -> Self {
        Letter(self.0 ^ 1)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = self.generator();
        if g <= 26 {
            let base = if self.is_inverse() { b'A' } else { b'a' };
            write!(f, "{}", (base + (g - 1) as u8) as char)
        } else if self.is_inverse() {
            write!(f, "G{g}")
        } else {
            write!(f, "g{g}")
        }
    }
}

/// Appends `letters` to the reduced sequence `acc`, cancelling as it goes.
pub(crate) fn append_reduced(acc: &mut Vec<Letter>, letters: impl IntoIterator<Item = Letter>) {
    for x in letters {
        if acc.last() == Some(&x.inverse()) {
            acc.pop();
        } else {
            acc.push(x);
        }
    }
}

/// An element of the free group of rank `rank`, stored as a freely reduced
/// sequence of letters. The empty word is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl ReducedWord {
    pub fn identity(rank: usize) -> Self {
        ReducedWord { rank, letters: Vec::new() }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn from_letters(rank: usize, letters: impl IntoIterator<Item = Letter>) -> Result<Self, WordError> {
        check_rank(rank)?;
        let mut acc = Vec::new();
        for (i, x) in letters.into_iter().enumerate() {
            if x.generator() > rank {
                return Err(WordError::GeneratorOutOfRange { index: x.generator(), rank, position: i });
            }
            append_reduced(&mut acc, [x]);
        }
        Ok(ReducedWord { rank, letters: acc })
    }

    /// Caller guarantees `letters` is reduced and within rank.
    pub(crate) fn from_reduced_unchecked(rank: usize, letters: Vec<Letter>) -> Self {
        debug_assert!(is_reduced(&letters));
        ReducedWord { rank, letters }
    }

    pub fn parse(text: &str, rank: usize) -> Result<Self, WordError> {
        parse_word(text, rank)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn same_rank(&self, other: &Self) -> Result<(), WordError> {
        if self.rank == other.rank {
            Ok(())
        } else {
            Err(WordError::RankMismatch(self.rank, other.rank))
        }
    }

    /// Free reduction of `self * other`.
    pub fn concat(&self, other: &Self) -> Result<Self, WordError> {
        self.same_rank(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        // Cancellation only happens at the seam.
        let mut k = 0;
        let (n, m) = (self.letters.len(), other.letters.len());
        while k < n.min(m) && self.letters[n - 1 - k] == other.letters[k].inverse() {
            k += 1;
        }
        let mut letters = Vec::with_capacity(n + m - 2 * k);
        letters.extend_from_slice(&self.letters[..n - k]);
        letters.extend_from_slice(&other.letters[k..]);
        ReducedWord { rank: self.rank, letters }
    }

    pub fn inverse(&self) -> Self {
        ReducedWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|x| x.inverse()).collect(),
        }
    }

    /// `self^n` for any integer `n`.
    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let n = n.unsigned_abs();
        if n == 0 || base.is_empty() {
            return ReducedWord::identity(self.rank);
        }
        // base = c * core * c^-1 with core cyclically reduced, so the power is
        // c * core^n * c^-1 without further cancellation.
        let red = base.cyclically_reduce();
        let core = red.core.letters();
        let c = red.conjugator.letters();
        let mut letters = Vec::with_capacity(2 * c.len() + core.len() * n as usize);
        letters.extend_from_slice(c);
        for _ in 0..n {
            letters.extend_from_slice(core);
        }
        letters.extend(c.iter().rev().map(|x| x.inverse()));
        ReducedWord { rank: self.rank, letters }
    }

    /// `c * self * c^-1`.
    pub fn conjugate(&self, c: &Self) -> Result<Self, WordError> {
        self.same_rank(c)?;
        Ok(c.mul_unchecked(self).mul_unchecked(&c.inverse()))
    }

    /// `self * v * self^-1 * v^-1`.
    pub fn commutator(&self, v: &Self) -> Result<Self, WordError> {
        self.same_rank(v)?;
        Ok(commutator_unchecked(self, v))
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core` cyclically reduced.
    pub fn cyclically_reduce(&self) -> CyclicReduction {
        let l = &self.letters;
        let (mut i, mut j) = (0, l.len());
        while j - i >= 2 && l[i] == l[j - 1].inverse() {
            i += 1;
            j -= 1;
        }
        CyclicReduction {
            core: ReducedWord { rank: self.rank, letters: l[i..j].to_vec() },
            conjugator: ReducedWord { rank: self.rank, letters: l[..i].to_vec() },
        }
    }

    /// Exponent sum of each generator; zero exactly on `[F, F]`.
    pub fn abelianization(&self) -> Vec<i64> {
        let mut v = alloc::vec![0i64; self.rank];
        for x in &self.letters {
            v[x.generator() - 1] += x.sign();
        }
        v
    }

    pub fn in_commutator_subgroup(&self) -> bool {
        self.abelianization().iter().all(|&e| e == 0)
    }

    /// The conjugacy class of `self`.
    pub fn cyclic_word(&self) -> CyclicWord {
        self.cyclically_reduce().cyclic()
    }
}

pub(crate) fn commutator_unchecked(u: &ReducedWord, v: &ReducedWord) -> ReducedWord {
    let mut acc = Vec::with_capacity(2 * (u.len() + v.len()));
    append_reduced(&mut acc, u.letters.iter().copied());
    append_reduced(&mut acc, v.letters.iter().copied());
    append_reduced(&mut acc, u.letters.iter().rev().map(|x| x.inverse()));
    append_reduced(&mut acc, v.letters.iter().rev().map(|x| x.inverse()));
    ReducedWord { rank: u.rank, letters: acc }
}

pub(crate) fn is_reduced(letters: &[Letter]) -> bool {
    letters.windows(2).all(|p| p[0] != p[1].inverse())
}

pub(crate) fn check_rank(rank: usize) -> Result<(), WordError> {
    if (1..=MAX_RANK).contains(&rank) {
        Ok(())
    } else {
        Err(WordError::InvalidRank(rank))
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.letters {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

/// Result of [`ReducedWord::cyclically_reduce`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicReduction {
    pub core: ReducedWord,
    pub conjugator: ReducedWord,
}

impl CyclicReduction {
    pub fn cyclic(&self) -> CyclicWord {
        CyclicWord::from_core(&self.core)
    }
}

/// A conjugacy class in the free group: a cyclically reduced word stored as
/// its lexicographically least rotation.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl CyclicWord {
    fn from_core(core: &ReducedWord) -> Self {
        let l = &core.letters;
        let n = l.len();
        let best = (0..n)
            .min_by(|&i, &j| l[i..].iter().chain(&l[..i]).cmp(l[j..].iter().chain(&l[..j])))
            .unwrap_or(0);
        let mut letters = Vec::with_capacity(n);
        letters.extend_from_slice(&l[best..]);
        letters.extend_from_slice(&l[..best]);
        CyclicWord { rank: core.rank, letters }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The canonical rotation as an ordinary word.
    pub fn to_word(&self) -> ReducedWord {
        ReducedWord { rank: self.rank, letters: self.letters.clone() }
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.letters {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}
