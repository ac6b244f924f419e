//! Meet-in-the-middle search for short products of commutators.
//!
//! All commutators `[u, v]` with `|u|, |v| <= max_len` are indexed by a
//! fingerprint of their reduced value. Genus one is a lookup of the target;
//! genus two scans first factors `c1` in canonical order and looks up
//! `c1^-1 a`. Fingerprint collisions are resolved by recomputing the
//! commutator, so a hit is always exact.

use alloc::vec;
use alloc::vec::Vec;
use core::hash::Hasher;

use rustc_hash::FxHasher;

use super::SclError;
use crate::group::{CommutatorCertificate, FreeGroup};
use crate::words::{all_reduced_words, append_reduced, reduced_word_count, Letter, ReducedWord};
use crate::Certificate;

/// Largest number of index entries `CommutatorIndex::build` will allocate.
pub const MAX_INDEX_ENTRIES: u128 = 1 << 25;
/// Largest factor length accepted by the search.
pub const MAX_FACTOR_LEN: usize = 8;
/// Largest genus the search understands.
pub const MAX_SEARCH_GENUS: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Entry {
    fp: u64,
    u: u32,
    v: u32,
}

fn fingerprint(letters: &[Letter]) -> u64 {
    let mut h = FxHasher::default();
    h.write_usize(letters.len());
    for x in letters {
        h.write_u16(x.code());
    }
    h.finish()
}

/// `[u, v] = u v u^-1 v^-1`, reduced into `buf`.
fn commutator_into(buf: &mut Vec<Letter>, u: &[Letter], v: &[Letter]) {
    buf.clear();
    append_reduced(buf, u.iter().copied());
    append_reduced(buf, v.iter().copied());
    append_reduced(buf, u.iter().rev().map(|x| x.inverse()));
    append_reduced(buf, v.iter().rev().map(|x| x.inverse()));
}

/// Every nontrivial commutator of two words of length at most `max_len`.
#[derive(Clone, Debug)]
pub struct CommutatorIndex {
    rank: usize,
    max_len: usize,
    words: Vec<ReducedWord>,
    entries: Vec<Entry>,
}

impl CommutatorIndex {
    pub fn build(rank: usize, max_len: usize) -> Result<Self, SclError> {
        if max_len > MAX_FACTOR_LEN {
            return Err(SclError::LengthBudget(max_len));
        }
        crate::words::check_rank(rank)?;
        let n = reduced_word_count(rank, max_len);
        let pairs = n.saturating_mul(n);
        if pairs > MAX_INDEX_ENTRIES {
            return Err(SclError::IndexTooLarge { entries: pairs, limit: MAX_INDEX_ENTRIES });
        }
        let words = all_reduced_words(rank, max_len);
        let row = |i: usize, buf: &mut Vec<Letter>| {
            let mut out = Vec::new();
            for (j, v) in words.iter().enumerate() {
                commutator_into(buf, words[i].letters(), v.letters());
                if !buf.is_empty() {
                    out.push(Entry { fp: fingerprint(buf), u: i as u32, v: j as u32 });
                }
            }
            out
        };
        #[cfg(feature = "parallel")]
        let mut entries: Vec<Entry> = {
            use rayon::prelude::*;
            (0..words.len())
                .into_par_iter()
                .map_init(Vec::new, |buf, i| row(i, buf))
                .flatten_iter()
                .collect()
        };
        #[cfg(not(feature = "parallel"))]
        let mut entries: Vec<Entry> = {
            let mut buf = Vec::new();
            (0..words.len()).flat_map(|i| row(i, &mut buf)).collect()
        };
        // keys are unique, so an unstable sort is deterministic
        #[cfg(feature = "parallel")]
        {
            use rayon::slice::ParallelSliceMut;
            entries.par_sort_unstable();
        }
        #[cfg(not(feature = "parallel"))]
        entries.sort_unstable();
        Ok(CommutatorIndex { rank, max_len, words, entries })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Number of indexed commutators.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Least `(u, v)` in shortlex pair order with `[u, v] = target`.
    pub fn lookup(&self, target: &ReducedWord) -> Option<(ReducedWord, ReducedWord)> {
        let mut buf = Vec::new();
        self.lookup_letters(target.letters(), &mut buf)
            .map(|(i, j)| (self.words[i as usize].clone(), self.words[j as usize].clone()))
    }

    fn lookup_letters(&self, target: &[Letter], buf: &mut Vec<Letter>) -> Option<(u32, u32)> {
        let fp = fingerprint(target);
        let start = self.entries.partition_point(|e| e.fp < fp);
        self.entries[start..].iter().take_while(|e| e.fp == fp).find_map(|e| {
            commutator_into(buf, self.words[e.u as usize].letters(), self.words[e.v as usize].letters());
            (buf.as_slice() == target).then_some((e.u, e.v))
        })
    }

    /// First `(c1, c2)` pair of commutators, in canonical order of the first
    /// factor, whose product is `target`.
    fn genus_two(&self, target: &ReducedWord) -> Option<[(u32, u32); 2]> {
        let n = self.words.len();
        let probe = |k: usize, buf: &mut Vec<Letter>, rest: &mut Vec<Letter>| {
            let (i, j) = (k / n, k % n);
            let (u, v) = (self.words[i].letters(), self.words[j].letters());
            // c1^-1 a = [v, u] a
            commutator_into(buf, v, u);
            if buf.is_empty() {
                return None;
            }
            rest.clear();
            rest.extend_from_slice(buf);
            append_reduced(rest, target.letters().iter().copied());
            if rest.is_empty() {
                return None;
            }
            self.lookup_letters(rest, buf).map(|c2| [(i as u32, j as u32), c2])
        };
        #[cfg(feature = "parallel")]
        {
            use rayon::prelude::*;
            (0..n * n)
                .into_par_iter()
                .map_init(|| (Vec::new(), Vec::new()), |(buf, rest), k| probe(k, buf, rest))
                .find_first(Option::is_some)
                .flatten()
        }
        #[cfg(not(feature = "parallel"))]
        {
            let (mut buf, mut rest) = (Vec::new(), Vec::new());
            (0..n * n).find_map(|k| probe(k, &mut buf, &mut rest))
        }
    }

    fn pair(&self, (i, j): (u32, u32)) -> (ReducedWord, ReducedWord) {
        (self.words[i as usize].clone(), self.words[j as usize].clone())
    }
}

/// A certified upper bound `cl(a) <= genus`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClWitness {
    pub genus: usize,
    pub certificate: CommutatorCertificate,
}

/// Searches for `a` as a product of at most `max_genus` commutators of words
/// of length at most `max_len`. `None` means nothing was found within the
/// budget; it is not a lower bound on `cl`.
pub fn cl_upper(a: &ReducedWord, max_genus: usize, max_len: usize) -> Result<Option<ClWitness>, SclError> {
    check_search(a, max_genus)?;
    if a.is_empty() {
        return cl_upper_with_index(&CommutatorIndex::build(a.rank(), 0)?, a, max_genus);
    }
    let index = CommutatorIndex::build(a.rank(), max_len)?;
    cl_upper_with_index(&index, a, max_genus)
}

fn check_search(a: &ReducedWord, max_genus: usize) -> Result<(), SclError> {
    if !(1..=MAX_SEARCH_GENUS).contains(&max_genus) {
        return Err(SclError::InvalidGenus(max_genus));
    }
    if !a.in_commutator_subgroup() {
        return Err(SclError::NotInCommutatorSubgroup { abelianization: a.abelianization() });
    }
    Ok(())
}

/// [`cl_upper`] against a prebuilt index.
pub fn cl_upper_with_index(
    index: &CommutatorIndex,
    a: &ReducedWord,
    max_genus: usize,
) -> Result<Option<ClWitness>, SclError> {
    check_search(a, max_genus)?;
    if a.rank() != index.rank {
        return Err(crate::WordError::RankMismatch(a.rank(), index.rank).into());
    }
    let group = FreeGroup { rank: a.rank() };
    let certify = |pairs: Vec<(ReducedWord, ReducedWord)>| -> Result<Option<ClWitness>, SclError> {
        let certificate = Certificate::new(&group, pairs, a.clone()).map_err(|_| SclError::SearchCertificateRejected)?;
        Ok(Some(ClWitness { genus: certificate.genus(), certificate }))
    };
    if a.is_empty() {
        return certify(Vec::new());
    }
    let mut buf = Vec::new();
    if let Some(p) = index.lookup_letters(a.letters(), &mut buf) {
        return certify(vec![index.pair(p)]);
    }
    if max_genus >= 2 {
        if let Some([p1, p2]) = index.genus_two(a) {
            return certify(vec![index.pair(p1), index.pair(p2)]);
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s, 2).unwrap()
    }

    #[test]
    fn basic_commutator_is_genus_one() {
        let r = cl_upper(&w("abAB"), 1, 3).unwrap().unwrap();
        assert_eq!(r.genus, 1);
        assert_eq!(r.certificate.pairs(), &[(w("a"), w("b"))]);
    }

    #[test]
    fn identity_is_genus_zero() {
        let r = cl_upper(&w(""), 2, 4).unwrap().unwrap();
        assert_eq!(r.genus, 0);
        assert!(r.certificate.pairs().is_empty());
    }

    #[test]
    fn rejects_non_commutators() {
        assert_eq!(
            cl_upper(&w("ab"), 1, 3),
            Err(SclError::NotInCommutatorSubgroup { abelianization: vec![1, 1] })
        );
        assert_eq!(cl_upper(&w("abAB"), 3, 3), Err(SclError::InvalidGenus(3)));
        assert_eq!(cl_upper(&w("abAB"), 1, 9), Err(SclError::LengthBudget(9)));
    }

    #[test]
    fn known_genus_two_witness_verifies() {
        let g = FreeGroup { rank: 2 };
        let pairs = vec![(w("abA"), w("BabAA")), (w("Bab"), w("bb"))];
        assert!(Certificate::new(&g, pairs, w("[a,b]^3")).is_ok());
    }

    #[test]
    fn square_of_commutator_needs_two_at_small_length() {
        let index = CommutatorIndex::build(2, 3).unwrap();
        let a = w("[a,b]^2");
        assert_eq!(cl_upper_with_index(&index, &a, 1).unwrap(), None);
        let r = cl_upper_with_index(&index, &a, 2).unwrap().unwrap();
        assert_eq!(r.genus, 2);
        assert!(r.certificate.verify(&FreeGroup { rank: 2 }));
    }

    #[test]
    fn lookup_finds_least_pair() {
        let index = CommutatorIndex::build(2, 2).unwrap();
        assert_eq!(index.lookup(&w("abAB")), Some((w("a"), w("b"))));
        assert_eq!(index.lookup(&w("ab")), None);
    }
}
