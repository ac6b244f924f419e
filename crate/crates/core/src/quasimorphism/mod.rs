//! Quasimorphisms on free groups and rotation numbers of circle lifts.
//!
//! A handle bundles an evaluation map with a certified upper bound on its
//! defect `D(phi) = sup |phi(a) + phi(b) - phi(ab)|`. Only certified bounds
//! are ever used to derive scl lower bounds.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{abs, ExtRational, Rational};
use crate::words::{
    all_reduced_words, count_disjoint_copies_cyclic, greedy_count, reduced_word_count, Letter, ReducedWord, WordError,
};

mod rotation;

pub use rotation::{lift_from_matrix, rotation_number, CircleLift, RotationError, RotationEstimate};

/// Certified defect of every Brooks counting quasimorphism.
pub const BROOKS_DEFECT: i64 = 3;
/// Certified defect of a homogenized Brooks quasimorphism (twice the above).
pub const HOMOGENIZED_BROOKS_DEFECT: i64 = 2 * BROOKS_DEFECT;
/// Pair counts above this switch [`defect_observed`] to random sampling.
pub const EXHAUSTIVE_PAIR_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QmError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("homogenization needs n >= 1, got {0}")]
    NonPositivePower(i64),
    #[error("defect upper bound is infinite")]
    UnboundedDefect,
    #[error("homogenized Brooks value is undefined on the trivial word")]
    TrivialWord,
    #[error("length budget must be at least 1")]
    EmptyBudget,
    #[error("observed defect {observed} exceeds certified bound {certified} at ({a}, {b})")]
    DefectExceeded { observed: Rational, certified: Rational, a: String, b: String },
}

type EvalFn = dyn Fn(&ReducedWord) -> Rational + Send + Sync;

/// An evaluatable quasimorphism with a certified defect bound.
#[derive(Clone)]
pub struct QuasimorphismHandle {
    rank: usize,
    eval: Arc<EvalFn>,
    defect_upper: ExtRational,
    homogeneous: bool,
    label: String,
}

impl QuasimorphismHandle {
    /// Wraps an arbitrary function. The caller is responsible for the
    /// correctness of `defect_upper` and `homogeneous`.
    pub fn new(
        rank: usize,
        label: impl Into<String>,
        defect_upper: ExtRational,
        homogeneous: bool,
        eval: impl Fn(&ReducedWord) -> Rational + Send + Sync + 'static,
    ) -> Self {
        QuasimorphismHandle { rank, eval: Arc::new(eval), defect_upper, homogeneous, label: label.into() }
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(rank, "zero", ExtRational::zero(), true, |_| Rational::from_integer(0))
    }

    /// `phi == c`; its defect is exactly `|c|`.
    pub fn constant(rank: usize, c: Rational) -> Self {
        Self::new(rank, format!("constant {c}"), ExtRational::Finite(abs(c)), c == Rational::from_integer(0), move |_| c)
    }

    /// Word length. Not a quasimorphism: `|a| + |b| - |ab|` is unbounded.
    pub fn word_length(rank: usize) -> Self {
        Self::new(rank, "word length", ExtRational::Infinite, false, |a| Rational::from_integer(a.len() as i64))
    }

    pub fn eval(&self, a: &ReducedWord) -> Rational {
        (self.eval)(a)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn defect_upper(&self) -> ExtRational {
        self.defect_upper
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl fmt::Debug for QuasimorphismHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuasimorphismHandle")
            .field("label", &self.label)
            .field("rank", &self.rank)
            .field("defect_upper", &self.defect_upper)
            .field("homogeneous", &self.homogeneous)
            .finish()
    }
}

fn inverse_letters(w: &ReducedWord) -> Vec<Letter> {
    w.inverse().letters().to_vec()
}

/// Brooks counting quasimorphism `phi_w(a) = #w(a) - #w^-1(a)` where `#`
/// counts disjoint copies.
pub fn brooks(w: &ReducedWord) -> Result<QuasimorphismHandle, QmError> {
    if w.len() < 2 {
        return Err(WordError::PatternTooShort(w.len()).into());
    }
    let pat = w.letters().to_vec();
    let inv = inverse_letters(w);
    Ok(QuasimorphismHandle::new(
        w.rank(),
        format!("brooks {w}"),
        ExtRational::from_int(BROOKS_DEFECT),
        false,
        move |a| Rational::from_integer(greedy_count(&pat, a.letters()) as i64 - greedy_count(&inv, a.letters()) as i64),
    ))
}

/// `phi'(a) = (phi(a) - phi(a^-1)) / 2`, with the same defect bound.
pub fn symmetrize(phi: &QuasimorphismHandle) -> QuasimorphismHandle {
    let inner = phi.eval.clone();
    QuasimorphismHandle::new(
        phi.rank,
        format!("sym({})", phi.label),
        phi.defect_upper,
        phi.homogeneous,
        move |a| (inner(a) - inner(&a.inverse())) / Rational::from_integer(2),
    )
}

/// Value and certified error of the finite-stage homogenization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomogenizationEstimate {
    pub value: Rational,
    pub error_bound: Rational,
}

/// `phi(a^n) / n`, within `D / n` of the homogenization `phi_bar(a)`.
///
/// Telescoping the quasimorphism inequality gives
/// `|phi(a^n) - n phi(a)| <= (n - 1) D`, and comparing stages `n` and `nk`
/// with `k -> inf` gives `|phi(a^n)/n - phi_bar(a)| <= D/n`.
pub fn homogenize_estimate(phi: &QuasimorphismHandle, a: &ReducedWord, n: i64) -> Result<HomogenizationEstimate, QmError> {
    if n < 1 {
        return Err(QmError::NonPositivePower(n));
    }
    let d = phi.defect_upper.finite().ok_or(QmError::UnboundedDefect)?;
    let nr = Rational::from_integer(n);
    Ok(HomogenizationEstimate { value: phi.eval(&a.pow(n)) / nr, error_bound: d / nr })
}

/// Exact homogenized Brooks value `lim phi_w(a^n) / n`, computed from
/// cyclic counts on the conjugacy class of `a`.
pub fn brooks_homogeneous_exact(w: &ReducedWord, a: &ReducedWord) -> Result<Rational, QmError> {
    if w.len() < 2 {
        return Err(WordError::PatternTooShort(w.len()).into());
    }
    if a.is_empty() {
        return Err(QmError::TrivialWord);
    }
    let c = a.cyclic_word();
    Ok(count_disjoint_copies_cyclic(w, &c)? - count_disjoint_copies_cyclic(&w.inverse(), &c)?)
}

/// Handle for the homogenized Brooks quasimorphism (defect bound 6, value 0
/// on the identity).
pub fn homogenized_brooks(w: &ReducedWord) -> Result<QuasimorphismHandle, QmError> {
    if w.len() < 2 {
        return Err(WordError::PatternTooShort(w.len()).into());
    }
    let w2 = w.clone();
    Ok(QuasimorphismHandle::new(
        w.rank(),
        format!("brooks_bar {w}"),
        ExtRational::from_int(HOMOGENIZED_BROOKS_DEFECT),
        true,
        move |a| {
            if a.is_empty() {
                Rational::from_integer(0)
            } else {
                brooks_homogeneous_exact(&w2, a).expect("pattern length checked")
            }
        },
    ))
}

/// Sampling plan chosen by [`defect_observed`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DefectScan {
    Exhaustive { pairs: u64 },
    Random { pairs: u64, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObservedDefect {
    pub value: Rational,
    /// A pair attaining `value`.
    pub witness: (ReducedWord, ReducedWord),
    pub scan: DefectScan,
}

/// Largest `|phi(a) + phi(b) - phi(ab)|` over all reduced pairs with
/// `|a|, |b| <= length_budget`, or over `samples` seeded random pairs when
/// that set has more than [`EXHAUSTIVE_PAIR_LIMIT`] elements.
///
/// The result is a lower bound on the true defect; exceeding the handle's
/// certified bound is reported as an error.
pub fn defect_observed(
    phi: &QuasimorphismHandle,
    length_budget: usize,
    samples: u64,
    seed: u64,
) -> Result<ObservedDefect, QmError> {
    if length_budget < 1 {
        return Err(QmError::EmptyBudget);
    }
    let rank = phi.rank;
    let n = reduced_word_count(rank, length_budget);
    let defect = |a: &ReducedWord, b: &ReducedWord| abs(phi.eval(a) + phi.eval(b) - phi.eval(&a.mul_unchecked(b)));

    let (best, scan) = if n.saturating_mul(n) <= EXHAUSTIVE_PAIR_LIMIT {
        let words = all_reduced_words(rank, length_budget);
        let values: Vec<Rational> = words.iter().map(|w| phi.eval(w)).collect();
        let row = |i: usize| -> (Rational, usize, usize) {
            let mut best = (Rational::from_integer(-1), i, 0);
            for (j, b) in words.iter().enumerate() {
                let d = abs(values[i] + values[j] - phi.eval(&words[i].mul_unchecked(b)));
                if d > best.0 {
                    best = (d, i, j);
                }
            }
            best
        };
        #[cfg(feature = "parallel")]
        let rows: Vec<_> = {
            use rayon::prelude::*;
            (0..words.len()).into_par_iter().map(row).collect()
        };
        #[cfg(not(feature = "parallel"))]
        let rows: Vec<_> = (0..words.len()).map(row).collect();
        // first maximum in (i, j) order, independent of scheduling
        let (d, i, j) = rows.into_iter().fold((Rational::from_integer(-1), 0, 0), |acc, r| if r.0 > acc.0 { r } else { acc });
        ((d, words[i].clone(), words[j].clone()), DefectScan::Exhaustive { pairs: (n * n) as u64 })
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = (Rational::from_integer(-1), ReducedWord::identity(rank), ReducedWord::identity(rank));
        for _ in 0..samples.max(1) {
            let a = random_reduced_word(&mut rng, rank, length_budget);
            let b = random_reduced_word(&mut rng, rank, length_budget);
            let d = defect(&a, &b);
            if d > best.0 {
                best = (d, a, b);
            }
        }
        (best, DefectScan::Random { pairs: samples.max(1), seed })
    };

    let (value, a, b) = best;
    if let ExtRational::Finite(cert) = phi.defect_upper {
        if value > cert {
            return Err(QmError::DefectExceeded { observed: value, certified: cert, a: format!("{a}"), b: format!("{b}") });
        }
    }
    Ok(ObservedDefect { value, witness: (a, b), scan })
}

/// Uniform length in `0..=max_len`, then uniform among reduced words of that length.
pub fn random_reduced_word<R: Rng>(rng: &mut R, rank: usize, max_len: usize) -> ReducedWord {
    let len = rng.random_range(0..=max_len);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let x = Letter::from_code(rng.random_range(0..2 * rank as u16));
        if letters.last() != Some(&x.inverse()) {
            letters.push(x);
        }
    }
    ReducedWord::from_reduced_unchecked(rank, letters)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s, 2).unwrap()
    }

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn brooks_examples() {
        let phi = brooks(&w("ab")).unwrap();
        assert_eq!(phi.eval(&w("abab")), r(2));
        assert_eq!(phi.eval(&w("")), r(0));
        assert_eq!(phi.eval(&w("BA")), r(-1));
        assert_eq!(phi.defect_upper(), ExtRational::from_int(3));
        assert!(!phi.is_homogeneous());
        assert!(matches!(brooks(&w("a")), Err(QmError::Word(WordError::PatternTooShort(1)))));
    }

    #[test]
    fn symmetrize_examples() {
        let c = QuasimorphismHandle::constant(2, Rational::new(5, 3));
        let s = symmetrize(&c);
        let len = symmetrize(&QuasimorphismHandle::word_length(2));
        for t in ["", "a", "abAB", "bbA"] {
            assert_eq!(s.eval(&w(t)), r(0));
            assert_eq!(len.eval(&w(t)), r(0));
        }
        assert_eq!(s.defect_upper(), c.defect_upper());
    }

    #[test]
    fn homogenize_estimate_examples() {
        let e = homogenize_estimate(&brooks(&w("abAB")).unwrap(), &w("abAB"), 10).unwrap();
        assert_eq!(e, HomogenizationEstimate { value: r(1), error_bound: Rational::new(3, 10) });
        let e = homogenize_estimate(&brooks(&w("ab")).unwrap(), &w("ab"), 4).unwrap();
        assert_eq!(e, HomogenizationEstimate { value: r(1), error_bound: Rational::new(3, 4) });
        let e = homogenize_estimate(&brooks(&w("ab")).unwrap(), &w(""), 7).unwrap();
        assert_eq!(e.value, r(0));
        assert_eq!(homogenize_estimate(&brooks(&w("ab")).unwrap(), &w("ab"), 0), Err(QmError::NonPositivePower(0)));
        assert_eq!(
            homogenize_estimate(&QuasimorphismHandle::word_length(2), &w("ab"), 2),
            Err(QmError::UnboundedDefect)
        );
    }

    #[test]
    fn homogeneous_exact_examples() {
        assert_eq!(brooks_homogeneous_exact(&w("abAB"), &w("abAB")), Ok(r(1)));
        assert_eq!(brooks_homogeneous_exact(&w("ab"), &w("ba")), Ok(r(1)));
        assert_eq!(brooks_homogeneous_exact(&w("ab"), &w("aB")), Ok(r(0)));
        assert_eq!(brooks_homogeneous_exact(&w("ab"), &w("")), Err(QmError::TrivialWord));
        let h = homogenized_brooks(&w("abAB")).unwrap();
        assert_eq!(h.defect_upper(), ExtRational::from_int(6));
        assert!(h.is_homogeneous());
        assert_eq!(h.eval(&w("")), r(0));
    }

    #[test]
    fn defect_observed_examples() {
        let d = defect_observed(&brooks(&w("ab")).unwrap(), 4, 0, 0).unwrap();
        assert!(d.value >= r(1) && d.value <= r(3), "{:?}", d.value);
        assert!(matches!(d.scan, DefectScan::Exhaustive { pairs } if pairs == 161 * 161));
        assert_eq!(defect_observed(&QuasimorphismHandle::zero(2), 3, 0, 0).unwrap().value, r(0));
        let d = defect_observed(&brooks(&w("abAB")).unwrap(), 6, 0, 0).unwrap();
        assert!(d.value <= r(3));
        assert_eq!(defect_observed(&QuasimorphismHandle::zero(2), 0, 0, 0), Err(QmError::EmptyBudget));
    }

    #[test]
    fn defect_observed_flags_a_false_certificate() {
        let liar = QuasimorphismHandle::new(2, "length claiming defect 1", ExtRational::from_int(1), false, |a| {
            r(a.len() as i64)
        });
        assert!(matches!(defect_observed(&liar, 2, 0, 0), Err(QmError::DefectExceeded { .. })));
    }

    #[test]
    fn random_scan_is_seeded() {
        let phi = brooks(&w("abA")).unwrap();
        // rank 2, length 12: far beyond the exhaustive limit
        let a = defect_observed(&phi, 12, 2000, 7).unwrap();
        let b = defect_observed(&phi, 12, 2000, 7).unwrap();
        assert_eq!(a, b);
        assert!(matches!(a.scan, DefectScan::Random { pairs: 2000, seed: 7 }));
    }
}
