//! Two-sided bounds on stable commutator length in free groups.
//!
//! Upper bounds come from commutator certificates for powers `a^n`: a
//! product of `g` commutators equal to `a^n` gives a genus `g` surface with
//! one boundary wrapping `n` times, so `scl(a) <= (2g - 1) / (2n)`.
//! Lower bounds come from the easy half of Bavard duality applied to
//! homogenized Brooks quasimorphisms with certified defect 6.

use alloc::collections::BTreeSet;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::group::{CommutatorCertificate, Group};
use crate::hyperbolic::above_homological_margulis;
use crate::quasimorphism::{brooks_homogeneous_exact, QmError, QuasimorphismHandle, HOMOGENIZED_BROOKS_DEFECT};
use crate::rational::{abs, ExtRational, Rational};
use crate::words::{all_reduced_words, ReducedWord, WordError};
use crate::Certificate;

mod search;

pub use search::{
    cl_upper, cl_upper_with_index, ClWitness, CommutatorIndex, MAX_FACTOR_LEN, MAX_INDEX_ENTRIES, MAX_SEARCH_GENUS,
};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SclError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Quasimorphism(#[from] QmError),
    #[error("not in the commutator subgroup: abelianization {abelianization:?}")]
    NotInCommutatorSubgroup { abelianization: Vec<i64> },
    #[error("genus budget must be 1 or 2, got {0}")]
    InvalidGenus(usize),
    #[error("factor length budget must be at most 8, got {0}")]
    LengthBudget(usize),
    #[error("commutator index would need {entries} entries (limit {limit})")]
    IndexTooLarge { entries: u128, limit: u128 },
    #[error("search produced a certificate that does not verify")]
    SearchCertificateRejected,
    #[error("power must be at least 1, got {0}")]
    NonPositivePower(i64),
    #[error("certificate evaluates to {found}, expected a^{n} = {expected}")]
    CertificateTarget { n: i64, expected: String, found: String },
    #[error("certificate has genus 0 but the power is nontrivial")]
    EmptyCertificate,
    #[error("homogeneous quasimorphism with zero defect is nonzero on the word: cl is infinite")]
    ZeroDefectNonzeroValue,
    #[error("quasimorphism must be homogeneous with a finite defect bound")]
    NotHomogeneousOrUnbounded,
    #[error("Brooks dictionary is empty")]
    EmptyDictionary,
    #[error("c b^-1 c^-1 != b, so c does not conjugate b to its inverse")]
    NotInverseConjugate,
    #[error("soundness tripwire: upper bound {bound} < 1/2 for nontrivial {word}")]
    SoundnessViolation { word: String, bound: Rational },
}

/// Search budget for [`scl_report`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SclBudget {
    /// Powers `a^1 .. a^n_max` are searched.
    pub n_max: u32,
    pub max_len: usize,
    pub max_genus: usize,
}

impl Default for SclBudget {
    fn default() -> Self {
        SclBudget { n_max: 4, max_len: 6, max_genus: 2 }
    }
}

/// `ceil((|phi_bar(a)| / D + 1) / 2)`, from `|phi_bar(a)| <= (2 cl(a) - 1) D`.
pub fn cl_lower_from_qm(a: &ReducedWord, phi_bar: &QuasimorphismHandle) -> Result<u64, SclError> {
    if !phi_bar.is_homogeneous() {
        return Err(SclError::NotHomogeneousOrUnbounded);
    }
    let d = phi_bar.defect_upper().finite().ok_or(SclError::NotHomogeneousOrUnbounded)?;
    if a.is_empty() {
        return Ok(0);
    }
    let value = abs(phi_bar.eval(a));
    if d == Rational::from_integer(0) {
        return if value == d { Ok(1) } else { Err(SclError::ZeroDefectNonzeroValue) };
    }
    let x = (value / d + Rational::from_integer(1)) / Rational::from_integer(2);
    Ok(x.ceil().to_integer() as u64)
}

/// `(2 cl_n - 1) / (2n)` where `cert` writes `a^n` as `cl_n >= 1` commutators.
pub fn scl_upper_from_power(a: &ReducedWord, n: i64, cert: &CommutatorCertificate) -> Result<Rational, SclError> {
    if n < 1 {
        return Err(SclError::NonPositivePower(n));
    }
    let group = crate::FreeGroup { rank: a.rank() };
    let expected = a.pow(n);
    let found = cert.evaluate(&group);
    if found != expected || *cert.target() != expected {
        return Err(SclError::CertificateTarget { n, expected: expected.to_string(), found: found.to_string() });
    }
    let g = cert.genus() as i64;
    if g == 0 {
        return Err(SclError::EmptyCertificate);
    }
    Ok(Rational::new(2 * g - 1, 2 * n))
}

/// Lower bound from one homogenized Brooks quasimorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowerWitness {
    pub brooks_word: ReducedWord,
    /// `phi_bar_w(a)`.
    pub value: Rational,
    /// Certified defect of `phi_bar_w`.
    pub defect: i64,
}

/// `max_w |phi_bar_w(a)| / 12` over `words`, with the lexicographically least
/// maximizer as witness.
pub fn scl_lower_bavard(a: &ReducedWord, words: &[ReducedWord]) -> Result<(Rational, LowerWitness), SclError> {
    if words.is_empty() {
        return Err(SclError::EmptyDictionary);
    }
    if !a.in_commutator_subgroup() {
        return Err(SclError::NotInCommutatorSubgroup { abelianization: a.abelianization() });
    }
    let mut best: Option<(Rational, &ReducedWord)> = None;
    for w in words {
        let value = if a.is_empty() {
            if w.len() < 2 {
                return Err(WordError::PatternTooShort(w.len()).into());
            }
            Rational::from_integer(0)
        } else {
            brooks_homogeneous_exact(w, a)?
        };
        let better = match best {
            None => true,
            Some((v, bw)) => abs(value) > abs(v) || (abs(value) == abs(v) && w < bw),
        };
        if better {
            best = Some((value, w));
        }
    }
    let (value, w) = best.expect("nonempty dictionary");
    let d = HOMOGENIZED_BROOKS_DEFECT;
    Ok((abs(value) / Rational::from_integer(2 * d), LowerWitness { brooks_word: w.clone(), value, defect: d }))
}

/// Reduced words of length 2 to 4 (length 2 only when the rank is above 3),
/// plus the cyclic subwords of the cyclic core of `a` with length between 2
/// and `min(6, |core|)`, and the core itself. Sorted and deduplicated.
pub fn default_brooks_dictionary(a: &ReducedWord) -> Vec<ReducedWord> {
    let rank = a.rank();
    let max_len = if rank <= 3 { 4 } else { 2 };
    let mut set: BTreeSet<ReducedWord> = all_reduced_words(rank, max_len).into_iter().filter(|w| w.len() >= 2).collect();
    let core = a.cyclic_word();
    let letters = core.letters();
    let n = letters.len();
    for len in 2..=n.min(6) {
        for start in 0..n {
            let sub = (0..len).map(|k| letters[(start + k) % n]);
            set.insert(ReducedWord::from_letters(rank, sub).expect("letters within rank"));
        }
    }
    if n >= 2 {
        set.insert(core.to_word());
    }
    set.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SclStatus {
    Bounded,
    NotInCommutatorSubgroup,
    Inconclusive,
}

impl SclStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            SclStatus::Bounded => "bounded",
            SclStatus::NotInCommutatorSubgroup => "not_in_commutator_subgroup",
            SclStatus::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpperWitness {
    pub n: u32,
    pub certificate: CommutatorCertificate,
}

/// Outcome of the search at one power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerAttempt {
    pub n: u32,
    pub genus: Option<usize>,
    pub bound: Option<Rational>,
    /// Best bound over powers `<= n`.
    pub running_min: ExtRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SclReport {
    pub word: ReducedWord,
    pub status: SclStatus,
    /// `Infinite` exactly when the word is outside the commutator subgroup.
    pub lower: ExtRational,
    pub lower_witness: Option<LowerWitness>,
    pub upper: ExtRational,
    pub upper_witness: Option<UpperWitness>,
    pub attempts: Vec<PowerAttempt>,
    /// Lower bound at least the homological Margulis constant 1/12.
    pub above_homological_margulis: bool,
}

/// Builds the index for `budget` and calls [`scl_report_with_index`].
pub fn scl_report(a: &ReducedWord, budget: &SclBudget) -> Result<SclReport, SclError> {
    if a.is_empty() || !a.in_commutator_subgroup() {
        let index = CommutatorIndex::build(a.rank(), 0)?;
        return scl_report_with_index(a, budget, &index);
    }
    let index = CommutatorIndex::build(a.rank(), budget.max_len)?;
    scl_report_with_index(a, budget, &index)
}

/// Two-sided report; `index` must match the rank of `a` (its length budget
/// overrides `budget.max_len`).
pub fn scl_report_with_index(a: &ReducedWord, budget: &SclBudget, index: &CommutatorIndex) -> Result<SclReport, SclError> {
    if !a.in_commutator_subgroup() {
        return Ok(SclReport {
            word: a.clone(),
            status: SclStatus::NotInCommutatorSubgroup,
            lower: ExtRational::Infinite,
            lower_witness: None,
            upper: ExtRational::Infinite,
            upper_witness: None,
            attempts: Vec::new(),
            above_homological_margulis: false,
        });
    }
    let zero = Rational::from_integer(0);
    if a.is_empty() {
        return Ok(SclReport {
            word: a.clone(),
            status: SclStatus::Bounded,
            lower: zero.into(),
            lower_witness: None,
            upper: zero.into(),
            upper_witness: None,
            attempts: Vec::new(),
            above_homological_margulis: false,
        });
    }
    let (lower, lower_witness) = scl_lower_bavard(a, &default_brooks_dictionary(a))?;

    let mut upper = ExtRational::Infinite;
    let mut upper_witness = None;
    let mut attempts = Vec::new();
    for n in 1..=budget.n_max {
        let target = a.pow(n as i64);
        let found = cl_upper_with_index(index, &target, budget.max_genus)?;
        let (genus, bound) = match found {
            Some(w) => {
                let b = scl_upper_from_power(a, n as i64, &w.certificate)?;
                if ExtRational::from(b) < upper {
                    upper = b.into();
                    upper_witness = Some(UpperWitness { n, certificate: w.certificate });
                }
                (Some(w.genus), Some(b))
            }
            None => (None, None),
        };
        attempts.push(PowerAttempt { n, genus, bound, running_min: upper });
    }

    // scl >= 1/2 for every nontrivial element of a free group
    if let ExtRational::Finite(u) = upper {
        if u < Rational::new(1, 2) {
            return Err(SclError::SoundnessViolation { word: a.to_string(), bound: u });
        }
        debug_assert!(lower <= u);
    }
    let status = if upper.is_finite() { SclStatus::Bounded } else { SclStatus::Inconclusive };
    Ok(SclReport {
        word: a.clone(),
        status,
        lower: lower.into(),
        lower_witness: Some(lower_witness),
        upper,
        upper_witness,
        attempts,
        above_homological_margulis: above_homological_margulis(lower),
    })
}

/// `b^{2n} = b^n c b^-n c^-1 = [b^n, c]` whenever `c b^-1 c^-1 = b`, so
/// `cl(b^{2n}) <= 1` for all `n` and `scl(b) = 0`.
pub fn scl_zero_by_inverse_conjugacy<G: Group>(
    group: &G,
    b: &G::Element,
    c: &G::Element,
    n: i64,
) -> Result<Certificate<G::Element>, SclError> {
    if n < 1 {
        return Err(SclError::NonPositivePower(n));
    }
    let conj = group.mul(&group.mul(c, &group.inv(b)), &group.inv(c));
    if conj != *b {
        return Err(SclError::NotInverseConjugate);
    }
    let bn = group.pow(b, n);
    let target = group.pow(b, 2 * n);
    Certificate::new(group, alloc::vec![(bn, c.clone())], target).map_err(|_| SclError::SearchCertificateRejected)
}
