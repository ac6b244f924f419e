//! Exact arithmetic in `Z^2 x|_A Z` for an integer Anosov matrix `A`.
//!
//! Elements are pairs `(v, t)` with product `(u, m)(v, n) = (u + A^m v, m + n)`,
//! so the generator `g = ((0, 0), 1)` conjugates a fiber element `v` to `A v`
//! and `[g, (u, 0)] = ((A - I) u, 0)`. The commutator subgroup meets the fiber
//! in the image of `A - I`, which has finite index `|2 - trace(A)|`.

use alloc::vec::Vec;

use crate::group::{Certificate, Group};
use crate::rational::ExtRational;

mod decompose;

pub use decompose::{paper_log_decomposition, DecompositionStep, LogDecomposition, Piece, DecompositionParams};

pub type Vec2 = [i64; 2];
pub type SolCommutatorExpression = Certificate<SolElement>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolError {
    #[error("matrix has determinant {det}, expected 1")]
    Determinant { det: i64 },
    #[error("matrix has trace {trace}, expected |trace| > 2")]
    NotAnosov { trace: i64 },
    #[error("integer overflow in group arithmetic")]
    Overflow,
    #[error("({0}, {1}) is not in the commutator subgroup")]
    NotMember(i64, i64),
    #[error("power must be at least 1, got {0}")]
    NonPositivePower(i64),
    #[error("max depth must be at least 1")]
    ZeroDepth,
    #[error("recursion exceeded depth {max_depth}")]
    DepthExceeded { max_depth: usize, partial: Vec<DecompositionStep> },
    #[error("residual did not shrink at depth {depth}")]
    NoContraction { depth: usize },
    #[error("vector entries must be at most 2^52 in absolute value")]
    InputTooLarge,
}

/// An integer matrix with determinant 1 and `|trace| > 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct AnosovMatrix([[i64; 2]; 2]);

impl AnosovMatrix {
    pub fn new(m: [[i64; 2]; 2]) -> Result<Self, SolError> {
        let det = m[0][0] as i128 * m[1][1] as i128 - m[0][1] as i128 * m[1][0] as i128;
        if det != 1 {
            return Err(SolError::Determinant { det: det.clamp(i64::MIN as i128, i64::MAX as i128) as i64 });
        }
        let trace = m[0][0].checked_add(m[1][1]).ok_or(SolError::Overflow)?;
        if trace.abs() <= 2 {
            return Err(SolError::NotAnosov { trace });
        }
        Ok(AnosovMatrix(m))
    }

    /// Row-major entries.
    pub fn from_row_major(e: [i64; 4]) -> Result<Self, SolError> {
        Self::new([[e[0], e[1]], [e[2], e[3]]])
    }

    pub fn entries(&self) -> [[i64; 2]; 2] {
        self.0
    }

    pub fn trace(&self) -> i64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn inverse(&self) -> AnosovMatrix {
        let [[a, b], [c, d]] = self.0;
        AnosovMatrix([[d, -b], [-c, a]])
    }

    pub fn apply(&self, v: Vec2) -> Result<Vec2, SolError> {
        let m = &self.0;
        let x = m[0][0] as i128 * v[0] as i128 + m[0][1] as i128 * v[1] as i128;
        let y = m[1][0] as i128 * v[0] as i128 + m[1][1] as i128 * v[1] as i128;
        Ok([narrow(x)?, narrow(y)?])
    }

    /// `A^k v` for any integer `k`.
    pub fn apply_power(&self, k: i64, v: Vec2) -> Result<Vec2, SolError> {
        let step = if k < 0 { self.inverse() } else { *self };
        let mut out = v;
        for _ in 0..k.unsigned_abs() {
            out = step.apply(out)?;
        }
        Ok(out)
    }

    /// `(A - I) u`.
    pub fn minus_identity(&self, u: Vec2) -> Result<Vec2, SolError> {
        let au = self.apply(u)?;
        Ok([sub(au[0], u[0])?, sub(au[1], u[1])?])
    }

    /// `det(A - I) = 2 - trace(A)`, the signed index of `(A - I) Z^2`.
    pub fn index(&self) -> i64 {
        2 - self.trace()
    }
}

fn narrow(x: i128) -> Result<i64, SolError> {
    i64::try_from(x).map_err(|_| SolError::Overflow)
}

fn add(a: i64, b: i64) -> Result<i64, SolError> {
    a.checked_add(b).ok_or(SolError::Overflow)
}

fn sub(a: i64, b: i64) -> Result<i64, SolError> {
    a.checked_sub(b).ok_or(SolError::Overflow)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct SolElement {
    pub v: Vec2,
    pub t: i64,
}

impl SolElement {
    pub fn new(v: Vec2, t: i64) -> Self {
        SolElement { v, t }
    }

    pub fn fiber(v: Vec2) -> Self {
        SolElement { v, t: 0 }
    }

    /// The generator `((0, 0), 1)` of the base `Z`.
    pub fn base_generator() -> Self {
        SolElement { v: [0, 0], t: 1 }
    }
}

/// `Z^2 x|_A Z`. The [`Group`] methods panic on `i64` overflow; the `try_`
/// methods report it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolGroup {
    pub matrix: AnosovMatrix,
}

impl SolGroup {
    pub fn new(matrix: AnosovMatrix) -> Self {
        SolGroup { matrix }
    }

    pub fn try_mul(&self, a: &SolElement, b: &SolElement) -> Result<SolElement, SolError> {
        let w = self.matrix.apply_power(a.t, b.v)?;
        Ok(SolElement { v: [add(a.v[0], w[0])?, add(a.v[1], w[1])?], t: add(a.t, b.t)? })
    }

    /// `(v, t)^-1 = (-A^-t v, -t)`.
    pub fn try_inv(&self, a: &SolElement) -> Result<SolElement, SolError> {
        let t = a.t.checked_neg().ok_or(SolError::Overflow)?;
        let w = self.matrix.apply_power(t, a.v)?;
        Ok(SolElement { v: [sub(0, w[0])?, sub(0, w[1])?], t })
    }
}

impl Group for SolGroup {
    type Element = SolElement;

    fn identity(&self) -> SolElement {
        SolElement::default()
    }

    fn mul(&self, a: &SolElement, b: &SolElement) -> SolElement {
        self.try_mul(a, b).expect("Sol arithmetic overflow")
    }

    fn inv(&self, a: &SolElement) -> SolElement {
        self.try_inv(a).expect("Sol arithmetic overflow")
    }
}

/// The integral solution `u` of `(A - I) u = a`, if any. `A - I` is
/// invertible over `Q` because `det(A - I) = 2 - trace != 0`.
pub fn membership_commutator_subgroup(a: Vec2, m: &AnosovMatrix) -> Option<Vec2> {
    let [[p, q], [r, s]] = m.entries();
    let (p, q, r, s) = (p as i128 - 1, q as i128, r as i128, s as i128 - 1);
    let det = p * s - q * r;
    let (x, y) = (a[0] as i128, a[1] as i128);
    let nx = s * x - q * y;
    let ny = -r * x + p * y;
    if nx % det != 0 || ny % det != 0 {
        return None;
    }
    Some([i64::try_from(nx / det).ok()?, i64::try_from(ny / det).ok()?])
}

/// Smallest `k >= 1` with `k a` in `(A - I) Z^2`; the order of `a` in `H_1`.
pub fn homology_order(a: Vec2, m: &AnosovMatrix) -> u64 {
    let bound = m.index().unsigned_abs();
    (1..=bound)
        .find(|&k| {
            let ka = [a[0] as i128 * k as i128, a[1] as i128 * k as i128];
            ka.iter().all(|x| i64::try_from(*x).is_ok())
                && membership_commutator_subgroup([ka[0] as i64, ka[1] as i64], m).is_some()
        })
        .unwrap_or(bound)
}

/// `a = [g, u]` with `g = ((0, 0), 1)` and `(A - I) u = a`; empty for `a = 0`.
pub fn commutator_certificate(a: Vec2, m: &AnosovMatrix) -> Result<SolCommutatorExpression, SolError> {
    power_certificate(a, m, 1)
}

/// `a^n = [g, n u]`, one commutator for every `n`.
pub fn power_certificate(a: Vec2, m: &AnosovMatrix, n: i64) -> Result<SolCommutatorExpression, SolError> {
    if n < 1 {
        return Err(SolError::NonPositivePower(n));
    }
    let group = SolGroup::new(*m);
    let target_v = [a[0].checked_mul(n).ok_or(SolError::Overflow)?, a[1].checked_mul(n).ok_or(SolError::Overflow)?];
    let target = SolElement::fiber(target_v);
    if target_v == [0, 0] {
        return Ok(Certificate::new(&group, Vec::new(), target).expect("empty product is the identity"));
    }
    let u = membership_commutator_subgroup(a, m).ok_or(SolError::NotMember(a[0], a[1]))?;
    let nu = [u[0].checked_mul(n).ok_or(SolError::Overflow)?, u[1].checked_mul(n).ok_or(SolError::Overflow)?];
    // evaluation is exact but can overflow; check it first so verification cannot panic
    m.minus_identity(nu)?;
    let pairs = alloc::vec![(SolElement::base_generator(), SolElement::fiber(nu))];
    Certificate::new(&group, pairs, target).map_err(|_| SolError::NotMember(a[0], a[1]))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolSclReport {
    pub vector: Vec2,
    /// `a` itself lies in the commutator subgroup.
    pub member: bool,
    /// Order of `a` in `H_1`; 1 for members.
    pub homology_order: u64,
    /// Always 0: every fiber element has finite order in `H_1`.
    pub scl: ExtRational,
    /// One commutator equal to `a^k`, `k = homology_order`.
    pub certificate: SolCommutatorExpression,
}

/// `scl` of a fiber element. Members satisfy `cl(a^n) <= 1` for all `n`;
/// a non-member has `a^k` in the commutator subgroup for `k` its order in
/// `H_1`, and `scl(a) = scl(a^k) / k = 0`.
pub fn sol_scl_report(a: Vec2, m: &AnosovMatrix) -> Result<SolSclReport, SolError> {
    let member = membership_commutator_subgroup(a, m).is_some();
    let k = homology_order(a, m);
    let ka = [a[0].checked_mul(k as i64).ok_or(SolError::Overflow)?, a[1].checked_mul(k as i64).ok_or(SolError::Overflow)?];
    let certificate = commutator_certificate(ka, m)?;
    Ok(SolSclReport { vector: a, member, homology_order: k, scl: ExtRational::zero(), certificate })
}
