//! Eigen-direction recursion writing a fiber element as a product of
//! `O(log |a|)` commutators.
//!
//! Write `a = (A - I) u`. Split `u` along the real eigenvectors `e1`
//! (expanding, `|l| > 1`) and `e2` (contracting) as `u = x1 e1 + x2 e2`. The
//! expanding part is approximated by `A^k1 b1` and the contracting part by
//! `A^-k2 b2` with `b1, b2` integer vectors of size about `R`. Each piece is a
//! single commutator `[g, A^k b] = g^k [g, b] g^-k`, and what is left over is
//! at most half as large in the sup norm once it exceeds the base bound `B`.
//! Below `B` the residual `r` contributes the bounded factor `[g, r]`.
//!
//! Floating point only chooses the pieces; the residuals and the final
//! expression are exact integers and the expression is re-verified.

use alloc::vec::Vec;

use libm::{fabs, floor, log, pow, round, sqrt};

use super::{membership_commutator_subgroup, AnosovMatrix, SolCommutatorExpression, SolElement, SolError, SolGroup, Vec2};
use crate::group::Certificate;

/// Inputs are limited so that every float in the recursion is an exact
/// integer conversion.
const MAX_ENTRY: i64 = 1 << 52;

/// Per-matrix constants of the recursion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecompositionParams {
    /// Eigenvalue with `|lambda| > 1`.
    pub lambda: f64,
    /// Unit eigenvectors for `lambda` and `1 / lambda`.
    pub e1: [f64; 2],
    pub e2: [f64; 2],
    /// Operator norms of the two eigenprojections.
    pub proj_norms: [f64; 2],
    /// Size `R` of the bounded vectors `b1, b2`.
    pub radius: f64,
    /// Residuals with sup norm at most `B` are not split further.
    pub base_bound: i64,
    /// Sup-norm contraction factor above `B`.
    pub contraction: f64,
}

impl DecompositionParams {
    pub fn for_matrix(m: &AnosovMatrix) -> Self {
        let [[a, b], _] = m.entries();
        let (a, b) = (a as f64, b as f64);
        let tr = m.trace() as f64;
        let disc = sqrt(tr * tr - 4.0);
        let lambda = if tr > 0.0 { (tr + disc) / 2.0 } else { (tr - disc) / 2.0 };
        // b != 0 because ad = 1 would force |trace| = 2
        let unit = |l: f64| {
            let v = [b, l - a];
            let n = sqrt(v[0] * v[0] + v[1] * v[1]);
            [v[0] / n, v[1] / n]
        };
        let (e1, e2) = (unit(lambda), unit(1.0 / lambda));
        let det = e1[0] * e2[1] - e2[0] * e1[1];
        // rows of [e1 e2]^-1
        let r1 = [e2[1] / det, -e2[0] / det];
        let r2 = [-e1[1] / det, e1[0] / det];
        let proj_norms = [sqrt(r1[0] * r1[0] + r1[1] * r1[1]), sqrt(r2[0] * r2[0] + r2[1] * r2[1])];
        let sq = proj_norms[0] * proj_norms[0] + proj_norms[1] * proj_norms[1];
        // rounding error |delta|_2 <= sqrt(2)/2 grows to at most
        // ||P1|| |x1| / (sqrt 2 R) + ||P2|| / sqrt 2 after A^k1 (and symmetrically)
        let radius = 2.0 * sq;
        let additive = (proj_norms[0] + proj_norms[1]) / core::f64::consts::SQRT_2;
        let contraction = sq / radius;
        assert!(contraction < 1.0);
        let base_bound = libm::ceil(2.0 * (additive + radius)) as i64 + 1;
        DecompositionParams { lambda, e1, e2, proj_norms, radius, base_bound, contraction }
    }

    fn coefficients(&self, r: Vec2) -> [f64; 2] {
        let (e1, e2) = (self.e1, self.e2);
        let det = e1[0] * e2[1] - e2[0] * e1[1];
        let (x, y) = (r[0] as f64, r[1] as f64);
        [(e2[1] * x - e2[0] * y) / det, (-e1[1] * x + e1[0] * y) / det]
    }
}

/// One commutator `[g, A^k b] = g^k [g, b] g^-k` with `b` bounded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Piece {
    pub k: i64,
    pub base: Vec2,
    /// `A^k b`.
    pub vector: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionStep {
    pub depth: usize,
    pub residual: Vec2,
    pub pieces: Vec<Piece>,
    pub next: Vec2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LogDecomposition {
    pub vector: Vec2,
    /// `(A - I) u = vector`.
    pub u: Vec2,
    pub expression: SolCommutatorExpression,
    pub steps: Vec<DecompositionStep>,
    pub params: DecompositionParams,
}

impl LogDecomposition {
    pub fn factor_count(&self) -> usize {
        self.expression.genus()
    }
}

fn sup(v: Vec2) -> i64 {
    v[0].abs().max(v[1].abs())
}

fn sub(a: Vec2, b: Vec2) -> Result<Vec2, SolError> {
    Ok([a[0].checked_sub(b[0]).ok_or(SolError::Overflow)?, a[1].checked_sub(b[1]).ok_or(SolError::Overflow)?])
}

/// Largest `k >= 0` with `|x| / |l|^k >= radius`, or `None` when `|x| < radius`.
fn exponent(x: f64, lambda: f64, radius: f64) -> Option<i64> {
    if !(fabs(x) >= radius) {
        return None;
    }
    let mut k = floor(log(fabs(x) / radius) / log(fabs(lambda))) as i64;
    // guard against log rounding at the boundary
    while k > 0 && fabs(x) / pow(fabs(lambda), k as f64) < radius {
        k -= 1;
    }
    Some(k.max(0))
}

fn round_vec(y: [f64; 2]) -> Vec2 {
    [round(y[0]) as i64, round(y[1]) as i64]
}

/// Recursive decomposition of a member `a` of the commutator subgroup.
/// Every non-terminal step counts towards `max_depth`.
pub fn paper_log_decomposition(a: Vec2, m: &AnosovMatrix, max_depth: usize) -> Result<LogDecomposition, SolError> {
    if max_depth == 0 {
        return Err(SolError::ZeroDepth);
    }
    let u = membership_commutator_subgroup(a, m).ok_or(SolError::NotMember(a[0], a[1]))?;
    if sup(u) > MAX_ENTRY {
        return Err(SolError::InputTooLarge);
    }
    let params = DecompositionParams::for_matrix(m);
    let (l1, l2) = (params.lambda, 1.0 / params.lambda);
    let mut steps = Vec::new();
    let mut r = u;
    let mut depth = 0;
    while r != [0, 0] {
        if sup(r) <= params.base_bound {
            let piece = Piece { k: 0, base: r, vector: r };
            steps.push(DecompositionStep { depth, residual: r, pieces: alloc::vec![piece], next: [0, 0] });
            break;
        }
        if depth == max_depth {
            return Err(SolError::DepthExceeded { max_depth, partial: steps });
        }
        let x = params.coefficients(r);
        let mut pieces = Vec::new();
        if let Some(k) = exponent(x[0], l1, params.radius) {
            let s = x[0] * pow(l1, -(k as f64));
            let base = round_vec([s * params.e1[0], s * params.e1[1]]);
            pieces.push(Piece { k, base, vector: m.apply_power(k, base)? });
        }
        if let Some(k) = exponent(x[1], l1, params.radius) {
            let s = x[1] * pow(l2, k as f64);
            let base = round_vec([s * params.e2[0], s * params.e2[1]]);
            pieces.push(Piece { k: -k, base, vector: m.apply_power(-k, base)? });
        }
        let mut next = r;
        for p in &pieces {
            next = sub(next, p.vector)?;
        }
        if sup(next) >= sup(r) {
            return Err(SolError::NoContraction { depth });
        }
        steps.push(DecompositionStep { depth, residual: r, pieces, next });
        r = next;
        depth += 1;
    }
    let pairs: Vec<(SolElement, SolElement)> = steps
        .iter()
        .flat_map(|s| s.pieces.iter())
        .filter(|p| p.vector != [0, 0])
        .map(|p| (SolElement::base_generator(), SolElement::fiber(p.vector)))
        .collect();
    for (_, y) in &pairs {
        m.minus_identity(y.v)?;
    }
    let expression = Certificate::new(&SolGroup::new(*m), pairs, SolElement::fiber(a)).map_err(|_| SolError::NotMember(a[0], a[1]))?;
    Ok(LogDecomposition { vector: a, u, expression, steps, params })
}
