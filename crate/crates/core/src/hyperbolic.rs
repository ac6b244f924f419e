//! Closed-form estimates for short geodesics, Margulis tubes and Dehn filling.
//!
//! Every function here is a pure double precision evaluation of a closed
//! formula. Constants with four or five significant digits are used exactly
//! as stated in the literature.

use core::f64::consts::PI;

use libm::{cosh, exp, log, sinh, sqrt, tanh};
use num_complex::Complex64;
use num_integer::Integer;

use crate::Rational;

/// Hodgson-Kerckhoff tube constant: `length >= 0.5404 tanh(T) / cosh(2T)`.
pub const HK_CONSTANT: f64 = 0.5404;
/// Constant in the surgery length bound.
pub const SURGERY_CONSTANT: f64 = 3.993;
/// `1.0376 e^{2T} >= 2 cosh(2T) / tanh(T)` for `T > 2`.
pub const AUDIT_COSH_CONSTANT: f64 = 1.0376;
/// `2 sinh(T) > 0.9816 e^T` for `T > 2`.
pub const AUDIT_SINH_CONSTANT: f64 = 0.9816;
/// `e^T >= 1.0206 length^{-1/2}`.
pub const AUDIT_RADIUS_CONSTANT: f64 = 1.0206;
/// `length sinh(T) > 0.5009 length^{1/2}`.
pub const AUDIT_CHAIN_CONSTANT: f64 = 0.5009;
/// Defect bound of the tube quasimorphism.
pub const TUBE_DEFECT: f64 = 2.0 * PI;
/// Smallest tube radius for which the surgery length bound is stated.
pub const MIN_SURGERY_RADIUS: f64 = 2.0;
/// Tolerance for the cusp area normalization `|Im(conj(m) l)| = 1`.
pub const CUSP_AREA_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum HyperbolicError {
    #[error("angles must be non-negative with sum below pi")]
    NotHyperbolicTriangle,
    #[error("tube radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("core length must be non-negative and finite, got {0}")]
    InvalidCoreLength(f64),
    #[error("surgery coefficient p must be at least 1, got {0}")]
    NonPositiveP(i64),
    #[error("Euler characteristic must be at most -1, got {0}")]
    NonNegativeEuler(i64),
    #[error("multiplicity must be at least 1")]
    ZeroMultiplicity,
    #[error("tube radius must be at least 2, got {0}")]
    RadiusBelowTwo(f64),
    #[error("audit grid points must exceed 2, got {0}")]
    AuditGridOutOfRange(f64),
    #[error("cusp area |Im(conj(m) l)| = {0} is not 1")]
    CuspNotNormalized(f64),
    #[error("slope coefficients ({0}, {1}) are not coprime")]
    NotPrimitive(i64, i64),
    #[error("quadratic form vanishes")]
    DegenerateForm,
    #[error("meridian length must be positive, got {0}")]
    NonPositiveLength(f64),
    #[error("gap inequality denominator m/(12g-6) - {k} = {value} is not positive")]
    NoGapInformation { k: u32, value: f64 },
    #[error("genus and wrapping number must be at least 1")]
    InvalidGapTopology,
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("4 epsilon = {four_eps} exceeds the Margulis constant {margulis}")]
    EpsilonAboveMargulis { four_eps: f64, margulis: f64 },
    #[error("epsilon {eps} is not below the 2-dimensional Margulis constant {cap}")]
    EpsilonAboveSurfaceCap { eps: f64, cap: f64 },
    #[error("constant must be positive, got {0}")]
    NonPositiveConstant(f64),
}

/// Area `pi - alpha - beta - gamma` of a hyperbolic triangle.
pub fn ideal_triangle_area(alpha: f64, beta: f64, gamma: f64) -> Result<f64, HyperbolicError> {
    let sum = alpha + beta + gamma;
    if !(alpha >= 0.0 && beta >= 0.0 && gamma >= 0.0 && sum < PI) {
        return Err(HyperbolicError::NotHyperbolicTriangle);
    }
    Ok(PI - sum)
}

/// Least core length compatible with an embedded tube of radius `t`.
pub fn hk_min_core_length(t: f64) -> Result<f64, HyperbolicError> {
    if !(t > 0.0) {
        return Err(HyperbolicError::NonPositiveRadius(t));
    }
    Ok(HK_CONSTANT * tanh(t) / cosh(2.0 * t))
}

/// A closed geodesic and the radius of an embedded tube around it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TubeParams {
    core_length: f64,
    radius: f64,
}

impl TubeParams {
    /// `core_length == 0` is accepted as the degenerate limit.
    pub fn new(core_length: f64, radius: f64) -> Result<Self, HyperbolicError> {
        if !(core_length >= 0.0 && core_length.is_finite()) {
            return Err(HyperbolicError::InvalidCoreLength(core_length));
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(HyperbolicError::NonPositiveRadius(radius));
        }
        Ok(TubeParams { core_length, radius })
    }

    pub fn core_length(&self) -> f64 {
        self.core_length
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TubeQuasimorphism {
    pub value: f64,
    pub defect_upper: f64,
}

/// Value on the core class of the homogeneous quasimorphism built from the
/// tube's area form: `length * sinh(T) * T / (T + 1)`, defect at most `2 pi`.
pub fn tube_qm_value(t: &TubeParams) -> TubeQuasimorphism {
    let r = t.radius;
    TubeQuasimorphism { value: t.core_length * sinh(r) * r / (r + 1.0), defect_upper: TUBE_DEFECT }
}

/// `scl >= phi / (2 D) = phi / (4 pi)` for the core class.
pub fn scl_lower_from_tube(t: &TubeParams) -> f64 {
    let q = tube_qm_value(t);
    q.value / (2.0 * q.defect_upper)
}

/// Boundary area `2 pi length sinh(T) cosh(T)` of an embedded tube.
pub fn tube_area(t: &TubeParams) -> f64 {
    2.0 * PI * t.core_length * sinh(t.radius) * cosh(t.radius)
}

/// A surface of Euler characteristic `chi` bounding `multiplicity` times the longitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfaceData {
    chi: i64,
    multiplicity: u64,
}

impl SurfaceData {
    pub fn new(chi: i64, multiplicity: u64) -> Result<Self, HyperbolicError> {
        if chi > -1 {
            return Err(HyperbolicError::NonNegativeEuler(chi));
        }
        if multiplicity == 0 {
            return Err(HyperbolicError::ZeroMultiplicity);
        }
        Ok(SurfaceData { chi, multiplicity })
    }

    pub fn chi(&self) -> i64 {
        self.chi
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    /// `chi / multiplicity`.
    pub fn chi_q(&self) -> Rational {
        Rational::new(self.chi, self.multiplicity as i64)
    }

    fn chi_q_f64(&self) -> f64 {
        self.chi as f64 / self.multiplicity as f64
    }
}

/// `scl(core) <= -chi_Q / (2p)` after `p/q` filling.
pub fn scl_upper_from_surgery(s: &SurfaceData, p: i64) -> Result<Rational, HyperbolicError> {
    if p < 1 {
        return Err(HyperbolicError::NonPositiveP(p));
    }
    Ok(-s.chi_q() / Rational::from_integer(2 * p))
}

/// Upper bound `(3.993 pi |chi_Q| (T+1) / (T p))^2` on the core length of a
/// `p/q` filling whose core has an embedded tube of radius `T >= 2`.
pub fn surgery_length_bound(s: &SurfaceData, t: f64, p: i64) -> Result<f64, HyperbolicError> {
    if !(t >= MIN_SURGERY_RADIUS) {
        return Err(HyperbolicError::RadiusBelowTwo(t));
    }
    if p < 1 {
        return Err(HyperbolicError::NonPositiveP(p));
    }
    let x = SURGERY_CONSTANT * PI * s.chi_q_f64().abs() * (t + 1.0) / (t * p as f64);
    Ok(x * x)
}

/// Whether the scl sandwich `-chi_Q/(2p) >= phi/(4 pi)` holds for a tube.
pub fn surgery_sandwich_holds(s: &SurfaceData, p: i64, tube: &TubeParams) -> Result<bool, HyperbolicError> {
    let upper = crate::rational::ratio_to_f64(scl_upper_from_surgery(s, p)?);
    Ok(upper >= scl_lower_from_tube(tube))
}

/// Minimum margin of one audited inequality over a grid.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InequalityCheck {
    pub name: &'static str,
    pub min_margin: f64,
    pub at_radius: f64,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurgeryAudit {
    pub grid_points: usize,
    pub checks: [InequalityCheck; 4],
}

impl SurgeryAudit {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violations == 0)
    }
}

/// Checks the elementary inequalities behind the surgery length bound at
/// every grid radius (all must exceed 2):
///
/// 1. `1.0376 e^{2T} >= 2 cosh(2T) / tanh(T)`
/// 2. `2 sinh(T) > 0.9816 e^T`
/// 3. `e^T >= 1.0206 L^{-1/2}` at the least admissible length `L = hk_min_core_length(T)`
/// 4. `L sinh(T) > 0.5009 L^{1/2}` at the same `L`
///
/// Margins are `lhs - rhs`; a negative margin (or zero for the strict ones)
/// counts as a violation.
pub fn surgery_proof_audit(grid: &[f64]) -> Result<SurgeryAudit, HyperbolicError> {
    if let Some(&t) = grid.iter().find(|&&t| !(t > MIN_SURGERY_RADIUS && t.is_finite())) {
        return Err(HyperbolicError::AuditGridOutOfRange(t));
    }
    let names = ["1.0376 e^2T >= 2cosh2T/tanhT", "2sinhT > 0.9816 e^T", "e^T >= 1.0206 L^-1/2", "L sinhT > 0.5009 L^1/2"];
    let mut checks = names.map(|name| InequalityCheck { name, min_margin: f64::INFINITY, at_radius: f64::NAN, violations: 0 });
    for &t in grid {
        let l = HK_CONSTANT * tanh(t) / cosh(2.0 * t);
        let margins = [
            (AUDIT_COSH_CONSTANT * exp(2.0 * t) - 2.0 * cosh(2.0 * t) / tanh(t), false),
            (2.0 * sinh(t) - AUDIT_SINH_CONSTANT * exp(t), true),
            (exp(t) - AUDIT_RADIUS_CONSTANT / sqrt(l), false),
            (l * sinh(t) - AUDIT_CHAIN_CONSTANT * sqrt(l), true),
        ];
        for (check, (m, strict)) in checks.iter_mut().zip(margins) {
            if m < check.min_margin {
                check.min_margin = m;
                check.at_radius = t;
            }
            if m < 0.0 || (strict && m == 0.0) {
                check.violations += 1;
            }
        }
    }
    Ok(SurgeryAudit { grid_points: grid.len(), checks })
}

/// `n` evenly spaced radii in `(2, 10]`.
pub fn default_audit_grid(n: usize) -> alloc::vec::Vec<f64> {
    (1..=n).map(|i| 2.0 + 8.0 * i as f64 / n as f64).collect()
}

/// Euclidean cusp torus of area one with meridian `m` and longitude `l`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CuspShape {
    m: Complex64,
    l: Complex64,
}

impl CuspShape {
    pub fn new(m: Complex64, l: Complex64) -> Result<Self, HyperbolicError> {
        let area = (m.conj() * l).im.abs();
        if !((area - 1.0).abs() <= CUSP_AREA_TOLERANCE) {
            return Err(HyperbolicError::CuspNotNormalized(area));
        }
        Ok(CuspShape { m, l })
    }

    /// The area-one cusp with meridian `m` and longitude `m (shear + i/|m|^2)`.
    pub fn with_meridian(m: Complex64, shear: f64) -> Result<Self, HyperbolicError> {
        let n = m.norm_sqr();
        if !(n > 0.0) {
            return Err(HyperbolicError::NonPositiveLength(0.0));
        }
        Self::new(m, m * Complex64::new(shear, 1.0 / n))
    }

    pub fn meridian(&self) -> Complex64 {
        self.m
    }

    pub fn longitude(&self) -> Complex64 {
        self.l
    }

    /// `|p m + q l|^2` for real coefficients.
    pub fn slope_length_sq(&self, p: f64, q: f64) -> f64 {
        (self.m * p + self.l * q).norm_sqr()
    }
}

/// A primitive slope `p m + q l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurgeryCoeffs {
    p: i64,
    q: i64,
}

impl SurgeryCoeffs {
    pub fn new(p: i64, q: i64) -> Result<Self, HyperbolicError> {
        if p.gcd(&q) != 1 {
            return Err(HyperbolicError::NotPrimitive(p, q));
        }
        Ok(SurgeryCoeffs { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }
}

/// The Neumann-Zagier form `Q(p, q) = |p m + q l|^2` on an area-one cusp.
pub fn nz_quadratic_form(c: &CuspShape, s: &SurgeryCoeffs) -> f64 {
    c.slope_length_sq(s.p as f64, s.q as f64)
}

/// A value that is only asymptotically correct, with an error term of
/// unknown constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Approximate {
    pub value: f64,
}

/// Leading term `2 pi / Q(p, q)` of the filled core length; the error is
/// `O(1/(p^4 + q^4))` with no explicit constant.
pub fn nz_core_length(c: &CuspShape, s: &SurgeryCoeffs) -> Result<Approximate, HyperbolicError> {
    let q = nz_quadratic_form(c, s);
    if !(q > 0.0) {
        return Err(HyperbolicError::DegenerateForm);
    }
    Ok(Approximate { value: 2.0 * PI / q })
}

/// Which area comparison feeds the genus bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenusBoundVariant {
    /// `-chi_Q >= 1 / (2 pi length(m)^2)`.
    Tube,
    /// Boroczky's packing density replaces `2 pi` by `6`.
    Boroczky,
}

/// Lower bound on `-chi_Q` from the length of the shortest essential
/// meridian on an area-one cusp.
pub fn cusp_genus_bound(len_m: f64, variant: GenusBoundVariant) -> Result<f64, HyperbolicError> {
    if !(len_m > 0.0) {
        return Err(HyperbolicError::NonPositiveLength(len_m));
    }
    let c = match variant {
        GenusBoundVariant::Tube => 2.0 * PI,
        GenusBoundVariant::Boroczky => 6.0,
    };
    Ok(1.0 / (c * len_m * len_m))
}

/// Lower bound `1/len_m^2` on the maximal cusp area, valid when `len_m < 1`
/// (every essential slope of the maximal cusp has length at least one).
pub fn maximal_cusp_area_lower_bound(len_m: f64) -> Option<f64> {
    (len_m > 0.0 && len_m < 1.0).then(|| 1.0 / (len_m * len_m))
}

/// Lower bound on the tube radius `T` from `e^T >= C_n length^{-2/(n+1)}`.
/// `C_n` has no known closed form and must be supplied.
pub fn reznikov_radius_lower_bound(c_n: f64, dimension: u32, length: f64) -> Result<f64, HyperbolicError> {
    if !(c_n > 0.0) {
        return Err(HyperbolicError::NonPositiveConstant(c_n));
    }
    if !(length > 0.0) {
        return Err(HyperbolicError::NonPositiveLength(length));
    }
    Ok(log(c_n) - 2.0 / (dimension as f64 + 1.0) * log(length))
}

/// Which translate inequality is rearranged into a length bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GapVariant {
    /// Uniform over all closed hyperbolic manifolds: `2 length + 4 eps >= ...`, `k = 2`.
    Uniform,
    /// A fixed manifold: `length + 4 eps >= ...`, `k = 1`.
    FixedManifold,
}

impl GapVariant {
    fn k(self) -> u32 {
        match self {
            GapVariant::Uniform => 2,
            GapVariant::FixedManifold => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GapParams {
    /// Times the boundary wraps the geodesic.
    pub m: u64,
    /// Genus of the bounding surface.
    pub g: u64,
    pub epsilon: f64,
    /// `epsilon(n)`; when given, `4 epsilon <= margulis_n` is enforced.
    pub margulis_n: Option<f64>,
    /// 2-dimensional Margulis constant; when given, `epsilon` must be below it.
    pub margulis_2: Option<f64>,
}

/// `length <= (4 eps + pi/(6 eps)) / (m/(12g - 6) - k)`.
pub fn length_gap_bound(gp: &GapParams, variant: GapVariant) -> Result<f64, HyperbolicError> {
    if gp.m == 0 || gp.g == 0 {
        return Err(HyperbolicError::InvalidGapTopology);
    }
    if !(gp.epsilon > 0.0) {
        return Err(HyperbolicError::NonPositiveEpsilon(gp.epsilon));
    }
    if let Some(margulis) = gp.margulis_n {
        if 4.0 * gp.epsilon > margulis {
            return Err(HyperbolicError::EpsilonAboveMargulis { four_eps: 4.0 * gp.epsilon, margulis });
        }
    }
    if let Some(cap) = gp.margulis_2 {
        if !(gp.epsilon < cap) {
            return Err(HyperbolicError::EpsilonAboveSurfaceCap { eps: gp.epsilon, cap });
        }
    }
    let k = variant.k();
    let denom = gp.m as f64 / (12.0 * gp.g as f64 - 6.0) - k as f64;
    if !(denom > 0.0) {
        return Err(HyperbolicError::NoGapInformation { k, value: denom });
    }
    Ok(gap_constant(gp.epsilon) / denom)
}

/// `4 eps + pi / (6 eps)`.
pub fn gap_constant(eps: f64) -> f64 {
    4.0 * eps + PI / (6.0 * eps)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OptimalEpsilon {
    pub eps: f64,
    pub min_constant: f64,
}

/// Minimizer of the convex function `4 eps + pi/(6 eps)` on `(0, cap]`.
/// The unconstrained minimum is at `sqrt(pi/24)` with value `2 sqrt(2 pi/3)`.
pub fn optimal_epsilon(cap: f64) -> Result<OptimalEpsilon, HyperbolicError> {
    if !(cap > 0.0) {
        return Err(HyperbolicError::NonPositiveEpsilon(cap));
    }
    let eps = sqrt(PI / 24.0).min(cap);
    Ok(OptimalEpsilon { eps, min_constant: gap_constant(eps) })
}

/// Interval `[1/12, 1/2]` known to contain the first accumulation point of
/// scl on closed hyperbolic manifolds.
pub fn spectral_gap_constants() -> (Rational, Rational) {
    (Rational::new(1, 12), Rational::new(1, 2))
}

/// Whether a certified scl lower bound reaches the homological Margulis constant 1/12.
pub fn above_homological_margulis(lower: Rational) -> bool {
    lower >= spectral_gap_constants().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn triangle_area() {
        assert_eq!(ideal_triangle_area(0.0, 0.0, 0.0), Ok(PI));
        assert!(close(ideal_triangle_area(PI / 2.0, PI / 4.0, 0.0).unwrap(), PI / 4.0, 1e-15));
        assert_eq!(ideal_triangle_area(PI / 3.0, PI / 3.0, PI / 3.0), Err(HyperbolicError::NotHyperbolicTriangle));
        assert_eq!(ideal_triangle_area(-0.1, 0.0, 0.0), Err(HyperbolicError::NotHyperbolicTriangle));
    }

    #[test]
    fn hk_formula() {
        // extended precision (40 digits) evaluation of the formula
        assert!(close(hk_min_core_length(2.0).unwrap(), 0.019_077_049_306_020_386, 1e-15));
        assert!(close(hk_min_core_length(1.0).unwrap(), 0.109_395_022_394_476_1, 1e-15));
        assert_eq!(hk_min_core_length(0.0), Err(HyperbolicError::NonPositiveRadius(0.0)));
        let grid: alloc::vec::Vec<f64> = (0..1000).map(|i| 1.0 + i as f64 * 0.019).collect();
        assert!(grid.windows(2).all(|w| hk_min_core_length(w[1]).unwrap() < hk_min_core_length(w[0]).unwrap()));
    }

    #[test]
    fn tube_formulas() {
        let t = TubeParams::new(0.1, 2.0).unwrap();
        assert!(close(tube_qm_value(&t).value, 0.241_790_693_856_467_9, 1e-15));
        assert_eq!(tube_qm_value(&t).defect_upper, 2.0 * PI);
        assert!(close(scl_lower_from_tube(&t), 0.019_241_092_060_438_02, 1e-15));
        assert!(close(tube_area(&t), 8.573_380_338_357_031, 1e-13));
        let u = TubeParams::new(1.0, 1.0).unwrap();
        assert!(close(tube_qm_value(&u).value, 0.587_600_596_821_900_7, 1e-15));
        assert!(close(scl_lower_from_tube(&u), 0.046_759_769_773_976_67, 1e-15));
        assert_eq!(scl_lower_from_tube(&TubeParams::new(0.0, 3.0).unwrap()), 0.0);
        assert!(TubeParams::new(0.1, 0.0).is_err());
        assert!(TubeParams::new(-0.1, 1.0).is_err());
    }

    #[test]
    fn surgery_scl_bound() {
        let s = SurfaceData::new(-1, 1).unwrap();
        assert_eq!(scl_upper_from_surgery(&s, 50), Ok(Rational::new(1, 100)));
        let s2 = SurfaceData::new(-2, 2).unwrap();
        assert_eq!(scl_upper_from_surgery(&s2, 1), Ok(Rational::new(1, 2)));
        assert_eq!(scl_upper_from_surgery(&s, 0), Err(HyperbolicError::NonPositiveP(0)));
        assert!((1..100).all(|p| scl_upper_from_surgery(&s, p + 1).unwrap() < scl_upper_from_surgery(&s, p).unwrap()));
        assert_eq!(SurfaceData::new(0, 1), Err(HyperbolicError::NonNegativeEuler(0)));
    }

    #[test]
    fn surgery_length_formula() {
        let s = SurfaceData::new(-1, 1).unwrap();
        assert!(close(surgery_length_bound(&s, 2.0, 50).unwrap(), 0.141_625_310_563_425_95, 1e-14));
        let s2 = SurfaceData::new(-2, 1).unwrap();
        assert!(close(surgery_length_bound(&s2, 3.0, 100).unwrap(), 0.111_901_479_951_348_9, 1e-14));
        let a = surgery_length_bound(&s, 2.5, 7).unwrap();
        let b = surgery_length_bound(&s, 2.5, 14).unwrap();
        assert!(close(a / b, 4.0, 1e-12));
        assert_eq!(surgery_length_bound(&s, 1.9, 1), Err(HyperbolicError::RadiusBelowTwo(1.9)));
    }

    #[test]
    fn audit_domain() {
        assert!(surgery_proof_audit(&[2.01, 3.0, 5.0, 10.0]).unwrap().passed());
        assert_eq!(surgery_proof_audit(&[2.0]), Err(HyperbolicError::AuditGridOutOfRange(2.0)));
        assert_eq!(surgery_proof_audit(&[3.0, 1.5]), Err(HyperbolicError::AuditGridOutOfRange(1.5)));
    }

    #[test]
    fn first_audit_inequality_fails_exactly_at_two() {
        // the inequality only holds for T > 2 and is false at T = 2
        let t: f64 = 2.0;
        assert!(AUDIT_COSH_CONSTANT * exp(2.0 * t) < 2.0 * cosh(2.0 * t) / tanh(t));
    }

    #[test]
    fn nz_examples() {
        let c = CuspShape::new(Complex64::new(0.3, 0.0), Complex64::new(0.0, 1.0 / 0.3)).unwrap();
        let s = SurgeryCoeffs::new(10, 1).unwrap();
        assert!(close(nz_quadratic_form(&c, &s), 20.111_111_111_111_11, 1e-11));
        assert!(close(nz_core_length(&c, &s).unwrap().value, 0.312_423_578_810_034_7, 1e-14));
        let s01 = SurgeryCoeffs::new(0, 1).unwrap();
        assert!(close(nz_quadratic_form(&c, &s01), c.longitude().norm_sqr(), 1e-15));
        for k in 1..6 {
            let k = k as f64;
            assert!(close(c.slope_length_sq(3.0 * k, 2.0 * k), k * k * c.slope_length_sq(3.0, 2.0), 1e-9));
        }
        let unit = CuspShape::new(Complex64::new(1.0, 0.0), Complex64::new(0.4, 1.0)).unwrap();
        assert!(close(nz_core_length(&unit, &SurgeryCoeffs::new(1, 0).unwrap()).unwrap().value, 2.0 * PI, 1e-15));
        assert!(CuspShape::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 2.0)).is_err());
        assert_eq!(SurgeryCoeffs::new(4, 2), Err(HyperbolicError::NotPrimitive(4, 2)));
        assert!(SurgeryCoeffs::new(0, 0).is_err());
    }

    #[test]
    fn nz_limit_for_fixed_q() {
        let c = CuspShape::with_meridian(Complex64::new(0.3, 0.2), 0.35).unwrap();
        let p = 1000.0;
        let v = nz_core_length(&c, &SurgeryCoeffs::new(1000, 1).unwrap()).unwrap().value;
        let limit = 2.0 * PI / c.meridian().norm_sqr();
        assert!(((p * p * v) - limit).abs() / limit < 0.01);
    }

    #[test]
    fn genus_bounds() {
        assert!(close(cusp_genus_bound(0.3, GenusBoundVariant::Tube).unwrap(), 1.768_388_256_576_614_8, 1e-14));
        assert!(close(cusp_genus_bound(0.3, GenusBoundVariant::Boroczky).unwrap(), 1.851_851_851_851_851_8, 1e-14));
        for l in [0.01, 0.3, 1.0, 4.0] {
            assert!(cusp_genus_bound(l, GenusBoundVariant::Boroczky).unwrap() >= cusp_genus_bound(l, GenusBoundVariant::Tube).unwrap());
        }
        assert!(maximal_cusp_area_lower_bound(0.5).unwrap() > 1.0);
        assert_eq!(maximal_cusp_area_lower_bound(1.5), None);
    }

    #[test]
    fn tube_area_asymptotics() {
        let t = TubeParams::new(0.01, 10.0).unwrap();
        let ratio = tube_area(&t) / (PI / 2.0 * 0.01 * exp(20.0));
        assert!((ratio - 1.0).abs() < 1e-3);
        assert!(tube_area(&TubeParams::new(0.3, 1e-9).unwrap()) < 1e-8);
    }

    #[test]
    fn gap_bounds() {
        let gp = GapParams { m: 100, g: 1, epsilon: 0.3618, margulis_n: None, margulis_2: None };
        assert!(close(length_gap_bound(&gp, GapVariant::Uniform).unwrap(), 0.197_345_796_698_005_97, 1e-13));
        let small = GapParams { m: 12, ..gp };
        assert!(matches!(length_gap_bound(&small, GapVariant::Uniform), Err(HyperbolicError::NoGapInformation { k: 2, .. })));
        assert!(length_gap_bound(&small, GapVariant::FixedManifold).is_ok());
        let seven = GapParams { m: 7, ..gp };
        assert!(length_gap_bound(&seven, GapVariant::FixedManifold).is_ok());
        let vals: alloc::vec::Vec<f64> =
            (13..200).map(|m| length_gap_bound(&GapParams { m, ..gp }, GapVariant::Uniform).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] < w[0]));
        let capped = GapParams { margulis_n: Some(0.29), ..gp };
        assert!(matches!(length_gap_bound(&capped, GapVariant::Uniform), Err(HyperbolicError::EpsilonAboveMargulis { .. })));
        let surface = GapParams { margulis_2: Some(0.2), ..gp };
        assert!(matches!(length_gap_bound(&surface, GapVariant::Uniform), Err(HyperbolicError::EpsilonAboveSurfaceCap { .. })));
    }

    #[test]
    fn optimal_epsilon_values() {
        let o = optimal_epsilon(1.0).unwrap();
        assert!(close(o.eps, 0.361_800_627_279_133_8, 1e-15));
        assert!(close(o.min_constant, 2.894_405_018_233_070_6, 1e-14));
        let o = optimal_epsilon(0.1).unwrap();
        assert_eq!(o.eps, 0.1);
        assert!(close(o.min_constant, 5.635_987_755_982_988_7, 1e-14));
        let caps = [0.01, 0.05, 0.2, 0.36, 0.5, 2.0];
        assert!(caps.windows(2).all(|w| optimal_epsilon(w[1]).unwrap().min_constant <= optimal_epsilon(w[0]).unwrap().min_constant));
    }

    #[test]
    fn spectral_gap() {
        assert_eq!(spectral_gap_constants(), (Rational::new(1, 12), Rational::new(1, 2)));
        assert!(above_homological_margulis(Rational::new(1, 12)));
        assert!(!above_homological_margulis(Rational::from_integer(0)));
    }

    #[test]
    fn reznikov_bound_is_parameterized() {
        let t = reznikov_radius_lower_bound(1.0, 3, 0.01).unwrap();
        assert!(close(t, -0.5 * log(0.01), 1e-15));
        assert!(reznikov_radius_lower_bound(0.0, 3, 0.01).is_err());
    }
}
