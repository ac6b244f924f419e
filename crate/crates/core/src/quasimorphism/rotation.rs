//! Lifts to `R` of projective circle maps and their rotation numbers.
//!
//! `RP^1` is parameterized as `R/Z` by `theta -> [cos(pi theta) : sin(pi theta)]`.
//! A matrix of determinant one acts by an orientation preserving
//! homeomorphism, and a lift `f` is fixed by the value `f(0)`.

use core::f64::consts::PI;

use libm::{atan2, cos, floor, sin};

pub type Matrix2 = [[f64; 2]; 2];

const DET_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, thiserror::Error)]
pub enum RotationError {
    #[error("determinant {0} is not 1")]
    Determinant(f64),
    #[error("iteration count must be at least 1")]
    NoIterations,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CircleLift {
    matrix: Matrix2,
    base_value: f64,
}

/// Projective angle of `M (cos pi theta, sin pi theta)` in `[0, 1)`.
fn projective_angle(m: &Matrix2, theta: f64) -> f64 {
    let (c, s) = (cos(PI * theta), sin(PI * theta));
    let x = m[0][0] * c + m[0][1] * s;
    let y = m[1][0] * c + m[1][1] * s;
    frac(atan2(y, x) / PI)
}

/// `x mod 1` in `[0, 1)`.
fn frac(x: f64) -> f64 {
    let r = x - floor(x);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

fn det(m: &Matrix2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn matmul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

/// The lift of the projective action of `m` with `f(0)` in `[branch, branch + 1)`.
pub fn lift_from_matrix(m: Matrix2, branch: i64) -> Result<CircleLift, RotationError> {
    let d = det(&m);
    if !((d - 1.0).abs() <= DET_TOLERANCE) {
        return Err(RotationError::Determinant(d));
    }
    Ok(CircleLift { matrix: m, base_value: projective_angle(&m, 0.0) + branch as f64 })
}

impl CircleLift {
    pub fn identity() -> Self {
        CircleLift { matrix: [[1.0, 0.0], [0.0, 1.0]], base_value: 0.0 }
    }

    /// Rotation of the plane by `pi * t`; its lift is `x -> x + t` once the
    /// branch is chosen so that `f(0) = t`.
    pub fn rotation(t: f64) -> Self {
        let (c, s) = (cos(PI * t), sin(PI * t));
        let m = [[c, -s], [s, c]];
        CircleLift { matrix: m, base_value: t }
    }

    pub fn matrix(&self) -> Matrix2 {
        self.matrix
    }

    pub fn base_value(&self) -> f64 {
        self.base_value
    }

    /// `f(x)`.
    ///
    /// For `t` in `[0, 1)` the source direction turns counterclockwise by
    /// `pi t < pi`, so its image turns by an angle in `[0, pi)`. That angle is
    /// read off from `cross(M u0, M ut) = det(M) sin(pi t) >= 0` and the dot
    /// product, so no branch has to be guessed.
    pub fn apply(&self, x: f64) -> f64 {
        let whole = floor(x);
        let t = x - whole;
        let m = &self.matrix;
        let (c, s) = (cos(PI * t), sin(PI * t));
        let (x0, y0) = (m[0][0], m[1][0]);
        let (xt, yt) = (m[0][0] * c + m[0][1] * s, m[1][0] * c + m[1][1] * s);
        let shift = atan2(det(m) * s, x0 * xt + y0 * yt) / PI;
        self.base_value + shift + whole
    }

    /// `self o other`.
    pub fn compose(&self, other: &CircleLift) -> CircleLift {
        CircleLift { matrix: matmul(&self.matrix, &other.matrix), base_value: self.apply(other.base_value) }
    }

    /// The lift `g` with `f(g(x)) = x`.
    pub fn inverse(&self) -> CircleLift {
        let m = &self.matrix;
        let inv = [[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]];
        let guess = projective_angle(&inv, 0.0);
        // f(guess) is an integer up to rounding; shift guess by that integer
        let k = libm::round(self.apply(guess));
        CircleLift { matrix: inv, base_value: guess - k }
    }

    /// `g f g^-1`.
    pub fn conjugate_by(&self, g: &CircleLift) -> CircleLift {
        g.compose(self).compose(&g.inverse())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RotationEstimate {
    pub value: f64,
    pub error_bound: f64,
}

/// `f^n(0) / n`, within `1/n` of the rotation number (defect at most 1).
pub fn rotation_number(f: &CircleLift, n: u64) -> Result<RotationEstimate, RotationError> {
    if n == 0 {
        return Err(RotationError::NoIterations);
    }
    let mut x = 0.0;
    for _ in 0..n {
        x = f.apply(x);
    }
    Ok(RotationEstimate { value: x / n as f64, error_bound: 1.0 / n as f64 })
}
