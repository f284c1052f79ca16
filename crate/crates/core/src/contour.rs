//! Integration contours and inverse transforms evaluated along them.
//!
//! Two shapes are supported:
//!
//! * [`Shape::BromwichLine`]: the vertical segment `[c − iT, c + iT]`
//!   traversed upward. With `c` right of every pole this is the truncated
//!   standard inverse; it reproduces `f(x)` for `x ≥ 0` (resp. `F(y)` for
//!   `0 < y ≤ 1`) and tends to zero on the other side, with `O(1/T)`
//!   truncation error for simple-pole transforms.
//! * [`Shape::Rectangle`]: the closed counterclockwise rectangle with
//!   vertical edges at `c_left < c_right` and horizontal edges at `±iT`.
//!   For a rational transform with every pole inside, the Cauchy formula
//!   makes the result exact for any `T` and `δ`, on the whole extended
//!   domain.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;
use crate::oracle::pole_box;
use crate::quad::{uniform_breaks, Estimate, GaussLegendre, Integrator, QuadratureSpec};
use crate::xform::{eval_transform, Rational, TransformExpr};

/// Default offset of contour lines from the nearest pole.
pub const DEFAULT_DELTA: f64 = 0.5;

/// Widest initial panel along any edge; keeps `e^{xz}` and `y^{-z}`
/// oscillation bounded per panel for `|x|, |ln y| ≲ 8`.
pub const MAX_PANEL_WIDTH: f64 = PI / 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    BromwichLine,
    Rectangle,
}

/// An integration path in the complex plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Contour {
    shape: Shape,
    c_right: f64,
    c_left: Option<f64>,
    half_height: f64,
    delta: f64,
}

fn check_common(half_height: f64, delta: f64) -> Result<()> {
    if !(half_height > 0.0) || !half_height.is_finite() {
        return Err(Error::InvalidParameter(
            "half_height must be a positive finite real",
        ));
    }
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidParameter(
            "delta must be a positive finite real",
        ));
    }
    Ok(())
}

impl Contour {
    /// Vertical line `Re z = c`, truncated to `|Im z| ≤ half_height`.
    pub fn bromwich(c: f64, half_height: f64, delta: f64) -> Result<Self> {
        check_common(half_height, delta)?;
        if !c.is_finite() {
            return Err(Error::InvalidParameter("line abscissa must be finite"));
        }
        Ok(Contour {
            shape: Shape::BromwichLine,
            c_right: c,
            c_left: None,
            half_height,
            delta,
        })
    }

    /// Counterclockwise rectangle `[c_left, c_right] × [−iT, iT]`.
    pub fn rectangle(c_left: f64, c_right: f64, half_height: f64, delta: f64) -> Result<Self> {
        check_common(half_height, delta)?;
        if !c_left.is_finite() || !c_right.is_finite() || !(c_left < c_right) {
            return Err(Error::InvalidParameter(
                "rectangle requires c_left < c_right",
            ));
        }
        Ok(Contour {
            shape: Shape::Rectangle,
            c_right,
            c_left: Some(c_left),
            half_height,
            delta,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn c_right(&self) -> f64 {
        self.c_right
    }

    pub fn c_left(&self) -> Option<f64> {
        self.c_left
    }

    pub fn half_height(&self) -> f64 {
        self.half_height
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Oriented straight edges: one for a line, four (right edge upward,
    /// then top, left, bottom) for a rectangle.
    pub fn edges(&self) -> Vec<Edge> {
        let t = self.half_height;
        let c = |re: f64, im: f64| Complex64::new(re, im);
        match self.c_left {
            None => alloc::vec![Edge::new(c(self.c_right, -t), c(self.c_right, t))],
            Some(left) => {
                let right = self.c_right;
                alloc::vec![
                    Edge::new(c(right, -t), c(right, t)),
                    Edge::new(c(right, t), c(left, t)),
                    Edge::new(c(left, t), c(left, -t)),
                    Edge::new(c(left, -t), c(right, -t)),
                ]
            }
        }
    }

    /// `z` strictly inside a rectangle.
    pub fn encloses(&self, z: Complex64) -> bool {
        match self.c_left {
            None => false,
            Some(left) => left < z.re && z.re < self.c_right && math::abs(z.im) < self.half_height,
        }
    }
}

/// Straight oriented segment `start → end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub start: Complex64,
    pub end: Complex64,
}

impl Edge {
    pub fn new(start: Complex64, end: Complex64) -> Self {
        Edge { start, end }
    }

    pub fn length(&self) -> f64 {
        (self.end - self.start).norm()
    }

    /// Unit tangent, i.e. `dz/ds` for arc length `s`.
    pub fn direction(&self) -> Complex64 {
        (self.end - self.start) / self.length()
    }
}

/// Which inverse kernel multiplies the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InverseKind {
    /// `e^{xz}`, inverse Laplace.
    LaplaceKernel,
    /// `y^{-z}`, inverse Mellin transform and inverse Mellin moment.
    MellinKernel,
}

impl InverseKind {
    /// Kernel value; `arg` must already be admissible.
    pub fn kernel(self, z: Complex64, arg: f64) -> Complex64 {
        match self {
            InverseKind::LaplaceKernel => (z * arg).exp(),
            InverseKind::MellinKernel => (-z * math::ln(arg)).exp(),
        }
    }

    /// Laplace arguments may be any real; Mellin arguments must be positive.
    pub fn check_arg(self, arg: f64) -> Result<()> {
        let ok = match self {
            InverseKind::LaplaceKernel => arg.is_finite(),
            InverseKind::MellinKernel => arg > 0.0 && arg.is_finite(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Domain { arg })
        }
    }
}

/// Position of a single vertical line relative to the poles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    RightOfPoles,
    LeftOfPoles,
}

impl Side {
    /// Sign with which the upward line enters the two-line decomposition
    /// `f = (right line) − (left line)`.
    pub fn sign(self) -> f64 {
        match self {
            Side::RightOfPoles => 1.0,
            Side::LeftOfPoles => -1.0,
        }
    }
}

/// A quadrature node on a contour: `Σ weight·g(z) ≈ ∫ g dz`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub z: Complex64,
    pub weight: Complex64,
}

/// Right boundary `a` of a transform: the rightmost pole, or the left
/// border of the defining integral's region.
fn right_boundary(t: &TransformExpr) -> Result<f64> {
    match t {
        TransformExpr::Rational(r) => Ok(r.max_re()),
        TransformExpr::Gamma => Ok(0.0),
        TransformExpr::Numeric { .. } => t
            .validity()
            .map(|v| v.left_border())
            .map_err(|_| Error::UnknownBoundary),
    }
}

/// Bromwich line at `Re z = a + δ`.
pub fn bromwich_for(t: &TransformExpr, delta: f64, half_height: f64) -> Result<Contour> {
    let a = right_boundary(t)?;
    if !a.is_finite() {
        return Err(Error::UnknownBoundary);
    }
    Contour::bromwich(a + delta, half_height, delta)
}

/// Rectangle straddling every pole by `δ` on each side.
///
/// `half_height` is raised to `max |Im p| + δ` when it would not clear the
/// poles.
pub fn rectangle_for(t: &TransformExpr, delta: f64, half_height: f64) -> Result<Contour> {
    let r = t.as_rational().ok_or(Error::NotRectangularizable)?;
    check_common(half_height, delta)?;
    let b = pole_box(r);
    let height = half_height.max(b.im_max + delta);
    Contour::rectangle(b.re_min - delta, b.re_max + delta, height, delta)
}

/// Rectangle with `δ = 0.5` and `T = max |Im p| + max(δ, 1)`.
pub fn default_rectangle(t: &TransformExpr) -> Result<Contour> {
    let r = t.as_rational().ok_or(Error::NotRectangularizable)?;
    let delta = DEFAULT_DELTA;
    rectangle_for(t, delta, pole_box(r).im_max + delta.max(1.0))
}

/// Fixed (non-adaptive) rule along the contour: panels no wider than
/// [`MAX_PANEL_WIDTH`] with `panel_order` Gauss–Legendre nodes each.
pub fn discretize(c: &Contour, q: &QuadratureSpec) -> Result<Vec<Node>> {
    q.validate()?;
    let rule = GaussLegendre::new(q.panel_order);
    let mut nodes = Vec::new();
    for edge in c.edges() {
        let dir = edge.direction();
        let breaks = uniform_breaks(0.0, edge.length(), MAX_PANEL_WIDTH);
        for w in breaks.windows(2) {
            for (s, weight) in rule.mapped(w[0], w[1]) {
                nodes.push(Node {
                    z: edge.start + dir * s,
                    weight: dir * weight,
                });
            }
        }
    }
    Ok(nodes)
}

/// Adaptive `∫ g(z) dz` along the oriented contour.
///
/// All edges share one arc-length parameter and one error budget, so
/// cancellations between edges of a closed contour are resolved against
/// the total rather than edge by edge.
pub fn contour_integral<G>(c: &Contour, mut g: G, q: &QuadratureSpec) -> Result<Estimate>
where
    G: FnMut(Complex64) -> Result<Complex64>,
{
    let integrator = Integrator::new(*q)?;
    let edges = c.edges();
    let mut offsets = Vec::with_capacity(edges.len() + 1);
    let mut breaks: Vec<f64> = Vec::new();
    let mut acc = 0.0;
    offsets.push(0.0);
    for edge in &edges {
        let len = edge.length();
        let local = uniform_breaks(acc, acc + len, MAX_PANEL_WIDTH);
        if breaks.is_empty() {
            breaks.extend_from_slice(&local);
        } else {
            breaks.extend_from_slice(&local[1..]);
        }
        acc += len;
        offsets.push(acc);
    }
    let mut integrand = |s: f64| {
        // panels never straddle a corner, and Gauss nodes avoid endpoints
        let k = offsets[1..]
            .iter()
            .position(|&o| s < o)
            .unwrap_or(edges.len() - 1);
        let edge = &edges[k];
        let dir = edge.direction();
        let z = edge.start + dir * (s - offsets[k]);
        Ok(g(z)? * dir)
    };
    Ok(integrator.partitioned(&mut integrand, &breaks)?.estimate)
}

fn two_pi_i() -> Complex64 {
    Complex64::new(0.0, 2.0 * PI)
}

/// `(1/2πi) ∫_C kernel(z, arg) · T(z) dz` with its error estimate.
pub fn inverse_eval_estimate(
    t: &TransformExpr,
    kind: InverseKind,
    c: &Contour,
    arg: f64,
    q: &QuadratureSpec,
) -> Result<Estimate> {
    kind.check_arg(arg)?;
    if c.shape() == Shape::Rectangle && t.as_rational().is_none() {
        return Err(Error::NotRectangularizable);
    }
    let est = contour_integral(c, |z| Ok(kind.kernel(z, arg) * eval_transform(t, z, q)?), q)?;
    Ok(est.scale(two_pi_i().inv()))
}

/// Inverse transform at `arg` along `c`.
pub fn inverse_eval(
    t: &TransformExpr,
    kind: InverseKind,
    c: &Contour,
    arg: f64,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    inverse_eval_estimate(t, kind, c, arg, q).map(|e| e.value)
}

/// Upward integral `(1/2πi) ∫_{c−iT}^{c+iT} kernel · T dz` along one line
/// that lies entirely on `side` of the poles.
///
/// As `T → ∞` a right line gives the function on the standard domain and
/// zero on the extended side; an upward left line gives minus the function
/// on the extended side (clockwise closure) and zero on the standard side.
/// Multiply by [`Side::sign`] to get each line's share of the two-line
/// decomposition.
pub fn single_line_eval(
    t: &TransformExpr,
    kind: InverseKind,
    line: &Contour,
    side: Side,
    arg: f64,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    let r = t.as_rational().ok_or(Error::NotRectangularizable)?;
    if line.shape() != Shape::BromwichLine {
        return Err(Error::InvalidParameter(
            "single-line evaluation needs a vertical line",
        ));
    }
    let c = line.c_right();
    let ok = match side {
        Side::RightOfPoles => c > r.max_re(),
        Side::LeftOfPoles => c < r.min_re(),
    };
    if !ok {
        return Err(Error::SidePoleConflict);
    }
    inverse_eval(t, kind, line, arg, q)
}

/// `(1/2πi) ∮ T(ω)/(z − ω) dω` over a rectangle, for `z` right of it.
///
/// With every pole inside, this reproduces `T(z)`.
pub fn cauchy_reproduction(
    t: &Rational,
    rect: &Contour,
    z: Complex64,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    if rect.shape() != Shape::Rectangle {
        return Err(Error::InvalidParameter(
            "Cauchy reproduction needs a rectangle",
        ));
    }
    if !(z.re > rect.c_right()) {
        return Err(Error::ZInsideRectangle);
    }
    let est = contour_integral(rect, |w| Ok(t.eval(w)? / (z - w)), q)?;
    Ok(est.value / two_pi_i())
}
