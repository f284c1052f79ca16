//! Direct transforms and the analytic transform catalog.
//!
//! * Laplace transform `∫₀^∞ e^{-zx} f(x) dx`, for `Re z` beyond the
//!   critical exponent of `f`;
//! * Mellin moment `∫₀¹ y^{z-1} F(y) dy`, for `Re z` beyond the critical
//!   index of `F`;
//! * Mellin transform `∫₀^∞ x^{z-1} f(x) dx`, inside the holomorphy strip,
//!   computed as a unit-interval part plus a half-line part.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::funcat::{DomainHint, Function, FunctionSpec, Strip};
use crate::math;
use crate::quad::{damped, Estimate, Integrator, QuadratureSpec};

/// Distance below which an evaluation point counts as sitting on a pole.
pub const POLE_HIT_RADIUS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    Laplace,
    Moment,
    Mellin,
}

/// A simple pole with its residue.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub location: Complex64,
    pub residue: Complex64,
}

impl Pole {
    pub fn new(location: Complex64, residue: Complex64) -> Self {
        Pole { location, residue }
    }

    pub fn real(location: f64, residue: f64) -> Self {
        Pole::new(Complex64::new(location, 0.0), Complex64::new(residue, 0.0))
    }
}

/// `Σₖ rₖ / (z − pₖ)` with pairwise distinct simple poles.
#[derive(Debug, Clone, PartialEq)]
pub struct Rational {
    poles: Vec<Pole>,
}

impl Rational {
    /// Rejects empty lists, non-finite entries and repeated poles; higher
    /// order poles are not representable.
    pub fn new(poles: Vec<Pole>) -> Result<Self> {
        if poles.is_empty() {
            return Err(Error::InvalidParameter(
                "rational transform needs at least one pole",
            ));
        }
        let finite = |c: Complex64| c.re.is_finite() && c.im.is_finite();
        if poles
            .iter()
            .any(|p| !finite(p.location) || !finite(p.residue))
        {
            return Err(Error::InvalidParameter(
                "pole locations and residues must be finite",
            ));
        }
        for (i, p) in poles.iter().enumerate() {
            if poles[i + 1..]
                .iter()
                .any(|q| (q.location - p.location).norm() < POLE_HIT_RADIUS)
            {
                return Err(Error::InvalidParameter(
                    "pole locations must be pairwise distinct",
                ));
            }
        }
        Ok(Rational { poles })
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    /// Exact value at any `z` off the poles.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        let mut sum = Complex64::new(0.0, 0.0);
        for p in &self.poles {
            let d = z - p.location;
            if d.norm() < POLE_HIT_RADIUS {
                return Err(Error::PoleHit { z });
            }
            sum += p.residue / d;
        }
        Ok(sum)
    }

    /// Every pole has its mirror image with the conjugate residue.
    pub fn is_conjugate_symmetric(&self) -> bool {
        self.poles.iter().all(|p| {
            let scale = 1e-12 * (1.0 + p.residue.norm());
            self.poles.iter().any(|q| {
                (q.location - p.location.conj()).norm() < POLE_HIT_RADIUS
                    && (q.residue - p.residue.conj()).norm() <= scale
            })
        })
    }

    pub fn max_re(&self) -> f64 {
        self.poles
            .iter()
            .map(|p| p.location.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn min_re(&self) -> f64 {
        self.poles
            .iter()
            .map(|p| p.location.re)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max_abs_im(&self) -> f64 {
        self.poles
            .iter()
            .map(|p| p.location.im.abs())
            .fold(0.0, f64::max)
    }
}

/// Region where a transform's defining integral converges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Validity {
    /// `Re z > re_min`.
    HalfPlane {
        re_min: f64,
    },
    Strip(Strip),
}

impl Validity {
    pub fn contains(&self, z: Complex64) -> bool {
        match self {
            Validity::HalfPlane { re_min } => z.re > *re_min,
            Validity::Strip(s) => s.contains(z.re),
        }
    }

    /// Left border of the region.
    pub fn left_border(&self) -> f64 {
        match self {
            Validity::HalfPlane { re_min } => *re_min,
            Validity::Strip(s) => s.c1,
        }
    }
}

/// A transform in the complex plane.
#[derive(Debug, Clone, PartialEq)]
pub enum TransformExpr {
    /// Exact pole-residue form, analytically continued to all of ℂ.
    Rational(Rational),
    /// Evaluated by direct quadrature of `source` at each `z`.
    Numeric {
        source: FunctionSpec,
        kind: TransformKind,
    },
    /// Euler's Γ(z), the Mellin transform of `e^{-x}`.
    Gamma,
}

impl TransformExpr {
    pub fn rational(poles: Vec<Pole>) -> Result<Self> {
        Rational::new(poles).map(TransformExpr::Rational)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            TransformExpr::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Region where the defining integral converges.
    pub fn validity(&self) -> Result<Validity> {
        match self {
            TransformExpr::Rational(r) => Ok(Validity::HalfPlane { re_min: r.max_re() }),
            TransformExpr::Numeric { source, kind } => match kind {
                TransformKind::Laplace | TransformKind::Moment => Ok(Validity::HalfPlane {
                    re_min: source.growth_bounds().right_index,
                }),
                TransformKind::Mellin => holomorphy_strip(source).map(Validity::Strip),
            },
            TransformExpr::Gamma => Ok(Validity::Strip(Strip {
                c1: 0.0,
                c2: f64::INFINITY,
            })),
        }
    }
}

fn require_domain(spec: &FunctionSpec, hint: DomainHint) -> Result<()> {
    if spec.domain_hint() == hint {
        Ok(())
    } else if hint == DomainHint::HalfLine {
        Err(Error::InvalidSpec(
            "transform needs a half-line (Laplace-side) function",
        ))
    } else {
        Err(Error::InvalidSpec(
            "moment needs a unit-interval (power-family) function",
        ))
    }
}

fn real_eval(spec: &FunctionSpec) -> impl Fn(f64) -> Complex64 + '_ {
    // arguments come from quadrature nodes inside the domain
    move |x| Complex64::new(spec.eval(x).unwrap_or(f64::NAN), 0.0)
}

/// `∫₀^∞ e^{-zx} f(x) dx` with its quadrature error estimate.
pub fn laplace_transform_estimate(
    spec: &FunctionSpec,
    z: Complex64,
    q: &QuadratureSpec,
) -> Result<Estimate> {
    require_domain(spec, DomainHint::HalfLine)?;
    if !(z.re > spec.growth_bounds().right_index) {
        return Err(Error::OutOfDomain { z });
    }
    let f = real_eval(spec);
    Integrator::new(*q)?.halfline(|x| damped(z, x, f(x)), 0.0)
}

pub fn laplace_transform(
    spec: &FunctionSpec,
    z: Complex64,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    laplace_transform_estimate(spec, z, q).map(|e| e.value)
}

/// `∫₀¹ y^{z-1} F(y) dy` with its quadrature error estimate.
pub fn mellin_moment_estimate(
    spec: &FunctionSpec,
    z: Complex64,
    q: &QuadratureSpec,
) -> Result<Estimate> {
    require_domain(spec, DomainHint::UnitInterval)?;
    if !(z.re > spec.growth_bounds().right_index) {
        return Err(Error::OutOfDomain { z });
    }
    Integrator::new(*q)?.unit_singular(real_eval(spec), z)
}

pub fn mellin_moment(spec: &FunctionSpec, z: Complex64, q: &QuadratureSpec) -> Result<Complex64> {
    mellin_moment_estimate(spec, z, q).map(|e| e.value)
}

/// The two halves of the Mellin integral: `∫₀¹` and `∫₁^∞`.
pub fn mellin_transform_parts(
    spec: &FunctionSpec,
    z: Complex64,
    q: &QuadratureSpec,
) -> Result<(Estimate, Estimate)> {
    require_domain(spec, DomainHint::HalfLine)?;
    let strip = holomorphy_strip(spec)?;
    if !strip.contains(z.re) {
        return Err(Error::OutOfDomain { z });
    }
    let integrator = Integrator::new(*q)?;
    let f = real_eval(spec);
    let unit = integrator.unit_singular(&f, z)?;

    // x^{Re z - 1} e^{-rate·x} peaks at (Re z - 1)/rate; starting the
    // geometric tail past the peak keeps its panel magnitudes decreasing.
    let rate = -spec.growth_bounds().right_index;
    let peak = ((z.re - 1.0) / rate).max(1.0);
    let kernel = |x: f64| ((z - 1.0) * math::ln(x)).exp() * f(x);
    let mut tail = integrator.halfline(kernel, peak)?;
    if peak > 1.0 {
        tail = integrator.finite(kernel, 1.0, peak)?.combine(tail);
    }
    Ok((unit, tail))
}

/// `∫₀^∞ x^{z-1} f(x) dx` with its quadrature error estimate.
pub fn mellin_transform_estimate(
    spec: &FunctionSpec,
    z: Complex64,
    q: &QuadratureSpec,
) -> Result<Estimate> {
    mellin_transform_parts(spec, z, q).map(|(unit, tail)| unit.combine(tail))
}

pub fn mellin_transform(
    spec: &FunctionSpec,
    z: Complex64,
    q: &QuadratureSpec,
) -> Result<Complex64> {
    mellin_transform_estimate(spec, z, q).map(|e| e.value)
}

/// Direct numerical transform of the given kind.
pub fn numeric_transform(
    spec: &FunctionSpec,
    kind: TransformKind,
    z: Complex64,
    q: &QuadratureSpec,
) -> Result<Estimate> {
    match kind {
        TransformKind::Laplace => laplace_transform_estimate(spec, z, q),
        TransformKind::Moment => mellin_moment_estimate(spec, z, q),
        TransformKind::Mellin => mellin_transform_estimate(spec, z, q),
    }
}

/// Strip where the Mellin transform's defining integral converges.
///
/// Power-family functions have no strip: `∫₀^∞ y^{z-1} y^γ dy` diverges for
/// every `z`.
pub fn holomorphy_strip(spec: &FunctionSpec) -> Result<Strip> {
    let decays = match spec.function() {
        Function::ExpMinusX => true,
        Function::Exp { gamma } => gamma > 0.0,
        Function::MixedExp { g1, g2 } => g1.min(g2) > 0.0,
        Function::Power { .. } | Function::MixedPower { .. } => false,
    };
    if decays {
        // f(0) ≠ 0 fixes the left border; exponential decay opens the right
        Ok(Strip {
            c1: 0.0,
            c2: f64::INFINITY,
        })
    } else {
        Err(Error::NoStrip)
    }
}

/// Closed form of a cataloged (function, transform) pair.
pub fn analytic_transform(spec: &FunctionSpec, kind: TransformKind) -> Result<TransformExpr> {
    use TransformKind::*;
    match (spec.function(), kind) {
        (Function::Exp { gamma }, Laplace) | (Function::Power { gamma }, Moment) => {
            TransformExpr::rational(vec![Pole::real(-gamma, 1.0)])
        }
        (Function::ExpMinusX, Laplace) => TransformExpr::rational(vec![Pole::real(-1.0, 1.0)]),
        (Function::MixedExp { g1, g2 }, Laplace) => {
            TransformExpr::rational(mixed_exp_poles(g1, g2))
        }
        (Function::ExpMinusX, Mellin) => Ok(TransformExpr::Gamma),
        _ => Err(Error::NoClosedForm),
    }
}

/// Poles of `L[e^{-γ₁x} sin²x + e^{-γ₂x} cos²x]`.
///
/// With `sin²x = (1 − cos 2x)/2`, `cos²x = (1 + cos 2x)/2` and
/// `L[e^{-γx} cos 2x] = ½/(z+γ−2i) + ½/(z+γ+2i)`, each term contributes a
/// real pole with residue ½ and a conjugate pair at `−γ ± 2i` with residue
/// `∓¼` (sin²) or `±¼` (cos²). Coinciding poles (`γ₁ = γ₂`) are merged and
/// cancelled residues dropped.
fn mixed_exp_poles(g1: f64, g2: f64) -> Vec<Pole> {
    let c = Complex64::new;
    let raw = [
        (c(-g1, 0.0), 0.5),
        (c(-g1, 2.0), -0.25),
        (c(-g1, -2.0), -0.25),
        (c(-g2, 0.0), 0.5),
        (c(-g2, 2.0), 0.25),
        (c(-g2, -2.0), 0.25),
    ];
    let mut poles: Vec<Pole> = Vec::with_capacity(raw.len());
    for (location, residue) in raw {
        match poles.iter_mut().find(|p| p.location == location) {
            Some(p) => p.residue += residue,
            None => poles.push(Pole::new(location, c(residue, 0.0))),
        }
    }
    poles.retain(|p| p.residue.norm() != 0.0);
    poles
}

/// Value of a transform at `z`.
pub fn eval_transform(t: &TransformExpr, z: Complex64, q: &QuadratureSpec) -> Result<Complex64> {
    match t {
        TransformExpr::Rational(r) => r.eval(z),
        TransformExpr::Numeric { source, kind } => {
            numeric_transform(source, *kind, z, q).map(|e| e.value)
        }
        TransformExpr::Gamma => {
            if !(z.re > 0.0) {
                return Err(Error::OutOfDomain { z });
            }
            mellin_transform(&FunctionSpec::exp_minus_x(), z, q)
        }
    }
}
