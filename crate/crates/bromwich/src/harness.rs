//! Verification campaigns built on the core engine.
//!
//! Every campaign evaluates independent grid points in parallel and returns
//! rows in input order.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use bromwich_core::contour::{
    bromwich_for, cauchy_reproduction, default_rectangle, inverse_eval_estimate, rectangle_for,
    DEFAULT_DELTA,
};
use bromwich_core::quad::{integrate_finite, integrate_halfline};
use bromwich_core::xform::{analytic_transform, numeric_transform};
use bromwich_core::{
    Complex64, Contour, DomainHint, Estimate, Function, FunctionSpec, InverseKind, QuadratureSpec,
    Rational, Shape, TransformExpr, TransformKind,
};
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Default pass threshold on closed rectangles.
pub const RECTANGLE_TOL: f64 = 1e-6;
/// Default pass threshold on open lines, where truncation error is `O(1/T)`.
pub const BROMWICH_TOL: f64 = 5e-2;
/// Half-height of auto-placed open lines.
pub const BROMWICH_HALF_HEIGHT: f64 = 200.0;

pub fn default_tolerance(use_rectangle: bool) -> f64 {
    if use_rectangle {
        RECTANGLE_TOL
    } else {
        BROMWICH_TOL
    }
}

/// Direct transform whose inverse uses `kind`'s kernel.
///
/// Laplace-side functions pair with the Laplace kernel, or with the Mellin
/// kernel through the full Mellin transform; power-family functions pair
/// with the Mellin kernel through the moment.
pub fn transform_kind_for(spec: &FunctionSpec, kind: InverseKind) -> Result<TransformKind> {
    match (spec.domain_hint(), kind) {
        (DomainHint::UnitInterval, InverseKind::MellinKernel) => Ok(TransformKind::Moment),
        (DomainHint::UnitInterval, InverseKind::LaplaceKernel) => Err(Error::Invalid(
            "power-family functions invert with the mellin kernel".into(),
        )),
        (_, InverseKind::MellinKernel) => Ok(TransformKind::Mellin),
        (_, InverseKind::LaplaceKernel) => Ok(TransformKind::Laplace),
    }
}

/// Closed form when cataloged, otherwise direct quadrature.
///
/// Rectangles need the closed form.
pub fn transform_for(
    spec: &FunctionSpec,
    kind: TransformKind,
    use_rectangle: bool,
) -> Result<TransformExpr> {
    match analytic_transform(spec, kind) {
        Ok(t) => Ok(t),
        Err(bromwich_core::Error::NoClosedForm) if use_rectangle => {
            Err(bromwich_core::Error::NotRectangularizable.into())
        }
        Err(bromwich_core::Error::NoClosedForm) => Ok(TransformExpr::Numeric {
            source: spec.clone(),
            kind,
        }),
        Err(e) => Err(e.into()),
    }
}

/// Rectangle with default placement, or an open line at
/// [`BROMWICH_HALF_HEIGHT`].
pub fn default_contour(t: &TransformExpr, use_rectangle: bool) -> Result<Contour> {
    let c = if use_rectangle {
        default_rectangle(t)?
    } else {
        bromwich_for(t, DEFAULT_DELTA, BROMWICH_HALF_HEIGHT)?
    };
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub arg: f64,
    pub truth: f64,
    pub recovered: f64,
    pub abs_err: f64,
    /// `abs_err / |truth|`, or `abs_err` where the truth vanishes.
    pub rel_err: f64,
}

impl Row {
    pub fn new(arg: f64, truth: f64, recovered: f64) -> Self {
        let abs_err = (recovered - truth).abs();
        let rel_err = if truth == 0.0 {
            abs_err
        } else {
            abs_err / truth.abs()
        };
        Row {
            arg,
            truth,
            recovered,
            abs_err,
            rel_err,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundTripReport {
    pub spec: FunctionSpec,
    pub kind: InverseKind,
    pub contour: Contour,
    pub rows: Vec<Row>,
    pub max_abs_err: f64,
    pub max_rel_err: f64,
    /// `max_rel_err ≤ tolerance`.
    pub passed: bool,
    pub tolerance: f64,
    /// Every contour quadrature met its error target.
    pub converged: bool,
    pub wall_time: Duration,
}

/// Transforms `spec`, inverts on an auto-placed contour and compares with
/// the function itself at every `arg`.
pub fn roundtrip(
    spec: &FunctionSpec,
    kind: InverseKind,
    args: &[f64],
    use_rectangle: bool,
    q: &QuadratureSpec,
    tol: f64,
) -> Result<RoundTripReport> {
    let t = transform_for(spec, transform_kind_for(spec, kind)?, use_rectangle)?;
    let contour = default_contour(&t, use_rectangle)?;
    roundtrip_on(spec, kind, &t, &contour, args, q, tol)
}

/// [`roundtrip`] with an explicit transform and contour.
pub fn roundtrip_on(
    spec: &FunctionSpec,
    kind: InverseKind,
    t: &TransformExpr,
    contour: &Contour,
    args: &[f64],
    q: &QuadratureSpec,
    tol: f64,
) -> Result<RoundTripReport> {
    if args.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let started = Instant::now();
    let evaluated: Vec<(Row, bool)> = args
        .par_iter()
        .map(|&arg| {
            let est = inverse_eval_estimate(t, kind, contour, arg, q)?;
            let truth = spec.eval(arg)?;
            Ok((Row::new(arg, truth, est.value.re), est.converged))
        })
        .collect::<Result<_>>()?;
    let converged = evaluated.iter().all(|&(_, c)| c);
    let rows: Vec<Row> = evaluated.into_iter().map(|(r, _)| r).collect();
    let max_abs_err = rows.iter().map(|r| r.abs_err).fold(0.0, f64::max);
    let max_rel_err = rows.iter().map(|r| r.rel_err).fold(0.0, f64::max);
    Ok(RoundTripReport {
        spec: spec.clone(),
        kind,
        contour: *contour,
        rows,
        max_abs_err,
        max_rel_err,
        passed: max_rel_err <= tol,
        tolerance: tol,
        converged,
        wall_time: started.elapsed(),
    })
}

/// Results of a one-parameter scan.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceTable {
    pub parameter: String,
    pub samples: Vec<f64>,
    pub values: Vec<f64>,
    /// `values[i+1] − values[i]`.
    pub deltas: Vec<f64>,
    /// Exact value the scan should approach, when known.
    pub reference: Option<f64>,
}

impl ConvergenceTable {
    pub fn new(
        parameter: &str,
        samples: Vec<f64>,
        values: Vec<f64>,
        reference: Option<f64>,
    ) -> Result<Self> {
        if samples.is_empty() || samples.len() != values.len() {
            return Err(Error::EmptyGrid);
        }
        if samples.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::Invalid(format!(
                "{parameter} samples must be strictly increasing"
            )));
        }
        let deltas = values.windows(2).map(|w| w[1] - w[0]).collect();
        Ok(ConvergenceTable {
            parameter: parameter.to_string(),
            samples,
            values,
            deltas,
            reference,
        })
    }

    /// `|value − reference|` per sample; empty without a reference.
    pub fn errors(&self) -> Vec<f64> {
        match self.reference {
            Some(r) => self.values.iter().map(|v| (v - r).abs()).collect(),
            None => Vec::new(),
        }
    }

    pub fn final_error(&self) -> Option<f64> {
        self.errors().last().copied()
    }
}

/// Integration window `[lo, hi]` for [`delta_check_on`]; either end may be
/// infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
}

impl Window {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || !(lo < hi) {
            return Err(Error::Invalid("window needs lo < hi".into()));
        }
        Ok(Window { lo, hi })
    }
}

/// The function's standard domain, or the whole line for a constant.
pub fn default_window(g: &FunctionSpec) -> Window {
    match (g.function(), g.domain_hint()) {
        (Function::Exp { gamma }, _) if gamma == 0.0 => Window {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        },
        (_, DomainHint::UnitInterval) => Window { lo: 0.0, hi: 1.0 },
        _ => Window {
            lo: 0.0,
            hi: f64::INFINITY,
        },
    }
}

/// Limit of `g(y)` as `y → +∞` (`upward`) or `y → −∞`, when it exists.
fn limit_at_infinity(g: &FunctionSpec, upward: bool) -> Option<f64> {
    let s = if upward { 1.0 } else { -1.0 };
    let decays = |rate: f64| s * rate > 0.0;
    match g.function() {
        Function::Exp { gamma } if gamma == 0.0 => Some(1.0),
        Function::Exp { gamma } => decays(gamma).then_some(0.0),
        Function::ExpMinusX => decays(1.0).then_some(0.0),
        Function::MixedExp { g1, g2 } => (decays(g1) && decays(g2)).then_some(0.0),
        Function::Power { gamma } if upward && gamma == 0.0 => Some(1.0),
        Function::Power { gamma } => (upward && gamma < 0.0).then_some(0.0),
        Function::MixedPower { g1, g2 } => (upward && g1.max(g2) < 0.0).then_some(0.0),
    }
}

/// Sine integral `Si(t) = ∫₀ᵗ sin u / u du` for `t ≥ 0`, including `+∞`.
pub fn sine_integral(t: f64, q: &QuadratureSpec) -> Result<f64> {
    if t == f64::INFINITY {
        return Ok(PI / 2.0);
    }
    if t >= 40.0 {
        return Ok(sine_integral_asymptotic(t));
    }
    let sinc = |u: f64| Complex64::new(if u == 0.0 { 1.0 } else { u.sin() / u }, 0.0);
    // chunks of one period keep each adaptive run short
    let mut total = 0.0;
    let mut a = 0.0;
    while a < t {
        let b = (a + 2.0 * PI).min(t);
        total += integrate_finite(sinc, a, b, q)?.value.re;
        a = b;
    }
    Ok(total)
}

/// `Si(t) = π/2 − f(t) cos t − g(t) sin t` with the auxiliary functions
/// summed until their asymptotic terms stop shrinking.
fn sine_integral_asymptotic(t: f64) -> f64 {
    let inv2 = 1.0 / (t * t);
    let (mut f, mut g) = (0.0, 0.0);
    // f ~ (1/t) Σ (−1)^k (2k)!/t^{2k}, g ~ (1/t²) Σ (−1)^k (2k+1)!/t^{2k}
    let (mut tf, mut tg) = (1.0 / t, inv2);
    for k in 0..60 {
        f += tf;
        g += tg;
        let kf = (2 * k + 1) as f64;
        let next_f = -tf * kf * (kf + 1.0) * inv2;
        let next_g = -tg * (kf + 1.0) * (kf + 2.0) * inv2;
        if next_f.abs() >= tf.abs() || next_f.abs() < 1e-18 * f.abs() {
            break;
        }
        tf = next_f;
        tg = next_g;
    }
    PI / 2.0 - f * t.cos() - g * t.sin()
}

/// Truncated delta-kernel smoothing `I_T(x) = ∫ g(y) sin(T(x−y))/(π(x−y)) dy`
/// over [`default_window`], tabulated over `ts`.
pub fn delta_check(
    x: f64,
    g: &FunctionSpec,
    ts: &[f64],
    q: &QuadratureSpec,
) -> Result<ConvergenceTable> {
    delta_check_on(x, g, default_window(g), ts, q)
}

/// [`delta_check`] over an explicit window.
///
/// The constant part `g(x)` is integrated against the kernel in closed form
/// through the sine integral. What remains vanishes at `y = x` and, on an
/// infinite side, is measured from `g`'s limit there, so every quadrature
/// sees a bounded integrand that decays or stops.
pub fn delta_check_on(
    x: f64,
    g: &FunctionSpec,
    window: Window,
    ts: &[f64],
    q: &QuadratureSpec,
) -> Result<ConvergenceTable> {
    if !(window.lo < x && x < window.hi) {
        return Err(Error::Invalid(format!(
            "x = {x} must lie inside the window"
        )));
    }
    if g.is_power_family() && window.lo < 0.0 {
        return Err(bromwich_core::Error::Domain { arg: window.lo }.into());
    }
    let gx = g.eval(x)?;
    let mut limits = [None, None];
    for (slot, (end, upward)) in limits
        .iter_mut()
        .zip([(window.lo, false), (window.hi, true)])
    {
        if end.is_infinite() {
            *slot = Some(limit_at_infinity(g, upward).ok_or_else(|| {
                Error::Invalid("function has no limit at an infinite window end".into())
            })?);
        }
    }
    let values = ts
        .par_iter()
        .map(|&t| {
            if !(t > 0.0) || !t.is_finite() {
                return Err(Error::Invalid("T must be a positive finite real".into()));
            }
            let mut total = gx
                * (sine_integral(t * (x - window.lo), q)? + sine_integral(t * (window.hi - x), q)?)
                / PI;
            for (side, (end, limit)) in [
                (-1.0, (window.lo, limits[0])),
                (1.0, (window.hi, limits[1])),
            ] {
                // kernel in the distance u = |y − x| is even
                let kernel = |u: f64| {
                    if u == 0.0 {
                        t / PI
                    } else {
                        (t * u).sin() / (PI * u)
                    }
                };
                // window checked against the domain above; NaN trips the integrator
                let at = |u: f64| g.eval(x + side * u).unwrap_or(f64::NAN);
                total += match limit {
                    None => {
                        let f = |u: f64| Complex64::new((at(u) - gx) * kernel(u), 0.0);
                        integrate_finite(f, 0.0, (end - x).abs(), q)?.value.re
                    }
                    Some(lim) => {
                        let f = |u: f64| Complex64::new((at(u) - lim) * kernel(u), 0.0);
                        0.5 * (lim - gx) + integrate_halfline(f, 0.0, q)?.value.re
                    }
                };
            }
            Ok(total)
        })
        .collect::<Result<Vec<f64>>>()?;
    ConvergenceTable::new("T", ts.to_vec(), values, Some(gx))
}

/// Half-heights for [`invariance_sweep`].
#[derive(Debug, Clone, PartialEq)]
pub enum Heights {
    /// Used as given; raised to clear the poles when too small.
    Absolute(Vec<f64>),
    /// Multiples of `T₀ = max |Im p| + δ`.
    Scaled(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    /// One table over the half-height per δ.
    pub tables: Vec<(f64, ConvergenceTable)>,
    /// Largest distance between any two complex results.
    pub spread: f64,
    pub converged: bool,
}

/// Rectangle inverse at `arg` over a grid of offsets `δ` and half-heights.
pub fn invariance_sweep(
    t: &Rational,
    kind: InverseKind,
    arg: f64,
    deltas: &[f64],
    heights: &Heights,
    q: &QuadratureSpec,
) -> Result<Sweep> {
    let expr = TransformExpr::Rational(t.clone());
    let t0 = |delta: f64| t.max_abs_im() + delta;
    let mut points = Vec::new();
    for &delta in deltas {
        let hs = match heights {
            Heights::Absolute(hs) => hs.clone(),
            Heights::Scaled(ms) => ms.iter().map(|m| m * t0(delta)).collect(),
        };
        for h in hs {
            points.push(rectangle_for(&expr, delta, h)?);
        }
    }
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    let results: Vec<Estimate> = points
        .par_iter()
        .map(|c| inverse_eval_estimate(&expr, kind, c, arg, q).map_err(Error::from))
        .collect::<Result<_>>()?;
    let reference = bromwich_core::oracle::residue_inverse(t, kind, arg)?;
    let mut tables = Vec::with_capacity(deltas.len());
    let per_delta = points.len() / deltas.len();
    for (i, &delta) in deltas.iter().enumerate() {
        let range = i * per_delta..(i + 1) * per_delta;
        let samples = points[range.clone()]
            .iter()
            .map(|c| c.half_height())
            .collect();
        let values = results[range].iter().map(|e| e.value.re).collect();
        tables.push((
            delta,
            ConvergenceTable::new("T", samples, values, Some(reference))?,
        ));
    }
    let mut spread: f64 = 0.0;
    for a in &results {
        for b in &results {
            spread = spread.max((a.value - b.value).norm());
        }
    }
    Ok(Sweep {
        tables,
        spread,
        converged: results.iter().all(|e| e.converged),
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CauchyRow {
    pub z: Complex64,
    pub value: Complex64,
    pub truth: Complex64,
    pub abs_err: f64,
    pub rel_err: f64,
}

/// Cauchy reproduction of `t` at each `z` from a rectangle around its poles.
pub fn cauchy_sweep(
    t: &Rational,
    rect: &Contour,
    zs: &[Complex64],
    q: &QuadratureSpec,
) -> Result<Vec<CauchyRow>> {
    if zs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    zs.par_iter()
        .map(|&z| {
            let value = cauchy_reproduction(t, rect, z, q)?;
            let truth = t.eval(z)?;
            let abs_err = (value - truth).norm();
            let rel_err = if truth.norm() == 0.0 {
                abs_err
            } else {
                abs_err / truth.norm()
            };
            Ok(CauchyRow {
                z,
                value,
                truth,
                abs_err,
                rel_err,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformRow {
    pub z: Complex64,
    pub value: Complex64,
    pub err_est: f64,
    pub converged: bool,
}

/// Direct transform of `spec` by quadrature at each `z`.
pub fn transform_grid(
    spec: &FunctionSpec,
    kind: TransformKind,
    zs: &[Complex64],
    q: &QuadratureSpec,
) -> Result<Vec<TransformRow>> {
    if zs.is_empty() {
        return Err(Error::EmptyGrid);
    }
    zs.par_iter()
        .map(|&z| {
            let e = numeric_transform(spec, kind, z, q)?;
            Ok(TransformRow {
                z,
                value: e.value,
                err_est: e.err_est,
                converged: e.converged,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InvertRow {
    pub arg: f64,
    pub value: Complex64,
    pub err_est: f64,
    pub converged: bool,
}

/// Inverse of `t` along `contour` at each argument.
pub fn invert_grid(
    t: &TransformExpr,
    kind: InverseKind,
    contour: &Contour,
    args: &[f64],
    q: &QuadratureSpec,
) -> Result<Vec<InvertRow>> {
    if args.is_empty() {
        return Err(Error::EmptyGrid);
    }
    args.par_iter()
        .map(|&arg| {
            let e = inverse_eval_estimate(t, kind, contour, arg, q)?;
            Ok(InvertRow {
                arg,
                value: e.value,
                err_est: e.err_est,
                converged: e.converged,
            })
        })
        .collect()
}

/// Whether `c` is a closed rectangle.
pub fn is_rectangle(c: &Contour) -> bool {
    c.shape() == Shape::Rectangle
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn sine_integral_matches_reference_values() {
        // thirty-digit reference values
        let cases = [
            (0.5, 0.493107418043066689161626707573),
            (1.0, 0.946083070367183014941353313823),
            (5.0, 1.54993124494467413727440840073),
            (20.0, 1.54824170104343984016364334213),
            (39.9, 1.58503967612727933896500561102),
            (40.1, 1.58875932110969961984348428195),
            (80.0, 1.57233088691248731535125172967),
            (1000.0, 1.57023312196877121814796277804),
        ];
        for (t, want) in cases {
            let got = sine_integral(t, &q()).unwrap();
            assert!((got - want).abs() < 1e-12, "Si({t}) = {got}");
        }
        assert_eq!(sine_integral(0.0, &q()).unwrap(), 0.0);
    }

    #[test]
    fn sine_integral_branches_agree() {
        for t in [40.0, 45.0, 60.0] {
            let quad = {
                let sinc = |u: f64| Complex64::new(u.sin() / u, 0.0);
                integrate_finite(sinc, 1.0, t, &q()).unwrap().value.re
                    + sine_integral(1.0, &q()).unwrap()
            };
            assert!((quad - sine_integral_asymptotic(t)).abs() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn row_errors() {
        let r = Row::new(1.0, 2.0, 2.5);
        assert_eq!((r.abs_err, r.rel_err), (0.5, 0.25));
        let r = Row::new(1.0, 0.0, -0.1);
        assert_eq!(r.rel_err, 0.1);
    }

    #[test]
    fn convergence_table_invariants() {
        assert!(ConvergenceTable::new("T", vec![1.0, 1.0], vec![0.0, 0.0], None).is_err());
        assert!(ConvergenceTable::new("T", vec![], vec![], None).is_err());
        let t = ConvergenceTable::new("T", vec![1.0, 2.0, 4.0], vec![1.0, 0.5, 0.75], Some(1.0))
            .unwrap();
        assert_eq!(t.deltas, vec![-0.5, 0.25]);
        assert_eq!(t.errors(), vec![0.0, 0.5, 0.25]);
        assert_eq!(t.final_error(), Some(0.25));
    }

    #[test]
    fn transform_selection() {
        let exp = FunctionSpec::exp(1.0).unwrap();
        let pow = FunctionSpec::power(0.5).unwrap();
        let mixed = FunctionSpec::mixed_power(1.0, 2.0).unwrap();
        assert_eq!(
            transform_kind_for(&exp, InverseKind::LaplaceKernel).unwrap(),
            TransformKind::Laplace
        );
        assert_eq!(
            transform_kind_for(&exp, InverseKind::MellinKernel).unwrap(),
            TransformKind::Mellin
        );
        assert_eq!(
            transform_kind_for(&pow, InverseKind::MellinKernel).unwrap(),
            TransformKind::Moment
        );
        assert!(transform_kind_for(&pow, InverseKind::LaplaceKernel).is_err());
        assert!(transform_for(&exp, TransformKind::Laplace, true)
            .unwrap()
            .as_rational()
            .is_some());
        assert!(matches!(
            transform_for(&mixed, TransformKind::Moment, true),
            Err(Error::Core(bromwich_core::Error::NotRectangularizable))
        ));
        assert!(matches!(
            transform_for(&mixed, TransformKind::Moment, false).unwrap(),
            TransformExpr::Numeric { .. }
        ));
    }
}
