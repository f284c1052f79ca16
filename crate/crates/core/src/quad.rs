//! Adaptive Gauss–Legendre quadrature for complex-valued integrands.
//!
//! Every panel is integrated with an `n`-point and a `2n`-point rule; their
//! difference is the panel's error estimate and the `2n` result is kept.
//! The panel with the largest error is bisected until the summed error
//! meets the tolerance or the panel budget runs out.
//!
//! Half-line integrals are a sum of geometrically widening finite panels,
//! and `∫₀¹ x^{z-1} g(x) dx` is turned into a half-line integral with
//! `x = e^{-t}`, which removes the endpoint singularity.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Panels whose rule difference is within this many ulps of their absolute
/// mass are resolved to rounding and are not split further.
const ROUNDOFF_ULPS: f64 = 64.0;

/// Upper bound on the number of geometric panels in a half-line integral.
const MAX_TAIL_PANELS: usize = 256;

/// Consecutive growing panels that signal a divergent tail.
const DIVERGENCE_STREAK: usize = 3;

/// Parameters controlling every numerical integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Gauss–Legendre nodes per panel for the low-order rule.
    pub panel_order: usize,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Hard cap on panels per finite integral.
    pub max_panels: usize,
    /// Width ratio between consecutive half-line panels.
    pub tail_growth: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            panel_order: 16,
            rel_tol: 1e-10,
            abs_tol: 1e-13,
            max_panels: 4096,
            tail_growth: 2.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.panel_order < 2 {
            return Err(Error::InvalidParameter("panel_order must be at least 2"));
        }
        if !(self.rel_tol > 0.0) || !(self.abs_tol > 0.0) {
            return Err(Error::InvalidParameter("tolerances must be positive"));
        }
        if self.max_panels < 1 {
            return Err(Error::InvalidParameter("max_panels must be at least 1"));
        }
        if !(self.tail_growth > 1.0) || !self.tail_growth.is_finite() {
            return Err(Error::InvalidParameter("tail_growth must exceed 1"));
        }
        Ok(())
    }

    /// Returns a copy with a different tolerance pair.
    pub fn with_tolerances(mut self, rel_tol: f64, abs_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_panel_order(mut self, panel_order: usize) -> Self {
        self.panel_order = panel_order;
        self
    }
}

/// Result of a numerical integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub err_est: f64,
    pub panels_used: usize,
    /// The tolerance was met, or every remaining panel is resolved to
    /// rounding error.
    pub converged: bool,
}

impl Estimate {
    pub fn zero() -> Self {
        Estimate {
            value: Complex64::new(0.0, 0.0),
            err_est: 0.0,
            panels_used: 0,
            converged: true,
        }
    }

    /// Sum of two independent estimates.
    pub fn combine(self, other: Estimate) -> Estimate {
        Estimate {
            value: self.value + other.value,
            err_est: self.err_est + other.err_est,
            panels_used: self.panels_used + other.panels_used,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, factor: Complex64) -> Estimate {
        Estimate {
            value: self.value * factor,
            err_est: self.err_est * factor.norm(),
            ..self
        }
    }
}

/// Gauss–Legendre nodes and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Computes the `n`-point rule by Newton iteration on `P_n`.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let m = n.div_ceil(2);
        for i in 0..m {
            let mut x = math::cos(PI * (i as f64 + 0.75) / (n as f64 + 0.5));
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if math::abs(dx) <= 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = 0.0;
        }
        GaussLegendre { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Nodes and weights mapped onto `[a, b]`.
    pub fn mapped(&self, a: f64, b: f64) -> impl Iterator<Item = (f64, f64)> + '_ {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(move |(&x, &w)| (mid + half * x, half * w))
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

pub(crate) type Integrand<'a> = dyn FnMut(f64) -> Result<Complex64> + 'a;

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    err: f64,
    l1: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err.total_cmp(&other.err) == Ordering::Equal
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

/// A finite estimate together with the integral of `|f|`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Measured {
    pub estimate: Estimate,
    pub l1: f64,
}

/// Reusable integrator holding the two Gauss–Legendre rules for a spec.
#[derive(Debug, Clone)]
pub struct Integrator {
    spec: QuadratureSpec,
    low: GaussLegendre,
    high: GaussLegendre,
}

impl Integrator {
    pub fn new(spec: QuadratureSpec) -> Result<Self> {
        spec.validate()?;
        Ok(Integrator {
            spec,
            low: GaussLegendre::new(spec.panel_order),
            high: GaussLegendre::new(2 * spec.panel_order),
        })
    }

    pub fn spec(&self) -> &QuadratureSpec {
        &self.spec
    }

    /// `∫_a^b f`.
    pub fn finite<F>(&self, mut f: F, a: f64, b: f64) -> Result<Estimate>
    where
        F: FnMut(f64) -> Complex64,
    {
        self.partitioned(&mut |t| Ok(f(t)), &[a, b])
            .map(|m| m.estimate)
    }

    /// `∫_a^∞ f` over geometrically widening panels.
    pub fn halfline<F>(&self, mut f: F, a: f64) -> Result<Estimate>
    where
        F: FnMut(f64) -> Complex64,
    {
        self.try_halfline(&mut |t| Ok(f(t)), a)
    }

    /// `∫₀¹ x^{z-1} g(x) dx` computed as `∫₀^∞ e^{-zt} g(e^{-t}) dt`.
    pub fn unit_singular<G>(&self, mut g: G, z: Complex64) -> Result<Estimate>
    where
        G: FnMut(f64) -> Complex64,
    {
        self.try_halfline(&mut |t| Ok(damped(z, t, g(math::exp(-t)))), 0.0)
    }

    /// Adaptive integral over consecutive segments `[b₀,b₁], [b₁,b₂], …`
    /// with one global error budget.
    pub(crate) fn partitioned(&self, f: &mut Integrand<'_>, breaks: &[f64]) -> Result<Measured> {
        if breaks.len() < 2 {
            return Err(Error::InvalidParameter("need at least two breakpoints"));
        }
        if breaks.iter().any(|b| !b.is_finite()) {
            return Err(Error::InvalidParameter(
                "finite integral needs finite limits",
            ));
        }
        if breaks.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidParameter(
                "integration limits must be ordered (a <= b)",
            ));
        }
        let mut heap = BinaryHeap::with_capacity(breaks.len());
        for w in breaks.windows(2) {
            if w[0] < w[1] {
                heap.push(self.panel(f, w[0], w[1])?);
            }
        }
        let mut resolved: Vec<Panel> = Vec::new();
        let mut count = heap.len();
        let converged = loop {
            let value: Complex64 = heap.iter().chain(&resolved).map(|p| p.value).sum();
            let active: f64 = heap.iter().map(|p| p.err).sum();
            let tol = (self.spec.rel_tol * value.norm()).max(self.spec.abs_tol);
            if active <= tol {
                break true;
            }
            if count >= self.spec.max_panels {
                break false;
            }
            let Some(worst) = heap.pop() else {
                break true;
            };
            if worst.err <= ROUNDOFF_ULPS * f64::EPSILON * worst.l1 {
                resolved.push(worst);
                continue;
            }
            let mid = 0.5 * (worst.a + worst.b);
            if !(worst.a < mid && mid < worst.b) {
                // cannot bisect further in f64
                resolved.push(worst);
                continue;
            }
            heap.push(self.panel(f, worst.a, mid)?);
            heap.push(self.panel(f, mid, worst.b)?);
            count += 1;
        };
        let all = || heap.iter().chain(&resolved);
        Ok(Measured {
            estimate: Estimate {
                value: all().map(|p| p.value).sum(),
                err_est: all().map(|p| p.err).sum(),
                panels_used: count,
                converged,
            },
            l1: all().map(|p| p.l1).sum(),
        })
    }

    pub(crate) fn try_halfline(&self, f: &mut Integrand<'_>, a: f64) -> Result<Estimate> {
        if !a.is_finite() {
            return Err(Error::InvalidParameter("half-line start must be finite"));
        }
        let mut total = Estimate::zero();
        let mut total_l1 = 0.0;
        let mut start = a;
        let mut width = 1.0;
        let mut previous_mean: Option<f64> = None;
        let mut streak = 0;
        let mut finished = false;
        for _ in 0..MAX_TAIL_PANELS {
            let end = start + width;
            if !end.is_finite() {
                break;
            }
            let m = self.partitioned(f, &[start, end])?;
            total = total.combine(m.estimate);
            total_l1 += m.l1;
            let mean = m.l1 / width;
            if let Some(prev) = previous_mean {
                if mean > prev {
                    streak += 1;
                    if streak >= DIVERGENCE_STREAK {
                        return Err(Error::TailDivergence { at: end });
                    }
                } else {
                    streak = 0;
                }
            }
            previous_mean = Some(mean);
            let negligible =
                m.l1 <= self.spec.rel_tol * total.value.norm() || m.l1 <= f64::EPSILON * total_l1;
            if m.l1 <= self.spec.abs_tol && negligible {
                finished = true;
                break;
            }
            start = end;
            width *= self.spec.tail_growth;
        }
        total.converged &= finished;
        Ok(total)
    }

    fn panel(&self, f: &mut Integrand<'_>, a: f64, b: f64) -> Result<Panel> {
        let mut low = Complex64::new(0.0, 0.0);
        for (t, w) in self.low.mapped(a, b) {
            low += checked(f, t)? * w;
        }
        let mut high = Complex64::new(0.0, 0.0);
        let mut l1 = 0.0;
        for (t, w) in self.high.mapped(a, b) {
            let v = checked(f, t)?;
            high += v * w;
            l1 += v.norm() * w;
        }
        Ok(Panel {
            a,
            b,
            value: high,
            err: (high - low).norm(),
            l1,
        })
    }
}

fn checked(f: &mut Integrand<'_>, t: f64) -> Result<Complex64> {
    let v = f(t)?;
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFiniteIntegrand { at: t })
    }
}

/// `e^{-zt} · value`, with the exponential applied in two halves so that a
/// growing factor cannot overflow while the product is still decaying.
pub fn damped(z: Complex64, t: f64, value: Complex64) -> Complex64 {
    if value.re == 0.0 && value.im == 0.0 {
        return value;
    }
    let half = (-z * (0.5 * t)).exp();
    half * (half * value)
}

/// Splits `[a, b]` into equal segments no wider than `max_width`.
pub(crate) fn uniform_breaks(a: f64, b: f64, max_width: f64) -> Vec<f64> {
    let n = (math::ceil((b - a) / max_width) as usize).max(1);
    let mut breaks: Vec<f64> = (0..=n).map(|i| a + (b - a) * i as f64 / n as f64).collect();
    breaks[n] = b;
    breaks
}

/// `∫_a^b f` for `a ≤ b`.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, q: &QuadratureSpec) -> Result<Estimate>
where
    F: FnMut(f64) -> Complex64,
{
    Integrator::new(*q)?.finite(f, a, b)
}

/// `∫_a^∞ f` for an eventually decaying `f`.
pub fn integrate_halfline<F>(f: F, a: f64, q: &QuadratureSpec) -> Result<Estimate>
where
    F: FnMut(f64) -> Complex64,
{
    Integrator::new(*q)?.halfline(f, a)
}

/// `∫₀¹ x^{z-1} g(x) dx` with the singular factor removed by `x = e^{-t}`.
///
/// Only `Re z` matters for convergence; it must exceed the singularity
/// index of `g` at the origin, otherwise the transformed tail diverges.
pub fn integrate_unit_singular<G>(g: G, z: Complex64, q: &QuadratureSpec) -> Result<Estimate>
where
    G: FnMut(f64) -> Complex64,
{
    Integrator::new(*q)?.unit_singular(g, z)
}
