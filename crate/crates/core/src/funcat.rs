//! Catalog of test functions with exact growth metadata.
//!
//! The catalog is closed: every entry knows its critical exponent (Laplace
//! side) or critical index (moment side) analytically, which is what lets
//! the transform and contour code place integration lines without any
//! numerical probing.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// A cataloged function together with its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Function {
    /// `f(x) = e^{-γx}`
    Exp { gamma: f64 },
    /// `F(y) = y^γ`
    Power { gamma: f64 },
    /// `e^{-γ₁x} sin²x + e^{-γ₂x} cos²x`
    MixedExp { g1: f64, g2: f64 },
    /// `y^{γ₁} sin²y + y^{γ₂} cos²y`
    MixedPower { g1: f64, g2: f64 },
    /// `f(x) = e^{-x}`, whose Mellin transform is Γ(z).
    ExpMinusX,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FunctionKind {
    Exp,
    Power,
    MixedExp,
    MixedPower,
    ExpMinusX,
}

impl FunctionKind {
    pub const ALL: [FunctionKind; 5] = [
        FunctionKind::Exp,
        FunctionKind::Power,
        FunctionKind::MixedExp,
        FunctionKind::MixedPower,
        FunctionKind::ExpMinusX,
    ];

    /// Number of real parameters the kind takes.
    pub fn arity(self) -> usize {
        match self {
            FunctionKind::Exp | FunctionKind::Power => 1,
            FunctionKind::MixedExp | FunctionKind::MixedPower => 2,
            FunctionKind::ExpMinusX => 0,
        }
    }
}

/// Standard domain of the function's variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainHint {
    /// `x ∈ [0, ∞)`, the Laplace side.
    HalfLine,
    /// `y ∈ (0, 1]`, the moment side.
    UnitInterval,
    /// All real numbers.
    FullLine,
}

/// A catalog entry plus spectator parameters.
///
/// Spectator parameters `α₁…αₙ` ride along through serialization and the
/// moment map but never enter evaluation: every transform acts on a single
/// variable.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionSpec {
    function: Function,
    alphas: Vec<f64>,
}

impl FunctionSpec {
    pub fn new(function: Function) -> Result<Self> {
        let finite = function.params().iter().all(|p| p.is_finite());
        if !finite {
            return Err(Error::InvalidSpec("parameters must be finite reals"));
        }
        Ok(FunctionSpec {
            function,
            alphas: Vec::new(),
        })
    }

    /// Builds a spec from a kind and an ordered parameter list.
    pub fn from_params(kind: FunctionKind, params: &[f64]) -> Result<Self> {
        if params.len() != kind.arity() {
            return Err(Error::InvalidSpec("wrong number of parameters for kind"));
        }
        let function = match kind {
            FunctionKind::Exp => Function::Exp { gamma: params[0] },
            FunctionKind::Power => Function::Power { gamma: params[0] },
            FunctionKind::MixedExp => Function::MixedExp {
                g1: params[0],
                g2: params[1],
            },
            FunctionKind::MixedPower => Function::MixedPower {
                g1: params[0],
                g2: params[1],
            },
            FunctionKind::ExpMinusX => Function::ExpMinusX,
        };
        Self::new(function)
    }

    pub fn exp(gamma: f64) -> Result<Self> {
        Self::new(Function::Exp { gamma })
    }

    pub fn power(gamma: f64) -> Result<Self> {
        Self::new(Function::Power { gamma })
    }

    pub fn mixed_exp(g1: f64, g2: f64) -> Result<Self> {
        Self::new(Function::MixedExp { g1, g2 })
    }

    pub fn mixed_power(g1: f64, g2: f64) -> Result<Self> {
        Self::new(Function::MixedPower { g1, g2 })
    }

    pub fn exp_minus_x() -> Self {
        FunctionSpec {
            function: Function::ExpMinusX,
            alphas: Vec::new(),
        }
    }

    pub fn with_alphas(mut self, alphas: Vec<f64>) -> Result<Self> {
        if alphas.iter().any(|a| !a.is_finite()) {
            return Err(Error::InvalidSpec(
                "spectator parameters must be finite reals",
            ));
        }
        self.alphas = alphas;
        Ok(self)
    }

    pub fn function(&self) -> Function {
        self.function
    }

    pub fn kind(&self) -> FunctionKind {
        self.function.kind()
    }

    pub fn params(&self) -> Vec<f64> {
        self.function.params()
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn domain_hint(&self) -> DomainHint {
        match self.function {
            Function::Exp { .. } | Function::MixedExp { .. } | Function::ExpMinusX => {
                DomainHint::HalfLine
            }
            Function::Power { .. } | Function::MixedPower { .. } => DomainHint::UnitInterval,
        }
    }

    pub fn is_power_family(&self) -> bool {
        matches!(self.kind(), FunctionKind::Power | FunctionKind::MixedPower)
    }

    /// Pointwise value of the cataloged formula.
    ///
    /// Exponential kinds are entire and evaluate at any real `x` (the
    /// extended domain); power kinds need `x ≥ 0`.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if x.is_nan() {
            return Err(Error::Domain { arg: x });
        }
        let value = match self.function {
            Function::Exp { gamma } => math::exp(-gamma * x),
            Function::ExpMinusX => math::exp(-x),
            Function::MixedExp { g1, g2 } => {
                let (s, c) = (math::sin(x), math::cos(x));
                math::exp(-g1 * x) * s * s + math::exp(-g2 * x) * c * c
            }
            Function::Power { gamma } => {
                if x < 0.0 {
                    return Err(Error::Domain { arg: x });
                }
                math::pow(x, gamma)
            }
            Function::MixedPower { g1, g2 } => {
                if x < 0.0 {
                    return Err(Error::Domain { arg: x });
                }
                let (s, c) = (math::sin(x), math::cos(x));
                math::pow(x, g1) * s * s + math::pow(x, g2) * c * c
            }
        };
        Ok(value)
    }

    /// Exact analytic growth bounds.
    ///
    /// For Laplace-side kinds `|f(x)| ≤ A·e^{right·x}` on `x ≥ 0`; for moment
    /// kinds `|F(y)| ≤ A·y^{-right}` on `0 < y ≤ 1`.
    pub fn growth_bounds(&self) -> GrowthBounds {
        match self.function {
            Function::Exp { gamma } | Function::Power { gamma } => GrowthBounds {
                right_index: -gamma,
                left_index: -gamma,
                amplitude: 1.0,
            },
            Function::ExpMinusX => GrowthBounds {
                right_index: -1.0,
                left_index: -1.0,
                amplitude: 1.0,
            },
            Function::MixedExp { g1, g2 } => GrowthBounds {
                right_index: -g1.min(g2),
                left_index: -g1.max(g2),
                amplitude: 1.0,
            },
            // sin²y ~ y² at the origin lifts the first term's index by two
            Function::MixedPower { g1, g2 } => GrowthBounds {
                right_index: -(g1 + 2.0).min(g2),
                left_index: -(g1 + 2.0).max(g2),
                amplitude: 2.0,
            },
        }
    }

    /// Maps a Laplace-side spec `f` to the moment-side spec `F(y) = f(-ln y)`.
    pub fn to_moment_form(&self) -> Result<FunctionSpec> {
        let function = match self.function {
            Function::Exp { gamma } => Function::Power { gamma },
            Function::ExpMinusX => Function::Power { gamma: 1.0 },
            _ => return Err(Error::UnsupportedMap),
        };
        Ok(FunctionSpec {
            function,
            alphas: self.alphas.clone(),
        })
    }
}

impl Function {
    pub fn kind(&self) -> FunctionKind {
        match self {
            Function::Exp { .. } => FunctionKind::Exp,
            Function::Power { .. } => FunctionKind::Power,
            Function::MixedExp { .. } => FunctionKind::MixedExp,
            Function::MixedPower { .. } => FunctionKind::MixedPower,
            Function::ExpMinusX => FunctionKind::ExpMinusX,
        }
    }

    pub fn params(&self) -> Vec<f64> {
        match *self {
            Function::Exp { gamma } | Function::Power { gamma } => alloc::vec![gamma],
            Function::MixedExp { g1, g2 } | Function::MixedPower { g1, g2 } => alloc::vec![g1, g2],
            Function::ExpMinusX => Vec::new(),
        }
    }
}

/// Exponential (or power-like) growth bounds of a cataloged function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrowthBounds {
    /// Critical exponent / index `a`.
    pub right_index: f64,
    /// Lower bound, `-∞` when the function has no two-sided bound.
    pub left_index: f64,
    /// The constant `A`.
    pub amplitude: f64,
}

/// Holomorphy strip `c1 < Re z < c2` of a Mellin transform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Strip {
    pub c1: f64,
    pub c2: f64,
}

impl Strip {
    pub fn new(c1: f64, c2: f64) -> Result<Self> {
        if c1.is_nan() || c2.is_nan() || c1 >= c2 {
            return Err(Error::InvalidParameter("strip requires c1 < c2"));
        }
        Ok(Strip { c1, c2 })
    }

    pub fn contains(&self, re: f64) -> bool {
        self.c1 < re && re < self.c2
    }
}
