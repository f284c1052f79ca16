//! Closed-form residue inversion of rational transforms.
//!
//! For `T(z) = Σ rₖ/(z − pₖ)` the Cauchy formula gives
//! `(1/2πi)∮ e^{xz} T(z) dz = Σ rₖ e^{pₖx}` and
//! `(1/2πi)∮ y^{-z} T(z) dz = Σ rₖ y^{-pₖ}` for any closed counterclockwise
//! contour enclosing every pole. Nothing here touches quadrature, which
//! makes it the independent reference for the contour module.

use alloc::vec::Vec;

use num_complex::Complex64;

use crate::contour::InverseKind;
use crate::error::{Error, Result};
use crate::math;
use crate::xform::Rational;

/// One term `r · kernel(p, arg)` per pole.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueSum {
    terms: Vec<(Complex64, Complex64)>,
    kind: InverseKind,
}

impl ResidueSum {
    pub fn new(t: &Rational, kind: InverseKind) -> Self {
        ResidueSum {
            terms: t.poles().iter().map(|p| (p.location, p.residue)).collect(),
            kind,
        }
    }

    pub fn terms(&self) -> &[(Complex64, Complex64)] {
        &self.terms
    }

    pub fn kind(&self) -> InverseKind {
        self.kind
    }

    /// Complex value of the residue sum at `arg`.
    pub fn evaluate(&self, arg: f64) -> Result<Complex64> {
        let ln_arg = match self.kind {
            InverseKind::LaplaceKernel => None,
            InverseKind::MellinKernel => {
                if !(arg > 0.0) {
                    return Err(Error::Domain { arg });
                }
                Some(math::ln(arg))
            }
        };
        Ok(self
            .terms
            .iter()
            .map(|&(p, r)| match ln_arg {
                None => r * (p * arg).exp(),
                // y^{-p} on the real branch of ln y
                Some(l) => r * (-p * l).exp(),
            })
            .sum())
    }
}

/// Complex residue-sum inverse.
pub fn residue_inverse_complex(t: &Rational, kind: InverseKind, arg: f64) -> Result<Complex64> {
    ResidueSum::new(t, kind).evaluate(arg)
}

/// Real residue-sum inverse of a rational transform.
///
/// Conjugate-symmetric pole sets give a real result; the imaginary part is
/// dropped (debug builds assert it is at rounding level).
pub fn residue_inverse(t: &Rational, kind: InverseKind, arg: f64) -> Result<f64> {
    let sum = ResidueSum::new(t, kind);
    let v = sum.evaluate(arg)?;
    if cfg!(debug_assertions) && t.is_conjugate_symmetric() {
        let scale: f64 = sum
            .terms
            .iter()
            .map(|&(p, r)| match kind {
                InverseKind::LaplaceKernel => r.norm() * math::exp(p.re * arg),
                InverseKind::MellinKernel => r.norm() * math::exp(-p.re * math::ln(arg)),
            })
            .sum();
        debug_assert!(
            math::abs(v.im) <= 1e-12 * scale.max(f64::MIN_POSITIVE),
            "imaginary residue sum {} for a conjugate-symmetric transform",
            v.im
        );
    }
    Ok(v.re)
}

/// Bounding box of the pole set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoleBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_max: f64,
}

pub fn pole_box(t: &Rational) -> PoleBox {
    PoleBox {
        re_min: t.min_re(),
        re_max: t.max_re(),
        im_max: t.max_abs_im(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcat::FunctionSpec;
    use crate::xform::{analytic_transform, Pole, TransformKind};
    use alloc::vec;

    fn single(p: f64) -> Rational {
        Rational::new(vec![Pole::real(p, 1.0)]).unwrap()
    }

    fn mixed() -> Rational {
        let spec = FunctionSpec::mixed_exp(1.0, 2.0).unwrap();
        analytic_transform(&spec, TransformKind::Laplace)
            .unwrap()
            .as_rational()
            .unwrap()
            .clone()
    }

    #[test]
    fn residue_examples() {
        let v = residue_inverse(&single(-1.0), InverseKind::LaplaceKernel, -2.0).unwrap();
        assert!((v - 7.38905609893065).abs() < 1e-13);
        let v = residue_inverse(&single(-0.5), InverseKind::MellinKernel, 1.0).unwrap();
        assert_eq!(v, 1.0);
        let v = residue_inverse(&mixed(), InverseKind::LaplaceKernel, 0.5).unwrap();
        let want = (-0.5f64).exp() * 0.5f64.sin().powi(2) + (-1.0f64).exp() * 0.5f64.cos().powi(2);
        assert!((v - want).abs() < 1e-15);
    }

    #[test]
    fn mellin_kernel_needs_positive_argument() {
        for y in [0.0, -1.0, f64::NAN] {
            assert!(matches!(
                residue_inverse(&single(-0.5), InverseKind::MellinKernel, y),
                Err(Error::Domain { .. })
            ));
        }
        // Laplace kernel accepts any real argument
        assert!(residue_inverse(&single(-0.5), InverseKind::LaplaceKernel, -10.0).is_ok());
    }

    #[test]
    fn pole_box_examples() {
        let b = pole_box(&single(-1.0));
        assert_eq!((b.re_min, b.re_max, b.im_max), (-1.0, -1.0, 0.0));
        let b = pole_box(&mixed());
        assert_eq!((b.re_min, b.re_max, b.im_max), (-2.0, -1.0, 2.0));
        let b = pole_box(&single(-0.5));
        assert_eq!((b.re_min, b.re_max, b.im_max), (-0.5, -0.5, 0.0));
    }

    #[test]
    fn source_identity_on_extended_domains() {
        let laplace = [
            FunctionSpec::exp(1.0).unwrap(),
            FunctionSpec::exp(-0.5).unwrap(),
            FunctionSpec::exp_minus_x(),
            FunctionSpec::mixed_exp(1.0, 2.0).unwrap(),
            FunctionSpec::mixed_exp(0.3, -0.2).unwrap(),
        ];
        for spec in &laplace {
            let t = analytic_transform(spec, TransformKind::Laplace).unwrap();
            let r = t.as_rational().unwrap();
            for i in 0..=100 {
                let x = -5.0 + 0.1 * i as f64;
                let got = residue_inverse(r, InverseKind::LaplaceKernel, x).unwrap();
                let want = spec.eval(x).unwrap();
                assert!(
                    (got - want).abs() <= 1e-10 * want.abs().max(1e-300) + 1e-300,
                    "{spec:?} x={x}"
                );
            }
        }
        for g in [0.5, 0.0, -0.7, 2.0] {
            let spec = FunctionSpec::power(g).unwrap();
            let t = analytic_transform(&spec, TransformKind::Moment).unwrap();
            for i in 0..=100 {
                let y = 0.05 + (10.0 - 0.05) * i as f64 / 100.0;
                let got = residue_inverse(t.as_rational().unwrap(), InverseKind::MellinKernel, y)
                    .unwrap();
                let want = spec.eval(y).unwrap();
                assert!((got - want).abs() <= 1e-10 * want.abs(), "γ={g} y={y}");
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn linear_in_the_residue_list(
            split in 1usize..6,
            x in -4.0f64..4.0,
        ) {
            let whole = mixed();
            let (a, b) = whole.poles().split_at(split);
            let ra = Rational::new(a.to_vec()).unwrap();
            let rb = Rational::new(b.to_vec()).unwrap();
            for kind in [InverseKind::LaplaceKernel, InverseKind::MellinKernel] {
                let arg = if kind == InverseKind::MellinKernel { x.exp() } else { x };
                let total = residue_inverse_complex(&whole, kind, arg).unwrap();
                let parts = residue_inverse_complex(&ra, kind, arg).unwrap()
                    + residue_inverse_complex(&rb, kind, arg).unwrap();
                let scale: f64 = ResidueSum::new(&whole, kind)
                    .terms()
                    .iter()
                    .map(|&(p, r)| match kind {
                        InverseKind::LaplaceKernel => r.norm() * (p.re * arg).exp(),
                        InverseKind::MellinKernel => r.norm() * (-p.re * arg.ln()).exp(),
                    })
                    .sum();
                proptest::prop_assert!((total - parts).norm() <= 32.0 * f64::EPSILON * scale);
            }
        }
    }
}
