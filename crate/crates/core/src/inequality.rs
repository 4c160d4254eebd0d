//! Verifier for the set-integral inequalities.
//!
//! For a convex measure and a family `G`, the measure of the set integral
//! over `[0, t]` is bounded by the mean of the measure of the `t`-dilated
//! sets; dropping the dilation is valid for `t <= 1` or for sublinear
//! measures, and genuinely fails otherwise (the sharpness demo ships such a
//! case). Both right-hand sides are computed by adaptive quadrature split at
//! path breakpoints, with the certified error bound reported.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::family::{aumann_integral, SetFamily};
use crate::mnc::Mnc;
use crate::quad::adaptive_simpson;
use crate::sets::VElement;

/// Default target absolute tolerance of the quadrature.
pub const DEFAULT_QUAD_TOL: f64 = 1e-9;

/// Comparison slack absorbing pure f64 rounding on top of the quadrature
/// error bound.
const VERDICT_SLACK: f64 = 1e-12;

/// One verified instance of the integral inequalities at time `t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub t: f64,
    /// Measure of the set integral over `[0, t]`.
    pub lhs: f64,
    /// Mean over `[0, t]` of the measure of the `t`-dilated sets.
    pub rhs_scaled: f64,
    /// Plain integral of the measure over `[0, t]`.
    pub rhs_plain: f64,
    pub holds_scaled: bool,
    pub holds_plain: bool,
    pub quadrature_error_bound: f64,
}

/// Evaluates both inequalities for a catalog measure on a family at `t`.
/// Quadrature that misses `quad_tol` is an error, never a silent verdict.
pub fn verify_inequality(m: &Mnc, family: &SetFamily, t: f64, quad_tol: f64) -> Result<InequalityReport> {
    family.validate()?;
    let integral = aumann_integral(family, t)?;
    let lhs = m.eval_set(&integral);

    let cuts = family.breakpoints_before(t);
    let radii_at = |s: f64| -> VElement {
        VElement::new(
            family
                .tail_paths
                .iter()
                .map(|p| p.eval(s).max(0.0))
                .collect(),
        )
        .expect("radius paths are nonnegative by validation")
    };

    let scaled_integrand = |s: f64| m.eval_radii(&radii_at(s).scale(t));
    let plain_integrand = |s: f64| m.eval_radii(&radii_at(s));

    let (scaled_int, err_scaled) = adaptive_simpson(&scaled_integrand, 0.0, t, quad_tol, &cuts)?;
    let (plain_int, err_plain) = adaptive_simpson(&plain_integrand, 0.0, t, quad_tol, &cuts)?;

    let rhs_scaled = scaled_int / t;
    let rhs_plain = plain_int;
    let err_bound = err_scaled.max(err_plain);

    let slack = |rhs: f64, err: f64| err + VERDICT_SLACK * (1.0 + rhs.abs());
    Ok(InequalityReport {
        t,
        lhs,
        rhs_scaled,
        rhs_plain,
        holds_scaled: lhs <= rhs_scaled + slack(rhs_scaled, err_scaled / t),
        holds_plain: lhs <= rhs_plain + slack(rhs_plain, err_plain),
        quadrature_error_bound: err_bound,
    })
}
