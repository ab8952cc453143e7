//! Matrix units across the inclusion `ℂ[S_d] ⊂ ℂ[S_{d+1}]`.
//!
//! Going up, `E_T` splits into the projections of the tableaux one box
//! larger, and `Ẽ_{T,S}` into the units `Ẽ_{R,M}` with `R̄ = T`, `M̄ = S` of
//! a common shape. Going down, the conditional expectation sends `E_{T,S}`
//! to a multiple of `E_{T̄,S̄}`, or to zero when `T̄` and `S̄` have different
//! shapes.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::tableaux::{standard_tableaux, StandardTableau, YoungDiagram};

use super::{matrix_unit_unnormalized, minimal_projection, normalization_c_squared, AlgebraElement};

/// `Σ E_S` over the tableaux `S` with `S̄ = T`, in degree `|T| + 1`.
pub fn projection_lift(t: &StandardTableau) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero(t.size() + 1);
    for s in t.extensions() {
        out = out.add(&*minimal_projection(&s)?)?;
    }
    Ok(out)
}

/// `Σ Ẽ_{R,M}` over `R̄ = T`, `M̄ = S` with `R` and `M` of the same shape.
pub fn unit_lift(t: &StandardTableau, s: &StandardTableau) -> Result<AlgebraElement> {
    if t.shape() != s.shape() {
        return Err(Error::ShapeMismatch);
    }
    let mut out = AlgebraElement::zero(t.size() + 1);
    for r in t.extensions() {
        for m in s.extensions().into_iter().filter(|m| m.shape() == r.shape()) {
            out = out.add(&matrix_unit_unnormalized(&r, &m)?.element)?;
        }
    }
    Ok(out)
}

/// The constant `α` in `𝔼(E_{T,S}) = α E_{T̄,S̄}`, for normalized units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpectationConstant {
    /// `α′` with `𝔼(Ẽ_{T,S}) = α′ Ẽ_{T̄,S̄}`.
    pub unnormalized: Rational,
    /// `α² = α′² · c²(T,S) / c²(T̄,S̄)`; `α` has the sign of `α′`.
    pub squared: Rational,
    pub positive: bool,
}

/// `𝔼(Ẽ_{T,S})` for tableaux with at least two boxes.
pub fn expectation_of_unit(t: &StandardTableau, s: &StandardTableau) -> Result<AlgebraElement> {
    matrix_unit_unnormalized(t, s)?.element.conditional_expectation()
}

/// `None` when `T̄` and `S̄` have different shapes. Fails if `𝔼(Ẽ_{T,S})`
/// is not a multiple of `Ẽ_{T̄,S̄}`.
pub fn expectation_constant(t: &StandardTableau, s: &StandardTableau) -> Result<Option<ExpectationConstant>> {
    let (Some(tb), Some(sb)) = (t.restriction(), s.restriction()) else {
        return Err(Error::InvalidArgument("tableaux need at least two boxes".into()));
    };
    if tb.shape() != sb.shape() {
        return Ok(None);
    }
    let down = expectation_of_unit(t, s)?;
    let target = matrix_unit_unnormalized(&tb, &sb)?;
    let unnormalized = down.ratio_to(&target.element).ok_or_else(|| {
        Error::InvalidArgument(format!("E(unit {t}, {s}) is not proportional to the restricted unit"))
    })?;
    let squared = &unnormalized * &unnormalized * normalization_c_squared(t, s)? / &target.c_squared;
    let positive = unnormalized.is_positive();
    Ok(Some(ExpectationConstant {
        unnormalized,
        squared,
        positive,
    }))
}

/// `f_λ / f_β`.
pub fn dimension_ratio(lambda: &YoungDiagram, beta: &YoungDiagram) -> Result<Rational> {
    let f_l = standard_tableaux(lambda)?.len();
    let f_b = standard_tableaux(beta)?.len();
    Ok(Rational::new(BigInt::from(f_l), BigInt::from(f_b)))
}
