//! The group algebra `ℂ[S_d]` with exact rational coefficients.
//!
//! Every element that shows up here (Jucys–Murphy elements, minimal
//! projections, the unnormalized matrix units) has rational coefficients, so
//! an [`AlgebraElement`] is a sparse map from permutations to [`Rational`]s.

mod branching;
mod projection;
mod units;
mod young_form;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::permutation::Permutation;
use crate::rational::Rational;

pub use branching::{dimension_ratio, expectation_constant, expectation_of_unit, projection_lift, unit_lift, ExpectationConstant};
pub use projection::{minimal_projection, ProjectionCache};
pub use units::{
    c_squared_along, decompose, matrix_unit_unnormalized, normalization_c_squared, unit_basis,
    MatrixUnitRecord, UnitBasis, UnitKey,
};
pub use young_form::{young_orthogonal_matrix, young_representation, RealMatrix};

/// An element `Σ c_σ σ` of `ℂ[S_d]`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    degree: usize,
    terms: BTreeMap<Permutation, Rational>,
}

impl AlgebraElement {
    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(degree: usize) -> Self {
        Self::from_permutation(Permutation::identity(degree))
    }

    /// `c · e`.
    pub fn scalar(degree: usize, c: Rational) -> Self {
        Self::from_terms(degree, [(Permutation::identity(degree), c)]).expect("matching degree")
    }

    pub fn from_permutation(sigma: Permutation) -> Self {
        let degree = sigma.degree();
        let mut terms = BTreeMap::new();
        terms.insert(sigma, Rational::one());
        Self { degree, terms }
    }

    /// Sums repeated permutations and drops zeros.
    pub fn from_terms(
        degree: usize,
        terms: impl IntoIterator<Item = (Permutation, Rational)>,
    ) -> Result<Self> {
        let mut out = Self::zero(degree);
        for (sigma, c) in terms {
            if sigma.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: sigma.degree(),
                });
            }
            out.add_term(sigma, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, sigma: Permutation, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(sigma) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Terms in increasing one-line order.
    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Rational)> {
        self.terms.iter()
    }

    /// Number of permutations in the support.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, sigma: &Permutation) -> Rational {
        self.terms.get(sigma).cloned().unwrap_or_else(Rational::zero)
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: other.degree,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (sigma, c) in &other.terms {
            out.add_term(*sigma, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.degree);
        }
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(s, x)| (*s, x * c)).collect(),
        }
    }

    /// Convolution product `Σ_{σ,τ} c_σ d_τ (στ)`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        if let Some(product) = self.multiply_small(other) {
            return Ok(product);
        }
        let mut acc: HashMap<Permutation, Rational> = HashMap::with_capacity(self.len().max(other.len()));
        for (sigma, a) in &self.terms {
            for (tau, b) in &other.terms {
                let key = sigma.compose_unchecked(tau);
                let prod = a * b;
                match acc.get_mut(&key) {
                    Some(v) => *v += prod,
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
        }
        Ok(Self {
            degree: self.degree,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    /// Numerators over the least common denominator, if they fit in `i64`.
    fn small_integer_form(&self) -> Option<(Vec<(Permutation, i64)>, BigInt)> {
        let den = self.terms.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut out = Vec::with_capacity(self.terms.len());
        for (sigma, c) in &self.terms {
            let num = c.numer() * (&den / c.denom());
            out.push((*sigma, num.to_i64()?));
        }
        Some((out, den))
    }

    /// The product in machine integers over a common denominator. `None`
    /// when an operand or a partial sum does not fit; the caller then falls
    /// back to exact rationals.
    fn multiply_small(&self, other: &Self) -> Option<Self> {
        let (xs, dx) = self.small_integer_form()?;
        let (ys, dy) = other.small_integer_form()?;
        let mut acc: HashMap<Permutation, i128> = HashMap::with_capacity(xs.len().max(ys.len()));
        for (sigma, a) in &xs {
            for (tau, b) in &ys {
                let v = acc.entry(sigma.compose_unchecked(tau)).or_insert(0);
                *v = v.checked_add(*a as i128 * *b as i128)?;
            }
        }
        let den = dx * dy;
        Some(Self {
            degree: self.degree,
            terms: acc
                .into_iter()
                .filter(|(_, v)| *v != 0)
                .map(|(s, v)| (s, Rational::new(BigInt::from(v), den.clone())))
                .collect(),
        })
    }

    /// `x · σ` for a single permutation; a relabeling, no arithmetic.
    pub fn right_mul_perm(&self, sigma: &Permutation) -> Result<Self> {
        self.check_perm(sigma)?;
        Ok(Self {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.compose_unchecked(sigma), c.clone()))
                .collect(),
        })
    }

    /// `σ · x` for a single permutation.
    pub fn left_mul_perm(&self, sigma: &Permutation) -> Result<Self> {
        self.check_perm(sigma)?;
        Ok(Self {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (sigma.compose_unchecked(t), c.clone()))
                .collect(),
        })
    }

    fn check_perm(&self, sigma: &Permutation) -> Result<()> {
        if sigma.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: sigma.degree(),
            });
        }
        Ok(())
    }

    /// The `*`-operation `σ ↦ σ⁻¹`; coefficients are real so stay unchanged.
    pub fn adjoint(&self) -> Self {
        Self {
            degree: self.degree,
            terms: self.terms.iter().map(|(s, c)| (s.inverse(), c.clone())).collect(),
        }
    }

    /// Normalized trace: the coefficient of the identity.
    pub fn regular_trace(&self) -> Rational {
        self.coefficient(&Permutation::identity(self.degree))
    }

    /// `τ(x* y) = Σ_σ x_σ y_σ`, without forming the product.
    pub fn trace_pairing(&self, other: &Self) -> Result<Rational> {
        self.check_degree(other)?;
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        Ok(small
            .terms
            .iter()
            .filter_map(|(s, a)| large.terms.get(s).map(|b| a * b))
            .fold(Rational::zero(), |acc, x| acc + x))
    }

    /// If `self = c · other` for some rational `c`, returns it. `None` when
    /// the supports or ratios differ, or when `other` is zero and `self` is not.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        if self.degree != other.degree || self.len() != other.len() {
            return None;
        }
        if other.is_zero() {
            return Some(Rational::zero());
        }
        let (s0, o0) = other.terms.iter().next().unwrap();
        let c = self.terms.get(s0)? / o0;
        other
            .terms
            .iter()
            .all(|(s, o)| self.terms.get(s).is_some_and(|x| *x == o * &c))
            .then_some(c)
    }

    /// The image under `ℂ[S_d] ⊂ ℂ[S_{d'}]`, permutations extended by fixed points.
    pub fn embed(&self, target_degree: usize) -> Result<Self> {
        if target_degree < self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: target_degree,
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| Ok((s.extend(target_degree)?, c.clone())))
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(Self {
            degree: target_degree,
            terms,
        })
    }

    /// The conditional expectation `ℂ[S_{d}] → ℂ[S_{d-1}]`: keeps the terms
    /// whose permutation fixes `d`.
    pub fn conditional_expectation(&self) -> Result<Self> {
        if self.degree < 2 {
            return Err(Error::InvalidArgument(format!(
                "conditional expectation needs degree >= 2, got {}",
                self.degree
            )));
        }
        Ok(Self {
            degree: self.degree - 1,
            terms: self
                .terms
                .iter()
                .filter_map(|(s, c)| s.restrict().map(|r| (r, c.clone())))
                .collect(),
        })
    }
}

/// The Jucys–Murphy element `X_i = Σ_{j<i} (j, i)` of `ℂ[S_d]`; `X_1 = 0`.
pub fn jucys_murphy(i: usize, degree: usize) -> Result<AlgebraElement> {
    if i == 0 || i > degree {
        return Err(Error::IndexOutOfRange { index: i, max: degree });
    }
    AlgebraElement::from_terms(
        degree,
        (1..i).map(|j| (Permutation::transposition(degree, j, i).unwrap(), Rational::one())),
    )
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for &AlgebraElement {
            type Output = AlgebraElement;
            /// Panics when the degrees differ.
            fn $method(self, rhs: &AlgebraElement) -> AlgebraElement {
                self.$checked(rhs).expect("algebra element degrees differ")
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, multiply);

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for AlgebraElement {
    /// `1/2·e + 1/2·(1 2)`; unit coefficients are omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (sigma, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let abs = c.abs();
            if abs.is_one() {
                write!(f, "{sigma}")?;
            } else {
                write!(f, "{abs}·{sigma}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AlgebraElement[S_{}]({self})", self.degree)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    perm: Permutation,
    #[serde(with = "crate::rational::serde_str")]
    coeff: Rational,
}

#[derive(Serialize, Deserialize)]
struct ElementRepr {
    degree: usize,
    terms: Vec<TermRepr>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementRepr {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(p, c)| TermRepr {
                    perm: *p,
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = ElementRepr::deserialize(d)?;
        Self::from_terms(repr.degree, repr.terms.into_iter().map(|t| (t.perm, t.coeff)))
            .map_err(serde::de::Error::custom)
    }
}
