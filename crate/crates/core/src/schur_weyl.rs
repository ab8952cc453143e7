//! Hilbert–Schmidt pairings of group-algebra elements acting on `(ℂⁿ)^{⊗d}`.
//!
//! A permutation acts on tensor factors by `σ(v₁⊗…⊗v_d) = v_{σ⁻¹(1)}⊗…⊗v_{σ⁻¹(d)}`,
//! so its matrix is `Σ_I e_{σ·I, I}`. Pairings are reduced to sums over the
//! permutation support: `⟨e_{J,L}, p(x)⟩` counts the `σ` with `σ·L = J`, and
//! `⟨p(x), p(y)⟩ = Σ x_σ y_τ n^{#cycles(σ⁻¹τ)}`. The inner product is
//! `⟨A, B⟩ = Tr(A* B)`, conjugate-linear in the first slot; all coefficients
//! are real, so the order never matters here.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_algebra::AlgebraElement;
use crate::permutation::Permutation;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// A multi-index `(i₁, …, i_d)` with one-based entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexTuple(Vec<usize>);

impl IndexTuple {
    pub fn new(values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("index tuple must be non-empty".into()));
        }
        if values.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "index tuple {values:?} must be one-based"
            )));
        }
        Ok(Self(values))
    }

    /// All `n^d` tuples in lexicographic order.
    pub fn all(d: usize, n: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(n.pow(d as u32));
        let mut current = vec![1; d];
        loop {
            out.push(Self(current.clone()));
            let mut k = d;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if current[k] < n {
                    current[k] += 1;
                    break;
                }
                current[k] = 1;
            }
        }
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_value(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    /// Fails if some entry exceeds `n`.
    pub fn check_bound(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&v| v > n) {
            Some(&value) => Err(Error::IndexExceedsDimension { value, n }),
            None => Ok(()),
        }
    }
}

impl TryFrom<Vec<usize>> for IndexTuple {
    type Error = Error;
    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<IndexTuple> for Vec<usize> {
    fn from(t: IndexTuple) -> Self {
        t.0
    }
}

impl fmt::Display for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for IndexTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexTuple{self}")
    }
}

/// `(σ·I)_b = I_{σ⁻¹(b)}`.
pub fn act_on_index(sigma: &Permutation, index: &IndexTuple) -> Result<IndexTuple> {
    if sigma.degree() != index.len() {
        return Err(Error::LengthMismatch {
            left: sigma.degree(),
            right: index.len(),
        });
    }
    let mut out = vec![0; index.len()];
    for (a, &v) in index.0.iter().enumerate() {
        out[sigma.apply(a)] = v;
    }
    Ok(IndexTuple(out))
}

/// `σ·L == J` without allocating.
#[inline]
pub(crate) fn maps_to(sigma: &Permutation, from: &IndexTuple, to: &IndexTuple) -> bool {
    from.0.iter().enumerate().all(|(a, &v)| to.0[sigma.apply(a)] == v)
}

/// Number of cycles of `σ`, fixed points included; `Tr p(σ) = n^{cycle_count(σ)}`.
pub fn cycle_count(sigma: &Permutation) -> usize {
    sigma.cycle_count()
}

/// `⟨e_{J,L}, p(x)⟩ = Σ_{σ·L = J} x_σ`. Independent of `n`.
pub fn pair_with_elementary(x: &AlgebraElement, j: &IndexTuple, l: &IndexTuple) -> Result<Rational> {
    for t in [j, l] {
        if t.len() != x.degree() {
            return Err(Error::LengthMismatch {
                left: x.degree(),
                right: t.len(),
            });
        }
    }
    Ok(x
        .terms()
        .filter(|(sigma, _)| maps_to(sigma, l, j))
        .fold(Rational::zero(), |acc, (_, c)| acc + c))
}

/// `⟨p(x), p(y)⟩` as an exact polynomial in `n`.
pub fn gram_pairing_poly(x: &AlgebraElement, y: &AlgebraElement) -> Result<Polynomial> {
    if x.degree() != y.degree() {
        return Err(Error::DegreeMismatch {
            left: x.degree(),
            right: y.degree(),
        });
    }
    let d = x.degree();
    let mut coeffs = vec![Rational::zero(); d + 1];
    for (sigma, a) in x.terms() {
        let sigma_inv = sigma.inverse();
        for (tau, b) in y.terms() {
            coeffs[sigma_inv.compose_unchecked(tau).cycle_count()] += a * b;
        }
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// `Tr p(x) = Σ x_σ n^{#cycles(σ)}`, i.e. `⟨p(e), p(x)⟩`.
pub fn trace_polynomial(x: &AlgebraElement) -> Polynomial {
    let mut coeffs = vec![Rational::zero(); x.degree() + 1];
    for (sigma, c) in x.terms() {
        coeffs[sigma.cycle_count()] += c;
    }
    Polynomial::from_coeffs(coeffs)
}
