//! Exact Haar-unitary moments
//! `∫ u_{i₁j₁}⋯u_{i_d j_d} ū_{k₁l₁}⋯ū_{k_d l_d} dμ(U)`
//! expanded over the unnormalized matrix units of `ℂ[S_d]`:
//!
//! ```text
//! Σ_{λ ⊢ d, l(λ) ≤ min(n, k)}  Σ_{T,S}  ⟨e_{J,L}, Ẽ_{T,S}⟩ ⟨Ẽ_{T,S}, e_{I,K}⟩ / ‖Ẽ_{T,S}‖²
//! ```
//!
//! where `k` is the corner length of the query (see [`corner_effective_length`]).
//! Diagrams longer than `n` lie in the kernel of `ℂ[S_d] → End((ℂⁿ)^{⊗d})`;
//! the length gate removes them before any norm is evaluated, so no `0/0`
//! ever forms.

use std::collections::BTreeMap;
use std::sync::{Arc, LazyLock, OnceLock, RwLock};
use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group_algebra::{minimal_projection, unit_basis, UnitBasis};
use crate::limits::check_degree;
use crate::poly::{Polynomial, RationalFunction};
use crate::rational::{factorial, rising_factorial, Rational};
use crate::schur_weyl::{maps_to, pair_with_elementary, trace_polynomial, IndexTuple};

/// Index tuples `(I, J, K, L)` of a common length `d`: the integrand
/// `Π_a u_{i_a j_a} ū_{k_a l_a}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MomentQuery {
    pub i: IndexTuple,
    pub j: IndexTuple,
    pub k: IndexTuple,
    pub l: IndexTuple,
}

impl MomentQuery {
    pub fn new(i: IndexTuple, j: IndexTuple, k: IndexTuple, l: IndexTuple) -> Result<Self> {
        let d = i.len();
        for t in [&j, &k, &l] {
            if t.len() != d {
                return Err(Error::LengthMismatch {
                    left: d,
                    right: t.len(),
                });
            }
        }
        Ok(Self { i, j, k, l })
    }

    pub fn from_slices(i: &[usize], j: &[usize], k: &[usize], l: &[usize]) -> Result<Self> {
        Self::new(
            IndexTuple::new(i.to_vec())?,
            IndexTuple::new(j.to_vec())?,
            IndexTuple::new(k.to_vec())?,
            IndexTuple::new(l.to_vec())?,
        )
    }

    pub fn degree(&self) -> usize {
        self.i.len()
    }

    /// Largest index anywhere in the query: the smallest admissible `n`.
    pub fn max_index(&self) -> usize {
        [&self.i, &self.j, &self.k, &self.l]
            .iter()
            .map(|t| t.max_value())
            .max()
            .unwrap_or(0)
    }

    pub fn check_dimension(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        for t in [&self.i, &self.j, &self.k, &self.l] {
            t.check_bound(n)?;
        }
        Ok(())
    }
}

/// One piece of a [`PiecewiseMoment`]: valid from `min_n` up to the next
/// branch's `min_n` (exclusive), or for all larger `n` if it is the last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentBranch {
    pub min_n: usize,
    pub value: RationalFunction,
}

/// A moment as a function of `n`. Below `n = d` the length gate changes
/// with `n`, so each such `n` gets its own branch; the last branch is the
/// law valid uniformly for every `n ≥ max(d, max index)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseMoment {
    pub branches: Vec<MomentBranch>,
}

impl PiecewiseMoment {
    pub fn branch_for(&self, n: usize) -> Option<&MomentBranch> {
        self.branches.iter().rev().find(|b| b.min_n <= n)
    }

    pub fn stable_branch(&self) -> &MomentBranch {
        self.branches.last().expect("at least one branch")
    }

    pub fn eval(&self, n: usize) -> Result<Rational> {
        let branch = self.branch_for(n).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "n = {n} is below the smallest admissible dimension {}",
                self.branches[0].min_n
            ))
        })?;
        branch
            .value
            .eval_int(n as u64)
            .ok_or_else(|| Error::InvalidArgument(format!("denominator vanishes at n = {n}")))
    }
}

#[derive(Serialize, Deserialize)]
struct BranchRepr {
    min_n: usize,
    #[serde(with = "crate::rational::serde_str_vec")]
    num: Vec<Rational>,
    #[serde(with = "crate::rational::serde_str_vec")]
    den: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct PiecewiseRepr {
    branches: Vec<BranchRepr>,
}

impl Serialize for PiecewiseMoment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PiecewiseRepr {
            branches: self
                .branches
                .iter()
                .map(|b| BranchRepr {
                    min_n: b.min_n,
                    num: b.value.numerator().coeffs().to_vec(),
                    den: b.value.denominator().coeffs().to_vec(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PiecewiseMoment {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PiecewiseRepr::deserialize(d)?;
        let branches = repr
            .branches
            .into_iter()
            .map(|b| {
                RationalFunction::new(Polynomial::from_coeffs(b.num), Polynomial::from_coeffs(b.den))
                    .map(|value| MomentBranch { min_n: b.min_n, value })
            })
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        if branches.is_empty() {
            return Err(serde::de::Error::custom("no branches"));
        }
        Ok(Self { branches })
    }
}

/// Unit basis of one degree plus the cached norm polynomials `‖Ẽ_{T,S}‖²(n)`.
struct MomentTables {
    basis: Arc<UnitBasis>,
    norms: Vec<OnceLock<Vec<Polynomial>>>,
}

static TABLES: LazyLock<RwLock<HashMap<usize, Arc<MomentTables>>>> = LazyLock::new(Default::default);

fn tables(degree: usize) -> Result<Arc<MomentTables>> {
    if let Some(t) = TABLES.read().unwrap().get(&degree) {
        return Ok(Arc::clone(t));
    }
    let basis = unit_basis(degree)?;
    let norms = basis.shapes().iter().map(|_| OnceLock::new()).collect();
    let t = Arc::new(MomentTables { basis, norms });
    Ok(Arc::clone(TABLES.write().unwrap().entry(degree).or_insert(t)))
}

impl MomentTables {
    /// Norms of one shape's units, row-major like [`UnitBasis::block`].
    ///
    /// `Ẽ_{T,S}* Ẽ_{T,S} = κ E_S` with `κ = τ(Ẽ*Ẽ)/τ(E_S)`, so
    /// `‖Ẽ_{T,S}‖² = Tr p(Ẽ*Ẽ) = κ · Tr p(E_S)`; this avoids the `|Ẽ|²`-term
    /// double sum of the general Gram pairing.
    fn norms(&self, shape_index: usize) -> Result<&[Polynomial]> {
        if let Some(v) = self.norms[shape_index].get() {
            return Ok(v);
        }
        let block = self.basis.block(shape_index)?;
        let mut out = Vec::with_capacity(block.len());
        for unit in block {
            let e_s = minimal_projection(&unit.col)?;
            let kappa = unit.trace_norm() / e_s.regular_trace();
            out.push(trace_polynomial(&e_s).scale(&kappa));
        }
        Ok(self.norms[shape_index].get_or_init(|| out))
    }

    /// Per shape: `Σ_{T,S} ⟨e_{J,L}, Ẽ⟩⟨Ẽ, e_{I,K}⟩ / ‖Ẽ‖²` as a rational
    /// function of `n`, for every shape of length at most `max_length`.
    fn shape_terms(&self, q: &MomentQuery, max_length: usize) -> Result<Vec<(usize, RationalFunction)>> {
        let mut out = Vec::new();
        for (idx, shape) in self.basis.shapes().iter().enumerate() {
            if shape.length() > max_length {
                continue;
            }
            let block = self.basis.block(idx)?;
            let norms = self.norms(idx)?;
            let mut sum = RationalFunction::zero();
            for (unit, norm) in block.iter().zip(norms) {
                let (a, b) = unit_pairings(&unit.element, q);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                sum = sum.add(&RationalFunction::new(Polynomial::constant(a * b), norm.clone())?);
            }
            out.push((shape.length(), sum));
        }
        Ok(out)
    }
}

/// `(⟨e_{J,L}, Ẽ⟩, ⟨Ẽ, e_{I,K}⟩)` in one pass over the support.
fn unit_pairings(element: &crate::group_algebra::AlgebraElement, q: &MomentQuery) -> (Rational, Rational) {
    let mut a = Rational::zero();
    let mut b = Rational::zero();
    for (sigma, c) in element.terms() {
        if maps_to(sigma, &q.l, &q.j) {
            a += c;
        }
        if maps_to(sigma, &q.k, &q.i) {
            b += c;
        }
    }
    (a, b)
}

/// `min(max(J ∪ L), max(I ∪ K))`: the integrand lives in an upper-left
/// rectangle of that size, so only diagrams of at most that many rows
/// contribute.
pub fn corner_effective_length(q: &MomentQuery) -> usize {
    let jl = q.j.max_value().max(q.l.max_value());
    let ik = q.i.max_value().max(q.k.max_value());
    jl.min(ik)
}

/// True iff `J` and `L` hold the same multiset of values.
pub fn same_type(j: &IndexTuple, l: &IndexTuple) -> Result<bool> {
    if j.len() != l.len() {
        return Err(Error::LengthMismatch {
            left: j.len(),
            right: l.len(),
        });
    }
    let mut a = j.values().to_vec();
    let mut b = l.values().to_vec();
    a.sort_unstable();
    b.sort_unstable();
    Ok(a == b)
}

/// The exact moment at a concrete dimension `n`.
pub fn moment(q: &MomentQuery, n: usize) -> Result<Rational> {
    moment_up_to_length(q, n, corner_effective_length(q))
}

/// The same sum restricted to diagrams with `l(λ) ≤ min(n, max_length)`.
/// With `max_length ≥ corner_effective_length(q)` the value equals [`moment`].
pub fn moment_up_to_length(q: &MomentQuery, n: usize, max_length: usize) -> Result<Rational> {
    q.check_dimension(n)?;
    let d = q.degree();
    check_degree(d)?;
    let gate = max_length.min(n).min(d);
    let t = tables(d)?;
    let n_rat = Rational::from_integer(BigInt::from(n));
    let mut total = Rational::zero();
    for (idx, shape) in t.basis.shapes().iter().enumerate() {
        if shape.length() > gate {
            continue;
        }
        let block = t.basis.block(idx)?;
        let norms = t.norms(idx)?;
        for (unit, norm) in block.iter().zip(norms) {
            let (a, b) = unit_pairings(&unit.element, q);
            if a.is_zero() || b.is_zero() {
                continue;
            }
            let denom = norm.eval(&n_rat);
            debug_assert!(!denom.is_zero(), "gate admits only units alive at n");
            total += a * b / denom;
        }
    }
    Ok(total)
}

/// The moment as a piecewise rational function of `n`.
pub fn moment_symbolic(q: &MomentQuery) -> Result<PiecewiseMoment> {
    let d = q.degree();
    check_degree(d)?;
    let corner = corner_effective_length(q);
    let t = tables(d)?;
    let terms = t.shape_terms(q, corner.min(d))?;
    let m = q.max_index().max(1);
    let thresholds: Vec<usize> = if m >= d { vec![m] } else { (m..=d).collect() };
    let branches = thresholds
        .into_iter()
        .map(|p| {
            let gate = p.min(d).min(corner);
            let value = terms
                .iter()
                .filter(|(len, _)| *len <= gate)
                .fold(RationalFunction::zero(), |acc, (_, f)| acc.add(f));
            MomentBranch { min_n: p, value }
        })
        .collect();
    Ok(PiecewiseMoment { branches })
}

/// The one-row law `∫ u_{1j₁}⋯u_{1j_d} ū_{1l₁}⋯ū_{1l_d} dμ = Π rᵢ! / (n(n+1)⋯(n+d−1))`
/// when `J` and `L` are of the same type (`rᵢ` the value multiplicities), else `0`.
pub fn one_row_moment(j: &IndexTuple, l: &IndexTuple, n: usize) -> Result<Rational> {
    if !same_type(j, l)? {
        for t in [j, l] {
            t.check_bound(n)?;
        }
        return Ok(Rational::zero());
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    j.check_bound(n)?;
    let d = j.len();
    check_degree(d)?;
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &v in j.values() {
        *counts.entry(v).or_default() += 1;
    }
    let numer = counts.values().fold(BigInt::from(1), |acc, &r| acc * factorial(r));
    Ok(Rational::new(numer, rising_factorial(n as u64, d)))
}

/// `⟨e_{J,L}, Ẽ⟩` for every unit of the given degree, keyed by shape index.
/// Exposed for diagnostics and the CLI.
pub fn unit_contributions(q: &MomentQuery) -> Result<Vec<(usize, Rational, Rational)>> {
    let d = q.degree();
    let t = tables(d)?;
    let mut out = Vec::new();
    for idx in 0..t.basis.shapes().len() {
        for unit in t.basis.block(idx)? {
            let a = pair_with_elementary(&unit.element, &q.j, &q.l)?;
            let b = pair_with_elementary(&unit.element, &q.i, &q.k)?;
            out.push((idx, a, b));
        }
    }
    Ok(out)
}
