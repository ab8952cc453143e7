//! Classical Weingarten calculus as an independent oracle.
//!
//! Rows and columns of both matrices are indexed by `S_d` in the order of
//! [`Permutation::all`] (lexicographic one-line notation).
//! `G(σ,τ) = n^{#cycles(σ⁻¹τ)}` and `W = G⁻¹`, so that
//!
//! ```text
//! ∫ u_{i₁j₁}⋯u_{i_d j_d} ū_{k₁l₁}⋯ū_{k_d l_d} dμ
//!     = Σ_{σ,τ} [∀a: i_a = k_{σ(a)}] [∀a: j_a = l_{τ(a)}] W(σ,τ).
//! ```
//!
//! Matrices are dense and exact, so the oracle has its own degree cap
//! ([`crate::limits::oracle_cap`]).

use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::haar::MomentQuery;
use crate::limits::check_oracle_degree;
use crate::permutation::Permutation;
use crate::rational::Rational;

/// The Gram matrix `G_{n,d}` with integer entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramMatrix {
    degree: usize,
    n: usize,
    order: Vec<Permutation>,
    entries: Vec<BigInt>,
}

impl GramMatrix {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `d!`.
    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[Permutation] {
        &self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.entries[row * self.dim() + col]
    }

    pub fn to_rational(&self) -> RationalMatrix {
        RationalMatrix {
            order: self.order.clone(),
            entries: self.entries.iter().cloned().map(Rational::from_integer).collect(),
        }
    }
}

/// A square exact matrix indexed by permutations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    order: Vec<Permutation>,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[Permutation] {
        &self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &Rational {
        &self.entries[row * self.dim() + col]
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        (0..n).all(|r| (0..n).all(|c| *self.get(r, c) == if r == c { Rational::one() } else { Rational::zero() }))
    }

    /// Exact product; both factors must share the same ordering.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::DegreeMismatch {
                left: self.dim(),
                right: other.dim(),
            });
        }
        let n = self.dim();
        let mut entries = vec![Rational::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    entries[r * n + c] += a * other.get(k, c);
                }
            }
        }
        Ok(Self {
            order: self.order.clone(),
            entries,
        })
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.dim();
        let rows: Vec<Vec<String>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        let mut st = s.serialize_struct("RationalMatrix", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("entries", &rows)?;
        st.end()
    }
}

impl Serialize for GramMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rational().serialize(s)
    }
}

/// `G(σ,τ) = n^{#cycles(σ⁻¹τ)}`.
pub fn gram_matrix(degree: usize, n: usize) -> Result<GramMatrix> {
    if degree == 0 || n == 0 {
        return Err(Error::InvalidArgument("degree and n must be positive".into()));
    }
    check_oracle_degree(degree)?;
    let order = Permutation::all(degree);
    let powers: Vec<BigInt> = (0..=degree).map(|c| BigInt::from(n).pow(c as u32)).collect();
    let mut entries = Vec::with_capacity(order.len() * order.len());
    for sigma in &order {
        let inv = sigma.inverse();
        for tau in &order {
            entries.push(powers[inv.compose_unchecked(tau).cycle_count()].clone());
        }
    }
    Ok(GramMatrix {
        degree,
        n,
        order,
        entries,
    })
}

/// `W = G⁻¹`, stored as an integer matrix over the common denominator `det G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeingartenMatrix {
    degree: usize,
    n: usize,
    order: Vec<Permutation>,
    scaled: Vec<BigInt>,
    denominator: BigInt,
}

impl WeingartenMatrix {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn order(&self) -> &[Permutation] {
        &self.order
    }

    /// `det G` (positive).
    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        Rational::new(self.scaled[row * self.dim() + col].clone(), self.denominator.clone())
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let n = self.dim();
        RationalMatrix {
            order: self.order.clone(),
            entries: (0..n * n).map(|k| self.get(k / n, k % n)).collect(),
        }
    }

    /// `G · (det G · W) = det G · I`, checked in integers.
    pub fn inverts(&self, gram: &GramMatrix) -> bool {
        let n = self.dim();
        if gram.order != self.order {
            return false;
        }
        for r in 0..n {
            for c in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    acc += gram.get(r, k) * &self.scaled[k * n + c];
                }
                let expected = if r == c { self.denominator.clone() } else { BigInt::zero() };
                if acc != expected {
                    return false;
                }
            }
        }
        true
    }
}

impl Serialize for WeingartenMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rational().serialize(s)
    }
}

/// Fraction-free Gauss–Jordan on `[G | I]`. After step `k` every entry is
/// an integer minor of the augmented matrix, so each division by the
/// previous pivot is exact; at the end the left block is `det·I` and the
/// right block is `det·G⁻¹`.
fn invert_integer(dim: usize, matrix: &[BigInt]) -> Option<(Vec<BigInt>, BigInt)> {
    let width = 2 * dim;
    let mut a: Vec<Vec<BigInt>> = (0..dim)
        .map(|r| {
            let mut row = Vec::with_capacity(width);
            row.extend_from_slice(&matrix[r * dim..(r + 1) * dim]);
            row.extend((0..dim).map(|c| if c == r { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut prev = BigInt::one();
    for k in 0..dim {
        let pivot_row = (k..dim).find(|&r| !a[r][k].is_zero())?;
        if pivot_row != k {
            a.swap(pivot_row, k);
        }
        let pivot_line = a[k].clone();
        let p = &pivot_line[k];
        for (i, row) in a.iter_mut().enumerate() {
            if i == k {
                continue;
            }
            let factor = row[k].clone();
            for j in 0..width {
                let v = p * &row[j] - &factor * &pivot_line[j];
                debug_assert!(v.is_multiple_of(&prev));
                row[j] = v / &prev;
            }
        }
        prev = p.clone();
    }
    // Swaps turn [G | I] into [PG | P]; the right block ends as det(PG)·G⁻¹.
    let mut det = prev;
    let mut scaled = Vec::with_capacity(dim * dim);
    for row in &a {
        scaled.extend_from_slice(&row[dim..]);
    }
    if det.is_negative() {
        det = -det;
        for v in &mut scaled {
            *v = -&*v;
        }
    }
    Some((scaled, det))
}

type Cache = RwLock<HashMap<(usize, usize), Arc<WeingartenMatrix>>>;

static CACHE: LazyLock<Cache> = LazyLock::new(Default::default);

/// The exact inverse of [`gram_matrix`]. Requires `n ≥ d`.
pub fn weingarten_matrix(degree: usize, n: usize) -> Result<Arc<WeingartenMatrix>> {
    if n < degree {
        return Err(Error::GramPossiblySingular { n, d: degree });
    }
    check_oracle_degree(degree)?;
    if let Some(w) = CACHE.read().unwrap().get(&(degree, n)) {
        return Ok(Arc::clone(w));
    }
    let gram = gram_matrix(degree, n)?;
    let (scaled, denominator) =
        invert_integer(gram.dim(), &gram.entries).ok_or(Error::GramPossiblySingular { n, d: degree })?;
    let w = Arc::new(WeingartenMatrix {
        degree,
        n,
        order: gram.order,
        scaled,
        denominator,
    });
    Ok(Arc::clone(CACHE.write().unwrap().entry((degree, n)).or_insert(w)))
}

/// The Weingarten function `Wg(σ) = W(e, σ)`; `W(σ,τ) = Wg(σ⁻¹τ)`.
pub fn weingarten_function(sigma: &Permutation, n: usize) -> Result<Rational> {
    let w = weingarten_matrix(sigma.degree(), n)?;
    let col = w.order.binary_search(sigma).expect("every permutation is listed");
    Ok(w.get(0, col))
}

/// Permutations `σ` with `from_a = to_{σ(a)}` for every `a`, as row indices.
fn matching(order: &[Permutation], from: &[usize], to: &[usize]) -> Vec<usize> {
    order
        .iter()
        .enumerate()
        .filter(|(_, s)| (0..from.len()).all(|a| from[a] == to[s.apply(a)]))
        .map(|(k, _)| k)
        .collect()
}

/// The moment from the Weingarten formula. Requires `n ≥ d`.
pub fn wg_moment(q: &MomentQuery, n: usize) -> Result<Rational> {
    q.check_dimension(n)?;
    let d = q.degree();
    let w = weingarten_matrix(d, n)?;
    let sigmas = matching(&w.order, q.i.values(), q.k.values());
    let taus = matching(&w.order, q.j.values(), q.l.values());
    let mut acc = BigInt::zero();
    for &s in &sigmas {
        for &t in &taus {
            acc += &w.scaled[s * w.dim() + t];
        }
    }
    Ok(Rational::new(acc, w.denominator.clone()))
}
