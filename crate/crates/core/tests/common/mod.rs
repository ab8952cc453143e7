//! Dense reference implementations on `(ℂⁿ)^{⊗d}`, used only as oracles.
#![allow(dead_code)]

use haar_units::group_algebra::AlgebraElement;
use haar_units::permutation::Permutation;
use haar_units::rational::Rational;
use haar_units::schur_weyl::{act_on_index, IndexTuple};
use num_traits::Zero;

/// Square rational matrix on `(ℂⁿ)^{⊗d}`, rows and columns indexed by
/// index tuples in lexicographic order.
#[derive(Clone, Debug, PartialEq)]
pub struct Dense {
    pub dim: usize,
    pub data: Vec<Rational>,
}

impl Dense {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.dim + c] = v;
    }

    /// `⟨A, B⟩ = Tr(Aᵀ B)` (all entries are real).
    pub fn hs(&self, other: &Self) -> Rational {
        self.data
            .iter()
            .zip(&other.data)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn axpy(&mut self, a: &Rational, x: &Self) {
        for (y, v) in self.data.iter_mut().zip(&x.data) {
            if !v.is_zero() {
                *y += a * v;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

/// Position of `I` in the lexicographic listing of `{1..n}^d`.
pub fn rank(index: &IndexTuple, n: usize) -> usize {
    index.values().iter().fold(0, |acc, &v| acc * n + (v - 1))
}

/// `e_{J,L}`.
pub fn elementary(j: &IndexTuple, l: &IndexTuple, n: usize) -> Dense {
    let dim = n.pow(j.len() as u32);
    let mut m = Dense::zeros(dim);
    m.set(rank(j, n), rank(l, n), Rational::from_integer(1.into()));
    m
}

/// `p(σ) = Σ_I e_{σ·I, I}`.
pub fn perm_matrix(sigma: &Permutation, n: usize) -> Dense {
    let d = sigma.degree();
    let all = IndexTuple::all(d, n);
    let mut m = Dense::zeros(all.len());
    for i in &all {
        let image = act_on_index(sigma, i).unwrap();
        m.set(rank(&image, n), rank(i, n), Rational::from_integer(1.into()));
    }
    m
}

/// `p(x) = Σ x_σ p(σ)`.
pub fn represent(x: &AlgebraElement, n: usize) -> Dense {
    let mut m = Dense::zeros(n.pow(x.degree() as u32));
    for (sigma, c) in x.terms() {
        m.axpy(c, &perm_matrix(sigma, n));
    }
    m
}

/// An orthogonal basis of `span{p(σ)}` by exact Gram–Schmidt; dependent
/// vectors (for `n < d`) are dropped.
pub struct Commutant {
    basis: Vec<(Dense, Rational)>,
}

impl Commutant {
    pub fn new(d: usize, n: usize) -> Self {
        let mut basis: Vec<(Dense, Rational)> = Vec::new();
        for sigma in Permutation::all(d) {
            let mut v = perm_matrix(&sigma, n);
            for (b, norm) in &basis {
                let coeff = b.hs(&v) / norm;
                v.axpy(&-coeff, b);
            }
            let norm = v.hs(&v);
            if !norm.is_zero() {
                basis.push((v, norm));
            }
        }
        Self { basis }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// The Hilbert–Schmidt orthogonal projection of `a` onto the commutant.
    pub fn project(&self, a: &Dense) -> Dense {
        let mut out = Dense::zeros(a.dim);
        for (b, norm) in &self.basis {
            out.axpy(&(b.hs(a) / norm), b);
        }
        out
    }

    /// The moment `∫ Π u_{i_a j_a} ū_{k_a l_a}` as the `(I, K)` entry of the
    /// projection of `e_{J,L}`.
    pub fn projected_elementary(&self, j: &IndexTuple, l: &IndexTuple, n: usize) -> Dense {
        self.project(&elementary(j, l, n))
    }
}
