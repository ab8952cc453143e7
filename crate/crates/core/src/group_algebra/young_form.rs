//! Young's orthogonal form in floating point, used only to cross-check the
//! exact constructions numerically.

use std::ops::Mul;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::tableaux::{standard_tableaux, CoxeterAction, YoungDiagram};

use super::AlgebraElement;

/// Dense row-major real matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct RealMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl RealMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: f64) {
        self.data[row * self.dim + col] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn axpy(&mut self, a: f64, other: &Self) {
        for (x, y) in self.data.iter_mut().zip(&other.data) {
            *x += a * y;
        }
    }

    /// Largest absolute entry of `self − other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Mul for &RealMatrix {
    type Output = RealMatrix;
    fn mul(self, rhs: &RealMatrix) -> RealMatrix {
        assert_eq!(self.dim, rhs.dim);
        let n = self.dim;
        let mut out = RealMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

/// The matrix of `s_i` on `V_λ` in the Young basis, ordered as
/// [`standard_tableaux`]. Column `T` holds the coordinates of `s_i w_T`.
pub fn young_orthogonal_matrix(shape: &YoungDiagram, i: usize) -> Result<RealMatrix> {
    let tableaux = standard_tableaux(shape)?;
    if i == 0 || i >= shape.size() {
        return Err(Error::IndexOutOfRange {
            index: i,
            max: shape.size().saturating_sub(1),
        });
    }
    let mut m = RealMatrix::zeros(tableaux.len());
    for (col, t) in tableaux.iter().enumerate() {
        match t.apply_coxeter(i)? {
            CoxeterAction::SameRow => m.set(col, col, 1.0),
            CoxeterAction::SameColumn => m.set(col, col, -1.0),
            CoxeterAction::Standard(s) => {
                let r = t.axial_distance(i)? as f64;
                let row = tableaux.iter().position(|x| *x == s).expect("same shape");
                m.set(col, col, 1.0 / r);
                m.set(row, col, (1.0 - 1.0 / (r * r)).sqrt());
            }
        }
    }
    Ok(m)
}

/// The image of `x` in `End(V_λ)` under Young's orthogonal form.
pub fn young_representation(shape: &YoungDiagram, x: &AlgebraElement) -> Result<RealMatrix> {
    let d = shape.size();
    if x.degree() != d {
        return Err(Error::DegreeMismatch {
            left: x.degree(),
            right: d,
        });
    }
    let dim = standard_tableaux(shape)?.len();
    let generators = (1..d)
        .map(|i| young_orthogonal_matrix(shape, i))
        .collect::<Result<Vec<_>>>()?;
    let mut out = RealMatrix::zeros(dim);
    for (sigma, c) in x.terms() {
        let rho = sigma
            .coxeter_word()
            .iter()
            .fold(RealMatrix::identity(dim), |acc, &i| &acc * &generators[i - 1]);
        out.axpy(c.to_f64().unwrap_or(f64::NAN), &rho);
    }
    Ok(out)
}
