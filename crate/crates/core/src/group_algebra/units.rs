use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, OnceLock, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::limits::check_degree;
use crate::rational::Rational;
use crate::tableaux::{admissible_path, partitions, sigma_permutation, standard_tableaux, CoxeterAction, StandardTableau, YoungDiagram};

use super::{minimal_projection, AlgebraElement};

/// An unnormalized matrix unit `Ẽ_{T,S} = E_T · π · E_S` with `π·S = T`,
/// together with the square of the constant `c` for which `c · Ẽ_{T,S}` is
/// the true matrix unit.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixUnitRecord {
    pub shape: YoungDiagram,
    pub row: StandardTableau,
    pub col: StandardTableau,
    pub element: Arc<AlgebraElement>,
    #[serde(with = "crate::rational::serde_str")]
    pub c_squared: Rational,
}

impl MatrixUnitRecord {
    pub fn key(&self) -> UnitKey {
        UnitKey {
            shape: self.shape.clone(),
            row: self.row.clone(),
            col: self.col.clone(),
        }
    }

    /// `τ(Ẽ* Ẽ)`.
    pub fn trace_norm(&self) -> Rational {
        self.element.trace_pairing(&self.element).expect("same degree")
    }
}

/// Identifies a matrix unit by shape, row tableau and column tableau.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct UnitKey {
    pub shape: YoungDiagram,
    pub row: StandardTableau,
    pub col: StandardTableau,
}

pub fn matrix_unit_unnormalized(t: &StandardTableau, s: &StandardTableau) -> Result<MatrixUnitRecord> {
    let c_squared = normalization_c_squared(t, s)?;
    let e_t = minimal_projection(t)?;
    let element = if t == s {
        e_t
    } else {
        let pi = sigma_permutation(s, t)?;
        let e_s = minimal_projection(s)?;
        Arc::new(e_t.right_mul_perm(&pi)?.multiply(&e_s)?)
    };
    Ok(MatrixUnitRecord {
        shape: t.shape().clone(),
        row: t.clone(),
        col: s.clone(),
        element,
        c_squared,
    })
}

/// `Π_m r_m² / (r_m² − 1)` along the given admissible path starting at
/// `start`, where `r_m` is the axial distance at the `m`-th step.
pub fn c_squared_along(start: &StandardTableau, path: &[usize]) -> Result<Rational> {
    let mut current = start.clone();
    let mut acc = Rational::one();
    for &i in path {
        let r = current.axial_distance(i)?;
        let next = match current.apply_coxeter(i)? {
            CoxeterAction::Standard(next) => next,
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "s_{i} is not admissible for {current}"
                )))
            }
        };
        let r2 = Rational::from_integer((r * r).into());
        acc *= &r2 / (&r2 - Rational::one());
        current = next;
    }
    Ok(acc)
}

/// `c²` computed along the canonical shortest admissible path from `t` to `s`.
pub fn normalization_c_squared(t: &StandardTableau, s: &StandardTableau) -> Result<Rational> {
    let path = admissible_path(t, s)?;
    c_squared_along(t, &path)
}

/// All unnormalized matrix units of `ℂ[S_d]`, grouped by shape. Shapes are
/// built lazily, so restricting to short diagrams never pays for long ones.
pub struct UnitBasis {
    degree: usize,
    shapes: Vec<YoungDiagram>,
    tableaux: Vec<Vec<StandardTableau>>,
    blocks: Vec<OnceLock<Vec<MatrixUnitRecord>>>,
}

static BASES: LazyLock<RwLock<HashMap<usize, Arc<UnitBasis>>>> = LazyLock::new(Default::default);

/// The shared basis for degree `d`.
pub fn unit_basis(degree: usize) -> Result<Arc<UnitBasis>> {
    if let Some(b) = BASES.read().unwrap().get(&degree) {
        return Ok(Arc::clone(b));
    }
    let basis = Arc::new(UnitBasis::new(degree)?);
    Ok(Arc::clone(BASES.write().unwrap().entry(degree).or_insert(basis)))
}

impl UnitBasis {
    pub fn new(degree: usize) -> Result<Self> {
        check_degree(degree)?;
        let shapes = partitions(degree)?;
        let tableaux = shapes.iter().map(standard_tableaux).collect::<Result<Vec<_>>>()?;
        let blocks = shapes.iter().map(|_| OnceLock::new()).collect();
        Ok(Self {
            degree,
            shapes,
            tableaux,
            blocks,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Shapes in decreasing lexicographic order.
    pub fn shapes(&self) -> &[YoungDiagram] {
        &self.shapes
    }

    pub fn tableaux(&self, shape_index: usize) -> &[StandardTableau] {
        &self.tableaux[shape_index]
    }

    /// The `f_λ × f_λ` units of one shape, row-major over [`Self::tableaux`].
    pub fn block(&self, shape_index: usize) -> Result<&[MatrixUnitRecord]> {
        if let Some(b) = self.blocks[shape_index].get() {
            return Ok(b);
        }
        let ts = &self.tableaux[shape_index];
        let mut units = Vec::with_capacity(ts.len() * ts.len());
        for t in ts {
            for s in ts {
                units.push(matrix_unit_unnormalized(t, s)?);
            }
        }
        Ok(self.blocks[shape_index].get_or_init(|| units))
    }

    pub fn unit(&self, shape_index: usize, row: usize, col: usize) -> Result<&MatrixUnitRecord> {
        let f = self.tableaux[shape_index].len();
        Ok(&self.block(shape_index)?[row * f + col])
    }

    /// Every unit of every shape.
    pub fn all_units(&self) -> Result<Vec<&MatrixUnitRecord>> {
        let mut out = Vec::new();
        for k in 0..self.shapes.len() {
            out.extend(self.block(k)?.iter());
        }
        Ok(out)
    }

    /// `Σ α · Ẽ` for a coefficient map produced by [`decompose`].
    pub fn recompose(&self, coefficients: &BTreeMap<UnitKey, Rational>) -> Result<AlgebraElement> {
        let mut out = AlgebraElement::zero(self.degree);
        for unit in self.all_units()? {
            if let Some(alpha) = coefficients.get(&unit.key()) {
                out = out.add(&unit.element.scale(alpha))?;
            }
        }
        Ok(out)
    }
}

/// Coefficients `α` with `x = Σ α_{T,S} Ẽ_{T,S}`, from the trace Gram
/// normalization `α = τ(Ẽ* x) / τ(Ẽ* Ẽ)`. Zero coefficients are omitted.
pub fn decompose(x: &AlgebraElement) -> Result<BTreeMap<UnitKey, Rational>> {
    let basis = unit_basis(x.degree())?;
    let mut out = BTreeMap::new();
    for unit in basis.all_units()? {
        let num = unit.element.trace_pairing(x)?;
        if num.is_zero() {
            continue;
        }
        out.insert(unit.key(), num / unit.trace_norm());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::Permutation;
    use crate::rational::{factorial, int, rat};

    fn tableau(rows: &[&[usize]]) -> StandardTableau {
        StandardTableau::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn diagonal_unit_is_the_projection() {
        let t = tableau(&[&[1, 2], &[3]]);
        let u = matrix_unit_unnormalized(&t, &t).unwrap();
        assert_eq!(*u.element, *minimal_projection(&t).unwrap());
        assert_eq!(u.c_squared, int(1));
    }

    #[test]
    fn off_diagonal_unit_of_shape_21() {
        let t = tableau(&[&[1, 2], &[3]]);
        let s = tableau(&[&[1, 3], &[2]]);
        let u = matrix_unit_unnormalized(&t, &s).unwrap();
        assert!(!u.element.is_zero());
        assert_eq!(u.c_squared, rat(4, 3));
        // f_λ / (d! c²) = (2/6) / (4/3) = 1/4
        assert_eq!(u.trace_norm(), rat(1, 4));
        assert!((&*u.element * &*u.element).is_zero());
        let v = matrix_unit_unnormalized(&s, &t).unwrap();
        assert_eq!(u.element.adjoint(), *v.element);
    }

    #[test]
    fn c_squared_for_a_distance_two_pair() {
        let shape = YoungDiagram::new(vec![3, 1]).unwrap();
        let ts = standard_tableaux(&shape).unwrap();
        let f = Rational::from_integer(ts.len().into());
        let d_fact = Rational::from_integer(factorial(4));
        let mut seen = false;
        for t in &ts {
            for s in &ts {
                if admissible_path(t, s).unwrap().len() == 2 {
                    let u = matrix_unit_unnormalized(t, s).unwrap();
                    assert_eq!(&f / (&d_fact * u.trace_norm()), u.c_squared);
                    seen = true;
                }
            }
        }
        assert!(seen);
    }

    #[test]
    fn c_squared_rejects_inadmissible_steps() {
        assert!(c_squared_along(&tableau(&[&[1, 2]]), &[1]).is_err());
    }

    #[test]
    fn decompositions() {
        let id = decompose(&AlgebraElement::identity(3)).unwrap();
        assert_eq!(id.len(), 4);
        assert!(id.iter().all(|(k, a)| k.row == k.col && *a == int(1)));

        let t = tableau(&[&[1, 2], &[3]]);
        let d = decompose(&minimal_projection(&t).unwrap()).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d.values().next().unwrap(), &int(1));

        let swap = AlgebraElement::from_permutation(Permutation::transposition(2, 1, 2).unwrap());
        let d = decompose(&swap).unwrap();
        let by_shape: Vec<(Vec<usize>, Rational)> =
            d.iter().map(|(k, a)| (k.shape.rows().to_vec(), a.clone())).collect();
        assert_eq!(by_shape, vec![(vec![1, 1], int(-1)), (vec![2], int(1))]);
    }

    #[test]
    fn recompose_is_exact() {
        let x = AlgebraElement::from_terms(
            3,
            [
                (Permutation::from_one_line(&[2, 3, 1]).unwrap(), int(3)),
                (Permutation::from_one_line(&[1, 3, 2]).unwrap(), rat(-1, 2)),
            ],
        )
        .unwrap();
        let coeffs = decompose(&x).unwrap();
        assert_eq!(unit_basis(3).unwrap().recompose(&coeffs).unwrap(), x);
    }
}
