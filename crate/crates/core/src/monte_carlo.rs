//! Monte Carlo estimates of Haar moments, used as a numeric oracle.
//!
//! Samples are drawn in fixed-size chunks; chunk `c` uses its own ChaCha8
//! stream `c` under the master seed, and partial sums are merged in chunk
//! order. Estimates therefore depend only on `(seed, samples, n, query)`,
//! never on the thread count.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Serialize, Serializer};
use serde::ser::SerializeStruct;

use crate::error::{Error, Result};
use crate::haar::MomentQuery;

/// Samples per RNG stream.
pub const CHUNK_SIZE: usize = 4096;

/// A complex `n × n` matrix.
pub type ComplexMatrix = DMatrix<Complex64>;

/// A Haar-distributed unitary: the Q factor of a complex Ginibre matrix,
/// with each column rotated by the phase of the matching diagonal entry of
/// R so that R has a positive real diagonal. Without that correction the
/// distribution depends on the QR convention and is not Haar.
pub fn haar_sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let scale = std::f64::consts::FRAC_1_SQRT_2;
    let ginibre = ComplexMatrix::from_fn(n, n, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    });
    let qr = ginibre.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let norm = d.norm();
        // A zero diagonal has probability zero; leave that column as is.
        if norm > 0.0 {
            let phase = d / norm;
            q.column_mut(j).iter_mut().for_each(|x| *x *= phase);
        }
    }
    q
}

/// `max |(U U* − I)_{ab}|`.
pub fn unitarity_residual(u: &ComplexMatrix) -> f64 {
    let n = u.nrows();
    let prod = u * u.adjoint();
    let mut worst = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            let target = if a == b { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
            worst = worst.max((prod[(a, b)] - target).norm());
        }
    }
    worst
}

/// `Π_a u_{i_a j_a} ū_{k_a l_a}` at one sample.
pub fn monomial(u: &ComplexMatrix, q: &MomentQuery) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for a in 0..q.degree() {
        acc *= u[(q.i.values()[a] - 1, q.j.values()[a] - 1)];
        acc *= u[(q.k.values()[a] - 1, q.l.values()[a] - 1)].conj();
    }
    acc
}

/// Sample mean of the monomial and the standard error of that mean.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentEstimate {
    pub mean: Complex64,
    pub std_error: f64,
    pub samples: usize,
    pub seed: u64,
}

impl MomentEstimate {
    /// `|mean − exact|` in units of the standard error. Infinite when the
    /// standard error vanishes and the values differ.
    pub fn deviation(&self, exact: f64) -> f64 {
        let gap = (self.mean - Complex64::new(exact, 0.0)).norm();
        if gap == 0.0 {
            0.0
        } else if self.std_error == 0.0 {
            f64::INFINITY
        } else {
            gap / self.std_error
        }
    }

    /// `|mean − exact| ≤ k · std_error`, with an absolute floor for
    /// deterministic monomials whose error is pure rounding.
    pub fn agrees_with(&self, exact: f64, k: f64) -> bool {
        let gap = (self.mean - Complex64::new(exact, 0.0)).norm();
        gap <= k * self.std_error + 1e-12
    }
}

impl Serialize for MomentEstimate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("MomentEstimate", 5)?;
        st.serialize_field("mean_re", &self.mean.re)?;
        st.serialize_field("mean_im", &self.mean.im)?;
        st.serialize_field("stderr", &self.std_error)?;
        st.serialize_field("samples", &self.samples)?;
        st.serialize_field("seed", &self.seed)?;
        st.end()
    }
}

#[derive(Clone, Copy, Default)]
struct Partial {
    sum: Complex64,
    sum_sq: f64,
}

fn chunk_rng(seed: u64, chunk: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chunk as u64);
    rng
}

/// Estimates for several queries from one shared set of samples.
pub fn mc_moments(queries: &[MomentQuery], n: usize, samples: usize, seed: u64) -> Result<Vec<MomentEstimate>> {
    if samples == 0 {
        return Err(Error::InvalidArgument("samples must be at least 1".into()));
    }
    for q in queries {
        q.check_dimension(n)?;
    }
    let chunks = samples.div_ceil(CHUNK_SIZE);
    let partials: Vec<Vec<Partial>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = chunk_rng(seed, c);
            let count = CHUNK_SIZE.min(samples - c * CHUNK_SIZE);
            let mut acc = vec![Partial::default(); queries.len()];
            for _ in 0..count {
                let u = haar_sample(n, &mut rng);
                for (p, q) in acc.iter_mut().zip(queries) {
                    let x = monomial(&u, q);
                    p.sum += x;
                    p.sum_sq += x.norm_sqr();
                }
            }
            acc
        })
        .collect();
    let total = samples as f64;
    Ok((0..queries.len())
        .map(|k| {
            let (sum, sum_sq) = partials
                .iter()
                .fold((Complex64::new(0.0, 0.0), 0.0), |(s, s2), p| (s + p[k].sum, s2 + p[k].sum_sq));
            let mean = sum / total;
            let variance = if samples > 1 {
                ((sum_sq - total * mean.norm_sqr()) / (total - 1.0)).max(0.0)
            } else {
                0.0
            };
            MomentEstimate {
                mean,
                std_error: (variance / total).sqrt(),
                samples,
                seed,
            }
        })
        .collect())
}

/// Estimate of one moment.
pub fn mc_moment(q: &MomentQuery, n: usize, samples: usize, seed: u64) -> Result<MomentEstimate> {
    Ok(mc_moments(std::slice::from_ref(q), n, samples, seed)?.remove(0))
}
