//! Self-checks of the algebraic invariants at a given degree, reported
//! property by property. `Fast` checks scale with the number of tableaux;
//! `Full` also touches every matrix unit and cross-checks the exact moment
//! pipelines against each other.

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::group_algebra::{
    c_squared_along, dimension_ratio, expectation_constant, jucys_murphy, minimal_projection, projection_lift,
    unit_basis, AlgebraElement,
};
use crate::haar::{moment, moment_symbolic, one_row_moment, MomentQuery};
use crate::limits::{check_degree, degree_cap, oracle_cap};
use crate::rational::{factorial, int, Rational};
use crate::schur_weyl::{gram_pairing_poly, trace_polynomial, IndexTuple};
use crate::tableaux::{minimal_admissible_paths, partitions, standard_tableaux, StandardTableau};
use crate::weingarten::wg_moment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Fast,
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: &'static str,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub degree: usize,
    pub level: Level,
    pub properties: Vec<PropertyReport>,
}

impl VerifyReport {
    pub fn all_passed(&self) -> bool {
        self.properties.iter().all(|p| p.passed)
    }
}

/// Collects case outcomes; keeps the first failure for the report.
struct Check {
    name: &'static str,
    cases: usize,
    failure: Option<String>,
    note: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failure: None,
            note: None,
        }
    }

    fn case(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    fn finish(self) -> PropertyReport {
        PropertyReport {
            name: self.name,
            passed: self.failure.is_none(),
            cases: self.cases,
            detail: self.failure.or(self.note),
        }
    }
}

/// Samples above this many units are checked on a seeded subset.
const EXHAUSTIVE_UNITS: usize = 120;
const SAMPLE_SEED: u64 = 0x5eed;

/// A seeded sample of moment queries of degree `d` with entries in `1..=n`.
/// Most draws make `K` a rearrangement of `I` and `L` of `J`, so that the
/// moment is usually nonzero.
pub fn sample_queries(d: usize, n: usize, count: usize, seed: u64) -> Vec<MomentQuery> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tuple = |rng: &mut ChaCha8Rng| -> Vec<usize> { (0..d).map(|_| rng.random_range(1..=n)).collect() };
    (0..count)
        .map(|_| {
            let i = tuple(&mut rng);
            let j = tuple(&mut rng);
            let mut k = i.clone();
            let mut l = j.clone();
            if rng.random_bool(0.85) {
                k.shuffle(&mut rng);
                l.shuffle(&mut rng);
            } else {
                k = tuple(&mut rng);
                l = tuple(&mut rng);
            }
            MomentQuery::from_slices(&i, &j, &k, &l).expect("valid tuples")
        })
        .collect()
}

pub fn run(degree: usize, level: Level) -> Result<VerifyReport> {
    if degree == 0 {
        return Err(crate::error::Error::InvalidArgument("degree must be positive".into()));
    }
    check_degree(degree)?;
    let shapes = partitions(degree)?;
    let tableaux: Vec<StandardTableau> = shapes
        .iter()
        .map(standard_tableaux)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let projections = tableaux
        .iter()
        .map(|t| minimal_projection(t).map(|e| (t, e)))
        .collect::<Result<Vec<_>>>()?;
    let d_fact = Rational::from_integer(factorial(degree));

    let mut out = Vec::new();

    let mut c = Check::new("projection_idempotent_selfadjoint");
    for (t, e) in &projections {
        c.case(e.multiply(e)? == **e && e.adjoint() == **e, || format!("E_T for T = {t}"));
    }
    out.push(c.finish());

    // For self-adjoint idempotents τ(E_T E_S) = τ((E_T E_S)*(E_T E_S)), which
    // vanishes iff E_T E_S = 0; this replaces each product by a dot product.
    let mut c = Check::new("projection_mutual_orthogonality");
    for (a, (t, e)) in projections.iter().enumerate() {
        for (s, f) in &projections[a + 1..] {
            c.case(e.trace_pairing(f)?.is_zero(), || format!("T = {t}, S = {s}"));
        }
    }
    out.push(c.finish());

    let mut c = Check::new("resolution_of_identity");
    let mut sum = AlgebraElement::zero(degree);
    for (_, e) in &projections {
        sum = sum.add(e)?;
    }
    c.case(sum == AlgebraElement::identity(degree), || "Σ E_T ≠ e".into());
    out.push(c.finish());

    let mut c = Check::new("jucys_murphy_eigenvalues");
    let xs = (1..=degree).map(|i| jucys_murphy(i, degree)).collect::<Result<Vec<_>>>()?;
    for (t, e) in &projections {
        for (i, x) in xs.iter().enumerate() {
            let lhs = x.multiply(e)?;
            let rhs = e.scale(&int(t.content(i + 1)));
            c.case(lhs == rhs, || format!("X_{} on T = {t}", i + 1));
        }
    }
    out.push(c.finish());

    let mut c = Check::new("projection_trace");
    for (t, e) in &projections {
        let f = standard_tableaux(t.shape())?.len();
        c.case(e.regular_trace() == int(f as i64) / &d_fact, || format!("τ(E_T) for T = {t}"));
    }
    out.push(c.finish());

    let mut c = Check::new("kernel_of_projections");
    for (t, e) in &projections {
        let norm = trace_polynomial(e);
        for n in 1..t.shape().length() {
            c.case(norm.eval_int(n as u64).is_zero(), || format!("‖E_T‖² at n = {n}, T = {t}"));
        }
        let n = t.shape().length() as u64;
        c.case(!norm.eval_int(n).is_zero(), || format!("‖E_T‖² vanishes at n = l(λ), T = {t}"));
    }
    out.push(c.finish());

    out.push(one_row_check(degree, level)?);

    if degree < degree_cap() {
        let mut c = Check::new("branching_projection_lift");
        for (t, e) in &projections {
            c.case(e.embed(degree + 1)? == projection_lift(t)?, || format!("T = {t}"));
        }
        out.push(c.finish());
    }

    if degree <= oracle_cap() {
        out.push(oracle_check(degree, level)?);
    }

    if level == Level::Full {
        out.extend(unit_checks(degree)?);
        out.push(symbolic_check(degree)?);
        if degree >= 2 {
            out.push(expectation_check(degree)?);
        }
    }

    Ok(VerifyReport {
        degree,
        level,
        properties: out,
    })
}

fn one_row_check(degree: usize, level: Level) -> Result<PropertyReport> {
    let mut c = Check::new("one_row_law");
    let count = if level == Level::Full { 60 } else { 15 };
    for n in 1..=degree + 1 {
        for q in sample_queries(degree, n, count, SAMPLE_SEED + n as u64) {
            let ones = IndexTuple::new(vec![1; degree])?;
            let general = MomentQuery::new(ones.clone(), q.j.clone(), ones, q.l.clone())?;
            let lhs = one_row_moment(&q.j, &q.l, n)?;
            c.case(lhs == moment(&general, n)?, || format!("J = {}, L = {}, n = {n}", q.j, q.l));
        }
    }
    Ok(c.finish())
}

fn oracle_check(degree: usize, level: Level) -> Result<PropertyReport> {
    let mut c = Check::new("weingarten_equivalence");
    let (count, extra_n) = if level == Level::Full { (100, 2) } else { (20, 0) };
    for n in degree..=degree + extra_n {
        for q in sample_queries(degree, n, count, SAMPLE_SEED ^ (n as u64) << 8) {
            c.case(moment(&q, n)? == wg_moment(&q, n)?, || format!("{q:?} at n = {n}"));
        }
    }
    Ok(c.finish())
}

fn symbolic_check(degree: usize) -> Result<PropertyReport> {
    let mut c = Check::new("symbolic_agreement");
    for q in sample_queries(degree, degree.max(2), 20, SAMPLE_SEED + 99) {
        let s = moment_symbolic(&q)?;
        for n in q.max_index()..=degree + 3 {
            c.case(s.eval(n)? == moment(&q, n)?, || format!("{q:?} at n = {n}"));
        }
    }
    Ok(c.finish())
}

fn expectation_check(degree: usize) -> Result<PropertyReport> {
    let mut c = Check::new("expectation_constant");
    let basis = unit_basis(degree)?;
    let m = Rational::from_integer(degree.into());
    for (k, shape) in basis.shapes().iter().enumerate() {
        for unit in basis.block(k)? {
            match expectation_constant(&unit.row, &unit.col)? {
                None => c.case(unit.element.conditional_expectation()?.is_zero(), || {
                    format!("E(Ẽ) ≠ 0 for ({}, {})", unit.row, unit.col)
                }),
                Some(alpha) => {
                    let beta = unit.row.restriction().expect("degree ≥ 2");
                    let predicted = dimension_ratio(shape, beta.shape())? / &m;
                    c.case(alpha.positive && alpha.squared == &predicted * &predicted, || {
                        format!("α² = {} for ({}, {})", alpha.squared, unit.row, unit.col)
                    });
                }
            }
        }
    }
    c.note = Some(format!("α = f_λ/({degree}·f_β) for λ ⊢ {degree}"));
    Ok(c.finish())
}

fn unit_checks(degree: usize) -> Result<Vec<PropertyReport>> {
    let basis = unit_basis(degree)?;
    let units = basis.all_units()?;
    let d_fact = Rational::from_integer(factorial(degree));
    let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
    let exhaustive = units.len() <= EXHAUSTIVE_UNITS;
    let mut out = Vec::new();

    let mut c = Check::new("unit_normalization");
    for u in &units {
        let f = standard_tableaux(&u.shape)?.len();
        c.case(&u.c_squared * u.trace_norm() == int(f as i64) / &d_fact && !u.element.is_zero(), || {
            format!("({}, {})", u.row, u.col)
        });
    }
    out.push(c.finish());

    let mut c = Check::new("unit_adjoint_symmetry");
    for u in &units {
        let k = basis.shapes().iter().position(|s| *s == u.shape).expect("listed");
        let ts = basis.tableaux(k);
        let row = ts.iter().position(|t| *t == u.row).expect("listed");
        let col = ts.iter().position(|t| *t == u.col).expect("listed");
        c.case(u.element.adjoint() == *basis.unit(k, col, row)?.element, || format!("({}, {})", u.row, u.col));
    }
    out.push(c.finish());

    let mut c = Check::new("trace_orthogonality");
    let pairs: Vec<(usize, usize)> = if exhaustive {
        (0..units.len()).flat_map(|a| (a + 1..units.len()).map(move |b| (a, b))).collect()
    } else {
        (0..4000).map(|_| (rng.random_range(0..units.len()), rng.random_range(0..units.len()))).filter(|(a, b)| a != b).collect()
    };
    for (a, b) in pairs {
        c.case(units[a].element.trace_pairing(&units[b].element)?.is_zero(), || {
            format!("({}, {}) vs ({}, {})", units[a].row, units[a].col, units[b].row, units[b].col)
        });
    }
    if !exhaustive {
        c.note = Some("seeded sample of unit pairs".into());
    }
    out.push(c.finish());

    // Ẽ_{T,S} Ẽ_{S,M} ∝ Ẽ_{T,M} with a nonzero constant, and Ẽ_{T,S} Ẽ_{R,M} = 0 for S ≠ R.
    let mut c = Check::new("unit_products");
    let limit = if exhaustive { usize::MAX } else { 150 };
    let mut budget = 0;
    'shapes: for k in 0..basis.shapes().len() {
        let f = basis.tableaux(k).len();
        for t in 0..f {
            for s in 0..f {
                for m in 0..f {
                    if budget >= limit {
                        break 'shapes;
                    }
                    budget += 1;
                    let prod = basis.unit(k, t, s)?.element.multiply(&basis.unit(k, s, m)?.element)?;
                    let ratio = prod.ratio_to(&basis.unit(k, t, m)?.element);
                    c.case(ratio.is_some_and(|r| !r.is_zero()), || format!("shape {k}: ({t},{s})·({s},{m})"));
                }
            }
        }
    }
    let zero_cases = if exhaustive { units.len() * units.len() } else { 150 };
    for z in 0..zero_cases {
        let (a, b) = if exhaustive {
            (z / units.len(), z % units.len())
        } else {
            (rng.random_range(0..units.len()), rng.random_range(0..units.len()))
        };
        if units[a].col == units[b].row {
            continue;
        }
        c.case(units[a].element.multiply(&units[b].element)?.is_zero(), || {
            format!("({}, {})·({}, {})", units[a].row, units[a].col, units[b].row, units[b].col)
        });
    }
    if !exhaustive {
        c.note = Some("seeded sample of unit products".into());
    }
    out.push(c.finish());

    let mut c = Check::new("path_independence");
    for u in units.iter().take(if exhaustive { usize::MAX } else { 200 }) {
        let paths = minimal_admissible_paths(&u.row, &u.col)?;
        for path in paths.iter().take(50) {
            c.case(c_squared_along(&u.row, path)? == u.c_squared, || format!("({}, {}) via {path:?}", u.row, u.col));
        }
    }
    out.push(c.finish());

    let mut c = Check::new("norm_polynomial");
    let gram_limit = if degree <= 4 { usize::MAX } else { 40 };
    for u in units.iter().take(gram_limit) {
        let norm = gram_pairing_poly(&u.element, &u.element)?;
        let e_s = minimal_projection(&u.col)?;
        let kappa = u.trace_norm() / e_s.regular_trace();
        c.case(norm == trace_polynomial(&e_s).scale(&kappa), || format!("({}, {})", u.row, u.col));
        for n in 1..u.shape.length() {
            c.case(norm.eval_int(n as u64).is_zero(), || format!("kernel at n = {n} for ({}, {})", u.row, u.col));
        }
        c.case(*norm.leading().unwrap_or(&Rational::one()) == u.trace_norm(), || {
            format!("leading coefficient for ({}, {})", u.row, u.col)
        });
    }
    out.push(c.finish());

    Ok(out)
}
