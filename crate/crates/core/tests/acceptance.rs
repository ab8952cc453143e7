//! The ten acceptance criteria, one PASS/FAIL line each. Runs without the
//! libtest harness so the report reads top to bottom; exits nonzero on any
//! failure.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{rank, represent, Commutant};
use haar_units::group_algebra::{
    c_squared_along, dimension_ratio, expectation_constant, jucys_murphy, minimal_projection, normalization_c_squared,
    projection_lift, unit_basis, unit_lift, AlgebraElement,
};
use haar_units::haar::{moment, moment_symbolic, one_row_moment, same_type, MomentQuery};
use haar_units::monte_carlo::mc_moments;
use haar_units::permutation::Permutation;
use haar_units::poly::Polynomial;
use haar_units::rational::{factorial, int, rat, rising_factorial, Rational};
use haar_units::schur_weyl::{gram_pairing_poly, pair_with_elementary, IndexTuple};
use haar_units::tableaux::{minimal_admissible_paths, partitions, standard_tableaux, StandardTableau};
use haar_units::verify::sample_queries;
use haar_units::weingarten::{weingarten_matrix, wg_moment};
use num_traits::{ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn q(i: &[usize], j: &[usize], k: &[usize], l: &[usize]) -> MomentQuery {
    MomentQuery::from_slices(i, j, k, l).unwrap()
}

fn all_tableaux(d: usize) -> Vec<StandardTableau> {
    partitions(d).unwrap().iter().flat_map(|s| standard_tableaux(s).unwrap()).collect()
}

fn first_examples() -> Vec<(MomentQuery, usize)> {
    let mut out = Vec::new();
    for n in 1..=8 {
        out.push((q(&[1], &[1], &[1], &[1]), n));
        out.push((q(&[1, 1], &[1, 1], &[1, 1], &[1, 1]), n));
    }
    out
}

fn oracle_corpus() -> Vec<(MomentQuery, usize)> {
    let mut out = Vec::new();
    for d in 1..=2 {
        for n in 2..=3 {
            let tuples = IndexTuple::all(d, n);
            for i in &tuples {
                for j in &tuples {
                    for k in &tuples {
                        for l in &tuples {
                            out.push((MomentQuery::new(i.clone(), j.clone(), k.clone(), l.clone()).unwrap(), n));
                        }
                    }
                }
            }
        }
    }
    for d in 3..=4 {
        for n in d..=6 {
            for query in sample_queries(d, n, 200, 1000 * d as u64 + n as u64) {
                out.push((query, n));
            }
        }
    }
    out
}

fn one_row_corpus() -> Vec<(IndexTuple, IndexTuple, usize)> {
    let mut out = Vec::new();
    for d in 1..=4 {
        for n in 1..=6 {
            let tuples = IndexTuple::all(d, n.min(4));
            for j in &tuples {
                for l in &tuples {
                    out.push((j.clone(), l.clone(), n));
                }
            }
        }
    }
    out
}

fn criterion_1() -> Outcome {
    for (query, n) in first_examples() {
        let expected = if query.degree() == 1 { rat(1, n as i64) } else { rat(2, (n * (n + 1)) as i64) };
        let got = moment(&query, n).map_err(|e| e.to_string())?;
        ensure(got == expected, || format!("{query:?} at n = {n}: {got} ≠ {expected}"))?;
    }
    let basis = unit_basis(2).unwrap();
    let sym = Polynomial::from_coeffs(vec![Rational::zero(), rat(1, 2), rat(1, 2)]);
    let anti = Polynomial::from_coeffs(vec![Rational::zero(), rat(-1, 2), rat(1, 2)]);
    for (k, expected) in [sym, anti].into_iter().enumerate() {
        let u = basis.unit(k, 0, 0).unwrap();
        let norm = gram_pairing_poly(&u.element, &u.element).unwrap();
        ensure(norm == expected, || format!("‖E_{:?}‖² = {norm}", u.shape.rows()))?;
    }
    Ok("|u11|^2 = 1/n, |u11|^4 = 2/(n(n+1)) for n = 1..8; norms n(n+1)/2, n(n-1)/2".into())
}

fn criterion_2() -> Outcome {
    let corpus = oracle_corpus();
    let mut nonzero = 0;
    for (query, n) in &corpus {
        let a = moment(query, *n).map_err(|e| e.to_string())?;
        let b = wg_moment(query, *n).map_err(|e| e.to_string())?;
        ensure(a == b, || format!("{query:?} at n = {n}: units {a}, weingarten {b}"))?;
        nonzero += usize::from(!a.is_zero());
    }
    Ok(format!("{} quadruples agree exactly ({nonzero} nonzero)", corpus.len()))
}

fn criterion_3() -> Outcome {
    let corpus = one_row_corpus();
    for (j, l, n) in &corpus {
        let d = j.len();
        let law = one_row_moment(j, l, *n).map_err(|e| e.to_string())?;
        let expected = if same_type(j, l).unwrap() {
            let mut counts = [0usize; 8];
            j.values().iter().for_each(|&v| counts[v] += 1);
            let numer: num_bigint::BigInt = counts.iter().map(|&r| factorial(r)).product();
            Rational::new(numer, rising_factorial(*n as u64, d))
        } else {
            Rational::zero()
        };
        ensure(law == expected, || format!("J = {j}, L = {l}, n = {n}: {law} ≠ {expected}"))?;
        let ones = vec![1; d];
        let general = moment(&q(&ones, j.values(), &ones, l.values()), *n).unwrap();
        ensure(general == law, || format!("J = {j}, L = {l}, n = {n}: general {general} ≠ {law}"))?;
    }
    Ok(format!("{} (J, L, n) triples", corpus.len()))
}

fn criterion_4() -> Outcome {
    let mut products = 0usize;
    for d in 1..=5 {
        let ts = all_tableaux(d);
        let es: Vec<_> = ts.iter().map(|t| minimal_projection(t).unwrap()).collect();
        let d_fact = Rational::from_integer(factorial(d));
        let xs: Vec<_> = (1..=d).map(|i| jucys_murphy(i, d).unwrap()).collect();
        let mut sum = AlgebraElement::zero(d);
        for (a, (t, e)) in ts.iter().zip(&es).enumerate() {
            ensure(&**e * &**e == **e && e.adjoint() == **e, || format!("E_T not a projection, T = {t}"))?;
            for (s, f) in ts[a + 1..].iter().zip(&es[a + 1..]) {
                ensure((&**e * &**f).is_zero() && (&**f * &**e).is_zero(), || format!("E_T E_S ≠ 0, {t}, {s}"))?;
                products += 2;
            }
            for (i, x) in xs.iter().enumerate() {
                ensure(x * &**e == e.scale(&int(t.content(i + 1))), || format!("X_{} E_T, T = {t}", i + 1))?;
            }
            let f = standard_tableaux(t.shape()).unwrap().len() as i64;
            ensure(e.regular_trace() == int(f) / &d_fact, || format!("τ(E_T), T = {t}"))?;
            sum = &sum + &**e;
        }
        ensure(sum == AlgebraElement::identity(d), || format!("Σ E_T ≠ e at d = {d}"))?;

        let basis = unit_basis(d).unwrap();
        let units = basis.all_units().unwrap();
        for (k, _) in basis.shapes().iter().enumerate() {
            let f = basis.tableaux(k).len();
            for t in 0..f {
                for s in 0..f {
                    let u = basis.unit(k, t, s).unwrap();
                    ensure(u.element.adjoint() == *basis.unit(k, s, t).unwrap().element, || {
                        format!("Ẽ_{{T,S}}* ≠ Ẽ_{{S,T}} for ({}, {})", u.row, u.col)
                    })?;
                }
            }
        }
        for a in &units {
            for b in &units {
                let prod = &*a.element * &*b.element;
                products += 1;
                if a.col == b.row {
                    let target = units.iter().find(|u| u.row == a.row && u.col == b.col).unwrap();
                    let ratio = prod.ratio_to(&target.element);
                    ensure(ratio.is_some_and(|r| !r.is_zero()), || {
                        format!("({}, {})·({}, {}) not ∝ ({}, {})", a.row, a.col, b.row, b.col, a.row, b.col)
                    })?;
                } else {
                    ensure(prod.is_zero(), || format!("({}, {})·({}, {}) ≠ 0", a.row, a.col, b.row, b.col))?;
                }
                if a.key() < b.key() {
                    ensure(a.element.trace_pairing(&b.element).unwrap().is_zero(), || {
                        format!("τ(Ẽ*Ẽ') ≠ 0 for ({}, {}), ({}, {})", a.row, a.col, b.row, b.col)
                    })?;
                }
            }
        }
    }
    Ok(format!("d = 1..5, {products} exact products"))
}

fn criterion_5() -> Outcome {
    let mut units_checked = 0;
    for d in 1..=5 {
        let d_fact = Rational::from_integer(factorial(d));
        for u in unit_basis(d).unwrap().all_units().unwrap() {
            let f = standard_tableaux(&u.shape).unwrap().len() as i64;
            let direct = (&u.element.adjoint() * &*u.element).regular_trace();
            ensure(&u.c_squared * &direct == int(f) / &d_fact, || format!("({}, {})", u.row, u.col))?;
            units_checked += 1;
        }
    }
    let mut paths_checked = 0;
    for d in 1..=4 {
        for t in all_tableaux(d) {
            for s in standard_tableaux(t.shape()).unwrap() {
                let expected = normalization_c_squared(&t, &s).unwrap();
                for path in minimal_admissible_paths(&t, &s).unwrap() {
                    ensure(c_squared_along(&t, &path).unwrap() == expected, || format!("{t} → {s} via {path:?}"))?;
                    paths_checked += 1;
                }
            }
        }
    }
    Ok(format!("{units_checked} units normalized; {paths_checked} minimal paths agree"))
}

fn criterion_6() -> Outcome {
    for d in 1..=4 {
        for t in all_tableaux(d) {
            let lifted = minimal_projection(&t).unwrap().embed(d + 1).unwrap();
            ensure(lifted == projection_lift(&t).unwrap(), || format!("E_T ≠ Σ E_R for T = {t}"))?;
        }
        for u in unit_basis(d).unwrap().all_units().unwrap() {
            let lifted = u.element.embed(d + 1).unwrap();
            ensure(lifted == unit_lift(&u.row, &u.col).unwrap(), || format!("unit lift ({}, {})", u.row, u.col))?;
            ensure(lifted.conditional_expectation().unwrap() == *u.element, || {
                format!("𝔼∘embed ≠ id on ({}, {})", u.row, u.col)
            })?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(d as u64);
        let all = Permutation::all(d);
        for _ in 0..20 {
            let x = AlgebraElement::from_terms(
                d,
                (0..6).map(|_| (all[rng.random_range(0..all.len())], rat(rng.random_range(-9..=9), 4))),
            )
            .unwrap();
            ensure(x.embed(d + 1).unwrap().conditional_expectation().unwrap() == x, || "𝔼∘embed ≠ id".into())?;
        }
    }
    let (mut mismatched, mut larger, mut smaller) = (0, 0, 0);
    for m in 2..=5 {
        let degree = Rational::from_integer(m.into());
        let below = Rational::from_integer((m - 1).into());
        for u in unit_basis(m).unwrap().all_units().unwrap() {
            match expectation_constant(&u.row, &u.col).unwrap() {
                None => {
                    ensure(u.element.conditional_expectation().unwrap().is_zero(), || {
                        format!("𝔼 ≠ 0 on mismatched ({}, {})", u.row, u.col)
                    })?;
                    mismatched += 1;
                }
                Some(alpha) => {
                    let beta = u.row.restriction().unwrap();
                    let ratio = dimension_ratio(&u.shape, beta.shape()).unwrap();
                    let with_larger = &ratio / &degree;
                    let with_smaller = &ratio / &below;
                    larger += usize::from(alpha.positive && alpha.squared == &with_larger * &with_larger);
                    smaller += usize::from(alpha.positive && alpha.squared == &with_smaller * &with_smaller);
                }
            }
        }
    }
    ensure(larger > 0 && smaller == 0, || format!("constant matches neither form uniformly ({larger}, {smaller})"))?;
    Ok(format!(
        "lifts exact for d <= 4; 𝔼 = 0 on {mismatched} mismatched units; α = f_λ/((d+1)·f_β) for λ ⊢ d+1 on all \
         {larger} proportional units, the f_λ/(d·f_β) form on none"
    ))
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    for d in 1..=5 {
        for u in unit_basis(d).unwrap().all_units().unwrap() {
            let norm = gram_pairing_poly(&u.element, &u.element).unwrap();
            let len = u.shape.length() as u64;
            for n in 1..len {
                ensure(norm.eval_int(n).is_zero(), || format!("‖Ẽ‖²({n}) ≠ 0 for ({}, {})", u.row, u.col))?;
            }
            ensure(!norm.eval_int(len).is_zero(), || format!("‖Ẽ‖² vanishes at l(λ) for ({}, {})", u.row, u.col))?;
            count += 1;
        }
    }
    Ok(format!("{count} unit norm polynomials"))
}

fn criterion_8() -> Outcome {
    let mut entries = 0usize;
    for d in 1..=3 {
        let mut elements = vec![AlgebraElement::identity(d)];
        elements.extend(all_tableaux(d).iter().map(|t| (*minimal_projection(t).unwrap()).clone()));
        elements.extend(unit_basis(d).unwrap().all_units().unwrap().iter().map(|u| (*u.element).clone()));
        for n in 1..=3 {
            let tuples = IndexTuple::all(d, n);
            let dense: Vec<_> = elements.iter().map(|x| represent(x, n)).collect();
            for (x, px) in elements.iter().zip(&dense) {
                for j in &tuples {
                    for l in &tuples {
                        let got = pair_with_elementary(x, j, l).unwrap();
                        ensure(got == *px.get(rank(j, n), rank(l, n)), || format!("pairing J={j} L={l} n={n}"))?;
                        entries += 1;
                    }
                }
            }
            for (x, px) in elements.iter().zip(&dense) {
                for (y, py) in elements.iter().zip(&dense) {
                    let poly = gram_pairing_poly(x, y).unwrap();
                    ensure(poly.eval_int(n as u64) == px.hs(py), || format!("gram at d={d} n={n}"))?;
                }
            }
            let commutant = Commutant::new(d, n);
            for j in &tuples {
                for l in &tuples {
                    let projected = commutant.projected_elementary(j, l, n);
                    for i in &tuples {
                        for k in &tuples {
                            let query = MomentQuery::new(i.clone(), j.clone(), k.clone(), l.clone()).unwrap();
                            let expected = projected.get(rank(i, n), rank(k, n));
                            ensure(moment(&query, n).unwrap() == *expected, || format!("{query:?} at n = {n}"))?;
                            entries += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{entries} dense entries reproduced"))
}

const MC_SAMPLES: usize = 100_000;

fn criterion_9() -> Outcome {
    let abstains = weingarten_matrix(2, 1).is_err() && wg_moment(&q(&[1, 1], &[1, 1], &[1, 1], &[1, 1]), 1).is_err();
    ensure(abstains, || "Weingarten did not abstain at n = 1, d = 2".into())?;
    let mut checked = 0;
    let mut worst: f64 = 0.0;
    for d in 1..=3 {
        for n in 1..=4 {
            let mut queries = sample_queries(d, n, 12, 7 * d as u64 + n as u64);
            queries.push(q(&vec![1; d], &vec![1; d], &vec![1; d], &vec![1; d]));
            let estimates = mc_moments(&queries, n, MC_SAMPLES, 42 + (d * 10 + n) as u64).unwrap();
            for (query, est) in queries.iter().zip(&estimates) {
                let exact = moment(query, n).unwrap().to_f64().unwrap();
                ensure(est.samples == MC_SAMPLES, || format!("only {} samples", est.samples))?;
                if n == 1 && d == 2 && query.max_index() == 1 {
                    ensure(exact == 1.0, || "n = 1, d = 2 moment is not 1".into())?;
                }
                ensure(est.agrees_with(exact, 5.0), || {
                    format!("{query:?} at n = {n}: {} ± {} vs {exact}", est.mean, est.std_error)
                })?;
                if est.std_error > 0.0 {
                    worst = worst.max(est.deviation(exact));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} moments at {MC_SAMPLES} samples, worst deviation {worst:.2}σ; Weingarten abstains at n < d"))
}

fn criterion_10() -> Outcome {
    let mut corpus: Vec<MomentQuery> = first_examples().into_iter().map(|(q, _)| q).collect();
    corpus.extend(oracle_corpus().into_iter().map(|(q, _)| q));
    corpus.extend(one_row_corpus().into_iter().map(|(j, l, _)| {
        let ones = vec![1; j.len()];
        q(&ones, j.values(), &ones, l.values())
    }));
    corpus.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
    corpus.dedup();
    let mut evaluations = 0;
    for query in &corpus {
        let symbolic = moment_symbolic(query).map_err(|e| e.to_string())?;
        let stable = &symbolic.stable_branch();
        let start = query.degree().max(query.max_index());
        ensure(stable.min_n <= start, || format!("{query:?}: stable branch starts at {}", stable.min_n))?;
        for n in start..=8 {
            let value = stable.value.eval_int(n as u64).ok_or_else(|| format!("{query:?}: pole at n = {n}"))?;
            ensure(value == moment(query, n).unwrap(), || format!("{query:?} at n = {n}"))?;
            evaluations += 1;
        }
    }
    Ok(format!("{} distinct queries, {evaluations} evaluations", corpus.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("first examples", criterion_1, Some(Duration::from_secs(1))),
        ("oracle equivalence", criterion_2, Some(Duration::from_secs(120))),
        ("one-row law", criterion_3, Some(Duration::from_secs(60))),
        ("matrix-unit algebra", criterion_4, Some(Duration::from_secs(120))),
        ("normalization constant", criterion_5, None),
        ("branching", criterion_6, None),
        ("kernel property", criterion_7, None),
        ("dense brute force", criterion_8, None),
        ("monte carlo", criterion_9, Some(Duration::from_secs(120))),
        ("symbolic uniformity", criterion_10, None),
    ];
    let mut failures = 0;
    for (index, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or(p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:.0?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({elapsed:.2?}): {detail}", index + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL criterion {}: {name} ({elapsed:.2?}): {detail}", index + 1);
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
