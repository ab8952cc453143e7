//! Young diagrams, standard tableaux and the Coxeter action on them.
//!
//! Diagrams are drawn in English orientation: row 0 on top, column 0 on the
//! left. The content of the box at `(row, col)` is `col - row`, so the box
//! holding `1` always has content `0`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::check_degree;
use crate::permutation::Permutation;

/// An integer partition `λ₁ ≥ … ≥ λ_k > 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidPartition(format!("{rows:?} has a zero part")));
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{rows:?} is not non-increasing")));
        }
        Ok(Self { rows })
    }

    /// The diagram with no boxes, the root below the single box.
    pub fn empty() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Number of rows, `l(λ)`.
    pub fn length(&self) -> usize {
        self.rows.len()
    }

    /// Rows where a box may be added, top to bottom (the last one opens a new row).
    pub fn addable_rows(&self) -> Vec<usize> {
        (0..=self.rows.len())
            .filter(|&r| r == 0 || self.row_len(r - 1) > self.row_len(r))
            .collect()
    }

    fn row_len(&self, r: usize) -> usize {
        self.rows.get(r).copied().unwrap_or(0)
    }

    fn with_box(&self, r: usize) -> Self {
        let mut rows = self.rows.clone();
        if r == rows.len() {
            rows.push(1);
        } else {
            rows[r] += 1;
        }
        Self { rows }
    }
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;
    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Self {
        d.rows
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "YoungDiagram{self}")
    }
}

/// The joint spectrum `(a₁(T), …, a_d(T))` of the Jucys–Murphy elements on `w_T`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContentVector(pub Vec<i64>);

impl ContentVector {
    /// `a_i`, one-based.
    pub fn get(&self, i: usize) -> i64 {
        self.0[i - 1]
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }
}

/// A standard filling of a Young diagram with `1..=d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr", into = "TableauRepr")]
pub struct StandardTableau {
    rows: Vec<Vec<usize>>,
    shape: YoungDiagram,
    /// `positions[i - 1] = (row, col)` of entry `i`.
    positions: Vec<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct TableauRepr {
    shape: Vec<usize>,
    rows: Vec<Vec<usize>>,
}

impl TryFrom<TableauRepr> for StandardTableau {
    type Error = Error;
    fn try_from(repr: TableauRepr) -> Result<Self> {
        let t = Self::from_rows(repr.rows)?;
        if t.shape.rows != repr.shape {
            return Err(Error::InvalidTableau(format!(
                "declared shape {:?} does not match rows",
                repr.shape
            )));
        }
        Ok(t)
    }
}

impl From<StandardTableau> for TableauRepr {
    fn from(t: StandardTableau) -> Self {
        TableauRepr {
            shape: t.shape.rows,
            rows: t.rows,
        }
    }
}

/// Outcome of applying the Coxeter generator `s_i` to a standard tableau.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CoxeterAction {
    /// `i` and `i+1` are adjacent in a row; `s_i` acts by `+1`.
    SameRow,
    /// `i` and `i+1` are adjacent in a column; `s_i` acts by `-1`.
    SameColumn,
    /// Swapping `i` and `i+1` yields another standard tableau.
    Standard(StandardTableau),
}

impl StandardTableau {
    /// Validates a filling given row by row.
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let shape = YoungDiagram::new(rows.iter().map(Vec::len).collect())
            .map_err(|e| Error::InvalidTableau(e.to_string()))?;
        let d = shape.size();
        let mut positions = vec![None; d];
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v == 0 || v > d || positions[v - 1].is_some() {
                    return Err(Error::InvalidTableau(format!(
                        "{rows:?} is not a bijection onto 1..={d}"
                    )));
                }
                positions[v - 1] = Some((r, c));
                if c > 0 && row[c - 1] >= v {
                    return Err(Error::InvalidTableau(format!("{rows:?}: row {r} not increasing")));
                }
                if r > 0 && rows[r - 1][c] >= v {
                    return Err(Error::InvalidTableau(format!(
                        "{rows:?}: column {c} not increasing"
                    )));
                }
            }
        }
        Ok(Self {
            rows,
            shape,
            positions: positions.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.positions.len()
    }

    /// `(row, col)` of entry `i` (one-based entry, zero-based coordinates).
    pub fn position(&self, i: usize) -> (usize, usize) {
        self.positions[i - 1]
    }

    /// Content `col - row` of the box holding `i`.
    pub fn content(&self, i: usize) -> i64 {
        let (r, c) = self.position(i);
        c as i64 - r as i64
    }

    pub fn content_vector(&self) -> ContentVector {
        ContentVector((1..=self.size()).map(|i| self.content(i)).collect())
    }

    /// `r = a_{i+1}(T) - a_i(T)` for `1 <= i < d`.
    pub fn axial_distance(&self, i: usize) -> Result<i64> {
        self.check_coxeter_index(i)?;
        Ok(self.content(i + 1) - self.content(i))
    }

    fn check_coxeter_index(&self, i: usize) -> Result<()> {
        if i == 0 || i >= self.size() {
            return Err(Error::IndexOutOfRange {
                index: i,
                max: self.size().saturating_sub(1),
            });
        }
        Ok(())
    }

    pub fn apply_coxeter(&self, i: usize) -> Result<CoxeterAction> {
        self.check_coxeter_index(i)?;
        let (r1, c1) = self.position(i);
        let (r2, c2) = self.position(i + 1);
        if r1 == r2 {
            return Ok(CoxeterAction::SameRow);
        }
        if c1 == c2 {
            return Ok(CoxeterAction::SameColumn);
        }
        let mut rows = self.rows.clone();
        rows[r1][c1] = i + 1;
        rows[r2][c2] = i;
        let mut positions = self.positions.clone();
        positions.swap(i - 1, i);
        Ok(CoxeterAction::Standard(Self {
            rows,
            shape: self.shape.clone(),
            positions,
        }))
    }

    /// The pointwise action: every entry `x` replaced by `π(x)`. The result
    /// need not be standard, so it is returned as plain rows.
    pub fn relabel(&self, pi: &Permutation) -> Result<Vec<Vec<usize>>> {
        if pi.degree() != self.size() {
            return Err(Error::DegreeMismatch {
                left: pi.degree(),
                right: self.size(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|row| row.iter().map(|&x| pi.image(x)).collect())
            .collect())
    }

    /// `T̄`: the tableau with the box holding `d` removed. `None` for `d <= 1`.
    pub fn restriction(&self) -> Option<Self> {
        let d = self.size();
        if d <= 1 {
            return None;
        }
        let (r, _) = self.position(d);
        let mut rows = self.rows.clone();
        rows[r].pop();
        if rows[r].is_empty() {
            rows.pop();
        }
        let mut positions = self.positions.clone();
        positions.pop();
        Some(Self {
            shape: YoungDiagram {
                rows: rows.iter().map(Vec::len).collect(),
            },
            rows,
            positions,
        })
    }

    /// Every `S` with `S̄ = T`, ordered by the row receiving `d + 1`.
    pub fn extensions(&self) -> Vec<Self> {
        let d = self.size();
        self.shape
            .addable_rows()
            .into_iter()
            .map(|r| {
                let mut rows = self.rows.clone();
                if r == rows.len() {
                    rows.push(Vec::new());
                }
                let c = rows[r].len();
                rows[r].push(d + 1);
                let mut positions = self.positions.clone();
                positions.push((r, c));
                Self {
                    shape: self.shape.with_box(r),
                    rows,
                    positions,
                }
            })
            .collect()
    }

    /// The unique tableau of shape `(1)`.
    pub fn single_box() -> Self {
        Self {
            rows: vec![vec![1]],
            shape: YoungDiagram { rows: vec![1] },
            positions: vec![(0, 0)],
        }
    }
}

impl fmt::Display for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|row| {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "{}", rows.join(""))
    }
}

impl fmt::Debug for StandardTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "StandardTableau{self}")
    }
}

/// All partitions of `d` in decreasing lexicographic order.
pub fn partitions(d: usize) -> Result<Vec<YoungDiagram>> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    check_degree(d)?;
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_partitions(d, d, &mut current, &mut out);
    Ok(out)
}

fn fill_partitions(remaining: usize, max_part: usize, current: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
    if remaining == 0 {
        out.push(YoungDiagram {
            rows: current.clone(),
        });
        return;
    }
    for part in (1..=remaining.min(max_part)).rev() {
        current.push(part);
        fill_partitions(remaining - part, part, current, out);
        current.pop();
    }
}

/// All standard tableaux of `shape`, sorted lexicographically by content vector.
pub fn standard_tableaux(shape: &YoungDiagram) -> Result<Vec<StandardTableau>> {
    let d = shape.size();
    if d == 0 {
        return Err(Error::InvalidPartition("empty diagram".into()));
    }
    check_degree(d)?;
    let mut out = Vec::new();
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); shape.length()];
    fill_tableaux(shape, 1, &mut rows, &mut out);
    out.sort_by_cached_key(StandardTableau::content_vector);
    Ok(out)
}

fn fill_tableaux(shape: &YoungDiagram, next: usize, rows: &mut Vec<Vec<usize>>, out: &mut Vec<StandardTableau>) {
    if next > shape.size() {
        out.push(StandardTableau::from_rows(rows.clone()).expect("growth yields standard fillings"));
        return;
    }
    for r in 0..shape.length() {
        let len = rows[r].len();
        let fits = len < shape.rows[r] && (r == 0 || rows[r - 1].len() > len);
        if fits {
            rows[r].push(next);
            fill_tableaux(shape, next + 1, rows, out);
            rows[r].pop();
        }
    }
}

fn check_same_shape(a: &StandardTableau, b: &StandardTableau) -> Result<()> {
    if a.shape != b.shape {
        return Err(Error::ShapeMismatch);
    }
    Ok(())
}

fn admissible_neighbours(t: &StandardTableau) -> impl Iterator<Item = (usize, StandardTableau)> + '_ {
    (1..t.size()).filter_map(move |i| match t.apply_coxeter(i) {
        Ok(CoxeterAction::Standard(s)) => Some((i, s)),
        _ => None,
    })
}

/// Shortest sequence of admissible Coxeter indices taking `from` to `to`,
/// lexicographically smallest among the shortest. Applying the indices in
/// order to `from` yields `to`.
pub fn admissible_path(from: &StandardTableau, to: &StandardTableau) -> Result<Vec<usize>> {
    check_same_shape(from, to)?;
    // Breadth-first search scanning generators in increasing order; the
    // first parent recorded for a vertex lies on its lexicographically least
    // shortest path.
    let mut parent: HashMap<StandardTableau, Option<(StandardTableau, usize)>> = HashMap::new();
    parent.insert(from.clone(), None);
    let mut queue = VecDeque::from([from.clone()]);
    while let Some(t) = queue.pop_front() {
        if &t == to {
            break;
        }
        for (i, s) in admissible_neighbours(&t) {
            if !parent.contains_key(&s) {
                parent.insert(s.clone(), Some((t.clone(), i)));
                queue.push_back(s);
            }
        }
    }
    let mut path = Vec::new();
    let mut cursor = to.clone();
    while let Some(Some((prev, i))) = parent.get(&cursor) {
        path.push(*i);
        cursor = prev.clone();
    }
    if &cursor != from {
        unreachable!("standard tableaux of one shape are connected by admissible moves");
    }
    path.reverse();
    Ok(path)
}

/// Coxeter distance `d(T, S)`.
pub fn coxeter_distance(a: &StandardTableau, b: &StandardTableau) -> Result<usize> {
    admissible_path(a, b).map(|p| p.len())
}

/// Every shortest admissible path from `from` to `to`, in lexicographic order.
pub fn minimal_admissible_paths(from: &StandardTableau, to: &StandardTableau) -> Result<Vec<Vec<usize>>> {
    check_same_shape(from, to)?;
    let mut dist: HashMap<StandardTableau, usize> = HashMap::new();
    dist.insert(to.clone(), 0);
    let mut queue = VecDeque::from([to.clone()]);
    while let Some(t) = queue.pop_front() {
        let dt = dist[&t];
        for (_, s) in admissible_neighbours(&t) {
            dist.entry(s.clone()).or_insert_with(|| {
                queue.push_back(s);
                dt + 1
            });
        }
    }
    let mut out = Vec::new();
    let mut prefix = Vec::new();
    collect_paths(from, &dist, &mut prefix, &mut out);
    Ok(out)
}

fn collect_paths(
    at: &StandardTableau,
    dist: &HashMap<StandardTableau, usize>,
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let here = dist[at];
    if here == 0 {
        out.push(prefix.clone());
        return;
    }
    for (i, s) in admissible_neighbours(at) {
        if dist[&s] + 1 == here {
            prefix.push(i);
            collect_paths(&s, dist, prefix, out);
            prefix.pop();
        }
    }
}

/// The permutation `π` with `π·S = T` under the pointwise action, i.e.
/// `π(S(b)) = T(b)` for every box `b`.
pub fn sigma_permutation(s: &StandardTableau, t: &StandardTableau) -> Result<Permutation> {
    check_same_shape(s, t)?;
    let mut images = vec![0u8; s.size()];
    for (row_s, row_t) in s.rows.iter().zip(&t.rows) {
        for (&x, &y) in row_s.iter().zip(row_t) {
            images[x - 1] = (y - 1) as u8;
        }
    }
    Ok(Permutation::from_zero_based(images))
}
