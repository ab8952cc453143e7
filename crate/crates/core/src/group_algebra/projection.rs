use std::collections::HashMap;
use std::sync::{Arc, LazyLock, RwLock};

use crate::error::Result;
use crate::limits::check_degree;
use crate::rational::{int, Rational};
use crate::tableaux::StandardTableau;

use super::{jucys_murphy, AlgebraElement};

/// Memo table for minimal projections, keyed by tableau. Every prefix of a
/// growth path is cached on the way, so siblings share their ancestors.
#[derive(Default)]
pub struct ProjectionCache {
    table: RwLock<HashMap<StandardTableau, Arc<AlgebraElement>>>,
}

static GLOBAL: LazyLock<ProjectionCache> = LazyLock::new(ProjectionCache::default);

impl ProjectionCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static Self {
        &GLOBAL
    }

    pub fn len(&self) -> usize {
        self.table.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The minimal projection `E_T` as a polynomial in the Jucys–Murphy
    /// elements: `E_T = E_T̄ · Π_{S ≠ T, S̄ = T̄} (a_d(S) − X_d)/(a_d(S) − a_d(T))`.
    pub fn get(&self, t: &StandardTableau) -> Result<Arc<AlgebraElement>> {
        check_degree(t.size())?;
        if let Some(hit) = self.table.read().unwrap().get(t) {
            return Ok(Arc::clone(hit));
        }
        let value = Arc::new(self.compute(t)?);
        // Another reader may have raced us here; both computed the same value.
        let mut table = self.table.write().unwrap();
        Ok(Arc::clone(table.entry(t.clone()).or_insert(value)))
    }

    fn compute(&self, t: &StandardTableau) -> Result<AlgebraElement> {
        let d = t.size();
        let Some(parent_tableau) = t.restriction() else {
            return Ok(AlgebraElement::identity(d));
        };
        let parent = self.get(&parent_tableau)?;
        let x_d = jucys_murphy(d, d)?;
        let a_t = t.content(d);
        let mut out = parent.embed(d)?;
        for sibling in parent_tableau.extensions() {
            if &sibling == t {
                continue;
            }
            let a_s = sibling.content(d);
            // (a_S − X_d) / (a_S − a_T); a_S ≠ a_T for distinct addable boxes.
            let denom = Rational::from_integer((a_s - a_t).into());
            let factor = (&AlgebraElement::scalar(d, int(a_s)) - &x_d).scale(&denom.recip());
            out = out.multiply(&factor)?;
        }
        Ok(out)
    }
}

/// [`ProjectionCache::get`] on the process-wide cache.
pub fn minimal_projection(t: &StandardTableau) -> Result<Arc<AlgebraElement>> {
    ProjectionCache::global().get(t)
}
