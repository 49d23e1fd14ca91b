//! Formal integer linear combinations with checked arithmetic.

use alloc::collections::btree_map::{self, BTreeMap};

use crate::error::{Error, Result};

/// A finite sum `Σ c_k · k` with nonzero `i64` coefficients, keyed by a
/// normalized basis element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<K: Ord> {
    terms: BTreeMap<K, i64>,
}

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(k: K, c: i64) -> Self {
        let mut out = Self::zero();
        if c != 0 {
            out.terms.insert(k, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, i64> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, i64> {
        self.terms.keys()
    }

    pub fn coeff(&self, k: &K) -> i64 {
        self.terms.get(k).copied().unwrap_or(0)
    }

    pub fn add_term(&mut self, k: K, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let s = o.get().checked_add(c).ok_or(Error::Overflow)?;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: i64) -> Result<()> {
        for (k, &v) in other.iter() {
            self.add_term(k.clone(), v.checked_mul(c).ok_or(Error::Overflow)?)?;
        }
        Ok(())
    }

    pub fn scaled(&self, c: i64) -> Result<Self> {
        let mut out = Self::zero();
        out.add_scaled(self, c)?;
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, -1)?;
        Ok(out)
    }

    /// Apply a linear map given on basis elements.
    pub fn map_linear<L: Ord + Clone>(
        &self,
        mut f: impl FnMut(&K) -> Result<LinComb<L>>,
    ) -> Result<LinComb<L>> {
        let mut out = LinComb::zero();
        for (k, &c) in self.iter() {
            out.add_scaled(&f(k)?, c)?;
        }
        Ok(out)
    }

    /// Forget coefficients.
    pub fn support(&self) -> alloc::collections::BTreeSet<K> {
        self.terms.keys().cloned().collect()
    }
}

impl<K: Ord + Clone> FromIterator<(K, i64)> for LinComb<K> {
    /// Panics on overflow; meant for small literal sums in tests.
    fn from_iter<I: IntoIterator<Item = (K, i64)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c).expect("coefficient overflow");
        }
        out
    }
}

impl<'a, K: Ord> IntoIterator for &'a LinComb<K> {
    type Item = (&'a K, &'a i64);
    type IntoIter = btree_map::Iter<'a, K, i64>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
