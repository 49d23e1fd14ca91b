//! Signed wedges of edges.

use alloc::vec::Vec;
use core::fmt;

use crate::diagram::EdgeKey;
use crate::error::{Error, Result};

/// `sign · e₁ ∧ … ∧ e_k`. Canonical when the edges are sorted by key order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orientation {
    pub sign: i64,
    pub edges: Vec<EdgeKey>,
}

impl Orientation {
    /// The empty wedge with sign `+1`.
    pub fn unit() -> Orientation {
        Orientation { sign: 1, edges: Vec::new() }
    }

    /// `+e₁ ∧ … ∧ e_k` in the given order, not yet normalized.
    pub fn from_edges(edges: Vec<EdgeKey>) -> Orientation {
        Orientation { sign: 1, edges }
    }

    /// Sort the edges, folding the permutation parity into the sign.
    /// `None` if an edge repeats, which makes the wedge vanish.
    pub fn normalized(&self) -> Option<Orientation> {
        let mut e = self.edges.clone();
        let mut sign = self.sign;
        // insertion sort counting transpositions
        for i in 1..e.len() {
            let mut j = i;
            while j > 0 && e[j - 1] > e[j] {
                e.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if e.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Orientation { sign, edges: e })
    }

    pub fn is_canonical(&self) -> bool {
        self.edges.windows(2).all(|w| w[0] < w[1])
    }

    pub fn degree(&self) -> usize {
        self.edges.len()
    }

    /// Concatenate and normalize; `None` on a repeated edge.
    pub fn wedge(&self, other: &Orientation) -> Option<Orientation> {
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Orientation { sign: self.sign * other.sign, edges }.normalized()
    }

    pub fn negated(&self) -> Orientation {
        Orientation { sign: -self.sign, edges: self.edges.clone() }
    }

    /// Apply a key translation to every edge (result not normalized).
    pub fn map_keys(&self, f: impl Fn(EdgeKey) -> EdgeKey) -> Orientation {
        Orientation { sign: self.sign, edges: self.edges.iter().map(|&k| f(k)).collect() }
    }

    /// Sign of this wedge relative to `+` the sorted wedge of the same edges.
    pub fn sign_vs_sorted(&self) -> Option<i64> {
        self.normalized().map(|o| o.sign)
    }

    /// The contraction `sub ⌋ full` defined by `⟨e′, e⟩ = δ`.
    ///
    /// `(e₁∧…∧e_r) ⌋ (e₁∧…∧e_k) = (−1)^{r(r−1)/2} e_{r+1}∧…∧e_k`; other
    /// orderings reduce to this one by moving the edges of `sub` to the front of
    /// `full` in the order they have in `sub`.
    pub fn pair_contract(sub: &Orientation, full: &Orientation) -> Result<Orientation> {
        let r = sub.edges.len();
        let mut order: Vec<usize> = Vec::with_capacity(full.edges.len());
        for e in &sub.edges {
            let i = full
                .edges
                .iter()
                .position(|f| f == e)
                .ok_or_else(|| Error::Precondition(alloc::string::String::from("sub not contained in full")))?;
            order.push(i);
        }
        let rest: Vec<usize> = (0..full.edges.len()).filter(|i| !order.contains(i)).collect();
        order.extend_from_slice(&rest);
        // parity of the permutation `order`
        let mut inversions = 0usize;
        for a in 0..order.len() {
            for b in a + 1..order.len() {
                if order[a] > order[b] {
                    inversions += 1;
                }
            }
        }
        let mut sign = sub.sign * full.sign;
        if inversions % 2 == 1 {
            sign = -sign;
        }
        if (r * r.saturating_sub(1) / 2) % 2 == 1 {
            sign = -sign;
        }
        Ok(Orientation { sign, edges: rest.iter().map(|&i| full.edges[i]).collect() })
    }
}

impl fmt::Debug for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:?}", if self.sign > 0 { "+" } else { "-" }, self.edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use proptest::prelude::*;

    fn e(i: usize) -> EdgeKey {
        EdgeKey::from_labels([i, i + 1])
    }

    #[test]
    fn wedge_examples() {
        let w = Orientation::from_edges(vec![e(1)]).wedge(&Orientation::from_edges(vec![e(2)]));
        assert_eq!(w, Some(Orientation { sign: 1, edges: vec![e(1), e(2)] }));
        let w = Orientation::from_edges(vec![e(3)]).wedge(&Orientation::from_edges(vec![e(1)]));
        assert_eq!(w, Some(Orientation { sign: -1, edges: vec![e(1), e(3)] }));
        let w =
            Orientation::from_edges(vec![e(1), e(2)]).wedge(&Orientation::from_edges(vec![e(1)]));
        assert_eq!(w, None);
    }

    #[test]
    fn contraction_examples() {
        let full = Orientation::from_edges(vec![e(1), e(2), e(3)]);
        let sub = Orientation::from_edges(vec![e(1), e(2)]);
        assert_eq!(
            Orientation::pair_contract(&sub, &full).unwrap(),
            Orientation { sign: -1, edges: vec![e(3)] }
        );
        let full = Orientation::from_edges(vec![e(1), e(2)]);
        let sub = Orientation::from_edges(vec![e(1)]);
        assert_eq!(
            Orientation::pair_contract(&sub, &full).unwrap(),
            Orientation { sign: 1, edges: vec![e(2)] }
        );
        let sub = Orientation::from_edges(vec![e(5)]);
        assert!(Orientation::pair_contract(&sub, &full).is_err());
    }

    proptest! {
        #[test]
        fn normalization_is_idempotent_and_tracks_parity(perm in Just((0..6usize).collect::<Vec<_>>()).prop_shuffle()) {
            let o = Orientation::from_edges(perm.iter().map(|&i| e(2 * i)).collect());
            let n = o.normalized().unwrap();
            prop_assert!(n.is_canonical());
            prop_assert_eq!(n.normalized().unwrap(), n.clone());
            // swapping two adjacent entries flips the sign
            let mut swapped = o.clone();
            swapped.edges.swap(0, 1);
            prop_assert_eq!(swapped.normalized().unwrap().sign, -n.sign);
        }

        #[test]
        fn full_contraction_of_itself_has_the_triangular_sign(k in 0usize..7) {
            let o = Orientation::from_edges((0..k).map(|i| e(2 * i)).collect());
            let c = Orientation::pair_contract(&o, &o).unwrap();
            prop_assert!(c.edges.is_empty());
            prop_assert_eq!(c.sign, if (k * k.saturating_sub(1) / 2) % 2 == 0 { 1 } else { -1 });
        }

        #[test]
        fn wedge_is_associative(a in 0u32..64, b in 0u32..64, c in 0u32..64) {
            let mk = |m: u32, off: usize| Orientation::from_edges(
                (0..6).filter(|i| m >> i & 1 == 1).map(|i| e(2 * i + off)).collect());
            let (x, y, z) = (mk(a, 0), mk(b, 0), mk(c, 0));
            let l = x.wedge(&y).and_then(|xy| xy.wedge(&z));
            let r = y.wedge(&z).and_then(|yz| x.wedge(&yz));
            prop_assert_eq!(l, r);
        }
    }
}
