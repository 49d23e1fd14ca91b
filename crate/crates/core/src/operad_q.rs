//! The cubical operad: diagrams whose edges are marked metric or non-metric.
//!
//! A basis element carries the sorted list of metric edges; the orientation is
//! their wedge in that order, so the coefficient absorbs every other ordering.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::diagram::{Diagram, EdgeKey};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::operad_c::compose_labeled;
use crate::orientation::Orientation;
use crate::perm::{parity_sign, Perm};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QBasis {
    pub diagram: Diagram,
    pub labeling: Perm,
    /// Metric edges in sorted key order.
    pub metric: Vec<EdgeKey>,
}

pub type QElement = LinComb<QBasis>;

impl QBasis {
    pub fn new(diagram: Diagram, labeling: Perm, mut metric: Vec<EdgeKey>) -> Result<QBasis> {
        let n = diagram.leaf_count();
        if labeling.len() != n {
            return Err(Error::SizeMismatch { expected: n, got: labeling.len() });
        }
        metric.sort();
        let keys = diagram.edge_keys();
        if metric.windows(2).any(|w| w[0] == w[1]) || metric.iter().any(|k| !keys.contains(k)) {
            return Err(Error::UnknownEdge);
        }
        Ok(QBasis { diagram, labeling, metric })
    }

    /// Every edge metric, canonical labeling.
    pub fn fully_metric(diagram: Diagram) -> QBasis {
        let n = diagram.leaf_count();
        let metric = diagram.edge_keys();
        QBasis { diagram, labeling: Perm::identity(n), metric }
    }

    pub fn degree(&self) -> usize {
        self.metric.len()
    }

    pub fn leaf_count(&self) -> usize {
        self.diagram.leaf_count()
    }

    pub fn is_fully_metric(&self) -> bool {
        self.metric.len() == self.diagram.edge_count()
    }

    pub fn nonmetric(&self) -> Vec<EdgeKey> {
        self.diagram.edge_keys().into_iter().filter(|k| !self.metric.contains(k)).collect()
    }

    /// All markings of all diagrams in a shape class with the given degree.
    pub fn enumerate(shape: crate::diagram::Shape, degree: usize) -> Vec<QBasis> {
        let mut out = Vec::new();
        let n = shape.leaves();
        for edges in degree..=n.saturating_sub(2) {
            for d in Diagram::enumerate(shape, n - 2 - edges) {
                let keys = d.edge_keys();
                for mask in 0u32..(1 << keys.len()) {
                    if mask.count_ones() as usize != degree {
                        continue;
                    }
                    let metric =
                        (0..keys.len()).filter(|i| mask >> i & 1 == 1).map(|i| keys[i]).collect();
                    out.push(QBasis { diagram: d.clone(), labeling: Perm::identity(n), metric });
                }
            }
        }
        out
    }
}

/// `(D, f⟲∘σ, g, ω)` for an orientation `ω` of exactly the metric edges.
pub fn generator(diagram: Diagram, labeling: Perm, omega: &Orientation) -> Result<QElement> {
    let norm = omega.normalized().ok_or(Error::Precondition("repeated edge".into()))?;
    let b = QBasis::new(diagram, labeling, norm.edges.clone())?;
    Ok(QElement::single(b, norm.sign))
}

/// `∂_Q = Σ_j (−1)^j [(D/e_j, …) − (D_{e_j}, …)]`, `j` running over metric edges.
pub fn boundary_basis(x: &QBasis) -> Result<QElement> {
    let mut out = QElement::zero();
    for (j, &e) in x.metric.iter().enumerate() {
        let s = parity_sign(j + 1);
        let rest: Vec<EdgeKey> = x.metric.iter().copied().filter(|&k| k != e).collect();
        let contracted = x.diagram.contract(e)?;
        out.add_term(
            QBasis { diagram: contracted, labeling: x.labeling.clone(), metric: rest.clone() },
            s,
        )?;
        out.add_term(QBasis { diagram: x.diagram.clone(), labeling: x.labeling.clone(), metric: rest }, -s)?;
    }
    Ok(out)
}

pub fn boundary_q(x: &QElement) -> Result<QElement> {
    x.map_linear(boundary_basis)
}

/// `σ·(D, f, g, ω) = (D, f∘σ, g, ω)`, without a sign.
pub fn sym_action(sigma: &Perm, x: &QBasis) -> Result<QBasis> {
    if sigma.len() != x.leaf_count() {
        return Err(Error::SizeMismatch { expected: x.leaf_count(), got: sigma.len() });
    }
    Ok(QBasis { labeling: x.labeling.compose(sigma), ..x.clone() })
}

pub fn sym_action_elem(sigma: &Perm, x: &QElement) -> Result<QElement> {
    x.map_linear(|b| Ok(QElement::single(sym_action(sigma, b)?, 1)))
}

/// `x ∘_i y` (one-based `i`): no sign prefix, the new edge is non-metric, and the
/// orientation is `ω_x ∧ ω_y`.
pub fn compose_q(x: &QBasis, i: usize, y: &QBasis) -> Result<QElement> {
    let k = x.leaf_count();
    if i == 0 || i > k {
        return Err(Error::IndexOutOfRange { index: i, len: k });
    }
    let Some(c) = compose_labeled(&x.diagram, &x.labeling, i - 1, &y.diagram, &y.labeling)? else {
        return Ok(QElement::zero());
    };
    let g = &c.graft;
    let mut edges: Vec<EdgeKey> = x.metric.iter().map(|&e| g.outer_key(e)).collect();
    edges.extend(y.metric.iter().map(|&e| g.inner_key(e)));
    let o = Orientation::from_edges(edges).normalized().expect("distinct keys");
    Ok(QElement::single(
        QBasis { diagram: g.diagram.clone(), labeling: c.labeling, metric: o.edges },
        o.sign,
    ))
}

pub fn compose_q_elem(x: &QElement, i: usize, y: &QElement) -> Result<QElement> {
    let mut out = QElement::zero();
    for (a, &ca) in x {
        for (b, &cb) in y {
            let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
            out.add_scaled(&compose_q(a, i, b)?, c)?;
        }
    }
    Ok(out)
}

/// Expression in fully metric generators under `∘_i` and the unsigned action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QExpr {
    Gen(QBasis),
    Act(Perm, Box<QExpr>),
    Compose(Box<QExpr>, usize, Box<QExpr>),
    Scale(i64, Box<QExpr>),
}

impl QExpr {
    pub fn evaluate(&self) -> Result<QElement> {
        match self {
            QExpr::Gen(b) => Ok(QElement::single(b.clone(), 1)),
            QExpr::Act(p, e) => sym_action_elem(p, &e.evaluate()?),
            QExpr::Compose(a, i, b) => compose_q_elem(&a.evaluate()?, *i, &b.evaluate()?),
            QExpr::Scale(c, e) => e.evaluate()?.scaled(*c),
        }
    }

    /// Fully metric factors, left to right.
    pub fn factors(&self) -> Vec<&QBasis> {
        match self {
            QExpr::Gen(b) => alloc::vec![b],
            QExpr::Act(_, e) | QExpr::Scale(_, e) => e.factors(),
            QExpr::Compose(a, _, b) => {
                let mut v = a.factors();
                v.extend(b.factors());
                v
            }
        }
    }
}

/// One non-metric edge cut away:
/// `(D, f⟲, g, +) = sign · τ⁻¹ ·_Q ((D₁, f⟲, g₁, +) ∘_{leaf+1} (D₂, f⟲, g₂, +))`.
#[derive(Clone, Debug)]
pub struct QSplit {
    pub outer: QBasis,
    pub leaf: usize,
    pub inner: QBasis,
    pub tau: Perm,
    pub sign: i64,
}

/// Split a canonically labeled generator along a non-metric edge.
pub fn split_nonmetric(x: &QBasis, key: EdgeKey) -> Result<QSplit> {
    if x.metric.contains(&key) {
        return Err(Error::Precondition("edge is metric".into()));
    }
    let cut = x.diagram.cut(key)?;
    let probe = compose_labeled(
        &cut.outer,
        &Perm::identity(cut.outer.leaf_count()),
        cut.leaf,
        &cut.inner,
        &Perm::identity(cut.inner.leaf_count()),
    )?
    .expect("a cut regrafts");
    let g = &probe.graft;
    // translate metric edges of x back to the pieces
    let outer_keys = cut.outer.edge_keys();
    let inner_keys = cut.inner.edge_keys();
    let m1: Vec<EdgeKey> =
        outer_keys.iter().copied().filter(|&k| x.metric.contains(&g.outer_key(k))).collect();
    let m2: Vec<EdgeKey> =
        inner_keys.iter().copied().filter(|&k| x.metric.contains(&g.inner_key(k))).collect();
    let outer = QBasis::new(cut.outer.clone(), Perm::identity(cut.outer.leaf_count()), m1)?;
    let inner = QBasis::new(cut.inner.clone(), Perm::identity(cut.inner.leaf_count()), m2)?;
    let prod = compose_q(&outer, cut.leaf + 1, &inner)?;
    let (b, &c) = prod.iter().next().expect("nonzero composition");
    debug_assert_eq!(b.metric, x.metric);
    Ok(QSplit { outer, leaf: cut.leaf, inner, tau: probe.labeling, sign: c })
}

/// Cut every non-metric edge, producing fully metric factors.
pub fn decompose_nonmetric(x: &QBasis) -> Result<QExpr> {
    fn canonical(x: &QBasis) -> Result<QExpr> {
        let Some(&key) = x.nonmetric().first() else {
            return Ok(QExpr::Gen(x.clone()));
        };
        let sp = split_nonmetric(x, key)?;
        let inner = QExpr::Compose(
            Box::new(canonical(&sp.outer)?),
            sp.leaf + 1,
            Box::new(canonical(&sp.inner)?),
        );
        Ok(QExpr::Scale(sp.sign, Box::new(QExpr::Act(sp.tau.inverse(), Box::new(inner)))))
    }
    let base = QBasis { labeling: Perm::identity(x.leaf_count()), ..x.clone() };
    let e = canonical(&base)?;
    if x.labeling.is_identity() {
        Ok(e)
    } else {
        Ok(QExpr::Act(x.labeling.clone(), Box::new(e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Shape;

    fn d(s: &str) -> Diagram {
        Diagram::parse(s).unwrap()
    }

    #[test]
    fn boundary_examples() {
        let c = QBasis::fully_metric(d("(* * *)"));
        assert!(boundary_basis(&c).unwrap().is_zero());
        let x = QBasis::fully_metric(d("((* *) *)"));
        let b = boundary_basis(&x).unwrap();
        assert_eq!(b.len(), 2);
        let contracted = QBasis::fully_metric(d("(* * *)"));
        assert_eq!(b.coeff(&contracted), -1);
        let marked = QBasis { metric: Vec::new(), ..x.clone() };
        assert_eq!(b.coeff(&marked), 1);
    }

    #[test]
    fn composition_marks_new_edge_nonmetric() {
        let x = QBasis::fully_metric(d("((* *) *)"));
        let y = QBasis::fully_metric(d("(* (* *))"));
        let z = compose_q(&x, 2, &y).unwrap();
        let (b, &c) = z.iter().next().unwrap();
        assert_eq!(c.abs(), 1);
        assert_eq!(b.degree(), x.degree() + y.degree());
        assert_eq!(b.nonmetric().len(), 1);
        let sigma = Perm::from_images(alloc::vec![2, 0, 1]).unwrap();
        let acted = sym_action(&sigma, &x).unwrap();
        assert_eq!(acted.labeling, sigma);
    }

    #[test]
    fn boundary_squares_to_zero_small() {
        for shape in Shape::all_up_to(5) {
            for deg in 0..shape.leaves() - 1 {
                for x in QBasis::enumerate(shape, deg) {
                    let bb = boundary_q(&boundary_basis(&x).unwrap()).unwrap();
                    assert!(bb.is_zero(), "{:?}", x);
                }
            }
        }
    }

    #[test]
    fn nonmetric_decomposition_round_trip() {
        for shape in Shape::all_up_to(6) {
            for deg in 0..shape.leaves() - 1 {
                for x in QBasis::enumerate(shape, deg) {
                    let e = decompose_nonmetric(&x).unwrap();
                    assert_eq!(e.evaluate().unwrap(), QElement::single(x.clone(), 1));
                    assert_eq!(e.factors().len(), x.nonmetric().len() + 1);
                    assert!(e.factors().iter().all(|f| f.is_fully_metric()));
                }
            }
        }
    }
}
