//! The cellular operad: oriented labeled diagrams with integer coefficients.
//!
//! A basis element `(D, σ)` stands for `(D, f⟲∘σ, ω)` where `ω` is the wedge
//! of all edges of `D` in sorted key order. Any other orientation is folded
//! into the coefficient, so `(D, f, −ω) = −(D, f, ω)` holds by construction.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::diagram::{Cut, Diagram, EdgeKey, Graft, Shape};
use crate::error::{Error, Result};
use crate::linear::LinComb;
use crate::orientation::Orientation;
use crate::perm::{parity_sign, Perm};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CBasis {
    pub diagram: Diagram,
    pub labeling: Perm,
}

pub type CElement = LinComb<CBasis>;

impl CBasis {
    pub fn new(diagram: Diagram, labeling: Perm) -> Result<CBasis> {
        let n = diagram.leaf_count();
        if labeling.len() != n {
            return Err(Error::SizeMismatch { expected: n, got: labeling.len() });
        }
        Ok(CBasis { diagram, labeling })
    }

    /// `(D, f⟲, +sorted)`.
    pub fn canonical(diagram: Diagram) -> CBasis {
        let n = diagram.leaf_count();
        CBasis { diagram, labeling: Perm::identity(n) }
    }

    pub fn degree(&self) -> usize {
        self.diagram.degree()
    }

    pub fn leaf_count(&self) -> usize {
        self.diagram.leaf_count()
    }
}

/// `(D, f⟲∘σ, ω)` as an element, for any orientation `ω` of all edges of `D`.
pub fn generator(diagram: Diagram, labeling: Perm, omega: &Orientation) -> Result<CElement> {
    let mut keys = diagram.edge_keys();
    let norm = omega.normalized().ok_or(Error::Precondition("repeated edge".into()))?;
    keys.sort();
    if norm.edges != keys {
        return Err(Error::Precondition("orientation must list every edge exactly once".into()));
    }
    Ok(CElement::single(CBasis::new(diagram, labeling)?, norm.sign))
}

/// `∂_C(D, f, ω) = Σ (D′, f, e′∧ω)` over all expansions.
pub fn boundary_basis(x: &CBasis) -> Result<CElement> {
    let mut out = CElement::zero();
    for (d2, e) in x.diagram.expansions() {
        let below = d2.edge_keys().iter().filter(|&&k| k < e).count();
        out.add_term(CBasis { diagram: d2, labeling: x.labeling.clone() }, parity_sign(below))?;
    }
    Ok(out)
}

pub fn boundary_c(x: &CElement) -> Result<CElement> {
    x.map_linear(boundary_basis)
}

/// `σ·(D, f, ω) = sgn(σ)·(D, f∘σ, ω)`, returned as basis element and sign.
pub fn sym_action(sigma: &Perm, x: &CBasis) -> Result<(CBasis, i64)> {
    if sigma.len() != x.leaf_count() {
        return Err(Error::SizeMismatch { expected: x.leaf_count(), got: sigma.len() });
    }
    Ok((
        CBasis { diagram: x.diagram.clone(), labeling: x.labeling.compose(sigma) },
        sigma.sign(),
    ))
}

pub fn sym_action_elem(sigma: &Perm, x: &CElement) -> Result<CElement> {
    x.map_linear(|b| {
        let (y, s) = sym_action(sigma, b)?;
        Ok(CElement::single(y, s))
    })
}

/// The underlying graft of a labeled composition, shared with the cubical operad.
#[derive(Clone, Debug)]
pub struct Composite {
    pub graft: Graft,
    /// Labeling of the composite, `f_{D∘E} = f⟲ ∘ σ`.
    pub labeling: Perm,
}

/// Graft `(E, σ_E)` into input `i` (zero based) of `(D, σ_D)`. `Ok(None)`
/// signals a color mismatch, which makes the composition vanish.
pub fn compose_labeled(
    d: &Diagram,
    sd: &Perm,
    i: usize,
    e: &Diagram,
    se: &Perm,
) -> Result<Option<Composite>> {
    let k = d.leaf_count();
    if i >= k {
        return Err(Error::IndexOutOfRange { index: i + 1, len: k });
    }
    let Some(g) = d.graft(sd.get(i) as usize, e)? else {
        return Ok(None);
    };
    let l = e.leaf_count();
    let mut images = Vec::with_capacity(k + l - 1);
    for j in 0..i {
        images.push(g.outer[sd.get(j) as usize]);
    }
    for j in 0..l {
        images.push(g.inner[se.get(j) as usize]);
    }
    for j in i + 1..k {
        images.push(g.outer[sd.get(j) as usize]);
    }
    Ok(Some(Composite { graft: g, labeling: Perm::from_images(images)? }))
}

/// `ε = i(l+1) + k·n` with `i` one based, `k = #leaves(D)`, `l = #leaves(E)`,
/// `n = degree(E)`.
pub fn epsilon(i_one_based: usize, k: usize, l: usize, n: usize) -> usize {
    i_one_based * (l + 1) + k * n
}

/// `x ∘_i y` for one-based `i`.
pub fn compose_c(x: &CBasis, i: usize, y: &CBasis) -> Result<CElement> {
    compose_c_with(x, i, y, epsilon)
}

/// Composition with a pluggable sign rule. Used by the mutation tests.
pub fn compose_c_with(
    x: &CBasis,
    i: usize,
    y: &CBasis,
    eps: impl Fn(usize, usize, usize, usize) -> usize,
) -> Result<CElement> {
    let k = x.leaf_count();
    if i == 0 || i > k {
        return Err(Error::IndexOutOfRange { index: i, len: k });
    }
    let Some(c) = compose_labeled(&x.diagram, &x.labeling, i - 1, &y.diagram, &y.labeling)? else {
        return Ok(CElement::zero());
    };
    let g = &c.graft;
    let mut edges: Vec<EdgeKey> = x.diagram.edge_keys().into_iter().map(|e| g.outer_key(e)).collect();
    edges.extend(y.diagram.edge_keys().into_iter().map(|e| g.inner_key(e)));
    edges.push(g.new_edge);
    let o = Orientation::from_edges(edges).sign_vs_sorted().expect("distinct keys");
    let s = parity_sign(eps(i, k, y.leaf_count(), y.degree())) * o;
    Ok(CElement::single(CBasis { diagram: g.diagram.clone(), labeling: c.labeling }, s))
}

/// `∂(x ∘_i y) − ∂x ∘_i y − (−1)^{|x|} x ∘_i ∂y` for a given sign rule;
/// zero for [`epsilon`].
pub fn leibniz_defect_with(
    x: &CBasis,
    i: usize,
    y: &CBasis,
    eps: impl Fn(usize, usize, usize, usize) -> usize + Copy,
) -> Result<CElement> {
    let mut out = boundary_c(&compose_c_with(x, i, y, eps)?)?;
    for (dx, &c) in &boundary_basis(x)? {
        out.add_scaled(&compose_c_with(dx, i, y, eps)?, -c)?;
    }
    let s = parity_sign(x.degree());
    for (dy, &c) in &boundary_basis(y)? {
        out.add_scaled(&compose_c_with(x, i, dy, eps)?, -s * c)?;
    }
    Ok(out)
}

/// Bilinear extension of [`compose_c`].
pub fn compose_c_elem(x: &CElement, i: usize, y: &CElement) -> Result<CElement> {
    let mut out = CElement::zero();
    for (a, &ca) in x {
        for (b, &cb) in y {
            let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
            out.add_scaled(&compose_c(a, i, b)?, c)?;
        }
    }
    Ok(out)
}

/// A diagram cut along one edge, with the data needed to reassemble it:
/// `(D, f⟲, +) = sign · τ⁻¹ ·_C ((D₁, f⟲, +) ∘_{leaf+1} (D₂, f⟲, +))`.
///
/// Equivalently `sign` is `sgn(τ)` times the coefficient of `(D, τ, +)` in the
/// composition; any multiplicative extension from smaller pieces uses it.
#[derive(Clone, Debug)]
pub struct Split {
    pub cut: Cut,
    pub tau: Perm,
    pub sign: i64,
    pub graft: Graft,
}

pub fn split(d: &Diagram, key: EdgeKey) -> Result<Split> {
    let cut = d.cut(key)?;
    let x1 = CBasis::canonical(cut.outer.clone());
    let x2 = CBasis::canonical(cut.inner.clone());
    let comp = compose_labeled(&x1.diagram, &x1.labeling, cut.leaf, &x2.diagram, &x2.labeling)?
        .expect("a cut regrafts");
    debug_assert_eq!(&comp.graft.diagram, d);
    let prod = compose_c(&x1, cut.leaf + 1, &x2)?;
    let (_, &c) = prod.iter().next().expect("nonzero composition");
    let sign = c * comp.labeling.sign();
    Ok(Split { cut, tau: comp.labeling, sign, graft: comp.graft })
}

/// A signed expression in corollas, `∘_i` and the symmetric action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Corolla(Shape),
    /// `σ · e` with the signed action.
    Act(Perm, Box<Expr>),
    /// `a ∘_i b`, one-based `i`.
    Compose(Box<Expr>, usize, Box<Expr>),
    Scale(i64, Box<Expr>),
}

impl Expr {
    pub fn evaluate(&self) -> Result<CElement> {
        match self {
            Expr::Corolla(s) => Ok(CElement::single(CBasis::canonical(Diagram::corolla(*s)?), 1)),
            Expr::Act(p, e) => sym_action_elem(p, &e.evaluate()?),
            Expr::Compose(a, i, b) => compose_c_elem(&a.evaluate()?, *i, &b.evaluate()?),
            Expr::Scale(c, e) => e.evaluate()?.scaled(*c),
        }
    }

    /// Number of corolla leaves in the expression.
    pub fn corolla_count(&self) -> usize {
        match self {
            Expr::Corolla(_) => 1,
            Expr::Act(_, e) | Expr::Scale(_, e) => e.corolla_count(),
            Expr::Compose(a, _, b) => a.corolla_count() + b.corolla_count(),
        }
    }
}

/// Write `x` as a signed expression in corollas by cutting edges one at a time.
pub fn decompose_corollas(x: &CBasis) -> Result<Expr> {
    fn canonical(d: &Diagram) -> Result<Expr> {
        let keys = d.edge_keys();
        let Some(&key) = keys.first() else {
            return Ok(Expr::Corolla(d.shape()));
        };
        let sp = split(d, key)?;
        let inner = Expr::Compose(
            Box::new(canonical(&sp.cut.outer)?),
            sp.cut.leaf + 1,
            Box::new(canonical(&sp.cut.inner)?),
        );
        // τ⁻¹ ·_C includes sgn(τ⁻¹) = sgn(τ); sp.sign already carries sgn(τ)
        Ok(Expr::Scale(sp.sign, Box::new(Expr::Act(sp.tau.inverse(), Box::new(inner)))))
    }
    let base = canonical(&x.diagram)?;
    if x.labeling.is_identity() {
        return Ok(base);
    }
    // (D, σ, +) = sgn(σ) · σ ·_C (D, id, +)
    Ok(Expr::Scale(x.labeling.sign(), Box::new(Expr::Act(x.labeling.clone(), Box::new(base)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Kind;

    fn d(s: &str) -> Diagram {
        Diagram::parse(s).unwrap()
    }

    fn canon(s: &str) -> CBasis {
        CBasis::canonical(d(s))
    }

    #[test]
    fn t2_into_t2_is_minus_left_comb() {
        let x = compose_c(&canon("(* *)"), 1, &canon("(* *)")).unwrap();
        assert_eq!(x, CElement::single(canon("((* *) *)"), -1));
        let y = compose_c(&canon("(* *)"), 2, &canon("(* *)")).unwrap();
        assert_eq!(y, CElement::single(canon("(* (* *))"), 1));
    }

    #[test]
    fn color_mismatch_gives_zero() {
        let x = compose_c(&canon("<| ; ; | ; >"), 1, &canon("(* *)")).unwrap();
        assert!(x.is_zero());
        let x = compose_c(&canon("{* ; | ; }"), 1, &canon("{* ; | ; }")).unwrap();
        assert!(x.is_zero());
        assert!(compose_c(&canon("(* *)"), 3, &canon("(* *)")).is_err());
    }

    #[test]
    fn boundary_examples() {
        let b = boundary_basis(&canon("(* * *)")).unwrap();
        assert_eq!(b.len(), 2);
        assert_eq!(boundary_basis(&canon("<| ; * * ; | ; >")).unwrap().len(), 5);
        let bb = boundary_c(&boundary_basis(&canon("(* * * *)")).unwrap()).unwrap();
        assert!(bb.is_zero());
    }

    #[test]
    fn inner_with_module_gets_cyclic_relabeling() {
        // I_{r′,r″} ∘₁ M_{s′,s″}: labeling is a power of the cyclic shift
        for (r1, r2, s1, s2) in [(1, 0, 1, 0), (2, 1, 1, 2), (0, 2, 2, 1), (1, 1, 3, 0)] {
            let i = CBasis::canonical(Diagram::corolla(Shape::inner(r1, r2)).unwrap());
            let m = CBasis::canonical(Diagram::corolla(Shape::module(s1, s2)).unwrap());
            let x = compose_c(&i, 1, &m).unwrap();
            let (b, &c) = x.iter().next().unwrap();
            let n = b.leaf_count();
            let shift: Vec<u8> = (0..n).map(|j| ((j + n - s1) % n) as u8).collect();
            assert_eq!(b.labeling, Perm::from_images(shift).unwrap());
            assert_eq!(b.labeling.sign(), parity_sign(s1 * (r1 + r2 + s2)));
            assert_eq!(b.diagram.shape(), Shape::inner(r1 + s2, r2 + s1));
            assert_eq!(c.abs(), 1);
        }
    }

    #[test]
    fn action_axioms() {
        for n in 2..=5 {
            let x = CBasis::canonical(Diagram::corolla(Shape::tree(n)).unwrap());
            let all = Perm::all(n);
            for s in &all {
                for t in &all {
                    let (tx, c1) = sym_action(t, &x).unwrap();
                    let (stx, c2) = sym_action(s, &tx).unwrap();
                    // f ↦ f∘σ is a right action: s·(t·x) = (t∘s)·x
                    let (ts, c4) = sym_action(&t.compose(s), &x).unwrap();
                    assert_eq!((stx, c1 * c2), (ts, c4));
                }
            }
            let id = Perm::identity(n);
            assert_eq!(sym_action(&id, &x).unwrap(), (x.clone(), 1));
        }
        let t = Perm::from_images(alloc::vec![1, 0]).unwrap();
        let (y, s) = sym_action(&t, &canon("(* *)")).unwrap();
        assert_eq!((y.labeling, s), (t, -1));
    }

    #[test]
    fn decomposition_round_trip() {
        for shape in Shape::all_up_to(6) {
            for deg in 0..shape.leaves() - 1 {
                for x in Diagram::enumerate(shape, deg) {
                    let b = CBasis::canonical(x.clone());
                    let e = decompose_corollas(&b).unwrap();
                    assert_eq!(e.evaluate().unwrap(), CElement::single(b, 1), "{x}");
                    assert_eq!(e.corolla_count(), x.edge_count() + 1);
                }
            }
        }
        let b = CBasis::new(d("((* *) * *)"), Perm::from_images(alloc::vec![2, 0, 3, 1]).unwrap())
            .unwrap();
        let e = decompose_corollas(&b).unwrap();
        assert_eq!(e.evaluate().unwrap(), CElement::single(b, 1));
        assert_eq!(decompose_corollas(&canon("(* * *)")).unwrap(), Expr::Corolla(Shape::tree(3)));
        assert_eq!(d("<| ; ; | ; >").kind(), Kind::Inner);
    }
}
