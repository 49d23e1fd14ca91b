//! Diagonals: the cubical Serre diagonal `Δ_Q` and the transferred
//! `Δ_C = (p⊗p)∘Δ_Q∘q`.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::context::Context;
use crate::diagram::{Diagram, Kind, Shape};
use crate::error::Result;
use crate::linear::LinComb;
use crate::operad_c::{self, boundary_basis as boundary_cb, CBasis, CElement};
use crate::operad_q::{boundary_basis as boundary_qb, QBasis, QElement};
use crate::perm::{parity_sign, Perm};
use crate::tamari::{dmax, dmin};
use crate::transfer::{p_basis, q_map};

pub type CTensor = LinComb<(CBasis, CBasis)>;
pub type QTensor = LinComb<(QBasis, QBasis)>;
pub type CTensor3 = LinComb<(CBasis, CBasis, CBasis)>;
pub type QTensor3 = LinComb<(QBasis, QBasis, QBasis)>;

/// `Δ_Q(D, g, ω) = Σ_X (−1)^{ρ(X)} (D/X, ω_X̄) ⊗ (D_X̄, ω_X)`.
pub fn delta_q_basis(x: &QBasis) -> Result<QTensor> {
    let m = &x.metric;
    let l = m.len();
    let mut out = QTensor::zero();
    for mask in 0u32..(1 << l) {
        let inside = |i: usize| mask >> i & 1 == 1;
        let mut rho = 0;
        for i in 0..l {
            for j in i + 1..l {
                if inside(i) && !inside(j) {
                    rho += 1;
                }
            }
        }
        let xs: Vec<_> = (0..l).filter(|&i| inside(i)).map(|i| m[i]).collect();
        let rest: Vec<_> = (0..l).filter(|&i| !inside(i)).map(|i| m[i]).collect();
        let left = QBasis {
            diagram: x.diagram.contract_all(&xs)?,
            labeling: x.labeling.clone(),
            metric: rest,
        };
        let right = QBasis { diagram: x.diagram.clone(), labeling: x.labeling.clone(), metric: xs };
        out.add_term((left, right), parity_sign(rho))?;
    }
    Ok(out)
}

pub fn delta_q(x: &QElement) -> Result<QTensor> {
    x.map_linear(delta_q_basis)
}

/// `(p ⊗ p)` applied termwise; `p` has degree zero so no sign appears.
pub fn p_tensor(ctx: &Context, t: &QTensor) -> Result<CTensor> {
    t.map_linear(|(a, b)| tensor_product(&p_basis(ctx, a)?, &p_basis(ctx, b)?))
}

/// `a ⊗ b` for two elements.
pub fn tensor_product<A: Ord + Clone, B: Ord + Clone>(
    a: &LinComb<A>,
    b: &LinComb<B>,
) -> Result<LinComb<(A, B)>> {
    let mut out = LinComb::zero();
    for (x, &cx) in a {
        for (y, &cy) in b {
            out.add_term((x.clone(), y.clone()), cx.checked_mul(cy).ok_or(crate::Error::Overflow)?)?;
        }
    }
    Ok(out)
}

pub fn delta_c(ctx: &Context, x: &CElement) -> Result<CTensor> {
    p_tensor(ctx, &delta_q(&q_map(ctx, x)?)?)
}

pub fn delta_c_basis(ctx: &Context, x: &CBasis) -> Result<CTensor> {
    delta_c(ctx, &CElement::single(x.clone(), 1))
}

/// True when `x` uses an inner-product vertex other than `I_{0,0}`.
pub fn uses_higher_inner_product(x: &CBasis) -> bool {
    x.diagram.kind() == Kind::Inner && x.diagram.root().len() > 2
}

/// [`delta_c`] with every monomial dropped in which a factor has a central
/// vertex of type `I_{k,l}`, `k + l > 0`.
pub fn delta_c_mod_higher(ctx: &Context, x: &CElement) -> Result<CTensor> {
    let full = delta_c(ctx, x)?;
    Ok(full
        .iter()
        .filter(|((a, b), _)| !uses_higher_inner_product(a) && !uses_higher_inner_product(b))
        .map(|(k, &c)| (k.clone(), c))
        .collect())
}

/// `∂(a ⊗ b) = ∂a ⊗ b + (−1)^{|a|} a ⊗ ∂b` on `C ⊗ C`.
pub fn boundary_tensor_c(t: &CTensor) -> Result<CTensor> {
    t.map_linear(|(a, b)| {
        let mut out = tensor_product(&boundary_cb(a)?, &CElement::single(b.clone(), 1))?;
        let right = tensor_product(&CElement::single(a.clone(), 1), &boundary_cb(b)?)?;
        out.add_scaled(&right, parity_sign(a.degree()))?;
        Ok(out)
    })
}

pub fn boundary_tensor_q(t: &QTensor) -> Result<QTensor> {
    t.map_linear(|(a, b)| {
        let mut out = tensor_product(&boundary_qb(a)?, &QElement::single(b.clone(), 1))?;
        let right = tensor_product(&QElement::single(a.clone(), 1), &boundary_qb(b)?)?;
        out.add_scaled(&right, parity_sign(a.degree()))?;
        Ok(out)
    })
}

/// `(a ⊗ b) ∘_i (c ⊗ d) = (−1)^{|b||c|} (a ∘_i c) ⊗ (b ∘_i d)`.
pub fn compose_tensor_c(x: &CTensor, i: usize, y: &CTensor) -> Result<CTensor> {
    let mut out = CTensor::zero();
    for ((a, b), &s) in x {
        for ((c, d), &t) in y {
            let sign = parity_sign(b.degree() * c.degree());
            let coef = s.checked_mul(t).and_then(|v| v.checked_mul(sign));
            let coef = coef.ok_or(crate::Error::Overflow)?;
            let prod = tensor_product(&operad_c::compose_c(a, i, c)?, &operad_c::compose_c(b, i, d)?)?;
            out.add_scaled(&prod, coef)?;
        }
    }
    Ok(out)
}

/// Diagonal action `σ·(a ⊗ b) = σ·a ⊗ σ·b` with the signed action on each side.
pub fn act_tensor_c(sigma: &Perm, t: &CTensor) -> Result<CTensor> {
    t.map_linear(|(a, b)| {
        tensor_product(
            &operad_c::sym_action_elem(sigma, &CElement::single(a.clone(), 1))?,
            &operad_c::sym_action_elem(sigma, &CElement::single(b.clone(), 1))?,
        )
    })
}

/// `Δ_C(σ·x) − σ·Δ_C(x)` with the diagonal action on the right.
pub fn equivariance_defect(ctx: &Context, sigma: &Perm, x: &CElement) -> Result<CTensor> {
    let lhs = delta_c(ctx, &operad_c::sym_action_elem(sigma, x)?)?;
    lhs.sub(&act_tensor_c(sigma, &delta_c(ctx, x)?)?)
}

/// `((Δ ⊗ 1)Δ x, (1 ⊗ Δ)Δ x)` for a degree-zero diagonal `delta`.
pub fn coassociativity<K: Ord + Clone>(
    x: &LinComb<K>,
    delta: impl Fn(&K) -> Result<LinComb<(K, K)>>,
) -> Result<(LinComb<(K, K, K)>, LinComb<(K, K, K)>)> {
    let once = x.map_linear(&delta)?;
    let mut left = LinComb::zero();
    let mut right = LinComb::zero();
    for ((a, b), &c) in &once {
        for ((a1, a2), &ca) in &delta(a)? {
            left.add_term((a1.clone(), a2.clone(), b.clone()), c.checked_mul(ca).ok_or(crate::Error::Overflow)?)?;
        }
        for ((b1, b2), &cb) in &delta(b)? {
            right.add_term((a.clone(), b1.clone(), b2.clone()), c.checked_mul(cb).ok_or(crate::Error::Overflow)?)?;
        }
    }
    Ok((left, right))
}

/// Unsigned support of a tensor, as pairs of diagrams.
pub fn support(t: &CTensor) -> BTreeSet<(Diagram, Diagram)> {
    t.keys().map(|(a, b)| (a.diagram.clone(), b.diagram.clone())).collect()
}

/// Pairs `(S, T)` in complementary degrees with `S_max ≤ T_min`.
pub fn support_formula(ctx: &Context, shape: Shape) -> Result<BTreeSet<(Diagram, Diagram)>> {
    let poset = ctx.poset(shape)?;
    let top = shape.leaves() - 2;
    let mut out = BTreeSet::new();
    for ds in 0..=top {
        let ts = ctx.enumerate(shape, top - ds);
        for s in ctx.enumerate(shape, ds).iter() {
            let i = poset.index[&dmax(s)];
            for t in ts.iter() {
                if poset.leq_idx(i, poset.index[&dmin(t)]) {
                    out.insert((s.clone(), t.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// First corolla, by leaf count and then shape order, on which `Δ_C` is not
/// coassociative, with the difference `(Δ⊗1)Δ − (1⊗Δ)Δ`.
pub fn noncoassociativity_witness(
    ctx: &Context,
    max_leaves: usize,
) -> Result<Option<(Shape, CTensor3)>> {
    for n in 2..=max_leaves {
        for shape in Shape::all_with_leaves(n) {
            let c = CElement::single(CBasis::canonical(Diagram::corolla(shape)?), 1);
            let (l, r) = coassociativity(&c, |b| delta_c_basis(ctx, b))?;
            let diff = l.sub(&r)?;
            if !diff.is_zero() {
                return Ok(Some((shape, diff)));
            }
        }
    }
    Ok(None)
}
