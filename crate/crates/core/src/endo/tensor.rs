//! Structures on `A ⊗ B` induced by the cellular diagonal.
//!
//! `ψ(x) = Σ c · (F_A(a) ⊗ F_B(b))` over `Δ_C(x) = Σ c · a ⊗ b`, where a
//! pair of multilinear maps becomes one map on `A ⊗ B` by shuffling the
//! graded factors apart first.

use alloc::vec::Vec;

use num_traits::One;

use super::map::{rational, GradedModule, MultiMap, Target, Q};
use super::structure::{Evaluator, StructureSet};
use crate::context::Context;
use crate::diagonal::delta_c_basis;
use crate::diagram::{Diagram, Kind, Shape};
use crate::error::{Error, Result};
use crate::operad_c::{boundary_basis, CBasis, CElement};
use crate::perm::Perm;

fn sign(parity: i64) -> Q {
    if parity.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// `(f ⊗ g) ∘ σ_k`, the image of `f ⊗ g` in the endomorphisms of `A ⊗ B`:
/// `(a₁|b₁, …, a_k|b_k) ↦ ± f(a₁,…,a_k) | g(b₁,…,b_k)`.
pub fn tensor_maps(
    f: &MultiMap,
    g: &MultiMap,
    ma: &GradedModule,
    mb: &GradedModule,
) -> Result<MultiMap> {
    if f.arity != g.arity || f.target != g.target {
        return Err(Error::Precondition("tensor factors must have the same signature".into()));
    }
    let nb = mb.dim();
    let mut out = MultiMap::zero(f.arity, f.target, f.degree + g.degree);
    for (fa, fo, fc) in f.terms() {
        let da: Vec<i64> = fa.iter().map(|&a| ma.degree(a)).collect();
        let total_a: i64 = da.iter().sum();
        for (gb, go, gc) in g.terms() {
            let mut parity = g.degree * total_a;
            // moving a_i left past b_j for j < i
            let mut b_before = 0;
            for (i, &b) in gb.iter().enumerate() {
                parity += da[i] * b_before;
                b_before += mb.degree(b);
            }
            let input: Vec<usize> = fa.iter().zip(gb).map(|(&a, &b)| a * nb + b).collect();
            let output = match f.target {
                Target::Module => fo * nb + go,
                Target::Scalar => 0,
            };
            out.add_term(input, output, sign(parity) * fc * gc);
        }
    }
    Ok(out)
}

/// Evaluation of `ψ = (F_A ⊗ F_B) ∘ Δ_C` for a pair of structures.
pub struct TensorEvaluator<'a> {
    pub ctx: &'a Context,
    pub a: Evaluator<'a>,
    pub b: Evaluator<'a>,
    pub module: GradedModule,
}

impl<'a> TensorEvaluator<'a> {
    pub fn new(ctx: &'a Context, sa: &'a StructureSet, sb: &'a StructureSet) -> TensorEvaluator<'a> {
        TensorEvaluator {
            ctx,
            a: Evaluator::new(sa),
            b: Evaluator::new(sb),
            module: sa.module.tensor(&sb.module),
        }
    }

    pub fn rho_degree(&self) -> i64 {
        self.a.structure().rho_degree + self.b.structure().rho_degree
    }

    pub fn psi_basis(&self, x: &CBasis) -> Result<MultiMap> {
        let shape = x.diagram.shape();
        let (ma, mb) = (&self.a.structure().module, &self.b.structure().module);
        let mut out = MultiMap::zero(shape.leaves(), StructureSet::target(shape), 0);
        for ((l, r), &c) in delta_c_basis(self.ctx, x)?.iter() {
            let fa = self.a.basis(l)?;
            let fb = self.b.basis(r)?;
            out.add_scaled(&tensor_maps(&fa, &fb, ma, mb)?, &rational(c))?;
        }
        if out.is_zero() {
            out.degree = -(shape.leaves() as i64 - 2)
                + if shape.kind == Kind::Inner { self.rho_degree() } else { 0 };
        }
        Ok(out)
    }

    pub fn psi(&self, shape: Shape, x: &CElement) -> Result<MultiMap> {
        let mut out = MultiMap::zero(shape.leaves(), StructureSet::target(shape), 0);
        for (b, &c) in x.iter() {
            out.add_scaled(&self.psi_basis(b)?, &rational(c))?;
        }
        Ok(out)
    }

    /// `d_A ⊗ 1 + 1 ⊗ d_B`.
    pub fn differential(&self) -> Result<MultiMap> {
        let (sa, sb) = (self.a.structure(), self.b.structure());
        let mut d = tensor_maps(&sa.d, &MultiMap::identity(sb.module.dim()), &sa.module, &sb.module)?;
        d.add(&tensor_maps(
            &MultiMap::identity(sa.module.dim()),
            &sb.d,
            &sa.module,
            &sb.module,
        )?)?;
        Ok(d)
    }

    /// `ψ(∂x) − [D, ψ(x)]` on `A ⊗ B`.
    pub fn chain_defect(&self, x: &CBasis) -> Result<MultiMap> {
        let shape = x.diagram.shape();
        let lhs = self.psi(shape, &boundary_basis(x)?)?;
        let f = self.psi_basis(x)?;
        let shift = if f.target == Target::Scalar { self.rho_degree() } else { 0 };
        let rhs = f.bracket_with(&self.differential()?, &self.module, f.degree - shift)?;
        lhs.sub(&rhs)
    }
}

/// The structure on `A ⊗ B` with `μ_n = ψ(T_n)`, `λ = ψ(M)` and `ϱ = ψ(I)`
/// for corollas with at most `max_leaves` leaves, in the families populated
/// on both sides.
pub fn tensor_structure(
    ctx: &Context,
    sa: &StructureSet,
    sb: &StructureSet,
    max_leaves: usize,
) -> Result<StructureSet> {
    let te = TensorEvaluator::new(ctx, sa, sb);
    let mut s = StructureSet::new(te.module.clone(), te.differential()?);
    s.rho_degree = te.rho_degree();
    for shape in Shape::all_up_to(max_leaves) {
        if !(sa.populated(shape.kind) && sb.populated(shape.kind)) {
            continue;
        }
        let c = CBasis::canonical(Diagram::corolla(shape)?);
        let f = te.psi_basis(&c)?;
        *s.map_mut(shape) = f;
    }
    Ok(s)
}

/// Outcome of comparing `ϱ_{2,0} ∘ d` with the failure of cyclicity of
/// `⟨φ₃(·,·,·),·⟩` on `A ⊗ B`.
#[derive(Clone, Debug)]
pub struct Rho20Report {
    /// `ϱ_{2,0} ∘ d`.
    pub lhs: MultiMap,
    /// `⟨φ₃(x₁,x₂,x₃),x₄⟩ − (−1)^{|x₁|(|x₂|+|x₃|+|x₄|)}⟨φ₃(x₂,x₃,x₄),x₁⟩`.
    pub rhs: MultiMap,
    /// The sign `s` with `lhs = s · rhs`, if there is one.
    pub sign: Option<i64>,
}

impl Rho20Report {
    /// `lhs − s·rhs` for the better sign, or `lhs − rhs` if neither works.
    pub fn residual(&self) -> Result<MultiMap> {
        let s = rational(self.sign.unwrap_or(1));
        let mut out = self.lhs.clone();
        out.add_scaled(&self.rhs, &-s)?;
        Ok(out)
    }

    pub fn holds(&self) -> bool {
        self.sign.is_some()
    }
}

pub fn check_rho20_identity(ctx: &Context, sa: &StructureSet, sb: &StructureSet) -> Result<Rho20Report> {
    let t = tensor_structure(ctx, sa, sb, 4)?;
    let m = &t.module;
    let rho20 = t.corolla_map(Shape::inner(2, 0))?;
    let lhs = rho20.precompose_d(&t.d, m)?;
    let pairing = t.corolla_map(Shape::inner(0, 0))?;
    let phi3 = t.corolla_map(Shape::tree(3))?;
    let t1 = pairing.compose(1, &phi3, m)?;
    // (t1 ∘ rot_#)(x₁,…,x₄) = ± t1(x₂,x₃,x₄,x₁)
    let rot = Perm::from_images(alloc::vec![3, 0, 1, 2])?;
    let t2 = t1.permute_inputs(&rot, m)?;
    let rhs = t1.sub(&t2)?;
    let sign = if lhs.sub(&rhs)?.is_zero() {
        Some(1)
    } else if {
        let mut s = lhs.clone();
        s.add(&rhs)?;
        s.is_zero()
    } {
        Some(-1)
    } else {
        None
    };
    Ok(Rho20Report { lhs, rhs, sign })
}
