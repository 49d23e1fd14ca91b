//! The subdivision map `q: C → Q` and its quasi-inverse `p: Q → C`, together
//! with the orientations `ξ_B`, `ω^std_B` and `ω(S, D)` they are built from.
//!
//! Both maps are computed on canonically labeled generators and extended by
//! the symmetric actions. On those generators they are multiplicative, so a
//! generator is cut along one edge, the two pieces are mapped recursively and
//! the results are composed again.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;

use crate::context::Context;
use crate::diagram::{Diagram, EdgeKey};
use crate::error::{Error, Result};
use crate::operad_c::{self, compose_c_elem, CBasis, CElement};
use crate::operad_q::{self, compose_q_elem, split_nonmetric, QBasis, QElement};
use crate::orientation::Orientation;
use crate::perm::parity_sign;
use crate::tamari::{dmax, dmin};

/// Sign of `ξ_B` relative to the sorted wedge of the edges of a binary `B`.
///
/// `ξ = +1` on the two-leaf diagrams; otherwise `B` is cut along its first edge
/// and `ξ_B` is the orientation induced by composing `ξ` of the two halves.
pub fn xi(ctx: &Context, b: &Diagram) -> Result<i64> {
    if !b.is_binary() {
        return Err(Error::NotBinary);
    }
    if let Some(&s) = ctx.xi.borrow().get(b) {
        return Ok(s);
    }
    let s = match b.edge_keys().first() {
        None => 1,
        Some(&key) => xi_cut(ctx, b, key)?,
    };
    ctx.xi.borrow_mut().insert(b.clone(), s);
    Ok(s)
}

/// `ξ_B` computed by cutting `key` first; equal to [`xi`] for every key.
pub fn xi_cut(ctx: &Context, b: &Diagram, key: EdgeKey) -> Result<i64> {
    let sp = operad_c::split(b, key)?;
    Ok(sp.sign * xi(ctx, &sp.cut.outer)? * xi(ctx, &sp.cut.inner)?)
}

/// `(−1)^{(n−2)(n−3)/2}`, the factor between `ξ_B` and `ω^std_B`.
pub fn std_factor(leaves: usize) -> i64 {
    let m = leaves.saturating_sub(2);
    parity_sign(m * m.saturating_sub(1) / 2)
}

/// Sign of `ω^std_B` relative to the sorted wedge.
pub fn omega_std(ctx: &Context, b: &Diagram) -> Result<i64> {
    Ok(std_factor(b.leaf_count()) * xi(ctx, b)?)
}

/// `q(D, f⟲, +)` for the sorted orientation.
pub fn q_canonical(ctx: &Context, d: &Diagram) -> Result<Rc<QElement>> {
    if let Some(v) = ctx.q.borrow().get(d) {
        return Ok(v.clone());
    }
    let v = match d.edge_keys().first() {
        None => {
            let mut out = QElement::zero();
            for b in ctx.enumerate(d.shape(), 0).iter() {
                out.add_term(QBasis::fully_metric(b.clone()), omega_std(ctx, b)?)?;
            }
            out
        }
        Some(&key) => {
            let sp = operad_c::split(d, key)?;
            let q1 = q_canonical(ctx, &sp.cut.outer)?;
            let q2 = q_canonical(ctx, &sp.cut.inner)?;
            let prod = compose_q_elem(&q1, sp.cut.leaf + 1, &q2)?;
            operad_q::sym_action_elem(&sp.tau.inverse(), &prod)?.scaled(sp.sign)?
        }
    };
    let v = Rc::new(v);
    ctx.q.borrow_mut().insert(d.clone(), v.clone());
    Ok(v)
}

/// `q(D, f⟲∘σ, +) = sgn(σ) · σ ·_Q q(D, f⟲, +)`.
pub fn q_basis(ctx: &Context, x: &CBasis) -> Result<QElement> {
    let base = q_canonical(ctx, &x.diagram)?;
    if x.labeling.is_identity() {
        return Ok((*base).clone());
    }
    operad_q::sym_action_elem(&x.labeling, &base)?.scaled(x.labeling.sign())
}

pub fn q_map(ctx: &Context, x: &CElement) -> Result<QElement> {
    x.map_linear(|b| q_basis(ctx, b))
}

/// Signed wedge of the positive edges of every binary diagram below `top`
/// reachable through diagrams with the same number of positive edges, obtained
/// by carrying the positive edges of `top` along downward moves.
///
/// Every path is followed, so two paths that disagree produce an error rather
/// than a silent choice.
pub fn transport(ctx: &Context, top: &Diagram) -> Result<Rc<BTreeMap<usize, Orientation>>> {
    if let Some(t) = ctx.transport.borrow().get(top) {
        return Ok(t.clone());
    }
    let poset = ctx.poset(top.shape())?;
    let i0 = *poset.index.get(top).ok_or(Error::NotBinary)?;
    let k = poset.positives[i0].len();
    let mut seen: BTreeMap<usize, Orientation> = BTreeMap::new();
    seen.insert(i0, Orientation::from_edges(poset.positives[i0].clone()));
    let mut queue = VecDeque::from([i0]);
    while let Some(i) = queue.pop_front() {
        let here = seen[&i].clone();
        for (j, m) in &poset.down[i] {
            let below = &poset.positives[*j];
            if below.len() != k {
                continue;
            }
            let kept: Vec<EdgeKey> = here.edges.iter().copied().filter(|&e| e != m.site).collect();
            let fresh: Vec<EdgeKey> =
                below.iter().copied().filter(|e| !kept.contains(e)).collect();
            if kept.len() + 1 != here.edges.len()
                || fresh.len() != 1
                || kept.iter().any(|e| !below.contains(e))
            {
                return Err(Error::Precondition(format!(
                    "move {} at {:?} does not exchange one positive edge",
                    m.id, m.site
                )));
            }
            let moved = here.map_keys(|e| if e == m.site { fresh[0] } else { e });
            let moved = moved.normalized().expect("distinct edges");
            match seen.get(j) {
                Some(prev) if *prev != moved => {
                    return Err(Error::Precondition(format!(
                        "transport below {top} depends on the path at {}",
                        poset.elems[*j]
                    )));
                }
                Some(_) => {}
                None => {
                    seen.insert(*j, moved);
                    queue.push_back(*j);
                }
            }
        }
    }
    let t = Rc::new(seen);
    ctx.transport.borrow_mut().insert(top.clone(), t.clone());
    Ok(t)
}

/// Sign of `ω(S, D)` relative to the sorted wedge of the edges of `S`, for
/// `ω_D` the sorted wedge of the edges of `D`.
///
/// `None` when `S_max ≰ D_min` or when `D_min` does not have exactly
/// `|E(D)|` positive edges, the cases in which `S` does not occur in `p(D)`.
pub fn omega_sd(ctx: &Context, s: &Diagram, d: &Diagram) -> Result<Option<i64>> {
    if s.shape() != d.shape() {
        return Err(Error::ShapeMismatch);
    }
    let poset = ctx.poset(d.shape())?;
    let dm = dmin(d);
    let i0 = poset.index[&dm];
    let k = d.edge_count();
    if poset.positives[i0].len() != k || s.degree() != k {
        return Ok(None);
    }
    if poset.positives[i0] != d.edge_keys() {
        return Err(Error::Precondition(format!("positive edges of {dm} are not the edges of {d}")));
    }
    let sm = dmax(s);
    let j = poset.index[&sm];
    if !poset.leq_idx(j, i0) {
        return Ok(None);
    }
    let t = transport(ctx, &dm)?;
    let Some(w) = t.get(&j) else {
        return Err(Error::Precondition(format!("{sm} is below {dm} but not reached")));
    };
    let full = Orientation { sign: xi(ctx, &sm)?, edges: sm.edge_keys() };
    let rest = Orientation::pair_contract(w, &full)?.normalized().expect("distinct edges");
    if rest.edges != s.edge_keys() {
        return Err(Error::Precondition(format!(
            "contracting the positive edges of {sm} does not leave the edges of {s}"
        )));
    }
    Ok(Some(rest.sign))
}

fn p_fully_metric(ctx: &Context, d: &Diagram) -> Result<CElement> {
    let mut out = CElement::zero();
    let k = d.edge_count();
    let poset = ctx.poset(d.shape())?;
    if poset.positives[poset.index[&dmin(d)]].len() != k {
        return Ok(out);
    }
    for s in ctx.enumerate(d.shape(), k).iter() {
        if let Some(sign) = omega_sd(ctx, s, d)? {
            out.add_term(CBasis::canonical(s.clone()), sign)?;
        }
    }
    Ok(out)
}

/// `p` on a canonically labeled generator with the sorted orientation.
pub fn p_canonical(ctx: &Context, x: &QBasis) -> Result<Rc<CElement>> {
    if !x.labeling.is_identity() {
        return Err(Error::Precondition(format!("labeling {:?} is not canonical", x.labeling)));
    }
    if let Some(v) = ctx.p.borrow().get(x) {
        return Ok(v.clone());
    }
    let v = match x.nonmetric().first() {
        None => p_fully_metric(ctx, &x.diagram)?,
        Some(&key) => {
            let sp = split_nonmetric(x, key)?;
            let p1 = p_canonical(ctx, &sp.outer)?;
            let p2 = p_canonical(ctx, &sp.inner)?;
            let prod = compose_c_elem(&p1, sp.leaf + 1, &p2)?;
            operad_c::sym_action_elem(&sp.tau.inverse(), &prod)?.scaled(sp.sign)?
        }
    };
    let v = Rc::new(v);
    ctx.p.borrow_mut().insert(x.clone(), v.clone());
    Ok(v)
}

/// `p(D, f⟲∘σ, g, +) = σ ·_C p(D, f⟲, g, +)`.
pub fn p_basis(ctx: &Context, x: &QBasis) -> Result<CElement> {
    if x.labeling.is_identity() {
        return Ok((*p_canonical(ctx, x)?).clone());
    }
    let base = QBasis { labeling: crate::perm::Perm::identity(x.leaf_count()), ..x.clone() };
    operad_c::sym_action_elem(&x.labeling, &*p_canonical(ctx, &base)?)
}

pub fn p_map(ctx: &Context, x: &QElement) -> Result<CElement> {
    x.map_linear(|b| p_basis(ctx, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::Shape;
    use crate::operad_c::boundary_c;
    use crate::operad_q::boundary_q;
    use crate::perm::Perm;

    fn d(s: &str) -> Diagram {
        Diagram::parse(s).unwrap()
    }

    #[test]
    fn xi_on_two_leaves_and_right_comb() {
        let ctx = Context::new();
        for s in ["(* *)", "{* ; | ; }", "{; | ; *}", "<| ; ; | ; >"] {
            assert_eq!(xi(&ctx, &d(s)).unwrap(), 1, "{s}");
        }
        // the right comb carries e₁∧…∧e_k, e₁ nearest the root, which is the sorted order
        for n in 3..8 {
            let comb = dmax(&Diagram::corolla(Shape::tree(n)).unwrap());
            assert_eq!(omega_std(&ctx, &comb).unwrap(), 1, "{comb}");
        }
    }

    #[test]
    fn q_of_t3_is_two_standard_binaries() {
        let ctx = Context::new();
        let q = q_canonical(&ctx, &Diagram::corolla(Shape::tree(3)).unwrap()).unwrap();
        assert_eq!(q.len(), 2);
        assert!(q.iter().all(|(b, _)| b.is_fully_metric() && b.diagram.is_binary()));
        let q4 = q_canonical(&ctx, &Diagram::corolla(Shape::tree(4)).unwrap()).unwrap();
        assert_eq!(q4.len(), 5);
    }

    #[test]
    fn p_of_corolla_and_binaries() {
        let ctx = Context::new();
        for shape in Shape::all_up_to(6) {
            let c = Diagram::corolla(shape).unwrap();
            let cmin = dmin(&c);
            let cmax = dmax(&c);
            let unmarked = QBasis::new(c.clone(), Perm::identity(shape.leaves()), Vec::new()).unwrap();
            let expect = CElement::single(CBasis::canonical(cmin.clone()), xi(&ctx, &cmin).unwrap());
            assert_eq!(p_basis(&ctx, &unmarked).unwrap(), expect, "{shape}");
            for b in ctx.enumerate(shape, 0).iter() {
                let got = p_basis(&ctx, &QBasis::fully_metric(b.clone())).unwrap();
                if *b == cmax {
                    let w = omega_std(&ctx, b).unwrap();
                    // p(B, ω^std) = (c, +1)
                    assert_eq!(got.scaled(w).unwrap(), CElement::single(CBasis::canonical(c.clone()), 1));
                } else {
                    assert!(got.is_zero(), "{b}");
                }
            }
        }
    }

    #[test]
    fn chain_maps_and_pq_small() {
        let ctx = Context::new();
        for shape in Shape::all_up_to(5) {
            let n = shape.leaves();
            for deg in 0..=n - 2 {
                for dg in Diagram::enumerate(shape, deg) {
                    let x = CElement::single(CBasis::canonical(dg.clone()), 1);
                    let qx = q_map(&ctx, &x).unwrap();
                    assert_eq!(
                        boundary_q(&qx).unwrap(),
                        q_map(&ctx, &boundary_c(&x).unwrap()).unwrap(),
                        "q on {dg}"
                    );
                    assert_eq!(p_map(&ctx, &qx).unwrap(), x, "pq on {dg}");
                }
                for y in QBasis::enumerate(shape, deg) {
                    let y = QElement::single(y, 1);
                    assert_eq!(
                        boundary_c(&p_map(&ctx, &y).unwrap()).unwrap(),
                        p_map(&ctx, &boundary_q(&y).unwrap()).unwrap(),
                        "p on {y:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn labeled_generators_round_trip() {
        let ctx = Context::new();
        let dg = d("{(* *) ; | ; *}");
        for s in Perm::all(4) {
            let x = CElement::single(CBasis::new(dg.clone(), s).unwrap(), 1);
            assert_eq!(p_map(&ctx, &q_map(&ctx, &x).unwrap()).unwrap(), x);
        }
    }
}
