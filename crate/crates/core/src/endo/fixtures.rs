//! Small structures used by the tests and shipped with the command line tool.
//!
//! Every constructor checks the structure relations on all corollas with at
//! most [`CHECK_LEAVES`] leaves before returning.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::map::{rational, GradedModule, MultiMap, Target};
use super::structure::StructureSet;
use crate::diagram::Shape;
use crate::error::{Error, Result};

pub const CHECK_LEAVES: usize = 5;

/// Run [`StructureSet::validate`] and every structure relation up to
/// `max_leaves`, reporting the first failing shape.
pub fn check(s: &StructureSet, max_leaves: usize) -> Result<()> {
    s.validate()?;
    if let Some((shape, r)) = s.failing_relations(max_leaves)?.into_iter().next() {
        return Err(Error::Precondition(format!(
            "structure relation fails at {shape} ({} nonzero constants)",
            r.len()
        )));
    }
    Ok(())
}

fn module(names: &[&str], degrees: &[i64]) -> GradedModule {
    GradedModule::new(names.iter().map(|&n| String::from(n)).collect(), degrees.to_vec())
        .expect("fixture modules are nonempty")
}

fn put(s: &mut StructureSet, shape: Shape, entries: &[(&[usize], usize, i64)]) {
    let f = s.map_mut(shape);
    for &(i, o, c) in entries {
        f.add_term(i.to_vec(), o, rational(c));
    }
}

/// `ℚ[x]/(x²)` with `|x| = 0`, the pairing `⟨a,b⟩` = coefficient of `x` in
/// `ab`, the bimodule maps given by multiplication and all higher maps zero.
pub fn frobenius() -> Result<StructureSet> {
    let mut s = StructureSet::zero_differential(module(&["1", "x"], &[0, 0]));
    let product: &[(&[usize], usize, i64)] = &[(&[0, 0], 0, 1), (&[0, 1], 1, 1), (&[1, 0], 1, 1)];
    put(&mut s, Shape::tree(2), product);
    put(&mut s, Shape::module(1, 0), product);
    put(&mut s, Shape::module(0, 1), product);
    put(&mut s, Shape::inner(0, 0), &[(&[0, 1], 0, 1), (&[1, 0], 0, 1)]);
    check(&s, CHECK_LEAVES)?;
    Ok(s)
}

/// `span{u, v}` with `|u| = 0`, `|v| = 1`, `d(u) = v`, no products, and the
/// pairing `⟨u,v⟩ = 1`, `⟨v,u⟩ = −1` of degree `−1`.
pub fn two_term() -> Result<StructureSet> {
    let mut d = MultiMap::zero(1, Target::Module, 1);
    d.add_term(vec![0], 1, rational(1));
    let mut s = StructureSet::new(module(&["u", "v"], &[0, 1]), d);
    s.rho_degree = -1;
    s.has_mu = true;
    s.has_lambda = true;
    put(&mut s, Shape::inner(0, 0), &[(&[0, 1], 0, 1), (&[1, 0], 0, -1)]);
    check(&s, CHECK_LEAVES)?;
    Ok(s)
}

/// `span{x, y}` with `|x| = 0`, `|y| = −1` and the single nonzero product
/// `μ₃(x,x,x) = y`, acting on itself by `λ_{j,k} = μ_{j+k+1}`.
pub fn mu3_toy() -> Result<StructureSet> {
    let mut s = StructureSet::zero_differential(module(&["x", "y"], &[0, -1]));
    let m3: &[(&[usize], usize, i64)] = &[(&[0, 0, 0], 1, 1)];
    s.has_mu = true;
    put(&mut s, Shape::tree(3), m3);
    for (a, b) in [(2, 0), (1, 1), (0, 2)] {
        put(&mut s, Shape::module(a, b), m3);
    }
    check(&s, CHECK_LEAVES)?;
    Ok(s)
}

/// `ℚ⟨e, x, y⟩` with strict unit `e`, `|x| = 0`, `|y| = −1` and
/// `μ₃(x,x,x) = y`. Both `μ₂` and `μ₃` are nonzero; the bimodule maps repeat
/// the products and there is no pairing.
pub fn unital_toy() -> Result<StructureSet> {
    let mut s = StructureSet::zero_differential(module(&["e", "x", "y"], &[0, 0, -1]));
    for shape in [Shape::tree(2), Shape::module(1, 0), Shape::module(0, 1)] {
        let f = s.map_mut(shape);
        for a in 0..3 {
            f.add_term(vec![0, a], a, rational(1));
            if a != 0 {
                f.add_term(vec![a, 0], a, rational(1));
            }
        }
    }
    for shape in [Shape::tree(3), Shape::module(2, 0), Shape::module(1, 1), Shape::module(0, 2)] {
        put(&mut s, shape, &[(&[1, 1, 1], 2, 1)]);
    }
    check(&s, CHECK_LEAVES)?;
    Ok(s)
}

/// The shipped fixtures by name.
pub fn by_name(name: &str) -> Result<StructureSet> {
    match name {
        "frobenius" => frobenius(),
        "two-term" => two_term(),
        "mu3-toy" => mu3_toy(),
        "unital-toy" => unital_toy(),
        _ => Err(Error::MissingMap(format!("no fixture named {name}"))),
    }
}

pub fn names() -> Vec<&'static str> {
    vec!["frobenius", "two-term", "mu3-toy", "unital-toy"]
}
