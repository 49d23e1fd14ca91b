//! Coassociativity, the support formula and rotation symmetry of the diagonals.

use std::collections::BTreeSet;

use pairahedra::diagonal::{
    coassociativity, delta_c, delta_q_basis, equivariance_defect, noncoassociativity_witness, support, support_formula,
};
use pairahedra::tamari::{dmax, dmin};
use pairahedra::{CBasis, CElement, Context, Diagram, Kind, Perm, QBasis, QElement, Shape};

fn corolla(shape: Shape) -> CElement {
    CElement::single(CBasis::canonical(Diagram::corolla(shape).unwrap()), 1)
}

fn inner_shapes(max: usize) -> impl Iterator<Item = Shape> {
    Shape::all_up_to(max).into_iter().filter(|s| s.kind == Kind::Inner)
}

#[test]
fn serre_diagonal_is_coassociative_up_to_six_leaves() {
    for shape in Shape::all_up_to(6) {
        for deg in 0..=shape.leaves() - 2 {
            for y in QBasis::enumerate(shape, deg) {
                let (l, r) = coassociativity(&QElement::single(y.clone(), 1), delta_q_basis).unwrap();
                assert_eq!(l, r, "{y:?}");
            }
        }
    }
}

#[test]
fn support_formula_holds_up_to_six_leaves() {
    let ctx = Context::new();
    for shape in Shape::all_up_to(6) {
        let got = support(&delta_c(&ctx, &corolla(shape)).unwrap());
        assert_eq!(got, support_formula(&ctx, shape).unwrap(), "{shape}");
    }
}

#[test]
fn cellular_diagonal_is_not_coassociative() {
    let ctx = Context::new();
    assert_eq!(noncoassociativity_witness(&ctx, 3).unwrap().map(|w| w.0), None);
    let (shape, diff) = noncoassociativity_witness(&ctx, 6).unwrap().expect("a witness");
    assert!(!diff.is_zero());
    assert_eq!(shape.leaves(), 4, "{shape}");
}

#[test]
fn rotation_exchanges_extremes_and_preserves_the_order() {
    let ctx = Context::new();
    for shape in inner_shapes(7) {
        let p = ctx.poset(shape).unwrap();
        let rot = Shape::inner(shape.b, shape.a);
        let q = ctx.poset(rot).unwrap();
        for deg in 0..=shape.leaves() - 2 {
            for s in Diagram::enumerate(shape, deg) {
                let r = s.rotate180().unwrap();
                assert_eq!(dmax(&r), dmax(&s).rotate180().unwrap(), "{s}");
                assert_eq!(dmin(&r), dmin(&s).rotate180().unwrap(), "{s}");
            }
        }
        for a in &p.elems {
            let ra = a.rotate180().unwrap();
            for b in &p.elems {
                assert_eq!(p.leq(a, b).unwrap(), q.leq(&ra, &b.rotate180().unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn diagonal_support_commutes_with_rotation() {
    let ctx = Context::new();
    for shape in inner_shapes(6) {
        let rotated: BTreeSet<_> = support(&delta_c(&ctx, &corolla(shape)).unwrap())
            .into_iter()
            .map(|(a, b)| (a.rotate180().unwrap(), b.rotate180().unwrap()))
            .collect();
        let other = support(&delta_c(&ctx, &corolla(Shape::inner(shape.b, shape.a))).unwrap());
        assert_eq!(rotated, other, "{shape}");
    }
}

#[test]
fn cellular_diagonal_is_equivariant() {
    let ctx = Context::new();
    for shape in Shape::all_up_to(5) {
        for deg in 0..=shape.leaves() - 2 {
            for d in Diagram::enumerate(shape, deg) {
                let x = CElement::single(CBasis::canonical(d.clone()), 1);
                for s in Perm::all(shape.leaves()) {
                    assert!(equivariance_defect(&ctx, &s, &x).unwrap().is_zero(), "{d} {s:?}");
                }
            }
        }
    }
}
