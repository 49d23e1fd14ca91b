//! Unsigned supports of the diagonal on small inner-product corollas,
//! transcribed from the pictures of the cyclic case.

use std::collections::BTreeSet;

use pairahedra::diagonal::{delta_c, delta_c_mod_higher, support, support_formula};
use pairahedra::diagram::{Diagram, Shape};
use pairahedra::operad_c::{CBasis, CElement};
use pairahedra::tamari::{dmax, dmin};
use pairahedra::Context;

fn d(s: &str) -> Diagram {
    Diagram::parse(s).unwrap()
}

/// Left arm carrying one vertex with upper forest `f`.
fn left(f: &str) -> String {
    format!("<{{ ; | ; {f}}} ; ; | ; >")
}

/// Right arm carrying one vertex with upper forest `f`.
fn right(f: &str) -> String {
    format!("<| ; ; {{{f} ; | ; }} ; >")
}

fn inner_left(arm: &str) -> String {
    format!("<{arm} ; ; | ; >")
}

fn inner_right(arm: &str) -> String {
    format!("<| ; ; {arm} ; >")
}

fn reduced(shape: Shape) -> BTreeSet<(Diagram, Diagram)> {
    let ctx = Context::new();
    let c = CElement::single(CBasis::canonical(Diagram::corolla(shape).unwrap()), 1);
    support(&delta_c_mod_higher(&ctx, &c).unwrap())
}

fn pairs(list: &[(String, String)]) -> BTreeSet<(Diagram, Diagram)> {
    list.iter().map(|(a, b)| (d(a), d(b))).collect()
}

fn corolla(shape: Shape) -> Diagram {
    Diagram::corolla(shape).unwrap()
}

#[test]
fn pairing_is_grouplike_and_small_corollas_vanish() {
    let c = corolla(Shape::inner(0, 0));
    assert_eq!(reduced(Shape::inner(0, 0)), [(c.clone(), c)].into_iter().collect());
    for (a, b) in [(1, 0), (0, 1), (1, 1)] {
        assert!(reduced(Shape::inner(a, b)).is_empty());
    }
}

/// The full diagonal of the pentagon `I_{2,0}`: the two primitive terms and
/// four products of edges, where the five edges of the pentagon all occur,
/// one edge occurs on both sides and one right factor occurs twice.
#[test]
fn full_diagonal_of_the_pentagon() {
    let ctx = Context::new();
    let c = corolla(Shape::inner(2, 0));
    let got = support(&delta_c(&ctx, &CElement::single(CBasis::canonical(c.clone()), 1)).unwrap());
    assert_eq!(got.len(), 6);
    assert!(got.contains(&(dmin(&c), c.clone())));
    assert!(got.contains(&(c.clone(), dmax(&c))));
    let edges: Vec<_> = got.iter().filter(|(a, b)| a.degree() == 1 && b.degree() == 1).collect();
    assert_eq!(edges.len(), 4);
    let lefts: BTreeSet<_> = edges.iter().map(|(a, _)| a.clone()).collect();
    let rights: BTreeSet<_> = edges.iter().map(|(_, b)| b.clone()).collect();
    let all: BTreeSet<_> = lefts.union(&rights).cloned().collect();
    let pentagon: BTreeSet<_> = Diagram::enumerate(Shape::inner(2, 0), 1).into_iter().collect();
    assert_eq!(all, pentagon);
    assert_eq!(lefts.intersection(&rights).count(), 1);
    assert_eq!((lefts.len(), rights.len()), (3, 3));

    // the left partners of an edge D, followed by D itself, form an
    // increasing path of edges starting at the minimum of the pentagon
    let mut reach_max = 0;
    for r in &rights {
        let mut partners: Vec<Diagram> =
            edges.iter().filter(|(_, b)| b == r).map(|(a, _)| a.clone()).collect();
        let mut at = dmin(&c);
        while let Some(k) = partners.iter().position(|e| dmin(e) == at) {
            at = dmax(&partners.swap_remove(k));
        }
        assert!(partners.is_empty(), "{r}");
        assert_eq!(dmin(r), at, "{r}");
        if dmax(r) == dmax(&c) {
            reach_max += 1;
        }
    }
    assert_eq!(reach_max, 2);
}

#[test]
fn i20() {
    assert_eq!(reduced(Shape::inner(2, 0)), pairs(&[(left("* *"), right("* *"))]));
}

#[test]
fn i21() {
    let expect = pairs(&[
        (inner_left("{* ; | ; * *}"), "<{* ; | ; } ; ; {* * ; | ; } ; >".into()),
        ("<{ ; | ; * *} ; ; { ; | ; *} ; >".into(), inner_right("{* * ; | ; *}")),
    ]);
    assert_eq!(reduced(Shape::inner(2, 1)), expect);
}

#[test]
fn i30() {
    let expect = pairs(&[
        (left("* * *"), right("* (* *)")),
        (left("* * *"), inner_right("{* ; {* * ; | ; } ; }")),
        (inner_left("{ ; { ; | ; * *} ; *}"), right("* * *")),
        (left("(* *) *"), right("* * *")),
    ]);
    assert_eq!(reduced(Shape::inner(3, 0)), expect);
}

/// The drawing lists twelve terms. The computation gives these twelve and six
/// more, all of them allowed by the support formula (`S_max ≤ T_min`), so the
/// drawn list is incomplete. The test pins the computed support exactly.
#[test]
fn i40() {
    let r1 = right("* (* (* *))");
    let r2 = inner_right("{* ; {* (* *) ; | ; } ; }");
    let r3 = inner_right("{* ; {* ; {* * ; | ; } ; } ; }");
    let m1 = left("((* *) *) *");
    let m2 = inner_left("{ ; { ; | ; (* *) *} ; *}");
    let m3 = inner_left("{ ; { ; { ; | ; * *} ; *} ; *}");
    let b = inner_right("{* ; {* * * ; | ; } ; }");
    let mb = inner_left("{ ; { ; | ; * * *} ; *}");
    let g = inner_right("{* * ; {* * ; | ; } ; }");
    let mg = inner_left("{ ; { ; | ; * *} ; * *}");
    let drawn = pairs(&[
        (left("* * * *"), r1),
        (left("* * * *"), r2),
        (left("* * * *"), r3),
        (left("(* * *) *"), b.clone()),
        (mb.clone(), right("* (* * *)")),
        (left("* (* *) *"), b.clone()),
        (mb.clone(), right("* (* *) *")),
        (left("(* *) * *"), g.clone()),
        (mg.clone(), right("* * (* *)")),
        (m1, right("* * * *")),
        (m2, right("* * * *")),
        (m3, right("* * * *")),
    ]);
    let undrawn = pairs(&[
        (left("* (* *) *"), right("* (* * *)")),
        (left("(* * *) *"), right("* (* *) *")),
        (left("(* * *) *"), right("* (* * *)")),
        (left("(* *) * *"), right("* * (* *)")),
        (mb, b),
        (mg, g),
    ]);
    let got = reduced(Shape::inner(4, 0));
    assert!(drawn.is_subset(&got));
    assert_eq!(got.difference(&drawn).cloned().collect::<BTreeSet<_>>(), undrawn);
    let formula = support_formula(&Context::new(), Shape::inner(4, 0)).unwrap();
    assert!(undrawn.is_subset(&formula));
}
