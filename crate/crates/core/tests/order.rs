//! The order on binary diagrams, checked by brute force against the poset.

use std::collections::{BTreeMap, BTreeSet};

use pairahedra::tamari::{classify_edges, dmax, dmin, positive_count, Poset, Sign};
use pairahedra::{Context, Diagram, Shape};

/// For every diagram of `shape`, the set of binary diagrams that contract to it.
fn refinements(shape: Shape) -> BTreeMap<Diagram, BTreeSet<Diagram>> {
    let mut out: BTreeMap<Diagram, BTreeSet<Diagram>> = BTreeMap::new();
    for b in Diagram::enumerate(shape, 0) {
        let keys = b.edge_keys();
        for mask in 0u32..1 << keys.len() {
            let xs: Vec<_> = (0..keys.len()).filter(|i| mask >> i & 1 == 1).map(|i| keys[i]).collect();
            out.entry(b.contract_all(&xs).unwrap()).or_default().insert(b.clone());
        }
    }
    out
}

#[test]
fn order_is_antisymmetric_up_to_eight_leaves() {
    for shape in Shape::all_up_to(8) {
        let p = Poset::build(shape).expect("no directed cycle");
        for i in 0..p.len() {
            for j in 0..p.len() {
                if i != j {
                    assert!(!(p.leq_idx(i, j) && p.leq_idx(j, i)), "{shape}: {} ~ {}", p.elems[i], p.elems[j]);
                }
            }
        }
    }
}

#[test]
fn min_and_max_refinements_are_unique_and_match() {
    for shape in Shape::all_up_to(7) {
        let p = Poset::build(shape).unwrap();
        for (d, refs) in refinements(shape) {
            let idx: Vec<usize> = refs.iter().map(|b| p.index[b]).collect();
            let minimal: Vec<usize> =
                idx.iter().copied().filter(|&i| idx.iter().all(|&j| j == i || !p.leq_idx(j, i))).collect();
            let maximal: Vec<usize> =
                idx.iter().copied().filter(|&i| idx.iter().all(|&j| j == i || !p.leq_idx(i, j))).collect();
            assert_eq!(minimal.len(), 1, "{d}");
            assert_eq!(maximal.len(), 1, "{d}");
            assert!(idx.iter().all(|&j| p.leq_idx(minimal[0], j) && p.leq_idx(j, maximal[0])), "{d}");
            assert_eq!(p.elems[minimal[0]], dmin(&d), "{d}");
            assert_eq!(p.elems[maximal[0]], dmax(&d), "{d}");
        }
    }
}

#[test]
fn positive_count_is_monotone() {
    let mut level_moves = 0;
    for shape in Shape::all_up_to(7) {
        let p = Poset::build(shape).unwrap();
        for (i, ups) in p.up.iter().enumerate() {
            for (j, _) in ups {
                let (a, b) = (positive_count(&p.elems[i]).unwrap(), positive_count(&p.elems[*j]).unwrap());
                assert!(a <= b, "{} → {}", p.elems[i], p.elems[*j]);
                if a == b {
                    level_moves += 1;
                }
            }
        }
    }
    // some covers keep the count, so only the weak inequality holds
    assert!(level_moves > 0);
}

#[test]
fn corolla_extremes_are_the_unique_all_negative_and_all_positive_binaries() {
    for shape in Shape::all_up_to(7) {
        let c = Diagram::corolla(shape).unwrap();
        let signs = |b: &Diagram| classify_edges(b).unwrap().into_iter().map(|(_, s)| s).collect::<Vec<_>>();
        let all_neg: Vec<_> =
            Diagram::enumerate(shape, 0).into_iter().filter(|b| signs(b).iter().all(|&s| s == Sign::Neg)).collect();
        let all_pos: Vec<_> =
            Diagram::enumerate(shape, 0).into_iter().filter(|b| signs(b).iter().all(|&s| s == Sign::Pos)).collect();
        assert_eq!(all_neg, vec![dmin(&c)], "{shape}");
        assert_eq!(all_pos, vec![dmax(&c)], "{shape}");
        let p = Poset::build(shape).unwrap();
        assert_eq!(p.minima(), vec![p.index[&dmin(&c)]]);
        assert_eq!(p.maxima(), vec![p.index[&dmax(&c)]]);
    }
}

#[test]
fn inserted_edges_carry_the_expected_sign() {
    for shape in Shape::all_up_to(7) {
        for deg in 0..=shape.leaves() - 2 {
            for d in Diagram::enumerate(shape, deg) {
                let own: BTreeSet<_> = d.edge_keys().into_iter().collect();
                for (b, want) in [(dmin(&d), Sign::Neg), (dmax(&d), Sign::Pos)] {
                    for (k, s) in classify_edges(&b).unwrap() {
                        if !own.contains(&k) {
                            assert_eq!(s, want, "{d} in {b}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn context_order_agrees_with_the_poset() {
    let ctx = Context::new();
    let shape = Shape::inner(2, 1);
    let p = Poset::build(shape).unwrap();
    for a in &p.elems {
        for b in &p.elems {
            assert_eq!(ctx.leq(a, b).unwrap(), p.leq(a, b).unwrap());
        }
    }
}
