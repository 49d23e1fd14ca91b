//! Standard orientations and the transported orientations `ω(S, D)`.

use pairahedra::orientation::Orientation;
use pairahedra::tamari::{dmax, dmin};
use pairahedra::transfer::{omega_sd, omega_std, transport, xi, xi_cut};
use pairahedra::{Context, Diagram, Shape};

#[test]
fn standard_orientation_of_the_inner_maximum() {
    let ctx = Context::new();
    for k in 0..=3 {
        for l in 0..=3 {
            let b = dmax(&Diagram::corolla(Shape::inner(k, l)).unwrap());
            // right-arm edges avoid the left thick leaf 0; along each arm the
            // edge nearest the center has the most leaves behind it
            let mut right: Vec<_> = b.edge_keys().into_iter().filter(|e| !e.contains(0)).collect();
            let mut left: Vec<_> = b.edge_keys().into_iter().filter(|e| e.contains(0)).collect();
            right.sort_by_key(|e| std::cmp::Reverse(e.len()));
            left.sort_by_key(|e| std::cmp::Reverse(e.len()));
            assert_eq!((right.len(), left.len()), (k, l));
            let mut edges = right;
            edges.extend(left);
            let sign = if l % 2 == 0 { 1 } else { -1 };
            let expect = Orientation { sign, edges }.normalized().unwrap();
            assert_eq!(omega_std(&ctx, &b).unwrap(), expect.sign, "I_{{{k},{l}}}");
        }
    }
}

#[test]
fn xi_does_not_depend_on_the_first_cut() {
    let ctx = Context::new();
    for shape in Shape::all_up_to(7) {
        for b in Diagram::enumerate(shape, 0) {
            let s = xi(&ctx, &b).unwrap();
            for key in b.edge_keys() {
                assert_eq!(xi_cut(&ctx, &b, key).unwrap(), s, "{b} cut at {key:?}");
            }
        }
    }
}

#[test]
fn transport_is_path_independent() {
    let ctx = Context::new();
    for shape in Shape::all_up_to(7) {
        for b in Diagram::enumerate(shape, 0) {
            transport(&ctx, &b).unwrap_or_else(|e| panic!("{b}: {e:?}"));
        }
    }
}

/// `ω(c_min, c) = ξ_{c_min}`, and `ω(c, c_max) = +1` once `c_max` carries its
/// standard orientation instead of the sorted wedge.
#[test]
fn corolla_values_of_omega() {
    let ctx = Context::new();
    for shape in Shape::all_up_to(7) {
        let c = Diagram::corolla(shape).unwrap();
        let (cmin, cmax) = (dmin(&c), dmax(&c));
        assert_eq!(omega_sd(&ctx, &cmin, &c).unwrap(), Some(xi(&ctx, &cmin).unwrap()), "{shape}");
        assert_eq!(omega_sd(&ctx, &c, &cmax).unwrap(), Some(omega_std(&ctx, &cmax).unwrap()), "{shape}");
    }
}
