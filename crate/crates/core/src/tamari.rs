//! The partial order on binary diagrams generated by six local moves.
//!
//! Every edge of a binary diagram sits in exactly one local configuration.
//! Contracting it leaves a vertex with three children, which has exactly two
//! binary expansions. The move between them goes up when the contracted edge
//! is negative and down when it is positive. The moves, lower side first:
//!
//! 1. `((A B) C) → (A (B C))`
//! 2. `{a ; {; | ; b} ; } → {; {a ; | ; } ; b}`
//! 3. `{(A B) ; | ; } → {A ; {B ; | ; } ; }`
//! 4. `{; {; | ; X} ; Y} → {; | ; (X Y)}`
//! 5. innermost left-arm vertex holding an upper tree `X` → innermost
//!    right-arm vertex holding `X`
//! 6. innermost right-arm vertex holding a lower tree `Y` → innermost
//!    left-arm vertex holding `Y`
//!
//! Moves 2 to 4 also act inside the arms of inner diagrams.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::diagram::{Color, Diagram, EdgeKey, Kind, Node, Shape, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

/// One elementary move. Every key other than `site` is carried over unchanged;
/// `site` becomes `new_site`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveStep {
    pub id: u8,
    pub site: EdgeKey,
    pub new_site: EdgeKey,
    pub direction: Direction,
}

impl MoveStep {
    pub fn map_key(&self, k: EdgeKey) -> EdgeKey {
        if k == self.site {
            self.new_site
        } else {
            k
        }
    }

    pub fn reversed(&self) -> MoveStep {
        MoveStep {
            id: self.id,
            site: self.new_site,
            new_site: self.site,
            direction: match self.direction {
                Direction::Up => Direction::Down,
                Direction::Down => Direction::Up,
            },
        }
    }
}

/// Kind of the vertex owning a children list.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Owner {
    Thin,
    Module,
    Center,
}

fn owner_of(d: &Diagram, parent_path: &[usize]) -> Owner {
    if parent_path.is_empty() {
        return match d.kind() {
            Kind::Tree => Owner::Thin,
            Kind::Module => Owner::Module,
            Kind::Inner => Owner::Center,
        };
    }
    let (last, pp) = parent_path.split_last().unwrap();
    match &d.children_at(pp)[*last] {
        Node::Vertex(v) if v.color == Color::Thick => Owner::Module,
        _ => Owner::Thin,
    }
}

/// Sign of every edge of a binary diagram, in key order.
pub fn classify_edges(b: &Diagram) -> Result<Vec<(EdgeKey, Sign)>> {
    if !b.is_binary() {
        return Err(Error::NotBinary);
    }
    let mut out = Vec::new();
    for e in b.edges() {
        let (idx, parent) = e.path.split_last().unwrap();
        let sign = match e.color {
            Color::Thin => {
                let siblings = b.children_at(parent);
                match owner_of(b, parent) {
                    Owner::Thin => {
                        if *idx == 0 {
                            Sign::Neg
                        } else {
                            Sign::Pos
                        }
                    }
                    Owner::Module => {
                        let t = siblings.iter().position(|c| c.color() == Color::Thick).unwrap();
                        if *idx < t {
                            Sign::Neg
                        } else {
                            Sign::Pos
                        }
                    }
                    Owner::Center => unreachable!("binary central vertex has no thin children"),
                }
            }
            Color::Thick => {
                let own = b.children_at(&e.path);
                if own[0].color() == Color::Thin {
                    Sign::Pos
                } else {
                    Sign::Neg
                }
            }
        };
        out.push((e.key, sign));
    }
    Ok(out)
}

pub fn positive_edges(b: &Diagram) -> Result<Vec<EdgeKey>> {
    Ok(classify_edges(b)?.into_iter().filter(|(_, s)| *s == Sign::Pos).map(|(k, _)| k).collect())
}

pub fn positive_count(b: &Diagram) -> Result<usize> {
    Ok(positive_edges(b)?.len())
}

fn move_id(b: &Diagram, key: EdgeKey) -> u8 {
    let e = b.edge(key).expect("edge exists");
    let (idx, parent) = e.path.split_last().unwrap();
    match (e.color, owner_of(b, parent)) {
        (Color::Thin, Owner::Thin) => 1,
        (Color::Thin, _) => 3,
        (Color::Thick, Owner::Center) => {
            if *idx == 0 {
                5
            } else {
                6
            }
        }
        (Color::Thick, _) => {
            // on the lower side of moves 2 and 4 the upper vertex holds its
            // tree on the right; the lower vertex's side tells them apart
            if b.children_at(parent)[0].color() == Color::Thin {
                2
            } else {
                4
            }
        }
    }
}

/// The other binary expansion of `b / key`.
pub fn flip(b: &Diagram, key: EdgeKey) -> Result<(Diagram, EdgeKey)> {
    let c = b.contract(key)?;
    let mut others: Vec<(Diagram, EdgeKey)> =
        c.expansions().into_iter().filter(|(d, k)| !(d == b && *k == key)).collect();
    debug_assert_eq!(others.len(), 1);
    Ok(others.pop().expect("flip partner"))
}

fn moves(b: &Diagram, wanted: Sign) -> Result<Vec<(Diagram, MoveStep)>> {
    let mut out = Vec::new();
    for (k, s) in classify_edges(b)? {
        if s != wanted {
            continue;
        }
        let (d2, k2) = flip(b, k)?;
        let id = if wanted == Sign::Neg { move_id(b, k) } else { move_id(&d2, k2) };
        let direction = if wanted == Sign::Neg { Direction::Up } else { Direction::Down };
        out.push((d2, MoveStep { id, site: k, new_site: k2, direction }));
    }
    Ok(out)
}

/// All elementary upward moves from `b`.
pub fn covers(b: &Diagram) -> Result<Vec<(Diagram, MoveStep)>> {
    moves(b, Sign::Neg)
}

/// All elementary downward moves from `b`.
pub fn lower_covers(b: &Diagram) -> Result<Vec<(Diagram, MoveStep)>> {
    moves(b, Sign::Pos)
}

fn left_comb(mut items: Vec<Node>) -> Node {
    let mut acc = items.remove(0);
    for x in items {
        acc = Node::Vertex(Vertex { color: Color::Thin, children: alloc::vec![acc, x] });
    }
    acc
}

fn right_comb(mut items: Vec<Node>) -> Node {
    let mut acc = items.pop().unwrap();
    while let Some(x) = items.pop() {
        acc = Node::Vertex(Vertex { color: Color::Thin, children: alloc::vec![x, acc] });
    }
    acc
}

fn thick(children: Vec<Node>) -> Node {
    Node::Vertex(Vertex { color: Color::Thick, children })
}

fn resolve(children: &[Node], owner: Owner, max: bool) -> Vec<Node> {
    let kids: Vec<Node> = children
        .iter()
        .map(|c| match c {
            Node::Leaf(_) => c.clone(),
            Node::Vertex(v) => {
                let o = if v.color == Color::Thick { Owner::Module } else { Owner::Thin };
                Node::Vertex(Vertex { color: v.color, children: resolve(&v.children, o, max) })
            }
        })
        .collect();
    if kids.len() == 2 {
        return kids;
    }
    match owner {
        Owner::Thin => {
            let n = if max { right_comb(kids) } else { left_comb(kids) };
            match n {
                Node::Vertex(v) => v.children,
                Node::Leaf(_) => unreachable!(),
            }
        }
        Owner::Module => {
            let t = kids.iter().position(|c| c.color() == Color::Thick).unwrap();
            let mut left = kids;
            let mut right = left.split_off(t + 1);
            let core = left.pop().unwrap();
            if !max {
                // right trees stacked one per vertex, left trees combed at the bottom
                let mut node = core;
                let last = right.pop();
                for r in right {
                    node = thick(alloc::vec![node, r]);
                }
                match (left.is_empty(), last) {
                    (true, Some(r)) => alloc::vec![node, r],
                    (false, Some(r)) => alloc::vec![left_comb(left), thick(alloc::vec![node, r])],
                    (false, None) => alloc::vec![left_comb(left), node],
                    (true, None) => unreachable!(),
                }
            } else {
                let first = if left.is_empty() { None } else { Some(left.remove(0)) };
                let mut node = core;
                while let Some(l) = left.pop() {
                    node = thick(alloc::vec![l, node]);
                }
                match (first, right.is_empty()) {
                    (Some(l), true) => alloc::vec![l, node],
                    (Some(l), false) => alloc::vec![thick(alloc::vec![l, node]), right_comb(right)],
                    (None, false) => alloc::vec![node, right_comb(right)],
                    (None, true) => unreachable!(),
                }
            }
        }
        Owner::Center => {
            let t = kids.iter().skip(1).position(|c| c.color() == Color::Thick).unwrap() + 1;
            let mut it = kids.into_iter();
            let a = it.next().unwrap();
            let up: Vec<Node> = it.by_ref().take(t - 1).collect();
            let b = it.next().unwrap();
            let down: Vec<Node> = it.collect();
            if !max {
                let mut left = a;
                for u in up {
                    left = thick(alloc::vec![left, u]);
                }
                let mut right = b;
                for x in down {
                    right = thick(alloc::vec![right, x]);
                }
                alloc::vec![left, right]
            } else {
                let mut right = b;
                for u in up.into_iter().rev() {
                    right = thick(alloc::vec![u, right]);
                }
                let mut left = a;
                for x in down.into_iter().rev() {
                    left = thick(alloc::vec![x, left]);
                }
                alloc::vec![left, right]
            }
        }
    }
}

fn root_owner(d: &Diagram) -> Owner {
    match d.kind() {
        Kind::Tree => Owner::Thin,
        Kind::Module => Owner::Module,
        Kind::Inner => Owner::Center,
    }
}

/// The minimal binary diagram refining `d`, built by inserting negative edges.
pub fn dmin(d: &Diagram) -> Diagram {
    Diagram::new(d.kind(), resolve(d.root(), root_owner(d), false)).expect("valid refinement")
}

/// The maximal binary diagram refining `d`, built by inserting positive edges.
pub fn dmax(d: &Diagram) -> Diagram {
    Diagram::new(d.kind(), resolve(d.root(), root_owner(d), true)).expect("valid refinement")
}

/// Binary diagrams of one shape class with their cover relation.
#[derive(Clone, Debug)]
pub struct Poset {
    pub shape: Shape,
    pub elems: Vec<Diagram>,
    pub index: BTreeMap<Diagram, usize>,
    /// `up[i]`: upward covers as `(target, move)`.
    pub up: Vec<Vec<(usize, MoveStep)>>,
    pub down: Vec<Vec<(usize, MoveStep)>>,
    pub positives: Vec<Vec<EdgeKey>>,
    /// `closure[i]`: bitset of all `j` with `i ≤ j`.
    closure: Vec<Vec<u64>>,
}

impl Poset {
    /// Build the cover graph. Fails if the move relation has a directed cycle.
    pub fn build(shape: Shape) -> Result<Poset> {
        let elems = Diagram::enumerate(shape, 0);
        let index: BTreeMap<Diagram, usize> =
            elems.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let mut up = alloc::vec![Vec::new(); elems.len()];
        let mut down = alloc::vec![Vec::new(); elems.len()];
        let mut positives = Vec::with_capacity(elems.len());
        for (i, b) in elems.iter().enumerate() {
            positives.push(positive_edges(b)?);
            for (c, m) in covers(b)? {
                let j = index[&c];
                down[j].push((i, m.reversed()));
                up[i].push((j, m));
            }
        }
        let mut p = Poset { shape, elems, index, up, down, positives, closure: Vec::new() };
        let order = p.topological_order().ok_or_else(|| {
            Error::Precondition(alloc::format!("move relation on {shape} has a cycle"))
        })?;
        p.closure = p.upward_closure(&order);
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Kahn's algorithm along upward covers; `None` on a cycle.
    pub fn topological_order(&self) -> Option<Vec<usize>> {
        let n = self.len();
        let mut indeg = alloc::vec![0usize; n];
        for outs in &self.up {
            for (j, _) in outs {
                indeg[*j] += 1;
            }
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(i) = queue.pop_front() {
            order.push(i);
            for (j, _) in &self.up[i] {
                indeg[*j] -= 1;
                if indeg[*j] == 0 {
                    queue.push_back(*j);
                }
            }
        }
        (order.len() == n).then_some(order)
    }

    fn upward_closure(&self, order: &[usize]) -> Vec<Vec<u64>> {
        let n = self.len();
        let words = n.div_ceil(64);
        let mut sets = alloc::vec![Vec::new(); n];
        for &i in order.iter().rev() {
            let mut s = alloc::vec![0u64; words];
            s[i / 64] |= 1 << (i % 64);
            for (j, _) in &self.up[i] {
                for (w, x) in s.iter_mut().zip(&sets[*j]) {
                    *w |= x;
                }
            }
            sets[i] = s;
        }
        sets
    }

    /// Up-sets as bitsets.
    pub fn upsets(&self) -> &[Vec<u64>] {
        &self.closure
    }

    pub fn leq_idx(&self, i: usize, j: usize) -> bool {
        self.closure[i][j / 64] >> (j % 64) & 1 == 1
    }

    pub fn leq(&self, a: &Diagram, b: &Diagram) -> Result<bool> {
        let i = *self.index.get(a).ok_or(Error::ShapeMismatch)?;
        let j = *self.index.get(b).ok_or(Error::ShapeMismatch)?;
        Ok(self.leq_idx(i, j))
    }

    /// Elements with no upward cover.
    pub fn maxima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.up[i].is_empty()).collect()
    }

    pub fn minima(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.down[i].is_empty()).collect()
    }

    /// A shortest downward path from `from` to `to`, or `None` if `to ≰ from`.
    /// Ties are broken by the canonical order of the elements.
    pub fn down_path(&self, from: usize, to: usize) -> Option<Vec<(usize, MoveStep)>> {
        if !self.leq_idx(to, from) {
            return None;
        }
        let n = self.len();
        let mut prev: Vec<Option<(usize, MoveStep)>> = alloc::vec![None; n];
        let mut seen = alloc::vec![false; n];
        seen[from] = true;
        let mut queue = VecDeque::from([from]);
        while let Some(i) = queue.pop_front() {
            if i == to {
                break;
            }
            let mut nexts: Vec<&(usize, MoveStep)> = self.down[i].iter().collect();
            nexts.sort_by_key(|(j, _)| *j);
            let mut fresh = Vec::new();
            for (j, m) in nexts {
                if !seen[*j] && self.leq_idx(to, *j) {
                    seen[*j] = true;
                    prev[*j] = Some((i, m.clone()));
                    fresh.push(*j);
                }
            }
            queue.extend(fresh);
        }
        let mut path = Vec::new();
        let mut cur = to;
        while cur != from {
            let (p, m) = prev[cur].clone()?;
            path.push((cur, m));
            cur = p;
        }
        path.reverse();
        Some(path)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> Diagram {
        Diagram::parse(s).unwrap()
    }

    #[test]
    fn left_comb_moves_to_right_comb() {
        let c = covers(&d("((* *) *)")).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].0, d("(* (* *))"));
        assert_eq!(c[0].1.id, 1);
        assert!(covers(&d("(* (* *))")).unwrap().is_empty());
    }

    #[test]
    fn move_ids_cover_all_six_patterns() {
        let cases = [
            ("((* *) *)", 1),
            ("{* ; {; | ; *} ; }", 2),
            ("{(* *) ; | ; }", 3),
            ("{; {; | ; *} ; *}", 4),
            ("<{; | ; *} ; ; | ; >", 5),
            ("<| ; ; {; | ; *} ; >", 6),
        ];
        for (s, id) in cases {
            let c = covers(&d(s)).unwrap();
            assert!(c.iter().any(|(_, m)| m.id == id), "{s}: {c:?}");
        }
        let up = covers(&d("<{; | ; *} ; ; | ; >")).unwrap();
        assert_eq!(up[0].0, d("<| ; ; {* ; | ; } ; >"));
        let up = covers(&d("<| ; ; {; | ; *} ; >")).unwrap();
        assert_eq!(up[0].0, d("<{* ; | ; } ; ; | ; >"));
    }

    #[test]
    fn corolla_extremes() {
        assert_eq!(dmin(&d("(* * * *)")), d("(((* *) *) *)"));
        assert_eq!(dmax(&d("(* * * *)")), d("(* (* (* *)))"));
        assert_eq!(dmin(&d("{* * ; | ; * *}")), d("{(* *) ; {; {; | ; *} ; *} ; }"));
        assert_eq!(dmax(&d("{* * ; | ; * *}")), d("{; {* ; {* ; | ; } ; } ; (* *)}"));
        let m = dmax(&d("<| ; * * ; | ; * *>"));
        // all upper leaves on the right arm, all lower leaves on the left arm
        assert_eq!(m, d("<{* ; {* ; | ; } ; } ; ; {* ; {* ; | ; } ; } ; >"));
        let m = dmin(&d("<| ; * * ; | ; * *>"));
        assert_eq!(m, d("<{; {; | ; *} ; *} ; ; {; {; | ; *} ; *} ; >"));
    }

    #[test]
    fn pentagon_of_i20() {
        let p = Poset::build(Shape::inner(2, 0)).unwrap();
        assert_eq!(p.len(), 5);
        let a = d("<{; {; | ; *} ; *} ; ; | ; >");
        let c = d("<| ; ; {* ; {* ; | ; } ; } ; >");
        let b = d("<{; | ; (* *)} ; ; | ; >");
        let dd = d("<| ; ; {(* *) ; | ; } ; >");
        let e = d("<{; | ; *} ; ; {* ; | ; } ; >");
        assert_eq!(dmin(&d("<| ; * * ; | ; >")), a);
        assert_eq!(dmax(&d("<| ; * * ; | ; >")), c);
        for (x, y) in [(&a, &b), (&b, &dd), (&dd, &c), (&a, &e), (&e, &c)] {
            assert!(p.leq(x, y).unwrap());
            assert!(!p.leq(y, x).unwrap());
        }
        assert!(!p.leq(&b, &e).unwrap() && !p.leq(&e, &b).unwrap());
    }

    #[test]
    fn extremes_are_all_negative_or_all_positive() {
        for shape in Shape::all_up_to(6) {
            let c = Diagram::corolla(shape).unwrap();
            let lo = dmin(&c);
            let hi = dmax(&c);
            assert!(classify_edges(&lo).unwrap().iter().all(|(_, s)| *s == Sign::Neg), "{shape}");
            assert!(classify_edges(&hi).unwrap().iter().all(|(_, s)| *s == Sign::Pos), "{shape}");
            assert!(covers(&hi).unwrap().is_empty());
            assert!(lower_covers(&lo).unwrap().is_empty());
            let p = Poset::build(shape).unwrap();
            assert_eq!(p.maxima(), [p.index[&hi]]);
            assert_eq!(p.minima(), [p.index[&lo]]);
        }
    }

    #[test]
    fn i11_hexagon() {
        let p = Poset::build(Shape::inner(1, 1)).unwrap();
        assert_eq!(p.len(), 6);
        let lo = p.index[&dmin(&d("<| ; * ; | ; *>"))];
        assert_eq!(p.up[lo].len(), 2);
        let edges: usize = p.up.iter().map(Vec::len).sum();
        assert_eq!(edges, 6);
    }

    #[test]
    fn moves_reverse() {
        for shape in Shape::all_up_to(6) {
            for b in Diagram::enumerate(shape, 0) {
                for (c, m) in covers(&b).unwrap() {
                    let back = lower_covers(&c).unwrap();
                    assert!(back.contains(&(b.clone(), m.reversed())));
                    let mut mapped: Vec<EdgeKey> = b.edge_keys().iter().map(|&k| m.map_key(k)).collect();
                    mapped.sort();
                    assert_eq!(mapped, c.edge_keys());
                }
            }
        }
    }

    #[test]
    fn binary_fixed_points() {
        for shape in Shape::all_up_to(6) {
            for b in Diagram::enumerate(shape, 0) {
                assert_eq!(dmin(&b), b);
                assert_eq!(dmax(&b), b);
            }
        }
    }
}
