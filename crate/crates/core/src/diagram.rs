//! Planar diagrams of kind tree, module and inner.
//!
//! All three kinds share one rooted representation. A [`Vertex`] remembers the
//! color of the edge towards its parent and lists its children in walk order:
//!
//! * a thin vertex has only thin children;
//! * a module vertex has exactly one thick child, its left forest before it
//!   and its right forest after it;
//! * the central vertex of an inner diagram is the root. Its children form a
//!   cyclic sequence `[left arm, up.., right arm, down reversed..]`, rotated so
//!   the left arm comes first.
//!
//! The canonical label of a leaf is its position in the depth-first walk. For
//! inner diagrams the walk is rotated to begin at the thick leaf of the left
//! arm. Edges are identified by the set of labels lying outward of them
//! ([`EdgeKey`]). Contraction, expansion and local moves keep the cyclic leaf
//! order intact, so keys of untouched edges never change.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use alloc::string::ToString;
use core::fmt::{self, Write as _};

use crate::error::{Error, Result};

/// Maximum number of leaves supported by the bitmask edge keys.
pub const MAX_LEAVES: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    Thin,
    Thick,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Leaf(Color),
    Vertex(Vertex),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub color: Color,
    pub children: Vec<Node>,
}

impl Node {
    pub fn color(&self) -> Color {
        match self {
            Node::Leaf(c) => *c,
            Node::Vertex(v) => v.color,
        }
    }

    fn leaf_count(&self) -> usize {
        match self {
            Node::Leaf(_) => 1,
            Node::Vertex(v) => count_leaves(&v.children),
        }
    }
}

fn count_leaves(nodes: &[Node]) -> usize {
    nodes.iter().map(Node::leaf_count).sum()
}

fn count_vertices(nodes: &[Node]) -> usize {
    nodes
        .iter()
        .map(|n| match n {
            Node::Leaf(_) => 0,
            Node::Vertex(v) => 1 + count_vertices(&v.children),
        })
        .sum()
}

fn push_leaf_colors(nodes: &[Node], out: &mut Vec<Color>) {
    for n in nodes {
        match n {
            Node::Leaf(c) => out.push(*c),
            Node::Vertex(v) => push_leaf_colors(&v.children, out),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Tree,
    Module,
    Inner,
}

/// A shape class: the kind plus the numbers of thin leaves.
///
/// For trees `a` is the number of leaves and `b = 0`. For module diagrams `a`
/// and `b` count the thin leaves before and after the thick leaf. For inner
/// diagrams they count the upper and lower thin leaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub kind: Kind,
    pub a: usize,
    pub b: usize,
}

impl Shape {
    pub fn tree(n: usize) -> Shape {
        Shape { kind: Kind::Tree, a: n, b: 0 }
    }
    pub fn module(a: usize, b: usize) -> Shape {
        Shape { kind: Kind::Module, a, b }
    }
    pub fn inner(a: usize, b: usize) -> Shape {
        Shape { kind: Kind::Inner, a, b }
    }

    pub fn leaves(&self) -> usize {
        match self.kind {
            Kind::Tree => self.a,
            Kind::Module => self.a + self.b + 1,
            Kind::Inner => self.a + self.b + 2,
        }
    }

    /// Whether the class is nonempty under the arity conventions in use.
    pub fn is_valid(&self) -> bool {
        match self.kind {
            Kind::Tree => self.a >= 2 && self.b == 0,
            Kind::Module => self.a + self.b >= 1,
            Kind::Inner => true,
        }
    }

    /// Colors of the inputs in canonical order.
    pub fn input_colors(&self) -> Vec<Color> {
        let thin = |k| core::iter::repeat_n(Color::Thin, k);
        match self.kind {
            Kind::Tree => thin(self.a).collect(),
            Kind::Module => thin(self.a).chain([Color::Thick]).chain(thin(self.b)).collect(),
            Kind::Inner => [Color::Thick]
                .into_iter()
                .chain(thin(self.a))
                .chain([Color::Thick])
                .chain(thin(self.b))
                .collect(),
        }
    }

    /// Every valid shape class with exactly `n` leaves.
    pub fn all_with_leaves(n: usize) -> Vec<Shape> {
        let mut out = Vec::new();
        if n >= 2 {
            out.push(Shape::tree(n));
        }
        if n >= 2 {
            for a in 0..n {
                out.push(Shape::module(a, n - 1 - a));
            }
            for a in 0..=n - 2 {
                out.push(Shape::inner(a, n - 2 - a));
            }
        }
        out
    }

    /// Every valid shape class with at most `n` leaves.
    pub fn all_up_to(n: usize) -> Vec<Shape> {
        (2..=n).flat_map(Shape::all_with_leaves).collect()
    }

    /// Parse `T4`, `M1,2`, `I2,0`, also accepting `T_4` or `M_{1,2}`.
    pub fn parse(s: &str) -> Result<Shape> {
        let err = || Error::Syntax { pos: 0, msg: format!("bad shape class {s:?}") };
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('T') => Kind::Tree,
            Some('M') => Kind::Module,
            Some('I') => Kind::Inner,
            _ => return Err(err()),
        };
        let rest: String = chars.filter(|c| !matches!(c, '_' | '{' | '}' | ' ')).collect();
        let nums: Vec<usize> = rest
            .split(',')
            .map(|p| p.parse::<usize>().map_err(|_| err()))
            .collect::<Result<_>>()?;
        let shape = match (kind, nums.as_slice()) {
            (Kind::Tree, [n]) => Shape::tree(*n),
            (Kind::Module, [a, b]) => Shape::module(*a, *b),
            (Kind::Inner, [a, b]) => Shape::inner(*a, *b),
            _ => return Err(err()),
        };
        if !shape.is_valid() {
            return Err(Error::Arity(format!("empty shape class {s}")));
        }
        Ok(shape)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            Kind::Tree => write!(f, "T{}", self.a),
            Kind::Module => write!(f, "M{},{}", self.a, self.b),
            Kind::Inner => write!(f, "I{},{}", self.a, self.b),
        }
    }
}

/// The set of canonical labels (zero based) lying outward of an edge.
///
/// Ordered lexicographically on the increasing label sequences, which is the
/// order used to normalize orientations.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeKey(pub u32);

impl EdgeKey {
    pub fn from_labels(labels: impl IntoIterator<Item = usize>) -> EdgeKey {
        EdgeKey(labels.into_iter().fold(0u32, |m, l| m | (1 << l)))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, label: usize) -> bool {
        self.0 >> label & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn labels(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&l| self.contains(l))
    }

    /// Image under a relabeling `map[old] = new`.
    pub fn map(self, map: &[u8]) -> EdgeKey {
        EdgeKey::from_labels(self.labels().map(|l| map[l] as usize))
    }

    /// Render as a one-based cyclic interval `a-b`.
    pub fn render(self, n: usize) -> String {
        let ls: Vec<usize> = self.labels().collect();
        if ls.is_empty() {
            return String::from("-");
        }
        // start = a member whose cyclic predecessor is not a member
        let start = ls
            .iter()
            .copied()
            .find(|&l| !self.contains((l + n - 1) % n))
            .unwrap_or(ls[0]);
        let end = (start + ls.len() - 1) % n;
        format!("{}-{}", start + 1, end + 1)
    }

    /// Parse the output of [`EdgeKey::render`] for an `n`-leaf diagram.
    pub fn parse(s: &str, n: usize) -> Result<EdgeKey> {
        let err = || Error::Syntax { pos: 0, msg: format!("bad edge key {s:?}") };
        let (a, b) = s.trim().split_once('-').ok_or_else(err)?;
        let a: usize = a.trim().parse().map_err(|_| err())?;
        let b: usize = b.trim().parse().map_err(|_| err())?;
        if a == 0 || b == 0 || a > n || b > n {
            return Err(err());
        }
        let len = (b + n - a) % n + 1;
        Ok(EdgeKey::from_labels((0..len).map(|t| (a - 1 + t) % n)))
    }
}

impl Ord for EdgeKey {
    fn cmp(&self, other: &Self) -> Ordering {
        let x = self.0 ^ other.0;
        if x == 0 {
            return Ordering::Equal;
        }
        let t = x.trailing_zeros();
        // Both sequences agree below `t`; exactly one of them contains `t`.
        let (has, lacks, flip) =
            if self.0 >> t & 1 == 1 { (self.0, other.0, false) } else { (other.0, self.0, true) };
        let _ = has;
        let ord = if (lacks >> t) != 0 { Ordering::Less } else { Ordering::Greater };
        if flip {
            ord.reverse()
        } else {
            ord
        }
    }
}

impl PartialOrd for EdgeKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for EdgeKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ls: Vec<usize> = self.labels().map(|l| l + 1).collect();
        write!(f, "E{ls:?}")
    }
}

/// An internal edge, located by the path of child indices from the root to
/// the vertex just outward of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub key: EdgeKey,
    pub color: Color,
    pub path: Vec<usize>,
}

/// Result of grafting `E` onto a leaf of `D`.
#[derive(Clone, Debug)]
pub struct Graft {
    pub diagram: Diagram,
    /// `outer[l]` is the new label of leaf `l` of `D` (unused at the grafted leaf).
    pub outer: Vec<u8>,
    /// `inner[l]` is the new label of leaf `l` of `E`.
    pub inner: Vec<u8>,
    /// Key of the edge created by the graft.
    pub new_edge: EdgeKey,
    /// Label of the grafted leaf in `D`.
    pub leaf: usize,
}

impl Graft {
    /// Key in the graft of an edge of the outer diagram.
    pub fn outer_key(&self, k: EdgeKey) -> EdgeKey {
        if k.contains(self.leaf) {
            let rest = EdgeKey(k.0 & !(1 << self.leaf)).map(&self.outer);
            EdgeKey(rest.0 | self.new_edge.0)
        } else {
            k.map(&self.outer)
        }
    }

    /// Key in the graft of an edge of the inner diagram.
    pub fn inner_key(&self, k: EdgeKey) -> EdgeKey {
        k.map(&self.inner)
    }
}

/// A diagram split along an edge into an outer part with a new leaf and the
/// subtree that hung above the edge. Grafting back reproduces the original.
#[derive(Clone, Debug)]
pub struct Cut {
    pub outer: Diagram,
    pub leaf: usize,
    pub inner: Diagram,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    kind: Kind,
    root: Vec<Node>,
}

impl Diagram {
    /// Validate and build a diagram from the root vertex's children.
    pub fn new(kind: Kind, root: Vec<Node>) -> Result<Diagram> {
        let d = Diagram { kind, root };
        d.validate()?;
        Ok(d)
    }

    fn validate(&self) -> Result<()> {
        let n = count_leaves(&self.root);
        if n > MAX_LEAVES {
            return Err(Error::TooManyLeaves(n));
        }
        let thick = self.root.iter().filter(|c| c.color() == Color::Thick).count();
        match self.kind {
            Kind::Tree => {
                if thick != 0 {
                    return Err(Error::Arity(String::from("tree root with thick child")));
                }
                if self.root.len() < 2 {
                    return Err(Error::Arity(String::from("vertex with fewer than 2 children")));
                }
            }
            Kind::Module => {
                if thick != 1 {
                    return Err(Error::Arity(String::from("module vertex needs one thick child")));
                }
                if self.root.len() < 2 {
                    return Err(Error::Arity(String::from("module vertex with empty forests")));
                }
            }
            Kind::Inner => {
                if thick != 2 || self.root[0].color() != Color::Thick {
                    return Err(Error::Arity(String::from("central vertex needs two arms")));
                }
            }
        }
        fn check(nodes: &[Node]) -> Result<()> {
            for n in nodes {
                if let Node::Vertex(v) = n {
                    let thick = v.children.iter().filter(|c| c.color() == Color::Thick).count();
                    match v.color {
                        Color::Thin if thick > 0 => {
                            return Err(Error::Arity(String::from("thin vertex with thick child")))
                        }
                        Color::Thin if v.children.len() < 2 => {
                            return Err(Error::Arity(String::from(
                                "vertex with fewer than 2 children",
                            )))
                        }
                        Color::Thick if thick != 1 => {
                            return Err(Error::Arity(String::from(
                                "module vertex needs one thick child",
                            )))
                        }
                        Color::Thick if v.children.len() < 2 => {
                            return Err(Error::Arity(String::from(
                                "module vertex with empty forests",
                            )))
                        }
                        _ => {}
                    }
                    check(&v.children)?;
                }
            }
            Ok(())
        }
        check(&self.root)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    /// Children of the root vertex (the central vertex for inner diagrams).
    pub fn root(&self) -> &[Node] {
        &self.root
    }

    pub fn root_color(&self) -> Option<Color> {
        match self.kind {
            Kind::Tree => Some(Color::Thin),
            Kind::Module => Some(Color::Thick),
            Kind::Inner => None,
        }
    }

    pub fn leaf_count(&self) -> usize {
        count_leaves(&self.root)
    }

    pub fn edge_count(&self) -> usize {
        count_vertices(&self.root)
    }

    /// `#leaves − #edges − 2`.
    pub fn degree(&self) -> usize {
        self.leaf_count() - self.edge_count() - 2
    }

    pub fn is_corolla(&self) -> bool {
        self.edge_count() == 0
    }

    /// Every vertex, including the root, has exactly two children.
    pub fn is_binary(&self) -> bool {
        fn bin(nodes: &[Node]) -> bool {
            nodes.len() == 2
                && nodes.iter().all(|n| match n {
                    Node::Leaf(_) => true,
                    Node::Vertex(v) => bin(&v.children),
                })
        }
        bin(&self.root)
    }

    /// Position of the first leaf in the raw walk.
    fn offset(&self) -> usize {
        match self.kind {
            Kind::Inner => {
                let mut cols = Vec::new();
                push_leaf_colors(&self.root, &mut cols);
                cols.iter().position(|&c| c == Color::Thick).unwrap()
            }
            _ => 0,
        }
    }

    fn raw_to_label(&self, raw: usize, n: usize, off: usize) -> usize {
        (raw + n - off) % n
    }

    /// Colors of the leaves in canonical order.
    pub fn leaf_colors(&self) -> Vec<Color> {
        let mut cols = Vec::new();
        push_leaf_colors(&self.root, &mut cols);
        let off = self.offset();
        cols.rotate_left(off);
        cols
    }

    pub fn shape(&self) -> Shape {
        let cols = self.leaf_colors();
        let n = cols.len();
        match self.kind {
            Kind::Tree => Shape::tree(n),
            Kind::Module => {
                let t = cols.iter().position(|&c| c == Color::Thick).unwrap();
                Shape::module(t, n - 1 - t)
            }
            Kind::Inner => {
                let t = cols.iter().skip(1).position(|&c| c == Color::Thick).unwrap() + 1;
                Shape::inner(t - 1, n - t - 1)
            }
        }
    }

    /// The corolla of a shape class.
    pub fn corolla(shape: Shape) -> Result<Diagram> {
        if !shape.is_valid() {
            return Err(Error::Arity(format!("empty shape class {shape}")));
        }
        let thin = |k| core::iter::repeat_n(Node::Leaf(Color::Thin), k);
        let root: Vec<Node> = match shape.kind {
            Kind::Tree => thin(shape.a).collect(),
            Kind::Module => {
                thin(shape.a).chain([Node::Leaf(Color::Thick)]).chain(thin(shape.b)).collect()
            }
            Kind::Inner => [Node::Leaf(Color::Thick)]
                .into_iter()
                .chain(thin(shape.a))
                .chain([Node::Leaf(Color::Thick)])
                .chain(thin(shape.b))
                .collect(),
        };
        Diagram::new(shape.kind, root)
    }

    fn visit_edges(
        nodes: &[Node],
        start: usize,
        path: &mut Vec<usize>,
        f: &mut impl FnMut(&Vertex, &[usize], usize, usize),
    ) -> usize {
        let mut pos = start;
        for (i, n) in nodes.iter().enumerate() {
            match n {
                Node::Leaf(_) => pos += 1,
                Node::Vertex(v) => {
                    path.push(i);
                    let c = Self::visit_edges(&v.children, pos, path, f);
                    f(v, path, pos, c);
                    path.pop();
                    pos += c;
                }
            }
        }
        pos - start
    }

    /// All internal edges, sorted by key.
    pub fn edges(&self) -> Vec<Edge> {
        let n = self.leaf_count();
        let off = self.offset();
        let mut out = Vec::new();
        Self::visit_edges(&self.root, 0, &mut Vec::new(), &mut |v, path, s, c| {
            let key = EdgeKey::from_labels((s..s + c).map(|r| self.raw_to_label(r, n, off)));
            out.push(Edge { key, color: v.color, path: path.to_vec() });
        });
        out.sort_by(|a, b| a.key.cmp(&b.key));
        out
    }

    pub fn edge_keys(&self) -> Vec<EdgeKey> {
        self.edges().into_iter().map(|e| e.key).collect()
    }

    pub fn edge(&self, key: EdgeKey) -> Result<Edge> {
        self.edges().into_iter().find(|e| e.key == key).ok_or(Error::UnknownEdge)
    }

    /// Raw start position and leaf count of the subtree at `path`.
    fn raw_range(&self, path: &[usize]) -> (usize, usize) {
        let mut nodes: &[Node] = &self.root;
        let mut start = 0;
        let mut node = None;
        for &i in path {
            start += count_leaves(&nodes[..i]);
            node = Some(&nodes[i]);
            if let Node::Vertex(v) = &nodes[i] {
                nodes = &v.children;
            }
        }
        (start, node.map_or(count_leaves(&self.root), Node::leaf_count))
    }

    /// Key of the vertex at `path`.
    fn key_at(&self, path: &[usize]) -> EdgeKey {
        let n = self.leaf_count();
        let off = self.offset();
        let (s, c) = self.raw_range(path);
        EdgeKey::from_labels((s..s + c).map(|r| self.raw_to_label(r, n, off)))
    }

    /// Children list of the vertex at `path` (the root for an empty path).
    pub fn children_at(&self, path: &[usize]) -> &[Node] {
        let mut cur: &[Node] = &self.root;
        for &i in path {
            match &cur[i] {
                Node::Vertex(v) => cur = &v.children,
                Node::Leaf(_) => panic!("path runs through a leaf"),
            }
        }
        cur
    }

    fn children_at_mut<'a>(root: &'a mut Vec<Node>, path: &[usize]) -> &'a mut Vec<Node> {
        let mut cur = root;
        for &i in path {
            match &mut cur[i] {
                Node::Vertex(v) => cur = &mut v.children,
                Node::Leaf(_) => panic!("path runs through a leaf"),
            }
        }
        cur
    }

    /// Contract an internal edge. Keys of all other edges are unchanged.
    pub fn contract(&self, key: EdgeKey) -> Result<Diagram> {
        let e = self.edge(key)?;
        Ok(self.contract_path(&e.path))
    }

    fn contract_path(&self, path: &[usize]) -> Diagram {
        let mut root = self.root.clone();
        let (last, parent) = path.split_last().unwrap();
        let siblings = Self::children_at_mut(&mut root, parent);
        let Node::Vertex(v) = siblings.remove(*last) else { unreachable!() };
        let t = v.children.iter().position(|c| c.color() == Color::Thick);
        let k = v.children.len();
        for (j, c) in v.children.into_iter().enumerate() {
            siblings.insert(last + j, c);
        }
        let _ = k;
        if self.kind == Kind::Inner && parent.is_empty() && *last == 0 {
            // the left arm's root vertex merged into the center
            root.rotate_left(t.unwrap());
        }
        Diagram { kind: self.kind, root }
    }

    /// Contract several edges at once.
    pub fn contract_all(&self, keys: &[EdgeKey]) -> Result<Diagram> {
        let mut d = self.clone();
        for &k in keys {
            d = d.contract(k)?;
        }
        Ok(d)
    }

    /// All `(D′, e′)` with `D′/e′ = self`, sorted by serialization then key.
    pub fn expansions(&self) -> Vec<(Diagram, EdgeKey)> {
        let mut out = Vec::new();
        let mut stack: Vec<Vec<usize>> = alloc::vec![Vec::new()];
        while let Some(path) = stack.pop() {
            let children = self.children_at(&path);
            for (i, c) in children.iter().enumerate() {
                if matches!(c, Node::Vertex(_)) {
                    let mut p = path.clone();
                    p.push(i);
                    stack.push(p);
                }
            }
            let m = children.len();
            let central = path.is_empty() && self.kind == Kind::Inner;
            if central {
                for s in 0..m {
                    for len in 2..m {
                        let idx: Vec<usize> = (0..len).map(|t| (s + t) % m).collect();
                        let thick =
                            idx.iter().filter(|&&i| children[i].color() == Color::Thick).count();
                        if thick > 1 {
                            continue;
                        }
                        let color = if thick == 1 { Color::Thick } else { Color::Thin };
                        let mut root = self.root.clone();
                        let new_index;
                        if s + len <= m {
                            let group: Vec<Node> = root.drain(s..s + len).collect();
                            root.insert(s, Node::Vertex(Vertex { color, children: group }));
                            new_index = s;
                        } else {
                            let wrap = s + len - m;
                            let mut group: Vec<Node> = root.drain(s..).collect();
                            group.extend(root.drain(..wrap));
                            root.insert(0, Node::Vertex(Vertex { color, children: group }));
                            new_index = 0;
                        }
                        let d = Diagram { kind: self.kind, root };
                        let key = d.key_at(&[new_index]);
                        out.push((d, key));
                    }
                }
            } else {
                for s in 0..m {
                    for len in 2..m {
                        if s + len > m {
                            break;
                        }
                        let thick = children[s..s + len]
                            .iter()
                            .filter(|c| c.color() == Color::Thick)
                            .count();
                        let color = if thick == 1 { Color::Thick } else { Color::Thin };
                        let mut root = self.root.clone();
                        let sib = Self::children_at_mut(&mut root, &path);
                        let group: Vec<Node> = sib.drain(s..s + len).collect();
                        sib.insert(s, Node::Vertex(Vertex { color, children: group }));
                        let d = Diagram { kind: self.kind, root };
                        let mut p = path.clone();
                        p.push(s);
                        let key = d.key_at(&p);
                        out.push((d, key));
                    }
                }
            }
        }
        out.sort_by_cached_key(|(d, k)| (d.to_string(), *k));
        out
    }

    /// Canonical label of the leaf at raw walk position `raw`.
    fn path_to_raw_leaf(&self, raw: usize) -> Vec<usize> {
        let mut path = Vec::new();
        let mut nodes: &[Node] = &self.root;
        let mut remaining = raw;
        loop {
            let mut next = None;
            for (i, n) in nodes.iter().enumerate() {
                let c = n.leaf_count();
                if remaining < c {
                    next = Some((i, n));
                    break;
                }
                remaining -= c;
            }
            let (i, n) = next.expect("leaf position in range");
            path.push(i);
            match n {
                Node::Leaf(_) => return path,
                Node::Vertex(v) => nodes = &v.children,
            }
        }
    }

    /// Graft `e` onto the leaf with canonical label `leaf` (zero based).
    ///
    /// Returns `Ok(None)` when the colors do not match.
    pub fn graft(&self, leaf: usize, e: &Diagram) -> Result<Option<Graft>> {
        let n = self.leaf_count();
        if leaf >= n {
            return Err(Error::IndexOutOfRange { index: leaf + 1, len: n });
        }
        let Some(ecolor) = e.root_color() else {
            return Err(Error::InnerGraft);
        };
        let l = e.leaf_count();
        if n + l - 1 > MAX_LEAVES {
            return Err(Error::TooManyLeaves(n + l - 1));
        }
        let off = self.offset();
        let rx = (leaf + off) % n;
        let path = self.path_to_raw_leaf(rx);
        let (last, parent) = path.split_last().unwrap();
        let mut root = self.root.clone();
        let sib = Self::children_at_mut(&mut root, parent);
        if sib[*last] != Node::Leaf(ecolor) {
            return Ok(None);
        }
        sib[*last] = Node::Vertex(Vertex { color: ecolor, children: e.root.clone() });
        let d = Diagram { kind: self.kind, root };
        let big = n + l - 1;
        let off2 = d.offset();
        let label = |raw: usize| ((raw + big - off2) % big) as u8;
        let outer: Vec<u8> = (0..n)
            .map(|x| {
                let r = (x + off) % n;
                if r == rx {
                    u8::MAX
                } else if r < rx {
                    label(r)
                } else {
                    label(r + l - 1)
                }
            })
            .collect();
        let inner: Vec<u8> = (0..l).map(|t| label(rx + t)).collect();
        let new_edge = EdgeKey::from_labels(inner.iter().map(|&x| x as usize));
        Ok(Some(Graft { diagram: d, outer, inner, new_edge, leaf }))
    }

    /// Split along an internal edge.
    pub fn cut(&self, key: EdgeKey) -> Result<Cut> {
        let e = self.edge(key)?;
        let (start, _) = self.raw_range(&e.path);
        let (last, parent) = e.path.split_last().unwrap();
        let mut root = self.root.clone();
        let sib = Self::children_at_mut(&mut root, parent);
        let Node::Vertex(v) = core::mem::replace(&mut sib[*last], Node::Leaf(e.color)) else {
            unreachable!()
        };
        let outer = Diagram { kind: self.kind, root };
        let n1 = outer.leaf_count();
        let leaf = outer.raw_to_label(start, n1, outer.offset());
        let kind = if v.color == Color::Thin { Kind::Tree } else { Kind::Module };
        let inner = Diagram { kind, root: v.children };
        Ok(Cut { outer, leaf, inner })
    }

    /// Rotate an inner diagram by 180 degrees, exchanging the arms.
    pub fn rotate180(&self) -> Result<Diagram> {
        if self.kind != Kind::Inner {
            return Err(Error::NotInner);
        }
        let mut root = self.root.clone();
        let t = root.iter().skip(1).position(|c| c.color() == Color::Thick).unwrap() + 1;
        root.rotate_left(t);
        Ok(Diagram { kind: Kind::Inner, root })
    }

    /// All diagrams of a shape class with the given degree, in canonical order.
    pub fn enumerate(shape: Shape, degree: usize) -> Vec<Diagram> {
        let Ok(c) = Diagram::corolla(shape) else {
            return Vec::new();
        };
        let n = shape.leaves();
        if degree > n - 2 {
            return Vec::new();
        }
        let target_edges = n - 2 - degree;
        let mut level: BTreeSet<Diagram> = BTreeSet::new();
        level.insert(c);
        for _ in 0..target_edges {
            let mut next = BTreeSet::new();
            for d in &level {
                for (x, _) in d.expansions() {
                    next.insert(x);
                }
            }
            level = next;
        }
        let mut v: Vec<Diagram> = level.into_iter().collect();
        v.sort_by_cached_key(|d| d.to_string());
        v
    }

    /// Parse the textual grammar.
    pub fn parse(text: &str) -> Result<Diagram> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let d = p.diagram()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err("trailing input"));
        }
        Ok(d)
    }

    /// Parse a diagram at the start of `text`, returning the rest.
    pub fn parse_prefix(text: &str) -> Result<(Diagram, &str)> {
        let mut p = Parser { s: text.as_bytes(), pos: 0 };
        let d = p.diagram()?;
        Ok((d, &text[p.pos..]))
    }
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: String::from(msg) }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn diagram(&mut self) -> Result<Diagram> {
        let start = self.pos;
        let (kind, root) = match self.peek() {
            Some(b'(') => match self.thin()? {
                Node::Vertex(v) => (Kind::Tree, v.children),
                Node::Leaf(_) => unreachable!(),
            },
            Some(b'{') => match self.module()? {
                Node::Vertex(v) => (Kind::Module, v.children),
                Node::Leaf(_) => unreachable!(),
            },
            Some(b'<') => (Kind::Inner, self.inner()?),
            _ => return Err(self.err("expected '(', '{' or '<'")),
        };
        Diagram::new(kind, root).map_err(|e| match e {
            Error::Arity(m) => Error::Arity(format!("{m} (diagram starting at byte {start})")),
            e => e,
        })
    }

    fn thin(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'*') => {
                self.pos += 1;
                Ok(Node::Leaf(Color::Thin))
            }
            Some(b'(') => {
                let at = self.pos;
                self.pos += 1;
                let kids = self.forest()?;
                self.expect(b')')?;
                if kids.len() < 2 {
                    return Err(Error::Arity(format!("vertex at byte {at} has fewer than 2 children")));
                }
                Ok(Node::Vertex(Vertex { color: Color::Thin, children: kids }))
            }
            _ => Err(self.err("expected '*' or '('")),
        }
    }

    fn forest(&mut self) -> Result<Vec<Node>> {
        let mut out = Vec::new();
        while matches!(self.peek(), Some(b'*') | Some(b'(')) {
            out.push(self.thin()?);
        }
        Ok(out)
    }

    fn module(&mut self) -> Result<Node> {
        match self.peek() {
            Some(b'|') => {
                self.pos += 1;
                Ok(Node::Leaf(Color::Thick))
            }
            Some(b'{') => {
                let at = self.pos;
                self.pos += 1;
                let mut kids = self.forest()?;
                self.expect(b';')?;
                kids.push(self.module()?);
                self.expect(b';')?;
                kids.extend(self.forest()?);
                self.expect(b'}')?;
                if kids.len() < 2 {
                    return Err(Error::Arity(format!("module vertex at byte {at} has empty forests")));
                }
                Ok(Node::Vertex(Vertex { color: Color::Thick, children: kids }))
            }
            _ => Err(self.err("expected '|' or '{'")),
        }
    }

    fn inner(&mut self) -> Result<Vec<Node>> {
        self.expect(b'<')?;
        let left = self.module()?;
        self.expect(b';')?;
        let up = self.forest()?;
        self.expect(b';')?;
        let right = self.module()?;
        self.expect(b';')?;
        let mut down = self.forest()?;
        self.expect(b'>')?;
        down.reverse();
        let mut root = alloc::vec![left];
        root.extend(up);
        root.push(right);
        root.extend(down);
        Ok(root)
    }
}

fn write_thin(n: &Node, out: &mut String) {
    match n {
        Node::Leaf(_) => out.push('*'),
        Node::Vertex(v) => {
            out.push('(');
            write_forest(&v.children, out);
            out.push(')');
        }
    }
}

fn write_forest(nodes: &[Node], out: &mut String) {
    for (i, n) in nodes.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        write_thin(n, out);
    }
}

fn write_module_children(children: &[Node], out: &mut String) {
    let t = children.iter().position(|c| c.color() == Color::Thick).unwrap();
    out.push('{');
    write_forest(&children[..t], out);
    out.push_str(" ; ");
    write_module(&children[t], out);
    out.push_str(" ; ");
    write_forest(&children[t + 1..], out);
    out.push('}');
}

fn write_module(n: &Node, out: &mut String) {
    match n {
        Node::Leaf(_) => out.push('|'),
        Node::Vertex(v) => write_module_children(&v.children, out),
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        match self.kind {
            Kind::Tree => {
                s.push('(');
                write_forest(&self.root, &mut s);
                s.push(')');
            }
            Kind::Module => write_module_children(&self.root, &mut s),
            Kind::Inner => {
                let t = self.root.iter().skip(1).position(|c| c.color() == Color::Thick).unwrap() + 1;
                s.push('<');
                write_module(&self.root[0], &mut s);
                s.push_str(" ; ");
                write_forest(&self.root[1..t], &mut s);
                s.push_str(" ; ");
                write_module(&self.root[t], &mut s);
                s.push_str(" ; ");
                let down: Vec<Node> = self.root[t + 1..].iter().rev().cloned().collect();
                write_forest(&down, &mut s);
                s.push('>');
            }
        }
        f.write_str(&s)
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('`')?;
        fmt::Display::fmt(self, f)?;
        f.write_char('`')
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn d(s: &str) -> Diagram {
        Diagram::parse(s).unwrap()
    }

    #[test]
    fn grammar_examples() {
        let t3 = d("(* * *)");
        assert_eq!(t3.shape(), Shape::tree(3));
        assert!(t3.is_corolla());
        assert_eq!(d("{* * ; | ; * * *}").shape(), Shape::module(2, 3));
        let i20 = d("<| ; * * ; | ; >");
        assert_eq!(i20.shape(), Shape::inner(2, 0));
        assert_eq!(i20.to_string(), "<| ; * * ; | ; >");
        assert_eq!(Diagram::corolla(Shape::inner(2, 0)).unwrap(), i20);
    }

    #[test]
    fn arity_violations_are_rejected() {
        assert!(matches!(Diagram::parse("(*)"), Err(Error::Arity(_))));
        assert!(matches!(Diagram::parse("{ ; | ; }"), Err(Error::Arity(_))));
        assert!(matches!(Diagram::parse("<{;|;};;|;>"), Err(Error::Arity(_))));
        assert!(matches!(Diagram::parse("(* *"), Err(Error::Syntax { .. })));
        assert!(matches!(Diagram::parse("(* *) *"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn inner_walk_matches_the_sixteen_leaf_picture() {
        let big = d("<{* ; | ; (* *)} ; * (* *) ; {* * ; {; | ; (* *)} ; *} ; (* * *)>");
        assert_eq!(big.leaf_count(), 16);
        let cols = big.leaf_colors();
        let thick: Vec<usize> =
            cols.iter().enumerate().filter(|(_, &c)| c == Color::Thick).map(|(i, _)| i + 1).collect();
        assert_eq!(thick, [1, 9]);
        let keys: BTreeSet<String> = big.edge_keys().iter().map(|k| k.render(16)).collect();
        // upper tree on the left arm holds leaves 2,3; its lower leaf is 16
        assert!(keys.contains("2-3"));
        assert!(keys.contains("16-3"));
        // the lower tree of the center holds 13..15
        assert!(keys.contains("13-15"));
        // right arm: the outer vertex holds 9..11, the inner one 7..12
        assert!(keys.contains("9-11"));
        assert!(keys.contains("7-12"));
        assert!(keys.contains("10-11"));
        assert!(keys.contains("5-6"));
        assert_eq!(keys.len(), big.edge_count());
    }

    #[test]
    fn eight_leaf_tree_is_numbered_left_to_right() {
        let t = d("((* *) * (* (* * *) *))");
        let keys: Vec<String> = t.edge_keys().iter().map(|k| k.render(8)).collect();
        assert_eq!(keys, ["1-2", "4-8", "5-7"]);
    }

    #[test]
    fn corolla_of_i34_has_thick_labels_1_and_5() {
        let c = Diagram::corolla(Shape::inner(3, 4)).unwrap();
        let cols = c.leaf_colors();
        assert_eq!(cols[0], Color::Thick);
        assert_eq!(cols[4], Color::Thick);
        assert_eq!(cols.iter().filter(|&&c| c == Color::Thick).count(), 2);
    }

    #[test]
    fn contraction_examples() {
        let t = d("((* *) *)");
        let e = t.edge_keys()[0];
        assert_eq!(t.contract(e).unwrap(), d("(* * *)"));
        let m = d("{* ; {* ; | ; *} ; *}");
        let e = m.edge_keys()[0];
        assert_eq!(m.contract(e).unwrap(), d("{* * ; | ; * *}"));
        // left arm into the center: lower forest goes to the front of down
        let i = d("<{* ; | ; *} ; * ; | ; *>");
        let arm = i.edges().into_iter().find(|e| e.path == [0]).unwrap();
        assert_eq!(i.contract(arm.key).unwrap(), d("<| ; * * ; | ; * *>"));
    }

    #[test]
    fn expansion_counts() {
        assert_eq!(d("(* * *)").expansions().len(), 2);
        assert_eq!(d("(* * * *)").expansions().len(), 5);
        assert_eq!(d("<| ; * ; | ; *>").expansions().len(), 6);
        assert_eq!(d("<| ; * * ; | ; >").expansions().len(), 5);
        for s in ["{* * * ; | ; }", "{* * ; | ; *}", "{* ; | ; * *}", "{ ; | ; * * *}"] {
            assert_eq!(d(s).expansions().len(), 5, "{s}");
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Diagram::enumerate(Shape::tree(4), 0).len(), 5);
        assert_eq!(Diagram::enumerate(Shape::tree(5), 0).len(), 14);
        assert_eq!(Diagram::enumerate(Shape::inner(1, 1), 0).len(), 6);
        assert_eq!(Diagram::enumerate(Shape::inner(2, 0), 0).len(), 5);
        assert_eq!(Diagram::enumerate(Shape::inner(0, 2), 0).len(), 5);
        for (a, b) in [(0, 3), (1, 2), (2, 1), (3, 0)] {
            assert_eq!(Diagram::enumerate(Shape::module(a, b), 0).len(), 5);
        }
        assert_eq!(Diagram::enumerate(Shape::tree(4), 3).len(), 0);
    }

    #[test]
    fn every_contraction_is_undone_by_an_expansion() {
        for shape in Shape::all_up_to(6) {
            for deg in 0..shape.leaves() - 1 {
                for x in Diagram::enumerate(shape, deg) {
                    for e in x.edge_keys() {
                        let c = x.contract(e).unwrap();
                        assert_eq!(c.degree(), deg + 1);
                        assert!(c.expansions().contains(&(x.clone(), e)), "{x} / {e:?}");
                        // all other keys survive
                        let rest: Vec<EdgeKey> =
                            x.edge_keys().into_iter().filter(|&k| k != e).collect();
                        assert_eq!(c.edge_keys(), rest);
                    }
                    for (y, e) in x.expansions() {
                        assert_eq!(y.degree() + 1, deg);
                        assert_eq!(y.contract(e).unwrap(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn keys_are_distinct_up_to_eight_leaves() {
        for shape in Shape::all_up_to(8) {
            for x in Diagram::enumerate(shape, 0) {
                let keys = x.edge_keys();
                let set: BTreeSet<EdgeKey> = keys.iter().copied().collect();
                assert_eq!(set.len(), keys.len());
            }
        }
    }

    #[test]
    fn format_parse_round_trip() {
        for shape in Shape::all_up_to(6) {
            for deg in 0..shape.leaves() - 1 {
                for x in Diagram::enumerate(shape, deg) {
                    assert_eq!(Diagram::parse(&x.to_string()).unwrap(), x);
                    assert_eq!(x.shape(), shape);
                }
            }
        }
    }

    #[test]
    fn graft_and_cut_are_inverse() {
        let g = d("(* *)").graft(0, &d("(* *)")).unwrap().unwrap();
        assert_eq!(g.diagram, d("((* *) *)"));
        let g = d("<| ; ; | ; >").graft(0, &d("{* ; | ; }")).unwrap().unwrap();
        assert_eq!(g.diagram, d("<{* ; | ; } ; ; | ; >"));
        assert!(d("<| ; ; | ; >").graft(0, &d("(* *)")).unwrap().is_none());
        assert_eq!(d("(* *)").graft(0, &d("<| ; ; | ; >")).unwrap_err(), Error::InnerGraft);
        for shape in Shape::all_up_to(6) {
            for deg in 0..shape.leaves() - 1 {
                for x in Diagram::enumerate(shape, deg) {
                    for e in x.edge_keys() {
                        let cut = x.cut(e).unwrap();
                        let g = cut.outer.graft(cut.leaf, &cut.inner).unwrap().unwrap();
                        assert_eq!(g.diagram, x);
                        assert_eq!(g.new_edge, e);
                        let mut mapped: Vec<EdgeKey> = cut
                            .outer
                            .edge_keys()
                            .into_iter()
                            .map(|k| g.outer_key(k))
                            .chain(cut.inner.edge_keys().into_iter().map(|k| g.inner_key(k)))
                            .chain([e])
                            .collect();
                        mapped.sort();
                        assert_eq!(mapped, x.edge_keys());
                    }
                }
            }
        }
    }

    #[test]
    fn rotation_is_an_involution() {
        assert_eq!(d("<| ; * * ; | ; >").rotate180().unwrap(), d("<| ; ; | ; * *>"));
        for n in 2..=7 {
            for shape in Shape::all_with_leaves(n).into_iter().filter(|s| s.kind == Kind::Inner) {
                for deg in 0..n - 1 {
                    for x in Diagram::enumerate(shape, deg) {
                        let r = x.rotate180().unwrap();
                        assert_eq!(r.shape(), Shape::inner(shape.b, shape.a));
                        assert_eq!(r.rotate180().unwrap(), x);
                    }
                }
            }
        }
    }

    #[test]
    fn edge_key_order_and_rendering() {
        let a = EdgeKey::from_labels([0, 1]);
        let b = EdgeKey::from_labels([0, 1, 2]);
        let c = EdgeKey::from_labels([0, 2]);
        let z = EdgeKey::from_labels([1, 2]);
        assert!(a < b && b < c && c < z);
        let w = EdgeKey::from_labels([5, 6, 0, 1]);
        assert_eq!(w.render(7), "6-2");
        assert_eq!(EdgeKey::parse("6-2", 7).unwrap(), w);
        assert_eq!(EdgeKey::parse("2-4", 7).unwrap(), EdgeKey::from_labels([1, 2, 3]));
        assert_eq!(Shape::parse("M_{1,2}").unwrap(), Shape::module(1, 2));
        assert_eq!(Shape::parse("T4").unwrap().to_string(), "T4");
        assert!(Shape::parse("M0,0").is_err());
    }
}
