use alloc::collections::BTreeMap;
use alloc::format;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use num_traits::One;

use super::map::{rational, GradedModule, MultiMap, Target, Q};
use crate::diagram::{Color, Diagram, Kind, Shape};
use crate::error::{Error, Result};
use crate::operad_c::{boundary_basis, split, CBasis, CElement};

/// Structure maps `d`, `μ_k`, `λ_{j,k}` and `ϱ_{j,k}` on one graded module,
/// which serves both as the algebra and as the bimodule.
///
/// Within a populated family an absent map is zero. Evaluating a generator
/// that needs an unpopulated family is an error.
#[derive(Clone, Debug)]
pub struct StructureSet {
    pub module: GradedModule,
    pub d: MultiMap,
    pub mu: BTreeMap<usize, MultiMap>,
    pub lambda: BTreeMap<(usize, usize), MultiMap>,
    pub rho: BTreeMap<(usize, usize), MultiMap>,
    pub has_mu: bool,
    pub has_lambda: bool,
    pub has_rho: bool,
    /// Degree of the pairing `ϱ_{0,0}`. Then `|ϱ_{j,k}| = rho_degree − j − k`.
    pub rho_degree: i64,
}

/// A value of `F`: a multilinear map tagged with its colors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndElement {
    pub inputs: Vec<Color>,
    /// `None` for the ground ring.
    pub output: Option<Color>,
    pub map: MultiMap,
}

impl StructureSet {
    /// Only `d`, all families unpopulated.
    pub fn new(module: GradedModule, d: MultiMap) -> StructureSet {
        StructureSet {
            module,
            d,
            mu: BTreeMap::new(),
            lambda: BTreeMap::new(),
            rho: BTreeMap::new(),
            has_mu: false,
            has_lambda: false,
            has_rho: false,
            rho_degree: 0,
        }
    }

    pub fn zero_differential(module: GradedModule) -> StructureSet {
        let d = MultiMap::zero(1, Target::Module, 1);
        StructureSet::new(module, d)
    }

    pub fn expected_degree(&self, shape: Shape) -> i64 {
        let dim = shape.leaves() as i64 - 2;
        match shape.kind {
            Kind::Inner => self.rho_degree - dim,
            _ => -dim,
        }
    }

    pub fn target(shape: Shape) -> Target {
        match shape.kind {
            Kind::Inner => Target::Scalar,
            _ => Target::Module,
        }
    }

    pub fn populated(&self, kind: Kind) -> bool {
        match kind {
            Kind::Tree => self.has_mu,
            Kind::Module => self.has_lambda,
            Kind::Inner => self.has_rho,
        }
    }

    /// Slot for the map of a corolla shape.
    pub fn map_mut(&mut self, shape: Shape) -> &mut MultiMap {
        let zero =
            MultiMap::zero(shape.leaves(), Self::target(shape), self.expected_degree(shape));
        match shape.kind {
            Kind::Tree => {
                self.has_mu = true;
                self.mu.entry(shape.a).or_insert(zero)
            }
            Kind::Module => {
                self.has_lambda = true;
                self.lambda.entry((shape.a, shape.b)).or_insert(zero)
            }
            Kind::Inner => {
                self.has_rho = true;
                self.rho.entry((shape.a, shape.b)).or_insert(zero)
            }
        }
    }

    /// The structure map assigned to the corolla of `shape`.
    pub fn corolla_map(&self, shape: Shape) -> Result<MultiMap> {
        if !shape.is_valid() {
            return Err(Error::Arity(format!("empty shape class {shape}")));
        }
        if !self.populated(shape.kind) {
            return Err(Error::MissingMap(format!("{shape}")));
        }
        let found = match shape.kind {
            Kind::Tree => self.mu.get(&shape.a),
            Kind::Module => self.lambda.get(&(shape.a, shape.b)),
            Kind::Inner => self.rho.get(&(shape.a, shape.b)),
        };
        Ok(found.cloned().unwrap_or_else(|| {
            MultiMap::zero(shape.leaves(), Self::target(shape), self.expected_degree(shape))
        }))
    }

    /// All stored maps with their shapes.
    pub fn maps(&self) -> Vec<(Shape, &MultiMap)> {
        let mut out: Vec<(Shape, &MultiMap)> =
            self.mu.iter().map(|(&n, m)| (Shape::tree(n), m)).collect();
        out.extend(self.lambda.iter().map(|(&(a, b), m)| (Shape::module(a, b), m)));
        out.extend(self.rho.iter().map(|(&(a, b), m)| (Shape::inner(a, b), m)));
        out
    }

    /// `d² = 0` and every map has the arity, target and degree of its shape.
    pub fn validate(&self) -> Result<()> {
        let m = &self.module;
        if self.d.arity != 1 || self.d.target != Target::Module || self.d.degree != 1 {
            return Err(Error::Degree("d must be a module map of degree +1".into()));
        }
        self.d.check_homogeneous(m)?;
        if !self.d.compose(1, &self.d, m)?.is_zero() {
            return Err(Error::Precondition("d² ≠ 0".into()));
        }
        for (shape, f) in self.maps() {
            if !shape.is_valid() {
                return Err(Error::Arity(format!("empty shape class {shape}")));
            }
            if f.arity != shape.leaves() || f.target != Self::target(shape) {
                return Err(Error::Degree(format!("map for {shape} has the wrong signature")));
            }
            if f.degree != self.expected_degree(shape) && !f.is_zero() {
                return Err(Error::Degree(format!(
                    "map for {shape} has degree {}, expected {}",
                    f.degree,
                    self.expected_degree(shape)
                )));
            }
            f.check_homogeneous(m)?;
        }
        Ok(())
    }

    /// `[D, f]` with the sign taken from the cell dimension. For scalar
    /// valued maps this removes the shift by `rho_degree`.
    pub fn bracket(&self, f: &MultiMap) -> Result<MultiMap> {
        let shift = if f.target == Target::Scalar { self.rho_degree } else { 0 };
        f.bracket_with(&self.d, &self.module, f.degree - shift)
    }

    /// `[D, F(c)] − F(∂c)` for the corolla `c` of `shape`.
    pub fn residual(&self, ev: &Evaluator<'_>, shape: Shape) -> Result<MultiMap> {
        let c = CBasis::canonical(Diagram::corolla(shape)?);
        let lhs = self.bracket(&self.corolla_map(shape)?)?;
        let rhs = ev.eval(shape, &boundary_basis(&c)?)?;
        lhs.sub(&rhs)
    }

    /// Shapes up to `max_leaves` in populated families whose relation fails.
    pub fn failing_relations(&self, max_leaves: usize) -> Result<Vec<(Shape, MultiMap)>> {
        let ev = Evaluator::new(self);
        let mut out = Vec::new();
        for shape in Shape::all_up_to(max_leaves) {
            if !self.populated(shape.kind) {
                continue;
            }
            if shape.kind == Kind::Module && !self.has_mu {
                continue;
            }
            if shape.kind == Kind::Inner && !(self.has_mu && self.has_lambda) {
                continue;
            }
            let r = self.residual(&ev, shape)?;
            if !r.is_zero() {
                out.push((shape, r));
            }
        }
        Ok(out)
    }

    /// The two sides of the `A∞` relation at arity `k`, written out term by
    /// term, subtracted.
    pub fn residual_a_infinity(&self, k: usize) -> Result<MultiMap> {
        if k < 2 {
            return Err(Error::Precondition("arity must be at least 2".into()));
        }
        let m = &self.module;
        let mut out = self.bracket(&self.corolla_map(Shape::tree(k))?)?;
        for j in 2..k {
            let l = k + 1 - j;
            let inner = self.corolla_map(Shape::tree(j))?;
            let outer = self.corolla_map(Shape::tree(l))?;
            for i in 1..=k - j + 1 {
                let e = i * (j + 1) + j * l;
                let c = if e % 2 == 0 { -Q::one() } else { Q::one() };
                out.add_scaled(&outer.compose(i, &inner, m)?, &c)?;
            }
        }
        Ok(out)
    }

    /// The bimodule relation for `λ_{k1,k2}`, written out term by term.
    pub fn residual_module(&self, k1: usize, k2: usize) -> Result<MultiMap> {
        let m = &self.module;
        let k = k1 + k2 + 1;
        let p = k1 + 1;
        let mut out = self.bracket(&self.corolla_map(Shape::module(k1, k2))?)?;
        for j in 2..k {
            let l = k + 1 - j;
            for i in 1..=k - j + 1 {
                let last = i + j - 1;
                let (outer, inner) = if i <= p && p <= last {
                    (Shape::module(i - 1, k - last), Shape::module(p - i, last - p))
                } else if last < p {
                    (Shape::module(k1 - j + 1, k2), Shape::tree(j))
                } else {
                    (Shape::module(k1, k2 - j + 1), Shape::tree(j))
                };
                let e = i * (j + 1) + j * l;
                let c = if e % 2 == 0 { -Q::one() } else { Q::one() };
                let t = self.corolla_map(outer)?.compose(i, &self.corolla_map(inner)?, m)?;
                out.add_scaled(&t, &c)?;
            }
        }
        Ok(out)
    }

    /// Structure with every homogeneous constant drawn from `sample`, for
    /// every corolla with at most `max_leaves` leaves in the chosen families.
    /// The differential is zero.
    pub fn random(
        module: GradedModule,
        families: [bool; 3],
        rho_degree: i64,
        max_leaves: usize,
        sample: &mut dyn FnMut() -> i64,
    ) -> StructureSet {
        let mut s = StructureSet::zero_differential(module);
        s.rho_degree = rho_degree;
        s.has_mu = families[0];
        s.has_lambda = families[1];
        s.has_rho = families[2];
        let dim = s.module.dim();
        for shape in Shape::all_up_to(max_leaves) {
            if !s.populated(shape.kind) {
                continue;
            }
            let deg = s.expected_degree(shape);
            let target = Self::target(shape);
            let outputs: Vec<usize> = match target {
                Target::Module => (0..dim).collect(),
                Target::Scalar => alloc::vec![0],
            };
            let mut f = MultiMap::zero(shape.leaves(), target, deg);
            for inputs in tuples(dim, shape.leaves()) {
                let din: i64 = inputs.iter().map(|&a| s.module.degree(a)).sum();
                for &o in &outputs {
                    let dout = if target == Target::Module { s.module.degree(o) } else { 0 };
                    if dout - din == deg {
                        f.add_term(inputs.clone(), o, rational(sample()));
                    }
                }
            }
            *s.map_mut(shape) = f;
        }
        s
    }
}

/// All tuples in `0..dim` of the given length, lexicographically.
pub(crate) fn tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = alloc::vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..dim).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

/// The operad map from cellular generators to multilinear maps, memoized
/// on canonically labelled diagrams.
pub struct Evaluator<'a> {
    s: &'a StructureSet,
    cache: RefCell<BTreeMap<Diagram, Rc<MultiMap>>>,
}

impl<'a> Evaluator<'a> {
    pub fn new(s: &'a StructureSet) -> Evaluator<'a> {
        Evaluator { s, cache: RefCell::new(BTreeMap::new()) }
    }

    pub fn structure(&self) -> &StructureSet {
        self.s
    }

    /// `F(D, id, +)`, cutting the smallest edge first.
    pub fn canonical(&self, d: &Diagram) -> Result<Rc<MultiMap>> {
        if let Some(f) = self.cache.borrow().get(d) {
            return Ok(f.clone());
        }
        let f = match d.edge_keys().first() {
            None => self.s.corolla_map(d.shape())?,
            Some(&key) => {
                let sp = split(d, key)?;
                let outer = self.canonical(&sp.cut.outer)?;
                let inner = self.canonical(&sp.cut.inner)?;
                let comp = outer.compose(sp.cut.leaf + 1, &inner, &self.s.module)?;
                comp.permute_inputs(&sp.tau.inverse(), &self.s.module)?
                    .scaled(&rational(sp.sign))
            }
        };
        let f = Rc::new(f);
        self.cache.borrow_mut().insert(d.clone(), f.clone());
        Ok(f)
    }

    /// `F(D, σ) = sgn(σ) F(D, id) ∘ σ_#`.
    pub fn basis(&self, x: &CBasis) -> Result<MultiMap> {
        let f = self.canonical(&x.diagram)?;
        if x.labeling.is_identity() {
            return Ok((*f).clone());
        }
        Ok(f.permute_inputs(&x.labeling, &self.s.module)?.scaled(&rational(x.labeling.sign())))
    }

    /// Linear extension over an element whose terms all have shape `shape`.
    pub fn eval(&self, shape: Shape, x: &CElement) -> Result<MultiMap> {
        let mut out = MultiMap::zero(shape.leaves(), StructureSet::target(shape), 0);
        for (b, &c) in x.iter() {
            if b.diagram.shape() != shape {
                return Err(Error::ShapeMismatch);
            }
            out.add_scaled(&self.basis(b)?, &rational(c))?;
        }
        if out.is_zero() {
            out.degree = self.s.expected_degree(shape);
        }
        Ok(out)
    }

    /// [`Evaluator::basis`] with the color word of the diagram attached.
    pub fn eval_element(&self, x: &CBasis) -> Result<EndElement> {
        let shape = x.diagram.shape();
        let output = match shape.kind {
            Kind::Tree => Some(Color::Thin),
            Kind::Module => Some(Color::Thick),
            Kind::Inner => None,
        };
        Ok(EndElement { inputs: shape.input_colors(), output, map: self.basis(x)? })
    }
}

/// `F(∂x) − [D, F(x)]`, zero when `F` intertwines the differentials on `x`.
pub fn chain_defect(ev: &Evaluator<'_>, x: &CBasis) -> Result<MultiMap> {
    let s = ev.structure();
    let shape = x.diagram.shape();
    let lhs = ev.eval(shape, &boundary_basis(x)?)?;
    let rhs = s.bracket(&ev.basis(x)?)?;
    lhs.sub(&rhs)
}
