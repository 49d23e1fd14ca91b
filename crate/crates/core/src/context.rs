//! Shared memo tables for the maps that are expensive to recompute.
//!
//! A [`Context`] is cheap to create and is not `Sync`; make one per thread.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::cell::RefCell;

use crate::diagram::{Diagram, Shape};
use crate::error::{Error, Result};
use crate::operad_c::CElement;
use crate::operad_q::{QBasis, QElement};
use crate::orientation::Orientation;
use crate::tamari::Poset;

#[derive(Default)]
pub struct Context {
    posets: RefCell<BTreeMap<Shape, Rc<Poset>>>,
    enumerations: RefCell<BTreeMap<(Shape, usize), Rc<Vec<Diagram>>>>,
    pub(crate) xi: RefCell<BTreeMap<Diagram, i64>>,
    pub(crate) q: RefCell<BTreeMap<Diagram, Rc<QElement>>>,
    pub(crate) p: RefCell<BTreeMap<QBasis, Rc<CElement>>>,
    /// Transported positive edges, keyed by the starting binary diagram.
    pub(crate) transport: RefCell<BTreeMap<Diagram, Rc<BTreeMap<usize, Orientation>>>>,
}

impl Context {
    pub fn new() -> Context {
        Context::default()
    }

    /// The order on binary diagrams of `shape`, built once.
    pub fn poset(&self, shape: Shape) -> Result<Rc<Poset>> {
        if let Some(p) = self.posets.borrow().get(&shape) {
            return Ok(p.clone());
        }
        if !shape.is_valid() {
            return Err(Error::ShapeMismatch);
        }
        let p = Rc::new(Poset::build(shape)?);
        self.posets.borrow_mut().insert(shape, p.clone());
        Ok(p)
    }

    /// [`Diagram::enumerate`], memoized.
    pub fn enumerate(&self, shape: Shape, degree: usize) -> Rc<Vec<Diagram>> {
        if let Some(v) = self.enumerations.borrow().get(&(shape, degree)) {
            return v.clone();
        }
        let v = Rc::new(Diagram::enumerate(shape, degree));
        self.enumerations.borrow_mut().insert((shape, degree), v.clone());
        v
    }

    /// `a ≤ b` for binary diagrams of the same shape class.
    pub fn leq(&self, a: &Diagram, b: &Diagram) -> Result<bool> {
        if a.shape() != b.shape() {
            return Err(Error::ShapeMismatch);
        }
        if !a.is_binary() || !b.is_binary() {
            return Err(Error::NotBinary);
        }
        self.poset(a.shape())?.leq(a, b)
    }
}
