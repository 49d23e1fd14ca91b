use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Exact coefficients.
pub type Q = BigRational;

pub fn rational(n: i64) -> Q {
    BigRational::from_integer(BigInt::from(n))
}

fn koszul(parity: i64) -> Q {
    if parity.rem_euclid(2) == 0 {
        Q::one()
    } else {
        -Q::one()
    }
}

/// A finite graded module given by a named basis with integer degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedModule {
    pub names: Vec<String>,
    pub degrees: Vec<i64>,
}

impl GradedModule {
    pub fn new(names: Vec<String>, degrees: Vec<i64>) -> Result<GradedModule> {
        if names.is_empty() {
            return Err(Error::Precondition("the zero module is not allowed".into()));
        }
        if names.len() != degrees.len() {
            return Err(Error::Precondition(format!(
                "{} basis names but {} degrees",
                names.len(),
                degrees.len()
            )));
        }
        Ok(GradedModule { names, degrees })
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// Basis of `A ⊗ B` indexed by `i·dim B + j`, named `a|b`.
    pub fn tensor(&self, other: &GradedModule) -> GradedModule {
        let mut names = Vec::with_capacity(self.dim() * other.dim());
        let mut degrees = Vec::with_capacity(self.dim() * other.dim());
        for (a, &da) in self.names.iter().zip(&self.degrees) {
            for (b, &db) in other.names.iter().zip(&other.degrees) {
                names.push(format!("{a}|{b}"));
                degrees.push(da + db);
            }
        }
        GradedModule { names, degrees }
    }
}

/// Where a multilinear map lands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Module,
    /// The ground ring, with the single output index `0`.
    Scalar,
}

/// A multilinear map by its nonzero structure constants.
#[derive(Clone, Debug)]
pub struct MultiMap {
    pub arity: usize,
    pub target: Target,
    pub degree: i64,
    terms: BTreeMap<Vec<usize>, BTreeMap<usize, Q>>,
}

impl PartialEq for MultiMap {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.target == other.target
            && self.terms == other.terms
            && (self.degree == other.degree || self.terms.is_empty())
    }
}

impl Eq for MultiMap {}

impl MultiMap {
    pub fn zero(arity: usize, target: Target, degree: i64) -> MultiMap {
        MultiMap { arity, target, degree, terms: BTreeMap::new() }
    }

    pub fn identity(dim: usize) -> MultiMap {
        let mut m = MultiMap::zero(1, Target::Module, 0);
        for i in 0..dim {
            m.add_term(alloc::vec![i], i, Q::one());
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero structure constants.
    pub fn len(&self) -> usize {
        self.terms.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    pub fn add_term(&mut self, inputs: Vec<usize>, output: usize, c: Q) {
        debug_assert_eq!(inputs.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let row = self.terms.entry(inputs.clone()).or_default();
        let v = row.entry(output).or_insert_with(Q::zero);
        *v += c;
        if v.is_zero() {
            row.remove(&output);
            if row.is_empty() {
                self.terms.remove(&inputs);
            }
        }
    }

    /// Iterate over `(inputs, output, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], usize, &Q)> {
        self.terms
            .iter()
            .flat_map(|(i, row)| row.iter().map(move |(&o, c)| (i.as_slice(), o, c)))
    }

    /// Value on a basis tuple, as output index to coefficient.
    pub fn eval(&self, inputs: &[usize]) -> BTreeMap<usize, Q> {
        self.terms.get(inputs).cloned().unwrap_or_default()
    }

    pub fn coefficient(&self, inputs: &[usize], output: usize) -> Q {
        self.terms
            .get(inputs)
            .and_then(|r| r.get(&output))
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    fn same_signature(&self, other: &MultiMap) -> Result<()> {
        if self.arity != other.arity || self.target != other.target {
            return Err(Error::Degree(format!(
                "cannot add maps of arity {} and {}",
                self.arity, other.arity
            )));
        }
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::Degree(format!(
                "cannot add maps of degree {} and {}",
                self.degree, other.degree
            )));
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &MultiMap, c: &Q) -> Result<()> {
        self.same_signature(other)?;
        if self.is_zero() {
            self.degree = other.degree;
        }
        for (i, o, v) in other.terms() {
            self.add_term(i.to_vec(), o, v * c);
        }
        Ok(())
    }

    pub fn add(&mut self, other: &MultiMap) -> Result<()> {
        self.add_scaled(other, &Q::one())
    }

    pub fn sub(&self, other: &MultiMap) -> Result<MultiMap> {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::one())?;
        Ok(out)
    }

    pub fn scaled(&self, c: &Q) -> MultiMap {
        let mut out = MultiMap::zero(self.arity, self.target, self.degree);
        for (i, o, v) in self.terms() {
            out.add_term(i.to_vec(), o, v * c);
        }
        out
    }

    /// `self ∘_i g` with one-based `i`.
    pub fn compose(&self, i: usize, g: &MultiMap, m: &GradedModule) -> Result<MultiMap> {
        if g.target != Target::Module {
            return Err(Error::Precondition("only module-valued maps can be inserted".into()));
        }
        if i == 0 || i > self.arity {
            return Err(Error::IndexOutOfRange { index: i, len: self.arity });
        }
        let mut out =
            MultiMap::zero(self.arity + g.arity - 1, self.target, self.degree + g.degree);
        // index g's terms by output
        let mut by_output: BTreeMap<usize, Vec<(&[usize], &Q)>> = BTreeMap::new();
        for (gi, go, gc) in g.terms() {
            by_output.entry(go).or_default().push((gi, gc));
        }
        for (fi, row) in &self.terms {
            let Some(gs) = by_output.get(&fi[i - 1]) else { continue };
            let before: i64 = fi[..i - 1].iter().map(|&a| m.degree(a)).sum();
            let sign = koszul(g.degree * before);
            for &(gi, gc) in gs {
                let mut input = Vec::with_capacity(out.arity);
                input.extend_from_slice(&fi[..i - 1]);
                input.extend_from_slice(gi);
                input.extend_from_slice(&fi[i..]);
                for (&o, fc) in row {
                    out.add_term(input.clone(), o, &sign * fc * gc);
                }
            }
        }
        Ok(out)
    }

    /// `self ∘ σ_#` where `σ_#(x₁⊗…⊗x_k) = ±x_{σ⁻¹(1)}⊗…⊗x_{σ⁻¹(k)}` with the
    /// Koszul sign of the rearrangement.
    pub fn permute_inputs(&self, sigma: &Perm, m: &GradedModule) -> Result<MultiMap> {
        if sigma.len() != self.arity {
            return Err(Error::SizeMismatch { expected: self.arity, got: sigma.len() });
        }
        let k = self.arity;
        let inv = sigma.inverse();
        let mut out = MultiMap::zero(k, self.target, self.degree);
        for (y, row) in &self.terms {
            let x: Vec<usize> = (0..k).map(|p| y[sigma.get(p) as usize]).collect();
            let mut parity = 0;
            for j in 0..k {
                for jj in j + 1..k {
                    if inv.get(j) > inv.get(jj) {
                        parity += m.degree(y[j]) * m.degree(y[jj]);
                    }
                }
            }
            let sign = koszul(parity);
            for (&o, c) in row {
                out.add_term(x.clone(), o, &sign * c);
            }
        }
        Ok(out)
    }

    /// `Σ_i self ∘_i d`, the map precomposed with the differential of the
    /// tensor power.
    pub fn precompose_d(&self, d: &MultiMap, m: &GradedModule) -> Result<MultiMap> {
        let mut out = MultiMap::zero(self.arity, self.target, self.degree + d.degree);
        for i in 1..=self.arity {
            out.add(&self.compose(i, d, m)?)?;
        }
        Ok(out)
    }

    /// `[D, f] = d f − (−1)^{sign_degree} f d`. The sign exponent is the
    /// degree of `f` unless the caller shifts it.
    pub fn bracket_with(&self, d: &MultiMap, m: &GradedModule, sign_degree: i64) -> Result<MultiMap> {
        let mut out = match self.target {
            Target::Module => d.compose(1, self, m)?,
            Target::Scalar => MultiMap::zero(self.arity, Target::Scalar, self.degree + 1),
        };
        out.add_scaled(&self.precompose_d(d, m)?, &-koszul(sign_degree))?;
        out.degree = self.degree + d.degree;
        Ok(out)
    }

    pub fn bracket(&self, d: &MultiMap, m: &GradedModule) -> Result<MultiMap> {
        self.bracket_with(d, m, self.degree)
    }

    /// Check that every structure constant has the declared degree.
    pub fn check_homogeneous(&self, m: &GradedModule) -> Result<()> {
        for (i, o, _) in self.terms() {
            if let Some(&bad) = i.iter().chain([&o]).find(|&&x| x >= m.dim()) {
                return Err(Error::IndexOutOfRange { index: bad, len: m.dim() });
            }
            let input: i64 = i.iter().map(|&a| m.degree(a)).sum();
            let output = match self.target {
                Target::Module => m.degree(o),
                Target::Scalar if o == 0 => 0,
                Target::Scalar => return Err(Error::Degree("scalar output index must be 0".into())),
            };
            if output - input != self.degree {
                return Err(Error::Degree(format!(
                    "term {:?} -> {} has degree {}, declared {}",
                    i,
                    o,
                    output - input,
                    self.degree
                )));
            }
        }
        Ok(())
    }
}
