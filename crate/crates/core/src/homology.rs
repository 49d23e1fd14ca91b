//! Exact ranks of the cellular boundary maps of one shape class.
//!
//! Ranks are computed over `ℚ` by fraction-free sparse elimination on integer
//! rows: a row is reduced against a pivot row as `p·row − a·pivot`, then
//! divided by the gcd of its entries. Nothing is rounded, so a zero Betti
//! number is exact. Arithmetic runs in `i128` and reports overflow instead of
//! wrapping.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::diagram::{Diagram, Shape};
use crate::error::{Error, Result};
use crate::operad_c::{boundary_basis as boundary_c, CBasis};
use crate::operad_q::{boundary_basis as boundary_q, QBasis};

/// Which of the two cell structures on a shape class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Complex {
    /// Cells are diagrams.
    Cellular,
    /// Cells are diagrams with a metric marking.
    Cubical,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexReport {
    pub shape: Shape,
    pub complex: Complex,
    /// Number of cells in each degree, starting at degree zero.
    pub f_vector: Vec<usize>,
    pub betti: Vec<usize>,
    pub euler: i64,
}

impl ComplexReport {
    pub fn is_acyclic(&self) -> bool {
        self.betti.first() == Some(&1) && self.betti.iter().skip(1).all(|&b| b == 0)
    }
}

type Row = Vec<(usize, i128)>;

fn gcd(mut a: i128, mut b: i128) -> i128 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `p·row − a·pivot` for sorted sparse rows, dropping the leading column.
fn eliminate(row: &Row, pivot: &Row) -> Result<Row> {
    let p = pivot[0].1;
    let a = row[0].1;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    let mul = |x: i128, y: i128| x.checked_mul(y).ok_or(Error::Overflow);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        let (c, v) = if ci < cj {
            i += 1;
            (ci, mul(p, row[i - 1].1)?)
        } else if cj < ci {
            j += 1;
            (cj, -mul(a, pivot[j - 1].1)?)
        } else {
            i += 1;
            j += 1;
            let v = mul(p, row[i - 1].1)?.checked_sub(mul(a, pivot[j - 1].1)?);
            (ci, v.ok_or(Error::Overflow)?)
        };
        if v != 0 {
            out.push((c, v));
        }
    }
    let g = out.iter().fold(0, |g, e| gcd(g, e.1));
    if g > 1 {
        for e in &mut out {
            e.1 /= g;
        }
    }
    Ok(out)
}

/// Rank over `ℚ` of a sparse integer matrix given by rows.
pub fn rank(rows: Vec<Row>) -> Result<usize> {
    let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
    let mut rows = rows;
    // short rows first keeps fill-in down
    rows.sort_by_key(|r| r.len());
    for mut row in rows {
        row.sort_by_key(|e| e.0);
        row.retain(|e| e.1 != 0);
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(p) => row = eliminate(&row, p)?,
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    Ok(pivots.len())
}

fn report(
    shape: Shape,
    complex: Complex,
    f_vector: Vec<usize>,
    ranks: Vec<usize>,
) -> ComplexReport {
    // ranks[k] = rank of ∂ out of degree k, with ranks[0] = 0
    let top = f_vector.len();
    let betti = (0..top)
        .map(|k| f_vector[k] - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
        .collect();
    let euler = f_vector
        .iter()
        .enumerate()
        .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
        .sum();
    ComplexReport { shape, complex, f_vector, betti, euler }
}

/// Cell counts and Betti numbers of the complex on `shape`.
pub fn homology(shape: Shape, complex: Complex) -> Result<ComplexReport> {
    let n = shape.leaves();
    if n > 8 {
        return Err(Error::TooManyLeaves(n));
    }
    if !shape.is_valid() {
        return Err(Error::ShapeMismatch);
    }
    let top = n - 2;
    match complex {
        Complex::Cellular => {
            let cells: Vec<Vec<CBasis>> = (0..=top)
                .map(|k| Diagram::enumerate(shape, k).into_iter().map(CBasis::canonical).collect())
                .collect();
            let index: Vec<BTreeMap<&CBasis, usize>> =
                cells.iter().map(|v| v.iter().enumerate().map(|(i, c)| (c, i)).collect()).collect();
            let mut ranks = alloc::vec![0];
            for k in 1..=top {
                let mut rows = Vec::with_capacity(cells[k].len());
                for c in &cells[k] {
                    let b = boundary_c(c)?;
                    rows.push(b.iter().map(|(f, &v)| (index[k - 1][f], v as i128)).collect());
                }
                ranks.push(rank(rows)?);
            }
            Ok(report(shape, complex, cells.iter().map(Vec::len).collect(), ranks))
        }
        Complex::Cubical => {
            let cells: Vec<Vec<QBasis>> = (0..=top).map(|k| QBasis::enumerate(shape, k)).collect();
            let index: Vec<BTreeMap<&QBasis, usize>> =
                cells.iter().map(|v| v.iter().enumerate().map(|(i, c)| (c, i)).collect()).collect();
            let mut ranks = alloc::vec![0];
            for k in 1..=top {
                let mut rows = Vec::with_capacity(cells[k].len());
                for c in &cells[k] {
                    let b = boundary_q(c)?;
                    rows.push(b.iter().map(|(f, &v)| (index[k - 1][f], v as i128)).collect());
                }
                ranks.push(rank(rows)?);
            }
            Ok(report(shape, complex, cells.iter().map(Vec::len).collect(), ranks))
        }
    }
}
