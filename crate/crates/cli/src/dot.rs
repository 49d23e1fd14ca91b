//! Graphviz output for the order on binary diagrams and for cell complexes.

use std::fmt::Write as _;

use anyhow::Result;

use pairahedra::homology::Complex;
use pairahedra::operad_c::{boundary_basis as boundary_c, CBasis};
use pairahedra::operad_q::{boundary_basis as boundary_q, QBasis};
use pairahedra::tamari::Poset;
use pairahedra::{Diagram, Shape};

use crate::format::{c_basis_text, q_basis_text};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Cover graph of the order, drawn bottom to top. Edge labels name the move
/// and the edge key it flips.
pub fn poset_dot(p: &Poset) -> String {
    let n = p.shape.leaves();
    let mut out = format!("digraph {} {{\n  rankdir=BT;\n  node [shape=box];\n", quote(&p.shape.to_string()));
    for (i, d) in p.elems.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(&d.to_string()));
    }
    for (i, ups) in p.up.iter().enumerate() {
        for (j, step) in ups {
            let label = format!("m{} {}", step.id, step.site.render(n));
            let _ = writeln!(out, "  n{i} -> n{j} [label={}];", quote(&label));
        }
    }
    out.push_str("}\n");
    out
}

/// Boundary incidences of every cell of the complex on `shape`: an arrow
/// from each cell to each face, labelled with the coefficient.
pub fn complex_dot(shape: Shape, complex: Complex) -> Result<String> {
    let top = shape.leaves() - 2;
    let mut labels: Vec<Vec<String>> = Vec::new();
    let mut faces: Vec<Vec<Vec<(String, i64)>>> = Vec::new();
    for k in 0..=top {
        let (l, f): (Vec<String>, Vec<Vec<(String, i64)>>) = match complex {
            Complex::Cellular => Diagram::enumerate(shape, k)
                .into_iter()
                .map(|d| {
                    let c = CBasis::canonical(d);
                    let b = boundary_c(&c)?;
                    Ok((c_basis_text(&c), b.iter().map(|(f, &v)| (c_basis_text(f), v)).collect()))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip(),
            Complex::Cubical => QBasis::enumerate(shape, k)
                .into_iter()
                .map(|c| {
                    let b = boundary_q(&c)?;
                    Ok((q_basis_text(&c), b.iter().map(|(f, &v)| (q_basis_text(f), v)).collect()))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .unzip(),
        };
        labels.push(l);
        faces.push(f);
    }
    let id = |k: usize, label: &str| -> String {
        let i = labels[k].iter().position(|l| l == label).expect("faces are cells");
        format!("c{k}_{i}")
    };
    let kind = match complex {
        Complex::Cellular => "cellular",
        Complex::Cubical => "cubical",
    };
    let mut out = format!("digraph {} {{\n  node [shape=box];\n", quote(&format!("{shape} {kind}")));
    for (k, row) in labels.iter().enumerate() {
        for (i, l) in row.iter().enumerate() {
            let _ = writeln!(out, "  c{k}_{i} [label={}];", quote(l));
        }
    }
    for k in 1..=top {
        for (i, fs) in faces[k].iter().enumerate() {
            for (f, v) in fs {
                let _ = writeln!(out, "  c{k}_{i} -> {} [label=\"{v:+}\"];", id(k - 1, f));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}
