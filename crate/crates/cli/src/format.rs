//! Text and JSON forms of generators, linear combinations and tensors.
//!
//! A generator is written `coef * (diagram ; perm ; [keys] ; metric:[keys])`.
//! The permutation lists one-based images (`id` for the identity), the first
//! key list is the orientation as an ordered wedge, and edge keys are cyclic
//! leaf intervals `a-b`. Cellular generators omit the metric part; cubical
//! generators orient exactly their metric edges. The coefficient defaults to
//! 1. Output is always normalized: keys sorted, sign folded into the
//! coefficient.

use anyhow::{anyhow, bail, ensure, Context as _, Result};
use serde::{Deserialize, Serialize};

use pairahedra::diagonal::CTensor;
use pairahedra::operad_c::{self, CBasis, CElement};
use pairahedra::operad_q::{self, QBasis, QElement};
use pairahedra::{Diagram, EdgeKey, Orientation, Perm};

/// Serialized generator. `coef` is absent inside tensors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    #[serde(default = "one", skip_serializing_if = "Option::is_none")]
    pub coef: Option<i64>,
    pub diagram: String,
    /// One-based images of the labeling permutation.
    pub perm: Vec<usize>,
    pub orientation: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<Vec<String>>,
}

fn one() -> Option<i64> {
    Some(1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorTermJson {
    pub coef: i64,
    pub left: GeneratorJson,
    pub right: GeneratorJson,
}

/// The fields shared by both generator kinds before normalization.
struct Parsed {
    coef: i64,
    diagram: Diagram,
    perm: Perm,
    orientation: Vec<EdgeKey>,
    metric: Option<Vec<EdgeKey>>,
}

fn parse_perm(s: &str, n: usize) -> Result<Perm> {
    let s = s.trim();
    if s == "id" {
        return Ok(Perm::identity(n));
    }
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| anyhow!("permutation must look like [2,1,3] or id, got {s:?}"))?;
    let images: Vec<usize> = inner
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<usize>().with_context(|| format!("bad image {p:?}")))
        .collect::<Result<_>>()?;
    ensure!(images.iter().all(|&i| i >= 1), "permutation images are one based");
    perm_from_one_based(&images, n)
}

fn perm_from_one_based(images: &[usize], n: usize) -> Result<Perm> {
    ensure!(images.len() == n, "permutation has {} entries, the diagram has {n} leaves", images.len());
    let zero: Vec<u8> = images.iter().map(|&i| (i - 1) as u8).collect();
    Ok(Perm::from_images(zero)?)
}

fn parse_keys(s: &str, n: usize) -> Result<Vec<EdgeKey>> {
    let s = s.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| anyhow!("edge keys must be bracketed, got {s:?}"))?;
    inner
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| Ok(EdgeKey::parse(p, n)?))
        .collect()
}

fn parse_text(text: &str) -> Result<Parsed> {
    let text = text.trim();
    let (coef, rest) = match text.split_once('*') {
        Some((c, r)) if !c.trim().is_empty() && !c.contains('(') => {
            (c.trim().parse::<i64>().with_context(|| format!("bad coefficient {c:?}"))?, r)
        }
        _ => (1, text),
    };
    let body = rest
        .trim()
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| anyhow!("a generator is written coef * (diagram ; perm ; [keys])"))?;
    let (diagram, tail) = Diagram::parse_prefix(body)?;
    let n = diagram.leaf_count();
    let fields: Vec<&str> = tail.split(';').map(str::trim).collect();
    ensure!(fields.first() == Some(&""), "expected ';' after the diagram");
    let fields = &fields[1..];
    ensure!(
        (1..=3).contains(&fields.len()),
        "expected perm, orientation and optionally metric:[...] after the diagram"
    );
    let perm = parse_perm(fields[0], n)?;
    let orientation = match fields.get(1) {
        Some(s) => parse_keys(s, n)?,
        None => diagram.edge_keys(),
    };
    let metric = match fields.get(2) {
        Some(s) => {
            let m = s.strip_prefix("metric:").ok_or_else(|| anyhow!("expected metric:[...], got {s:?}"))?;
            Some(parse_keys(m, n)?)
        }
        None => None,
    };
    Ok(Parsed { coef, diagram, perm, orientation, metric })
}

fn parse_json(text: &str) -> Result<Parsed> {
    let g: GeneratorJson = serde_json::from_str(text).context("generator JSON")?;
    let diagram = Diagram::parse(&g.diagram)?;
    let n = diagram.leaf_count();
    ensure!(g.perm.iter().all(|&i| i >= 1), "permutation images are one based");
    let perm = perm_from_one_based(&g.perm, n)?;
    let keys = |v: &[String]| v.iter().map(|k| Ok(EdgeKey::parse(k, n)?)).collect::<Result<Vec<_>>>();
    Ok(Parsed {
        coef: g.coef.unwrap_or(1),
        orientation: keys(&g.orientation)?,
        metric: g.metric.as_deref().map(keys).transpose()?,
        diagram,
        perm,
    })
}

fn parse_any(text: &str) -> Result<Parsed> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

/// A cellular generator in text or JSON form.
pub fn parse_c(text: &str) -> Result<CElement> {
    let p = parse_any(text)?;
    if let Some(m) = &p.metric {
        ensure!(m.is_empty(), "cellular generators carry no metric edges");
    }
    let x = operad_c::generator(p.diagram, p.perm, &Orientation::from_edges(p.orientation))?;
    Ok(x.scaled(p.coef)?)
}

/// A cubical generator. Without a metric part every oriented edge is metric.
pub fn parse_q(text: &str) -> Result<QElement> {
    let p = parse_any(text)?;
    if let Some(m) = &p.metric {
        let mut a = m.clone();
        let mut b = p.orientation.clone();
        a.sort();
        b.sort();
        if a != b {
            bail!("the orientation must list exactly the metric edges");
        }
    }
    let x = operad_q::generator(p.diagram, p.perm, &Orientation::from_edges(p.orientation))?;
    Ok(x.scaled(p.coef)?)
}

fn render_perm(p: &Perm) -> String {
    if p.is_identity() {
        return "id".into();
    }
    let v: Vec<String> = p.images().iter().map(|&i| (i as usize + 1).to_string()).collect();
    format!("[{}]", v.join(","))
}

fn render_keys(keys: &[EdgeKey], n: usize) -> String {
    let v: Vec<String> = keys.iter().map(|k| k.render(n)).collect();
    format!("[{}]", v.join(","))
}

pub fn c_basis_text(b: &CBasis) -> String {
    let n = b.leaf_count();
    format!("({} ; {} ; {})", b.diagram, render_perm(&b.labeling), render_keys(&b.diagram.edge_keys(), n))
}

pub fn q_basis_text(b: &QBasis) -> String {
    let n = b.leaf_count();
    let m = render_keys(&b.metric, n);
    format!("({} ; {} ; {m} ; metric:{m})", b.diagram, render_perm(&b.labeling))
}

fn lines<K>(terms: impl Iterator<Item = (K, i64)>, f: impl Fn(&K) -> String) -> String {
    let v: Vec<String> = terms.map(|(k, c)| format!("{c} * {}", f(&k))).collect();
    if v.is_empty() {
        "0".into()
    } else {
        v.join("\n")
    }
}

pub fn c_text(x: &CElement) -> String {
    lines(x.iter().map(|(k, &c)| (k, c)), |k| c_basis_text(k))
}

pub fn q_text(x: &QElement) -> String {
    lines(x.iter().map(|(k, &c)| (k, c)), |k| q_basis_text(k))
}

pub fn tensor_text(t: &CTensor) -> String {
    lines(t.iter().map(|(k, &c)| (k, c)), |(a, b)| format!("{} ⊗ {}", c_basis_text(a), c_basis_text(b)))
}

fn keys_json(keys: &[EdgeKey], n: usize) -> Vec<String> {
    keys.iter().map(|k| k.render(n)).collect()
}

fn perm_json(p: &Perm) -> Vec<usize> {
    p.images().iter().map(|&i| i as usize + 1).collect()
}

pub fn c_basis_json(b: &CBasis, coef: Option<i64>) -> GeneratorJson {
    let n = b.leaf_count();
    GeneratorJson {
        coef,
        diagram: b.diagram.to_string(),
        perm: perm_json(&b.labeling),
        orientation: keys_json(&b.diagram.edge_keys(), n),
        metric: None,
    }
}

pub fn q_basis_json(b: &QBasis, coef: Option<i64>) -> GeneratorJson {
    let n = b.leaf_count();
    GeneratorJson {
        coef,
        diagram: b.diagram.to_string(),
        perm: perm_json(&b.labeling),
        orientation: keys_json(&b.metric, n),
        metric: Some(keys_json(&b.metric, n)),
    }
}

pub fn c_json(x: &CElement) -> Vec<GeneratorJson> {
    x.iter().map(|(b, &c)| c_basis_json(b, Some(c))).collect()
}

pub fn q_json(x: &QElement) -> Vec<GeneratorJson> {
    x.iter().map(|(b, &c)| q_basis_json(b, Some(c))).collect()
}

pub fn tensor_json(t: &CTensor) -> Vec<TensorTermJson> {
    t.iter()
        .map(|((a, b), &c)| TensorTermJson { coef: c, left: c_basis_json(a, None), right: c_basis_json(b, None) })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let x = parse_c("-2 * ({(* *) ; | ; *} ; [2,1,3,4] ; [1-2])").unwrap();
        assert_eq!(x.len(), 1);
        assert_eq!(parse_c(&c_text(&x)).unwrap(), x);
        let q = parse_q("((((* *) *) *) ; id ; [1-3,1-2] ; metric:[1-2,1-3])").unwrap();
        assert_eq!(parse_q(&q_text(&q)).unwrap(), q);
    }

    #[test]
    fn reversed_wedge_flips_the_sign() {
        let a = parse_c("((((* *) *) *) ; id ; [1-2,1-3])").unwrap();
        let b = parse_c("((((* *) *) *) ; id ; [1-3,1-2])").unwrap();
        assert_eq!(a.scaled(-1).unwrap(), b);
    }

    #[test]
    fn json_mirrors_text() {
        let x = parse_c("3 * ({(* *) ; | ; *} ; id ; [1-2])").unwrap();
        let j = serde_json::to_string(&c_json(&x)[0]).unwrap();
        assert_eq!(parse_c(&j).unwrap(), x);
    }

    #[test]
    fn malformed_input_is_rejected() {
        assert!(parse_c("((* *) * ; id)").is_err());
        assert!(parse_c("(* * ; [1] ; [])").is_err());
        assert!(parse_c("((* *) * ; id ; [1-2] ; metric:[1-2])").is_err());
        assert!(parse_q("((* *) * ; id ; [] ; metric:[1-2])").is_err());
    }
}
