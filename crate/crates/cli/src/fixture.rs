//! Structure fixtures as JSON files.
//!
//! ```json
//! {
//!   "name": "two-term",
//!   "basis": [{"name": "u", "degree": 0}, {"name": "v", "degree": 1}],
//!   "rho_degree": -1,
//!   "families": ["mu", "lambda", "rho"],
//!   "differential": [{"inputs": ["u"], "output": "v", "coef": "1"}],
//!   "maps": [{"shape": "I0,0", "terms": [{"inputs": ["u", "v"], "coef": "1"}]}]
//! }
//! ```
//!
//! Coefficients are exact rationals written `"p/q"` or `"p"`. Scalar-valued
//! maps (inner shapes) have no `output`. A family listed in `families` but
//! without maps is populated with zero maps. Every loaded fixture is
//! validated against the structure relations before it is returned.

use std::path::Path;

use anyhow::{anyhow, bail, ensure, Context as _, Result};
use serde::{Deserialize, Serialize};

use pairahedra::endo::fixtures::{self, CHECK_LEAVES};
use pairahedra::endo::{GradedModule, MultiMap, StructureSet, Target, Q};
use pairahedra::Shape;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub inputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub coef: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapEntry {
    pub shape: String,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub name: String,
    pub basis: Vec<BasisEntry>,
    #[serde(default)]
    pub rho_degree: i64,
    #[serde(default)]
    pub families: Vec<String>,
    #[serde(default)]
    pub differential: Vec<Term>,
    #[serde(default)]
    pub maps: Vec<MapEntry>,
}

fn parse_rational(s: &str) -> Result<Q> {
    let q: Q = s.trim().parse().map_err(|_| anyhow!("bad rational {s:?}, expected \"p/q\""))?;
    Ok(q)
}

fn fill(map: &mut MultiMap, terms: &[Term], names: &[String]) -> Result<()> {
    let index = |n: &str| {
        names.iter().position(|b| b == n).ok_or_else(|| anyhow!("unknown basis element {n:?}"))
    };
    for t in terms {
        ensure!(t.inputs.len() == map.arity, "term {:?} has the wrong arity {}", t.inputs, map.arity);
        let inputs = t.inputs.iter().map(|n| index(n)).collect::<Result<Vec<_>>>()?;
        let output = match (map.target, &t.output) {
            (Target::Module, Some(o)) => index(o)?,
            (Target::Module, None) => bail!("module-valued term {:?} needs an output", t.inputs),
            (Target::Scalar, None) => 0,
            (Target::Scalar, Some(_)) => bail!("scalar-valued term {:?} takes no output", t.inputs),
        };
        map.add_term(inputs, output, parse_rational(&t.coef)?);
    }
    Ok(())
}

impl FixtureFile {
    /// Build and validate the structure.
    pub fn to_structure(&self) -> Result<StructureSet> {
        let module = GradedModule::new(
            self.basis.iter().map(|b| b.name.clone()).collect(),
            self.basis.iter().map(|b| b.degree).collect(),
        )?;
        let names = module.names.clone();
        let mut d = MultiMap::zero(1, Target::Module, 1);
        fill(&mut d, &self.differential, &names).context("differential")?;
        let mut s = StructureSet::new(module, d);
        s.rho_degree = self.rho_degree;
        for f in &self.families {
            match f.as_str() {
                "mu" => s.has_mu = true,
                "lambda" => s.has_lambda = true,
                "rho" => s.has_rho = true,
                other => bail!("unknown family {other:?}, expected mu, lambda or rho"),
            }
        }
        for m in &self.maps {
            let shape = Shape::parse(&m.shape)?;
            fill(s.map_mut(shape), &m.terms, &names).with_context(|| format!("map {shape}"))?;
        }
        fixtures::check(&s, CHECK_LEAVES).with_context(|| format!("fixture {}", self.name))?;
        Ok(s)
    }

    pub fn from_structure(name: &str, s: &StructureSet) -> FixtureFile {
        let names = &s.module.names;
        let terms = |m: &MultiMap| -> Vec<Term> {
            m.terms()
                .map(|(i, o, c)| Term {
                    inputs: i.iter().map(|&k| names[k].clone()).collect(),
                    output: (m.target == Target::Module).then(|| names[o].clone()),
                    coef: c.to_string(),
                })
                .collect()
        };
        let mut families = Vec::new();
        for (flag, n) in [(s.has_mu, "mu"), (s.has_lambda, "lambda"), (s.has_rho, "rho")] {
            if flag {
                families.push(n.to_string());
            }
        }
        FixtureFile {
            name: name.to_string(),
            basis: names
                .iter()
                .zip(&s.module.degrees)
                .map(|(n, &d)| BasisEntry { name: n.clone(), degree: d })
                .collect(),
            rho_degree: s.rho_degree,
            families,
            differential: terms(&s.d),
            maps: s
                .maps()
                .into_iter()
                .filter(|(_, m)| !m.is_zero())
                .map(|(shape, m)| MapEntry { shape: shape.to_string(), terms: terms(m) })
                .collect(),
        }
    }
}

/// Parse and validate fixture JSON.
pub fn parse(json: &str) -> Result<StructureSet> {
    let f: FixtureFile = serde_json::from_str(json).context("fixture JSON")?;
    f.to_structure()
}

/// A fixture file, or one of the built-in fixtures by name.
pub fn load(source: &str) -> Result<StructureSet> {
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {source}"))?;
        return parse(&text);
    }
    fixtures::by_name(source).map_err(|_| {
        anyhow!("{source:?} is neither a file nor a built-in fixture ({})", fixtures::names().join(", "))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_round_trip() {
        for name in fixtures::names() {
            let s = fixtures::by_name(name).unwrap();
            let f = FixtureFile::from_structure(name, &s);
            let json = serde_json::to_string_pretty(&f).unwrap();
            let back = parse(&json).unwrap();
            assert_eq!(FixtureFile::from_structure(name, &back), f);
        }
    }

    #[test]
    fn invalid_fixtures_are_rejected() {
        let bad_pairing = r#"{"name":"bad","basis":[{"name":"u","degree":0},{"name":"v","degree":1}],
            "rho_degree":-1,"families":["mu","lambda","rho"],
            "differential":[{"inputs":["u"],"output":"v","coef":"1"}],
            "maps":[{"shape":"I0,0","terms":[{"inputs":["u","v"],"coef":"1"},{"inputs":["v","u"],"coef":"1"}]}]}"#;
        assert!(parse(bad_pairing).is_err());
        let bad_rational = r#"{"name":"x","basis":[{"name":"a","degree":0}],
            "maps":[{"shape":"T2","terms":[{"inputs":["a","a"],"output":"a","coef":"1/0"}]}]}"#;
        assert!(parse(bad_rational).is_err());
        let unknown = r#"{"name":"x","basis":[{"name":"a","degree":0}],
            "maps":[{"shape":"T2","terms":[{"inputs":["a","b"],"output":"a","coef":"1"}]}]}"#;
        assert!(parse(unknown).is_err());
    }

    #[test]
    fn rationals_parse_exactly() {
        assert_eq!(parse_rational("-3/6").unwrap(), Q::new((-1).into(), 2.into()));
        assert!(parse_rational("0.5").is_err());
    }
}
