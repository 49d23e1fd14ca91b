//! Command-line definition and execution.
//!
//! [`execute`] turns parsed arguments into the exact bytes to print, so the
//! binary and the tests share one code path.

use anyhow::{bail, ensure, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use pairahedra::diagonal::{delta_c, delta_c_mod_higher};
use pairahedra::endo::tensor::tensor_structure;
use pairahedra::endo::{MultiMap, Target};
use pairahedra::homology::{homology, Complex, ComplexReport};
use pairahedra::operad_c::{boundary_c, compose_c_elem, CElement};
use pairahedra::operad_q::{boundary_q, compose_q_elem};
use pairahedra::tamari::{dmax, dmin, Poset};
use pairahedra::transfer::{p_map, q_map};
use pairahedra::{CBasis, Context, Diagram, Shape};

use crate::format::{c_json, c_text, parse_c, parse_q, q_json, q_text, tensor_json, tensor_text};
use crate::{dot, fixture, suite};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Which {
    /// Cellular generators.
    C,
    /// Cubical generators.
    Q,
}

#[derive(Debug, Parser)]
#[command(name = "pairahedra", version, about = "Exact computations in the operads of planar diagrams")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value = "text", global = true)]
    pub format: Format,
    /// Draw posets (enumerate at degree 0) or complexes (homology) as DOT.
    #[arg(long, global = true)]
    pub dot: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the diagrams of a shape class in one degree, e.g. `enumerate I2,0 1`.
    Enumerate { shape: String, degree: usize },
    /// Boundary of a generator.
    Boundary { which: Which, generator: String },
    /// Partial composition `x ∘_i y`, `i` one based.
    Compose { which: Which, x: String, i: usize, y: String },
    /// The minimal and maximal binary refinements of a diagram.
    Minmax { diagram: String },
    /// Whether `b1 ≤ b2` in the order on binary diagrams.
    Leq { b1: String, b2: String },
    /// The subdivision map from cellular to cubical chains.
    Qmap { generator: String },
    /// The retraction from cubical to cellular chains.
    Pmap { generator: String },
    /// The cellular diagonal of a corolla (given by its shape) or of a generator.
    Diagonal {
        corolla: String,
        /// Drop terms that use an inner product other than the pairing.
        #[arg(long)]
        mod_higher: bool,
    },
    /// Cell counts and Betti numbers of a shape class.
    Homology {
        shape: String,
        /// Use the cubical subdivision.
        #[arg(long)]
        q: bool,
    },
    /// The products induced on the tensor product of two fixtures.
    TensorAinf {
        a: String,
        b: String,
        #[arg(long)]
        arity: usize,
    },
    /// Print a built-in or file fixture as fixture JSON, after validating it.
    Fixture { name: String },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, default_value_t = 6)]
        max_leaves: usize,
    },
}

/// Bytes to print and whether the command succeeded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub success: bool,
}

impl Output {
    fn ok(mut text: String) -> Output {
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Output { text, success: true }
    }
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)?)
}

fn no_dot(cli: &Cli) -> Result<()> {
    ensure!(!cli.dot, "--dot applies to enumerate (degree 0) and homology");
    Ok(())
}

fn diagram(s: &str) -> Result<Diagram> {
    Diagram::parse(s).with_context(|| format!("diagram {s:?}"))
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let ctx = Context::new();
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Enumerate { shape, degree } => {
            let shape = Shape::parse(shape)?;
            ensure!(*degree + 2 <= shape.leaves(), "{shape} has cells in degrees 0 to {}", shape.leaves() - 2);
            if cli.dot {
                ensure!(*degree == 0, "--dot draws the order on binary diagrams, so the degree must be 0");
                return Ok(Output::ok(dot::poset_dot(&Poset::build(shape)?)));
            }
            let ds: Vec<String> = Diagram::enumerate(shape, *degree).iter().map(|d| d.to_string()).collect();
            Ok(Output::ok(if json {
                to_json(&json!({"shape": shape.to_string(), "degree": degree, "diagrams": ds}))?
            } else {
                ds.join("\n")
            }))
        }
        Command::Boundary { which, generator } => {
            no_dot(cli)?;
            Ok(Output::ok(match which {
                Which::C => {
                    let b = boundary_c(&parse_c(generator)?)?;
                    if json { to_json(&c_json(&b))? } else { c_text(&b) }
                }
                Which::Q => {
                    let b = boundary_q(&parse_q(generator)?)?;
                    if json { to_json(&q_json(&b))? } else { q_text(&b) }
                }
            }))
        }
        Command::Compose { which, x, i, y } => {
            no_dot(cli)?;
            Ok(Output::ok(match which {
                Which::C => {
                    let z = compose_c_elem(&parse_c(x)?, *i, &parse_c(y)?)?;
                    if json { to_json(&c_json(&z))? } else { c_text(&z) }
                }
                Which::Q => {
                    let z = compose_q_elem(&parse_q(x)?, *i, &parse_q(y)?)?;
                    if json { to_json(&q_json(&z))? } else { q_text(&z) }
                }
            }))
        }
        Command::Minmax { diagram: d } => {
            no_dot(cli)?;
            let d = diagram(d)?;
            let (lo, hi) = (dmin(&d), dmax(&d));
            Ok(Output::ok(if json {
                to_json(&json!({"diagram": d.to_string(), "min": lo.to_string(), "max": hi.to_string()}))?
            } else {
                format!("min {lo}\nmax {hi}")
            }))
        }
        Command::Leq { b1, b2 } => {
            no_dot(cli)?;
            let (a, b) = (diagram(b1)?, diagram(b2)?);
            let r = ctx.leq(&a, &b)?;
            Ok(Output::ok(if json { to_json(&json!({ "leq": r }))? } else { r.to_string() }))
        }
        Command::Qmap { generator } => {
            no_dot(cli)?;
            let y = q_map(&ctx, &parse_c(generator)?)?;
            Ok(Output::ok(if json { to_json(&q_json(&y))? } else { q_text(&y) }))
        }
        Command::Pmap { generator } => {
            no_dot(cli)?;
            let x = p_map(&ctx, &parse_q(generator)?)?;
            Ok(Output::ok(if json { to_json(&c_json(&x))? } else { c_text(&x) }))
        }
        Command::Diagonal { corolla, mod_higher } => {
            no_dot(cli)?;
            let x = match Shape::parse(corolla) {
                Ok(shape) => CElement::single(CBasis::canonical(Diagram::corolla(shape)?), 1),
                Err(_) => parse_c(corolla).context("expected a shape such as I2,0 or a generator")?,
            };
            let t = if *mod_higher { delta_c_mod_higher(&ctx, &x)? } else { delta_c(&ctx, &x)? };
            Ok(Output::ok(if json { to_json(&tensor_json(&t))? } else { tensor_text(&t) }))
        }
        Command::Homology { shape, q } => {
            let shape = Shape::parse(shape)?;
            let complex = if *q { Complex::Cubical } else { Complex::Cellular };
            if cli.dot {
                return Ok(Output::ok(dot::complex_dot(shape, complex)?));
            }
            let r = homology(shape, complex)?;
            Ok(Output::ok(if json { to_json(&report_json(&r))? } else { report_text(&r) }))
        }
        Command::TensorAinf { a, b, arity } => {
            no_dot(cli)?;
            ensure!((2..=6).contains(arity), "arity must be between 2 and 6");
            let (sa, sb) = (fixture::load(a)?, fixture::load(b)?);
            if !(sa.has_mu && sb.has_mu) {
                bail!("both fixtures need products");
            }
            let t = tensor_structure(&ctx, &sa, &sb, *arity)?;
            let failing: Vec<String> =
                t.failing_relations(*arity)?.into_iter().map(|(s, _)| s.to_string()).collect();
            let names = &t.module.names;
            let maps: Vec<(usize, &MultiMap)> = (2..=*arity).map(|k| (k, &t.mu[&k])).collect();
            if json {
                let m: Vec<_> = maps
                    .iter()
                    .map(|(k, f)| json!({"arity": k, "degree": f.degree, "terms": terms_json(f, names)}))
                    .collect();
                return Ok(Output::ok(to_json(&json!({
                    "basis": names,
                    "degrees": t.module.degrees,
                    "products": m,
                    "failing_relations": failing,
                }))?));
            }
            let mut out = format!("basis {}\n", names.join(" "));
            for (k, f) in maps {
                out.push_str(&format!("mu{k} degree {}\n", f.degree));
                for line in terms_text(f, names) {
                    out.push_str(&format!("  {line}\n"));
                }
            }
            if failing.is_empty() {
                out.push_str(&format!("structure relations hold up to {arity} leaves"));
            } else {
                out.push_str(&format!("structure relations fail at {}", failing.join(", ")));
            }
            Ok(Output { text: out + "\n", success: failing.is_empty() })
        }
        Command::Fixture { name } => {
            no_dot(cli)?;
            let s = fixture::load(name)?;
            let label = std::path::Path::new(name).file_stem().and_then(|f| f.to_str()).unwrap_or(name);
            Ok(Output::ok(to_json(&fixture::FixtureFile::from_structure(label, &s))?))
        }
        Command::Verify { max_leaves } => {
            no_dot(cli)?;
            let r = suite::run_suite(*max_leaves)?;
            let text = if json { to_json(&r)? + "\n" } else { r.text() };
            Ok(Output { text, success: r.passed })
        }
    }
}

fn terms_text(f: &MultiMap, names: &[String]) -> Vec<String> {
    f.terms()
        .map(|(ins, o, c)| {
            let args: Vec<&str> = ins.iter().map(|&i| names[i].as_str()).collect();
            let out = if f.target == Target::Module { names[o].as_str() } else { "1" };
            format!("({}) -> {c} {out}", args.join(", "))
        })
        .collect()
}

fn terms_json(f: &MultiMap, names: &[String]) -> Vec<serde_json::Value> {
    f.terms()
        .map(|(ins, o, c)| {
            let args: Vec<&str> = ins.iter().map(|&i| names[i].as_str()).collect();
            json!({"inputs": args, "output": names[o], "coef": c.to_string()})
        })
        .collect()
}

fn complex_name(c: Complex) -> &'static str {
    match c {
        Complex::Cellular => "cellular",
        Complex::Cubical => "cubical",
    }
}

fn report_text(r: &ComplexReport) -> String {
    let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    format!(
        "shape {}\ncomplex {}\nf-vector {}\nbetti {}\neuler {}\nacyclic {}",
        r.shape,
        complex_name(r.complex),
        join(&r.f_vector),
        join(&r.betti),
        r.euler,
        r.is_acyclic()
    )
}

fn report_json(r: &ComplexReport) -> serde_json::Value {
    json!({
        "shape": r.shape.to_string(),
        "complex": complex_name(r.complex),
        "f_vector": r.f_vector,
        "betti": r.betti,
        "euler": r.euler,
        "acyclic": r.is_acyclic(),
    })
}
