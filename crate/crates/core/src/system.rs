//! Line-oriented input format for linear systems and module presentations.
//!
//! ```text
//! derivations 1
//! partition 1
//! automorphisms 1
//! indeterminates y
//! coefficients symbolic
//! poly 1 d 0 s 1 y ; -1 d 1 s 0 y ; -1 sym a d 0 s 0 one
//! ```
//!
//! A monomial is `<coeff> d k1 .. km s l1 .. ln <target>`, where the
//! coefficient is a rational `p/q` (or integer), `sym <name>`, or a rational
//! followed by `sym <name>`. The target names an indeterminate, or is `one`
//! for the constant part, in which case the operator is applied to the
//! coefficient. Module files declare `module e1 .. eq` instead of
//! `indeterminates` and list relations on `rel` lines.

use num_rational::BigRational;

use crate::coeff::Coeff;
use crate::error::{parse_err, Error, Result};
use crate::lambda_monoid::{LambdaMonomial, Partition, Term};
use crate::lincomb::LinComb;
use crate::linpoly::{CoefficientModel, DsRing, LinearDSPolynomial};
use crate::numpoly::parse_rational;

/// A parsed system of linear equations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    pub ring: DsRing,
    pub names: Vec<String>,
    pub equations: Vec<LinearDSPolynomial>,
}

/// A parsed presentation of a module by generators and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFile {
    pub ring: DsRing,
    pub generators: Vec<String>,
    pub relations: Vec<LinComb>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputFile {
    System(LinearSystem),
    Module(ModuleFile),
}

#[derive(Default)]
struct Header {
    derivations: Option<usize>,
    partition: Option<Vec<usize>>,
    automorphisms: Option<usize>,
    names: Option<Vec<String>>,
    module: bool,
    model: Option<CoefficientModel>,
}

struct Context {
    partition: Partition,
    names: Vec<String>,
    model: CoefficientModel,
    module: bool,
}

fn parse_count(words: &[&str], line: usize, what: &str) -> Result<usize> {
    match words {
        [w] => w
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("`{}` expects a natural number, found `{}`", what, w))),
        _ => Err(parse_err(line, format!("`{}` expects exactly one number", what))),
    }
}

impl Header {
    fn context(&self, line: usize) -> Result<Context> {
        let m = self
            .derivations
            .ok_or_else(|| parse_err(line, "`derivations` must be declared before equations"))?;
        let n = self.automorphisms.unwrap_or(0);
        let blocks = match &self.partition {
            Some(b) => b.clone(),
            None if m == 0 => vec![],
            None => vec![m],
        };
        let partition = Partition::with_derivations(m, blocks, n)
            .map_err(|e| parse_err(line, e.to_string()))?;
        let names = self.names.clone().ok_or_else(|| {
            parse_err(line, "`indeterminates` (or `module`) must be declared before equations")
        })?;
        Ok(Context {
            partition,
            names,
            model: self.model.unwrap_or(CoefficientModel::RationalConstants),
            module: self.module,
        })
    }
}

fn parse_monomial(ctx: &Context, text: &str, line: usize) -> Result<(Option<Term>, Coeff)> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let m = ctx.partition.num_derivations();
    let n = ctx.partition.num_automorphisms();
    let mut pos = 0;
    let mut coeff = Coeff::one();
    let mut symbol = None;
    if let Some(w) = words.first() {
        if *w != "sym" && *w != "d" {
            let q: BigRational = parse_rational(w)
                .ok_or_else(|| parse_err(line, format!("malformed rational `{}`", w)))?;
            coeff = Coeff::rational(q);
            pos += 1;
        }
    }
    if words.get(pos) == Some(&"sym") {
        let name = words
            .get(pos + 1)
            .ok_or_else(|| parse_err(line, "`sym` needs a name"))?;
        if ctx.model == CoefficientModel::RationalConstants {
            return Err(parse_err(
                line,
                format!("symbolic coefficient `{}` requires `coefficients symbolic`", name),
            ));
        }
        symbol = Some(name.to_string());
        pos += 2;
    }
    if words.get(pos) != Some(&"d") {
        return Err(parse_err(line, format!("expected `d` in monomial `{}`", text.trim())));
    }
    pos += 1;
    let mut delta = Vec::with_capacity(m);
    for _ in 0..m {
        let w = words
            .get(pos)
            .ok_or_else(|| parse_err(line, format!("expected {} derivation exponents", m)))?;
        delta.push(w.parse::<u32>().map_err(|_| {
            parse_err(line, format!("expected {} derivation exponents, found `{}`", m, w))
        })?);
        pos += 1;
    }
    if words.get(pos) != Some(&"s") {
        return Err(parse_err(
            line,
            format!("expected `s` after {} derivation exponents", m),
        ));
    }
    pos += 1;
    let mut sigma = Vec::with_capacity(n);
    for _ in 0..n {
        let w = words
            .get(pos)
            .ok_or_else(|| parse_err(line, format!("expected {} automorphism exponents", n)))?;
        sigma.push(w.parse::<i32>().map_err(|_| {
            parse_err(line, format!("expected {} automorphism exponents, found `{}`", n, w))
        })?);
        pos += 1;
    }
    let target = words
        .get(pos)
        .ok_or_else(|| parse_err(line, "missing target after exponents"))?;
    if pos + 1 != words.len() {
        return Err(parse_err(
            line,
            format!("unexpected `{}` after target `{}`", words[pos + 1], target),
        ));
    }
    let lambda = LambdaMonomial::new(delta, sigma);
    let identity = ctx.partition.identity();
    if *target == "one" {
        if ctx.module {
            return Err(parse_err(line, "module relations have no constant part"));
        }
        let base = match &symbol {
            Some(name) => coeff.mul(&Coeff::symbol(name, lambda.clone())),
            None => coeff.clone(),
        };
        let value = if symbol.is_some() {
            // Derivations and shifts are already inside the token.
            base
        } else {
            base.apply(&lambda).map_err(|e| parse_err(line, e.to_string()))?
        };
        return Ok((None, value));
    }
    let generator = ctx
        .names
        .iter()
        .position(|n| n == target)
        .ok_or_else(|| parse_err(line, format!("unknown indeterminate `{}`", target)))?;
    if let Some(name) = &symbol {
        coeff = coeff.mul(&Coeff::symbol(name, identity));
    }
    Ok((Some(Term::new(lambda, generator)), coeff))
}

fn parse_sum(ctx: &Context, body: &str, line: usize) -> Result<(LinComb, Coeff)> {
    let mut terms = LinComb::new();
    let mut constant = Coeff::zero();
    for piece in body.split(';') {
        if piece.trim().is_empty() {
            continue;
        }
        let (term, c) = parse_monomial(ctx, piece, line)?;
        match term {
            Some(t) => terms.add_term(t, c),
            None => constant = constant.add(&c),
        }
    }
    Ok((terms, constant))
}

/// Parses a system or module file.
pub fn parse_input(text: &str) -> Result<InputFile> {
    let mut header = Header::default();
    let mut ctx: Option<Context> = None;
    let mut equations = Vec::new();
    let mut relations = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let words: Vec<&str> = rest.split_whitespace().collect();
        let is_header = matches!(
            key,
            "derivations" | "partition" | "automorphisms" | "indeterminates" | "module" | "coefficients"
        );
        if is_header && ctx.is_some() {
            return Err(parse_err(line, format!("`{}` must precede all equations", key)));
        }
        match key {
            "derivations" => header.derivations = Some(parse_count(&words, line, key)?),
            "automorphisms" => header.automorphisms = Some(parse_count(&words, line, key)?),
            "partition" => {
                let blocks = words
                    .iter()
                    .map(|w| {
                        w.parse::<usize>()
                            .map_err(|_| parse_err(line, format!("bad block size `{}`", w)))
                    })
                    .collect::<Result<Vec<_>>>()?;
                header.partition = Some(blocks);
            }
            "indeterminates" | "module" => {
                if header.names.is_some() {
                    return Err(parse_err(line, "generators declared twice"));
                }
                if words.is_empty() {
                    return Err(parse_err(line, format!("`{}` needs at least one name", key)));
                }
                if words.iter().any(|w| *w == "one" || *w == "sym" || *w == "d" || *w == "s") {
                    return Err(parse_err(line, "reserved word used as a name"));
                }
                header.names = Some(words.iter().map(|w| w.to_string()).collect());
                header.module = key == "module";
            }
            "coefficients" => {
                header.model = Some(match words.as_slice() {
                    ["rational"] => CoefficientModel::RationalConstants,
                    ["symbolic"] => CoefficientModel::FormalSymbols,
                    _ => return Err(parse_err(line, "expected `coefficients rational|symbolic`")),
                })
            }
            "poly" | "rel" => {
                if ctx.is_none() {
                    ctx = Some(header.context(line)?);
                }
                let c = ctx.as_ref().unwrap();
                if (key == "rel") != c.module {
                    return Err(parse_err(
                        line,
                        if c.module {
                            "module files use `rel` lines"
                        } else {
                            "`rel` lines need a `module` declaration"
                        },
                    ));
                }
                let (terms, constant) = parse_sum(c, rest, line)?;
                if c.module {
                    relations.push(terms);
                } else {
                    equations.push(LinearDSPolynomial::new(terms, constant));
                }
            }
            other => return Err(parse_err(line, format!("unknown directive `{}`", other))),
        }
    }
    let ctx = match ctx {
        Some(c) => c,
        None => header.context(text.lines().count().max(1))?,
    };
    let ring = DsRing::new(ctx.partition, ctx.names.len(), ctx.model);
    if ctx.module {
        Ok(InputFile::Module(ModuleFile {
            ring,
            generators: ctx.names,
            relations,
        }))
    } else {
        Ok(InputFile::System(LinearSystem {
            ring,
            names: ctx.names,
            equations,
        }))
    }
}

/// Parses a file that must describe a linear system.
pub fn parse_system(text: &str) -> Result<LinearSystem> {
    match parse_input(text)? {
        InputFile::System(s) => Ok(s),
        InputFile::Module(_) => Err(Error::Unsupported(
            "expected a system of equations, found a module presentation".into(),
        )),
    }
}

impl LinearSystem {
    /// The same system with an overriding partition of the derivations.
    pub fn with_partition(mut self, blocks: Vec<usize>) -> Result<Self> {
        let p = &self.ring.partition;
        self.ring.partition =
            Partition::with_derivations(p.num_derivations(), blocks, p.num_automorphisms())?;
        Ok(self)
    }

    pub fn display_equations(&self) -> Vec<String> {
        self.equations
            .iter()
            .map(|e| e.display(&self.ring.partition, &self.names))
            .collect()
    }
}

/// Serialises a polynomial back into the monomial syntax.
pub fn format_polynomial(poly: &LinearDSPolynomial, partition: &Partition, names: &[String]) -> Result<String> {
    let mut pieces = Vec::new();
    let mono = |lambda: &LambdaMonomial| {
        let d: Vec<String> = lambda.delta_exp().iter().map(|k| k.to_string()).collect();
        let s: Vec<String> = lambda.sigma_exp().iter().map(|l| l.to_string()).collect();
        let mut out = String::from("d");
        for k in d {
            out.push(' ');
            out.push_str(&k);
        }
        out.push_str(" s");
        for l in s {
            out.push(' ');
            out.push_str(&l);
        }
        out
    };
    for (t, c) in poly.terms().iter() {
        let q = c
            .as_rational()
            .ok_or_else(|| Error::Unsupported(format!("cannot serialise coefficient {}", c)))?;
        pieces.push(format!("{} {} {}", q, mono(&t.monomial), names[t.generator]));
    }
    if !poly.constant().is_zero() {
        let q = poly
            .constant()
            .as_rational()
            .ok_or_else(|| Error::Unsupported(format!("cannot serialise constant {}", poly.constant())))?;
        pieces.push(format!("{} {} one", q, mono(&partition.identity())));
    }
    Ok(format!("poly {}", pieces.join(" ; ")))
}
