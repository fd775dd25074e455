//! Coefficients of linear difference-differential polynomials.
//!
//! A [`Coeff`] is a polynomial with rational coefficients in formal tokens
//! `λ(name)`. With no tokens it is just a rational number, which is how the
//! rational-constants model is represented. Derivations act on tokens by the
//! product rule and automorphisms shift the operator inside a token; both
//! annihilate / fix plain rationals.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::lambda_monoid::LambdaMonomial;

/// The token `λ(name)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub op: LambdaMonomial,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op.is_identity() {
            write!(f, "{}", self.name)
        } else {
            write!(f, "{}({})", self.op, self.name)
        }
    }
}

/// A product of tokens with positive exponents, sorted by token.
type TokenProduct = Vec<(Symbol, u32)>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Coeff {
    terms: BTreeMap<TokenProduct, BigRational>,
}

fn multiply_products(a: &TokenProduct, b: &TokenProduct) -> TokenProduct {
    let mut merged: BTreeMap<Symbol, u32> = BTreeMap::new();
    for (s, e) in a.iter().chain(b) {
        *merged.entry(s.clone()).or_insert(0) += e;
    }
    merged.into_iter().collect()
}

impl Coeff {
    pub fn zero() -> Self {
        Coeff::default()
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(q: BigRational) -> Self {
        let mut c = Coeff::default();
        if !q.is_zero() {
            c.terms.insert(Vec::new(), q);
        }
        c
    }

    pub fn integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// The token `op(name)`.
    pub fn symbol(name: &str, op: LambdaMonomial) -> Self {
        let mut c = Coeff::default();
        c.terms.insert(
            vec![(
                Symbol {
                    name: name.to_string(),
                    op,
                },
                1,
            )],
            BigRational::one(),
        );
        c
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value when no tokens occur.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_rational(&self) -> bool {
        self.as_rational().is_some()
    }

    pub fn symbols(&self) -> impl Iterator<Item = &Symbol> {
        self.terms.keys().flat_map(|p| p.iter().map(|(s, _)| s))
    }

    fn add_term(&mut self, product: TokenProduct, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(product.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&product);
        }
    }

    pub fn add(&self, other: &Coeff) -> Coeff {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Coeff) -> Coeff {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Coeff {
        Coeff {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Coeff) -> Coeff {
        let mut out = Coeff::default();
        for (pa, ca) in &self.terms {
            for (pb, cb) in &other.terms {
                out.add_term(multiply_products(pa, pb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, q: &BigRational) -> Coeff {
        if q.is_zero() {
            return Coeff::zero();
        }
        Coeff {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), c * q)).collect(),
        }
    }

    /// `δ_i` applied to the coefficient.
    pub fn derive(&self, i: usize) -> Result<Coeff> {
        let mut out = Coeff::default();
        for (product, c) in &self.terms {
            for (pos, (sym, e)) in product.iter().enumerate() {
                let mut rest: TokenProduct = product.clone();
                if *e == 1 {
                    rest.remove(pos);
                } else {
                    rest[pos].1 -= 1;
                }
                let d = LambdaMonomial::derivation(sym.op.num_derivations(), sym.op.num_automorphisms(), i);
                let derived = Symbol {
                    name: sym.name.clone(),
                    op: d.multiply(&sym.op)?,
                };
                let new_product = multiply_products(&rest, &vec![(derived, 1)]);
                out.add_term(new_product, c * BigRational::from_integer((*e).into()));
            }
        }
        Ok(out)
    }

    /// The automorphism part of `shift` applied to the coefficient.
    pub fn shift(&self, shift: &LambdaMonomial) -> Result<Coeff> {
        let sigma = shift.sigma_part();
        if sigma.is_identity() {
            return Ok(self.clone());
        }
        let mut out = Coeff::default();
        for (product, c) in &self.terms {
            let mut shifted = Vec::with_capacity(product.len());
            for (sym, e) in product {
                shifted.push((
                    Symbol {
                        name: sym.name.clone(),
                        op: sigma.multiply(&sym.op)?,
                    },
                    *e,
                ));
            }
            shifted.sort();
            out.add_term(shifted, c.clone());
        }
        Ok(out)
    }

    /// Applies the full operator `λ = δ^k α^l`.
    pub fn apply(&self, lambda: &LambdaMonomial) -> Result<Coeff> {
        let mut out = self.shift(lambda)?;
        for (i, &k) in lambda.delta_exp().iter().enumerate() {
            for _ in 0..k {
                if out.is_rational() {
                    return Ok(Coeff::zero());
                }
                out = out.derive(i)?;
            }
        }
        Ok(out)
    }

    /// True when the coefficient is a single term whose rational factor is
    /// negative; used to print signs.
    pub fn is_negative_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().next().unwrap().is_negative()
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(product, c)| {
            if product.is_empty() {
                return c.to_string();
            }
            let body = product
                .iter()
                .map(|(s, e)| if *e == 1 { s.to_string() } else { format!("{}^{}", s, e) })
                .join("*");
            if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{}", body)
            } else {
                format!("{}*{}", c, body)
            }
        }).collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}
