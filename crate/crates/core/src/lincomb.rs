//! Finite linear combinations `Σ c_u u` of terms with [`Coeff`]
//! coefficients, shared by polynomials and free-module elements.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::coeff::Coeff;
use crate::error::Result;
use crate::lambda_monoid::{LambdaMonomial, Partition, Term, TermOrder};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinComb {
    terms: BTreeMap<Term, Coeff>,
}

impl LinComb {
    pub fn new() -> Self {
        LinComb::default()
    }

    pub fn single(term: Term, c: Coeff) -> Self {
        let mut out = LinComb::new();
        out.add_term(term, c);
        out
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn get(&self, term: &Term) -> Option<&Coeff> {
        self.terms.get(term)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Term, &Coeff)> {
        self.terms.iter()
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.terms.keys()
    }

    pub fn add_term(&mut self, term: Term, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&term) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&term);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(term, c);
            }
        }
    }

    pub fn add(&self, other: &LinComb) -> LinComb {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinComb) -> LinComb {
        self.add(&other.scale(&Coeff::integer(-1)))
    }

    pub fn scale(&self, c: &Coeff) -> LinComb {
        let mut out = LinComb::new();
        for (t, d) in &self.terms {
            out.add_term(t.clone(), d.mul(c));
        }
        out
    }

    /// Applies `λ` to every term, transforming coefficients by the product
    /// rule for derivations and by shifting for automorphisms.
    pub fn apply(&self, lambda: &LambdaMonomial) -> Result<LinComb> {
        let shift = lambda.sigma_part();
        let mut current = LinComb::new();
        for (t, c) in &self.terms {
            current.add_term(t.apply(&shift)?, c.shift(&shift)?);
        }
        let (m, n) = (lambda.num_derivations(), lambda.num_automorphisms());
        for (i, &k) in lambda.delta_exp().iter().enumerate() {
            let d = LambdaMonomial::derivation(m, n, i);
            for _ in 0..k {
                let mut next = LinComb::new();
                for (t, c) in &current.terms {
                    next.add_term(t.apply(&d)?, c.clone());
                    if !c.is_rational() {
                        next.add_term(t.clone(), c.derive(i)?);
                    }
                }
                current = next;
            }
        }
        Ok(current)
    }

    /// The greatest term under the given order.
    pub fn leader(&self, partition: &Partition, order: TermOrder) -> Option<&Term> {
        self.terms
            .keys()
            .max_by(|a, b| partition.compare_terms(a, b, order))
    }

    /// Terms sorted descending under the given order.
    pub fn sorted_desc(&self, partition: &Partition, order: TermOrder) -> Vec<&Term> {
        self.terms
            .keys()
            .sorted_by(|a, b| partition.compare_terms(b, a, order))
            .collect()
    }

    /// Human-readable sum, greatest term first, with generator names.
    pub fn display_with(&self, partition: &Partition, names: &[String]) -> String {
        let mut out = String::new();
        for (pos, t) in self.sorted_desc(partition, TermOrder::Sigma).into_iter().enumerate() {
            let c = &self.terms[t];
            out.push_str(&signed_product(pos == 0, c, &term_name(t, names)));
        }
        out
    }
}

/// `λ*name`, or just `name` for the identity operator.
pub fn term_name(t: &Term, names: &[String]) -> String {
    let name = names
        .get(t.generator)
        .cloned()
        .unwrap_or_else(|| format!("y{}", t.generator + 1));
    if t.monomial.is_identity() {
        name
    } else {
        format!("{}*{}", t.monomial, name)
    }
}

/// Formats `c*body` as the next summand of a sum.
pub(crate) fn signed_product(first: bool, c: &Coeff, body: &str) -> String {
    let (negative, magnitude) = match c.as_rational() {
        Some(q) => {
            let neg = q < num_rational::BigRational::from_integer(0.into());
            (neg, Coeff::rational(if neg { -q } else { q }))
        }
        None if c.is_negative_monomial() => (true, c.neg()),
        None => (false, c.clone()),
    };
    let mag = match magnitude.as_rational() {
        Some(q) if q == num_rational::BigRational::from_integer(1.into()) => None,
        Some(_) => Some(magnitude.to_string()),
        None if magnitude.num_terms() > 1 && !body.is_empty() => {
            Some(format!("({})", magnitude))
        }
        None => Some(magnitude.to_string()),
    };
    let piece = match (mag, body.is_empty()) {
        (None, true) => "1".to_string(),
        (None, false) => body.to_string(),
        (Some(m), true) => m,
        (Some(m), false) => format!("{}*{}", m, body),
    };
    match (first, negative) {
        (true, false) => piece,
        (true, true) => format!("-{}", piece),
        (false, false) => format!(" + {}", piece),
        (false, true) => format!(" - {}", piece),
    }
}
