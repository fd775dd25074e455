//! Numerical polynomials in `p + 1` variables with exact rational
//! coefficients, conversion to the binomial basis, and the invariants read
//! off that basis.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{parse_err, Error, Result};
use crate::lambda_monoid::Partition;

/// A polynomial in `t_1, ..., t_k` over `Q`, stored in the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumericalPolynomial {
    num_vars: usize,
    coeffs: BTreeMap<Vec<u32>, BigRational>,
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn factorial(k: u32) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

impl NumericalPolynomial {
    pub fn zero(num_vars: usize) -> Self {
        NumericalPolynomial {
            num_vars,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(num_vars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(num_vars);
        p.add_term(vec![0; num_vars], c);
        p
    }

    pub fn from_integer(num_vars: usize, c: i64) -> Self {
        Self::constant(num_vars, rat(c))
    }

    /// The polynomial `t_var`.
    pub fn variable(num_vars: usize, var: usize) -> Self {
        let mut exps = vec![0; num_vars];
        exps[var] = 1;
        let mut p = Self::zero(num_vars);
        p.add_term(exps, BigRational::one());
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs.
    pub fn from_terms<I>(num_vars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Self::zero(num_vars);
        for (exps, c) in terms {
            if exps.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector {:?} in a polynomial of {} variables",
                    exps, num_vars
                )));
            }
            p.add_term(exps, c);
        }
        Ok(p)
    }

    /// `C(t_var + shift, k)` as a polynomial of degree `k` in `t_var`.
    pub fn binomial_term(num_vars: usize, var: usize, shift: i64, k: u32) -> Self {
        let mut p = Self::from_integer(num_vars, 1);
        let t = Self::variable(num_vars, var);
        for i in 0..k as i64 {
            p = &p * &(&t + &Self::from_integer(num_vars, shift - i));
        }
        p.scale(&BigRational::from_integer(factorial(k)).recip())
    }

    /// The canonical basis element `Π_j C(t_j + i_j, i_j)`.
    pub fn basis_element(index: &[u32]) -> Self {
        let k = index.len();
        index
            .iter()
            .enumerate()
            .fold(Self::from_integer(k, 1), |acc, (j, &i)| {
                &acc * &Self::binomial_term(k, j, i as i64, i)
            })
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exps.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&exps);
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Monomial-basis coefficient of `t^exps`.
    pub fn coeff(&self, exps: &[u32]) -> BigRational {
        self.coeffs.get(exps).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.coeffs.iter()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        NumericalPolynomial {
            num_vars: self.num_vars,
            coeffs: self.coeffs.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn evaluate(&self, point: &[i64]) -> BigRational {
        assert_eq!(point.len(), self.num_vars, "evaluation point has wrong arity");
        let mut total = BigRational::zero();
        for (exps, c) in &self.coeffs {
            let mut v = BigInt::one();
            for (x, &e) in point.iter().zip(exps) {
                v *= num_traits::pow(BigInt::from(*x), e as usize);
            }
            total += c * BigRational::from_integer(v);
        }
        total
    }

    /// Value at an integer point, or `None` when it is not an integer.
    pub fn evaluate_integer(&self, point: &[i64]) -> Option<BigInt> {
        let v = self.evaluate(point);
        v.is_integer().then(|| v.to_integer())
    }

    /// Per-variable degrees and total degree. The zero polynomial has all
    /// degrees 0.
    pub fn degrees(&self) -> (Vec<u32>, u32) {
        let mut per_var = vec![0; self.num_vars];
        let mut total = 0;
        for exps in self.coeffs.keys() {
            for (d, &e) in per_var.iter_mut().zip(exps) {
                *d = (*d).max(e);
            }
            total = total.max(exps.iter().sum());
        }
        (per_var, total)
    }

    pub fn total_degree(&self) -> u32 {
        self.degrees().1
    }

    /// The homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        NumericalPolynomial {
            num_vars: self.num_vars,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `t_j ↦ Σ_k matrix[j][k] s_k + offsets[j]`, producing a
    /// polynomial in `matrix[0].len()` variables.
    pub fn substitute_linear(&self, matrix: &[Vec<i64>], offsets: &[i64]) -> Self {
        let new_vars = matrix.first().map_or(0, |r| r.len());
        let images: Vec<Self> = matrix
            .iter()
            .zip(offsets)
            .map(|(row, &off)| {
                row.iter()
                    .enumerate()
                    .fold(Self::from_integer(new_vars, off), |acc, (k, &c)| {
                        &acc + &Self::variable(new_vars, k).scale(&rat(c))
                    })
            })
            .collect();
        let mut out = Self::zero(new_vars);
        for (exps, c) in &self.coeffs {
            let mut term = Self::constant(new_vars, c.clone());
            for (img, &e) in images.iter().zip(exps) {
                for _ in 0..e {
                    term = &term * img;
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Coefficients in the basis `Π_j C(t_j + i_j, i_j)`.
    pub fn canonical_coeffs(&self) -> BTreeMap<Vec<u32>, BigRational> {
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        while let Some((exps, c)) = rest.coeffs.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let weight: BigInt = exps.iter().map(|&i| factorial(i)).product();
            let a = c * BigRational::from_integer(weight);
            rest = &rest - &Self::basis_element(&exps).scale(&a);
            out.insert(exps, a);
        }
        out
    }

    pub fn from_canonical(num_vars: usize, coeffs: &BTreeMap<Vec<u32>, BigRational>) -> Result<Self> {
        let mut out = Self::zero(num_vars);
        for (idx, a) in coeffs {
            if idx.len() != num_vars {
                return Err(Error::DimensionMismatch(format!(
                    "basis index {:?} in a polynomial of {} variables",
                    idx, num_vars
                )));
            }
            out = &out + &Self::basis_element(idx).scale(a);
        }
        Ok(out)
    }

    /// Whether every binomial-basis coefficient is an integer, which is
    /// equivalent to being integer valued on `Z^k`.
    pub fn is_numerical(&self) -> bool {
        self.canonical_coeffs().values().all(|a| a.is_integer())
    }

    /// One line `coeff i1 ... ik : value` per nonzero binomial-basis
    /// coefficient, lexicographically descending.
    pub fn canonical_listing(&self) -> String {
        let mut out = String::new();
        for (idx, a) in self.canonical_coeffs().iter().rev() {
            out.push_str("coeff");
            for i in idx {
                out.push_str(&format!(" {}", i));
            }
            out.push_str(&format!(" : {}\n", a));
        }
        out
    }

    /// Inverse of [`canonical_listing`](Self::canonical_listing).
    pub fn parse_canonical_listing(num_vars: usize, text: &str) -> Result<Self> {
        let mut coeffs = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let (lhs, rhs) = line
                .split_once(':')
                .ok_or_else(|| parse_err(lineno + 1, "expected `coeff i1 ... : value`"))?;
            let mut words = lhs.split_whitespace();
            if words.next() != Some("coeff") {
                return Err(parse_err(lineno + 1, "line must start with `coeff`"));
            }
            let idx = words
                .map(|w| w.parse::<u32>().map_err(|_| parse_err(lineno + 1, format!("bad index `{}`", w))))
                .collect::<Result<Vec<_>>>()?;
            if idx.len() != num_vars {
                return Err(parse_err(
                    lineno + 1,
                    format!("expected {} indices, found {}", num_vars, idx.len()),
                ));
            }
            let value = parse_rational(rhs.trim()).ok_or_else(|| {
                parse_err(lineno + 1, format!("malformed rational `{}`", rhs.trim()))
            })?;
            coeffs.insert(idx, value);
        }
        Self::from_canonical(num_vars, &coeffs)
    }
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

fn graded_desc(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    db.cmp(&da).then_with(|| b.cmp(a))
}

impl fmt::Display for NumericalPolynomial {
    /// Expanded form, e.g. `t1*t2 + 4*t1*t3 - 2*t3 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let ordered = self
            .coeffs
            .iter()
            .sorted_by(|(a, _), (b, _)| graded_desc(a, b));
        for (pos, (exps, c)) in ordered.enumerate() {
            let monomial = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| {
                    if e == 1 {
                        format!("t{}", j + 1)
                    } else {
                        format!("t{}^{}", j + 1, e)
                    }
                })
                .join("*");
            let magnitude = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if pos == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            if monomial.is_empty() {
                write!(f, "{}", magnitude)?;
            } else if magnitude.is_one() {
                write!(f, "{}", monomial)?;
            } else {
                write!(f, "{}*{}", magnitude, monomial)?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a NumericalPolynomial> for &'a NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn add(self, rhs: &NumericalPolynomial) -> NumericalPolynomial {
        assert_eq!(self.num_vars, rhs.num_vars, "adding polynomials of different arity");
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a NumericalPolynomial> for &'a NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn sub(self, rhs: &NumericalPolynomial) -> NumericalPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn neg(self) -> NumericalPolynomial {
        NumericalPolynomial {
            num_vars: self.num_vars,
            coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl<'a> Mul<&'a NumericalPolynomial> for &'a NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn mul(self, rhs: &NumericalPolynomial) -> NumericalPolynomial {
        assert_eq!(self.num_vars, rhs.num_vars, "multiplying polynomials of different arity");
        let mut out = NumericalPolynomial::zero(self.num_vars);
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl Add for NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn add(self, rhs: NumericalPolynomial) -> NumericalPolynomial {
        &self + &rhs
    }
}

impl Sub for NumericalPolynomial {
    type Output = NumericalPolynomial;
    fn sub(self, rhs: NumericalPolynomial) -> NumericalPolynomial {
        &self - &rhs
    }
}

/// Elements of `set` that are maximal for the lexicographic order taken
/// along at least one permutation of the coordinates.
pub fn maximal_elements_lex_family<T: Ord + Clone>(set: &[Vec<T>]) -> BTreeSet<Vec<T>> {
    let mut out = BTreeSet::new();
    let Some(first) = set.first() else {
        return out;
    };
    let k = first.len();
    for perm in (0..k).permutations(k) {
        let best = set
            .iter()
            .max_by(|a, b| perm.iter().map(|&j| &a[j]).cmp(perm.iter().map(|&j| &b[j])))
            .unwrap();
        out.insert(best.clone());
    }
    out
}

/// The generator-independent data carried by a dimension polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub total_degree: u32,
    /// Binomial-basis coefficient at the cap slot `(m_1, ..., m_p, n)`.
    pub leading_coeff: BigInt,
    /// `leading_coeff / 2^n`.
    pub trdeg: BigInt,
    /// Support of the binomial-basis expansion.
    pub e_set: BTreeSet<Vec<u32>>,
    /// Lex-family maximal elements of `e_set`.
    pub e_prime: BTreeSet<Vec<u32>>,
    pub e_prime_coeffs: BTreeMap<Vec<u32>, BigInt>,
    pub top_degree_part: NumericalPolynomial,
}

impl InvariantReport {
    pub fn compute(phi: &NumericalPolynomial, partition: &Partition) -> Result<InvariantReport> {
        if phi.num_vars() != partition.num_vars() {
            return Err(Error::DimensionMismatch(format!(
                "polynomial in {} variables for a partition with {} blocks",
                phi.num_vars(),
                partition.num_blocks()
            )));
        }
        let canon = phi.canonical_coeffs();
        let mut ints = BTreeMap::new();
        for (idx, a) in &canon {
            if !a.is_integer() {
                return Err(Error::NotNumerical(format!(
                    "coefficient {} at {:?} is not an integer",
                    a, idx
                )));
            }
            ints.insert(idx.clone(), a.to_integer());
        }
        let caps = partition.degree_caps();
        let (per_var, total_degree) = phi.degrees();
        if let Some((j, d)) = per_var.iter().enumerate().find(|(j, d)| **d > caps[*j]) {
            return Err(Error::NotNumerical(format!(
                "degree {} in t{} exceeds the cap {}",
                d,
                j + 1,
                caps[j]
            )));
        }
        let leading_coeff = ints.get(&caps).cloned().unwrap_or_else(BigInt::zero);
        let two_n = BigInt::one() << partition.num_automorphisms();
        if !(&leading_coeff % &two_n).is_zero() {
            return Err(Error::NotNumerical(format!(
                "leading coefficient {} is not divisible by 2^{}",
                leading_coeff,
                partition.num_automorphisms()
            )));
        }
        let e_set: BTreeSet<Vec<u32>> = ints.keys().cloned().collect();
        let e_vec: Vec<Vec<u32>> = e_set.iter().cloned().collect();
        let e_prime = maximal_elements_lex_family(&e_vec);
        let e_prime_coeffs = e_prime.iter().map(|e| (e.clone(), ints[e].clone())).collect();
        Ok(InvariantReport {
            total_degree,
            trdeg: &leading_coeff / &two_n,
            leading_coeff,
            e_set,
            e_prime,
            e_prime_coeffs,
            top_degree_part: phi.homogeneous_part(total_degree),
        })
    }
}

impl fmt::Display for InvariantReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fmt_set = |s: &BTreeSet<Vec<u32>>| {
            s.iter()
                .rev()
                .map(|e| format!("({})", e.iter().join(",")))
                .join(" ")
        };
        writeln!(f, "total degree: {}", self.total_degree)?;
        writeln!(f, "leading coefficient (cap slot): {}", self.leading_coeff)?;
        writeln!(f, "transcendence degree: {}", self.trdeg)?;
        writeln!(f, "E  = {{{}}}", fmt_set(&self.e_set))?;
        writeln!(f, "E' = {{{}}}", fmt_set(&self.e_prime))?;
        for (e, a) in self.e_prime_coeffs.iter().rev() {
            writeln!(f, "  a[{}] = {}", e.iter().join(","), a)?;
        }
        write!(f, "top degree part: {}", self.top_degree_part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(k: usize, terms: &[(&[u32], i64)]) -> NumericalPolynomial {
        NumericalPolynomial::from_terms(k, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c)))).unwrap()
    }

    #[test]
    fn binomial_term_values() {
        let p = NumericalPolynomial::binomial_term(1, 0, 3, 3);
        assert_eq!(p.evaluate(&[2]), rat(10));
        assert_eq!(p.evaluate(&[-3]), rat(0));
        assert_eq!(NumericalPolynomial::binomial_term(2, 1, 0, 0), NumericalPolynomial::from_integer(2, 1));
    }

    #[test]
    fn canonical_coefficients_of_small_examples() {
        let p = poly(2, &[(&[1, 0], 1), (&[0, 1], 2), (&[0, 0], 1)]);
        let c = p.canonical_coeffs();
        assert_eq!(c[&vec![1, 0]], rat(1));
        assert_eq!(c[&vec![0, 1]], rat(2));
        assert_eq!(c[&vec![0, 0]], rat(-2));
        assert_eq!(NumericalPolynomial::from_canonical(2, &c).unwrap(), p);
    }

    #[test]
    fn half_t_squared_is_not_numerical() {
        let p = NumericalPolynomial::from_terms(1, [(vec![2], BigRational::new(1.into(), 2.into()))]).unwrap();
        assert!(!p.is_numerical());
        let q = &NumericalPolynomial::binomial_term(1, 0, 0, 2) + &NumericalPolynomial::from_integer(1, 0);
        assert!(q.is_numerical());
    }

    #[test]
    fn expanded_display() {
        let p = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 4), (&[0, 1, 1], 4), (&[1, 0, 0], 1), (&[0, 1, 0], 1), (&[0, 0, 0], 1)]);
        assert_eq!(p.to_string(), "t1*t2 + 4*t1*t3 + 4*t2*t3 + t1 + t2 + 1");
        let q = poly(1, &[(&[2], -3), (&[0], -1)]);
        assert_eq!(q.to_string(), "-3*t1^2 - 1");
        assert_eq!(NumericalPolynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn listing_round_trip() {
        let p = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 4), (&[0, 0, 1], -2), (&[0, 0, 0], 7)]);
        let text = p.canonical_listing();
        assert!(text.starts_with("coeff 1 1 0 : 1\n"));
        assert_eq!(NumericalPolynomial::parse_canonical_listing(3, &text).unwrap(), p);
        assert!(NumericalPolynomial::parse_canonical_listing(3, "coeff 1 0 : 1").is_err());
        assert!(NumericalPolynomial::parse_canonical_listing(2, "coeff 1 0 : 1/0").is_err());
    }

    #[test]
    fn lex_family_maximal_elements() {
        let s: Vec<Vec<u32>> = vec![
            vec![3, 0, 2],
            vec![2, 1, 1],
            vec![0, 1, 4],
            vec![1, 0, 3],
            vec![1, 1, 6],
            vec![3, 1, 0],
            vec![1, 2, 0],
        ];
        let expect: BTreeSet<Vec<u32>> =
            [vec![3, 0, 2], vec![3, 1, 0], vec![1, 1, 6], vec![1, 2, 0]].into_iter().collect();
        assert_eq!(maximal_elements_lex_family(&s), expect);
        assert_eq!(maximal_elements_lex_family::<u32>(&[vec![5]]).len(), 1);
    }

    #[test]
    fn invariants_of_trivial_polynomials() {
        let part = Partition::new(vec![1], 1).unwrap();
        let phi = poly(2, &[(&[1, 0], 1), (&[0, 1], 2), (&[0, 0], 1)]);
        let inv = InvariantReport::compute(&phi, &part).unwrap();
        assert_eq!(inv.total_degree, 1);
        assert_eq!(inv.leading_coeff, BigInt::zero());
        let full = &NumericalPolynomial::variable(2, 0) * &NumericalPolynomial::variable(2, 1);
        let inv = InvariantReport::compute(&full.scale(&rat(2)), &part).unwrap();
        assert_eq!(inv.leading_coeff, BigInt::from(2));
        assert_eq!(inv.trdeg, BigInt::one());
        assert!(InvariantReport::compute(&full, &part).is_err());
    }

    #[test]
    fn linear_substitution() {
        let p = poly(2, &[(&[1, 1], 1)]);
        let q = p.substitute_linear(&[vec![1], vec![1]], &[0, 1]);
        assert_eq!(q, poly(1, &[(&[2], 1), (&[1], 1)]));
    }
}
