//! The operator monoid `Λ`: power products `δ^k α^l` of commuting
//! derivations (natural exponents) and automorphisms (integer exponents),
//! together with the block orders used to rank terms.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Range;

use crate::error::{Error, Result};

/// A power product `δ_1^{k_1}..δ_m^{k_m} α_1^{l_1}..α_n^{l_n}`.
///
/// The derived `Ord` is plain lexicographic on the raw exponent vectors and
/// only serves as a deterministic storage order. Ranking uses
/// [`Partition::compare`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LambdaMonomial {
    delta: Vec<u32>,
    sigma: Vec<i32>,
}

impl LambdaMonomial {
    pub fn new(delta: Vec<u32>, sigma: Vec<i32>) -> Self {
        LambdaMonomial { delta, sigma }
    }

    pub fn identity(m: usize, n: usize) -> Self {
        LambdaMonomial {
            delta: vec![0; m],
            sigma: vec![0; n],
        }
    }

    /// `δ_i` (0-based index).
    pub fn derivation(m: usize, n: usize, i: usize) -> Self {
        let mut mono = Self::identity(m, n);
        mono.delta[i] = 1;
        mono
    }

    /// `α_j^e` (0-based index).
    pub fn automorphism(m: usize, n: usize, j: usize, e: i32) -> Self {
        let mut mono = Self::identity(m, n);
        mono.sigma[j] = e;
        mono
    }

    pub fn delta_exp(&self) -> &[u32] {
        &self.delta
    }

    pub fn sigma_exp(&self) -> &[i32] {
        &self.sigma
    }

    pub fn num_derivations(&self) -> usize {
        self.delta.len()
    }

    pub fn num_automorphisms(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_identity(&self) -> bool {
        self.delta.iter().all(|&k| k == 0) && self.sigma.iter().all(|&l| l == 0)
    }

    /// `λ_Δ`, the derivation part.
    pub fn delta_part(&self) -> Self {
        LambdaMonomial {
            delta: self.delta.clone(),
            sigma: vec![0; self.sigma.len()],
        }
    }

    /// `λ_σ`, the automorphism part.
    pub fn sigma_part(&self) -> Self {
        LambdaMonomial {
            delta: vec![0; self.delta.len()],
            sigma: self.sigma.clone(),
        }
    }

    /// Total derivation order plus `ord_σ`.
    pub fn total_order(&self) -> u64 {
        self.delta_order() + self.ord_sigma()
    }

    pub fn delta_order(&self) -> u64 {
        self.delta.iter().map(|&k| k as u64).sum()
    }

    pub fn ord_sigma(&self) -> u64 {
        self.sigma.iter().map(|&l| l.unsigned_abs() as u64).sum()
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.delta.len() != other.delta.len() || self.sigma.len() != other.sigma.len() {
            return Err(Error::DimensionMismatch(format!(
                "operators {} and {} live in different monoids",
                self, other
            )));
        }
        Ok(())
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let delta = self
            .delta
            .iter()
            .zip(&other.delta)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("operator product")))
            .collect::<Result<Vec<_>>>()?;
        let sigma = self
            .sigma
            .iter()
            .zip(&other.sigma)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("operator product")))
            .collect::<Result<Vec<_>>>()?;
        Ok(LambdaMonomial { delta, sigma })
    }

    /// Sign-compatibility of the automorphism parts: no coordinate is
    /// positive in one and negative in the other. This is exactly "lying in a
    /// common orthant", since zero belongs to every orthant.
    pub fn similar(&self, other: &Self) -> bool {
        self.sigma
            .iter()
            .zip(&other.sigma)
            .all(|(&a, &b)| !((a > 0 && b < 0) || (a < 0 && b > 0)))
    }

    /// Whether `self | other` in the orthant-restricted sense: the two are
    /// similar and `other = q·self` with `q` similar to `self`.
    pub fn divides(&self, other: &Self) -> bool {
        self.delta.len() == other.delta.len()
            && self.sigma.len() == other.sigma.len()
            && self.delta.iter().zip(&other.delta).all(|(a, b)| a <= b)
            && self.sigma.iter().zip(&other.sigma).all(|(&a, &b)| match a.cmp(&0) {
                Ordering::Greater => b >= a,
                Ordering::Less => b <= a,
                Ordering::Equal => true,
            })
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        Some(LambdaMonomial {
            delta: other.delta.iter().zip(&self.delta).map(|(b, a)| b - a).collect(),
            sigma: other.sigma.iter().zip(&self.sigma).map(|(b, a)| b - a).collect(),
        })
    }

    /// Least common multiple of two similar monomials.
    pub fn lcm(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        if !self.similar(other) {
            return Err(Error::NotSimilar(self.to_string(), other.to_string()));
        }
        let delta = self.delta.iter().zip(&other.delta).map(|(a, b)| *a.max(b)).collect();
        let sigma = self
            .sigma
            .iter()
            .zip(&other.sigma)
            .map(|(&a, &b)| if a.abs() >= b.abs() { a } else { b })
            .collect();
        Ok(LambdaMonomial { delta, sigma })
    }
}

impl fmt::Display for LambdaMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let join = |v: Vec<String>| v.join(",");
        write!(
            f,
            "d[{}] s[{}]",
            join(self.delta.iter().map(|k| k.to_string()).collect()),
            join(self.sigma.iter().map(|l| l.to_string()).collect())
        )
    }
}

/// Which of the `p + 1` orders (or `ord` functions) is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    /// `<_i` for the derivation block `i` (0-based).
    Block(usize),
    /// `<_σ`.
    Sigma,
}

/// A partition of the `m` derivations into `p` consecutive blocks, plus the
/// number `n` of automorphisms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<usize>,
    offsets: Vec<usize>,
    num_autos: usize,
}

impl Partition {
    /// Blocks must be positive. The only partition of `m = 0` is the empty one.
    pub fn new(blocks: Vec<usize>, num_autos: usize) -> Result<Self> {
        if blocks.iter().any(|&b| b == 0) {
            return Err(Error::InvalidPartition(format!(
                "block sizes must be positive, got {:?}",
                blocks
            )));
        }
        let mut offsets = Vec::with_capacity(blocks.len() + 1);
        let mut acc = 0;
        offsets.push(0);
        for &b in &blocks {
            acc += b;
            offsets.push(acc);
        }
        Ok(Partition {
            blocks,
            offsets,
            num_autos,
        })
    }

    /// Checks the block sizes against a declared number of derivations.
    pub fn with_derivations(m: usize, blocks: Vec<usize>, num_autos: usize) -> Result<Self> {
        let sum: usize = blocks.iter().sum();
        if sum != m {
            return Err(Error::InvalidPartition(format!(
                "blocks {:?} sum to {} but there are {} derivations",
                blocks, sum, m
            )));
        }
        Self::new(blocks, num_autos)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn num_derivations(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn num_automorphisms(&self) -> usize {
        self.num_autos
    }

    /// Number of variables of a dimension polynomial, `p + 1`.
    pub fn num_vars(&self) -> usize {
        self.blocks.len() + 1
    }

    /// Degree caps `(m_1, ..., m_p, n)`.
    pub fn degree_caps(&self) -> Vec<u32> {
        let mut caps: Vec<u32> = self.blocks.iter().map(|&b| b as u32).collect();
        caps.push(self.num_autos as u32);
        caps
    }

    pub fn block_range(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i + 1]
    }

    /// Index of the block containing derivation `k`.
    pub fn block_of(&self, k: usize) -> usize {
        self.offsets.partition_point(|&o| o <= k) - 1
    }

    pub fn identity(&self) -> LambdaMonomial {
        LambdaMonomial::identity(self.num_derivations(), self.num_autos)
    }

    pub fn check(&self, lambda: &LambdaMonomial) -> Result<()> {
        if lambda.num_derivations() != self.num_derivations()
            || lambda.num_automorphisms() != self.num_autos
        {
            return Err(Error::DimensionMismatch(format!(
                "operator {} does not fit m = {}, n = {}",
                lambda,
                self.num_derivations(),
                self.num_autos
            )));
        }
        Ok(())
    }

    /// `ord_i λ` or `ord_σ λ`.
    pub fn ord(&self, lambda: &LambdaMonomial, which: TermOrder) -> u64 {
        match which {
            TermOrder::Block(i) => lambda.delta[self.block_range(i)]
                .iter()
                .map(|&k| k as u64)
                .sum(),
            TermOrder::Sigma => lambda.ord_sigma(),
        }
    }

    /// `(ord_1 λ, ..., ord_p λ)`.
    pub fn block_orders(&self, lambda: &LambdaMonomial) -> Vec<u64> {
        (0..self.num_blocks())
            .map(|i| self.ord(lambda, TermOrder::Block(i)))
            .collect()
    }

    /// The comparison key of `λ` for the given order; keys compare
    /// lexicographically.
    pub fn order_key(&self, lambda: &LambdaMonomial, which: TermOrder) -> Vec<i64> {
        let p = self.num_blocks();
        let mut key = Vec::with_capacity(2 * p + lambda.delta.len() + 2 * lambda.sigma.len() + 2);
        let abs_sigma = lambda.sigma.iter().map(|&l| l.unsigned_abs() as i64);
        let signed_sigma = lambda.sigma.iter().map(|&l| l as i64);
        match which {
            TermOrder::Block(i) => {
                key.push(self.ord(lambda, which) as i64);
                key.push(lambda.total_order() as i64);
                for j in (0..p).filter(|&j| j != i) {
                    key.push(self.ord(lambda, TermOrder::Block(j)) as i64);
                }
                key.push(lambda.ord_sigma() as i64);
                let range = self.block_range(i);
                key.extend(lambda.delta[range.clone()].iter().map(|&k| k as i64));
                for (idx, &k) in lambda.delta.iter().enumerate() {
                    if !range.contains(&idx) {
                        key.push(k as i64);
                    }
                }
                key.extend(abs_sigma);
                key.extend(signed_sigma);
            }
            TermOrder::Sigma => {
                key.push(lambda.ord_sigma() as i64);
                key.push(lambda.total_order() as i64);
                for j in 0..p {
                    key.push(self.ord(lambda, TermOrder::Block(j)) as i64);
                }
                key.extend(abs_sigma);
                key.extend(signed_sigma);
                key.extend(lambda.delta.iter().map(|&k| k as i64));
            }
        }
        key
    }

    pub fn compare(&self, a: &LambdaMonomial, b: &LambdaMonomial, which: TermOrder) -> Ordering {
        self.order_key(a, which).cmp(&self.order_key(b, which))
    }

    /// Terms compare by their operators first and then by generator index.
    pub fn compare_terms(&self, a: &Term, b: &Term, which: TermOrder) -> Ordering {
        self.compare(&a.monomial, &b.monomial, which)
            .then(a.generator.cmp(&b.generator))
    }
}

/// A term `λ y_j` (or `λ e_j` in a free module); `generator` is 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Term {
    pub monomial: LambdaMonomial,
    pub generator: usize,
}

impl Term {
    pub fn new(monomial: LambdaMonomial, generator: usize) -> Self {
        Term { monomial, generator }
    }

    pub fn divides(&self, other: &Term) -> bool {
        self.generator == other.generator && self.monomial.divides(&other.monomial)
    }

    /// The operator `λ` with `λ·self = other`, if `self | other`.
    pub fn quotient_of(&self, other: &Term) -> Option<LambdaMonomial> {
        if self.generator != other.generator {
            return None;
        }
        self.monomial.quotient_of(&other.monomial)
    }

    pub fn apply(&self, lambda: &LambdaMonomial) -> Result<Term> {
        Ok(Term {
            monomial: lambda.multiply(&self.monomial)?,
            generator: self.generator,
        })
    }

    /// Display with a generator prefix such as `y` or `e`.
    pub fn display_with(&self, prefix: &str) -> String {
        if self.monomial.is_identity() {
            format!("{}{}", prefix, self.generator + 1)
        } else {
            format!("{}*{}{}", self.monomial, prefix, self.generator + 1)
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("y"))
    }
}

/// Least common multiple of two similar terms on the same generator.
pub fn lcm_similar(u: &Term, v: &Term) -> Result<Term> {
    if u.generator != v.generator {
        return Err(Error::NotSimilar(u.to_string(), v.to_string()));
    }
    Ok(Term {
        monomial: u.monomial.lcm(&v.monomial)?,
        generator: u.generator,
    })
}

/// One of the `2^n` closed orthants of `Z^n`, given by a sign per coordinate
/// (`true` for the nonnegative half).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Orthant {
    nonnegative: Vec<bool>,
}

impl Orthant {
    pub fn new(nonnegative: Vec<bool>) -> Self {
        Orthant { nonnegative }
    }

    /// All `2^n` orthants in a fixed order.
    pub fn all(n: usize) -> Vec<Orthant> {
        (0..1usize << n)
            .map(|mask| Orthant {
                nonnegative: (0..n).map(|j| mask >> j & 1 == 0).collect(),
            })
            .collect()
    }

    pub fn contains(&self, sigma: &[i32]) -> bool {
        self.nonnegative
            .iter()
            .zip(sigma)
            .all(|(&pos, &l)| if pos { l >= 0 } else { l <= 0 })
    }

    /// The orthants containing the automorphism part of `λ`.
    pub fn containing(lambda: &LambdaMonomial) -> Vec<Orthant> {
        Self::all(lambda.num_automorphisms())
            .into_iter()
            .filter(|o| o.contains(lambda.sigma_exp()))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(d: &[u32], s: &[i32]) -> LambdaMonomial {
        LambdaMonomial::new(d.to_vec(), s.to_vec())
    }

    #[test]
    fn delta_below_alpha_in_sigma_order_and_above_in_block_order() {
        let part = Partition::new(vec![1], 1).unwrap();
        let d = mono(&[1], &[0]);
        let a = mono(&[0], &[1]);
        assert_eq!(part.compare(&d, &a, TermOrder::Sigma), Ordering::Less);
        assert_eq!(part.compare(&a, &d, TermOrder::Block(0)), Ordering::Less);
    }

    #[test]
    fn sign_breaks_ties_last() {
        let part = Partition::new(vec![1], 1).unwrap();
        let up = mono(&[0], &[1]);
        let down = mono(&[0], &[-1]);
        assert_eq!(part.compare(&down, &up, TermOrder::Sigma), Ordering::Less);
        assert_eq!(part.compare(&down, &up, TermOrder::Block(0)), Ordering::Less);
    }

    #[test]
    fn block_order_prefers_own_block() {
        let part = Partition::new(vec![1, 1], 0).unwrap();
        let d1 = mono(&[1, 0], &[]);
        let d2 = mono(&[0, 1], &[]);
        assert_eq!(part.compare(&d1, &d2, TermOrder::Block(0)), Ordering::Greater);
        assert_eq!(part.compare(&d1, &d2, TermOrder::Block(1)), Ordering::Less);
    }

    #[test]
    fn divisibility_is_orthant_restricted() {
        let a = mono(&[0], &[-1]);
        assert!(!a.divides(&mono(&[0], &[1])));
        assert!(a.divides(&mono(&[2], &[-3])));
        assert!(!mono(&[0], &[1]).divides(&mono(&[0], &[0])));
        assert!(mono(&[0], &[0]).divides(&mono(&[0], &[-2])));
        assert_eq!(a.quotient_of(&mono(&[1], &[-2])), Some(mono(&[1], &[-1])));
    }

    #[test]
    fn similarity_examples() {
        assert!(mono(&[], &[1, 0]).similar(&mono(&[], &[2, -1])));
        assert!(!mono(&[], &[1, 0]).similar(&mono(&[], &[-1, 0])));
    }

    #[test]
    fn lcm_takes_max_magnitude() {
        let a = mono(&[2, 0], &[-1, 0]);
        let b = mono(&[1, 3], &[-2, 4]);
        assert_eq!(a.lcm(&b).unwrap(), mono(&[2, 3], &[-2, 4]));
        assert!(mono(&[0], &[1]).lcm(&mono(&[0], &[-1])).is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let a = mono(&[u32::MAX], &[0]);
        assert!(matches!(a.multiply(&a), Err(Error::Overflow(_))));
    }

    #[test]
    fn orthants_of_boundary_point() {
        assert_eq!(Orthant::containing(&mono(&[], &[0, 2])).len(), 2);
        assert_eq!(Orthant::containing(&mono(&[], &[0, 0])).len(), 4);
        assert_eq!(Orthant::all(3).len(), 8);
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::with_derivations(1, vec![1, 1], 0).is_err());
        assert!(Partition::new(vec![0, 1], 0).is_err());
        let p = Partition::new(vec![], 1).unwrap();
        assert_eq!(p.num_vars(), 1);
        let q = Partition::new(vec![2, 1], 0).unwrap();
        assert_eq!(q.block_of(1), 0);
        assert_eq!(q.block_of(2), 1);
    }
}
