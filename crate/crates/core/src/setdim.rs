//! Dimension polynomials of subsets of `N^m` and of `N^m × Z^n`.
//!
//! For `E ⊆ N^m`, `ω_E(r)` counts the points of `N^m` with block orders
//! bounded by `r` that dominate no element of `E`. For `A ⊆ N^m × Z^n`,
//! `φ_A` does the same with the orthant-wise product order on the
//! automorphism coordinates; it is computed by embedding into `N^{m+2n}`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{parse_err, Error, Result};
use crate::lambda_monoid::Partition;
use crate::numpoly::{rat, NumericalPolynomial};

/// A finite subset of `N^m` together with a partition of the coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSetN {
    pub points: Vec<Vec<u32>>,
    pub partition: Partition,
}

/// A finite subset of `N^m × Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSetNZ {
    pub points: Vec<Vec<i64>>,
    pub partition: Partition,
}

impl PointSetN {
    pub fn new(points: Vec<Vec<u32>>, partition: Partition) -> Result<Self> {
        let m = partition.num_derivations();
        if let Some(bad) = points.iter().find(|p| p.len() != m) {
            return Err(Error::DimensionMismatch(format!(
                "point {:?} does not have {} coordinates",
                bad, m
            )));
        }
        Ok(PointSetN { points, partition })
    }

    pub fn minimal_elements(&self) -> Vec<Vec<u32>> {
        minimal_elements(&self.points)
    }

    pub fn dimension_polynomial(&self) -> Result<NumericalPolynomial> {
        omega_e(&self.points, self.partition.blocks())
    }
}

impl PointSetNZ {
    pub fn new(points: Vec<Vec<i64>>, partition: Partition) -> Result<Self> {
        let m = partition.num_derivations();
        let width = m + partition.num_automorphisms();
        for p in &points {
            if p.len() != width {
                return Err(Error::DimensionMismatch(format!(
                    "point {:?} does not have {} coordinates",
                    p, width
                )));
            }
            if p[..m].iter().any(|&x| x < 0) {
                return Err(Error::DimensionMismatch(format!(
                    "point {:?} has a negative derivation coordinate",
                    p
                )));
            }
        }
        Ok(PointSetNZ { points, partition })
    }

    pub fn dimension_polynomial(&self) -> Result<NumericalPolynomial> {
        phi_a(&self.points, &self.partition)
    }
}

/// The minimal elements of a finite subset of `N^k` under the product
/// order, deduplicated and sorted.
pub fn minimal_elements(points: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut sorted: Vec<Vec<u32>> = points.to_vec();
    sorted.sort();
    sorted.dedup();
    let leq = |a: &Vec<u32>, b: &Vec<u32>| a.iter().zip(b).all(|(x, y)| x <= y);
    sorted
        .iter()
        .filter(|p| !sorted.iter().any(|q| q != *p && leq(q, p)))
        .cloned()
        .collect()
}

fn block_sums(point: &[u32], blocks: &[usize]) -> Vec<i64> {
    let mut out = Vec::with_capacity(blocks.len());
    let mut start = 0;
    for &b in blocks {
        out.push(point[start..start + b].iter().map(|&x| x as i64).sum());
        start += b;
    }
    out
}

/// `ω_E` for `E ⊆ N^m` with coordinates grouped into consecutive blocks of
/// the given sizes (a zero-size block contributes a constant factor 1).
///
/// Inclusion–exclusion over subsets of the minimal elements: every subset
/// `σ` contributes `(-1)^{|σ|} Π_j C(t_j + m_j - b_{σj}, m_j)` where `b_{σj}`
/// is the block-`j` sum of the coordinatewise maximum of `σ`.
pub fn omega_e(points: &[Vec<u32>], blocks: &[usize]) -> Result<NumericalPolynomial> {
    let m: usize = blocks.iter().sum();
    if let Some(bad) = points.iter().find(|p| p.len() != m) {
        return Err(Error::DimensionMismatch(format!(
            "point {:?} does not have {} coordinates",
            bad, m
        )));
    }
    let mins = minimal_elements(points);
    if mins.len() > 24 {
        return Err(Error::CapExceeded {
            needed: 1u128 << mins.len(),
            cap: 1 << 24,
        });
    }
    // Accumulate signed multiplicities per block-sum vector, then build each
    // distinct product of binomials once.
    let mut weights: BTreeMap<Vec<i64>, i64> = BTreeMap::new();
    let q = mins.len();
    let mut maxes: Vec<Vec<u32>> = vec![vec![0; m]; 1 << q];
    for mask in 0usize..(1 << q) {
        if mask != 0 {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            maxes[mask] = maxes[rest]
                .iter()
                .zip(&mins[low])
                .map(|(a, b)| *a.max(b))
                .collect();
        }
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        *weights.entry(block_sums(&maxes[mask], blocks)).or_insert(0) += sign;
    }
    let k = blocks.len();
    let mut cache: HashMap<(usize, i64), NumericalPolynomial> = HashMap::new();
    let mut total = NumericalPolynomial::zero(k);
    for (b, w) in weights {
        if w == 0 {
            continue;
        }
        let mut term = NumericalPolynomial::from_integer(k, w);
        for (j, (&size, &bj)) in blocks.iter().zip(&b).enumerate() {
            let factor = cache.entry((j, bj)).or_insert_with(|| {
                NumericalPolynomial::binomial_term(k, j, size as i64 - bj, size as u32)
            });
            term = &term * factor;
        }
        total = &total + &term;
    }
    Ok(total)
}

/// The embedding `ρ : N^m × Z^n → N^{m+2n}` sending `(a, l)` to
/// `(a, max(l,0), max(-l,0))`.
pub fn rho_embed(point: &[i64], m: usize) -> Vec<u32> {
    let (a, l) = point.split_at(m);
    let mut out: Vec<u32> = a.iter().map(|&x| x as u32).collect();
    out.extend(l.iter().map(|&x| x.max(0) as u32));
    out.extend(l.iter().map(|&x| (-x).max(0) as u32));
    out
}

/// `φ_A = ω_B` with `B = ρ(A) ∪ {e_1, ..., e_n}` over the blocks of the
/// partition plus one extra block of size `2n`.
pub fn phi_a(points: &[Vec<i64>], partition: &Partition) -> Result<NumericalPolynomial> {
    let m = partition.num_derivations();
    let n = partition.num_automorphisms();
    let mut embedded: Vec<Vec<u32>> = Vec::with_capacity(points.len() + n);
    for p in points {
        if p.len() != m + n || p[..m].iter().any(|&x| x < 0) {
            return Err(Error::DimensionMismatch(format!(
                "point {:?} is not in N^{} x Z^{}",
                p, m, n
            )));
        }
        embedded.push(rho_embed(p, m));
    }
    for i in 0..n {
        let mut e = vec![0; m + 2 * n];
        e[m + i] = 1;
        e[m + n + i] = 1;
        embedded.push(e);
    }
    let mut blocks = partition.blocks().to_vec();
    blocks.push(2 * n);
    omega_e(&embedded, &blocks)
}

/// Thresholds `B_j` from which `ω_E` agrees with `Card V_E`: the block
/// sums of the coordinatewise maximum of the minimal elements, which bound
/// the block sums of every least common multiple in the inclusion–exclusion.
pub fn stability_bounds(points: &[Vec<u32>], blocks: &[usize]) -> Vec<i64> {
    let mins = minimal_elements(points);
    let Some(first) = mins.first() else {
        return vec![0; blocks.len()];
    };
    let mut top = first.clone();
    for p in &mins[1..] {
        for (t, &x) in top.iter_mut().zip(p) {
            *t = (*t).max(x);
        }
    }
    block_sums(&top, blocks)
}

/// Thresholds for `φ_A`, read off the embedded set `ρ(A) ∪ {e_i}`.
pub fn stability_bounds_nz(points: &[Vec<i64>], partition: &Partition) -> Vec<i64> {
    let m = partition.num_derivations();
    let n = partition.num_automorphisms();
    let mut embedded: Vec<Vec<u32>> = points.iter().map(|p| rho_embed(p, m)).collect();
    for i in 0..n {
        let mut e = vec![0; m + 2 * n];
        e[m + i] = 1;
        e[m + n + i] = 1;
        embedded.push(e);
    }
    let mut blocks = partition.blocks().to_vec();
    blocks.push(2 * n);
    stability_bounds(&embedded, &blocks)
}

/// Closed form of `φ_∅`: `Π_i C(t_i + m_i, m_i) · Σ_k (-1)^{n-k} 2^k C(n,k) C(t_{p+1}+k, k)`.
pub fn phi_empty(partition: &Partition) -> NumericalPolynomial {
    let k = partition.num_vars();
    let mut out = NumericalPolynomial::from_integer(k, 1);
    for (i, &mi) in partition.blocks().iter().enumerate() {
        out = &out * &NumericalPolynomial::binomial_term(k, i, mi as i64, mi as u32);
    }
    let n = partition.num_automorphisms() as u32;
    let mut sigma = NumericalPolynomial::zero(k);
    for j in 0..=n {
        let sign = if (n - j) % 2 == 0 { 1 } else { -1 };
        let coeff = sign * (1i64 << j) * binomial_i64(n as i64, j as i64);
        sigma = &sigma + &NumericalPolynomial::binomial_term(k, k - 1, j as i64, j).scale(&rat(coeff));
    }
    &out * &sigma
}

pub(crate) fn binomial_i64(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1i64, |acc, i| acc * (n - i) / (i + 1))
}

/// Parses the point-set text format: one point per line, integers separated
/// by whitespace, `#` comments. Optional header lines `partition m1 .. mp`
/// and `automorphisms n` may precede the points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointFile {
    pub partition: Option<Vec<usize>>,
    pub automorphisms: Option<usize>,
    pub points: Vec<Vec<i64>>,
}

impl PointFile {
    pub fn parse(text: &str) -> Result<PointFile> {
        let mut out = PointFile::default();
        let mut width = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace().peekable();
            let lineno = idx + 1;
            let head = *words.peek().unwrap();
            let ints = |ws: &mut dyn Iterator<Item = &str>| -> Result<Vec<i64>> {
                ws.map(|w| {
                    w.parse::<i64>()
                        .map_err(|_| parse_err(lineno, format!("expected an integer, found `{}`", w)))
                })
                .collect()
            };
            match head {
                "partition" => {
                    words.next();
                    let v = ints(&mut words)?;
                    if v.iter().any(|&x| x <= 0) {
                        return Err(parse_err(lineno, "block sizes must be positive"));
                    }
                    out.partition = Some(v.into_iter().map(|x| x as usize).collect());
                }
                "automorphisms" => {
                    words.next();
                    let v = ints(&mut words)?;
                    if v.len() != 1 || v[0] < 0 {
                        return Err(parse_err(lineno, "expected `automorphisms n`"));
                    }
                    out.automorphisms = Some(v[0] as usize);
                }
                _ => {
                    let p = ints(&mut words)?;
                    match width {
                        None => width = Some(p.len()),
                        Some(w) if w != p.len() => {
                            return Err(parse_err(
                                lineno,
                                format!("point has {} coordinates, earlier points have {}", p.len(), w),
                            ))
                        }
                        _ => {}
                    }
                    out.points.push(p);
                }
            }
        }
        Ok(out)
    }
}
