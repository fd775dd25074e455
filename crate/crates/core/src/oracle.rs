//! Brute-force ground truth: enumerate bounded operator sets directly and
//! count, and recover polynomials from values by finite differences.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::dimpoly::LeaderTable;
use crate::error::{Error, Result};
use crate::lambda_monoid::{LambdaMonomial, Partition, TermOrder};
use crate::numpoly::NumericalPolynomial;

/// Default upper limit on the number of enumerated elements.
pub const DEFAULT_CAP: u128 = 1_000_000;

fn binom_u128(n: i64, k: i64) -> u128 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// `Card Λ(r)` where `r = (r_1, ..., r_p, r_{p+1})`.
pub fn lambda_count(partition: &Partition, bounds: &[i64]) -> u128 {
    let p = partition.num_blocks();
    if bounds.iter().any(|&r| r < 0) {
        return 0;
    }
    let mut total: u128 = 1;
    for (i, &mi) in partition.blocks().iter().enumerate() {
        total *= binom_u128(bounds[i] + mi as i64, mi as i64);
    }
    let n = partition.num_automorphisms() as i64;
    let r = bounds[p];
    let sigma: u128 = (0..=n.min(r))
        .map(|k| binom_u128(n, k) * (1u128 << k) * binom_u128(r, k))
        .sum();
    total * sigma
}

fn check_bounds(partition: &Partition, bounds: &[i64]) -> Result<()> {
    if bounds.len() != partition.num_vars() {
        return Err(Error::DimensionMismatch(format!(
            "expected {} bounds, got {}",
            partition.num_vars(),
            bounds.len()
        )));
    }
    Ok(())
}

fn check_cap(needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(())
}

/// Natural vectors of length `len` with coordinate sum at most `r`, listed
/// shell by shell (sum 0 first).
fn graded_naturals(len: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for s in 0..=r.max(-1) {
        compositions(len, s, &mut Vec::new(), &mut out);
    }
    out
}

fn compositions(len: usize, s: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if len == 0 {
        if s == 0 {
            out.push(prefix.clone());
        }
        return;
    }
    if len == 1 {
        prefix.push(s);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=s).rev() {
        prefix.push(first);
        compositions(len - 1, s - first, prefix, out);
        prefix.pop();
    }
}

/// Integer vectors of length `n` with `Σ|l| ≤ r`, shell by shell.
fn graded_integers(n: usize, r: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for v in graded_naturals(n, r) {
        let nonzero: Vec<usize> = (0..n).filter(|&j| v[j] != 0).collect();
        for mask in 0..1usize << nonzero.len() {
            let mut w = v.clone();
            for (bit, &j) in nonzero.iter().enumerate() {
                if mask >> bit & 1 == 1 {
                    w[j] = -w[j];
                }
            }
            out.push(w);
        }
    }
    out
}

/// Calls `f` on every exponent vector `(k_1..k_m, l_1..l_n)` of `Λ(r)`.
fn for_each_point(partition: &Partition, bounds: &[i64], mut f: impl FnMut(&[i64])) {
    let mut factors: Vec<Vec<Vec<i64>>> = partition
        .blocks()
        .iter()
        .enumerate()
        .map(|(i, &mi)| graded_naturals(mi, bounds[i]))
        .collect();
    factors.push(graded_integers(partition.num_automorphisms(), bounds[partition.num_blocks()]));
    if factors.iter().any(|f| f.is_empty()) {
        return;
    }
    let width = partition.num_derivations() + partition.num_automorphisms();
    let mut idx = vec![0usize; factors.len()];
    let mut point = Vec::with_capacity(width);
    loop {
        point.clear();
        for (fac, &i) in factors.iter().zip(&idx) {
            point.extend_from_slice(&fac[i]);
        }
        f(&point);
        let mut pos = factors.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < factors[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

fn to_monomial(point: &[i64], m: usize) -> LambdaMonomial {
    LambdaMonomial::new(
        point[..m].iter().map(|&k| k as u32).collect(),
        point[m..].iter().map(|&l| l as i32).collect(),
    )
}

/// Every element of `Λ(r)`.
pub fn enumerate_lambda(partition: &Partition, bounds: &[i64], cap: u128) -> Result<Vec<LambdaMonomial>> {
    check_bounds(partition, bounds)?;
    check_cap(lambda_count(partition, bounds), cap)?;
    let m = partition.num_derivations();
    let mut out = Vec::new();
    for_each_point(partition, bounds, |p| out.push(to_monomial(p, m)));
    Ok(out)
}

/// `Card V_E(r)`: points of `N^m` with block sums bounded by `r` that
/// dominate no element of `E`.
pub fn count_ve(points: &[Vec<u32>], blocks: &[usize], bounds: &[i64], cap: u128) -> Result<u64> {
    let partition = Partition::new(blocks.iter().copied().filter(|&b| b > 0).collect(), 0)?;
    if partition.num_blocks() != blocks.len() || bounds.len() != blocks.len() {
        return Err(Error::DimensionMismatch("bounds must match the nonempty blocks".into()));
    }
    let mut full = bounds.to_vec();
    full.push(0);
    check_cap(lambda_count(&partition, &full), cap)?;
    let mut count = 0u64;
    for_each_point(&partition, &full, |x| {
        let dominated = points
            .iter()
            .any(|e| e.iter().zip(x).all(|(&ei, &xi)| ei as i64 <= xi));
        if !dominated {
            count += 1;
        }
    });
    Ok(count)
}

/// Whether `a ⊴ x` in `N^m × Z^n`: same orthant and componentwise smaller
/// absolute values.
fn below(a: &[i64], x: &[i64], m: usize) -> bool {
    a[..m].iter().zip(&x[..m]).all(|(ai, xi)| ai <= xi)
        && a[m..].iter().zip(&x[m..]).all(|(&ai, &xi)| {
            if ai > 0 {
                xi >= ai
            } else if ai < 0 {
                xi <= ai
            } else {
                true
            }
        })
}

/// `Card W_A(r)` for `A ⊆ N^m × Z^n`.
pub fn count_wa(points: &[Vec<i64>], partition: &Partition, bounds: &[i64], cap: u128) -> Result<u64> {
    check_bounds(partition, bounds)?;
    check_cap(lambda_count(partition, bounds), cap)?;
    let m = partition.num_derivations();
    let mut count = 0u64;
    for_each_point(partition, bounds, |x| {
        if !points.iter().any(|a| below(a, x, m)) {
            count += 1;
        }
    });
    Ok(count)
}

/// Which terms count as free when a term is a multiple of several leaders.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Membership {
    /// Free iff the order conditions fail for every leader dividing it.
    ForEvery,
    /// Free iff they fail for at least one dividing leader.
    Exists,
}

/// Counts of the two kinds of free terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct TermCounts {
    /// Terms that are multiples of no leader.
    pub u1: u64,
    /// Leader multiples that escape the order bounds.
    pub u2: u64,
}

impl TermCounts {
    pub fn total(&self) -> u64 {
        self.u1 + self.u2
    }
}

/// Classifies every term `λ y_k` with `λ ∈ Λ(r)`.
pub fn classify_terms(table: &LeaderTable, bounds: &[i64], rule: Membership, cap: u128) -> Result<TermCounts> {
    let partition = &table.partition;
    check_bounds(partition, bounds)?;
    let per_indet = lambda_count(partition, bounds);
    check_cap(per_indet * table.num_indets as u128, cap)?;
    let m = partition.num_derivations();
    let p = partition.num_blocks();
    let mut counts = TermCounts::default();
    for k in 0..table.num_indets {
        let leaders: Vec<_> = table.entries.iter().filter(|e| e.v.generator == k).collect();
        for_each_point(partition, bounds, |x| {
            let lambda = to_monomial(x, m);
            let mut divided = false;
            let mut all_escape = true;
            let mut some_escape = false;
            for e in &leaders {
                if let Some(q) = e.v.monomial.quotient_of(&lambda) {
                    divided = true;
                    let escapes = (0..p).any(|i| {
                        (partition.ord(&q, TermOrder::Block(i)) + e.b[i]) as i64 > bounds[i]
                    });
                    all_escape &= escapes;
                    some_escape |= escapes;
                }
            }
            if !divided {
                counts.u1 += 1;
            } else if match rule {
                Membership::ForEvery => all_escape,
                Membership::Exists => some_escape,
            } {
                counts.u2 += 1;
            }
        });
    }
    Ok(counts)
}

/// `Card U^{(1)} + Card U^{(2)}` at `r`.
pub fn count_reduced_terms(table: &LeaderTable, bounds: &[i64], cap: u128) -> Result<u64> {
    Ok(classify_terms(table, bounds, Membership::ForEvery, cap)?.total())
}

/// All integer points of the box `[lower, upper]`, lexicographically.
pub fn grid_points(lower: &[i64], upper: &[i64]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for (&lo, &hi) in lower.iter().zip(upper) {
        out = out
            .into_iter()
            .flat_map(|p| {
                (lo..=hi).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

/// The unique polynomial with `deg_{t_j} ≤ caps[j]` through the values on
/// `lower + [0, caps]`, checked against one extra layer of points.
pub fn interpolate_numerical(
    values: &mut dyn FnMut(&[i64]) -> Result<BigInt>,
    caps: &[u32],
    lower: &[i64],
) -> Result<NumericalPolynomial> {
    let k = caps.len();
    if lower.len() != k {
        return Err(Error::DimensionMismatch("grid origin and caps differ in length".into()));
    }
    let upper: Vec<i64> = lower.iter().zip(caps).map(|(&l, &c)| l + c as i64).collect();
    let pts = grid_points(lower, &upper);
    let mut table: Vec<BigInt> = Vec::with_capacity(pts.len());
    for p in &pts {
        table.push(values(p)?);
    }
    // Strides of the row-major table.
    let sizes: Vec<usize> = caps.iter().map(|&c| c as usize + 1).collect();
    let mut strides = vec![1usize; k];
    for j in (0..k.saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * sizes[j + 1];
    }
    for j in 0..k {
        for level in 1..sizes[j] {
            for (flat, _) in pts.iter().enumerate().rev() {
                let pos = flat / strides[j] % sizes[j];
                if pos >= level {
                    let prev = table[flat - strides[j]].clone();
                    table[flat] -= prev;
                }
            }
        }
    }
    let mut poly = NumericalPolynomial::zero(k);
    for (flat, diff) in table.iter().enumerate() {
        if diff.is_zero() {
            continue;
        }
        let mut term = NumericalPolynomial::constant(k, num_rational::BigRational::from_integer(diff.clone()));
        for j in 0..k {
            let i = (flat / strides[j] % sizes[j]) as u32;
            term = &term * &NumericalPolynomial::binomial_term(k, j, -lower[j], i);
        }
        poly = &poly + &term;
    }
    let check_upper: Vec<i64> = upper.iter().map(|u| u + 1).collect();
    for p in grid_points(lower, &check_upper) {
        if p.iter().zip(&upper).all(|(x, u)| x <= u) {
            continue;
        }
        let expected = values(&p)?;
        let actual = poly.evaluate(&p);
        if actual != num_rational::BigRational::from_integer(expected.clone()) {
            return Err(Error::Interpolation {
                point: p,
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }
    Ok(poly)
}

/// Where the counting polynomials are guaranteed exact: every binomial of
/// the closed forms is then in its combinatorial range.
pub fn stability_offset(table: &LeaderTable) -> Vec<i64> {
    let partition = &table.partition;
    let p = partition.num_blocks();
    let n = partition.num_automorphisms() as i64;
    let mut out = vec![0i64; p + 1];
    for i in 0..p {
        let sum: i64 = table.entries.iter().map(|e| e.b[i] as i64).sum();
        let max: i64 = table.entries.iter().map(|e| e.b[i] as i64).max().unwrap_or(0);
        out[i] = sum + max;
    }
    let sum_c: i64 = table.entries.iter().map(|e| e.c as i64).sum();
    let max_c: i64 = table.entries.iter().map(|e| e.c as i64).max().unwrap_or(0);
    out[p] = sum_c + max_c + 2 * n;
    out
}

/// Outcome of comparing a polynomial with enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCheck {
    pub lower: Vec<i64>,
    pub upper: Vec<i64>,
    pub points_checked: usize,
    pub interpolated: NumericalPolynomial,
}

/// Compares `phi` with [`count_reduced_terms`] on every point of the box
/// from the stability offset spanning the degree caps plus one, and checks
/// that interpolating the counts gives back `phi`.
pub fn check_polynomial(phi: &NumericalPolynomial, table: &LeaderTable, cap: u128) -> Result<OracleCheck> {
    let lower = stability_offset(table);
    let caps = table.partition.degree_caps();
    let mut count = |r: &[i64]| -> Result<BigInt> { Ok(BigInt::from(count_reduced_terms(table, r, cap)?)) };
    let interpolated = interpolate_numerical(&mut count, &caps, &lower)?;
    let upper: Vec<i64> = lower.iter().zip(&caps).map(|(&l, &c)| l + c as i64 + 1).collect();
    let points = grid_points(&lower, &upper);
    for r in &points {
        let c = count_reduced_terms(table, r, cap)?;
        let v = phi.evaluate(r);
        if v != num_rational::BigRational::from_integer(BigInt::from(c)) {
            return Err(Error::OracleMismatch {
                point: r.clone(),
                polynomial: v.to_string(),
                count: c.to_string(),
            });
        }
    }
    if &interpolated != phi {
        return Err(Error::OracleMismatch {
            point: lower.clone(),
            polynomial: phi.to_string(),
            count: format!("interpolated {}", interpolated),
        });
    }
    Ok(OracleCheck {
        lower,
        upper,
        points_checked: points.len(),
        interpolated,
    })
}
