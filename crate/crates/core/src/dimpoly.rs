//! The dimension polynomial of a linear system from the leaders of a
//! characteristic set (or of a Gröbner basis).
//!
//! Free terms split into `U^{(1)}`, the terms that are multiples of no
//! σ-leader, counted by [`setdim::phi_a`](crate::setdim::phi_a), and
//! `U^{(2)}`, the leader multiples `λ v_j` whose block orders overflow,
//! counted by inclusion–exclusion over least common multiples.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::lambda_monoid::{LambdaMonomial, Partition, Term, TermOrder};
use crate::linpoly::{DsRing, LinearDSPolynomial};
use crate::numpoly::{rat, InvariantReport, NumericalPolynomial};
use crate::oracle::{self, OracleCheck};
use crate::setdim::{binomial_i64, phi_a};
use crate::system::LinearSystem;

/// Leader data of one basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderEntry {
    /// σ-leader `v_j`.
    pub v: Term,
    /// Block leaders `u_j^{(i)}`.
    pub u: Vec<Term>,
    /// `a_ij = ord_i v_j`.
    pub a: Vec<u64>,
    /// `b_ij = ord_i u_j^{(i)}`.
    pub b: Vec<u64>,
    /// `c_j = ord_σ v_j`.
    pub c: u64,
}

impl LeaderEntry {
    /// `b_ij - a_ij`, how far the block leader reaches past the σ-leader.
    pub fn reach(&self, i: usize) -> u64 {
        self.b[i] - self.a[i]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderTable {
    pub partition: Partition,
    pub num_indets: usize,
    pub entries: Vec<LeaderEntry>,
}

impl LeaderTable {
    /// Builds the table from `(v, [u^(1), ..., u^(p)])` pairs.
    pub fn from_leaders(partition: Partition, num_indets: usize, leaders: Vec<(Term, Vec<Term>)>) -> Result<Self> {
        let p = partition.num_blocks();
        let mut entries = Vec::with_capacity(leaders.len());
        for (v, u) in leaders {
            if u.len() != p {
                return Err(Error::DimensionMismatch(format!(
                    "{} block leaders for {} blocks",
                    u.len(),
                    p
                )));
            }
            if v.generator >= num_indets {
                return Err(Error::DimensionMismatch(format!("leader {} on a missing generator", v)));
            }
            let a = partition.block_orders(&v.monomial);
            let b: Vec<u64> = u
                .iter()
                .enumerate()
                .map(|(i, t)| partition.ord(&t.monomial, TermOrder::Block(i)))
                .collect();
            if a.iter().zip(&b).any(|(x, y)| x > y) {
                return Err(Error::DimensionMismatch(format!(
                    "block leader orders {:?} below those of the σ-leader {:?}",
                    b, a
                )));
            }
            entries.push(LeaderEntry {
                c: v.monomial.ord_sigma(),
                v,
                u,
                a,
                b,
            });
        }
        Ok(LeaderTable {
            partition,
            num_indets,
            entries,
        })
    }

    pub fn from_charset(ring: &DsRing, charset: &[LinearDSPolynomial]) -> Result<Self> {
        let leaders = charset
            .iter()
            .map(|a| ring.leaders(a).map(|l| (l.sigma, l.blocks)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_leaders(ring.partition.clone(), ring.num_indets, leaders)
    }

    fn exponent_vector(t: &Term) -> Vec<i64> {
        t.monomial
            .delta_exp()
            .iter()
            .map(|&k| k as i64)
            .chain(t.monomial.sigma_exp().iter().map(|&l| l as i64))
            .collect()
    }

    /// Nonempty index sets whose σ-leaders share a generator and are
    /// pairwise similar, with the least common multiple of the leaders.
    fn compatible_subsets(&self) -> Vec<(Vec<usize>, LambdaMonomial)> {
        let d = self.entries.len();
        let mut out = Vec::new();
        // Depth-first extension keeps the lcm incrementally.
        fn extend(
            table: &LeaderTable,
            start: usize,
            chosen: &mut Vec<usize>,
            lcm: Option<LambdaMonomial>,
            out: &mut Vec<(Vec<usize>, LambdaMonomial)>,
            d: usize,
        ) {
            for j in start..d {
                let e = &table.entries[j];
                let next = match &lcm {
                    None => Some(e.v.monomial.clone()),
                    Some(l) => {
                        let first = &table.entries[chosen[0]];
                        let compatible = first.v.generator == e.v.generator
                            && chosen
                                .iter()
                                .all(|&i| table.entries[i].v.monomial.similar(&e.v.monomial));
                        if compatible {
                            l.lcm(&e.v.monomial).ok()
                        } else {
                            None
                        }
                    }
                };
                if let Some(l) = next {
                    chosen.push(j);
                    out.push((chosen.clone(), l.clone()));
                    extend(table, j + 1, chosen, Some(l), out, d);
                    chosen.pop();
                }
            }
        }
        extend(self, 0, &mut Vec::new(), None, &mut out, d);
        out
    }
}

/// Number of σ-vectors in the cone of `sigma` (zero coordinates free) with
/// `Σ|l| ≤ t_{p+1}`, as a polynomial in the last variable.
pub fn sigma_cone_count(num_vars: usize, sigma: &[i32]) -> NumericalPolynomial {
    let var = num_vars - 1;
    let c: i64 = sigma.iter().map(|&l| l.unsigned_abs() as i64).sum();
    let free = sigma.iter().filter(|&&l| l == 0).count() as i64;
    let fixed = sigma.len() as i64 - free;
    let mut out = NumericalPolynomial::zero(num_vars);
    for i in 0..=free {
        let weight = (1i64 << i) * binomial_i64(free, i);
        out = &out
            + &NumericalPolynomial::binomial_term(num_vars, var, fixed - c, (fixed + i) as u32).scale(&rat(weight));
    }
    out
}

/// `Π_k C(t_k + m_k - c_k - s_k, m_k)`.
fn block_product(partition: &Partition, c: &[u64], s: &[u64]) -> NumericalPolynomial {
    let k = partition.num_vars();
    partition
        .blocks()
        .iter()
        .enumerate()
        .fold(NumericalPolynomial::from_integer(k, 1), |acc, (i, &mi)| {
            let shift = mi as i64 - c[i] as i64 - s[i] as i64;
            &acc * &NumericalPolynomial::binomial_term(k, i, shift, mi as u32)
        })
}

/// `Card U^{(1)}`: for each indeterminate, `φ_A` of the exponents of the
/// σ-leaders sitting on it.
pub fn u1_polynomial(table: &LeaderTable) -> Result<NumericalPolynomial> {
    let mut total = NumericalPolynomial::zero(table.partition.num_vars());
    for k in 0..table.num_indets {
        let pts: Vec<Vec<i64>> = table
            .entries
            .iter()
            .filter(|e| e.v.generator == k)
            .map(|e| LeaderTable::exponent_vector(&e.v))
            .collect();
        total = &total + &phi_a(&pts, &table.partition)?;
    }
    Ok(total)
}

/// `Card U^{(2)}`: leader multiples for which every dividing leader
/// overflows some block bound. Computed as `Card ∪M_j − Card ∪N_j`, with
/// `M_j` the bounded multiples of `v_j` and `N_j ⊆ M_j` those that stay
/// within bounds, each union by inclusion–exclusion over lcms.
pub fn u2_polynomial(table: &LeaderTable) -> Result<NumericalPolynomial> {
    let partition = &table.partition;
    let k = partition.num_vars();
    let p = partition.num_blocks();
    let mut total = NumericalPolynomial::zero(k);
    for (set, lcm) in table.compatible_subsets() {
        let sign = if set.len() % 2 == 1 { 1 } else { -1 };
        let c = partition.block_orders(&lcm);
        let s: Vec<u64> = (0..p)
            .map(|i| set.iter().map(|&j| table.entries[j].reach(i)).max().unwrap())
            .collect();
        let all = block_product(partition, &c, &vec![0; p]);
        let staying = block_product(partition, &c, &s);
        let term = &sigma_cone_count(k, lcm.sigma_exp()) * &(&all - &staying);
        total = &total + &term.scale(&rat(sign));
    }
    Ok(total)
}

/// The union of escape sets `∪_j V_j`, where `V_j` holds the multiples of
/// `v_j` whose own order conditions overflow, computed by escape patterns:
/// for every compatible index set and every assignment of a threshold set
/// of escaping leaders to each block, a product of per-block brackets.
///
/// This coincides with [`u2_polynomial`] whenever no term is a common
/// multiple of leaders with different escape behaviour.
pub fn escape_union_polynomial(table: &LeaderTable) -> Result<NumericalPolynomial> {
    let partition = &table.partition;
    let k = partition.num_vars();
    let p = partition.num_blocks();
    let mut total = NumericalPolynomial::zero(k);
    for (set, lcm) in table.compatible_subsets() {
        let sign = if set.len() % 2 == 1 { 1 } else { -1 };
        let c = partition.block_orders(&lcm);
        // Per block: (escape set, factor).
        let mut options: Vec<Vec<(BTreeSet<usize>, NumericalPolynomial)>> = Vec::with_capacity(p);
        for i in 0..p {
            let reach: Vec<(usize, u64)> = set.iter().map(|&j| (j, table.entries[j].reach(i))).collect();
            let mi = partition.blocks()[i] as i64;
            let binom = |s: u64| NumericalPolynomial::binomial_term(k, i, mi - c[i] as i64 - s as i64, mi as u32);
            let max_reach = reach.iter().map(|r| r.1).max().unwrap();
            let mut opts = vec![(BTreeSet::new(), binom(max_reach))];
            let thresholds: BTreeSet<u64> = reach.iter().map(|r| r.1).filter(|&d| d > 0).collect();
            for &theta in &thresholds {
                let escaping: BTreeSet<usize> = reach.iter().filter(|r| r.1 >= theta).map(|r| r.0).collect();
                let below = reach.iter().map(|r| r.1).filter(|&d| d < theta).max().unwrap_or(0);
                opts.push((escaping, &binom(below) - &binom(theta)));
            }
            options.push(opts);
        }
        let want: BTreeSet<usize> = set.iter().copied().collect();
        let mut sum = NumericalPolynomial::zero(k);
        for profile in options.iter().map(|o| o.iter()).multi_cartesian_product() {
            let covered: BTreeSet<usize> = profile.iter().flat_map(|(s, _)| s.iter().copied()).collect();
            if covered != want {
                continue;
            }
            let prod = profile
                .iter()
                .fold(NumericalPolynomial::from_integer(k, 1), |acc, (_, f)| &acc * f);
            sum = &sum + &prod;
        }
        if p == 0 {
            // No blocks: nothing can escape.
            continue;
        }
        total = &total + &(&sigma_cone_count(k, lcm.sigma_exp()) * &sum).scale(&rat(sign));
    }
    Ok(total)
}

/// Everything computed for one system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionPolynomialReport {
    pub phi: NumericalPolynomial,
    pub u1_part: NumericalPolynomial,
    pub u2_part: NumericalPolynomial,
    pub invariants: InvariantReport,
    /// The basis the polynomial was read from, one element per line.
    pub charset_echo: Vec<String>,
    pub leader_table: LeaderTable,
    pub oracle: Option<OracleCheck>,
}

impl DimensionPolynomialReport {
    /// Builds the report from a leader table; optionally cross-checks
    /// against enumeration.
    pub fn from_table(table: LeaderTable, echo: Vec<String>, check_oracle: bool) -> Result<Self> {
        let u1_part = u1_polynomial(&table)?;
        let u2_part = u2_polynomial(&table)?;
        let phi = &u1_part + &u2_part;
        let invariants = InvariantReport::compute(&phi, &table.partition)?;
        let oracle = if check_oracle {
            Some(oracle::check_polynomial(&phi, &table, oracle::DEFAULT_CAP)?)
        } else {
            None
        };
        Ok(DimensionPolynomialReport {
            phi,
            u1_part,
            u2_part,
            invariants,
            charset_echo: echo,
            leader_table: table,
            oracle,
        })
    }

    /// Plain-text rendering.
    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "basis ({} elements):", self.charset_echo.len());
        for (i, line) in self.charset_echo.iter().enumerate() {
            let _ = writeln!(out, "  [{}] {}", i + 1, line);
        }
        let _ = writeln!(out, "leaders:");
        for (i, e) in self.leader_table.entries.iter().enumerate() {
            let us = e.u.iter().map(|u| crate::lincomb::term_name(u, names)).join(", ");
            let _ = writeln!(
                out,
                "  [{}] v = {} ; u = ({}) ; a = {:?} ; b = {:?} ; c = {}",
                i + 1,
                crate::lincomb::term_name(&e.v, names),
                us,
                e.a,
                e.b,
                e.c
            );
        }
        let _ = writeln!(out, "U1 = {}", self.u1_part);
        let _ = writeln!(out, "U2 = {}", self.u2_part);
        let _ = writeln!(out, "Phi = {}", self.phi);
        let _ = writeln!(out, "{}", self.invariants);
        if let Some(check) = &self.oracle {
            let _ = writeln!(
                out,
                "oracle: {} grid points from {:?} to {:?} agree with enumeration; interpolation reproduces Phi",
                check.points_checked, check.lower, check.upper
            );
        }
        out
    }
}

/// Characteristic set, then `U^{(1)} + U^{(2)}`, then invariants.
pub fn dimension_polynomial(system: &LinearSystem, check_oracle: bool) -> Result<DimensionPolynomialReport> {
    let ring = &system.ring;
    let charset = ring.charset_linear_system(&system.equations)?;
    let table = LeaderTable::from_charset(ring, &charset)?;
    let echo = charset
        .iter()
        .map(|a| a.display(&ring.partition, &system.names))
        .collect();
    DimensionPolynomialReport::from_table(table, echo, check_oracle)
}

/// Evaluation table and the strength interpretation of `Φ`.
pub fn strength_report(system: &LinearSystem, lower: &[i64], upper: &[i64]) -> Result<String> {
    let report = dimension_polynomial(system, false)?;
    let k = system.ring.partition.num_vars();
    if lower.len() != k || upper.len() != k {
        return Err(Error::DimensionMismatch(format!("the grid needs {} coordinates", k)));
    }
    let mut out = String::new();
    let _ = writeln!(out, "Phi = {}", report.phi);
    let _ = writeln!(
        out,
        "Phi(r1,...,r{}) is the number of values of the unknowns and their transforms of \
         orders bounded by (r1,...,r{}) that can be prescribed independently (strength of the system).",
        k, k
    );
    let vars = (1..=k).map(|i| format!("r{}", i)).join(",");
    let _ = writeln!(out, "{},Phi", vars);
    for r in oracle::grid_points(lower, upper) {
        let _ = writeln!(out, "{},{}", r.iter().join(","), report.phi.evaluate(&r));
    }
    let _ = writeln!(out, "{}", report.invariants);
    Ok(out)
}
