//! Affine-linear difference-differential polynomials: leaders, ranks,
//! reduction, autoreduced and coherent sets, and characteristic sets of
//! linear ideals.

use std::cmp::Ordering;

use itertools::Itertools;
use num_traits::One;

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::lambda_monoid::{lcm_similar, LambdaMonomial, Partition, Term, TermOrder};
use crate::lincomb::{signed_product, LinComb};

/// How coefficients of the ground field are represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoefficientModel {
    /// Rational numbers: every derivation kills them, every automorphism
    /// fixes them.
    RationalConstants,
    /// Formal tokens `λ(name)`, treated as algebraically independent and
    /// nonzero.
    FormalSymbols,
}

/// `Σ c_u u + c_0` with terms `u = λ y_j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LinearDSPolynomial {
    terms: LinComb,
    constant: Coeff,
}

impl LinearDSPolynomial {
    pub fn new(terms: LinComb, constant: Coeff) -> Self {
        LinearDSPolynomial { terms, constant }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant_poly(c: Coeff) -> Self {
        LinearDSPolynomial {
            terms: LinComb::new(),
            constant: c,
        }
    }

    pub fn from_terms<I: IntoIterator<Item = (Term, Coeff)>>(terms: I, constant: Coeff) -> Self {
        let mut lc = LinComb::new();
        for (t, c) in terms {
            lc.add_term(t, c);
        }
        LinearDSPolynomial::new(lc, constant)
    }

    pub fn terms(&self) -> &LinComb {
        &self.terms
    }

    pub fn constant(&self) -> &Coeff {
        &self.constant
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.constant.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> Coeff {
        self.terms.get(t).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        LinearDSPolynomial {
            terms: self.terms.add(&other.terms),
            constant: self.constant.add(&other.constant),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        LinearDSPolynomial {
            terms: self.terms.sub(&other.terms),
            constant: self.constant.sub(&other.constant),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        LinearDSPolynomial {
            terms: self.terms.scale(c),
            constant: self.constant.mul(c),
        }
    }

    /// `λA`: terms are multiplied by `λ`, coefficients transformed by the
    /// product rule.
    pub fn apply(&self, lambda: &LambdaMonomial) -> Result<Self> {
        Ok(LinearDSPolynomial {
            terms: self.terms.apply(lambda)?,
            constant: self.constant.apply(lambda)?,
        })
    }

    pub fn display(&self, partition: &Partition, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = self.terms.display_with(partition, names);
        if !self.constant.is_zero() {
            out.push_str(&signed_product(out.is_empty(), &self.constant, ""));
        }
        out
    }
}

/// `v_A` and `u_A^{(1)}, ..., u_A^{(p)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Leaders {
    pub sigma: Term,
    pub blocks: Vec<Term>,
}

/// `(v_A, deg, ord_1 u^{(1)}, ..., ord_p u^{(p)})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankKey {
    pub v: Term,
    pub deg: u32,
    pub ord_vector: Vec<u64>,
}

/// Certificate of a reduction: `J·B − B₀ = Σ c·λA_i` over the recorded
/// steps `(i, c, λ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub multiplier: Coeff,
    pub steps: Vec<(usize, Coeff, LambdaMonomial)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub remainder: LinearDSPolynomial,
    pub certificate: ReductionCertificate,
}

/// Limits for the iterative procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub completion_rounds: usize,
    pub reduction_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            completion_rounds: 1000,
            reduction_steps: 1_000_000,
        }
    }
}

/// The ambient ring: partition of the derivations, number of automorphisms
/// and indeterminates, and the coefficient model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DsRing {
    pub partition: Partition,
    pub num_indets: usize,
    pub model: CoefficientModel,
    pub limits: Limits,
}

struct Reducer {
    index: usize,
    v: Term,
    b: Vec<u64>,
}

impl DsRing {
    pub fn new(partition: Partition, num_indets: usize, model: CoefficientModel) -> Self {
        DsRing {
            partition,
            num_indets,
            model,
            limits: Limits::default(),
        }
    }

    fn m(&self) -> usize {
        self.partition.num_derivations()
    }

    fn n(&self) -> usize {
        self.partition.num_automorphisms()
    }

    pub fn leaders(&self, a: &LinearDSPolynomial) -> Result<Leaders> {
        let sigma = a
            .terms
            .leader(&self.partition, TermOrder::Sigma)
            .ok_or(Error::ConstantPolynomial)?
            .clone();
        let blocks = (0..self.partition.num_blocks())
            .map(|i| a.terms.leader(&self.partition, TermOrder::Block(i)).unwrap().clone())
            .collect();
        Ok(Leaders { sigma, blocks })
    }

    /// `(ord_1 u^{(1)}, ..., ord_p u^{(p)})`.
    pub fn leader_orders(&self, leaders: &Leaders) -> Vec<u64> {
        leaders
            .blocks
            .iter()
            .enumerate()
            .map(|(i, u)| self.partition.ord(&u.monomial, TermOrder::Block(i)))
            .collect()
    }

    pub fn rank_key(&self, a: &LinearDSPolynomial) -> Option<RankKey> {
        let leaders = self.leaders(a).ok()?;
        let ord_vector = self.leader_orders(&leaders);
        Some(RankKey {
            v: leaders.sigma,
            deg: 1,
            ord_vector,
        })
    }

    /// Compares ranks; constants rank lowest.
    pub fn rank_compare(&self, a: &LinearDSPolynomial, b: &LinearDSPolynomial) -> Ordering {
        match (self.rank_key(a), self.rank_key(b)) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(x), Some(y)) => self
                .partition
                .compare_terms(&x.v, &y.v, TermOrder::Sigma)
                .then(x.deg.cmp(&y.deg))
                .then_with(|| x.ord_vector.cmp(&y.ord_vector)),
        }
    }

    fn reducer(&self, index: usize, a: &LinearDSPolynomial) -> Result<Reducer> {
        let leaders = self.leaders(a)?;
        let b = self.leader_orders(&leaders);
        Ok(Reducer {
            index,
            v: leaders.sigma,
            b,
        })
    }

    /// The operator `λ` with `w = λ v`, when `w` may be eliminated by the
    /// reducer inside a polynomial whose block leaders have orders `ub`.
    fn eliminator(&self, r: &Reducer, w: &Term, ub: &[u64]) -> Option<LambdaMonomial> {
        let q = r.v.quotient_of(w)?;
        let fits = (0..ub.len()).all(|i| self.partition.ord(&q, TermOrder::Block(i)) + r.b[i] <= ub[i]);
        fits.then_some(q)
    }

    fn block_orders_of(&self, b: &LinearDSPolynomial) -> Vec<u64> {
        match self.leaders(b) {
            Ok(l) => self.leader_orders(&l),
            Err(_) => vec![0; self.partition.num_blocks()],
        }
    }

    /// Whether `B` is reduced with respect to the non-constant `A`.
    pub fn is_reduced(&self, b: &LinearDSPolynomial, a: &LinearDSPolynomial) -> Result<bool> {
        let r = self.reducer(0, a)?;
        if b.is_constant() {
            return Ok(true);
        }
        let ub = self.block_orders_of(b);
        Ok(b.terms.terms().all(|w| self.eliminator(&r, w, &ub).is_none()))
    }

    pub fn is_reduced_wrt(&self, b: &LinearDSPolynomial, set: &[LinearDSPolynomial]) -> Result<bool> {
        for a in set {
            if !self.is_reduced(b, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_autoreduced(&self, set: &[LinearDSPolynomial]) -> bool {
        if set.iter().any(|a| a.is_constant()) {
            return false;
        }
        for (i, a) in set.iter().enumerate() {
            for (j, b) in set.iter().enumerate() {
                if i != j && !self.is_reduced(b, a).unwrap_or(false) {
                    return false;
                }
            }
        }
        true
    }

    /// Reduces `B` modulo an autoreduced set.
    pub fn reduce(&self, b: &LinearDSPolynomial, set: &[LinearDSPolynomial]) -> Result<Reduction> {
        if !self.is_autoreduced(set) {
            return Err(Error::NotAutoreduced(self.display_set(set, &[])));
        }
        self.reduce_unchecked(b, set)
    }

    /// Reduction without the autoreducedness precondition; still
    /// terminates because each step replaces the greatest eliminable term by
    /// smaller ones.
    pub fn reduce_unchecked(&self, b: &LinearDSPolynomial, set: &[LinearDSPolynomial]) -> Result<Reduction> {
        let mut reducers = Vec::with_capacity(set.len());
        for (i, a) in set.iter().enumerate() {
            if a.is_constant() {
                return Err(Error::ConstantPolynomial);
            }
            reducers.push(self.reducer(i, a)?);
        }
        // Among several applicable reducers the one with the greatest leader wins.
        reducers.sort_by(|x, y| {
            self.partition
                .compare_terms(&y.v, &x.v, TermOrder::Sigma)
                .then(x.index.cmp(&y.index))
        });
        let mut cur = b.clone();
        let mut cert = ReductionCertificate {
            multiplier: Coeff::one(),
            steps: Vec::new(),
        };
        for _ in 0..self.limits.reduction_steps {
            let ub = self.block_orders_of(&cur);
            let found = cur
                .terms
                .sorted_desc(&self.partition, TermOrder::Sigma)
                .into_iter()
                .find_map(|w| {
                    reducers
                        .iter()
                        .find_map(|r| self.eliminator(r, w, &ub).map(|q| (w.clone(), r.index, q)))
                });
            let Some((w, idx, q)) = found else {
                return Ok(Reduction {
                    remainder: cur,
                    certificate: cert,
                });
            };
            let shifted = set[idx].apply(&q)?;
            let lc = shifted.coeff(&w);
            let cw = cur.coeff(&w);
            match lc.as_rational() {
                Some(l) => {
                    let factor = cw.scale(&l.recip());
                    cur = cur.sub(&shifted.scale(&factor));
                    cert.steps.push((idx, factor, q));
                }
                None => {
                    cur = cur.scale(&lc).sub(&shifted.scale(&cw));
                    cert.multiplier = cert.multiplier.mul(&lc);
                    for step in &mut cert.steps {
                        step.1 = step.1.mul(&lc);
                    }
                    cert.steps.push((idx, cw, q));
                }
            }
        }
        Err(Error::ReductionLimit(self.limits.reduction_steps))
    }

    /// Checks `J·B − B₀ = Σ c·λA_i` by expansion.
    pub fn verify_certificate(
        &self,
        b: &LinearDSPolynomial,
        reduction: &Reduction,
        set: &[LinearDSPolynomial],
    ) -> Result<bool> {
        let mut rhs = LinearDSPolynomial::zero();
        for (idx, c, lambda) in &reduction.certificate.steps {
            rhs = rhs.add(&set[*idx].apply(lambda)?.scale(c));
        }
        let lhs = b.scale(&reduction.certificate.multiplier).sub(&reduction.remainder);
        Ok(lhs == rhs)
    }

    /// Makes the σ-leader coefficient 1 when it is a rational number.
    pub fn normalize(&self, a: &LinearDSPolynomial) -> LinearDSPolynomial {
        let Ok(leaders) = self.leaders(a) else {
            return a.clone();
        };
        match a.coeff(&leaders.sigma).as_rational() {
            Some(q) if !q.is_one() => a.scale(&Coeff::rational(q.recip())),
            _ => a.clone(),
        }
    }

    fn sort_by_rank(&self, set: &mut [LinearDSPolynomial]) {
        set.sort_by(|a, b| {
            self.rank_compare(a, b)
                .then_with(|| a.terms.terms().cmp(b.terms.terms()))
                .then_with(|| format!("{:?}", a).cmp(&format!("{:?}", b)))
        });
    }

    fn check_consistent(&self, a: &LinearDSPolynomial) -> Result<()> {
        if a.is_constant() && !a.is_zero() {
            return Err(Error::Inconsistent(a.constant.to_string()));
        }
        Ok(())
    }

    /// Interreduces until every element is reduced with respect to all the
    /// others; zeros are dropped and the result is sorted by rank.
    pub fn autoreduce(&self, set: &[LinearDSPolynomial]) -> Result<Vec<LinearDSPolynomial>> {
        let mut cur: Vec<LinearDSPolynomial> = Vec::new();
        for a in set {
            self.check_consistent(a)?;
            if !a.is_zero() {
                cur.push(self.normalize(a));
            }
        }
        for _ in 0..self.limits.reduction_steps {
            self.sort_by_rank(&mut cur);
            let mut changed = false;
            for i in 0..cur.len() {
                let others: Vec<LinearDSPolynomial> =
                    cur.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, a)| a.clone()).collect();
                let red = self.reduce_unchecked(&cur[i], &others)?;
                if red.remainder != cur[i] {
                    self.check_consistent(&red.remainder)?;
                    if red.remainder.is_zero() {
                        cur.remove(i);
                    } else {
                        cur[i] = self.normalize(&red.remainder);
                    }
                    changed = true;
                    break;
                }
            }
            if !changed {
                return Ok(cur);
            }
        }
        Err(Error::ReductionLimit(self.limits.reduction_steps))
    }

    /// Radius of the box of automorphism shifts used as coherence witnesses.
    fn shift_radius(&self, set: &[LinearDSPolynomial]) -> i32 {
        let span = set
            .iter()
            .map(|a| sigma_span(a.terms.terms()))
            .max()
            .unwrap_or(0);
        1 + span
    }

    /// The finite family of polynomials whose reduction to zero certifies
    /// coherence: `δ_i A`, `α^e A` for shifts in a box, and the overlap
    /// combinations of pairs with similar σ-leaders.
    pub fn coherence_witnesses(&self, set: &[LinearDSPolynomial]) -> Result<Vec<LinearDSPolynomial>> {
        let (m, n) = (self.m(), self.n());
        let radius = self.shift_radius(set);
        let shifts = shift_box(n, radius);
        let mut out = Vec::new();
        for a in set {
            for i in 0..m {
                out.push(a.apply(&LambdaMonomial::derivation(m, n, i))?);
            }
            for e in &shifts {
                if e.iter().any(|&x| x != 0) {
                    out.push(a.apply(&LambdaMonomial::new(vec![0; m], e.clone()))?);
                }
            }
        }
        for (i, j) in (0..set.len()).tuple_combinations() {
            if let Some(s) = self.overlap(&set[i], &set[j])? {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// `λ'_σ(I_j)·λA_i − λ_σ(I_i)·λ'A_j` where `λ v_i = λ' v_j = lcm`.
    pub fn overlap(&self, ai: &LinearDSPolynomial, aj: &LinearDSPolynomial) -> Result<Option<LinearDSPolynomial>> {
        let vi = self.leaders(ai)?.sigma;
        let vj = self.leaders(aj)?.sigma;
        if vi.generator != vj.generator || !vi.monomial.similar(&vj.monomial) {
            return Ok(None);
        }
        let l = lcm_similar(&vi, &vj)?;
        let li = vi.quotient_of(&l).expect("lcm is a multiple");
        let lj = vj.quotient_of(&l).expect("lcm is a multiple");
        let pi = ai.apply(&li)?;
        let pj = aj.apply(&lj)?;
        let ci = pi.coeff(&l);
        let cj = pj.coeff(&l);
        Ok(Some(pi.scale(&cj).sub(&pj.scale(&ci))))
    }

    pub fn is_coherent(&self, set: &[LinearDSPolynomial]) -> Result<bool> {
        if !self.is_autoreduced(set) {
            return Ok(false);
        }
        for w in self.coherence_witnesses(set)? {
            if !self.reduce_unchecked(&w, set)?.remainder.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The `≼`-minimal elements of `{λA}`: σ-shifts of `A` whose σ-leaders
    /// are not proper multiples of another shift's σ-leader.
    pub fn charset_single(&self, a: &LinearDSPolynomial) -> Result<Vec<LinearDSPolynomial>> {
        if a.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let (m, n) = (self.m(), self.n());
        let mut radius = 1 + sigma_span(a.terms.terms());
        loop {
            let shifted = |e: &Vec<i32>| -> Result<(LinearDSPolynomial, Term)> {
                let b = self.normalize(&a.apply(&LambdaMonomial::new(vec![0; m], e.clone()))?);
                let v = self.leaders(&b)?.sigma;
                Ok((b, v))
            };
            let cands = shift_box(n, radius)
                .iter()
                .map(shifted)
                .collect::<Result<Vec<_>>>()?;
            let mut chosen: Vec<(LinearDSPolynomial, Term)> = Vec::new();
            for (b, v) in &cands {
                let dominated = cands.iter().any(|(_, w)| w != v && w.divides(v));
                let duplicate = chosen.iter().any(|(_, w)| w == v);
                if !dominated && !duplicate {
                    chosen.push((b.clone(), v.clone()));
                }
            }
            let covered = shift_box(n, 2 * radius)
                .iter()
                .map(shifted)
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(|(_, v)| chosen.iter().any(|(_, w)| w.divides(v)));
            if covered || radius > 64 {
                let mut out: Vec<LinearDSPolynomial> = chosen.into_iter().map(|(b, _)| b).collect();
                self.sort_by_rank(&mut out);
                return Ok(out);
            }
            radius *= 2;
        }
    }

    /// A characteristic set of the linear ideal generated by `gens`, by
    /// completion: seed with the minimal shifts of every generator, then
    /// autoreduce and add nonzero remainders of coherence witnesses until
    /// none remain.
    pub fn charset_linear_system(&self, gens: &[LinearDSPolynomial]) -> Result<Vec<LinearDSPolynomial>> {
        let mut set = Vec::new();
        for g in gens {
            self.check_consistent(g)?;
            if !g.is_zero() {
                set.extend(self.charset_single(g)?);
            }
        }
        if set.is_empty() {
            return Ok(set);
        }
        let mut pending_count = 0;
        for _ in 0..self.limits.completion_rounds {
            set = self.autoreduce(&set)?;
            let mut pending: Vec<LinearDSPolynomial> = Vec::new();
            for w in self.coherence_witnesses(&set)? {
                let r = self.reduce_unchecked(&w, &set)?.remainder;
                self.check_consistent(&r)?;
                if !r.is_zero() {
                    let r = self.normalize(&r);
                    if !pending.contains(&r) {
                        pending.push(r);
                    }
                }
            }
            if pending.is_empty() {
                return Ok(set);
            }
            pending_count = pending.len();
            set.extend(pending);
        }
        Err(Error::CompletionLimit {
            rounds: self.limits.completion_rounds,
            pending: pending_count,
        })
    }

    /// Membership in the ideal whose characteristic set is given.
    pub fn ideal_membership(&self, b: &LinearDSPolynomial, charset: &[LinearDSPolynomial]) -> Result<bool> {
        Ok(self.reduce(b, charset)?.remainder.is_zero())
    }

    pub fn display_set(&self, set: &[LinearDSPolynomial], names: &[String]) -> String {
        set.iter().map(|a| a.display(&self.partition, names)).join("; ")
    }
}

/// Largest spread `max l_j − min l_j` of any automorphism exponent over the
/// given terms.
fn sigma_span<'a>(terms: impl Iterator<Item = &'a Term>) -> i32 {
    let terms: Vec<&Term> = terms.collect();
    let Some(first) = terms.first() else {
        return 0;
    };
    (0..first.monomial.num_automorphisms())
        .map(|j| {
            let vals = terms.iter().map(|t| t.monomial.sigma_exp()[j]);
            vals.clone().max().unwrap() - vals.min().unwrap()
        })
        .max()
        .unwrap_or(0)
}

/// All `e ∈ [-r, r]^n`.
pub(crate) fn shift_box(n: usize, r: i32) -> Vec<Vec<i32>> {
    (0..n)
        .map(|_| -r..=r)
        .multi_cartesian_product()
        .collect::<Vec<_>>()
        .into_iter()
        .chain(if n == 0 { Some(Vec::new()) } else { None })
        .collect()
}
