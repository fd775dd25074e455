//! Free modules over the ring `D` of difference-differential operators.
//!
//! An element `f = Σ a_u u` of the free module on `e_1..e_q` is sent to
//! `ρ(f) = z_1^{d_1} ⋯ z_p^{d_p} v_f` in the semigroup `Γ`, where `v_f` is
//! the σ-leader and `d_i = ord_i u_f^{(i)} − ord_i v_f`. Reduction,
//! Gröbner bases and the filtration dimension polynomial are all phrased
//! through divisibility in `Γ`.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::coeff::Coeff;
use crate::dimpoly::{DimensionPolynomialReport, LeaderTable};
use crate::error::{Error, Result};
use crate::lambda_monoid::{lcm_similar, LambdaMonomial, Partition, Term, TermOrder};
use crate::lincomb::{term_name, LinComb};
use crate::linpoly::{shift_box, CoefficientModel, Limits};
use crate::system::{LinearSystem, ModuleFile};

/// `Σ a_λ λ`, an element of `D`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct OperatorPolynomial {
    summands: BTreeMap<LambdaMonomial, Coeff>,
}

impl OperatorPolynomial {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn monomial(lambda: LambdaMonomial, c: Coeff) -> Self {
        let mut out = Self::new();
        out.add_summand(lambda, c);
        out
    }

    pub fn add_summand(&mut self, lambda: LambdaMonomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let entry = self.summands.entry(lambda.clone()).or_insert_with(Coeff::zero);
        *entry = entry.add(&c);
        if entry.is_zero() {
            self.summands.remove(&lambda);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> impl Iterator<Item = (&LambdaMonomial, &Coeff)> {
        self.summands.iter()
    }

    /// Whether every summand lies in `D_{r}`: `ord_i λ ≤ r_i` and
    /// `ord_σ λ ≤ r_{p+1}`.
    pub fn in_component(&self, partition: &Partition, bounds: &[u64]) -> bool {
        let p = partition.num_blocks();
        self.summands.keys().all(|l| {
            (0..p).all(|i| partition.ord(l, TermOrder::Block(i)) <= bounds[i]) && l.ord_sigma() <= bounds[p]
        })
    }

    /// `(Σ a_λ λ) f = Σ a_λ (λ f)`.
    pub fn act(&self, f: &FreeModuleElement) -> Result<FreeModuleElement> {
        let mut out = LinComb::new();
        for (lambda, a) in &self.summands {
            out = out.add(&f.entries.apply(lambda)?.scale(a));
        }
        Ok(FreeModuleElement::new(out))
    }
}

/// An element of the free module on `e_1..e_q`; terms are `λ e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FreeModuleElement {
    entries: LinComb,
}

impl FreeModuleElement {
    pub fn new(entries: LinComb) -> Self {
        FreeModuleElement { entries }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_terms<I: IntoIterator<Item = (Term, Coeff)>>(terms: I) -> Self {
        let mut entries = LinComb::new();
        for (t, c) in terms {
            entries.add_term(t, c);
        }
        FreeModuleElement { entries }
    }

    pub fn entries(&self) -> &LinComb {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn coeff(&self, t: &Term) -> Coeff {
        self.entries.get(t).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        FreeModuleElement::new(self.entries.add(&other.entries))
    }

    pub fn sub(&self, other: &Self) -> Self {
        FreeModuleElement::new(self.entries.sub(&other.entries))
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        FreeModuleElement::new(self.entries.scale(c))
    }

    pub fn apply(&self, lambda: &LambdaMonomial) -> Result<Self> {
        Ok(FreeModuleElement::new(self.entries.apply(lambda)?))
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(|(_, c)| c.is_rational())
    }

    pub fn display(&self, partition: &Partition, names: &[String]) -> String {
        if self.is_zero() {
            "0".into()
        } else {
            self.entries.display_with(partition, names)
        }
    }
}

/// `z^k · base` in the semigroup `Γ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GammaTerm {
    pub z_exp: Vec<u64>,
    pub base: Term,
}

impl GammaTerm {
    pub fn display_with(&self, names: &[String]) -> String {
        let mut parts: Vec<String> = self
            .z_exp
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("z{}", i + 1) } else { format!("z{}^{}", i + 1, k) })
            .collect();
        parts.push(term_name(&self.base, names));
        parts.join("*")
    }
}

impl fmt::Display for GammaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&[]))
    }
}

/// Same generator, base divides base (orthant-aware), z-exponents
/// componentwise smaller.
pub fn gamma_divides(a: &GammaTerm, b: &GammaTerm) -> bool {
    a.z_exp.len() == b.z_exp.len()
        && a.base.divides(&b.base)
        && a.z_exp.iter().zip(&b.z_exp).all(|(x, y)| x <= y)
}

/// Operator multipliers with `J·f − h = Σ c·λ g_idx`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleCertificate {
    pub multiplier: Coeff,
    pub steps: Vec<(usize, Coeff, LambdaMonomial)>,
}

impl ModuleCertificate {
    /// The multipliers `Q_i` collected per basis element.
    pub fn operators(&self, count: usize) -> Vec<OperatorPolynomial> {
        let mut out = vec![OperatorPolynomial::new(); count];
        for (idx, c, lambda) in &self.steps {
            out[*idx].add_summand(lambda.clone(), c.clone());
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleReduction {
    pub normal_form: FreeModuleElement,
    pub certificate: ModuleCertificate,
}

/// The free module `D e_1 ⊕ ⋯ ⊕ D e_q` together with its orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub partition: Partition,
    pub num_generators: usize,
    pub model: CoefficientModel,
    pub limits: Limits,
}

/// Generators and relations: the module `E/N` with `N` spanned by the
/// relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub module: FreeModule,
    pub names: Vec<String>,
    pub relations: Vec<FreeModuleElement>,
}

impl ModulePresentation {
    pub fn from_file(file: ModuleFile) -> Self {
        let mut module = FreeModule::new(file.ring.partition, file.generators.len(), file.ring.model);
        module.limits = file.ring.limits;
        ModulePresentation {
            module,
            names: file.generators,
            relations: file.relations.into_iter().map(FreeModuleElement::new).collect(),
        }
    }

    pub fn display_relations(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|r| r.display(&self.module.partition, &self.names))
            .collect()
    }
}

/// The module of Kähler differentials of a linear system: one generator
/// `e_k = d y_k` per indeterminate, one relation per equation, constants
/// dropped since they have zero differential.
pub fn kahler_module(system: &LinearSystem) -> ModulePresentation {
    let s = system.names.len();
    let names = if s == 1 {
        vec!["e".to_string()]
    } else {
        (1..=s).map(|k| format!("e{}", k)).collect()
    };
    let relations = system
        .equations
        .iter()
        .map(|eq| FreeModuleElement::new(eq.terms().clone()))
        .filter(|r| !r.is_zero())
        .collect();
    let mut module = FreeModule::new(system.ring.partition.clone(), s, system.ring.model);
    module.limits = system.ring.limits;
    ModulePresentation {
        module,
        names,
        relations,
    }
}

struct Reducer {
    index: usize,
    rho: GammaTerm,
}

impl FreeModule {
    pub fn new(partition: Partition, num_generators: usize, model: CoefficientModel) -> Self {
        FreeModule {
            partition,
            num_generators,
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

    /// The σ-leader `v_f`.
    pub fn sigma_leader(&self, f: &FreeModuleElement) -> Result<Term> {
        f.entries
            .leader(&self.partition, TermOrder::Sigma)
            .cloned()
            .ok_or(Error::ConstantPolynomial)
    }

    /// The `Δ_i`-leaders `u_f^{(i)}`.
    pub fn block_leaders(&self, f: &FreeModuleElement) -> Result<Vec<Term>> {
        (0..self.partition.num_blocks())
            .map(|i| {
                f.entries
                    .leader(&self.partition, TermOrder::Block(i))
                    .cloned()
                    .ok_or(Error::ConstantPolynomial)
            })
            .collect()
    }

    fn leader_block_orders(&self, f: &FreeModuleElement) -> Result<Vec<u64>> {
        Ok(self
            .block_leaders(f)?
            .iter()
            .enumerate()
            .map(|(i, u)| self.partition.ord(&u.monomial, TermOrder::Block(i)))
            .collect())
    }

    pub fn rho_map(&self, f: &FreeModuleElement) -> Result<GammaTerm> {
        let v = self.sigma_leader(f)?;
        let a = self.partition.block_orders(&v.monomial);
        let b = self.leader_block_orders(f)?;
        Ok(GammaTerm {
            z_exp: b.iter().zip(&a).map(|(x, y)| x - y).collect(),
            base: v,
        })
    }

    /// `z^{ord u_f − ord w} · w`, the image of a term of `f` against which
    /// the `ρ` of reducers is tested.
    fn lift(&self, w: &Term, ub: &[u64]) -> GammaTerm {
        let ow = self.partition.block_orders(&w.monomial);
        GammaTerm {
            z_exp: ub.iter().zip(&ow).map(|(u, o)| u.saturating_sub(*o)).collect(),
            base: w.clone(),
        }
    }

    /// Whether `f` contains no term `w` with `ρ(g) | z^{ord u_f − ord w}·w`
    /// for some `g` in `set`.
    pub fn is_reduced(&self, f: &FreeModuleElement, set: &[FreeModuleElement]) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        let rhos = set.iter().map(|g| self.rho_map(g)).collect::<Result<Vec<_>>>()?;
        let ub = self.leader_block_orders(f)?;
        Ok(f.entries
            .terms()
            .all(|w| !rhos.iter().any(|r| gamma_divides(r, &self.lift(w, &ub)))))
    }

    /// Reduces `f` modulo `set`, eliminating the greatest reducible term
    /// first; the leading coefficient of `λg` is `λ_σ(lc_σ g)`, inverted
    /// when rational and cross-multiplied otherwise.
    pub fn module_reduce(&self, f: &FreeModuleElement, set: &[FreeModuleElement]) -> Result<ModuleReduction> {
        let mut reducers = Vec::with_capacity(set.len());
        for (index, g) in set.iter().enumerate() {
            reducers.push(Reducer {
                index,
                rho: self.rho_map(g)?,
            });
        }
        reducers.sort_by(|x, y| {
            self.partition
                .compare_terms(&y.rho.base, &x.rho.base, TermOrder::Sigma)
                .then(x.index.cmp(&y.index))
        });
        let mut cur = f.clone();
        let mut cert = ModuleCertificate {
            multiplier: Coeff::one(),
            steps: Vec::new(),
        };
        for _ in 0..self.limits.reduction_steps {
            if cur.is_zero() {
                break;
            }
            let ub = self.leader_block_orders(&cur)?;
            let found = cur
                .entries
                .sorted_desc(&self.partition, TermOrder::Sigma)
                .into_iter()
                .find_map(|w| {
                    let lifted = self.lift(w, &ub);
                    reducers
                        .iter()
                        .find(|r| gamma_divides(&r.rho, &lifted))
                        .map(|r| (w.clone(), r.index, r.rho.base.quotient_of(w).expect("divides")))
                });
            let Some((w, idx, lambda)) = found else {
                return Ok(ModuleReduction {
                    normal_form: cur,
                    certificate: cert,
                });
            };
            let g = &set[idx];
            let lc = g.coeff(&self.sigma_leader(g)?).shift(&lambda.sigma_part())?;
            let shifted = g.apply(&lambda)?;
            let a = cur.coeff(&w);
            match lc.as_rational() {
                Some(l) => {
                    let factor = a.scale(&l.recip());
                    cur = cur.sub(&shifted.scale(&factor));
                    cert.steps.push((idx, factor, lambda));
                }
                None => {
                    cur = cur.scale(&lc).sub(&shifted.scale(&a));
                    cert.multiplier = cert.multiplier.mul(&lc);
                    for step in &mut cert.steps {
                        step.1 = step.1.mul(&lc);
                    }
                    cert.steps.push((idx, a, lambda));
                }
            }
        }
        if cur.is_zero() {
            return Ok(ModuleReduction {
                normal_form: cur,
                certificate: cert,
            });
        }
        Err(Error::ReductionLimit(self.limits.reduction_steps))
    }

    /// Expands `J·f − h` and `Σ Q_i g_i` and compares them.
    pub fn verify_certificate(
        &self,
        f: &FreeModuleElement,
        reduction: &ModuleReduction,
        set: &[FreeModuleElement],
    ) -> Result<bool> {
        let mut rhs = FreeModuleElement::zero();
        for (q, g) in reduction.certificate.operators(set.len()).iter().zip(set) {
            rhs = rhs.add(&q.act(g)?);
        }
        let lhs = f.scale(&reduction.certificate.multiplier).sub(&reduction.normal_form);
        Ok(lhs == rhs)
    }

    /// `λ'_σ(lc g_j)·λ g_i − λ_σ(lc g_i)·λ' g_j` with `λ v_i = λ' v_j` the
    /// least common multiple of the σ-leaders, when it exists.
    pub fn s_element(&self, gi: &FreeModuleElement, gj: &FreeModuleElement) -> Result<Option<FreeModuleElement>> {
        let vi = self.sigma_leader(gi)?;
        let vj = self.sigma_leader(gj)?;
        if vi.generator != vj.generator || !vi.monomial.similar(&vj.monomial) {
            return Ok(None);
        }
        let l = lcm_similar(&vi, &vj)?;
        let li = vi.quotient_of(&l).expect("lcm is a multiple");
        let lj = vj.quotient_of(&l).expect("lcm is a multiple");
        let ci = gi.coeff(&vi).shift(&li.sigma_part())?;
        let cj = gj.coeff(&vj).shift(&lj.sigma_part())?;
        Ok(Some(gi.apply(&li)?.scale(&cj).sub(&gj.apply(&lj)?.scale(&ci))))
    }

    fn shift_radius(&self, set: &[FreeModuleElement]) -> i32 {
        let n = self.n();
        let mut span = 0;
        for g in set {
            for j in 0..n {
                let vals: Vec<i32> = g.entries.terms().map(|t| t.monomial.sigma_exp()[j]).collect();
                if let (Some(lo), Some(hi)) = (vals.iter().min(), vals.iter().max()) {
                    span = span.max(hi - lo);
                }
            }
        }
        1 + span
    }

    /// S-elements of all pairs, `δ_i g`, and `α^e g` for `e` in a box of
    /// shifts: the elements whose reduction to zero certifies a basis.
    pub fn completion_witnesses(&self, set: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
        let (m, n) = (self.m(), self.n());
        let mut out = Vec::new();
        for (i, j) in (0..set.len()).tuple_combinations() {
            if let Some(s) = self.s_element(&set[i], &set[j])? {
                out.push(s);
            }
        }
        let shifts = shift_box(n, self.shift_radius(set));
        for g in set {
            for i in 0..m {
                out.push(g.apply(&LambdaMonomial::derivation(m, n, i))?);
            }
            for e in shifts.iter().filter(|e| e.iter().any(|&x| x != 0)) {
                out.push(g.apply(&LambdaMonomial::new(vec![0; m], e.clone()))?);
            }
        }
        Ok(out)
    }

    fn require_rational(&self, elements: &[FreeModuleElement]) -> Result<()> {
        match elements.iter().find(|g| !g.is_rational()) {
            Some(g) => Err(Error::Unsupported(format!(
                "Gröbner bases need rational constant coefficients; found {}",
                g.display(&self.partition, &[])
            ))),
            None => Ok(()),
        }
    }

    /// Whether `basis` is a Gröbner basis of the submodule spanned by
    /// `relations`: every relation and every completion witness of the
    /// basis reduces to zero.
    pub fn is_groebner(&self, basis: &[FreeModuleElement], relations: &[FreeModuleElement]) -> Result<bool> {
        self.require_rational(basis)?;
        self.require_rational(relations)?;
        if basis.iter().any(|g| g.is_zero()) {
            return Ok(false);
        }
        for f in relations.iter().cloned().chain(self.completion_witnesses(basis)?) {
            if !self.module_reduce(&f, basis)?.normal_form.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn monic(&self, g: &FreeModuleElement) -> Result<FreeModuleElement> {
        let lc = g.coeff(&self.sigma_leader(g)?);
        Ok(match lc.as_rational() {
            Some(q) => g.scale(&Coeff::rational(q.recip())),
            None => g.clone(),
        })
    }

    /// Reduces every element by the others until nothing changes.
    pub fn interreduce(&self, set: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
        let mut cur: Vec<FreeModuleElement> = set
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| self.monic(g))
            .collect::<Result<_>>()?;
        for _ in 0..self.limits.reduction_steps {
            cur.sort_by(|a, b| {
                let (va, vb) = (self.sigma_leader(a).ok(), self.sigma_leader(b).ok());
                match (va, vb) {
                    (Some(x), Some(y)) => self.partition.compare_terms(&x, &y, TermOrder::Sigma),
                    _ => std::cmp::Ordering::Equal,
                }
                .then_with(|| a.entries.terms().cmp(b.entries.terms()))
            });
            let mut changed = false;
            for i in 0..cur.len() {
                let others: Vec<FreeModuleElement> =
                    cur.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
                let h = self.module_reduce(&cur[i], &others)?.normal_form;
                if h != cur[i] {
                    if h.is_zero() {
                        cur.remove(i);
                    } else {
                        cur[i] = self.monic(&h)?;
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

    /// Buchberger-style completion for rational constant coefficients.
    pub fn groebner_completion(&self, relations: &[FreeModuleElement]) -> Result<Vec<FreeModuleElement>> {
        self.require_rational(relations)?;
        let mut basis = self.interreduce(relations)?;
        if basis.is_empty() {
            return Ok(basis);
        }
        let mut pending_count = 0;
        for _ in 0..self.limits.completion_rounds {
            let mut pending: Vec<FreeModuleElement> = Vec::new();
            for w in self.completion_witnesses(&basis)? {
                let h = self.module_reduce(&w, &basis)?.normal_form;
                if !h.is_zero() {
                    let h = self.monic(&h)?;
                    if !pending.contains(&h) {
                        pending.push(h);
                    }
                }
            }
            if pending.is_empty() {
                return Ok(basis);
            }
            pending_count = pending.len();
            basis.extend(pending);
            basis = self.interreduce(&basis)?;
        }
        Err(Error::CompletionLimit {
            rounds: self.limits.completion_rounds,
            pending: pending_count,
        })
    }

    pub fn leader_table(&self, basis: &[FreeModuleElement]) -> Result<LeaderTable> {
        let leaders = basis
            .iter()
            .map(|g| Ok((self.sigma_leader(g)?, self.block_leaders(g)?)))
            .collect::<Result<Vec<_>>>()?;
        LeaderTable::from_leaders(self.partition.clone(), self.num_generators, leaders)
    }
}

/// The Gröbner basis of the relations and the dimension polynomial of the
/// filtration `M_r = π(D_r e_1 + ⋯ + D_r e_q)`.
pub fn gb_dimension_polynomial(
    presentation: &ModulePresentation,
    check_oracle: bool,
) -> Result<(Vec<FreeModuleElement>, DimensionPolynomialReport)> {
    let module = &presentation.module;
    let basis = module.groebner_completion(&presentation.relations)?;
    if !module.is_groebner(&basis, &presentation.relations)? {
        return Err(Error::Unsupported("completion did not produce a verified Gröbner basis".into()));
    }
    let table = module.leader_table(&basis)?;
    let echo = basis
        .iter()
        .map(|g| g.display(&module.partition, &presentation.names))
        .collect();
    let report = DimensionPolynomialReport::from_table(table, echo, check_oracle)?;
    Ok((basis, report))
}
