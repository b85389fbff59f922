use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use crate::exactnum::Scalar;

use super::poly::NcPoly;
use super::system::{RewriteError, RewritingSystem};
use super::word::Word;

/// Monomial `word·[gen]` of a free module over a presented algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub word: Word,
    pub gen: usize,
    pub gen_weight: u32,
}

impl ModTerm {
    pub fn weight(&self) -> u32 {
        self.word.weight() + self.gen_weight
    }
}

/// Total weight, then generator weight, then word order, then lower
/// generator index larger. Left multiplication preserves the order.
impl Ord for ModTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| self.gen_weight.cmp(&other.gen_weight))
            .then_with(|| self.word.cmp(&other.word))
            .then_with(|| other.gen.cmp(&self.gen))
    }
}

impl PartialOrd for ModTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free module; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModElem {
    terms: BTreeMap<ModTerm, Scalar>,
}

impl ModElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ModTerm, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<(&ModTerm, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, t: ModTerm, c: Scalar) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry(t) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Adds `c · p · [gen]`.
    pub fn add_poly_gen(&mut self, c: &Scalar, p: &NcPoly, gen: usize, gen_weight: u32) {
        for (w, x) in p.terms() {
            self.add_term(ModTerm { word: w.clone(), gen, gen_weight }, c * x);
        }
    }

    pub fn add_scaled(&mut self, other: &ModElem, c: &Scalar) {
        for (t, x) in &other.terms {
            self.add_term(t.clone(), c * x);
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModElem {
        let mut out = ModElem::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn sub(&self, other: &ModElem) -> ModElem {
        let mut out = self.clone();
        out.add_scaled(other, &Scalar::int(-1));
        out
    }

    /// `p · self`.
    pub fn left_mul(&self, p: &NcPoly) -> ModElem {
        let mut out = ModElem::zero();
        for (w, x) in p.terms() {
            for (t, y) in &self.terms {
                out.add_term(ModTerm { word: w.concat(&t.word), gen: t.gen, gen_weight: t.gen_weight }, x * y);
            }
        }
        out
    }

    fn monic(&self) -> ModElem {
        match self.lead() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero lead")),
            None => ModElem::zero(),
        }
    }

    pub fn display(&self, sys: &ModuleSystem) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let alpha = sys.algebra.alphabet();
        let mut parts = Vec::new();
        for (t, c) in self.terms.iter().rev() {
            let gen = &sys.gen_labels[t.gen];
            let body = if t.word.is_empty() { gen.clone() } else { format!("{}.{gen}", alpha.fmt_word(&t.word)) };
            parts.push(if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{body}")
            } else if c.needs_parens() {
                format!("({c})*{body}")
            } else {
                format!("{c}*{body}")
            });
        }
        parts.join(" + ").replace("+ -", "- ")
    }
}

/// `lead -> rhs` for module terms; the lead word is irreducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleRule {
    pub lead: ModTerm,
    pub rhs: ModElem,
}

impl ModuleRule {
    fn relation(&self) -> ModElem {
        let mut p = self.rhs.scale(&Scalar::int(-1));
        p.add_term(self.lead.clone(), Scalar::one());
        p
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct SuffixIndex {
    by_gen: HashMap<usize, HashMap<Vec<u16>, usize>>,
    lengths: HashMap<usize, BTreeSet<usize>>,
}

impl SuffixIndex {
    fn insert(&mut self, t: &ModTerm, id: usize) {
        self.by_gen.entry(t.gen).or_default().insert(t.word.letters().to_vec(), id);
        self.lengths.entry(t.gen).or_default().insert(t.word.len());
    }

    fn remove(&mut self, t: &ModTerm) {
        if let Some(m) = self.by_gen.get_mut(&t.gen) {
            m.remove(t.word.letters());
            let len = t.word.len();
            if !m.keys().any(|k| k.len() == len) {
                if let Some(l) = self.lengths.get_mut(&t.gen) {
                    l.remove(&len);
                }
            }
        }
    }

    fn find(&self, t: &ModTerm) -> Option<(usize, usize)> {
        let m = self.by_gen.get(&t.gen)?;
        let u = t.word.letters();
        for &len in self.lengths.get(&t.gen)? {
            if len > u.len() {
                break;
            }
            if let Some(&id) = m.get(&u[u.len() - len..]) {
                return Some((u.len() - len, id));
            }
        }
        None
    }
}

/// Module rewrite rules over a completed algebra system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleSystem {
    algebra: Arc<RewritingSystem>,
    gen_labels: Vec<String>,
    gen_weights: Vec<u32>,
    rules: Vec<Option<ModuleRule>>,
    index: SuffixIndex,
    bound: u32,
}

impl ModuleSystem {
    pub fn algebra(&self) -> &Arc<RewritingSystem> {
        &self.algebra
    }

    pub fn gen_labels(&self) -> &[String] {
        &self.gen_labels
    }

    pub fn gen_weights(&self) -> &[u32] {
        &self.gen_weights
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn rules(&self) -> impl Iterator<Item = &ModuleRule> {
        self.rules.iter().flatten()
    }

    pub fn rule_count(&self) -> usize {
        self.rules().count()
    }

    pub fn generator(&self, g: usize) -> ModElem {
        self.term(Word::one(), g)
    }

    pub fn term(&self, word: Word, g: usize) -> ModElem {
        let mut e = ModElem::zero();
        e.add_term(ModTerm { word, gen: g, gen_weight: self.gen_weights[g] }, Scalar::one());
        e
    }

    pub fn normal_form(&self, v: &ModElem) -> Result<ModElem, RewriteError> {
        reduce_module(v, &self.algebra, &self.rules, &self.index, self.bound)
    }

    /// Whether a module term is in normal form.
    pub fn is_normal(&self, t: &ModTerm) -> bool {
        self.algebra.is_irreducible(&t.word) && self.index.find(t).is_none()
    }

    /// Normal module terms of total weight exactly `d`.
    pub fn module_basis(&self, d: u32) -> Vec<ModTerm> {
        let mut out = Vec::new();
        for (g, &gw) in self.gen_weights.iter().enumerate() {
            if gw > d {
                continue;
            }
            for word in self.algebra.monomial_basis(d - gw) {
                let t = ModTerm { word, gen: g, gen_weight: gw };
                if self.index.find(&t).is_none() {
                    out.push(t);
                }
            }
        }
        out.sort_by(|a, b| b.cmp(a));
        out
    }

    pub fn dimension_sequence(&self, dmax: u32) -> Vec<u64> {
        (0..=dmax).map(|d| self.module_basis(d).len() as u64).collect()
    }

    pub fn rule_strings(&self) -> Vec<String> {
        let alpha = self.algebra.alphabet();
        self.rules()
            .map(|r| {
                let lead = if r.lead.word.is_empty() {
                    self.gen_labels[r.lead.gen].clone()
                } else {
                    format!("{}.{}", alpha.fmt_word(&r.lead.word), self.gen_labels[r.lead.gen])
                };
                format!("{lead} -> {}", r.rhs.display(self))
            })
            .collect()
    }

    /// Overlap ambiguities between algebra and module leads that fail to
    /// resolve.
    pub fn check_confluence(&self) -> Result<Vec<String>, RewriteError> {
        let mut failures = Vec::new();
        for r in self.rules() {
            for (amb, s) in algebra_module_overlaps(&self.algebra, r, self.bound) {
                let nf = self.normal_form(&s)?;
                if !nf.is_zero() {
                    failures.push(format!("{} resolves to {}", amb, nf.display(self)));
                }
            }
        }
        Ok(failures)
    }
}

fn reduce_module(
    v: &ModElem,
    algebra: &RewritingSystem,
    rules: &[Option<ModuleRule>],
    index: &SuffixIndex,
    bound: u32,
) -> Result<ModElem, RewriteError> {
    let alpha = algebra.alphabet();
    let mut work = v.clone();
    let mut out = ModElem::zero();
    while let Some((t, c)) = work.terms.pop_last() {
        if t.weight() > bound {
            return Err(RewriteError::BoundExceeded { weight: t.weight(), bound });
        }
        if !algebra.is_irreducible(&t.word) {
            let nf = algebra.normal_form(&NcPoly::word(t.word.clone()))?;
            work.add_poly_gen(&c, &nf, t.gen, t.gen_weight);
            continue;
        }
        match index.find(&t) {
            Some((cut, id)) => {
                let rule = rules[id].as_ref().expect("indexed module rule alive");
                let x = t.word.slice(0, cut, alpha);
                work.add_scaled(&rule.rhs.left_mul(&NcPoly::word(x)), &c);
            }
            None => out.add_term(t, c),
        }
    }
    Ok(out)
}

/// Algebra lead `ℓ = x y` against module lead `(y z, g)` with `y` nonempty
/// and `x` nonempty; yields `rhs_ℓ·z·[g] - x·rhs_module`.
fn algebra_module_overlaps(algebra: &RewritingSystem, r: &ModuleRule, bound: u32) -> Vec<(String, ModElem)> {
    let alpha = algebra.alphabet();
    let w = r.lead.word.letters();
    let mut out = Vec::new();
    for rule in algebra.rules() {
        let l = rule.lead.letters();
        for k in 1..=w.len().min(l.len() - 1) {
            if l[l.len() - k..] != w[..k] {
                continue;
            }
            let x = alpha.word(&l[..l.len() - k]);
            let z = alpha.word(&w[k..]);
            let total = rule.lead.weight() + z.weight() + r.lead.gen_weight;
            if total > bound {
                continue;
            }
            let mut s = ModElem::zero();
            s.add_poly_gen(&Scalar::one(), &rule.rhs.mul(&NcPoly::word(z.clone())), r.lead.gen, r.lead.gen_weight);
            s.add_scaled(&r.rhs.left_mul(&NcPoly::word(x.clone())), &Scalar::int(-1));
            out.push((format!("{}.{}", alpha.fmt_word(&rule.lead.concat(&z)), r.lead.gen), s));
        }
    }
    out
}

/// Truncated completion of module relations over `algebra`.
pub fn complete_module(
    algebra: Arc<RewritingSystem>,
    gen_labels: Vec<String>,
    gen_weights: Vec<u32>,
    relations: &[ModElem],
    bound: u32,
    rule_cap: usize,
) -> Result<ModuleSystem, RewriteError> {
    let bound = bound.min(algebra.complete_up_to());
    for r in relations {
        if let Some((t, _)) = r.lead() {
            if t.weight() > bound {
                return Err(RewriteError::RelationTooLarge { weight: t.weight(), bound });
            }
        }
    }
    let mut sys = ModuleSystem { algebra, gen_labels, gen_weights, rules: Vec::new(), index: SuffixIndex::default(), bound };
    let mut pending: Vec<ModElem> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    pending.sort_by(|a, b| b.lead().map(|l| l.0).cmp(&a.lead().map(|l| l.0)));
    let mut live = 0usize;
    while let Some(p) = pending.pop() {
        let r = sys.normal_form(&p)?.monic();
        let Some((lead, _)) = r.lead() else { continue };
        let lead = lead.clone();
        let mut rhs = r.clone();
        rhs.terms.remove(&lead);
        let rhs = rhs.scale(&Scalar::int(-1));
        // Retire rules whose lead word ends with the new lead word.
        for slot in sys.rules.iter_mut() {
            if slot.as_ref().is_some_and(|old| old.lead.gen == lead.gen && old.lead.word.ends_with(lead.word.letters())) {
                let old = slot.take().expect("alive");
                sys.index.remove(&old.lead);
                live -= 1;
                pending.push(old.relation());
            }
        }
        let id = sys.rules.len();
        let rule = ModuleRule { lead, rhs };
        sys.index.insert(&rule.lead, id);
        let overlaps = algebra_module_overlaps(&sys.algebra, &rule, bound);
        sys.rules.push(Some(rule));
        live += 1;
        if live > rule_cap {
            return Err(RewriteError::RuleCap {
                cap: rule_cap,
                ambiguity: "module relation".into(),
                partial: Box::new((*sys.algebra).clone()),
            });
        }
        pending.extend(overlaps.into_iter().map(|(_, s)| s));
        pending.sort_by(|a, b| b.lead().map(|l| l.0).cmp(&a.lead().map(|l| l.0)));
    }
    // Inter-reduce right-hand sides and drop retired slots.
    let finals: Vec<ModuleRule> = sys
        .rules
        .iter()
        .flatten()
        .cloned()
        .collect::<Vec<_>>()
        .into_iter()
        .map(|r| Ok(ModuleRule { rhs: sys.normal_form(&r.rhs)?, lead: r.lead }))
        .collect::<Result<_, RewriteError>>()?;
    let mut sorted = finals;
    sorted.sort_by(|a, b| a.lead.cmp(&b.lead));
    let mut index = SuffixIndex::default();
    for (id, r) in sorted.iter().enumerate() {
        index.insert(&r.lead, id);
    }
    sys.rules = sorted.into_iter().map(Some).collect();
    sys.index = index;
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::FieldSpec;
    use crate::freealg::{complete, Alphabet, CompletionOptions};

    fn parse(s: &str, a: &Arc<Alphabet>) -> NcPoly {
        NcPoly::parse(s, a, &FieldSpec::Rationals).unwrap()
    }

    fn on_gen(p: &NcPoly) -> ModElem {
        let mut e = ModElem::zero();
        e.add_poly_gen(&Scalar::one(), p, 0, 0);
        e
    }

    #[test]
    fn identifying_two_letters() {
        let a = Alphabet::uniform(vec!["a".into(), "b".into()]);
        let free = Arc::new(RewritingSystem::free(a.clone(), 4));
        let rel = on_gen(&parse("a - b", &a));
        let sys = complete_module(free, vec!["g".into()], vec![0], &[rel], 4, 100).unwrap();
        assert_eq!(sys.rule_strings(), vec!["a.g -> b.g"]);
        // normal words are those not ending in a
        assert_eq!(sys.dimension_sequence(4), vec![1, 1, 2, 4, 8]);
        assert!(sys.check_confluence().unwrap().is_empty());
        let nf = sys.normal_form(&on_gen(&parse("b.a.a", &a))).unwrap();
        assert_eq!(nf, on_gen(&parse("b.a.b", &a)));
    }

    #[test]
    fn annihilator_of_a_generator() {
        let a = Alphabet::uniform(vec!["f0".into(), "f1".into()]);
        let rels = [parse("f0.f0 - f1.f1 + 1", &a), parse("f0.f1 + f1.f0", &a)];
        let alg = Arc::new(complete(a.clone(), &rels, CompletionOptions::with_bound(5)).unwrap());
        let sys = complete_module(alg, vec!["g".into()], vec![0], &[on_gen(&parse("f0", &a))], 5, 100).unwrap();
        assert!(sys.check_confluence().unwrap().is_empty());
        // f1 squares to 1 on g and f0 f1 g = -f1 f0 g = 0.
        assert_eq!(sys.dimension_sequence(5), vec![1, 1, 0, 0, 0, 0]);
        assert_eq!(sys.normal_form(&on_gen(&parse("f1.f1", &a))).unwrap(), on_gen(&NcPoly::one()));
        assert!(sys.normal_form(&on_gen(&parse("f0.f1", &a))).unwrap().is_zero());
    }

    #[test]
    fn order_survives_left_multiplication() {
        let a = Alphabet::uniform(vec!["a".into(), "b".into()]);
        let t = |w: &str, gen: usize, gw: u32| ModTerm { word: parse(w, &a).lead().unwrap().0.clone(), gen, gen_weight: gw };
        let pairs = [(t("b", 0, 0), t("a", 0, 0)), (t("a", 1, 0), t("a", 0, 0)), (t("a.b", 0, 0), t("1", 0, 2))];
        for (lo, hi) in pairs {
            assert!(lo < hi);
            for x in ["a", "b.a"] {
                let x = parse(x, &a).lead().unwrap().0.clone();
                let lift = |m: &ModTerm| ModTerm { word: x.concat(&m.word), ..m.clone() };
                assert!(lift(&lo) < lift(&hi));
            }
        }
    }
}
