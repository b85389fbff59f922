use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::Scalar;

use super::poly::NcPoly;
use super::word::{Alphabet, Word};

pub const DEFAULT_BOUND: u32 = 8;
pub const DEFAULT_RULE_CAP: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("bound exceeded: term of weight {weight} above degree bound {bound}")]
    BoundExceeded { weight: u32, bound: u32 },
    #[error("relation of weight {weight} exceeds degree bound {bound}")]
    RelationTooLarge { weight: u32, bound: u32 },
    #[error("rule cap {cap} exceeded while resolving ambiguity on {ambiguity}")]
    RuleCap { cap: usize, ambiguity: String, partial: Box<RewritingSystem> },
}

/// `lead -> rhs`; every word of `rhs` is smaller than `lead`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lead: Word,
    pub rhs: NcPoly,
}

impl Rule {
    /// `lead - rhs`, the relation the rule encodes.
    pub fn relation(&self) -> NcPoly {
        let mut p = self.rhs.neg();
        p.add_term(self.lead.clone(), Scalar::one());
        p
    }
}

/// Processing order of ambiguities during completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Schedule {
    #[default]
    Sorted,
    Shuffled(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CompletionOptions {
    pub bound: u32,
    pub rule_cap: usize,
    pub schedule: Schedule,
}

impl Default for CompletionOptions {
    fn default() -> Self {
        Self { bound: DEFAULT_BOUND, rule_cap: DEFAULT_RULE_CAP, schedule: Schedule::Sorted }
    }
}

impl CompletionOptions {
    pub fn with_bound(bound: u32) -> Self {
        Self { bound, ..Self::default() }
    }
}

/// Rule lookup shared by the completed system and the completion loop.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct RuleIndex {
    by_lead: HashMap<Vec<u16>, usize>,
    lengths: BTreeSet<usize>,
}

impl RuleIndex {
    fn insert(&mut self, lead: &Word, id: usize) {
        self.by_lead.insert(lead.letters().to_vec(), id);
        self.lengths.insert(lead.len());
    }

    fn remove(&mut self, lead: &Word) {
        self.by_lead.remove(lead.letters());
        let len = lead.len();
        if !self.by_lead.keys().any(|k| k.len() == len) {
            self.lengths.remove(&len);
        }
    }

    /// Leftmost occurrence of a lead; shortest lead wins at a position.
    fn find(&self, w: &[u16]) -> Option<(usize, usize, usize)> {
        for start in 0..w.len() {
            for &len in &self.lengths {
                if start + len > w.len() {
                    break;
                }
                if let Some(&id) = self.by_lead.get(&w[start..start + len]) {
                    return Some((start, len, id));
                }
            }
        }
        None
    }
}

fn reduce_with(
    p: &NcPoly,
    rules: &[Option<Rule>],
    index: &RuleIndex,
    alpha: &Alphabet,
    bound: u32,
) -> Result<NcPoly, RewriteError> {
    let mut work = p.clone();
    let mut out = NcPoly::zero();
    while let Some((w, c)) = work.pop_lead() {
        if w.weight() > bound {
            return Err(RewriteError::BoundExceeded { weight: w.weight(), bound });
        }
        match index.find(w.letters()) {
            Some((start, len, id)) => {
                let rule = rules[id].as_ref().expect("indexed rule alive");
                let u = w.slice(0, start, alpha);
                let v = w.slice(start + len, w.len(), alpha);
                work.add_sandwich(&c, &u, &rule.rhs, &v);
            }
            None => out.add_term(w, c),
        }
    }
    Ok(out)
}

/// Rewriting system for a quotient of the free algebra, confluent on all
/// words of weight at most `complete_up_to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritingSystem {
    alpha: Arc<Alphabet>,
    rules: Vec<Option<Rule>>,
    index: RuleIndex,
    bound: u32,
    complete_up_to: u32,
}

impl RewritingSystem {
    /// The free algebra: no rules.
    pub fn free(alpha: Arc<Alphabet>, bound: u32) -> Self {
        Self { alpha, rules: Vec::new(), index: RuleIndex::default(), bound, complete_up_to: bound }
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alpha
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn complete_up_to(&self) -> u32 {
        self.complete_up_to
    }

    /// Rules sorted by increasing lead.
    pub fn rules(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().flatten()
    }

    pub fn rule_count(&self) -> usize {
        self.rules().count()
    }

    pub fn normal_form(&self, p: &NcPoly) -> Result<NcPoly, RewriteError> {
        reduce_with(p, &self.rules, &self.index, &self.alpha, self.complete_up_to)
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.index.find(w.letters()).is_none()
    }

    /// Lead containment for a word being built left to right: whether some
    /// lead is a suffix of `letters`.
    pub fn has_lead_suffix(&self, letters: &[u16]) -> bool {
        self.index
            .lengths
            .iter()
            .take_while(|&&l| l <= letters.len())
            .any(|&l| self.index.by_lead.contains_key(&letters[letters.len() - l..]))
    }

    /// Normal words of weight exactly `d`, in decreasing order.
    pub fn monomial_basis(&self, d: u32) -> Vec<Word> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.enumerate(d, 0, &mut cur, &mut |w| out.push(w.to_vec()));
        let mut words: Vec<Word> = out.iter().map(|l| self.alpha.word(l)).collect();
        words.sort_unstable_by(|a, b| b.cmp(a));
        words
    }

    /// Normal words of weight at most `d`, in decreasing order.
    pub fn normal_words_up_to(&self, d: u32) -> Vec<Word> {
        let mut words: Vec<Word> = (0..=d).flat_map(|k| self.monomial_basis(k)).collect();
        words.sort_unstable_by(|a, b| b.cmp(a));
        words
    }

    fn enumerate(&self, target: u32, weight: u32, cur: &mut Vec<u16>, emit: &mut dyn FnMut(&[u16])) {
        if weight == target {
            emit(cur);
            return;
        }
        for g in 0..self.alpha.len() {
            let w = weight + self.alpha.weight(g);
            if w > target {
                continue;
            }
            cur.push(g as u16);
            if !self.has_lead_suffix(cur) {
                self.enumerate(target, w, cur, emit);
            }
            cur.pop();
        }
    }

    fn count(&self, target: u32, weight: u32, cur: &mut Vec<u16>) -> u64 {
        if weight == target {
            return 1;
        }
        let mut total = 0;
        for g in 0..self.alpha.len() {
            let w = weight + self.alpha.weight(g);
            if w > target {
                continue;
            }
            cur.push(g as u16);
            if !self.has_lead_suffix(cur) {
                total += self.count(target, w, cur);
            }
            cur.pop();
        }
        total
    }

    /// Number of normal words of each weight `0..=dmax`.
    pub fn dimension_sequence(&self, dmax: u32) -> Vec<u64> {
        (0..=dmax).map(|d| self.count(d, 0, &mut Vec::new())).collect()
    }

    /// Every overlap of two leads within the bound, with both reductions.
    pub fn check_confluence(&self) -> Result<Vec<String>, RewriteError> {
        let live: Vec<&Rule> = self.rules().collect();
        let mut failures = Vec::new();
        for a in &live {
            for b in &live {
                for (w, s) in overlaps(a, b, &self.alpha, self.complete_up_to) {
                    let nf = self.normal_form(&s)?;
                    if !nf.is_zero() {
                        failures.push(format!("{} resolves to {}", self.alpha.fmt_word(&w), nf.display(&self.alpha)));
                    }
                }
            }
        }
        Ok(failures)
    }

    /// Rule lines `lhs -> rhs` in increasing lead order.
    pub fn rule_strings(&self) -> Vec<String> {
        self.rules()
            .map(|r| format!("{} -> {}", self.alpha.fmt_word(&r.lead), r.rhs.display(&self.alpha)))
            .collect()
    }

    pub fn to_json(&self) -> SystemJson {
        SystemJson {
            generators: self.alpha.labels().to_vec(),
            weights: self.alpha.weights().to_vec(),
            bound: self.bound,
            complete_up_to: self.complete_up_to,
            rules: self.rule_strings(),
        }
    }

    fn from_rules(alpha: Arc<Alphabet>, mut rules: Vec<Rule>, bound: u32) -> Self {
        rules.sort_by(|a, b| a.lead.cmp(&b.lead));
        let mut index = RuleIndex::default();
        for (id, r) in rules.iter().enumerate() {
            index.insert(&r.lead, id);
        }
        Self { alpha, rules: rules.into_iter().map(Some).collect(), index, bound, complete_up_to: bound }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemJson {
    pub generators: Vec<String>,
    pub weights: Vec<u32>,
    pub bound: u32,
    pub complete_up_to: u32,
    pub rules: Vec<String>,
}

/// Overlaps `lead_a = x y`, `lead_b = y z` with `y` nonempty and proper, as
/// the overlap word `x y z` and the S-polynomial `rhs_a z - x rhs_b`.
fn overlaps(a: &Rule, b: &Rule, alpha: &Alphabet, bound: u32) -> Vec<(Word, NcPoly)> {
    let (la, lb) = (a.lead.letters(), b.lead.letters());
    let mut out = Vec::new();
    for k in 1..la.len().min(lb.len()) {
        if la[la.len() - k..] != lb[..k] {
            continue;
        }
        let z = alpha.word(&lb[k..]);
        let x = alpha.word(&la[..la.len() - k]);
        let w = a.lead.concat(&z);
        if w.weight() > bound {
            continue;
        }
        let mut s = NcPoly::zero();
        s.add_sandwich(&Scalar::one(), &Word::one(), &a.rhs, &z);
        s.add_sandwich(&Scalar::int(-1), &x, &b.rhs, &Word::one());
        out.push((w, s));
    }
    out
}

/// Overlap words only, in the same order as `overlaps`.
fn overlap_words(a: &Rule, b: &Rule, alpha: &Alphabet, bound: u32) -> Vec<Word> {
    let (la, lb) = (a.lead.letters(), b.lead.letters());
    (1..la.len().min(lb.len()))
        .filter(|&k| la[la.len() - k..] == lb[..k])
        .map(|k| a.lead.concat(&alpha.word(&lb[k..])))
        .filter(|w| w.weight() <= bound)
        .collect()
}

struct Completion {
    alpha: Arc<Alphabet>,
    opts: CompletionOptions,
    rules: Vec<Option<Rule>>,
    index: RuleIndex,
    live: usize,
    pending: Vec<NcPoly>,
    pairs: BTreeSet<(Word, usize, usize, usize)>,
    rng: Option<ChaCha8Rng>,
}

impl Completion {
    fn reduce(&self, p: &NcPoly) -> Result<NcPoly, RewriteError> {
        reduce_with(p, &self.rules, &self.index, &self.alpha, self.opts.bound)
    }

    fn pick<T: Clone + Ord>(rng: &mut Option<ChaCha8Rng>, set: &mut BTreeSet<T>) -> Option<T> {
        match rng {
            None => set.pop_first(),
            Some(rng) => {
                if set.is_empty() {
                    return None;
                }
                let k = rng.gen_range(0..set.len());
                let item = set.iter().nth(k).cloned()?;
                set.remove(&item);
                Some(item)
            }
        }
    }

    fn add_rule(&mut self, p: NcPoly, ambiguity: &str) -> Result<(), RewriteError> {
        let p = p.monic();
        let mut p = p;
        let (lead, _) = p.pop_lead().expect("nonzero");
        let rhs = p.neg();
        let id = self.rules.len();
        // Retire rules whose lead contains the new lead.
        let contained: Vec<usize> = self
            .rules
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.as_ref().filter(|r| r.lead.contains(&lead)).map(|_| i))
            .collect();
        for i in contained {
            let old = self.rules[i].take().expect("alive");
            self.index.remove(&old.lead);
            self.live -= 1;
            self.pending.push(old.relation());
        }
        let rule = Rule { lead, rhs };
        self.index.insert(&rule.lead, id);
        self.rules.push(Some(rule));
        self.live += 1;
        // Keep right-hand sides reduced so coefficients stay canonical.
        let new_lead = self.rules[id].as_ref().expect("just added").lead.clone();
        for i in 0..id {
            let stale = self.rules[i].as_ref().is_some_and(|r| r.rhs.terms().any(|(w, _)| w.contains(&new_lead)));
            if stale {
                let rhs = self.reduce(&self.rules[i].as_ref().expect("alive").rhs)?;
                self.rules[i].as_mut().expect("alive").rhs = rhs;
            }
        }
        if self.live > self.opts.rule_cap {
            return Err(RewriteError::RuleCap {
                cap: self.opts.rule_cap,
                ambiguity: ambiguity.to_string(),
                partial: Box::new(self.snapshot()),
            });
        }
        let new = self.rules[id].as_ref().expect("just added");
        for (j, other) in self.rules.iter().enumerate() {
            let Some(other) = other else { continue };
            for (k, w) in overlap_words(new, other, &self.alpha, self.opts.bound).into_iter().enumerate() {
                self.pairs.insert((w, id, j, k));
            }
            if j != id {
                for (k, w) in overlap_words(other, new, &self.alpha, self.opts.bound).into_iter().enumerate() {
                    self.pairs.insert((w, j, id, k));
                }
            }
        }
        Ok(())
    }

    fn snapshot(&self) -> RewritingSystem {
        let rules = self.rules.iter().flatten().cloned().collect();
        let mut sys = RewritingSystem::from_rules(self.alpha.clone(), rules, self.opts.bound);
        sys.complete_up_to = 0;
        sys
    }

    fn run(mut self) -> Result<RewritingSystem, RewriteError> {
        loop {
            if !self.pending.is_empty() {
                let k = match &mut self.rng {
                    None => self.pending.len() - 1,
                    Some(rng) => rng.gen_range(0..self.pending.len()),
                };
                let p = self.pending.swap_remove(k);
                let r = self.reduce(&p)?;
                if !r.is_zero() {
                    self.add_rule(r, "input relation")?;
                }
                continue;
            }
            let Some((w, a, b, k)) = Self::pick(&mut self.rng, &mut self.pairs) else { break };
            let (Some(ra), Some(rb)) = (&self.rules[a], &self.rules[b]) else { continue };
            let Some((_, s)) = overlaps(ra, rb, &self.alpha, self.opts.bound).into_iter().nth(k) else { continue };
            let r = self.reduce(&s)?;
            if !r.is_zero() {
                let amb = self.alpha.fmt_word(&w);
                self.add_rule(r, &amb)?;
            }
        }
        // Inter-reduce right-hand sides.
        let mut finals = Vec::with_capacity(self.live);
        for r in self.rules.iter().flatten() {
            finals.push(Rule { lead: r.lead.clone(), rhs: self.reduce(&r.rhs)? });
        }
        Ok(RewritingSystem::from_rules(self.alpha, finals, self.opts.bound))
    }
}

/// Truncated two-sided completion of `relations`.
pub fn complete(
    alpha: Arc<Alphabet>,
    relations: &[NcPoly],
    opts: CompletionOptions,
) -> Result<RewritingSystem, RewriteError> {
    for r in relations {
        if r.weight() > opts.bound {
            return Err(RewriteError::RelationTooLarge { weight: r.weight(), bound: opts.bound });
        }
    }
    let mut pending: Vec<NcPoly> = relations.iter().filter(|r| !r.is_zero()).cloned().collect();
    // Sorted mode pops from the back: smallest leads first.
    pending.sort_by(|a, b| b.lead().map(|l| l.0).cmp(&a.lead().map(|l| l.0)));
    let rng = match opts.schedule {
        Schedule::Sorted => None,
        Schedule::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    Completion {
        alpha,
        opts,
        rules: Vec::new(),
        index: RuleIndex::default(),
        live: 0,
        pending,
        pairs: BTreeSet::new(),
        rng,
    }
    .run()
}
