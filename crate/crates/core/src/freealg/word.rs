use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

/// Generator names and filtration weights of a free algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    labels: Vec<String>,
    weights: Vec<u32>,
}

impl Alphabet {
    pub fn new(labels: Vec<String>, weights: Vec<u32>) -> Arc<Self> {
        assert_eq!(labels.len(), weights.len());
        assert!(weights.iter().all(|&w| w >= 1), "generator weights must be positive");
        Arc::new(Self { labels, weights })
    }

    pub fn uniform(labels: Vec<String>) -> Arc<Self> {
        let n = labels.len();
        Self::new(labels, vec![1; n])
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight(&self, g: usize) -> u32 {
        self.weights[g]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn word(&self, letters: &[u16]) -> Word {
        let weight = letters.iter().map(|&g| self.weights[g as usize]).sum();
        Word { letters: letters.to_vec(), weight }
    }

    pub fn letter(&self, g: usize) -> Word {
        Word { letters: vec![g as u16], weight: self.weights[g] }
    }

    pub fn fmt_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.letters.iter().map(|&g| self.labels[g as usize].as_str()).collect::<Vec<_>>().join(".")
    }
}

/// Monomial of the free algebra; the weight is cached.
///
/// Order: larger weight first; at equal weight the shorter word is larger;
/// equal lengths compare letters starting from the right end, where a lower
/// generator index is larger. The order is multiplicative and, with
/// positive weights, well-founded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<u16>,
    weight: u32,
}

impl Word {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters, weight: self.weight + other.weight }
    }

    pub fn concat3(u: &Word, w: &Word, v: &Word) -> Word {
        let mut letters = Vec::with_capacity(u.len() + w.len() + v.len());
        letters.extend_from_slice(&u.letters);
        letters.extend_from_slice(&w.letters);
        letters.extend_from_slice(&v.letters);
        Word { letters, weight: u.weight + w.weight + v.weight }
    }

    /// Subword `letters[a..b]`, weights taken from `alpha`.
    pub fn slice(&self, a: usize, b: usize, alpha: &Alphabet) -> Word {
        alpha.word(&self.letters[a..b])
    }

    /// Whether `factor` occurs in `self`.
    pub fn contains(&self, factor: &Word) -> bool {
        factor.is_empty() || self.letters.windows(factor.len()).any(|w| w == factor.letters.as_slice())
    }

    pub fn ends_with(&self, suffix: &[u16]) -> bool {
        self.letters.ends_with(suffix)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .cmp(&other.weight)
            .then_with(|| other.letters.len().cmp(&self.letters.len()))
            .then_with(|| {
                for (a, b) in self.letters.iter().rev().zip(other.letters.iter().rev()) {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.letters.iter().map(|g| format!("#{g}")).collect();
        write!(f, "{}", parts.join("."))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ab() -> Arc<Alphabet> {
        Alphabet::new(vec!["a".into(), "b".into(), "c".into()], vec![1, 1, 2])
    }

    #[test]
    fn orientation_matches_rules() {
        let al = ab();
        assert!(al.word(&[0, 0]) > al.word(&[1, 1]));
        assert!(al.word(&[1, 0]) > al.word(&[0, 1]));
        // weight-2 letter beats weight-2 products
        assert!(al.word(&[2]) > al.word(&[0, 1]));
        assert!(al.word(&[0, 1, 1]) > al.word(&[1, 1, 1]));
    }

    fn word_strategy() -> impl Strategy<Value = Vec<u16>> {
        prop::collection::vec(0u16..3, 0..5)
    }

    proptest! {
        #[test]
        fn order_is_multiplicative(u in word_strategy(), v in word_strategy(), x in word_strategy(), y in word_strategy()) {
            let al = ab();
            let (u, v, x, y) = (al.word(&u), al.word(&v), al.word(&x), al.word(&y));
            let lhs = Word::concat3(&x, &u, &y).cmp(&Word::concat3(&x, &v, &y));
            prop_assert_eq!(lhs, u.cmp(&v));
        }

        #[test]
        fn order_is_total(u in word_strategy(), v in word_strategy()) {
            let al = ab();
            let (u, v) = (al.word(&u), al.word(&v));
            prop_assert_eq!(u.cmp(&v) == Ordering::Equal, u == v);
            prop_assert_eq!(u.cmp(&v), v.cmp(&u).reverse());
        }
    }
}
