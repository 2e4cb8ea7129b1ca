//! Labels and the synchronization alphabet.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// An action label. Cheap to clone; ordered lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(s: &str) -> Self {
        Label(Arc::from(s))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::new(s)
    }
}

/// Builds a label word from string slices.
pub fn word(labels: &[&str]) -> Vec<Label> {
    labels.iter().map(|s| Label::new(s)).collect()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("tau label `{0}` is not among the labels")]
    TauMissing(String),
    #[error("tau label `{0}` cannot take part in the involution")]
    TauInvolution(String),
    #[error("involution mentions unknown label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` is paired twice in the involution")]
    PairedTwice(String),
}

/// A finite label set with a silent label and a partial involution `a <-> abar`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    labels: BTreeSet<Label>,
    tau: Label,
    involution: BTreeMap<Label, Label>,
}

impl Alphabet {
    /// `pairs` lists each complementary pair once; a pair `(a, a)` makes `a` self-complementary.
    pub fn new(
        labels: impl IntoIterator<Item = Label>,
        tau: Label,
        pairs: impl IntoIterator<Item = (Label, Label)>,
    ) -> Result<Self, AlphabetError> {
        let labels: BTreeSet<Label> = labels.into_iter().collect();
        if !labels.contains(&tau) {
            return Err(AlphabetError::TauMissing(tau.to_string()));
        }
        let mut involution = BTreeMap::new();
        for (a, b) in pairs {
            for l in [&a, &b] {
                if *l == tau {
                    return Err(AlphabetError::TauInvolution(l.to_string()));
                }
                if !labels.contains(l) {
                    return Err(AlphabetError::UnknownLabel(l.to_string()));
                }
            }
            if involution.contains_key(&a) {
                return Err(AlphabetError::PairedTwice(a.to_string()));
            }
            involution.insert(a.clone(), b.clone());
            if a != b {
                if involution.contains_key(&b) {
                    return Err(AlphabetError::PairedTwice(b.to_string()));
                }
                involution.insert(b, a);
            }
        }
        Ok(Alphabet { labels, tau, involution })
    }

    /// Convenience constructor from string slices.
    pub fn from_strs(labels: &[&str], tau: &str, pairs: &[(&str, &str)]) -> Result<Self, AlphabetError> {
        Alphabet::new(
            labels.iter().map(|s| Label::new(s)),
            Label::new(tau),
            pairs.iter().map(|(a, b)| (Label::new(a), Label::new(b))),
        )
    }

    pub fn labels(&self) -> &BTreeSet<Label> {
        &self.labels
    }

    pub fn tau(&self) -> &Label {
        &self.tau
    }

    pub fn contains(&self, l: &Label) -> bool {
        self.labels.contains(l)
    }

    /// The complementary label, if `l` is in the involution's domain.
    pub fn complement(&self, l: &Label) -> Option<&Label> {
        self.involution.get(l)
    }

    /// Each complementary pair once, with the smaller label first.
    pub fn pairs(&self) -> Vec<(Label, Label)> {
        self.involution.iter().filter(|(a, b)| a <= b).map(|(a, b)| (a.clone(), b.clone())).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn involution_is_symmetric() {
        let s = Alphabet::from_strs(&["a", "abar", "b", "tau"], "tau", &[("a", "abar")]).unwrap();
        assert_eq!(s.complement(&"a".into()), Some(&Label::new("abar")));
        assert_eq!(s.complement(&"abar".into()), Some(&Label::new("a")));
        assert_eq!(s.complement(&"b".into()), None);
        assert_eq!(s.complement(&"tau".into()), None);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(Alphabet::from_strs(&["a"], "tau", &[]), Err(AlphabetError::TauMissing(_))));
        assert!(matches!(
            Alphabet::from_strs(&["a", "tau"], "tau", &[("a", "tau")]),
            Err(AlphabetError::TauInvolution(_))
        ));
        assert!(matches!(
            Alphabet::from_strs(&["a", "tau"], "tau", &[("a", "b")]),
            Err(AlphabetError::UnknownLabel(_))
        ));
        assert!(matches!(
            Alphabet::from_strs(&["a", "b", "c", "tau"], "tau", &[("a", "b"), ("c", "a")]),
            Err(AlphabetError::PairedTwice(_))
        ));
    }
}
