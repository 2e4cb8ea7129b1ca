use std::collections::{BTreeSet, HashMap};

use super::{ActionId, StateId, Transition};

static EMPTY: BTreeSet<StateId> = BTreeSet::new();

/// Lookup of transitions by (source, multiset) and by (multiset, target).
#[derive(Clone, Debug, Default)]
pub struct TransitionIndex {
    forward: HashMap<(StateId, Vec<ActionId>), BTreeSet<StateId>>,
    backward: HashMap<(Vec<ActionId>, StateId), BTreeSet<StateId>>,
}

impl TransitionIndex {
    pub fn new<'a>(ts: impl IntoIterator<Item = &'a Transition>) -> Self {
        let mut idx = TransitionIndex::default();
        for t in ts {
            idx.insert(t);
        }
        idx
    }

    /// Returns false if the transition was already present.
    pub fn insert(&mut self, t: &Transition) -> bool {
        let fresh = self.forward.entry((t.src, t.acts.clone())).or_default().insert(t.tgt);
        self.backward.entry((t.acts.clone(), t.tgt)).or_default().insert(t.src);
        fresh
    }

    pub fn contains(&self, src: StateId, acts: &[ActionId], tgt: StateId) -> bool {
        self.targets(src, acts).contains(&tgt)
    }

    /// States `b` with `(src, acts, b)` a transition; `acts` must be sorted.
    pub fn targets(&self, src: StateId, acts: &[ActionId]) -> &BTreeSet<StateId> {
        self.forward.get(&(src, acts.to_vec())).unwrap_or(&EMPTY)
    }

    /// States `a` with `(a, acts, tgt)` a transition; `acts` must be sorted.
    pub fn sources(&self, acts: &[ActionId], tgt: StateId) -> &BTreeSet<StateId> {
        self.backward.get(&(acts.to_vec(), tgt)).unwrap_or(&EMPTY)
    }

    /// Intermediate states of the split `a` then `b` from `src` to `tgt`.
    pub fn intermediates(&self, src: StateId, a: &[ActionId], b: &[ActionId], tgt: StateId) -> Vec<StateId> {
        let after = self.targets(src, a);
        let before = self.sources(b, tgt);
        after.intersection(before).copied().collect()
    }
}
