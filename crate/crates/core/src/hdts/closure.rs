use std::collections::{BTreeSet, HashMap};

use super::multiset::{proper_splits, union};
use super::{StateId, Transition, TransitionIndex};

/// Smallest superset of `ts` closed under the Coherence rule: for
/// `(α, A⊎B⊎C, β)` with `(α,A,ν1)`, `(ν1,B⊎C,β)`, `(α,A⊎B,ν2)`, `(ν2,C,β)`
/// present, `(ν1,B,ν2)` is added.
///
/// Saturation is driven by a worklist of transitions of size at least 3 (the
/// only ones that can fire the rule); adding a transition re-queues those
/// sharing its source or target.
pub fn coherence_closure(ts: &BTreeSet<Transition>) -> BTreeSet<Transition> {
    let mut all = ts.clone();
    let mut idx = TransitionIndex::new(ts);
    let mut big_from: HashMap<StateId, Vec<Transition>> = HashMap::new();
    let mut big_into: HashMap<StateId, Vec<Transition>> = HashMap::new();
    let mut dirty: BTreeSet<Transition> = BTreeSet::new();
    for t in ts.iter().filter(|t| t.dim() >= 3) {
        big_from.entry(t.src).or_default().push(t.clone());
        big_into.entry(t.tgt).or_default().push(t.clone());
        dirty.insert(t.clone());
    }
    while let Some(t) = dirty.pop_first() {
        for new in fire(&t, &idx) {
            if !idx.insert(&new) {
                continue;
            }
            all.insert(new.clone());
            for s in big_from.get(&new.src).into_iter().flatten() {
                dirty.insert(s.clone());
            }
            for s in big_into.get(&new.tgt).into_iter().flatten() {
                dirty.insert(s.clone());
            }
            if new.dim() >= 3 {
                big_from.entry(new.src).or_default().push(new.clone());
                big_into.entry(new.tgt).or_default().push(new.clone());
                dirty.insert(new);
            }
        }
    }
    all
}

/// All conclusions of rule instances whose outer transition is `t`.
pub(super) fn fire(t: &Transition, idx: &TransitionIndex) -> Vec<Transition> {
    let mut out = Vec::new();
    if t.dim() < 3 {
        return out;
    }
    for (a, rest) in proper_splits(&t.acts) {
        if rest.len() < 2 {
            continue;
        }
        let firsts = idx.intermediates(t.src, &a, &rest, t.tgt);
        if firsts.is_empty() {
            continue;
        }
        for (b, c) in proper_splits(&rest) {
            let ab = union(&a, &b);
            let seconds = idx.intermediates(t.src, &ab, &c, t.tgt);
            for &n1 in &firsts {
                for &n2 in &seconds {
                    out.push(Transition { src: n1, acts: b.clone(), tgt: n2 });
                }
            }
        }
    }
    out
}
