use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::axioms::uisa_violations;
use super::{coherence_closure, ActionId, HdtsError, HdtsMorphism, StateId, Transition, WeakHdts};
use crate::label::Label;
use crate::util::UnionFind;

/// A finite diagram: objects and arrows `(from, to, morphism)`.
#[derive(Clone, Debug, Default)]
pub struct Diagram {
    pub objects: Vec<WeakHdts>,
    pub arrows: Vec<(usize, usize, HdtsMorphism)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColimitError {
    #[error("arrow {0} refers to a missing object")]
    MissingObject(usize),
    #[error("arrow {0} is not a morphism: {1}")]
    InvalidArrow(usize, HdtsError),
    #[error("merged actions carry different labels `{0}` and `{1}`")]
    LabelClash(Label, Label),
}

/// The colimit with its cocone and closure bookkeeping.
#[derive(Clone, Debug)]
pub struct HdtsColimit {
    pub system: WeakHdts,
    pub cocone: Vec<HdtsMorphism>,
    /// Whether the union of transition images already satisfied UISA.
    pub union_uisa: bool,
    /// Number of transitions added by the coherence closure.
    pub closure_added: usize,
}

/// Colimit of a finite diagram. States and actions are quotients of the
/// disjoint unions; the class of least global index represents each class and
/// classes are numbered in that order.
pub fn colimit(d: &Diagram) -> Result<HdtsColimit, ColimitError> {
    for (k, (from, to, f)) in d.arrows.iter().enumerate() {
        let (x, y) = match (d.objects.get(*from), d.objects.get(*to)) {
            (Some(x), Some(y)) => (x, y),
            _ => return Err(ColimitError::MissingObject(k)),
        };
        f.check(x, y).map_err(|e| ColimitError::InvalidArrow(k, e))?;
    }

    let state_lists: Vec<Vec<StateId>> = d.objects.iter().map(|x| x.states().iter().copied().collect()).collect();
    let action_lists: Vec<Vec<ActionId>> = d.objects.iter().map(|x| x.actions().keys().copied().collect()).collect();
    let (state_pos, state_total) = positions(&state_lists);
    let (action_pos, action_total) = positions(&action_lists);

    let mut su = UnionFind::new(state_total);
    let mut au = UnionFind::new(action_total);
    for (from, to, f) in &d.arrows {
        for (s, t) in &f.state_map {
            su.union(state_pos[*from][s], state_pos[*to][t]);
        }
        for (u, v) in &f.action_map {
            au.union(action_pos[*from][u], action_pos[*to][v]);
        }
    }
    let (state_class, state_count) = su.classes();
    let (action_class, action_count) = au.classes();

    let mut labels: Vec<Option<Label>> = vec![None; action_count];
    let mut cocone = Vec::with_capacity(d.objects.len());
    for (k, x) in d.objects.iter().enumerate() {
        let mut m = HdtsMorphism::default();
        for s in x.states() {
            m.state_map.insert(*s, StateId(state_class[state_pos[k][s]] as u32));
        }
        for (u, l) in x.actions() {
            let c = action_class[action_pos[k][u]];
            match &labels[c] {
                Some(prev) if prev != l => return Err(ColimitError::LabelClash(prev.clone(), l.clone())),
                _ => labels[c] = Some(l.clone()),
            }
            m.action_map.insert(*u, ActionId(c as u32));
        }
        cocone.push(m);
    }

    let mut union = BTreeSet::new();
    for (x, m) in d.objects.iter().zip(&cocone) {
        for t in x.transitions() {
            union.insert(m.apply(t));
        }
    }
    let states: BTreeSet<StateId> = (0..state_count as u32).map(StateId).collect();
    let actions: BTreeMap<ActionId, Label> = labels
        .into_iter()
        .enumerate()
        .map(|(c, l)| (ActionId(c as u32), l.expect("every class has a member")))
        .collect();
    let pre = WeakHdts::new(states.clone(), actions.clone(), union.clone()).expect("images are well formed");
    let union_uisa = uisa_violations(&pre).is_empty();
    let closed: BTreeSet<Transition> = coherence_closure(&union);
    let closure_added = closed.len() - union.len();
    let system = WeakHdts::new(states, actions, closed).expect("closure is well formed");
    Ok(HdtsColimit { system, cocone, union_uisa, closure_added })
}

fn positions<T: Ord + Copy>(lists: &[Vec<T>]) -> (Vec<BTreeMap<T, usize>>, usize) {
    let mut next = 0;
    let maps = lists
        .iter()
        .map(|l| {
            l.iter()
                .map(|&x| {
                    next += 1;
                    (x, next - 1)
                })
                .collect()
        })
        .collect();
    (maps, next)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdts::{cube, empty_with_action, iso_check};
    use crate::label::{word, Label};

    #[test]
    fn single_object() {
        let x = cube(&word(&["a", "b"]));
        let c = colimit(&Diagram { objects: vec![x.clone()], arrows: vec![] }).unwrap();
        assert_eq!(c.system, x);
        assert!(c.union_uisa);
        assert_eq!(c.closure_added, 0);
    }

    #[test]
    fn span_of_edges_over_a_lonely_action() {
        let x = Label::new("x");
        let edge = cube(std::slice::from_ref(&x));
        let lonely = empty_with_action(&x);
        let into =
            HdtsMorphism { state_map: BTreeMap::new(), action_map: [(ActionId(0), ActionId(0))].into_iter().collect() };
        let d = Diagram { objects: vec![lonely, edge.clone(), edge], arrows: vec![(0, 1, into.clone()), (0, 2, into)] };
        let c = colimit(&d).unwrap().system;
        assert_eq!(c.states().len(), 4);
        assert_eq!(c.actions().len(), 1);
        assert_eq!(c.transitions().len(), 2);
        assert!(iso_check(&c, &cube(&[x])).is_none());
    }
}
