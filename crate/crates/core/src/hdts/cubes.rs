//! The labelled cubes `C_n[a1..an]`, their two-corner restrictions, and
//! small named systems.
//!
//! Vertex `ε ∈ {0,1}^n` is the state whose id has bit `i` equal to `ε_{i+1}`;
//! action `(a_i, i)` has id `i - 1`.

use std::collections::{BTreeMap, BTreeSet};

use super::{ActionId, HdtsMorphism, StateId, Transition, WeakHdts};
use crate::label::Label;

fn actions_of(word: &[Label]) -> BTreeMap<ActionId, Label> {
    word.iter().enumerate().map(|(i, l)| (ActionId(i as u32), l.clone())).collect()
}

fn directions(bits: u32) -> Vec<ActionId> {
    (0..32).filter(|i| bits >> i & 1 == 1).map(ActionId).collect()
}

/// `C_n[word]`: all vertices of the n-cube, one transition per pair of
/// distinct comparable vertices.
pub fn cube(word: &[Label]) -> WeakHdts {
    let n = word.len();
    assert!(n < 32, "cube dimension too large");
    let size = 1u32 << n;
    let states: BTreeSet<StateId> = (0..size).map(StateId).collect();
    let mut transitions = BTreeSet::new();
    for lo in 0..size {
        for hi in 0..size {
            if lo != hi && lo & hi == lo {
                transitions.insert(Transition::new(StateId(lo), directions(lo ^ hi), StateId(hi)));
            }
        }
    }
    WeakHdts::new(states, actions_of(word), transitions).expect("cube is well formed")
}

/// `C_n^ext[word]`: only the two extreme vertices and the top transition.
pub fn cube_ext(word: &[Label]) -> WeakHdts {
    let n = word.len();
    let top = (1u32 << n) - 1;
    let states: BTreeSet<StateId> = [StateId(0), StateId(top)].into_iter().collect();
    let mut transitions = BTreeSet::new();
    if n > 0 {
        transitions.insert(Transition::new(StateId(0), directions(top), StateId(top)));
    }
    WeakHdts::new(states, actions_of(word), transitions).expect("cube_ext is well formed")
}

/// The inclusion `C_n^ext[word] ⊂ C_n[word]`.
pub fn cube_ext_inclusion(word: &[Label]) -> HdtsMorphism {
    cube_ext(word).identity()
}

/// `D[a]`: two states and two parallel `a`-labelled actions.
pub fn d_system(a: &Label) -> WeakHdts {
    let states = [StateId(0), StateId(1)].into_iter().collect();
    let actions = [(ActionId(0), a.clone()), (ActionId(1), a.clone())].into_iter().collect();
    let transitions = [
        Transition::new(StateId(0), vec![ActionId(0)], StateId(1)),
        Transition::new(StateId(0), vec![ActionId(1)], StateId(1)),
    ]
    .into_iter()
    .collect();
    WeakHdts::new(states, actions, transitions).expect("D[a] is well formed")
}

/// The system with no states, no transitions and a single action labelled `x`.
pub fn empty_with_action(x: &Label) -> WeakHdts {
    let actions = [(ActionId(0), x.clone())].into_iter().collect();
    WeakHdts::new(BTreeSet::new(), actions, BTreeSet::new()).expect("well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::word;

    #[test]
    fn cube_sizes() {
        let c0 = cube(&[]);
        assert_eq!((c0.states().len(), c0.actions().len(), c0.transitions().len()), (1, 0, 0));
        let c2 = cube(&word(&["a", "b"]));
        assert_eq!((c2.states().len(), c2.actions().len(), c2.transitions().len()), (4, 2, 5));
        let c3 = cube(&word(&["a", "b", "c"]));
        assert_eq!((c3.states().len(), c3.actions().len(), c3.transitions().len()), (8, 3, 19));
    }

    #[test]
    fn cube_ext_shapes() {
        let e = cube_ext(&word(&["a", "b"]));
        assert_eq!((e.states().len(), e.actions().len(), e.transitions().len()), (2, 2, 1));
        assert_eq!(cube_ext(&word(&["a"])), cube(&word(&["a"])));
        assert_eq!(cube_ext(&[]), cube(&[]));
        let w = word(&["a", "b", "a"]);
        cube_ext_inclusion(&w).check(&cube_ext(&w), &cube(&w)).unwrap();
    }
}
