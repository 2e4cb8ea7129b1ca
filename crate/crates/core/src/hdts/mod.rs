//! Finite weak higher dimensional transition systems.
//!
//! A transition `(src, u1..un, tgt)` is stored once, with its actions sorted;
//! the stored multiset stands for every permutation of the tuple.

mod axioms;
mod closure;
mod colimit;
mod cubes;
mod hom;
mod index;
pub(crate) mod multiset;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::label::Label;

pub use axioms::{uisa_violations, validate, AxiomReport, TransitionView, UisaViolation, Witness};
pub use closure::coherence_closure;
pub use colimit::{colimit, Diagram, HdtsColimit};
pub use cubes::{cube, cube_ext, cube_ext_inclusion, d_system, empty_with_action};
pub use hom::{hom_count, hom_enumerate, is_orthogonal, iso_check};
pub use index::TransitionIndex;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(pub u32);

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionId(pub u32);

impl fmt::Debug for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl fmt::Debug for ActionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "u{}", self.0)
    }
}

/// A transition in canonical form: `acts` is non-empty and sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub src: StateId,
    pub acts: Vec<ActionId>,
    pub tgt: StateId,
}

impl Transition {
    /// Builds the canonical representative, sorting `acts`.
    pub fn new(src: StateId, mut acts: Vec<ActionId>, tgt: StateId) -> Self {
        acts.sort();
        Transition { src, acts, tgt }
    }

    pub fn dim(&self) -> usize {
        self.acts.len()
    }
}

impl fmt::Debug for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?},{:?})", self.src, self.acts, self.tgt)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HdtsError {
    #[error("transition {0:?} references unknown state {1:?}")]
    DanglingState(Transition, StateId),
    #[error("transition {0:?} references unknown action {1:?}")]
    DanglingAction(Transition, ActionId),
    #[error("transition {0:?} has no actions")]
    EmptyTransition(Transition),
    #[error("transition {0:?} lists its actions out of order")]
    Unsorted(Transition),
    #[error("morphism does not map state {0:?}")]
    StateUnmapped(StateId),
    #[error("morphism does not map action {0:?}")]
    ActionUnmapped(ActionId),
    #[error("morphism sends state {0:?} outside the target")]
    StateOutOfRange(StateId),
    #[error("morphism sends action {0:?} outside the target")]
    ActionOutOfRange(ActionId),
    #[error("morphism changes the label of action {0:?}")]
    LabelMismatch(ActionId),
    #[error("morphism does not preserve transition {0:?}")]
    TransitionNotPreserved(Transition),
}

/// A finite weak HDTS: states, labelled actions and canonical transitions.
///
/// Construction checks references only; whether the Coherence axiom holds is
/// reported by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WeakHdts {
    states: BTreeSet<StateId>,
    actions: BTreeMap<ActionId, Label>,
    transitions: BTreeSet<Transition>,
}

impl WeakHdts {
    pub fn new(
        states: BTreeSet<StateId>,
        actions: BTreeMap<ActionId, Label>,
        transitions: BTreeSet<Transition>,
    ) -> Result<Self, HdtsError> {
        for t in &transitions {
            if t.acts.is_empty() {
                return Err(HdtsError::EmptyTransition(t.clone()));
            }
            if t.acts.windows(2).any(|w| w[0] > w[1]) {
                return Err(HdtsError::Unsorted(t.clone()));
            }
            for s in [t.src, t.tgt] {
                if !states.contains(&s) {
                    return Err(HdtsError::DanglingState(t.clone(), s));
                }
            }
            if let Some(u) = t.acts.iter().find(|u| !actions.contains_key(u)) {
                return Err(HdtsError::DanglingAction(t.clone(), *u));
            }
        }
        Ok(WeakHdts { states, actions, transitions })
    }

    pub fn states(&self) -> &BTreeSet<StateId> {
        &self.states
    }

    pub fn actions(&self) -> &BTreeMap<ActionId, Label> {
        &self.actions
    }

    pub fn transitions(&self) -> &BTreeSet<Transition> {
        &self.transitions
    }

    pub fn label(&self, u: ActionId) -> Option<&Label> {
        self.actions.get(&u)
    }

    pub fn has_transition(&self, t: &Transition) -> bool {
        self.transitions.contains(t)
    }

    /// Largest transition size, 0 when there are no transitions.
    pub fn max_dim(&self) -> usize {
        self.transitions.iter().map(Transition::dim).max().unwrap_or(0)
    }

    /// Replaces the transition set by its coherence closure.
    pub fn closed(&self) -> WeakHdts {
        WeakHdts {
            states: self.states.clone(),
            actions: self.actions.clone(),
            transitions: coherence_closure(&self.transitions),
        }
    }

    /// The identity morphism.
    pub fn identity(&self) -> HdtsMorphism {
        HdtsMorphism {
            state_map: self.states.iter().map(|&s| (s, s)).collect(),
            action_map: self.actions.keys().map(|&u| (u, u)).collect(),
        }
    }
}

/// A morphism of weak HDTS: maps on states and on actions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HdtsMorphism {
    pub state_map: BTreeMap<StateId, StateId>,
    pub action_map: BTreeMap<ActionId, ActionId>,
}

impl HdtsMorphism {
    /// Image of a transition, re-canonicalized. Panics on unmapped ids.
    pub fn apply(&self, t: &Transition) -> Transition {
        Transition::new(
            self.state_map[&t.src],
            t.acts.iter().map(|u| self.action_map[u]).collect(),
            self.state_map[&t.tgt],
        )
    }

    /// Checks that this is a morphism `x -> y`.
    pub fn check(&self, x: &WeakHdts, y: &WeakHdts) -> Result<(), HdtsError> {
        for s in x.states() {
            match self.state_map.get(s) {
                None => return Err(HdtsError::StateUnmapped(*s)),
                Some(t) if !y.states().contains(t) => return Err(HdtsError::StateOutOfRange(*s)),
                _ => {}
            }
        }
        for (u, l) in x.actions() {
            match self.action_map.get(u) {
                None => return Err(HdtsError::ActionUnmapped(*u)),
                Some(v) => match y.label(*v) {
                    None => return Err(HdtsError::ActionOutOfRange(*u)),
                    Some(m) if m != l => return Err(HdtsError::LabelMismatch(*u)),
                    _ => {}
                },
            }
        }
        for t in x.transitions() {
            if !y.has_transition(&self.apply(t)) {
                return Err(HdtsError::TransitionNotPreserved(t.clone()));
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &HdtsMorphism) -> HdtsMorphism {
        HdtsMorphism {
            state_map: self.state_map.iter().map(|(&k, v)| (k, other.state_map[v])).collect(),
            action_map: self.action_map.iter().map(|(&k, v)| (k, other.action_map[v])).collect(),
        }
    }
}
