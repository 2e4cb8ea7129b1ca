//! Morphism enumeration by backtracking: actions first (label-constrained),
//! then states in breadth-first order, checking each transition as soon as
//! both of its ends are assigned.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{ActionId, HdtsMorphism, StateId, Transition, TransitionIndex, WeakHdts};
use crate::label::Label;

struct Search {
    yidx: TransitionIndex,
    injective: bool,
    actions: Vec<ActionId>,
    action_cands: Vec<Vec<ActionId>>,
    states: Vec<StateId>,
    state_cands: Vec<Vec<StateId>>,
    /// Transitions whose later endpoint sits at this position.
    checks: Vec<Vec<Transition>>,
    action_slot: HashMap<ActionId, usize>,
    state_slot: HashMap<StateId, usize>,
    a_val: Vec<ActionId>,
    s_val: Vec<StateId>,
    a_used: BTreeSet<ActionId>,
    s_used: BTreeSet<StateId>,
}

impl Search {
    fn new(x: &WeakHdts, y: &WeakHdts, injective: bool, filter: Option<&Signatures>) -> Self {
        let actions: Vec<ActionId> = x.actions().keys().copied().collect();
        let action_cands = actions
            .iter()
            .map(|u| {
                let l = &x.actions()[u];
                y.actions()
                    .iter()
                    .filter(|(v, m)| *m == l && filter.is_none_or(|sg| sg.action_ok(*u, **v)))
                    .map(|(v, _)| *v)
                    .collect()
            })
            .collect();
        let states = bfs_order(x);
        let state_slot: HashMap<StateId, usize> = states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut checks = vec![Vec::new(); states.len()];
        for t in x.transitions() {
            let k = state_slot[&t.src].max(state_slot[&t.tgt]);
            checks[k].push(t.clone());
        }
        let state_cands = states
            .iter()
            .map(|s| y.states().iter().copied().filter(|v| filter.is_none_or(|sg| sg.state_ok(*s, *v))).collect())
            .collect();
        Search {
            yidx: TransitionIndex::new(y.transitions()),
            injective,
            action_slot: actions.iter().enumerate().map(|(i, u)| (*u, i)).collect(),
            a_val: vec![ActionId(0); actions.len()],
            s_val: vec![StateId(0); states.len()],
            actions,
            action_cands,
            states,
            state_cands,
            checks,
            state_slot,
            a_used: BTreeSet::new(),
            s_used: BTreeSet::new(),
        }
    }

    fn image_acts(&self, acts: &[ActionId]) -> Vec<ActionId> {
        let mut v: Vec<ActionId> = acts.iter().map(|u| self.a_val[self.action_slot[u]]).collect();
        v.sort();
        v
    }

    fn run(&mut self, visit: &mut dyn FnMut(&HdtsMorphism) -> bool) -> bool {
        self.assign_action(0, visit)
    }

    fn assign_action(&mut self, k: usize, visit: &mut dyn FnMut(&HdtsMorphism) -> bool) -> bool {
        if k == self.actions.len() {
            return self.assign_state(0, visit);
        }
        for i in 0..self.action_cands[k].len() {
            let v = self.action_cands[k][i];
            if self.injective && self.a_used.contains(&v) {
                continue;
            }
            self.a_val[k] = v;
            if self.injective {
                self.a_used.insert(v);
            }
            let go_on = self.assign_action(k + 1, visit);
            if self.injective {
                self.a_used.remove(&v);
            }
            if !go_on {
                return false;
            }
        }
        true
    }

    /// Candidates for the state at position `k`, narrowed by a transition
    /// linking it to an already assigned state.
    fn candidates(&self, k: usize) -> Vec<StateId> {
        let s = self.states[k];
        let mut best: Option<Vec<StateId>> = None;
        for t in &self.checks[k] {
            let narrowed: Option<Vec<StateId>> = if t.tgt == s && t.src != s {
                let src = self.s_val[self.state_slot[&t.src]];
                Some(self.yidx.targets(src, &self.image_acts(&t.acts)).iter().copied().collect())
            } else if t.src == s && t.tgt != s {
                let tgt = self.s_val[self.state_slot[&t.tgt]];
                Some(self.yidx.sources(&self.image_acts(&t.acts), tgt).iter().copied().collect())
            } else {
                None
            };
            if let Some(n) = narrowed {
                if best.as_ref().is_none_or(|b| n.len() < b.len()) {
                    best = Some(n);
                }
            }
        }
        match best {
            Some(b) => b.into_iter().filter(|v| self.state_cands[k].contains(v)).collect(),
            None => self.state_cands[k].clone(),
        }
    }

    fn assign_state(&mut self, k: usize, visit: &mut dyn FnMut(&HdtsMorphism) -> bool) -> bool {
        if k == self.states.len() {
            let m = HdtsMorphism {
                state_map: self.states.iter().copied().zip(self.s_val.iter().copied()).collect(),
                action_map: self.actions.iter().copied().zip(self.a_val.iter().copied()).collect(),
            };
            return visit(&m);
        }
        for v in self.candidates(k) {
            if self.injective && self.s_used.contains(&v) {
                continue;
            }
            self.s_val[k] = v;
            let ok = self.checks[k].iter().all(|t| {
                let src = self.s_val[self.state_slot[&t.src]];
                let tgt = self.s_val[self.state_slot[&t.tgt]];
                self.yidx.contains(src, &self.image_acts(&t.acts), tgt)
            });
            if !ok {
                continue;
            }
            if self.injective {
                self.s_used.insert(v);
            }
            let go_on = self.assign_state(k + 1, visit);
            if self.injective {
                self.s_used.remove(&v);
            }
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// States reached breadth-first from transition-incident states (in id
/// order), followed by isolated states.
fn bfs_order(x: &WeakHdts) -> Vec<StateId> {
    let mut adj: BTreeMap<StateId, BTreeSet<StateId>> = BTreeMap::new();
    for t in x.transitions() {
        adj.entry(t.src).or_default().insert(t.tgt);
        adj.entry(t.tgt).or_default().insert(t.src);
    }
    let mut seen = BTreeSet::new();
    let mut order = Vec::with_capacity(x.states().len());
    for &start in adj.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        while let Some(s) = queue.pop_front() {
            order.push(s);
            for &n in &adj[&s] {
                if seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
    }
    order.extend(x.states().iter().filter(|s| !seen.contains(s)));
    order
}

/// Every morphism `x -> y`, in a deterministic order.
pub fn hom_enumerate(x: &WeakHdts, y: &WeakHdts) -> Vec<HdtsMorphism> {
    let mut out = Vec::new();
    Search::new(x, y, false, None).run(&mut |m| {
        out.push(m.clone());
        true
    });
    out
}

/// Number of morphisms `x -> y`.
pub fn hom_count(x: &WeakHdts, y: &WeakHdts) -> usize {
    let mut n = 0;
    Search::new(x, y, false, None).run(&mut |_| {
        n += 1;
        true
    });
    n
}

/// Whether every morphism `a -> x` factors through `f: a -> b` in exactly one way.
pub fn is_orthogonal(x: &WeakHdts, a: &WeakHdts, b: &WeakHdts, f: &HdtsMorphism) -> bool {
    let mut factors: HashMap<HdtsMorphism, usize> = HashMap::new();
    Search::new(b, x, false, None).run(&mut |h| {
        *factors.entry(f.then(h)).or_default() += 1;
        true
    });
    let mut ok = true;
    Search::new(a, x, false, None).run(&mut |g| {
        ok = factors.get(g) == Some(&1);
        ok
    });
    ok
}

type StateSigs = HashMap<StateId, Vec<(u8, Vec<Label>)>>;
type ActionSigs = HashMap<ActionId, Vec<usize>>;

/// Per-state and per-action invariants preserved by isomorphisms.
struct Signatures {
    x_states: HashMap<StateId, Vec<(u8, Vec<Label>)>>,
    y_states: HashMap<StateId, Vec<(u8, Vec<Label>)>>,
    x_actions: HashMap<ActionId, Vec<usize>>,
    y_actions: HashMap<ActionId, Vec<usize>>,
}

impl Signatures {
    fn of(x: &WeakHdts) -> (StateSigs, ActionSigs) {
        let mut st: HashMap<StateId, Vec<(u8, Vec<Label>)>> = x.states().iter().map(|s| (*s, Vec::new())).collect();
        let mut ac: HashMap<ActionId, Vec<usize>> = x.actions().keys().map(|u| (*u, Vec::new())).collect();
        for t in x.transitions() {
            let mut labels: Vec<Label> = t.acts.iter().map(|u| x.actions()[u].clone()).collect();
            labels.sort();
            if t.src == t.tgt {
                st.get_mut(&t.src).unwrap().push((2, labels));
            } else {
                st.get_mut(&t.src).unwrap().push((0, labels.clone()));
                st.get_mut(&t.tgt).unwrap().push((1, labels));
            }
            for u in &t.acts {
                ac.get_mut(u).unwrap().push(t.dim());
            }
        }
        st.values_mut().for_each(|v| v.sort());
        ac.values_mut().for_each(|v| v.sort());
        (st, ac)
    }

    fn new(x: &WeakHdts, y: &WeakHdts) -> Self {
        let (x_states, x_actions) = Signatures::of(x);
        let (y_states, y_actions) = Signatures::of(y);
        Signatures { x_states, y_states, x_actions, y_actions }
    }

    fn state_ok(&self, s: StateId, v: StateId) -> bool {
        self.x_states[&s] == self.y_states[&v]
    }

    fn action_ok(&self, u: ActionId, v: ActionId) -> bool {
        self.x_actions[&u] == self.y_actions[&v]
    }

    fn multisets_agree(&self) -> bool {
        let mut a: Vec<_> = self.x_states.values().collect();
        let mut b: Vec<_> = self.y_states.values().collect();
        a.sort();
        b.sort();
        if a != b {
            return false;
        }
        let mut a: Vec<_> = self.x_actions.values().collect();
        let mut b: Vec<_> = self.y_actions.values().collect();
        a.sort();
        b.sort();
        a == b
    }
}

/// An isomorphism `x -> y` if one exists.
pub fn iso_check(x: &WeakHdts, y: &WeakHdts) -> Option<HdtsMorphism> {
    if x.states().len() != y.states().len()
        || x.actions().len() != y.actions().len()
        || x.transitions().len() != y.transitions().len()
    {
        return None;
    }
    let sig = Signatures::new(x, y);
    if !sig.multisets_agree() {
        return None;
    }
    let mut found = None;
    // An injective morphism between systems with equally many transitions is
    // a bijection on transitions, hence invertible.
    Search::new(x, y, true, Some(&sig)).run(&mut |m| {
        found = Some(m.clone());
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdts::{cube, cube_ext, cube_ext_inclusion, d_system};
    use crate::label::{word, Label};

    #[test]
    fn homs_from_the_point() {
        let y = cube(&word(&["a", "b"]));
        assert_eq!(hom_enumerate(&cube(&[]), &y).len(), 4);
    }

    #[test]
    fn edge_into_square() {
        assert_eq!(hom_count(&cube(&word(&["a"])), &cube(&word(&["a", "b"]))), 2);
        // labels pin the symmetry: only equal letters may be swapped
        assert_eq!(hom_count(&cube(&word(&["a", "b"])), &cube(&word(&["a", "b"]))), 1);
        assert_eq!(hom_count(&cube(&word(&["a", "a"])), &cube(&word(&["a", "a"]))), 2);
    }

    #[test]
    fn isos() {
        let x = cube(&word(&["a", "b"]));
        assert!(iso_check(&x, &x).is_some());
        assert!(iso_check(&x, &cube(&word(&["b", "a"]))).is_some());
        assert!(iso_check(&cube(&word(&["a"])), &cube(&word(&["b"]))).is_none());
    }

    #[test]
    fn orthogonality_examples() {
        let w = word(&["a", "b"]);
        let c3 = cube(&word(&["a", "b", "c"]));
        assert!(is_orthogonal(&c3, &cube_ext(&w), &cube(&w), &cube_ext_inclusion(&w)));

        let a = Label::new("a");
        let d = d_system(&a);
        let edge = cube(std::slice::from_ref(&a));
        let collapse = hom_enumerate(&d, &edge);
        assert_eq!(collapse.len(), 1);
        assert!(!is_orthogonal(&d, &d, &edge, &collapse[0]));
    }
}
