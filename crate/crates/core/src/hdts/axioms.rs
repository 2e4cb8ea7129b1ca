use serde::Serialize;

use super::closure::fire;
use super::multiset::{proper_splits, union};
use super::{ActionId, StateId, Transition, TransitionIndex, WeakHdts};

/// A failing instance of one axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Witness {
    /// A Coherence rule instance on `outer` whose conclusion is absent.
    Coherence { outer: TransitionView, missing: TransitionView },
    /// Two parallel 1-transitions with equal labels and distinct actions.
    Csa1 { first: TransitionView, second: TransitionView },
    /// The ordered split `prefix` then `suffix` (or its reverse) of `outer`
    /// does not have exactly one intermediate state.
    Csa2 { outer: TransitionView, prefix: Vec<u32>, suffix: Vec<u32>, intermediates: Vec<u32> },
    /// Nine tuples present with `(nu1, nu2) != (nu1p, nu2p)`.
    Csa3 { outer: TransitionView, a: Vec<u32>, b: Vec<u32>, c: Vec<u32>, nu1: u32, nu2: u32, nu1p: u32, nu2p: u32 },
    /// A split of `outer` with zero or several intermediate states.
    Uisa { outer: TransitionView, prefix: Vec<u32>, suffix: Vec<u32>, intermediates: Vec<u32> },
    /// A split of `outer` with no intermediate state.
    Intermediate { outer: TransitionView, prefix: Vec<u32>, suffix: Vec<u32> },
}

/// Plain-id view of a transition for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitionView {
    pub src: u32,
    pub acts: Vec<u32>,
    pub tgt: u32,
}

impl From<&Transition> for TransitionView {
    fn from(t: &Transition) -> Self {
        TransitionView { src: t.src.0, acts: ids(&t.acts), tgt: t.tgt.0 }
    }
}

fn ids(acts: &[ActionId]) -> Vec<u32> {
    acts.iter().map(|u| u.0).collect()
}

fn sids(states: &[StateId]) -> Vec<u32> {
    states.iter().map(|s| s.0).collect()
}

/// Outcome of checking every axiom; `witnesses` holds the first failing
/// instance of each failing axiom, in a deterministic order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub coherence_closed: bool,
    pub csa1: bool,
    pub csa2: bool,
    pub csa3: bool,
    pub uisa: bool,
    pub intermediate: bool,
    pub witnesses: Vec<Witness>,
}

impl AxiomReport {
    /// Weak HDTS satisfying CSA1 and UISA.
    pub fn is_hdts(&self) -> bool {
        self.coherence_closed && self.csa1 && self.uisa
    }

    pub fn all_pass(&self) -> bool {
        self.coherence_closed && self.csa1 && self.csa2 && self.csa3 && self.uisa && self.intermediate
    }
}

/// Checks every axiom on `x`.
pub fn validate(x: &WeakHdts) -> AxiomReport {
    let idx = TransitionIndex::new(x.transitions());
    let mut witnesses = Vec::new();

    let coherence = check_coherence(x, &idx);
    let csa1 = check_csa1(x);
    let csa2 = check_csa2(x, &idx);
    let csa3 = check_csa3(x, &idx);
    let (uisa, intermediate) = check_uisa(x, &idx);

    let mut record = |w: Option<Witness>| match w {
        Some(w) => {
            witnesses.push(w);
            false
        }
        None => true,
    };
    AxiomReport {
        coherence_closed: record(coherence),
        csa1: record(csa1),
        csa2: record(csa2),
        csa3: record(csa3),
        uisa: record(uisa),
        intermediate: record(intermediate),
        witnesses,
    }
}

fn check_coherence(x: &WeakHdts, idx: &TransitionIndex) -> Option<Witness> {
    for t in x.transitions() {
        let mut missing: Vec<Transition> = fire(t, idx).into_iter().filter(|c| !x.has_transition(c)).collect();
        missing.sort();
        if let Some(m) = missing.first() {
            return Some(Witness::Coherence { outer: t.into(), missing: m.into() });
        }
    }
    None
}

fn check_csa1(x: &WeakHdts) -> Option<Witness> {
    let ones: Vec<&Transition> = x.transitions().iter().filter(|t| t.dim() == 1).collect();
    for (i, t) in ones.iter().enumerate() {
        for s in &ones[i + 1..] {
            if t.src == s.src && t.tgt == s.tgt && t.acts[0] != s.acts[0] && x.label(t.acts[0]) == x.label(s.acts[0]) {
                return Some(Witness::Csa1 { first: (*t).into(), second: (*s).into() });
            }
        }
    }
    None
}

/// Direct reading: for every ordered split `(A, B)` there is exactly one
/// state through `A` then `B` and exactly one through `B` then `A`.
fn check_csa2(x: &WeakHdts, idx: &TransitionIndex) -> Option<Witness> {
    for t in x.transitions().iter().filter(|t| t.dim() >= 2) {
        for (a, b) in proper_splits(&t.acts) {
            for (p, s) in [(&a, &b), (&b, &a)] {
                let mids = idx.intermediates(t.src, p, s, t.tgt);
                if mids.len() != 1 {
                    return Some(Witness::Csa2 {
                        outer: t.into(),
                        prefix: ids(p),
                        suffix: ids(s),
                        intermediates: sids(&mids),
                    });
                }
            }
        }
    }
    None
}

fn check_csa3(x: &WeakHdts, idx: &TransitionIndex) -> Option<Witness> {
    for t in x.transitions().iter().filter(|t| t.dim() >= 3) {
        let (alpha, beta) = (t.src, t.tgt);
        for (a, rest) in proper_splits(&t.acts) {
            if rest.len() < 2 {
                continue;
            }
            let nu1s = idx.intermediates(alpha, &a, &rest, beta);
            for (b, c) in proper_splits(&rest) {
                let ab = union(&a, &b);
                let nu2ps = idx.intermediates(alpha, &ab, &c, beta);
                for &nu1 in &nu1s {
                    let nu2s = idx.intermediates(nu1, &b, &c, beta);
                    for &nu2 in &nu2s {
                        for &nu2p in &nu2ps {
                            for &nu1p in idx.intermediates(alpha, &a, &b, nu2p).iter() {
                                if nu1 != nu1p || nu2 != nu2p {
                                    return Some(Witness::Csa3 {
                                        outer: t.into(),
                                        a: ids(&a),
                                        b: ids(&b),
                                        c: ids(&c),
                                        nu1: nu1.0,
                                        nu2: nu2.0,
                                        nu1p: nu1p.0,
                                        nu2p: nu2p.0,
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn check_uisa(x: &WeakHdts, idx: &TransitionIndex) -> (Option<Witness>, Option<Witness>) {
    let mut uisa = None;
    let mut inter = None;
    for t in x.transitions().iter().filter(|t| t.dim() >= 2) {
        for (a, b) in proper_splits(&t.acts) {
            let mids = idx.intermediates(t.src, &a, &b, t.tgt);
            if mids.len() != 1 && uisa.is_none() {
                uisa = Some(Witness::Uisa {
                    outer: t.into(),
                    prefix: ids(&a),
                    suffix: ids(&b),
                    intermediates: sids(&mids),
                });
            }
            if mids.is_empty() && inter.is_none() {
                inter = Some(Witness::Intermediate { outer: t.into(), prefix: ids(&a), suffix: ids(&b) });
            }
            if uisa.is_some() && inter.is_some() {
                return (uisa, inter);
            }
        }
    }
    (uisa, inter)
}

/// A transition, a split `prefix | suffix` of its actions, and the
/// intermediate states of that split.
pub type UisaViolation = (Transition, Vec<ActionId>, Vec<ActionId>, Vec<StateId>);

/// Every split of every transition violating UISA, with its intermediates.
pub fn uisa_violations(x: &WeakHdts) -> Vec<UisaViolation> {
    let idx = TransitionIndex::new(x.transitions());
    let mut out = Vec::new();
    for t in x.transitions().iter().filter(|t| t.dim() >= 2) {
        for (a, b) in proper_splits(&t.acts) {
            let mids = idx.intermediates(t.src, &a, &b, t.tgt);
            if mids.len() != 1 {
                out.push((t.clone(), a, b, mids));
            }
        }
    }
    out
}
