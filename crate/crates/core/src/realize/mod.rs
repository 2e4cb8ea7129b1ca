//! The realization of a labelled precubical set as a weak HDTS, maps
//! between realized cubes, and cubification.
//!
//! States of `realize(K)` are the vertices of `K` numbered in id order.
//! Actions are classes of edges, two edges being one action when they are
//! opposite sides of some square.

mod cubify;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::hdts::{coherence_closure, validate, ActionId, HdtsMorphism, StateId, Transition, WeakHdts};
use crate::label::Label;
use crate::precube::{hda_check, CellId, Coord, CubeEncoding, EncodingError, PrecubicalSet};
use crate::util::UnionFind;

pub use cubify::{cube_maps_into, cubify, used_actions, Cubification};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizeError {
    #[error("source word {word:?} is not the pullback {expected:?} of the target word")]
    WordMismatch { word: Vec<Label>, expected: Vec<Label> },
    #[error("morphism is not defined on the whole {0}-cube")]
    Partial(usize),
    #[error("morphism leaves the target cube")]
    OutOfRange,
    #[error("action map is not injective onto distinct coordinates")]
    ActionsNotInjective,
    #[error("vertex {0:#b} is not sent where the recovered encoding sends it")]
    NotCubical(u64),
    #[error(transparent)]
    Encoding(#[from] EncodingError),
}

/// Partition of the edges into actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionClasses {
    pub class_of: BTreeMap<CellId, usize>,
    pub labels: Vec<Label>,
}

impl ActionClasses {
    pub fn count(&self) -> usize {
        self.labels.len()
    }
}

/// Merges the two opposite edges of every square, in both directions.
pub fn edge_action_classes(k: &PrecubicalSet) -> ActionClasses {
    let edges = k.edges();
    let pos: BTreeMap<CellId, usize> = edges.iter().enumerate().map(|(i, e)| (*e, i)).collect();
    let mut uf = UnionFind::new(edges.len());
    for &z in k.cells_of_dim(2) {
        for i in 0..2 {
            uf.union(pos[&k.face(z, i, false)], pos[&k.face(z, i, true)]);
        }
    }
    let (class, count) = uf.classes();
    let mut labels = vec![None; count];
    for (i, e) in edges.iter().enumerate() {
        labels[class[i]].get_or_insert_with(|| k.label(*e)[0].clone());
    }
    ActionClasses {
        class_of: edges.iter().enumerate().map(|(i, e)| (*e, class[i])).collect(),
        labels: labels.into_iter().map(|l| l.expect("classes are non-empty")).collect(),
    }
}

/// `realize(K)` with the correspondences it was built from.
#[derive(Clone, Debug)]
pub struct Realization {
    pub system: WeakHdts,
    pub state_of: BTreeMap<CellId, StateId>,
    pub action_of: BTreeMap<CellId, ActionId>,
    /// The top transition of every cell of positive dimension.
    pub generators: BTreeSet<Transition>,
}

impl Realization {
    /// Transitions contributed by the coherence closure alone.
    pub fn closure_added(&self) -> usize {
        self.system.transitions().len() - self.generators.len()
    }
}

/// The top transition of a cell: from its source corner to its target
/// corner through the actions of its direction edges.
fn top_transition(
    k: &PrecubicalSet,
    x: CellId,
    state_of: &BTreeMap<CellId, StateId>,
    action_of: &BTreeMap<CellId, ActionId>,
) -> Transition {
    let acts = (0..k.cell(x).dim()).map(|i| action_of[&k.direction_edge(x, i)]).collect();
    Transition::new(state_of[&k.corner(x, false)], acts, state_of[&k.corner(x, true)])
}

pub fn realize(k: &PrecubicalSet) -> Realization {
    let classes = edge_action_classes(k);
    let state_of: BTreeMap<CellId, StateId> =
        k.vertices().iter().enumerate().map(|(i, v)| (*v, StateId(i as u32))).collect();
    let action_of: BTreeMap<CellId, ActionId> =
        classes.class_of.iter().map(|(e, c)| (*e, ActionId(*c as u32))).collect();
    let actions = classes.labels.iter().enumerate().map(|(i, l)| (ActionId(i as u32), l.clone())).collect();
    let generators: BTreeSet<Transition> = (1..=k.dim())
        .flat_map(|n| k.cells_of_dim(n).iter())
        .map(|&x| top_transition(k, x, &state_of, &action_of))
        .collect();
    let states = state_of.values().copied().collect();
    let system = WeakHdts::new(states, actions, coherence_closure(&generators)).expect("realization is well formed");
    Realization { system, state_of, action_of, generators }
}

/// The morphism `realize(K) -> realize(L)` induced by a presheaf map.
pub fn realize_map(map: &BTreeMap<CellId, CellId>, k: &Realization, l: &Realization) -> HdtsMorphism {
    HdtsMorphism {
        state_map: k.state_of.iter().map(|(v, s)| (*s, l.state_of[&map[v]])).collect(),
        action_map: k.action_of.iter().map(|(e, u)| (*u, l.action_of[&map[e]])).collect(),
    }
}

/// The morphism `C_m[f^* word] -> C_n[word]` of a cube map `f`: vertices
/// move by `f`, action `k` goes to the coordinate copying `k`.
pub fn realize_cube_map(
    f: &CubeEncoding,
    source_word: &[Label],
    target_word: &[Label],
) -> Result<HdtsMorphism, RealizeError> {
    let expected = f.pull_word(target_word);
    if expected != source_word {
        return Err(RealizeError::WordMismatch { word: source_word.to_vec(), expected });
    }
    Ok(HdtsMorphism {
        state_map: (0..1u64 << f.source_dim()).map(|e| (StateId(e as u32), StateId(f.apply(e) as u32))).collect(),
        action_map: (0..f.source_dim()).map(|k| (ActionId(k as u32), ActionId(f.fbar(k) as u32))).collect(),
    })
}

/// Recovers the cube map behind a morphism `C_m -> C_n`: coordinates hit by
/// an action copy it, the others are read off the image of `0_m`. Fails if
/// the vertex map disagrees anywhere.
pub fn unrealize_cube_map(g: &HdtsMorphism, m: usize, n: usize) -> Result<CubeEncoding, RealizeError> {
    if g.state_map.len() != 1 << m || g.action_map.len() != m {
        return Err(RealizeError::Partial(m));
    }
    let origin = g.state_map.get(&StateId(0)).ok_or(RealizeError::Partial(m))?.0 as u64;
    if origin >> n != 0 {
        return Err(RealizeError::OutOfRange);
    }
    let mut fhat: Vec<Coord> = (0..n).map(|j| Coord::Const(origin >> j & 1 == 1)).collect();
    for (u, v) in &g.action_map {
        let j = v.0 as usize;
        if j >= n {
            return Err(RealizeError::OutOfRange);
        }
        if matches!(fhat[j], Coord::Proj(_)) {
            return Err(RealizeError::ActionsNotInjective);
        }
        fhat[j] = Coord::Proj(u.0 as usize);
    }
    let f = CubeEncoding::new(m, fhat)?;
    for (s, t) in &g.state_map {
        if f.apply(s.0 as u64) != t.0 as u64 {
            return Err(RealizeError::NotCubical(s.0 as u64));
        }
    }
    Ok(f)
}

/// Whether the realization satisfies the Unique Intermediate State axiom.
pub fn is_strong(k: &PrecubicalSet) -> bool {
    validate(&realize(k).system).uisa
}

/// Whether `K` satisfies the HDA paradigm and realizes to an HDTS.
pub fn in_hda_hdts(k: &PrecubicalSet) -> bool {
    if !hda_check(k).is_empty() {
        return false;
    }
    let r = validate(&realize(k).system);
    r.csa1 && r.uisa
}

/// Summary of the checks on a precubical set.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub strong: bool,
    pub hda: bool,
    pub csa1: bool,
    pub uisa: bool,
    pub witnesses: Vec<serde_json::Value>,
}

pub fn report(k: &PrecubicalSet) -> Report {
    let hda = hda_check(k);
    let axioms = validate(&realize(k).system);
    let mut witnesses: Vec<serde_json::Value> =
        hda.iter().map(|v| serde_json::json!({"axiom": "hda", "p": v.p, "x": v.x, "y": v.y})).collect();
    witnesses.extend(axioms.witnesses.iter().map(|w| serde_json::to_value(w).expect("witnesses serialize")));
    Report { strong: axioms.uisa, hda: hda.is_empty(), csa1: axioms.csa1, uisa: axioms.uisa, witnesses }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hdts::{cube, hom_enumerate, iso_check};
    use crate::label::word;
    use crate::precube::{standard_cube, Builder};

    #[test]
    fn classes_of_cubes() {
        assert_eq!(edge_action_classes(&standard_cube(&word(&["a", "b"]))).count(), 2);
        assert_eq!(edge_action_classes(&standard_cube(&word(&["a", "b", "c"]))).count(), 3);
        let mut b = Builder::new();
        let (u, v, w) = (b.vertex(), b.vertex(), b.vertex());
        b.edge(u, v, &"a".into());
        b.edge(v, w, &"a".into());
        assert_eq!(edge_action_classes(&b.build().unwrap()).count(), 2);
    }

    #[test]
    fn cubes_realize_to_cubes() {
        for w in [vec![], word(&["a"]), word(&["a", "b"]), word(&["a", "a", "b"])] {
            let r = realize(&standard_cube(&w));
            assert!(iso_check(&r.system, &cube(&w)).is_some(), "{w:?}");
            assert_eq!(r.closure_added(), 0);
        }
    }

    #[test]
    fn cube_maps() {
        let ab = word(&["a", "b"]);
        let id = realize_cube_map(&CubeEncoding::identity(2), &ab, &ab).unwrap();
        assert_eq!(id, cube(&ab).identity());

        let d = CubeEncoding::face(2, 1, false);
        let g = realize_cube_map(&d, &word(&["a"]), &ab).unwrap();
        g.check(&cube(&word(&["a"])), &cube(&ab)).unwrap();
        assert_eq!(g.state_map.values().map(|s| s.0).collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(g.action_map[&ActionId(0)], ActionId(0));

        let s = CubeEncoding::sym(2, 0);
        let swap = realize_cube_map(&s, &word(&["b", "a"]), &ab).unwrap();
        swap.check(&cube(&word(&["b", "a"])), &cube(&ab)).unwrap();
        assert_eq!(swap.state_map.values().map(|s| s.0).collect::<Vec<_>>(), vec![0, 2, 1, 3]);
        assert_eq!(unrealize_cube_map(&swap, 2, 2).unwrap(), s);
        assert!(realize_cube_map(&s, &ab, &ab).is_err());
    }

    #[test]
    fn round_trip_into_three_cube() {
        let src = cube(&word(&["a", "b"]));
        let tgt = word(&["a", "b", "c"]);
        let homs = hom_enumerate(&src, &cube(&tgt));
        assert!(!homs.is_empty());
        for g in homs {
            let f = unrealize_cube_map(&g, 2, 3).unwrap();
            assert_eq!(realize_cube_map(&f, &word(&["a", "b"]), &tgt).unwrap(), g);
        }
    }
}
