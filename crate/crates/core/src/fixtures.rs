//! Small named inputs used by the tests and shipped by the CLI.

use std::collections::BTreeMap;

use crate::ccs::{parse, semantics, DEFAULT_UNFOLD_DEPTH};
use crate::hdts::{colimit, cube, d_system, empty_with_action, ActionId, Diagram, HdtsMorphism, WeakHdts};
use crate::label::{word, Alphabet, Label};
use crate::precube::{standard_cube, Builder, CellId, PrecubicalSet};

/// Either kind of payload.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Hdts(WeakHdts),
    Precube(PrecubicalSet),
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub payload: Payload,
}

/// Labels used by every fixture, with `a`/`abar` complementary.
pub fn alphabet() -> Alphabet {
    Alphabet::from_strs(&["a", "abar", "b", "c", "tau", "u", "v", "w", "x"], "tau", &[("a", "abar")])
        .expect("fixture alphabet is valid")
}

/// The not-strong square configuration with its distinguished vertices.
#[derive(Clone, Debug)]
pub struct NotStrong {
    pub set: PrecubicalSet,
    pub alpha: CellId,
    pub nu0: CellId,
    pub nu1: CellId,
    pub nu2: CellId,
    pub beta: CellId,
}

/// Three squares labelled `(u,w)`, `(v,w)` and `(u,v)`. From `α`, the
/// `u`-then-`v` paths to `β` pass through both `ν1` and `ν2`; `ν0` lies on
/// the `v`-then-`u` side.
pub fn not_strong() -> NotStrong {
    let (u, v, w): (Label, Label, Label) = ("u".into(), "v".into(), "w".into());
    let mut b = Builder::new();
    let alpha = b.vertex();
    let nu0 = b.vertex();
    let nu1 = b.vertex();
    let nu2 = b.vertex();
    let beta = b.vertex();
    let u1 = b.edge(alpha, nu1, &u);
    let u2 = b.edge(alpha, nu2, &u);
    let u0 = b.edge(nu0, beta, &u);
    let v1 = b.edge(nu1, beta, &v);
    let v2 = b.edge(nu2, beta, &v);
    let v0 = b.edge(alpha, nu0, &v);
    let wa = b.edge(alpha, alpha, &w);
    let w12 = b.edge(nu1, nu2, &w);
    let wb = b.edge(beta, beta, &w);
    b.square(&u, &w, [wa, w12, u1, u2]);
    b.square(&v, &w, [w12, wb, v1, v2]);
    b.square(&u, &v, [v0, v1, u1, u0]);
    b.initial(alpha);
    NotStrong { set: b.build().expect("fixture is a precubical set"), alpha, nu0, nu1, nu2, beta }
}

/// Two squares filling the same frame.
pub fn double_square() -> PrecubicalSet {
    let (a, bl): (Label, Label) = ("a".into(), "b".into());
    let mut b = Builder::new();
    let v: Vec<CellId> = (0..4).map(|_| b.vertex()).collect();
    // vertex i has bit 0 for the a-coordinate and bit 1 for the b-coordinate
    let a0 = b.edge(v[0], v[1], &a);
    let a1 = b.edge(v[2], v[3], &a);
    let b0 = b.edge(v[0], v[2], &bl);
    let b1 = b.edge(v[1], v[3], &bl);
    b.square(&a, &bl, [b0, b1, a0, a1]);
    b.square(&a, &bl, [b0, b1, a0, a1]);
    b.initial(v[0]);
    b.build().expect("fixture is a precubical set")
}

/// `C1[x] ⊔_x C1[x]`: two edges glued along their shared action only.
pub fn span_glued() -> WeakHdts {
    let x: Label = "x".into();
    let e = cube(std::slice::from_ref(&x));
    let inc =
        HdtsMorphism { state_map: BTreeMap::new(), action_map: [(ActionId(0), ActionId(0))].into_iter().collect() };
    colimit(&Diagram {
        objects: vec![empty_with_action(&x), e.clone(), e],
        arrows: vec![(0, 1, inc.clone()), (0, 2, inc)],
    })
    .expect("span is a diagram")
    .system
}

/// `a.nil || abar.nil`: a filled square with one synchronization edge.
pub fn sync_pair() -> PrecubicalSet {
    let cfg = alphabet();
    let t = parse("a.nil || abar.nil", &cfg).expect("term parses");
    semantics(&t, &cfg, DEFAULT_UNFOLD_DEPTH).expect("term has a semantics").set
}

pub fn all() -> Vec<Fixture> {
    let ab = word(&["a", "b"]);
    vec![
        Fixture {
            name: "Da",
            description: "two parallel a-actions between two states",
            payload: Payload::Hdts(d_system(&"a".into())),
        },
        Fixture { name: "cube_ab", description: "the labelled square", payload: Payload::Precube(standard_cube(&ab)) },
        Fixture {
            name: "cube_ab_hdts",
            description: "the transition system of the square",
            payload: Payload::Hdts(cube(&ab)),
        },
        Fixture {
            name: "doublesquare",
            description: "two squares on one frame",
            payload: Payload::Precube(double_square()),
        },
        Fixture {
            name: "lonely_action",
            description: "one action, no states",
            payload: Payload::Hdts(empty_with_action(&"x".into())),
        },
        Fixture {
            name: "notstrong",
            description: "three squares whose realization has two intermediate states",
            payload: Payload::Precube(not_strong().set),
        },
        Fixture {
            name: "span_glued",
            description: "two x-edges sharing their action",
            payload: Payload::Hdts(span_glued()),
        },
        Fixture {
            name: "sync_pair",
            description: "semantics of a.nil || abar.nil",
            payload: Payload::Precube(sync_pair()),
        },
    ]
}

pub fn get(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_use_the_alphabet() {
        let cfg = alphabet();
        for f in all() {
            let labels: Vec<Label> = match &f.payload {
                Payload::Hdts(x) => x.actions().values().cloned().collect(),
                Payload::Precube(k) => k.edge_labels().into_iter().collect(),
            };
            assert!(labels.iter().all(|l| cfg.contains(l)), "{}", f.name);
        }
    }

    #[test]
    fn not_strong_shape() {
        let k = not_strong().set;
        assert_eq!((k.count(0), k.count(1), k.count(2)), (5, 9, 6));
    }
}
