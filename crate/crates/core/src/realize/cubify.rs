use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{realize, realize_cube_map, Realization};
use crate::hdts::multiset::orderings;
use crate::hdts::{cube, ActionId, HdtsMorphism, StateId, TransitionIndex, WeakHdts};
use crate::label::Label;
use crate::precube::{Cell, CellId, CubeEncoding, PrecubicalSet};

/// Actions occurring in some 1-transition.
pub fn used_actions(x: &WeakHdts) -> BTreeSet<ActionId> {
    x.transitions().iter().filter(|t| t.dim() == 1).map(|t| t.acts[0]).collect()
}

/// Every morphism `C_n[w] -> X`, for all words `w`, with its word.
///
/// A map is fixed by the image of the top transition together with an
/// ordering of its actions; the remaining vertices are searched among the
/// states reachable from the image of `0_n` and reaching the image of `1_n`.
pub fn cube_maps_into(n: usize, x: &WeakHdts) -> Vec<(Vec<Label>, HdtsMorphism)> {
    if n == 0 {
        return x
            .states()
            .iter()
            .map(|s| {
                (
                    vec![],
                    HdtsMorphism { state_map: [(StateId(0), *s)].into_iter().collect(), action_map: BTreeMap::new() },
                )
            })
            .collect();
    }
    let idx = TransitionIndex::new(x.transitions());
    let full = (1u64 << n) - 1;
    let mut cubes: HashMap<Vec<Label>, WeakHdts> = HashMap::new();
    let mut out = Vec::new();
    for t in x.transitions().iter().filter(|t| t.dim() == n) {
        for acts in orderings(&t.acts) {
            let word: Vec<Label> = acts.iter().map(|u| x.label(*u).expect("actions are labelled").clone()).collect();
            let pick = |eps: u64| -> Vec<ActionId> {
                let mut v: Vec<ActionId> = (0..n).filter(|k| eps >> k & 1 == 1).map(|k| acts[k]).collect();
                v.sort();
                v
            };
            let candidates: Vec<Vec<StateId>> = (0..=full)
                .map(|eps| {
                    if eps == 0 {
                        vec![t.src]
                    } else if eps == full {
                        vec![t.tgt]
                    } else {
                        let from = idx.targets(t.src, &pick(eps));
                        let to = idx.sources(&pick(full & !eps), t.tgt);
                        from.intersection(to).copied().collect()
                    }
                })
                .collect();
            let domain = cubes.entry(word.clone()).or_insert_with(|| cube(&word));
            let action_map: BTreeMap<ActionId, ActionId> =
                acts.iter().enumerate().map(|(k, u)| (ActionId(k as u32), *u)).collect();
            let mut choice = Vec::with_capacity(candidates.len());
            assign(&candidates, &mut choice, &mut |states: &[StateId]| {
                let g = HdtsMorphism {
                    state_map: states.iter().enumerate().map(|(e, s)| (StateId(e as u32), *s)).collect(),
                    action_map: action_map.clone(),
                };
                if g.check(domain, x).is_ok() {
                    out.push((word.clone(), g));
                }
            });
        }
    }
    out
}

fn assign(candidates: &[Vec<StateId>], cur: &mut Vec<StateId>, emit: &mut dyn FnMut(&[StateId])) {
    if cur.len() == candidates.len() {
        emit(cur);
        return;
    }
    for s in &candidates[cur.len()] {
        cur.push(*s);
        assign(candidates, cur, emit);
        cur.pop();
    }
}

/// The cubification of a weak HDTS.
#[derive(Clone, Debug)]
pub struct Cubification {
    /// One n-cell per morphism from an n-cube.
    pub cub_pre: PrecubicalSet,
    pub cells: BTreeMap<CellId, (Vec<Label>, HdtsMorphism)>,
    /// `realize(cub_pre)`.
    pub realization: Realization,
    /// The comparison map `cub(X) -> X`.
    pub p: HdtsMorphism,
}

impl Cubification {
    pub fn system(&self) -> &WeakHdts {
        &self.realization.system
    }

    /// Whether `p` is one-to-one and onto on states.
    pub fn bijective_on_states(&self, x: &WeakHdts) -> bool {
        let image: BTreeSet<StateId> = self.p.state_map.values().copied().collect();
        image.len() == self.p.state_map.len() && &image == x.states()
    }

    /// Whether `p` is an isomorphism onto `x`.
    pub fn p_is_iso(&self, x: &WeakHdts) -> bool {
        if self.p.check(self.system(), x).is_err() || !self.bijective_on_states(x) {
            return false;
        }
        let actions: BTreeSet<ActionId> = self.p.action_map.values().copied().collect();
        if actions.len() != self.p.action_map.len() || actions.len() != x.actions().len() {
            return false;
        }
        let inverse = HdtsMorphism {
            state_map: self.p.state_map.iter().map(|(a, b)| (*b, *a)).collect(),
            action_map: self.p.action_map.iter().map(|(a, b)| (*b, *a)).collect(),
        };
        inverse.check(x, self.system()).is_ok()
    }
}

pub fn cubify(x: &WeakHdts) -> Cubification {
    let mut maps: Vec<(Vec<Label>, HdtsMorphism)> = Vec::new();
    for n in 0..=x.max_dim() {
        maps.extend(cube_maps_into(n, x));
    }
    let id_of: HashMap<&HdtsMorphism, CellId> =
        maps.iter().enumerate().map(|(i, (_, g))| (g, CellId(i as u32))).collect();
    let mut cells = BTreeMap::new();
    for (i, (w, g)) in maps.iter().enumerate() {
        let n = w.len();
        let restrict = |f: CubeEncoding| {
            let h = realize_cube_map(&f, &f.pull_word(w), w).expect("words agree").then(g);
            id_of[&h]
        };
        let faces = (0..n).map(|i| [false, true].map(|a| restrict(CubeEncoding::face(n, i, a)))).collect();
        let syms = (0..n.saturating_sub(1)).map(|i| restrict(CubeEncoding::sym(n, i))).collect();
        cells.insert(CellId(i as u32), Cell { faces, syms, label: w.clone() });
    }
    let cub_pre = PrecubicalSet::new(cells, BTreeMap::new(), None).expect("cube maps form a precubical set");
    let realization = realize(&cub_pre);
    let cell_maps: BTreeMap<CellId, (Vec<Label>, HdtsMorphism)> =
        maps.into_iter().enumerate().map(|(i, m)| (CellId(i as u32), m)).collect();
    let p = HdtsMorphism {
        state_map: realization.state_of.iter().map(|(v, s)| (*s, cell_maps[v].1.state_map[&StateId(0)])).collect(),
        action_map: realization.action_of.iter().map(|(e, u)| (*u, cell_maps[e].1.action_map[&ActionId(0)])).collect(),
    };
    Cubification { cub_pre, cells: cell_maps, realization, p }
}
