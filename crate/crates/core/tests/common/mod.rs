#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hdts::hdts::{ActionId, StateId, Transition, WeakHdts};
use hdts::precube::{colimit_presheaf, standard_cube, PrecubicalSet, PresheafDiagram};
use hdts::realize::realize;
use hdts::{Alphabet, Label};

pub fn alphabet() -> Alphabet {
    Alphabet::from_strs(&["a", "abar", "b", "c", "tau"], "tau", &[("a", "abar")]).unwrap()
}

pub fn words(n: usize, letters: &[&str]) -> Vec<Vec<Label>> {
    let mut out: Vec<Vec<Label>> = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|w| {
                letters.iter().map(move |l| {
                    let mut w = w.clone();
                    w.push(Label::new(l));
                    w
                })
            })
            .collect();
    }
    out
}

/// A random set of transitions over at most six states and actions
/// labelled `a` or `b`.
pub fn random_raw(rng: &mut ChaCha8Rng) -> WeakHdts {
    let n_states = rng.gen_range(1..=6u32);
    let n_actions = rng.gen_range(1..=3u32);
    let actions: BTreeMap<ActionId, Label> =
        (0..n_actions).map(|u| (ActionId(u), Label::new(if rng.gen_bool(0.5) { "a" } else { "b" }))).collect();
    let mut ts = BTreeSet::new();
    for _ in 0..rng.gen_range(1..=6) {
        let size = rng.gen_range(1..=3);
        let acts = (0..size).map(|_| ActionId(rng.gen_range(0..n_actions))).collect();
        ts.insert(Transition::new(StateId(rng.gen_range(0..n_states)), acts, StateId(rng.gen_range(0..n_states))));
    }
    WeakHdts::new((0..n_states).map(StateId).collect(), actions, ts).unwrap()
}

pub fn random_closed(rng: &mut ChaCha8Rng) -> WeakHdts {
    random_raw(rng).closed()
}

/// One or two cubes of dimension at most 2 over `{a, b}`, glued at random
/// vertices, with at most six vertices left.
pub fn random_glued(rng: &mut ChaCha8Rng) -> PrecubicalSet {
    loop {
        let k = glued_attempt(rng);
        if k.count(0) <= 6 {
            return k;
        }
    }
}

fn glued_attempt(rng: &mut ChaCha8Rng) -> PrecubicalSet {
    let letters = ["a", "b"];
    let mut objects: Vec<PrecubicalSet> = Vec::new();
    for _ in 0..rng.gen_range(1..=2) {
        let w: Vec<Label> = (0..rng.gen_range(0..=2)).map(|_| Label::new(letters.choose(rng).unwrap())).collect();
        objects.push(standard_cube(&w));
    }
    let total: usize = objects.iter().map(|k| k.count(0)).sum();
    let min_glue = total.saturating_sub(6);
    let glue = rng.gen_range(min_glue..=min_glue + 2);
    let all: Vec<(usize, _)> =
        objects.iter().enumerate().flat_map(|(i, k)| k.vertices().iter().map(move |v| (i, *v))).collect();
    let point = standard_cube(&[]);
    let p = point.vertices()[0];
    let mut d = PresheafDiagram { objects, arrows: vec![] };
    for _ in 0..glue {
        let (i, x) = *all.choose(rng).unwrap();
        let (j, y) = *all.choose(rng).unwrap();
        let k = d.objects.len();
        d.objects.push(point.clone());
        d.arrows.push((k, i, [(p, x)].into_iter().collect()));
        d.arrows.push((k, j, [(p, y)].into_iter().collect()));
    }
    colimit_presheaf(&d).unwrap().set
}

/// Seeded mix of closed random systems and realizations of glued cubes.
pub fn corpus(seed: u64, size: usize) -> Vec<WeakHdts> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..size)
        .map(|i| if i % 2 == 0 { random_closed(&mut rng) } else { realize(&random_glued(&mut rng)).system })
        .collect()
}
