//! Enumeration of label-preserving presheaf maps by backtracking over cells
//! in order of dimension.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::set::{CellId, PrecubicalSet};
use crate::label::Label;

#[derive(Clone, Copy, Debug, Default)]
struct Options {
    injective: bool,
    pointed: bool,
}

struct Search<'a> {
    k: &'a PrecubicalSet,
    l: &'a PrecubicalSet,
    opts: Options,
    /// Cells of `k`, highest dimension first.
    order: Vec<CellId>,
    pos: HashMap<CellId, usize>,
    by_shape: HashMap<(usize, Vec<Label>), Vec<CellId>>,
    val: Vec<Option<CellId>>,
    trail: Vec<usize>,
    used: BTreeSet<CellId>,
}

impl<'a> Search<'a> {
    fn new(k: &'a PrecubicalSet, l: &'a PrecubicalSet, opts: Options) -> Self {
        let order: Vec<CellId> = (0..=k.dim()).rev().flat_map(|n| k.cells_of_dim(n).iter().copied()).collect();
        let pos = order.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut by_shape: HashMap<(usize, Vec<Label>), Vec<CellId>> = HashMap::new();
        for (id, c) in l.cells() {
            by_shape.entry((c.dim(), c.label.clone())).or_default().push(*id);
        }
        Search {
            k,
            l,
            opts,
            val: vec![None; order.len()],
            order,
            pos,
            by_shape,
            trail: Vec::new(),
            used: BTreeSet::new(),
        }
    }

    fn vertex_ok(&self, x: CellId, y: CellId) -> bool {
        if !self.opts.pointed {
            return true;
        }
        let init_ok = match (self.k.initial(), self.l.initial()) {
            (Some(a), Some(b)) => (x == a) == (y == b) || (!self.opts.injective && x != a),
            (Some(a), None) => x != a,
            _ => true,
        };
        init_ok && self.k.decoration().get(&x) == self.l.decoration().get(&y)
    }

    /// Sends `x` to `y` and, recursively, its faces and symmetric images to
    /// those of `y`. Returns false on the first conflict; the caller undoes
    /// the trail.
    fn assign(&mut self, x: CellId, y: CellId) -> bool {
        let i = self.pos[&x];
        if let Some(z) = self.val[i] {
            return z == y;
        }
        let (cx, cy) = (self.k.cell(x), self.l.cell(y));
        if cx.dim() != cy.dim() || cx.label != cy.label {
            return false;
        }
        if cx.dim() == 0 && !self.vertex_ok(x, y) {
            return false;
        }
        if self.opts.injective && !self.used.insert(y) {
            return false;
        }
        self.val[i] = Some(y);
        self.trail.push(i);
        let faces = cx.faces.iter().zip(&cy.faces).flat_map(|(fx, fy)| [(fx[0], fy[0]), (fx[1], fy[1])]);
        let pairs: Vec<(CellId, CellId)> = faces.chain(cx.syms.iter().copied().zip(cy.syms.iter().copied())).collect();
        pairs.into_iter().all(|(a, b)| self.assign(a, b))
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().expect("trail is longer than mark");
            if let Some(y) = self.val[i].take() {
                if self.opts.injective {
                    self.used.remove(&y);
                }
            }
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&BTreeMap<CellId, CellId>) -> bool) -> bool {
        self.step(0, visit)
    }

    fn step(&mut self, from: usize, visit: &mut dyn FnMut(&BTreeMap<CellId, CellId>) -> bool) -> bool {
        let Some(i) = (from..self.order.len()).find(|i| self.val[*i].is_none()) else {
            let m: BTreeMap<CellId, CellId> =
                self.order.iter().copied().zip(self.val.iter().map(|y| y.expect("all cells assigned"))).collect();
            return visit(&m);
        };
        let x = self.order[i];
        let cx = self.k.cell(x);
        let cands = self.by_shape.get(&(cx.dim(), cx.label.clone())).cloned().unwrap_or_default();
        for y in cands {
            let mark = self.trail.len();
            let ok = self.assign(x, y);
            let go_on = !ok || self.step(i + 1, visit);
            self.undo(mark);
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Every label-preserving presheaf map `k -> l`.
pub fn presheaf_homs(k: &PrecubicalSet, l: &PrecubicalSet) -> Vec<BTreeMap<CellId, CellId>> {
    let mut out = Vec::new();
    Search::new(k, l, Options::default()).run(&mut |m| {
        out.push(m.clone());
        true
    });
    out
}

pub fn presheaf_hom_count(k: &PrecubicalSet, l: &PrecubicalSet) -> usize {
    let mut n = 0;
    Search::new(k, l, Options::default()).run(&mut |_| {
        n += 1;
        true
    });
    n
}

/// An isomorphism `k -> l`; with `pointed`, it must also match initial
/// vertices and decorations.
pub fn presheaf_iso(k: &PrecubicalSet, l: &PrecubicalSet, pointed: bool) -> Option<BTreeMap<CellId, CellId>> {
    if k.dim() != l.dim() || (0..=k.dim()).any(|n| k.count(n) != l.count(n)) {
        return None;
    }
    if pointed && (k.initial().is_some() != l.initial().is_some() || k.decoration().len() != l.decoration().len()) {
        return None;
    }
    let mut found = None;
    Search::new(k, l, Options { injective: true, pointed }).run(&mut |m| {
        found = Some(m.clone());
        false
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::word;
    use crate::precube::standard_cube;

    #[test]
    fn maps_between_cubes() {
        let e = standard_cube(&word(&["a"]));
        let sq = standard_cube(&word(&["a", "b"]));
        assert_eq!(presheaf_hom_count(&e, &sq), 2);
        assert_eq!(presheaf_hom_count(&sq, &sq), 1);
        let aa = standard_cube(&word(&["a", "a"]));
        assert_eq!(presheaf_hom_count(&aa, &aa), 2);
        assert!(presheaf_iso(&sq, &standard_cube(&word(&["b", "a"])), false).is_some());
        assert!(presheaf_iso(&e, &standard_cube(&word(&["b"])), false).is_none());
    }
}
