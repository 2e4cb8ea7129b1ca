use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::colimit::Disjoint;
use super::set::{CellId, PrecubicalSet};
use crate::util::UnionFind;

/// Two distinct cells of dimension `p ≥ 2` filling the same shell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct HdaViolation {
    pub p: usize,
    pub x: u32,
    pub y: u32,
}

/// All pairs of distinct cells of dimension at least 2 with equal faces.
/// Empty exactly when every shell has at most one filler.
pub fn hda_check(k: &PrecubicalSet) -> Vec<HdaViolation> {
    let mut out = Vec::new();
    for p in 2..=k.dim() {
        let mut groups: BTreeMap<Vec<[CellId; 2]>, Vec<CellId>> = BTreeMap::new();
        for &x in k.cells_of_dim(p) {
            groups.entry(k.cell(x).faces.clone()).or_default().push(x);
        }
        for members in groups.values() {
            for (i, x) in members.iter().enumerate() {
                for y in &members[i + 1..] {
                    out.push(HdaViolation { p, x: x.0, y: y.0 });
                }
            }
        }
    }
    out.sort();
    out
}

/// Reflection onto the HDA paradigm: merges cells sharing a shell (together
/// with their symmetric images) until no two fillers remain. Returns the
/// quotient and the quotient map.
pub fn sh_reflect(k: &PrecubicalSet) -> (PrecubicalSet, BTreeMap<CellId, CellId>) {
    let dj = Disjoint::new([k]);
    let ids: Vec<CellId> = k.cells().keys().copied().collect();
    let mut uf = UnionFind::new(dj.len());
    loop {
        dj.congruence(&mut uf);
        let mut merged = false;
        let mut shells: HashMap<Vec<usize>, usize> = HashMap::new();
        for x in 0..dj.len() {
            if dj.labels[x].len() < 2 {
                continue;
            }
            let shell: Vec<usize> = dj.faces[x].iter().flat_map(|p| [uf.find(p[0]), uf.find(p[1])]).collect();
            match shells.get(&shell) {
                Some(&y) => merged |= uf.union(x, y),
                None => {
                    shells.insert(shell, x);
                }
            }
        }
        if !merged {
            break;
        }
    }
    let (set, class, _) = dj.quotient(&mut uf).expect("merging fillers of one shell keeps labels");
    let map: BTreeMap<CellId, CellId> = ids.iter().enumerate().map(|(g, c)| (*c, CellId(class[g] as u32))).collect();
    let initial = k.initial().map(|v| map[&v]);
    (set.with_initial(initial), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::word;
    use crate::precube::standard_cube;

    #[test]
    fn cubes_satisfy_the_paradigm() {
        for w in [vec![], word(&["a"]), word(&["a", "b"]), word(&["a", "a", "b"])] {
            let c = standard_cube(&w);
            assert!(hda_check(&c).is_empty());
            let (r, m) = sh_reflect(&c);
            assert_eq!(r.len(), c.len());
            assert!(m.iter().all(|(a, b)| a == b));
        }
    }
}
