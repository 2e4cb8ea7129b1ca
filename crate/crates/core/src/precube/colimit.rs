use std::collections::{BTreeMap, BTreeSet};

use super::set::{Cell, CellId, PrecubeError, PrecubicalSet};
use crate::label::Label;
use crate::util::UnionFind;

/// A finite diagram of precubical sets and cell maps `(from, to, map)`.
#[derive(Clone, Debug, Default)]
pub struct PresheafDiagram {
    pub objects: Vec<PrecubicalSet>,
    pub arrows: Vec<(usize, usize, BTreeMap<CellId, CellId>)>,
}

#[derive(Clone, Debug)]
pub struct PresheafColimit {
    pub set: PrecubicalSet,
    /// For each object, where its cells land.
    pub cocone: Vec<BTreeMap<CellId, CellId>>,
    /// Merged vertices that carried several distinct decorations; the least
    /// name is kept.
    pub decoration_conflicts: Vec<(CellId, Vec<String>)>,
}

/// The quotient set, the class of each global index, and decoration conflicts.
pub(crate) type Quotient = (PrecubicalSet, Vec<usize>, Vec<(CellId, Vec<String>)>);

/// Cells of a disjoint union, addressed by global index.
pub(crate) struct Disjoint {
    pub faces: Vec<Vec<[usize; 2]>>,
    pub syms: Vec<Vec<usize>>,
    pub labels: Vec<Vec<Label>>,
    pub decoration: Vec<Option<String>>,
    /// Global index of each (object, cell).
    pub index: Vec<BTreeMap<CellId, usize>>,
}

impl Disjoint {
    pub fn new<'a>(objects: impl IntoIterator<Item = &'a PrecubicalSet>) -> Self {
        let mut d = Disjoint { faces: vec![], syms: vec![], labels: vec![], decoration: vec![], index: vec![] };
        let objects: Vec<&PrecubicalSet> = objects.into_iter().collect();
        let mut next = 0;
        for k in &objects {
            let idx: BTreeMap<CellId, usize> = k
                .cells()
                .keys()
                .map(|c| {
                    next += 1;
                    (*c, next - 1)
                })
                .collect();
            d.index.push(idx);
        }
        for (o, k) in objects.iter().enumerate() {
            let idx = &d.index[o];
            for (id, c) in k.cells() {
                d.faces.push(c.faces.iter().map(|p| [idx[&p[0]], idx[&p[1]]]).collect());
                d.syms.push(c.syms.iter().map(|s| idx[s]).collect());
                d.labels.push(c.label.clone());
                d.decoration.push(k.decoration().get(id).cloned());
            }
        }
        d
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    /// Closes `uf` under faces and symmetries: merged cells get merged faces
    /// and merged symmetric images.
    pub fn congruence(&self, uf: &mut UnionFind) {
        loop {
            let mut changed = false;
            for x in 0..self.len() {
                let r = uf.find(x);
                if r == x {
                    continue;
                }
                for (fx, fr) in self.faces[x].iter().zip(&self.faces[r]) {
                    changed |= uf.union(fx[0], fr[0]);
                    changed |= uf.union(fx[1], fr[1]);
                }
                for (sx, sr) in self.syms[x].iter().zip(&self.syms[r]) {
                    changed |= uf.union(*sx, *sr);
                }
            }
            if !changed {
                return;
            }
        }
    }

    /// The quotient by a congruence, with new ids numbered by class.
    pub fn quotient(&self, uf: &mut UnionFind) -> Result<Quotient, PrecubeError> {
        let (class, count) = uf.classes();
        let mut reps: Vec<Option<usize>> = vec![None; count];
        let mut decos: Vec<BTreeSet<String>> = vec![BTreeSet::new(); count];
        for (x, &c) in class.iter().enumerate() {
            match reps[c] {
                None => reps[c] = Some(x),
                Some(r) if self.labels[r] != self.labels[x] => {
                    return Err(PrecubeError::Label(CellId(c as u32), "merged cells".into()))
                }
                _ => {}
            }
            if let Some(d) = &self.decoration[x] {
                decos[c].insert(d.clone());
            }
        }
        let mut cells = BTreeMap::new();
        let mut decoration = BTreeMap::new();
        let mut conflicts = Vec::new();
        for (c, r) in reps.iter().enumerate() {
            let r = r.expect("classes are non-empty");
            let faces =
                self.faces[r].iter().map(|p| [CellId(class[p[0]] as u32), CellId(class[p[1]] as u32)]).collect();
            let syms = self.syms[r].iter().map(|s| CellId(class[*s] as u32)).collect();
            cells.insert(CellId(c as u32), Cell { faces, syms, label: self.labels[r].clone() });
            if let Some(first) = decos[c].iter().next() {
                decoration.insert(CellId(c as u32), first.clone());
                if decos[c].len() > 1 {
                    conflicts.push((CellId(c as u32), decos[c].iter().cloned().collect()));
                }
            }
        }
        let set = PrecubicalSet::new(cells, decoration, None)?;
        Ok((set, class, conflicts))
    }
}

/// Colimit of a finite diagram, computed dimensionwise on cells.
pub fn colimit_presheaf(d: &PresheafDiagram) -> Result<PresheafColimit, PrecubeError> {
    for (from, to, map) in &d.arrows {
        d.objects[*from].check_map(&d.objects[*to], map)?;
    }
    let dj = Disjoint::new(&d.objects);
    let mut uf = UnionFind::new(dj.len());
    for (from, to, map) in &d.arrows {
        for (x, y) in map {
            uf.union(dj.index[*from][x], dj.index[*to][y]);
        }
    }
    dj.congruence(&mut uf);
    let (set, class, decoration_conflicts) = dj.quotient(&mut uf)?;
    let cocone = dj.index.iter().map(|idx| idx.iter().map(|(c, g)| (*c, CellId(class[*g] as u32))).collect()).collect();
    Ok(PresheafColimit { set, cocone, decoration_conflicts })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::word;
    use crate::precube::{boundary, standard_cube};

    fn inclusion(k: &PrecubicalSet) -> BTreeMap<CellId, CellId> {
        k.cells().keys().map(|c| (*c, *c)).collect()
    }

    #[test]
    fn coproduct_of_edges() {
        let e = standard_cube(&word(&["a"]));
        let c = colimit_presheaf(&PresheafDiagram { objects: vec![e.clone(), e], arrows: vec![] }).unwrap();
        assert_eq!((c.set.count(0), c.set.count(1)), (4, 2));
    }

    #[test]
    fn double_square() {
        let w = word(&["a", "b"]);
        let sq = standard_cube(&w);
        let b = boundary(&w);
        let inc = inclusion(&b);
        let c = colimit_presheaf(&PresheafDiagram {
            objects: vec![b, sq.clone(), sq],
            arrows: vec![(0, 1, inc.clone()), (0, 2, inc)],
        })
        .unwrap();
        assert_eq!((c.set.count(0), c.set.count(1), c.set.count(2)), (4, 4, 4));
    }

    #[test]
    fn wedge_of_edges() {
        let e = standard_cube(&word(&["a"]));
        let point = standard_cube(&[]);
        let src = e.corner(e.edges()[0], false);
        let m: BTreeMap<CellId, CellId> = [(point.vertices()[0], src)].into_iter().collect();
        let c = colimit_presheaf(&PresheafDiagram {
            objects: vec![point, e.clone(), e],
            arrows: vec![(0, 1, m.clone()), (0, 2, m)],
        })
        .unwrap();
        assert_eq!((c.set.count(0), c.set.count(1)), (3, 2));
    }
}
