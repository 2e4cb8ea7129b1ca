use std::collections::BTreeMap;

use super::encoding::{compose, CubeEncoding};
use super::set::{Cell, CellId, PrecubicalSet};
use crate::label::Label;

/// `□[word]` together with the encoding behind each cell.
#[derive(Clone, Debug)]
pub struct StandardCube {
    pub set: PrecubicalSet,
    pub word: Vec<Label>,
    pub cell_of: BTreeMap<CubeEncoding, CellId>,
    pub encoding_of: BTreeMap<CellId, CubeEncoding>,
}

impl StandardCube {
    pub fn new(word: &[Label]) -> Self {
        let n = word.len();
        let mut cell_of = BTreeMap::new();
        let mut encoding_of = BTreeMap::new();
        let mut next = 0u32;
        for m in 0..=n {
            for f in CubeEncoding::all(m, n) {
                cell_of.insert(f.clone(), CellId(next));
                encoding_of.insert(CellId(next), f);
                next += 1;
            }
        }
        let mut cells = BTreeMap::new();
        for (id, f) in &encoding_of {
            let m = f.source_dim();
            let faces =
                (0..m).map(|i| [false, true].map(|a| cell_of[&compose(&CubeEncoding::face(m, i, a), f)])).collect();
            let syms = (0..m.saturating_sub(1)).map(|i| cell_of[&compose(&CubeEncoding::sym(m, i), f)]).collect();
            cells.insert(*id, Cell { faces, syms, label: f.pull_word(word) });
        }
        let set = PrecubicalSet::new_unchecked(cells, BTreeMap::new(), None);
        StandardCube { set, word: word.to_vec(), cell_of, encoding_of }
    }

    /// The top cell (the identity encoding).
    pub fn top(&self) -> CellId {
        self.cell_of[&CubeEncoding::identity(self.word.len())]
    }

    /// The vertex `ε`.
    pub fn vertex(&self, eps: u64) -> CellId {
        self.cell_of[&CubeEncoding::vertex(self.word.len(), eps)]
    }

    /// Cell map `□[f^* word] -> □[word]` induced by `f`, restricted to the
    /// cells of `source` (which may be a truncation of that cube).
    pub fn induced_map(source: &StandardCube, target: &StandardCube, f: &CubeEncoding) -> BTreeMap<CellId, CellId> {
        source
            .encoding_of
            .iter()
            .filter(|(id, _)| source.set.contains(**id))
            .map(|(id, c)| (*id, target.cell_of[&compose(c, f)]))
            .collect()
    }

    /// Keeps only cells of dimension at most `n`.
    pub fn truncated(mut self, n: usize) -> Self {
        self.set = self.set.truncate(n);
        self.cell_of.retain(|f, _| f.source_dim() <= n);
        self.encoding_of.retain(|_, f| f.source_dim() <= n);
        self
    }
}

/// `□[word]`: one m-cell per encoding `[m] -> [n]`.
pub fn standard_cube(word: &[Label]) -> PrecubicalSet {
    StandardCube::new(word).set
}

/// `∂□[word]`: the standard cube without its top-dimensional cells.
pub fn boundary(word: &[Label]) -> PrecubicalSet {
    match word.len() {
        0 => PrecubicalSet::empty(),
        n => standard_cube(word).truncate(n - 1),
    }
}

/// Drops cells above dimension `n`.
pub fn truncate(k: &PrecubicalSet, n: usize) -> PrecubicalSet {
    k.truncate(n)
}
