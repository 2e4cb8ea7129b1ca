use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::encoding::{Coord, CubeEncoding};
use crate::label::Label;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellId(pub u32);

impl fmt::Debug for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}", self.0)
    }
}

/// One cell. Its dimension is the length of its label word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    /// `faces[i][α]` is `∂_{i+1}^α`.
    pub faces: Vec<[CellId; 2]>,
    /// `syms[i]` is `s_{i+1}`; empty below dimension 2.
    pub syms: Vec<CellId>,
    pub label: Vec<Label>,
}

impl Cell {
    pub fn dim(&self) -> usize {
        self.label.len()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrecubeError {
    #[error("cell {0:?} refers to missing cell {1:?}")]
    MissingCell(CellId, CellId),
    #[error("cell {cell:?} of dimension {dim} has {got} {what}, expected {expected}")]
    Arity { cell: CellId, dim: usize, what: &'static str, got: usize, expected: usize },
    #[error("cell {0:?}: {1} has the wrong dimension")]
    WrongDim(CellId, String),
    #[error("cell {0:?}: label of {1} is inconsistent")]
    Label(CellId, String),
    #[error("cell {0:?} violates {1}")]
    Relation(CellId, String),
    #[error("{0:?} is decorated but is not a vertex")]
    DecorationNotVertex(CellId),
    #[error("initial cell {0:?} is not a vertex")]
    InitialNotVertex(CellId),
    #[error("map does not send {0:?} anywhere")]
    Unmapped(CellId),
    #[error("map sends {0:?} to a missing cell")]
    MapOutOfRange(CellId),
    #[error("map does not commute with {1} at {0:?}")]
    MapNotNatural(CellId, String),
    #[error("map changes the label of {0:?}")]
    MapLabel(CellId),
    #[error("operation requires dimension at most {max}, found a cell of dimension {found}")]
    TooHighDim { max: usize, found: usize },
    #[error("vertex identification is not a bijection onto [{0}]")]
    NotBijective(usize),
    #[error("label `{0}` is not in the alphabet")]
    UnknownLabel(String),
}

/// A finite labelled symmetric precubical set with optional vertex
/// decorations and an optional initial vertex.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PrecubicalSet {
    cells: BTreeMap<CellId, Cell>,
    by_dim: Vec<Vec<CellId>>,
    decoration: BTreeMap<CellId, String>,
    initial: Option<CellId>,
}

impl PrecubicalSet {
    /// Builds and validates every presheaf relation cellwise.
    pub fn new(
        cells: BTreeMap<CellId, Cell>,
        decoration: BTreeMap<CellId, String>,
        initial: Option<CellId>,
    ) -> Result<Self, PrecubeError> {
        let k = Self::assemble(cells, decoration, initial);
        k.validate()?;
        Ok(k)
    }

    /// For constructions that keep the relations by design; validated in
    /// debug builds only.
    pub(crate) fn new_unchecked(
        cells: BTreeMap<CellId, Cell>,
        decoration: BTreeMap<CellId, String>,
        initial: Option<CellId>,
    ) -> Self {
        let k = Self::assemble(cells, decoration, initial);
        debug_assert!(k.validate().is_ok(), "{:?}", k.validate());
        k
    }

    fn assemble(cells: BTreeMap<CellId, Cell>, decoration: BTreeMap<CellId, String>, initial: Option<CellId>) -> Self {
        let mut by_dim: Vec<Vec<CellId>> = Vec::new();
        for (id, c) in &cells {
            if by_dim.len() <= c.dim() {
                by_dim.resize(c.dim() + 1, Vec::new());
            }
            by_dim[c.dim()].push(*id);
        }
        PrecubicalSet { cells, by_dim, decoration, initial }
    }

    pub fn empty() -> Self {
        PrecubicalSet::default()
    }

    pub fn cells(&self) -> &BTreeMap<CellId, Cell> {
        &self.cells
    }

    pub fn cell(&self, x: CellId) -> &Cell {
        &self.cells[&x]
    }

    pub fn contains(&self, x: CellId) -> bool {
        self.cells.contains_key(&x)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Highest dimension of a cell; 0 for the empty set.
    pub fn dim(&self) -> usize {
        self.by_dim.len().saturating_sub(1)
    }

    pub fn cells_of_dim(&self, n: usize) -> &[CellId] {
        self.by_dim.get(n).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn count(&self, n: usize) -> usize {
        self.cells_of_dim(n).len()
    }

    pub fn vertices(&self) -> &[CellId] {
        self.cells_of_dim(0)
    }

    pub fn edges(&self) -> &[CellId] {
        self.cells_of_dim(1)
    }

    pub fn label(&self, x: CellId) -> &[Label] {
        &self.cells[&x].label
    }

    pub fn decoration(&self) -> &BTreeMap<CellId, String> {
        &self.decoration
    }

    pub fn initial(&self) -> Option<CellId> {
        self.initial
    }

    pub fn with_initial(mut self, v: Option<CellId>) -> Self {
        assert!(v.is_none_or(|v| self.cells.get(&v).is_some_and(|c| c.dim() == 0)));
        self.initial = v;
        self
    }

    pub fn with_decoration(mut self, decoration: BTreeMap<CellId, String>) -> Self {
        assert!(decoration.keys().all(|v| self.cells.get(v).is_some_and(|c| c.dim() == 0)));
        self.decoration = decoration;
        self
    }

    pub fn set_decoration(&mut self, v: CellId, name: String) {
        assert_eq!(self.cells[&v].dim(), 0);
        self.decoration.insert(v, name);
    }

    /// `∂_{i+1}^α x`.
    pub fn face(&self, x: CellId, i: usize, alpha: bool) -> CellId {
        self.cells[&x].faces[i][alpha as usize]
    }

    /// `s_{i+1} x`.
    pub fn sym(&self, x: CellId, i: usize) -> CellId {
        self.cells[&x].syms[i]
    }

    /// Source (`α = false`) or target corner of a cell.
    pub fn corner(&self, x: CellId, alpha: bool) -> CellId {
        let mut y = x;
        while self.cells[&y].dim() > 0 {
            y = self.face(y, 0, alpha);
        }
        y
    }

    /// `f^* x` for an n-cell `x` and an encoding `f: [m] -> [n]`.
    pub fn act(&self, x: CellId, f: &CubeEncoding) -> CellId {
        assert_eq!(self.cells[&x].dim(), f.target_dim(), "encoding does not end at the cell's dimension");
        let mut y = x;
        for (j, c) in f.fhat().iter().enumerate().rev() {
            if let Coord::Const(alpha) = *c {
                y = self.face(y, j, alpha);
            }
        }
        let mut perm: Vec<usize> =
            f.fhat().iter().filter_map(|c| if let Coord::Proj(k) = c { Some(*k) } else { None }).collect();
        while let Some(i) = (0..perm.len().saturating_sub(1)).find(|&i| perm[i] > perm[i + 1]) {
            y = self.sym(y, i);
            perm.swap(i, i + 1);
        }
        y
    }

    /// The edge of `x` in direction `i` starting at the source corner.
    pub fn direction_edge(&self, x: CellId, i: usize) -> CellId {
        let n = self.cells[&x].dim();
        let fhat = (0..n).map(|j| if j == i { Coord::Proj(0) } else { Coord::Const(false) }).collect();
        self.act(x, &CubeEncoding::new(1, fhat).expect("valid edge encoding"))
    }

    /// Drops every cell of dimension above `n`.
    pub fn truncate(&self, n: usize) -> PrecubicalSet {
        let cells = self.cells.iter().filter(|(_, c)| c.dim() <= n).map(|(id, c)| (*id, c.clone())).collect();
        PrecubicalSet::new_unchecked(cells, self.decoration.clone(), self.initial)
    }

    /// Checks every relation, label rule and reference.
    pub fn validate(&self) -> Result<(), PrecubeError> {
        for (&id, c) in &self.cells {
            let n = c.dim();
            if c.faces.len() != n {
                return Err(PrecubeError::Arity {
                    cell: id,
                    dim: n,
                    what: "face pairs",
                    got: c.faces.len(),
                    expected: n,
                });
            }
            let nsyms = n.saturating_sub(1);
            if c.syms.len() != nsyms {
                return Err(PrecubeError::Arity {
                    cell: id,
                    dim: n,
                    what: "symmetries",
                    got: c.syms.len(),
                    expected: nsyms,
                });
            }
            for (i, pair) in c.faces.iter().enumerate() {
                for (a, f) in pair.iter().enumerate() {
                    let fc = self.cells.get(f).ok_or(PrecubeError::MissingCell(id, *f))?;
                    let name = format!("face ({},{})", i + 1, a);
                    if fc.dim() + 1 != n {
                        return Err(PrecubeError::WrongDim(id, name));
                    }
                    let mut expect = c.label.clone();
                    expect.remove(i);
                    if fc.label != expect {
                        return Err(PrecubeError::Label(id, name));
                    }
                }
            }
            for (i, s) in c.syms.iter().enumerate() {
                let sc = self.cells.get(s).ok_or(PrecubeError::MissingCell(id, *s))?;
                let name = format!("symmetry {}", i + 1);
                if sc.dim() != n {
                    return Err(PrecubeError::WrongDim(id, name));
                }
                let mut expect = c.label.clone();
                expect.swap(i, i + 1);
                if sc.label != expect {
                    return Err(PrecubeError::Label(id, name));
                }
            }
        }
        for &id in self.cells.keys() {
            self.check_relations(id)?;
        }
        for v in self.decoration.keys() {
            if self.cells.get(v).is_none_or(|c| c.dim() != 0) {
                return Err(PrecubeError::DecorationNotVertex(*v));
            }
        }
        if let Some(v) = self.initial {
            if self.cells.get(&v).is_none_or(|c| c.dim() != 0) {
                return Err(PrecubeError::InitialNotVertex(v));
            }
        }
        Ok(())
    }

    fn check_relations(&self, x: CellId) -> Result<(), PrecubeError> {
        let n = self.cells[&x].dim();
        let fail = |what: String| Err(PrecubeError::Relation(x, what));
        for j in 0..n {
            for i in 0..j {
                for a in [false, true] {
                    for b in [false, true] {
                        let lhs = self.face(self.face(x, j, b), i, a);
                        let rhs = self.face(self.face(x, i, a), j - 1, b);
                        if lhs != rhs {
                            return fail(format!(
                                "∂{}^{}∂{}^{} = ∂{}^{}∂{}^{}",
                                i + 1,
                                a as u8,
                                j + 1,
                                b as u8,
                                j,
                                b as u8,
                                i + 1,
                                a as u8
                            ));
                        }
                    }
                }
            }
        }
        if n < 2 {
            return Ok(());
        }
        for i in 0..n - 1 {
            let si = self.sym(x, i);
            if self.sym(si, i) != x {
                return fail(format!("s{0}s{0} = id", i + 1));
            }
            if i + 2 < n {
                let l = self.sym(self.sym(si, i + 1), i);
                let r = self.sym(self.sym(self.sym(x, i + 1), i), i + 1);
                if l != r {
                    return fail(format!("s{0}s{1}s{0} = s{1}s{0}s{1}", i + 1, i + 2));
                }
            }
            for j in i + 2..n - 1 {
                if self.sym(si, j) != self.sym(self.sym(x, j), i) {
                    return fail(format!("s{}s{} = s{}s{}", i + 1, j + 1, j + 1, i + 1));
                }
            }
            for j in 0..n {
                for a in [false, true] {
                    let lhs = self.face(si, j, a);
                    let rhs = if j < i {
                        self.sym(self.face(x, j, a), i - 1)
                    } else if j == i {
                        self.face(x, i + 1, a)
                    } else if j == i + 1 {
                        self.face(x, i, a)
                    } else {
                        self.sym(self.face(x, j, a), i)
                    };
                    if lhs != rhs {
                        return fail(format!("∂{}^{} s{}", j + 1, a as u8, i + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks that `map` is a label-preserving presheaf map `self -> target`.
    pub fn check_map(&self, target: &PrecubicalSet, map: &BTreeMap<CellId, CellId>) -> Result<(), PrecubeError> {
        for (&x, c) in &self.cells {
            let y = *map.get(&x).ok_or(PrecubeError::Unmapped(x))?;
            let d = target.cells.get(&y).ok_or(PrecubeError::MapOutOfRange(x))?;
            if d.label != c.label {
                return Err(PrecubeError::MapLabel(x));
            }
            for (i, pair) in c.faces.iter().enumerate() {
                for (a, f) in pair.iter().enumerate() {
                    if map.get(f) != Some(&d.faces[i][a]) {
                        return Err(PrecubeError::MapNotNatural(x, format!("face ({},{})", i + 1, a)));
                    }
                }
            }
            for (i, s) in c.syms.iter().enumerate() {
                if map.get(s) != Some(&d.syms[i]) {
                    return Err(PrecubeError::MapNotNatural(x, format!("symmetry {}", i + 1)));
                }
            }
        }
        Ok(())
    }

    /// Labels occurring on edges.
    pub fn edge_labels(&self) -> BTreeSet<Label> {
        self.edges().iter().map(|e| self.label(*e)[0].clone()).collect()
    }

    /// Largest cell id plus one.
    pub fn next_id(&self) -> u32 {
        self.cells.keys().next_back().map_or(0, |c| c.0 + 1)
    }
}

/// Incremental construction of small precubical sets by hand.
#[derive(Clone, Debug, Default)]
pub struct Builder {
    cells: BTreeMap<CellId, Cell>,
    decoration: BTreeMap<CellId, String>,
    initial: Option<CellId>,
    next: u32,
}

impl Builder {
    pub fn new() -> Self {
        Builder::default()
    }

    fn push(&mut self, c: Cell) -> CellId {
        let id = CellId(self.next);
        self.next += 1;
        self.cells.insert(id, c);
        id
    }

    pub fn vertex(&mut self) -> CellId {
        self.push(Cell { faces: vec![], syms: vec![], label: vec![] })
    }

    pub fn edge(&mut self, src: CellId, tgt: CellId, label: &Label) -> CellId {
        self.push(Cell { faces: vec![[src, tgt]], syms: vec![], label: vec![label.clone()] })
    }

    /// Adds a square with label `(a, b)` and its symmetric partner labelled
    /// `(b, a)`. `faces` lists `∂1^0, ∂1^1, ∂2^0, ∂2^1`; returns both cells.
    pub fn square(&mut self, a: &Label, b: &Label, faces: [CellId; 4]) -> (CellId, CellId) {
        let z = CellId(self.next);
        let sz = CellId(self.next + 1);
        self.next += 2;
        self.cells.insert(
            z,
            Cell {
                faces: vec![[faces[0], faces[1]], [faces[2], faces[3]]],
                syms: vec![sz],
                label: vec![a.clone(), b.clone()],
            },
        );
        self.cells.insert(
            sz,
            Cell {
                faces: vec![[faces[2], faces[3]], [faces[0], faces[1]]],
                syms: vec![z],
                label: vec![b.clone(), a.clone()],
            },
        );
        (z, sz)
    }

    pub fn decorate(&mut self, v: CellId, name: &str) {
        self.decoration.insert(v, name.to_string());
    }

    pub fn initial(&mut self, v: CellId) {
        self.initial = Some(v);
    }

    pub fn build(self) -> Result<PrecubicalSet, PrecubeError> {
        PrecubicalSet::new(self.cells, self.decoration, self.initial)
    }
}
