//! Synchronized products: the fibered product of 1-dimensional sets, the
//! directed coskeleton that fills it with non-twisted cubes, and the
//! synchronized tensor product built from both.

use std::collections::{BTreeMap, HashMap};

use super::colimit::{colimit_presheaf, PresheafDiagram};
use super::encoding::CubeEncoding;
use super::set::{Cell, CellId, PrecubeError, PrecubicalSet};
use super::standard::StandardCube;
use crate::label::{Alphabet, Label};

/// Decoration of a vertex pair.
pub fn par_name(p: &str, q: &str) -> String {
    let wrap = |s: &str| {
        if s.contains('+') || s.contains("||") {
            format!("({s})")
        } else {
            s.to_string()
        }
    };
    format!("{} || {}", wrap(p), wrap(q))
}

/// `K ×_Σ L` with the pair behind each cell.
#[derive(Clone, Debug)]
pub struct FiberedProduct {
    pub set: PrecubicalSet,
    pub pair_of: BTreeMap<CellId, (CellId, CellId)>,
    pub cell_of: BTreeMap<(CellId, CellId), CellId>,
}

fn check_labels(k: &PrecubicalSet, cfg: &Alphabet) -> Result<(), PrecubeError> {
    for l in k.edge_labels() {
        if !cfg.contains(&l) {
            return Err(PrecubeError::UnknownLabel(l.to_string()));
        }
    }
    Ok(())
}

/// Fibered product of two sets of dimension at most 1: vertices are pairs,
/// edges move one side or both sides at once; the latter are the
/// synchronizations `(x, y)` with `ℓ(y)` complementary to `ℓ(x)`, labelled τ.
pub fn fibered_product(k: &PrecubicalSet, l: &PrecubicalSet, cfg: &Alphabet) -> Result<FiberedProduct, PrecubeError> {
    for s in [k, l] {
        if s.dim() > 1 {
            return Err(PrecubeError::TooHighDim { max: 1, found: s.dim() });
        }
        check_labels(s, cfg)?;
    }
    let mut cells = BTreeMap::new();
    let mut pair_of = BTreeMap::new();
    let mut cell_of = BTreeMap::new();
    let mut next = 0u32;
    let mut add = |pair: (CellId, CellId), cell: Cell| {
        let id = CellId(next);
        next += 1;
        cells.insert(id, cell);
        pair_of.insert(id, pair);
        cell_of.insert(pair, id);
        id
    };
    let mut vertex = BTreeMap::new();
    for &v in k.vertices() {
        for &w in l.vertices() {
            let id = add((v, w), Cell { faces: vec![], syms: vec![], label: vec![] });
            vertex.insert((v, w), id);
        }
    }
    for &x in k.edges() {
        for &w in l.vertices() {
            let f = [vertex[&(k.face(x, 0, false), w)], vertex[&(k.face(x, 0, true), w)]];
            add((x, w), Cell { faces: vec![f], syms: vec![], label: k.label(x).to_vec() });
        }
    }
    for &v in k.vertices() {
        for &y in l.edges() {
            let f = [vertex[&(v, l.face(y, 0, false))], vertex[&(v, l.face(y, 0, true))]];
            add((v, y), Cell { faces: vec![f], syms: vec![], label: l.label(y).to_vec() });
        }
    }
    for &x in k.edges() {
        for &y in l.edges() {
            if cfg.complement(&k.label(x)[0]) == Some(&l.label(y)[0]) {
                let f = [
                    vertex[&(k.face(x, 0, false), l.face(y, 0, false))],
                    vertex[&(k.face(x, 0, true), l.face(y, 0, true))],
                ];
                add((x, y), Cell { faces: vec![f], syms: vec![], label: vec![cfg.tau().clone()] });
            }
        }
    }
    let mut decoration = BTreeMap::new();
    for (id, (v, w)) in &pair_of {
        if let (Some(p), Some(q)) = (k.decoration().get(v), l.decoration().get(w)) {
            decoration.insert(*id, par_name(p, q));
        }
    }
    let initial = match (k.initial(), l.initial()) {
        (Some(v), Some(w)) => Some(cell_of[&(v, w)]),
        _ => None,
    };
    let set = PrecubicalSet::new_unchecked(cells, decoration, initial);
    Ok(FiberedProduct { set, pair_of, cell_of })
}

/// Whether the vertex map `[n] -> [p]` (a table of `2^n` images) is
/// non-twisted: every target coordinate is constant or copies a source
/// coordinate, and every source coordinate is copied at least once.
pub fn non_twisted(n: usize, p: usize, table: &[u64]) -> bool {
    if table.len() != 1 << n {
        return false;
    }
    let mut covered = vec![false; n];
    for j in 0..p {
        let column: Vec<bool> = table.iter().map(|v| v >> j & 1 == 1).collect();
        if column.iter().all(|b| *b == column[0]) {
            continue;
        }
        match (0..n).find(|&k| column.iter().enumerate().all(|(e, b)| *b == (e >> k & 1 == 1))) {
            Some(k) => covered[k] = true,
            None => return false,
        }
    }
    covered.iter().all(|c| *c)
}

/// Structural description of a coskeleton cell: the vertex of each corner
/// and the edge on each grid edge of its cube.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoskKey {
    pub vertices: Vec<CellId>,
    pub edges: Vec<CellId>,
}

/// `COSK(K)` with the key of each cell.
#[derive(Clone, Debug)]
pub struct Cosk {
    pub set: PrecubicalSet,
    pub key_of: BTreeMap<CellId, CoskKey>,
    pub cell_of: HashMap<CoskKey, CellId>,
}

/// Position of the grid edge in direction `i` from `base` (bit `i` clear).
fn grid_index(n: usize, i: usize, base: u64) -> usize {
    let low = base & ((1 << i) - 1);
    let high = base >> (i + 1) << i;
    i * (1usize << (n - 1)) + (low | high) as usize
}

fn grid_edges(n: usize) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(n << n.saturating_sub(1));
    for i in 0..n {
        for base in 0..1u64 << n {
            if base >> i & 1 == 0 {
                out.push((i, base));
            }
        }
    }
    out
}

/// Key of `f^* c` for a cell with key `key` of dimension `n` and `f: [m] -> [n]`.
fn restrict_key(key: &CoskKey, f: &CubeEncoding) -> CoskKey {
    let (m, n) = (f.source_dim(), f.target_dim());
    let vertices = (0..1u64 << m).map(|e| key.vertices[f.apply(e) as usize]).collect();
    let edges = grid_edges(m).into_iter().map(|(j, base)| key.edges[grid_index(n, f.fbar(j), f.apply(base))]).collect();
    CoskKey { vertices, edges }
}

/// Directed coskeleton of a 1-dimensional set whose vertices are identified
/// with `{0,1}^p` by `vertex_iso`. Cells of dimension at most 1 keep their
/// ids; each higher cell is a non-twisted vertex map with an edge on every
/// grid edge, edges of one direction sharing a label.
pub fn cosk_directed(k: &PrecubicalSet, vertex_iso: &BTreeMap<CellId, u64>, p: usize) -> Result<Cosk, PrecubeError> {
    if k.dim() > 1 {
        return Err(PrecubeError::TooHighDim { max: 1, found: k.dim() });
    }
    let mut at: HashMap<u64, CellId> = HashMap::new();
    for &v in k.vertices() {
        match vertex_iso.get(&v) {
            Some(&bits) if p >= 64 || bits >> p == 0 => {
                if at.insert(bits, v).is_some() {
                    return Err(PrecubeError::NotBijective(p));
                }
            }
            _ => return Err(PrecubeError::NotBijective(p)),
        }
    }
    if at.len() != 1 << p || vertex_iso.len() != at.len() {
        return Err(PrecubeError::NotBijective(p));
    }
    let mut between: HashMap<(CellId, CellId), Vec<CellId>> = HashMap::new();
    for &e in k.edges() {
        between.entry((k.face(e, 0, false), k.face(e, 0, true))).or_default().push(e);
    }

    let mut cells: BTreeMap<CellId, Cell> = k.cells().clone();
    let mut key_of = BTreeMap::new();
    let mut cell_of = HashMap::new();
    for &v in k.vertices() {
        let key = CoskKey { vertices: vec![v], edges: vec![] };
        key_of.insert(v, key.clone());
        cell_of.insert(key, v);
    }
    for &e in k.edges() {
        let key = CoskKey { vertices: vec![k.face(e, 0, false), k.face(e, 0, true)], edges: vec![e] };
        key_of.insert(e, key.clone());
        cell_of.insert(key, e);
    }
    let mut next = k.next_id();
    for n in 2..=p {
        let mut keys = Vec::new();
        for c in 0..1u64 << p {
            let free = !c & ((1u64 << p) - 1);
            let mut dirs = Vec::with_capacity(n);
            choose_directions(n, c, free, &at, &between, &mut dirs, &mut |dirs| {
                expand_cell(n, c, dirs, &at, &between, k, &mut keys);
            });
        }
        let mut ids = Vec::with_capacity(keys.len());
        for (key, label) in keys {
            let id = CellId(next);
            next += 1;
            let faces = (0..n)
                .map(|i| {
                    [false, true].map(|a| {
                        let fk = restrict_key(&key, &CubeEncoding::face(n, i, a));
                        cell_of[&fk]
                    })
                })
                .collect();
            cells.insert(id, Cell { faces, syms: vec![], label });
            key_of.insert(id, key.clone());
            cell_of.insert(key, id);
            ids.push(id);
        }
        for id in ids {
            let key = &key_of[&id];
            let syms = (0..n - 1).map(|i| cell_of[&restrict_key(key, &CubeEncoding::sym(n, i))]).collect();
            cells.get_mut(&id).unwrap().syms = syms;
        }
    }
    let set = PrecubicalSet::new_unchecked(cells, k.decoration().clone(), k.initial());
    Ok(Cosk { set, key_of, cell_of })
}

/// Chooses disjoint non-empty coordinate sets `D_0..D_{n-1}` outside the
/// constant part `c`, each reachable from `c` by one edge.
fn choose_directions(
    n: usize,
    c: u64,
    free: u64,
    at: &HashMap<u64, CellId>,
    between: &HashMap<(CellId, CellId), Vec<CellId>>,
    dirs: &mut Vec<u64>,
    emit: &mut dyn FnMut(&[u64]),
) {
    if dirs.len() == n {
        emit(dirs);
        return;
    }
    let used: u64 = dirs.iter().fold(0, |a, d| a | d);
    let avail = free & !used;
    let mut sub = avail;
    let mut subs = Vec::new();
    while sub != 0 {
        subs.push(sub);
        sub = (sub - 1) & avail;
    }
    subs.sort();
    for d in subs {
        if between.contains_key(&(at[&c], at[&(c | d)])) {
            dirs.push(d);
            choose_directions(n, c, free, at, between, dirs, emit);
            dirs.pop();
        }
    }
}

fn expand_cell(
    n: usize,
    c: u64,
    dirs: &[u64],
    at: &HashMap<u64, CellId>,
    between: &HashMap<(CellId, CellId), Vec<CellId>>,
    k: &PrecubicalSet,
    out: &mut Vec<(CoskKey, Vec<Label>)>,
) {
    let image = |e: u64| -> u64 { (0..n).filter(|i| e >> i & 1 == 1).fold(c, |a, i| a | dirs[i]) };
    let vertices: Vec<CellId> = (0..1u64 << n).map(|e| at[&image(e)]).collect();
    let grid = grid_edges(n);
    let mut options: Vec<&Vec<CellId>> = Vec::with_capacity(grid.len());
    for &(i, base) in &grid {
        match between.get(&(vertices[base as usize], vertices[(base | 1 << i) as usize])) {
            Some(es) => options.push(es),
            None => return,
        }
    }
    // labels available in every grid edge of a direction
    let per_dir = 1usize << (n - 1);
    let mut label_choices: Vec<Vec<Label>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut common: Option<Vec<Label>> = None;
        for opts in &options[i * per_dir..(i + 1) * per_dir] {
            let mut ls: Vec<Label> = opts.iter().map(|e| k.label(*e)[0].clone()).collect();
            ls.sort();
            ls.dedup();
            common = Some(match common {
                None => ls,
                Some(prev) => prev.into_iter().filter(|l| ls.contains(l)).collect(),
            });
        }
        let common = common.unwrap_or_default();
        if common.is_empty() {
            return;
        }
        label_choices.push(common);
    }
    let mut labels = Vec::with_capacity(n);
    product(&label_choices, &mut labels, &mut |labels: &[Label]| {
        let filtered: Vec<Vec<CellId>> = options
            .iter()
            .enumerate()
            .map(|(g, opts)| {
                let want = &labels[g / per_dir];
                opts.iter().copied().filter(|e| &k.label(*e)[0] == want).collect()
            })
            .collect();
        let mut edges = Vec::with_capacity(filtered.len());
        product(&filtered, &mut edges, &mut |edges: &[CellId]| {
            out.push((CoskKey { vertices: vertices.clone(), edges: edges.to_vec() }, labels.to_vec()));
        });
    });
}

fn product<T: Clone>(choices: &[Vec<T>], cur: &mut Vec<T>, emit: &mut dyn FnMut(&[T])) {
    if cur.len() == choices.len() {
        emit(cur);
        return;
    }
    for x in &choices[cur.len()] {
        cur.push(x.clone());
        product(choices, cur, emit);
        cur.pop();
    }
}

/// `K ⊗_Σ L` with the pair of vertices behind each vertex.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub set: PrecubicalSet,
    pub vertex_pairs: BTreeMap<CellId, (CellId, CellId)>,
}

struct Piece {
    fp: FiberedProduct,
    cosk: Cosk,
}

fn vertex_bits(c: &StandardCube, v: CellId) -> u64 {
    c.encoding_of[&v].apply(0)
}

fn build_piece(a: &StandardCube, b: &StandardCube, cfg: &Alphabet) -> Result<Piece, PrecubeError> {
    let fp = fibered_product(&a.set, &b.set, cfg)?;
    let m = a.word.len();
    let iso: BTreeMap<CellId, u64> = fp
        .set
        .vertices()
        .iter()
        .map(|v| {
            let (x, y) = fp.pair_of[v];
            (*v, vertex_bits(a, x) | vertex_bits(b, y) << m)
        })
        .collect();
    let cosk = cosk_directed(&fp.set, &iso, m + b.word.len())?;
    Ok(Piece { fp, cosk })
}

/// Cell map between pieces induced by cube-skeleton maps on both sides.
fn piece_map(
    src: &Piece,
    tgt: &Piece,
    left: &BTreeMap<CellId, CellId>,
    right: &BTreeMap<CellId, CellId>,
) -> BTreeMap<CellId, CellId> {
    let fp_map: BTreeMap<CellId, CellId> =
        src.fp.pair_of.iter().map(|(id, (x, y))| (*id, tgt.fp.cell_of[&(left[x], right[y])])).collect();
    src.cosk
        .key_of
        .iter()
        .map(|(id, key)| {
            let image = if src.fp.set.contains(*id) {
                fp_map[id]
            } else {
                let k = CoskKey {
                    vertices: key.vertices.iter().map(|v| fp_map[v]).collect(),
                    edges: key.edges.iter().map(|e| fp_map[e]).collect(),
                };
                tgt.cosk.cell_of[&k]
            };
            (*id, image)
        })
        .collect()
}

/// The synchronized tensor product: the colimit, over pairs of cells
/// `(x, y)`, of the directed coskeleta of the fibered products of their
/// cube skeleta.
pub fn tensor_sync(k: &PrecubicalSet, l: &PrecubicalSet, cfg: &Alphabet) -> Result<Tensor, PrecubeError> {
    check_labels(k, cfg)?;
    check_labels(l, cfg)?;
    let mut cubes: HashMap<Vec<Label>, StandardCube> = HashMap::new();
    for s in [k, l] {
        for c in s.cells().values() {
            cubes.entry(c.label.clone()).or_insert_with(|| StandardCube::new(&c.label).truncated(1));
        }
    }
    let mut pieces: HashMap<(Vec<Label>, Vec<Label>), Piece> = HashMap::new();
    let kc: Vec<CellId> = k.cells().keys().copied().collect();
    let lc: Vec<CellId> = l.cells().keys().copied().collect();
    let slot = |i: usize, j: usize| i * lc.len() + j;

    let mut objects = Vec::with_capacity(kc.len() * lc.len());
    let mut pairs: Vec<BTreeMap<CellId, (CellId, CellId)>> = Vec::with_capacity(objects.capacity());
    for &x in &kc {
        for &y in &lc {
            let (wx, wy) = (k.label(x).to_vec(), l.label(y).to_vec());
            let (a, b) = (&cubes[&wx], &cubes[&wy]);
            if let std::collections::hash_map::Entry::Vacant(e) = pieces.entry((wx.clone(), wy.clone())) {
                e.insert(build_piece(a, b, cfg)?);
            }
            let piece = &pieces[&(wx, wy)];
            let mut decoration = BTreeMap::new();
            let mut vp = BTreeMap::new();
            for v in piece.cosk.set.vertices() {
                let (cx, cy) = piece.fp.pair_of[v];
                let kv = k.act(x, &a.encoding_of[&cx]);
                let lv = l.act(y, &b.encoding_of[&cy]);
                vp.insert(*v, (kv, lv));
                if let (Some(p), Some(q)) = (k.decoration().get(&kv), l.decoration().get(&lv)) {
                    decoration.insert(*v, par_name(p, q));
                }
            }
            objects.push(piece.cosk.set.clone().with_initial(None).with_decoration(decoration));
            pairs.push(vp);
        }
    }

    let mut arrows = Vec::new();
    let identity = |c: &StandardCube| -> BTreeMap<CellId, CellId> { c.set.cells().keys().map(|i| (*i, *i)).collect() };
    // generators acting on the left factor
    for (i, &x) in kc.iter().enumerate() {
        for (f, x2) in generators(k, x) {
            let i2 = kc.iter().position(|c| *c == x2).expect("faces and symmetries are cells");
            let (wx, wx2) = (k.label(x).to_vec(), k.label(x2).to_vec());
            let left = StandardCube::induced_map(&cubes[&wx2], &cubes[&wx], &f);
            for (j, &y) in lc.iter().enumerate() {
                let wy = l.label(y).to_vec();
                let right = identity(&cubes[&wy]);
                let map = piece_map(&pieces[&(wx2.clone(), wy.clone())], &pieces[&(wx.clone(), wy)], &left, &right);
                arrows.push((slot(i2, j), slot(i, j), map));
            }
        }
    }
    for (j, &y) in lc.iter().enumerate() {
        for (f, y2) in generators(l, y) {
            let j2 = lc.iter().position(|c| *c == y2).expect("faces and symmetries are cells");
            let (wy, wy2) = (l.label(y).to_vec(), l.label(y2).to_vec());
            let right = StandardCube::induced_map(&cubes[&wy2], &cubes[&wy], &f);
            for (i, &x) in kc.iter().enumerate() {
                let wx = k.label(x).to_vec();
                let left = identity(&cubes[&wx]);
                let map = piece_map(&pieces[&(wx.clone(), wy2.clone())], &pieces[&(wx, wy.clone())], &left, &right);
                arrows.push((slot(i, j2), slot(i, j), map));
            }
        }
    }

    let colim = colimit_presheaf(&PresheafDiagram { objects, arrows })?;
    let mut vertex_pairs = BTreeMap::new();
    for (o, vp) in pairs.iter().enumerate() {
        for (v, pair) in vp {
            vertex_pairs.insert(colim.cocone[o][v], *pair);
        }
    }
    let initial = match (k.initial(), l.initial()) {
        (Some(v), Some(w)) => {
            let i = kc.iter().position(|c| *c == v).unwrap();
            let j = lc.iter().position(|c| *c == w).unwrap();
            let obj = &colim.cocone[slot(i, j)];
            obj.values().next().copied()
        }
        _ => None,
    };
    Ok(Tensor { set: colim.set.with_initial(initial), vertex_pairs })
}

/// Generating morphisms into the cube of `x`: faces `δ` (from `∂x`) and
/// symmetries `σ` (from `s x`), as `(encoding, source cell)`.
fn generators(k: &PrecubicalSet, x: CellId) -> Vec<(CubeEncoding, CellId)> {
    let n = k.cell(x).dim();
    let mut out = Vec::new();
    for i in 0..n {
        for a in [false, true] {
            out.push((CubeEncoding::face(n, i, a), k.face(x, i, a)));
        }
    }
    for i in 0..n.saturating_sub(1) {
        out.push((CubeEncoding::sym(n, i), k.sym(x, i)));
    }
    out
}
