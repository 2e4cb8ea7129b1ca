//! Morphisms `[m] -> [n]` of the symmetric cube category, encoded by the map
//! `f̂` that sends each target coordinate to a constant or to the source
//! coordinate it copies.
//!
//! Vertices of `[n] = {0,1}^n` are bitmasks: bit `i` holds `ε_{i+1}`.
//! Coordinates are 0-based throughout the API.

use std::fmt;

use thiserror::Error;

use crate::label::Label;

/// Value of one target coordinate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Coord {
    /// `−∞` (false) or `+∞` (true).
    Const(bool),
    /// Copies the given source coordinate.
    Proj(usize),
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CubeEncoding {
    m: usize,
    fhat: Vec<Coord>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error("vertex table has {got} entries, expected {expected}")]
    TableSize { got: usize, expected: usize },
    #[error("vertex {vertex:#b} maps outside [{n}]")]
    OutOfRange { vertex: u64, n: usize },
    #[error("target coordinate {coordinate} is neither constant nor a coordinate projection")]
    NotInBox { coordinate: usize },
    #[error("source coordinate {source_coord} is copied by more than one target coordinate (second at {coordinate})")]
    Reused { source_coord: usize, coordinate: usize },
    #[error("source coordinate {source_coord} is not copied by any target coordinate")]
    Unused { source_coord: usize },
}

impl CubeEncoding {
    /// Validates that projections form a bijection onto `0..m`.
    pub fn new(m: usize, fhat: Vec<Coord>) -> Result<Self, EncodingError> {
        let mut seen = vec![false; m];
        for (j, c) in fhat.iter().enumerate() {
            if let Coord::Proj(k) = *c {
                if k >= m {
                    return Err(EncodingError::NotInBox { coordinate: j + 1 });
                }
                if seen[k] {
                    return Err(EncodingError::Reused { source_coord: k + 1, coordinate: j + 1 });
                }
                seen[k] = true;
            }
        }
        if let Some(k) = seen.iter().position(|s| !s) {
            return Err(EncodingError::Unused { source_coord: k + 1 });
        }
        Ok(CubeEncoding { m, fhat })
    }

    pub fn identity(n: usize) -> Self {
        CubeEncoding { m: n, fhat: (0..n).map(Coord::Proj).collect() }
    }

    /// `δ_{i+1}^α : [n−1] → [n]`, inserting `α` at coordinate `i`.
    pub fn face(n: usize, i: usize, alpha: bool) -> Self {
        assert!(i < n, "face index out of range");
        let fhat = (0..n)
            .map(|j| match j.cmp(&i) {
                std::cmp::Ordering::Less => Coord::Proj(j),
                std::cmp::Ordering::Equal => Coord::Const(alpha),
                std::cmp::Ordering::Greater => Coord::Proj(j - 1),
            })
            .collect();
        CubeEncoding { m: n - 1, fhat }
    }

    /// `σ_{i+1} : [n] → [n]`, swapping coordinates `i` and `i+1`.
    pub fn sym(n: usize, i: usize) -> Self {
        assert!(i + 1 < n, "symmetry index out of range");
        let mut fhat: Vec<Coord> = (0..n).map(Coord::Proj).collect();
        fhat.swap(i, i + 1);
        CubeEncoding { m: n, fhat }
    }

    /// The vertex `ε ∈ [n]` as the map `[0] → [n]`.
    pub fn vertex(n: usize, eps: u64) -> Self {
        CubeEncoding { m: 0, fhat: (0..n).map(|j| Coord::Const(eps >> j & 1 == 1)).collect() }
    }

    pub fn source_dim(&self) -> usize {
        self.m
    }

    pub fn target_dim(&self) -> usize {
        self.fhat.len()
    }

    pub fn fhat(&self) -> &[Coord] {
        &self.fhat
    }

    /// Image of a vertex of `[m]`.
    pub fn apply(&self, eps: u64) -> u64 {
        self.fhat.iter().enumerate().fold(0, |acc, (j, c)| {
            let bit = match *c {
                Coord::Const(b) => b,
                Coord::Proj(k) => eps >> k & 1 == 1,
            };
            acc | (bit as u64) << j
        })
    }

    /// Images of all `2^m` vertices, indexed by vertex.
    pub fn vertex_table(&self) -> Vec<u64> {
        (0..1u64 << self.m).map(|e| self.apply(e)).collect()
    }

    /// The target coordinate copying source coordinate `k` (the map `f̄`).
    pub fn fbar(&self, k: usize) -> usize {
        self.fhat.iter().position(|c| *c == Coord::Proj(k)).expect("projections are bijective")
    }

    /// Label word of the source cube when the target carries `target_word`:
    /// letter `k` is the letter of the target coordinate copying `k`.
    pub fn pull_word(&self, target_word: &[Label]) -> Vec<Label> {
        assert_eq!(target_word.len(), self.fhat.len());
        (0..self.m).map(|k| target_word[self.fbar(k)].clone()).collect()
    }

    /// Every encoding `[m] -> [n]`, in a fixed order.
    pub fn all(m: usize, n: usize) -> Vec<CubeEncoding> {
        let mut out = Vec::new();
        if m > n {
            return out;
        }
        // choose for each target coordinate: const 0, const 1, or a source coordinate
        fn go(m: usize, n: usize, cur: &mut Vec<Coord>, used: &mut Vec<bool>, out: &mut Vec<CubeEncoding>) {
            if cur.len() == n {
                if used.iter().all(|u| *u) {
                    out.push(CubeEncoding { m, fhat: cur.clone() });
                }
                return;
            }
            let remaining = n - cur.len();
            let missing = used.iter().filter(|u| !**u).count();
            if remaining > missing {
                for b in [false, true] {
                    cur.push(Coord::Const(b));
                    go(m, n, cur, used, out);
                    cur.pop();
                }
            }
            for k in 0..m {
                if !used[k] {
                    used[k] = true;
                    cur.push(Coord::Proj(k));
                    go(m, n, cur, used, out);
                    cur.pop();
                    used[k] = false;
                }
            }
        }
        go(m, n, &mut Vec::new(), &mut vec![false; m], &mut out);
        out
    }

    /// Whether the source cube sits inside the target without reordering.
    pub fn is_order_preserving(&self) -> bool {
        let projs: Vec<usize> =
            self.fhat.iter().filter_map(|c| if let Coord::Proj(k) = c { Some(*k) } else { None }).collect();
        projs.windows(2).all(|w| w[0] < w[1])
    }
}

impl fmt::Debug for CubeEncoding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]->[{}](", self.m, self.fhat.len())?;
        for (j, c) in self.fhat.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            match c {
                Coord::Const(false) => write!(f, "-inf")?,
                Coord::Const(true) => write!(f, "+inf")?,
                Coord::Proj(k) => write!(f, "{}", k + 1)?,
            }
        }
        write!(f, ")")
    }
}

/// Recovers the encoding of a vertex map `{0,1}^m -> {0,1}^n` given as a table.
pub fn encode_poset_map(m: usize, n: usize, table: &[u64]) -> Result<CubeEncoding, EncodingError> {
    let expected = 1usize << m;
    if table.len() != expected {
        return Err(EncodingError::TableSize { got: table.len(), expected });
    }
    if let Some((e, _)) = table.iter().enumerate().find(|(_, v)| n < 64 && **v >> n != 0) {
        return Err(EncodingError::OutOfRange { vertex: e as u64, n });
    }
    let mut fhat = Vec::with_capacity(n);
    for j in 0..n {
        let column: Vec<bool> = table.iter().map(|v| v >> j & 1 == 1).collect();
        let coord = if column.iter().all(|b| !b) {
            Coord::Const(false)
        } else if column.iter().all(|b| *b) {
            Coord::Const(true)
        } else {
            (0..m)
                .find(|&k| column.iter().enumerate().all(|(e, b)| *b == (e >> k & 1 == 1)))
                .map(Coord::Proj)
                .ok_or(EncodingError::NotInBox { coordinate: j + 1 })?
        };
        fhat.push(coord);
    }
    CubeEncoding::new(m, fhat)
}

/// `g ∘ f` for `f: [m] -> [n]` and `g: [n] -> [p]`; its `f̂` is `f̂ ∘ ĝ`.
pub fn compose(f: &CubeEncoding, g: &CubeEncoding) -> CubeEncoding {
    assert_eq!(f.target_dim(), g.source_dim(), "encodings do not chain");
    let fhat = g
        .fhat
        .iter()
        .map(|c| match *c {
            Coord::Const(b) => Coord::Const(b),
            Coord::Proj(k) => f.fhat[k],
        })
        .collect();
    CubeEncoding { m: f.m, fhat }
}

/// Hamming distance between two vertices of the same cube.
pub fn distance(u: u64, v: u64) -> u32 {
    (u ^ v).count_ones()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_round_trip() {
        let id = encode_poset_map(2, 2, &[0, 1, 2, 3]).unwrap();
        assert_eq!(id, CubeEncoding::identity(2));
    }

    #[test]
    fn first_face() {
        // ε ↦ (0, ε)
        let d = encode_poset_map(1, 2, &[0b00, 0b10]).unwrap();
        assert_eq!(d.fhat(), &[Coord::Const(false), Coord::Proj(0)]);
        assert_eq!(d, CubeEncoding::face(2, 0, false));
    }

    #[test]
    fn max_min_is_rejected() {
        // (ε1,ε2) ↦ (max, min); table indexed by ε1 + 2 ε2
        let table: Vec<u64> = (0..4u64)
            .map(|e| {
                let (a, b) = (e & 1, e >> 1 & 1);
                a.max(b) | a.min(b) << 1
            })
            .collect();
        assert_eq!(encode_poset_map(2, 2, &table), Err(EncodingError::NotInBox { coordinate: 1 }));
    }

    #[test]
    fn composition_examples() {
        let f = CubeEncoding::face(2, 0, false);
        assert_eq!(compose(&f, &CubeEncoding::identity(2)), f);
        let s = CubeEncoding::sym(2, 0);
        assert_eq!(compose(&s, &s), CubeEncoding::identity(2));
        let g = CubeEncoding::face(3, 2, true);
        let h = compose(&f, &g);
        for e in 0..2 {
            assert_eq!(h.apply(e), g.apply(f.apply(e)));
        }
    }

    #[test]
    fn distances() {
        assert_eq!(distance(0b00, 0b11), 2);
        assert_eq!(distance(0b010, 0b110), 1);
        assert_eq!(distance(5, 5), 0);
    }

    #[test]
    fn counts_of_encodings() {
        assert_eq!(CubeEncoding::all(2, 2).len(), 2);
        assert_eq!(CubeEncoding::all(1, 2).len(), 4);
        assert_eq!(CubeEncoding::all(0, 2).len(), 4);
        assert_eq!(CubeEncoding::all(2, 3).len(), 3 * 2 * 2);
    }
}
