use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use super::ast::Term;
use crate::label::{Alphabet, Label};
use crate::precube::{
    colimit_presheaf, presheaf_iso, tensor_sync, Cell, CellId, PrecubeError, PrecubicalSet, PresheafDiagram,
};

pub const DEFAULT_UNFOLD_DEPTH: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("label `{0}` is not in the alphabet")]
    UnknownLabel(Label),
    #[error(transparent)]
    Precube(#[from] PrecubeError),
}

/// The precubical semantics of a term. `truncated` is set when some
/// recursion did not stabilize within the unfolding depth.
#[derive(Clone, Debug)]
pub struct Semantics {
    pub set: PrecubicalSet,
    pub truncated: bool,
}

struct Ctx<'a> {
    cfg: &'a Alphabet,
    depth: usize,
    truncated: bool,
}

/// Computes the decorated precubical set of a closed term, unfolding each
/// recursion at most `depth` times.
pub fn semantics(term: &Term, cfg: &Alphabet, depth: usize) -> Result<Semantics, SemanticsError> {
    let mut ctx = Ctx { cfg, depth, truncated: false };
    let set = ctx.eval(term, &HashMap::new())?;
    Ok(Semantics { set, truncated: ctx.truncated })
}

fn point(name: &str) -> PrecubicalSet {
    let v = CellId(0);
    let cells = [(v, Cell { faces: vec![], syms: vec![], label: vec![] })].into_iter().collect();
    let decoration = [(v, name.to_string())].into_iter().collect();
    PrecubicalSet::new(cells, decoration, Some(v)).expect("a point is a precubical set")
}

fn initial(k: &PrecubicalSet) -> CellId {
    k.initial().expect("semantics always has an initial vertex")
}

fn redecorate(mut k: PrecubicalSet, name: String) -> PrecubicalSet {
    let v = initial(&k);
    k.set_decoration(v, name);
    k
}

impl Ctx<'_> {
    fn eval(&mut self, t: &Term, env: &HashMap<String, PrecubicalSet>) -> Result<PrecubicalSet, SemanticsError> {
        let k = match t {
            Term::Nil => point("nil"),
            Term::Var(x) => return env.get(x).cloned().ok_or_else(|| SemanticsError::Unbound(x.clone())),
            Term::Prefix(l, p) => {
                if !self.cfg.contains(l) {
                    return Err(SemanticsError::UnknownLabel(l.clone()));
                }
                let k = self.eval(p, env)?;
                prefix(l, &k)
            }
            Term::Restrict(l, p) => {
                let k = self.eval(p, env)?;
                let mut drop = vec![l.clone()];
                drop.extend(self.cfg.complement(l).cloned());
                restrict(&k, &drop)
            }
            Term::Sum(p, q) => {
                let (k, l) = (self.eval(p, env)?, self.eval(q, env)?);
                wedge(&k, &l)?
            }
            Term::Par(p, q) => {
                let (k, l) = (self.eval(p, env)?, self.eval(q, env)?);
                tensor_sync(&k, &l, self.cfg)?.set
            }
            Term::Rec(x, p) => return self.unfold(t, x, p, env),
        };
        Ok(redecorate(k, t.to_string()))
    }

    /// `Q_0 = nil`, `Q_{k+1} = P[Q_k / x]`, stopping at the first stage
    /// isomorphic to its predecessor.
    fn unfold(
        &mut self,
        t: &Term,
        x: &str,
        p: &Term,
        env: &HashMap<String, PrecubicalSet>,
    ) -> Result<PrecubicalSet, SemanticsError> {
        let name = t.to_string();
        let mut q = point(&name);
        let mut env = env.clone();
        for _ in 0..self.depth {
            env.insert(x.to_string(), q.clone());
            let next = redecorate(self.eval(p, &env)?, name.clone());
            if presheaf_iso(&next, &q, true).is_some() {
                return Ok(next);
            }
            q = next;
        }
        self.truncated = true;
        Ok(q)
    }
}

/// Glues the target of a fresh `l`-edge onto the initial vertex of `k`.
fn prefix(l: &Label, k: &PrecubicalSet) -> PrecubicalSet {
    let next = k.next_id();
    let (v, e) = (CellId(next), CellId(next + 1));
    let mut cells = k.cells().clone();
    cells.insert(v, Cell { faces: vec![], syms: vec![], label: vec![] });
    cells.insert(e, Cell { faces: vec![[v, initial(k)]], syms: vec![], label: vec![l.clone()] });
    PrecubicalSet::new(cells, k.decoration().clone(), Some(v)).expect("prefixing keeps the relations")
}

/// Cells whose label word avoids `drop`.
fn restrict(k: &PrecubicalSet, drop: &[Label]) -> PrecubicalSet {
    let cells: BTreeMap<CellId, Cell> = k
        .cells()
        .iter()
        .filter(|(_, c)| c.label.iter().all(|l| !drop.contains(l)))
        .map(|(id, c)| (*id, c.clone()))
        .collect();
    PrecubicalSet::new(cells, k.decoration().clone(), k.initial()).expect("restriction is a subobject")
}

/// Identifies the initial vertices of `k` and `l`.
fn wedge(k: &PrecubicalSet, l: &PrecubicalSet) -> Result<PrecubicalSet, SemanticsError> {
    let pt = point("").with_decoration(BTreeMap::new());
    let to = |s: &PrecubicalSet| [(CellId(0), initial(s))].into_iter().collect::<BTreeMap<_, _>>();
    let c = colimit_presheaf(&PresheafDiagram {
        objects: vec![pt, k.clone(), l.clone()],
        arrows: vec![(0, 1, to(k)), (0, 2, to(l))],
    })?;
    let init = c.cocone[0][&CellId(0)];
    Ok(c.set.with_initial(Some(init)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ccs::parse;
    use crate::label::word;
    use crate::precube::standard_cube;

    fn cfg() -> Alphabet {
        Alphabet::from_strs(&["a", "abar", "b", "tau"], "tau", &[("a", "abar")]).unwrap()
    }

    fn sem(s: &str) -> Semantics {
        semantics(&parse(s, &cfg()).unwrap(), &cfg(), DEFAULT_UNFOLD_DEPTH).unwrap()
    }

    fn counts(k: &PrecubicalSet) -> Vec<usize> {
        (0..=k.dim()).map(|n| k.count(n)).collect()
    }

    #[test]
    fn prefixes_make_paths() {
        let k = sem("a.b.nil").set;
        assert_eq!(counts(&k), vec![3, 2]);
        let init = k.initial().unwrap();
        assert_eq!(k.decoration()[&init], "a.b.nil");
        let e = k.edges().iter().copied().find(|e| k.face(*e, 0, false) == init).unwrap();
        assert_eq!(k.label(e), &word(&["a"])[..]);
        assert_eq!(k.decoration()[&k.face(e, 0, true)], "b.nil");
    }

    #[test]
    fn sums_share_the_initial_vertex() {
        let k = sem("a.nil + b.nil").set;
        assert_eq!(counts(&k), vec![3, 2]);
        assert_eq!(k.decoration()[&k.initial().unwrap()], "a.nil + b.nil");
    }

    #[test]
    fn parallel_and_restriction() {
        let k = sem("a.nil || abar.nil").set;
        assert_eq!(counts(&k), vec![4, 5, 2]);
        let k = sem("(nu a) (a.nil || abar.nil)").set;
        assert_eq!(counts(&k), vec![4, 1]);
        assert_eq!(k.label(k.edges()[0]), &word(&["tau"])[..]);
        let k = sem("a.nil || b.nil").set;
        assert!(presheaf_iso(&k, &standard_cube(&word(&["a", "b"])), false).is_some());
    }

    #[test]
    fn recursion() {
        let s = sem("rec(x) a.x");
        assert!(s.truncated);
        assert_eq!(counts(&s.set), vec![DEFAULT_UNFOLD_DEPTH + 1, DEFAULT_UNFOLD_DEPTH]);
        let s = sem("rec(x) nil");
        assert!(!s.truncated);
        assert_eq!(counts(&s.set), vec![1]);
        let s = semantics(&parse("rec(x) (a.x + b.nil)", &cfg()).unwrap(), &cfg(), 3).unwrap();
        assert!(s.truncated);
        assert_eq!(s.set.decoration()[&s.set.initial().unwrap()], "rec(x) (a.x + b.nil)");
    }
}
