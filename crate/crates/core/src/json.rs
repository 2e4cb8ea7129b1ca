//! JSON formats for weak HDTS, precubical sets and alphabets.
//!
//! Writers emit `serde_json::Value`s, whose objects keep keys sorted, so
//! output is byte-for-byte deterministic. Readers report the path of the
//! offending value.

use std::collections::{BTreeMap, BTreeSet};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::hdts::{ActionId, HdtsError, StateId, Transition, WeakHdts};
use crate::label::{Alphabet, Label};
use crate::precube::{Cell, CellId, PrecubicalSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{path}: {message}")]
pub struct JsonError {
    pub path: String,
    pub message: String,
}

fn err(path: impl Into<String>, message: impl ToString) -> JsonError {
    JsonError { path: path.into(), message: message.to_string() }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T, JsonError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        err(if path == "." { "$".to_string() } else { path }, e.into_inner())
    })
}

/// Pretty-printed text with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HdtsDoc {
    states: Vec<u32>,
    actions: Vec<ActionDoc>,
    transitions: Vec<TransitionDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ActionDoc {
    id: u32,
    label: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionDoc {
    src: u32,
    acts: Vec<u32>,
    tgt: u32,
}

pub fn hdts_to_json(x: &WeakHdts) -> Value {
    json!({
        "states": x.states().iter().map(|s| s.0).collect::<Vec<_>>(),
        "actions": x.actions().iter().map(|(u, l)| json!({"id": u.0, "label": l.as_str()})).collect::<Vec<_>>(),
        "transitions": x.transitions().iter().map(|t| json!({
            "src": t.src.0,
            "acts": t.acts.iter().map(|u| u.0).collect::<Vec<_>>(),
            "tgt": t.tgt.0,
        })).collect::<Vec<_>>(),
    })
}

pub fn hdts_from_str(text: &str) -> Result<WeakHdts, JsonError> {
    let doc: HdtsDoc = parse(text)?;
    let mut states = BTreeSet::new();
    for (i, s) in doc.states.iter().enumerate() {
        if !states.insert(StateId(*s)) {
            return Err(err(format!("states[{i}]"), format!("duplicate state {s}")));
        }
    }
    let mut actions = BTreeMap::new();
    for (i, a) in doc.actions.iter().enumerate() {
        if actions.insert(ActionId(a.id), Label::new(&a.label)).is_some() {
            return Err(err(format!("actions[{i}].id"), format!("duplicate action {}", a.id)));
        }
    }
    let mut transitions = BTreeSet::new();
    for (i, t) in doc.transitions.iter().enumerate() {
        if t.acts.is_empty() {
            return Err(err(format!("transitions[{i}].acts"), "a transition needs at least one action"));
        }
        if t.acts.windows(2).any(|w| w[0] > w[1]) {
            return Err(err(format!("transitions[{i}].acts"), "actions must be sorted"));
        }
        let tr = Transition {
            src: StateId(t.src),
            acts: t.acts.iter().map(|u| ActionId(*u)).collect(),
            tgt: StateId(t.tgt),
        };
        if !transitions.insert(tr) {
            return Err(err(format!("transitions[{i}]"), "duplicate transition"));
        }
    }
    WeakHdts::new(states, actions, transitions).map_err(|e| {
        let t = match &e {
            HdtsError::DanglingState(t, _) | HdtsError::DanglingAction(t, _) => Some(t),
            _ => None,
        };
        let i = t.and_then(|t| {
            doc.transitions.iter().position(|d| {
                d.src == t.src.0 && d.tgt == t.tgt.0 && d.acts.iter().map(|u| ActionId(*u)).eq(t.acts.iter().copied())
            })
        });
        err(i.map_or("$".to_string(), |i| format!("transitions[{i}]")), e)
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PrecubeDoc {
    dims: BTreeMap<String, Vec<CellDoc>>,
    #[serde(default)]
    initial: Option<u32>,
    #[serde(default)]
    decoration: BTreeMap<String, String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CellDoc {
    id: u32,
    #[serde(default)]
    d10: Option<u32>,
    #[serde(default)]
    d11: Option<u32>,
    #[serde(default)]
    faces: Option<BTreeMap<String, u32>>,
    #[serde(default)]
    syms: Option<BTreeMap<String, u32>>,
    #[serde(default)]
    label: Vec<String>,
}

/// Face keys are `"i,α"` and symmetry keys `"i"`, both 1-based.
pub fn precube_to_json(k: &PrecubicalSet) -> Value {
    let mut dims = serde_json::Map::new();
    for n in 0..=k.dim() {
        if k.is_empty() {
            break;
        }
        let cells: Vec<Value> = k
            .cells_of_dim(n)
            .iter()
            .map(|&x| {
                let c = k.cell(x);
                let label: Vec<&str> = c.label.iter().map(Label::as_str).collect();
                match n {
                    0 => json!({"id": x.0}),
                    1 => json!({"id": x.0, "d10": c.faces[0][0].0, "d11": c.faces[0][1].0, "label": label}),
                    _ => {
                        let mut faces = serde_json::Map::new();
                        for (i, p) in c.faces.iter().enumerate() {
                            for (a, f) in p.iter().enumerate() {
                                faces.insert(format!("{},{}", i + 1, a), json!(f.0));
                            }
                        }
                        let syms: serde_json::Map<String, Value> =
                            c.syms.iter().enumerate().map(|(i, s)| ((i + 1).to_string(), json!(s.0))).collect();
                        json!({"id": x.0, "faces": faces, "syms": syms, "label": label})
                    }
                }
            })
            .collect();
        dims.insert(n.to_string(), Value::Array(cells));
    }
    let decoration: serde_json::Map<String, Value> =
        k.decoration().iter().map(|(v, d)| (v.0.to_string(), json!(d))).collect();
    let mut doc = json!({"dims": dims, "decoration": decoration});
    if let Some(v) = k.initial() {
        doc["initial"] = json!(v.0);
    }
    doc
}

pub fn precube_from_str(text: &str) -> Result<PrecubicalSet, JsonError> {
    let doc: PrecubeDoc = parse(text)?;
    let mut cells = BTreeMap::new();
    for (key, list) in &doc.dims {
        let n: usize = key.parse().map_err(|_| err(format!("dims.{key}"), "dimension keys are integers"))?;
        for (j, c) in list.iter().enumerate() {
            let at = |field: &str| format!("dims.{key}[{j}]{field}");
            if c.label.len() != n {
                return Err(err(at(".label"), format!("expected {n} labels, found {}", c.label.len())));
            }
            let faces = match n {
                0 => {
                    if c.d10.is_some() || c.d11.is_some() || c.faces.is_some() || c.syms.is_some() {
                        return Err(err(at(""), "vertices have no faces"));
                    }
                    vec![]
                }
                1 => match (c.d10, c.d11, &c.faces) {
                    (Some(s), Some(t), None) => vec![[CellId(s), CellId(t)]],
                    _ => return Err(err(at(""), "edges need exactly `d10` and `d11`")),
                },
                _ => {
                    if c.d10.is_some() || c.d11.is_some() {
                        return Err(err(at(""), "cells above dimension 1 list their faces under `faces`"));
                    }
                    let f = c.faces.as_ref().ok_or_else(|| err(at(".faces"), "missing"))?;
                    if f.len() != 2 * n {
                        return Err(err(at(".faces"), format!("expected {} faces", 2 * n)));
                    }
                    let get = |i: usize, a: usize| {
                        f.get(&format!("{},{}", i + 1, a))
                            .map(|id| CellId(*id))
                            .ok_or_else(|| err(at(".faces"), format!("missing face \"{},{}\"", i + 1, a)))
                    };
                    (0..n).map(|i| Ok([get(i, 0)?, get(i, 1)?])).collect::<Result<Vec<_>, JsonError>>()?
                }
            };
            let syms = match (n, &c.syms) {
                (0 | 1, None) => vec![],
                (0 | 1, Some(_)) => return Err(err(at(".syms"), "only cells of dimension at least 2 have symmetries")),
                (_, None) => return Err(err(at(".syms"), "missing")),
                (_, Some(s)) => {
                    if s.len() != n - 1 {
                        return Err(err(at(".syms"), format!("expected {} symmetries", n - 1)));
                    }
                    (0..n - 1)
                        .map(|i| {
                            s.get(&(i + 1).to_string())
                                .map(|id| CellId(*id))
                                .ok_or_else(|| err(at(".syms"), format!("missing symmetry \"{}\"", i + 1)))
                        })
                        .collect::<Result<Vec<_>, JsonError>>()?
                }
            };
            let label = c.label.iter().map(|l| Label::new(l)).collect();
            if cells.insert(CellId(c.id), Cell { faces, syms, label }).is_some() {
                return Err(err(at(".id"), format!("duplicate cell id {}", c.id)));
            }
        }
    }
    let mut decoration = BTreeMap::new();
    for (key, name) in &doc.decoration {
        let id: u32 = key.parse().map_err(|_| err(format!("decoration.{key}"), "keys are cell ids"))?;
        decoration.insert(CellId(id), name.clone());
    }
    PrecubicalSet::new(cells, decoration, doc.initial.map(CellId)).map_err(|e| err("dims", e))
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphabetDoc {
    labels: Vec<String>,
    tau: String,
    #[serde(default)]
    involution: Vec<(String, String)>,
}

pub fn alphabet_to_json(cfg: &Alphabet) -> Value {
    json!({
        "labels": cfg.labels().iter().map(Label::as_str).collect::<Vec<_>>(),
        "tau": cfg.tau().as_str(),
        "involution": cfg.pairs().iter().map(|(a, b)| [a.as_str(), b.as_str()]).collect::<Vec<_>>(),
    })
}

pub fn alphabet_from_str(text: &str) -> Result<Alphabet, JsonError> {
    let doc: AlphabetDoc = parse(text)?;
    let labels: Vec<&str> = doc.labels.iter().map(String::as_str).collect();
    let pairs: Vec<(&str, &str)> = doc.involution.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    Alphabet::from_strs(&labels, &doc.tau, &pairs).map_err(|e| err("$", e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hdts::{cube, d_system};
    use crate::label::word;
    use crate::precube::standard_cube;

    #[test]
    fn hdts_round_trip() {
        for x in [cube(&word(&["a", "b", "c"])), d_system(&"a".into()), WeakHdts::default()] {
            let text = to_text(&hdts_to_json(&x));
            assert_eq!(hdts_from_str(&text).unwrap(), x);
        }
    }

    #[test]
    fn hdts_errors_have_paths() {
        let e = hdts_from_str(r#"{"states":[0,1],"actions":[{"id":0,"label":"a"},{"id":1,"label":"b"}],"transitions":[{"src":0,"acts":[1,0],"tgt":1}]}"#).unwrap_err();
        assert_eq!(e.path, "transitions[0].acts");
        let e =
            hdts_from_str(r#"{"states":[0],"actions":[],"transitions":[{"src":0,"acts":[0],"tgt":0}]}"#).unwrap_err();
        assert_eq!(e.path, "transitions[0]");
        let e = hdts_from_str(r#"{"states":[0],"actions":[{"id":"x","label":"a"}],"transitions":[]}"#).unwrap_err();
        assert_eq!(e.path, "actions[0].id");
        assert!(hdts_from_str(r#"{"states":[],"actions":[],"transitions":[],"extra":1}"#).is_err());
    }

    #[test]
    fn precube_round_trip() {
        for k in [
            standard_cube(&word(&["a", "b", "c"])),
            fixtures::not_strong().set,
            fixtures::double_square(),
            PrecubicalSet::empty(),
        ] {
            let text = to_text(&precube_to_json(&k));
            assert_eq!(precube_from_str(&text).unwrap(), k);
        }
    }

    #[test]
    fn precube_errors_have_paths() {
        let e = precube_from_str(r#"{"dims":{"0":[{"id":0}],"1":[{"id":1,"d10":0,"label":["a"]}]}}"#).unwrap_err();
        assert_eq!(e.path, "dims.1[0]");
        let e =
            precube_from_str(r#"{"dims":{"0":[{"id":0}],"1":[{"id":1,"d10":0,"d11":5,"label":["a"]}]}}"#).unwrap_err();
        assert_eq!(e.path, "dims");
        let e = precube_from_str(r#"{"dims":{"0":[{"id":true}]}}"#).unwrap_err();
        assert_eq!(e.path, "dims.0[0].id");
    }

    #[test]
    fn alphabet_round_trip() {
        let cfg = fixtures::alphabet();
        let text = to_text(&alphabet_to_json(&cfg));
        assert_eq!(alphabet_from_str(&text).unwrap(), cfg);
        assert!(alphabet_from_str(r#"{"labels":["a"],"tau":"tau"}"#).is_err());
    }
}
