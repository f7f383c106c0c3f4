//! JSON interchange formats.
//!
//! Frames: `{"kind":"sto"|"s4k","worlds":[..],"rel1":[[a,b],..],"rel2":[[a,b],..],
//! "admissible":[[..],..]?}` where `rel1` is the order/`ri` and `rel2` the
//! second relation. Models add `"valuation":{"p":[..worlds..]}` to the frame
//! object. Algebras: `{"elements":[..],"leq":[[a,b],..],"sto":[[a,b,result],..]}`.
//!
//! Emission is deterministic: pairs in row-major world order, admissible sets
//! ascending, set members in world order.

use crate::algebra::{AlgebraError, HLAlgebra};
use crate::frames::{
    Frame, FrameError, GeneralFrameError, GeneralS4KFrame, GeneralStoFrame, S4KFrame,
    StoFrame,
};
use crate::semantics::{Model, SemanticsError, Valuation};
use crate::sets::{members, Mask, Relation};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown frame kind `{0}` (expected `sto` or `s4k`)")]
    UnknownKind(String),
    #[error("frame has {0} worlds; at most 64 are supported")]
    TooManyWorlds(usize),
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("operator table has no entry for ({0}, {1})")]
    IncompleteTable(String, String),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error(transparent)]
    GeneralFrame(#[from] GeneralFrameError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameJson {
    pub kind: String,
    pub worlds: Vec<String>,
    pub rel1: Vec<(String, String)>,
    pub rel2: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub admissible: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelJson {
    #[serde(flatten)]
    pub frame: FrameJson,
    pub valuation: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub elements: Vec<String>,
    pub leq: Vec<(String, String)>,
    pub sto: Vec<(String, String, String)>,
}

fn index_of(labels: &[String], name: &str) -> Result<usize, IoError> {
    labels
        .iter()
        .position(|l| l == name)
        .ok_or_else(|| IoError::UnknownWorld(name.to_string()))
}

fn relation_from_pairs(
    worlds: &[String],
    pairs: &[(String, String)],
) -> Result<Relation, IoError> {
    let mut rel = Relation::empty(worlds.len());
    for (a, b) in pairs {
        rel.insert(index_of(worlds, a)?, index_of(worlds, b)?);
    }
    Ok(rel)
}

fn mask_from_names(worlds: &[String], names: &[String]) -> Result<Mask, IoError> {
    let mut m = 0;
    for w in names {
        m |= 1 << index_of(worlds, w)?;
    }
    Ok(m)
}

pub fn frame_from_json(json: &FrameJson) -> Result<Frame, IoError> {
    if json.worlds.len() > 64 {
        return Err(IoError::TooManyWorlds(json.worlds.len()));
    }
    let rel1 = relation_from_pairs(&json.worlds, &json.rel1)?;
    let rel2 = relation_from_pairs(&json.worlds, &json.rel2)?;
    let admissible = match &json.admissible {
        None => None,
        Some(sets) => Some(
            sets.iter()
                .map(|s| mask_from_names(&json.worlds, s))
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    match json.kind.as_str() {
        "sto" => {
            let frame = StoFrame::new(json.worlds.clone(), rel1, rel2)?;
            Ok(match admissible {
                None => Frame::Sto(frame),
                Some(sets) => Frame::GeneralSto(GeneralStoFrame::new(frame, sets)?),
            })
        }
        "s4k" => {
            let frame = S4KFrame::new(json.worlds.clone(), rel1, rel2)?;
            Ok(match admissible {
                None => Frame::S4k(frame),
                Some(sets) => Frame::GeneralS4k(GeneralS4KFrame::new(frame, sets)?),
            })
        }
        other => Err(IoError::UnknownKind(other.to_string())),
    }
}

fn pairs_of(worlds: &[String], rel: &Relation) -> Vec<(String, String)> {
    rel.pairs()
        .into_iter()
        .map(|(x, y)| (worlds[x].clone(), worlds[y].clone()))
        .collect()
}

fn names_of(worlds: &[String], mask: Mask) -> Vec<String> {
    members(mask).map(|i| worlds[i].clone()).collect()
}

pub fn frame_to_json(frame: &Frame) -> FrameJson {
    let (kind, worlds, rel1, rel2, admissible) = match frame {
        Frame::Sto(f) => ("sto", f.worlds(), f.preceq(), f.sqsubset(), None),
        Frame::GeneralSto(g) => (
            "sto",
            g.frame().worlds(),
            g.frame().preceq(),
            g.frame().sqsubset(),
            Some(g.admissible()),
        ),
        Frame::S4k(f) => ("s4k", f.worlds(), f.ri(), f.rm(), None),
        Frame::GeneralS4k(g) => (
            "s4k",
            g.frame().worlds(),
            g.frame().ri(),
            g.frame().rm(),
            Some(g.admissible()),
        ),
    };
    FrameJson {
        kind: kind.to_string(),
        worlds: worlds.to_vec(),
        rel1: pairs_of(worlds, rel1),
        rel2: pairs_of(worlds, rel2),
        admissible: admissible
            .map(|sets| sets.iter().map(|&m| names_of(worlds, m)).collect()),
    }
}

pub fn model_from_json(json: &ModelJson) -> Result<Model, IoError> {
    let frame = frame_from_json(&json.frame)?;
    let valuation = Valuation::from_names(frame.worlds(), &json.valuation)?;
    Ok(Model::new(frame, valuation)?)
}

pub fn model_to_json(model: &Model) -> ModelJson {
    let frame = frame_to_json(model.frame());
    let worlds = model.frame().worlds();
    let valuation = model
        .valuation()
        .iter()
        .map(|(atom, mask)| (atom.clone(), names_of(worlds, mask)))
        .collect();
    ModelJson { frame, valuation }
}

/// Resolve an algebra description to raw tables without validating the
/// algebra laws, so callers can separate input errors from law violations.
pub fn algebra_parts_from_json(
    json: &AlgebraJson,
) -> Result<(Vec<String>, Relation, Vec<Vec<usize>>), IoError> {
    let n = json.elements.len();
    let element = |name: &str| -> Result<usize, IoError> {
        json.elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| IoError::UnknownElement(name.to_string()))
    };
    let mut leq = Relation::empty(n);
    for (a, b) in &json.leq {
        leq.insert(element(a)?, element(b)?);
    }
    let mut sto = vec![vec![usize::MAX; n]; n];
    for (a, b, c) in &json.sto {
        sto[element(a)?][element(b)?] = element(c)?;
    }
    for a in 0..n {
        for b in 0..n {
            if sto[a][b] == usize::MAX {
                return Err(IoError::IncompleteTable(
                    json.elements[a].clone(),
                    json.elements[b].clone(),
                ));
            }
        }
    }
    Ok((json.elements.clone(), leq, sto))
}

pub fn algebra_from_json(json: &AlgebraJson) -> Result<HLAlgebra, IoError> {
    let (elements, leq, sto) = algebra_parts_from_json(json)?;
    Ok(HLAlgebra::new(elements, leq, sto)?)
}

pub fn algebra_to_json(algebra: &HLAlgebra) -> AlgebraJson {
    let el = algebra.elements();
    let n = algebra.size();
    let mut leq = Vec::new();
    let mut sto = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if algebra.leq(a, b) {
                leq.push((el[a].clone(), el[b].clone()));
            }
            sto.push((el[a].clone(), el[b].clone(), el[algebra.sto(a, b)].clone()));
        }
    }
    AlgebraJson { elements: el.to_vec(), leq, sto }
}

/// One formula per line; `#` starts a comment, blank lines are skipped.
pub fn parse_axiom_lines(
    text: &str,
    parse: impl Fn(&str) -> Result<crate::syntax::Formula, crate::parse::ParseError>,
) -> Result<Vec<crate::syntax::Formula>, crate::parse::ParseError> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        out.push(parse(line)?);
    }
    Ok(out)
}
